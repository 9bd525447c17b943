//! Exact character tables for the built-in groups and the algebra of class
//! functions.
//!
//! Tables are assembled from explicit models rather than a general
//! algorithm: duals of cyclic factors for abelian groups, the Schrödinger
//! matrices for the Heisenberg group, induction from `⟨σ⟩ ≅ Z/7` for `G₂₁`,
//! and products with the characters of `μ₃` for `μ₃ × G₂₁`. Every table can
//! be checked against the orthogonality relations with
//! [`CharacterTable::orthogonality_defects`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cyclotomic::{b, omega, rat, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupKind};

/// Exact function on the conjugacy classes of a group, one value per class
/// in the group's class order.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<CyclotomicNumber>,
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<CyclotomicNumber>) -> Result<Self> {
        let expected = group.conjugacy_classes().len();
        if values.len() != expected {
            return Err(Error::ClassCount {
                expected,
                got: values.len(),
            });
        }
        Ok(ClassFunction { group, values })
    }

    /// Evaluates `f` on every element and checks that the result is
    /// constant on conjugacy classes.
    pub fn from_elements<F>(group: Arc<FiniteGroup>, f: F) -> Result<Self>
    where
        F: Fn(usize) -> Result<CyclotomicNumber>,
    {
        let cc = group.conjugacy_classes();
        let mut values = Vec::with_capacity(cc.len());
        for class in &cc.classes {
            let value = f(class[0])?;
            for &g in &class[1..] {
                if f(g)? != value {
                    return Err(Error::InvalidTable(format!(
                        "function is not constant on the class of element {}",
                        class[0]
                    )));
                }
            }
            values.push(value);
        }
        Ok(ClassFunction { group, values })
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let n = group.conjugacy_classes().len();
        ClassFunction {
            group,
            values: vec![CyclotomicNumber::zero(); n],
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[CyclotomicNumber] {
        &self.values
    }

    pub fn at_element(&self, g: usize) -> &CyclotomicNumber {
        &self.values[self.group.conjugacy_classes().class_of[g]]
    }

    /// Value at the identity.
    pub fn degree(&self) -> &CyclotomicNumber {
        &self.values[0]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CyclotomicNumber::is_zero)
    }

    pub fn conj(&self) -> Self {
        self.map(CyclotomicNumber::conj)
    }

    fn map(&self, f: impl Fn(&CyclotomicNumber) -> CyclotomicNumber) -> Self {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(&CyclotomicNumber, &CyclotomicNumber) -> CyclotomicNumber,
    ) -> Result<Self> {
        self.same_group(other)?;
        Ok(ClassFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = CyclotomicNumber::from(k);
        self.map(|v| v * &k)
    }

    /// Character of the tensor product.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    /// Character of the symmetric square, `(χ(g)² + χ(g²)) / 2`.
    pub fn sym2(&self) -> Self {
        let half = rat(1, 2);
        let values = (0..self.values.len())
            .map(|c| {
                let square_class = self.group.power_map(c, 2);
                (&self.values[c] * &self.values[c] + &self.values[square_class]).scale(&half)
            })
            .collect();
        ClassFunction {
            group: self.group.clone(),
            values,
        }
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other).is_ok() && self.values == other.values
    }
}

/// Tensor product or symmetric square, for [`tensor_and_sym_square`].
pub enum SquareMode<'a> {
    Tensor(&'a ClassFunction),
    Sym2,
}

pub fn tensor_and_sym_square(f: &ClassFunction, mode: SquareMode<'_>) -> Result<ClassFunction> {
    match mode {
        SquareMode::Tensor(g) => f.tensor(g),
        SquareMode::Sym2 => Ok(f.sym2()),
    }
}

/// `⟨f, g⟩ = (1/|G|) Σ_C |C| f(C) conj(g(C))`.
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<CyclotomicNumber> {
    f.same_group(g)?;
    let cc = f.group.conjugacy_classes();
    let total: CyclotomicNumber = f
        .values
        .iter()
        .zip(&g.values)
        .zip(&cc.sizes)
        .map(|((a, b), &size)| (a * &b.conj()) * CyclotomicNumber::from(size as i64))
        .sum();
    Ok(total.scale(&rat(1, f.group.order() as i64)))
}

#[derive(Clone, Debug)]
pub struct Irreducible {
    pub name: String,
    pub dim: usize,
    pub character: ClassFunction,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    irreducibles: Vec<Irreducible>,
}

/// Builds the character table of a built-in group. The trivial character is
/// always first.
pub fn character_table(group: &Arc<FiniteGroup>) -> Result<CharacterTable> {
    let kind = group.kind().ok_or(Error::UnsupportedGroup)?.clone();
    let rows: Vec<(String, ClassFunction)> = match kind {
        GroupKind::Abelian(orders) => abelian_characters(group, &orders)?,
        GroupKind::Heisenberg3 => heisenberg_characters(group)?,
        GroupKind::G21 => g21_characters(group)?,
        GroupKind::Mu3xG21 => mu3_g21_characters(group)?,
    };
    let irreducibles = rows
        .into_iter()
        .map(|(name, character)| {
            let dim = character
                .degree()
                .as_integer()
                .and_then(|d| usize::try_from(d).ok())
                .ok_or_else(|| Error::InvalidTable(format!("{name} has non-integral degree")))?;
            Ok(Irreducible {
                name,
                dim,
                character,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterTable {
        group: group.clone(),
        irreducibles,
    })
}

fn abelian_characters(group: &Arc<FiniteGroup>, orders: &[usize]) -> Result<Vec<(String, ClassFunction)>> {
    let coords = |mut x: usize| -> Vec<usize> {
        orders
            .iter()
            .map(|&m| {
                let c = x % m;
                x /= m;
                c
            })
            .collect()
    };
    let mut rows = Vec::new();
    for t in 0..group.order() {
        let dual = coords(t);
        let name = if t == 0 {
            "triv".to_string()
        } else {
            let parts: Vec<String> = dual.iter().map(ToString::to_string).collect();
            format!("chi({})", parts.join(","))
        };
        let chi = ClassFunction::from_elements(group.clone(), |g| {
            let x = coords(g);
            let mut value = CyclotomicNumber::one();
            for ((&m, &a), &s) in orders.iter().zip(&dual).zip(&x) {
                value = value * CyclotomicNumber::root_of_unity(m, (a * s) as i64)?;
            }
            Ok(value)
        })?;
        rows.push((name, chi));
    }
    Ok(rows)
}

type Matrix = Vec<Vec<CyclotomicNumber>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Extends an assignment of matrices to generators over the whole group by
/// breadth-first search, checking that it is a homomorphism.
fn matrix_model(group: &FiniteGroup, gens: &[(usize, Matrix)]) -> Result<Vec<Matrix>> {
    let n = gens[0].1.len();
    let identity: Matrix = (0..n)
        .map(|i| (0..n).map(|j| CyclotomicNumber::from((i == j) as i64)).collect())
        .collect();
    let mut image: Vec<Option<Matrix>> = vec![None; group.order()];
    image[group.identity()] = Some(identity);
    let mut queue = std::collections::VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        let mx = image[x].clone().unwrap();
        for (g, mg) in gens {
            let y = group.mul(x, *g);
            let my = mat_mul(&mx, mg);
            match &image[y] {
                Some(existing) if *existing != my => {
                    return Err(Error::InvalidTable("matrices do not define a representation".into()))
                }
                Some(_) => {}
                None => {
                    image[y] = Some(my);
                    queue.push_back(y);
                }
            }
        }
    }
    image
        .into_iter()
        .map(|m| m.ok_or_else(|| Error::InvalidTable("generators do not generate".into())))
        .collect()
}

fn heisenberg_characters(group: &Arc<FiniteGroup>) -> Result<Vec<(String, ClassFunction)>> {
    let mut rows = Vec::new();
    // Linear characters pulled back from (Z/3)² via (a, b, c) ↦ (a, b).
    for q in 0..3 {
        for p in 0..3 {
            let name = if p == 0 && q == 0 {
                "V0".to_string()
            } else {
                format!("L({p},{q})")
            };
            let chi = ClassFunction::from_elements(group.clone(), |g| {
                let (a, bb) = (g % 3, (g / 3) % 3);
                CyclotomicNumber::root_of_unity(3, (p * a + q * bb) as i64)
            })?;
            rows.push((name, chi));
        }
    }
    // Schrödinger model: ξ x_i = ω^{-i} x_i, η x_i = x_{i+1}.
    let zero = CyclotomicNumber::zero;
    let xi: Matrix = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    if i == j {
                        CyclotomicNumber::root_of_unity(3, -(i as i64)).unwrap()
                    } else {
                        zero()
                    }
                })
                .collect()
        })
        .collect();
    let eta: Matrix = (0..3)
        .map(|i| (0..3).map(|j| CyclotomicNumber::from((i == (j + 1) % 3) as i64)).collect())
        .collect();
    let model = matrix_model(group, &[(group.element("xi")?, xi), (group.element("eta")?, eta)])?;
    let schroedinger = ClassFunction::from_elements(group.clone(), |g| {
        Ok((0..3).map(|i| model[g][i][i].clone()).sum())
    })?;
    // "V3" is the constituent on which z acts by ω.
    let z = group.element("z")?;
    let omega3 = omega() * CyclotomicNumber::from(3);
    let (v3, v3bar) = if *schroedinger.at_element(z) == omega3 {
        (schroedinger.clone(), schroedinger.conj())
    } else {
        (schroedinger.conj(), schroedinger)
    };
    rows.push(("V3".to_string(), v3));
    rows.push(("V3bar".to_string(), v3bar));
    Ok(rows)
}

/// `Ind_H^G ψ (g) = (1/|H|) Σ_{x ∈ G} ψ°(x g x⁻¹)`.
fn induce<F>(group: &Arc<FiniteGroup>, subgroup_order: usize, psi: F) -> Result<ClassFunction>
where
    F: Fn(usize) -> Option<CyclotomicNumber>,
{
    let scale = rat(1, subgroup_order as i64);
    ClassFunction::from_elements(group.clone(), |g| {
        let total: CyclotomicNumber = (0..group.order())
            .filter_map(|x| psi(group.conjugate(g, x)))
            .sum();
        Ok(total.scale(&scale))
    })
}

fn g21_characters(group: &Arc<FiniteGroup>) -> Result<Vec<(String, ClassFunction)>> {
    let sigma = group.element("sigma")?;
    let tau = group.element("tau")?;
    // exponent of τ in the normal form σ^s τ^t
    let tau_exponent = |g: usize| -> usize {
        (0..3i64)
            .find(|&t| (0..7).any(|s| group.mul(group.pow(sigma, s), group.pow(tau, t)) == g))
            .unwrap() as usize
    };
    let mut rows = Vec::new();
    for (p, name) in [(0, "C"), (1, "V1"), (2, "V1bar")] {
        let chi = ClassFunction::from_elements(group.clone(), |g| {
            CyclotomicNumber::root_of_unity(3, (p * tau_exponent(g)) as i64)
        })?;
        rows.push((name.to_string(), chi));
    }
    let cyclic: BTreeMap<usize, i64> = (0..7).map(|s| (group.pow(sigma, s), s)).collect();
    let induced = induce(group, 7, |h| {
        cyclic
            .get(&h)
            .map(|&s| CyclotomicNumber::root_of_unity(7, s).unwrap())
    })?;
    let (v3, v3bar) = if *induced.at_element(sigma) == b() {
        (induced.clone(), induced.conj())
    } else {
        (induced.conj(), induced)
    };
    rows.push(("V3".to_string(), v3));
    rows.push(("V3bar".to_string(), v3bar));
    Ok(rows)
}

/// Suffix naming the central character `z ↦ ω^j` on `μ₃ × G₂₁`.
pub fn central_suffix(j: usize) -> &'static str {
    ["", "[w]", "[w^2]"][j % 3]
}

fn mu3_g21_characters(group: &Arc<FiniteGroup>) -> Result<Vec<(String, ClassFunction)>> {
    let g21 = Arc::new(crate::groups::build_group(GroupKind::G21)?);
    let factor_rows = g21_characters(&g21)?;
    let z = group.element("z")?;
    let sigma = group.element("sigma")?;
    let tau = group.element("tau")?;
    // g = z^j · w(σ, τ); map w(σ, τ) into the G₂₁ factor.
    let mut split: Vec<Option<(usize, usize)>> = vec![None; group.order()];
    for j in 0..3 {
        for s in 0..7 {
            for t in 0..3 {
                let g = group.mul(group.pow(z, j), group.mul(group.pow(sigma, s), group.pow(tau, t)));
                let h = g21.mul(g21.pow(g21.element("sigma")?, s), g21.pow(g21.element("tau")?, t));
                split[g] = Some((j as usize, h));
            }
        }
    }
    let mut rows = Vec::new();
    for j in 0..3 {
        for (name, chi) in &factor_rows {
            let product = ClassFunction::from_elements(group.clone(), |g| {
                let (jz, h) = split[g].expect("every element has a normal form");
                Ok(CyclotomicNumber::root_of_unity(3, (j * jz) as i64)? * chi.at_element(h))
            })?;
            rows.push((format!("{name}{}", central_suffix(j)), product));
        }
    }
    Ok(rows)
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn irreducibles(&self) -> &[Irreducible] {
        &self.irreducibles
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        if name == "triv" {
            return Ok(0);
        }
        self.irreducibles
            .iter()
            .position(|irr| irr.name == name)
            .ok_or_else(|| Error::UnknownIrreducible(name.to_string()))
    }

    pub fn by_name(&self, name: &str) -> Result<&Irreducible> {
        Ok(&self.irreducibles[self.index_of(name)?])
    }

    /// Character of `C[G]`.
    pub fn regular_character(&self) -> ClassFunction {
        let mut values = vec![CyclotomicNumber::zero(); self.group.conjugacy_classes().len()];
        values[0] = CyclotomicNumber::from(self.group.order() as i64);
        ClassFunction {
            group: self.group.clone(),
            values,
        }
    }

    /// `Σ mᵢ χᵢ`.
    pub fn reconstruct(&self, multiplicities: &[i64]) -> ClassFunction {
        self.irreducibles
            .iter()
            .zip(multiplicities)
            .filter(|(_, &m)| m != 0)
            .fold(ClassFunction::zero(self.group.clone()), |acc, (irr, &m)| {
                acc.add(&irr.character.scale(m)).expect("same group")
            })
    }

    /// For each irreducible, the index of its complex conjugate.
    pub fn conjugation_permutation(&self) -> Result<Vec<usize>> {
        self.irreducibles
            .iter()
            .map(|irr| {
                let c = irr.character.conj();
                self.irreducibles
                    .iter()
                    .position(|other| other.character == c)
                    .ok_or_else(|| Error::InvalidTable(format!("conjugate of {} missing", irr.name)))
            })
            .collect()
    }

    /// Violations of row orthogonality, column orthogonality, and
    /// `Σ dim² = |G|`; empty when the table is consistent.
    pub fn orthogonality_defects(&self) -> Vec<String> {
        let mut defects = Vec::new();
        let n = self.group.order();
        let cc = self.group.conjugacy_classes();
        if self.irreducibles.len() != cc.len() {
            defects.push(format!("{} irreducibles for {} classes", self.irreducibles.len(), cc.len()));
        }
        let sum_sq: usize = self.irreducibles.iter().map(|i| i.dim * i.dim).sum();
        if sum_sq != n {
            defects.push(format!("sum of squared degrees is {sum_sq}, not {n}"));
        }
        for (i, a) in self.irreducibles.iter().enumerate() {
            for (j, b) in self.irreducibles.iter().enumerate() {
                let ip = inner_product(&a.character, &b.character).expect("same group");
                if ip != CyclotomicNumber::from((i == j) as i64) {
                    defects.push(format!("<{}, {}> = {ip}", a.name, b.name));
                }
            }
        }
        for c in 0..cc.len() {
            for d in 0..cc.len() {
                let s: CyclotomicNumber = self
                    .irreducibles
                    .iter()
                    .map(|irr| &irr.character.values[c] * &irr.character.values[d].conj())
                    .sum();
                let expected = if c == d { (n / cc.sizes[c]) as i64 } else { 0 };
                if s != CyclotomicNumber::from(expected) {
                    defects.push(format!("column sum ({c}, {d}) = {s}, expected {expected}"));
                }
            }
        }
        defects
    }

    pub fn decompose(&self, f: &ClassFunction) -> Result<Decomposition> {
        decompose(f, self)
    }
}

/// Multiplicities of the irreducibles of a table in a (virtual) character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub names: Vec<String>,
    pub dims: Vec<usize>,
    pub multiplicities: Vec<i64>,
    pub is_virtual: bool,
}

pub fn decompose(f: &ClassFunction, table: &CharacterTable) -> Result<Decomposition> {
    f.same_group(&table.irreducibles[0].character)?;
    let mut multiplicities = Vec::with_capacity(table.len());
    for irr in &table.irreducibles {
        let m = inner_product(f, &irr.character)?;
        let value = m
            .as_integer()
            .and_then(|v| i64::try_from(v).ok())
            .ok_or_else(|| Error::NotVirtualCharacter {
                name: irr.name.clone(),
                value: m.to_string(),
            })?;
        multiplicities.push(value);
    }
    if table.reconstruct(&multiplicities) != *f {
        return Err(Error::NotVirtualCharacter {
            name: "(reconstruction)".into(),
            value: "f is not in the span of the table".into(),
        });
    }
    Ok(Decomposition {
        names: table.irreducibles.iter().map(|i| i.name.clone()).collect(),
        dims: table.irreducibles.iter().map(|i| i.dim).collect(),
        is_virtual: multiplicities.iter().any(|&m| m < 0),
        multiplicities,
    })
}

impl Decomposition {
    pub fn dimension(&self) -> i64 {
        self.multiplicities
            .iter()
            .zip(&self.dims)
            .map(|(&m, &d)| m * d as i64)
            .sum()
    }

    pub fn multiplicity(&self, name: &str) -> Option<i64> {
        let idx = if name == "triv" {
            Some(0)
        } else {
            self.names.iter().position(|n| n == name)
        };
        idx.map(|i| self.multiplicities[i])
    }

    /// Nonzero multiplicities keyed by irreducible name.
    pub fn support(&self) -> BTreeMap<String, i64> {
        self.names
            .iter()
            .zip(&self.multiplicities)
            .filter(|(_, &m)| m != 0)
            .map(|(n, &m)| (n.clone(), m))
            .collect()
    }
}

/// `V3bar^2 + V3 - C`, in table order; `0` when empty.
impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, &m) in self.names.iter().zip(&self.multiplicities) {
            if m == 0 {
                continue;
            }
            let sign = if m < 0 { "-" } else { "+" };
            match (first, m < 0) {
                (true, false) => {}
                (true, true) => f.write_str("-")?,
                (false, _) => write!(f, " {sign} ")?,
            }
            first = false;
            f.write_str(name)?;
            if m.abs() != 1 {
                write!(f, "^{}", m.abs())?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Central character of an irreducible as the exponent `j` with
/// `χ(z) = ω^j χ(1)`, for groups carrying a central label `z` of order 3.
pub fn central_exponent(irr: &Irreducible) -> Option<usize> {
    let group = irr.character.group();
    let z = group.element("z").ok()?;
    let ratio = irr
        .character
        .at_element(z)
        .scale(&num_rational::BigRational::from_integer((irr.dim as i64).into()).recip());
    (0..3).find(|&j| ratio == CyclotomicNumber::root_of_unity(3, j as i64).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::b_bar;
    use crate::groups::build_group;

    fn table(kind: GroupKind) -> CharacterTable {
        character_table(&Arc::new(build_group(kind).unwrap())).unwrap()
    }

    fn values(t: &CharacterTable, name: &str) -> Vec<CyclotomicNumber> {
        t.by_name(name).unwrap().character.values().to_vec()
    }

    fn c(x: i64) -> CyclotomicNumber {
        CyclotomicNumber::from(x)
    }

    #[test]
    fn g21_table_matches_printed_array() {
        let t = table(GroupKind::G21);
        let w = omega();
        let wb = w.conj();
        assert_eq!(values(&t, "C"), vec![c(1), c(1), c(1), c(1), c(1)]);
        assert_eq!(values(&t, "V1"), vec![c(1), c(1), c(1), w.clone(), wb.clone()]);
        assert_eq!(values(&t, "V1bar"), vec![c(1), c(1), c(1), wb, w]);
        assert_eq!(values(&t, "V3"), vec![c(3), b(), b_bar(), c(0), c(0)]);
        assert_eq!(values(&t, "V3bar"), vec![c(3), b_bar(), b(), c(0), c(0)]);
        assert!(t.orthogonality_defects().is_empty());
    }

    #[test]
    fn heisenberg_schroedinger_characters() {
        let t = table(GroupKind::Heisenberg3);
        assert_eq!(t.len(), 11);
        let g = t.group().clone();
        let z = g.element("z").unwrap();
        let v3 = &t.by_name("V3").unwrap().character;
        assert_eq!(*v3.at_element(z), omega() * c(3));
        assert_eq!(*v3.at_element(g.pow(z, 2)), omega().conj() * c(3));
        for x in 0..27 {
            if !g.is_central(x) {
                assert!(v3.at_element(x).is_zero());
            }
        }
        assert!(t.orthogonality_defects().is_empty());
        // the Remark-style matrices themselves have z acting by ω²
        let irr = t.by_name("V3bar").unwrap();
        assert_eq!(central_exponent(irr), Some(2));
    }

    #[test]
    fn all_builtin_tables_are_orthogonal() {
        for kind in [
            GroupKind::Abelian(vec![3, 3]),
            GroupKind::Abelian(vec![2, 6]),
            GroupKind::Heisenberg3,
            GroupKind::G21,
            GroupKind::Mu3xG21,
        ] {
            let t = table(kind.clone());
            assert_eq!(t.orthogonality_defects(), Vec::<String>::new(), "{kind}");
            let perm = t.conjugation_permutation().unwrap();
            assert!(perm.iter().enumerate().all(|(i, &j)| perm[j] == i));
        }
    }

    #[test]
    fn conjugation_swaps_named_pairs() {
        let t = table(GroupKind::G21);
        let perm = t.conjugation_permutation().unwrap();
        let idx = |n: &str| t.index_of(n).unwrap();
        assert_eq!(perm[idx("V3")], idx("V3bar"));
        assert_eq!(perm[idx("V1")], idx("V1bar"));
        assert_eq!(perm[idx("C")], idx("C"));
    }

    #[test]
    fn inner_products() {
        let t = table(GroupKind::G21);
        let v3 = &t.by_name("V3").unwrap().character;
        let v3bar = &t.by_name("V3bar").unwrap().character;
        assert!(inner_product(v3, v3).unwrap().is_one());
        assert!(inner_product(v3, v3bar).unwrap().is_zero());
        let triv = &t.by_name("triv").unwrap().character;
        assert!(inner_product(&t.regular_character(), triv).unwrap().is_one());
        let other = table(GroupKind::Heisenberg3);
        assert_eq!(
            inner_product(v3, &other.irreducibles()[0].character),
            Err(Error::GroupMismatch)
        );
    }

    #[test]
    fn regular_character_decomposes_by_dimension() {
        for kind in [GroupKind::Heisenberg3, GroupKind::G21, GroupKind::Mu3xG21, GroupKind::Abelian(vec![3, 3])] {
            let t = table(kind);
            let d = t.decompose(&t.regular_character()).unwrap();
            let dims: Vec<i64> = d.dims.iter().map(|&x| x as i64).collect();
            assert_eq!(d.multiplicities, dims);
            assert!(!d.is_virtual);
        }
    }

    #[test]
    fn abelian_regular_is_sum_of_characters() {
        let t = table(GroupKind::Abelian(vec![3, 3]));
        let sum = t.reconstruct(&[1; 9]);
        assert_eq!(sum, t.regular_character());
    }

    #[test]
    fn decompose_schroedinger_and_table_b_shapes() {
        let t = table(GroupKind::Heisenberg3);
        let g = t.group().clone();
        let z = g.element("z").unwrap();
        let f = ClassFunction::from_elements(g.clone(), |x| {
            Ok(if x == g.identity() {
                c(3)
            } else if x == z {
                omega() * c(3)
            } else if x == g.pow(z, 2) {
                omega().conj() * c(3)
            } else {
                c(0)
            })
        })
        .unwrap();
        assert_eq!(t.decompose(&f).unwrap().support(), BTreeMap::from([("V3".into(), 1)]));

        // 1 + 9a at the center, 1 elsewhere
        let a = 4;
        let f = ClassFunction::from_elements(g.clone(), |x| {
            Ok(if g.is_central(x) { c(1 + 9 * a) } else { c(1) })
        })
        .unwrap();
        let d = t.decompose(&f).unwrap();
        assert_eq!(d.multiplicity("V0"), Some(a + 1));
        for name in &d.names {
            if name.starts_with("L(") {
                assert_eq!(d.multiplicity(name), Some(a));
            }
        }
        assert_eq!(d.multiplicity("V3"), Some(0));
    }

    #[test]
    fn non_characters_are_rejected() {
        let t = table(GroupKind::G21);
        let mut vals = vec![c(0); 5];
        vals[0] = c(1);
        let f = ClassFunction::new(t.group().clone(), vals).unwrap();
        assert!(matches!(t.decompose(&f), Err(Error::NotVirtualCharacter { .. })));
        assert_eq!(
            ClassFunction::new(t.group().clone(), vec![c(0); 4]).unwrap_err(),
            Error::ClassCount { expected: 5, got: 4 }
        );
    }

    #[test]
    fn symmetric_squares() {
        let t = table(GroupKind::G21);
        let v3 = &t.by_name("V3").unwrap().character;
        let s = v3.sym2();
        let sigma = t.group().element("sigma").unwrap();
        assert_eq!(*s.at_element(sigma), c(-1));
        assert_eq!(*s.degree(), c(6));
        let v1 = &t.by_name("V1").unwrap().character;
        assert_eq!(v1.sym2(), v1.tensor(v1).unwrap());
        let triv = &t.by_name("C").unwrap().character;
        assert_eq!(tensor_and_sym_square(triv, SquareMode::Tensor(v3)).unwrap(), *v3);
        assert_eq!(tensor_and_sym_square(v1, SquareMode::Sym2).unwrap(), v1.sym2());
    }

    #[test]
    fn decomposition_rendering() {
        let t = table(GroupKind::G21);
        let mut m = vec![0; 5];
        m[0] = -1;
        m[3] = 2;
        m[4] = 1;
        let d = t.decompose(&t.reconstruct(&m)).unwrap();
        assert_eq!(d.to_string(), "-C + V3^2 + V3bar");
        assert!(d.is_virtual);
        assert_eq!(d.dimension(), 8);
    }

    #[test]
    fn unsupported_groups() {
        let g = build_group(GroupKind::G21).unwrap();
        let imported = FiniteGroup::from_export(g.export()).unwrap();
        assert_eq!(character_table(&Arc::new(imported)).unwrap_err(), Error::UnsupportedGroup);
    }

    #[test]
    fn mu3_central_characters() {
        let t = table(GroupKind::Mu3xG21);
        assert_eq!(t.len(), 15);
        for irr in t.irreducibles() {
            let expected = if irr.name.ends_with("[w]") {
                1
            } else if irr.name.ends_with("[w^2]") {
                2
            } else {
                0
            };
            assert_eq!(central_exponent(irr), Some(expected), "{}", irr.name);
        }
    }
}
