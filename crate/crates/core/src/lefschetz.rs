//! Holomorphic Lefschetz traces and the characters of the section spaces
//! `H⁰(S, O_S(k) ⊗ ε)`.
//!
//! For an automorphism with isolated fixed points the alternating trace on
//! cohomology is `Σ w / ((1 - α₁)(1 - α₂))` over the fixed points, where `w`
//! is the trace on the line-bundle fiber and `α₁, α₂` the tangent
//! eigenvalues. Combined with `χ(O_S(k) ⊗ ε) = (k-1)(k-2)/2` and the scalar
//! action of the center, this pins down the whole `G`-character.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use serde::Serialize;

use crate::chartab::ClassFunction;
use crate::cyclotomic::{omega, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupKind};

/// Local data of one isolated fixed point.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointDatum {
    alpha1: CyclotomicNumber,
    alpha2: CyclotomicNumber,
    weight: CyclotomicNumber,
}

impl FixedPointDatum {
    pub fn new(alpha1: CyclotomicNumber, alpha2: CyclotomicNumber, weight: CyclotomicNumber) -> Result<Self> {
        for x in [&alpha1, &alpha2, &weight] {
            if !x.is_root_of_unity() {
                return Err(Error::NotRootOfUnity(x.to_string()));
            }
        }
        if alpha1.is_one() || alpha2.is_one() {
            return Err(Error::NonIsolatedFixedPoint);
        }
        Ok(FixedPointDatum {
            alpha1,
            alpha2,
            weight,
        })
    }

    /// Builds a datum from exponents of `ζ_n`.
    pub fn from_exponents(n: usize, alpha1: i64, alpha2: i64, weight: i64) -> Result<Self> {
        let z = |e| CyclotomicNumber::root_of_unity(n, e);
        let (alpha1, alpha2, weight) = (z(alpha1)?, z(alpha2)?, z(weight)?);
        if alpha1.is_one() || alpha2.is_one() {
            return Err(Error::NonIsolatedFixedPoint);
        }
        Ok(FixedPointDatum {
            alpha1,
            alpha2,
            weight,
        })
    }

    pub fn contribution(&self) -> Result<CyclotomicNumber> {
        let one = CyclotomicNumber::one();
        let denominator = (&one - &self.alpha1) * (&one - &self.alpha2);
        self.weight.checked_div(&denominator)
    }
}

pub fn lefschetz_trace(points: &[FixedPointDatum]) -> Result<CyclotomicNumber> {
    if points.is_empty() {
        return Err(Error::NoFixedPoints);
    }
    points.iter().map(FixedPointDatum::contribution).sum()
}

/// `χ(O_S(k) ⊗ ε) = (k-1)(k-2)/2`.
pub fn riemann_roch_chi(k: i64) -> i64 {
    (k - 1) * (k - 2) / 2
}

/// Fixed-point data of an order-3 automorphism `τ^t` acting on
/// `O_S(k) ⊗ ε`: three points, tangent eigenvalues `(ω^t, ω^{2t})`, fiber
/// weights `ω^{itk}` for `i = 1, 2, 3`.
pub fn order3_points(k: i64, t: i64) -> Result<Vec<FixedPointDatum>> {
    (1..=3)
        .map(|i| FixedPointDatum::from_exponents(3, t, 2 * t, i * t * k))
        .collect()
}

/// Trace of an order-3 element on the section space: `(ω^k + ω^{2k} + ω^{3k}) / 3`.
pub fn order3_trace(k: i64) -> CyclotomicNumber {
    lefschetz_trace(&order3_points(k, 1).expect("valid data")).expect("isolated points")
}

/// Fixed-point data of the order-7 automorphism `σ` on `O_S(k)`:
/// eigenvalue pairs `(ζ, ζ³), (ζ², ζ⁶), (ζ⁴, ζ⁵)` with fiber weights
/// `ζ^{6k}, ζ^{5k}, ζ^{3k}`.
pub fn order7_points(k: i64) -> Vec<FixedPointDatum> {
    [(1, 3, 6 * k), (2, 6, 5 * k), (4, 5, 3 * k)]
        .into_iter()
        .map(|(a1, a2, w)| FixedPointDatum::from_exponents(7, a1, a2, w).expect("valid data"))
        .collect()
}

/// `1 / ((1 - α₁)(1 - α₂))` at the three fixed points of `σ`; the tangent
/// data does not depend on `k`.
fn order7_inverse_denominators() -> &'static [(i64, CyclotomicNumber); 3] {
    static CACHE: OnceLock<[(i64, CyclotomicNumber); 3]> = OnceLock::new();
    CACHE.get_or_init(|| {
        let points = order7_points(0);
        let weight_exponents = [6, 5, 3];
        std::array::from_fn(|i| (weight_exponents[i], points[i].contribution().expect("isolated point")))
    })
}

/// Trace of `σ^a`, obtained from that of `σ` by `ζ ↦ ζ^a`.
pub fn order7_trace(k: i64, a: i64) -> Result<CyclotomicNumber> {
    if a.rem_euclid(7) == 0 {
        return Err(Error::TrivialPower(a));
    }
    let trace: CyclotomicNumber = order7_inverse_denominators()
        .iter()
        .map(|(w, inv)| CyclotomicNumber::root_of_unity(7, w * k).expect("positive order") * inv)
        .sum();
    trace.galois_conjugate(a)
}

/// The group `G` acting on the section spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionGroup {
    /// `A_S = (Z/3)²`, non-split extension: `G = H₃`.
    Heisenberg3,
    /// `A_S = G₂₁`, split extension: `G = μ₃ × G₂₁`.
    Mu3xG21,
}

impl SectionGroup {
    pub fn group_kind(self) -> GroupKind {
        match self {
            SectionGroup::Heisenberg3 => GroupKind::Heisenberg3,
            SectionGroup::Mu3xG21 => GroupKind::Mu3xG21,
        }
    }

    /// Exponent of `A_S`.
    pub fn automorphism_exponent(self) -> u64 {
        match self {
            SectionGroup::Heisenberg3 => 3,
            SectionGroup::Mu3xG21 => 21,
        }
    }
}

impl fmt::Display for SectionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.group_kind(), f)
    }
}

impl FromStr for SectionGroup {
    type Err = Error;

    /// Accepts the group names plus `g21`, meaning the case `A_S = G₂₁`.
    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<GroupKind>()? {
            GroupKind::Heisenberg3 => Ok(SectionGroup::Heisenberg3),
            GroupKind::Mu3xG21 | GroupKind::G21 => Ok(SectionGroup::Mu3xG21),
            GroupKind::Abelian(_) => Err(Error::UnknownGroupKind(s.to_string())),
        }
    }
}

/// The `G`-module `H⁰(S, O_S(k) ⊗ ε)` with `ε` of order `epsilon_order`
/// (0 for the trivial bundle).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionSpaceSpec {
    pub group_kind: SectionGroup,
    pub k: i64,
    pub epsilon_order: u64,
    pub epsilon_invariant: bool,
}

impl SectionSpaceSpec {
    pub fn new(group_kind: SectionGroup, k: i64, epsilon_order: u64) -> Self {
        SectionSpaceSpec {
            group_kind,
            k,
            epsilon_order,
            epsilon_invariant: epsilon_order > 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.epsilon_order;
        if m > 0 {
            if !self.epsilon_invariant {
                return Err(Error::TorsionNotInvariant);
            }
            let exponent = self.group_kind.automorphism_exponent();
            if m.gcd(&exponent) != 1 {
                return Err(Error::TorsionNotCoprime { m, exponent });
            }
        }
        Ok(())
    }

    /// `H^i` vanishes for `i > 0` once `k ≥ 4`.
    pub fn is_honest(&self) -> bool {
        self.k >= 4
    }
}

#[derive(Clone, Debug)]
pub struct SectionCharacter {
    pub spec: SectionSpaceSpec,
    /// Character of `H⁰` when `k ≥ 4`, otherwise the Euler-characteristic
    /// class function `Σ (-1)^i H^i`.
    pub character: ClassFunction,
}

impl SectionCharacter {
    pub fn is_virtual(&self) -> bool {
        !self.spec.is_honest()
    }

    pub fn dimension(&self) -> i64 {
        riemann_roch_chi(self.spec.k)
    }
}

/// Assembles the exact `G`-character of `H⁰(S, O_S(k) ⊗ ε)`.
///
/// Central elements `z^j` act by the scalar `ω^{jk}`; order-3 elements
/// contribute [`order3_trace`] (or its square for `τ²`-type elements),
/// order-7 elements `σ^a` contribute [`order7_trace`]. The torsion bundle
/// is linearized with trivial fiber action at every fixed point, so it does
/// not change any value.
pub fn section_character(spec: &SectionSpaceSpec, group: &Arc<FiniteGroup>) -> Result<SectionCharacter> {
    spec.validate()?;
    if group.kind() != Some(&spec.group_kind.group_kind()) {
        return Err(Error::GroupMismatch);
    }
    let k = spec.k;
    let dim = CyclotomicNumber::from(riemann_roch_chi(k));
    let z = group.element("z")?;
    let central_scalar = |j: i64| -> Result<CyclotomicNumber> { omega().pow(j * k) };

    let character = match spec.group_kind {
        SectionGroup::Heisenberg3 => {
            let trace = order3_trace(k);
            ClassFunction::from_elements(group.clone(), |g| {
                match (0..3).find(|&j| group.pow(z, j) == g) {
                    Some(j) => Ok(central_scalar(j)? * &dim),
                    None => Ok(trace.clone()),
                }
            })?
        }
        SectionGroup::Mu3xG21 => {
            let sigma = group.element("sigma")?;
            let tau = group.element("tau")?;
            let mut normal_form = vec![(0i64, 0i64, 0i64); group.order()];
            for j in 0..3 {
                for s in 0..7 {
                    for t in 0..3 {
                        let g = group.mul(group.pow(z, j), group.mul(group.pow(sigma, s), group.pow(tau, t)));
                        normal_form[g] = (j, s, t);
                    }
                }
            }
            let sigma_traces = (1..7)
                .map(|a| order7_trace(k, a))
                .collect::<Result<Vec<_>>>()?;
            let tau_traces = [
                CyclotomicNumber::zero(),
                lefschetz_trace(&order3_points(k, 1)?)?,
                lefschetz_trace(&order3_points(k, 2)?)?,
            ];
            ClassFunction::from_elements(group.clone(), |g| {
                let (j, s, t) = normal_form[g];
                let base = match (s, t) {
                    (0, 0) => dim.clone(),
                    (s, 0) => sigma_traces[s as usize - 1].clone(),
                    (_, t) => tau_traces[t as usize].clone(),
                };
                Ok(central_scalar(j)? * base)
            })?
        }
    };
    Ok(SectionCharacter {
        spec: spec.clone(),
        character,
    })
}

/// Pairs of exponent triples `(v, w)` for which the eigenvalue sum
/// `ω^{v₁} + ω^{v₂} + ω^{v₃}` equals the fixed-point value
/// `(w₁⁴ + w₂⁴ + w₃⁴) / ((1 - ω)(1 - ω²))` with `wᵢ = ω^{wᵢ}`, scanned
/// over all 27 × 27 choices.
pub fn weight_forcing_pairs() -> Vec<([i64; 3], [i64; 3])> {
    let triples: Vec<[i64; 3]> = (0..27).map(|x| [x % 3, (x / 3) % 3, x / 9]).collect();
    let mut out = Vec::new();
    for v in &triples {
        let eigen_sum: CyclotomicNumber = v
            .iter()
            .map(|&e| CyclotomicNumber::root_of_unity(3, e).unwrap())
            .sum();
        for w in &triples {
            let points: Vec<FixedPointDatum> = w
                .iter()
                .map(|&e| FixedPointDatum::from_exponents(3, 1, 2, 4 * e).unwrap())
                .collect();
            if lefschetz_trace(&points).unwrap() == eigen_sum {
                out.push((*v, *w));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{b, b_bar, rat};
    use crate::groups::build_group;

    fn c(x: i64) -> CyclotomicNumber {
        CyclotomicNumber::from(x)
    }

    fn w(e: i64) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(3, e).unwrap()
    }

    #[test]
    fn order3_examples() {
        let points: Vec<_> = (0..3).map(|_| FixedPointDatum::new(w(1), w(2), c(1)).unwrap()).collect();
        assert_eq!(lefschetz_trace(&points).unwrap(), c(1));
        let points: Vec<_> = [1, 2, 0]
            .into_iter()
            .map(|e| FixedPointDatum::new(w(1), w(2), w(e)).unwrap())
            .collect();
        assert!(lefschetz_trace(&points).unwrap().is_zero());
        assert_eq!(order3_trace(6), c(1));
        assert!(order3_trace(4).is_zero());
        assert!(order3_trace(1).is_zero());
    }

    #[test]
    fn order7_table() {
        let expected = [c(1), c(0), c(0), c(1), b_bar(), c(-1), b()];
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(order7_trace(k as i64, 1).unwrap(), *e, "k = {k}");
        }
        assert_eq!(lefschetz_trace(&order7_points(5)).unwrap(), c(-1));
        for k in 0..7 {
            assert_eq!(order7_trace(k, 1).unwrap(), lefschetz_trace(&order7_points(k)).unwrap());
        }
        assert_eq!(order7_trace(3, 14), Err(Error::TrivialPower(14)));
    }

    #[test]
    fn order7_galois_matches_substitution() {
        // substitute ζ³ directly into the fixed-point formula
        let z = |e: i64| CyclotomicNumber::root_of_unity(7, 3 * e).unwrap();
        let one = c(1);
        let k = 4;
        let direct = [(1, 3, 6 * k), (2, 6, 5 * k), (4, 5, 3 * k)]
            .into_iter()
            .map(|(a1, a2, wt)| z(wt).checked_div(&((&one - &z(a1)) * (&one - &z(a2)))).unwrap())
            .sum::<CyclotomicNumber>();
        assert_eq!(order7_trace(4, 3).unwrap(), direct);
        assert_eq!(direct, b());
    }

    #[test]
    fn traces_are_periodic() {
        for k in 0..42 {
            assert_eq!(order3_trace(k), order3_trace(k % 3));
            for a in 1..7 {
                assert_eq!(order7_trace(k, a).unwrap(), order7_trace(k % 7, a).unwrap());
            }
        }
    }

    #[test]
    fn riemann_roch() {
        assert_eq!(riemann_roch_chi(4), 3);
        assert_eq!(riemann_roch_chi(3), 1);
        assert_eq!(riemann_roch_chi(2), 0);
        assert_eq!(riemann_roch_chi(1), 0);
        assert_eq!(riemann_roch_chi(0), 1);
        assert_eq!(riemann_roch_chi(-1), 3);
    }

    #[test]
    fn fixed_point_validation() {
        assert_eq!(
            FixedPointDatum::new(c(1), w(2), c(1)),
            Err(Error::NonIsolatedFixedPoint)
        );
        assert!(matches!(
            FixedPointDatum::new(w(1), w(2), c(2)),
            Err(Error::NotRootOfUnity(_))
        ));
        assert_eq!(lefschetz_trace(&[]), Err(Error::NoFixedPoints));
        let half = CyclotomicNumber::from_rational(rat(1, 2));
        assert!(FixedPointDatum::new(half, w(1), c(1)).is_err());
    }

    #[test]
    fn heisenberg_section_characters() {
        let g = Arc::new(build_group(GroupKind::Heisenberg3).unwrap());
        let spec = SectionSpaceSpec::new(SectionGroup::Heisenberg3, 5, 7);
        let chi = section_character(&spec, &g).unwrap().character;
        let z = g.element("z").unwrap();
        assert_eq!(*chi.degree(), c(6));
        assert_eq!(*chi.at_element(z), w(2) * c(6));
        assert_eq!(*chi.at_element(g.pow(z, 2)), w(1) * c(6));
        let classes = g.conjugacy_classes();
        for (rep, value) in classes.representatives.iter().zip(chi.values()) {
            if !g.is_central(*rep) {
                assert!(value.is_zero());
            }
        }
    }

    #[test]
    fn spec_validation() {
        let g = Arc::new(build_group(GroupKind::Heisenberg3).unwrap());
        let bad = SectionSpaceSpec::new(SectionGroup::Heisenberg3, 5, 6);
        assert_eq!(
            section_character(&bad, &g).unwrap_err(),
            Error::TorsionNotCoprime { m: 6, exponent: 3 }
        );
        let mut hidden = SectionSpaceSpec::new(SectionGroup::Heisenberg3, 5, 2);
        hidden.epsilon_invariant = false;
        assert_eq!(hidden.validate(), Err(Error::TorsionNotInvariant));
        let seven = SectionSpaceSpec::new(SectionGroup::Mu3xG21, 5, 7);
        assert!(matches!(seven.validate(), Err(Error::TorsionNotCoprime { .. })));
        let wrong_group = SectionSpaceSpec::new(SectionGroup::Mu3xG21, 5, 0);
        assert_eq!(section_character(&wrong_group, &g).unwrap_err(), Error::GroupMismatch);
    }

    #[test]
    fn small_k_is_flagged_virtual() {
        let g = Arc::new(build_group(GroupKind::Mu3xG21).unwrap());
        let sc = section_character(&SectionSpaceSpec::new(SectionGroup::Mu3xG21, 2, 0), &g).unwrap();
        assert!(sc.is_virtual());
        assert_eq!(sc.dimension(), 0);
        let sc = section_character(&SectionSpaceSpec::new(SectionGroup::Mu3xG21, 4, 2), &g).unwrap();
        assert!(!sc.is_virtual());
    }

    #[test]
    fn weights_must_be_distinct() {
        let pairs = weight_forcing_pairs();
        let distinct = |t: &[i64; 3]| t[0] != t[1] && t[1] != t[2] && t[0] != t[2];
        assert_eq!(pairs.len(), 36);
        assert!(pairs.iter().all(|(v, w)| distinct(v) && distinct(w)));
    }

    #[test]
    fn section_group_names() {
        assert_eq!("g21".parse::<SectionGroup>().unwrap(), SectionGroup::Mu3xG21);
        assert_eq!("h3".parse::<SectionGroup>().unwrap(), SectionGroup::Heisenberg3);
        assert!("abelian:3,3".parse::<SectionGroup>().is_err());
    }
}
