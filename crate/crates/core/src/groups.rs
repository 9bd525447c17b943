//! Small finite groups stored as dense multiplication tables.
//!
//! Everything here is exhaustive: conjugacy classes by orbit closure,
//! centrality by full scan, validation of imported tables by checking every
//! triple for associativity. At the orders involved (at most 63 for the
//! built-in groups) this is exact and fast.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Imported tables larger than this are refused.
pub const MAX_ORDER: usize = 200;

/// The built-in constructions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// Exponent-3 extraspecial group of order 27, as upper unitriangular
    /// 3×3 matrices over `Z/3`.
    Heisenberg3,
    /// Frobenius group `Z/7 ⋊ Z/3` with `τστ⁻¹ = σ²`.
    G21,
    /// `μ₃ × G₂₁`, the split central extension of `G₂₁`.
    Mu3xG21,
    /// Direct product of cyclic groups of the given orders.
    Abelian(Vec<usize>),
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Heisenberg3 => f.write_str("heisenberg3"),
            GroupKind::G21 => f.write_str("g21"),
            GroupKind::Mu3xG21 => f.write_str("mu3_x_g21"),
            GroupKind::Abelian(orders) => {
                let parts: Vec<String> = orders.iter().map(|n| n.to_string()).collect();
                write!(f, "abelian:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "heisenberg3" | "h3" => Ok(GroupKind::Heisenberg3),
            "g21" => Ok(GroupKind::G21),
            "mu3_x_g21" | "mu3xg21" | "mu3-x-g21" => Ok(GroupKind::Mu3xG21),
            _ => {
                let orders = lower
                    .strip_prefix("abelian:")
                    .ok_or_else(|| Error::UnknownGroupKind(s.to_string()))?;
                let orders = if orders.is_empty() {
                    Vec::new()
                } else {
                    orders
                        .split(',')
                        .map(|p| p.trim().parse::<usize>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| Error::UnknownGroupKind(s.to_string()))?
                };
                Ok(GroupKind::Abelian(orders))
            }
        }
    }
}

/// Conjugacy classes of a [`FiniteGroup`].
///
/// The identity class comes first; the rest are ordered by their smallest
/// element index, which is also the class representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClassData {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub representatives: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl ConjugacyClassData {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementProps {
    pub order: usize,
    pub is_central: bool,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    kind: Option<GroupKind>,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    labels: BTreeMap<String, usize>,
    classes: ConjugacyClassData,
}

/// JSON form of a group: `{order, table, labels}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupExport {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub labels: BTreeMap<String, usize>,
}

pub fn build_group(kind: GroupKind) -> Result<FiniteGroup> {
    let (n, mul, labels): (usize, Box<dyn Fn(usize, usize) -> usize>, Vec<(String, usize)>) =
        match &kind {
            GroupKind::Heisenberg3 => {
                // (a, b, c) <-> [[1, a, c], [0, 1, b], [0, 0, 1]], index a + 3b + 9c
                let split = |x: usize| (x % 3, (x / 3) % 3, x / 9);
                let mul = move |x: usize, y: usize| {
                    let (a, b, c) = split(x);
                    let (a2, b2, c2) = split(y);
                    (a + a2) % 3 + 3 * ((b + b2) % 3) + 9 * ((c + c2 + a * b2) % 3)
                };
                (27, Box::new(mul), named(&[("xi", 1), ("eta", 3), ("z", 9)]))
            }
            GroupKind::G21 => (21, Box::new(g21_mul), named(&[("sigma", 1), ("tau", 7)])),
            GroupKind::Mu3xG21 => {
                let mul = |x: usize, y: usize| g21_mul(x % 21, y % 21) + 21 * ((x / 21 + y / 21) % 3);
                (
                    63,
                    Box::new(mul),
                    named(&[("sigma", 1), ("tau", 7), ("z", 21)]),
                )
            }
            GroupKind::Abelian(orders) => {
                if orders.contains(&0) {
                    return Err(Error::UnknownGroupKind(kind.to_string()));
                }
                let n: usize = orders.iter().product();
                if n > MAX_ORDER {
                    return Err(Error::InvalidTable(format!("order {n} exceeds {MAX_ORDER}")));
                }
                let radix = orders.clone();
                let mul = move |x: usize, y: usize| {
                    let (mut x, mut y, mut out, mut place) = (x, y, 0, 1);
                    for &m in &radix {
                        out += ((x % m + y % m) % m) * place;
                        x /= m;
                        y /= m;
                        place *= m;
                    }
                    out
                };
                let mut labels = Vec::new();
                let mut place = 1;
                for (i, &m) in orders.iter().enumerate() {
                    labels.push((format!("g{i}"), place));
                    place *= m;
                }
                (n, Box::new(mul), labels)
            }
        };
    let table = (0..n)
        .map(|x| (0..n).map(|y| mul(x, y)).collect())
        .collect();
    let mut group = FiniteGroup::from_table(table, labels.into_iter().collect())?;
    group.kind = Some(kind);
    Ok(group)
}

fn named(labels: &[(&str, usize)]) -> Vec<(String, usize)> {
    labels.iter().map(|&(l, i)| (l.to_string(), i)).collect()
}

/// `σ^s τ^t` at index `s + 7t`; `τ^t σ^s = σ^{s·2^t} τ^t`.
fn g21_mul(x: usize, y: usize) -> usize {
    let (s1, t1) = (x % 7, x / 7);
    let (s2, t2) = (y % 7, y / 7);
    let twist = [1, 2, 4][t1];
    (s1 + s2 * twist) % 7 + 7 * ((t1 + t2) % 3)
}

impl FiniteGroup {
    /// Validates a multiplication table and computes its class structure.
    pub fn from_table(table: Vec<Vec<usize>>, labels: BTreeMap<String, usize>) -> Result<Self> {
        let n = table.len();
        let invalid = |msg: String| Err(Error::InvalidTable(msg));
        if n == 0 {
            return invalid("empty table".into());
        }
        if n > MAX_ORDER {
            return invalid(format!("order {n} exceeds {MAX_ORDER}"));
        }
        if let Some(row) = table.iter().position(|r| r.len() != n) {
            return invalid(format!("row {row} has the wrong length"));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        if let Some(&bad) = flat.iter().find(|&&x| x >= n) {
            return invalid(format!("entry {bad} out of range"));
        }
        for i in 0..n {
            let row: BTreeSet<usize> = (0..n).map(|j| flat[i * n + j]).collect();
            let col: BTreeSet<usize> = (0..n).map(|j| flat[j * n + i]).collect();
            if row.len() != n || col.len() != n {
                return invalid(format!("row or column {i} is not a permutation"));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| flat[e * n + x] == x && flat[x * n + e] == x));
        let Some(identity) = identity else {
            return invalid("no identity element".into());
        };
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return invalid(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                    }
                }
            }
        }
        if let Some((label, &idx)) = labels.iter().find(|(_, &i)| i >= n) {
            return invalid(format!("label {label} points at {idx}"));
        }
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| flat[a * n + b] == identity).unwrap())
            .collect();
        let mut group = FiniteGroup {
            kind: None,
            order: n,
            table: flat,
            identity,
            inverses,
            labels,
            classes: ConjugacyClassData {
                class_of: Vec::new(),
                classes: Vec::new(),
                representatives: Vec::new(),
                sizes: Vec::new(),
            },
        };
        group.classes = group.compute_classes();
        Ok(group)
    }

    pub fn from_export(export: GroupExport) -> Result<Self> {
        if export.order != export.table.len() {
            return Err(Error::InvalidTable(format!(
                "declared order {} but table has {} rows",
                export.order,
                export.table.len()
            )));
        }
        Self::from_table(export.table, export.labels)
    }

    pub fn export(&self) -> GroupExport {
        GroupExport {
            order: self.order,
            table: self.table.chunks(self.order).map(<[usize]>::to_vec).collect(),
            labels: self.labels.clone(),
        }
    }

    fn compute_classes(&self) -> ConjugacyClassData {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut seeds: Vec<usize> = vec![self.identity];
        seeds.extend((0..n).filter(|&g| g != self.identity));
        for g in seeds {
            if class_of[g] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = (0..n).map(|x| self.conjugate(g, x)).collect();
            let idx = classes.len();
            for &m in &members {
                class_of[m] = idx;
            }
            classes.push(members.into_iter().collect());
        }
        let representatives: Vec<usize> = classes
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { self.identity } else { c[0] })
            .collect();
        let sizes = classes.iter().map(Vec::len).collect();
        ConjugacyClassData {
            class_of,
            classes,
            representatives,
            sizes,
        }
    }

    pub fn kind(&self) -> Option<&GroupKind> {
        self.kind.as_ref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &BTreeMap<String, usize> {
        &self.labels
    }

    pub fn conjugacy_classes(&self) -> &ConjugacyClassData {
        &self.classes
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(a) } else { a };
        (0..e.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    /// `x g x⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    /// `[g, h] = g h g⁻¹ h⁻¹`.
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.mul(self.inv(g), self.inv(h)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_central(&self, g: usize) -> bool {
        (0..self.order).all(|x| self.mul(g, x) == self.mul(x, g))
    }

    pub fn element_props(&self, g: usize) -> Result<ElementProps> {
        if g >= self.order {
            return Err(Error::ElementOutOfRange(g));
        }
        Ok(ElementProps {
            order: self.element_order(g),
            is_central: self.is_central(g),
        })
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&g| self.is_central(g)).collect()
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        use num_integer::Integer;
        (0..self.order).fold(1, |acc, g| acc.lcm(&self.element_order(g)))
    }

    /// Class index of `g^e`, for `g` in class `class`.
    pub fn power_map(&self, class: usize, e: i64) -> usize {
        let rep = self.classes.representatives[class];
        self.classes.class_of[self.pow(rep, e)]
    }

    /// Resolves a word such as `sigma^3*tau` or `z^2` over the generator
    /// labels; `e` and `1` denote the identity.
    pub fn element(&self, word: &str) -> Result<usize> {
        let word = word.trim();
        let unknown = || Error::UnknownElement(word.to_string());
        let mut acc = self.identity;
        for factor in word.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((name, exp)) => (name.trim(), exp.trim().parse::<i64>().map_err(|_| unknown())?),
                None => (factor, 1),
            };
            let g = match name {
                "e" | "1" | "id" => self.identity,
                _ => *self.labels.get(name).ok_or_else(unknown)?,
            };
            acc = self.mul(acc, self.pow(g, exp));
        }
        Ok(acc)
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut members = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        members.into_iter().collect()
    }

    /// Searches for a subgroup generated by at most two elements that is a
    /// complement to `normal` (trivial intersection, complementary order).
    pub fn two_generated_complement(&self, normal: &[usize]) -> Option<Vec<usize>> {
        let target = self.order / normal.len();
        let normal: BTreeSet<usize> = normal.iter().copied().collect();
        for a in 0..self.order {
            for b in a..self.order {
                let h = self.generated_subgroup(&[a, b]);
                if h.len() == target && h.iter().all(|x| *x == self.identity || !normal.contains(x)) {
                    return Some(h);
                }
            }
        }
        None
    }

    /// Quotient by a normal subgroup, with cosets numbered in order of their
    /// smallest element.
    pub fn quotient(&self, normal: &[usize]) -> Result<FiniteGroup> {
        let normal_set: BTreeSet<usize> = normal.iter().copied().collect();
        let is_normal = (0..self.order)
            .all(|x| normal.iter().all(|&h| normal_set.contains(&self.conjugate(h, x))));
        if !is_normal || !normal_set.contains(&self.identity) {
            return Err(Error::InvalidTable("subgroup is not normal".into()));
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset_of[g] == usize::MAX {
                for &h in normal {
                    coset_of[self.mul(g, h)] = reps.len();
                }
                reps.push(g);
            }
        }
        let table = reps
            .iter()
            .map(|&x| reps.iter().map(|&y| coset_of[self.mul(x, y)]).collect())
            .collect();
        FiniteGroup::from_table(table, BTreeMap::new())
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

#[cfg(test)]
mod tests {
    use super::*;

    fn built(kind: GroupKind) -> FiniteGroup {
        build_group(kind).unwrap()
    }

    /// Brute-force isomorphism test: try every bijection fixing the identity.
    fn isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
        fn extend(g: &FiniteGroup, h: &FiniteGroup, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let i = map.len();
            if i == g.order() {
                return (0..i).all(|a| (0..i).all(|b| map[g.mul(a, b)] == h.mul(map[a], map[b])));
            }
            for c in 0..h.order() {
                if used[c] || (i == g.identity()) != (c == h.identity()) {
                    continue;
                }
                if g.element_order(i) != h.element_order(c) {
                    continue;
                }
                used[c] = true;
                map.push(c);
                if extend(g, h, map, used) {
                    return true;
                }
                map.pop();
                used[c] = false;
            }
            false
        }
        g.order() == h.order() && extend(g, h, &mut Vec::new(), &mut vec![false; h.order()])
    }

    #[test]
    fn heisenberg_structure() {
        let g = built(GroupKind::Heisenberg3);
        assert_eq!(g.order(), 27);
        let center = g.center();
        assert_eq!(center.len(), 3);
        assert!((0..27).filter(|&x| x != g.identity()).all(|x| g.element_order(x) == 3));
        let (xi, eta, z) = (g.element("xi").unwrap(), g.element("eta").unwrap(), g.element("z").unwrap());
        assert_eq!(g.commutator(xi, eta), z);
        assert_eq!(g.element_props(z).unwrap(), ElementProps { order: 3, is_central: true });
        assert!(!g.is_central(xi));
        assert_eq!(g.exponent(), 3);
    }

    #[test]
    fn heisenberg_classes() {
        let g = built(GroupKind::Heisenberg3);
        let cc = g.conjugacy_classes();
        assert_eq!(cc.len(), 11);
        assert_eq!(cc.sizes.iter().filter(|&&s| s == 1).count(), 3);
        assert_eq!(cc.sizes.iter().filter(|&&s| s == 3).count(), 8);
        assert_eq!(cc.sizes.iter().sum::<usize>(), 27);
        assert_eq!(cc.classes[0], vec![g.identity()]);
    }

    #[test]
    fn heisenberg_mod_center_is_z3_squared() {
        let g = built(GroupKind::Heisenberg3);
        let q = g.quotient(&g.center()).unwrap();
        assert!(isomorphic(&q, &built(GroupKind::Abelian(vec![3, 3]))));
        assert!(!isomorphic(&q, &built(GroupKind::Abelian(vec![9]))));
    }

    #[test]
    fn g21_structure() {
        let g = built(GroupKind::G21);
        assert_eq!(g.order(), 21);
        assert_eq!(g.center(), vec![g.identity()]);
        let cc = g.conjugacy_classes();
        let mut sizes = cc.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 3, 7, 7]);
        let sigma = g.element("sigma").unwrap();
        let tau = g.element("tau").unwrap();
        assert_eq!(g.conjugate(sigma, tau), g.pow(sigma, 2));
        assert_ne!(cc.class_of[sigma], cc.class_of[g.pow(sigma, 3)]);
        assert_eq!(g.element_props(sigma).unwrap(), ElementProps { order: 7, is_central: false });
        // columns come out as 1, σ, σ³, τ, τ²
        let reps: Vec<usize> = ["e", "sigma", "sigma^3", "tau", "tau^2"]
            .iter()
            .map(|w| g.element(w).unwrap())
            .collect();
        assert_eq!(cc.representatives, reps);
    }

    #[test]
    fn mu3_x_g21_structure() {
        let g = built(GroupKind::Mu3xG21);
        assert_eq!(g.center().len(), 3);
        assert_eq!(g.conjugacy_classes().len(), 15);
        assert!(g.two_generated_complement(&g.center()).is_some());
        let h3 = built(GroupKind::Heisenberg3);
        assert!(h3.two_generated_complement(&h3.center()).is_none());
    }

    #[test]
    fn abelian_groups() {
        let g = built(GroupKind::Abelian(vec![3, 3]));
        assert_eq!(g.order(), 9);
        assert_eq!(g.conjugacy_classes().len(), 9);
        assert!(g.conjugacy_classes().sizes.iter().all(|&s| s == 1));
        assert_eq!(built(GroupKind::Abelian(vec![])).order(), 1);
        assert!(build_group(GroupKind::Abelian(vec![3, 0])).is_err());
    }

    #[test]
    fn builtins_validate() {
        for kind in [
            GroupKind::Heisenberg3,
            GroupKind::G21,
            GroupKind::Mu3xG21,
            GroupKind::Abelian(vec![2, 4, 3]),
        ] {
            let g = built(kind);
            let again = FiniteGroup::from_export(g.export()).unwrap();
            assert_eq!(again, g);
            assert_eq!(again.conjugacy_classes(), g.conjugacy_classes());
        }
    }

    #[test]
    fn identity_properties() {
        let g = built(GroupKind::G21);
        let e = g.element("e").unwrap();
        assert_eq!(g.element_props(e).unwrap(), ElementProps { order: 1, is_central: true });
        assert_eq!(g.element_props(99), Err(Error::ElementOutOfRange(99)));
        assert_eq!(g.element("rho"), Err(Error::UnknownElement("rho".into())));
    }

    #[test]
    fn power_map_on_classes() {
        let g = built(GroupKind::G21);
        let cc = g.conjugacy_classes();
        let sigma_class = cc.class_of[g.element("sigma").unwrap()];
        let sigma3_class = cc.class_of[g.element("sigma^3").unwrap()];
        assert_eq!(g.power_map(sigma_class, 3), sigma3_class);
        assert_eq!(g.power_map(sigma_class, 2), sigma_class);
        assert_eq!(g.power_map(sigma_class, 7), 0);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("h3".parse::<GroupKind>().unwrap(), GroupKind::Heisenberg3);
        assert_eq!("mu3xg21".parse::<GroupKind>().unwrap(), GroupKind::Mu3xG21);
        assert_eq!(
            "abelian:3,3".parse::<GroupKind>().unwrap(),
            GroupKind::Abelian(vec![3, 3])
        );
        assert!(matches!("s4".parse::<GroupKind>(), Err(Error::UnknownGroupKind(_))));
        for kind in [GroupKind::G21, GroupKind::Abelian(vec![2, 7])] {
            assert_eq!(kind.to_string().parse::<GroupKind>().unwrap(), kind);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        let not_latin = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table(not_latin, BTreeMap::new()).is_err());
        // Latin square with identity 0 that is not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(loop5, BTreeMap::new()).unwrap_err();
        assert!(matches!(err, Error::InvalidTable(msg) if msg.contains("!=")));
        let export = GroupExport { order: 3, table: vec![vec![0]], labels: BTreeMap::new() };
        assert!(FiniteGroup::from_export(export).is_err());
    }
}
