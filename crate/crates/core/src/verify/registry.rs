//! The six fake projective planes with at least nine automorphisms.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lefschetz::SectionGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AutomorphismGroup {
    #[serde(rename = "G21")]
    G21,
    #[serde(rename = "(Z/3)^2")]
    Z3Squared,
}

impl AutomorphismGroup {
    /// `G21` lifts to the split extension `μ₃ × G₂₁`; `(Z/3)²` lifts to `H₃`.
    pub fn section_group(self) -> SectionGroup {
        match self {
            AutomorphismGroup::G21 => SectionGroup::Mu3xG21,
            AutomorphismGroup::Z3Squared => SectionGroup::Heisenberg3,
        }
    }
}

impl fmt::Display for AutomorphismGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AutomorphismGroup::G21 => "G21",
            AutomorphismGroup::Z3Squared => "(Z/3)^2",
        })
    }
}

/// Finite abelian group `Z/d₁ × … × Z/d_r`, stored by its cyclic factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianInvariants(pub Vec<u64>);

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants(Vec::new())
    }

    pub fn order(&self) -> u64 {
        self.0.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.0.iter().fold(1, |acc, d| acc.lcm(d))
    }
}

/// `0`, `Z/14`, `(Z/2)^4`, `Z/26 x Z/2`.
impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let d = self.0[i];
            let run = self.0[i..].iter().take_while(|&&e| e == d).count();
            parts.push(if run > 1 {
                format!("(Z/{d})^{run}")
            } else {
                format!("Z/{d}")
            });
            i += run;
        }
        f.write_str(&parts.join(" x "))
    }
}

/// Where a registry entry for the invariant torsion orders comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Read off the `H₁(S/A_S, Z)` column.
    Table,
    /// Not determined by the table; recorded as an assumption.
    Interpretation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FppCase {
    /// 1-based row number.
    pub index: usize,
    pub label: String,
    pub p: u64,
    pub t1: Vec<u64>,
    pub n: u64,
    /// Number of fundamental groups in the row; kept verbatim.
    pub count_pi: u64,
    pub automorphism_group: AutomorphismGroup,
    pub h1: AbelianInvariants,
    pub pi_lifts: bool,
    pub h1_quotient: AbelianInvariants,
    pub normalizer_lifts: bool,
    pub invariant_epsilon_orders: Vec<u64>,
}

impl FppCase {
    pub fn section_group(&self) -> SectionGroup {
        self.automorphism_group.section_group()
    }

    /// Checks that every recorded torsion order divides `exp H₁` and is
    /// coprime to the exponent of `A_S`.
    pub fn validate(&self) -> Result<()> {
        let exponent = self.section_group().automorphism_exponent();
        for &m in &self.invariant_epsilon_orders {
            if m < 2 || self.h1.exponent() % m != 0 || m.gcd(&exponent) != 1 {
                return Err(Error::InadmissibleTorsion {
                    case: self.label.clone(),
                    m,
                });
            }
        }
        Ok(())
    }

    pub fn admits(&self, m: u64) -> bool {
        self.invariant_epsilon_orders.contains(&m)
    }

    /// An invariant torsion order is read off the table when it divides
    /// `exp H₁(S/A_S, Z)`; every other recorded order is an assumption.
    pub fn provenance(&self, m: u64) -> Provenance {
        if m > 1 && self.h1_quotient.exponent() % m == 0 {
            Provenance::Table
        } else {
            Provenance::Interpretation
        }
    }

    /// `Q(sqrt-7) #1`, unique within the registry.
    pub fn id(&self) -> String {
        format!("{} #{}", self.label, self.index)
    }
}

#[allow(clippy::too_many_arguments)]
fn row(
    index: usize,
    label: &str,
    p: u64,
    t1: &[u64],
    n: u64,
    count_pi: u64,
    automorphism_group: AutomorphismGroup,
    h1: &[u64],
    pi_lifts: bool,
    h1_quotient: &[u64],
    normalizer_lifts: bool,
    invariant_epsilon_orders: &[u64],
) -> FppCase {
    FppCase {
        index,
        label: label.to_string(),
        p,
        t1: t1.to_vec(),
        n,
        count_pi,
        automorphism_group,
        h1: AbelianInvariants(h1.to_vec()),
        pi_lifts,
        h1_quotient: AbelianInvariants(h1_quotient.to_vec()),
        normalizer_lifts,
        invariant_epsilon_orders: invariant_epsilon_orders.to_vec(),
    }
}

pub fn table_a_registry() -> Vec<FppCase> {
    use AutomorphismGroup::*;
    vec![
        row(1, "Q(sqrt-7)", 2, &[], 21, 3, G21, &[2, 2, 2, 2], true, &[2], true, &[2]),
        row(2, "Q(sqrt-7)", 2, &[7], 21, 4, G21, &[2, 2, 2], true, &[], true, &[2]),
        row(3, "C20", 2, &[], 21, 1, G21, &[2, 2, 2, 2, 2, 2], true, &[], true, &[2]),
        row(4, "C2", 2, &[], 9, 6, Z3Squared, &[14], true, &[2], false, &[2, 7, 14]),
        row(5, "C2", 2, &[3], 9, 1, Z3Squared, &[7], true, &[], false, &[7]),
        row(6, "C18", 3, &[], 9, 1, Z3Squared, &[26, 2], true, &[], false, &[2, 13, 26]),
    ]
}

/// Looks a case up by 1-based row number, `label #row`, or a label that
/// names exactly one row.
pub fn find_case(query: &str) -> Result<FppCase> {
    let cases = table_a_registry();
    let query = query.trim();
    if let Ok(i) = query.parse::<usize>() {
        return cases
            .into_iter()
            .find(|c| c.index == i)
            .ok_or_else(|| Error::UnknownCase(query.to_string()));
    }
    if let Some(c) = cases.iter().find(|c| c.id().eq_ignore_ascii_case(query)) {
        return Ok(c.clone());
    }
    let matches: Vec<_> = cases
        .into_iter()
        .filter(|c| c.label.eq_ignore_ascii_case(query))
        .collect();
    match matches.as_slice() {
        [one] => Ok(one.clone()),
        _ => Err(Error::UnknownCase(query.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_as_printed() {
        let cases = table_a_registry();
        assert_eq!(cases.len(), 6);
        let first = &cases[0];
        assert_eq!(first.label, "Q(sqrt-7)");
        assert_eq!((first.p, first.n), (2, 21));
        assert!(first.t1.is_empty());
        assert_eq!(first.automorphism_group, AutomorphismGroup::G21);
        assert_eq!(first.h1.to_string(), "(Z/2)^4");
        assert!(first.pi_lifts && first.normalizer_lifts);
        let fourth = &cases[3];
        assert_eq!(fourth.label, "C2");
        assert_eq!(fourth.automorphism_group, AutomorphismGroup::Z3Squared);
        assert_eq!(fourth.h1.to_string(), "Z/14");
        assert!(fourth.pi_lifts && !fourth.normalizer_lifts);
        assert_eq!(cases[5].h1.to_string(), "Z/26 x Z/2");
        assert_eq!(cases[1].h1_quotient.to_string(), "0");
        assert_eq!(fourth.provenance(2), Provenance::Table);
        assert_eq!(fourth.provenance(7), Provenance::Interpretation);
        assert_eq!(cases[2].provenance(2), Provenance::Interpretation);
    }

    #[test]
    fn registry_is_consistent() {
        for case in table_a_registry() {
            case.validate().unwrap();
            let expected = case.automorphism_group == AutomorphismGroup::G21;
            assert_eq!(case.normalizer_lifts, expected);
            assert_eq!(case.n, if expected { 21 } else { 9 });
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(find_case("4").unwrap().label, "C2");
        assert_eq!(find_case("c18").unwrap().index, 6);
        assert_eq!(find_case("C2 #5").unwrap().index, 5);
        assert!(matches!(find_case("C2"), Err(Error::UnknownCase(_))));
        assert!(find_case("7").is_err());
    }

    #[test]
    fn bad_torsion_is_rejected() {
        let mut case = table_a_registry().remove(0);
        case.invariant_epsilon_orders.push(7);
        assert!(matches!(case.validate(), Err(Error::InadmissibleTorsion { m: 7, .. })));
    }
}
