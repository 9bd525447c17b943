//! `V = C[A]^{⊕ a} ⊕ U` splittings of section spaces and subrepresentation
//! dimensions.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::chartab::{central_exponent, character_table, CharacterTable, Decomposition};
use crate::error::{Error, Result};
use crate::groups::{build_group, FiniteGroup, GroupKind};
use crate::lefschetz::{section_character, SectionCharacter, SectionGroup, SectionSpaceSpec};

/// A section group together with its character table, built once.
#[derive(Clone, Debug)]
pub struct SectionContext {
    pub kind: SectionGroup,
    pub group: Arc<FiniteGroup>,
    pub table: CharacterTable,
}

impl SectionContext {
    pub fn new(kind: SectionGroup) -> Result<Self> {
        let group = Arc::new(build_group(kind.group_kind())?);
        let table = character_table(&group)?;
        Ok(SectionContext { kind, group, table })
    }

    pub fn character(&self, k: i64, epsilon_order: u64) -> Result<SectionCharacter> {
        section_character(&SectionSpaceSpec::new(self.kind, k, epsilon_order), &self.group)
    }

    pub fn decompose(&self, k: i64, epsilon_order: u64) -> Result<Decomposition> {
        self.table.decompose(&self.character(k, epsilon_order)?.character)
    }

    pub fn split(&self, k: i64, epsilon_order: u64) -> Result<RegularSplit> {
        regular_split(&self.decompose(k, epsilon_order)?, &self.table)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularSplit {
    pub decomposition: Decomposition,
    /// `C[(Z/3)^2]` or `C[G21]`.
    pub regular_label: String,
    pub regular_dim: i64,
    /// Exponent `j` of the common central character `z ↦ ω^j`, if any
    /// constituent is present.
    pub central_exponent: Option<usize>,
    /// `a_k`.
    pub regular_part: i64,
    /// `U_k`, over the irreducibles of the regular factor.
    pub remainder: Decomposition,
}

impl RegularSplit {
    /// `a_k · dim C[A] + dim U_k`, which must equal the dimension of `V`.
    pub fn ledger_dimension(&self) -> i64 {
        self.regular_part * self.regular_dim + self.remainder.dimension()
    }
}

/// `V0 + C[(Z/3)^2]`, `C[G21]^9 + C`, `C[G21] - V3 - V3bar`.
impl fmt::Display for RegularSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let regular = match self.regular_part {
            0 => None,
            1 => Some(self.regular_label.clone()),
            a => Some(format!("{}^{a}", self.regular_label)),
        };
        let rest = self.remainder.to_string();
        match (regular, rest.as_str()) {
            (None, _) => f.write_str(&rest),
            (Some(r), "0") => f.write_str(&r),
            (Some(r), _) if rest.starts_with('-') => write!(f, "{r} - {}", &rest[1..]),
            (Some(r), _) => write!(f, "{rest} + {r}"),
        }
    }
}

/// Splits off the largest multiple of the regular representation of `A_S`
/// (twisted by the common central character) that leaves a remainder
/// matching the printed `U_k`.
///
/// The regular factor is `C[G₂₁]` on `μ₃ × G₂₁` and the pullback of
/// `C[(Z/3)²]` on `H₃`. Inside one central-character sector the regular
/// factor contains every one-dimensional irreducible exactly once, so `a`
/// is the least multiplicity among them (0 when the sector has none).
pub fn regular_split(d: &Decomposition, table: &CharacterTable) -> Result<RegularSplit> {
    let group = table.group();
    let kind = group.kind().ok_or(Error::UnsupportedGroup)?;
    let section_kind = match kind {
        GroupKind::Heisenberg3 => SectionGroup::Heisenberg3,
        GroupKind::Mu3xG21 => SectionGroup::Mu3xG21,
        _ => return Err(Error::UnsupportedGroup),
    };
    if d.names.len() != table.len() || d.names.iter().zip(table.irreducibles()).any(|(n, i)| *n != i.name) {
        return Err(Error::GroupMismatch);
    }
    let sectors: Vec<usize> = table
        .irreducibles()
        .iter()
        .map(|irr| central_exponent(irr).ok_or(Error::UnsupportedGroup))
        .collect::<Result<_>>()?;
    let present: BTreeSet<usize> = d
        .multiplicities
        .iter()
        .zip(&sectors)
        .filter(|(&m, _)| m != 0)
        .map(|(_, &s)| s)
        .collect();
    if present.len() > 1 {
        return Err(Error::MixedCentralCharacter);
    }
    let sector = present.first().copied();
    let in_sector: Vec<usize> = match sector {
        Some(s) => (0..table.len()).filter(|&i| sectors[i] == s).collect(),
        None => Vec::new(),
    };
    let a = in_sector
        .iter()
        .filter(|&&i| d.dims[i] == 1)
        .map(|&i| d.multiplicities[i])
        .min()
        .unwrap_or(0);

    let (regular_label, regular_dim) = match section_kind {
        SectionGroup::Heisenberg3 => ("C[(Z/3)^2]", 9),
        SectionGroup::Mu3xG21 => ("C[G21]", 21),
    };
    // Remainder over the sector's irreducibles; on μ₃ × G₂₁ the central
    // suffix is dropped to name G₂₁-representations.
    let factor_rows: Vec<usize> = match section_kind {
        SectionGroup::Heisenberg3 => (0..table.len()).collect(),
        SectionGroup::Mu3xG21 => (0..5).map(|i| i + 5 * sector.unwrap_or(0)).collect(),
    };
    let mut remainder = Decomposition {
        names: Vec::new(),
        dims: Vec::new(),
        multiplicities: Vec::new(),
        is_virtual: false,
    };
    for &i in &factor_rows {
        let name = match section_kind {
            SectionGroup::Heisenberg3 => d.names[i].clone(),
            SectionGroup::Mu3xG21 => strip_central_suffix(&d.names[i]).to_string(),
        };
        // C[(Z/3)²] pulls back to the linear characters only.
        let in_regular = in_sector.contains(&i) && (section_kind == SectionGroup::Mu3xG21 || d.dims[i] == 1);
        let regular_mult = if in_regular { d.dims[i] as i64 } else { 0 };
        remainder.names.push(name);
        remainder.dims.push(d.dims[i]);
        remainder.multiplicities.push(d.multiplicities[i] - a * regular_mult);
    }
    remainder.is_virtual = remainder.multiplicities.iter().any(|&m| m < 0);
    let split = RegularSplit {
        decomposition: d.clone(),
        regular_label: regular_label.to_string(),
        regular_dim,
        central_exponent: sector,
        regular_part: a,
        remainder,
    };
    debug_assert_eq!(split.ledger_dimension(), d.dimension());
    Ok(split)
}

fn strip_central_suffix(name: &str) -> &str {
    name.split('[').next().unwrap_or(name)
}

/// Achievable dimensions of subrepresentations of an honest character.
pub fn subrep_dims(d: &Decomposition) -> Result<BTreeSet<i64>> {
    if d.multiplicities.iter().any(|&m| m < 0) {
        return Err(Error::VirtualInput);
    }
    let total = d.dimension() as usize;
    let mut reachable = vec![false; total + 1];
    reachable[0] = true;
    for (&m, &dim) in d.multiplicities.iter().zip(&d.dims) {
        for _ in 0..m {
            for s in (dim..=total).rev() {
                if reachable[s - dim] {
                    reachable[s] = true;
                }
            }
        }
    }
    Ok((0..=total).filter(|&s| reachable[s]).map(|s| s as i64).collect())
}

/// Whether the `U` part at `k` reappears at `k + period`, with
/// `period = 21` on `μ₃ × G₂₁` and `3` on `H₃`.
pub fn remainder_is_periodic(ctx: &SectionContext, k: i64) -> Result<bool> {
    let period = match ctx.kind {
        SectionGroup::Heisenberg3 => 3,
        SectionGroup::Mu3xG21 => 21,
    };
    let here = ctx.split(k, 0)?;
    let there = ctx.split(k + period, 0)?;
    Ok(match ctx.kind {
        SectionGroup::Mu3xG21 => here.remainder == there.remainder,
        // On H₃ only the shape repeats: the sector and which irreducibles occur.
        SectionGroup::Heisenberg3 => {
            here.central_exponent == there.central_exponent
                && here.remainder.support().keys().eq(there.remainder.support().keys())
        }
    })
}
