//! Machine checks of the vanishing theorem over the six cases with a large
//! automorphism group.

pub mod proof;
pub mod registry;
pub mod split;

pub use proof::{
    verify_all, verify_alternative_proof, verify_case, verify_lemma_h1, verify_main_theorem, CaseVerification,
    Report, Status, Step, StepKind,
};
pub use registry::{find_case, table_a_registry, AbelianInvariants, AutomorphismGroup, FppCase, Provenance};
pub use split::{regular_split, remainder_is_periodic, subrep_dims, RegularSplit, SectionContext};
