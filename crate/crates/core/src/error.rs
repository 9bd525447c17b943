use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("coefficient vector has length {got}, expected phi({order}) = {expected}")]
    CoefficientLength {
        order: usize,
        expected: usize,
        got: usize,
    },
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("galois exponent {k} is not a unit modulo {order}")]
    NotAUnit { k: i64, order: usize },

    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("unknown group kind `{0}`")]
    UnknownGroupKind(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),

    #[error("no character table construction for this group")]
    UnsupportedGroup,
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("class function has {got} values, group has {expected} classes")]
    ClassCount { expected: usize, got: usize },
    #[error("multiplicity of {name} is {value}, not an integer: not a virtual character")]
    NotVirtualCharacter { name: String, value: String },
    #[error("unknown irreducible `{0}`")]
    UnknownIrreducible(String),

    #[error("fixed point has a tangent eigenvalue equal to 1")]
    NonIsolatedFixedPoint,
    #[error("fixed point list is empty")]
    NoFixedPoints,
    #[error("{0} is not a root of unity")]
    NotRootOfUnity(String),
    #[error("exponent {0} is divisible by 7")]
    TrivialPower(i64),
    #[error("torsion order {m} is not coprime to {exponent}")]
    TorsionNotCoprime { m: u64, exponent: u64 },
    #[error("a nontrivial torsion bundle must be marked invariant")]
    TorsionNotInvariant,

    #[error("decomposition has negative multiplicities")]
    VirtualInput,
    #[error("constituents have different central characters")]
    MixedCentralCharacter,
    #[error("lemma hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("torsion order {m} is not admissible for case {case}")]
    InadmissibleTorsion { case: String, m: u64 },
    #[error("unknown case `{0}`")]
    UnknownCase(String),
}
