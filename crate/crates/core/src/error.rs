use std::fmt;

/// Sorted label list used in diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels(pub Vec<u32>);

impl fmt::Display for Labels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("exponent underflow reversing monomial t^{t} q^{q} u^{u} with degree {degree}")]
    ExponentUnderflow { t: u64, q: u64, u: u64, degree: u64 },

    #[error("polynomial is not univariate in t")]
    NotUnivariate,

    #[error("poset #{index} is not a tree poset: {reason}")]
    NotTreePoset { index: usize, reason: String },

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("building set is missing the singleton {{{0}}}")]
    MissingSingleton(u32),

    #[error(
        "building set violates union closure: {0} and {1} intersect but their union is absent"
    )]
    UnionClosureViolation(Labels, Labels),

    #[error("set {0} is empty or lies outside the ground set")]
    SetOutOfRange(Labels),

    #[error("ground set too large: {0} elements (at most 64 supported)")]
    GroundTooLarge(usize),

    #[error("building set supports overlap: {0} and {1}")]
    OverlappingSupports(Labels, Labels),

    #[error("building set is not connected")]
    NotConnected,

    #[error("building set is not invariant under i -> n - i + 1")]
    NotOmegaInvariant,

    #[error("tubing is not maximal: {tubes} tubes on {n} vertices")]
    NotMaximal { tubes: usize, n: u32 },

    #[error("invalid tubing: {0}")]
    InvalidTubing(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("bad parameters: {0}")]
    BadParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
