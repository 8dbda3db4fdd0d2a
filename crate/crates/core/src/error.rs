use thiserror::Error;

/// Errors raised anywhere in the construction and verification pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported extension degree {0} (need 2 <= m <= 32)")]
    UnsupportedDegree(u32),
    #[error("polynomial {0:#x} is reducible over GF(2)")]
    ReduciblePolynomial(u64),
    #[error("X is not a primitive element modulo {0:#x}")]
    NonPrimitiveAlpha(u64),
    #[error("cannot parse polynomial {0:?}")]
    BadPolynomial(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not in the subfield of degree {0}")]
    NotInSubfield(u32),
    #[error("degrees {0:?} do not form a divisor chain of the extension degree")]
    BadTowerDegrees(Vec<u32>),
    #[error("zero has no discrete logarithm")]
    ZeroHasNoLog,
    #[error("operation unsupported: {0}")]
    Unsupported(&'static str),

    #[error("input elements are linearly dependent over GF(2)")]
    DependentInput,
    #[error("generators are linearly dependent over GF(2)")]
    DependentGenerators,
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,

    #[error("solver requires {0}")]
    BadParity(&'static str),
    #[error("bad factorization m = {ell} * {t}")]
    BadFactorization { ell: u32, t: u32 },
    #[error("solver requires {0}")]
    BadDegree(&'static str),
    #[error("no valid solution after {0} attempts")]
    RetriesExhausted(u32),
    #[error("too large to enumerate (m = {0})")]
    TooLarge(u32),
    #[error("no solution exists")]
    NoSolution,
    #[error("candidate is not a valid independent solution")]
    InvalidSolution,

    #[error("s = {s} out of range 0..={max}")]
    BadS { s: u32, max: u32 },
    #[error("expansion produced a repeated element")]
    CollisionDetected,
    #[error("support is not a union of cosets of the given subspace")]
    NotCosetUnion,
    #[error("support is not contained in the given subspace")]
    SupportNotInU,
    #[error("degenerate y: the six-point set has fewer than six distinct elements")]
    DegenerateY,
    #[error("translation point is not in the support")]
    XNotInSupport,
    #[error("puncturing requires an extended support")]
    NotExtended,

    #[error("distance {0} has the wrong parity for this code")]
    BadDistanceParity(u64),
    #[error("parameters (m={m}, s={s}, i={i}) out of range")]
    BadRange { m: u32, s: u32, i: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
