use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings: {0} vs {1}")]
    MixedRings(String, String),
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("operation is not supported over {0}")]
    UnsupportedRing(String),
    #[error("residue ring mod 2 is not available for {0}: {1}")]
    UnsupportedResidue(String, String),
    #[error("ring {0} is not certified 2R-pseudo-good: {1}")]
    NotPseudoGood(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no Euclidean division implemented for {0}")]
    NotEuclideanHere(String),
    #[error("{0} is not a field")]
    NotAField(String),
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("matrix does not lie in the upper Borel subgroup")]
    NotInBorel,
    #[error("matrix does not reduce to the identity mod 2R")]
    NotInCongruenceSubgroup,
    #[error("pipeline residual is not the identity; this signals an implementation bug: {0}")]
    ResidualNotIdentity(String),
    #[error("2 is a unit in {0}; the level-2 congruence subgroup degenerates")]
    TwoIsUnit(String),
    #[error("unsupported field size {0}; expected one of 2, 3, 4")]
    UnsupportedField(u32),
    #[error("requested computation exceeds the configured budget: {0}")]
    TooLarge(String),
    #[error("invalid input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
