//! Crate-wide error type.
//!
//! Mathematical failure modes are explicit variants so callers (and the CLI
//! exit-code mapping) can distinguish "the input is malformed" from "the
//! computation would exceed a resource cap" from "the mathematical check
//! failed".

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Structure constants are not associative at basis triple `(i, j, k)`.
    #[error("structure constants not associative at basis triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),

    /// The claimed unit vector does not act as a two-sided unit on basis
    /// element `i`.
    #[error("claimed unit fails on basis element {0}")]
    BadUnit(usize),

    /// `p` is not prime (or not supported).
    #[error("{0} is not a supported prime")]
    BadPrime(u64),

    /// Dimension mismatch in matrix or module arithmetic.
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    /// Operation requires a commutative algebra.
    #[error("algebra is not commutative: {0}")]
    NotCommutative(String),

    /// Two objects live over different algebras (or different primes).
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    /// A claimed module action does not respect the structure constants.
    #[error("action matrices violate structure constants at basis pair ({0}, {1})")]
    BadAction(usize, usize),

    /// The action of the unit is not the identity.
    #[error("unit does not act as identity on the module")]
    BadUnitAction,

    /// A claimed homomorphism fails the intertwining equations.
    #[error("matrix does not intertwine the actions (basis element {0})")]
    NotAHom(usize),

    /// A claimed algebra morphism fails unit or multiplicativity checks.
    #[error("not an algebra morphism: {0}")]
    NotAlgebraMorphism(String),

    /// A claimed short exact sequence is not short exact.
    #[error("not a short exact sequence: {0}")]
    NotExact(String),

    /// The requested ideal contains the unit, so the quotient would be zero.
    #[error("ideal contains the unit; quotient algebra would be zero")]
    IdealContainsUnit,

    /// A morphism that must be surjective is not.
    #[error("morphism is not surjective")]
    NotSurjective,

    /// A search space or output size exceeded the configured cap.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    /// A semisimple quotient is not split over `F_p` (non-trivial division
    /// algebra residue); the decomposition machinery only handles the split
    /// case.
    #[error("semisimple quotient is not split over F_p: {0}")]
    UnsupportedSemisimpleType(String),

    /// The algebra is not quasi-Frobenius, so the absolute cone functor does
    /// not exist.
    #[error("algebra is not quasi-Frobenius: {0}")]
    NotQuasiFrobenius(String),

    /// An operation is not decidable for this class descriptor (no finite
    /// criterion available).
    #[error("operation not supported for this class descriptor: {0}")]
    UnsupportedForClass(String),

    /// An indecomposable escaped the generator universe of a presentation.
    #[error("universe is not closed: {0}")]
    ClosureEscape(String),

    /// The algebra is not generated by its unit together with the supplied
    /// generating set, so the census cannot parameterize modules.
    #[error("algebra is not generated by the unit and the given generators")]
    NotGenerated,

    /// Free-module structure over a subalgebra was required but absent.
    #[error("module is not free over the subalgebra: {0}")]
    NotFree(String),

    /// Text-format parse error with 1-based line number.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Generic input error (CLI arguments, file references).
    #[error("input error: {0}")]
    Input(String),

    /// I/O error wrapper.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization error wrapper.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// CLI exit code mapping: 0 pass, 1 math check failed, 2 input error,
    /// 3 resource cap exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded(_) => 3,
            Error::Parse { .. } | Error::Input(_) | Error::Io(_) | Error::Json(_) => 2,
            _ => 1,
        }
    }
}
