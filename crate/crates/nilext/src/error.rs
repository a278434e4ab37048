use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("algebra is abelian; it has no bracket layers")]
    Abelian,
    #[error("matrix is not a derivation: Leibniz rule fails on (e{0}, e{1})")]
    NotADerivation(usize, usize),
    #[error("antisymmetric square needs equal factors, got {0} and {1}")]
    AntisymmetricMismatch(usize, usize),
    #[error("unsupported Levi factor `{0}`; only sl2 and so3 are screened")]
    UnsupportedFactor(String),
    #[error("unknown algebra `{id}`; {hint}")]
    NotFound { id: String, hint: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("Jacobi identity fails on (e{}, e{}, e{})", .0.0, .0.1, .0.2)]
    Jacobi((usize, usize, usize)),
    #[error("assignment does not match the layer structure: {0}")]
    Shape(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    /// Input and parse problems, as opposed to analysis failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::NotFound { .. } | Error::Jacobi(_) | Error::Malformed(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
