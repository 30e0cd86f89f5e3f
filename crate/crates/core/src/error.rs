use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division by the zero polynomial or by a zero scalar.
    DivisionByZero,
    /// The named argument must be a nonzero polynomial or scalar.
    ZeroArgument(&'static str),
    /// The operation needs a polynomial of degree at least `required`.
    DegreeTooLow { required: usize },
    NotPrime(u64),
    DimensionMismatch { expected: usize, found: usize },
    /// Index outside the operation's domain (e.g. an odd Bernoulli index).
    InvalidIndex(u64),
    /// Affine normalization needs a leading coefficient outside {0, 1}.
    DegenerateAffine,
    NegativeBound(i64),
    InconsistentFlags(&'static str),
    /// Root data does not describe the supplied generator.
    RootMismatch,
    Unsupported(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroArgument(what) => write!(f, "{what} must be nonzero"),
            Error::DegreeTooLow { required } => {
                write!(f, "polynomial degree must be at least {required}")
            }
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidIndex(n) => write!(f, "index {n} is outside the domain"),
            Error::DegenerateAffine => {
                write!(f, "affine normalization requires a leading coefficient other than 0 and 1")
            }
            Error::NegativeBound(b) => write!(f, "degree bound {b} is negative"),
            Error::InconsistentFlags(what) => write!(f, "inconsistent flags: {what}"),
            Error::RootMismatch => write!(f, "roots and leading coefficient do not reproduce the generator"),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
        }
    }
}

impl core::error::Error for Error {}
