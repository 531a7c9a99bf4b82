use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A multiplication table that is not a group.
    InvalidTable(String),
    /// An element index outside `0..order`.
    ElementOutOfRange { index: usize, order: usize },
    /// A map between tables that does not respect multiplication.
    NotHomomorphism(String),
    /// A subgroup was required to be normal.
    NotNormal,
    /// An ideal must be a proper normal subgroup.
    NotProper,
    TrivialGroup,
    IdentityElement,
    /// A variable index outside `1..=n`.
    VariableOutOfRange { var: usize, vars: usize },
    ArityMismatch { expected: usize, found: usize },
    ContextMismatch,
    /// The bounded search cannot decide this instance.
    Inconclusive(String),
    /// A closure exceeded the configured size cap.
    TooLarge { cap: usize },
    /// The object is not integral for the requested variant.
    NotIntegral,
    NotOpen,
    NotPrime(String),
    /// Generic points of components are missing from the spectrum.
    Unsupported(String),
    NotIsomorphism(String),
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidTable(m) => write!(f, "invalid group table: {m}"),
            Error::ElementOutOfRange { index, order } => {
                write!(f, "element index {index} out of range for group of order {order}")
            }
            Error::NotHomomorphism(m) => write!(f, "not a homomorphism: {m}"),
            Error::NotNormal => write!(f, "subgroup is not normal"),
            Error::NotProper => write!(f, "ideal must be a proper subgroup"),
            Error::TrivialGroup => write!(f, "operation undefined on the trivial group"),
            Error::IdentityElement => write!(f, "the identity is never a divisor of zero"),
            Error::VariableOutOfRange { var, vars } => {
                write!(f, "variable X{var} out of range (context has {vars} variables)")
            }
            Error::ArityMismatch { expected, found } => {
                write!(f, "expected {expected} coordinates, found {found}")
            }
            Error::ContextMismatch => write!(f, "objects live over different coefficient groups"),
            Error::Inconclusive(m) => write!(f, "inconclusive: {m}"),
            Error::TooLarge { cap } => write!(f, "closure exceeded size cap {cap}"),
            Error::NotIntegral => write!(f, "coefficient group is not integral for this variant"),
            Error::NotOpen => write!(f, "set is not open"),
            Error::NotPrime(m) => write!(f, "not a prime ideal: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::NotIsomorphism(m) => write!(f, "not an isomorphism: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl core::error::Error for Error {}
