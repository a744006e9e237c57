use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Errors raised by constructors and transformations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter lies outside the domain of the operation.
    InvalidParameter(String),
    /// Input polytope fails validation; every problem is listed.
    InvalidPolytope(Vec<String>),
    /// Input dicharacteristic fails validation; every problem is listed.
    InvalidDicharacteristic(Vec<String>),
    UnknownFacet(String),
    /// The given facets are not the facet set of a vertex.
    NotAVertex(Vec<usize>),
    /// The given facets have empty common intersection.
    NotAFace(Vec<usize>),
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// Matrix is not invertible over the integers.
    NotUnimodular,
    /// Connected sums need dimension at least two.
    DegenerateDimOne,
    TooManyFacets(usize),
    /// An internal consistency check failed; indicates a bug.
    Internal(&'static str),
}

impl Error {
    /// Stable machine-readable code for this error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::InvalidPolytope(_) => "invalid-polytope",
            Error::InvalidDicharacteristic(_) => "invalid-dicharacteristic",
            Error::UnknownFacet(_) => "unknown-facet",
            Error::NotAVertex(_) => "not-a-vertex",
            Error::NotAFace(_) => "not-a-face",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NotUnimodular => "not-unimodular",
            Error::DegenerateDimOne => "degenerate-dim-1",
            Error::TooManyFacets(_) => "too-many-facets",
            Error::Internal(_) => "internal",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::InvalidPolytope(problems) => {
                write!(f, "invalid polytope: {}", problems.join("; "))
            }
            Error::InvalidDicharacteristic(problems) => {
                write!(f, "invalid dicharacteristic: {}", problems.join("; "))
            }
            Error::UnknownFacet(name) => write!(f, "unknown facet `{name}`"),
            Error::NotAVertex(s) => write!(f, "facets {s:?} do not form a vertex"),
            Error::NotAFace(s) => write!(f, "facets {s:?} do not meet in a face"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotUnimodular => f.write_str("matrix is not unimodular"),
            Error::DegenerateDimOne => f.write_str(
                "connected sum is undefined in dimension 1: the facets of a 1-simplex are its \
                 vertices, so the columns at the glued vertices would be lost; extending the \
                 dicharacteristic to the 1-simplex itself is not supported",
            ),
            Error::TooManyFacets(m) => {
                write!(f, "{m} facets exceed the supported maximum of {}", crate::MAX_FACETS)
            }
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
