use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure carries enough of a witness to locate the offending
/// elements; labels are used rather than raw indices where available.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("order relation has a cycle through {a} and {b}")]
    CycleDetected { a: String, b: String },
    #[error("order relation is not transitive: {a} <= {b} <= {c} but not {a} <= {c}")]
    NotTransitive { a: String, b: String, c: String },
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("size limit exceeded: {what} needs {size}, limit is {limit}")]
    SizeLimit { what: String, size: u128, limit: u128 },
    #[error("horizontal sum factor {index} has fewer than two elements")]
    FactorTooSmall { index: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("empty family")]
    EmptyFamily,
    #[error("map does not preserve joins: {0}")]
    NotJoinPreserving(String),
    #[error("map does not preserve meets: {0}")]
    NotMeetPreserving(String),
    #[error("map does not preserve non-empty meets: {0}")]
    NotWeakMeet(String),
    #[error("map is not isotone: {0}")]
    NotIsotone(String),
    #[error("map is not in the requested class: {0}")]
    NotInClass(String),
    #[error("pair is not an adjunction: {0}")]
    NotAdjoint(String),
    #[error("orthocomplementation axiom failed: {0}")]
    OrthoAxiomFailed(String),
    #[error("invalid orthogonality space: {0}")]
    InvalidOrthoSpace(String),
    #[error("orthogonality is not separating: {0}")]
    NotSeparating(String),
    #[error("lattice is not atomistic: {0}")]
    NotAtomistic(String),
    #[error("lattice is not Boolean: {0}")]
    NotBoolean(String),
    #[error("not a closure operator: {0}")]
    NotClosure(String),
    #[error("not a Moore family: {0}")]
    NotMooreFamily(String),
    #[error("closure space is not simple: {0}")]
    NotSimple(String),
    #[error("partial map is not continuous: {0}")]
    NotContinuous(String),
    #[error("join map does not send atoms to atoms or zero: {0}")]
    NotAtomicMap(String),
    #[error("map is not a morphism of complete ortholattices: {0}")]
    NotCOLattMorphism(String),
    #[error("union map is not strongly isotone: {0}")]
    NotStronglyIsotone(String),
    #[error("not a union-preserving map: {0}")]
    NotUnionPreserving(String),
    #[error("incoherent transition pair: {0}")]
    IncoherentInput(String),
    #[error("causal relation is not fully isotone: {0}")]
    NotFullyIsotone(String),
    #[error("causal relation is not stable under non-empty right meets: {0}")]
    NotMeetStable(String),
    #[error("causal relation is not closed under left joins: {0}")]
    NotJoinClosed(String),
    #[error("evolution does not send bottom to bottom: {0}")]
    NotBalancedAtZero(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unresolved reference: {0}")]
    Unresolved(String),
    #[error("{file}: {source}")]
    InFile { file: String, source: Box<Error> },
}

impl Error {
    pub fn in_file(self, file: impl Into<String>) -> Error {
        Error::InFile { file: file.into(), source: Box::new(self) }
    }

    /// The error with any file context removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::InFile { source, .. } => source.root(),
            e => e,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Error {
        Error::Io(e.to_string())
    }
}
