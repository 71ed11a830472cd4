use alloc::string::String;
use thiserror::Error;

/// Errors shared by the table layer, the constructions and the verifier.
///
/// Structural rejections carry a short human-readable detail string and,
/// where one exists, a witness already formatted with element names, so
/// callers can surface them without holding on to the offending object.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("carrier size {0} is too small for a unital ring")]
    InvalidSize(usize),
    #[error("element index {index} is out of range for carrier of size {size}")]
    BadElement { index: usize, size: usize },
    #[error("not a ring: {axiom} fails at {witness}")]
    NotARing { axiom: &'static str, witness: String },
    #[error("not a module: {axiom} fails at {witness}")]
    NotAModule { axiom: &'static str, witness: String },
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("not a submodule: {0}")]
    NotASubmodule(String),
    #[error("not multiplicatively closed: {0}")]
    NotMultClosed(String),
    #[error("not a homomorphism: {axiom} fails at {witness}")]
    NotAHom { axiom: &'static str, witness: String },
    #[error("operands belong to different structures: {0}")]
    Mismatch(String),
    #[error("the full module/ring is not accepted here; a proper subobject is required")]
    NotProper,
    #[error("the zero ideal is rejected under the strict nonzero convention")]
    ZeroIdealRejected,
    #[error("the subset is empty; a residual needs at least one element")]
    EmptySubset,
    #[error("list is not an inclusion chain: entry {position} is not contained in entry {}", position + 1)]
    NotAChain { position: usize },
    #[error("union of the chain is the whole module, which no absorbing predicate accepts")]
    UnionNotProper,
    #[error("ideal times module lands outside the submodule: {0}")]
    IdealActionEscapes(String),
    #[error("image is not closed under the codomain scalars: {0}")]
    ImageNotSubmodule(String),
    #[error("iteration budget exhausted: needed more than {limit} primitive steps{}", match context { Some(c) => alloc::format!(" while {c}"), None => String::new() })]
    BudgetExceeded { limit: u64, context: Option<String> },
    #[error("unknown statement id {0}")]
    UnknownStatement(String),
    #[error("no valid instance found after {attempts} attempts")]
    NoValidInstance { attempts: u32 },
    #[error("instance is malformed: {0}")]
    BadInstance(String),
}

pub type Result<T, E = AlgebraError> = core::result::Result<T, E>;
