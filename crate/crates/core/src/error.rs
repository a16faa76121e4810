use thiserror::Error;

use crate::algebra::EntropyWitness;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("element 0 is not a two-sided identity (fails at {0})")]
    MissingIdentity(usize),

    #[error("element {0} has no inverse")]
    MissingInverse(usize),

    #[error("table length for `{op}`: expected {expected}, found {found}")]
    TableLength {
        op: String,
        expected: usize,
        found: usize,
    },

    #[error("value {value} out of range 0..{size}")]
    OutOfRange { value: usize, size: usize },

    #[error("unknown operation `{0}`")]
    UnknownOp(String),

    #[error("operation `{op}` has arity {expected}, got {found} arguments")]
    Arity {
        op: String,
        expected: usize,
        found: usize,
    },

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("size cap exceeded: {what} needs {needed} elements, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: usize,
    },

    #[error("mismatched groups: {0}")]
    GroupMismatch(String),

    #[error("mismatched alphabets: {0}")]
    AlphabetMismatch(String),

    #[error("element {0} is not in group {1}")]
    ElementOutsideGroup(String, String),

    #[error("duplicate memory element {0}")]
    DuplicateMemory(String),

    #[error("algebra is not entropic: {0}")]
    NotEntropic(EntropyWitness),

    #[error("not a CA with memory S: {0}")]
    NotCellularAutomaton(String),

    #[error("memory set {0} is not contained in {1}")]
    NotSubset(String, String),

    #[error("Boolean law `{law}` fails at {witness}")]
    NotBoolean { law: &'static str, witness: String },

    #[error("alphabet is not module-like: {0}")]
    NotModuleLike(String),

    #[error("cellular automaton is not endomorphic: {0}")]
    NotEndomorphic(String),

    #[error("rule number {0} out of range 0..=255")]
    RuleOutOfRange(u32),

    #[error("invalid configuration: {0}")]
    BadConfiguration(String),

    #[error("unknown {0}")]
    Unknown(String),

    #[error("inconsistent results: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
