use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} outside domain 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop ({0}, {0}) is not a valid edge")]
    SelfLoop(usize),
    #[error("index {index} outside 1..={max} for {what}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },
    #[error("change `{op}` is not supported by the {problem} maintainer")]
    Unsupported { op: String, problem: &'static str },
    #[error("parameter bound violated: {0}")]
    ParameterBound(String),
    #[error("size guard exceeded: {0}")]
    Guard(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
