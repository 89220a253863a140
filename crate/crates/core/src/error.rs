use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is not bipartite: edge {0} -- {1} closes an odd cycle")]
    NotBipartite(String, String),

    #[error("graph carries no bipartite side tags")]
    MissingSides,

    #[error("line {line}: unknown node name {name:?}")]
    UnknownNode { line: usize, name: String },

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("score undefined: {0}")]
    UndefinedScore(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
