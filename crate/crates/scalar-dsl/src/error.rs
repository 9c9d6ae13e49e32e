use thiserror::Error;

/// Raw domain failure from jet arithmetic, before the evaluator attaches a
/// source location.
#[derive(Debug, Clone, Copy)]
pub struct DomainIssue {
    pub func: &'static str,
    pub arg: f64,
}

#[derive(Debug, Error)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub message: String,
    pub offset: usize,
}

impl ParseError {
    pub fn new(message: impl Into<String>, offset: usize) -> Self {
        ParseError { message: message.into(), offset }
    }
}

#[derive(Debug, Error, Clone)]
pub enum EvalError {
    #[error("{func} out of domain (argument {arg}) at byte {offset}")]
    Domain { func: &'static str, arg: f64, offset: usize },
    #[error("expression evaluated to a non-finite value")]
    NonFinite,
    #[error("point has {got} coordinates, field expects {want}")]
    Dimension { want: usize, got: usize },
    #[error("non-finite input coordinate")]
    BadPoint,
    #[error("field does not provide derivatives")]
    NoDerivatives,
}
