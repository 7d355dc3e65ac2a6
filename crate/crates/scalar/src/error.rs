use thiserror::Error;

use crate::var::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole when substituting for {0}")]
    Pole(Var),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable registry is full")]
    TooManyVariables,
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("expression is not a rational number")]
    NotRational,
}
