use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Input outside an operation's mathematical domain.
    #[error("domain error: {0}")]
    Domain(&'static str),
    /// An extended-real expression with no defined value.
    #[error("indeterminate form: {0}")]
    Indeterminate(&'static str),
    #[error("cannot parse {what} from {text:?}")]
    Parse { what: &'static str, text: String },
    /// A documented precondition was not met; `contract` names it.
    #[error("contract violated: {contract}")]
    Contract { contract: &'static str },
}

pub(crate) fn contract<T>(contract: &'static str) -> Result<T> {
    Err(Error::Contract { contract })
}
