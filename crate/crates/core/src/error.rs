use thiserror::Error;

use crate::xml::XmlError;

/// Failures that stop a dialect reader or writer. Recoverable problems are
/// reported as [`crate::Finding`]s instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Xml(#[from] XmlError),
    #[error("not a {expected} document: {found}")]
    Dialect { expected: &'static str, found: String },
    #[error("malformed structure at {path}: {message}")]
    Structure { path: String, message: String },
    #[error("<{element}> without @type cannot be mapped to a data category")]
    Mapping { element: String },
    #[error("cannot represent {path} in the {dialect} dialect: {reason}")]
    Unrepresentable {
        path: String,
        dialect: &'static str,
        reason: String,
    },
}
