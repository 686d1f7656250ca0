//! Conversion and compliance checking between LMF lexicon serializations.
//!
//! Four XML dialects are supported, all read into and written from one
//! canonical model ([`model::LexicalResource`]):
//!
//! * the annex-style LMF dialect with `<feat att val>` descriptors ([`legacy`]),
//! * pure ISO-TEI feature structures and the mixed LMF-skeleton/`tei:f`
//!   dialect ([`fs`]),
//! * the TEI *Dictionaries* encoding with the LMF syntax extension ([`tei`]).
//!
//! [`crosswalk::convert`] chains a reader and a writer; [`validator`] checks
//! TEI documents against the LMF-compliance rules.

pub mod components;
pub mod corpus;
pub mod crosswalk;
pub mod error;
pub mod finding;
pub mod fs;
pub mod legacy;
pub mod model;
pub mod tei;
pub mod validator;
pub mod xml;

pub use crosswalk::{
    convert, read_document, roundtrip_check, write_document, ConversionReport, ConvertError, ConvertOptions, Converted,
    Dialect, RoundTrip,
};
pub use error::Error;
pub use finding::{Finding, Severity};
pub use model::{equal_structural, first_divergence, validate_model, LexicalResource};
pub use tei::{GrammarStyle, TeiEmitOptions, TeiParseOptions};
pub use validator::{rule_catalogue, validate_tei_document, Rule};
pub use xml::{canonical_equal, parse_xml, serialize_xml, QName, SerializeOptions, XmlError, XmlNode};
