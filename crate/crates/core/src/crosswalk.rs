//! Dialect-to-dialect conversion through the canonical model.
//!
//! Every conversion is parse → model checks → emit → serialize; converting a
//! document to its own dialect therefore normalizes it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::Error;
use crate::finding::{has_errors, Finding};
use crate::fs::{emit_fs, emit_mixed, parse_fs, parse_mixed, FsOptions};
use crate::legacy::{emit_legacy_lmf, parse_legacy_lmf, LegacyDialectOptions};
use crate::model::{first_divergence, validate_model, LexicalResource};
use crate::tei::{emit_tei, parse_tei_with, GrammarStyle, TeiEmitOptions, TeiParseOptions};
use crate::xml::{parse_xml, serialize_xml, SerializeOptions, TEI_NS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dialect {
    LegacyLmf,
    Fs,
    Mixed,
    TeiDict,
}

impl Dialect {
    pub const ALL: [Dialect; 4] = [Dialect::LegacyLmf, Dialect::Fs, Dialect::Mixed, Dialect::TeiDict];

    /// Command-line spelling.
    pub fn name(self) -> &'static str {
        match self {
            Dialect::LegacyLmf => "legacy-lmf",
            Dialect::Fs => "fs",
            Dialect::Mixed => "mixed",
            Dialect::TeiDict => "tei",
        }
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown dialect '{0}' (expected legacy-lmf, fs, mixed or tei)")]
pub struct UnknownDialect(pub String);

impl FromStr for Dialect {
    type Err = UnknownDialect;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Dialect::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| UnknownDialect(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvertOptions {
    pub grammar_style: GrammarStyle,
    pub emit_dcr_attrs: bool,
    pub wrap_tei: bool,
    pub glosses_as_translations: bool,
    /// Namespace URI → prefix overrides applied on top of the dialect defaults.
    pub prefixes: BTreeMap<String, String>,
    pub indent: usize,
}

impl Default for ConvertOptions {
    fn default() -> Self {
        ConvertOptions {
            grammar_style: GrammarStyle::GramGrp,
            emit_dcr_attrs: false,
            wrap_tei: false,
            glosses_as_translations: false,
            prefixes: BTreeMap::new(),
            indent: 2,
        }
    }
}

impl ConvertOptions {
    fn serialize_options(&self, dialect: Dialect) -> SerializeOptions {
        let mut opts = SerializeOptions {
            indent: self.indent,
            ..SerializeOptions::default()
        };
        if dialect == Dialect::Mixed {
            // The skeleton sits in no namespace, so TEI needs a real prefix.
            opts = opts.with_prefix(TEI_NS, "tei");
        }
        for (ns, prefix) in &self.prefixes {
            opts = opts.with_prefix(ns.clone(), prefix.clone());
        }
        opts
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConversionReport {
    pub input: Dialect,
    pub output: Dialect,
    /// Reader findings followed by model-check findings.
    pub parse_findings: Vec<Finding>,
    pub emit_loss_notes: Vec<String>,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct Converted {
    pub output: Vec<u8>,
    pub report: ConversionReport,
}

#[derive(Debug, Clone, Error)]
pub enum ConvertError {
    /// The input could not be read in the source dialect.
    #[error("cannot read {dialect} input: {source}")]
    Read {
        dialect: Dialect,
        #[source]
        source: Error,
    },
    /// The model could not be written in the target dialect.
    #[error("cannot write {}: {source}", report.output)]
    Write {
        #[source]
        source: Error,
        report: ConversionReport,
    },
}

/// Parses a document and runs the model checks on the result.
pub fn read_document(
    bytes: &[u8],
    dialect: Dialect,
    opts: &ConvertOptions,
) -> Result<(LexicalResource, Vec<Finding>), Error> {
    let doc = parse_xml(bytes)?;
    let (resource, mut findings) = match dialect {
        Dialect::LegacyLmf => parse_legacy_lmf(&doc)?,
        Dialect::Fs => parse_fs(&doc)?,
        Dialect::Mixed => parse_mixed(&doc)?,
        Dialect::TeiDict => parse_tei_with(
            &doc,
            &TeiParseOptions {
                glosses_as_translations: opts.glosses_as_translations,
            },
        )?,
    };
    findings.extend(validate_model(&resource));
    Ok((resource, findings))
}

/// Emits and serializes a resource; the second value lists dropped content.
pub fn write_document(
    resource: &LexicalResource,
    dialect: Dialect,
    opts: &ConvertOptions,
) -> Result<(Vec<u8>, Vec<String>), Error> {
    let (node, notes) = match dialect {
        Dialect::LegacyLmf => emit_legacy_lmf(
            resource,
            &LegacyDialectOptions {
                emit_dcr_attrs: opts.emit_dcr_attrs,
            },
        )?,
        Dialect::Fs => (emit_fs(resource, &fs_options(opts)), Vec::new()),
        Dialect::Mixed => (emit_mixed(resource, &fs_options(opts)), Vec::new()),
        Dialect::TeiDict => (
            emit_tei(
                resource,
                &TeiEmitOptions {
                    grammar_style: opts.grammar_style,
                    emit_dcr_attrs: opts.emit_dcr_attrs,
                    wrap: opts.wrap_tei,
                },
            ),
            Vec::new(),
        ),
    };
    let bytes = serialize_xml(&node, &opts.serialize_options(dialect))?;
    Ok((bytes, notes))
}

fn fs_options(opts: &ConvertOptions) -> FsOptions {
    FsOptions {
        emit_dcr_attrs: opts.emit_dcr_attrs,
    }
}

pub fn convert(bytes: &[u8], from: Dialect, to: Dialect, opts: &ConvertOptions) -> Result<Converted, ConvertError> {
    let (resource, parse_findings) =
        read_document(bytes, from, opts).map_err(|source| ConvertError::Read { dialect: from, source })?;
    let mut report = ConversionReport {
        input: from,
        output: to,
        ok: !has_errors(&parse_findings),
        parse_findings,
        emit_loss_notes: Vec::new(),
    };
    match write_document(&resource, to, opts) {
        Ok((output, notes)) => {
            report.emit_loss_notes = notes;
            Ok(Converted { output, report })
        }
        Err(source) => {
            report.ok = false;
            Err(ConvertError::Write { source, report })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    pub ok: bool,
    /// First structural divergence, or why the trip could not be made.
    pub diagnosis: Option<String>,
}

/// Checks that `via` preserves the model of a `from` document:
/// from → model → via → model → from → model, compared with the first model.
/// Registry references are kept on every hop.
pub fn roundtrip_check(bytes: &[u8], from: Dialect, via: Dialect) -> Result<RoundTrip, Error> {
    let opts = ConvertOptions {
        emit_dcr_attrs: true,
        ..ConvertOptions::default()
    };
    let (original, _) = read_document(bytes, from, &opts)?;
    let hop = |resource: &LexicalResource, dialect: Dialect| -> Result<LexicalResource, Error> {
        let (out, _) = write_document(resource, dialect, &opts)?;
        Ok(read_document(&out, dialect, &opts)?.0)
    };
    let back = match hop(&original, via).and_then(|m| hop(&m, from)) {
        Ok(back) => back,
        Err(Error::Unrepresentable { path, dialect, reason }) => {
            return Ok(RoundTrip {
                ok: false,
                diagnosis: Some(format!("unrepresentable in {dialect}: {path}: {reason}")),
            })
        }
        Err(e) => return Err(e),
    };
    let diagnosis = first_divergence(&original, &back);
    Ok(RoundTrip {
        ok: diagnosis.is_none(),
        diagnosis,
    })
}
