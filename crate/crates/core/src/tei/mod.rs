//! The TEI *Dictionaries* serialization.
//!
//! Entries use `<form>`/`<orth>` for form representations, `<gramGrp>` (or an
//! equivalent `<fs type="grammar">`) for grammatical features, `<sense>` for
//! all semantic content, `<cit>`/`<quote>` for quotations, and elements in the
//! LMF namespace for syntactic behaviour, anchored inside `<sense>`.
//!
//! Entry-level grammar (typically `partOfSpeech`) is written inside the lemma
//! form's grammar block and moved back to the entry when reading; the lemma's
//! own grammar, if any, goes into a block marked `type="lemma"`
//! (`type="lemmaGrammar"` for feature structures).

mod emit;
pub mod mapping;
mod parse;

pub use emit::emit_tei;
pub use mapping::{map_descriptor_to_tei, map_tei_to_descriptor, DescriptorMapping};
pub use parse::{parse_tei, parse_tei_with};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum GrammarStyle {
    #[default]
    GramGrp,
    FeatureStructure,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TeiEmitOptions {
    pub grammar_style: GrammarStyle,
    pub emit_dcr_attrs: bool,
    /// Wrap the output in a `<TEI>` document with a stub header.
    pub wrap: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TeiParseOptions {
    /// Read `<gloss>` children of `<sense>` whose language differs from the
    /// lexicon language as translation quotations.
    pub glosses_as_translations: bool,
}

/// `@type` of the grammar block holding the lemma's own features.
pub(crate) const LEMMA_GRAMGRP_TYPE: &str = "lemma";
pub(crate) const LEMMA_FS_TYPE: &str = "lemmaGrammar";
pub(crate) const GRAMMAR_FS_TYPE: &str = "grammar";
