//! Dialect-independent lexicon model.
//!
//! Every serializer reads from and writes into these types. Values are plain
//! data: constructors do not enforce invariants, [`validate_model`] reports
//! violations instead, so parsers can accept imperfect input.

use std::collections::{BTreeMap, HashSet};

use crate::finding::Finding;

/// A data category name plus an optional registry persistent identifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DataCategoryRef {
    pub name: String,
    pub registry_id: Option<String>,
}

impl DataCategoryRef {
    pub fn new(name: impl Into<String>) -> Self {
        DataCategoryRef {
            name: name.into(),
            registry_id: None,
        }
    }
}

/// An elementary descriptor: category and symbolic value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Feature {
    pub category: DataCategoryRef,
    pub value: String,
    pub value_registry_id: Option<String>,
}

impl Feature {
    pub fn new(name: impl Into<String>, value: impl Into<String>) -> Self {
        Feature {
            category: DataCategoryRef::new(name),
            value: value.into(),
            value_registry_id: None,
        }
    }

    pub fn with_registry(mut self, datcat: impl Into<String>, value_datcat: Option<String>) -> Self {
        self.category.registry_id = Some(datcat.into());
        self.value_registry_id = value_datcat;
        self
    }

    pub fn name(&self) -> &str {
        &self.category.name
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormRepresentation {
    pub written_form: String,
    /// Language and script, e.g. `ko-Hang`.
    pub lang_tag: Option<String>,
    /// Free label carried by `orth/@type`, e.g. `transliterated`.
    pub orth_label: Option<String>,
}

impl FormRepresentation {
    pub fn new(written_form: impl Into<String>) -> Self {
        FormRepresentation {
            written_form: written_form.into(),
            ..Default::default()
        }
    }

    pub fn with_lang(mut self, lang: impl Into<String>) -> Self {
        self.lang_tag = Some(lang.into());
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.orth_label = Some(label.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FormRole {
    Lemma,
    WordForm,
    Other(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    pub role: FormRole,
    pub representations: Vec<FormRepresentation>,
    pub grammar: Vec<Feature>,
}

impl Form {
    pub fn new(role: FormRole, written_form: impl Into<String>) -> Self {
        Form {
            role,
            representations: vec![FormRepresentation::new(written_form)],
            grammar: Vec::new(),
        }
    }

    pub fn lemma(written_form: impl Into<String>) -> Self {
        Form::new(FormRole::Lemma, written_form)
    }

    pub fn word_form(written_form: impl Into<String>) -> Self {
        Form::new(FormRole::WordForm, written_form)
    }

    pub fn with_feature(mut self, name: &str, value: &str) -> Self {
        self.grammar.push(Feature::new(name, value));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LocalizedText {
    pub text: String,
    pub lang_tag: Option<String>,
}

impl LocalizedText {
    pub fn new(text: impl Into<String>) -> Self {
        LocalizedText {
            text: text.into(),
            lang_tag: None,
        }
    }

    pub fn lang(text: impl Into<String>, lang: impl Into<String>) -> Self {
        LocalizedText {
            text: text.into(),
            lang_tag: Some(lang.into()),
        }
    }
}

/// Pointer into an external resource such as a wordnet synset.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExternalRef {
    pub scheme: String,
    pub idno: String,
    pub gloss: Option<LocalizedText>,
}

/// Inline annotation over a character range (Unicode scalar offsets, end exclusive).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub kind: String,
    pub attrs: BTreeMap<String, String>,
}

/// Text with inline annotations. Spans are listed in document order: by
/// start, outer spans before the spans they contain.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AnnotatedText {
    pub text: String,
    pub spans: Vec<Span>,
}

impl AnnotatedText {
    pub fn plain(text: impl Into<String>) -> Self {
        AnnotatedText {
            text: text.into(),
            spans: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QuotationKind {
    Example,
    Translation,
    Other(String),
}

impl QuotationKind {
    pub fn label(&self) -> &str {
        match self {
            QuotationKind::Example => "example",
            QuotationKind::Translation => "translation",
            QuotationKind::Other(l) => l,
        }
    }

    pub fn from_label(label: &str) -> Self {
        match label {
            "example" => QuotationKind::Example,
            "translation" => QuotationKind::Translation,
            other => QuotationKind::Other(other.to_string()),
        }
    }
}

/// Quote plus refinements; nests recursively (a translation of an example).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotation {
    pub kind: QuotationKind,
    pub quote: LocalizedText,
    pub refinements: Vec<Feature>,
    pub sub_quotations: Vec<Quotation>,
    pub source_ref: Option<String>,
}

impl Quotation {
    pub fn new(kind: QuotationKind, quote: LocalizedText) -> Self {
        Quotation {
            kind,
            quote,
            refinements: Vec::new(),
            sub_quotations: Vec::new(),
            source_ref: None,
        }
    }

    /// Nesting depth: 0 for a quotation without sub-quotations.
    pub fn depth(&self) -> usize {
        self.sub_quotations.iter().map(|q| q.depth() + 1).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Collocate {
    pub text: String,
    /// e.g. `particle`
    pub kind: String,
    pub lang_tag: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SyntacticArgument {
    pub function: String,
    pub collocates: Vec<Collocate>,
    pub glosses: Vec<LocalizedText>,
    pub semantic_ref: Option<ExternalRef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubcategorizationFrame {
    pub arguments: Vec<SyntacticArgument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SyntacticBehaviour {
    pub frames: Vec<SubcategorizationFrame>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Sense {
    /// Verbatim label such as `3` or `①`.
    pub label: Option<String>,
    pub grammar: Vec<Feature>,
    pub definitions: Vec<AnnotatedText>,
    pub glosses: Vec<LocalizedText>,
    pub external_refs: Vec<ExternalRef>,
    pub quotations: Vec<Quotation>,
    pub subsenses: Vec<Sense>,
    pub syntactic_behaviours: Vec<SyntacticBehaviour>,
}

impl Sense {
    pub fn labelled(label: impl Into<String>) -> Self {
        Sense {
            label: Some(label.into()),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LexicalEntry {
    pub id: Option<String>,
    /// Entry-level descriptors, e.g. `partOfSpeech`.
    pub entry_grammar: Vec<Feature>,
    pub lemma: Option<Form>,
    /// Word forms and other forms; never role [`FormRole::Lemma`].
    pub other_forms: Vec<Form>,
    pub senses: Vec<Sense>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Lexicon {
    pub language: String,
    pub entries: Vec<LexicalEntry>,
}

impl Lexicon {
    pub fn new(language: impl Into<String>) -> Self {
        Lexicon {
            language: language.into(),
            entries: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LexicalResource {
    /// Resource-wide descriptors, e.g. `languageCoding`.
    pub global_info: Vec<Feature>,
    pub lexicons: Vec<Lexicon>,
}

impl LexicalResource {
    pub fn single(lexicon: Lexicon) -> Self {
        LexicalResource {
            global_info: Vec::new(),
            lexicons: vec![lexicon],
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &LexicalEntry> {
        self.lexicons.iter().flat_map(|l| l.entries.iter())
    }
}

/// Descriptor names with a dedicated meaning inside the component-based
/// dialects; a grammar feature with one of these names cannot round-trip.
pub const FORM_RESERVED: &[&str] = &["writtenForm", "formType"];
pub const SENSE_RESERVED: &[&str] = &["senseNumber", "gloss"];
pub const QUOTATION_RESERVED: &[&str] = &["quotationType", "quote", "source"];

/// TEI grammar element names; used as generic category names they are
/// read back as the dedicated category in the feature-structure style.
pub const TEI_GRAMMAR_NAMES: &[&str] = &["pos", "number", "gen", "subc", "gram"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelLimits {
    pub max_sense_depth: usize,
}

impl Default for ModelLimits {
    fn default() -> Self {
        ModelLimits { max_sense_depth: 8 }
    }
}

/// Reports every violated model invariant. An empty list means the resource
/// is model-valid.
pub fn validate_model(resource: &LexicalResource) -> Vec<Finding> {
    validate_model_with(resource, ModelLimits::default())
}

pub fn validate_model_with(resource: &LexicalResource, limits: ModelLimits) -> Vec<Finding> {
    let mut v = ModelValidator {
        findings: Vec::new(),
        limits,
        ids: HashSet::new(),
    };
    if resource.lexicons.is_empty() {
        v.error("M-NO-LEXICON", "/", "resource has no lexicon");
    }
    v.features(&resource.global_info, "/globalInfo", &[]);
    for (li, lexicon) in resource.lexicons.iter().enumerate() {
        let path = format!("/lexicon[{}]", li + 1);
        if lexicon.language.is_empty() {
            v.findings.push(Finding::warning(
                "M-NO-LANGUAGE",
                path.clone(),
                "lexicon has no language",
            ));
        }
        for (ei, entry) in lexicon.entries.iter().enumerate() {
            v.entry(entry, &format!("{path}/entry[{}]", ei + 1));
        }
    }
    v.findings
}

struct ModelValidator {
    findings: Vec<Finding>,
    limits: ModelLimits,
    ids: HashSet<String>,
}

impl ModelValidator {
    fn error(&mut self, rule: &str, path: &str, message: impl Into<String>) {
        self.findings.push(Finding::error(rule, path, message));
    }

    fn entry(&mut self, entry: &LexicalEntry, path: &str) {
        if let Some(id) = &entry.id {
            if id.is_empty() || id.chars().any(char::is_whitespace) {
                self.error("M-BAD-ID", path, format!("entry id '{id}' is not a token"));
            } else if !self.ids.insert(id.clone()) {
                self.error("M-DUPLICATE-ID", path, format!("entry id '{id}' is used twice"));
            }
        }
        self.features(&entry.entry_grammar, &format!("{path}/grammar"), &[]);
        match &entry.lemma {
            None => self.error("M-LEMMA-MISSING", path, "entry has no lemma"),
            Some(lemma) => {
                if lemma.role != FormRole::Lemma {
                    self.error(
                        "M-FORM-ROLE",
                        &format!("{path}/lemma"),
                        "lemma slot holds a non-lemma form",
                    );
                }
                self.form(lemma, &format!("{path}/lemma"));
            }
        }
        for (i, form) in entry.other_forms.iter().enumerate() {
            let fpath = format!("{path}/form[{}]", i + 1);
            match &form.role {
                FormRole::Lemma => self.error("M-FORM-ROLE", &fpath, "second lemma form"),
                FormRole::Other(label) if label.is_empty() || label == "lemma" || label == "inflected" => self.error(
                    "M-FORM-ROLE",
                    &fpath,
                    format!("form label '{label}' is empty or reserved"),
                ),
                _ => {}
            }
            self.form(form, &fpath);
        }
        for (i, sense) in entry.senses.iter().enumerate() {
            self.sense(sense, &format!("{path}/sense[{}]", i + 1), 1);
        }
    }

    fn form(&mut self, form: &Form, path: &str) {
        if form.representations.is_empty() {
            self.error("M-EMPTY-FORM", path, "form has no representation");
        }
        for (i, rep) in form.representations.iter().enumerate() {
            if rep.written_form.is_empty() {
                self.error(
                    "M-EMPTY-FORM",
                    &format!("{path}/representation[{}]", i + 1),
                    "empty written form",
                );
            }
        }
        self.features(&form.grammar, &format!("{path}/grammar"), FORM_RESERVED);
    }

    fn sense(&mut self, sense: &Sense, path: &str, depth: usize) {
        if depth > self.limits.max_sense_depth {
            self.error(
                "M-SENSE-DEPTH",
                path,
                format!("sense nesting deeper than {}", self.limits.max_sense_depth),
            );
            return;
        }
        self.features(&sense.grammar, &format!("{path}/grammar"), SENSE_RESERVED);
        for (i, def) in sense.definitions.iter().enumerate() {
            self.annotated(def, &format!("{path}/definition[{}]", i + 1));
        }
        for (i, gloss) in sense.glosses.iter().enumerate() {
            self.text(&gloss.text, &format!("{path}/gloss[{}]", i + 1));
        }
        for (i, r) in sense.external_refs.iter().enumerate() {
            self.external_ref(r, &format!("{path}/ref[{}]", i + 1));
        }
        for (i, q) in sense.quotations.iter().enumerate() {
            self.quotation(q, &format!("{path}/quotation[{}]", i + 1));
        }
        for (i, b) in sense.syntactic_behaviours.iter().enumerate() {
            self.behaviour(b, &format!("{path}/syntacticBehaviour[{}]", i + 1));
        }
        for (i, s) in sense.subsenses.iter().enumerate() {
            self.sense(s, &format!("{path}/sense[{}]", i + 1), depth + 1);
        }
    }

    fn quotation(&mut self, q: &Quotation, path: &str) {
        if let QuotationKind::Other(label) = &q.kind {
            if label.is_empty() || label == "example" || label == "translation" {
                self.error(
                    "M-QUOTATION-KIND",
                    path,
                    format!("quotation label '{label}' is empty or reserved"),
                );
            }
        }
        self.text(&q.quote.text, &format!("{path}/quote"));
        self.features(&q.refinements, &format!("{path}/refinement"), QUOTATION_RESERVED);
        for (i, sub) in q.sub_quotations.iter().enumerate() {
            self.quotation(sub, &format!("{path}/quotation[{}]", i + 1));
        }
    }

    fn behaviour(&mut self, b: &SyntacticBehaviour, path: &str) {
        if b.frames.is_empty() {
            self.error("M-EMPTY-BEHAVIOUR", path, "syntactic behaviour without frames");
        }
        for (fi, frame) in b.frames.iter().enumerate() {
            let fpath = format!("{path}/frame[{}]", fi + 1);
            if frame.arguments.is_empty() {
                self.error("M-EMPTY-FRAME", &fpath, "subcategorization frame without arguments");
            }
            for (ai, arg) in frame.arguments.iter().enumerate() {
                let apath = format!("{fpath}/argument[{}]", ai + 1);
                if arg.function.is_empty() {
                    self.error("M-EMPTY-FUNCTION", &apath, "syntactic argument without function");
                }
                for (ci, c) in arg.collocates.iter().enumerate() {
                    self.text(&c.text, &format!("{apath}/collocate[{}]", ci + 1));
                }
                for (gi, g) in arg.glosses.iter().enumerate() {
                    self.text(&g.text, &format!("{apath}/gloss[{}]", gi + 1));
                }
                if let Some(r) = &arg.semantic_ref {
                    self.external_ref(r, &format!("{apath}/ref"));
                }
            }
        }
    }

    fn external_ref(&mut self, r: &ExternalRef, path: &str) {
        if r.idno.is_empty() {
            self.error("M-EMPTY-IDNO", path, "external reference without identifier");
        }
        if let Some(g) = &r.gloss {
            self.text(&g.text, &format!("{path}/gloss"));
        }
    }

    fn annotated(&mut self, t: &AnnotatedText, path: &str) {
        self.text(&t.text, path);
        let len = t.text.chars().count();
        let mut open: Vec<(usize, usize)> = Vec::new();
        let mut prev: Option<(usize, usize)> = None;
        for (i, span) in t.spans.iter().enumerate() {
            let spath = format!("{path}/span[{}]", i + 1);
            if span.start >= span.end || span.end > len {
                self.error(
                    "M-BAD-SPAN",
                    &spath,
                    format!("span {}..{} outside 0..{len}", span.start, span.end),
                );
                continue;
            }
            if span.kind.is_empty() {
                self.error("M-BAD-SPAN", &spath, "span without kind");
            }
            if let Some((ps, pe)) = prev {
                if span.start < ps || (span.start == ps && span.end > pe) {
                    self.error("M-BAD-SPAN", &spath, "spans are not in document order");
                }
            }
            prev = Some((span.start, span.end));
            while open.last().is_some_and(|&(_, e)| e <= span.start) {
                open.pop();
            }
            if let Some(&(_, e)) = open.last() {
                if span.end > e {
                    self.error("M-BAD-SPAN", &spath, "span overlaps an enclosing span");
                    continue;
                }
            }
            open.push((span.start, span.end));
        }
    }

    fn text(&mut self, text: &str, path: &str) {
        if text.is_empty() {
            self.error("M-EMPTY-TEXT", path, "empty text");
        }
    }

    fn features(&mut self, features: &[Feature], path: &str, reserved: &[&str]) {
        for (i, f) in features.iter().enumerate() {
            let fpath = format!("{path}/feature[{}]", i + 1);
            let name = f.name();
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                self.error(
                    "M-BAD-CATEGORY",
                    &fpath,
                    format!("category name '{name}' is not a token"),
                );
            } else if reserved.contains(&name) {
                self.error(
                    "M-RESERVED-CATEGORY",
                    &fpath,
                    format!("'{name}' has a dedicated meaning in this position"),
                );
            } else if TEI_GRAMMAR_NAMES.contains(&name) {
                self.findings.push(Finding::warning(
                    "M-AMBIGUOUS-CATEGORY",
                    fpath.clone(),
                    format!("'{name}' is also a TEI grammar element name"),
                ));
            }
            if f.value.is_empty() {
                self.error("M-EMPTY-VALUE", &fpath, format!("feature '{name}' has no value"));
            }
        }
    }
}

/// Tree equality: same values, same list order, optional fields compared by
/// presence and value.
pub fn equal_structural(a: &LexicalResource, b: &LexicalResource) -> bool {
    a == b
}

/// Path of the first model node where `a` and `b` differ, if any.
pub fn first_divergence(a: &LexicalResource, b: &LexicalResource) -> Option<String> {
    a.diverge(b, "")
}

trait Diverge {
    fn diverge(&self, other: &Self, path: &str) -> Option<String>;
}

fn leaf<T: PartialEq>(a: &T, b: &T, path: &str) -> Option<String> {
    (a != b).then(|| {
        if path.is_empty() {
            "/".to_string()
        } else {
            path.to_string()
        }
    })
}

fn list<T: Diverge>(a: &[T], b: &[T], path: &str, step: &str) -> Option<String> {
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        if let Some(d) = x.diverge(y, &format!("{path}/{step}[{}]", i + 1)) {
            return Some(d);
        }
    }
    if a.len() != b.len() {
        let i = a.len().min(b.len()) + 1;
        return Some(format!("{path}/{step}[{i}]"));
    }
    None
}

macro_rules! leaf_diverge {
    ($($t:ty),*) => {$(
        impl Diverge for $t {
            fn diverge(&self, other: &Self, path: &str) -> Option<String> {
                leaf(self, other, path)
            }
        }
    )*};
}

leaf_diverge!(Feature, FormRepresentation, LocalizedText, ExternalRef, Span, Collocate);

impl Diverge for LexicalResource {
    fn diverge(&self, o: &Self, path: &str) -> Option<String> {
        list(&self.global_info, &o.global_info, path, "globalInfo")
            .or_else(|| list(&self.lexicons, &o.lexicons, path, "lexicon"))
    }
}

impl Diverge for Lexicon {
    fn diverge(&self, o: &Self, path: &str) -> Option<String> {
        leaf(&self.language, &o.language, &format!("{path}/language"))
            .or_else(|| list(&self.entries, &o.entries, path, "entry"))
    }
}

impl Diverge for LexicalEntry {
    fn diverge(&self, o: &Self, path: &str) -> Option<String> {
        leaf(&self.id, &o.id, &format!("{path}/id"))
            .or_else(|| list(&self.entry_grammar, &o.entry_grammar, path, "grammar"))
            .or_else(|| match (&self.lemma, &o.lemma) {
                (Some(a), Some(b)) => a.diverge(b, &format!("{path}/lemma")),
                (a, b) => leaf(&a.is_some(), &b.is_some(), &format!("{path}/lemma")),
            })
            .or_else(|| list(&self.other_forms, &o.other_forms, path, "form"))
            .or_else(|| list(&self.senses, &o.senses, path, "sense"))
    }
}

impl Diverge for Form {
    fn diverge(&self, o: &Self, path: &str) -> Option<String> {
        leaf(&self.role, &o.role, &format!("{path}/role"))
            .or_else(|| list(&self.representations, &o.representations, path, "representation"))
            .or_else(|| list(&self.grammar, &o.grammar, path, "grammar"))
    }
}

impl Diverge for Sense {
    fn diverge(&self, o: &Self, path: &str) -> Option<String> {
        leaf(&self.label, &o.label, &format!("{path}/label"))
            .or_else(|| list(&self.grammar, &o.grammar, path, "grammar"))
            .or_else(|| list(&self.definitions, &o.definitions, path, "definition"))
            .or_else(|| list(&self.glosses, &o.glosses, path, "gloss"))
            .or_else(|| list(&self.external_refs, &o.external_refs, path, "ref"))
            .or_else(|| list(&self.quotations, &o.quotations, path, "quotation"))
            .or_else(|| {
                list(
                    &self.syntactic_behaviours,
                    &o.syntactic_behaviours,
                    path,
                    "syntacticBehaviour",
                )
            })
            .or_else(|| list(&self.subsenses, &o.subsenses, path, "sense"))
    }
}

impl Diverge for AnnotatedText {
    fn diverge(&self, o: &Self, path: &str) -> Option<String> {
        leaf(&self.text, &o.text, &format!("{path}/text")).or_else(|| list(&self.spans, &o.spans, path, "span"))
    }
}

impl Diverge for Quotation {
    fn diverge(&self, o: &Self, path: &str) -> Option<String> {
        leaf(&self.kind, &o.kind, &format!("{path}/kind"))
            .or_else(|| leaf(&self.quote, &o.quote, &format!("{path}/quote")))
            .or_else(|| list(&self.refinements, &o.refinements, path, "refinement"))
            .or_else(|| leaf(&self.source_ref, &o.source_ref, &format!("{path}/source")))
            .or_else(|| list(&self.sub_quotations, &o.sub_quotations, path, "quotation"))
    }
}

impl Diverge for SyntacticBehaviour {
    fn diverge(&self, o: &Self, path: &str) -> Option<String> {
        list(&self.frames, &o.frames, path, "frame")
    }
}

impl Diverge for SubcategorizationFrame {
    fn diverge(&self, o: &Self, path: &str) -> Option<String> {
        list(&self.arguments, &o.arguments, path, "argument")
    }
}

impl Diverge for SyntacticArgument {
    fn diverge(&self, o: &Self, path: &str) -> Option<String> {
        leaf(&self.function, &o.function, &format!("{path}/function"))
            .or_else(|| list(&self.collocates, &o.collocates, path, "collocate"))
            .or_else(|| list(&self.glosses, &o.glosses, path, "gloss"))
            .or_else(|| leaf(&self.semantic_ref, &o.semantic_ref, &format!("{path}/semanticRef")))
    }
}
