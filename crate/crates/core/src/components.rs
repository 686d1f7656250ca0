//! LMF component trees.
//!
//! The legacy, feature-structure and mixed dialects all serialize the same
//! shape: components named after meta-model classes, each holding elementary
//! descriptors (name/value pairs) followed by sub-components. This module maps
//! the model to that shape and back; the dialect modules only decide how a
//! component and a descriptor are spelled in XML.

use std::collections::BTreeMap;

use crate::finding::Finding;
use crate::model::*;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Descriptor {
    pub name: String,
    pub value: String,
    pub lang: Option<String>,
    pub datcat: Option<String>,
    pub value_datcat: Option<String>,
}

impl Descriptor {
    pub fn new(name: impl Into<String>, value: impl Into<String>) -> Self {
        Descriptor {
            name: name.into(),
            value: value.into(),
            ..Default::default()
        }
    }

    fn with_lang(mut self, lang: Option<&String>) -> Self {
        self.lang = lang.cloned();
        self
    }

    fn from_feature(f: &Feature) -> Self {
        Descriptor {
            name: f.category.name.clone(),
            value: f.value.clone(),
            lang: None,
            datcat: f.category.registry_id.clone(),
            value_datcat: f.value_registry_id.clone(),
        }
    }

    fn to_feature(&self) -> Feature {
        Feature {
            category: DataCategoryRef {
                name: self.name.clone(),
                registry_id: self.datcat.clone(),
            },
            value: self.value.clone(),
            value_registry_id: self.value_datcat.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Component {
    pub name: String,
    pub id: Option<String>,
    pub descriptors: Vec<Descriptor>,
    pub children: Vec<Component>,
    /// Location in the source document; empty for trees built from a model.
    pub path: String,
}

impl Component {
    pub fn new(name: impl Into<String>) -> Self {
        Component {
            name: name.into(),
            ..Default::default()
        }
    }

    fn descriptor(mut self, d: Descriptor) -> Self {
        self.descriptors.push(d);
        self
    }

    fn child(mut self, c: Component) -> Self {
        self.children.push(c);
        self
    }

    /// Descriptors in this component and all sub-components.
    pub fn descriptor_count(&self) -> usize {
        self.descriptors.len() + self.children.iter().map(Component::descriptor_count).sum::<usize>()
    }
}

// ---------------------------------------------------------------------------
// model -> components

pub fn resource_to_tree(resource: &LexicalResource) -> Component {
    let mut root = Component::new("LexicalResource");
    let mut global = Component::new("GlobalInformation");
    global.descriptors = resource.global_info.iter().map(Descriptor::from_feature).collect();
    root.children.push(global);
    for lexicon in &resource.lexicons {
        root.children.push(lexicon_to_tree(lexicon));
    }
    root
}

pub fn lexicon_to_tree(lexicon: &Lexicon) -> Component {
    let mut c = Component::new("Lexicon");
    if !lexicon.language.is_empty() {
        c.descriptors.push(Descriptor::new("language", &lexicon.language));
    }
    c.children = lexicon.entries.iter().map(entry_to_tree).collect();
    c
}

fn entry_to_tree(entry: &LexicalEntry) -> Component {
    let mut c = Component::new("LexicalEntry");
    c.id = entry.id.clone();
    c.descriptors = entry.entry_grammar.iter().map(Descriptor::from_feature).collect();
    if let Some(lemma) = &entry.lemma {
        c.children.push(form_to_tree(lemma));
    }
    c.children.extend(entry.other_forms.iter().map(form_to_tree));
    c.children.extend(entry.senses.iter().map(sense_to_tree));
    c
}

fn form_to_tree(form: &Form) -> Component {
    let mut c = match &form.role {
        FormRole::Lemma => Component::new("Lemma"),
        FormRole::WordForm => Component::new("WordForm"),
        FormRole::Other(label) => Component::new("Form").descriptor(Descriptor::new("formType", label)),
    };
    // A bare writtenForm descriptor cannot carry an orthography label; once
    // any representation has one, all of them become sub-components so their
    // relative order survives.
    let labelled = form.representations.iter().any(|r| r.orth_label.is_some());
    if labelled {
        for rep in &form.representations {
            let mut rc = Component::new("FormRepresentation")
                .descriptor(Descriptor::new("writtenForm", &rep.written_form).with_lang(rep.lang_tag.as_ref()));
            if let Some(label) = &rep.orth_label {
                rc.descriptors.push(Descriptor::new("orthLabel", label));
            }
            c.children.push(rc);
        }
    } else {
        for rep in &form.representations {
            c.descriptors
                .push(Descriptor::new("writtenForm", &rep.written_form).with_lang(rep.lang_tag.as_ref()));
        }
    }
    c.descriptors.extend(form.grammar.iter().map(Descriptor::from_feature));
    c
}

fn sense_to_tree(sense: &Sense) -> Component {
    let mut c = Component::new("Sense");
    if let Some(label) = &sense.label {
        c.descriptors.push(Descriptor::new("senseNumber", label));
    }
    c.descriptors.extend(sense.grammar.iter().map(Descriptor::from_feature));
    for g in &sense.glosses {
        c.descriptors
            .push(Descriptor::new("gloss", &g.text).with_lang(g.lang_tag.as_ref()));
    }
    c.children.extend(sense.definitions.iter().map(definition_to_tree));
    c.children.extend(sense.external_refs.iter().map(external_ref_to_tree));
    c.children.extend(sense.quotations.iter().map(quotation_to_tree));
    c.children
        .extend(sense.syntactic_behaviours.iter().map(behaviour_to_tree));
    c.children.extend(sense.subsenses.iter().map(sense_to_tree));
    c
}

fn definition_to_tree(def: &AnnotatedText) -> Component {
    let mut c = Component::new("Definition");
    if !def.text.is_empty() {
        c.descriptors.push(Descriptor::new("text", &def.text));
    }
    for span in &def.spans {
        let mut a = Component::new("Annotation")
            .descriptor(Descriptor::new("start", span.start.to_string()))
            .descriptor(Descriptor::new("end", span.end.to_string()))
            .descriptor(Descriptor::new("annotationType", &span.kind));
        for (k, v) in &span.attrs {
            a.children.push(
                Component::new("Attribute")
                    .descriptor(Descriptor::new("name", k))
                    .descriptor(Descriptor::new("value", v)),
            );
        }
        c.children.push(a);
    }
    c
}

fn external_ref_to_tree(r: &ExternalRef) -> Component {
    let mut c = Component::new("MonolingualExternalRef");
    if !r.scheme.is_empty() {
        c.descriptors.push(Descriptor::new("externalSystem", &r.scheme));
    }
    c.descriptors.push(Descriptor::new("externalReference", &r.idno));
    if let Some(g) = &r.gloss {
        c.descriptors
            .push(Descriptor::new("gloss", &g.text).with_lang(g.lang_tag.as_ref()));
    }
    c
}

fn quotation_to_tree(q: &Quotation) -> Component {
    let mut c = Component::new("Quotation")
        .descriptor(Descriptor::new("quotationType", q.kind.label()))
        .descriptor(Descriptor::new("quote", &q.quote.text).with_lang(q.quote.lang_tag.as_ref()));
    c.descriptors.extend(q.refinements.iter().map(Descriptor::from_feature));
    if let Some(src) = &q.source_ref {
        c.descriptors.push(Descriptor::new("source", src));
    }
    c.children = q.sub_quotations.iter().map(quotation_to_tree).collect();
    c
}

fn behaviour_to_tree(b: &SyntacticBehaviour) -> Component {
    let mut c = Component::new("SyntacticBehaviour");
    for frame in &b.frames {
        let mut fc = Component::new("SubcategorizationFrame");
        for arg in &frame.arguments {
            let mut ac =
                Component::new("SyntacticArgument").descriptor(Descriptor::new("syntacticFunction", &arg.function));
            for g in &arg.glosses {
                ac.descriptors
                    .push(Descriptor::new("gloss", &g.text).with_lang(g.lang_tag.as_ref()));
            }
            for col in &arg.collocates {
                ac = ac.child(
                    Component::new("Collocate")
                        .descriptor(Descriptor::new("writtenForm", &col.text).with_lang(col.lang_tag.as_ref()))
                        .descriptor(Descriptor::new("collocateType", &col.kind)),
                );
            }
            if let Some(r) = &arg.semantic_ref {
                ac.children.push(external_ref_to_tree(r));
            }
            fc.children.push(ac);
        }
        c.children.push(fc);
    }
    c
}

// ---------------------------------------------------------------------------
// components -> model

/// Rebuilds a resource from a `LexicalResource` (or bare `Lexicon`) tree.
///
/// `prefix` is the dialect letter used in finding ids (`L`, `F`, `X`). With
/// `preserve_unknown`, descriptors of unknown components are kept as features
/// of the nearest enclosing grammar list.
pub fn tree_to_resource(root: &Component, prefix: &str, preserve_unknown: bool) -> (LexicalResource, Vec<Finding>) {
    let mut r = TreeReader {
        prefix,
        preserve_unknown,
        findings: Vec::new(),
    };
    let mut resource = LexicalResource::default();
    match root.name.as_str() {
        "Lexicon" => resource.lexicons.push(r.lexicon(root)),
        _ => {
            r.unplaced(root, &root.descriptors);
            for child in &root.children {
                match child.name.as_str() {
                    "GlobalInformation" => {
                        resource
                            .global_info
                            .extend(child.descriptors.iter().map(|d| r.feature(child, d)));
                        r.no_children(child);
                    }
                    "Lexicon" => resource.lexicons.push(r.lexicon(child)),
                    _ => r.unknown(child, None),
                }
            }
        }
    }
    (resource, r.findings)
}

struct TreeReader<'a> {
    prefix: &'a str,
    preserve_unknown: bool,
    findings: Vec<Finding>,
}

impl TreeReader<'_> {
    fn rule(&self, suffix: &str) -> String {
        format!("{}-{suffix}", self.prefix)
    }

    fn unknown(&mut self, c: &Component, sink: Option<&mut Vec<Feature>>) {
        let rule = self.rule("UNKNOWN-COMPONENT");
        let preserved = match sink {
            Some(sink) if self.preserve_unknown => {
                flatten(c, sink);
                " (descriptors kept as features)"
            }
            _ => "",
        };
        self.findings.push(Finding::warning(
            rule,
            c.path.clone(),
            format!("unknown component '{}' skipped{preserved}", c.name),
        ));
    }

    fn unplaced(&mut self, c: &Component, descriptors: &[Descriptor]) {
        for d in descriptors {
            let rule = self.rule("UNPLACED-DESCRIPTOR");
            self.findings.push(Finding::warning(
                rule,
                c.path.clone(),
                format!("descriptor '{}' has no place in component '{}'", d.name, c.name),
            ));
        }
    }

    fn duplicate(&mut self, c: &Component, d: &Descriptor) {
        let rule = self.rule("DUPLICATE-DESCRIPTOR");
        self.findings.push(Finding::warning(
            rule,
            c.path.clone(),
            format!("repeated descriptor '{}' in '{}' ignored", d.name, c.name),
        ));
    }

    fn no_children(&mut self, c: &Component) {
        for child in &c.children {
            self.unknown(child, None);
        }
    }

    fn feature(&mut self, c: &Component, d: &Descriptor) -> Feature {
        if d.lang.is_some() {
            let rule = self.rule("IGNORED-LANG");
            self.findings.push(Finding::info(
                rule,
                c.path.clone(),
                format!("language tag on descriptor '{}' dropped", d.name),
            ));
        }
        d.to_feature()
    }

    fn lexicon(&mut self, c: &Component) -> Lexicon {
        let mut lexicon = Lexicon::default();
        let mut seen = false;
        for d in &c.descriptors {
            if d.name == "language" {
                if seen {
                    self.duplicate(c, d);
                } else {
                    lexicon.language = d.value.clone();
                    seen = true;
                }
            } else {
                self.unplaced(c, std::slice::from_ref(d));
            }
        }
        if !seen {
            let rule = self.rule("NO-LANGUAGE");
            self.findings.push(Finding::warning(
                rule,
                c.path.clone(),
                "lexicon without language descriptor",
            ));
        }
        for child in &c.children {
            match child.name.as_str() {
                "LexicalEntry" => lexicon.entries.push(self.entry(child)),
                _ => self.unknown(child, None),
            }
        }
        lexicon
    }

    fn entry(&mut self, c: &Component) -> LexicalEntry {
        let mut entry = LexicalEntry {
            id: c.id.clone(),
            ..Default::default()
        };
        entry.entry_grammar = c.descriptors.iter().map(|d| self.feature(c, d)).collect();
        for child in &c.children {
            match child.name.as_str() {
                "Lemma" => {
                    let form = self.form(child, FormRole::Lemma);
                    if entry.lemma.is_some() {
                        let rule = self.rule("DUPLICATE-LEMMA");
                        self.findings
                            .push(Finding::warning(rule, child.path.clone(), "second Lemma skipped"));
                    } else {
                        entry.lemma = Some(form);
                    }
                }
                "WordForm" => {
                    let form = self.form(child, FormRole::WordForm);
                    entry.other_forms.push(form);
                }
                "Form" => {
                    let form = self.form(child, FormRole::Other(String::new()));
                    entry.other_forms.push(form);
                }
                "Sense" => {
                    let sense = self.sense(child);
                    entry.senses.push(sense);
                }
                _ => self.unknown(child, Some(&mut entry.entry_grammar)),
            }
        }
        entry
    }

    fn form(&mut self, c: &Component, role: FormRole) -> Form {
        let mut form = Form {
            role,
            representations: Vec::new(),
            grammar: Vec::new(),
        };
        for d in &c.descriptors {
            match d.name.as_str() {
                "writtenForm" => form.representations.push(FormRepresentation {
                    written_form: d.value.clone(),
                    lang_tag: d.lang.clone(),
                    orth_label: None,
                }),
                "formType" if matches!(form.role, FormRole::Other(_)) => {
                    form.role = FormRole::Other(d.value.clone());
                }
                _ => {
                    let f = self.feature(c, d);
                    form.grammar.push(f);
                }
            }
        }
        for child in &c.children {
            match child.name.as_str() {
                "FormRepresentation" => {
                    let mut rep = FormRepresentation::default();
                    for d in &child.descriptors {
                        match d.name.as_str() {
                            "writtenForm" => {
                                rep.written_form = d.value.clone();
                                rep.lang_tag = d.lang.clone();
                            }
                            "orthLabel" => rep.orth_label = Some(d.value.clone()),
                            _ => self.unplaced(child, std::slice::from_ref(d)),
                        }
                    }
                    self.no_children(child);
                    form.representations.push(rep);
                }
                _ => self.unknown(child, Some(&mut form.grammar)),
            }
        }
        form
    }

    fn sense(&mut self, c: &Component) -> Sense {
        let mut sense = Sense::default();
        for d in &c.descriptors {
            match d.name.as_str() {
                "senseNumber" if sense.label.is_none() => sense.label = Some(d.value.clone()),
                "senseNumber" => self.duplicate(c, d),
                "gloss" => sense.glosses.push(localized(d)),
                _ => {
                    let f = self.feature(c, d);
                    sense.grammar.push(f);
                }
            }
        }
        for child in &c.children {
            match child.name.as_str() {
                "Definition" => {
                    let def = self.definition(child);
                    sense.definitions.push(def);
                }
                "MonolingualExternalRef" => {
                    let r = self.external_ref(child);
                    sense.external_refs.push(r);
                }
                "Quotation" => {
                    let q = self.quotation(child);
                    sense.quotations.push(q);
                }
                "SyntacticBehaviour" => {
                    let b = self.behaviour(child);
                    sense.syntactic_behaviours.push(b);
                }
                "Sense" => {
                    let s = self.sense(child);
                    sense.subsenses.push(s);
                }
                _ => self.unknown(child, Some(&mut sense.grammar)),
            }
        }
        sense
    }

    fn definition(&mut self, c: &Component) -> AnnotatedText {
        let mut def = AnnotatedText::default();
        for d in &c.descriptors {
            match d.name.as_str() {
                "text" => def.text = d.value.clone(),
                _ => self.unplaced(c, std::slice::from_ref(d)),
            }
        }
        for child in &c.children {
            if child.name != "Annotation" {
                self.unknown(child, None);
                continue;
            }
            let mut span = Span::default();
            for d in &child.descriptors {
                match d.name.as_str() {
                    "start" => span.start = self.offset(child, d),
                    "end" => span.end = self.offset(child, d),
                    "annotationType" => span.kind = d.value.clone(),
                    _ => self.unplaced(child, std::slice::from_ref(d)),
                }
            }
            for attr in &child.children {
                if attr.name != "Attribute" {
                    self.unknown(attr, None);
                    continue;
                }
                let get = |n: &str| attr.descriptors.iter().find(|d| d.name == n).map(|d| d.value.clone());
                match (get("name"), get("value")) {
                    (Some(k), Some(v)) => {
                        span.attrs.insert(k, v);
                    }
                    _ => {
                        let rule = self.rule("INCOMPLETE-ATTRIBUTE");
                        self.findings.push(Finding::warning(
                            rule,
                            attr.path.clone(),
                            "attribute needs name and value",
                        ));
                    }
                }
            }
            def.spans.push(span);
        }
        def
    }

    fn offset(&mut self, c: &Component, d: &Descriptor) -> usize {
        match d.value.trim().parse() {
            Ok(n) => n,
            Err(_) => {
                let rule = self.rule("BAD-OFFSET");
                self.findings.push(Finding::error(
                    rule,
                    c.path.clone(),
                    format!("'{}' is not a character offset", d.value),
                ));
                0
            }
        }
    }

    fn external_ref(&mut self, c: &Component) -> ExternalRef {
        let mut r = ExternalRef::default();
        for d in &c.descriptors {
            match d.name.as_str() {
                "externalSystem" => r.scheme = d.value.clone(),
                "externalReference" => r.idno = d.value.clone(),
                "gloss" if r.gloss.is_none() => r.gloss = Some(localized(d)),
                _ => self.unplaced(c, std::slice::from_ref(d)),
            }
        }
        self.no_children(c);
        r
    }

    fn quotation(&mut self, c: &Component) -> Quotation {
        let mut q = Quotation::new(QuotationKind::Example, LocalizedText::default());
        for d in &c.descriptors {
            match d.name.as_str() {
                "quotationType" => q.kind = QuotationKind::from_label(&d.value),
                "quote" => q.quote = localized(d),
                "source" => q.source_ref = Some(d.value.clone()),
                _ => {
                    let f = self.feature(c, d);
                    q.refinements.push(f);
                }
            }
        }
        for child in &c.children {
            match child.name.as_str() {
                "Quotation" => {
                    let sub = self.quotation(child);
                    q.sub_quotations.push(sub);
                }
                _ => self.unknown(child, Some(&mut q.refinements)),
            }
        }
        q
    }

    fn behaviour(&mut self, c: &Component) -> SyntacticBehaviour {
        self.unplaced(c, &c.descriptors);
        let mut b = SyntacticBehaviour::default();
        for fc in &c.children {
            if fc.name != "SubcategorizationFrame" {
                self.unknown(fc, None);
                continue;
            }
            self.unplaced(fc, &fc.descriptors);
            let mut frame = SubcategorizationFrame::default();
            for ac in &fc.children {
                if ac.name != "SyntacticArgument" {
                    self.unknown(ac, None);
                    continue;
                }
                let arg = self.argument(ac);
                frame.arguments.push(arg);
            }
            b.frames.push(frame);
        }
        b
    }

    fn argument(&mut self, c: &Component) -> SyntacticArgument {
        let mut arg = SyntacticArgument::default();
        for d in &c.descriptors {
            match d.name.as_str() {
                "syntacticFunction" => arg.function = d.value.clone(),
                "gloss" => arg.glosses.push(localized(d)),
                _ => self.unplaced(c, std::slice::from_ref(d)),
            }
        }
        for child in &c.children {
            match child.name.as_str() {
                "Collocate" => {
                    let mut col = Collocate::default();
                    for d in &child.descriptors {
                        match d.name.as_str() {
                            "writtenForm" => {
                                col.text = d.value.clone();
                                col.lang_tag = d.lang.clone();
                            }
                            "collocateType" => col.kind = d.value.clone(),
                            _ => self.unplaced(child, std::slice::from_ref(d)),
                        }
                    }
                    self.no_children(child);
                    arg.collocates.push(col);
                }
                "MonolingualExternalRef" if arg.semantic_ref.is_none() => {
                    arg.semantic_ref = Some(self.external_ref(child));
                }
                _ => self.unknown(child, None),
            }
        }
        arg
    }
}

fn localized(d: &Descriptor) -> LocalizedText {
    LocalizedText {
        text: d.value.clone(),
        lang_tag: d.lang.clone(),
    }
}

fn flatten(c: &Component, sink: &mut Vec<Feature>) {
    sink.extend(c.descriptors.iter().map(Descriptor::to_feature));
    for child in &c.children {
        flatten(child, sink);
    }
}

/// Descriptor count per component name; used to check count preservation.
pub fn descriptor_histogram(c: &Component) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    fn walk(c: &Component, out: &mut BTreeMap<String, usize>) {
        *out.entry(c.name.clone()).or_insert(0) += c.descriptors.len();
        for child in &c.children {
            walk(child, out);
        }
    }
    walk(c, &mut out);
    out
}
