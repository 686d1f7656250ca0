use super::mapping::{fs_feature_name, map_descriptor_to_tei, USAGE_DOMAIN};
use super::{GrammarStyle, TeiEmitOptions, GRAMMAR_FS_TYPE, LEMMA_FS_TYPE, LEMMA_GRAMGRP_TYPE};
use crate::model::*;
use crate::xml::{QName, XmlNode, DCR_NS, LMF_NS, XML_NS};

/// Serializes a resource as a TEI dictionary tree.
///
/// A single language-less entry is emitted bare; a single lexicon becomes a
/// `<div type="lexicon">`; anything larger (or carrying global information)
/// becomes a `<body>` of such divisions.
pub fn emit_tei(resource: &LexicalResource, opts: &TeiEmitOptions) -> XmlNode {
    let e = Emitter { opts };
    let content = match resource.lexicons.as_slice() {
        [only] if resource.global_info.is_empty() && only.language.is_empty() && only.entries.len() == 1 => {
            e.entry(&only.entries[0])
        }
        [only] if resource.global_info.is_empty() => e.lexicon(only),
        lexicons => {
            let mut body = XmlNode::new(QName::tei("body"));
            if !resource.global_info.is_empty() {
                let mut fs = XmlNode::new(QName::tei("fs"));
                for f in &resource.global_info {
                    fs.push(e.feature_f(&f.category.name, f));
                }
                body.push(
                    XmlNode::new(QName::tei("div"))
                        .with_attr(QName::local("type"), "globalInformation")
                        .with_child(fs),
                );
            }
            for lexicon in lexicons {
                body.push(e.lexicon(lexicon));
            }
            body
        }
    };
    if opts.wrap {
        wrap(content)
    } else {
        content
    }
}

fn wrap(content: XmlNode) -> XmlNode {
    let body = if content.name.is(crate::xml::TEI_NS, "body") {
        content
    } else {
        XmlNode::new(QName::tei("body")).with_child(content)
    };
    let p = |text: &str| XmlNode::new(QName::tei("p")).with_text(text);
    let header = XmlNode::new(QName::tei("teiHeader")).with_child(
        XmlNode::new(QName::tei("fileDesc"))
            .with_child(
                XmlNode::new(QName::tei("titleStmt"))
                    .with_child(XmlNode::new(QName::tei("title")).with_text("Lexical resource")),
            )
            .with_child(XmlNode::new(QName::tei("publicationStmt")).with_child(p("Unpublished.")))
            .with_child(XmlNode::new(QName::tei("sourceDesc")).with_child(p("Converted from an LMF serialization."))),
    );
    XmlNode::new(QName::tei("TEI"))
        .with_child(header)
        .with_child(XmlNode::new(QName::tei("text")).with_child(body))
}

struct Emitter<'a> {
    opts: &'a TeiEmitOptions,
}

impl Emitter<'_> {
    fn lexicon(&self, lexicon: &Lexicon) -> XmlNode {
        let mut div = XmlNode::new(QName::tei("div")).with_attr(QName::local("type"), "lexicon");
        if !lexicon.language.is_empty() {
            div.set_attr(QName::xml("lang"), lexicon.language.clone());
        }
        for entry in &lexicon.entries {
            div.push(self.entry(entry));
        }
        div
    }

    fn entry(&self, entry: &LexicalEntry) -> XmlNode {
        let mut node = XmlNode::new(QName::tei("entry"));
        if let Some(id) = &entry.id {
            node.set_attr(QName::xml("id"), id.clone());
        }
        match &entry.lemma {
            Some(lemma) => {
                let mut form = self.form(lemma, "lemma");
                self.grammar_block(&mut form, &entry.entry_grammar, None);
                let marker = match self.opts.grammar_style {
                    GrammarStyle::GramGrp => LEMMA_GRAMGRP_TYPE,
                    GrammarStyle::FeatureStructure => LEMMA_FS_TYPE,
                };
                self.grammar_block(&mut form, &lemma.grammar, Some(marker));
                node.push(form);
            }
            None => self.grammar_block(&mut node, &entry.entry_grammar, None),
        }
        for form in &entry.other_forms {
            let label = match &form.role {
                FormRole::Lemma => "lemma",
                FormRole::WordForm => "inflected",
                FormRole::Other(label) => label.as_str(),
            };
            let mut node_form = self.form(form, label);
            self.grammar_block(&mut node_form, &form.grammar, None);
            node.push(node_form);
        }
        for sense in &entry.senses {
            node.push(self.sense(sense));
        }
        node
    }

    /// `<form>` with its `<orth>` children; grammar blocks are added by the caller.
    fn form(&self, form: &Form, label: &str) -> XmlNode {
        let mut node = XmlNode::new(QName::tei("form")).with_attr(QName::local("type"), label);
        for rep in &form.representations {
            let mut orth = XmlNode::new(QName::tei("orth"));
            if let Some(label) = &rep.orth_label {
                orth.set_attr(QName::local("type"), label.clone());
            }
            if let Some(lang) = &rep.lang_tag {
                orth.set_attr(QName::xml("lang"), lang.clone());
            }
            node.push(orth.with_text(rep.written_form.clone()));
        }
        node
    }

    /// Appends one grammar block holding all `features`; nothing for an empty list.
    fn grammar_block(&self, parent: &mut XmlNode, features: &[Feature], marker: Option<&str>) {
        if features.is_empty() {
            return;
        }
        let mut block = match self.opts.grammar_style {
            GrammarStyle::GramGrp => XmlNode::new(QName::tei("gramGrp")),
            GrammarStyle::FeatureStructure => {
                XmlNode::new(QName::tei("fs")).with_attr(QName::local("type"), GRAMMAR_FS_TYPE)
            }
        };
        if let Some(marker) = marker {
            block.set_attr(QName::local("type"), marker);
        }
        for f in features {
            block.push(self.grammar_element(f));
        }
        parent.push(block);
    }

    /// Grammar with usage domains pulled out as `<usg type="dom">`; the other
    /// features are grouped into blocks between them, preserving order.
    fn grammar_runs(&self, parent: &mut XmlNode, features: &[Feature]) {
        let mut run: Vec<Feature> = Vec::new();
        for f in features {
            if f.category.name == USAGE_DOMAIN {
                self.grammar_block(parent, &run, None);
                run.clear();
                let mut usg = XmlNode::new(QName::tei("usg")).with_attr(QName::local("type"), "dom");
                self.dcr(&mut usg, f);
                parent.push(usg.with_text(f.value.clone()));
            } else {
                run.push(f.clone());
            }
        }
        self.grammar_block(parent, &run, None);
    }

    fn grammar_element(&self, f: &Feature) -> XmlNode {
        match self.opts.grammar_style {
            GrammarStyle::GramGrp => {
                let m = map_descriptor_to_tei(&f.category);
                let mut node = XmlNode::new(QName::tei(m.tei_element));
                if m.is_generic {
                    node.set_attr(QName::local("type"), m.category_name);
                }
                self.dcr(&mut node, f);
                node.with_text(f.value.clone())
            }
            GrammarStyle::FeatureStructure => self.feature_f(fs_feature_name(&f.category.name), f),
        }
    }

    fn feature_f(&self, name: &str, f: &Feature) -> XmlNode {
        let mut node = XmlNode::new(QName::tei("f")).with_attr(QName::local("name"), name);
        self.dcr(&mut node, f);
        node.with_text(f.value.clone())
    }

    fn dcr(&self, node: &mut XmlNode, f: &Feature) {
        if !self.opts.emit_dcr_attrs {
            return;
        }
        if let Some(id) = &f.category.registry_id {
            node.set_attr(QName::new(DCR_NS, "datcat"), id.clone());
        }
        if let Some(id) = &f.value_registry_id {
            node.set_attr(QName::new(DCR_NS, "valueDatcat"), id.clone());
        }
    }

    fn sense(&self, sense: &Sense) -> XmlNode {
        let mut node = XmlNode::new(QName::tei("sense"));
        if let Some(label) = &sense.label {
            node.set_attr(QName::local("n"), label.clone());
        }
        self.grammar_runs(&mut node, &sense.grammar);
        for def in &sense.definitions {
            node.push(definition(def));
        }
        for gloss in &sense.glosses {
            node.push(localized("gloss", gloss));
        }
        for r in &sense.external_refs {
            node.push(external_ref(r));
        }
        for q in &sense.quotations {
            node.push(self.quotation(q));
        }
        for b in &sense.syntactic_behaviours {
            node.push(behaviour(b));
        }
        for sub in &sense.subsenses {
            node.push(self.sense(sub));
        }
        node
    }

    fn quotation(&self, q: &Quotation) -> XmlNode {
        let mut cit = XmlNode::new(QName::tei("cit")).with_attr(QName::local("type"), q.kind.label());
        if let Some(lang) = &q.quote.lang_tag {
            cit.set_attr(QName::xml("lang"), lang.clone());
        }
        cit.push(XmlNode::new(QName::tei("quote")).with_text(q.quote.text.clone()));
        self.grammar_runs(&mut cit, &q.refinements);
        if let Some(src) = &q.source_ref {
            cit.push(XmlNode::new(QName::tei("bibl")).with_text(src.clone()));
        }
        for sub in &q.sub_quotations {
            cit.push(self.quotation(sub));
        }
        cit
    }
}

fn localized(local: &str, text: &LocalizedText) -> XmlNode {
    let mut node = XmlNode::new(QName::tei(local));
    if let Some(lang) = &text.lang_tag {
        node.set_attr(QName::xml("lang"), lang.clone());
    }
    node.with_text(text.text.clone())
}

fn external_ref(r: &ExternalRef) -> XmlNode {
    let mut node = XmlNode::new(QName::tei("ref"));
    if !r.scheme.is_empty() {
        node.set_attr(QName::local("type"), r.scheme.clone());
    }
    node.push(XmlNode::new(QName::tei("idno")).with_text(r.idno.clone()));
    if let Some(g) = &r.gloss {
        node.push(localized("gloss", g));
    }
    node
}

fn definition(def: &AnnotatedText) -> XmlNode {
    let chars: Vec<char> = def.text.chars().collect();
    let mut node = XmlNode::new(QName::tei("def"));
    fill_spans(&mut node, &chars, 0, chars.len(), &def.spans);
    node
}

/// Renders `chars[start..end]` into `parent`, turning each top-level span of
/// `spans` (sorted, outer first) into an inline element.
fn fill_spans(parent: &mut XmlNode, chars: &[char], start: usize, end: usize, spans: &[Span]) {
    let mut pos = start;
    let mut i = 0;
    while i < spans.len() {
        let span = &spans[i];
        // Spans nested inside this one are those that start before it ends.
        let mut j = i + 1;
        while j < spans.len() && spans[j].start < span.end {
            j += 1;
        }
        let s = span.start.clamp(pos, end);
        let e = span.end.clamp(s, end);
        parent.push_text(chars[pos..s].iter().collect::<String>());
        let mut inline = XmlNode::new(span_name(&span.kind));
        for (k, v) in &span.attrs {
            inline.set_attr(attr_name(k), v.clone());
        }
        fill_spans(&mut inline, chars, s, e, &spans[i + 1..j]);
        parent.push(inline);
        pos = e;
        i = j;
    }
    parent.push_text(chars[pos..end].iter().collect::<String>());
}

fn span_name(kind: &str) -> QName {
    match kind.strip_prefix("lmf:") {
        Some(local) => QName::new(LMF_NS, local),
        None => QName::tei(kind),
    }
}

/// Span attribute keys: `xml:`-prefixed keys land in the XML namespace.
fn attr_name(key: &str) -> QName {
    match key.strip_prefix("xml:") {
        Some(local) => QName::new(XML_NS, local),
        None => QName::local(key),
    }
}

fn behaviour(b: &SyntacticBehaviour) -> XmlNode {
    let mut node = XmlNode::new(QName::lmf("syntacticBehaviour"));
    for frame in &b.frames {
        let mut fnode = XmlNode::new(QName::lmf("subcategorizationFrame"));
        for arg in &frame.arguments {
            let mut anode = XmlNode::new(QName::lmf("syntacticArgument"))
                .with_child(XmlNode::new(QName::lmf("syntacticFunction")).with_text(arg.function.clone()));
            for col in &arg.collocates {
                let mut c = XmlNode::new(QName::tei("colloc")).with_attr(QName::local("type"), col.kind.clone());
                if let Some(lang) = &col.lang_tag {
                    c.set_attr(QName::xml("lang"), lang.clone());
                }
                anode.push(c.with_text(col.text.clone()));
            }
            for g in &arg.glosses {
                anode.push(localized("gloss", g));
            }
            if let Some(r) = &arg.semantic_ref {
                anode.push(external_ref(r));
            }
            fnode.push(anode);
        }
        node.push(fnode);
    }
    node
}
