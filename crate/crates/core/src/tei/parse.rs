use super::mapping::{category_for_fs_feature, map_tei_to_descriptor, USAGE_DOMAIN};
use super::{TeiParseOptions, GRAMMAR_FS_TYPE, LEMMA_FS_TYPE, LEMMA_GRAMGRP_TYPE};
use crate::error::Error;
use crate::finding::Finding;
use crate::model::*;
use crate::xml::{path_step, QName, XmlChild, XmlNode, DCR_NS, LMF_NS, TEI_NS, XML_NS};

const TRANSIENT: &[&str] = &["entryFree", "dictScrap", "superEntry", "hom"];

pub fn parse_tei(doc: &XmlNode) -> Result<(LexicalResource, Vec<Finding>), Error> {
    parse_tei_with(doc, &TeiParseOptions::default())
}

pub fn parse_tei_with(doc: &XmlNode, opts: &TeiParseOptions) -> Result<(LexicalResource, Vec<Finding>), Error> {
    let mut p = Parser {
        opts,
        findings: Vec::new(),
        resource: LexicalResource::default(),
        implicit: None,
        language: String::new(),
        found: false,
    };
    let path = format!("/{}", path_step(&doc.name, 1));
    p.visit(doc, &path, doc.xml_lang());
    if !p.found {
        return Err(Error::Dialect {
            expected: "TEI dictionary",
            found: format!("no <entry> or lexicon division under {}", doc.name),
        });
    }
    Ok((p.resource, p.findings))
}

struct Parser<'a> {
    opts: &'a TeiParseOptions,
    findings: Vec<Finding>,
    resource: LexicalResource,
    /// Index of the lexicon receiving entries at the current position.
    implicit: Option<usize>,
    /// Language of that lexicon, known before its first entry is read.
    language: String,
    found: bool,
}

fn is_tei(node: &XmlNode, local: &str) -> bool {
    node.name.is(TEI_NS, local)
}

fn child_path(path: &str, node: &XmlNode, index: usize) -> String {
    format!("{path}/{}", path_step(&node.name, index))
}

impl Parser<'_> {
    fn warn(&mut self, rule: &str, path: &str, message: impl Into<String>) {
        self.findings.push(Finding::warning(rule, path, message));
    }

    fn unknown(&mut self, node: &XmlNode, path: &str, context: &str) {
        self.warn(
            "T-UNKNOWN-ELEMENT",
            path,
            format!("<{}> not expected in <{context}>; skipped", node.name.local),
        );
    }

    fn stray_text(&mut self, node: &XmlNode, path: &str) {
        if node.has_significant_text() {
            self.warn(
                "T-STRAY-TEXT",
                path,
                format!("text directly inside <{}> ignored", node.name.local),
            );
        }
    }

    /// Walks wrappers (`TEI`, `text`, `body`, `div`, …) looking for lexicons
    /// and entries. `lang` is the language in scope, including `node`'s own.
    fn visit(&mut self, node: &XmlNode, path: &str, lang: Option<&str>) {
        if node.name.ns == TEI_NS && TRANSIENT.contains(&node.name.local.as_str()) {
            self.transient(node, path);
        } else if is_tei(node, "teiHeader") {
        } else if is_tei(node, "div") && node.attr_local("type") == Some("lexicon") {
            self.found = true;
            let idx = self.resource.lexicons.len();
            let language = lang.unwrap_or_default().to_string();
            self.resource.lexicons.push(Lexicon {
                language: language.clone(),
                entries: Vec::new(),
            });
            let saved = (
                self.implicit.replace(idx),
                std::mem::replace(&mut self.language, language),
            );
            self.container(node, path, lang);
            (self.implicit, self.language) = saved;
        } else if is_tei(node, "div") && node.attr_local("type") == Some("globalInformation") {
            self.global_information(node, path);
        } else if is_tei(node, "entry") {
            self.found = true;
            let idx = match self.implicit {
                Some(idx) => idx,
                None => {
                    // Entries outside any lexicon division share one lexicon,
                    // whose language is the one in scope at the first of them.
                    let language = lang.unwrap_or_default().to_string();
                    self.resource.lexicons.push(Lexicon {
                        language: language.clone(),
                        entries: Vec::new(),
                    });
                    self.language = language;
                    let idx = self.resource.lexicons.len() - 1;
                    self.implicit = Some(idx);
                    idx
                }
            };
            let entry = self.entry(node, path);
            self.resource.lexicons[idx].entries.push(entry);
        } else {
            self.container(node, path, lang);
        }
    }

    fn container(&mut self, node: &XmlNode, path: &str, lang: Option<&str>) {
        for (child, index) in node.indexed_elements() {
            let cpath = child_path(path, child, index);
            self.visit(child, &cpath, child.xml_lang().or(lang));
        }
    }

    fn transient(&mut self, node: &XmlNode, path: &str) {
        self.warn(
            "T-TRANSIENT-CONSTRUCT",
            path,
            format!("<{}> is not converted; use <entry>", node.name.local),
        );
    }

    fn global_information(&mut self, div: &XmlNode, path: &str) {
        for (fs, i) in div.indexed_elements() {
            let fs_path = child_path(path, fs, i);
            if !is_tei(fs, "fs") {
                self.unknown(fs, &fs_path, "div");
                continue;
            }
            for (f, j) in fs.indexed_elements() {
                let fpath = child_path(&fs_path, f, j);
                match f.attr_local("name") {
                    Some(name) if is_tei(f, "f") => {
                        let feature = with_dcr(Feature::new(name, f.text_content()), f);
                        self.resource.global_info.push(feature);
                    }
                    _ => self.unknown(f, &fpath, "fs"),
                }
            }
        }
    }

    fn entry(&mut self, node: &XmlNode, path: &str) -> LexicalEntry {
        let mut entry = LexicalEntry {
            id: node.attr(&QName::xml("id")).map(str::to_string),
            ..Default::default()
        };
        self.stray_text(node, path);
        let mut implicit: Option<(Sense, String)> = None;
        for (child, index) in node.indexed_elements() {
            let cpath = child_path(path, child, index);
            if child.name.ns != TEI_NS {
                self.unknown(child, &cpath, "entry");
                continue;
            }
            match child.name.local.as_str() {
                "form" => self.form(child, &cpath, &mut entry),
                "gramGrp" => self.grammar_block(child, &cpath, &mut entry.entry_grammar),
                "fs" if child.attr_local("type") == Some(GRAMMAR_FS_TYPE) => {
                    self.grammar_block(child, &cpath, &mut entry.entry_grammar)
                }
                "sense" => {
                    let sense = self.sense(child, &cpath);
                    entry.senses.push(sense);
                }
                "def" | "cit" | "usg" => {
                    let (sense, _) = implicit.get_or_insert_with(|| (Sense::default(), cpath.clone()));
                    self.sense_child(child, &cpath, sense);
                }
                local if TRANSIENT.contains(&local) => self.transient(child, &cpath),
                _ => self.unknown(child, &cpath, "entry"),
            }
        }
        if let Some((sense, at)) = implicit {
            self.findings.push(Finding::warning(
                "T-IMPLICIT-SENSE",
                at,
                "sense content directly under <entry> adopted into a new sense",
            ));
            entry.senses.insert(0, sense);
        }
        entry
    }

    fn form(&mut self, node: &XmlNode, path: &str, entry: &mut LexicalEntry) {
        self.stray_text(node, path);
        let role = match node.attr_local("type") {
            Some("lemma") => FormRole::Lemma,
            Some("inflected") => FormRole::WordForm,
            Some(label) => FormRole::Other(label.to_string()),
            None if entry.lemma.is_none() => {
                self.findings.push(Finding::info(
                    "T-UNTYPED-FORM",
                    path,
                    "untyped <form> read as the lemma",
                ));
                FormRole::Lemma
            }
            None => {
                self.findings.push(Finding::info(
                    "T-UNTYPED-FORM",
                    path,
                    "untyped <form> read as an inflected form",
                ));
                FormRole::WordForm
            }
        };
        let is_lemma = role == FormRole::Lemma && entry.lemma.is_none();
        let mut form = Form {
            role,
            representations: Vec::new(),
            grammar: Vec::new(),
        };
        for (child, index) in node.indexed_elements() {
            let cpath = child_path(path, child, index);
            let kind = child.attr_local("type");
            if is_tei(child, "orth") {
                form.representations.push(FormRepresentation {
                    written_form: child.text_content(),
                    lang_tag: child.xml_lang().map(str::to_string),
                    orth_label: kind.map(str::to_string),
                });
            } else if (is_tei(child, "gramGrp") && kind == Some(LEMMA_GRAMGRP_TYPE))
                || (is_tei(child, "fs") && kind == Some(LEMMA_FS_TYPE))
            {
                self.grammar_block(child, &cpath, &mut form.grammar);
            } else if is_tei(child, "gramGrp") || (is_tei(child, "fs") && kind == Some(GRAMMAR_FS_TYPE)) {
                let target = if is_lemma {
                    &mut entry.entry_grammar
                } else {
                    &mut form.grammar
                };
                self.grammar_block(child, &cpath, target);
            } else {
                self.unknown(child, &cpath, "form");
            }
        }
        if is_lemma {
            entry.lemma = Some(form);
        } else {
            entry.other_forms.push(form);
        }
    }

    /// Reads a `<gramGrp>` or grammar `<fs>` into `out`.
    fn grammar_block(&mut self, block: &XmlNode, path: &str, out: &mut Vec<Feature>) {
        self.stray_text(block, path);
        let fs_style = is_tei(block, "fs");
        for (child, index) in block.indexed_elements() {
            let cpath = child_path(path, child, index);
            if fs_style {
                match child.attr_local("name") {
                    Some(name) if is_tei(child, "f") => {
                        let category = category_for_fs_feature(name);
                        out.push(with_dcr(Feature::new(category, child.text_content()), child));
                    }
                    _ => self.unknown(child, &cpath, "fs"),
                }
            } else {
                self.grammar_element(child, &cpath, out);
            }
        }
    }

    fn grammar_element(&mut self, node: &XmlNode, path: &str, out: &mut Vec<Feature>) {
        if is_tei(node, "usg") {
            self.usage(node, path, out);
            return;
        }
        if node.name.ns != TEI_NS {
            self.unknown(node, path, "gramGrp");
            return;
        }
        match map_tei_to_descriptor(&node.name.local, node.attr_local("type")) {
            Ok(category) => out.push(with_dcr(
                Feature {
                    category,
                    value: node.text_content(),
                    value_registry_id: None,
                },
                node,
            )),
            Err(e) => self
                .findings
                .push(Finding::error("T-GRAM-UNTYPED", path, e.to_string())),
        }
    }

    fn usage(&mut self, node: &XmlNode, path: &str, out: &mut Vec<Feature>) {
        match node.attr_local("type") {
            None | Some("dom") => {}
            Some(other) => self.findings.push(Finding::info(
                "T-USG-TYPE",
                path,
                format!("<usg type=\"{other}\"> read as {USAGE_DOMAIN}"),
            )),
        }
        out.push(with_dcr(Feature::new(USAGE_DOMAIN, node.text_content()), node));
    }

    fn sense(&mut self, node: &XmlNode, path: &str) -> Sense {
        let mut sense = Sense {
            label: node.attr_local("n").map(str::to_string),
            ..Default::default()
        };
        self.stray_text(node, path);
        for (child, index) in node.indexed_elements() {
            let cpath = child_path(path, child, index);
            self.sense_child(child, &cpath, &mut sense);
        }
        sense
    }

    fn sense_child(&mut self, child: &XmlNode, path: &str, sense: &mut Sense) {
        if child.name.is(LMF_NS, "syntacticBehaviour") {
            let b = self.behaviour(child, path);
            sense.syntactic_behaviours.push(b);
            return;
        }
        if child.name.ns != TEI_NS {
            self.unknown(child, path, "sense");
            return;
        }
        match child.name.local.as_str() {
            "gramGrp" => self.grammar_block(child, path, &mut sense.grammar),
            "fs" if child.attr_local("type") == Some(GRAMMAR_FS_TYPE) => {
                self.grammar_block(child, path, &mut sense.grammar)
            }
            "usg" => self.usage(child, path, &mut sense.grammar),
            "def" => sense.definitions.push(definition(child)),
            "gloss" => {
                let gloss = localized(child);
                if self.opts.glosses_as_translations && self.is_foreign(&gloss) {
                    self.findings.push(Finding::info(
                        "T-GLOSS-AS-TRANSLATION",
                        path,
                        "gloss in another language read as a translation",
                    ));
                    sense.quotations.push(Quotation::new(QuotationKind::Translation, gloss));
                } else {
                    sense.glosses.push(gloss);
                }
            }
            "ref" => {
                let r = self.external_ref(child, path);
                sense.external_refs.push(r);
            }
            "cit" => {
                let q = self.quotation(child, path);
                sense.quotations.push(q);
            }
            "sense" => {
                let s = self.sense(child, path);
                sense.subsenses.push(s);
            }
            _ => self.unknown(child, path, "sense"),
        }
    }

    fn is_foreign(&self, gloss: &LocalizedText) -> bool {
        matches!(&gloss.lang_tag, Some(lang) if *lang != self.language)
    }

    fn external_ref(&mut self, node: &XmlNode, path: &str) -> ExternalRef {
        let mut r = ExternalRef {
            scheme: node.attr_local("type").unwrap_or_default().to_string(),
            ..Default::default()
        };
        self.stray_text(node, path);
        for (child, index) in node.indexed_elements() {
            let cpath = child_path(path, child, index);
            if is_tei(child, "idno") {
                r.idno = child.text_content();
            } else if is_tei(child, "gloss") && r.gloss.is_none() {
                r.gloss = Some(localized(child));
            } else {
                self.unknown(child, &cpath, "ref");
            }
        }
        r
    }

    fn quotation(&mut self, node: &XmlNode, path: &str) -> Quotation {
        let kind = match node.attr_local("type") {
            Some(label) => QuotationKind::from_label(label),
            None => {
                self.findings
                    .push(Finding::info("T-UNTYPED-CIT", path, "untyped <cit> read as an example"));
                QuotationKind::Example
            }
        };
        let mut q = Quotation::new(kind, LocalizedText::default());
        let mut quoted = false;
        self.stray_text(node, path);
        for (child, index) in node.indexed_elements() {
            let cpath = child_path(path, child, index);
            if is_tei(child, "quote") || is_tei(child, "q") {
                if quoted {
                    self.warn("T-EXTRA-QUOTE", &cpath, "only the first quote of a <cit> is kept");
                    continue;
                }
                quoted = true;
                q.quote = LocalizedText {
                    text: child.text_content(),
                    lang_tag: node.xml_lang().or(child.xml_lang()).map(str::to_string),
                };
            } else if is_tei(child, "bibl") && q.source_ref.is_none() {
                q.source_ref = Some(child.text_content());
            } else if is_tei(child, "cit") {
                let sub = self.quotation(child, &cpath);
                q.sub_quotations.push(sub);
            } else if is_tei(child, "gramGrp")
                || (is_tei(child, "fs") && child.attr_local("type") == Some(GRAMMAR_FS_TYPE))
            {
                self.grammar_block(child, &cpath, &mut q.refinements);
            } else if is_tei(child, "usg") {
                self.usage(child, &cpath, &mut q.refinements);
            } else {
                self.unknown(child, &cpath, "cit");
            }
        }
        if !quoted {
            if let Some(lang) = node.xml_lang() {
                q.quote.lang_tag = Some(lang.to_string());
            }
        }
        q
    }

    fn behaviour(&mut self, node: &XmlNode, path: &str) -> SyntacticBehaviour {
        let mut b = SyntacticBehaviour::default();
        self.stray_text(node, path);
        for (fnode, i) in node.indexed_elements() {
            let fpath = child_path(path, fnode, i);
            if !fnode.name.is(LMF_NS, "subcategorizationFrame") {
                self.unknown(fnode, &fpath, "lmf:syntacticBehaviour");
                continue;
            }
            let mut frame = SubcategorizationFrame::default();
            for (anode, j) in fnode.indexed_elements() {
                let apath = child_path(&fpath, anode, j);
                if !anode.name.is(LMF_NS, "syntacticArgument") {
                    self.unknown(anode, &apath, "lmf:subcategorizationFrame");
                    continue;
                }
                let arg = self.argument(anode, &apath);
                frame.arguments.push(arg);
            }
            b.frames.push(frame);
        }
        b
    }

    fn argument(&mut self, node: &XmlNode, path: &str) -> SyntacticArgument {
        let mut arg = SyntacticArgument::default();
        self.stray_text(node, path);
        for (child, index) in node.indexed_elements() {
            let cpath = child_path(path, child, index);
            if child.name.is(LMF_NS, "syntacticFunction") {
                arg.function = child.text_content();
            } else if is_tei(child, "colloc") {
                arg.collocates.push(Collocate {
                    text: child.text_content(),
                    kind: child.attr_local("type").unwrap_or_default().to_string(),
                    lang_tag: child.xml_lang().map(str::to_string),
                });
            } else if is_tei(child, "gloss") {
                arg.glosses.push(localized(child));
            } else if is_tei(child, "ref") && arg.semantic_ref.is_none() {
                arg.semantic_ref = Some(self.external_ref(child, &cpath));
            } else {
                self.warn(
                    "T-UNKNOWN-ARG-CHILD",
                    &cpath,
                    format!("<{}> is not a syntactic argument part; skipped", child.name.local),
                );
            }
        }
        arg
    }
}

fn localized(node: &XmlNode) -> LocalizedText {
    LocalizedText {
        text: node.text_content(),
        lang_tag: node.xml_lang().map(str::to_string),
    }
}

fn with_dcr(mut f: Feature, node: &XmlNode) -> Feature {
    f.category.registry_id = node.attr(&QName::new(DCR_NS, "datcat")).map(str::to_string);
    f.value_registry_id = node.attr(&QName::new(DCR_NS, "valueDatcat")).map(str::to_string);
    f
}

/// Flattens a `<def>` into text plus spans for its inline elements.
fn definition(node: &XmlNode) -> AnnotatedText {
    let mut out = AnnotatedText::default();
    let mut len = 0;
    collect_spans(node, &mut out, &mut len);
    out
}

fn collect_spans(node: &XmlNode, out: &mut AnnotatedText, len: &mut usize) {
    for child in &node.children {
        match child {
            XmlChild::Text(t) => {
                out.text.push_str(t);
                *len += t.chars().count();
            }
            XmlChild::Element(e) => {
                let start = *len;
                let idx = out.spans.len();
                let kind = if e.name.ns == LMF_NS {
                    format!("lmf:{}", e.name.local)
                } else {
                    e.name.local.clone()
                };
                let attrs = e
                    .attrs
                    .iter()
                    .map(|(k, v)| {
                        let key = if k.ns == XML_NS {
                            format!("xml:{}", k.local)
                        } else {
                            k.local.clone()
                        };
                        (key, v.clone())
                    })
                    .collect();
                out.spans.push(Span {
                    start,
                    end: start,
                    kind,
                    attrs,
                });
                collect_spans(e, out, len);
                out.spans[idx].end = *len;
            }
        }
    }
}
