//! LMF-compliance rules for TEI dictionary documents.
//!
//! The rules check the raw XML tree, before any conversion, so that encoders
//! see problems in terms of the elements they wrote. Placement of the LMF
//! syntax extension is checked against a static manifest of its elements
//! (`data/lmf-syntax-manifest.json`).

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use serde::Deserialize;

use crate::finding::{Finding, Severity};
use crate::xml::{path_step, QName, XmlNode, LMF_NS, TEI_NS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub id: &'static str,
    pub severity: Severity,
    pub description: &'static str,
    /// The encoding principle the rule enforces.
    pub anchor: &'static str,
}

const CATALOGUE: &[Rule] = &[
    Rule {
        id: "R1-SENSE-REQUIRED",
        severity: Severity::Error,
        description: "<def>, <cit> and <usg> must not be direct children of <entry>",
        anchor: "make <sense> mandatory for the representation of semantic content in <entry>, even if there is indeed only one sense",
    },
    Rule {
        id: "R2-NO-VOID-GRAMGRP",
        severity: Severity::Warning,
        description: "<gramGrp> must contain at least one element",
        anchor: "void elements should be avoided in the absence of further information",
    },
    Rule {
        id: "R3-ENTRY-ONLY",
        severity: Severity::Warning,
        description: "<entryFree> and <dictScrap> are transient constructs; use <entry>",
        anchor: "we consider these various alternative constructs as transient objects that are part of specific workflows",
    },
    Rule {
        id: "R4-FORM-WRAPPER",
        severity: Severity::Error,
        description: "<orth> must sit inside <form>; grammatical elements inside <gramGrp> or <fs type=\"grammar\">",
        anchor: "a systematic use of <form> and <gramGrp> to embed form and grammatical related information",
    },
    Rule {
        id: "R5-CIT-QUOTE",
        severity: Severity::Error,
        description: "every <cit> contains exactly one <quote> or <q>",
        anchor: "the <cit> element is the entry point and comprises a language excerpt expressed by means of a <quote> (occasionally a <q>) element",
    },
    Rule {
        id: "R6-LMF-ANCHOR",
        severity: Severity::Error,
        description: "LMF-namespace elements appear only as <lmf:syntacticBehaviour> under <sense> and its sanctioned descendants",
        anchor: "clear anchoring of the LMF syntax crystal within the <sense> element",
    },
    Rule {
        id: "R7-ENTRY-ID-UNIQUE",
        severity: Severity::Error,
        description: "@xml:id values are unique within the document",
        anchor: "identifiers must resolve to a single entry for cross-references and conversion",
    },
    Rule {
        id: "R8-ENTRY-GROUPING",
        severity: Severity::Info,
        description: "<hom> and <superEntry> are valid TEI but are not converted",
        anchor: "only <entry> is considered a proper implementation of the LexicalEntry component",
    },
];

pub fn rule_catalogue() -> &'static [Rule] {
    CATALOGUE
}

pub fn is_known_rule(id: &str) -> bool {
    CATALOGUE.iter().any(|r| r.id == id)
}

fn severity_of(id: &str) -> Severity {
    CATALOGUE
        .iter()
        .find(|r| r.id == id)
        .map(|r| r.severity)
        .expect("rule registered in the catalogue")
}

// ---------------------------------------------------------------------------
// manifest

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SyntaxManifest {
    pub namespace: String,
    pub prefix: String,
    pub module_refs: Vec<String>,
    pub anchor: String,
    pub classes: BTreeMap<String, Vec<String>>,
    pub elements: Vec<ManifestElement>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ManifestElement {
    pub ident: String,
    pub member_of: Vec<String>,
    pub parents: Vec<String>,
    pub content: String,
    pub gloss: String,
}

impl SyntaxManifest {
    pub fn element(&self, local: &str) -> Option<&ManifestElement> {
        self.elements.iter().find(|e| e.ident == local)
    }

    /// Members of a content class, as `prefix:local` names.
    pub fn class_members(&self, class: &str) -> &[String] {
        self.classes.get(class).map_or(&[], Vec::as_slice)
    }
}

/// The LMF syntax extension manifest shipped with the crate.
pub fn syntax_manifest() -> &'static SyntaxManifest {
    static MANIFEST: OnceLock<SyntaxManifest> = OnceLock::new();
    MANIFEST.get_or_init(|| {
        serde_json::from_str(include_str!("../data/lmf-syntax-manifest.json")).expect("bundled manifest is valid")
    })
}

/// `tei:local` / `lmf:local` spelling used by the manifest.
fn manifest_name(name: &QName) -> String {
    match name.ns.as_str() {
        TEI_NS => format!("tei:{}", name.local),
        LMF_NS => format!("lmf:{}", name.local),
        _ => name.local.clone(),
    }
}

// ---------------------------------------------------------------------------
// validation

/// Checks `doc` against the enabled rules (all when `enabled` is `None`).
/// Findings are sorted by path, then rule id.
pub fn validate_tei_document(doc: &XmlNode, enabled: Option<&[&str]>) -> Vec<Finding> {
    let mut v = Validator {
        enabled,
        findings: Vec::new(),
        ids: HashMap::new(),
        manifest: syntax_manifest(),
    };
    let path = format!("/{}", path_step(&doc.name, 1));
    v.element(doc, &path, &[]);
    let mut findings = v.findings;
    findings.sort_by_cached_key(|f| (path_key(&f.path), f.rule_id.clone()));
    findings
}

/// Sort key for a finding path: its steps as (name, index) pairs, so that
/// `entry[10]` sorts after `entry[2]`.
fn path_key(path: &str) -> Vec<(String, usize)> {
    path.split('/')
        .filter(|s| !s.is_empty())
        .map(|step| match step.strip_suffix(']').and_then(|s| s.split_once('[')) {
            Some((name, index)) => (name.to_string(), index.parse().unwrap_or(0)),
            None => (step.to_string(), 0),
        })
        .collect()
}

struct Validator<'a> {
    enabled: Option<&'a [&'a str]>,
    findings: Vec<Finding>,
    ids: HashMap<String, String>,
    manifest: &'static SyntaxManifest,
}

const GRAMMAR_ELEMENTS: &[&str] = &["pos", "number", "gen", "subc", "gram"];

impl Validator<'_> {
    fn report(&mut self, rule: &'static str, path: &str, message: String) {
        if self.enabled.is_none_or(|ids| ids.contains(&rule)) {
            self.findings.push(Finding::new(rule, severity_of(rule), path, message));
        }
    }

    /// `ancestors` holds the element's ancestors, nearest last.
    fn element(&mut self, node: &XmlNode, path: &str, ancestors: &[&XmlNode]) {
        if let Some(id) = node.attr(&QName::xml("id")) {
            match self.ids.get(id) {
                Some(first) => {
                    let msg = format!("xml:id '{id}' already used at {first}");
                    self.report("R7-ENTRY-ID-UNIQUE", path, msg);
                }
                None => {
                    self.ids.insert(id.to_string(), path.to_string());
                }
            }
        }
        if node.name.ns == LMF_NS {
            self.lmf_element(node, path, ancestors.last().copied());
        }
        if node.name.ns == TEI_NS {
            self.tei_element(node, path, ancestors);
        }
        let mut chain = ancestors.to_vec();
        chain.push(node);
        for (child, index) in node.indexed_elements() {
            let cpath = format!("{path}/{}", path_step(&child.name, index));
            self.element(child, &cpath, &chain);
        }
    }

    fn tei_element(&mut self, node: &XmlNode, path: &str, ancestors: &[&XmlNode]) {
        let local = node.name.local.as_str();
        let has_ancestor = |pred: &dyn Fn(&XmlNode) -> bool| ancestors.iter().any(|a| pred(a));
        match local {
            "entry" => {
                for (child, index) in node.indexed_elements() {
                    if child.name.ns == TEI_NS && matches!(child.name.local.as_str(), "def" | "cit" | "usg") {
                        let cpath = format!("{path}/{}", path_step(&child.name, index));
                        let msg = format!("<{}> directly under <entry>; wrap it in <sense>", child.name.local);
                        self.report("R1-SENSE-REQUIRED", &cpath, msg);
                    }
                }
            }
            "gramGrp" if !node.has_element_children() => {
                self.report("R2-NO-VOID-GRAMGRP", path, "empty <gramGrp>; omit it instead".into());
            }
            "entryFree" | "dictScrap" => {
                self.report(
                    "R3-ENTRY-ONLY",
                    path,
                    format!("<{local}> is a transient construct; use <entry>"),
                );
            }
            "orth" if !has_ancestor(&|a| a.name.is(TEI_NS, "form")) => {
                self.report("R4-FORM-WRAPPER", path, "<orth> outside <form>".into());
            }
            _ if GRAMMAR_ELEMENTS.contains(&local)
                && !has_ancestor(&|a| {
                    a.name.is(TEI_NS, "gramGrp") || (a.name.is(TEI_NS, "fs") && a.attr_local("type") == Some("grammar"))
                }) =>
            {
                self.report(
                    "R4-FORM-WRAPPER",
                    path,
                    format!("<{local}> outside <gramGrp> or <fs type=\"grammar\">"),
                );
            }
            "cit" => {
                let quotes = node
                    .elements()
                    .filter(|c| c.name.is(TEI_NS, "quote") || c.name.is(TEI_NS, "q"))
                    .count();
                if quotes != 1 {
                    self.report(
                        "R5-CIT-QUOTE",
                        path,
                        format!("<cit> has {quotes} <quote>/<q> children; expected 1"),
                    );
                }
            }
            "hom" | "superEntry" => {
                self.report("R8-ENTRY-GROUPING", path, format!("<{local}> content is not converted"));
            }
            _ => {}
        }
    }

    fn lmf_element(&mut self, node: &XmlNode, path: &str, parent: Option<&XmlNode>) {
        let parent_name = parent
            .map(|p| manifest_name(&p.name))
            .unwrap_or_else(|| "(document)".into());
        let message = match self.manifest.element(&node.name.local) {
            None => Some(format!("lmf:{} is not part of the syntax extension", node.name.local)),
            Some(spec) if !spec.parents.contains(&parent_name) => Some(format!(
                "lmf:{} under {parent_name}; allowed under {}",
                node.name.local,
                spec.parents.join(", ")
            )),
            Some(_) => None,
        };
        if let Some(message) = message {
            self.report("R6-LMF-ANCHOR", path, message);
        }
    }
}
