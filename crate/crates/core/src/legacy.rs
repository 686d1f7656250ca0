//! The annex-style LMF dialect: components are elements named after
//! meta-model classes, descriptors are `<feat att="…" val="…"/>` children.
//!
//! ```xml
//! <LexicalResource>
//!   <GlobalInformation/>
//!   <Lexicon>
//!     <feat att="language" val="eng"/>
//!     <LexicalEntry>…</LexicalEntry>
//!   </Lexicon>
//! </LexicalResource>
//! ```
//!
//! The dialect has no quotation construct of its own. Flat quotations travel
//! as `Quotation` components; nested or refined ones are rejected rather than
//! flattened. Definition annotations are dropped and reported as losses.

use crate::components::{resource_to_tree, tree_to_resource, Component, Descriptor};
use crate::error::Error;
use crate::finding::Finding;
use crate::model::{LexicalResource, Quotation, Sense};
use crate::xml::{path_step, QName, XmlNode, DCR_NS};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LegacyDialectOptions {
    pub emit_dcr_attrs: bool,
}

pub fn parse_legacy_lmf(doc: &XmlNode) -> Result<(LexicalResource, Vec<Finding>), Error> {
    if doc.name.local != "LexicalResource" {
        return Err(Error::Dialect {
            expected: "legacy LMF",
            found: format!("root element <{}>", doc.name.local),
        });
    }
    let mut findings = Vec::new();
    let root_path = format!("/{}", path_step(&doc.name, 1));
    if !doc.name.ns.is_empty() {
        findings.push(Finding::warning(
            "L-NS",
            root_path.clone(),
            format!("namespace {} on legacy root ignored", doc.name.ns),
        ));
    }
    let tree = read_component(doc, root_path, &mut findings);
    let (resource, more) = tree_to_resource(&tree, "L", false);
    findings.extend(more);
    Ok((resource, findings))
}

fn read_component(node: &XmlNode, path: String, findings: &mut Vec<Finding>) -> Component {
    let mut c = Component::new(node.name.local.clone());
    c.id = node.attr_local("id").map(str::to_string);
    if node.has_significant_text() {
        findings.push(Finding::warning("L-STRAY-TEXT", path.clone(), "text content ignored"));
    }
    for (child, index) in node.indexed_elements() {
        let child_path = format!("{path}/{}", path_step(&child.name, index));
        if child.name.local == "feat" {
            match child.attr_local("att") {
                Some(att) => c.descriptors.push(Descriptor {
                    name: att.to_string(),
                    value: child.attr_local("val").unwrap_or_default().to_string(),
                    lang: child.xml_lang().map(str::to_string),
                    datcat: child.attr(&QName::new(DCR_NS, "datcat")).map(str::to_string),
                    value_datcat: child.attr(&QName::new(DCR_NS, "valueDatcat")).map(str::to_string),
                }),
                None => findings.push(Finding::error("L-BAD-FEAT", child_path, "<feat> without @att skipped")),
            }
        } else {
            c.children.push(read_component(child, child_path, findings));
        }
    }
    c.path = path;
    c
}

/// Emits the legacy tree plus human-readable notes about dropped content.
pub fn emit_legacy_lmf(
    resource: &LexicalResource,
    opts: &LegacyDialectOptions,
) -> Result<(XmlNode, Vec<String>), Error> {
    let mut notes = Vec::new();
    for (li, lexicon) in resource.lexicons.iter().enumerate() {
        for (ei, entry) in lexicon.entries.iter().enumerate() {
            let path = format!("/lexicon[{}]/entry[{}]", li + 1, ei + 1);
            for (si, sense) in entry.senses.iter().enumerate() {
                check_sense(sense, &format!("{path}/sense[{}]", si + 1), &mut notes)?;
            }
        }
    }
    let tree = if notes.is_empty() {
        resource_to_tree(resource)
    } else {
        resource_to_tree(&without_spans(resource))
    };
    Ok((write_component(&tree, opts), notes))
}

fn check_sense(sense: &Sense, path: &str, notes: &mut Vec<String>) -> Result<(), Error> {
    for (i, def) in sense.definitions.iter().enumerate() {
        if !def.spans.is_empty() {
            notes.push(format!(
                "{path}/definition[{}]: {} inline annotation(s) dropped",
                i + 1,
                def.spans.len()
            ));
        }
    }
    for (i, q) in sense.quotations.iter().enumerate() {
        check_quotation(q, &format!("{path}/quotation[{}]", i + 1))?;
    }
    for (i, sub) in sense.subsenses.iter().enumerate() {
        check_sense(sub, &format!("{path}/sense[{}]", i + 1), notes)?;
    }
    Ok(())
}

fn without_spans(resource: &LexicalResource) -> LexicalResource {
    fn strip(sense: &mut Sense) {
        for def in &mut sense.definitions {
            def.spans.clear();
        }
        sense.subsenses.iter_mut().for_each(strip);
    }
    let mut r = resource.clone();
    for lexicon in &mut r.lexicons {
        for entry in &mut lexicon.entries {
            entry.senses.iter_mut().for_each(strip);
        }
    }
    r
}

fn check_quotation(q: &Quotation, path: &str) -> Result<(), Error> {
    let reason = if !q.sub_quotations.is_empty() {
        "nested quotation"
    } else if !q.refinements.is_empty() {
        "quotation refinements"
    } else {
        return Ok(());
    };
    Err(Error::Unrepresentable {
        path: path.to_string(),
        dialect: "legacy-lmf",
        reason: reason.to_string(),
    })
}

fn write_component(c: &Component, opts: &LegacyDialectOptions) -> XmlNode {
    let mut node = XmlNode::new(QName::local(c.name.clone()));
    if let Some(id) = &c.id {
        node.set_attr(QName::local("id"), id.clone());
    }
    for d in &c.descriptors {
        let mut feat = XmlNode::new(QName::local("feat"))
            .with_attr(QName::local("att"), d.name.clone())
            .with_attr(QName::local("val"), d.value.clone());
        if let Some(lang) = &d.lang {
            feat.set_attr(QName::xml("lang"), lang.clone());
        }
        if opts.emit_dcr_attrs {
            add_dcr_attrs(&mut feat, d);
        }
        node.push(feat);
    }
    for child in &c.children {
        node.push(write_component(child, opts));
    }
    node
}

pub(crate) fn add_dcr_attrs(node: &mut XmlNode, d: &Descriptor) {
    if let Some(id) = &d.datcat {
        node.set_attr(QName::new(DCR_NS, "datcat"), id.clone());
    }
    if let Some(id) = &d.value_datcat {
        node.set_attr(QName::new(DCR_NS, "valueDatcat"), id.clone());
    }
}
