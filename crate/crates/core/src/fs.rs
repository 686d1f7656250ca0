//! Feature-structure serializations.
//!
//! *Pure* form: every component is a complex feature whose value is an `<fs>`,
//! every descriptor an elementary `<f>` with plain-text content.
//!
//! ```xml
//! <fs type="Lexicon" xmlns="http://www.tei-c.org/ns/1.0">
//!   <f name="language">en</f>
//!   <f name="LexicalEntry">
//!     <fs>
//!       <f name="partOfSpeech">commonNoun</f>
//!       …
//! ```
//!
//! *Mixed* form: the LMF element skeleton in no namespace, with descriptors
//! written as TEI `<f>` elements.
//!
//! A resource with a single lexicon and no global information is rooted at
//! `<fs type="Lexicon">`; anything else is wrapped in
//! `<fs type="LexicalResource">` so nothing is dropped.

use crate::components::{lexicon_to_tree, resource_to_tree, tree_to_resource, Component, Descriptor};
use crate::error::Error;
use crate::finding::Finding;
use crate::legacy::add_dcr_attrs;
use crate::model::LexicalResource;
use crate::xml::{path_step, QName, XmlNode, DCR_NS, TEI_NS};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FsOptions {
    pub emit_dcr_attrs: bool,
}

const TYPED_VALUES: &[&str] = &["symbol", "string", "binary", "numeric", "vColl", "vAlt", "default"];

// ---------------------------------------------------------------------------
// pure feature structures

pub fn emit_fs(resource: &LexicalResource, opts: &FsOptions) -> XmlNode {
    let tree = match resource.lexicons.as_slice() {
        [only] if resource.global_info.is_empty() => lexicon_to_tree(only),
        _ => resource_to_tree(resource),
    };
    let mut root = fs_body(&tree, opts);
    root.set_attr(QName::local("type"), tree.name.clone());
    root
}

fn fs_body(c: &Component, opts: &FsOptions) -> XmlNode {
    let mut fs = XmlNode::new(QName::tei("fs"));
    if let Some(id) = &c.id {
        fs.set_attr(QName::xml("id"), id.clone());
    }
    for d in &c.descriptors {
        fs.push(descriptor_f(d, opts));
    }
    for child in &c.children {
        fs.push(
            XmlNode::new(QName::tei("f"))
                .with_attr(QName::local("name"), child.name.clone())
                .with_child(fs_body(child, opts)),
        );
    }
    fs
}

fn descriptor_f(d: &Descriptor, opts: &FsOptions) -> XmlNode {
    let mut f = XmlNode::new(QName::tei("f")).with_attr(QName::local("name"), d.name.clone());
    if let Some(lang) = &d.lang {
        f.set_attr(QName::xml("lang"), lang.clone());
    }
    if opts.emit_dcr_attrs {
        add_dcr_attrs(&mut f, d);
    }
    f.with_text(d.value.clone())
}

pub fn parse_fs(doc: &XmlNode) -> Result<(LexicalResource, Vec<Finding>), Error> {
    let kind = doc.attr_local("type").unwrap_or_default();
    if !doc.name.is(TEI_NS, "fs") || !matches!(kind, "Lexicon" | "LexicalResource") {
        return Err(Error::Dialect {
            expected: "feature-structure",
            found: format!("root {} with type '{kind}'", doc.name),
        });
    }
    let mut findings = Vec::new();
    let tree = read_fs(doc, kind, format!("/{}", path_step(&doc.name, 1)), &mut findings)?;
    let (resource, more) = tree_to_resource(&tree, "F", true);
    findings.extend(more);
    Ok((resource, findings))
}

fn read_fs(fs: &XmlNode, name: &str, path: String, findings: &mut Vec<Finding>) -> Result<Component, Error> {
    let mut c = Component::new(name);
    c.id = fs.attr(&QName::xml("id")).map(str::to_string);
    if fs.has_significant_text() {
        findings.push(Finding::warning(
            "F-STRAY-TEXT",
            path.clone(),
            "text directly inside <fs> ignored",
        ));
    }
    for (f, index) in fs.indexed_elements() {
        let fpath = format!("{path}/{}", path_step(&f.name, index));
        if !f.name.is(TEI_NS, "f") {
            findings.push(Finding::warning(
                "F-UNEXPECTED-ELEMENT",
                fpath,
                format!("<{}> inside <fs> skipped", f.name.local),
            ));
            continue;
        }
        let Some(fname) = f.attr_local("name") else {
            findings.push(Finding::error("F-BAD-F", fpath, "<f> without @name skipped"));
            continue;
        };
        let inner: Vec<_> = f.indexed_elements();
        let nested: Vec<_> = inner.iter().filter(|(e, _)| e.name.is(TEI_NS, "fs")).collect();
        if !nested.is_empty() {
            if f.has_significant_text() {
                return Err(Error::Structure {
                    path: fpath,
                    message: "<f> mixes text with a feature structure".into(),
                });
            }
            if nested.len() != inner.len() {
                findings.push(Finding::warning(
                    "F-UNEXPECTED-ELEMENT",
                    fpath.clone(),
                    "non-<fs> children of a complex feature skipped",
                ));
            }
            for (sub, i) in nested {
                let sub_path = format!("{fpath}/{}", path_step(&sub.name, *i));
                c.children.push(read_fs(sub, fname, sub_path, findings)?);
            }
            continue;
        }
        let value = if inner.is_empty() {
            f.text_content()
        } else {
            let (typed, _) = inner[0];
            let known = typed.name.ns == TEI_NS && TYPED_VALUES.contains(&typed.name.local.as_str());
            findings.push(Finding::warning(
                "F-TYPED-VALUE",
                fpath.clone(),
                if known {
                    format!("typed <{}> value read as plain text", typed.name.local)
                } else {
                    format!("unexpected <{}> in feature value read as plain text", typed.name.local)
                },
            ));
            typed
                .attr_local("value")
                .map(str::to_string)
                .unwrap_or_else(|| typed.text_content())
        };
        c.descriptors.push(read_descriptor(f, fname, value));
    }
    c.path = path;
    Ok(c)
}

fn read_descriptor(f: &XmlNode, name: &str, value: String) -> Descriptor {
    Descriptor {
        name: name.to_string(),
        value,
        lang: f.xml_lang().map(str::to_string),
        datcat: f.attr(&QName::new(DCR_NS, "datcat")).map(str::to_string),
        value_datcat: f.attr(&QName::new(DCR_NS, "valueDatcat")).map(str::to_string),
    }
}

// ---------------------------------------------------------------------------
// mixed skeleton

pub fn emit_mixed(resource: &LexicalResource, opts: &FsOptions) -> XmlNode {
    mixed_component(&resource_to_tree(resource), opts)
}

fn mixed_component(c: &Component, opts: &FsOptions) -> XmlNode {
    let mut node = XmlNode::new(QName::local(c.name.clone()));
    if let Some(id) = &c.id {
        node.set_attr(QName::local("id"), id.clone());
    }
    for d in &c.descriptors {
        node.push(descriptor_f(d, opts));
    }
    for child in &c.children {
        node.push(mixed_component(child, opts));
    }
    node
}

pub fn parse_mixed(doc: &XmlNode) -> Result<(LexicalResource, Vec<Finding>), Error> {
    if doc.name.local != "LexicalResource" || !doc.name.ns.is_empty() {
        return Err(Error::Dialect {
            expected: "mixed LMF/TEI",
            found: format!("root element {}", doc.name),
        });
    }
    let mut findings = Vec::new();
    let tree = read_mixed(doc, format!("/{}", path_step(&doc.name, 1)), &mut findings);
    let (resource, more) = tree_to_resource(&tree, "X", false);
    findings.extend(more);
    Ok((resource, findings))
}

fn read_mixed(node: &XmlNode, path: String, findings: &mut Vec<Finding>) -> Component {
    let mut c = Component::new(node.name.local.clone());
    c.id = node.attr_local("id").map(str::to_string);
    if node.has_significant_text() {
        findings.push(Finding::warning("X-STRAY-TEXT", path.clone(), "text content ignored"));
    }
    for (child, index) in node.indexed_elements() {
        let child_path = format!("{path}/{}", path_step(&child.name, index));
        if child.name.local == "f" && (child.name.ns == TEI_NS || child.name.ns.is_empty()) {
            if child.name.ns.is_empty() {
                findings.push(Finding::warning(
                    "X-F-NAMESPACE",
                    child_path.clone(),
                    "<f> outside the TEI namespace accepted as a descriptor",
                ));
            }
            let Some(name) = child.attr_local("name") else {
                findings.push(Finding::error("X-BAD-F", child_path, "<f> without @name skipped"));
                continue;
            };
            if child.has_element_children() {
                findings.push(Finding::warning(
                    "X-TYPED-VALUE",
                    child_path.clone(),
                    "structured feature value read as plain text",
                ));
            }
            c.descriptors.push(read_descriptor(child, name, child.text_content()));
        } else {
            c.children.push(read_mixed(child, child_path, findings));
        }
    }
    c.path = path;
    c
}
