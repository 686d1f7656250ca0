//! Namespace-resolved XML trees.
//!
//! Documents are parsed into [`XmlNode`] values whose element and attribute
//! names carry the namespace URI instead of the prefix spelled in the source.
//! Serialization is deterministic and [`canonical_equal`] compares two trees
//! independently of prefix choice, attribute order and indentation.

mod canonical;
mod parse;
mod serialize;

use std::fmt;

pub use canonical::{canonical_equal, canonical_form, first_difference};
pub use parse::parse_xml;
pub use serialize::{serialize_xml, SerializeOptions};

pub const TEI_NS: &str = "http://www.tei-c.org/ns/1.0";
pub const LMF_NS: &str = "http://www.iso.org/ns/LMF";
pub const DCR_NS: &str = "http://www.isocat.org/ns/dcr";
pub const XML_NS: &str = "http://www.w3.org/XML/1998/namespace";

/// An expanded name: namespace URI (possibly empty) plus local part.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QName {
    pub ns: String,
    pub local: String,
}

impl QName {
    pub fn new(ns: impl Into<String>, local: impl Into<String>) -> Self {
        QName {
            ns: ns.into(),
            local: local.into(),
        }
    }

    /// A name in no namespace.
    pub fn local(local: impl Into<String>) -> Self {
        QName::new("", local)
    }

    pub fn tei(local: impl Into<String>) -> Self {
        QName::new(TEI_NS, local)
    }

    pub fn lmf(local: impl Into<String>) -> Self {
        QName::new(LMF_NS, local)
    }

    pub fn xml(local: impl Into<String>) -> Self {
        QName::new(XML_NS, local)
    }

    pub fn is(&self, ns: &str, local: &str) -> bool {
        self.ns == ns && self.local == local
    }
}

impl fmt::Display for QName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ns.is_empty() {
            f.write_str(&self.local)
        } else {
            write!(f, "{{{}}}{}", self.ns, self.local)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum XmlChild {
    Element(XmlNode),
    Text(String),
}

/// An element with its attributes and ordered children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XmlNode {
    pub name: QName,
    pub attrs: Vec<(QName, String)>,
    pub children: Vec<XmlChild>,
}

impl XmlNode {
    pub fn new(name: QName) -> Self {
        XmlNode {
            name,
            attrs: Vec::new(),
            children: Vec::new(),
        }
    }

    /// Builder-style attribute setter. Replaces an existing value for the same name.
    pub fn with_attr(mut self, name: QName, value: impl Into<String>) -> Self {
        self.set_attr(name, value);
        self
    }

    pub fn with_child(mut self, child: XmlNode) -> Self {
        self.children.push(XmlChild::Element(child));
        self
    }

    pub fn with_text(mut self, text: impl Into<String>) -> Self {
        self.push_text(text);
        self
    }

    pub fn set_attr(&mut self, name: QName, value: impl Into<String>) {
        let value = value.into();
        match self.attrs.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value,
            None => self.attrs.push((name, value)),
        }
    }

    pub fn push(&mut self, child: XmlNode) {
        self.children.push(XmlChild::Element(child));
    }

    /// Appends text, merging with a trailing text child. Empty strings are ignored.
    pub fn push_text(&mut self, text: impl Into<String>) {
        let text = text.into();
        if text.is_empty() {
            return;
        }
        if let Some(XmlChild::Text(last)) = self.children.last_mut() {
            last.push_str(&text);
        } else {
            self.children.push(XmlChild::Text(text));
        }
    }

    pub fn attr(&self, name: &QName) -> Option<&str> {
        self.attrs.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_str())
    }

    /// Attribute in no namespace.
    pub fn attr_local(&self, local: &str) -> Option<&str> {
        self.attrs
            .iter()
            .find(|(n, _)| n.ns.is_empty() && n.local == local)
            .map(|(_, v)| v.as_str())
    }

    pub fn xml_lang(&self) -> Option<&str> {
        self.attrs
            .iter()
            .find(|(n, _)| n.ns == XML_NS && n.local == "lang")
            .map(|(_, v)| v.as_str())
    }

    pub fn elements(&self) -> impl Iterator<Item = &XmlNode> {
        self.children.iter().filter_map(|c| match c {
            XmlChild::Element(e) => Some(e),
            XmlChild::Text(_) => None,
        })
    }

    pub fn has_element_children(&self) -> bool {
        self.elements().next().is_some()
    }

    /// Concatenated text of this element and all descendants.
    pub fn text_content(&self) -> String {
        let mut out = String::new();
        collect_text(self, &mut out);
        out
    }

    /// Element children paired with their 1-based index among siblings of
    /// the same expanded name, as used in finding paths.
    pub fn indexed_elements(&self) -> Vec<(&XmlNode, usize)> {
        let mut seen: Vec<(&QName, usize)> = Vec::new();
        let mut out = Vec::new();
        for e in self.elements() {
            let n = match seen.iter_mut().find(|(q, _)| **q == e.name) {
                Some((_, n)) => {
                    *n += 1;
                    *n
                }
                None => {
                    seen.push((&e.name, 1));
                    1
                }
            };
            out.push((e, n));
        }
        out
    }

    /// True when some direct text child contains a non-whitespace character.
    pub fn has_significant_text(&self) -> bool {
        self.children
            .iter()
            .any(|c| matches!(c, XmlChild::Text(t) if !t.trim().is_empty()))
    }
}

/// One path step, `local[index]`; LMF-namespace elements are written `lmf:local`.
pub fn path_step(name: &QName, index: usize) -> String {
    if name.ns == LMF_NS {
        format!("lmf:{}[{index}]", name.local)
    } else {
        format!("{}[{index}]", name.local)
    }
}

fn collect_text(node: &XmlNode, out: &mut String) {
    for child in &node.children {
        match child {
            XmlChild::Text(t) => out.push_str(t),
            XmlChild::Element(e) => collect_text(e, out),
        }
    }
}

/// Errors raised by [`parse_xml`] and [`serialize_xml`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum XmlError {
    #[error("XML parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid UTF-8 at byte offset {offset}")]
    Encoding { offset: usize },
    #[error("no prefix mapped for namespace {0}")]
    Prefix(String),
}
