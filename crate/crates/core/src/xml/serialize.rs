use std::collections::BTreeMap;

use super::{QName, XmlChild, XmlError, XmlNode, DCR_NS, LMF_NS, TEI_NS, XML_NS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerializeOptions {
    /// Spaces per nesting level; 0 writes everything on one line.
    pub indent: usize,
    /// Namespace URI to prefix. The empty prefix selects the default namespace.
    pub prefixes: BTreeMap<String, String>,
    /// Invent `ns1`, `ns2`, ... for namespaces missing from `prefixes`.
    pub auto_assign: bool,
    /// Emit an `<?xml ...?>` declaration.
    pub declaration: bool,
    /// Elements whose content is always written inline, because whitespace
    /// inside them is significant even when they hold only elements
    /// (a definition whose whole text is one annotated span).
    pub inline_content: Vec<QName>,
}

impl Default for SerializeOptions {
    fn default() -> Self {
        let mut prefixes = BTreeMap::new();
        prefixes.insert(TEI_NS.to_string(), String::new());
        prefixes.insert(LMF_NS.to_string(), "lmf".to_string());
        prefixes.insert(DCR_NS.to_string(), "dcr".to_string());
        SerializeOptions {
            indent: 2,
            prefixes,
            auto_assign: true,
            declaration: false,
            inline_content: vec![QName::tei("def")],
        }
    }
}

impl SerializeOptions {
    pub fn compact() -> Self {
        SerializeOptions {
            indent: 0,
            ..Default::default()
        }
    }

    pub fn with_prefix(mut self, ns: impl Into<String>, prefix: impl Into<String>) -> Self {
        self.prefixes.insert(ns.into(), prefix.into());
        self
    }
}

/// Writes `node` as UTF-8. Output is a pure function of the tree and options:
/// attributes are sorted by (namespace, local name) and prefixed namespaces are
/// all declared on the root.
pub fn serialize_xml(node: &XmlNode, opts: &SerializeOptions) -> Result<Vec<u8>, XmlError> {
    let bindings = Bindings::build(node, opts)?;
    let mut out = String::new();
    if opts.declaration {
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    }
    let mut writer = Writer {
        out: &mut out,
        bindings: &bindings,
        indent: opts.indent,
        inline_content: &opts.inline_content,
    };
    writer.element(node, 0, "", true, false);
    if opts.indent > 0 {
        out.push('\n');
    }
    Ok(out.into_bytes())
}

struct Bindings {
    /// Element prefixes; "" means default namespace.
    element: BTreeMap<String, String>,
    /// Attribute prefixes, always non-empty.
    attribute: BTreeMap<String, String>,
    /// Declarations written on the root, sorted by prefix.
    declared: Vec<(String, String)>,
}

impl Bindings {
    fn build(root: &XmlNode, opts: &SerializeOptions) -> Result<Self, XmlError> {
        let mut element_ns = Vec::new();
        let mut attribute_ns = Vec::new();
        collect_namespaces(root, &mut element_ns, &mut attribute_ns);

        let mut taken: BTreeMap<String, String> = BTreeMap::new();
        let mut element = BTreeMap::new();
        let mut attribute = BTreeMap::new();
        let mut counter = 0usize;

        let mut fresh = |taken: &BTreeMap<String, String>| loop {
            counter += 1;
            let p = format!("ns{counter}");
            if !taken.contains_key(&p) {
                break p;
            }
        };

        for ns in &element_ns {
            let prefix = match opts.prefixes.get(ns) {
                Some(p) if p.is_empty() => String::new(),
                Some(p) if usable(p, ns, &taken) => p.clone(),
                _ if opts.auto_assign => fresh(&taken),
                _ => return Err(XmlError::Prefix(ns.clone())),
            };
            if !prefix.is_empty() {
                taken.insert(prefix.clone(), ns.clone());
            }
            element.insert(ns.clone(), prefix);
        }
        for ns in &attribute_ns {
            if let Some(p) = element.get(ns).filter(|p| !p.is_empty()) {
                attribute.insert(ns.clone(), p.clone());
                continue;
            }
            let prefix = match opts.prefixes.get(ns) {
                Some(p) if !p.is_empty() && usable(p, ns, &taken) => p.clone(),
                _ if opts.auto_assign => fresh(&taken),
                _ => return Err(XmlError::Prefix(ns.clone())),
            };
            taken.insert(prefix.clone(), ns.clone());
            attribute.insert(ns.clone(), prefix);
        }
        let declared = taken.into_iter().collect();
        Ok(Bindings {
            element,
            attribute,
            declared,
        })
    }
}

fn usable(prefix: &str, ns: &str, taken: &BTreeMap<String, String>) -> bool {
    let reserved = prefix.eq_ignore_ascii_case("xml") || prefix.eq_ignore_ascii_case("xmlns");
    !reserved && taken.get(prefix).is_none_or(|owner| owner == ns)
}

fn collect_namespaces(node: &XmlNode, elements: &mut Vec<String>, attributes: &mut Vec<String>) {
    if !node.name.ns.is_empty() && !elements.contains(&node.name.ns) {
        elements.push(node.name.ns.clone());
    }
    for (name, _) in &node.attrs {
        if !name.ns.is_empty() && name.ns != XML_NS && !attributes.contains(&name.ns) {
            attributes.push(name.ns.clone());
        }
    }
    for child in node.elements() {
        collect_namespaces(child, elements, attributes);
    }
}

struct Writer<'a> {
    out: &'a mut String,
    bindings: &'a Bindings,
    indent: usize,
    inline_content: &'a [QName],
}

impl<'a> Writer<'a> {
    fn element(&mut self, node: &XmlNode, depth: usize, default_ns: &str, root: bool, inline: bool) {
        let prefix = self.element_prefix(&node.name);
        let tag = qualified(prefix, &node.name.local);
        self.out.push('<');
        self.out.push_str(&tag);

        let mut scope_default = default_ns;
        if prefix.is_empty() && node.name.ns != default_ns {
            self.out.push_str(" xmlns=\"");
            escape_attr(&node.name.ns, self.out);
            self.out.push('"');
            scope_default = &node.name.ns;
        }
        if root {
            for (p, ns) in &self.bindings.declared {
                self.out.push_str(" xmlns:");
                self.out.push_str(p);
                self.out.push_str("=\"");
                escape_attr(ns, self.out);
                self.out.push('"');
            }
        }

        let mut attrs: Vec<&(QName, String)> = node.attrs.iter().collect();
        attrs.sort_by(|a, b| a.0.cmp(&b.0));
        for (name, value) in attrs {
            self.out.push(' ');
            let p = if name.ns.is_empty() {
                ""
            } else if name.ns == XML_NS {
                "xml"
            } else {
                self.bindings.attribute[&name.ns].as_str()
            };
            self.out.push_str(&qualified(p, &name.local));
            self.out.push_str("=\"");
            escape_attr(value, self.out);
            self.out.push('"');
        }

        if node.children.is_empty() {
            self.out.push_str("/>");
            return;
        }
        self.out.push('>');

        let has_text = node.children.iter().any(|c| matches!(c, XmlChild::Text(_)));
        let pretty = self.indent > 0 && !inline && !has_text && !self.inline_content.contains(&node.name);
        for child in &node.children {
            match child {
                XmlChild::Text(t) => escape_text(t, self.out),
                XmlChild::Element(e) => {
                    if pretty {
                        self.newline(depth + 1);
                    }
                    self.element(e, depth + 1, scope_default, false, !pretty);
                }
            }
        }
        if pretty {
            self.newline(depth);
        }
        self.out.push_str("</");
        self.out.push_str(&tag);
        self.out.push('>');
    }

    fn element_prefix(&self, name: &QName) -> &'a str {
        if name.ns.is_empty() {
            ""
        } else {
            self.bindings.element[&name.ns].as_str()
        }
    }

    fn newline(&mut self, depth: usize) {
        self.out.push('\n');
        for _ in 0..depth * self.indent {
            self.out.push(' ');
        }
    }
}

fn qualified(prefix: &str, local: &str) -> String {
    if prefix.is_empty() {
        local.to_string()
    } else {
        format!("{prefix}:{local}")
    }
}

fn escape_text(s: &str, out: &mut String) {
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '\r' => out.push_str("&#13;"),
            _ => out.push(c),
        }
    }
}

fn escape_attr(s: &str, out: &mut String) {
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '"' => out.push_str("&quot;"),
            '\n' => out.push_str("&#10;"),
            '\r' => out.push_str("&#13;"),
            '\t' => out.push_str("&#9;"),
            _ => out.push(c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xml::{canonical_equal, parse_xml};

    fn compact_with(ns: &str, prefix: &str) -> SerializeOptions {
        SerializeOptions::compact().with_prefix(ns, prefix)
    }

    #[test]
    fn minimal_default_namespace() {
        let node = XmlNode::new(QName::new("urn:x", "a")).with_child(XmlNode::new(QName::new("urn:x", "b")));
        let bytes = serialize_xml(&node, &compact_with("urn:x", "")).unwrap();
        assert_eq!(String::from_utf8(bytes).unwrap(), r#"<a xmlns="urn:x"><b/></a>"#);
    }

    #[test]
    fn unmapped_namespace_without_auto_assign_fails() {
        let node = XmlNode::new(QName::new("urn:unmapped", "a"));
        let opts = SerializeOptions {
            auto_assign: false,
            ..SerializeOptions::compact()
        };
        assert_eq!(
            serialize_xml(&node, &opts),
            Err(XmlError::Prefix("urn:unmapped".into()))
        );
    }

    #[test]
    fn auto_assigned_prefixes_are_stable() {
        let node = XmlNode::new(QName::new("urn:a", "r"))
            .with_child(XmlNode::new(QName::new("urn:b", "c")).with_attr(QName::new("urn:c", "k"), "v"));
        let out = String::from_utf8(serialize_xml(&node, &SerializeOptions::compact()).unwrap()).unwrap();
        assert_eq!(
            out,
            r#"<ns1:r xmlns:ns1="urn:a" xmlns:ns2="urn:b" xmlns:ns3="urn:c"><ns2:c ns3:k="v"/></ns1:r>"#
        );
    }

    #[test]
    fn no_namespace_child_undeclares_default() {
        let node = XmlNode::new(QName::tei("body")).with_child(XmlNode::new(QName::local("raw")));
        let out = String::from_utf8(serialize_xml(&node, &SerializeOptions::compact()).unwrap()).unwrap();
        assert_eq!(out, format!(r#"<body xmlns="{TEI_NS}"><raw xmlns=""/></body>"#));
        assert!(canonical_equal(&parse_xml(out.as_bytes()).unwrap(), &node));
    }

    #[test]
    fn attributes_sorted_and_escaped() {
        let node = XmlNode::new(QName::local("a"))
            .with_attr(QName::local("z"), "1")
            .with_attr(QName::xml("lang"), "fr")
            .with_attr(QName::local("b"), "x\"<&\n")
            .with_text("a<b & c>");
        let out = String::from_utf8(serialize_xml(&node, &SerializeOptions::compact()).unwrap()).unwrap();
        assert_eq!(
            out,
            r#"<a b="x&quot;&lt;&amp;&#10;" z="1" xml:lang="fr">a&lt;b &amp; c&gt;</a>"#
        );
        assert_eq!(parse_xml(out.as_bytes()).unwrap().attrs.len(), 3);
    }

    #[test]
    fn pretty_print_leaves_mixed_content_inline() {
        let def = XmlNode::new(QName::tei("def"))
            .with_text("from ")
            .with_child(XmlNode::new(QName::tei("geogName")).with_text("America"))
            .with_text(".");
        let node = XmlNode::new(QName::tei("sense")).with_child(def);
        let out = String::from_utf8(serialize_xml(&node, &SerializeOptions::default()).unwrap()).unwrap();
        assert_eq!(
            out,
            format!("<sense xmlns=\"{TEI_NS}\">\n  <def>from <geogName>America</geogName>.</def>\n</sense>\n")
        );
    }

    #[test]
    fn inline_content_elements_are_never_indented() {
        let def = XmlNode::new(QName::tei("def"))
            .with_child(XmlNode::new(QName::tei("seg")).with_child(XmlNode::new(QName::tei("hi")).with_text("x")));
        let node = XmlNode::new(QName::tei("sense")).with_child(def);
        let out = String::from_utf8(serialize_xml(&node, &SerializeOptions::default()).unwrap()).unwrap();
        assert!(out.contains("<def><seg><hi>x</hi></seg></def>"), "{out}");
    }
}
