use super::{XmlChild, XmlNode};

/// Normal form used for comparison: attributes sorted by expanded name,
/// whitespace-only text dropped from elements that also have element
/// children, adjacent text merged. Text in mixed content is kept verbatim.
pub fn canonical_form(node: &XmlNode) -> XmlNode {
    let mut attrs = node.attrs.clone();
    attrs.sort_by(|a, b| a.0.cmp(&b.0));
    let drop_blank = node.has_element_children();
    let mut out = XmlNode {
        name: node.name.clone(),
        attrs,
        children: Vec::with_capacity(node.children.len()),
    };
    for child in &node.children {
        match child {
            XmlChild::Text(t) if drop_blank && t.trim().is_empty() => {}
            XmlChild::Text(t) => out.push_text(t.clone()),
            XmlChild::Element(e) => out.push(canonical_form(e)),
        }
    }
    out
}

pub fn canonical_equal(a: &XmlNode, b: &XmlNode) -> bool {
    canonical_form(a) == canonical_form(b)
}

/// Describes the first place where the canonical forms of `a` and `b` differ.
pub fn first_difference(a: &XmlNode, b: &XmlNode) -> Option<String> {
    diff(&canonical_form(a), &canonical_form(b), &format!("/{}", a.name.local))
}

fn diff(a: &XmlNode, b: &XmlNode, path: &str) -> Option<String> {
    if a.name != b.name {
        return Some(format!("{path}: element {} vs {}", a.name, b.name));
    }
    if a.attrs != b.attrs {
        return Some(format!("{path}: attributes {:?} vs {:?}", a.attrs, b.attrs));
    }
    if a.children.len() != b.children.len() {
        return Some(format!("{path}: {} children vs {}", a.children.len(), b.children.len()));
    }
    for (i, (x, y)) in a.children.iter().zip(&b.children).enumerate() {
        match (x, y) {
            (XmlChild::Element(x), XmlChild::Element(y)) => {
                if let Some(d) = diff(x, y, &format!("{path}/{}[{}]", x.name.local, i + 1)) {
                    return Some(d);
                }
            }
            (XmlChild::Text(x), XmlChild::Text(y)) if x == y => {}
            (x, y) => return Some(format!("{path}: child {} {x:?} vs {y:?}", i + 1)),
        }
    }
    None
}
