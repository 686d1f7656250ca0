use quick_xml::events::{BytesStart, Event};
use quick_xml::name::ResolveResult;
use quick_xml::reader::NsReader;

use super::{QName, XmlChild, XmlError, XmlNode};

/// Parses a complete UTF-8 document into its root element.
///
/// Comments, processing instructions and the DOCTYPE are dropped. Only the
/// five predefined entities and character references are expanded; any other
/// entity reference is a parse error.
pub fn parse_xml(bytes: &[u8]) -> Result<XmlNode, XmlError> {
    let text = std::str::from_utf8(bytes).map_err(|e| XmlError::Encoding {
        offset: e.valid_up_to(),
    })?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    Parser::new(text).run()
}

struct Parser<'a> {
    src: &'a str,
    reader: NsReader<&'a [u8]>,
    stack: Vec<XmlNode>,
    root: Option<XmlNode>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let mut reader = NsReader::from_str(src);
        let config = reader.config_mut();
        config.check_end_names = true;
        config.expand_empty_elements = false;
        config.trim_text(false);
        Parser {
            src,
            reader,
            stack: Vec::new(),
            root: None,
        }
    }

    fn run(mut self) -> Result<XmlNode, XmlError> {
        loop {
            let (resolved, event) = match self.reader.read_resolved_event() {
                Ok((res, ev)) => (owned_ns(res), ev),
                Err(e) => {
                    let pos = self.reader.error_position() as usize;
                    return Err(self.error_at(pos, e.to_string()));
                }
            };
            match event {
                Event::Start(start) => {
                    let node = self.open(resolved, &start)?;
                    self.stack.push(node);
                }
                Event::Empty(start) => {
                    let node = self.open(resolved, &start)?;
                    self.close(node)?;
                }
                Event::End(_) => {
                    let node = self.stack.pop().ok_or_else(|| self.error_here("unexpected end tag"))?;
                    self.close(node)?;
                }
                Event::Text(t) => {
                    let text = t.unescape().map_err(|e| self.error_here(e.to_string()))?.into_owned();
                    self.text(text)?;
                }
                Event::CData(c) => {
                    let raw = c.into_inner();
                    let text = std::str::from_utf8(&raw)
                        .map_err(|e| self.error_here(e.to_string()))?
                        .to_string();
                    self.text(text)?;
                }
                Event::Eof => break,
                Event::Decl(_) | Event::PI(_) | Event::Comment(_) | Event::DocType(_) => {}
            }
        }
        if let Some(open) = self.stack.last() {
            let msg = format!("unclosed element <{}>", open.name.local);
            return Err(self.error_here(msg));
        }
        self.root
            .take()
            .ok_or_else(|| self.error_here("document has no root element"))
    }

    fn open(&self, resolved: Result<String, Vec<u8>>, start: &BytesStart) -> Result<XmlNode, XmlError> {
        if self.stack.is_empty() && self.root.is_some() {
            return Err(self.error_here("content after the root element"));
        }
        let local = utf8(start.local_name().into_inner()).to_string();
        let ns = self.namespace(resolved)?;
        let mut node = XmlNode::new(QName::new(ns, local));
        for attr in start.attributes() {
            let attr = attr.map_err(|e| self.error_here(e.to_string()))?;
            if attr.key.as_namespace_binding().is_some() {
                continue;
            }
            let (res, local) = self.reader.resolve_attribute(attr.key);
            let name = QName::new(self.namespace(owned_ns(res))?, utf8(local.into_inner()));
            let value = attr
                .unescape_value()
                .map_err(|e| self.error_here(e.to_string()))?
                .into_owned();
            if node.attrs.iter().any(|(n, _)| *n == name) {
                return Err(self.error_here(format!("duplicate attribute {name}")));
            }
            node.attrs.push((name, value));
        }
        Ok(node)
    }

    fn namespace(&self, resolved: Result<String, Vec<u8>>) -> Result<String, XmlError> {
        resolved.map_err(|prefix| {
            self.error_here(format!(
                "undeclared namespace prefix '{}'",
                String::from_utf8_lossy(&prefix)
            ))
        })
    }

    fn close(&mut self, node: XmlNode) -> Result<(), XmlError> {
        match self.stack.last_mut() {
            Some(parent) => parent.children.push(XmlChild::Element(node)),
            None => self.root = Some(node),
        }
        Ok(())
    }

    fn text(&mut self, text: String) -> Result<(), XmlError> {
        match self.stack.last_mut() {
            Some(parent) => {
                parent.push_text(text);
                Ok(())
            }
            None if text.trim().is_empty() => Ok(()),
            None => Err(self.error_here("text outside the root element")),
        }
    }

    fn error_here(&self, message: impl Into<String>) -> XmlError {
        let pos = self.reader.buffer_position() as usize;
        self.error_at(pos, message.into())
    }

    fn error_at(&self, offset: usize, message: String) -> XmlError {
        let (line, column) = line_column(self.src, offset);
        XmlError::Parse { line, column, message }
    }
}

// Names come from a &str source, so they are valid UTF-8.
fn utf8(bytes: &[u8]) -> &str {
    std::str::from_utf8(bytes).unwrap_or_default()
}

/// 1-based line and column (in characters) of a byte offset.
fn line_column(src: &str, offset: usize) -> (usize, usize) {
    let mut offset = offset.min(src.len());
    while !src.is_char_boundary(offset) {
        offset -= 1;
    }
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let column = match before.rfind('\n') {
        Some(nl) => before[nl + 1..].chars().count() + 1,
        None => before.chars().count() + 1,
    };
    (line, column)
}

/// Detaches a resolution result from the reader's namespace buffer.
fn owned_ns(resolved: ResolveResult) -> Result<String, Vec<u8>> {
    match resolved {
        ResolveResult::Bound(ns) => Ok(utf8(ns.into_inner()).to_string()),
        ResolveResult::Unbound => Ok(String::new()),
        ResolveResult::Unknown(prefix) => Err(prefix),
    }
}
