//! Correspondence between LMF names and TEI dictionary elements.

use crate::error::Error;
use crate::model::DataCategoryRef;

/// How one data category is realized inside a TEI grammar block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescriptorMapping {
    pub category_name: String,
    pub tei_element: String,
    /// True when realized as `<gram type="category">`.
    pub is_generic: bool,
}

/// Grammatical categories with a dedicated TEI element.
pub const DEDICATED_GRAMMAR: &[(&str, &str)] = &[
    ("partOfSpeech", "pos"),
    ("grammaticalNumber", "number"),
    ("grammaticalGender", "gen"),
    ("subcategorization", "subc"),
];

/// The component and descriptor rows of the core-package mapping:
/// LMF name, TEI element, and the `@type` the element carries, if any.
pub const CORE_TABLE: &[(&str, &str, Option<&str>)] = &[
    ("LexicalEntry", "entry", None),
    ("Lemma", "form", Some("lemma")),
    ("WordForm", "form", Some("inflected")),
    ("writtenForm", "orth", None),
    ("partOfSpeech", "pos", None),
    ("grammaticalNumber", "number", None),
];

/// Category carried by `<usg type="dom">` in senses and quotations.
pub const USAGE_DOMAIN: &str = "usageDomain";

pub fn map_descriptor_to_tei(category: &DataCategoryRef) -> DescriptorMapping {
    match DEDICATED_GRAMMAR.iter().find(|(c, _)| *c == category.name) {
        Some((_, element)) => DescriptorMapping {
            category_name: category.name.clone(),
            tei_element: element.to_string(),
            is_generic: false,
        },
        None => DescriptorMapping {
            category_name: category.name.clone(),
            tei_element: "gram".into(),
            is_generic: true,
        },
    }
}

/// Inverse of [`map_descriptor_to_tei`]. Elements outside the table are read
/// as a category named after the element itself.
pub fn map_tei_to_descriptor(element_local: &str, type_attr: Option<&str>) -> Result<DataCategoryRef, Error> {
    if element_local == "gram" {
        return match type_attr {
            Some(t) => Ok(DataCategoryRef::new(t)),
            None => Err(Error::Mapping {
                element: element_local.to_string(),
            }),
        };
    }
    let name = DEDICATED_GRAMMAR
        .iter()
        .find(|(_, e)| *e == element_local)
        .map_or(element_local, |(c, _)| c);
    Ok(DataCategoryRef::new(name))
}

/// Feature name used in `<fs type="grammar">`: the dedicated element name
/// when there is one, otherwise the category itself.
pub fn fs_feature_name(category: &str) -> &str {
    DEDICATED_GRAMMAR
        .iter()
        .find(|(c, _)| *c == category)
        .map_or(category, |(_, e)| e)
}

/// Inverse of [`fs_feature_name`].
pub fn category_for_fs_feature(name: &str) -> &str {
    DEDICATED_GRAMMAR
        .iter()
        .find(|(_, e)| *e == name)
        .map_or(name, |(c, _)| c)
}

/// TEI element and `@type` for an LMF component or descriptor of the core table.
pub fn map_lmf_to_tei(name: &str) -> Option<(&'static str, Option<&'static str>)> {
    CORE_TABLE.iter().find(|(n, _, _)| *n == name).map(|(_, e, t)| (*e, *t))
}
