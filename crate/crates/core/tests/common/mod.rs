//! Proptest generators for lexicon models shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use lexicrosswalk::model::*;
use proptest::collection::vec;
use proptest::option;
use proptest::prelude::*;

pub fn word() -> impl Strategy<Value = String> {
    "[a-zéøß]{1,7}"
}

pub fn phrase() -> impl Strategy<Value = String> {
    "[a-zé]{1,6}( [a-zé]{1,6}){0,3}"
}

pub fn lang() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["en", "fr", "de", "ko", "ko-Latn", "ja", "eng"]).prop_map(String::from)
}

fn category(extra: &'static [&'static str]) -> impl Strategy<Value = String> {
    let mut pool = vec![
        "partOfSpeech",
        "grammaticalNumber",
        "grammaticalGender",
        "subcategorization",
        "tense",
        "register",
    ];
    pool.extend_from_slice(extra);
    prop_oneof![
        3 => prop::sample::select(pool).prop_map(String::from),
        1 => "x[A-Z][a-z]{2,5}",
    ]
}

fn feature_from(name: String, value: String, registry: Option<(String, Option<String>)>) -> Feature {
    let f = Feature::new(name, value);
    match registry {
        Some((datcat, value_datcat)) => f.with_registry(datcat, value_datcat),
        None => f,
    }
}

fn features_in(extra: &'static [&'static str], max: usize) -> impl Strategy<Value = Vec<Feature>> {
    let registry = option::weighted(
        0.2,
        ("DC-[0-9]{3,4}", option::of("DC-[0-9]{3,4}")).prop_map(|(d, v)| {
            (
                format!("http://www.isocat.org/datcat/{d}"),
                v.map(|v| format!("http://www.isocat.org/datcat/{v}")),
            )
        }),
    );
    vec((category(extra), word(), registry), 0..=max).prop_map(|raw| {
        // One value per category within a block.
        let mut seen = HashSet::new();
        raw.into_iter()
            .filter(|(n, _, _)| seen.insert(n.clone()))
            .map(|(n, v, r)| feature_from(n, v, r))
            .collect()
    })
}

pub fn features(max: usize) -> impl Strategy<Value = Vec<Feature>> {
    features_in(&[], max)
}

fn representation() -> impl Strategy<Value = FormRepresentation> {
    (word(), option::of(lang()), option::weighted(0.3, "[a-z]{3,8}")).prop_map(|(w, l, label)| FormRepresentation {
        written_form: w,
        lang_tag: l,
        orth_label: label,
    })
}

fn form(role: FormRole) -> impl Strategy<Value = Form> {
    (vec(representation(), 1..=2), features(2)).prop_map(move |(representations, grammar)| Form {
        role: role.clone(),
        representations,
        grammar,
    })
}

fn localized() -> impl Strategy<Value = LocalizedText> {
    (phrase(), option::of(lang())).prop_map(|(text, lang_tag)| LocalizedText { text, lang_tag })
}

fn external_ref() -> impl Strategy<Value = ExternalRef> {
    ("[a-z]{3,7}", "[0-9]{4,10}", option::of(localized())).prop_map(|(scheme, idno, gloss)| ExternalRef {
        scheme,
        idno,
        gloss,
    })
}

/// A definition with at most one span over a whole word.
fn definition() -> impl Strategy<Value = AnnotatedText> {
    (
        phrase(),
        option::weighted(0.3, (any::<prop::sample::Index>(), "hi|term|geogName")),
    )
        .prop_map(|(text, span)| {
            let mut spans = Vec::new();
            if let Some((index, kind)) = span {
                let words: Vec<(usize, &str)> = {
                    let mut offset = 0;
                    text.split(' ')
                        .map(|w| {
                            let start = offset;
                            offset += w.chars().count() + 1;
                            (start, w)
                        })
                        .collect()
                };
                let (start, w) = words[index.index(words.len())];
                spans.push(Span {
                    start,
                    end: start + w.chars().count(),
                    kind,
                    attrs: BTreeMap::new(),
                });
            }
            AnnotatedText { text, spans }
        })
}

fn quotation(depth: u32) -> BoxedStrategy<Quotation> {
    let kind = prop_oneof![
        Just(QuotationKind::Example),
        Just(QuotationKind::Translation),
        "[a-z]{4,8}".prop_map(QuotationKind::Other),
    ];
    let subs = if depth == 0 {
        Just(Vec::new()).boxed()
    } else {
        vec(quotation(depth - 1), 0..=1).boxed()
    };
    (
        kind,
        localized(),
        features_in(&["usageDomain"], 1),
        subs,
        option::weighted(0.2, "[A-Z][a-z]{3,8}"),
    )
        .prop_map(|(kind, quote, refinements, sub_quotations, source_ref)| Quotation {
            kind,
            quote,
            refinements,
            sub_quotations,
            source_ref,
        })
        .boxed()
}

fn argument() -> impl Strategy<Value = SyntacticArgument> {
    let collocate = (word(), "[a-z]{4,8}", option::of(lang())).prop_map(|(text, kind, lang_tag)| Collocate {
        text,
        kind,
        lang_tag,
    });
    (
        "N[0-9]|S|O",
        vec(collocate, 0..=1),
        vec(localized(), 0..=1),
        option::of(external_ref()),
    )
        .prop_map(|(function, collocates, glosses, semantic_ref)| SyntacticArgument {
            function,
            collocates,
            glosses,
            semantic_ref,
        })
}

fn behaviour() -> impl Strategy<Value = SyntacticBehaviour> {
    vec(
        vec(argument(), 1..=2).prop_map(|arguments| SubcategorizationFrame { arguments }),
        1..=2,
    )
    .prop_map(|frames| SyntacticBehaviour { frames })
}

fn sense(depth: u32) -> BoxedStrategy<Sense> {
    let subsenses = if depth == 0 {
        Just(Vec::new()).boxed()
    } else {
        vec(sense(depth - 1), 0..=2).boxed()
    };
    (
        option::of("[0-9a-z]{1,2}"),
        features_in(&["usageDomain"], 2),
        vec(definition(), 0..=2),
        vec(localized(), 0..=2),
        vec(external_ref(), 0..=1),
        vec(quotation(1), 0..=2),
        subsenses,
        vec(behaviour(), 0..=1),
    )
        .prop_map(
            |(label, grammar, definitions, glosses, external_refs, quotations, subsenses, syntactic_behaviours)| {
                Sense {
                    label,
                    grammar,
                    definitions,
                    glosses,
                    external_refs,
                    quotations,
                    subsenses,
                    syntactic_behaviours,
                }
            },
        )
        .boxed()
}

fn entry() -> impl Strategy<Value = LexicalEntry> {
    let other = prop_oneof![
        3 => Just(FormRole::WordForm),
        1 => prop::sample::select(vec!["stem", "variant"]).prop_map(|s| FormRole::Other(s.into())),
    ];
    (
        any::<bool>(),
        features(2),
        form(FormRole::Lemma),
        vec(other.prop_flat_map(form), 0..=2),
        vec(sense(1), 0..=2),
    )
        .prop_map(|(has_id, entry_grammar, lemma, other_forms, senses)| LexicalEntry {
            id: has_id.then(String::new),
            entry_grammar,
            lemma: Some(lemma),
            other_forms,
            senses,
        })
}

/// A resource that passes the model checks: unique entry ids, one lemma per entry.
pub fn resource() -> impl Strategy<Value = LexicalResource> {
    let lexicon = (lang(), vec(entry(), 1..=3)).prop_map(|(language, entries)| Lexicon { language, entries });
    (features(2), vec(lexicon, 1..=2)).prop_map(|(global_info, mut lexicons)| {
        let mut n = 0;
        for e in lexicons.iter_mut().flat_map(|l| l.entries.iter_mut()) {
            n += 1;
            if e.id.is_some() {
                e.id = Some(format!("e{n}"));
            }
        }
        LexicalResource { global_info, lexicons }
    })
}

fn has_nested_or_refined(q: &Quotation) -> bool {
    !q.sub_quotations.is_empty() || !q.refinements.is_empty()
}

fn sense_fits_legacy(s: &Sense) -> bool {
    s.definitions.iter().all(|d| d.spans.is_empty())
        && !s.quotations.iter().any(has_nested_or_refined)
        && s.subsenses.iter().all(sense_fits_legacy)
}

/// Whether the legacy dialect can carry `r` without loss.
pub fn fits_legacy(r: &LexicalResource) -> bool {
    r.entries().all(|e| e.senses.iter().all(sense_fits_legacy))
}
