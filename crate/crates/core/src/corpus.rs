//! Sample lexicons used by the test suites, the benchmarks and the CLI docs.
//!
//! The entries reproduce well-known dictionary examples: the LMF "clergyman"
//! full-form entry, the Korean verb 치다 with multiple scripts and CoreNet
//! sense and frame data, bilingual quotation structures, and a synthetic
//! resource that touches every model field.

use std::collections::BTreeMap;

use crate::model::*;

fn entry(lemma: Form) -> LexicalEntry {
    LexicalEntry {
        lemma: Some(lemma),
        ..Default::default()
    }
}

fn resource(language: &str, entries: Vec<LexicalEntry>) -> LexicalResource {
    LexicalResource::single(Lexicon {
        language: language.into(),
        entries,
    })
}

fn clergyman_entry() -> LexicalEntry {
    LexicalEntry {
        entry_grammar: vec![Feature::new("partOfSpeech", "commonNoun")],
        lemma: Some(Form::lemma("clergyman")),
        other_forms: vec![
            Form::word_form("clergyman").with_feature("grammaticalNumber", "singular"),
            Form::word_form("clergymen").with_feature("grammaticalNumber", "plural"),
        ],
        ..Default::default()
    }
}

/// Lemma plus singular and plural word forms, lexicon language `en`.
pub fn clergyman() -> LexicalResource {
    resource("en", vec![clergyman_entry()])
}

/// The same entry with ISO 639-3 language coding declared globally.
pub fn clergyman_coded() -> LexicalResource {
    LexicalResource {
        global_info: vec![Feature::new("languageCoding", "ISO 639-3")],
        lexicons: vec![Lexicon {
            language: "eng".into(),
            entries: vec![clergyman_entry()],
        }],
    }
}

/// Hangul and romanized representations of one lemma.
pub fn chida() -> LexicalResource {
    let lemma = Form {
        role: FormRole::Lemma,
        representations: vec![
            FormRepresentation::new("치다")
                .with_label("standard")
                .with_lang("ko-Hang"),
            FormRepresentation::new("chida")
                .with_label("transliterated")
                .with_lang("ko-Latn"),
        ],
        grammar: vec![],
    };
    resource("ko", vec![entry(lemma)])
}

fn wordnet(idno: &str, gloss: &str) -> ExternalRef {
    ExternalRef {
        scheme: "wordnet".into(),
        idno: idno.into(),
        gloss: Some(LocalizedText::new(gloss)),
    }
}

/// CoreNet verb-concept structure: sense 3 (vt) with two wordnet-linked sub-senses.
pub fn corenet_concept() -> LexicalResource {
    let lemma = Form {
        role: FormRole::Lemma,
        representations: vec![
            FormRepresentation::new("치다").with_label("한글"),
            FormRepresentation::new("chida").with_label("Romanization"),
        ],
        grammar: vec![],
    };
    let mut sense = Sense::labelled("3");
    sense.grammar.push(Feature::new("subcategorization", "vt"));
    let mut first = Sense::labelled("1");
    first.external_refs.push(wordnet("1221282691", "치기"));
    let mut second = Sense::labelled("2");
    second.external_refs.push(wordnet("1221191442", "언쟁"));
    sense.subsenses = vec![first, second];
    let mut e = entry(lemma);
    e.senses.push(sense);
    resource("ko", vec![e])
}

/// CoreNet verb-frame sense with its subcategorization frame.
pub fn corenet_frame() -> LexicalResource {
    let argument = SyntacticArgument {
        function: "N1".into(),
        collocates: vec![Collocate {
            text: "이/가".into(),
            kind: "particle".into(),
            lang_tag: Some("ko".into()),
        }],
        glosses: vec![LocalizedText::lang("눈보라", "ko")],
        semantic_ref: Some(ExternalRef {
            scheme: "wordnet".into(),
            idno: "12231214".into(),
            gloss: Some(LocalizedText::lang("눈", "ko")),
        }),
    };
    let sense = Sense {
        glosses: vec![LocalizedText::lang("ふぶく", "ja")],
        syntactic_behaviours: vec![SyntacticBehaviour {
            frames: vec![SubcategorizationFrame {
                arguments: vec![argument],
            }],
        }],
        ..Default::default()
    };
    let mut e = entry(Form::lemma("치다"));
    e.senses.push(sense);
    resource("ko", vec![e])
}

fn sense_with(quotation: Quotation) -> Sense {
    Sense {
        quotations: vec![quotation],
        ..Default::default()
    }
}

fn translation(text: &str, lang: &str) -> Quotation {
    Quotation::new(QuotationKind::Translation, LocalizedText::lang(text, lang))
}

/// Bare French translation of "horrify".
pub fn horrify_translation() -> LexicalResource {
    let mut e = entry(Form::lemma("horrify"));
    e.senses.push(sense_with(translation("horrifier", "fr")));
    resource("en", vec![e])
}

/// Translations refined by gender and by a domain of use.
pub fn dresser() -> LexicalResource {
    let mut habilleur = translation("habilleur", "fr");
    habilleur.refinements.push(Feature::new("grammaticalGender", "m"));
    let mut raboteuse = translation("raboteuse", "fr");
    raboteuse.refinements.push(Feature::new("usageDomain", "wood"));
    raboteuse.refinements.push(Feature::new("grammaticalGender", "f"));
    let mut e = entry(Form::lemma("dresser"));
    e.entry_grammar.push(Feature::new("partOfSpeech", "noun"));
    let mut a = sense_with(habilleur);
    a.label = Some("a".into());
    let mut b = sense_with(raboteuse);
    b.label = Some("b".into());
    e.senses = vec![a, b];
    resource("en", vec![e])
}

/// Example sentence carrying its own French translation.
pub fn horrify_example() -> LexicalResource {
    let mut example = Quotation::new(
        QuotationKind::Example,
        LocalizedText::new("she was horrified at the expense."),
    );
    example
        .sub_quotations
        .push(translation("elle était horrifiée par la dépense.", "fr"));
    let mut e = entry(Form::lemma("horrify"));
    e.senses.push(sense_with(example));
    resource("en", vec![e])
}

/// Definition with an inline place-name annotation.
pub fn cattleya() -> LexicalResource {
    let text = "Orchidée épiphyte, originaire d'Amérique tropicale, et dont l'espèce la plus connue \
                est très recherchée pour l'élégance de ses fleurs mauves à grand labelle en cornet onduleux.";
    let prefix = "Orchidée épiphyte, originaire d'";
    let start = prefix.chars().count();
    let end = start + "Amérique tropicale".chars().count();
    let sense = Sense {
        definitions: vec![AnnotatedText {
            text: text.into(),
            spans: vec![Span {
                start,
                end,
                kind: "geogName".into(),
                attrs: BTreeMap::new(),
            }],
        }],
        ..Default::default()
    };
    let mut e = entry(Form::lemma("cattleya"));
    e.entry_grammar.push(Feature::new("partOfSpeech", "commonNoun"));
    e.senses.push(sense);
    resource("fra", vec![e])
}

/// Sourced literary quotation under a numbered sense.
pub fn valeur() -> LexicalResource {
    let mut quote = Quotation::new(
        QuotationKind::Example,
        LocalizedText::new("La valeur n'attend pas le nombre des années"),
    );
    quote.source_ref = Some("Corneille".into());
    let mut sense = Sense::labelled("2");
    sense.grammar.push(Feature::new("usageTime", "archaic"));
    sense
        .definitions
        .push(AnnotatedText::plain("Vaillance, bravoure (spécial., au combat)."));
    sense.quotations.push(quote);
    let mut e = entry(Form::lemma("valeur"));
    e.entry_grammar.push(Feature::new("partOfSpeech", "noun"));
    e.entry_grammar.push(Feature::new("grammaticalGender", "feminine"));
    e.senses.push(sense);
    resource("fra", vec![e])
}

/// Register marking, a definition and a constructed example.
pub fn aint() -> LexicalResource {
    let mut sense = Sense::default();
    sense.grammar.push(Feature::new("register", "nonstandard"));
    sense.definitions.push(AnnotatedText::plain(
        "contraction of am not, is not, are not, have not or has not",
    ));
    sense.quotations.push(Quotation::new(
        QuotationKind::Example,
        LocalizedText::new("I ain't seen it."),
    ));
    let mut e = entry(Form::lemma("ain't"));
    e.entry_grammar.push(Feature::new("partOfSpeech", "verb"));
    e.senses.push(sense);
    resource("en", vec![e])
}

/// One lexicon with no entries.
pub fn minimal() -> LexicalResource {
    resource("en", vec![])
}

/// Synthetic resource exercising every model field: global information,
/// several lexicons, registry identifiers, entry ids, non-lemma form roles,
/// lemma-level grammar, nested senses, nested spans with attributes and
/// multi-frame syntax.
pub fn kitchen_sink() -> LexicalResource {
    let pos = Feature::new("partOfSpeech", "verb").with_registry(
        "http://www.isocat.org/datcat/DC-1345",
        Some("http://www.isocat.org/datcat/DC-1424".into()),
    );
    let mut lemma = Form {
        role: FormRole::Lemma,
        representations: vec![
            FormRepresentation::new("lesen").with_lang("de"),
            FormRepresentation::new("LESEN").with_lang("de-x-caps"),
        ],
        grammar: vec![Feature::new("inflectionClass", "strong")],
    };
    lemma.grammar.push(Feature::new("auxiliary", "haben"));
    let past = Form {
        role: FormRole::WordForm,
        representations: vec![FormRepresentation::new("las")],
        grammar: vec![
            Feature::new("tense", "past"),
            Feature::new("grammaticalNumber", "singular").with_registry("http://www.isocat.org/datcat/DC-1298", None),
        ],
    };
    let stem = Form {
        role: FormRole::Other("stem".into()),
        representations: vec![FormRepresentation::new("les").with_label("bound")],
        grammar: vec![],
    };

    let mut attrs = BTreeMap::new();
    attrs.insert("ref".to_string(), "#book".to_string());
    attrs.insert("xml:lang".to_string(), "de".to_string());
    let definition = AnnotatedText {
        text: "Schrift in einem Buch erfassen".into(),
        spans: vec![
            Span {
                start: 0,
                end: 30,
                kind: "seg".into(),
                attrs: BTreeMap::new(),
            },
            Span {
                start: 11,
                end: 30,
                kind: "term".into(),
                attrs: attrs.clone(),
            },
            Span {
                start: 17,
                end: 21,
                kind: "hi".into(),
                attrs: BTreeMap::new(),
            },
        ],
    };

    let mut example = Quotation::new(QuotationKind::Example, LocalizedText::lang("Sie liest ein Buch.", "de"));
    example.source_ref = Some("Grammatik, S. 12".into());
    let mut tr = translation("She reads a book.", "en");
    tr.refinements.push(Feature::new("tense", "present"));
    tr.refinements.push(Feature::new("usageDomain", "everyday"));
    let mut tr_fr = Quotation::new(
        QuotationKind::Other("paraphrase".into()),
        LocalizedText::lang("Elle lit.", "fr"),
    );
    tr_fr.refinements.push(Feature::new("usageDomain", "literature"));
    tr.sub_quotations.push(tr_fr);
    example.sub_quotations.push(tr);

    let frame = |args: &[&str]| SubcategorizationFrame {
        arguments: args
            .iter()
            .map(|f| SyntacticArgument {
                function: (*f).into(),
                ..Default::default()
            })
            .collect(),
    };
    let mut deep = Sense::labelled("1.a.i");
    deep.glosses.push(LocalizedText::new("read aloud"));
    let mut mid = Sense::labelled("1.a");
    mid.subsenses.push(deep);
    mid.external_refs.push(ExternalRef {
        scheme: "germanet".into(),
        idno: "s1234".into(),
        gloss: None,
    });
    let top = Sense {
        label: Some("①".into()),
        grammar: vec![
            Feature::new("subcategorization", "vt"),
            Feature::new("usageDomain", "school"),
        ],
        definitions: vec![definition, AnnotatedText::plain("Text wahrnehmen")],
        glosses: vec![LocalizedText::lang("read", "en"), LocalizedText::new("lire")],
        external_refs: vec![],
        quotations: vec![example],
        subsenses: vec![mid],
        syntactic_behaviours: vec![
            SyntacticBehaviour {
                frames: vec![frame(&["subject", "object"]), frame(&["subject"])],
            },
            SyntacticBehaviour {
                frames: vec![SubcategorizationFrame {
                    arguments: vec![SyntacticArgument {
                        function: "prepObject".into(),
                        collocates: vec![
                            Collocate {
                                text: "in".into(),
                                kind: "preposition".into(),
                                lang_tag: None,
                            },
                            Collocate {
                                text: "über".into(),
                                kind: "preposition".into(),
                                lang_tag: Some("de".into()),
                            },
                        ],
                        glosses: vec![LocalizedText::new("read in")],
                        semantic_ref: Some(ExternalRef {
                            scheme: "germanet".into(),
                            idno: "n77".into(),
                            gloss: None,
                        }),
                    }],
                }],
            },
        ],
    };
    let lesen = LexicalEntry {
        id: Some("lesen-v".into()),
        entry_grammar: vec![pos],
        lemma: Some(lemma),
        other_forms: vec![past, stem],
        senses: vec![top, Sense::labelled("②")],
    };
    let buch = LexicalEntry {
        id: Some("buch-n".into()),
        entry_grammar: vec![],
        lemma: Some(Form::lemma("Buch").with_feature("grammaticalGender", "neuter")),
        other_forms: vec![],
        senses: vec![],
    };
    let mut empty_pos = entry(Form::lemma("Lesung"));
    empty_pos.entry_grammar.push(Feature::new("partOfSpeech", "noun"));
    LexicalResource {
        global_info: vec![
            Feature::new("languageCoding", "ISO 639-1"),
            Feature::new("author", "lexicrosswalk test suite"),
        ],
        lexicons: vec![
            Lexicon {
                language: "de".into(),
                entries: vec![lesen, buch],
            },
            Lexicon {
                language: "de-AT".into(),
                entries: vec![empty_pos],
            },
        ],
    }
}

/// Every sample resource, keyed by a short name.
pub fn all() -> Vec<(&'static str, LexicalResource)> {
    vec![
        ("clergyman", clergyman()),
        ("clergyman-coded", clergyman_coded()),
        ("chida", chida()),
        ("corenet-concept", corenet_concept()),
        ("corenet-frame", corenet_frame()),
        ("horrify-translation", horrify_translation()),
        ("dresser", dresser()),
        ("horrify-example", horrify_example()),
        ("cattleya", cattleya()),
        ("valeur", valeur()),
        ("aint", aint()),
        ("minimal", minimal()),
        ("kitchen-sink", kitchen_sink()),
    ]
}
