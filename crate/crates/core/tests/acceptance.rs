//! Acceptance criteria 1–10, run as one target that prints a PASS/FAIL line
//! per criterion and exits non-zero if any criterion fails.
//!
//! Golden files live in `tests/fixtures/`; corrections made to the reference
//! listings are recorded in `tests/fixtures/FIXTURE-ERRATA.md`.

use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use lexicrosswalk::corpus;
use lexicrosswalk::model::{DataCategoryRef, LexicalResource};
use lexicrosswalk::tei::mapping::{map_descriptor_to_tei, map_lmf_to_tei, map_tei_to_descriptor, CORE_TABLE};
use lexicrosswalk::tei::parse_tei;
use lexicrosswalk::validator::syntax_manifest;
use lexicrosswalk::xml::{first_difference, LMF_NS, TEI_NS};
use lexicrosswalk::{
    canonical_equal, convert, equal_structural, first_divergence, parse_xml, read_document, validate_tei_document,
    write_document, ConvertOptions, Dialect, Error, GrammarStyle, XmlNode,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn fixture(name: &str) -> XmlNode {
    let path = fixtures_dir().join(name);
    let bytes = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_xml(&bytes).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn opts(style: GrammarStyle) -> ConvertOptions {
    ConvertOptions {
        grammar_style: style,
        ..ConvertOptions::default()
    }
}

/// Emits and re-parses, so golden comparisons also cover the serializer.
fn emit(resource: &LexicalResource, dialect: Dialect, style: GrammarStyle) -> XmlNode {
    let (bytes, notes) = write_document(resource, dialect, &opts(style)).expect("emits");
    assert!(notes.is_empty(), "unexpected loss notes: {notes:?}");
    parse_xml(&bytes).expect("emitted XML parses")
}

/// First element (document order, self included) in `ns` named `local`.
fn find<'a>(node: &'a XmlNode, ns: &str, local: &str) -> &'a XmlNode {
    fn walk<'a>(node: &'a XmlNode, ns: &str, local: &str) -> Option<&'a XmlNode> {
        if node.name.is(ns, local) {
            return Some(node);
        }
        node.elements().find_map(|c| walk(c, ns, local))
    }
    walk(node, ns, local).unwrap_or_else(|| panic!("no <{local}> in output"))
}

fn assert_golden(actual: &XmlNode, golden: &str) {
    let expected = fixture(golden);
    assert!(
        canonical_equal(actual, &expected),
        "{golden}: {}",
        first_difference(actual, &expected).unwrap_or_default()
    );
}

// ---------------------------------------------------------------------------

fn criterion_1() {
    let start = Instant::now();
    assert_golden(
        &emit(&corpus::clergyman(), Dialect::Fs, GrammarStyle::GramGrp),
        "clergyman.fs.xml",
    );
    assert_golden(
        &emit(&corpus::clergyman_coded(), Dialect::Mixed, GrammarStyle::GramGrp),
        "clergyman.mixed.xml",
    );
    let tei = emit(&corpus::clergyman(), Dialect::TeiDict, GrammarStyle::GramGrp);
    assert_golden(find(&tei, TEI_NS, "entry"), "clergyman.tei.xml");
    assert!(start.elapsed() < Duration::from_secs(1), "took {:?}", start.elapsed());
}

fn criterion_2() {
    let tei = emit(&corpus::clergyman(), Dialect::TeiDict, GrammarStyle::FeatureStructure);
    assert_golden(find(&tei, TEI_NS, "entry"), "clergyman.tei-fs.xml");
}

fn criterion_3() {
    let tei = emit(&corpus::chida(), Dialect::TeiDict, GrammarStyle::GramGrp);
    let form = find(&tei, TEI_NS, "form");
    assert_golden(form, "chida-form.xml");
    let orths: Vec<_> = form
        .elements()
        .map(|o| (o.xml_lang().unwrap_or(""), o.attr_local("type").unwrap_or("")))
        .collect();
    assert_eq!(orths, [("ko-Hang", "standard"), ("ko-Latn", "transliterated")]);

    // The listing as printed, without @type on <form>, reads back to the same lemma.
    let (parsed, findings) = parse_tei(&fixture("chida-form.untyped.xml")).expect("parses");
    assert!(findings.iter().all(|f| !f.is_error()), "{findings:?}");
    let expected = corpus::chida();
    assert_eq!(
        parsed.entries().next().unwrap().lemma,
        expected.entries().next().unwrap().lemma
    );
}

fn criterion_4() {
    let cases = [
        (corpus::horrify_translation(), "quote-horrifier.xml"),
        (corpus::dresser(), "quote-habilleur.xml"),
        (corpus::horrify_example(), "quote-horrified.xml"),
    ];
    for (resource, golden) in cases {
        let tei = emit(&resource, Dialect::TeiDict, GrammarStyle::GramGrp);
        assert_golden(find(&tei, TEI_NS, "cit"), golden);
    }
}

fn criterion_5() {
    let tei = emit(&corpus::corenet_frame(), Dialect::TeiDict, GrammarStyle::GramGrp);
    let sense = find(&tei, TEI_NS, "sense");
    assert_golden(sense, "corenet-frame.sense.xml");

    let manifest = syntax_manifest();
    let mut lmf_elements = 0;
    let mut stack = vec![sense];
    while let Some(node) = stack.pop() {
        if manifest.element(&node.name.local).is_some() {
            assert_eq!(node.name.ns, LMF_NS, "<{}> outside the LMF namespace", node.name.local);
        }
        if node.name.ns == LMF_NS {
            lmf_elements += 1;
            assert!(manifest.element(&node.name.local).is_some(), "lmf:{}", node.name.local);
        }
        stack.extend(node.elements());
    }
    assert_eq!(lmf_elements, 4);
}

fn criterion_6() {
    let expected: [(&str, &str, Option<&str>); 6] = [
        ("LexicalEntry", "entry", None),
        ("Lemma", "form", Some("lemma")),
        ("WordForm", "form", Some("inflected")),
        ("writtenForm", "orth", None),
        ("partOfSpeech", "pos", None),
        ("grammaticalNumber", "number", None),
    ];
    assert_eq!(CORE_TABLE, expected.as_slice());
    for (name, element, ty) in expected {
        assert_eq!(map_lmf_to_tei(name), Some((element, ty)), "{name}");
    }
    for (category, element) in [("partOfSpeech", "pos"), ("grammaticalNumber", "number")] {
        let m = map_descriptor_to_tei(&DataCategoryRef::new(category));
        assert_eq!(m.tei_element, element);
        assert!(!m.is_generic);
        assert_eq!(map_tei_to_descriptor(element, None).unwrap().name, category);
    }

    let mut runner = TestRunner::new(Config {
        cases: 256,
        ..Config::default()
    });
    let names = prop_oneof![
        "[a-z][a-zA-Z0-9]{0,20}",
        "[A-Z][a-zA-Z]{0,12}",
        prop::sample::select(vec![
            "partOfSpeech",
            "grammaticalGender",
            "subcategorization",
            "pos",
            "gram"
        ])
        .prop_map(String::from),
    ];
    runner
        .run(&names, |name| {
            let m = map_descriptor_to_tei(&DataCategoryRef::new(name.clone()));
            let ty = m.is_generic.then_some(name.as_str());
            let back = map_tei_to_descriptor(&m.tei_element, ty).expect("maps back");
            prop_assert_eq!(back.name, name);
            Ok(())
        })
        .unwrap();
}

fn criterion_7() {
    let start = Instant::now();
    let fixtures = corpus::all();
    assert!(fixtures.len() >= 12);
    let opts = ConvertOptions {
        emit_dcr_attrs: true,
        ..ConvertOptions::default()
    };
    for (name, model) in &fixtures {
        for dialect in Dialect::ALL {
            let (bytes, notes) = match write_document(model, dialect, &opts) {
                Ok(out) => out,
                // Only the legacy dialect may refuse content.
                Err(Error::Unrepresentable { .. }) if dialect == Dialect::LegacyLmf => continue,
                Err(e) => panic!("{name} as {dialect}: {e}"),
            };
            if !notes.is_empty() {
                assert_eq!(dialect, Dialect::LegacyLmf, "{name}: {notes:?}");
                continue;
            }
            let (back, _) = read_document(&bytes, dialect, &opts).unwrap_or_else(|e| panic!("{name} {dialect}: {e}"));
            assert!(
                equal_structural(&back, model),
                "{name} via {dialect}: {:?}",
                first_divergence(model, &back)
            );
        }
        let (tei, _) = write_document(model, Dialect::TeiDict, &opts).unwrap();
        for via in [Dialect::Fs, Dialect::Mixed] {
            let there = convert(&tei, Dialect::TeiDict, via, &opts).unwrap();
            let back = convert(&there.output, via, Dialect::TeiDict, &opts).unwrap();
            let (m, _) = read_document(&back.output, Dialect::TeiDict, &opts).unwrap();
            assert!(
                equal_structural(&m, model),
                "{name}: tei -> {via} -> tei: {:?}",
                first_divergence(model, &m)
            );
        }
    }
    assert!(start.elapsed() < Duration::from_secs(10), "took {:?}", start.elapsed());
}

fn tei_doc(body: &str) -> XmlNode {
    let src = body.replacen('>', &format!(r#" xmlns="{TEI_NS}" xmlns:lmf="{LMF_NS}">"#), 1);
    parse_xml(src.as_bytes()).unwrap()
}

fn criterion_8() {
    let lemma = r#"<form type="lemma"><orth>a</orth></form>"#;
    let cases = [
        (
            "R1-SENSE-REQUIRED",
            "/entry[1]/def[1]".to_string(),
            format!("<entry>{lemma}<def>x</def></entry>"),
            format!("<entry>{lemma}<sense><def>x</def></sense></entry>"),
        ),
        (
            "R2-NO-VOID-GRAMGRP",
            "/entry[1]/form[1]/gramGrp[1]".into(),
            r#"<entry><form type="lemma"><orth>a</orth><gramGrp/></form></entry>"#.into(),
            r#"<entry><form type="lemma"><orth>a</orth><gramGrp><pos>noun</pos></gramGrp></form></entry>"#.into(),
        ),
        (
            "R3-ENTRY-ONLY",
            "/entryFree[1]".into(),
            format!("<entryFree>{lemma}</entryFree>"),
            format!("<entry>{lemma}</entry>"),
        ),
        (
            "R4-FORM-WRAPPER",
            "/entry[1]/orth[1]".into(),
            "<entry><orth>a</orth></entry>".into(),
            format!("<entry>{lemma}</entry>"),
        ),
        (
            "R5-CIT-QUOTE",
            "/entry[1]/sense[1]/cit[1]".into(),
            format!(
                r#"<entry>{lemma}<sense><cit type="example"><quote>a</quote><quote>b</quote></cit></sense></entry>"#
            ),
            format!(r#"<entry>{lemma}<sense><cit type="example"><quote>a</quote></cit></sense></entry>"#),
        ),
        (
            "R6-LMF-ANCHOR",
            "/entry[1]/lmf:syntacticBehaviour[1]".into(),
            format!("<entry>{lemma}<lmf:syntacticBehaviour/></entry>"),
            format!("<entry>{lemma}<sense><lmf:syntacticBehaviour/></sense></entry>"),
        ),
        (
            "R7-ENTRY-ID-UNIQUE",
            "/div[1]/entry[2]".into(),
            format!(
                r#"<div type="lexicon"><entry xml:id="e1">{lemma}</entry><entry xml:id="e1">{lemma}</entry></div>"#
            ),
            format!(
                r#"<div type="lexicon"><entry xml:id="e1">{lemma}</entry><entry xml:id="e2">{lemma}</entry></div>"#
            ),
        ),
    ];
    for (rule, path, violating, compliant) in &cases {
        let findings = validate_tei_document(&tei_doc(violating), None);
        assert_eq!(findings.len(), 1, "{rule}: {findings:?}");
        assert_eq!(&findings[0].rule_id, rule);
        assert_eq!(&findings[0].path, path);
        let findings = validate_tei_document(&tei_doc(compliant), None);
        assert!(findings.is_empty(), "{rule} twin: {findings:?}");
    }

    for (name, model) in corpus::all() {
        for style in [GrammarStyle::GramGrp, GrammarStyle::FeatureStructure] {
            for wrap in [false, true] {
                let o = ConvertOptions {
                    grammar_style: style,
                    wrap_tei: wrap,
                    emit_dcr_attrs: true,
                    ..ConvertOptions::default()
                };
                let (bytes, _) = write_document(&model, Dialect::TeiDict, &o).unwrap();
                let findings = validate_tei_document(&parse_xml(&bytes).unwrap(), None);
                let errors: Vec<_> = findings.iter().filter(|f| f.is_error()).collect();
                assert!(errors.is_empty(), "{name} ({style:?}, wrap {wrap}): {errors:?}");
            }
        }
    }
}

fn criterion_9() {
    for (name, model) in corpus::all() {
        let read = |style| {
            let o = ConvertOptions {
                emit_dcr_attrs: true,
                ..opts(style)
            };
            let (bytes, _) = write_document(&model, Dialect::TeiDict, &o).unwrap();
            read_document(&bytes, Dialect::TeiDict, &o).unwrap().0
        };
        let gramgrp = read(GrammarStyle::GramGrp);
        let fs = read(GrammarStyle::FeatureStructure);
        assert!(
            equal_structural(&gramgrp, &fs),
            "{name}: {:?}",
            first_divergence(&gramgrp, &fs)
        );
        assert!(
            equal_structural(&gramgrp, &model),
            "{name}: {:?}",
            first_divergence(&model, &gramgrp)
        );
    }
}

// ---------------------------------------------------------------------------
// criterion 10: the command-line contract, end to end

/// The CLI binary from the same target directory, built on demand when this
/// target runs without the rest of the workspace.
fn cli_binary() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    let target = exe.parent().and_then(Path::parent).expect("target directory");
    let bin = target.join(format!("lexicrosswalk{}", std::env::consts::EXE_SUFFIX));
    if !bin.exists() {
        let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
        let status = Command::new(cargo)
            .args(["build", "-p", "lexicrosswalk-cli", "--bin", "lexicrosswalk"])
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .status()
            .expect("cargo runs");
        assert!(status.success(), "building the CLI failed");
    }
    bin
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(bin: &Path, dir: &Path, args: &[&str]) -> Run {
    let Output { status, stdout, stderr } = Command::new(bin)
        .args(args)
        .current_dir(dir)
        .env_remove("LEXICROSSWALK_PREFIXES")
        .output()
        .expect("CLI runs");
    Run {
        code: status.code().expect("exit code"),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn criterion_10() {
    let bin = cli_binary();
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let copy = |name: &str| std::fs::copy(fixtures_dir().join(name), dir.join(name)).unwrap();
    copy("clergyman.mixed.xml");
    copy("clergyman.tei.xml");
    let nested = write_document(&corpus::horrify_example(), Dialect::TeiDict, &ConvertOptions::default())
        .unwrap()
        .0;
    std::fs::write(dir.join("nested-quote.xml"), nested).unwrap();
    let x = write_document(&corpus::kitchen_sink(), Dialect::TeiDict, &ConvertOptions::default())
        .unwrap()
        .0;
    std::fs::write(dir.join("x.xml"), x).unwrap();
    std::fs::write(
        dir.join("direct-def.xml"),
        format!(r#"<entry xmlns="{TEI_NS}"><def>x</def></entry>"#),
    )
    .unwrap();

    // convert
    let r = run(
        &bin,
        dir,
        &["convert", "--from", "mixed", "--to", "tei", "clergyman.mixed.xml"],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let written = parse_xml(&std::fs::read(dir.join("clergyman.tei.xml")).unwrap()).unwrap();
    assert_golden(find(&written, TEI_NS, "entry"), "clergyman.tei.xml");

    let r = run(&bin, dir, &["convert", "--from", "tei", "--to", "tei", "x.xml"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let once = std::fs::read(dir.join("x.tei.xml")).unwrap();
    let r = run(
        &bin,
        dir,
        &["convert", "--from", "tei", "--to", "tei", "--out", "-", "x.tei.xml"],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout.as_bytes(), once.as_slice(), "normalization is not a fixpoint");

    let r = run(
        &bin,
        dir,
        &["convert", "--from", "tei", "--to", "legacy-lmf", "nested-quote.xml"],
    );
    assert_eq!(r.code, 1, "{}", r.stderr);
    assert!(r.stderr.contains("/sense[1]/quotation[1]"), "{}", r.stderr);
    assert!(!dir.join("nested-quote.legacy-lmf.xml").exists());

    // validate
    let r = run(&bin, dir, &["validate", "clergyman.tei.xml"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, ""), "{}", r.stderr);

    let r = run(&bin, dir, &["validate", "direct-def.xml"]);
    assert_eq!(r.code, 1);
    let lines: Vec<_> = r.stdout.lines().collect();
    assert_eq!(lines.len(), 1, "{}", r.stdout);
    assert!(
        lines[0].starts_with("ERROR R1-SENSE-REQUIRED /entry[1]/def[1]: "),
        "{}",
        lines[0]
    );

    let r = run(&bin, dir, &["validate", "--format", "json", "direct-def.xml"]);
    assert_eq!(r.code, 1);
    let json: serde_json::Value = serde_json::from_str(&r.stdout).expect("JSON report");
    let array = json.as_array().expect("array");
    assert_eq!(array.len(), 1);
    assert_eq!(array[0]["ruleId"], "R1-SENSE-REQUIRED");
    assert_eq!(array[0]["severity"], "error");
    assert_eq!(array[0]["path"], "/entry[1]/def[1]");
    assert!(array[0]["message"].is_string());

    // roundtrip
    for via in ["fs", "mixed"] {
        let r = run(
            &bin,
            dir,
            &["roundtrip", "--from", "tei", "--via", via, "clergyman.tei.xml"],
        );
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert!(r.stdout.trim_end().ends_with("OK"), "{}", r.stdout);
    }
    let r = run(
        &bin,
        dir,
        &["roundtrip", "--from", "tei", "--via", "legacy-lmf", "nested-quote.xml"],
    );
    assert_eq!(r.code, 1);
    assert!(
        r.stdout.contains("FAIL") && r.stdout.contains("unrepresentable"),
        "{}",
        r.stdout
    );
}

// ---------------------------------------------------------------------------

/// Runs without the libtest harness so the verdict lines are always shown.
fn main() -> ExitCode {
    let criteria: [(&str, fn()); 10] = [
        ("golden reproduction: clergyman as fs, mixed and TEI", criterion_1),
        ("golden reproduction: grammar as feature structure", criterion_2),
        ("golden reproduction: chida form", criterion_3),
        ("golden reproduction: quotation structures", criterion_4),
        ("golden reproduction: syntax extension", criterion_5),
        ("core mapping table bijection", criterion_6),
        ("round-trip suite", criterion_7),
        ("validator catalogue", criterion_8),
        ("grammar style equivalence", criterion_9),
        ("CLI contract", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check));
        let verdict = if result.is_ok() { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {verdict} {title} ({:.0?})", i + 1, start.elapsed());
        if result.is_err() {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
