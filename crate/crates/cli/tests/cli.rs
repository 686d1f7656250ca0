use std::path::Path;
use std::process::Command;

use lexicrosswalk::corpus;
use lexicrosswalk::{write_document, ConvertOptions, Dialect, LexicalResource};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_env(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lexicrosswalk"));
    cmd.args(args).current_dir(dir).env_remove("LEXICROSSWALK_PREFIXES");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(dir: &Path, args: &[&str]) -> Run {
    run_env(dir, args, &[])
}

fn put(dir: &Path, name: &str, r: &LexicalResource, dialect: Dialect) {
    let bytes = write_document(r, dialect, &ConvertOptions::default()).unwrap().0;
    std::fs::write(dir.join(name), bytes).unwrap();
}

fn workspace() -> tempfile::TempDir {
    let tmp = tempfile::tempdir().unwrap();
    put(tmp.path(), "clergyman.tei.xml", &corpus::clergyman(), Dialect::TeiDict);
    put(tmp.path(), "frame.tei.xml", &corpus::corenet_frame(), Dialect::TeiDict);
    put(
        tmp.path(),
        "nested.tei.xml",
        &corpus::horrify_example(),
        Dialect::TeiDict,
    );
    put(tmp.path(), "clergyman.fs.xml", &corpus::clergyman(), Dialect::Fs);
    std::fs::write(tmp.path().join("broken.xml"), "<entry><form></entry>").unwrap();
    tmp
}

#[test]
fn usage_errors_exit_2() {
    let tmp = workspace();
    let dir = tmp.path();
    assert_eq!(run(dir, &[]).code, 2);
    assert_eq!(run(dir, &["convert", "--from", "lmf", "--to", "tei", "x.xml"]).code, 2);
    assert_eq!(run(dir, &["convert", "--from", "tei", "--to", "fs"]).code, 2);
    let r = run(dir, &["convert", "--from", "tei", "--to", "fs", "missing.xml"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("missing.xml"), "{}", r.stderr);
    assert_eq!(run(dir, &["validate", "--rules", "R99", "clergyman.tei.xml"]).code, 2);
    let r = run_env(
        dir,
        &["convert", "--from", "tei", "--to", "fs", "clergyman.tei.xml"],
        &[("LEXICROSSWALK_PREFIXES", "no-equals-sign")],
    );
    assert_eq!(r.code, 2);
}

#[test]
fn help_exits_0() {
    let tmp = workspace();
    let r = run(tmp.path(), &["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("convert") && r.stdout.contains("roundtrip"));
}

#[test]
fn unreadable_input_exits_3() {
    let tmp = workspace();
    let dir = tmp.path();
    assert_eq!(
        run(dir, &["convert", "--from", "tei", "--to", "fs", "broken.xml"]).code,
        3
    );
    assert_eq!(run(dir, &["validate", "broken.xml"]).code, 3);
    assert_eq!(
        run(dir, &["roundtrip", "--from", "tei", "--via", "fs", "broken.xml"]).code,
        3
    );
    // Well-formed, but not the declared dialect.
    let r = run(dir, &["convert", "--from", "fs", "--to", "tei", "clergyman.tei.xml"]);
    assert_eq!(r.code, 3, "{}", r.stderr);
}

#[test]
fn batch_conversion_names_outputs_and_keeps_order() {
    let tmp = workspace();
    let dir = tmp.path();
    let r = run(
        dir,
        &[
            "convert",
            "--from",
            "tei",
            "--to",
            "mixed",
            "frame.tei.xml",
            "clergyman.tei.xml",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(dir.join("frame.mixed.xml").exists());
    assert!(dir.join("clergyman.mixed.xml").exists());
    let frame = r.stderr.find("frame.tei.xml").unwrap();
    let clergyman = r.stderr.find("clergyman.tei.xml").unwrap();
    assert!(frame < clergyman, "{}", r.stderr);
    assert!(r.stdout.is_empty());

    let out = dir.join("out");
    std::fs::create_dir(&out).unwrap();
    let r = run(
        dir,
        &[
            "convert",
            "--from",
            "tei",
            "--to",
            "fs",
            "--out",
            "out",
            "frame.tei.xml",
            "nested.tei.xml",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(out.join("frame.fs.xml").exists() && out.join("nested.fs.xml").exists());
}

#[test]
fn one_bad_input_does_not_stop_the_batch() {
    let tmp = workspace();
    let dir = tmp.path();
    let r = run(
        dir,
        &[
            "convert",
            "--from",
            "tei",
            "--to",
            "legacy-lmf",
            "nested.tei.xml",
            "clergyman.tei.xml",
        ],
    );
    assert_eq!(r.code, 1);
    assert!(dir.join("clergyman.legacy-lmf.xml").exists());
    assert!(!dir.join("nested.legacy-lmf.xml").exists());
    assert!(r.stderr.contains("nested quotation"), "{}", r.stderr);
}

#[test]
fn convert_flags() {
    let tmp = workspace();
    let dir = tmp.path();
    let r = run(
        dir,
        &[
            "convert",
            "--from",
            "fs",
            "--to",
            "tei",
            "--grammar-style",
            "fs",
            "--wrap-tei",
            "--out",
            "-",
            "clergyman.fs.xml",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("<TEI"), "{}", r.stdout);
    assert!(r.stdout.contains("<teiHeader>"));
    assert!(r.stdout.contains(r#"<fs type="grammar">"#));

    let r = run(
        dir,
        &[
            "convert",
            "--from",
            "tei",
            "--to",
            "fs",
            "--dcr",
            "--out",
            "single.xml",
            "clergyman.tei.xml",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(dir.join("single.xml").exists());

    let r = run_env(
        dir,
        &["convert", "--from", "tei", "--to", "tei", "--out", "-", "frame.tei.xml"],
        &[("LEXICROSSWALK_PREFIXES", "http://www.iso.org/ns/LMF=iso")],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("<iso:syntacticBehaviour>"), "{}", r.stdout);
    assert!(r.stdout.contains(r#"xmlns:iso="http://www.iso.org/ns/LMF""#));
}

#[test]
fn normalizing_in_place_does_not_overwrite_the_input() {
    let tmp = workspace();
    let dir = tmp.path();
    let before = std::fs::read(dir.join("clergyman.tei.xml")).unwrap();
    let r = run(dir, &["convert", "--from", "tei", "--to", "tei", "clergyman.tei.xml"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(std::fs::read(dir.join("clergyman.tei.xml")).unwrap(), before);
    assert_eq!(std::fs::read(dir.join("clergyman.tei.normalized.xml")).unwrap(), before);
}

#[test]
fn validate_reports() {
    let tmp = workspace();
    let dir = tmp.path();
    std::fs::write(
        dir.join("bad.xml"),
        r#"<entry xmlns="http://www.tei-c.org/ns/1.0"><orth>x</orth><def>y</def><gramGrp/></entry>"#,
    )
    .unwrap();

    let r = run(dir, &["validate", "bad.xml"]);
    assert_eq!(r.code, 1);
    let rules: Vec<_> = r.stdout.lines().map(|l| l.split(' ').nth(1).unwrap()).collect();
    assert_eq!(rules, ["R1-SENSE-REQUIRED", "R2-NO-VOID-GRAMGRP", "R4-FORM-WRAPPER"]);

    // R2 is a warning, so filtering down to it leaves no error findings.
    let r = run(dir, &["validate", "--rules", "R2-NO-VOID-GRAMGRP", "bad.xml"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().count(), 1);

    let r = run(dir, &["validate", "--format", "json", "clergyman.tei.xml", "bad.xml"]);
    assert_eq!(r.code, 1);
    let json: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(json["clergyman.tei.xml"].as_array().unwrap().len(), 0);
    assert_eq!(json["bad.xml"].as_array().unwrap().len(), 3);

    let r = run(dir, &["validate", "clergyman.tei.xml", "bad.xml"]);
    assert!(r.stdout.lines().all(|l| l.starts_with("bad.xml: ")), "{}", r.stdout);
}

#[test]
fn roundtrip_reports_each_file() {
    let tmp = workspace();
    let dir = tmp.path();
    let r = run(
        dir,
        &[
            "roundtrip",
            "--from",
            "tei",
            "--via",
            "legacy-lmf",
            "clergyman.tei.xml",
            "nested.tei.xml",
        ],
    );
    assert_eq!(r.code, 1);
    let lines: Vec<_> = r.stdout.lines().collect();
    assert_eq!(lines[0], "clergyman.tei.xml: OK");
    assert!(lines[1].starts_with("nested.tei.xml: FAIL"), "{}", lines[1]);
    assert!(lines[1].contains("unrepresentable"));

    let r = run(
        dir,
        &[
            "roundtrip",
            "--from",
            "tei",
            "--via",
            "fs",
            "frame.tei.xml",
            "nested.tei.xml",
        ],
    );
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
}
