//! `lexicrosswalk` — convert, validate and round-trip lexicon documents.
//!
//! Exit codes: 0 success, 1 error findings or unrepresentable content,
//! 2 usage or I/O error, 3 unreadable input (malformed XML or wrong dialect).

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use lexicrosswalk::finding::{render_json, render_text};
use lexicrosswalk::validator::is_known_rule;
use lexicrosswalk::{
    convert, parse_xml, roundtrip_check, validate_tei_document, ConvertError, ConvertOptions, Dialect, Error,
    GrammarStyle,
};

const PREFIXES_ENV: &str = "LEXICROSSWALK_PREFIXES";

#[derive(Parser)]
#[command(
    name = "lexicrosswalk",
    version,
    about = "Crosswalks between LMF and TEI lexicon serializations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert documents from one dialect to another.
    Convert {
        #[arg(long, value_parser = parse_dialect)]
        from: Dialect,
        #[arg(long, value_parser = parse_dialect)]
        to: Dialect,
        #[arg(long, value_enum, default_value = "gramgrp")]
        grammar_style: StyleArg,
        /// Emit dcr:datcat / dcr:valueDatcat registry references.
        #[arg(long)]
        dcr: bool,
        /// Wrap TEI output in a minimal TEI document with a stub header.
        #[arg(long)]
        wrap_tei: bool,
        /// Read TEI glosses in a foreign language as translations.
        #[arg(long)]
        glosses_as_translations: bool,
        /// Output file ("-" for stdout), or a directory when converting several inputs.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Check TEI documents against the compliance rules.
    Validate {
        /// Comma-separated rule ids to check (default: all).
        #[arg(long, value_delimiter = ',')]
        rules: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Check that a dialect preserves the content of documents.
    Roundtrip {
        #[arg(long, value_parser = parse_dialect)]
        from: Dialect,
        #[arg(long, value_parser = parse_dialect)]
        via: Dialect,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Gramgrp,
    Fs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

fn parse_dialect(s: &str) -> Result<Dialect, String> {
    s.parse()
        .map_err(|e: lexicrosswalk::crosswalk::UnknownDialect| e.to_string())
}

/// Exit status of one input; the process exits with the maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Ok = 0,
    Findings = 1,
    Usage = 2,
    Unreadable = 3,
}

/// What one worker produced: stderr text, stdout text, and its status.
struct Outcome {
    status: Status,
    stdout: Vec<u8>,
    stderr: String,
}

impl Outcome {
    fn new(status: Status) -> Self {
        Outcome {
            status,
            stdout: Vec::new(),
            stderr: String::new(),
        }
    }

    fn fail(status: Status, message: String) -> Self {
        let mut o = Outcome::new(status);
        o.stderr = format!("error: {message}\n");
        o
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Usage as u8 } else { 0 });
        }
    };
    let prefixes = match std::env::var(PREFIXES_ENV) {
        Ok(spec) => match parse_prefixes(&spec) {
            Ok(p) => p,
            Err(e) => return usage(&e),
        },
        Err(_) => BTreeMap::new(),
    };
    let outcomes = match cli.command {
        Command::Convert {
            from,
            to,
            grammar_style,
            dcr,
            wrap_tei,
            glosses_as_translations,
            out,
            inputs,
        } => {
            let opts = ConvertOptions {
                grammar_style: match grammar_style {
                    StyleArg::Gramgrp => GrammarStyle::GramGrp,
                    StyleArg::Fs => GrammarStyle::FeatureStructure,
                },
                emit_dcr_attrs: dcr,
                wrap_tei,
                glosses_as_translations,
                prefixes,
                ..ConvertOptions::default()
            };
            let targets = match output_targets(&inputs, out.as_deref(), to) {
                Ok(t) => t,
                Err(e) => return usage(&e),
            };
            run_parallel(&inputs, |i, input| convert_one(input, &targets[i], from, to, &opts))
        }
        Command::Validate { rules, format, inputs } => {
            if let Some(bad) = rules.iter().find(|r| !is_known_rule(r)) {
                return usage(&format!("unknown rule id '{bad}'"));
            }
            let rules: Vec<&str> = rules.iter().map(String::as_str).collect();
            let enabled = (!rules.is_empty()).then_some(rules.as_slice());
            let outcomes = run_parallel(&inputs, |_, input| {
                validate_one(input, enabled, format, inputs.len() > 1)
            });
            if format == FormatArg::Json && inputs.len() > 1 {
                return finish(merge_json(&inputs, outcomes));
            }
            outcomes
        }
        Command::Roundtrip { from, via, inputs } => run_parallel(&inputs, |_, input| roundtrip_one(input, from, via)),
    };
    finish(outcomes)
}

fn usage(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(Status::Usage as u8)
}

/// Runs `job` over the inputs concurrently; results keep argument order.
fn run_parallel<F>(inputs: &[PathBuf], job: F) -> Vec<Outcome>
where
    F: Fn(usize, &Path) -> Outcome + Sync,
{
    inputs.par_iter().enumerate().map(|(i, p)| job(i, p)).collect()
}

fn finish(outcomes: Vec<Outcome>) -> ExitCode {
    let stdout = io::stdout();
    let mut stdout = stdout.lock();
    let mut status = Status::Ok;
    for o in outcomes {
        eprint!("{}", o.stderr);
        if stdout.write_all(&o.stdout).is_err() {
            status = Status::Usage;
        }
        status = status.max(o.status);
    }
    let _ = stdout.flush();
    ExitCode::from(status as u8)
}

/// `nsUri=prefix` pairs separated by commas or whitespace.
fn parse_prefixes(spec: &str) -> Result<BTreeMap<String, String>, String> {
    spec.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|pair| match pair.rsplit_once('=') {
            Some((uri, prefix)) if !uri.is_empty() && !prefix.is_empty() => Ok((uri.to_string(), prefix.to_string())),
            _ => Err(format!("{PREFIXES_ENV}: expected nsUri=prefix, got '{pair}'")),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// convert

enum Target {
    Stdout,
    File(PathBuf),
}

fn output_targets(inputs: &[PathBuf], out: Option<&Path>, to: Dialect) -> Result<Vec<Target>, String> {
    match out {
        Some(p) if p == Path::new("-") => {
            if inputs.len() > 1 {
                return Err("--out - accepts a single input".into());
            }
            Ok(vec![Target::Stdout])
        }
        Some(p) if inputs.len() == 1 && !p.is_dir() => Ok(vec![Target::File(p.to_path_buf())]),
        Some(dir) => {
            if !dir.is_dir() {
                return Err(format!(
                    "--out {} must be a directory for several inputs",
                    dir.display()
                ));
            }
            Ok(inputs
                .iter()
                .map(|i| Target::File(dir.join(derived_path(i, to).file_name().unwrap_or_default())))
                .collect())
        }
        None => Ok(inputs.iter().map(|i| Target::File(derived_path(i, to))).collect()),
    }
}

/// `name.mixed.xml` → `name.tei.xml`; when that would overwrite the input,
/// `name.tei.normalized.xml`.
fn derived_path(input: &Path, to: Dialect) -> PathBuf {
    let file = input.file_name().and_then(|f| f.to_str()).unwrap_or("output");
    let mut stem = file.strip_suffix(".xml").unwrap_or(file);
    if let Some((base, last)) = stem.rsplit_once('.') {
        if last.parse::<Dialect>().is_ok() {
            stem = base;
        }
    }
    let candidate = input.with_file_name(format!("{stem}.{to}.xml"));
    if candidate == input {
        input.with_file_name(format!("{stem}.{to}.normalized.xml"))
    } else {
        candidate
    }
}

fn read_input(input: &Path) -> Result<Vec<u8>, Outcome> {
    fs::read(input).map_err(|e| Outcome::fail(Status::Usage, format!("{}: {e}", input.display())))
}

fn read_status(e: &Error) -> Status {
    match e {
        Error::Xml(_) | Error::Dialect { .. } | Error::Structure { .. } | Error::Mapping { .. } => Status::Unreadable,
        Error::Unrepresentable { .. } => Status::Findings,
    }
}

fn convert_one(input: &Path, target: &Target, from: Dialect, to: Dialect, opts: &ConvertOptions) -> Outcome {
    let bytes = match read_input(input) {
        Ok(b) => b,
        Err(o) => return o,
    };
    let name = input.display();
    match convert(&bytes, from, to, opts) {
        Ok(converted) => {
            let report = &converted.report;
            let mut o = Outcome::new(if report.ok { Status::Ok } else { Status::Findings });
            for f in &report.parse_findings {
                o.stderr.push_str(&format!("{name}: {f}\n"));
            }
            for note in &report.emit_loss_notes {
                o.stderr.push_str(&format!("{name}: NOTE {note}\n"));
            }
            match target {
                Target::Stdout => o.stdout = converted.output,
                Target::File(path) => {
                    if let Err(e) = fs::write(path, &converted.output) {
                        return Outcome::fail(Status::Usage, format!("{}: {e}", path.display()));
                    }
                    o.stderr
                        .push_str(&format!("{name}: {from} -> {to}: wrote {}\n", path.display()));
                }
            }
            o
        }
        Err(ConvertError::Read { source, .. }) => Outcome::fail(read_status(&source), format!("{name}: {source}")),
        Err(ConvertError::Write { source, report }) => {
            let mut o = Outcome::fail(Status::Findings, format!("{name}: {source}"));
            for f in &report.parse_findings {
                o.stderr.push_str(&format!("{name}: {f}\n"));
            }
            o
        }
    }
}

// ---------------------------------------------------------------------------
// validate

fn validate_one(input: &Path, enabled: Option<&[&str]>, format: FormatArg, prefix_lines: bool) -> Outcome {
    let bytes = match read_input(input) {
        Ok(b) => b,
        Err(o) => return o,
    };
    let doc = match parse_xml(&bytes) {
        Ok(doc) => doc,
        Err(e) => return Outcome::fail(Status::Unreadable, format!("{}: {e}", input.display())),
    };
    let findings = validate_tei_document(&doc, enabled);
    let mut o = Outcome::new(if findings.iter().any(|f| f.is_error()) {
        Status::Findings
    } else {
        Status::Ok
    });
    let body = match format {
        FormatArg::Json => render_json(&findings) + "\n",
        FormatArg::Text if prefix_lines => findings.iter().map(|f| format!("{}: {f}\n", input.display())).collect(),
        FormatArg::Text => render_text(&findings),
    };
    o.stdout = body.into_bytes();
    o
}

/// Several JSON reports become one object keyed by input path.
fn merge_json(inputs: &[PathBuf], outcomes: Vec<Outcome>) -> Vec<Outcome> {
    let mut merged = serde_json::Map::new();
    let mut rest = Outcome::new(Status::Ok);
    for (input, o) in inputs.iter().zip(outcomes) {
        rest.status = rest.status.max(o.status);
        rest.stderr.push_str(&o.stderr);
        if let Ok(value) = serde_json::from_slice::<serde_json::Value>(&o.stdout) {
            merged.insert(input.display().to_string(), value);
        }
    }
    let json = serde_json::to_string_pretty(&serde_json::Value::Object(merged)).expect("JSON values serialize");
    rest.stdout = (json + "\n").into_bytes();
    vec![rest]
}

// ---------------------------------------------------------------------------
// roundtrip

fn roundtrip_one(input: &Path, from: Dialect, via: Dialect) -> Outcome {
    let bytes = match read_input(input) {
        Ok(b) => b,
        Err(o) => return o,
    };
    let name = input.display();
    match roundtrip_check(&bytes, from, via) {
        Ok(rt) if rt.ok => {
            let mut o = Outcome::new(Status::Ok);
            o.stdout = format!("{name}: OK\n").into_bytes();
            o
        }
        Ok(rt) => {
            let mut o = Outcome::new(Status::Findings);
            let why = rt.diagnosis.unwrap_or_default();
            o.stdout = format!("{name}: FAIL via {via}: {why}\n").into_bytes();
            o
        }
        Err(e) => Outcome::fail(read_status(&e), format!("{name}: {e}")),
    }
}
