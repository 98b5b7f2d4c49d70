//! Command-line front end: ingest, stats, check, suggest, backbone and map.
//!
//! Exit status is 0 on success, 1 when `check` finds violations and 2 on any
//! input error (or on warnings under `--strict`). Diagnostics go to standard
//! error; reports go to `--out` or standard output.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{ArgAction, Parser, Subcommand, ValueEnum};

use ontoclean::check::check_all;
use ontoclean::meta::suggest_from_children;
use ontoclean::native::{read_native, write_native};
use ontoclean::report::{self, ReportFormat};
use ontoclean::restructure::{apply_mapping, extract_backbone};
use ontoclean::wordnet::{build_taxonomy, normalize_names, parse_prolog_db};
use ontoclean::{AnnotationSet, CorpusStats, Taxonomy, Warning};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Prolog,
    #[default]
    Native,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Read a taxonomy and write it in the native format
    Ingest {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Report corpus statistics
    Stats {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Report taxonomic violations; exits 1 if any are found
    Check {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// List annotations ruled out for a concept by its descendants
    Suggest {
        #[arg(long)]
        concept: String,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Write the backbone taxonomy (rigid concepts only)
    Backbone {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Apply the mapping directives and report the result per row
    Map {
        /// Append the cleaned tree to the text report
        #[arg(long)]
        tree: bool,
        /// Also write the cleaned taxonomy in the native format
        #[arg(long, value_name = "PATH")]
        cleaned: Option<PathBuf>,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
}

impl Command {
    fn inputs(&self) -> &[PathBuf] {
        match self {
            Command::Ingest { inputs }
            | Command::Stats { inputs }
            | Command::Check { inputs }
            | Command::Suggest { inputs, .. }
            | Command::Backbone { inputs }
            | Command::Map { inputs, .. } => inputs,
        }
    }
}

/// One invocation. For `--format prolog` the inputs are either a directory
/// holding `wn_s.pl`, `wn_hyp.pl` and (optionally) `wn_g.pl`, or those three
/// files in that order.
#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(name = "ontoclean", version, about = "Check and restructure noun taxonomies against meta-property annotations")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Native)]
    pub format: InputFormat,
    #[arg(long, global = true, value_name = "PATH")]
    pub annotations: Option<PathBuf>,
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "text", value_parser = parse_report)]
    pub report: ReportFormat,
    /// Keep concepts without a rigidity annotation in the backbone
    #[arg(
        long,
        global = true,
        action = ArgAction::Set,
        default_value_t = true,
        num_args = 0..=1,
        default_missing_value = "true",
        value_name = "BOOL"
    )]
    pub keep_unknown_rigidity: bool,
    /// Treat warnings as errors
    #[arg(long, global = true)]
    pub strict: bool,
}

fn parse_report(s: &str) -> Result<ReportFormat, String> {
    s.parse()
}

impl RunConfig {
    pub fn inputs(&self) -> &[PathBuf] {
        self.command.inputs()
    }
}

/// Parses `args` (program name first) and runs; clap usage errors exit 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}

/// Runs `config`, writing the report to `--out` or standard output.
pub fn run(config: &RunConfig) -> i32 {
    let mut stderr = io::stderr().lock();
    let (code, output) = execute(config, &mut stderr);
    let Some(output) = output else {
        return code;
    };
    let written = match &config.out {
        Some(path) => fs::write(path, &output).with_context(|| format!("{}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(&output).and_then(|_| stdout.flush()).context("standard output")
        }
    };
    match written {
        Ok(()) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_INPUT
        }
    }
}

/// Runs `config` and returns the exit status and the report bytes (absent
/// when the run failed). Diagnostics are written to `diagnostics`.
pub fn execute(config: &RunConfig, diagnostics: &mut dyn Write) -> (i32, Option<Vec<u8>>) {
    let mut warnings = Vec::new();
    let result = dispatch(config, &mut warnings);
    for w in &warnings {
        let _ = writeln!(diagnostics, "warning: {w}");
    }
    match result {
        Err(e) => {
            let _ = writeln!(diagnostics, "error: {e:#}");
            (EXIT_INPUT, None)
        }
        Ok(_) if config.strict && !warnings.is_empty() => {
            let _ = writeln!(
                diagnostics,
                "error: {} warning(s) with --strict",
                warnings.len()
            );
            (EXIT_INPUT, None)
        }
        Ok((code, output)) => (code, Some(output)),
    }
}

/// Warning tagged with the file it came from.
fn located(path: &Path, w: Warning) -> Warning {
    Warning {
        line: None,
        message: format!("{}: {w}", path.display()),
    }
}

struct Loaded {
    taxonomy: Taxonomy,
    stats: CorpusStats,
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(
        File::open(path).with_context(|| format!("{}", path.display()))?,
    ))
}

fn prolog_paths(inputs: &[PathBuf]) -> Result<(PathBuf, PathBuf, Option<PathBuf>)> {
    match inputs {
        [dir] if dir.is_dir() => {
            let gloss = dir.join("wn_g.pl");
            Ok((
                dir.join("wn_s.pl"),
                dir.join("wn_hyp.pl"),
                gloss.exists().then_some(gloss),
            ))
        }
        [s, hyp, g] => Ok((s.clone(), hyp.clone(), Some(g.clone()))),
        [s, hyp] => Ok((s.clone(), hyp.clone(), None)),
        _ => bail!("--format prolog takes a directory or the synset, hypernym and gloss files"),
    }
}

fn load_taxonomy(config: &RunConfig, warnings: &mut Vec<Warning>) -> Result<Loaded> {
    let inputs = config.inputs();
    match config.format {
        InputFormat::Native => {
            let [path] = inputs else {
                bail!("--format native takes exactly one input file");
            };
            let taxonomy = read_native(open(path)?).with_context(|| format!("{}", path.display()))?;
            let stats = CorpusStats::from_taxonomy(&taxonomy);
            Ok(Loaded { taxonomy, stats })
        }
        InputFormat::Prolog => {
            let (s, hyp, g) = prolog_paths(inputs)?;
            let glosses: Box<dyn io::BufRead> = match &g {
                Some(path) => Box::new(open(path)?),
                None => Box::new(io::empty()),
            };
            let db = parse_prolog_db(open(&s)?, open(&hyp)?, glosses)?;
            // the only warnings the reader raises concern hypernym pairs
            warnings.extend(db.warnings.into_iter().map(|w| located(&hyp, w)));
            let names = normalize_names(&db.records);
            warnings.extend(names.warnings.iter().cloned());
            let built = build_taxonomy(&db.records, &db.hypernyms, &names)?;
            warnings.extend(built.warnings);
            Ok(Loaded {
                taxonomy: built.taxonomy,
                stats: built.stats,
            })
        }
    }
}

fn load_annotations(config: &RunConfig, taxonomy: &Taxonomy, warnings: &mut Vec<Warning>) -> Result<AnnotationSet> {
    let Some(path) = &config.annotations else {
        return Ok(AnnotationSet::new());
    };
    let (set, parsed) = AnnotationSet::parse(open(path)?).with_context(|| format!("{}", path.display()))?;
    warnings.extend(parsed.into_iter().map(|w| located(path, w)));
    for name in set.unresolved_names(taxonomy) {
        warnings.push(located(path, Warning::new(format!("unknown concept {name}"))));
    }
    Ok(set)
}

fn dispatch(config: &RunConfig, warnings: &mut Vec<Warning>) -> Result<(i32, Vec<u8>)> {
    let loaded = load_taxonomy(config, warnings)?;
    let taxonomy = &loaded.taxonomy;
    let mut out = Vec::new();
    let mut code = EXIT_OK;
    match &config.command {
        Command::Ingest { .. } => write_native(taxonomy, &mut out)?,
        Command::Stats { .. } => report::write_stats(&loaded.stats, config.report, &mut out)?,
        Command::Check { .. } => {
            let annotations = load_annotations(config, taxonomy, warnings)?;
            let result = check_all(taxonomy, &annotations);
            report::write_check_report(&result, config.report, &mut out)?;
            if !result.is_clean() {
                code = EXIT_VIOLATIONS;
            }
        }
        Command::Suggest { concept, .. } => {
            let annotations = load_annotations(config, taxonomy, warnings)?;
            let id = taxonomy.require(concept)?;
            let suggestions = suggest_from_children(id, taxonomy, &annotations)?;
            report::write_suggestions(concept, &suggestions, config.report, &mut out)?;
        }
        Command::Backbone { .. } => {
            let annotations = load_annotations(config, taxonomy, warnings)?;
            let backbone = extract_backbone(taxonomy, &annotations, config.keep_unknown_rigidity);
            for removed in &backbone.removed {
                writeln!(out, "# removed {} {}", removed.name, removed.rigidity)?;
            }
            write_native(&backbone.taxonomy, &mut out)?;
        }
        Command::Map { tree, cleaned, .. } => {
            if *tree && config.report == ReportFormat::JsonLines {
                bail!("--tree needs the text report");
            }
            let annotations = load_annotations(config, taxonomy, warnings)?;
            let mapping = apply_mapping(taxonomy, &annotations)?;
            warnings.extend(mapping.warnings.iter().cloned());
            report::write_mapping_report(&mapping.report, config.report, &mut out)?;
            if *tree {
                writeln!(out, "# cleaned tree")?;
                report::write_tree(&mapping.taxonomy, &mut out)?;
            }
            let refused = config.strict && !warnings.is_empty();
            if let Some(path) = cleaned.as_ref().filter(|_| !refused) {
                let mut native = Vec::new();
                write_native(&mapping.taxonomy, &mut native)?;
                fs::write(path, native).with_context(|| format!("{}", path.display()))?;
            }
        }
    }
    Ok((code, out))
}
