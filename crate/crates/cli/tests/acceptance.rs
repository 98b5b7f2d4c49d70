//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.
//!
//! Criterion 4 checks the full noun database when `WORDNET_PROLOG_DIR` names a
//! directory holding `wn_s.pl`, `wn_hyp.pl` and `wn_g.pl`; otherwise it runs
//! on the bundled 20-synset corpus.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use clap::Parser;
use common::{oracle_violations, random_case, Graph};
use ontoclean::check::check_taxonomy;
use ontoclean::native::read_native;
use ontoclean::restructure::{apply_mapping, extract_backbone, Mapping};
use ontoclean::wordnet::{normalize_names, SynsetRecord};
use ontoclean::{effective_profile, AnnotationSet, MappingTarget, Rigidity, Taxonomy, ViolationKind};
use ontoclean_cli::{execute, RunConfig, EXIT_OK, EXIT_VIOLATIONS};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regex::Regex;

const SEEDS: u64 = 100;
const CHECK_BUDGET: Duration = Duration::from_secs(1);
const RANDOM_BUDGET: Duration = Duration::from_secs(5);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
/// Target, covered, rejected and imported columns of one table row.
type Row = (&'static str, &'static [&'static str], &'static [&'static str], &'static [&'static str]);

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name);
    path.to_str().unwrap().to_owned()
}

fn run_in_process(args: &[&str]) -> (i32, String, String) {
    let config = RunConfig::try_parse_from(std::iter::once("ontoclean").chain(args.iter().copied()))
        .expect("arguments parse");
    let mut diagnostics = Vec::new();
    let (code, out) = execute(&config, &mut diagnostics);
    (
        code,
        String::from_utf8(out.unwrap_or_default()).unwrap(),
        String::from_utf8(diagnostics).unwrap(),
    )
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn toplevel_violations() -> Outcome {
    let started = Instant::now();
    let (code, out, diag) = run_in_process(&["check", &fixture("toplevel.tsv"), "--annotations", &fixture("toplevel.ann")]);
    let elapsed = started.elapsed();
    ensure(code == EXIT_VIOLATIONS, || format!("exit {code}, diagnostics {diag:?}"))?;
    ensure(diag.is_empty(), || format!("diagnostics {diag:?}"))?;

    let line = Regex::new(ontoclean::report::VIOLATION_LINE).unwrap();
    let mut got = BTreeSet::new();
    for l in out.lines().filter(|l| !l.starts_with('#')) {
        let caps = line.captures(l).ok_or_else(|| format!("malformed line {l:?}"))?;
        got.insert((caps[1].to_owned(), caps[2].to_owned(), caps[3].to_owned()));
    }
    let person = "Person$Individual$Someone$Somebody$Mortal$Human$Soul";
    let agent = "Causal_Agent$Cause$Causal_Agency";
    let territory = "Territory$Dominion$Territorial_Dominion";
    let want: BTreeSet<(String, String, String)> = [
        ("RIGIDITY", person, agent),
        ("ROLE_OVER_TYPE", person, agent),
        ("INSTANCE_MIXING", "Fall_3", "Event_1"),
        ("INSTANCE_MIXING", "Macao", territory),
        ("INSTANCE_MIXING", "Palestine", territory),
        ("META_LEVEL_MIXING", "Attribute", "Abstraction_1"),
        ("META_LEVEL_MIXING", "Relation_1", "Abstraction_1"),
        ("META_LEVEL_MIXING", "Measure$Quantity$Amount$Quantum", "Abstraction_1"),
    ]
    .into_iter()
    .map(|(k, s, o)| (k.to_owned(), s.to_owned(), o.to_owned()))
    .collect();
    ensure(got == want, || {
        let extra: Vec<_> = got.difference(&want).collect();
        let missing: Vec<_> = want.difference(&got).collect();
        format!("extra {extra:?}, missing {missing:?}")
    })?;
    ensure(elapsed < CHECK_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{} violations in {elapsed:.2?}", got.len()))
}

fn checker_oracle() -> Outcome {
    let mut spent = Duration::ZERO;
    let mut total = 0;
    for seed in 0..SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let case = random_case(&mut rng, 200, 400);
        let started = Instant::now();
        let report = check_taxonomy(&case.taxonomy, &case.annotations);
        spent += started.elapsed();
        let mut got: Vec<_> = report
            .violations
            .iter()
            .map(|v| (v.kind.token().to_owned(), v.subject.clone(), v.object.clone().unwrap_or_default(), v.path.clone()))
            .collect();
        got.sort();
        ensure(got == oracle_violations(&case), || format!("seed {seed} differs from the oracle"))?;
        total += got.len();
    }
    ensure(spent < RANDOM_BUDGET, || format!("checker took {spent:?}"))?;
    Ok(format!("{SEEDS} seeds, {total} violations, checker {spent:.2?}"))
}

fn name_normalization() -> Outcome {
    let record = |id: u64, lemmas: &[&str]| SynsetRecord {
        synset_id: id,
        lemmas: lemmas.iter().map(|l| l.to_string()).collect(),
        gloss: None,
        topic: None,
    };
    let records = [
        record(1, &["equine", "equid"]),
        record(2, &["horse", "Equus_caballus"]),
        record(3, &["window"]),
        record(4, &["window", "windowpane"]),
        record(5, &["window"]),
    ];
    let names = normalize_names(&records);
    let got = [names.get(1), names.get(2), names.get(3)];
    let want = [Some("Equine$Equid"), Some("Horse$Equus_Caballus"), Some("Window_1")];
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("Equine$Equid Horse$Equus_Caballus Window_1".into())
}

fn stats_lines(dir: &str) -> Result<BTreeMap<String, usize>, String> {
    let (code, out, diag) = run_in_process(&["stats", "--format", "prolog", dir]);
    ensure(code == EXIT_OK, || format!("exit {code}: {diag}"))?;
    Ok(out
        .lines()
        .filter_map(|l| l.split_once('\t'))
        .map(|(k, v)| (k.to_owned(), v.parse().unwrap()))
        .collect())
}

fn corpus_statistics() -> Outcome {
    let (dir, want, label) = match std::env::var("WORDNET_PROLOG_DIR") {
        Ok(dir) => (dir, [66027, 95135, 82568, 12567], "full database"),
        Err(_) => (fixture("wn_mini"), [20, 43, 39, 4], "substitute: bundled 20-synset corpus"),
    };
    let stats = stats_lines(&dir)?;
    let got = ["noun_synsets", "nouns", "monosemous_nouns", "polysemous_nouns"].map(|k| stats.get(k).copied().unwrap_or(0));
    ensure(got == want, || format!("got {got:?}, want {want:?}"))?;
    Ok(format!("{label}, {got:?}"))
}

fn closure_by_name(t: &Taxonomy) -> BTreeSet<(String, String)> {
    let mut out = BTreeSet::new();
    for id in t.ids() {
        for a in t.ancestors(id).unwrap() {
            out.insert((t.name(id).to_owned(), t.name(a).to_owned()));
        }
    }
    out
}

fn backbone_properties() -> Outcome {
    let mut spent = Duration::ZERO;
    for seed in 0..SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let case = random_case(&mut rng, 200, 400);
        for keep_unknown in [true, false] {
            let started = Instant::now();
            let backbone = extract_backbone(&case.taxonomy, &case.annotations, keep_unknown);
            let recheck = check_taxonomy(&backbone.taxonomy, &case.annotations);
            spent += started.elapsed();
            let out = &backbone.taxonomy;
            for id in out.ids() {
                let p = effective_profile(id, out, &case.annotations).unwrap();
                ensure(p.rigidity != Rigidity::AntiRigid, || format!("seed {seed}: {} kept", out.name(id)))?;
            }
            ensure(
                recheck.count(ViolationKind::Rigidity) == 0 && recheck.count(ViolationKind::RoleOverType) == 0,
                || format!("seed {seed}: subsumption violations survive"),
            )?;

            let kept: BTreeSet<&str> = out.ids().map(|id| out.name(id)).collect();
            let g = Graph::new(case.names.len(), &case.edges);
            let mut want = BTreeSet::new();
            for c in 0..case.names.len() {
                if !kept.contains(case.names[c].as_str()) {
                    continue;
                }
                for a in g.reachable_up(c) {
                    if kept.contains(case.names[a].as_str()) {
                        want.insert((case.names[c].clone(), case.names[a].clone()));
                    }
                }
            }
            ensure(closure_by_name(out) == want, || format!("seed {seed}: reachability differs"))?;
        }
    }
    ensure(spent < RANDOM_BUDGET, || format!("took {spent:?}"))?;
    Ok(format!("{SEEDS} seeds x 2 policies, {spent:.2?}"))
}

fn load_mapping() -> Result<Mapping, String> {
    let taxonomy = read_native(BufReader::new(File::open(fixture("mapping.tsv")).unwrap())).map_err(|e| e.to_string())?;
    let (annotations, warnings) =
        AnnotationSet::parse(BufReader::new(File::open(fixture("mapping.ann")).unwrap())).map_err(|e| e.to_string())?;
    ensure(warnings.is_empty(), || format!("{warnings:?}"))?;
    apply_mapping(&taxonomy, &annotations).map_err(|e| e.to_string())
}

/// A listed name matches a concept name exactly or as its leading synonym,
/// ignoring case.
fn matches(listed: &str, name: &str) -> bool {
    let (listed, name) = (listed.to_lowercase(), name.to_lowercase());
    name == listed || name.strip_prefix(&listed).is_some_and(|rest| rest.starts_with('$'))
}

/// Every node under `root`, each with the names it answers to: its own and
/// those of the synsets it covers.
fn subtree(m: &Mapping, root: &str) -> Vec<Vec<String>> {
    let t = &m.taxonomy;
    let id = t.id_of(root).unwrap();
    t.descendants(id)
        .unwrap()
        .into_iter()
        .map(|d| {
            let mut names = vec![t.name(d).to_owned()];
            for (target, row) in &m.report.rows {
                if target.node_name() == t.name(d) {
                    names.extend(row.covered.iter().cloned());
                }
            }
            names
        })
        .collect()
}

fn compare_subtree(m: &Mapping, root: &str, listed: &[&str]) -> Result<(), String> {
    let nodes = subtree(m, root);
    let missing: Vec<&str> = listed
        .iter()
        .copied()
        .filter(|l| !nodes.iter().any(|names| names.iter().any(|n| matches(l, n))))
        .collect();
    let extra: Vec<&str> = nodes
        .iter()
        .filter(|names| !names.iter().any(|n| listed.iter().any(|l| matches(l, n))))
        .map(|names| names[0].as_str())
        .collect();
    ensure(missing.is_empty() && extra.is_empty(), || {
        format!("{root}: missing {missing:?}, unlisted {extra:?}")
    })
}

fn compare_row(m: &Mapping, target: &str, covered: &[&str], rejected: &[&str], imported: &[&str]) -> Result<(), String> {
    let row = m
        .report
        .row(&target.parse::<MappingTarget>().unwrap())
        .ok_or_else(|| format!("no row {target}"))?;
    let same = |got: Vec<&str>, want: &[&str]| {
        got.len() == want.len() && want.iter().all(|w| got.iter().any(|g| matches(w, g)))
    };
    let columns = [
        ("covered", row.covered.iter().map(String::as_str).collect::<Vec<_>>(), covered),
        ("rejected", row.rejected.iter().map(|(n, _)| n.as_str()).collect(), rejected),
        ("imported", row.imported.iter().map(|(n, _)| n.as_str()).collect(), imported),
    ];
    for (column, got, want) in columns {
        ensure(same(got.clone(), want), || format!("{target} {column}: got {got:?}, want {want:?}"))?;
    }
    ensure(row.untouched.is_empty(), || format!("{target} untouched {:?}", row.untouched))
}

fn mapping_reproduction() -> Outcome {
    let m = load_mapping()?;
    let mut failures = Vec::new();

    let rows: [Row; 9] = [
        ("FEATURE/Relevant_Part", &["part", "fragment"], &[], &["Edge_3", "Skin_4", "Paring$Parings"]),
        ("FEATURE/Dependent_Region", &[], &[], &["Opening_3", "Excavation$hole_in_the_Ground"]),
        ("ABSTRACTION/Abstract_Entity", &[], &[], &["Statement_1", "Cognition", "Arrangement_2", "Ownership_1"]),
        ("ABSTRACTION/Proposition", &["Proposition_1"], &[], &[]),
        ("ABSTRACTION/Set", &["set_5"], &[], &[]),
        ("ABSTRACTION/Quality_Space", &["Attribute"], &["Trait", "Ethos", "Inheritance"], &[]),
        ("ABSTRACTION/Quality_Space/Space", &["space_1"], &["Subspace"], &[]),
        (
            "ABSTRACTION/Quality_Space/Time",
            &["time_interval$interval"],
            &["Eternity", "Greenwich_Mean_Time", "Present", "Past", "Future"],
            &[],
        ),
        ("ABSTRACTION/Quality_Space/Color", &["chromatic_color"], &[], &[]),
    ];
    for (target, covered, rejected, imported) in rows {
        if let Err(e) = compare_row(&m, target, covered, rejected, imported) {
            failures.push(e);
        }
    }
    if !m.report.is_partition() {
        failures.push("report rows overlap".into());
    }

    let feature = ["Relevant_Part", "edge_3", "skin_4", "paring$parings", "Dependent_Region", "opening_3", "excavation$hole_in_the_ground"];
    let abstraction = [
        "Abstract_Entity",
        "cognition$knowledge",
        "structure",
        "statement_1",
        "proposition",
        "symbol",
        "set_5",
        "Quality_Space",
        "space_1",
        "time_1",
        "time_interval$interval",
        "chromatic_color",
    ];
    for (root, listed) in [("Feature", &feature[..]), ("Abstraction", &abstraction[..])] {
        if let Err(e) = compare_subtree(&m, root, listed) {
            failures.push(e);
        }
    }
    if failures.is_empty() {
        Ok("9 rows and both subtrees match".into())
    } else {
        Err(failures.join("; "))
    }
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_ontoclean");
    let (tsv, ann, t2, t2ann, mini) =
        (fixture("toplevel.tsv"), fixture("toplevel.ann"), fixture("mapping.tsv"), fixture("mapping.ann"), fixture("wn_mini"));
    let commands: Vec<Vec<&str>> = vec![
        vec!["ingest", "--format", "prolog", &mini],
        vec!["stats", "--format", "prolog", &mini],
        vec!["stats", "--report", "jsonl", &tsv],
        vec!["check", &tsv, "--annotations", &ann],
        vec!["check", &t2, "--annotations", &ann, "--report", "jsonl"],
        vec!["suggest", "--concept", "Causal_Agent$Cause$Causal_Agency", &tsv, "--annotations", &ann],
        vec!["backbone", &tsv, "--annotations", &ann],
        vec!["backbone", &tsv, "--annotations", &ann, "--keep-unknown-rigidity=false"],
        vec!["map", &t2, "--annotations", &t2ann],
        vec!["map", &t2, "--annotations", &t2ann, "--tree"],
        vec!["map", &t2, "--annotations", &t2ann, "--report", "jsonl"],
    ];
    for args in &commands {
        let first = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        let second = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        ensure(first.status.code().is_some_and(|c| c < 2), || {
            format!("{args:?} failed: {}", String::from_utf8_lossy(&first.stderr))
        })?;
        ensure(first.status == second.status && first.stdout == second.stdout, || {
            format!("{args:?} differs between runs")
        })?;
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let outputs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let cleaned = dir.path().join(format!("cleaned{i}.tsv"));
            Command::new(bin)
                .args(["map", &t2, "--annotations", &t2ann, "--cleaned", cleaned.to_str().unwrap()])
                .output()
                .unwrap();
            std::fs::read(cleaned).unwrap()
        })
        .collect();
    ensure(outputs[0] == outputs[1], || "cleaned taxonomy differs between runs".into())?;
    Ok(format!("{} commands run twice", commands.len() + 1))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("top-level violations", toplevel_violations),
        ("checker-oracle equivalence", checker_oracle),
        ("name normalization", name_normalization),
        ("corpus statistics", corpus_statistics),
        ("backbone properties", backbone_properties),
        ("mapping reproduction", mapping_reproduction),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        match criterion() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
