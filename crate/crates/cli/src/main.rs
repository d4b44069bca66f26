//! `germcov`: batch front end over the germ-cover library. Every command
//! prints one JSON document on stdout. Exit status is 0 on success, 1 when
//! the input is well formed but fails a domain check, and 2 when the input
//! cannot be parsed.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use germcov::catalog::{
    graphs_isomorphic, mumford_presentation, resolution_graph, simplified_presentation,
    SingularityType, VertexKind,
};
use germcov::cover::{
    beta, center_subgroup, construct_d4_from_belyi, enumerate_covers, verify_covers,
    verify_theorem2, BetaDescriptor, CenterData, Check, GermCover, SuiteReport,
};
use germcov::dessin::{classify, enumerate_belyi, genus, power_map, BelyiClass, BelyiTriple};
use germcov::fpgroup::{abelianization, hom_count};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "germcov",
    version,
    about = "Finite covers of ADE curve germs and their Belyi maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the weighted resolution graph of a singularity type.
    Graph {
        #[arg(long = "type")]
        singularity: SingularityType,
    },
    /// Print a presentation of the local fundamental group.
    Presentation {
        #[arg(long = "type")]
        singularity: SingularityType,
        #[arg(long, value_enum, default_value_t = Form::Simplified)]
        form: Form,
    },
    /// List covers of a given degree up to relabelling of sheets.
    EnumerateCovers {
        #[arg(long = "type")]
        singularity: SingularityType,
        #[arg(long)]
        degree: usize,
        /// Drop covers whose exceptional curve upstairs has positive genus.
        #[arg(long)]
        rational_only: bool,
    },
    /// Compute the Belyi map attached to a cover.
    Beta {
        /// Cover JSON file, or `-` for stdin.
        #[arg(long)]
        cover: PathBuf,
        /// Fail when the exceptional curve upstairs is not rational.
        #[arg(long)]
        strict: bool,
    },
    /// Build the D4 cover of degree n² realising a genus-0 Belyi triple.
    ConstructD4 {
        /// Dessin JSON file, or `-` for stdin.
        #[arg(long)]
        dessin: PathBuf,
    },
    /// List Belyi triples of a given degree up to relabelling.
    EnumerateDessins {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        genus0_only: bool,
        /// Keep only triples with three nontrivial permutations.
        #[arg(long)]
        strict_bel3: bool,
    },
    /// Run a verification suite and report every violation.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Mumford,
    Simplified,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Suite {
    /// β has degree dividing d and induces an epimorphism.
    Theorem2,
    /// Every structural check on every cover.
    Structure,
    /// Mumford and simplified presentations agree on invariants.
    Presentations,
    /// Resolution graphs are pairwise distinct trees.
    Catalog,
    /// Riemann–Hurwitz consistency of enumerated triples.
    Belyi,
}

/// Largest type index the suites sweep over.
const SUITE_MAX_INDEX: u32 = 9;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn domain(e: impl std::fmt::Display) -> Self {
        Self {
            code: 1,
            message: e.to_string(),
        }
    }

    fn input(e: impl std::fmt::Display) -> Self {
        Self {
            code: 2,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(value) => {
            emit(&value);
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("germcov: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Writes `value` to stdout. A closed pipe is not an error.
fn emit(value: &Value) {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|()| out.flush());
}

fn to_json(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Graph { singularity } => Ok(to_json(resolution_graph(singularity))),
        Command::Presentation { singularity, form } => {
            let p = match form {
                Form::Mumford => {
                    mumford_presentation(&resolution_graph(singularity)).map_err(Failure::domain)?
                }
                Form::Simplified => simplified_presentation(singularity),
            };
            Ok(to_json(p))
        }
        Command::EnumerateCovers {
            singularity,
            degree,
            rational_only,
        } => {
            let covers =
                enumerate_covers(singularity, degree, rational_only).map_err(Failure::domain)?;
            let entries = covers
                .iter()
                .map(describe_cover)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Value::Array(entries))
        }
        Command::Beta { cover, strict } => {
            let c: GermCover = read_json(&cover)?;
            Ok(to_json(beta(&c, strict).map_err(Failure::domain)?))
        }
        Command::ConstructD4 { dessin } => {
            let t: BelyiTriple = read_json(&dessin)?;
            Ok(to_json(
                construct_d4_from_belyi(&t).map_err(Failure::domain)?,
            ))
        }
        Command::EnumerateDessins {
            degree,
            genus0_only,
            strict_bel3,
        } => Ok(to_json(
            enumerate_belyi(degree, genus0_only, strict_bel3).map_err(Failure::domain)?,
        )),
        Command::Verify { suite, max_degree } => verify(suite, max_degree),
    }
}

#[derive(Serialize)]
struct CoverEntry<'a> {
    cover: &'a GermCover,
    center: CenterData,
    beta: BetaDescriptor,
}

fn describe_cover(c: &GermCover) -> Outcome {
    Ok(to_json(CoverEntry {
        cover: c,
        center: center_subgroup(c).map_err(Failure::domain)?,
        beta: beta(c, false).map_err(Failure::domain)?,
    }))
}

fn verify(suite: Suite, max_degree: usize) -> Outcome {
    let (passed, results) = match suite {
        Suite::Theorem2 => cover_suite(max_degree, verify_theorem2)?,
        Suite::Structure => cover_suite(max_degree, |t, d| verify_covers(t, d, &Check::ALL))?,
        Suite::Presentations => presentations_suite(max_degree)?,
        Suite::Catalog => catalog_suite(),
        Suite::Belyi => belyi_suite(max_degree)?,
    };
    let report = json!({
        "suite": to_json(suite),
        "max_degree": max_degree,
        "passed": passed,
        "results": results,
    });
    if passed {
        Ok(report)
    } else {
        emit(&report);
        Err(Failure::domain("verification failed"))
    }
}

fn cover_suite(
    max_degree: usize,
    check: impl Fn(SingularityType, usize) -> germcov::Result<SuiteReport>,
) -> Result<(bool, Vec<Value>), Failure> {
    let mut results = Vec::new();
    let mut passed = true;
    for t in SingularityType::all_up_to(SUITE_MAX_INDEX) {
        for d in 1..=max_degree {
            let r = check(t, d).map_err(Failure::domain)?;
            passed &= r.passed();
            results.push(to_json(r));
        }
    }
    Ok((passed, results))
}

fn presentations_suite(max_degree: usize) -> Result<(bool, Vec<Value>), Failure> {
    let mut results = Vec::new();
    let mut passed = true;
    for t in SingularityType::all_up_to(SUITE_MAX_INDEX) {
        let mumford = mumford_presentation(&resolution_graph(t)).map_err(Failure::domain)?;
        let simple = simplified_presentation(t);
        let am = abelianization(&mumford).map_err(Failure::domain)?;
        let as_ = abelianization(&simple).map_err(Failure::domain)?;
        let mut counts = Vec::new();
        let mut ok = am == as_ && am.free_rank == t.branch_count();
        for d in 2..=max_degree {
            let m = hom_count(&mumford, d).map_err(Failure::domain)?;
            let s = hom_count(&simple, d).map_err(Failure::domain)?;
            ok &= m == s;
            counts.push(json!({"degree": d, "mumford": m, "simplified": s}));
        }
        passed &= ok;
        results.push(json!({
            "singularity": t,
            "passed": ok,
            "abelianization": am.to_string(),
            "hom_counts": counts,
        }));
    }
    Ok((passed, results))
}

fn catalog_suite() -> (bool, Vec<Value>) {
    let types = SingularityType::all_up_to(12);
    let graphs: Vec<_> = types.iter().map(|&t| resolution_graph(t)).collect();
    let mut results = Vec::new();
    let mut passed = true;
    for (i, (t, g)) in types.iter().zip(&graphs).enumerate() {
        let trivalent: Vec<_> = g
            .vertices
            .iter()
            .filter(|v| g.valency(&v.name) == 3)
            .collect();
        let star_ok = !t.has_trivalent_vertex()
            || (trivalent.len() == 1
                && trivalent[0].weight == -1
                && trivalent[0].kind == VertexKind::Exceptional);
        let twins: Vec<String> = types
            .iter()
            .zip(&graphs)
            .enumerate()
            .filter(|&(j, (_, h))| j != i && graphs_isomorphic(g, h))
            .map(|(_, (u, _))| u.to_string())
            .collect();
        let ok = g.is_tree() && g.validate().is_ok() && star_ok && twins.is_empty();
        passed &= ok;
        results.push(json!({
            "singularity": t,
            "passed": ok,
            "tree": g.is_tree(),
            "single_trivalent_minus_one": star_ok,
            "isomorphic_to": twins,
        }));
    }
    (passed, results)
}

fn belyi_suite(max_degree: usize) -> Result<(bool, Vec<Value>), Failure> {
    let mut results = Vec::new();
    let mut passed = true;
    for n in 1..=max_degree {
        let classes = enumerate_belyi(n, false, false).map_err(Failure::domain)?;
        let mut bad = Vec::new();
        for c in &classes {
            let k: usize = c.cycle_types.iter().map(|ct| ct.count()).sum();
            if (c.genus == 0) != (k == n + 2) {
                bad.push(to_json(&c.canonical));
            }
        }
        let p = power_map(n);
        let power_ok = genus(&p) == Ok(0) && classify(&p) == BelyiClass::Bel2;
        let ok = bad.is_empty() && power_ok;
        passed &= ok;
        results.push(json!({
            "degree": n,
            "passed": ok,
            "classes": classes.len(),
            "genus0": classes.iter().filter(|c| c.genus == 0).count(),
            "violations": bad,
            "power_map_ok": power_ok,
        }));
    }
    Ok((passed, results))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from([
            "germcov",
            "enumerate-covers",
            "--type",
            "E8",
            "--degree",
            "3",
            "--rational-only",
        ])
        .unwrap();
        assert!(matches!(
            cli.command,
            Command::EnumerateCovers {
                degree: 3,
                rational_only: true,
                ..
            }
        ));
        assert!(Cli::try_parse_from(["germcov", "graph", "--type", "E9"]).is_err());
    }

    #[test]
    fn catalog_suite_passes() {
        let (passed, results) = catalog_suite();
        assert!(passed);
        assert_eq!(results.len(), SingularityType::all_up_to(12).len());
    }
}
