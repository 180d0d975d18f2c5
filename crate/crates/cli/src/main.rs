use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use orthopos::h_elements::{verify_h_relations, verify_h_well_defined, ChainBudget, CHAIN_POLICY};
use orthopos::orbit::{
    d_family_seed, def_violation, is_admissible_moves, max_moved, moves_violation, seed_from_table,
    seed_rows, variant_of,
};
use orthopos::poset::{verify_closure_in_compare, verify_order_axioms};
use orthopos::{
    build_h_table, build_poset, enumerate_orbit, parse_root_list, tables, verify_braid,
    DiagramType, Error, OrbitData, OrthoSet, Representation, RootSystem,
};

const OUT_DIR_ENV: &str = "ORTHOPOSET_OUT_DIR";

/// Orbits of orthogonal root sets in simply laced Weyl groups, their
/// monoidal posets, and the Artin-monoid representation on them.
#[derive(Parser)]
#[command(name = "orthopos", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the artifact here instead of stdout. Relative paths are taken
    /// from $ORTHOPOSET_OUT_DIR when it is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for the parallel verifiers (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List the seed classes of a diagram, or dump one orbit.
    Orbits(SeedArgs),
    /// Decide admissibility of an orbit by both criteria.
    Admissible(SeedArgs),
    /// Build the monoidal poset of an admissible orbit.
    Poset {
        #[command(flatten)]
        seed: SeedArgs,
        /// Also run the order-axiom suite and the closure check.
        #[arg(long)]
        check: bool,
    },
    /// Compute the h-table and verify well-definedness and relations.
    HTable {
        #[command(flatten)]
        seed: SeedArgs,
        /// Sampled chains per (member, node) on orbits too large to enumerate.
        #[arg(long, default_value_t = ChainBudget::default().samples)]
        budget: usize,
    },
    /// Check the braid relations of the representation on every basis vector.
    VerifyBraid {
        #[command(flatten)]
        seed: SeedArgs,
        /// Also write every generator matrix as JSON to this file.
        #[arg(long)]
        emit_matrices: Option<PathBuf>,
    },
    /// Recompute every seed class and diff against the classification fixture.
    Tables {
        /// Restrict to these diagrams (default: A1..A8, D4..D8, E6..E8).
        #[arg(long = "type", value_delimiter = ',')]
        types: Vec<String>,
    },
}

#[derive(Args, Clone)]
struct SeedArgs {
    /// Diagram type, e.g. A5, D6, E8.
    #[arg(long = "type")]
    dtype: String,
    /// Size of the seed set B (selects a seed class).
    #[arg(long, conflicts_with = "roots")]
    size: Option<usize>,
    /// Class among seeds of equal size (type D: 0 single roots, 1 the
    /// half-spin class, 2 paired roots). Without it, commands that need an
    /// admissible orbit take the first admissible class of the given size,
    /// and the others take class 0.
    #[arg(long, conflicts_with = "pairs")]
    variant: Option<usize>,
    /// Type D only: number of ε_i ± ε_{i+1} pairs in a mixed seed of the
    /// given size.
    #[arg(long)]
    pairs: Option<usize>,
    /// Explicit seed, e.g. "a1+a2,a4" or "e1+e2,e3-e4".
    #[arg(long)]
    roots: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

/// A failure mapped to an exit status.
enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedDiagram(_)
            | Error::DimensionMismatch { .. }
            | Error::NotARoot { .. }
            | Error::NotOrthogonal(_)
            | Error::InvalidSeed(_)
            | Error::UnknownTableRow { .. }
            | Error::OrbitTooLarge(_)
            | Error::NotAdmissible
            | Error::Parse(_) => Failure::Usage(e.into()),
            _ => Failure::Runtime(e.into()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(anyhow!(msg.into()))
}

struct Outcome {
    artifact: String,
    default_name: String,
    passed: bool,
    summary: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Failure::Runtime(e.into()))?;
    }
    let outcome = match &cli.command {
        Command::Orbits(s) => cmd_orbits(s, cli.format)?,
        Command::Admissible(s) => cmd_admissible(s, cli.format)?,
        Command::Poset { seed, check } => cmd_poset(seed, *check, cli.format)?,
        Command::HTable { seed, budget } => cmd_h_table(seed, *budget, cli.format)?,
        Command::VerifyBraid {
            seed,
            emit_matrices,
        } => cmd_verify_braid(seed, emit_matrices.as_deref(), cli.format)?,
        Command::Tables { types } => cmd_tables(types, cli.format)?,
    };
    let target = match &cli.out {
        Some(p) => Some(resolve_out(p)),
        None => std::env::var_os(OUT_DIR_ENV).map(|d| PathBuf::from(d).join(&outcome.default_name)),
    };
    match target {
        Some(path) => {
            write_file(&path, &outcome.artifact)?;
            if let Some(s) = &outcome.summary {
                eprint!("{s}");
            }
            eprintln!("wrote {}", path.display());
        }
        None => {
            print!("{}", outcome.artifact);
            if let Some(s) = &outcome.summary {
                eprint!("{s}");
            }
        }
    }
    Ok(outcome.passed)
}

fn resolve_out(p: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if p.is_relative() => PathBuf::from(dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn reject_dot(format: Format, command: &str) -> Result<(), Failure> {
    if format == Format::Dot {
        return Err(usage(format!(
            "--format dot is only available for `poset`, not `{command}`"
        )));
    }
    Ok(())
}

fn parse_type(s: &str) -> Result<DiagramType, Failure> {
    Ok(s.parse::<DiagramType>()?)
}

struct Selected {
    orbit: OrbitData,
    label: String,
    file_stem: String,
}

fn select(s: &SeedArgs, want_admissible: bool) -> Result<Selected, Failure> {
    let dt = parse_type(&s.dtype)?;
    let rs = Arc::new(RootSystem::new(dt));
    let (roots, label, stem) = match (&s.roots, s.size, s.pairs) {
        (Some(text), _, None) => {
            let roots = parse_root_list(&rs, text)?;
            if roots.is_empty() {
                return Err(usage("--roots needs at least one root"));
            }
            let label = format!("{dt} B = {{{}}}", text.trim());
            (roots, label, format!("{dt}-roots"))
        }
        (Some(_), _, Some(_)) => return Err(usage("--pairs cannot be combined with --roots")),
        (None, Some(size), Some(k)) => {
            if k > size {
                return Err(usage(format!("no {dt} seed of size {size} with {k} pairs")));
            }
            let roots = d_family_seed(&rs, size - k, k)?;
            (
                roots,
                format!("{dt} |B|={size} pairs={k}"),
                format!("{dt}-{size}-p{k}"),
            )
        }
        (None, Some(size), None) => {
            let variant = match s.variant {
                Some(v) => v,
                None if want_admissible => first_admissible_variant(&rs, size)?,
                None => 0,
            };
            let row = seed_from_table(&rs, size, variant)?;
            (
                row.roots.clone(),
                row.label(),
                format!("{dt}-{size}-v{variant}"),
            )
        }
        (None, None, _) => return Err(usage("give a seed with --size or --roots")),
    };
    let seed = OrthoSet::from_roots(&rs, &roots)?;
    Ok(Selected {
        orbit: enumerate_orbit(rs, seed)?,
        label,
        file_stem: stem,
    })
}

fn first_admissible_variant(rs: &Arc<RootSystem>, size: usize) -> Result<usize, Failure> {
    for row in seed_rows(rs).iter().filter(|r| r.size == size) {
        if enumerate_orbit(rs.clone(), row.orthoset(rs)?)?.admissible() {
            return Ok(variant_of(row));
        }
    }
    Ok(0)
}

fn ext(format: Format) -> &'static str {
    match format {
        Format::Json => "json",
        Format::Dot => "dot",
        Format::Text => "txt",
    }
}

fn cmd_orbits(s: &SeedArgs, format: Format) -> Result<Outcome, Failure> {
    reject_dot(format, "orbits")?;
    if s.size.is_none() && s.roots.is_none() {
        let dt = parse_type(&s.dtype)?;
        let rs = Arc::new(RootSystem::new(dt));
        let mut rows = Vec::new();
        for row in seed_rows(&rs) {
            let orbit = enumerate_orbit(rs.clone(), row.orthoset(&rs)?)?;
            rows.push(json!({
                "size": row.size,
                "variant": variant_of(&row),
                "seed": row.roots.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "orbit_size": orbit.len(),
                "admissible": orbit.admissible(),
            }));
        }
        let artifact = match format {
            Format::Json => json_text(&json!({ "diagram": dt.to_string(), "classes": rows })),
            _ => {
                let mut t = format!("{dt}: {} seed classes\n", rows.len());
                for r in &rows {
                    t.push_str(&format!(
                        "|B|={} v{}  orbit {:>7}  {}  {{{}}}\n",
                        r["size"],
                        r["variant"],
                        r["orbit_size"].as_u64().unwrap_or(0),
                        if r["admissible"] == true {
                            "admissible"
                        } else {
                            "not admissible"
                        },
                        r["seed"]
                            .as_array()
                            .expect("seed list")
                            .iter()
                            .map(|v| v.as_str().expect("root literal"))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ));
                }
                t
            }
        };
        return Ok(Outcome {
            artifact,
            default_name: format!("orbits-{dt}.{}", ext(format)),
            passed: true,
            summary: None,
        });
    }
    let sel = select(s, false)?;
    let rs = sel.orbit.root_system();
    let artifact = match format {
        Format::Json => json_text(&sel.orbit.to_json()),
        _ => {
            let mut t = format!(
                "{}: {} members, admissible: {}\n",
                sel.label,
                sel.orbit.len(),
                sel.orbit.admissible()
            );
            for (k, b) in sel.orbit.members().iter().enumerate() {
                t.push_str(&format!("{k:>6}  {}\n", b.display(rs)));
            }
            t
        }
    };
    Ok(Outcome {
        artifact,
        default_name: format!("orbit-{}.{}", sel.file_stem, ext(format)),
        passed: true,
        summary: None,
    })
}

fn cmd_admissible(s: &SeedArgs, format: Format) -> Result<Outcome, Failure> {
    reject_dot(format, "admissible")?;
    let sel = select(s, false)?;
    let orbit = &sel.orbit;
    let rs = orbit.root_system();
    let def = def_violation(orbit);
    let moves_ok = is_admissible_moves(orbit);
    let agree = def.is_none() == moves_ok;
    let def_witness = def.map(|(k, i, j, g)| {
        json!({
            "member": k,
            "i": i + 1,
            "j": j + 1,
            "gamma": rs.root(g).to_string(),
        })
    });
    let moves_witness = moves_violation(orbit).map(
        |(k, d, c)| json!({ "member": k, "reflection_root": rs.root(d).to_string(), "moved": c }),
    );
    let v = json!({
        "diagram": rs.label(),
        "seed": orbit.seed().roots(rs).map(|r| r.to_string()).collect::<Vec<_>>(),
        "orbit_size": orbit.len(),
        "admissible": def.is_none(),
        "admissible_by_move_counts": moves_ok,
        "criteria_agree": agree,
        "max_moved": max_moved(orbit),
        "definition_witness": def_witness,
        "move_count_witness": moves_witness,
    });
    let artifact = match format {
        Format::Json => json_text(&v),
        _ => {
            let mut t = format!(
                "{}: {} members\nadmissible (definition):  {}\nadmissible (move counts): {}\nlargest |rB \\ B|: {}\n",
                sel.label,
                orbit.len(),
                def.is_none(),
                moves_ok,
                v["max_moved"]
            );
            if let Some((k, i, j, g)) = def {
                t.push_str(&format!(
                    "witness: member {k} = {}, nodes {} and {}, γ = {}, r_iB ≠ r_jB\n",
                    orbit.member(k).display(rs),
                    i + 1,
                    j + 1,
                    rs.root(g)
                ));
            }
            if !agree {
                t.push_str("CRITERIA DISAGREE\n");
            }
            t
        }
    };
    Ok(Outcome {
        artifact,
        default_name: format!("admissible-{}.{}", sel.file_stem, ext(format)),
        passed: agree,
        summary: None,
    })
}

fn cmd_poset(s: &SeedArgs, check: bool, format: Format) -> Result<Outcome, Failure> {
    let sel = select(s, true)?;
    let p = build_poset(sel.orbit)?;
    let rs = p.root_system();
    let mut passed = true;
    let mut summary = String::new();
    let mut checks = serde_json::Value::Null;
    if check {
        let axioms = verify_order_axioms(&p);
        let closure = verify_closure_in_compare(&p);
        passed = axioms.passed() && closure.is_ok();
        summary.push_str(&format!(
            "order axioms: {} checks on {} members, {} failures\n",
            axioms.checks,
            axioms.members,
            axioms.failures.len()
        ));
        for f in axioms.failures.iter().take(10) {
            summary.push_str(&format!(
                "  {:?} at member {}: {}\n",
                f.clause, f.member, f.detail
            ));
        }
        match closure {
            Ok(n) => summary.push_str(&format!("closure: {n} comparable pairs agree\n")),
            Err((a, b)) => summary.push_str(&format!("closure: members {a} and {b} disagree\n")),
        }
        checks = json!({ "order_axioms": axioms, "closure_ok": closure.is_ok() });
    }
    let b0 = p.orbit().member(p.b0());
    let artifact = match format {
        Format::Dot => p.to_dot(),
        Format::Json => {
            let mut v = p.to_json();
            if check {
                v["checks"] = checks;
            }
            json_text(&v)
        }
        Format::Text => {
            let mut t = format!(
                "{}: {} members, {} levels\nB0 = {}\nC = {} on nodes {:?}\n",
                sel.label,
                p.len(),
                p.max_level() + 1,
                b0.display(rs),
                p.c_type(),
                p.c_nodes().iter().map(|i| i + 1).collect::<Vec<_>>()
            );
            for k in 0..p.len() {
                t.push_str(&format!(
                    "{k:>6}  level {:>3}  {}\n",
                    p.level(k),
                    p.orbit().member(k).display(rs)
                ));
            }
            t
        }
    };
    Ok(Outcome {
        artifact,
        default_name: format!("poset-{}.{}", sel.file_stem, ext(format)),
        passed,
        summary: (!summary.is_empty()).then_some(summary),
    })
}

fn cmd_h_table(s: &SeedArgs, budget: usize, format: Format) -> Result<Outcome, Failure> {
    reject_dot(format, "h-table")?;
    let sel = select(s, true)?;
    let p = build_poset(sel.orbit)?;
    let ht = build_h_table(&p)?;
    let wd = verify_h_well_defined(
        &p,
        &ht,
        ChainBudget {
            samples: budget,
            ..ChainBudget::default()
        },
    );
    let rel = verify_h_relations(&p, &ht)?;
    let passed = wd.passed() && rel.passed();
    let mut summary = format!(
        "{}: {} entries (chain policy: {CHAIN_POLICY})\nwell-defined: {} pairs, {} chains in total, {} enumerated explicitly ({}), {} failures\nrelations: {} checks, {} failures\n",
        sel.label,
        ht.len(),
        wd.pairs,
        wd.total_chains,
        wd.explicit_chains,
        if wd.exhaustive { "exhaustive" } else { "sampled" },
        wd.failures.len(),
        rel.checks,
        rel.failures.len()
    );
    for f in wd.failures.iter().take(10) {
        summary.push_str(&format!("  {f}\n"));
    }
    for (r, f) in rel.failures.iter().take(10) {
        summary.push_str(&format!("  {r:?}: {f}\n"));
    }
    let artifact = match format {
        Format::Json => json_text(&ht.to_json()),
        _ => {
            let mut t = String::new();
            for (k, i, h) in ht.iter() {
                let chain = ht.chain(k, i).unwrap_or_default();
                t.push_str(&format!(
                    "member {k:>6}  i = {}  h = s{}  chain [{}]\n",
                    i + 1,
                    h + 1,
                    chain
                        .iter()
                        .map(|c| (c + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
            }
            t
        }
    };
    Ok(Outcome {
        artifact,
        default_name: format!("h-table-{}.{}", sel.file_stem, ext(format)),
        passed,
        summary: Some(summary),
    })
}

fn cmd_verify_braid(
    s: &SeedArgs,
    emit_matrices: Option<&Path>,
    format: Format,
) -> Result<Outcome, Failure> {
    reject_dot(format, "verify-braid")?;
    let sel = select(s, true)?;
    let p = build_poset(sel.orbit)?;
    let ht = build_h_table(&p)?;
    let report = verify_braid(&p, &ht)?;
    if let Some(path) = emit_matrices {
        let rep = Representation::new(&p, &ht)?;
        let mats = (0..p.rank())
            .map(|i| Ok(rep.matrix_of_generator(i)?.to_json(rep.algebra())))
            .collect::<Result<Vec<_>, Error>>()?;
        write_file(
            &resolve_out(path),
            &json_text(
                &json!({ "diagram": p.root_system().label(), "members": p.len(), "generators": mats }),
            ),
        )?;
    }
    let passed = report.passed();
    let artifact = match format {
        Format::Json => {
            json_text(&json!({ "orbit": sel.label, "passed": passed, "report": report }))
        }
        _ => {
            let mut t = format!(
                "{}: {} members, {} (pair, member) checks, {} failures\nlongest T_w: {}, highest m-degree: {}\n",
                sel.label,
                report.members,
                report.pairs_checked,
                report.failures.len(),
                report.max_length,
                report.max_degree
            );
            if report.perp_edges_with_empty_c > 0 {
                t.push_str(&format!(
                    "{} orthogonal fixed edges with empty C\n",
                    report.perp_edges_with_empty_c
                ));
            }
            for f in report.failures.iter().take(10) {
                t.push_str(&format!(
                    "  nodes {} {} at member {}: {} != {}\n",
                    f.i, f.j, f.member, f.lhs, f.rhs
                ));
            }
            t.push_str(if passed { "PASS\n" } else { "FAIL\n" });
            t
        }
    };
    Ok(Outcome {
        artifact,
        default_name: format!("braid-{}.{}", sel.file_stem, ext(format)),
        passed,
        summary: None,
    })
}

fn cmd_tables(types: &[String], format: Format) -> Result<Outcome, Failure> {
    reject_dot(format, "tables")?;
    let diagrams = if types.is_empty() {
        tables::default_diagrams()
    } else {
        types
            .iter()
            .map(|t| parse_type(t))
            .collect::<Result<Vec<_>, _>>()?
    };
    let report = tables::reproduce(&diagrams)?;
    let artifact = match format {
        Format::Json => json_text(&serde_json::to_value(&report).map_err(anyhow::Error::from)?),
        _ => report.render(),
    };
    Ok(Outcome {
        artifact,
        default_name: format!("tables.{}", ext(format)),
        passed: report.passed(),
        summary: None,
    })
}
