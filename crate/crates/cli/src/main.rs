use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use fppck::chartab::{character_table, CharacterTable};
use fppck::groups::{build_group, GroupKind};
use fppck::lefschetz::{riemann_roch_chi, SectionGroup};
use fppck::verify::{
    find_case, remainder_is_periodic, verify_all, verify_case, CaseVerification, SectionContext, Status, StepKind,
};
use serde_json::{json, Value};

mod render;
mod tables;

#[derive(Parser, Debug)]
#[command(name = "fppck", version, about = "Exact character computations on fake projective planes")]
struct Cli {
    #[arg(long, global = true, value_enum, env = "FPPCK_FORMAT", default_value = "text")]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the character table of h3, g21, mu3_x_g21 or abelian:<orders>.
    Chartab { group: String },
    /// Lefschetz trace of one element on H0(O(k) (x) eps).
    Trace {
        #[arg(long)]
        group: String,
        #[arg(long)]
        element: String,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Decompose H0(O(k) (x) eps) into irreducibles.
    Decompose(SectionArgs),
    /// Decompose and split off the regular part, C[A]^a + U.
    Split(SectionArgs),
    /// Replay the vanishing proofs for Table A cases.
    #[command(group(ArgGroup::new("which").required(true).args(["case", "all"])))]
    Verify {
        /// Row number, `label #row` or a unique label.
        #[arg(long)]
        case: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Recompute the printed tables and compare with the stored values.
    Tables,
}

#[derive(clap::Args, Debug)]
struct SectionArgs {
    /// h3, or g21 for the group mu3 x G21.
    #[arg(long)]
    group: String,
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
    #[arg(long, default_value_t = 0)]
    eps_order: u64,
}

/// Rendered output plus whether everything checked out.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let body = match cli.format {
                Format::Text => outcome.text,
                Format::Json => serde_json::to_string_pretty(&outcome.json).expect("json values serialize") + "\n",
            };
            if let Err(err) = emit(cli.out.as_ref(), &body) {
                eprintln!("error: {err:#}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&PathBuf>, body: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Chartab { group } => chartab(group),
        Command::Trace { group, element, k } => trace(group, element, *k),
        Command::Decompose(args) => decompose(args, false),
        Command::Split(args) => decompose(args, true),
        Command::Verify { case, all } => verify(case.as_deref(), *all),
        Command::Tables => tables::run(),
    }
}

fn class_header(table: &CharacterTable) -> Vec<String> {
    let group = table.group();
    group
        .conjugacy_classes()
        .representatives
        .iter()
        .map(|&g| render::element_word(group, g))
        .collect()
}

fn grid(rows: &[Vec<String>]) -> String {
    let width = rows.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(0) + 2;
    let mut out = String::new();
    for row in rows {
        let line: String = row.iter().map(|c| format!("{c:<width$}")).collect();
        writeln!(out, "{}", line.trim_end()).unwrap();
    }
    out
}

fn chartab(name: &str) -> Result<Outcome> {
    let kind: GroupKind = name.parse()?;
    let group = Arc::new(build_group(kind.clone())?);
    let table = character_table(&group)?;
    let header = class_header(&table);
    let sizes = &group.conjugacy_classes().sizes;
    let mut rows = vec![
        std::iter::once("class".to_string()).chain(header.iter().cloned()).collect(),
        std::iter::once("size".to_string()).chain(sizes.iter().map(|s| s.to_string())).collect(),
    ];
    let mut characters = Vec::new();
    for irr in table.irreducibles() {
        let values: Vec<String> = irr.character.values().iter().map(render::value).collect();
        rows.push(std::iter::once(irr.name.clone()).chain(values.iter().cloned()).collect());
        characters.push(json!({"name": irr.name, "dim": irr.dim, "values": values}));
    }
    let defects = table.orthogonality_defects();
    let mut text = format!("{kind}: order {}, {} classes\n", group.order(), header.len());
    text += &grid(&rows);
    Ok(Outcome {
        text,
        json: json!({
            "group": kind.to_string(),
            "order": group.order(),
            "classes": header.iter().zip(sizes).map(|(r, s)| json!({"representative": r, "size": s})).collect::<Vec<_>>(),
            "characters": characters,
            "orthogonality_defects": defects,
        }),
        ok: defects.is_empty(),
    })
}

fn trace(group: &str, element: &str, k: i64) -> Result<Outcome> {
    let ctx = SectionContext::new(group.parse::<SectionGroup>()?)?;
    let g = ctx.group.element(element)?;
    let sc = ctx.character(k, 0)?;
    let value = render::value(sc.character.at_element(g));
    let note = if sc.is_virtual() { " (Euler characteristic)" } else { "" };
    Ok(Outcome {
        text: format!("{value}\n"),
        json: json!({
            "group": ctx.kind.to_string(),
            "element": element,
            "k": k,
            "value": value,
            "exact": sc.character.at_element(g),
            "virtual": sc.is_virtual(),
            "note": note.trim(),
        }),
        ok: true,
    })
}

fn decompose(args: &SectionArgs, with_split: bool) -> Result<Outcome> {
    let ctx = SectionContext::new(args.group.parse::<SectionGroup>()?)?;
    let sc = ctx.character(args.k, args.eps_order)?;
    let d = ctx.table.decompose(&sc.character)?;
    let split = fppck::verify::regular_split(&d, &ctx.table)?;
    let header = class_header(&ctx.table);
    let class_values: Vec<Value> = header
        .iter()
        .zip(sc.character.values())
        .map(|(c, v)| json!({"class": c, "value": render::value(v)}))
        .collect();
    let multiplicities: Vec<Value> = d
        .names
        .iter()
        .zip(&d.dims)
        .zip(&d.multiplicities)
        .map(|((n, dim), m)| json!({"name": n, "dim": dim, "multiplicity": m}))
        .collect();
    let dim = riemann_roch_chi(args.k);
    let ledger_ok = split.ledger_dimension() == dim;

    let mut text = format!(
        "H0(O({}) (x) eps), eps of order {}, on {}: dim {dim}{}\n",
        args.k,
        args.eps_order,
        ctx.kind,
        if sc.is_virtual() { " (virtual: Euler characteristic)" } else { "" }
    );
    writeln!(text, "multiplicities: {d}")?;
    writeln!(text, "= {split}")?;
    let mut json = json!({
        "k": args.k,
        "group": ctx.kind.to_string(),
        "epsilon_order": args.eps_order,
        "dim": dim,
        "virtual": sc.is_virtual(),
        "class_values": class_values,
        "multiplicities": multiplicities,
        "regular_part": split.regular_part,
        "remainder": split.remainder.to_string(),
    });
    let mut ok = ledger_ok;
    if with_split {
        let periodic = remainder_is_periodic(&ctx, args.k)?;
        ok &= periodic;
        writeln!(text, "regular part: {}^{}", split.regular_label, split.regular_part)?;
        writeln!(text, "remainder U: {}", split.remainder)?;
        writeln!(
            text,
            "dimension ledger: {} * {} + {} = {} ({})",
            split.regular_part,
            split.regular_dim,
            split.remainder.dimension(),
            split.ledger_dimension(),
            if ledger_ok { "ok" } else { "MISMATCH" }
        )?;
        writeln!(text, "U repeats with the period: {}", if periodic { "yes" } else { "no" })?;
        json["regular_label"] = json!(split.regular_label);
        json["regular_dim"] = json!(split.regular_dim);
        json["remainder_dim"] = json!(split.remainder.dimension());
        json["periodic"] = json!(periodic);
    }
    Ok(Outcome { text, json, ok })
}

fn verify(case: Option<&str>, all: bool) -> Result<Outcome> {
    let results: Vec<CaseVerification> = if all {
        verify_all()?
    } else {
        let case = find_case(case.expect("clap requires --case or --all"))?;
        vec![verify_case(&case)?]
    };
    let mut text = String::new();
    for cv in &results {
        writeln!(text, "== {} ({}): {}", cv.case, cv.group, cv.verdict)?;
        for report in &cv.reports {
            writeln!(text, "-- {} m={}: {}", report.case, report.m, report.verdict)?;
            for step in &report.steps {
                let tag = match step.kind {
                    StepKind::Axiom => "AXIOM".to_string(),
                    StepKind::Computed => step.status.to_string(),
                };
                write!(text, "   [{tag}] {}: {}", step.id, step.statement)?;
                match &step.citation {
                    Some(c) => writeln!(text, " ({c})")?,
                    None if step.values.as_object().is_some_and(|o| !o.is_empty()) => {
                        writeln!(text, " {}", step.values)?
                    }
                    None => writeln!(text)?,
                }
            }
        }
    }
    let ok = results.iter().all(|r| r.verdict == Status::Pass);
    writeln!(
        text,
        "verdict: {} ({} of {} cases pass)",
        if ok { "PASS" } else { "FAIL" },
        results.iter().filter(|r| r.verdict == Status::Pass).count(),
        results.len()
    )?;
    let json = if all {
        serde_json::to_value(&results)?
    } else {
        serde_json::to_value(&results[0])?
    };
    Ok(Outcome { text, json, ok })
}
