//! Recomputes the printed tables and diffs them against the embedded copy.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use anyhow::{bail, Result};
use fppck::chartab::character_table;
use fppck::groups::{build_group, GroupKind};
use fppck::lefschetz::{order7_trace, SectionGroup};
use fppck::verify::{table_a_registry, FppCase, SectionContext};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::render;
use crate::Outcome;

const PAPER_TABLES: &str = include_str!("../data/paper_tables.json");
const SUPPORTED_VERSION: u64 = 1;

#[derive(Debug, Deserialize)]
struct PaperTables {
    version: u64,
    table_a: Vec<StoredRow>,
    table_b: BTreeMap<String, String>,
    u_table: BTreeMap<String, Vec<serde_json::Value>>,
    sigma_trace: Vec<String>,
    g21_character_table: StoredCharacterTable,
}

#[derive(Debug, Deserialize)]
struct StoredRow {
    label: String,
    p: u64,
    t1: Vec<u64>,
    n: u64,
    count_pi: u64,
    automorphism_group: String,
    h1: String,
    pi_lifts: bool,
    h1_quotient: String,
    normalizer_lifts: bool,
}

#[derive(Debug, Deserialize)]
struct StoredCharacterTable {
    columns: Vec<String>,
    rows: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Serialize)]
struct Comparison {
    item: String,
    computed: String,
    paper: String,
    status: &'static str,
}

impl Comparison {
    fn new(item: impl Into<String>, computed: String, paper: String, equal: bool) -> Self {
        Comparison {
            item: item.into(),
            computed,
            paper,
            status: if equal { "MATCH" } else { "MISMATCH" },
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn set(primes: &[u64]) -> String {
    if primes.is_empty() {
        "{}".to_string()
    } else {
        format!("{{{}}}", primes.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
    }
}

/// Row of Table A with `N` and `N(Π) lifts?` recomputed from the groups.
fn computed_row(case: &FppCase, contexts: &BTreeMap<&'static str, SectionContext>) -> String {
    let ctx = &contexts[if case.section_group() == SectionGroup::Heisenberg3 { "h3" } else { "g21" }];
    let n = ctx.group.order() / 3;
    let splits = ctx.group.two_generated_complement(&ctx.group.center()).is_some();
    [
        case.label.clone(),
        case.p.to_string(),
        set(&case.t1),
        n.to_string(),
        case.count_pi.to_string(),
        case.automorphism_group.to_string(),
        case.h1.to_string(),
        yes_no(case.pi_lifts).to_string(),
        case.h1_quotient.to_string(),
        yes_no(splits).to_string(),
    ]
    .join(" | ")
}

fn stored_row(row: &StoredRow) -> String {
    [
        row.label.clone(),
        row.p.to_string(),
        set(&row.t1),
        row.n.to_string(),
        row.count_pi.to_string(),
        row.automorphism_group.clone(),
        row.h1.clone(),
        yes_no(row.pi_lifts).to_string(),
        row.h1_quotient.clone(),
        yes_no(row.normalizer_lifts).to_string(),
    ]
    .join(" | ")
}

fn u_entry(value: &serde_json::Value) -> Result<String> {
    match value {
        serde_json::Value::String(s) => Ok(s.clone()),
        other => bail!("U table entry {other} is not a string"),
    }
}

pub fn run() -> Result<Outcome> {
    let paper: PaperTables = serde_json::from_str(PAPER_TABLES)?;
    if paper.version != SUPPORTED_VERSION {
        bail!("paper table data has version {}, expected {SUPPORTED_VERSION}", paper.version);
    }
    let contexts: BTreeMap<&'static str, SectionContext> = BTreeMap::from([
        ("h3", SectionContext::new(SectionGroup::Heisenberg3)?),
        ("g21", SectionContext::new(SectionGroup::Mu3xG21)?),
    ]);
    let mut sections: Vec<(&str, Vec<Comparison>)> = Vec::new();

    let registry = table_a_registry();
    let mut rows = Vec::new();
    for (i, case) in registry.iter().enumerate() {
        let computed = computed_row(case, &contexts);
        let stored = paper.table_a.get(i).map(stored_row).unwrap_or_default();
        rows.push(Comparison::new(format!("row {}", case.index), computed.clone(), stored.clone(), computed == stored));
    }
    if paper.table_a.len() != registry.len() {
        rows.push(Comparison::new(
            "row count",
            registry.len().to_string(),
            paper.table_a.len().to_string(),
            false,
        ));
    }
    sections.push(("Table A", rows));

    let h3 = &contexts["h3"];
    let mut rows = Vec::new();
    for k in 4..=12 {
        let split = h3.split(k, 0)?;
        let mut computed = split.remainder.support();
        if split.regular_part != 0 {
            computed.insert(split.regular_label.clone(), split.regular_part);
        }
        let residue = (k % 3).to_string();
        let shape = &paper.table_b[&residue];
        let (var, formula) = if residue == "0" { ("a", &paper.table_b["a"]) } else { ("n", &paper.table_b["n"]) };
        let value = render::formula(formula, k)?;
        let printed = shape.replace(&format!("^{var}"), &format!("^{value}"));
        let expected = render::terms(&printed)?;
        rows.push(Comparison::new(format!("k = {k}"), split.to_string(), printed, computed == expected));
    }
    sections.push(("Table B (H3)", rows));

    let g21 = &contexts["g21"];
    let mut rows = Vec::new();
    for k in 4..25 {
        let split = g21.split(k, 0)?;
        let row = if k % 3 == 0 { "0" } else { "1 or 2" };
        let printed = u_entry(&paper.u_table[row][(k % 7) as usize])?;
        let equal = split.remainder.support() == render::terms(&printed)?;
        rows.push(Comparison::new(
            format!("k = {k} (row {row}, column {})", k % 7),
            split.remainder.to_string(),
            printed,
            equal,
        ));
    }
    sections.push(("U_k table (G21)", rows));

    let mut rows = Vec::new();
    for (k, printed) in paper.sigma_trace.iter().enumerate() {
        let computed = render::value(&order7_trace(k as i64, 1)?);
        rows.push(Comparison::new(format!("k = {k}"), computed.clone(), printed.clone(), computed == *printed));
    }
    sections.push(("Tr sigma", rows));

    let group = Arc::new(build_group(GroupKind::G21)?);
    let table = character_table(&group)?;
    let header: Vec<String> = group
        .conjugacy_classes()
        .representatives
        .iter()
        .map(|&g| render::element_word(&group, g))
        .collect();
    let stored = &paper.g21_character_table;
    let mut rows = vec![Comparison::new(
        "classes",
        header.join(", "),
        stored.columns.join(", "),
        header == stored.columns,
    )];
    for irr in table.irreducibles() {
        let values: Vec<String> = irr.character.values().iter().map(render::value).collect();
        let printed = stored.rows.get(&irr.name).cloned().unwrap_or_default();
        rows.push(Comparison::new(irr.name.clone(), values.join(", "), printed.join(", "), values == printed));
    }
    rows.push(Comparison::new(
        "orthogonality",
        if table.orthogonality_defects().is_empty() { "exact" } else { "defective" }.to_string(),
        "exact".to_string(),
        table.orthogonality_defects().is_empty(),
    ));
    sections.push(("G21 character table", rows));

    let mismatches = sections.iter().flat_map(|(_, r)| r).filter(|c| c.status != "MATCH").count();
    let mut text = String::new();
    for (name, rows) in &sections {
        writeln!(text, "{name}")?;
        let widths = [
            rows.iter().map(|r| r.item.len()).max().unwrap_or(0),
            rows.iter().map(|r| r.computed.len()).max().unwrap_or(0),
            rows.iter().map(|r| r.paper.len()).max().unwrap_or(0),
        ];
        for r in rows {
            writeln!(
                text,
                "  {:<w0$}  {:<w1$}  {:<w2$}  {}",
                r.item,
                r.computed,
                r.paper,
                r.status,
                w0 = widths[0],
                w1 = widths[1],
                w2 = widths[2]
            )?;
        }
        writeln!(text)?;
    }
    writeln!(text, "{mismatches} mismatches")?;
    let json = json!({
        "version": paper.version,
        "sections": sections.iter().map(|(n, r)| json!({"name": n, "rows": r})).collect::<Vec<_>>(),
        "mismatches": mismatches,
    });
    Ok(Outcome {
        text,
        json,
        ok: mismatches == 0,
    })
}
