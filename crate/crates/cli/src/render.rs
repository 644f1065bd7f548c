//! Table, JSON and TSV output for each subcommand.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::Context;
use clap::ValueEnum;
use moorelab_core::block::{canonical_blocks, forced_zero_variables, orbit, NUM_VARS};
use moorelab_core::constraints::lemma2_value;
use moorelab_core::drg::{intersection_numbers, IntersectionNumbers, ReferenceMismatch};
use moorelab_core::grid::{lemma2_counts, GridModel};
use moorelab_core::linalg::rank;
use moorelab_core::nullspace::{null_basis, COEFFICIENT_NAMES};
use moorelab_core::perm::{self, HReport, MooreReport, SearchReport};
use moorelab_core::solver::{discussion_report, moore57_block, solve_block, verify_solution, Completeness};
use moorelab_core::{block, expect, BlockId, IntersectionArray, SearchBudget, SearchOutcome, Solution};
use serde::Serialize;
use serde_json::{json, Value};

use crate::Reference;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Tsv,
}

/// Column order of the published counts table.
const SUMMARY_ORDER: [&str; 8] = ["333", "211", "221", "321", "331", "322", "222", "332"];

fn push_json(out: &mut String, v: &Value) -> anyhow::Result<()> {
    out.push_str(&serde_json::to_string_pretty(v)?);
    out.push('\n');
    Ok(())
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>, sep: &str) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn pnums_json(array: &IntersectionArray, p: &IntersectionNumbers, diagnostics: &[ReferenceMismatch]) -> Value {
    let matrices: BTreeMap<String, [[i64; 3]; 3]> = (1..=3).map(|z| (z.to_string(), p.matrix(z))).collect();
    json!({
        "array": array.to_string(),
        "k": p.multiplicities().0,
        "p": matrices,
        "diagnostics": diagnostics.iter().map(|d| json!({
            "code": d.code(),
            "distance": d.distance,
            "row": d.row,
            "col": d.col,
            "reference": d.reference,
            "computed": d.computed,
            "message": d.to_string(),
        })).collect::<Vec<_>>(),
    })
}

pub fn pnums(
    out: &mut String,
    fmt: Format,
    array: &IntersectionArray,
    p: &IntersectionNumbers,
    diagnostics: &[ReferenceMismatch],
) -> anyhow::Result<()> {
    match fmt {
        Format::Json => push_json(out, &pnums_json(array, p, diagnostics))?,
        Format::Tsv => {
            writeln!(out, "z\ti\tj\tp")?;
            for z in 1..=3 {
                for i in 1..=3 {
                    for j in 1..=3 {
                        writeln!(out, "{z}\t{i}\t{j}\t{}", p.get(z, i, j))?;
                    }
                }
            }
            writeln!(out, "k\t{}", join(p.multiplicities().0, "\t"))?;
        }
        Format::Table => {
            writeln!(out, "array {array}")?;
            for z in 1..=3 {
                writeln!(out, "p^{z}")?;
                for row in p.matrix(z) {
                    writeln!(out, "  {}", join(row.map(|v| format!("{v:>6}")), " "))?;
                }
            }
            writeln!(out, "k = ({})", join(p.multiplicities().0, ","))?;
            for d in diagnostics {
                writeln!(out, "note: {d}")?;
            }
        }
    }
    Ok(())
}

pub fn block_list(out: &mut String, fmt: Format) -> anyhow::Result<()> {
    let rows: Vec<Value> = canonical_blocks()
        .iter()
        .map(|&b| {
            json!({
                "block": b,
                "orbit": orbit(b),
                "forced_zero": forced_zero_variables(b).len(),
                "x27": lemma2_value(b),
            })
        })
        .collect();
    match fmt {
        Format::Json => push_json(out, &Value::Array(rows))?,
        Format::Tsv | Format::Table => {
            let sep = if fmt == Format::Tsv { "\t" } else { "  " };
            writeln!(out, "{}", join(["block", "orbit", "forced_zero", "x27"], sep))?;
            for b in canonical_blocks() {
                writeln!(
                    out,
                    "{}",
                    join([b.to_string(), join(orbit(b), ","), forced_zero_variables(b).len().to_string(), lemma2_value(b).to_string()], sep)
                )?;
            }
        }
    }
    Ok(())
}

pub fn block_build(out: &mut String, fmt: Format, b: BlockId) -> anyhow::Result<()> {
    let (system, cons) = moore57_block(b)?;
    let zeros: Vec<u8> = system.forced_zero.iter().map(|v| v.get()).collect();
    match fmt {
        Format::Json => push_json(
            out,
            &json!({
                "block": b,
                "rhs": system.rhs,
                "forced_zero": zeros,
                "constraints": cons,
            }),
        )?,
        Format::Tsv => {
            writeln!(out, "row\trhs")?;
            for (r, v) in system.rhs.iter().enumerate() {
                writeln!(out, "{}\t{v}", r + 1)?;
            }
        }
        Format::Table => {
            writeln!(out, "block {b}")?;
            for family in 0..3 {
                let slice = &system.rhs[9 * family..9 * family + 9];
                writeln!(out, "  rhs family {}: {}", family + 1, join(slice, " "))?;
            }
            writeln!(out, "  forced zero: {}", join(&zeros, " "))?;
            for c in cons.iter().filter(|c| !matches!(c, moorelab_core::Constraint::NonNegative { .. })) {
                if !matches!(c, moorelab_core::Constraint::FixedValue { value: 0, index } if system.forced_zero.contains(index)) {
                    writeln!(out, "  {c}")?;
                }
            }
            writeln!(out, "  all {NUM_VARS} variables non-negative")?;
        }
    }
    Ok(())
}

fn completeness_text(c: &Completeness) -> String {
    match c {
        Completeness::Proven => "complete".into(),
        Completeness::Capped { radius, boundary_hit } => {
            format!("capped at radius {radius}{}", if *boundary_hit { ", boundary reached" } else { "" })
        }
    }
}

pub fn enumerate(out: &mut String, fmt: Format, blocks: &[BlockId], reference: Reference) -> anyhow::Result<()> {
    let fixtures = expect::fixtures();
    let mut json_rows = Vec::new();
    if fmt == Format::Tsv {
        writeln!(out, "block\t{}", COEFFICIENT_NAMES.join("\t"))?;
    }
    for &b in blocks {
        let result = solve_block(b)?;
        let reference_solution: Option<&Solution> = match reference {
            Reference::Base => None,
            Reference::Fixture => Some(fixtures.get(&b).with_context(|| format!("no stored solution for {b}"))?),
        };
        let tuples = match reference_solution {
            Some(r) => result.tuples_relative_to(r)?,
            None => result.tuples.clone(),
        };
        match fmt {
            Format::Json => json_rows.push(json!({
                "block": b,
                "count": result.count,
                "reference": match reference { Reference::Fixture => "fixture", Reference::Base => "base" },
                "completeness": result.completeness,
                "tuples": tuples,
                "solutions": result.solutions,
            })),
            Format::Tsv => {
                for t in &tuples {
                    writeln!(out, "{b}\t{t}")?;
                }
            }
            Format::Table => {
                let against = match reference {
                    Reference::Fixture => "stored particular solution",
                    Reference::Base => "smallest solution",
                };
                writeln!(
                    out,
                    "block {b}: {} solutions ({}), coefficients relative to the {against}",
                    result.count,
                    completeness_text(&result.completeness)
                )?;
                out.push_str(&result.tuple_table(reference_solution)?);
            }
        }
    }
    if fmt == Format::Json {
        let v = if json_rows.len() == 1 { json_rows.remove(0) } else { Value::Array(json_rows) };
        push_json(out, &v)?;
    }
    Ok(())
}

/// Returns false only when `check` is set and a count differs.
pub fn summary(out: &mut String, fmt: Format, check: bool) -> anyhow::Result<bool> {
    let expected = expect::counts();
    let mut counts = Vec::new();
    for label in SUMMARY_ORDER {
        let b: BlockId = label.parse()?;
        counts.push((b, solve_block(b)?.count));
    }
    let mismatches: Vec<String> = counts
        .iter()
        .filter(|(b, n)| expected.get(b) != Some(n))
        .map(|(b, n)| format!("{b}: computed {n}, expected {}", expected.get(b).map_or("none".into(), |e| e.to_string())))
        .collect();
    match fmt {
        Format::Json => push_json(
            out,
            &json!({
                "counts": counts.iter().map(|(b, n)| json!({"block": b, "count": n})).collect::<Vec<_>>(),
                "checked": check,
                "mismatches": mismatches,
            }),
        )?,
        Format::Tsv | Format::Table => {
            writeln!(out, "Block\t{}", join(counts.iter().map(|(b, _)| b), "\t"))?;
            writeln!(out, "Count\t{}", join(counts.iter().map(|(_, n)| n), "\t"))?;
            if check {
                for m in &mismatches {
                    writeln!(out, "mismatch {m}")?;
                }
                if mismatches.is_empty() {
                    writeln!(out, "all counts match")?;
                }
            }
        }
    }
    Ok(!check || mismatches.is_empty())
}

#[derive(Serialize)]
struct Check {
    name: String,
    ok: bool,
    detail: String,
}

fn emit_checks(out: &mut String, fmt: Format, checks: &[Check]) -> anyhow::Result<bool> {
    let ok = checks.iter().all(|c| c.ok);
    match fmt {
        Format::Json => push_json(out, &json!({ "ok": ok, "checks": checks }))?,
        Format::Tsv => {
            for c in checks {
                writeln!(out, "{}\t{}\t{}", c.name, if c.ok { "pass" } else { "fail" }, c.detail)?;
            }
        }
        Format::Table => {
            for c in checks {
                writeln!(out, "{} {}: {}", if c.ok { "PASS" } else { "FAIL" }, c.name, c.detail)?;
            }
            let failed = checks.iter().filter(|c| !c.ok).count();
            writeln!(out, "{} checks, {failed} failed", checks.len())?;
        }
    }
    Ok(ok)
}

fn fixture_checks(fixtures: &BTreeMap<BlockId, Solution>) -> anyhow::Result<Vec<Check>> {
    let mut checks = Vec::new();
    for b in canonical_blocks() {
        let name = format!("fixture {b}");
        let Some(x) = fixtures.get(&b) else {
            checks.push(Check { name, ok: false, detail: "missing".into() });
            continue;
        };
        let (system, cons) = moore57_block(b)?;
        let report = verify_solution(&system, &cons, x);
        checks.push(Check {
            name,
            ok: report.is_valid(),
            detail: if report.is_valid() {
                "solves the system, meets every constraint".into()
            } else {
                join(&report.violations, "; ")
            },
        });
    }
    Ok(checks)
}

fn nullspace_checks() -> Vec<Check> {
    let m = block::coefficient_matrix();
    let basis = null_basis();
    let residual_ok = basis.vectors.iter().all(|v| block::mul(&m, v) == [0; NUM_VARS]);
    let r = rank(&m);
    vec![
        Check {
            name: "null basis".into(),
            ok: residual_ok && rank(&basis.vectors) == 8,
            detail: "8 independent vectors with zero residual".into(),
        },
        Check { name: "rank".into(), ok: r == 19, detail: format!("rank {r}") },
    ]
}

fn grid_checks(grid: &GridModel) -> anyhow::Result<Vec<Check>> {
    let n = grid.n;
    let counts = lemma2_counts(grid)?;
    let bad: Vec<String> = counts
        .iter()
        .filter(|c| !c.matches())
        .map(|c| format!("{} gave {} not {}", c.pattern, c.count, c.expected))
        .collect();
    let non_collinear = grid.lemma3b_candidates((1, 1), (2, 2));
    let collinear = grid.lemma3b_candidates((1, 1), (1, 2));
    let (u, v, w) = grid.place_pattern("322".parse()?)?;
    let pool = grid.lemma3a_candidates(u, v, w);
    Ok(vec![
        Check {
            name: format!("line-mates n={n}"),
            ok: bad.is_empty(),
            detail: if bad.is_empty() {
                format!("0/1/0/{} for 0/1/2/3 collinear pairs", n - 3)
            } else {
                bad.join("; ")
            },
        },
        Check {
            name: format!("pair candidates n={n}"),
            ok: non_collinear == 2 && collinear == n - 2,
            detail: format!("non-collinear {non_collinear}, collinear {collinear}"),
        },
        Check {
            name: format!("off-line pool n={n}"),
            ok: pool == n - 3,
            detail: format!("{pool} candidates"),
        },
    ])
}

pub fn verify(
    out: &mut String,
    fmt: Format,
    fixtures: &BTreeMap<BlockId, Solution>,
    (lo, hi): (usize, usize),
) -> anyhow::Result<bool> {
    let mut checks = fixture_checks(fixtures)?;
    checks.extend(nullspace_checks());
    for n in lo..=hi {
        checks.extend(grid_checks(&GridModel::new(n)?)?);
    }
    emit_checks(out, fmt, &checks)
}

pub fn grid_oracle(out: &mut String, fmt: Format, grid: &GridModel) -> anyhow::Result<bool> {
    let counts = lemma2_counts(grid)?;
    let checks = grid_checks(grid)?;
    let ok = checks.iter().all(|c| c.ok);
    match fmt {
        Format::Json => push_json(out, &json!({ "n": grid.n, "patterns": counts, "checks": checks, "ok": ok }))?,
        Format::Tsv | Format::Table => {
            let sep = if fmt == Format::Tsv { "\t" } else { "  " };
            writeln!(out, "{}", join(["pattern", "count", "expected"], sep))?;
            for c in &counts {
                writeln!(out, "{}", join([c.pattern.to_string(), c.count.to_string(), c.expected.to_string()], sep))?;
            }
            emit_checks(out, fmt, &checks)?;
        }
    }
    Ok(ok)
}

pub fn search(
    out: &mut String,
    fmt: Format,
    report: &SearchReport,
    moore: Option<&(HReport, MooreReport)>,
) -> anyhow::Result<()> {
    let system = match &report.outcome {
        SearchOutcome::Found(sys) => Some(sys),
        _ => None,
    };
    match fmt {
        Format::Json => push_json(
            out,
            &json!({
                "degree": report.degree,
                "outcome": report.outcome.label(),
                "nodes": report.nodes,
                "system": system,
                "h": moore.map(|m| m.0),
                "moore": moore.map(|m| json!({
                    "order": m.1.order,
                    "regular": m.1.regular,
                    "girth": m.1.girth,
                    "diameter": m.1.diameter,
                    "is_moore": m.1.is_moore(),
                })),
            }),
        )?,
        Format::Tsv => {
            writeln!(out, "degree\t{}", report.degree)?;
            writeln!(out, "outcome\t{}", report.outcome.label())?;
            writeln!(out, "nodes\t{}", report.nodes)?;
            if let Some(sys) = system {
                writeln!(out, "system\t{}", sys.to_json())?;
            }
            if let Some((_, m)) = moore {
                writeln!(out, "is_moore\t{}", m.is_moore())?;
            }
        }
        Format::Table => {
            writeln!(out, "degree {}: {} after {} nodes", report.degree, report.outcome.label(), report.nodes)?;
            if let Some(sys) = system {
                writeln!(out, "system {}", sys.to_json())?;
            }
            if let Some((h, m)) = moore {
                let failures = h.failures();
                writeln!(
                    out,
                    "H: {}",
                    if failures.is_empty() { "all five properties hold".to_string() } else { format!("fails {}", failures.join(", ")) }
                )?;
                writeln!(out, "graph: {m}")?;
            }
            if report.outcome == SearchOutcome::BudgetExceeded {
                writeln!(out, "budget exhausted; nothing is claimed about existence")?;
            }
        }
    }
    Ok(())
}

pub fn report(out: &mut String, fmt: Format) -> anyhow::Result<bool> {
    let array = IntersectionArray::moore57();
    let p = intersection_numbers(&array)?;
    let diagnostics = moorelab_core::drg::compare_with_reference(&p, &expect::reference_pnums());
    let expected_counts = expect::counts();
    let mut counts = Vec::new();
    for label in SUMMARY_ORDER {
        let b: BlockId = label.parse()?;
        counts.push((b, solve_block(b)?.count));
    }
    let counts_ok = counts.iter().all(|(b, n)| expected_counts.get(b) == Some(n));
    let discussion = discussion_report(&solve_block("221".parse()?)?);
    let mut checks = fixture_checks(&expect::fixtures())?;
    checks.extend(nullspace_checks());
    checks.extend(grid_checks(&GridModel::new(56)?)?);
    let mut searches = Vec::new();
    for d in 2..=5 {
        searches.push(perm::search(d, SearchBudget::UNLIMITED)?);
    }
    let search_ok = searches.iter().map(|r| r.outcome.label()).eq(["Found", "Found", "ExhaustedNoSolution", "ExhaustedNoSolution"]);
    let ok = counts_ok && discussion.checks_pass() && checks.iter().all(|c| c.ok) && search_ok;

    match fmt {
        Format::Json => push_json(
            out,
            &json!({
                "ok": ok,
                "pnums": pnums_json(&array, &p, &diagnostics),
                "counts": counts.iter().map(|(b, n)| json!({"block": b, "count": n})).collect::<Vec<_>>(),
                "discussion": discussion,
                "checks": checks,
                "search": searches.iter().map(|r| json!({
                    "degree": r.degree,
                    "outcome": r.outcome.label(),
                    "nodes": r.nodes,
                })).collect::<Vec<_>>(),
            }),
        )?,
        Format::Tsv | Format::Table => {
            writeln!(out, "# intersection numbers")?;
            pnums(out, fmt, &array, &p, &diagnostics)?;
            writeln!(out, "\n# solution counts")?;
            writeln!(out, "Block\t{}", join(counts.iter().map(|(b, _)| b), "\t"))?;
            writeln!(out, "Count\t{}", join(counts.iter().map(|(_, n)| n), "\t"))?;
            writeln!(out, "\n# block 221")?;
            writeln!(out, "x(2,2,1)\tx(3,3,1)\tx(3,3,3)\tx(1,3,2)")?;
            for r in &discussion.rows {
                writeln!(out, "{}\t{}\t{}\t{}", r.x221, r.x331, r.x333, r.x132)?;
            }
            if let Some(diff) = discussion.difference_at_two {
                writeln!(out, "x(2,2,1) - x(3,3,1) = {diff} where x(3,3,1) = 2")?;
            }
            writeln!(out, "\n# checks")?;
            emit_checks(out, fmt, &checks)?;
            writeln!(out, "\n# permutation search")?;
            for r in &searches {
                writeln!(out, "degree {}\t{}\t{} nodes", r.degree, r.outcome.label(), r.nodes)?;
            }
            writeln!(out, "\noverall: {}", if ok { "ok" } else { "FAILED" })?;
        }
    }
    Ok(ok)
}
