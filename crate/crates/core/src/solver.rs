//! Particular solutions and exhaustive enumeration of the constrained
//! non-negative integer solutions of a block.
//!
//! Every integer solution is `origin + C n` for an integer origin (found by
//! back-substitution) and `n` in the null lattice. Each variable's constraint
//! becomes an affine constraint on `n`; interval propagation over those
//! constraints bounds every coefficient, and a depth-first sweep of the
//! resulting box with partial-interval pruning visits every candidate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::block::{row, BlockId, BlockSystem, VarIndex, Vector27, NUM_VARS};
use crate::constraints::{self, Constraint, ConstraintSet};
use crate::drg::{intersection_numbers, IntersectionArray};
use crate::error::{Error, Result};
use crate::nullspace::{coefficients_of, null_basis, NullBasis, NullCoefficients, BASIS_TRIPLES, COEFFICIENT_NAMES, NULL_DIM};

/// Bounds past this magnitude are treated as unbounded.
const BOUND_LIMIT: i64 = 1 << 40;

/// A vector of 27 variable values in lexicographic variable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Solution(pub Vector27);

impl Solution {
    pub fn get(&self, idx: VarIndex) -> i64 {
        self.0[idx.position()]
    }

    pub fn at(&self, triple: [u8; 3]) -> i64 {
        self.0[crate::block::pos(triple[0], triple[1], triple[2])]
    }

    /// Coordinates of `self - other` in the null lattice.
    pub fn difference(&self, other: &Solution) -> Result<NullCoefficients> {
        let diff: Vector27 = std::array::from_fn(|i| self.0[i] - other.0[i]);
        coefficients_of(&diff)
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Integer solution of `M x = rhs` with the eight lattice coordinates set to
/// zero, found by solving equations with a single unknown until none remain.
pub fn lattice_origin(system: &BlockSystem) -> Result<Vector27> {
    let mut x = [0i64; NUM_VARS];
    let mut known = [false; NUM_VARS];
    for [i, j, k] in BASIS_TRIPLES {
        known[crate::block::pos(i, j, k)] = true;
    }
    loop {
        let mut progress = false;
        for (r, coeffs) in system.matrix.iter().enumerate() {
            let unknown: Vec<usize> = (0..NUM_VARS).filter(|&c| coeffs[c] != 0 && !known[c]).collect();
            if let [c] = unknown[..] {
                let partial: i64 = (0..NUM_VARS).filter(|&j| known[j]).map(|j| coeffs[j] * x[j]).sum();
                let rest = system.rhs[r] - partial;
                if rest % coeffs[c] != 0 {
                    return Err(Error::Inconsistent(system.block));
                }
                x[c] = rest / coeffs[c];
                known[c] = true;
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    if known.iter().any(|k| !k) || !system.is_solved_by(&x) {
        return Err(Error::Inconsistent(system.block));
    }
    Ok(x)
}

/// Per-coefficient intervals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientBounds {
    pub lo: [i64; NULL_DIM],
    pub hi: [i64; NULL_DIM],
}

impl CoefficientBounds {
    pub fn shifted(&self, by: &NullCoefficients) -> Self {
        Self {
            lo: std::array::from_fn(|k| self.lo[k] - by[k]),
            hi: std::array::from_fn(|k| self.hi[k] - by[k]),
        }
    }

    pub fn contains(&self, n: &NullCoefficients) -> bool {
        (0..NULL_DIM).all(|k| self.lo[k] <= n[k] && n[k] <= self.hi[k])
    }

    /// Largest absolute bound.
    pub fn radius(&self) -> i64 {
        self.lo.iter().chain(&self.hi).map(|v| v.abs()).max().unwrap_or(0)
    }

    pub fn candidates(&self) -> u128 {
        (0..NULL_DIM)
            .map(|k| (self.hi[k] - self.lo[k] + 1).max(0) as u128)
            .product()
    }
}

/// How the enumeration box was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Completeness {
    /// Propagation bounded every coefficient; the result is complete.
    Proven,
    /// Some coefficient was clamped to `radius` around the lattice origin.
    /// `boundary_hit` is set when a solution touches a clamped face, in which
    /// case the result may be incomplete.
    Capped { radius: i64, boundary_hit: bool },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Clamp coefficients that propagation cannot bound to this radius
    /// instead of failing with [`Error::UnboundedLattice`].
    pub fallback_cap: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationResult {
    pub block: BlockId,
    pub count: usize,
    /// Coefficients of each solution relative to `base`, aligned with
    /// `solutions`.
    pub tuples: Vec<NullCoefficients>,
    pub solutions: Vec<Solution>,
    /// The lexicographically smallest solution.
    pub base: Solution,
    /// Propagated coefficient box, relative to `base`.
    pub bounds: CoefficientBounds,
    pub completeness: Completeness,
}

impl EnumerationResult {
    /// Coefficients of every solution relative to another solution of the
    /// same block, in solution order.
    pub fn tuples_relative_to(&self, reference: &Solution) -> Result<Vec<NullCoefficients>> {
        self.solutions.iter().map(|s| s.difference(reference)).collect()
    }

    /// Tab-separated coefficient rows, one per solution.
    pub fn tuple_table(&self, reference: Option<&Solution>) -> Result<String> {
        let tuples = match reference {
            Some(r) => self.tuples_relative_to(r)?,
            None => self.tuples.clone(),
        };
        let mut out = COEFFICIENT_NAMES.join("\t");
        out.push('\n');
        for t in tuples {
            out.push_str(&t.to_string());
            out.push('\n');
        }
        Ok(out)
    }
}

/// Affine form of the constraints: row `r` requires
/// `lo[r] <= sum_k coeffs[r][k] n_k <= hi[r]`.
struct AffineSystem {
    coeffs: [[i64; NULL_DIM]; NUM_VARS],
    lo: [Option<i64>; NUM_VARS],
    hi: [Option<i64>; NUM_VARS],
}

impl AffineSystem {
    fn new(basis: &NullBasis, origin: &Vector27, cons: &ConstraintSet) -> Self {
        let bounds = cons.bounds();
        Self {
            coeffs: std::array::from_fn(|r| basis.row(r)),
            lo: std::array::from_fn(|r| bounds[r].lo.map(|v| v - origin[r])),
            hi: std::array::from_fn(|r| bounds[r].hi.map(|v| v - origin[r])),
        }
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

enum Propagated {
    Bounded {
        lo: [Option<i64>; NULL_DIM],
        hi: [Option<i64>; NULL_DIM],
    },
    Empty,
}

/// Bounds consistency over the affine rows, to a fixpoint.
fn propagate(sys: &AffineSystem) -> Propagated {
    let mut lo: [Option<i64>; NULL_DIM] = [None; NULL_DIM];
    let mut hi: [Option<i64>; NULL_DIM] = [None; NULL_DIM];
    loop {
        let mut changed = false;
        for r in 0..NUM_VARS {
            let coeffs = &sys.coeffs[r];
            for k in 0..NULL_DIM {
                let ck = coeffs[k];
                if ck == 0 {
                    continue;
                }
                // range of sum_{j != k} c_j n_j
                let mut smin = Some(0i64);
                let mut smax = Some(0i64);
                for j in (0..NULL_DIM).filter(|&j| j != k && coeffs[j] != 0) {
                    let cj = coeffs[j];
                    let (a, b) = (lo[j].map(|v| cj * v), hi[j].map(|v| cj * v));
                    let (mn, mx) = if cj > 0 { (a, b) } else { (b, a) };
                    smin = smin.zip(mn).map(|(s, v)| s + v);
                    smax = smax.zip(mx).map(|(s, v)| s + v);
                }
                // lo_r <= c_k n_k + s  ==>  c_k n_k >= lo_r - smax
                if let (Some(l), Some(s)) = (sys.lo[r], smax) {
                    let t = l - s;
                    if ck > 0 {
                        changed |= tighten_lo(&mut lo[k], div_ceil(t, ck));
                    } else {
                        changed |= tighten_hi(&mut hi[k], div_floor(t, ck));
                    }
                }
                // c_k n_k + s <= hi_r  ==>  c_k n_k <= hi_r - smin
                if let (Some(h), Some(s)) = (sys.hi[r], smin) {
                    let t = h - s;
                    if ck > 0 {
                        changed |= tighten_hi(&mut hi[k], div_floor(t, ck));
                    } else {
                        changed |= tighten_lo(&mut lo[k], div_ceil(t, ck));
                    }
                }
                if let (Some(l), Some(h)) = (lo[k], hi[k]) {
                    if l > h {
                        return Propagated::Empty;
                    }
                }
                if lo[k].is_some_and(|v| v.abs() > BOUND_LIMIT) || hi[k].is_some_and(|v| v.abs() > BOUND_LIMIT) {
                    // runaway tightening only happens on an empty system
                    return Propagated::Empty;
                }
            }
        }
        if !changed {
            return Propagated::Bounded { lo, hi };
        }
    }
}

fn tighten_lo(slot: &mut Option<i64>, v: i64) -> bool {
    if slot.is_none_or(|cur| v > cur) {
        *slot = Some(v);
        true
    } else {
        false
    }
}

fn tighten_hi(slot: &mut Option<i64>, v: i64) -> bool {
    if slot.is_none_or(|cur| v < cur) {
        *slot = Some(v);
        true
    } else {
        false
    }
}

/// Depth-first sweep of `bounds`, pruning any partial assignment for which
/// some row can no longer reach its interval.
fn sweep(sys: &AffineSystem, bounds: &CoefficientBounds, mut visit: impl FnMut(NullCoefficients)) {
    let active: Vec<usize> = (0..NUM_VARS)
        .filter(|&r| sys.lo[r].is_some() || sys.hi[r].is_some())
        .collect();
    // suffix ranges: contribution of coefficients depth.. of row r
    let mut rem_min = vec![[0i64; NULL_DIM + 1]; NUM_VARS];
    let mut rem_max = vec![[0i64; NULL_DIM + 1]; NUM_VARS];
    for &r in &active {
        for k in (0..NULL_DIM).rev() {
            let c = sys.coeffs[r][k];
            let (a, b) = (c * bounds.lo[k], c * bounds.hi[k]);
            rem_min[r][k] = rem_min[r][k + 1] + a.min(b);
            rem_max[r][k] = rem_max[r][k + 1] + a.max(b);
        }
    }

    struct Ctx<'a, F> {
        sys: &'a AffineSystem,
        bounds: &'a CoefficientBounds,
        active: Vec<usize>,
        rem_min: Vec<[i64; NULL_DIM + 1]>,
        rem_max: Vec<[i64; NULL_DIM + 1]>,
        visit: F,
    }

    fn go<F: FnMut(NullCoefficients)>(ctx: &mut Ctx<'_, F>, depth: usize, n: &mut [i64; NULL_DIM], partial: &mut [i64; NUM_VARS]) {
        for &r in &ctx.active {
            let s = partial[r];
            if ctx.sys.lo[r].is_some_and(|l| s + ctx.rem_max[r][depth] < l)
                || ctx.sys.hi[r].is_some_and(|h| s + ctx.rem_min[r][depth] > h)
            {
                return;
            }
        }
        if depth == NULL_DIM {
            (ctx.visit)(NullCoefficients(*n));
            return;
        }
        for v in ctx.bounds.lo[depth]..=ctx.bounds.hi[depth] {
            n[depth] = v;
            for r in 0..NUM_VARS {
                partial[r] += ctx.sys.coeffs[r][depth] * v;
            }
            go(ctx, depth + 1, n, partial);
            for r in 0..NUM_VARS {
                partial[r] -= ctx.sys.coeffs[r][depth] * v;
            }
        }
    }

    if (0..NULL_DIM).any(|k| bounds.lo[k] > bounds.hi[k]) {
        return;
    }
    let mut ctx = Ctx {
        sys,
        bounds,
        active,
        rem_min,
        rem_max,
        visit: &mut visit,
    };
    go(&mut ctx, 0, &mut [0; NULL_DIM], &mut [0; NUM_VARS]);
}

pub fn enumerate_solutions(system: &BlockSystem, cons: &ConstraintSet) -> Result<EnumerationResult> {
    enumerate_solutions_with(system, cons, &EnumerationOptions::default())
}

pub fn enumerate_solutions_with(
    system: &BlockSystem,
    cons: &ConstraintSet,
    options: &EnumerationOptions,
) -> Result<EnumerationResult> {
    let block = system.block;
    let basis = null_basis();
    let origin = lattice_origin(system)?;
    let affine = AffineSystem::new(&basis, &origin, cons);

    let (lo, hi) = match propagate(&affine) {
        Propagated::Empty => return Err(Error::Infeasible(block)),
        Propagated::Bounded { lo, hi } => (lo, hi),
    };
    let mut capped = false;
    let mut clamp = |slot: Option<i64>, k: usize, sign: i64| -> Result<i64> {
        match (slot, options.fallback_cap) {
            (Some(v), _) => Ok(v),
            (None, Some(cap)) => {
                capped = true;
                Ok(sign * cap)
            }
            (None, None) => Err(Error::UnboundedLattice {
                block,
                coefficient: COEFFICIENT_NAMES[k],
            }),
        }
    };
    let mut box_lo = [0i64; NULL_DIM];
    let mut box_hi = [0i64; NULL_DIM];
    for k in 0..NULL_DIM {
        box_lo[k] = clamp(lo[k], k, -1)?;
        box_hi[k] = clamp(hi[k], k, 1)?;
    }
    let bounds = CoefficientBounds { lo: box_lo, hi: box_hi };

    let mut found: Vec<(Solution, NullCoefficients)> = Vec::new();
    sweep(&affine, &bounds, |n| {
        let cn = basis.expand(&n);
        let x: Vector27 = std::array::from_fn(|i| origin[i] + cn[i]);
        found.push((Solution(x), n));
    });
    if found.is_empty() {
        return Err(Error::Infeasible(block));
    }
    found.sort();

    let completeness = if capped {
        let boundary_hit = found.iter().any(|(_, n)| {
            (0..NULL_DIM).any(|k| (lo[k].is_none() && n[k] == box_lo[k]) || (hi[k].is_none() && n[k] == box_hi[k]))
        });
        Completeness::Capped {
            radius: options.fallback_cap.unwrap_or_default(),
            boundary_hit,
        }
    } else {
        Completeness::Proven
    };

    let (base, base_n) = found[0];
    let tuples = found.iter().map(|(_, n)| *n - base_n).collect();
    let solutions: Vec<Solution> = found.into_iter().map(|(s, _)| s).collect();
    Ok(EnumerationResult {
        block,
        count: solutions.len(),
        tuples,
        solutions,
        base,
        bounds: bounds.shifted(&base_n),
        completeness,
    })
}

/// One solution of the constrained system: the lexicographically smallest.
pub fn particular_solution(system: &BlockSystem, cons: &ConstraintSet) -> Result<Solution> {
    enumerate_solutions(system, cons).map(|r| r.base)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Equation { row: usize, expected: i64, actual: i64 },
    Constraint { constraint: Constraint, actual: i64 },
    ForcedZero { index: VarIndex, actual: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Equation { row, expected, actual } => {
                write!(f, "equation {} (family {}): sum is {actual}, expected {expected}", row + 1, row / 9 + 1)
            }
            Self::Constraint { constraint, actual } => write!(f, "constraint {constraint} violated: value {actual}"),
            Self::ForcedZero { index, actual } => write!(f, "variable {index} must be zero, is {actual}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_solution(system: &BlockSystem, cons: &ConstraintSet, x: &Solution) -> VerificationReport {
    let mut violations = Vec::new();
    let residual = system.residual(&x.0);
    for (r, &res) in residual.iter().enumerate() {
        if res != 0 {
            violations.push(Violation::Equation {
                row: r,
                expected: system.rhs[r],
                actual: system.rhs[r] + res,
            });
        }
    }
    for c in cons {
        let actual = x.get(c.index());
        if !c.is_satisfied_by(actual) {
            violations.push(Violation::Constraint { constraint: *c, actual });
        }
    }
    for &index in &system.forced_zero {
        let actual = x.get(index);
        let covered = cons.contains(&Constraint::FixedValue { index, value: 0 });
        if actual != 0 && !covered {
            violations.push(Violation::ForcedZero { index, actual });
        }
    }
    VerificationReport { violations }
}

/// Builds the system and constraint set of `block` for the degree-57
/// instance.
pub fn moore57_block(block: BlockId) -> Result<(BlockSystem, ConstraintSet)> {
    let p = intersection_numbers(&IntersectionArray::moore57())?;
    let system = BlockSystem::build(block, &p)?;
    Ok((system, constraints::assemble(block)))
}

pub fn solve_block(block: BlockId) -> Result<EnumerationResult> {
    let (system, cons) = moore57_block(block)?;
    enumerate_solutions(&system, &cons)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCount {
    pub block: BlockId,
    pub count: usize,
}

/// Solution counts of the eight canonical blocks, in canonical order.
pub fn summary() -> Result<Vec<BlockCount>> {
    crate::block::canonical_blocks()
        .into_iter()
        .map(|block| solve_block(block).map(|r| BlockCount { block, count: r.count }))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiscussionRow {
    pub x221: i64,
    pub x331: i64,
    pub x333: i64,
    pub x132: i64,
}

/// Values of a few named variables across the solutions of block 221.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscussionReport {
    pub block: BlockId,
    pub rows: Vec<DiscussionRow>,
    /// Distinct values of variable `(3,3,1)`, ascending.
    pub x331_values: Vec<i64>,
    /// `x(2,2,1) - x(3,3,1)` in the solution where `x(3,3,1) = 2`.
    pub difference_at_two: Option<i64>,
    pub x333_always_zero: bool,
    pub x132_always_zero: bool,
}

impl DiscussionReport {
    pub fn checks_pass(&self) -> bool {
        self.x331_values == [0, 1, 2] && self.difference_at_two == Some(49) && self.x132_always_zero
    }
}

pub fn discussion_report(result: &EnumerationResult) -> DiscussionReport {
    let rows: Vec<DiscussionRow> = result
        .solutions
        .iter()
        .map(|s| DiscussionRow {
            x221: s.at([2, 2, 1]),
            x331: s.at([3, 3, 1]),
            x333: s.at([3, 3, 3]),
            x132: s.at([1, 3, 2]),
        })
        .collect();
    let mut x331_values: Vec<i64> = rows.iter().map(|r| r.x331).collect();
    x331_values.sort_unstable();
    x331_values.dedup();
    DiscussionReport {
        block: result.block,
        difference_at_two: rows.iter().find(|r| r.x331 == 2).map(|r| r.x221 - r.x331),
        x333_always_zero: rows.iter().all(|r| r.x333 == 0),
        x132_always_zero: rows.iter().all(|r| r.x132 == 0),
        x331_values,
        rows,
    }
}

/// Equation row of family `f` (1-based) with fixed indices `(s, t)`.
pub fn equation_row(family: usize, s: u8, t: u8) -> usize {
    row(family - 1, s, t)
}
