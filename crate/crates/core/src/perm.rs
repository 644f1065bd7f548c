//! Permutation systems, the d-partite graph `H` they define, and a
//! backtracking existence search for diameter-2 Moore graphs.
//!
//! Parts are numbered `1..=d`, each holding `d - 1` vertices `0..d-1`. A
//! system assigns a bijection `theta(i, j)` from part `i` to part `j` for
//! every `i < j`; `theta(j, i)` is its inverse. `H` has an edge from `x` in
//! part `i` to `theta(i, j)(x)` in part `j`. A Moore graph of degree `d`
//! exists iff some system yields an `H` with no triangles or squares.
//!
//! Compositions are diagrammatic: `p.then(q)` applies `p` first.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// A permutation of `0..n`, stored in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return Err(Error::InvalidPermSystem(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Self(images))
    }

    /// Builds from 1-based one-line notation.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermSystem(format!("{images:?} is not 1-based")));
        }
        Self::new(images.iter().map(|y| y - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|y| y + 1).collect()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&y| other.0[y]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Perm(inv)
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(x, &y)| *x == y).map(|(x, _)| x)
    }

    pub fn fixed_point_free(&self) -> bool {
        self.fixed_points().next().is_none()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Perm::from_one_based(&v).map_err(D::Error::custom)
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Perm> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Perm(cur.clone())];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot has a successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Perm(cur.clone()));
    }
}

pub fn derangements(n: usize) -> Vec<Perm> {
    permutations(n).into_iter().filter(Perm::fixed_point_free).collect()
}

/// Pairs `(i, j)` with `1 <= i < j <= parts`, lexicographic.
pub fn pairs(parts: usize) -> Vec<(usize, usize)> {
    (1..=parts).flat_map(|i| (i + 1..=parts).map(move |j| (i, j))).collect()
}

pub type PermMap = BTreeMap<(usize, usize), Perm>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermSystem {
    degree: usize,
    theta: PermMap,
}

impl PermSystem {
    pub fn new(degree: usize, theta: PermMap) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidPermSystem(format!("degree {degree} is below 2")));
        }
        let expected = pairs(degree);
        if theta.keys().copied().ne(expected.iter().copied()) {
            let missing: Vec<_> = expected.iter().filter(|p| !theta.contains_key(p)).collect();
            return Err(Error::InvalidPermSystem(format!(
                "pairs must be exactly i<j<={degree}; missing {missing:?}"
            )));
        }
        if let Some(((i, j), p)) = theta.iter().find(|(_, p)| p.len() != degree - 1) {
            return Err(Error::InvalidPermSystem(format!(
                "theta({i},{j}) has {} points, expected {}",
                p.len(),
                degree - 1
            )));
        }
        Ok(Self { degree, theta })
    }

    pub fn identity(degree: usize) -> Result<Self> {
        let theta = pairs(degree).into_iter().map(|p| (p, Perm::identity(degree.saturating_sub(1)))).collect();
        Self::new(degree, theta)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn pairs(&self) -> &PermMap {
        &self.theta
    }

    /// Bijection from part `i` to part `j`, for any `i != j`.
    pub fn theta(&self, i: usize, j: usize) -> Perm {
        if i < j {
            self.theta[&(i, j)].clone()
        } else {
            self.theta[&(j, i)].inverse()
        }
    }

    /// `theta(k,i)` then `theta(i,j)` then `theta(j,k)`, a permutation of
    /// part `k`. It fixes `x` iff `x` lies on a triangle through parts
    /// `i, j, k` in `H`.
    pub fn triangle_composition(&self, i: usize, j: usize, k: usize) -> Perm {
        self.theta(k, i).then(&self.theta(i, j)).then(&self.theta(j, k))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

struct ThetaMap<'a>(&'a PermMap);

impl Serialize for ThetaMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for ((i, j), p) in self.0 {
            m.serialize_entry(&format!("{i},{j}"), p)?;
        }
        m.end()
    }
}

impl Serialize for PermSystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PermSystem", 2)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("theta", &ThetaMap(&self.theta))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PermSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            degree: usize,
            theta: BTreeMap<String, Perm>,
        }
        let raw = Raw::deserialize(d)?;
        let mut theta = PermMap::new();
        for (key, p) in raw.theta {
            let pair = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| D::Error::custom(format!("bad pair key {key:?}")))?;
            theta.insert(pair, p);
        }
        PermSystem::new(raw.degree, theta).map_err(D::Error::custom)
    }
}

/// Vertex id of `x` in part `part` (1-based) of `H` for degree `d`.
pub fn h_vertex(d: usize, part: usize, x: usize) -> usize {
    (part - 1) * (d - 1) + x
}

pub fn build_h(sys: &PermSystem) -> SimpleGraph {
    let d = sys.degree;
    let m = d - 1;
    let mut h = SimpleGraph::new(d * m);
    for (&(i, j), p) in &sys.theta {
        for x in 0..m {
            h.add_edge(h_vertex(d, i, x), h_vertex(d, j, p.apply(x)))
                .expect("a bijection between distinct parts adds distinct edges");
        }
    }
    let parts = (1..=d).flat_map(|i| std::iter::repeat_n(i, m)).collect();
    h.set_parts(parts).expect("one label per vertex");
    h
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HReport {
    pub part_count: bool,
    pub part_sizes: bool,
    pub regular: bool,
    pub one_neighbor_per_part: bool,
    pub no_short_cycles: bool,
}

impl HReport {
    pub fn passes(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.part_count, "part count"),
            (self.part_sizes, "part sizes"),
            (self.regular, "regularity"),
            (self.one_neighbor_per_part, "one neighbour per other part"),
            (self.no_short_cycles, "no triangles or squares"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }
}

pub fn verify_h(h: &SimpleGraph, d: usize) -> HReport {
    let Some(parts) = h.parts() else {
        return HReport {
            part_count: false,
            part_sizes: false,
            regular: false,
            one_neighbor_per_part: false,
            no_short_cycles: h.girth().is_none_or(|g| g >= 5),
        };
    };
    let mut sizes = BTreeMap::<usize, usize>::new();
    for &p in parts {
        *sizes.entry(p).or_default() += 1;
    }
    let one_per_part = (0..h.order()).all(|u| {
        let mut seen: Vec<usize> = h.neighbors(u).iter().map(|&v| parts[v]).collect();
        seen.sort_unstable();
        let own = parts[u];
        let others: Vec<usize> = sizes.keys().copied().filter(|&p| p != own).collect();
        seen == others
    });
    HReport {
        part_count: sizes.len() == d,
        part_sizes: sizes.values().all(|&s| s == d - 1),
        regular: (0..h.order()).all(|u| h.degree(u) == d - 1),
        one_neighbor_per_part: one_per_part,
        no_short_cycles: h.girth().is_none_or(|g| g >= 5),
    }
}

/// Adds a centre (vertex 0) and its neighbours (vertices `1..=d`), joining
/// neighbour `i` to every vertex of part `i`. `H` vertices are shifted by
/// `d + 1`.
pub fn assemble_moore(h: &SimpleGraph, d: usize) -> Result<SimpleGraph> {
    let parts = h
        .parts()
        .ok_or_else(|| Error::Graph("H carries no part labels".into()))?;
    let offset = d + 1;
    let mut g = SimpleGraph::new(offset + h.order());
    for i in 1..=d {
        g.add_edge(0, i)?;
    }
    for (u, v) in h.edges() {
        g.add_edge(offset + u, offset + v)?;
    }
    for (u, &p) in parts.iter().enumerate() {
        if !(1..=d).contains(&p) {
            return Err(Error::Graph(format!("part label {p} outside 1..={d}")));
        }
        g.add_edge(p, offset + u)?;
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MooreReport {
    pub degree: usize,
    pub order: usize,
    pub expected_order: usize,
    pub regular: bool,
    pub girth: Option<usize>,
    pub diameter: Option<usize>,
}

impl MooreReport {
    pub fn is_moore(&self) -> bool {
        self.order == self.expected_order && self.regular && self.girth == Some(5) && self.diameter == Some(2)
    }
}

impl fmt::Display for MooreReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<usize>| v.map_or_else(|| "none".to_string(), |v| v.to_string());
        write!(
            f,
            "order {} (expected {}), {}-regular: {}, girth {}, diameter {}: {}",
            self.order,
            self.expected_order,
            self.degree,
            self.regular,
            opt(self.girth),
            opt(self.diameter),
            if self.is_moore() { "Moore" } else { "not Moore" }
        )
    }
}

pub fn moore_report(g: &SimpleGraph, d: usize) -> MooreReport {
    let expected_order = d * d + 1;
    // skip the quadratic searches on graphs that cannot qualify anyway
    let plausible = g.order() == expected_order;
    MooreReport {
        degree: d,
        order: g.order(),
        expected_order,
        regular: g.regular_degree() == Some(d),
        girth: if plausible { g.girth() } else { None },
        diameter: if plausible { g.diameter() } else { None },
    }
}

pub fn is_moore(g: &SimpleGraph, d: usize) -> bool {
    moore_report(g, d).is_moore()
}

/// Extends a system on parts `1..d` (bijections of `0..d-1`) to parts
/// `1..=d` by taking `theta(i, d)` to be the identity.
pub fn cor6_lift(d: usize, psi: &PermMap) -> Result<PermSystem> {
    if d < 2 {
        return Err(Error::InvalidPermSystem(format!("degree {d} is below 2")));
    }
    let mut theta = psi.clone();
    for i in 1..d {
        theta.insert((i, d), Perm::identity(d - 1));
    }
    PermSystem::new(d, theta)
}

/// Graph search over every candidate system, no pruning. Only usable for
/// tiny degrees: the space has `((d-1)!)^(d(d-1)/2)` points, or
/// `((d-1)!)^((d-1)(d-2)/2)` when normalized.
pub fn naive_search(d: usize, normalize: bool) -> Result<Option<PermSystem>> {
    if d < 2 {
        return Err(Error::OutOfRange { what: "degree", value: d as i64 });
    }
    let free: Vec<(usize, usize)> = pairs(d).into_iter().filter(|&(_, j)| !normalize || j < d).collect();
    let perms = permutations(d - 1);
    let mut choice = vec![0usize; free.len()];
    loop {
        let mut theta: PermMap = free.iter().zip(&choice).map(|(&p, &c)| (p, perms[c].clone())).collect();
        if normalize {
            for i in 1..d {
                theta.insert((i, d), Perm::identity(d - 1));
            }
        }
        let sys = PermSystem::new(d, theta)?;
        if verify_h(&build_h(&sys), d).passes() {
            return Ok(Some(sys));
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(None);
            }
            choice[k] += 1;
            if choice[k] < perms.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl SearchBudget {
    pub const UNLIMITED: Self = Self {
        max_nodes: u64::MAX,
        max_time: None,
    };

    pub fn nodes(max_nodes: u64) -> Self {
        Self { max_nodes, max_time: None }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self::UNLIMITED
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Fix `theta(i, d)` to the identity.
    pub normalize: bool,
    /// Shuffle candidate order per pair; `None` keeps lexicographic order.
    pub seed: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            normalize: true,
            seed: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(PermSystem),
    ExhaustedNoSolution,
    BudgetExceeded,
}

impl SearchOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Found(_) => "Found",
            Self::ExhaustedNoSolution => "ExhaustedNoSolution",
            Self::BudgetExceeded => "BudgetExceeded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub degree: usize,
    pub outcome: SearchOutcome,
    /// Candidate edges examined.
    pub nodes: u64,
}

pub fn search(d: usize, budget: SearchBudget) -> Result<SearchReport> {
    search_with(d, budget, SearchOptions::default())
}

/// Partial `H` with bitset adjacency for the distance-at-most-3 test.
struct Partial {
    words: usize,
    bits: Vec<u64>,
    adj: Vec<Vec<usize>>,
}

impl Partial {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            words,
            bits: vec![0; n * words],
            adj: vec![Vec::new(); n],
        }
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    fn flip(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] ^= 1 << (v % 64);
        self.bits[v * self.words + u / 64] ^= 1 << (u % 64);
    }

    fn meets(&self, a: usize, b: usize) -> bool {
        self.row(a).iter().zip(self.row(b)).any(|(x, y)| x & y != 0)
    }

    /// True if joining `u` and `v` would close a cycle of length 3 or 4.
    fn closes_short_cycle(&self, u: usize, v: usize) -> bool {
        self.meets(u, v) || self.adj[u].iter().any(|&a| self.meets(a, v))
    }

    fn push(&mut self, u: usize, v: usize) {
        self.flip(u, v);
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    fn pop(&mut self, u: usize, v: usize) {
        self.flip(u, v);
        debug_assert_eq!(self.adj[u].last(), Some(&v));
        debug_assert_eq!(self.adj[v].last(), Some(&u));
        self.adj[u].pop();
        self.adj[v].pop();
    }
}

/// Depth-first search assigning one image `theta(i, j)(x)` per step, pairs
/// in lexicographic order and `x` ascending. Each new edge is rejected if it
/// closes a triangle or square in the partial `H`.
pub fn search_with(d: usize, budget: SearchBudget, options: SearchOptions) -> Result<SearchReport> {
    if d < 2 {
        return Err(Error::OutOfRange { what: "degree", value: d as i64 });
    }
    let m = d - 1;
    let free: Vec<(usize, usize)> = pairs(d)
        .into_iter()
        .filter(|&(_, j)| !options.normalize || j < d)
        .collect();
    let mut rng = options.seed.map(ChaCha8Rng::seed_from_u64);
    let orders: Vec<Vec<usize>> = free
        .iter()
        .map(|_| {
            let mut o: Vec<usize> = (0..m).collect();
            if let Some(rng) = rng.as_mut() {
                o.shuffle(rng);
            }
            o
        })
        .collect();

    let mut partial = Partial::new(d * m);
    if options.normalize {
        for i in 1..d {
            for x in 0..m {
                partial.push(h_vertex(d, i, x), h_vertex(d, d, x));
            }
        }
    }

    let total = free.len() * m;
    let mut next = vec![0usize; total + 1];
    let mut chosen = vec![0usize; total];
    let mut used = vec![false; free.len() * m];
    let start = Instant::now();
    let mut nodes = 0u64;
    let mut slot = 0usize;

    let outcome = loop {
        if slot == total {
            break Some(true);
        }
        let (pi, x) = (slot / m, slot % m);
        let (i, j) = free[pi];
        let u = h_vertex(d, i, x);
        let mut placed = false;
        let mut stopped = false;
        while next[slot] < m {
            let y = orders[pi][next[slot]];
            next[slot] += 1;
            if used[pi * m + y] {
                continue;
            }
            if nodes >= budget.max_nodes
                || (nodes.is_multiple_of(4096) && budget.max_time.is_some_and(|t| start.elapsed() >= t))
            {
                stopped = true;
                break;
            }
            nodes += 1;
            let v = h_vertex(d, j, y);
            if !partial.closes_short_cycle(u, v) {
                partial.push(u, v);
                used[pi * m + y] = true;
                chosen[slot] = y;
                placed = true;
                break;
            }
        }
        if placed {
            slot += 1;
            next[slot] = 0;
            continue;
        }
        if stopped {
            break None;
        }
        if slot == 0 {
            break Some(false);
        }
        slot -= 1;
        let (pi, x) = (slot / m, slot % m);
        let (i, j) = free[pi];
        let y = chosen[slot];
        partial.pop(h_vertex(d, i, x), h_vertex(d, j, y));
        used[pi * m + y] = false;
    };

    let outcome = match outcome {
        None => SearchOutcome::BudgetExceeded,
        Some(false) => SearchOutcome::ExhaustedNoSolution,
        Some(true) => {
            let mut theta = PermMap::new();
            for (pi, &pair) in free.iter().enumerate() {
                theta.insert(pair, Perm::new(chosen[pi * m..(pi + 1) * m].to_vec())?);
            }
            if options.normalize {
                for i in 1..d {
                    theta.insert((i, d), Perm::identity(m));
                }
            }
            let sys = PermSystem::new(d, theta)?;
            let h = build_h(&sys);
            let report = verify_h(&h, d);
            assert!(report.passes(), "search returned a system failing {:?}", report.failures());
            let g = assemble_moore(&h, d)?;
            let moore = moore_report(&g, d);
            assert!(moore.is_moore(), "search returned a system whose graph is not Moore: {moore}");
            SearchOutcome::Found(sys)
        }
    };
    Ok(SearchReport { degree: d, outcome, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Perm {
        Perm::from_one_based(v).unwrap()
    }

    fn hexagon_system() -> PermSystem {
        let theta = PermMap::from([((1, 2), p(&[2, 1])), ((1, 3), p(&[1, 2])), ((2, 3), p(&[1, 2]))]);
        PermSystem::new(3, theta).unwrap()
    }

    #[test]
    fn perm_basics() {
        let a = p(&[2, 3, 1]);
        assert_eq!(a.then(&a.inverse()), Perm::identity(3));
        assert_eq!(a.then(&a).images(), &[2, 0, 1]);
        assert!(Perm::new(vec![0, 0]).is_err());
        assert!(!Perm::identity(1).fixed_point_free());
        assert!(p(&[2, 1]).fixed_point_free());
        assert_eq!(format!("{a}"), "[2 3 1]");
    }

    #[test]
    fn permutation_listings() {
        let all = permutations(4);
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(derangements(4).len(), 9);
        assert_eq!(derangements(3).len(), 2);
        assert_eq!(permutations(0).len(), 1);
    }

    #[test]
    fn hexagon() {
        let h = build_h(&hexagon_system());
        assert_eq!(h.order(), 6);
        assert_eq!(h.girth(), Some(6));
        assert!(verify_h(&h, 3).passes());
        let g = assemble_moore(&h, 3).unwrap();
        assert!(is_moore(&g, 3));
    }

    #[test]
    fn identity_system_has_triangle() {
        let h = build_h(&PermSystem::identity(3).unwrap());
        let r = verify_h(&h, 3);
        assert!(!r.no_short_cycles);
        assert_eq!(r.failures(), ["no triangles or squares"]);
    }

    #[test]
    fn degree_two_is_pentagon() {
        let sys = PermSystem::identity(2).unwrap();
        let h = build_h(&sys);
        assert_eq!(h.edge_count(), 1);
        assert!(verify_h(&h, 2).passes());
        let g = assemble_moore(&h, 2).unwrap();
        assert_eq!(g.order(), 5);
        assert!(is_moore(&g, 2));
        assert!(!is_moore(&SimpleGraph::complete(4), 3));
    }

    #[test]
    fn lift() {
        let psi = PermMap::from([((1, 2), p(&[2, 1]))]);
        assert_eq!(cor6_lift(3, &psi).unwrap(), hexagon_system());
        let fixed = PermMap::from([((1, 2), p(&[1, 2]))]);
        let h = build_h(&cor6_lift(3, &fixed).unwrap());
        // 0 in parts 1, 2 and 3 are pairwise adjacent
        let (a, b, c) = (h_vertex(3, 1, 0), h_vertex(3, 2, 0), h_vertex(3, 3, 0));
        assert!(h.has_edge(a, b) && h.has_edge(b, c) && h.has_edge(a, c));
    }

    #[test]
    fn json_round_trip() {
        let sys = hexagon_system();
        let json = sys.to_json();
        assert_eq!(json, r#"{"degree":3,"theta":{"1,2":[2,1],"1,3":[1,2],"2,3":[1,2]}}"#);
        let back: PermSystem = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sys);
        assert!(serde_json::from_str::<PermSystem>(r#"{"degree":3,"theta":{"1,2":[2,1]}}"#).is_err());
        assert!(serde_json::from_str::<PermSystem>(r#"{"degree":3,"theta":{"1,2":[2,1],"1,3":[1,2],"2,3":[1,1]}}"#).is_err());
    }

    #[test]
    fn small_searches() {
        let r = search(3, SearchBudget::UNLIMITED).unwrap();
        assert!(matches!(r.outcome, SearchOutcome::Found(_)));
        let r = search(2, SearchBudget::UNLIMITED).unwrap();
        assert!(matches!(r.outcome, SearchOutcome::Found(_)));
        let r = search(4, SearchBudget::UNLIMITED).unwrap();
        assert_eq!(r.outcome, SearchOutcome::ExhaustedNoSolution);
        assert!(search(1, SearchBudget::UNLIMITED).is_err());
    }

    #[test]
    fn budget_is_reported() {
        let r = search(57, SearchBudget::nodes(1000)).unwrap();
        assert_eq!(r.outcome, SearchOutcome::BudgetExceeded);
        assert_eq!(r.nodes, 1000);
    }

    #[test]
    fn naive_agrees_on_tiny_degrees() {
        assert!(naive_search(3, true).unwrap().is_some());
        assert!(naive_search(3, false).unwrap().is_some());
        assert!(naive_search(4, true).unwrap().is_none());
    }

    #[test]
    fn seeded_search_is_reproducible() {
        let opts = SearchOptions { normalize: false, seed: Some(7) };
        let a = search_with(3, SearchBudget::UNLIMITED, opts).unwrap();
        let b = search_with(3, SearchBudget::UNLIMITED, opts).unwrap();
        assert_eq!(a, b);
        assert!(matches!(a.outcome, SearchOutcome::Found(_)));
    }
}
