//! Intersection numbers and block systems checked by counting on small
//! distance-regular graphs of diameter 3.

use moorelab_core::block::{BlockSystem, NUM_VARS};
use moorelab_core::drg::{intersection_numbers, IntersectionArray};
use moorelab_core::graph::SimpleGraph;
use moorelab_core::BlockId;

fn heawood() -> SimpleGraph {
    let ring = (0..14).map(|i| (i, (i + 1) % 14));
    let chords = (0..14).step_by(2).map(|i| (i, (i + 5) % 14));
    SimpleGraph::from_edges(14, ring.chain(chords)).unwrap()
}

fn cube() -> SimpleGraph {
    let edges = (0..8usize).flat_map(|u| (0..3).map(move |b| (u, u ^ (1 << b)))).filter(|(u, v)| u < v);
    SimpleGraph::from_edges(8, edges).unwrap()
}

fn cases() -> Vec<(&'static str, SimpleGraph, &'static str)> {
    vec![
        ("hexagon", SimpleGraph::cycle(6), "2,1,1;1,1,2"),
        ("heptagon", SimpleGraph::cycle(7), "2,1,1;1,1,1"),
        ("heawood", heawood(), "3,2,2;1,1,3"),
        ("cube", cube(), "3,2,1;1,2,3"),
    ]
}

fn dist(g: &SimpleGraph) -> Vec<Vec<usize>> {
    g.distance_matrix()
        .into_iter()
        .map(|row| row.into_iter().map(Option::unwrap).collect())
        .collect()
}

#[test]
fn intersection_numbers_match_counts() {
    for (name, g, arr) in cases() {
        let arr: IntersectionArray = arr.parse().unwrap();
        let p = intersection_numbers(&arr).unwrap();
        let d = dist(&g);
        let n = g.order();
        assert_eq!(p.multiplicities().total() as usize, n, "{name}");
        for x in 0..n {
            for y in 0..n {
                let k = d[x][y];
                for i in 0..=3 {
                    for j in 0..=3 {
                        let count = (0..n).filter(|&z| d[x][z] == i && d[y][z] == j).count();
                        assert_eq!(count as i64, p.get(k, i, j), "{name}: p^{k}_{i}{j} at ({x},{y})");
                    }
                }
            }
        }
    }
}

#[test]
fn triple_counts_solve_block_systems() {
    for (name, g, arr) in cases() {
        let p = intersection_numbers(&arr.parse().unwrap()).unwrap();
        let d = dist(&g);
        let n = g.order();
        let mut seen = 0;
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    if u == v || v == w || u == w {
                        continue;
                    }
                    let block = BlockId::new(d[v][w] as u8, d[u][w] as u8, d[u][v] as u8).unwrap();
                    let mut x = [0i64; NUM_VARS];
                    for z in 0..n {
                        let t = [d[u][z], d[v][z], d[w][z]];
                        if t.iter().all(|&k| k >= 1) {
                            x[9 * (t[0] - 1) + 3 * (t[1] - 1) + (t[2] - 1)] += 1;
                        }
                    }
                    let system = BlockSystem::build(block, &p).unwrap();
                    assert_eq!(system.residual(&x), [0; NUM_VARS], "{name}: triple ({u},{v},{w}) block {block}");
                    seen += 1;
                }
            }
        }
        assert_eq!(seen, n * (n - 1) * (n - 2));
    }
}
