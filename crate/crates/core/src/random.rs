//! Random and parametric inputs for tests, benchmarks and capacity runs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::transition_semigroup;
use crate::model::{FiniteSemigroup, TransitionGraph};

/// Uniformly random complete graph.
pub fn random_complete_graph<R: Rng + ?Sized>(
    rng: &mut R,
    nodes: usize,
    labels: usize,
) -> TransitionGraph {
    let rows: Vec<Vec<usize>> = (0..nodes)
        .map(|_| (0..labels).map(|_| rng.gen_range(0..nodes)).collect())
        .collect();
    TransitionGraph::from_rows(&rows).expect("valid random graph")
}

/// Complete graph whose last node is a sink; every other transition stays
/// among the live nodes with probability `live` and falls into the sink otherwise.
pub fn random_sink_graph<R: Rng + ?Sized>(
    rng: &mut R,
    nodes: usize,
    labels: usize,
    live: f64,
) -> TransitionGraph {
    let sink = nodes - 1;
    let rows: Vec<Vec<usize>> = (0..nodes)
        .map(|p| {
            (0..labels)
                .map(|_| {
                    if p == sink || !rng.gen_bool(live) {
                        sink
                    } else {
                        rng.gen_range(0..sink.max(1))
                    }
                })
                .collect()
        })
        .collect();
    TransitionGraph::from_rows(&rows).expect("valid random graph")
}

/// Transition semigroup of random transformations, or `None` if it exceeds `max_elements`.
pub fn random_transformation_semigroup<R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    generators: usize,
    max_elements: usize,
) -> Option<FiniteSemigroup> {
    let gr = random_complete_graph(rng, degree, generators);
    transition_semigroup(&gr, max_elements)
        .ok()
        .map(|ts| ts.semigroup)
}

/// Rejection-samples a random transformation semigroup with exactly `size` elements.
pub fn random_semigroup_of_size<R: Rng + ?Sized>(rng: &mut R, size: usize) -> FiniteSemigroup {
    loop {
        let degree = rng.gen_range(3..=6);
        let generators = rng.gen_range(1..=3);
        if let Some(s) = random_transformation_semigroup(rng, degree, generators, size) {
            if s.len() == size {
                return s;
            }
        }
    }
}

/// Cyclic group of order `m`: element `i` is `s^(i+1)`, element 0 generates.
pub fn cyclic_group(m: usize) -> FiniteSemigroup {
    let cayley = (0..m).map(|i| (i + 1) % m).collect();
    FiniteSemigroup::new(m, 1, cayley).expect("cyclic group")
}

/// Rectangular band `I × J` with `(a, b)(c, d) = (a, d)`, every element a generator.
pub fn rectangular_band(rows: usize, columns: usize) -> FiniteSemigroup {
    let n = rows * columns;
    let table: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| (x / columns) * columns + y % columns)
                .collect()
        })
        .collect();
    FiniteSemigroup::from_table(&table).expect("rectangular band")
}

/// Random union-closed family of subsets of a small universe, at most `max` sets,
/// as a full multiplication table.
pub fn random_semilattice<R: Rng + ?Sized>(rng: &mut R, max: usize) -> FiniteSemigroup {
    loop {
        let seeds: Vec<u8> = (0..rng.gen_range(1..=3))
            .map(|_| rng.gen_range(0..16))
            .collect();
        let mut sets = seeds.clone();
        let mut i = 0;
        while i < sets.len() {
            for j in 0..sets.len() {
                let u = sets[i] | sets[j];
                if !sets.contains(&u) {
                    sets.push(u);
                }
            }
            i += 1;
        }
        if sets.len() > max {
            continue;
        }
        sets.shuffle(rng);
        let index = |v: u8| sets.iter().position(|&s| s == v).expect("closed");
        let table: Vec<Vec<usize>> = sets
            .iter()
            .map(|&a| sets.iter().map(|&b| index(a | b)).collect())
            .collect();
        return FiniteSemigroup::from_table(&table).expect("semilattice");
    }
}
