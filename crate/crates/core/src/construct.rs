//! Direct products of semigroups and graphs, and graph powers.

use crate::error::{Error, Result};
use crate::model::{FiniteSemigroup, TransitionGraph};
use crate::semigroup::close_cayley;

/// Element numbering of `S1 × S2`: position `i` holds the pair `(p, q)`.
///
/// The generating pairs `(x, h)` and `(g, y)` (with `h`, `g` generators of
/// their factor) come first, the remaining pairs after them, both groups in
/// row-major order `p·n2 + q`.
pub fn product_numbering(n1: usize, g1: usize, n2: usize, g2: usize) -> Vec<(usize, usize)> {
    let pairs = (0..n1).flat_map(|p| (0..n2).map(move |q| (p, q)));
    let is_generator = |&(p, q): &(usize, usize)| p < g1 || q < g2;
    pairs
        .clone()
        .filter(is_generator)
        .chain(pairs.filter(|pq| !is_generator(pq)))
        .collect()
}

/// Number of generating pairs in a direct product: `n1·g2 + n2·g1 − g1·g2`.
pub fn product_generator_count(n1: usize, g1: usize, n2: usize, g2: usize) -> usize {
    n1 * g2 + n2 * g1 - g1 * g2
}

/// Componentwise product, numbered by [`product_numbering`].
pub fn semigroup_direct_product(
    s1: &FiniteSemigroup,
    s2: &FiniteSemigroup,
) -> Result<FiniteSemigroup> {
    let (n1, g1, n2, g2) = (
        s1.len(),
        s1.generator_count(),
        s2.len(),
        s2.generator_count(),
    );
    let pairs = product_numbering(n1, g1, n2, g2);
    let gens = product_generator_count(n1, g1, n2, g2);
    let mut index = vec![0usize; n1 * n2];
    for (i, &(p, q)) in pairs.iter().enumerate() {
        index[p * n2 + q] = i;
    }
    let mut cayley = Vec::with_capacity(pairs.len() * gens);
    for &(p, q) in &pairs {
        for &(a, b) in &pairs[..gens] {
            cayley.push(index[s1.mul(p, a) * n2 + s2.mul(q, b)]);
        }
    }
    close_cayley(pairs.len(), gens, &cayley)
}

/// Synchronous product over the common label prefix; pair `(p, q)` is node `p·g2 + q`.
pub fn graph_direct_product(g1: &TransitionGraph, g2: &TransitionGraph) -> Result<TransitionGraph> {
    if !g1.is_complete() || !g2.is_complete() {
        return Err(Error::IncompleteInput);
    }
    let a = g1.alphabet_size().min(g2.alphabet_size());
    let m = g2.node_count();
    let mut delta = Vec::with_capacity(g1.node_count() * m * a);
    for p in 0..g1.node_count() {
        for q in 0..m {
            for label in 0..a {
                let p2 = g1.target(p, label).expect("complete");
                let q2 = g2.target(q, label).expect("complete");
                delta.push(Some(p2 * m + q2));
            }
        }
    }
    TransitionGraph::new(a, g1.node_count() * m, delta)
}

/// `gr × gr × … × gr` with `m` factors, multiplied left to right.
pub fn graph_power(gr: &TransitionGraph, m: usize) -> Result<TransitionGraph> {
    if m < 2 {
        return Err(Error::Invalid {
            what: "graph power",
            detail: format!("exponent must be at least 2, got {m}"),
        });
    }
    let mut acc = graph_direct_product(gr, gr)?;
    for _ in 2..m {
        acc = graph_direct_product(&acc, gr)?;
    }
    Ok(acc)
}
