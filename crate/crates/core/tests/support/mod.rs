//! Independent brute-force definitions used to cross-check the library.
//!
//! Nothing here calls the library's closure, product table, SCC or analysis
//! code: semigroups are explicit multiplication tables, either written out
//! by hand or obtained by composing graph transformations word by word.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use testability_core::{Transformation, TransitionGraph};

/// An explicit multiplication table.
#[derive(Debug, Clone)]
pub struct Table {
    pub mul: Vec<Vec<usize>>,
}

impl Table {
    pub fn new(mul: Vec<Vec<usize>>) -> Self {
        Self { mul }
    }

    pub fn len(&self) -> usize {
        self.mul.len()
    }

    pub fn m(&self, x: usize, y: usize) -> usize {
        self.mul[x][y]
    }

    pub fn m3(&self, x: usize, y: usize, z: usize) -> usize {
        self.m(self.m(x, y), z)
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.m(e, e) == e).collect()
    }

    pub fn associative(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| self.m3(x, y, z) == self.m(x, self.m(y, z)))))
    }

    /// `x, y` range over all of S and are sandwiched by `e` on the fly.
    fn local_law(&self, law: impl Fn(&Self, usize, usize) -> bool) -> bool {
        let n = self.len();
        for e in self.idempotents() {
            for x in 0..n {
                let lx = self.m3(e, x, e);
                if self.m(lx, lx) != lx {
                    return false;
                }
                for y in 0..n {
                    let ly = self.m3(e, y, e);
                    if !law(self, lx, ly) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn locally_idempotent(&self) -> bool {
        self.local_law(|_, _, _| true)
    }

    pub fn locally_testable(&self) -> bool {
        self.local_law(|t, x, y| t.m(x, y) == t.m(y, x))
    }

    pub fn right_locally_testable(&self) -> bool {
        self.local_law(|t, x, y| t.m3(x, y, x) == t.m(x, y))
    }

    pub fn left_locally_testable(&self) -> bool {
        self.local_law(|t, x, y| t.m3(x, y, x) == t.m(y, x))
    }

    pub fn power(&self, x: usize, i: usize) -> usize {
        (1..i).fold(x, |p, _| self.m(p, x))
    }

    pub fn aperiodic(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| self.power(x, n) == self.power(x, n + 1))
    }

    pub fn threshold_locally_testable(&self) -> bool {
        if !self.aperiodic() {
            return false;
        }
        let n = self.len();
        let idem = self.idempotents();
        for &e in &idem {
            for &f in &idem {
                for x in 0..n {
                    for u in 0..n {
                        for y in 0..n {
                            let lhs = [e, x, f, u, e, y, f]
                                .iter()
                                .skip(1)
                                .fold(e, |a, &b| self.m(a, b));
                            let rhs = [e, y, f, u, e, x, f]
                                .iter()
                                .skip(1)
                                .fold(e, |a, &b| self.m(a, b));
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Monoid `S¹`: adjoins a new identity unconditionally. J-triviality is
    /// unaffected by adjoining to a monoid.
    fn with_one(&self) -> Table {
        let n = self.len();
        let mut mul: Vec<Vec<usize>> = self
            .mul
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.push(0);
                r
            })
            .collect();
        mul.push((0..=n).collect());
        for (x, row) in mul.iter_mut().enumerate().take(n) {
            row[n] = x;
        }
        Table { mul }
    }

    fn ideal(&self, x: usize) -> BTreeSet<usize> {
        let n = self.len();
        (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .map(|(u, v)| self.m3(u, x, v))
            .collect()
    }

    pub fn j_trivial(&self) -> bool {
        let one = self.with_one();
        let ideals: Vec<_> = (0..one.len()).map(|x| one.ideal(x)).collect();
        (0..one.len()).all(|x| (0..x).all(|y| ideals[x] != ideals[y]))
    }

    /// J-equivalence in `S¹`.
    pub fn j_equivalent(&self, x: usize, y: usize) -> bool {
        let one = self.with_one();
        one.ideal(x) == one.ideal(y)
    }
}

/// Transition semigroup by composing letter maps word length by word length.
pub struct NaiveTransitions {
    pub elements: Vec<Transformation>,
    pub table: Table,
}

pub fn naive_transitions(gr: &TransitionGraph) -> NaiveTransitions {
    let n = gr.node_count();
    let letter = |l: usize| -> Transformation {
        (0..n)
            .map(|p| gr.target(p, l).unwrap() as u32)
            .collect::<Vec<_>>()
            .into()
    };
    let letters: Vec<Transformation> = (0..gr.alphabet_size()).map(letter).collect();
    let mut seen: BTreeSet<Transformation> = letters.iter().cloned().collect();
    let mut frontier: Vec<Transformation> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for t in &frontier {
            for l in &letters {
                let u: Transformation = (0..n)
                    .map(|p| l.apply(t.apply(p)) as u32)
                    .collect::<Vec<_>>()
                    .into();
                if seen.insert(u.clone()) {
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    let elements: Vec<Transformation> = seen.into_iter().collect();
    let index: HashMap<&Transformation, usize> =
        elements.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mul = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let c: Transformation = (0..n)
                        .map(|p| b.apply(a.apply(p)) as u32)
                        .collect::<Vec<_>>()
                        .into();
                    index[&c]
                })
                .collect()
        })
        .collect();
    NaiveTransitions {
        table: Table::new(mul),
        elements,
    }
}

/// Hand-written tables of the semigroup fixtures.
pub fn u1_table() -> Table {
    // z = 0, e = 1
    Table::new(vec![vec![0, 0], vec![0, 1]])
}

pub fn lz2_table() -> Table {
    Table::new(vec![vec![0, 0], vec![1, 1]])
}

pub fn z2_table() -> Table {
    // s = 0, 1 = 1
    Table::new(vec![vec![1, 0], vec![0, 1]])
}
