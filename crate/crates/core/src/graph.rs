//! Decision procedures on transition graphs.
//!
//! Algebraic properties are decided on the transition semigroup of the
//! (completed) graph and reported back with witnesses spelled over the
//! graph's labels. k-testability is decided by the profile oracle acting
//! directly on node transformations, so it does not depend on the semigroup
//! construction.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{
    FiniteSemigroup, Limits, Property, PropertyReport, Request, Transformation, TransitionGraph,
    Verdict, Witness, Word,
};
use crate::oracle::{self, LetterAction, OrderSearch};
use crate::semigroup::{self, close_cayley, determination_verdict};

/// Routes every undefined cell to a fresh self-looping sink node.
///
/// Complete graphs are returned unchanged.
pub fn complete_with_sink(gr: &TransitionGraph) -> TransitionGraph {
    if gr.is_complete() {
        return gr.clone();
    }
    let sink = gr.node_count();
    let a = gr.alphabet_size();
    let mut delta: Vec<Option<usize>> =
        gr.cells().iter().map(|c| Some(c.unwrap_or(sink))).collect();
    delta.extend(std::iter::repeat_n(Some(sink), a));
    TransitionGraph::new(a, sink + 1, delta)
        .expect("completion preserves validity")
        .with_sink(sink)
}

/// Transition semigroup of a complete graph.
#[derive(Debug, Clone)]
pub struct TransitionSemigroup {
    pub semigroup: FiniteSemigroup,
    /// Generator index of each label; labels with equal transformations share one.
    pub label_to_generator: Vec<usize>,
    /// First label mapped to each generator.
    pub generator_label: Vec<usize>,
    /// Transformation of each element.
    pub elements: Vec<Transformation>,
}

impl TransitionSemigroup {
    /// Spells an element's factorization over the graph's labels.
    pub fn word(&self, element: usize) -> Word {
        self.semigroup
            .factorization(element)
            .iter()
            .map(|&g| self.generator_label[g])
            .collect()
    }

    /// Element reached by a nonempty label word.
    pub fn evaluate(&self, word: &[usize]) -> Option<usize> {
        let gens: Vec<usize> = word.iter().map(|&l| self.label_to_generator[l]).collect();
        self.semigroup.evaluate(&gens)
    }
}

/// All transformations induced by nonempty words, closed breadth-first.
///
/// Word `uv` acts as `u` first, then `v`. Fails with [`Error::TooLarge`] once
/// more than `max_elements` transformations are found.
pub fn transition_semigroup(
    gr: &TransitionGraph,
    max_elements: usize,
) -> Result<TransitionSemigroup> {
    if !gr.is_complete() {
        return Err(Error::IncompleteInput);
    }
    let mut index: HashMap<Transformation, usize> = HashMap::new();
    let mut elements: Vec<Transformation> = Vec::new();
    let mut label_to_generator = Vec::with_capacity(gr.alphabet_size());
    let mut generator_label = Vec::new();
    for label in 0..gr.alphabet_size() {
        let t = gr.letter_transformation(label)?;
        let id = *index.entry(t.clone()).or_insert_with(|| {
            elements.push(t);
            generator_label.push(label);
            elements.len() - 1
        });
        label_to_generator.push(id);
    }
    let g = elements.len();
    let mut cayley: Vec<usize> = Vec::new();
    let mut x = 0;
    while x < elements.len() {
        for gen in 0..g {
            let y = elements[x].then(&elements[gen]);
            let next = elements.len();
            let id = *index.entry(y).or_insert(next);
            if id == next {
                if next >= max_elements {
                    return Err(Error::TooLarge {
                        limit: max_elements,
                    });
                }
                elements.push(elements[x].then(&elements[gen]));
            }
            cayley.push(id);
        }
        x += 1;
    }
    let semigroup = close_cayley(elements.len(), g, &cayley)?;
    Ok(TransitionSemigroup {
        semigroup,
        label_to_generator,
        generator_label,
        elements,
    })
}

/// Letters act on the whole node set; the empty word is the identity.
pub struct TransformationAction {
    letters: Vec<Transformation>,
    nodes: usize,
}

impl TransformationAction {
    pub fn new(gr: &TransitionGraph) -> Result<Self> {
        let letters = (0..gr.alphabet_size())
            .map(|l| gr.letter_transformation(l))
            .collect::<Result<_>>()?;
        Ok(Self {
            letters,
            nodes: gr.node_count(),
        })
    }
}

impl LetterAction for TransformationAction {
    type Value = Transformation;

    fn alphabet_size(&self) -> usize {
        self.letters.len()
    }

    fn initial(&self) -> Transformation {
        Transformation::identity(self.nodes)
    }

    fn step(&self, value: &Transformation, letter: usize) -> Transformation {
        value.then(&self.letters[letter])
    }
}

/// Letter transformations are idempotent and commute pairwise.
pub fn is_1_testable(gr: &TransitionGraph) -> Result<Verdict> {
    let letters = (0..gr.alphabet_size())
        .map(|l| gr.letter_transformation(l))
        .collect::<Result<Vec<_>>>()?;
    for (u, tu) in letters.iter().enumerate() {
        for (v, tv) in letters.iter().enumerate().skip(u) {
            let (left, right) = if u == v {
                (tu.then(tu), tu.clone())
            } else {
                (tu.then(tv), tv.then(tu))
            };
            if let Some(node) = (0..gr.node_count()).find(|&p| left.apply(p) != right.apply(p)) {
                let detail = if u == v {
                    format!("label {u} applied twice differs from once at node {node}")
                } else {
                    format!("labels {u} and {v} do not commute at node {node}")
                };
                return Ok(Verdict::no(
                    Property::OneTestability,
                    Witness::Labels {
                        first: u,
                        second: v,
                        node,
                    },
                    detail,
                ));
            }
        }
    }
    Ok(Verdict::yes(Property::OneTestability))
}

/// Whether equal k-profiles force equal transformations. Returns the verdict
/// and the number of profile states explored.
pub fn is_k_testable_graph(
    gr: &TransitionGraph,
    k: usize,
    budget: usize,
) -> Result<(Verdict, usize)> {
    if k == 0 {
        return Err(Error::BadK { k, t: 1 });
    }
    let action = TransformationAction::new(gr)?;
    let outcome = oracle::profile_determines(&action, k, 1, budget)?;
    let states = outcome.states();
    let verdict = determination_verdict(Property::KTestability(k), outcome, |w| {
        action.run(w).image().to_vec()
    });
    Ok((verdict, states))
}

/// Least `k <= k_max` at which the graph is k-testable; the result also
/// carries the largest width proven to fail.
pub fn order_of_local_testability_graph(
    gr: &TransitionGraph,
    k_max: usize,
    budget: usize,
) -> Result<OrderSearch> {
    let action = TransformationAction::new(gr)?;
    oracle::order_search(&action, k_max, 1, budget)
}

/// Decides `p` on the transition semigroup and spells witnesses as label words.
pub fn property_via_semigroup(ts: &TransitionSemigroup, p: Property) -> Option<Verdict> {
    let mut verdict = semigroup::semigroup_property(&ts.semigroup, p)?;
    if let Some(Witness::Elements(elems)) = verdict.witness.take() {
        verdict.witness = Some(Witness::Words(elems.iter().map(|&e| ts.word(e)).collect()));
        verdict.elements = Some(elems);
    }
    Some(verdict)
}

/// Decides one algebraic property of a complete graph.
pub fn graph_property(gr: &TransitionGraph, p: Property, max_elements: usize) -> Result<Verdict> {
    match p {
        Property::OneTestability => is_1_testable(gr),
        Property::KTestability(k) => Ok(is_k_testable_graph(gr, k, oracle::DEFAULT_BUDGET)?.0),
        _ => {
            let ts = transition_semigroup(gr, max_elements)?;
            Ok(property_via_semigroup(&ts, p).expect("algebraic property"))
        }
    }
}

/// Completes the graph if needed, then runs the requested analyses.
pub fn analyze_graph(
    gr: &TransitionGraph,
    input: &str,
    request: &Request,
    limits: &Limits,
) -> Result<PropertyReport> {
    let mut report = PropertyReport::new(input, gr.alphabet_size());
    let completed = complete_with_sink(gr);
    if let Some(sink) = completed.completed_sink().filter(|_| !gr.is_complete()) {
        report.notes.push(format!(
            "sink added: undefined transitions routed to node {sink}"
        ));
    }
    let gr = &completed;
    report.statistics.nodes = Some(gr.node_count());
    report.statistics.labels = Some(gr.alphabet_size());

    let needs_semigroup = request
        .properties
        .iter()
        .any(|p| !matches!(p, Property::OneTestability | Property::KTestability(_)));
    let ts = if needs_semigroup {
        let ts = transition_semigroup(gr, limits.max_elements)?;
        report.statistics.elements = ts.semigroup.len();
        report.statistics.generators = ts.semigroup.generator_count();
        report.statistics.idempotents = semigroup::idempotents(&ts.semigroup).len();
        Some(ts)
    } else {
        None
    };

    for &p in &request.properties {
        let verdict = match p {
            Property::OneTestability => is_1_testable(gr)?,
            Property::KTestability(k) => {
                let (v, states) = is_k_testable_graph(gr, k, limits.budget)?;
                report.statistics.profile_states = report.statistics.profile_states.max(states);
                v
            }
            _ => property_via_semigroup(ts.as_ref().expect("semigroup built"), p)
                .expect("algebraic property"),
        };
        report.push(verdict);
    }
    if request.order {
        let search = order_of_local_testability_graph(gr, limits.k_max, limits.budget)?;
        report.statistics.profile_states =
            report.statistics.profile_states.max(search.profile_states);
        report.order = Some(search.result);
        if limits.t > 1 {
            let action = TransformationAction::new(gr)?;
            let search = oracle::order_search(&action, limits.k_max, limits.t, limits.budget)?;
            report.statistics.profile_states =
                report.statistics.profile_states.max(search.profile_states);
            report.threshold_order = Some(search.result);
        }
    }
    Ok(report)
}
