//! Domain types shared by every analysis.
//!
//! Words act left to right: the word `uv` applies `u` first, then `v`. The
//! same convention is used for transformations, semigroup products and the
//! witnesses printed in reports.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A word over an alphabet of letter (or generator) indices.
pub type Word = Vec<usize>;

/// Formats a word using `a`, `b`, ... for small alphabets, `x0.x1...` otherwise.
pub fn format_word(word: &[usize], alphabet_size: usize) -> String {
    if word.is_empty() {
        return "ε".to_string();
    }
    if alphabet_size <= 26 {
        word.iter().map(|&l| (b'a' + l as u8) as char).collect()
    } else {
        word.iter()
            .map(|l| format!("x{l}"))
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Deterministic transition table without accepting states.
///
/// Rows are nodes, columns are labels. `None` marks an undefined transition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransitionGraph {
    alphabet_size: usize,
    node_count: usize,
    delta: Vec<Option<usize>>,
    completed_sink: Option<usize>,
}

impl TransitionGraph {
    pub fn new(alphabet_size: usize, node_count: usize, delta: Vec<Option<usize>>) -> Result<Self> {
        if alphabet_size == 0 || node_count == 0 {
            return Err(Error::Invalid {
                what: "graph",
                detail: "alphabet size and node count must be positive".into(),
            });
        }
        if delta.len() != alphabet_size * node_count {
            return Err(Error::Invalid {
                what: "graph",
                detail: format!(
                    "table has {} cells, expected {}",
                    delta.len(),
                    alphabet_size * node_count
                ),
            });
        }
        if let Some(bad) = delta.iter().flatten().find(|&&t| t >= node_count) {
            return Err(Error::Invalid {
                what: "graph",
                detail: format!("target {bad} out of range for {node_count} nodes"),
            });
        }
        Ok(Self {
            alphabet_size,
            node_count,
            delta,
            completed_sink: None,
        })
    }

    /// Builds a complete graph from rows of successors.
    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self> {
        let alphabet_size = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != alphabet_size) {
            return Err(Error::Invalid {
                what: "graph",
                detail: "rows have different lengths".into(),
            });
        }
        let delta = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().map(|&t| Some(t)))
            .collect();
        Self::new(alphabet_size, rows.len(), delta)
    }

    pub(crate) fn with_sink(mut self, sink: usize) -> Self {
        self.completed_sink = Some(sink);
        self
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn completed_sink(&self) -> Option<usize> {
        self.completed_sink
    }

    pub fn target(&self, node: usize, label: usize) -> Option<usize> {
        self.delta[node * self.alphabet_size + label]
    }

    pub fn row(&self, node: usize) -> &[Option<usize>] {
        &self.delta[node * self.alphabet_size..(node + 1) * self.alphabet_size]
    }

    pub fn cells(&self) -> &[Option<usize>] {
        &self.delta
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(Option::is_some)
    }

    /// Transformation of the nodes induced by one label. Requires a complete graph.
    pub fn letter_transformation(&self, label: usize) -> Result<Transformation> {
        (0..self.node_count)
            .map(|p| self.target(p, label).map(|q| q as u32))
            .collect::<Option<Vec<_>>>()
            .map(Transformation::from)
            .ok_or(Error::IncompleteInput)
    }

    /// Transformation induced by a word; `None` if the word hits an undefined cell.
    pub fn word_transformation(&self, word: &[usize]) -> Option<Transformation> {
        let mut image = Vec::with_capacity(self.node_count);
        for p in 0..self.node_count {
            let mut q = p;
            for &l in word {
                q = self.target(q, l)?;
            }
            image.push(q as u32);
        }
        Some(Transformation::from(image))
    }
}

/// A total map from `{0..n}` to itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation(Box<[u32]>);

impl From<Vec<u32>> for Transformation {
    fn from(image: Vec<u32>) -> Self {
        Self(image.into_boxed_slice())
    }
}

impl Transformation {
    pub fn identity(n: usize) -> Self {
        Self((0..n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn image(&self) -> &[u32] {
        &self.0
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Transformation) -> Transformation {
        Self(self.0.iter().map(|&p| next.0[p as usize]).collect())
    }
}

/// Finite semigroup given by its right Cayley graph over a generator prefix.
///
/// Elements `0..generator_count` are the generators. Construct through
/// [`crate::semigroup::close_cayley`] or [`FiniteSemigroup::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    pub(crate) element_count: usize,
    pub(crate) generator_count: usize,
    pub(crate) cayley: Vec<u32>,
    pub(crate) product: Vec<u32>,
    pub(crate) factorization: Vec<Word>,
}

impl FiniteSemigroup {
    /// Closes the Cayley rows and runs Light's associativity test.
    pub fn new(element_count: usize, generator_count: usize, cayley: Vec<usize>) -> Result<Self> {
        let s = crate::semigroup::close_cayley(element_count, generator_count, &cayley)?;
        if let Some((x, generator, y)) = crate::semigroup::associativity_violation(&s) {
            return Err(Error::NotAssociative { x, generator, y });
        }
        Ok(s)
    }

    /// Builds a semigroup from its full multiplication table; every element is a generator.
    pub fn from_table<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let cayley = rows.iter().flat_map(|r| r.as_ref().to_vec()).collect();
        Self::new(n, n, cayley)
    }

    pub fn len(&self) -> usize {
        self.element_count
    }

    pub fn is_empty(&self) -> bool {
        self.element_count == 0
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.product[x * self.element_count + y] as usize
    }

    /// `x · generator` as stored in the Cayley rows.
    #[inline]
    pub fn right(&self, x: usize, generator: usize) -> usize {
        self.cayley[x * self.generator_count + generator] as usize
    }

    pub fn cayley_row(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.cayley[x * self.generator_count..(x + 1) * self.generator_count]
            .iter()
            .map(|&v| v as usize)
    }

    /// A shortest generator word evaluating to `x`.
    pub fn factorization(&self, x: usize) -> &[usize] {
        &self.factorization[x]
    }

    /// Evaluates a nonempty generator word.
    pub fn evaluate(&self, word: &[usize]) -> Option<usize> {
        let (&first, rest) = word.split_first()?;
        Some(rest.iter().fold(first, |x, &g| self.right(x, g)))
    }

    pub fn mul3(&self, x: usize, y: usize, z: usize) -> usize {
        self.mul(self.mul(x, y), z)
    }

    /// Element acting as a two-sided identity, if any.
    pub fn identity(&self) -> Option<usize> {
        (0..self.element_count)
            .find(|&e| (0..self.element_count).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }
}

/// Property identifiers shared by semigroup and graph analyses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Associativity,
    Aperiodicity,
    LocalIdempotence,
    LocalTestability,
    StrictLocalTestability,
    RightLocalTestability,
    LeftLocalTestability,
    ThresholdLocalTestability,
    PiecewiseTestability,
    OneTestability,
    KTestability(usize),
}

impl Property {
    /// Every property except the parameterised k-testability, in report order.
    pub const ALL: [Property; 10] = [
        Property::Associativity,
        Property::Aperiodicity,
        Property::LocalIdempotence,
        Property::LocalTestability,
        Property::StrictLocalTestability,
        Property::RightLocalTestability,
        Property::LeftLocalTestability,
        Property::ThresholdLocalTestability,
        Property::PiecewiseTestability,
        Property::OneTestability,
    ];

    /// Parses a short CLI name such as `lt` or `right-lt`.
    pub fn from_short_name(name: &str) -> Option<Property> {
        Some(match name {
            "lt" => Property::LocalTestability,
            "slt" => Property::StrictLocalTestability,
            "right-lt" => Property::RightLocalTestability,
            "left-lt" => Property::LeftLocalTestability,
            "loc-idem" => Property::LocalIdempotence,
            "ltt" => Property::ThresholdLocalTestability,
            "pt" => Property::PiecewiseTestability,
            "aperiodic" => Property::Aperiodicity,
            "assoc" => Property::Associativity,
            "1t" => Property::OneTestability,
            _ => return None,
        })
    }

    pub fn name(&self) -> String {
        match self {
            Property::Associativity => "associativity".into(),
            Property::Aperiodicity => "aperiodicity".into(),
            Property::LocalIdempotence => "local_idempotence".into(),
            Property::LocalTestability => "local_testability".into(),
            Property::StrictLocalTestability => "strict_local_testability".into(),
            Property::RightLocalTestability => "right_local_testability".into(),
            Property::LeftLocalTestability => "left_local_testability".into(),
            Property::ThresholdLocalTestability => "threshold_local_testability".into(),
            Property::PiecewiseTestability => "piecewise_testability".into(),
            Property::OneTestability => "one_testability".into(),
            Property::KTestability(k) => format!("k_testability(k={k})"),
        }
    }
}

impl Serialize for Property {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name())
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Holds {
    Yes,
    No,
    /// The search exceeded its state budget; the reason is attached.
    Unknown(String),
}

/// Evidence attached to a negative verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Element indices, e.g. `(e, x, y)` for a local identity.
    Elements(Vec<usize>),
    /// Words over the input alphabet, one per element or a colliding pair.
    Words(Vec<Word>),
    /// Two labels whose transformations disagree at `node`.
    Labels {
        first: usize,
        second: usize,
        node: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub property: Property,
    pub holds: Holds,
    pub witness: Option<Witness>,
    /// Element indices behind a word witness, when the verdict came from a semigroup.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<usize>>,
    pub detail: String,
}

impl Verdict {
    pub fn yes(property: Property) -> Self {
        Self {
            property,
            holds: Holds::Yes,
            witness: None,
            elements: None,
            detail: String::new(),
        }
    }

    pub fn no(property: Property, witness: Witness, detail: impl Into<String>) -> Self {
        Self {
            property,
            holds: Holds::No,
            witness: Some(witness),
            elements: None,
            detail: detail.into(),
        }
    }

    pub fn unknown(property: Property, reason: impl Into<String>) -> Self {
        Self {
            property,
            holds: Holds::Unknown(reason.into()),
            witness: None,
            elements: None,
            detail: String::new(),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.holds == Holds::Yes
    }

    pub fn is_no(&self) -> bool {
        self.holds == Holds::No
    }

    /// The element tuple of the witness, whether stored directly or alongside words.
    pub fn witness_elements(&self) -> Option<&[usize]> {
        match (&self.witness, &self.elements) {
            (Some(Witness::Elements(e)), _) => Some(e),
            (_, Some(e)) => Some(e),
            _ => None,
        }
    }
}

/// Outcome of a search for the least scan width.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderResult {
    /// Least `k` that works; every smaller width was refuted.
    Found { k: usize, t: usize },
    /// Every `k <= k_max` was refuted.
    NoneUpTo { k_max: usize, t: usize },
    /// Budget ran out at `at_k`; widths up to `lower_bound` were refuted.
    Unknown {
        at_k: usize,
        t: usize,
        lower_bound: usize,
        reason: String,
    },
}

impl OrderResult {
    pub fn found(&self) -> Option<usize> {
        match self {
            OrderResult::Found { k, .. } => Some(*k),
            _ => None,
        }
    }

    /// Largest width proven to fail.
    pub fn lower_bound(&self) -> usize {
        match self {
            OrderResult::Found { k, .. } => k - 1,
            OrderResult::NoneUpTo { k_max, .. } => *k_max,
            OrderResult::Unknown { lower_bound, .. } => *lower_bound,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Statistics {
    pub elements: usize,
    pub generators: usize,
    pub idempotents: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<usize>,
    /// Largest profile state count reached by any oracle search.
    pub profile_states: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub input: String,
    pub notes: Vec<String>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold_order: Option<OrderResult>,
    pub statistics: Statistics,
    /// Alphabet size used to print word witnesses.
    #[serde(skip)]
    pub alphabet_size: usize,
}

impl PropertyReport {
    pub fn new(input: impl Into<String>, alphabet_size: usize) -> Self {
        Self {
            input: input.into(),
            notes: Vec::new(),
            verdicts: Vec::new(),
            order: None,
            threshold_order: None,
            statistics: Statistics::default(),
            alphabet_size,
        }
    }

    /// Inserts or replaces the verdict for its property.
    pub fn push(&mut self, verdict: Verdict) {
        match self
            .verdicts
            .iter_mut()
            .find(|v| v.property == verdict.property)
        {
            Some(slot) => *slot = verdict,
            None => self.verdicts.push(verdict),
        }
    }

    pub fn get(&self, property: Property) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.property == property)
    }

    /// True when any verdict or order search ran out of budget.
    pub fn has_unknown(&self) -> bool {
        self.verdicts
            .iter()
            .any(|v| matches!(v.holds, Holds::Unknown(_)))
            || matches!(self.order, Some(OrderResult::Unknown { .. }))
            || matches!(self.threshold_order, Some(OrderResult::Unknown { .. }))
    }
}

/// Which analyses a report should run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    /// Properties in report order; [`Property::KTestability`] runs the oracle at that width.
    pub properties: Vec<Property>,
    /// Search for the order of local testability.
    pub order: bool,
}

impl Request {
    pub fn all() -> Self {
        Self {
            properties: Property::ALL.to_vec(),
            order: true,
        }
    }
}

/// Resource limits shared by every analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub k_max: usize,
    /// Threshold for the optional threshold-order search; 1 disables it.
    pub t: usize,
    /// Profile states per oracle search.
    pub budget: usize,
    /// Largest transition semigroup a graph analysis will build.
    pub max_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            k_max: crate::oracle::DEFAULT_K_MAX,
            t: 1,
            budget: crate::oracle::DEFAULT_BUDGET,
            max_elements: 20_000,
        }
    }
}

/// The canonical test corpus.
#[derive(Debug, Clone)]
pub struct Fixtures {
    /// Two-element semilattice `{z, e}`: `z` is a zero, `e` an identity.
    pub u1: FiniteSemigroup,
    /// Two-element left-zero semigroup `{x, y}`.
    pub lz2: FiniteSemigroup,
    /// Cyclic group of order two generated by `s`; element 1 is the identity.
    pub z2: FiniteSemigroup,
    /// One node, two looping labels.
    pub d_triv: TransitionGraph,
    /// Two nodes swapped by a single label.
    pub d_parity: TransitionGraph,
    /// Three nodes; node 2 is a sink reached on `aa` or `bb`.
    pub d_ab: TransitionGraph,
}

impl Fixtures {
    pub fn semigroups(&self) -> [(&'static str, &FiniteSemigroup); 3] {
        [("U1", &self.u1), ("LZ2", &self.lz2), ("Z2", &self.z2)]
    }

    pub fn graphs(&self) -> [(&'static str, &TransitionGraph); 3] {
        [
            ("D_triv", &self.d_triv),
            ("D_parity", &self.d_parity),
            ("D_ab", &self.d_ab),
        ]
    }
}

pub fn fixtures() -> Fixtures {
    let sg = |n, g, rows: Vec<usize>| FiniteSemigroup::new(n, g, rows).expect("fixture semigroup");
    let gr = |rows: &[&[usize]]| TransitionGraph::from_rows(rows).expect("fixture graph");
    Fixtures {
        u1: sg(2, 2, vec![0, 0, 0, 1]),
        lz2: sg(2, 2, vec![0, 0, 1, 1]),
        z2: sg(2, 1, vec![1, 0]),
        d_triv: gr(&[&[0, 0]]),
        d_parity: gr(&[&[1], &[0]]),
        d_ab: gr(&[&[1, 2], &[2, 0], &[2, 2]]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_values() {
        let f = fixtures();
        assert_eq!(f.z2.mul(0, 0), 1);
        assert_eq!(f.z2.mul(1, 0), 0);
        assert!(f.d_parity.is_complete());
        assert_eq!(f.lz2.factorization(0), &[0]);
        assert_eq!(f.u1.identity(), Some(1));
        assert_eq!(f.z2.identity(), Some(1));
        assert_eq!(f.lz2.identity(), None);
    }

    #[test]
    fn graph_rejects_out_of_range_target() {
        assert!(TransitionGraph::new(1, 2, vec![Some(0), Some(2)]).is_err());
        assert!(TransitionGraph::new(0, 2, vec![]).is_err());
    }

    #[test]
    fn transformation_composition_order() {
        let a = Transformation::from(vec![1, 2, 2]);
        let b = Transformation::from(vec![2, 0, 2]);
        assert_eq!(a.then(&b).image(), &[0, 2, 2]);
        assert_eq!(b.then(&a).image(), &[2, 1, 2]);
    }

    #[test]
    fn word_formatting() {
        assert_eq!(format_word(&[0, 1, 0], 2), "aba");
        assert_eq!(format_word(&[], 2), "ε");
        assert_eq!(format_word(&[3, 40], 50), "x3.x40");
    }
}
