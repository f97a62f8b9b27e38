//! Algebraic decision procedures on finite semigroups.
//!
//! All "local" properties quantify over the local submonoids `eSe` of the
//! idempotents `e`:
//!
//! | property                 | condition on `x, y ∈ eSe`         |
//! |--------------------------|-----------------------------------|
//! | locally idempotent       | `xx = x`                          |
//! | locally testable         | `xx = x`, `xy = yx`               |
//! | right locally testable   | `xx = x`, `xyx = xy`              |
//! | left locally testable    | `xx = x`, `xyx = yx`              |
//!
//! Strict local testability coincides with local testability for semigroups
//! and is decided by the same predicate.
//!
//! Threshold local testability is aperiodicity plus
//! `exfueyf = eyfuexf` for idempotents `e, f` and arbitrary `x, u, y`.
//! Piecewise testability is J-triviality of `S¹`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::model::{FiniteSemigroup, Limits, Property, PropertyReport, Request, Verdict, Witness};
use crate::oracle::{self, Determination, LetterAction};
use crate::scc::strongly_connected_components;

/// Computes factorizations and the full product table from Cayley rows.
///
/// Elements are factorized breadth-first from the generators, so every
/// factorization is a shortest generator word. `product(x, y)` folds the
/// factorization of `y` through the rows starting at `x`. The result is not
/// checked for associativity; see [`check_associativity`].
pub fn close_cayley(
    element_count: usize,
    generator_count: usize,
    cayley: &[usize],
) -> Result<FiniteSemigroup> {
    let n = element_count;
    let g = generator_count;
    if n == 0 || g == 0 || g > n {
        return Err(Error::HeaderInconsistent {
            elements: n as i64,
            generators: g as i64,
        });
    }
    if cayley.len() != n * g {
        return Err(Error::TooFewNumbers {
            expected: n * g,
            found: cayley.len(),
        });
    }
    if let Some(pos) = cayley.iter().position(|&v| v >= n) {
        return Err(Error::Invalid {
            what: "cayley table",
            detail: format!(
                "cell ({}, {}) = {} is not an element",
                pos / g,
                pos % g,
                cayley[pos]
            ),
        });
    }
    let cayley: Vec<u32> = cayley.iter().map(|&v| v as u32).collect();

    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut reached = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    reached[..g].fill(true);
    order.extend(0..g);
    queue.extend(0..g);
    while let Some(x) = queue.pop_front() {
        for gen in 0..g {
            let y = cayley[x * g + gen] as usize;
            if !reached[y] {
                reached[y] = true;
                parent[y] = Some((x, gen));
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    if let Some(element) = reached.iter().position(|r| !r) {
        return Err(Error::NotGenerated { element });
    }

    let mut factorization: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut product = vec![0u32; n * n];
    for &y in &order {
        match parent[y] {
            None => {
                factorization[y] = vec![y];
                for x in 0..n {
                    product[x * n + y] = cayley[x * g + y];
                }
            }
            Some((p, gen)) => {
                let mut word = factorization[p].clone();
                word.push(gen);
                factorization[y] = word;
                for x in 0..n {
                    let xp = product[x * n + p] as usize;
                    product[x * n + y] = cayley[xp * g + gen];
                }
            }
        }
    }
    Ok(FiniteSemigroup {
        element_count: n,
        generator_count: g,
        cayley,
        product,
        factorization,
    })
}

/// First triple with `(x·gen)·y != x·(gen·y)` (Light's test), in
/// `(x, gen, y)` order.
pub fn associativity_violation(s: &FiniteSemigroup) -> Option<(usize, usize, usize)> {
    let n = s.len();
    for x in 0..n {
        for gen in 0..s.generator_count() {
            let xg = s.right(x, gen);
            for y in 0..n {
                if s.mul(xg, y) != s.mul(x, s.mul(gen, y)) {
                    return Some((x, gen, y));
                }
            }
        }
    }
    None
}

pub fn check_associativity(s: &FiniteSemigroup) -> Verdict {
    match associativity_violation(s) {
        None => Verdict::yes(Property::Associativity),
        Some((x, gen, y)) => Verdict::no(
            Property::Associativity,
            Witness::Elements(vec![x, gen, y]),
            format!("({x}*{gen})*{y} != {x}*({gen}*{y})"),
        ),
    }
}

pub fn idempotents(s: &FiniteSemigroup) -> Vec<usize> {
    (0..s.len()).filter(|&e| s.mul(e, e) == e).collect()
}

/// The set `eSe`, ascending.
pub fn local_submonoid(s: &FiniteSemigroup, e: usize) -> Result<Vec<usize>> {
    if s.mul(e, e) != e {
        return Err(Error::NotIdempotent { element: e });
    }
    Ok(sandwich_set(s, e, e).into_iter().map(|(p, _)| p).collect())
}

/// Distinct values of `l·x·r` over `x ∈ S`, each with its least `x`, ascending.
fn sandwich_set(s: &FiniteSemigroup, l: usize, r: usize) -> Vec<(usize, usize)> {
    let mut rep = vec![usize::MAX; s.len()];
    for x in 0..s.len() {
        let v = s.mul3(l, x, r);
        if rep[v] == usize::MAX {
            rep[v] = x;
        }
    }
    rep.iter()
        .enumerate()
        .filter(|&(_, &x)| x != usize::MAX)
        .map(|(v, &x)| (v, x))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocalPropertyId {
    LocallyIdempotent,
    LocallyTestable,
    StrictlyLocallyTestable,
    RightLocallyTestable,
    LeftLocallyTestable,
}

impl LocalPropertyId {
    pub const ALL: [LocalPropertyId; 5] = [
        LocalPropertyId::LocallyIdempotent,
        LocalPropertyId::LocallyTestable,
        LocalPropertyId::StrictlyLocallyTestable,
        LocalPropertyId::RightLocallyTestable,
        LocalPropertyId::LeftLocallyTestable,
    ];

    pub fn property(self) -> Property {
        match self {
            LocalPropertyId::LocallyIdempotent => Property::LocalIdempotence,
            LocalPropertyId::LocallyTestable => Property::LocalTestability,
            LocalPropertyId::StrictlyLocallyTestable => Property::StrictLocalTestability,
            LocalPropertyId::RightLocallyTestable => Property::RightLocalTestability,
            LocalPropertyId::LeftLocallyTestable => Property::LeftLocalTestability,
        }
    }

    pub fn from_property(p: Property) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.property() == p)
    }

    /// The identity required of `x, y` in a local submonoid, beyond idempotence.
    fn identity_holds(self, s: &FiniteSemigroup, x: usize, y: usize) -> bool {
        match self {
            LocalPropertyId::LocallyIdempotent => true,
            LocalPropertyId::LocallyTestable | LocalPropertyId::StrictlyLocallyTestable => {
                s.mul(x, y) == s.mul(y, x)
            }
            LocalPropertyId::RightLocallyTestable => s.mul3(x, y, x) == s.mul(x, y),
            LocalPropertyId::LeftLocallyTestable => s.mul3(x, y, x) == s.mul(y, x),
        }
    }

    fn identity_text(self) -> &'static str {
        match self {
            LocalPropertyId::LocallyIdempotent => "xx = x",
            LocalPropertyId::LocallyTestable | LocalPropertyId::StrictlyLocallyTestable => {
                "xy = yx"
            }
            LocalPropertyId::RightLocallyTestable => "xyx = xy",
            LocalPropertyId::LeftLocallyTestable => "xyx = yx",
        }
    }
}

/// Checks a local property. A negative verdict carries `(e, x)` when `x ∈ eSe`
/// is not idempotent, or `(e, x, y)` when the local identity fails.
pub fn check_local_property(s: &FiniteSemigroup, p: LocalPropertyId) -> Verdict {
    let property = p.property();
    let idem = idempotents(s);
    let locals: Vec<(usize, Vec<usize>)> = idem
        .iter()
        .map(|&e| {
            (
                e,
                sandwich_set(s, e, e).into_iter().map(|(v, _)| v).collect(),
            )
        })
        .collect();
    for (e, local) in &locals {
        if let Some(&x) = local.iter().find(|&&x| s.mul(x, x) != x) {
            return Verdict::no(
                property,
                Witness::Elements(vec![*e, x]),
                format!("{x} in {e}S{e} is not idempotent"),
            );
        }
    }
    if p == LocalPropertyId::LocallyIdempotent {
        return Verdict::yes(property);
    }
    for (e, local) in &locals {
        for &x in local {
            for &y in local {
                if !p.identity_holds(s, x, y) {
                    return Verdict::no(
                        property,
                        Witness::Elements(vec![*e, x, y]),
                        format!("{} fails in {e}S{e} for x={x}, y={y}", p.identity_text()),
                    );
                }
            }
        }
    }
    Verdict::yes(property)
}

/// Index and period of the first element whose powers cycle with period > 1.
fn periodic_element(s: &FiniteSemigroup) -> Option<(usize, usize)> {
    let n = s.len();
    let mut seen_at = vec![(usize::MAX, 0usize); n];
    for x in 0..n {
        let mut power = x;
        let mut i = 1;
        loop {
            if seen_at[power].0 == x {
                let period = i - seen_at[power].1;
                if period > 1 {
                    return Some((x, period));
                }
                break;
            }
            seen_at[power] = (x, i);
            power = s.mul(power, x);
            i += 1;
        }
    }
    None
}

pub fn is_aperiodic(s: &FiniteSemigroup) -> Verdict {
    match periodic_element(s) {
        None => Verdict::yes(Property::Aperiodicity),
        Some((x, period)) => Verdict::no(
            Property::Aperiodicity,
            Witness::Elements(vec![x]),
            format!("powers of {x} cycle with period {period}"),
        ),
    }
}

/// Aperiodicity plus `exfueyf = eyfuexf`. The identity is checked on the
/// sets `P = eSf` and `R = fSe` as `prq = qrp`, which is the same condition
/// since `exfueyf = (exf)(fue)(eyf)`.
pub fn is_threshold_locally_testable(s: &FiniteSemigroup) -> Verdict {
    let property = Property::ThresholdLocalTestability;
    if let Some((x, period)) = periodic_element(s) {
        return Verdict::no(
            property,
            Witness::Elements(vec![x]),
            format!("not aperiodic: powers of {x} cycle with period {period}"),
        );
    }
    let idem = idempotents(s);
    let sandwiches: Vec<Vec<Vec<(usize, usize)>>> = idem
        .iter()
        .map(|&l| idem.iter().map(|&r| sandwich_set(s, l, r)).collect())
        .collect();
    for (i, &e) in idem.iter().enumerate() {
        for (j, &f) in idem.iter().enumerate() {
            let left = &sandwiches[i][j];
            let middle = &sandwiches[j][i];
            for &(p, x) in left {
                for &(r, u) in middle {
                    let pr = s.mul(p, r);
                    for &(q, y) in left {
                        if s.mul(pr, q) != s.mul3(q, r, p) {
                            return Verdict::no(
                                property,
                                Witness::Elements(vec![e, f, x, u, y]),
                                format!("exfueyf != eyfuexf for e={e}, f={f}, x={x}, u={u}, y={y}"),
                            );
                        }
                    }
                }
            }
        }
    }
    Verdict::yes(property)
}

/// J-classes of `S¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JClasses {
    /// Index of the adjoined identity (`s.len()`), when `S` has none of its own.
    pub adjoined_identity: Option<usize>,
    /// Classes ordered by least member, each ascending.
    pub classes: Vec<Vec<usize>>,
}

/// J-classes as the strongly connected components of `x → gen·x`, `x → x·gen`
/// over `S¹`. An identity is adjoined only when no element is a two-sided identity.
pub fn j_classes(s: &FiniteSemigroup) -> JClasses {
    let n = s.len();
    let adjoined_identity = s.identity().is_none().then_some(n);
    let total = n + usize::from(adjoined_identity.is_some());
    let mut adjacency: Vec<Vec<usize>> = Vec::with_capacity(total);
    for x in 0..n {
        let mut succ: Vec<usize> = (0..s.generator_count())
            .flat_map(|gen| [s.mul(gen, x), s.right(x, gen)])
            .collect();
        succ.sort_unstable();
        succ.dedup();
        adjacency.push(succ);
    }
    if adjoined_identity.is_some() {
        adjacency.push((0..s.generator_count()).collect());
    }
    JClasses {
        adjoined_identity,
        classes: strongly_connected_components(&adjacency),
    }
}

pub fn is_piecewise_testable(s: &FiniteSemigroup) -> Verdict {
    let classes = j_classes(s);
    match classes.classes.iter().find(|c| c.len() > 1) {
        None => Verdict::yes(Property::PiecewiseTestability),
        Some(c) => Verdict::no(
            Property::PiecewiseTestability,
            Witness::Elements(vec![c[0], c[1]]),
            format!("J-class {c:?} is not trivial"),
        ),
    }
}

/// Generators are idempotent and pairwise commuting; equivalently the value
/// of a generator word depends only on its set of letters.
pub fn is_1_testable(s: &FiniteSemigroup) -> Verdict {
    let g = s.generator_count();
    for u in 0..g {
        for v in u..g {
            let fails = if u == v {
                s.mul(u, u) != u
            } else {
                s.mul(u, v) != s.mul(v, u)
            };
            if fails {
                return Verdict::no(
                    Property::OneTestability,
                    Witness::Elements(vec![u, v]),
                    if u == v {
                        format!("generator {u} is not idempotent")
                    } else {
                        format!("generators {u} and {v} do not commute")
                    },
                );
            }
        }
    }
    Verdict::yes(Property::OneTestability)
}

/// The Cayley automaton of a semigroup over its generators: a fresh start
/// state steps to the generator, and `x` steps by `gen` to `x·gen`.
pub struct CayleyAction<'a>(pub &'a FiniteSemigroup);

impl LetterAction for CayleyAction<'_> {
    type Value = Option<usize>;

    fn alphabet_size(&self) -> usize {
        self.0.generator_count()
    }

    fn initial(&self) -> Option<usize> {
        None
    }

    fn step(&self, value: &Option<usize>, letter: usize) -> Option<usize> {
        Some(match value {
            None => letter,
            Some(x) => self.0.right(*x, letter),
        })
    }
}

/// Whether equal `(k, t)`-profiles of generator words force equal values.
pub fn is_k_testable_semigroup(
    s: &FiniteSemigroup,
    k: usize,
    t: usize,
    budget: usize,
) -> Result<(Verdict, usize)> {
    let outcome = oracle::profile_determines(&CayleyAction(s), k, t, budget)?;
    let states = outcome.states();
    Ok((
        determination_verdict(Property::KTestability(k), outcome, |w| s.evaluate(w)),
        states,
    ))
}

pub(crate) fn determination_verdict<V: std::fmt::Debug>(
    property: Property,
    outcome: Determination,
    value: impl Fn(&[usize]) -> V,
) -> Verdict {
    match outcome {
        Determination::Determined { .. } => Verdict::yes(property),
        Determination::Conflict { first, second, .. } => {
            let detail = format!(
                "equal profiles, values {:?} and {:?}",
                value(&first),
                value(&second)
            );
            Verdict::no(property, Witness::Words(vec![first, second]), detail)
        }
        Determination::BudgetExceeded { states } => Verdict::unknown(
            property,
            format!("budget exceeded: {states} profile states"),
        ),
    }
}

/// Least `k <= k_max` such that generator words with equal k-profiles
/// evaluate to the same element.
pub fn order_of_local_testability_semigroup(
    s: &FiniteSemigroup,
    k_max: usize,
    budget: usize,
) -> Result<oracle::OrderSearch> {
    oracle::order_search(&CayleyAction(s), k_max, 1, budget)
}

/// Verdict for one property, without the oracle-backed k-testability.
pub fn semigroup_property(s: &FiniteSemigroup, p: Property) -> Option<Verdict> {
    if let Some(local) = LocalPropertyId::from_property(p) {
        return Some(check_local_property(s, local));
    }
    Some(match p {
        Property::Associativity => check_associativity(s),
        Property::Aperiodicity => is_aperiodic(s),
        Property::ThresholdLocalTestability => is_threshold_locally_testable(s),
        Property::PiecewiseTestability => is_piecewise_testable(s),
        Property::OneTestability => is_1_testable(s),
        _ => return None,
    })
}

/// Runs the requested analyses and aggregates them into one report.
pub fn analyze_semigroup(
    s: &FiniteSemigroup,
    input: &str,
    request: &Request,
    limits: &Limits,
) -> Result<PropertyReport> {
    let mut report = PropertyReport::new(input, s.generator_count());
    report.statistics.elements = s.len();
    report.statistics.generators = s.generator_count();
    report.statistics.idempotents = idempotents(s).len();
    for &p in &request.properties {
        let verdict = match p {
            Property::KTestability(k) => {
                let (v, states) = is_k_testable_semigroup(s, k, 1, limits.budget)?;
                report.statistics.profile_states = report.statistics.profile_states.max(states);
                v
            }
            _ => semigroup_property(s, p).expect("every non-parameterised property is decidable"),
        };
        report.push(verdict);
    }
    if request.order {
        let search = order_of_local_testability_semigroup(s, limits.k_max, limits.budget)?;
        report.statistics.profile_states =
            report.statistics.profile_states.max(search.profile_states);
        report.order = Some(search.result);
    }
    if request.order && limits.t > 1 {
        let search = oracle::order_search(&CayleyAction(s), limits.k_max, limits.t, limits.budget)?;
        report.statistics.profile_states =
            report.statistics.profile_states.max(search.profile_states);
        report.threshold_order = Some(search.result);
    }
    Ok(report)
}
