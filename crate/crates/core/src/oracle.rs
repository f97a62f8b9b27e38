//! Definition-level oracle for k-testability.
//!
//! A word is abstracted by its k-profile: the prefix and suffix of length
//! `k - 1`, the occurrence counts of its length-`k` factors saturated at a
//! threshold `t`, and the word itself when it is shorter than `k`. An action
//! is k-testable when the profile of a word determines the value the action
//! assigns to it. [`profile_determines`] decides this by a breadth-first
//! search over the reachable (profile, value) pairs; [`brute_force_scan`]
//! enumerates words literally and is only meant as a cross-check.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use indexmap::IndexSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{OrderResult, Word};

/// Default cap on profile states explored by one search.
pub const DEFAULT_BUDGET: usize = 1_000_000;
pub const DEFAULT_K_MAX: usize = 8;
pub const DEFAULT_T_MAX: usize = 3;

/// A deterministic fold of letters into a value set.
pub trait LetterAction {
    type Value: Clone + Eq + Hash;

    fn alphabet_size(&self) -> usize;

    /// Value of the empty word.
    fn initial(&self) -> Self::Value;

    fn step(&self, value: &Self::Value, letter: usize) -> Self::Value;

    fn run(&self, word: &[usize]) -> Self::Value {
        word.iter()
            .fold(self.initial(), |v, &letter| self.step(&v, letter))
    }
}

fn check_params(k: usize, t: usize) -> Result<()> {
    if k == 0 || t == 0 {
        return Err(Error::BadK { k, t });
    }
    Ok(())
}

/// Readable k-profile of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KProfile {
    pub k: usize,
    pub t: usize,
    pub prefix: Word,
    pub suffix: Word,
    /// Length-`k` factors with counts saturated at `t`.
    pub counts: BTreeMap<Word, usize>,
    /// The whole word, when it is shorter than `k`.
    pub short: Option<Word>,
}

impl KProfile {
    /// Profile of the empty word.
    pub fn empty(k: usize, t: usize) -> Self {
        profile_of(&[], k, t)
    }

    /// Profile of `w · letter`, computed from the profile of `w` alone.
    pub fn extend(&self, letter: usize) -> KProfile {
        if let Some(word) = &self.short {
            let mut longer = word.clone();
            longer.push(letter);
            return profile_of(&longer, self.k, self.t);
        }
        let mut window = self.suffix.clone();
        window.push(letter);
        let mut counts = self.counts.clone();
        let count = counts.entry(window.clone()).or_insert(0);
        *count = (*count + 1).min(self.t);
        KProfile {
            k: self.k,
            t: self.t,
            prefix: self.prefix.clone(),
            suffix: window[1..].to_vec(),
            counts,
            short: None,
        }
    }
}

/// Computes the k-profile of `word` directly from its definition.
///
/// Panics if `k` or `t` is zero.
pub fn profile_of(word: &[usize], k: usize, t: usize) -> KProfile {
    assert!(k >= 1 && t >= 1, "profile_of needs k >= 1 and t >= 1");
    if word.len() < k {
        return KProfile {
            k,
            t,
            prefix: word.to_vec(),
            suffix: word.to_vec(),
            counts: BTreeMap::new(),
            short: Some(word.to_vec()),
        };
    }
    let mut counts = BTreeMap::new();
    for window in word.windows(k) {
        let c = counts.entry(window.to_vec()).or_insert(0);
        *c = (*c + 1).min(t);
    }
    KProfile {
        k,
        t,
        prefix: word[..k - 1].to_vec(),
        suffix: word[word.len() - (k - 1)..].to_vec(),
        counts,
        short: None,
    }
}

const SHORT: u32 = 0;
const FULL: u32 = 1;
const DENSE: u32 = 0;
const SPARSE: u32 = 1;

/// Packed profile: `[SHORT, letters..]` or
/// `[FULL, prefix.., suffix.., repr, counters..]`.
type Packed = Box<[u32]>;

/// Index of a state in a [`ProfileAutomaton`].
pub type StateId = usize;

/// Lazily built deterministic automaton whose state after reading `w` is the
/// k-profile of `w`.
///
/// Factor counts are stored against factor ids interned per automaton, either
/// as a packed counter array or as sorted `(id, count)` pairs, whichever is
/// smaller; the choice depends only on the content, so equal profiles pack
/// to equal keys.
pub struct ProfileAutomaton {
    alphabet_size: usize,
    k: usize,
    t: usize,
    budget: usize,
    counter_bits: u32,
    factor_ids: HashMap<Box<[u32]>, u32>,
    factor_words: Vec<Box<[u32]>>,
    states: IndexSet<Packed>,
}

impl ProfileAutomaton {
    pub fn new(alphabet_size: usize, k: usize, t: usize, budget: usize) -> Result<Self> {
        check_params(k, t)?;
        // smallest power-of-two width holding 0..=t, so counters never straddle words
        let needed = usize::BITS - t.leading_zeros();
        let counter_bits = needed.next_power_of_two().min(32);
        let mut states = IndexSet::new();
        states.insert(vec![SHORT].into_boxed_slice());
        Ok(Self {
            alphabet_size,
            k,
            t,
            budget,
            counter_bits,
            factor_ids: HashMap::new(),
            factor_words: Vec::new(),
            states,
        })
    }

    pub fn initial(&self) -> StateId {
        0
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    fn factor_id(&mut self, window: &[u32]) -> u32 {
        if let Some(&id) = self.factor_ids.get(window) {
            return id;
        }
        let id = self.factor_words.len() as u32;
        self.factor_words.push(window.into());
        self.factor_ids.insert(window.into(), id);
        id
    }

    fn counters_per_word(&self) -> u32 {
        32 / self.counter_bits
    }

    fn read_counter(&self, data: &[u32], id: u32) -> u32 {
        let per = self.counters_per_word();
        let word = (id / per) as usize;
        if word >= data.len() {
            return 0;
        }
        let shift = (id % per) * self.counter_bits;
        let mask = if self.counter_bits == 32 {
            u32::MAX
        } else {
            (1 << self.counter_bits) - 1
        };
        (data[word] >> shift) & mask
    }

    fn decode_counts(&self, repr: u32, data: &[u32]) -> Vec<(u32, u32)> {
        if repr == SPARSE {
            return data.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        }
        let total = data.len() as u32 * self.counters_per_word();
        (0..total)
            .filter_map(|id| {
                let c = self.read_counter(data, id);
                (c > 0).then_some((id, c))
            })
            .collect()
    }

    fn encode_counts(&self, counts: &[(u32, u32)], out: &mut Vec<u32>) {
        let max_id = counts.last().map_or(0, |&(id, _)| id);
        let per = self.counters_per_word();
        let dense_len = if counts.is_empty() {
            0
        } else {
            (max_id / per + 1) as usize
        };
        if dense_len <= 2 * counts.len() {
            out.push(DENSE);
            let start = out.len();
            out.resize(start + dense_len, 0);
            for &(id, c) in counts {
                let shift = (id % per) * self.counter_bits;
                out[start + (id / per) as usize] |= c << shift;
            }
        } else {
            out.push(SPARSE);
            for &(id, c) in counts {
                out.push(id);
                out.push(c);
            }
        }
    }

    fn full_from_word(&mut self, word: &[u32]) -> Packed {
        let k = self.k;
        let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
        for window in word.windows(k) {
            let id = self.factor_id(window);
            let c = counts.entry(id).or_insert(0);
            *c = (*c + 1).min(self.t as u32);
        }
        let mut out = Vec::with_capacity(2 * k + 4);
        out.push(FULL);
        out.extend_from_slice(&word[..k - 1]);
        out.extend_from_slice(&word[word.len() - (k - 1)..]);
        let counts: Vec<_> = counts.into_iter().collect();
        self.encode_counts(&counts, &mut out);
        out.into_boxed_slice()
    }

    fn successor(&mut self, packed: &[u32], letter: u32) -> Packed {
        let k = self.k;
        if packed[0] == SHORT {
            let mut word = packed[1..].to_vec();
            word.push(letter);
            if word.len() < k {
                let mut out = vec![SHORT];
                out.extend(word);
                return out.into_boxed_slice();
            }
            return self.full_from_word(&word);
        }
        let prefix = &packed[1..k];
        let suffix = &packed[k..2 * k - 1];
        let repr = packed[2 * k - 1];
        let data = &packed[2 * k..];
        let mut window = Vec::with_capacity(k);
        window.extend_from_slice(suffix);
        window.push(letter);
        let id = self.factor_id(&window);

        let mut out = Vec::with_capacity(packed.len() + 2);
        out.push(FULL);
        out.extend_from_slice(prefix);
        out.extend_from_slice(&window[1..]);

        let per = self.counters_per_word();
        if repr == DENSE && ((id / per) as usize) < data.len() {
            // in range of the dense array: representation stays dense
            out.push(DENSE);
            let start = out.len();
            out.extend_from_slice(data);
            let current = self.read_counter(data, id);
            if current < self.t as u32 {
                let shift = (id % per) * self.counter_bits;
                out[start + (id / per) as usize] += 1 << shift;
            }
            return out.into_boxed_slice();
        }
        let mut counts = self.decode_counts(repr, data);
        match counts.binary_search_by_key(&id, |&(i, _)| i) {
            Ok(pos) => counts[pos].1 = (counts[pos].1 + 1).min(self.t as u32),
            Err(pos) => counts.insert(pos, (id, 1)),
        }
        self.encode_counts(&counts, &mut out);
        out.into_boxed_slice()
    }

    /// Successor of `state` by `letter`, interning it if new.
    pub fn step(&mut self, state: StateId, letter: usize) -> Result<StateId> {
        let (id, _) = self.step_new(state, letter)?;
        Ok(id)
    }

    /// Like [`step`](Self::step), also reporting whether the state is new.
    fn step_new(&mut self, state: StateId, letter: usize) -> Result<(StateId, bool)> {
        let current = self.states[state].clone();
        let next = self.successor(&current, letter as u32);
        if let Some(id) = self.states.get_index_of(&next) {
            return Ok((id, false));
        }
        if self.states.len() >= self.budget {
            return Err(Error::BudgetExceeded { limit: self.budget });
        }
        let (id, _) = self.states.insert_full(next);
        Ok((id, true))
    }

    /// Reads a word from the initial state.
    pub fn run(&mut self, word: &[usize]) -> Result<StateId> {
        word.iter()
            .try_fold(self.initial(), |s, &letter| self.step(s, letter))
    }

    /// Explores every reachable state, returning the state count.
    pub fn explore(&mut self) -> Result<usize> {
        let mut i = 0;
        while i < self.states.len() {
            for letter in 0..self.alphabet_size {
                self.step(i, letter)?;
            }
            i += 1;
        }
        Ok(self.states.len())
    }

    /// Decodes a state into its readable profile.
    pub fn profile(&self, state: StateId) -> KProfile {
        let packed = &self.states[state];
        let to_word = |s: &[u32]| s.iter().map(|&l| l as usize).collect::<Word>();
        if packed[0] == SHORT {
            return profile_of(&to_word(&packed[1..]), self.k, self.t);
        }
        let k = self.k;
        let counts = self
            .decode_counts(packed[2 * k - 1], &packed[2 * k..])
            .into_iter()
            .map(|(id, c)| (to_word(&self.factor_words[id as usize]), c as usize))
            .collect();
        KProfile {
            k,
            t: self.t,
            prefix: to_word(&packed[1..k]),
            suffix: to_word(&packed[k..2 * k - 1]),
            counts,
            short: None,
        }
    }
}

/// Result of [`profile_determines`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Determination {
    /// Every reachable profile carries exactly one value.
    Determined {
        states: usize,
    },
    /// Two words with equal profiles and different values.
    Conflict {
        first: Word,
        second: Word,
        states: usize,
    },
    BudgetExceeded {
        states: usize,
    },
}

impl Determination {
    pub fn states(&self) -> usize {
        match self {
            Determination::Determined { states }
            | Determination::Conflict { states, .. }
            | Determination::BudgetExceeded { states } => *states,
        }
    }
}

/// Decides whether the (k, t)-profile of a word determines `action`'s value.
///
/// Breadth-first, so a conflict is reported with the shortest second word;
/// the first word is the earliest word reaching the same profile.
pub fn profile_determines<A: LetterAction>(
    action: &A,
    k: usize,
    t: usize,
    budget: usize,
) -> Result<Determination> {
    let alphabet = action.alphabet_size();
    let mut automaton = ProfileAutomaton::new(alphabet, k, t, budget)?;
    let mut values: IndexSet<A::Value> = IndexSet::new();
    let (root_value, _) = values.insert_full(action.initial());
    // per state: (parent, letter, value)
    let mut nodes: Vec<(usize, usize, usize)> = vec![(usize::MAX, 0, root_value)];

    let word_of = |nodes: &[(usize, usize, usize)], mut i: usize| {
        let mut word = Vec::new();
        while nodes[i].0 != usize::MAX {
            word.push(nodes[i].1);
            i = nodes[i].0;
        }
        word.reverse();
        word
    };

    let mut i = 0;
    while i < nodes.len() {
        let value = values[nodes[i].2].clone();
        for letter in 0..alphabet {
            let (next_value, _) = values.insert_full(action.step(&value, letter));
            let (next, fresh) = match automaton.step_new(i, letter) {
                Ok(r) => r,
                Err(Error::BudgetExceeded { .. }) => {
                    return Ok(Determination::BudgetExceeded {
                        states: automaton.len(),
                    })
                }
                Err(e) => return Err(e),
            };
            if fresh {
                debug_assert_eq!(next, nodes.len());
                nodes.push((i, letter, next_value));
            } else if nodes[next].2 != next_value {
                let first = word_of(&nodes, next);
                let mut second = word_of(&nodes, i);
                second.push(letter);
                return Ok(Determination::Conflict {
                    first,
                    second,
                    states: automaton.len(),
                });
            }
        }
        i += 1;
    }
    Ok(Determination::Determined {
        states: automaton.len(),
    })
}

/// Least scan width in `1..=k_max` at which profiles determine the action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSearch {
    pub result: OrderResult,
    /// Largest profile state count reached over all widths tried.
    pub profile_states: usize,
}

pub fn order_search<A: LetterAction>(
    action: &A,
    k_max: usize,
    t: usize,
    budget: usize,
) -> Result<OrderSearch> {
    check_params(1, t)?;
    let mut profile_states = 0;
    for k in 1..=k_max {
        let outcome = profile_determines(action, k, t, budget)?;
        profile_states = profile_states.max(outcome.states());
        match outcome {
            Determination::Determined { .. } => {
                return Ok(OrderSearch {
                    result: OrderResult::Found { k, t },
                    profile_states,
                })
            }
            Determination::Conflict { .. } => {}
            Determination::BudgetExceeded { states } => {
                return Ok(OrderSearch {
                    result: OrderResult::Unknown {
                        at_k: k,
                        t,
                        lower_bound: k - 1,
                        reason: format!("budget exceeded: {states} profile states at k={k}"),
                    },
                    profile_states,
                })
            }
        }
    }
    Ok(OrderSearch {
        result: OrderResult::NoneUpTo { k_max, t },
        profile_states,
    })
}

/// Outcome of a literal enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanResult {
    /// No two words up to this length collide.
    NoConflictUpTo(usize),
    Conflict(Word, Word),
}

/// Enumerates every word of length at most `max_len`, groups them by profile
/// and reports the first pair with equal profiles and different values.
pub fn brute_force_scan<A: LetterAction>(
    action: &A,
    k: usize,
    t: usize,
    max_len: usize,
) -> Result<ScanResult> {
    check_params(k, t)?;
    let alphabet = action.alphabet_size();
    let mut seen: HashMap<KProfile, (A::Value, Word)> = HashMap::new();
    let mut layer: Vec<Word> = vec![Vec::new()];
    for len in 0..=max_len {
        for word in &layer {
            let profile = profile_of(word, k, t);
            let value = action.run(word);
            match seen.get(&profile) {
                Some((v, first)) if *v != value => {
                    return Ok(ScanResult::Conflict(first.clone(), word.clone()))
                }
                Some(_) => {}
                None => {
                    seen.insert(profile, (value, word.clone()));
                }
            }
        }
        if len == max_len || alphabet == 0 {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..alphabet).map(move |l| {
                    let mut next = w.clone();
                    next.push(l);
                    next
                })
            })
            .collect();
    }
    Ok(ScanResult::NoConflictUpTo(max_len))
}
