//! Derivative automata.
//!
//! States are canonical descendants: breadth-first closure of
//! [`deriv_canonical`] from the normal form of the input. The closure is
//! finite whenever every starred body normalizes to a fork-free term
//! ([`check_well_behaved`]); otherwise it may grow without bound, which
//! [`explore`] reports as [`StateExplosion`] once a state limit is reached.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::decompose::nullable;
use crate::derivative::deriv_canonical;
use crate::oracle::Word;
use crate::similarity::{normalize, Canonical};
use crate::syntax::{Alphabet, Behavior, Node, Symbol};

/// Default bound on explored states.
pub const DEFAULT_MAX_STATES: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Certified,
    Unknown,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(match self {
            Status::Certified => "certified",
            Status::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarredSubterm {
    pub subterm: Behavior,
    pub normalized_body: Canonical,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellBehavedReport {
    pub starred_subterms: Vec<StarredSubterm>,
    pub overall: Status,
}

impl WellBehavedReport {
    pub fn is_certified(&self) -> bool {
        self.overall == Status::Certified
    }
}

/// Certifies well-behavedness by the sufficient condition that every starred
/// body is similar to a fork-free term. `Unknown` never means "not
/// well-behaved".
pub fn check_well_behaved(r: &Behavior) -> WellBehavedReport {
    let starred_subterms: Vec<StarredSubterm> = r
        .subterms()
        .into_iter()
        .filter_map(|t| match t.node() {
            Node::Star(body) => {
                let normalized_body = normalize(body);
                let status = if normalized_body.as_behavior().is_fork_free() {
                    Status::Certified
                } else {
                    Status::Unknown
                };
                Some(StarredSubterm { subterm: t.clone(), normalized_body, status })
            }
            _ => None,
        })
        .collect();
    let overall = if starred_subterms.iter().all(|e| e.status == Status::Certified) {
        Status::Certified
    } else {
        Status::Unknown
    };
    WellBehavedReport { starred_subterms, overall }
}

/// Deterministic automaton over canonical descendants.
#[derive(Clone, Debug)]
pub struct Dfa {
    states: Vec<Canonical>,
    alphabet: Alphabet,
    /// `transitions[state][symbol index]`
    transitions: Vec<Vec<usize>>,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn states(&self) -> &[Canonical] {
        &self.states
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting(&self) -> Vec<usize> {
        (0..self.states.len()).filter(|&i| self.accepting[i]).collect()
    }

    /// Successor of `state` on `x`; `None` if `x` is not in the alphabet.
    pub fn step(&self, state: usize, x: &Symbol) -> Option<usize> {
        let k = self.alphabet.symbols().binary_search(x).ok()?;
        Some(self.transitions[state][k])
    }

    /// Words with symbols outside the alphabet are rejected.
    pub fn accepts(&self, w: &Word) -> bool {
        let mut q = self.start();
        for x in w.symbols() {
            match self.step(q, x) {
                Some(next) => q = next,
                None => return false,
            }
        }
        self.accepting[q]
    }

    /// `(from, symbol, to)` in state order, then symbol order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, &Symbol, usize)> + '_ {
        self.transitions.iter().enumerate().flat_map(move |(from, row)| {
            row.iter().zip(self.alphabet.iter()).map(move |(&to, x)| (from, x, to))
        })
    }

    /// Graphviz rendering. Byte-identical for identical automata.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  start [shape=point];\n");
        for (i, s) in self.states.iter().enumerate() {
            let shape = if self.accepting[i] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  q{i} [label=\"{}\", shape={shape}];", escape_dot(&s.render()));
        }
        out.push_str("  start -> q0;\n");
        for (from, x, to) in self.transitions() {
            let _ = writeln!(out, "  q{from} -> q{to} [label=\"{}\"];", escape_dot(x.name()));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json_value(&self) -> DfaJson {
        DfaJson {
            states: self.states.iter().map(Canonical::render).collect(),
            alphabet: self.alphabet.iter().map(|x| x.name().to_string()).collect(),
            start: self.start(),
            accepting: self.accepting(),
            transitions: self
                .transitions()
                .map(|(from, x, to)| (from, x.name().to_string(), to))
                .collect(),
        }
    }

    /// `{states, alphabet, start, accepting, transitions: [[from, symbol, to], ..]}`
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain data serializes")
    }
}

/// Serialized form of a [`Dfa`].
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DfaJson {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub start: usize,
    pub accepting: Vec<usize>,
    pub transitions: Vec<(usize, String, usize)>,
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The state limit was hit before the closure completed.
#[derive(Clone, Debug, Error)]
#[error("state explosion: more than {limit} dissimilar descendants ({} explored, {} pending)", .states.len(), .frontier.len())]
pub struct StateExplosion {
    pub limit: usize,
    /// Distinct states discovered, in discovery order.
    pub states: Vec<Canonical>,
    /// Discovered states whose successors were not yet computed.
    pub frontier: Vec<Canonical>,
}

/// Builds the derivative automaton of `r` over `alphabet(r)`.
pub fn explore(r: &Behavior, max_states: usize) -> Result<Dfa, StateExplosion> {
    explore_over(r, &r.alphabet(), max_states)
}

/// As [`explore`], over an explicit alphabet.
pub fn explore_over(r: &Behavior, alphabet: &Alphabet, max_states: usize) -> Result<Dfa, StateExplosion> {
    let start = normalize(r);
    let mut index: HashMap<Canonical, usize> = HashMap::new();
    let mut states = vec![start.clone()];
    index.insert(start, 0);
    let mut transitions: Vec<Vec<usize>> = Vec::new();

    let explosion = |states: &Vec<Canonical>, done: usize| StateExplosion {
        limit: max_states,
        states: states.clone(),
        frontier: states[done..].to_vec(),
    };
    if max_states == 0 {
        return Err(explosion(&states, 0));
    }

    // States are processed in discovery order, so `transitions.len()` is
    // the index of the next state to expand.
    while transitions.len() < states.len() {
        let q = transitions.len();
        let mut row = Vec::with_capacity(alphabet.len());
        for x in alphabet {
            let d = deriv_canonical(&states[q], x);
            let to = match index.get(&d) {
                Some(&i) => i,
                None => {
                    if states.len() == max_states {
                        return Err(explosion(&states, q));
                    }
                    states.push(d.clone());
                    index.insert(d, states.len() - 1);
                    states.len() - 1
                }
            };
            row.push(to);
        }
        transitions.push(row);
    }

    let accepting = states.iter().map(|s| nullable(s.as_behavior())).collect();
    Ok(Dfa { states, alphabet: alphabet.clone(), transitions, accepting })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateCount {
    Exact(usize),
    AtLeast(usize),
}

impl std::fmt::Display for StateCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StateCount::Exact(n) => write!(f, "{n}"),
            StateCount::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

/// Number of dissimilar descendants if below `cap`, else `AtLeast(cap)`.
pub fn count_reachable_states(r: &Behavior, cap: usize) -> StateCount {
    match explore(r, cap.saturating_sub(1)) {
        Ok(d) => StateCount::Exact(d.len()),
        Err(_) => StateCount::AtLeast(cap),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Clone, Debug, Error)]
pub enum ContainmentError {
    #[error("{side} operand is not certified well-behaved: {expr}")]
    NotCertified { side: Side, expr: Behavior },
    #[error("state explosion: product exceeded {limit} state pairs")]
    StateExplosion { limit: usize },
}

/// Outcome of a containment or equivalence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// A shortest word in the left language but not the right one (or, for
    /// equivalence, in exactly one of them; `in_left` tells which).
    Fails { witness: Word, in_left: bool },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Word> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails { witness, .. } => Some(witness),
        }
    }
}

fn require_certified(r: &Behavior, s: &Behavior) -> Result<(), ContainmentError> {
    if !check_well_behaved(r).is_certified() {
        return Err(ContainmentError::NotCertified { side: Side::Left, expr: r.clone() });
    }
    if !check_well_behaved(s).is_certified() {
        return Err(ContainmentError::NotCertified { side: Side::Right, expr: s.clone() });
    }
    Ok(())
}

/// `L(r) ⊆ L(s)`; both operands must be certified.
pub fn contains(r: &Behavior, s: &Behavior, max_states: usize) -> Result<Verdict, ContainmentError> {
    require_certified(r, s)?;
    contains_unchecked(r, s, max_states)
}

/// [`contains`] without the certification precondition. A `Fails` answer
/// carries a genuine witness; `Holds` means the product closure completed
/// within `max_states` pairs.
pub fn contains_unchecked(r: &Behavior, s: &Behavior, max_states: usize) -> Result<Verdict, ContainmentError> {
    product_search(r, s, max_states, |a, b| a && !b)
}

/// `L(r) = L(s)`, in one product traversal; both operands must be certified.
pub fn equivalent(r: &Behavior, s: &Behavior, max_states: usize) -> Result<Verdict, ContainmentError> {
    require_certified(r, s)?;
    equivalent_unchecked(r, s, max_states)
}

pub fn equivalent_unchecked(r: &Behavior, s: &Behavior, max_states: usize) -> Result<Verdict, ContainmentError> {
    product_search(r, s, max_states, |a, b| a != b)
}

/// A product state and the (parent index, symbol) it was reached by.
type Visited = ((Canonical, Canonical), Option<(usize, Symbol)>);

/// Breadth-first search of the product of both derivative automata for a
/// pair `(a, b)` with `bad(nullable(a), nullable(b))`. BFS order makes the
/// first witness found a shortest one.
fn product_search(
    r: &Behavior,
    s: &Behavior,
    max_states: usize,
    bad: impl Fn(bool, bool) -> bool,
) -> Result<Verdict, ContainmentError> {
    let sigma = r.alphabet().union(&s.alphabet());
    let start = (normalize(r), normalize(s));
    // pair -> (parent index, symbol leading here)
    let mut seen: HashMap<(Canonical, Canonical), usize> = HashMap::new();
    let mut pairs: Vec<Visited> = Vec::new();
    let mut queue = VecDeque::new();

    if max_states == 0 {
        return Err(ContainmentError::StateExplosion { limit: max_states });
    }
    seen.insert(start.clone(), 0);
    pairs.push((start, None));
    queue.push_back(0usize);

    while let Some(i) = queue.pop_front() {
        let (a, b) = pairs[i].0.clone();
        let (na, nb) = (nullable(a.as_behavior()), nullable(b.as_behavior()));
        if bad(na, nb) {
            return Ok(Verdict::Fails { witness: trace_back(&pairs, i), in_left: na });
        }
        for x in &sigma {
            let next = (deriv_canonical(&a, x), deriv_canonical(&b, x));
            if seen.contains_key(&next) {
                continue;
            }
            if pairs.len() == max_states {
                return Err(ContainmentError::StateExplosion { limit: max_states });
            }
            seen.insert(next.clone(), pairs.len());
            pairs.push((next, Some((i, x.clone()))));
            queue.push_back(pairs.len() - 1);
        }
    }
    Ok(Verdict::Holds)
}

fn trace_back(pairs: &[Visited], mut i: usize) -> Word {
    let mut rev = Vec::new();
    while let Some((parent, x)) = &pairs[i].1 {
        rev.push(x.clone());
        i = *parent;
    }
    rev.reverse();
    Word::new(rev)
}
