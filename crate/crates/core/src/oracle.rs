//! Bounded trace semantics.
//!
//! Every language here is the exact truncation of the (possibly infinite)
//! trace language to words of length at most `bound`. All semantic
//! constructors are monotone and never shorten a continuation word, so a
//! continuation word longer than the bound can never contribute to a result
//! word within the bound. Truncating eagerly is therefore exact, and the
//! least fixpoint for `r*` is reached by Kleene iteration from the empty set
//! over the finite lattice of bounded word sets.
//!
//! This module shares no evaluation code with the derivative machinery and
//! serves as ground truth in tests.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::syntax::{Behavior, Node, Symbol, SymbolError};

/// A finite sequence of symbols.
///
/// Ordered by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn epsilon() -> Self {
        Word(Vec::new())
    }

    /// Whitespace-separated symbols; `-` or a blank string is the empty word.
    pub fn parse(text: &str) -> Result<Self, SymbolError> {
        let t = text.trim();
        if t.is_empty() || t == "-" {
            return Ok(Word::epsilon());
        }
        t.split_whitespace()
            .map(Symbol::try_new)
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, x: Symbol) {
        self.0.push(x);
    }

    /// `x · self`
    pub fn prepend(&self, x: &Symbol) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(x.clone());
        v.extend(self.0.iter().cloned());
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Word(v)
    }

    pub fn count(&self, x: &Symbol) -> usize {
        self.0.iter().filter(|s| *s == x).count()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(s.name())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Finite set of words, all of length at most `bound`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundedLanguage {
    words: BTreeSet<Word>,
    bound: usize,
}

impl BoundedLanguage {
    pub fn empty(bound: usize) -> Self {
        BoundedLanguage { words: BTreeSet::new(), bound }
    }

    /// `{ε}`
    pub fn epsilon(bound: usize) -> Self {
        Self::from_words([Word::epsilon()], bound)
    }

    /// Words longer than `bound` are dropped.
    pub fn from_words(words: impl IntoIterator<Item = Word>, bound: usize) -> Self {
        BoundedLanguage {
            words: words.into_iter().filter(|w| w.len() <= bound).collect(),
            bound,
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn into_words(self) -> BTreeSet<Word> {
        self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn truncate(&self, bound: usize) -> Self {
        Self::from_words(self.words.iter().cloned(), bound)
    }

    pub fn union(&self, other: &BoundedLanguage) -> Self {
        let bound = self.bound.min(other.bound);
        Self::from_words(self.words.union(&other.words).cloned(), bound)
    }

    pub fn is_subset(&self, other: &BoundedLanguage) -> bool {
        self.words.is_subset(&other.words)
    }

    /// Pairwise concatenation, truncated to `bound`.
    pub fn concat(&self, other: &BoundedLanguage, bound: usize) -> Self {
        let mut out = BTreeSet::new();
        for v in &self.words {
            for w in &other.words {
                if v.len() + w.len() <= bound {
                    out.insert(v.concat(w));
                }
            }
        }
        BoundedLanguage { words: out, bound }
    }
}

/// All interleavings of `v` and `w`.
pub fn shuffle_words(v: &Word, w: &Word) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let mut buf = Vec::with_capacity(v.len() + w.len());
    interleave(v.symbols(), w.symbols(), &mut buf, &mut out);
    out
}

fn interleave(v: &[Symbol], w: &[Symbol], buf: &mut Vec<Symbol>, out: &mut BTreeSet<Word>) {
    match (v.split_first(), w.split_first()) {
        (None, _) | (_, None) => {
            let mut word = buf.clone();
            word.extend_from_slice(v);
            word.extend_from_slice(w);
            out.insert(Word(word));
        }
        (Some((x, vs)), Some((y, ws))) => {
            buf.push(x.clone());
            interleave(vs, w, buf, out);
            buf.pop();
            buf.push(y.clone());
            interleave(v, ws, buf, out);
            buf.pop();
        }
    }
}

/// `L ∥ M`, truncated to `bound`.
pub fn shuffle_langs(l: &BoundedLanguage, m: &BoundedLanguage, bound: usize) -> BoundedLanguage {
    let mut out = BTreeSet::new();
    for v in l.iter() {
        for w in m.iter() {
            if v.len() + w.len() <= bound {
                out.extend(shuffle_words(v, w));
            }
        }
    }
    BoundedLanguage { words: out, bound }
}

/// The trace language of `r` with continuation `k`, restricted to words of
/// length at most `bound`. `k` is truncated first.
pub fn trace_lang(r: &Behavior, k: &BoundedLanguage, bound: usize) -> BoundedLanguage {
    let k = k.truncate(bound);
    trace(r, &k, bound)
}

fn trace(r: &Behavior, k: &BoundedLanguage, bound: usize) -> BoundedLanguage {
    match r.node() {
        Node::Empty => BoundedLanguage::empty(bound),
        Node::Eps => k.clone(),
        Node::Sym(x) => BoundedLanguage::from_words(k.iter().map(|w| w.prepend(x)), bound),
        Node::Alt(l, s) => trace(l, k, bound).union(&trace(s, k, bound)),
        Node::Seq(l, s) => {
            let inner = trace(s, k, bound);
            trace(l, &inner, bound)
        }
        Node::Star(body) => {
            // μX. L(body, X) ∪ K
            let mut x = BoundedLanguage::empty(bound);
            loop {
                let next = trace(body, &x, bound).union(k);
                if next == x {
                    return x;
                }
                x = next;
            }
        }
        Node::Fork(body) => {
            let forked = trace(body, &BoundedLanguage::epsilon(bound), bound);
            shuffle_langs(&forked, k, bound)
        }
    }
}

/// `L(r)`, truncated to `bound`.
pub fn lang(r: &Behavior, bound: usize) -> BoundedLanguage {
    trace_lang(r, &BoundedLanguage::epsilon(bound), bound)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("the classical regular-expression semantics is undefined for fork: {0}")]
    ForkUnsupported(Behavior),
}

/// Classical regular-expression language of a fork-free expression,
/// computed by the textbook recursion with direct concatenation.
pub fn regular_lang(r: &Behavior, bound: usize) -> Result<BoundedLanguage, OracleError> {
    Ok(match r.node() {
        Node::Empty => BoundedLanguage::empty(bound),
        Node::Eps => BoundedLanguage::epsilon(bound),
        Node::Sym(x) => BoundedLanguage::from_words([Word(vec![x.clone()])], bound),
        Node::Alt(l, s) => {
            let mut words = regular_lang(l, bound)?.into_words();
            words.extend(regular_lang(s, bound)?.into_words());
            BoundedLanguage { words, bound }
        }
        Node::Seq(l, s) => regular_lang(l, bound)?.concat(&regular_lang(s, bound)?, bound),
        Node::Star(body) => {
            // ε ∪ B ∪ B·B ∪ ... until no new words appear
            let b = regular_lang(body, bound)?;
            let mut acc = BoundedLanguage::epsilon(bound);
            let mut frontier = acc.clone();
            while !frontier.is_empty() {
                let step = frontier.concat(&b, bound);
                let fresh: BTreeSet<Word> = step.words.difference(&acc.words).cloned().collect();
                acc.words.extend(fresh.iter().cloned());
                frontier = BoundedLanguage { words: fresh, bound };
            }
            acc
        }
        Node::Fork(_) => return Err(OracleError::ForkUnsupported(r.clone())),
    })
}

/// `x \ L = { w : x·w ∈ L }`. The bound drops by one.
pub fn left_quotient(x: &Symbol, l: &BoundedLanguage) -> BoundedLanguage {
    let words = l
        .iter()
        .filter(|w| w.symbols().first() == Some(x))
        .map(|w| Word(w.symbols()[1..].to_vec()));
    BoundedLanguage::from_words(words, l.bound().saturating_sub(1))
}

/// `w ∈ L(r)` by enumeration up to `|w|`.
pub fn member(r: &Behavior, w: &Word) -> bool {
    lang(r, w.len()).contains(w)
}

/// All words over `symbols` of length at most `bound`.
pub fn all_words(symbols: &[Symbol], bound: usize) -> Vec<Word> {
    let mut out = vec![Word::epsilon()];
    let mut layer = vec![Word::epsilon()];
    for _ in 0..bound {
        let mut next = Vec::with_capacity(layer.len() * symbols.len());
        for w in &layer {
            for x in symbols {
                let mut v = w.clone();
                v.push(x.clone());
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Finite approximation of `r ≼ s` (containment for every continuation):
/// checks `L(r, K) ⊆ L(s, K)` at `bound` for `K ∈ {∅, {ε}, {a}, {a b}}`
/// where `a` and `b` are the least and greatest symbol of the joint
/// alphabet. A necessary condition only.
pub fn sampled_containment(r: &Behavior, s: &Behavior, bound: usize) -> bool {
    continuation_samples(r, s, bound)
        .iter()
        .all(|k| trace_lang(r, k, bound).is_subset(&trace_lang(s, k, bound)))
}

/// Same sampling as [`sampled_containment`], checking equality.
pub fn sampled_equivalence(r: &Behavior, s: &Behavior, bound: usize) -> bool {
    continuation_samples(r, s, bound)
        .iter()
        .all(|k| trace_lang(r, k, bound) == trace_lang(s, k, bound))
}

/// The continuations `∅, {ε}, {a}, {a b}` sampled by [`sampled_containment`],
/// `a`, `b` being the least and greatest symbol of the joint alphabet.
pub fn continuation_samples(r: &Behavior, s: &Behavior, bound: usize) -> Vec<BoundedLanguage> {
    let sigma = r.alphabet().union(&s.alphabet());
    let mut ks = vec![BoundedLanguage::empty(bound), BoundedLanguage::epsilon(bound)];
    if let (Some(a), Some(b)) = (sigma.symbols().first(), sigma.symbols().last()) {
        ks.push(BoundedLanguage::from_words([Word(vec![a.clone()])], bound));
        ks.push(BoundedLanguage::from_words([Word(vec![a.clone(), b.clone()])], bound));
    }
    ks
}
