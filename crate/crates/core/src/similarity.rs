//! Similarity normal forms.
//!
//! The normalizer rebuilds a term bottom-up through four smart constructors
//! (`⊕`, `⊙`, `⊛`, `F`). Each assumes canonical arguments and returns a
//! canonical result, so one pass yields the normal form of the rewrite
//! system
//!
//! ```text
//! Comm    r + s       → s + r          (s < r)
//! Assoc1  r + (s + t) → s + (r + t)    (s < r)
//! Assoc2  (r + s) + t → r + (s + t)
//! Idemp   r + r       → r
//! U       0 + r       → r
//! EW      1.r → r   r.1 → r   1* → 1   F(1) → 1
//! EL      0.r → 0   r.0 → 0   0* → 1   F(0) → 0
//! ```
//!
//! extended with right-nesting of products and the swap `F(a).F(b) → F(b).F(a)`
//! for `b < a` on adjacent fork factors. Two terms are similar exactly when
//! their normal forms are structurally equal.

use std::fmt;

use crate::syntax::{Behavior, Node};

/// A behavior in normal form.
///
/// Only produced by [`normalize`] and the smart constructors, so structural
/// equality on this type decides similarity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Canonical(Behavior);

impl Canonical {
    pub fn empty() -> Self {
        Canonical(Behavior::empty())
    }

    pub fn eps() -> Self {
        Canonical(Behavior::eps())
    }

    pub fn as_behavior(&self) -> &Behavior {
        &self.0
    }

    pub fn into_behavior(self) -> Behavior {
        self.0
    }

    pub fn render(&self) -> String {
        self.0.render()
    }

    /// Wraps a subterm of a canonical term. Every subterm of a normal form
    /// is itself in normal form.
    pub(crate) fn sub(b: &Behavior) -> Canonical {
        Canonical(b.clone())
    }
}

impl fmt::Display for Canonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Canonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Canonical({:?})", self.0)
    }
}

impl AsRef<Behavior> for Canonical {
    fn as_ref(&self) -> &Behavior {
        &self.0
    }
}

/// Name of a simplification reported by [`normalize_traced`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `0 + r → r`, `r + 0 → r`
    Unit,
    /// `r + r → r`
    Idemp,
    /// `(r + s) + t → r + (s + t)`
    Assoc2,
    /// sorting of sum operands (`Comm`, `Assoc1`)
    Sort,
    /// `1.r → r`, `r.1 → r`, `1* → 1`, `F(1) → 1`
    EmptyWord,
    /// `0.r → 0`, `r.0 → 0`, `0* → 1`, `F(0) → 0`
    EmptyLanguage,
    /// `(r.s).t → r.(s.t)`
    SeqAssoc,
    /// `F(a).F(b) → F(b).F(a)` when `b < a`
    ForkSwap,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Unit => "U",
            Rule::Idemp => "Idemp",
            Rule::Assoc2 => "Assoc2",
            Rule::Sort => "Comm/Assoc1",
            Rule::EmptyWord => "EW",
            Rule::EmptyLanguage => "EL",
            Rule::SeqAssoc => "Assoc(.)",
            Rule::ForkSwap => "ForkComm",
        })
    }
}

/// One simplification: the naive combination `before` became `after`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    pub rule: Rule,
    pub before: Behavior,
    pub after: Behavior,
}

impl fmt::Display for Rewrite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<11} {}  =>  {}", self.rule.to_string(), self.before, self.after)
    }
}

struct Builder<'a> {
    log: Option<&'a mut Vec<Rewrite>>,
}

impl Builder<'_> {
    fn note(&mut self, rule: Rule, before: impl FnOnce() -> Behavior, after: &Behavior) {
        if let Some(log) = self.log.as_deref_mut() {
            log.push(Rewrite { rule, before: before(), after: after.clone() });
        }
    }

    // ⊕: merge two sorted right-nested sums.
    fn alt(&mut self, r: Canonical, s: Canonical) -> Canonical {
        if r.0.is_empty_lang() || s.0.is_empty_lang() {
            let out = if r.0.is_empty_lang() { s.clone() } else { r.clone() };
            self.note(Rule::Unit, || Behavior::alt(r.0.clone(), s.0.clone()), &out.0);
            return out;
        }
        let left = summands(&r.0);
        let right = summands(&s.0);
        let mut merged = Vec::with_capacity(left.len() + right.len());
        let (mut i, mut j) = (0, 0);
        let mut dup = false;
        while i < left.len() && j < right.len() {
            match left[i].cmp(&right[j]) {
                std::cmp::Ordering::Less => {
                    merged.push(left[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    merged.push(right[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    merged.push(left[i].clone());
                    dup = true;
                    i += 1;
                    j += 1;
                }
            }
        }
        merged.extend_from_slice(&left[i..]);
        merged.extend_from_slice(&right[j..]);

        let out = rebuild_sum(merged);
        if self.log.is_some() {
            let naive = Behavior::alt(r.0.clone(), s.0.clone());
            if out != naive {
                let rule = if dup {
                    Rule::Idemp
                } else if left.len() > 1 {
                    Rule::Assoc2
                } else {
                    Rule::Sort
                };
                self.note(rule, || naive, &out);
            }
        }
        Canonical(out)
    }

    // ⊙
    fn seq(&mut self, r: Canonical, s: Canonical) -> Canonical {
        if r.0.is_empty_lang() || s.0.is_empty_lang() {
            let out = Canonical::empty();
            self.note(Rule::EmptyLanguage, || Behavior::seq(r.0.clone(), s.0.clone()), &out.0);
            return out;
        }
        if s.0.is_eps() || r.0.is_eps() {
            let out = if s.0.is_eps() { r.clone() } else { s.clone() };
            self.note(Rule::EmptyWord, || Behavior::seq(r.0.clone(), s.0.clone()), &out.0);
            return out;
        }
        match r.0.node() {
            Node::Seq(r1, r2) => {
                let tail = self.seq(Canonical::sub(r2), s.clone());
                let out = self.seq(Canonical::sub(r1), tail);
                self.note(Rule::SeqAssoc, || Behavior::seq(r.0.clone(), s.0.clone()), &out.0);
                out
            }
            Node::Fork(a) => match s.0.node() {
                Node::Fork(b) if b < a => {
                    let out = Behavior::seq(s.0.clone(), r.0.clone());
                    self.note(Rule::ForkSwap, || Behavior::seq(r.0.clone(), s.0.clone()), &out);
                    Canonical(out)
                }
                Node::Seq(head, rest) if matches!(head.node(), Node::Fork(b) if b < a) => {
                    let tail = self.seq(r.clone(), Canonical::sub(rest));
                    let out = Behavior::seq(head.clone(), tail.0);
                    self.note(Rule::ForkSwap, || Behavior::seq(r.0.clone(), s.0.clone()), &out);
                    Canonical(out)
                }
                _ => Canonical(Behavior::seq(r.0, s.0)),
            },
            _ => Canonical(Behavior::seq(r.0, s.0)),
        }
    }

    // ⊛
    fn star(&mut self, r: Canonical) -> Canonical {
        if r.0.is_empty_lang() || r.0.is_eps() {
            let rule = if r.0.is_eps() { Rule::EmptyWord } else { Rule::EmptyLanguage };
            let out = Canonical::eps();
            self.note(rule, || Behavior::star(r.0.clone()), &out.0);
            return out;
        }
        Canonical(Behavior::star(r.0))
    }

    fn fork(&mut self, r: Canonical) -> Canonical {
        if r.0.is_empty_lang() || r.0.is_eps() {
            let rule = if r.0.is_eps() { Rule::EmptyWord } else { Rule::EmptyLanguage };
            self.note(rule, || Behavior::fork(r.0.clone()), &r.0);
            return r;
        }
        Canonical(Behavior::fork(r.0))
    }

    fn normalize(&mut self, r: &Behavior) -> Canonical {
        match r.node() {
            Node::Empty | Node::Eps | Node::Sym(_) => Canonical(r.clone()),
            Node::Alt(l, s) => {
                let (l, s) = (self.normalize(l), self.normalize(s));
                self.alt(l, s)
            }
            Node::Seq(l, s) => {
                let (l, s) = (self.normalize(l), self.normalize(s));
                self.seq(l, s)
            }
            Node::Star(b) => {
                let b = self.normalize(b);
                self.star(b)
            }
            Node::Fork(b) => {
                let b = self.normalize(b);
                self.fork(b)
            }
        }
    }
}

fn summands(r: &Behavior) -> Vec<Behavior> {
    let mut out = Vec::new();
    let mut cur = r;
    while let Node::Alt(l, s) = cur.node() {
        out.push(l.clone());
        cur = s;
    }
    out.push(cur.clone());
    out
}

fn rebuild_sum(mut items: Vec<Behavior>) -> Behavior {
    let mut acc = items.pop().unwrap_or_else(Behavior::empty);
    while let Some(l) = items.pop() {
        acc = Behavior::alt(l, acc);
    }
    acc
}

/// `r ⊕ s`
pub fn alt_n(r: &Canonical, s: &Canonical) -> Canonical {
    Builder { log: None }.alt(r.clone(), s.clone())
}

/// `r ⊙ s`
pub fn seq_n(r: &Canonical, s: &Canonical) -> Canonical {
    Builder { log: None }.seq(r.clone(), s.clone())
}

/// `r⊛`
pub fn star_n(r: &Canonical) -> Canonical {
    Builder { log: None }.star(r.clone())
}

/// Smart fork constructor.
pub fn fork_n(r: &Canonical) -> Canonical {
    Builder { log: None }.fork(r.clone())
}

/// Similarity normal form of `r`.
pub fn normalize(r: &Behavior) -> Canonical {
    Builder { log: None }.normalize(r)
}

/// [`normalize`], also returning every simplification in the order applied.
pub fn normalize_traced(r: &Behavior) -> (Canonical, Vec<Rewrite>) {
    let mut log = Vec::new();
    let out = Builder { log: Some(&mut log) }.normalize(r);
    (out, log)
}

/// Decides similarity by comparing normal forms.
pub fn similar(r: &Behavior, s: &Behavior) -> bool {
    normalize(r) == normalize(s)
}
