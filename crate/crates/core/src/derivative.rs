//! Derivatives of forkable expressions and the derivative-based matcher.
//!
//! The product rule differs from the classical one: a symbol may reach the
//! right operand not only when the left one is nullable but whenever the
//! left one has concurrent behavior, so
//! `∂x(r.s) = ∂x(r).s + ⌈r⌉.∂x(s)`. Forks commute with derivatives:
//! `∂x F(r) = F(∂x r)`.
//!
//! For the same reason the star rule carries a concurrent prefix,
//! `∂x(r*) = ⌈r⌉*.∂x(r).r*`: iterations of `r` that consume nothing may
//! still fork threads whose events interleave with later ones. In
//! `(F(z) + x.y)*` the word `x z y` needs a `z` forked by an earlier,
//! otherwise silent, iteration. When `⌈r⌉` is similar to `1` or `0`, as for
//! every fork-free `r`, the prefix normalizes away and the classical rule
//! `∂x(r).r*` remains.

use crate::decompose::{conc_part, nullable};
use crate::oracle::Word;
use crate::similarity::{alt_n, fork_n, normalize, seq_n, star_n, Canonical};
use crate::syntax::{Behavior, Node, Symbol};

/// Raw derivative, verbatim from the defining table. No simplification.
pub fn deriv(r: &Behavior, x: &Symbol) -> Behavior {
    match r.node() {
        Node::Empty | Node::Eps => Behavior::empty(),
        Node::Sym(y) => {
            if y == x {
                Behavior::eps()
            } else {
                Behavior::empty()
            }
        }
        Node::Alt(l, s) => Behavior::alt(deriv(l, x), deriv(s, x)),
        Node::Seq(l, s) => Behavior::alt(
            Behavior::seq(deriv(l, x), s.clone()),
            Behavior::seq(conc_part(l), deriv(s, x)),
        ),
        // ⌈b⌉*.∂x(b).b*
        Node::Star(b) => Behavior::seq(
            Behavior::star(conc_part(b)),
            Behavior::seq(deriv(b, x), r.clone()),
        ),
        Node::Fork(b) => Behavior::fork(deriv(b, x)),
    }
}

/// `normalize(deriv(c, x))`.
///
/// Computed directly through the smart constructors: normalization is a
/// bottom-up rebuild and subterms of `c` are already canonical, so
/// interleaving the two yields the same term without materializing the raw
/// derivative.
pub fn deriv_canonical(c: &Canonical, x: &Symbol) -> Canonical {
    derive_n(c.as_behavior(), x)
}

fn derive_n(r: &Behavior, x: &Symbol) -> Canonical {
    match r.node() {
        Node::Empty | Node::Eps => Canonical::empty(),
        Node::Sym(y) => {
            if y == x {
                Canonical::eps()
            } else {
                Canonical::empty()
            }
        }
        Node::Alt(l, s) => alt_n(&derive_n(l, x), &derive_n(s, x)),
        Node::Seq(l, s) => {
            let left = seq_n(&derive_n(l, x), &canonical_sub(s));
            let right = seq_n(&conc_n(l), &derive_n(s, x));
            alt_n(&left, &right)
        }
        Node::Star(b) => {
            let tail = seq_n(&derive_n(b, x), &canonical_sub(r));
            seq_n(&star_n(&conc_n(b)), &tail)
        }
        Node::Fork(b) => fork_n(&derive_n(b, x)),
    }
}

/// `normalize(⌈r⌉)` for a canonical `r`.
fn conc_n(r: &Behavior) -> Canonical {
    match r.node() {
        Node::Empty | Node::Sym(_) => Canonical::empty(),
        Node::Eps => Canonical::eps(),
        Node::Alt(l, s) => alt_n(&conc_n(l), &conc_n(s)),
        Node::Seq(l, s) => seq_n(&conc_n(l), &conc_n(s)),
        Node::Star(b) => star_n(&conc_n(b)),
        Node::Fork(_) => canonical_sub(r),
    }
}

// Subterms of a canonical term are canonical.
fn canonical_sub(r: &Behavior) -> Canonical {
    Canonical::sub(r)
}

/// Fold of [`deriv_canonical`] over `w`, starting from `normalize(r)`.
pub fn deriv_word(r: &Behavior, w: &Word) -> Canonical {
    w.symbols()
        .iter()
        .fold(normalize(r), |acc, x| deriv_canonical(&acc, x))
}

/// The canonical derivative after each prefix of `w`, starting with
/// `normalize(r)`; `w.len() + 1` entries.
pub fn deriv_chain(r: &Behavior, w: &Word) -> Vec<Canonical> {
    let mut out = vec![normalize(r)];
    for x in w.symbols() {
        let next = deriv_canonical(out.last().expect("nonempty"), x);
        out.push(next);
    }
    out
}

/// Decides `w ∈ L(r)`.
pub fn matches(r: &Behavior, w: &Word) -> bool {
    nullable(deriv_word(r, w).as_behavior())
}
