//! Concurrent part `⌈r⌉`, sequential part `⌊r⌋`, and the syntactic
//! nullable and emptiness tests.
//!
//! `conc_part` and `seq_part` return raw trees with no simplification, so
//! that `⌈⌈r⌉⌉ = ⌈r⌉` holds as structural identity. Pipe the results through
//! [`crate::similarity::normalize`] for readable output.

use crate::syntax::{Behavior, Node};

/// `⌈r⌉`: the behavior that may run concurrently with whatever follows `r`.
pub fn conc_part(r: &Behavior) -> Behavior {
    match r.node() {
        Node::Empty | Node::Sym(_) => Behavior::empty(),
        Node::Eps => Behavior::eps(),
        Node::Alt(l, s) => Behavior::alt(conc_part(l), conc_part(s)),
        Node::Seq(l, s) => Behavior::seq(conc_part(l), conc_part(s)),
        Node::Star(b) => Behavior::star(conc_part(b)),
        Node::Fork(_) => r.clone(),
    }
}

/// `⌊r⌋`: the behavior that must happen next.
pub fn seq_part(r: &Behavior) -> Behavior {
    match r.node() {
        Node::Empty | Node::Eps | Node::Fork(_) => Behavior::empty(),
        Node::Sym(_) => r.clone(),
        Node::Alt(l, s) => Behavior::alt(seq_part(l), seq_part(s)),
        // ⌊r⌋·s + ⌈r⌉·⌊s⌋
        Node::Seq(l, s) => Behavior::alt(
            Behavior::seq(seq_part(l), s.clone()),
            Behavior::seq(conc_part(l), seq_part(s)),
        ),
        // ⌈r⌉*·⌊r⌋·r*
        Node::Star(b) => Behavior::seq(
            Behavior::star(conc_part(b)),
            Behavior::seq(seq_part(b), r.clone()),
        ),
    }
}

/// `ε ∈ L(r)`.
pub fn nullable(r: &Behavior) -> bool {
    match r.node() {
        Node::Empty | Node::Sym(_) => false,
        Node::Eps | Node::Star(_) => true,
        Node::Alt(l, s) => nullable(l) || nullable(s),
        Node::Seq(l, s) => nullable(l) && nullable(s),
        Node::Fork(b) => nullable(b),
    }
}

/// `L(r) = ∅`.
pub fn is_empty(r: &Behavior) -> bool {
    match r.node() {
        Node::Empty => true,
        Node::Eps | Node::Sym(_) | Node::Star(_) => false,
        Node::Alt(l, s) => is_empty(l) && is_empty(s),
        Node::Seq(l, s) => is_empty(l) || is_empty(s),
        Node::Fork(b) => is_empty(b),
    }
}
