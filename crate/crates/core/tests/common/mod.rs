#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use frx_core::gen::{generate, GenConfig};
use frx_core::syntax::{Behavior, Node, Symbol};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn corpus(seed: u64, count: usize, config: &GenConfig) -> Vec<Behavior> {
    let mut rng = rng(seed);
    (0..count).map(|_| generate(&mut rng, config)).collect()
}

pub fn sym(name: &str) -> Symbol {
    Symbol::new(name)
}

pub fn p(text: &str) -> Behavior {
    frx_core::parse(text).unwrap()
}

/// Random behaviors over `x`, `y` (and `z` when `three`).
pub fn behavior(depth: u32, three: bool, forks: bool) -> impl Strategy<Value = Behavior> {
    let names: &'static [&'static str] = if three { &["x", "y", "z"] } else { &["x", "y"] };
    let leaf = prop_oneof![
        1 => Just(Behavior::empty()),
        2 => Just(Behavior::eps()),
        6 => prop::sample::select(names).prop_map(Behavior::sym),
    ];
    leaf.prop_recursive(depth, 24, 2, move |inner| {
        let mut ops: Vec<(u32, BoxedStrategy<Behavior>)> = vec![
            (3, (inner.clone(), inner.clone()).prop_map(|(l, r)| Behavior::alt(l, r)).boxed()),
            (4, (inner.clone(), inner.clone()).prop_map(|(l, r)| Behavior::seq(l, r)).boxed()),
            (2, inner.clone().prop_map(Behavior::star).boxed()),
        ];
        if forks {
            ops.push((2, inner.prop_map(Behavior::fork).boxed()));
        }
        proptest::strategy::Union::new_weighted(ops)
    })
}

/// Replaces the `index`-th subterm in pre-order with `f(subterm)`.
pub fn replace_at(r: &Behavior, index: usize, f: &mut dyn FnMut(&Behavior) -> Behavior) -> Behavior {
    fn go(r: &Behavior, index: &mut usize, f: &mut dyn FnMut(&Behavior) -> Behavior) -> Behavior {
        if *index == 0 {
            *index = usize::MAX;
            return f(r);
        }
        *index -= 1;
        match r.node() {
            Node::Alt(l, s) => {
                let l = go(l, index, f);
                Behavior::alt(l, go(s, index, f))
            }
            Node::Seq(l, s) => {
                let l = go(l, index, f);
                Behavior::seq(l, go(s, index, f))
            }
            Node::Star(b) => Behavior::star(go(b, index, f)),
            Node::Fork(b) => Behavior::fork(go(b, index, f)),
            _ => r.clone(),
        }
    }
    let mut i = index;
    go(r, &mut i, f)
}

/// Every single-step rewrite of `t` by one similarity axiom, in either
/// direction. `extra` is an arbitrary term used where an axiom introduces a
/// fresh operand (`0 → 0.s`).
pub fn axiom_rewrites(t: &Behavior, extra: &Behavior) -> Vec<Behavior> {
    let (e, z) = (Behavior::eps(), Behavior::empty());
    let mut out = vec![
        // Idem, Unit, Empty Word: introduce
        Behavior::alt(t.clone(), t.clone()),
        Behavior::alt(t.clone(), z.clone()),
        Behavior::alt(z.clone(), t.clone()),
        Behavior::seq(e.clone(), t.clone()),
        Behavior::seq(t.clone(), e.clone()),
    ];
    match t.node() {
        Node::Eps => {
            out.push(Behavior::star(e.clone()));
            out.push(Behavior::fork(e.clone()));
            out.push(Behavior::star(z.clone()));
        }
        Node::Empty => {
            out.push(Behavior::seq(z.clone(), extra.clone()));
            out.push(Behavior::seq(extra.clone(), z.clone()));
            out.push(Behavior::fork(z.clone()));
        }
        _ => {}
    }
    match t.node() {
        Node::Alt(r, s) => {
            out.push(Behavior::alt(s.clone(), r.clone()));
            if r == s {
                out.push(r.clone());
            }
            if s.is_empty_lang() {
                out.push(r.clone());
            }
            if r.is_empty_lang() {
                out.push(s.clone());
            }
            if let Node::Alt(s1, s2) = s.node() {
                out.push(Behavior::alt(Behavior::alt(r.clone(), s1.clone()), s2.clone()));
            }
            if let Node::Alt(r1, r2) = r.node() {
                out.push(Behavior::alt(r1.clone(), Behavior::alt(r2.clone(), s.clone())));
            }
        }
        Node::Seq(r, s) => {
            if r.is_eps() {
                out.push(s.clone());
            }
            if s.is_eps() {
                out.push(r.clone());
            }
            if r.is_empty_lang() || s.is_empty_lang() {
                out.push(z.clone());
            }
        }
        Node::Star(b) if b.is_eps() || b.is_empty_lang() => out.push(e.clone()),
        Node::Fork(b) if b.is_eps() || b.is_empty_lang() => out.push(b.clone()),
        _ => {}
    }
    out
}

/// Applies one randomly chosen axiom at one randomly chosen position.
pub fn apply_random_axiom<R: Rng>(rng: &mut R, r: &Behavior) -> Behavior {
    let positions = r.subterms().len();
    let at = rng.gen_range(0..positions);
    let extra = match rng.gen_range(0..3) {
        0 => Behavior::sym("x"),
        1 => Behavior::star(Behavior::sym("y")),
        _ => Behavior::fork(Behavior::sym("x")),
    };
    replace_at(r, at, &mut |t| {
        let options = axiom_rewrites(t, &extra);
        options[rng.gen_range(0..options.len())].clone()
    })
}

/// Normal-form check written against the rewrite rules directly.
pub fn is_normal_form(r: &Behavior) -> bool {
    r.subterms().iter().all(|t| match t.node() {
        Node::Alt(l, s) => {
            let next_head = match s.node() {
                Node::Alt(h, _) => h,
                _ => s,
            };
            !matches!(l.node(), Node::Alt(..))
                && !l.is_empty_lang()
                && !s.is_empty_lang()
                && l < next_head
        }
        Node::Seq(l, s) => {
            let fork_order = match (l.node(), s.node()) {
                (Node::Fork(a), Node::Fork(b)) => a <= b,
                (Node::Fork(a), Node::Seq(h, _)) => match h.node() {
                    Node::Fork(b) => a <= b,
                    _ => true,
                },
                _ => true,
            };
            !matches!(l.node(), Node::Seq(..))
                && !l.is_eps()
                && !s.is_eps()
                && !l.is_empty_lang()
                && !s.is_empty_lang()
                && fork_order
        }
        Node::Star(b) | Node::Fork(b) => !b.is_eps() && !b.is_empty_lang(),
        _ => true,
    })
}
