//! Random expression generation for fuzzing and property suites.
//!
//! A target size `n` is drawn uniformly from `1..=max_size`, then the tree is
//! grown top-down with `n` as its budget:
//!
//! - budget 1: `0` (10%), `1` (15%), a uniformly chosen symbol (75%)
//! - budget 2: `*` (40%), `F` (30%), leaf (30%); `F` is replaced by `*` when
//!   forks are disabled
//! - budget ≥ 3: `+` (30%), `.` (35%), `*` (15%), `F` (20%); the remaining
//!   budget of a binary node is split uniformly between its children
//!
//! The resulting size never exceeds `max_size`. With a seeded RNG the output
//! is reproducible.

use rand::Rng;

use crate::syntax::{Behavior, Symbol};

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub max_size: usize,
    pub alphabet: Vec<Symbol>,
    pub forks: bool,
}

impl GenConfig {
    /// Symbols named `x`, `y`, `z`, `a`, `b`, ... (at most 26).
    pub fn new(max_size: usize, alphabet_size: usize) -> Self {
        let alphabet = ('a'..='z')
            .cycle()
            .skip(23)
            .take(26)
            .take(alphabet_size.clamp(1, 26))
            .map(|c| Symbol::new(&c.to_string()))
            .collect();
        GenConfig { max_size: max_size.max(1), alphabet, forks: true }
    }

    pub fn fork_free(mut self) -> Self {
        self.forks = false;
        self
    }
}

pub fn generate<R: Rng + ?Sized>(rng: &mut R, config: &GenConfig) -> Behavior {
    let n = rng.gen_range(1..=config.max_size);
    grow(rng, config, n)
}

fn leaf<R: Rng + ?Sized>(rng: &mut R, config: &GenConfig) -> Behavior {
    let roll = rng.gen_range(0..100);
    if roll < 10 {
        Behavior::empty()
    } else if roll < 25 || config.alphabet.is_empty() {
        Behavior::eps()
    } else {
        let i = rng.gen_range(0..config.alphabet.len());
        Behavior::symbol(config.alphabet[i].clone())
    }
}

fn unary<R: Rng + ?Sized>(rng: &mut R, config: &GenConfig, fork: bool, budget: usize) -> Behavior {
    let body = grow(rng, config, budget - 1);
    if fork && config.forks {
        Behavior::fork(body)
    } else {
        Behavior::star(body)
    }
}

fn grow<R: Rng + ?Sized>(rng: &mut R, config: &GenConfig, budget: usize) -> Behavior {
    match budget {
        0 | 1 => leaf(rng, config),
        2 => {
            let roll = rng.gen_range(0..100);
            if roll < 40 {
                unary(rng, config, false, 2)
            } else if roll < 70 {
                unary(rng, config, true, 2)
            } else {
                leaf(rng, config)
            }
        }
        _ => {
            let roll = rng.gen_range(0..100);
            if roll < 65 {
                let k = rng.gen_range(1..=budget - 2);
                let l = grow(rng, config, k);
                let r = grow(rng, config, budget - 1 - k);
                if roll < 30 {
                    Behavior::alt(l, r)
                } else {
                    Behavior::seq(l, r)
                }
            } else {
                unary(rng, config, roll >= 80, budget)
            }
        }
    }
}
