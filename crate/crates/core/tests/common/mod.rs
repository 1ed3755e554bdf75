//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

pub mod catalog;

use std::collections::BTreeSet;

use coalg::quiver::paths_up_to;
use coalg::{MonomialCoalgebra, Path, Quiver, Vertex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ARROW_IDS: [&str; 8] = ["a", "b", "c", "d", "f", "g", "h", "k"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn quiver_from(n: usize, edges: &[(usize, usize)]) -> Quiver {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows = edges
        .iter()
        .enumerate()
        .map(|(i, (s, t))| {
            let id = ARROW_IDS.get(i).map_or_else(|| format!("x{i}"), |s| s.to_string());
            (id, (s + 1).to_string(), (t + 1).to_string())
        })
        .collect();
    Quiver::from_owned(names, arrows).unwrap()
}

/// A quiver with `1..=max_v` vertices and `0..=max_a` arrows, loops allowed.
pub fn random_quiver(rng: &mut ChaCha8Rng, max_v: usize, max_a: usize) -> Quiver {
    random_quiver_between(rng, max_v, 0, max_a)
}

pub fn random_quiver_between(rng: &mut ChaCha8Rng, max_v: usize, min_a: usize, max_a: usize) -> Quiver {
    let n = rng.gen_range(1..=max_v);
    let m = rng.gen_range(min_a..=max_a);
    let edges: Vec<(usize, usize)> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    quiver_from(n, &edges)
}

/// Largest truncation `<= n` keeping `kQ_{≤N}` at most `cap` paths.
pub fn affordable(q: &Quiver, n: usize, cap: usize) -> usize {
    (0..=n).rev().find(|k| paths_up_to(q, *k).len() <= cap).unwrap_or(0)
}

/// A random monomial subcoalgebra of `kQ`: factor avoidance and vertex
/// removal applied to the full coalgebra, either as a pattern or as a
/// complete listing truncated at `n`.
pub fn random_monomial(rng: &mut ChaCha8Rng, q: &Quiver, n: usize) -> MonomialCoalgebra {
    let mut c = MonomialCoalgebra::full(q);
    let rounds = rng.gen_range(0..=2);
    for _ in 0..rounds {
        let shortest = if rng.gen_bool(0.7) { 2 } else { 1 };
        let members: Vec<Path> = c.enumerate(n.min(3)).into_iter().filter(|p| p.len() >= shortest).collect();
        if let Some(p) = members.choose(rng) {
            c = c.avoid_factor(p);
        }
    }
    if rng.gen_bool(0.2) && q.vertex_count() > 1 {
        let keep: BTreeSet<Vertex> = q.vertices().filter(|_| rng.gen_bool(0.8)).collect();
        if !keep.is_empty() {
            c = c.restrict_to_vertices(&keep);
        }
    }
    if rng.gen_bool(0.3) {
        let cut = rng.gen_range(0..=n);
        c = MonomialCoalgebra::finite(q, Some(c.support().clone()), c.enumerate(cut), true).unwrap();
    }
    c
}

/// A random subcoalgebra of `c`.
pub fn random_sub(rng: &mut ChaCha8Rng, c: &MonomialCoalgebra, n: usize) -> MonomialCoalgebra {
    let mut a = c.clone();
    for _ in 0..rng.gen_range(0..=2) {
        let members = a.enumerate(n.min(2));
        if let Some(p) = members.choose(rng) {
            a = a.avoid_factor(p);
        }
    }
    a
}

/// An admissible random instance: the admissible form of a random monomial
/// coalgebra.
pub fn random_admissible(rng: &mut ChaCha8Rng, max_v: usize, max_a: usize, n: usize) -> MonomialCoalgebra {
    let q = random_quiver(rng, max_v, max_a);
    random_monomial(rng, &q, n).admissible_form().0
}
