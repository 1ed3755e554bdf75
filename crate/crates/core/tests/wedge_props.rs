mod common;

use std::collections::{BTreeMap, BTreeSet};

use coalg::gabriel::{
    arrow_count_quiver, gabriel_quiver, gabriel_quiver_monomial, localize_monomial, localize_quiver,
    predecessor_count, predecessor_degree, wedge_gabriel,
};
use coalg::linear::{truncate_in, PathBasis, Scalar, StructureCoalgebra};
use coalg::monomial::wedge_monomial;
use coalg::quiver::paths_up_to;
use coalg::wedge::{coradical_filtration, wedge_linear};
use coalg::{MonomialCoalgebra, Path, Vertex};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

const CAP: usize = 120;

/// Members of `c` up to length `n` all of whose cuts have the left factor in
/// `a` or the right factor in `b`.
fn wedge_by_cuts(a: &MonomialCoalgebra, b: &MonomialCoalgebra, c: &MonomialCoalgebra, n: usize) -> Vec<Path> {
    let q = c.quiver();
    c.enumerate(n).into_iter().filter(|p| p.cuts(q).iter().all(|(eta, tau)| a.contains(eta) || b.contains(tau))).collect()
}

type Triple = BTreeMap<(usize, usize, usize), Scalar>;

fn add(m: &mut Triple, k: (usize, usize, usize), c: Scalar) {
    let e = m.entry(k).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        m.remove(&k);
    }
}

/// Compares `(Δ⊗1)Δ` with `(1⊗Δ)Δ` and checks both counit laws.
fn coassociative(s: &StructureCoalgebra) -> bool {
    (0..s.delta.len()).all(|k| {
        let (mut left, mut right) = (Triple::new(), Triple::new());
        for (a, b, c) in &s.delta[k] {
            for (x, y, d) in &s.delta[*a] {
                add(&mut left, (*x, *y, *b), c * d);
            }
            for (x, y, d) in &s.delta[*b] {
                add(&mut right, (*a, *x, *y), c * d);
            }
        }
        let mut l = BTreeMap::new();
        let mut r = BTreeMap::new();
        for (a, b, c) in &s.delta[k] {
            *l.entry(*b).or_insert_with(Scalar::zero) += c * &s.counit[*a];
            *r.entry(*a).or_insert_with(Scalar::zero) += c * &s.counit[*b];
        }
        l.retain(|_, v: &mut Scalar| !v.is_zero());
        r.retain(|_, v: &mut Scalar| !v.is_zero());
        let unit = BTreeMap::from([(k, Scalar::one())]);
        left == right && l == unit && r == unit
    })
}

fn instance(seed: u64) -> (MonomialCoalgebra, usize, rand_chacha::ChaCha8Rng) {
    let mut rng = common::rng(seed);
    let q = common::random_quiver(&mut rng, 4, 6);
    let n = common::affordable(&q, 4, CAP).max(1);
    let c = common::random_monomial(&mut rng, &q, n).admissible_form().0;
    (c, n, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_rule_matches_linear_wedge(seed in any::<u64>()) {
        let (c, n, mut rng) = instance(seed);
        let a = common::random_sub(&mut rng, &c, n);
        let b = common::random_sub(&mut rng, &c, n);
        let comb = wedge_monomial(&a, &b, &c, n).unwrap();
        prop_assert_eq!(&comb, &wedge_by_cuts(&a, &b, &c, n));
        let basis = PathBasis::new(c.quiver(), n);
        let tc = truncate_in(&c, &basis);
        let lin = wedge_linear(truncate_in(&a, &basis).space(), truncate_in(&b, &basis).space(), &tc).unwrap();
        prop_assert_eq!(lin, basis.span_of_paths(&comb).unwrap());
    }

    #[test]
    fn gabriel_quiver_of_a_wedge(seed in any::<u64>()) {
        let (c, n, mut rng) = instance(seed);
        let q = c.quiver().clone();
        let a = common::random_sub(&mut rng, &c, n);
        let b = common::random_sub(&mut rng, &c, n);
        let basis = PathBasis::new(&q, n.max(2));
        let tc = truncate_in(&c, &basis);
        let (ta, tb) = (truncate_in(&a, &basis), truncate_in(&b, &basis));
        let w = tc.subcoalgebra(wedge_linear(ta.space(), tb.space(), &tc).unwrap()).unwrap();
        let (ga, gb, gc) = (gabriel_quiver(&ta).unwrap(), gabriel_quiver(&tb).unwrap(), gabriel_quiver(&tc).unwrap());
        let in_a = |v: Vertex| a.contains(&Path::trivial(v));
        let in_b = |v: Vertex| b.contains(&Path::trivial(v));
        let predicted = wedge_gabriel(&ga, &gb, &gc, &in_a, &in_b).unwrap();
        prop_assert_eq!(predicted, gabriel_quiver(&w).unwrap());
    }

    #[test]
    fn gabriel_quiver_counts_arrows(seed in any::<u64>()) {
        let (c, n, _) = instance(seed);
        let g = gabriel_quiver_monomial(&c, n).unwrap();
        prop_assert_eq!(g, arrow_count_quiver(&c));
    }

    #[test]
    fn coradical_filtration_is_length_filtration(seed in any::<u64>()) {
        let (c, n, _) = instance(seed);
        let basis = PathBasis::new(c.quiver(), n);
        let tc = truncate_in(&c, &basis);
        for (k, layer) in coradical_filtration(&tc, n).into_iter().enumerate() {
            prop_assert_eq!(layer, basis.span_of_paths(&c.enumerate(k)).unwrap(), "layer {}", k);
        }
    }

    #[test]
    fn predecessor_degree_counts_paths(seed in any::<u64>()) {
        let (c, n, _) = instance(seed);
        let n = n.max(2);
        let tc = truncate_in(&c, &PathBasis::new(c.quiver(), n));
        for depth in 1..n {
            for &i in c.support() {
                for &j in c.support() {
                    prop_assert_eq!(
                        predecessor_degree(&tc, i, j, depth).unwrap(),
                        predecessor_count(&c, i, j, depth),
                        "i={:?} j={:?} depth={}", i, j, depth
                    );
                }
            }
        }
    }

    #[test]
    fn truncated_coalgebras_are_coassociative(seed in any::<u64>()) {
        let (c, n, _) = instance(seed);
        let tc = truncate_in(&c, &PathBasis::new(c.quiver(), n));
        prop_assert!(coassociative(&tc.structure()));
    }

    #[test]
    fn localization_by_cell_words(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let q = common::random_quiver(&mut rng, 5, 7);
        let x: BTreeSet<Vertex> = q.vertices().filter(|_| rng.gen_bool(0.5)).collect();
        prop_assume!(!x.is_empty());
        let n = common::affordable(&q, 5, 4 * CAP).max(1);
        let full = MonomialCoalgebra::full(&q);
        let loc = localize_quiver(&q, &x, n).unwrap();
        let lc = localize_monomial(&full, &x, n).unwrap();
        prop_assert!(coassociative(&lc.structure));
        lc.check_isomorphism(&full, &loc).unwrap();
        if !loc.truncated {
            // every path between X vertices is a word in the cells, so the
            // degree-k part counts cell words of length k that fit in n
            let mut expected = vec![0usize; lc.degree_dims().len()];
            for w in paths_up_to(&loc.quiver, n) {
                if loc.expand(&w).len() <= n {
                    prop_assert!(w.len() < expected.len());
                    expected[w.len()] += 1;
                }
            }
            prop_assert_eq!(lc.degree_dims(), expected);
        }
    }
}
