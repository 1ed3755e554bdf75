//! Dynkin and extended Dynkin graphs on at most ten vertices, and an
//! oracle that names a connected graph from the spectrum of its symmetric
//! Cartan matrix.

use coalg::quiver::{Family, ShapeClass};
use coalg::Quiver;
use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::quiver_from;

pub const MAX_VERTICES: usize = 10;

/// Undirected edge list on `n` vertices; loops as `(i, i)`.
#[derive(Debug, Clone)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

fn chain(from: usize, len: usize, start: usize, edges: &mut Vec<(usize, usize)>) {
    let mut prev = from;
    for k in 0..len {
        edges.push((prev, start + k));
        prev = start + k;
    }
}

/// Central vertex with arms of the given lengths.
fn star(arms: &[usize]) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in arms {
        chain(0, len, next, &mut edges);
        next += len;
    }
    Graph { n: next, edges }
}

pub fn catalog() -> Vec<(ShapeClass, Graph)> {
    use Family::*;
    use ShapeClass::*;
    let mut out = Vec::new();
    for n in 1..=MAX_VERTICES {
        out.push((Dynkin(A(n)), Graph { n, edges: (1..n).map(|i| (i - 1, i)).collect() }));
    }
    for n in 4..=MAX_VERTICES {
        out.push((Dynkin(D(n)), star(&[1, 1, n - 3])));
    }
    out.push((Dynkin(E6), star(&[1, 2, 2])));
    out.push((Dynkin(E7), star(&[1, 2, 3])));
    out.push((Dynkin(E8), star(&[1, 2, 4])));
    out.push((Euclidean(A(0)), Graph { n: 1, edges: vec![(0, 0)] }));
    out.push((Euclidean(A(1)), Graph { n: 2, edges: vec![(0, 1), (0, 1)] }));
    for n in 3..=MAX_VERTICES {
        out.push((Euclidean(A(n - 1)), Graph { n, edges: (0..n).map(|i| (i, (i + 1) % n)).collect() }));
    }
    out.push((Euclidean(D(4)), star(&[1, 1, 1, 1])));
    for n in 5..MAX_VERTICES {
        // two branch points joined by a chain, two leaves at each
        let mut edges = vec![(0, 1), (0, 2)];
        let inner = n - 4;
        chain(0, inner, 3, &mut edges);
        let last = 2 + inner;
        edges.push((last, last + 1));
        edges.push((last, last + 2));
        out.push((Euclidean(D(n)), Graph { n: n + 1, edges }));
    }
    out.push((Euclidean(E6), star(&[2, 2, 2])));
    out.push((Euclidean(E7), star(&[1, 3, 3])));
    out.push((Euclidean(E8), star(&[1, 2, 5])));
    out
}

fn adjacency(g: &Graph) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(g.n, g.n);
    for &(s, t) in &g.edges {
        if s == t {
            a[(s, s)] += 2.0;
        } else {
            a[(s, t)] += 1.0;
            a[(t, s)] += 1.0;
        }
    }
    a
}

fn sorted_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

pub fn spectrum(g: &Graph) -> Vec<f64> {
    sorted_eigenvalues(adjacency(g))
}

const EPS: f64 = 1e-8;

/// Definiteness of the Tits form `2I - A`: positive definite means Dynkin,
/// positive semidefinite with one-dimensional radical means extended
/// Dynkin (for connected graphs).
pub fn tits_class(g: &Graph) -> Option<bool> {
    let cartan = DMatrix::identity(g.n, g.n) * 2.0 - adjacency(g);
    let ev = sorted_eigenvalues(cartan);
    if ev[0] > EPS {
        Some(true)
    } else if ev[0] > -EPS && ev.get(1).is_none_or(|v| *v > EPS) {
        Some(false)
    } else {
        None
    }
}

/// Oracle label for a connected graph: `Other` when the Tits form is
/// indefinite, else the catalog member with the same size and spectrum.
pub fn oracle(g: &Graph, cat: &[(ShapeClass, Graph)]) -> ShapeClass {
    let Some(dynkin) = tits_class(g) else {
        return ShapeClass::Other;
    };
    let spec = spectrum(g);
    let hits: Vec<ShapeClass> = cat
        .iter()
        .filter(|(c, h)| matches!(c, ShapeClass::Dynkin(_)) == dynkin && h.n == g.n)
        .filter(|(_, h)| spectrum(h).iter().zip(&spec).all(|(x, y)| (x - y).abs() < 1e-6))
        .map(|(c, _)| *c)
        .collect();
    assert_eq!(hits.len(), 1, "spectrum must pick one catalog member, got {hits:?}");
    hits[0]
}

/// Random vertex relabeling and random orientation of each edge.
pub fn orient(g: &Graph, rng: &mut ChaCha8Rng) -> Quiver {
    let mut perm: Vec<usize> = (0..g.n).collect();
    perm.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = g
        .edges
        .iter()
        .map(|&(s, t)| if rng.gen_bool(0.5) { (perm[s], perm[t]) } else { (perm[t], perm[s]) })
        .collect();
    edges.shuffle(rng);
    quiver_from(g.n, &edges)
}

/// Random connected multigraph on `2..=MAX_VERTICES` vertices: a random
/// spanning tree plus a few extra edges or loops.
pub fn random_connected(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(2..=MAX_VERTICES);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    for _ in 0..rng.gen_range(0..=2) {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    Graph { n, edges }
}
