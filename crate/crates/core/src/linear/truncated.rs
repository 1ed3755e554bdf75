use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::sparse::{Scalar, SparseVec};
use super::subspace::Subspace;
use super::LinearError;
use crate::monomial::MonomialCoalgebra;
use crate::quiver::{paths_up_to, Path, Quiver, Vertex};

/// Element of a tensor square, keyed by pairs of basis indices.
pub type Tensor = BTreeMap<(usize, usize), Scalar>;

pub(crate) fn tensor_add(t: &mut Tensor, key: (usize, usize), c: Scalar) {
    if c.is_zero() {
        return;
    }
    let slot = t.entry(key).or_insert_with(Scalar::zero);
    *slot += c;
    if slot.is_zero() {
        t.remove(&key);
    }
}

/// The ordered basis of `kQ_{≤N}` together with its comultiplication.
#[derive(Debug)]
pub struct PathBasis {
    quiver: Quiver,
    max_len: usize,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    /// `cuts[i]` lists `(η, τ)` with `paths[i] = η·τ`, trivial ends included.
    cuts: Vec<Vec<(usize, usize)>>,
    trivial: Vec<usize>,
}

impl PathBasis {
    pub fn new(q: &Quiver, max_len: usize) -> Arc<PathBasis> {
        let paths = paths_up_to(q, max_len);
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let cuts = paths
            .iter()
            .map(|p| p.cuts(q).iter().map(|(eta, tau)| (index[eta], index[tau])).collect())
            .collect();
        let trivial = q.vertices().map(|v| index[&Path::trivial(v)]).collect();
        Arc::new(PathBasis { quiver: q.clone(), max_len, paths, index, cuts, trivial })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn cuts(&self, i: usize) -> &[(usize, usize)] {
        &self.cuts[i]
    }

    pub fn trivial_index(&self, v: Vertex) -> usize {
        self.trivial[v.0]
    }

    pub fn counit(&self, i: usize) -> Scalar {
        if self.paths[i].is_trivial() {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    /// Same quiver and truncation level.
    pub fn compatible(&self, other: &PathBasis) -> bool {
        self.max_len == other.max_len && self.quiver == other.quiver
    }

    pub fn span_of_paths<'a, I>(&self, paths: I) -> Result<Subspace, LinearError>
    where
        I: IntoIterator<Item = &'a Path>,
    {
        let mut idx = Vec::new();
        for p in paths {
            match self.index_of(p) {
                Some(i) => idx.push(i),
                None => return Err(LinearError::OutsideBasis(p.display(&self.quiver).to_string())),
            }
        }
        Ok(Subspace::coordinate(self.len(), idx))
    }

    pub fn trivial_span(&self) -> Subspace {
        Subspace::coordinate(self.len(), self.trivial.iter().copied())
    }

    pub fn delta(&self, v: &SparseVec) -> Tensor {
        let mut t = Tensor::new();
        for (i, c) in v.iter() {
            for &(a, b) in &self.cuts[i] {
                tensor_add(&mut t, (a, b), c.clone());
            }
        }
        t
    }

    /// Human-readable linear combination of paths, e.g. `alpha - 2*beta`.
    pub fn format_vector(&self, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (i, c)) in v.iter().enumerate() {
            let name = self.paths[i].display(&self.quiver).to_string();
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if mag.is_one() {
                out.push_str(&name);
            } else {
                let _ = write!(out, "{mag}*{name}");
            }
        }
        out
    }

    pub fn format_paths(&self, v: &Subspace) -> Vec<String> {
        v.rows().iter().map(|r| self.format_vector(r)).collect()
    }
}

impl PartialEq for PathBasis {
    fn eq(&self, other: &Self) -> bool {
        self.compatible(other)
    }
}

impl Eq for PathBasis {}

/// Decides `Δ(V) ⊆ V⊗V`; on failure returns a basis vector of `V` whose
/// comultiplication leaves `V⊗V`.
pub fn is_subcoalgebra(v: &Subspace, basis: &PathBasis) -> Result<(), SparseVec> {
    let mut res_cache: HashMap<usize, SparseVec> = HashMap::new();
    let mut res = |i: usize| -> SparseVec { res_cache.entry(i).or_insert_with(|| v.residue(&SparseVec::unit(i))).clone() };
    for row in v.rows() {
        let mut left = Tensor::new();
        let mut right = Tensor::new();
        for (i, c) in row.iter() {
            for &(eta, tau) in basis.cuts(i) {
                for (a, x) in res(eta).iter() {
                    tensor_add(&mut left, (a, tau), c * x);
                }
                for (b, x) in res(tau).iter() {
                    tensor_add(&mut right, (eta, b), c * x);
                }
            }
        }
        if !left.is_empty() || !right.is_empty() {
            return Err(row.clone());
        }
    }
    Ok(())
}

/// A finite-dimensional subcoalgebra of `kQ_{≤N}`.
#[derive(Debug, Clone)]
pub struct TruncatedCoalgebra {
    basis: Arc<PathBasis>,
    space: Subspace,
}

impl PartialEq for TruncatedCoalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.space == other.space
    }
}

impl TruncatedCoalgebra {
    pub fn new(basis: Arc<PathBasis>, space: Subspace) -> Result<Self, LinearError> {
        if space.ambient() != basis.len() {
            return Err(LinearError::DimensionMismatch { expected: basis.len(), found: space.ambient() });
        }
        is_subcoalgebra(&space, &basis).map_err(|v| LinearError::NotSubcoalgebra(basis.format_vector(&v)))?;
        Ok(TruncatedCoalgebra { basis, space })
    }

    pub(crate) fn new_unchecked(basis: Arc<PathBasis>, space: Subspace) -> Self {
        debug_assert!(is_subcoalgebra(&space, &basis).is_ok());
        TruncatedCoalgebra { basis, space }
    }

    /// All of `kQ_{≤N}`.
    pub fn full(basis: Arc<PathBasis>) -> Self {
        let space = Subspace::full(basis.len());
        TruncatedCoalgebra { basis, space }
    }

    pub fn basis(&self) -> &Arc<PathBasis> {
        &self.basis
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn quiver(&self) -> &Quiver {
        self.basis.quiver()
    }

    pub fn truncation(&self) -> usize {
        self.basis.max_len()
    }

    /// Vertices whose trivial path lies in the coalgebra.
    pub fn support(&self) -> Vec<Vertex> {
        self.quiver()
            .vertices()
            .filter(|v| self.space.contains(&SparseVec::unit(self.basis.trivial_index(*v))))
            .collect()
    }

    /// The simple subcoalgebra `k e_v`, if `e_v` belongs to the coalgebra.
    pub fn simple(&self, v: Vertex) -> Option<Subspace> {
        let i = self.basis.trivial_index(v);
        self.space.contains(&SparseVec::unit(i)).then(|| Subspace::coordinate(self.basis.len(), [i]))
    }

    /// Checks that `sub` is a subcoalgebra contained in this one.
    pub fn subcoalgebra(&self, sub: Subspace) -> Result<TruncatedCoalgebra, LinearError> {
        if !sub.is_subspace_of(&self.space)? {
            let w = sub.witness_outside(&self.space).unwrap();
            return Err(LinearError::NotContained(self.basis.format_vector(&w)));
        }
        TruncatedCoalgebra::new(self.basis.clone(), sub)
    }

    /// Structure constants on the reduced row basis. Because every row has
    /// a unique pivot, the coefficient of `row_a ⊗ row_b` in an element of
    /// `V⊗V` is its coefficient at `(pivot_a, pivot_b)`.
    pub fn structure(&self) -> StructureCoalgebra {
        let rows = self.space.rows();
        let pivots: Vec<usize> = self.space.pivots().collect();
        let pos: HashMap<usize, usize> = pivots.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        let delta = rows
            .iter()
            .map(|r| {
                self.basis
                    .delta(r)
                    .into_iter()
                    .filter_map(|((a, b), c)| Some((*pos.get(&a)?, *pos.get(&b)?, c)))
                    .collect()
            })
            .collect();
        let counit = rows
            .iter()
            .map(|r| r.iter().map(|(i, c)| c * self.basis.counit(i)).sum())
            .collect();
        StructureCoalgebra { labels: self.basis.format_paths(&self.space), delta, counit }
    }
}

/// `C ∩ span(trivial paths)`.
pub fn socle(c: &TruncatedCoalgebra) -> Subspace {
    c.space.intersect(&c.basis.trivial_span()).expect("same ambient")
}

pub fn is_cosemisimple(c: &TruncatedCoalgebra) -> bool {
    socle(c).dim() == c.dim()
}

pub fn coassoc_check(c: &TruncatedCoalgebra) -> bool {
    let s = c.structure();
    s.is_coassociative() && s.has_counit()
}

/// `span(enumerate(m, N))` inside a fresh `kQ_{≤N}`.
pub fn truncate(m: &MonomialCoalgebra, n: usize) -> TruncatedCoalgebra {
    truncate_in(m, &PathBasis::new(m.quiver(), n))
}

/// As [`truncate`], reusing an existing basis of the same quiver.
pub fn truncate_in(m: &MonomialCoalgebra, basis: &Arc<PathBasis>) -> TruncatedCoalgebra {
    assert!(basis.quiver() == m.quiver(), "basis built on a different quiver");
    let members = m.enumerate(basis.max_len());
    let space = basis.span_of_paths(&members).expect("members lie in kQ_{≤N}");
    TruncatedCoalgebra::new_unchecked(basis.clone(), space)
}

/// A coalgebra given by structure constants on a labelled basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureCoalgebra {
    pub labels: Vec<String>,
    /// `delta[k]` lists `(a, b, c)`: `Δ(k)` has coefficient `c` on `a ⊗ b`.
    pub delta: Vec<Vec<(usize, usize, Scalar)>>,
    pub counit: Vec<Scalar>,
}

impl StructureCoalgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// `(Δ⊗id)Δ = (id⊗Δ)Δ` on every basis vector.
    pub fn is_coassociative(&self) -> bool {
        (0..self.dim()).all(|k| {
            let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (a, b, c) in &self.delta[k] {
                for (a1, a2, d) in &self.delta[*a] {
                    *lhs.entry((*a1, *a2, *b)).or_insert_with(Scalar::zero) += c * d;
                }
                for (b1, b2, d) in &self.delta[*b] {
                    *rhs.entry((*a, *b1, *b2)).or_insert_with(Scalar::zero) += c * d;
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            rhs.retain(|_, v| !v.is_zero());
            lhs == rhs
        })
    }

    /// `(ε⊗id)Δ = id = (id⊗ε)Δ` on every basis vector.
    pub fn has_counit(&self) -> bool {
        (0..self.dim()).all(|k| {
            let mut left = vec![Scalar::zero(); self.dim()];
            let mut right = vec![Scalar::zero(); self.dim()];
            for (a, b, c) in &self.delta[k] {
                left[*b] += &self.counit[*a] * c;
                right[*a] += &self.counit[*b] * c;
            }
            let unit = |v: &[Scalar]| v.iter().enumerate().all(|(i, x)| if i == k { x.is_one() } else { x.is_zero() });
            unit(&left) && unit(&right)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Quiver {
        Quiver::new(&["1", "2", "3"], &[("alpha", "1", "2"), ("beta", "2", "3")]).unwrap()
    }

    fn idx(b: &PathBasis, ids: &[&str]) -> usize {
        let p = if ids.len() == 1 && b.quiver().vertex_by_name(ids[0]).is_some() {
            b.quiver().trivial(ids[0]).unwrap()
        } else {
            b.quiver().path_from_ids(ids).unwrap()
        };
        b.index_of(&p).unwrap()
    }

    #[test]
    fn subcoalgebra_checks() {
        let b = PathBasis::new(&a3(), 2);
        let ok = Subspace::coordinate(b.len(), [idx(&b, &["1"]), idx(&b, &["2"]), idx(&b, &["alpha"])]);
        assert!(is_subcoalgebra(&ok, &b).is_ok());
        let ba = idx(&b, &["alpha", "beta"]);
        let bad = Subspace::coordinate(b.len(), [ba, idx(&b, &["1"]), idx(&b, &["3"])]);
        assert_eq!(is_subcoalgebra(&bad, &b), Err(SparseVec::unit(ba)));
    }

    #[test]
    fn parallel_arrow_sum_is_a_subcoalgebra() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        let b = PathBasis::new(&q, 1);
        let one = num_traits::One::one;
        let sum = SparseVec::from_pairs([(idx(&b, &["a"]), one()), (idx(&b, &["b"]), one())]);
        let v = Subspace::from_vectors(
            b.len(),
            &[SparseVec::unit(idx(&b, &["1"])), SparseVec::unit(idx(&b, &["2"])), sum.clone()],
        )
        .unwrap();
        let c = TruncatedCoalgebra::new(b.clone(), v).unwrap();
        assert!(coassoc_check(&c));
        assert_eq!(b.format_vector(&sum), "a + b");
        assert_eq!(socle(&c).dim(), 2);
    }

    #[test]
    fn full_a3_socle_and_structure() {
        let c = TruncatedCoalgebra::full(PathBasis::new(&a3(), 2));
        assert_eq!(c.dim(), 6);
        assert_eq!(socle(&c).dim(), 3);
        assert!(!is_cosemisimple(&c));
        assert!(coassoc_check(&c));
    }

    #[test]
    fn corrupted_structure_is_rejected() {
        let q = Quiver::new(&["x"], &[("a", "x", "x"), ("b", "x", "x")]).unwrap();
        let c = TruncatedCoalgebra::full(PathBasis::new(&q, 3));
        let mut s = c.structure();
        assert!(s.is_coassociative() && s.has_counit());
        let k = s.labels.iter().position(|l| l == "aaa").unwrap();
        let victim = s.delta[k].iter().position(|(a, b, _)| s.labels[*a] == "a" && s.labels[*b] == "aa").unwrap();
        s.delta[k].remove(victim);
        assert!(!s.is_coassociative());
    }
}
