use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::sparse::{Scalar, SparseVec};
use super::LinearError;

/// Incremental reduced row-echelon form, keyed by pivot column.
#[derive(Debug, Clone, Default)]
struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    fn reduce(&self, v: &SparseVec) -> SparseVec {
        // Rows are zero on every other pivot column, so the original
        // coefficients at pivots stay valid while subtracting.
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter(|(i, _)| self.rows.contains_key(i))
            .map(|(i, c)| (i, c.clone()))
            .collect();
        let mut out = v.clone();
        for (p, c) in hits {
            out.axpy(&-c, &self.rows[&p]);
        }
        out
    }

    fn insert(&mut self, v: &SparseVec) -> bool {
        let mut r = self.reduce(v);
        let Some((p, c)) = r.leading().map(|(p, c)| (p, c.clone())) else {
            return false;
        };
        r.scale(&(Scalar::one() / c));
        for row in self.rows.values_mut() {
            if let Some(x) = row.get(p).cloned() {
                row.axpy(&-x, &r);
            }
        }
        self.rows.insert(p, r);
        true
    }
}

/// Subspace of `Q^ambient`, stored as its canonical reduced row-echelon
/// basis. Derived equality is therefore subspace equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::coordinate(ambient, 0..ambient)
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate<I: IntoIterator<Item = usize>>(ambient: usize, indices: I) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        assert!(idx.last().is_none_or(|&i| i < ambient), "coordinate out of range");
        Subspace { ambient, rows: idx.into_iter().map(SparseVec::unit).collect() }
    }

    pub fn from_vectors<'a, I>(ambient: usize, vectors: I) -> Result<Self, LinearError>
    where
        I: IntoIterator<Item = &'a SparseVec>,
    {
        let mut ech = Echelon::default();
        for v in vectors {
            check_len(ambient, v)?;
            ech.insert(v);
        }
        Ok(Subspace { ambient, rows: ech.rows.into_values().collect() })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduced row-echelon basis, ordered by pivot.
    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.leading().expect("no zero rows").0)
    }

    /// Whether every basis vector is a standard basis vector.
    pub fn is_coordinate(&self) -> bool {
        self.rows.iter().all(|r| r.nnz() == 1)
    }

    fn echelon(&self) -> Echelon {
        Echelon { rows: self.rows.iter().map(|r| (r.leading().unwrap().0, r.clone())).collect() }
    }

    /// Canonical representative of `v` modulo this subspace: `v` minus its
    /// pivot components. Zero iff `v` lies in the subspace.
    pub fn residue(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter_map(|(i, c)| self.row_with_pivot(i).map(|k| (k, c.clone())))
            .collect();
        let mut out = v.clone();
        for (k, c) in hits {
            out.axpy(&-c, &self.rows[k]);
        }
        out
    }

    fn row_with_pivot(&self, col: usize) -> Option<usize> {
        self.rows.binary_search_by_key(&col, |r| r.leading().unwrap().0).ok()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.residue(v).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinearError> {
        same_ambient(self, other)?;
        Ok(self.rows.iter().all(|r| other.contains(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinearError> {
        same_ambient(self, other)?;
        let mut ech = self.echelon();
        for r in &other.rows {
            ech.insert(r);
        }
        Ok(Subspace { ambient: self.ambient, rows: ech.rows.into_values().collect() })
    }

    /// Intersection, as the combinations of this basis whose residue modulo
    /// `other` vanishes.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinearError> {
        same_ambient(self, other)?;
        let residues: Vec<SparseVec> = self.rows.iter().map(|r| other.residue(r)).collect();
        let vectors: Vec<SparseVec> = column_relations(&residues)
            .iter()
            .map(|rel| self.combine(rel))
            .collect();
        Subspace::from_vectors(self.ambient, &vectors)
    }

    /// `dim self - dim (self ∩ other)`.
    pub fn quotient_dim(&self, other: &Subspace) -> Result<usize, LinearError> {
        Ok(self.dim() - self.intersect(other)?.dim())
    }

    /// `Σ coeffs[k] * rows[k]`.
    pub fn combine(&self, coeffs: &SparseVec) -> SparseVec {
        let mut out = SparseVec::zero();
        for (k, c) in coeffs.iter() {
            out.axpy(c, &self.rows[k]);
        }
        out
    }

    /// Coordinates of `v` in the row basis; `None` if `v` is outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        if !self.contains(v) {
            return None;
        }
        Some(SparseVec::from_pairs(
            v.iter().filter_map(|(i, c)| self.row_with_pivot(i).map(|k| (k, c.clone()))),
        ))
    }

    /// Some basis vector of `self` outside `other`, if any.
    pub fn witness_outside(&self, other: &Subspace) -> Option<SparseVec> {
        self.rows.iter().find(|r| !other.contains(r)).cloned()
    }
}

fn check_len(ambient: usize, v: &SparseVec) -> Result<(), LinearError> {
    match v.max_index() {
        Some(i) if i >= ambient => Err(LinearError::DimensionMismatch { expected: ambient, found: i + 1 }),
        _ => Ok(()),
    }
}

fn same_ambient(a: &Subspace, b: &Subspace) -> Result<(), LinearError> {
    if a.ambient != b.ambient {
        return Err(LinearError::DimensionMismatch { expected: a.ambient, found: b.ambient });
    }
    Ok(())
}

/// Basis of the linear relations among `cols`: coefficient vectors `x`
/// with `Σ x[k] cols[k] = 0`. Relation `k` has a 1 at position `k` and
/// only earlier indices otherwise.
pub fn column_relations(cols: &[SparseVec]) -> Vec<SparseVec> {
    let mut rows: HashMap<usize, (SparseVec, SparseVec)> = HashMap::new();
    let mut out = Vec::new();
    for (k, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        let mut combo = SparseVec::unit(k);
        loop {
            let Some((p, c)) = v.leading().map(|(p, c)| (p, c.clone())) else {
                out.push(combo);
                break;
            };
            if let Some((r, rc)) = rows.get(&p) {
                v.axpy(&-c.clone(), r);
                combo.axpy(&-c, rc);
            } else {
                let inv = Scalar::one() / c;
                v.scale(&inv);
                combo.scale(&inv);
                rows.insert(p, (v, combo));
                break;
            }
        }
    }
    out
}

/// Null space of the matrix with the given rows and `ncols` columns.
pub fn kernel(matrix: &[SparseVec], ncols: usize) -> Result<Subspace, LinearError> {
    let rref = Subspace::from_vectors(ncols, matrix)?;
    let pivots: Vec<usize> = rref.pivots().collect();
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for f in (0..ncols).filter(|&f| !is_pivot[f]) {
        let mut pairs = vec![(f, Scalar::one())];
        for (row, &p) in rref.rows().iter().zip(&pivots) {
            if let Some(x) = row.get(f) {
                pairs.push((p, -x.clone()));
            }
        }
        basis.push(SparseVec::from_pairs(pairs));
    }
    Subspace::from_vectors(ncols, &basis)
}

/// Rank of a matrix given by rows.
pub fn rank(matrix: &[SparseVec], ncols: usize) -> Result<usize, LinearError> {
    Ok(Subspace::from_vectors(ncols, matrix)?.dim())
}

impl Subspace {
    /// Every basis row has coefficient one at its pivot and zeros at the
    /// other pivots, with strictly increasing pivots.
    pub fn is_reduced(&self) -> bool {
        let pivots: Vec<usize> = self.pivots().collect();
        pivots.windows(2).all(|w| w[0] < w[1])
            && self.rows.iter().zip(&pivots).all(|(r, &p)| {
                r.get(p).is_some_and(|c| c.is_one())
                    && pivots.iter().all(|&q| q == p || r.get(q).is_none_or(|c| c.is_zero()))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::super::sparse::int;
    use super::*;

    fn v(xs: &[i64]) -> SparseVec {
        SparseVec::from_dense(&xs.iter().map(|&x| int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_of_one_by_two() {
        let k = kernel(&[v(&[1, 1])], 2).unwrap();
        assert_eq!(k, Subspace::from_vectors(2, &[v(&[1, -1])]).unwrap());
    }

    #[test]
    fn intersect_coordinate_spans() {
        // basis order e1, e2, e3, alpha, beta
        let a = Subspace::coordinate(5, [0, 3]);
        let b = Subspace::coordinate(5, [3, 4]);
        assert_eq!(a.intersect(&b).unwrap(), Subspace::coordinate(5, [3]));
        assert_eq!(a.sum(&b).unwrap().dim(), 3);
        assert_eq!(a.quotient_dim(&b).unwrap(), 1);
    }

    #[test]
    fn skew_intersection() {
        let a = Subspace::from_vectors(3, &[v(&[1, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let b = Subspace::from_vectors(3, &[v(&[1, 1, 1])]).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), b);
        let c = Subspace::from_vectors(3, &[v(&[1, 0, 0])]).unwrap();
        assert!(a.intersect(&c).unwrap().is_zero());
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let a = Subspace::zero(2);
        let b = Subspace::zero(3);
        assert!(matches!(a.sum(&b), Err(LinearError::DimensionMismatch { .. })));
        assert!(Subspace::from_vectors(2, &[SparseVec::unit(2)]).is_err());
    }

    #[test]
    fn relations_and_coordinates() {
        let cols = [v(&[1, 0]), v(&[0, 1]), v(&[2, 3])];
        let rel = column_relations(&cols);
        assert_eq!(rel, vec![SparseVec::from_pairs([(0, int(-2)), (1, int(-3)), (2, int(1))])]);
        let s = Subspace::from_vectors(3, &[v(&[1, 2, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(s.coordinates(&v(&[2, 4, 5])), Some(v(&[2, 5])));
        assert_eq!(s.coordinates(&v(&[0, 1, 0])), None);
        assert!(s.is_reduced());
    }
}
