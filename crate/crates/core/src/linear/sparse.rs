use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact scalars. Every computation in the crate is over the rationals.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec::default()
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Scalar::one())] }
    }

    /// Sums duplicate indices and drops zeros.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, c) in pairs {
            *acc.entry(i).or_insert_with(Scalar::zero) += c;
        }
        SparseVec { entries: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn scale(&mut self, c: &Scalar) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, x) in &mut self.entries {
            *x *= c;
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Scalar, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, c * y));
                }
                (Some(_), Some(_)) => {
                    let (i, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = x + c * y;
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, c * y));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    /// Re-indexes through `f`; `f` must be strictly increasing on the support.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, c)| (f(*i), c.clone())).collect() }
    }
}
