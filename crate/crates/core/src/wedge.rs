//! Wedge products of subcoalgebras, computed linearly and checked against
//! the combinatorial rule for monomial coalgebras.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Error;
use crate::linear::{
    column_relations, is_subcoalgebra, socle, truncate_in, LinearError, PathBasis, SparseVec, Subspace,
    TruncatedCoalgebra,
};
use crate::monomial::{wedge_monomial, MonomialCoalgebra, Presentation};

/// `{v ∈ C : Δv ∈ X⊗C + C⊗Y}` for arbitrary subspaces `X`, `Y`, as the
/// kernel of `(pr_X ⊗ pr_Y)∘Δ` on the row basis of `C`.
pub fn wedge_subspaces(x: &Subspace, y: &Subspace, c: &TruncatedCoalgebra) -> Result<Subspace, LinearError> {
    let basis = c.basis();
    let n = basis.len();
    for s in [x, y] {
        if s.ambient() != n {
            return Err(LinearError::DimensionMismatch { expected: n, found: s.ambient() });
        }
    }
    let mut rx: HashMap<usize, SparseVec> = HashMap::new();
    let mut ry: HashMap<usize, SparseVec> = HashMap::new();
    let images: Vec<SparseVec> = c
        .space()
        .rows()
        .iter()
        .map(|row| {
            let mut pairs = Vec::new();
            for (i, coef) in row.iter() {
                for &(eta, tau) in basis.cuts(i) {
                    let l = rx.entry(eta).or_insert_with(|| x.residue(&SparseVec::unit(eta)));
                    if l.is_zero() {
                        continue;
                    }
                    let r = ry.entry(tau).or_insert_with(|| y.residue(&SparseVec::unit(tau)));
                    for (a, u) in l.iter() {
                        for (b, w) in r.iter() {
                            pairs.push((a * n + b, coef * u * w));
                        }
                    }
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    let vectors: Vec<SparseVec> = column_relations(&images).iter().map(|rel| c.space().combine(rel)).collect();
    Subspace::from_vectors(n, &vectors)
}

fn require_subcoalgebra(s: &Subspace, c: &TruncatedCoalgebra) -> Result<(), LinearError> {
    let basis = c.basis();
    if let Some(w) = s.witness_outside(c.space()) {
        return Err(LinearError::NotContained(basis.format_vector(&w)));
    }
    is_subcoalgebra(s, basis).map_err(|v| LinearError::NotSubcoalgebra(basis.format_vector(&v)))
}

/// `A ∧^C B`, with `A` and `B` checked to be subcoalgebras of `C`.
pub fn wedge_linear(a: &Subspace, b: &Subspace, c: &TruncatedCoalgebra) -> Result<Subspace, LinearError> {
    for s in [a, b] {
        if s.ambient() != c.basis().len() {
            return Err(LinearError::DimensionMismatch { expected: c.basis().len(), found: s.ambient() });
        }
        require_subcoalgebra(s, c)?;
    }
    let w = wedge_subspaces(a, b, c)?;
    debug_assert!(is_subcoalgebra(&w, c.basis()).is_ok());
    Ok(w)
}

/// `(…((A∧A)∧A)…)∧A` with `n` factors; `n = 1` gives `A`.
pub fn wedge_power(a: &Subspace, n: usize, c: &TruncatedCoalgebra) -> Result<Subspace, LinearError> {
    assert!(n >= 1, "wedge power needs at least one factor");
    let mut w = a.clone();
    if n > 1 {
        require_subcoalgebra(a, c)?;
    }
    for _ in 1..n {
        let next = wedge_subspaces(&w, a, c)?;
        if next == w {
            break;
        }
        w = next;
    }
    Ok(w)
}

/// `C_0 ⊆ C_1 ⊆ … ⊆ C_upto` with `C_0` the socle and `C_k = C_{k-1} ∧ C_0`.
pub fn coradical_filtration(c: &TruncatedCoalgebra, upto: usize) -> Vec<Subspace> {
    let c0 = socle(c);
    let mut out = vec![c0.clone()];
    for _ in 0..upto {
        let prev = out.last().unwrap();
        let next = if prev == c.space() {
            prev.clone()
        } else {
            wedge_subspaces(prev, &c0, c).expect("filtration pieces share the basis")
        };
        assert!(prev.is_subspace_of(&next).unwrap(), "coradical filtration must ascend");
        out.push(next);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeCheck {
    pub agrees: bool,
    pub combinatorial: Subspace,
    pub linear: Subspace,
    /// Basis vectors of either side missing from the other.
    pub discrepancy: Vec<SparseVec>,
    pub basis: Arc<PathBasis>,
}

/// Compares the combinatorial and linear wedges at truncation `n`.
pub fn wedge_xcheck(
    a: &MonomialCoalgebra,
    b: &MonomialCoalgebra,
    c: &MonomialCoalgebra,
    n: usize,
) -> Result<WedgeCheck, Error> {
    let paths = wedge_monomial(a, b, c, n)?;
    let basis = PathBasis::new(c.quiver(), n);
    let comb = basis.span_of_paths(&paths)?;
    let tc = truncate_in(c, &basis);
    let lin = wedge_linear(truncate_in(a, &basis).space(), truncate_in(b, &basis).space(), &tc)?;
    let mut discrepancy: Vec<SparseVec> = comb.rows().iter().filter(|r| !lin.contains(r)).cloned().collect();
    discrepancy.extend(lin.rows().iter().filter(|r| !comb.contains(r)).cloned());
    Ok(WedgeCheck { agrees: discrepancy.is_empty(), combinatorial: comb, linear: lin, discrepancy, basis })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coidempotence {
    /// `A∧A = A` inside `C` truncated at the given level.
    YesAtN { truncation: usize },
    /// An element of `A∧A` outside `A`.
    No { witness: SparseVec },
    NotDeterminable { reason: String },
}

pub fn is_coidempotent(a: &Subspace, c: &TruncatedCoalgebra) -> Result<Coidempotence, LinearError> {
    let w = wedge_linear(a, a, c)?;
    Ok(match w.witness_outside(a) {
        Some(v) => Coidempotence::No { witness: v },
        None => Coidempotence::YesAtN { truncation: c.truncation() },
    })
}

/// Monomial form. A listing of unknown extent cannot certify either answer
/// beyond its longest listed path.
pub fn is_coidempotent_monomial(
    a: &MonomialCoalgebra,
    c: &MonomialCoalgebra,
    n: usize,
) -> Result<Coidempotence, Error> {
    let basis = PathBasis::new(c.quiver(), n);
    let verdict = is_coidempotent(truncate_in(a, &basis).space(), &truncate_in(c, &basis))?;
    let listed = |m: &MonomialCoalgebra| match m.presentation() {
        Presentation::Finite { paths, complete: false } => paths.iter().map(|p| p.len()).max(),
        _ => None,
    };
    if let (Coidempotence::No { witness }, Some(limit)) = (&verdict, listed(a)) {
        let len = witness.iter().map(|(i, _)| basis.path(i).len()).max().unwrap_or(0);
        if len > limit {
            return Ok(Coidempotence::NotDeterminable {
                reason: format!("witness of length {len} lies beyond the listed paths of A"),
            });
        }
    }
    if listed(c).is_some_and(|limit| limit < n) {
        return Ok(Coidempotence::NotDeterminable { reason: "C is a listing of unknown extent".to_string() });
    }
    Ok(verdict)
}
