use std::collections::BTreeSet;

use super::{MonomialCoalgebra, MonomialError};
use crate::quiver::{Arrow, Path, Quiver, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionFlags {
    pub path: Path,
    /// Some arrow `β` has `βp` in the coalgebra.
    pub left: bool,
    /// Some arrow `γ` has `pγ` in the coalgebra.
    pub right: bool,
}

/// Two-sided extendability of every member path of length at most `n`.
pub fn extension_report(m: &MonomialCoalgebra, n: usize) -> Vec<ExtensionFlags> {
    let q = m.quiver();
    m.enumerate(n)
        .into_iter()
        .map(|p| {
            let left = q.outgoing(p.target()).any(|b| m.contains(&p.then(&Path::arrow(q, b)).unwrap()));
            let right = q.incoming(p.source()).any(|g| m.contains(&Path::arrow(q, g).then(&p).unwrap()));
            ExtensionFlags { path: p, left, right }
        })
        .collect()
}

/// Which side of `β` a continuation is taken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `αβ` with `α` applied after `β`.
    After,
    /// `βγ` with `γ` applied before `β`.
    Before,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StringViolation {
    /// Condition (a): three arrows leave (`outgoing`) or enter the vertex.
    Degree { vertex: Vertex, outgoing: bool, arrows: Vec<Arrow> },
    /// Condition (c): two distinct continuations of `arrow` on one side.
    Continuation { arrow: Arrow, side: Side, arrows: [Arrow; 2] },
}

impl StringViolation {
    pub fn condition(&self) -> char {
        match self {
            StringViolation::Degree { .. } => 'a',
            StringViolation::Continuation { .. } => 'c',
        }
    }

    pub fn describe(&self, q: &Quiver) -> String {
        match self {
            StringViolation::Degree { vertex, outgoing, arrows } => {
                let ids: Vec<&str> = arrows.iter().map(|a| q.arrow_id(*a)).collect();
                let dir = if *outgoing { "leave" } else { "enter" };
                format!("arrows {} {dir} vertex {}", ids.join(", "), q.vertex_name(*vertex))
            }
            StringViolation::Continuation { arrow, side, arrows: [x, y] } => {
                let compose = |other: Arrow| {
                    let p = match side {
                        Side::After => Path::arrow(q, *arrow).then(&Path::arrow(q, other)),
                        Side::Before => Path::arrow(q, other).then(&Path::arrow(q, *arrow)),
                    };
                    p.unwrap().display(q).to_string()
                };
                format!("{} and {} both lie in the coalgebra", compose(*x), compose(*y))
            }
        }
    }
}

/// String conditions on an admissible monomial coalgebra. Degrees are
/// checked first, then continuations arrow by arrow in declaration order.
pub fn string_check(m: &MonomialCoalgebra) -> Result<Option<StringViolation>, MonomialError> {
    let q = m.quiver();
    if !m.is_admissible() {
        let missing = admissibility_gap(m);
        return Err(MonomialError::NotAdmissible(missing));
    }
    for v in q.vertices() {
        let out: Vec<Arrow> = q.outgoing(v).collect();
        if out.len() > 2 {
            return Ok(Some(StringViolation::Degree { vertex: v, outgoing: true, arrows: out[..3].to_vec() }));
        }
        let inc: Vec<Arrow> = q.incoming(v).collect();
        if inc.len() > 2 {
            return Ok(Some(StringViolation::Degree { vertex: v, outgoing: false, arrows: inc[..3].to_vec() }));
        }
    }
    for beta in q.arrows() {
        let b = Path::arrow(q, beta);
        let after: Vec<Arrow> =
            q.outgoing(q.target(beta)).filter(|a| m.contains(&b.then(&Path::arrow(q, *a)).unwrap())).collect();
        if after.len() > 1 {
            return Ok(Some(StringViolation::Continuation { arrow: beta, side: Side::After, arrows: [after[0], after[1]] }));
        }
        let before: Vec<Arrow> =
            q.incoming(q.source(beta)).filter(|g| m.contains(&Path::arrow(q, *g).then(&b).unwrap())).collect();
        if before.len() > 1 {
            return Ok(Some(StringViolation::Continuation {
                arrow: beta,
                side: Side::Before,
                arrows: [before[0], before[1]],
            }));
        }
    }
    Ok(None)
}

pub(crate) fn admissibility_gap(m: &MonomialCoalgebra) -> String {
    let q = m.quiver();
    if let Some(v) = q.vertices().find(|v| !m.support().contains(v)) {
        return format!("e({})", q.vertex_name(v));
    }
    q.arrows()
        .find(|a| !m.contains(&Path::arrow(q, *a)))
        .map(|a| q.arrow_id(a).to_string())
        .unwrap_or_default()
}

/// Members `p` of `c` up to length `n` such that every factorization
/// `p = η·τ` has `η ∈ a` or `τ ∈ b`.
pub fn wedge_monomial(
    a: &MonomialCoalgebra,
    b: &MonomialCoalgebra,
    c: &MonomialCoalgebra,
    n: usize,
) -> Result<Vec<Path>, MonomialError> {
    let q = c.quiver();
    if a.quiver() != q || b.quiver() != q {
        return Err(MonomialError::QuiverMismatch);
    }
    for sub in [a, b] {
        if let Some(p) = sub.first_outside(c, n) {
            return Err(MonomialError::NotContained(p.display(q).to_string()));
        }
    }
    let out: Vec<Path> = c
        .enumerate(n)
        .into_iter()
        .filter(|p| p.cuts(q).iter().all(|(eta, tau)| a.contains(eta) || b.contains(tau)))
        .collect();
    let support: BTreeSet<Vertex> = out.iter().filter(|p| p.is_trivial()).map(|p| p.source()).collect();
    MonomialCoalgebra::finite(q, Some(support), out.iter().cloned(), false).expect("wedge of subcoalgebras is closed");
    Ok(out)
}
