//! Valued Gabriel quivers through wedges of simple subcoalgebras,
//! predecessors, and localization at a set of vertices.

mod localize;

use std::collections::BTreeMap;
use std::fmt;

pub use localize::{cells, localize_monomial, localize_quiver, CellList, Localization, LocalizedCoalgebra};

use crate::error::Error;
use crate::linear::{truncate, LinearError, Subspace, TruncatedCoalgebra};
use crate::monomial::MonomialCoalgebra;
use crate::quiver::{Path, Quiver, ToDot, Vertex};
use crate::wedge::{coradical_filtration, wedge_linear, wedge_subspaces};

/// Pointed valued quiver on vertices of a base quiver. At most one arrow per
/// ordered pair; the label carries the multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValuedQuiver {
    /// `(vertex, name)` in base-quiver order.
    pub vertices: Vec<(Vertex, String)>,
    /// `(source, target) -> (d', d'')`.
    pub arrows: BTreeMap<(Vertex, Vertex), (usize, usize)>,
}

impl ValuedQuiver {
    pub fn empty_on(q: &Quiver, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut vs: Vec<Vertex> = vertices.into_iter().collect();
        vs.sort();
        vs.dedup();
        ValuedQuiver {
            vertices: vs.into_iter().map(|v| (v, q.vertex_name(v).to_string())).collect(),
            arrows: BTreeMap::new(),
        }
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.iter().any(|(w, _)| *w == v)
    }

    pub fn label(&self, from: Vertex, to: Vertex) -> Option<(usize, usize)> {
        self.arrows.get(&(from, to)).copied()
    }

    fn name(&self, v: Vertex) -> &str {
        &self.vertices.iter().find(|(w, _)| *w == v).expect("vertex of the valued quiver").1
    }

    /// Plain quiver with each arrow repeated `d'` times, named `s>t` or
    /// `s>t#k`. Vertices follow this quiver's order.
    pub fn expand(&self) -> Quiver {
        let names: Vec<String> = self.vertices.iter().map(|(_, n)| n.clone()).collect();
        let mut arrows = Vec::new();
        for (&(s, t), &(d, _)) in &self.arrows {
            for k in 0..d {
                let id = if d == 1 {
                    format!("{}>{}", self.name(s), self.name(t))
                } else {
                    format!("{}>{}#{}", self.name(s), self.name(t), k + 1)
                };
                arrows.push((id, self.name(s).to_string(), self.name(t).to_string()));
            }
        }
        Quiver::from_owned(names, arrows).expect("valued quiver expands to a valid quiver")
    }

    /// Every vertex has in- and out-degree at most one. Labels other than
    /// `(1,1)` are rejected.
    pub fn serial_shape(&self) -> Result<bool, Error> {
        if let Some(((s, t), l)) = self.arrows.iter().find(|(_, l)| **l != (1, 1)) {
            return Err(Error::InvalidArgument(format!(
                "not a shape-checkable quiver: arrow {} -> {} carries {:?}",
                self.name(*s),
                self.name(*t),
                l
            )));
        }
        Ok(crate::quiver::serial_shape(&self.expand()))
    }
}

impl fmt::Display for ValuedQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.vertices.iter().map(|(_, n)| n.as_str()).collect();
        write!(f, "vertices {{{}}}", names.join(", "))?;
        for (&(s, t), (d1, d2)) in &self.arrows {
            write!(f, "; {} -> {} ({d1},{d2})", self.name(s), self.name(t))?;
        }
        Ok(())
    }
}

impl ToDot for ValuedQuiver {
    fn dot_nodes(&self) -> Vec<String> {
        self.vertices.iter().map(|(_, n)| n.clone()).collect()
    }

    fn dot_edges(&self) -> Vec<(String, String, String)> {
        self.arrows
            .iter()
            .map(|(&(s, t), (d1, d2))| (self.name(s).to_string(), self.name(t).to_string(), format!("({d1},{d2})")))
            .collect()
    }
}

/// Gabriel quiver by wedges: an arrow `S_j -> S_i` with label `(d,d)` where
/// `d = dim (S_i ∧ S_j) / (S_i + S_j)`.
pub fn gabriel_quiver(c: &TruncatedCoalgebra) -> Result<ValuedQuiver, LinearError> {
    let support = c.support();
    let mut out = ValuedQuiver::empty_on(c.quiver(), support.iter().copied());
    let simples: Vec<Subspace> = support.iter().map(|v| c.simple(*v).expect("support vertex")).collect();
    for (ii, si) in simples.iter().enumerate() {
        for (jj, sj) in simples.iter().enumerate() {
            let d = wedge_linear(si, sj, c)?.quotient_dim(&si.sum(sj)?)?;
            if d > 0 {
                out.arrows.insert((support[jj], support[ii]), (d, d));
            }
        }
    }
    Ok(out)
}

/// Arrow counts of a monomial coalgebra: `j -> i` labelled by the number of
/// member arrows from `j` to `i`.
pub fn arrow_count_quiver(m: &MonomialCoalgebra) -> ValuedQuiver {
    let q = m.quiver();
    let mut out = ValuedQuiver::empty_on(q, m.support().iter().copied());
    for a in q.arrows() {
        if m.contains(&Path::arrow(q, a)) {
            let e = out.arrows.entry((q.source(a), q.target(a))).or_insert((0, 0));
            e.0 += 1;
            e.1 += 1;
        }
    }
    out
}

/// Gabriel quiver of a monomial coalgebra, computed by wedges at truncation
/// `n` and by arrow counting; disagreement is a consistency violation.
pub fn gabriel_quiver_monomial(m: &MonomialCoalgebra, n: usize) -> Result<ValuedQuiver, Error> {
    let by_wedge = gabriel_quiver(&truncate(m, n.max(1)))?;
    let by_count = arrow_count_quiver(m);
    if by_wedge != by_count {
        return Err(Error::Consistency(format!(
            "Gabriel quiver by wedges ({by_wedge}) differs from arrow counts ({by_count})"
        )));
    }
    Ok(by_wedge)
}

/// Valued quiver of `A ∧ B` from those of `A`, `B` and `C`: an arrow
/// `T -> S` is read from `Q_C` when `S ⊆ A` and `T ⊆ B`, from `Q_A` when
/// only `S ⊆ A`, from `Q_B` when only `T ⊆ B`, and is absent otherwise.
pub fn wedge_gabriel(
    qa: &ValuedQuiver,
    qb: &ValuedQuiver,
    qc: &ValuedQuiver,
    in_a: &dyn Fn(Vertex) -> bool,
    in_b: &dyn Fn(Vertex) -> bool,
) -> Result<ValuedQuiver, Error> {
    let mut vertices: Vec<(Vertex, String)> = qa.vertices.iter().chain(&qb.vertices).cloned().collect();
    vertices.sort();
    vertices.dedup();
    if let Some((_, name)) = vertices.iter().find(|(v, _)| !in_a(*v) && !in_b(*v)) {
        return Err(Error::InvalidArgument(format!("vertex {name} lies in neither A nor B")));
    }
    let mut arrows = BTreeMap::new();
    for (t, _) in &vertices {
        for (s, _) in &vertices {
            let governing = match (in_a(*s), in_b(*t)) {
                (true, true) => qc,
                (true, false) => qa,
                (false, true) => qb,
                (false, false) => continue,
            };
            if let Some(l) = governing.label(*t, *s) {
                arrows.insert((*t, *s), l);
            }
        }
    }
    Ok(ValuedQuiver { vertices, arrows })
}

/// Number of copies of `S_j` in the `(n+1)`-st socle layer of the injective
/// hull of `S_i`: `dim (W ∧ S_j) / (W + S_j)` with `W` the part of the
/// `(n-1)`-st coradical piece spanned by paths ending at `i`.
pub fn predecessor_degree(c: &TruncatedCoalgebra, i: Vertex, j: Vertex, n: usize) -> Result<usize, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("predecessor depth must be positive".to_string()));
    }
    if c.truncation() < n + 1 {
        return Err(LinearError::TruncationTooSmall { have: c.truncation(), need: n + 1 }.into());
    }
    let basis = c.basis();
    let sj = c
        .simple(j)
        .ok_or_else(|| Error::InvalidArgument(format!("e({}) is not in C", c.quiver().vertex_name(j))))?;
    if c.simple(i).is_none() {
        return Err(Error::InvalidArgument(format!("e({}) is not in C", c.quiver().vertex_name(i))));
    }
    let ending_at_i = Subspace::coordinate(basis.len(), (0..basis.len()).filter(|k| basis.path(*k).target() == i));
    let layer = coradical_filtration(c, n - 1).pop().expect("nonempty filtration");
    let w = c.space().intersect(&ending_at_i)?.intersect(&layer)?;
    Ok(wedge_subspaces(&w, &sj, c)?.quotient_dim(&w.sum(&sj)?)?)
}

/// Path-counting oracle: member paths of length `n` from `j` to `i`.
pub fn predecessor_count(m: &MonomialCoalgebra, i: Vertex, j: Vertex, n: usize) -> usize {
    m.enumerate(n).iter().filter(|p| p.len() == n && p.source() == j && p.target() == i).count()
}
