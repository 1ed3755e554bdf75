use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use num_traits::{One, Zero};

use crate::error::Error;
use crate::linear::{Scalar, StructureCoalgebra};
use crate::monomial::MonomialCoalgebra;
use crate::quiver::{Arrow, Path, Quiver, Vertex};

/// Cells relative to `X` up to a length bound. `truncated` is set exactly
/// when some cell is longer than the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellList {
    pub cells: Vec<Path>,
    pub truncated: bool,
}

fn check_vertex_set(q: &Quiver, x: &BTreeSet<Vertex>) -> Result<(), Error> {
    if x.is_empty() {
        return Err(Error::InvalidArgument("localization needs a nonempty vertex set".to_string()));
    }
    if let Some(v) = x.iter().find(|v| v.0 >= q.vertex_count()) {
        return Err(Error::InvalidArgument(format!("vertex index {} out of range", v.0)));
    }
    Ok(())
}

/// Paths of length `1..=bound` from `X` to `X` whose interior vertices all
/// avoid `X`, in path order.
pub fn cells(q: &Quiver, x: &BTreeSet<Vertex>, bound: usize) -> CellList {
    let mut out = Vec::new();
    let mut truncated = false;
    let mut stack: Vec<Path> = Vec::new();
    for &v in x {
        for a in q.outgoing(v) {
            stack.push(Path::arrow(q, a));
        }
    }
    while let Some(p) = stack.pop() {
        if p.len() > bound {
            continue;
        }
        if x.contains(&p.target()) {
            out.push(p);
            continue;
        }
        if p.len() == bound {
            truncated |= reaches_outside_only(q, x, p.target());
            continue;
        }
        for a in q.outgoing(p.target()) {
            stack.push(p.then(&Path::arrow(q, a)).unwrap());
        }
    }
    out.sort();
    CellList { cells: out, truncated }
}

/// Whether `X` is reachable from `v ∉ X` passing only through vertices
/// outside `X`.
fn reaches_outside_only(q: &Quiver, x: &BTreeSet<Vertex>, v: Vertex) -> bool {
    let mut seen = HashSet::from([v]);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for a in q.outgoing(u) {
            let t = q.target(a);
            if x.contains(&t) {
                return true;
            }
            if seen.insert(t) {
                queue.push_back(t);
            }
        }
    }
    false
}

/// The localized quiver: vertices `X`, one arrow per cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Localization {
    pub quiver: Quiver,
    /// Localized vertex `k` is `vertices[k]` of the base quiver.
    pub vertices: Vec<Vertex>,
    /// Localized arrow `k` is the cell `cells[k]`.
    pub cells: Vec<Path>,
    pub truncated: bool,
    cell_index: HashMap<Path, usize>,
}

impl Localization {
    /// Splits a path with endpoints in `X` at its interior `X` vertices and
    /// reads the pieces as localized arrows.
    pub fn decompose(&self, q: &Quiver, p: &Path) -> Option<Path> {
        let pos = |v: Vertex| self.vertices.iter().position(|w| *w == v);
        if p.is_trivial() {
            return pos(p.source()).map(|k| Path::trivial(Vertex(k)));
        }
        pos(p.source())?;
        let mut arrows = Vec::new();
        let mut start = 0;
        for (k, a) in p.steps().iter().enumerate() {
            if self.vertices.contains(&q.target(*a)) {
                let piece = p.segment(q, start, k + 1);
                arrows.push(Arrow(*self.cell_index.get(&piece)?));
                start = k + 1;
            }
        }
        if start != p.len() {
            return None;
        }
        Path::from_arrows(&self.quiver, arrows).ok()
    }

    /// The base path a localized path stands for.
    pub fn expand(&self, lp: &Path) -> Path {
        if lp.is_trivial() {
            return Path::trivial(self.vertices[lp.source().0]);
        }
        lp.steps()
            .iter()
            .map(|a| self.cells[a.0].clone())
            .reduce(|acc, c| acc.then(&c).expect("cells compose along the localized quiver"))
            .unwrap()
    }
}

/// Vertices `X` keep their names; each cell becomes an arrow named by its
/// display form (primed if that name is taken).
pub fn localize_quiver(q: &Quiver, x: &BTreeSet<Vertex>, bound: usize) -> Result<Localization, Error> {
    check_vertex_set(q, x)?;
    let CellList { cells, truncated } = cells(q, x, bound);
    let vertices: Vec<Vertex> = x.iter().copied().collect();
    let names: Vec<String> = vertices.iter().map(|v| q.vertex_name(*v).to_string()).collect();
    let mut taken: HashSet<String> = HashSet::new();
    let mut arrows = Vec::new();
    for c in &cells {
        let mut id = c.display(q).to_string();
        while !taken.insert(id.clone()) {
            id.push('\'');
        }
        arrows.push((id, q.vertex_name(c.source()).to_string(), q.vertex_name(c.target()).to_string()));
    }
    let quiver = Quiver::from_owned(names, arrows)?;
    let cell_index = cells.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    Ok(Localization { quiver, vertices, cells, truncated, cell_index })
}

/// `eCe` for a monomial coalgebra, truncated at path length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedCoalgebra {
    pub vertices: Vec<Vertex>,
    /// Member paths with both endpoints in `X`, in path order.
    pub basis: Vec<Path>,
    /// Number of cells each basis path splits into.
    pub cell_degree: Vec<usize>,
    pub structure: StructureCoalgebra,
    pub truncation: usize,
}

pub fn localize_monomial(c: &MonomialCoalgebra, x: &BTreeSet<Vertex>, n: usize) -> Result<LocalizedCoalgebra, Error> {
    let q = c.quiver();
    check_vertex_set(q, x)?;
    let basis: Vec<Path> =
        c.enumerate(n).into_iter().filter(|p| x.contains(&p.source()) && x.contains(&p.target())).collect();
    let index: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut delta = Vec::with_capacity(basis.len());
    for p in &basis {
        let mut terms = Vec::new();
        for (eta, tau) in p.cuts(q) {
            if x.contains(&tau.target()) {
                terms.push((index[&eta], index[&tau], Scalar::one()));
            }
        }
        terms.sort();
        delta.push(terms);
    }
    let cell_degree = basis
        .iter()
        .map(|p| if p.is_trivial() { 0 } else { p.steps().iter().filter(|a| x.contains(&q.target(**a))).count() })
        .collect();
    let counit = basis.iter().map(|p| if p.is_trivial() { Scalar::one() } else { Scalar::zero() }).collect();
    let structure = StructureCoalgebra { labels: basis.iter().map(|p| p.display(q).to_string()).collect(), delta, counit };
    Ok(LocalizedCoalgebra { vertices: x.iter().copied().collect(), basis, cell_degree, structure, truncation: n })
}

impl LocalizedCoalgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis count per cell degree.
    pub fn degree_dims(&self) -> Vec<usize> {
        let top = self.cell_degree.iter().copied().max().unwrap_or(0);
        let mut out = vec![0; top + 1];
        for d in &self.cell_degree {
            out[*d] += 1;
        }
        out
    }

    /// Checks that reading paths as cell words is a coalgebra isomorphism
    /// onto the span of those localized paths whose expansion is a member
    /// of `c` of length at most the truncation.
    pub fn check_isomorphism(&self, c: &MonomialCoalgebra, loc: &Localization) -> Result<(), String> {
        let q = c.quiver();
        let lq = &loc.quiver;
        let mut image: BTreeMap<Path, usize> = BTreeMap::new();
        for (k, p) in self.basis.iter().enumerate() {
            let lp = loc
                .decompose(q, p)
                .ok_or_else(|| format!("{} has a cell beyond the bound", p.display(q)))?;
            if lp.len() != self.cell_degree[k] {
                return Err(format!("cell degree of {} is wrong", p.display(q)));
            }
            if image.insert(lp, k).is_some() {
                return Err(format!("{} shares its cell word with another basis path", p.display(q)));
            }
        }
        let lookup: Vec<Path> = {
            let mut v = vec![None; self.dim()];
            for (lp, k) in &image {
                v[*k] = Some(lp.clone());
            }
            v.into_iter().map(Option::unwrap).collect()
        };
        for (k, terms) in self.structure.delta.iter().enumerate() {
            let mut got: Vec<(Path, Path)> = Vec::new();
            for (a, b, coef) in terms {
                if !coef.is_one() {
                    return Err(format!("coefficient {coef} in Δ({})", self.structure.labels[k]));
                }
                got.push((lookup[*a].clone(), lookup[*b].clone()));
            }
            let mut want = lookup[k].cuts(lq);
            got.sort();
            want.sort();
            if got != want {
                return Err(format!("Δ({}) does not match the localized path coalgebra", self.structure.labels[k]));
            }
            let eps = if lookup[k].is_trivial() { Scalar::one() } else { Scalar::zero() };
            if self.structure.counit[k] != eps {
                return Err(format!("counit differs on {}", self.structure.labels[k]));
            }
        }
        // every localized path that should be present is present
        let mut frontier: Vec<Path> = lq.vertices().map(Path::trivial).collect();
        while let Some(lp) = frontier.pop() {
            let base = loc.expand(&lp);
            if base.len() > self.truncation || !c.contains(&base) {
                continue;
            }
            if !image.contains_key(&lp) {
                return Err(format!("{} is missing from the localized basis", base.display(q)));
            }
            for a in lq.outgoing(lp.target()) {
                frontier.push(lp.then(&Path::arrow(lq, a)).unwrap());
            }
        }
        Ok(())
    }
}
