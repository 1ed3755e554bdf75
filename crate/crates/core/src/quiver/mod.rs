//! Finite quivers (directed multigraphs with loops) and paths in them.
//!
//! Paths compose right to left: the path `βα` traverses `α` first. A
//! [`Path`] stores its arrows in traversal order and renders them in
//! composition order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

mod dot;
mod forbidden;
mod scc;
mod shape;

pub use dot::{to_dot, ToDot};
pub use forbidden::{find_forbidden, find_pattern, ForbiddenEmbedding, ForbiddenPattern};
pub use scc::{is_strongly_connected, scc, SccDecomposition};
pub use shape::{serial_shape, shape_class, Family, ShapeClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowData {
    pub id: String,
    pub source: Vertex,
    pub target: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DanglingEndpoint { arrow: String, vertex: String },
    DuplicateArrow(String),
    DuplicateVertex(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DanglingEndpoint { arrow, vertex } => {
                write!(f, "dangling endpoint: arrow {arrow} refers to undeclared vertex {vertex}")
            }
            Violation::DuplicateArrow(id) => write!(f, "duplicate arrow-id {id}"),
            Violation::DuplicateVertex(id) => write!(f, "duplicate vertex {id}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("invalid quiver: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("arrows {first} and {second} do not compose")]
    NotComposable { first: String, second: String },
}

/// Checks the quiver invariants on raw identifiers, reporting every violation.
pub fn validate(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<(), QuiverError> {
    let mut violations = Vec::new();
    let mut seen = BTreeSet::new();
    for v in vertices {
        if !seen.insert(*v) {
            violations.push(Violation::DuplicateVertex(v.to_string()));
        }
    }
    let mut ids = BTreeSet::new();
    for (id, src, tgt) in arrows {
        if !ids.insert(*id) {
            violations.push(Violation::DuplicateArrow(id.to_string()));
        }
        for end in [src, tgt] {
            if !seen.contains(end) {
                violations.push(Violation::DanglingEndpoint {
                    arrow: id.to_string(),
                    vertex: end.to_string(),
                });
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(QuiverError::Invalid(violations))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<ArrowData>,
}

impl Quiver {
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self, QuiverError> {
        validate(vertices, arrows)?;
        let index: HashMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        Ok(Quiver {
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(id, s, t)| ArrowData {
                    id: id.to_string(),
                    source: Vertex(index[s]),
                    target: Vertex(index[t]),
                })
                .collect(),
        })
    }

    /// Builds from owned identifiers; same validation as [`Quiver::new`].
    pub fn from_owned(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self, QuiverError> {
        let vs: Vec<&str> = vertices.iter().map(String::as_str).collect();
        let arr: Vec<(&str, &str, &str)> = arrows
            .iter()
            .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
            .collect();
        Quiver::new(&vs, &arr)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertices.len()).map(Vertex)
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        (0..self.arrows.len()).map(Arrow)
    }

    pub fn arrow(&self, a: Arrow) -> &ArrowData {
        &self.arrows[a.0]
    }

    pub fn source(&self, a: Arrow) -> Vertex {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: Arrow) -> Vertex {
        self.arrows[a.0].target
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow_id(&self, a: Arrow) -> &str {
        &self.arrows[a.0].id
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<Vertex> {
        self.vertices.iter().position(|v| v == name).map(Vertex)
    }

    pub fn arrow_by_id(&self, id: &str) -> Option<Arrow> {
        self.arrows.iter().position(|a| a.id == id).map(Arrow)
    }

    pub fn outgoing(&self, v: Vertex) -> impl Iterator<Item = Arrow> + '_ {
        self.arrows().filter(move |a| self.source(*a) == v)
    }

    pub fn incoming(&self, v: Vertex) -> impl Iterator<Item = Arrow> + '_ {
        self.arrows().filter(move |a| self.target(*a) == v)
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.outgoing(v).count()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.incoming(v).count()
    }

    /// Path from arrow ids listed source-to-target (the document order).
    pub fn path_from_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<Path, QuiverError> {
        let arrows = ids
            .iter()
            .map(|id| {
                self.arrow_by_id(id.as_ref())
                    .ok_or_else(|| QuiverError::UnknownArrow(id.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_arrows(self, arrows)
    }

    pub fn trivial(&self, name: &str) -> Result<Path, QuiverError> {
        self.vertex_by_name(name)
            .map(Path::trivial)
            .ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
    }

    /// Full subquiver on `keep`, retaining the arrows in `arrows` (if given)
    /// with both endpoints kept. Vertices and arrows keep their relative order.
    pub fn subquiver(&self, keep: &BTreeSet<Vertex>, arrows: Option<&BTreeSet<Arrow>>) -> (Quiver, Embedding) {
        let mut vmap = BTreeMap::new();
        let mut vertices = Vec::new();
        for v in self.vertices() {
            if keep.contains(&v) {
                vmap.insert(v, Vertex(vertices.len()));
                vertices.push(self.vertices[v.0].clone());
            }
        }
        let mut amap = BTreeMap::new();
        let mut new_arrows = Vec::new();
        for a in self.arrows() {
            let d = self.arrow(a);
            if keep.contains(&d.source)
                && keep.contains(&d.target)
                && arrows.is_none_or(|s| s.contains(&a))
            {
                amap.insert(a, Arrow(new_arrows.len()));
                new_arrows.push(ArrowData {
                    id: d.id.clone(),
                    source: vmap[&d.source],
                    target: vmap[&d.target],
                });
            }
        }
        (
            Quiver { vertices, arrows: new_arrows },
            Embedding { vertices: vmap, arrows: amap },
        )
    }

    /// Connected components of the underlying undirected multigraph, each
    /// sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source.0), find(&mut parent, a.target.0));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
        let mut groups: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(Vertex(v));
        }
        groups.into_values().collect()
    }
}

/// Index maps from a parent quiver into a subquiver.
#[derive(Debug, Clone, Default)]
pub struct Embedding {
    pub vertices: BTreeMap<Vertex, Vertex>,
    pub arrows: BTreeMap<Arrow, Arrow>,
}

impl Embedding {
    pub fn map_path(&self, p: &Path) -> Option<Path> {
        if p.is_trivial() {
            return self.vertices.get(&p.source()).map(|v| Path::trivial(*v));
        }
        Some(Path {
            source: *self.vertices.get(&p.source)?,
            target: *self.vertices.get(&p.target)?,
            steps: p
                .steps
                .iter()
                .map(|a| self.arrows.get(a).copied())
                .collect::<Option<Vec<_>>>()?,
        })
    }
}

/// A path of a quiver. Arrows are kept in traversal order: `steps[0]` is
/// `α_1`, the arrow applied first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: Vertex,
    target: Vertex,
    steps: Vec<Arrow>,
}

impl Path {
    pub fn trivial(v: Vertex) -> Path {
        Path { source: v, target: v, steps: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: Arrow) -> Path {
        Path { source: q.source(a), target: q.target(a), steps: vec![a] }
    }

    /// Builds a path from arrows in traversal order.
    pub fn from_arrows(q: &Quiver, steps: Vec<Arrow>) -> Result<Path, QuiverError> {
        let first = *steps.first().expect("nonempty arrow sequence");
        for w in steps.windows(2) {
            if q.target(w[0]) != q.source(w[1]) {
                return Err(QuiverError::NotComposable {
                    first: q.arrow_id(w[0]).to_string(),
                    second: q.arrow_id(w[1]).to_string(),
                });
            }
        }
        let last = *steps.last().unwrap();
        Ok(Path { source: q.source(first), target: q.target(last), steps })
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn target(&self) -> Vertex {
        self.target
    }

    /// Arrows in traversal order.
    pub fn steps(&self) -> &[Arrow] {
        &self.steps
    }

    /// Vertices visited, in traversal order (`len + 1` entries).
    pub fn vertices<'a>(&'a self, q: &'a Quiver) -> impl Iterator<Item = Vertex> + 'a {
        std::iter::once(self.source).chain(self.steps.iter().map(|a| q.target(*a)))
    }

    /// The path `later · self` (traverse `self`, then `later`), if composable.
    pub fn then(&self, later: &Path) -> Option<Path> {
        if self.target != later.source {
            return None;
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&later.steps);
        Some(Path { source: self.source, target: later.target, steps })
    }

    /// Sub-path of traversal positions `from..to` (arrow indices).
    pub fn segment(&self, q: &Quiver, from: usize, to: usize) -> Path {
        if from == to {
            let v = if from == 0 { self.source } else { q.target(self.steps[from - 1]) };
            return Path::trivial(v);
        }
        Path {
            source: q.source(self.steps[from]),
            target: q.target(self.steps[to - 1]),
            steps: self.steps[from..to].to_vec(),
        }
    }

    /// All factorizations `p = η·τ` as `(η, τ)`, including both trivial end
    /// cuts, ordered by increasing length of `τ`.
    pub fn cuts(&self, q: &Quiver) -> Vec<(Path, Path)> {
        (0..=self.len())
            .map(|k| (self.segment(q, k, self.len()), self.segment(q, 0, k)))
            .collect()
    }

    pub fn contains_factor(&self, q: &Quiver, factor: &Path) -> bool {
        if factor.is_trivial() {
            return self.vertices(q).any(|v| v == factor.source);
        }
        self.steps.windows(factor.len()).any(|w| w == factor.steps.as_slice())
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver: q }
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.steps.iter().rev().cmp(other.steps.iter().rev()))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders a path in composition order: `βα`, or `beta.alpha` when some
/// arrow id is longer than one character. Trivial paths render as `e(x)`.
pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.quiver;
        if self.path.is_trivial() {
            return write!(f, "e({})", q.vertex_name(self.path.source));
        }
        let ids: Vec<&str> = self.path.steps.iter().rev().map(|a| q.arrow_id(*a)).collect();
        let sep = if ids.iter().all(|s| s.chars().count() == 1) { "" } else { "." };
        f.write_str(&ids.join(sep))
    }
}

/// All paths of length at most `max_len`, trivial paths included, sorted by
/// length and then lexicographically (composition order) on arrow indices.
pub fn paths_up_to(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = q.vertices().map(Path::trivial).collect();
    let mut frontier: Vec<Path> = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.outgoing(p.target) {
                let mut steps = p.steps.clone();
                steps.push(a);
                next.push(Path { source: p.source, target: q.target(a), steps });
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Quiver {
        Quiver::new(&["1", "2", "3"], &[("alpha", "1", "2"), ("beta", "2", "3")]).unwrap()
    }

    #[test]
    fn validation_reports_every_violation() {
        assert!(validate(&["x"], &[("a", "x", "x"), ("b", "x", "x")]).is_ok());
        assert!(validate(&[], &[]).is_ok());
        let err = validate(&["1"], &[("a", "1", "2"), ("a", "1", "1")]).unwrap_err();
        let QuiverError::Invalid(v) = err else { panic!() };
        assert!(v.contains(&Violation::DanglingEndpoint { arrow: "a".into(), vertex: "2".into() }));
        assert!(v.contains(&Violation::DuplicateArrow("a".into())));
        assert!(err_string(&["1"], &[("a", "1", "9")]).contains("dangling endpoint"));
    }

    fn err_string(v: &[&str], a: &[(&str, &str, &str)]) -> String {
        validate(v, a).unwrap_err().to_string()
    }

    #[test]
    fn a3_paths_to_length_two() {
        let q = a3();
        let ps = paths_up_to(&q, 2);
        let shown: Vec<String> = ps.iter().map(|p| p.display(&q).to_string()).collect();
        assert_eq!(shown, ["e(1)", "e(2)", "e(3)", "alpha", "beta", "beta.alpha"]);
        assert_eq!(paths_up_to(&q, 0).len(), 3);
    }

    #[test]
    fn two_loops_count() {
        let q = Quiver::new(&["x"], &[("a", "x", "x"), ("b", "x", "x")]).unwrap();
        assert_eq!(paths_up_to(&q, 2).len(), 7);
    }

    #[test]
    fn document_order_is_reversed_for_display() {
        let q = a3();
        let p = q.path_from_ids(&["alpha", "beta"]).unwrap();
        assert_eq!(p.display(&q).to_string(), "beta.alpha");
        assert_eq!(q.vertex_name(p.source()), "1");
        assert_eq!(q.vertex_name(p.target()), "3");
        assert!(q.path_from_ids(&["beta", "alpha"]).is_err());
    }

    #[test]
    fn cuts_include_trivial_ends() {
        let q = a3();
        let p = q.path_from_ids(&["alpha", "beta"]).unwrap();
        let cuts = p.cuts(&q);
        assert_eq!(cuts.len(), 3);
        assert_eq!(cuts[0].0, p);
        assert_eq!(cuts[0].1, Path::trivial(Vertex(0)));
        assert_eq!(cuts[2].0, Path::trivial(Vertex(2)));
        for (eta, tau) in cuts {
            assert_eq!(tau.then(&eta).unwrap(), p);
        }
    }
}
