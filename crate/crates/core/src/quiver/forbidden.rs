//! The six small wild subquivers: the Kronecker triple `K3`, the five-arrow
//! star `K5`, the triple loop `L3`, and `B~2`, `P1`, `P2`.

use std::collections::BTreeSet;
use std::fmt;

use super::{Arrow, Quiver, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ForbiddenPattern {
    K3,
    K5,
    L3,
    BTilde2,
    P1,
    P2,
}

impl ForbiddenPattern {
    pub const ALL: [ForbiddenPattern; 6] = [
        ForbiddenPattern::K3,
        ForbiddenPattern::K5,
        ForbiddenPattern::L3,
        ForbiddenPattern::BTilde2,
        ForbiddenPattern::P1,
        ForbiddenPattern::P2,
    ];

    /// Pattern shape as (vertex count, arrows as (source, target) indices).
    pub fn shape(self) -> (usize, &'static [(usize, usize)]) {
        match self {
            ForbiddenPattern::K3 => (2, &[(0, 1), (0, 1), (0, 1)]),
            ForbiddenPattern::K5 => (6, &[(1, 0), (2, 0), (3, 0), (4, 0), (5, 0)]),
            ForbiddenPattern::L3 => (1, &[(0, 0), (0, 0), (0, 0)]),
            ForbiddenPattern::BTilde2 => (3, &[(0, 1), (0, 1), (0, 2)]),
            ForbiddenPattern::P1 => (2, &[(0, 0), (0, 0), (0, 1)]),
            ForbiddenPattern::P2 => (2, &[(0, 0), (0, 1), (0, 1)]),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            ForbiddenPattern::K3 => "K3",
            ForbiddenPattern::K5 => "K5",
            ForbiddenPattern::L3 => "L3",
            ForbiddenPattern::BTilde2 => "B~2",
            ForbiddenPattern::P1 => "P1",
            ForbiddenPattern::P2 => "P2",
        }
    }
}

impl fmt::Display for ForbiddenPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Injective assignment of the pattern's vertices and arrows into a quiver,
/// in the order given by [`ForbiddenPattern::shape`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenEmbedding {
    pub pattern: ForbiddenPattern,
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
}

impl ForbiddenEmbedding {
    /// Re-checks the embedding against `q`.
    pub fn verify(&self, q: &Quiver) -> bool {
        let (nv, shape) = self.pattern.shape();
        if self.vertices.len() != nv || self.arrows.len() != shape.len() {
            return false;
        }
        let distinct_v: BTreeSet<_> = self.vertices.iter().collect();
        let distinct_a: BTreeSet<_> = self.arrows.iter().collect();
        if distinct_v.len() != nv || distinct_a.len() != shape.len() {
            return false;
        }
        shape.iter().zip(&self.arrows).all(|(&(s, t), &a)| {
            a.0 < q.arrow_count() && q.source(a) == self.vertices[s] && q.target(a) == self.vertices[t]
        })
    }
}

fn arrows_between(q: &Quiver, u: Vertex, v: Vertex) -> Vec<Arrow> {
    q.arrows().filter(|a| q.source(*a) == u && q.target(*a) == v).collect()
}

/// First embedding of `pattern` in `q`, scanning vertices and arrows in
/// declaration order.
pub fn find_pattern(q: &Quiver, pattern: ForbiddenPattern) -> Option<ForbiddenEmbedding> {
    let emb = |vertices: Vec<Vertex>, arrows: Vec<Arrow>| Some(ForbiddenEmbedding { pattern, vertices, arrows });
    let others = |u: Vertex| q.vertices().filter(move |v| *v != u);
    match pattern {
        ForbiddenPattern::K3 => q.vertices().find_map(|u| {
            others(u).find_map(|v| {
                let par = arrows_between(q, u, v);
                (par.len() >= 3).then(|| ForbiddenEmbedding { pattern, vertices: vec![u, v], arrows: par[..3].to_vec() })
            })
        }),
        ForbiddenPattern::K5 => q.vertices().find_map(|sink| {
            let mut sources = Vec::new();
            let mut arrows = Vec::new();
            for a in q.incoming(sink) {
                let s = q.source(a);
                if s != sink && !sources.contains(&s) {
                    sources.push(s);
                    arrows.push(a);
                }
            }
            if sources.len() < 5 {
                return None;
            }
            let mut vertices = vec![sink];
            vertices.extend_from_slice(&sources[..5]);
            emb(vertices, arrows[..5].to_vec())
        }),
        ForbiddenPattern::L3 => q.vertices().find_map(|u| {
            let loops = arrows_between(q, u, u);
            (loops.len() >= 3).then(|| ForbiddenEmbedding { pattern, vertices: vec![u], arrows: loops[..3].to_vec() })
        }),
        ForbiddenPattern::BTilde2 => q.vertices().find_map(|u| {
            others(u).find_map(|v| {
                let par = arrows_between(q, u, v);
                if par.len() < 2 {
                    return None;
                }
                let extra = q.outgoing(u).find(|a| q.target(*a) != u && q.target(*a) != v)?;
                emb(vec![u, v, q.target(extra)], vec![par[0], par[1], extra])
            })
        }),
        ForbiddenPattern::P1 => q.vertices().find_map(|u| {
            let loops = arrows_between(q, u, u);
            if loops.len() < 2 {
                return None;
            }
            let out = q.outgoing(u).find(|a| q.target(*a) != u)?;
            emb(vec![u, q.target(out)], vec![loops[0], loops[1], out])
        }),
        ForbiddenPattern::P2 => q.vertices().find_map(|u| {
            let lp = *arrows_between(q, u, u).first()?;
            others(u).find_map(|v| {
                let par = arrows_between(q, u, v);
                (par.len() >= 2).then(|| ForbiddenEmbedding { pattern, vertices: vec![u, v], arrows: vec![lp, par[0], par[1]] })
            })
        }),
    }
}

/// First forbidden pattern found, trying `K3, K5, L3, B~2, P1, P2` in order.
pub fn find_forbidden(q: &Quiver) -> Option<ForbiddenEmbedding> {
    ForbiddenPattern::ALL.iter().find_map(|p| find_pattern(q, *p))
}
