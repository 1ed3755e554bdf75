//! Dynkin / Euclidean recognition of the underlying undirected multigraph,
//! and the serial (line-or-cycle) shape test.

use std::collections::BTreeMap;
use std::fmt;

use super::{Quiver, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShapeClass {
    Dynkin(Family),
    /// Extended Dynkin; `A(n)` is the cycle on `n + 1` vertices.
    Euclidean(Family),
    Other,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A(n) => write!(f, "A{n}"),
            Family::D(n) => write!(f, "D{n}"),
            Family::E6 => f.write_str("E6"),
            Family::E7 => f.write_str("E7"),
            Family::E8 => f.write_str("E8"),
        }
    }
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeClass::Dynkin(fam) => write!(f, "{fam}"),
            ShapeClass::Euclidean(fam) => {
                let s = fam.to_string();
                write!(f, "{}~{}", &s[..1], &s[1..])
            }
            ShapeClass::Other => f.write_str("other"),
        }
    }
}

/// Classifies each connected component of `q`.
pub fn shape_class(q: &Quiver) -> Vec<(Vec<Vertex>, ShapeClass)> {
    q.connected_components()
        .into_iter()
        .map(|comp| {
            let class = classify_component(q, &comp);
            (comp, class)
        })
        .collect()
}

fn classify_component(q: &Quiver, comp: &[Vertex]) -> ShapeClass {
    let n = comp.len();
    let local: BTreeMap<Vertex, usize> = comp.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut loops = 0;
    for a in q.arrows() {
        let (Some(&s), Some(&t)) = (local.get(&q.source(a)), local.get(&q.target(a))) else {
            continue;
        };
        if s == t {
            loops += 1;
        } else {
            *mult.entry((s.min(t), s.max(t))).or_default() += 1;
        }
    }
    if loops > 0 {
        return if n == 1 && loops == 1 { ShapeClass::Euclidean(Family::A(0)) } else { ShapeClass::Other };
    }
    if mult.values().any(|&m| m >= 3) {
        return ShapeClass::Other;
    }
    if mult.values().any(|&m| m == 2) {
        return if n == 2 && mult.len() == 1 {
            ShapeClass::Euclidean(Family::A(1))
        } else {
            ShapeClass::Other
        };
    }

    let mut adj = vec![Vec::new(); n];
    for &(u, v) in mult.keys() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let m = mult.len();
    let deg: Vec<usize> = adj.iter().map(Vec::len).collect();

    if m == n && n >= 3 {
        return if deg.iter().all(|&d| d == 2) {
            ShapeClass::Euclidean(Family::A(n - 1))
        } else {
            ShapeClass::Other
        };
    }
    if m + 1 != n {
        return ShapeClass::Other;
    }

    // trees from here on
    let branch: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    match branch.as_slice() {
        [] => ShapeClass::Dynkin(Family::A(n)),
        [c] if deg[*c] == 4 => {
            if n == 5 {
                ShapeClass::Euclidean(Family::D(4))
            } else {
                ShapeClass::Other
            }
        }
        [c] if deg[*c] == 3 => {
            let mut arms: Vec<usize> = adj[*c].iter().map(|&nb| arm_length(&adj, *c, nb)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, r] => ShapeClass::Dynkin(Family::D(r + 3)),
                [1, 2, 2] => ShapeClass::Dynkin(Family::E6),
                [1, 2, 3] => ShapeClass::Dynkin(Family::E7),
                [1, 2, 4] => ShapeClass::Dynkin(Family::E8),
                [2, 2, 2] => ShapeClass::Euclidean(Family::E6),
                [1, 3, 3] => ShapeClass::Euclidean(Family::E7),
                [1, 2, 5] => ShapeClass::Euclidean(Family::E8),
                _ => ShapeClass::Other,
            }
        }
        [c1, c2] if deg[*c1] == 3 && deg[*c2] == 3 => {
            let leaves_at = |c: usize| adj[c].iter().filter(|&&nb| deg[nb] == 1).count();
            if leaves_at(*c1) == 2 && leaves_at(*c2) == 2 {
                ShapeClass::Euclidean(Family::D(n - 1))
            } else {
                ShapeClass::Other
            }
        }
        _ => ShapeClass::Other,
    }
}

/// Number of vertices on the arm leaving `center` through `first`.
fn arm_length(adj: &[Vec<usize>], center: usize, first: usize) -> usize {
    let (mut prev, mut cur, mut len) = (center, first, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
        match next.as_slice() {
            [nx] => {
                prev = cur;
                cur = *nx;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// True iff every vertex has in-degree and out-degree at most one, so each
/// component is a line or a single oriented cycle.
pub fn serial_shape(q: &Quiver) -> bool {
    q.vertices().all(|v| q.in_degree(v) <= 1 && q.out_degree(v) <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiver(n: usize, edges: &[(usize, usize)]) -> Quiver {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let arrows = edges
            .iter()
            .enumerate()
            .map(|(i, (s, t))| (format!("a{i}"), s.to_string(), t.to_string()))
            .collect();
        Quiver::from_owned(names, arrows).unwrap()
    }

    fn single(q: &Quiver) -> ShapeClass {
        let r = shape_class(q);
        assert_eq!(r.len(), 1);
        r[0].1
    }

    #[test]
    fn small_shapes() {
        assert_eq!(single(&quiver(3, &[(0, 1), (1, 2)])), ShapeClass::Dynkin(Family::A(3)));
        assert_eq!(single(&quiver(3, &[(0, 1), (1, 2), (2, 0)])), ShapeClass::Euclidean(Family::A(2)));
        assert_eq!(single(&quiver(2, &[(0, 1), (0, 1), (0, 1)])), ShapeClass::Other);
        assert_eq!(single(&quiver(2, &[(0, 1), (1, 0)])), ShapeClass::Euclidean(Family::A(1)));
        assert_eq!(single(&quiver(1, &[(0, 0)])), ShapeClass::Euclidean(Family::A(0)));
        assert_eq!(single(&quiver(1, &[(0, 0), (0, 0)])), ShapeClass::Other);
        assert_eq!(single(&quiver(1, &[])), ShapeClass::Dynkin(Family::A(1)));
        assert_eq!(single(&quiver(5, &[(0, 1), (0, 2), (0, 3), (0, 4)])), ShapeClass::Euclidean(Family::D(4)));
        assert_eq!(single(&quiver(4, &[(0, 1), (0, 2), (0, 3)])), ShapeClass::Dynkin(Family::D(4)));
        assert_eq!(
            single(&quiver(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)])),
            ShapeClass::Dynkin(Family::D(6))
        );
        assert_eq!(
            single(&quiver(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)])),
            ShapeClass::Euclidean(Family::D(5))
        );
    }

    #[test]
    fn display() {
        assert_eq!(ShapeClass::Euclidean(Family::E6).to_string(), "E~6");
        assert_eq!(ShapeClass::Euclidean(Family::A(2)).to_string(), "A~2");
        assert_eq!(ShapeClass::Dynkin(Family::D(5)).to_string(), "D5");
    }

    #[test]
    fn serial() {
        assert!(serial_shape(&quiver(3, &[(0, 1), (1, 2), (2, 0)])));
        assert!(serial_shape(&quiver(3, &[(0, 1), (1, 2)])));
        assert!(!serial_shape(&quiver(1, &[(0, 0), (0, 0)])));
    }
}
