use std::collections::BTreeSet;

use super::{Quiver, Vertex};

/// Strongly connected components and the condensation DAG.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    /// Components sorted internally; ordered by smallest member.
    pub components: Vec<Vec<Vertex>>,
    /// `component_of[v]` indexes into `components`.
    pub component_of: Vec<usize>,
    /// Edges between distinct components, deduplicated and sorted.
    pub condensation: Vec<(usize, usize)>,
}

impl SccDecomposition {
    pub fn same_component(&self, u: Vertex, v: Vertex) -> bool {
        self.component_of[u.0] == self.component_of[v.0]
    }
}

/// Tarjan's algorithm, iterative.
pub fn scc(q: &Quiver) -> SccDecomposition {
    let n = q.vertex_count();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|v| q.outgoing(Vertex(v)).map(|a| q.target(a).0).collect())
        .collect();

    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut raw: Vec<Vec<Vertex>> = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (vertex, next successor position)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < succ[v].len() {
                let w = succ[v][*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(Vertex(w));
                        if w == v {
                            break;
                        }
                    }
                    comp.sort();
                    raw.push(comp);
                }
            }
        }
    }

    raw.sort_by_key(|c| c[0]);
    let mut component_of = vec![0; n];
    for (i, c) in raw.iter().enumerate() {
        for v in c {
            component_of[v.0] = i;
        }
    }
    let condensation: BTreeSet<(usize, usize)> = q
        .arrows()
        .map(|a| (component_of[q.source(a).0], component_of[q.target(a).0]))
        .filter(|(x, y)| x != y)
        .collect();
    SccDecomposition { components: raw, component_of, condensation: condensation.into_iter().collect() }
}

/// For each connected component (as in [`Quiver::connected_components`]),
/// whether it forms a single strongly connected component.
pub fn is_strongly_connected(q: &Quiver) -> Vec<(Vec<Vertex>, bool)> {
    let d = scc(q);
    q.connected_components()
        .into_iter()
        .map(|comp| {
            let first = d.component_of[comp[0].0];
            let strong = comp.iter().all(|v| d.component_of[v.0] == first);
            (comp, strong)
        })
        .collect()
}
