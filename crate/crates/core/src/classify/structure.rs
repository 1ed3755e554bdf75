use std::collections::BTreeSet;

use super::{Rule, Verdict, Witness};
use crate::error::Error;
use crate::gabriel::gabriel_quiver_monomial;
use crate::linear::{coassoc_check, PathBasis, Subspace, TruncatedCoalgebra};
use crate::monomial::{admissibility_gap, string_check, MonomialCoalgebra, MonomialError};
use crate::quiver::{find_pattern, shape_class, Arrow, ForbiddenPattern, Path, Quiver, ShapeClass, Vertex};

/// Pointed hereditary means the full path coalgebra of its quiver.
pub fn hereditary(m: &MonomialCoalgebra) -> Result<Verdict, MonomialError> {
    if !m.is_admissible() {
        return Err(MonomialError::NotAdmissible(admissibility_gap(m)));
    }
    Ok(match m.missing_path() {
        None => Verdict::Yes {
            rule: Rule::FullPathCoalgebra,
            evidence: "every path of the quiver lies in C".to_string(),
            truncation: None,
        },
        Some(p) => Verdict::No { rule: Rule::FullPathCoalgebra, truncation: p.len(), witness: Witness::MissingPath(p) },
    })
}

/// `kQ_C` truncated at `n`, where `Q_C` is the Gabriel quiver of `m`.
pub fn hereditary_closure(m: &MonomialCoalgebra, n: usize) -> Result<TruncatedCoalgebra, Error> {
    let (form, _) = m.admissible_form();
    let qc = gabriel_quiver_monomial(&form, n)?.expand();
    let closure = TruncatedCoalgebra::full(PathBasis::new(&qc, n));
    debug_assert!(coassoc_check(&closure));
    Ok(closure)
}

/// Coordinates of the members of `m` inside [`hereditary_closure`]; `None`
/// when some member has no image.
pub fn embed_in_closure(m: &MonomialCoalgebra, closure: &TruncatedCoalgebra) -> Option<Subspace> {
    let (form, _) = m.admissible_form();
    let target = closure.quiver();
    let q = form.quiver();
    let mut idx = Vec::new();
    for p in form.enumerate(closure.truncation()) {
        let image = if p.is_trivial() {
            target.trivial(q.vertex_name(p.source())).ok()?
        } else {
            // parallel member arrows map to the numbered copies in order
            let mut ids = Vec::new();
            for a in p.steps() {
                let (s, t) = (q.source(*a), q.target(*a));
                let parallel: Vec<Arrow> = q.arrows().filter(|b| q.source(*b) == s && q.target(*b) == t).collect();
                let base = format!("{}>{}", q.vertex_name(s), q.vertex_name(t));
                ids.push(if parallel.len() == 1 {
                    base
                } else {
                    format!("{base}#{}", parallel.iter().position(|b| b == a)? + 1)
                });
            }
            target.path_from_ids(&ids).ok()?
        };
        idx.push(closure.basis().index_of(&image)?);
    }
    Some(Subspace::coordinate(closure.basis().len(), idx))
}

/// Serial when the Gabriel quiver is a disjoint union of lines and
/// oriented cycles with simple arrows.
pub fn serial(m: &MonomialCoalgebra) -> Result<Verdict, Error> {
    let (c, _) = m.admissible_form();
    let g = gabriel_quiver_monomial(&c, 1)?;
    let no = |from: Vertex, to: Vertex, label, reason: String| Verdict::No {
        rule: Rule::SerialShape,
        witness: Witness::Shape { from, to, label, reason },
        truncation: 1,
    };
    if let Some((&(s, t), &l)) = g.arrows.iter().find(|(_, l)| **l != (1, 1)) {
        return Ok(no(s, t, l, format!("arrow carries valuation ({},{})", l.0, l.1)));
    }
    for (&(s, t), &l) in &g.arrows {
        if g.arrows.keys().any(|&(s2, t2)| s2 == s && t2 < t) {
            return Ok(no(s, t, l, format!("second arrow leaving {}", c.quiver().vertex_name(s))));
        }
        if g.arrows.keys().any(|&(s2, t2)| t2 == t && s2 < s) {
            return Ok(no(s, t, l, format!("second arrow entering {}", c.quiver().vertex_name(t))));
        }
    }
    Ok(Verdict::Yes {
        rule: Rule::SerialShape,
        evidence: "each vertex has at most one arrow in and one out".to_string(),
        truncation: None,
    })
}

/// The string conditions as a verdict.
pub fn string(m: &MonomialCoalgebra) -> Result<Verdict, Error> {
    let (c, _) = m.admissible_form();
    Ok(match string_check(&c)? {
        None => Verdict::Yes {
            rule: Rule::StringConditions,
            evidence: "degrees and continuations within bounds".to_string(),
            truncation: None,
        },
        Some(v) => Verdict::No { rule: Rule::StringConditions, witness: Witness::StringViolation(v), truncation: 2 },
    })
}

/// A configuration known to force wildness, with the vertices, arrows and
/// member paths realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub tag: String,
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
    pub paths: Vec<Path>,
}

impl Obstruction {
    pub fn location(&self, q: &Quiver) -> String {
        let mut parts = Vec::new();
        if !self.vertices.is_empty() {
            let vs: Vec<&str> = self.vertices.iter().map(|v| q.vertex_name(*v)).collect();
            parts.push(format!("vertices {}", vs.join(",")));
        }
        if !self.arrows.is_empty() {
            let ids: Vec<&str> = self.arrows.iter().map(|a| q.arrow_id(*a)).collect();
            parts.push(format!("arrows {}", ids.join(",")));
        }
        if !self.paths.is_empty() {
            let ps: Vec<String> = self.paths.iter().map(|p| p.display(q).to_string()).collect();
            parts.push(format!("paths {}", ps.join(",")));
        }
        parts.join("; ")
    }
}

/// Every implemented wildness detector on the admissible form of `m`:
/// three arrows at a vertex, the six small wild subquivers, two member
/// continuations of one arrow (tagged by configuration), and hereditary
/// components whose graph is neither Dynkin nor extended Dynkin. An empty
/// list certifies nothing.
pub fn wild_obstructions(m: &MonomialCoalgebra) -> Vec<Obstruction> {
    let (c, _) = m.admissible_form();
    let q = c.quiver();
    let mut out = Vec::new();
    for v in q.vertices() {
        for (tag, arrows) in [("three-out", q.outgoing(v).collect::<Vec<_>>()), ("three-in", q.incoming(v).collect())] {
            if arrows.len() >= 3 {
                out.push(Obstruction { tag: tag.to_string(), vertices: vec![v], arrows: arrows[..3].to_vec(), paths: vec![] });
            }
        }
    }
    for pattern in ForbiddenPattern::ALL {
        if let Some(e) = find_pattern(q, pattern) {
            out.push(Obstruction { tag: pattern.tag().to_string(), vertices: e.vertices, arrows: e.arrows, paths: vec![] });
        }
    }
    for gamma in q.arrows() {
        let g = Path::arrow(q, gamma);
        let after: Vec<Arrow> =
            q.outgoing(q.target(gamma)).filter(|a| c.contains(&g.then(&Path::arrow(q, *a)).unwrap())).collect();
        let before: Vec<Arrow> =
            q.incoming(q.source(gamma)).filter(|a| c.contains(&Path::arrow(q, *a).then(&g).unwrap())).collect();
        for (conts, dual) in [(after, false), (before, true)] {
            for (i, &a) in conts.iter().enumerate() {
                for &b in &conts[i + 1..] {
                    let join = |x: Arrow| {
                        let x = Path::arrow(q, x);
                        if dual { x.then(&g) } else { g.then(&x) }.unwrap()
                    };
                    let base = configuration(q, gamma, a, b, dual);
                    let tag = if dual { format!("{base}-dual") } else { base.to_string() };
                    let vertices: BTreeSet<Vertex> =
                        [gamma, a, b].iter().flat_map(|x| [q.source(*x), q.target(*x)]).collect();
                    out.push(Obstruction { tag, vertices: vertices.into_iter().collect(), arrows: vec![gamma, a, b], paths: vec![join(a), join(b)] });
                }
            }
        }
    }
    let classes = shape_class(q);
    for (comp, class) in classes {
        if class != ShapeClass::Other {
            continue;
        }
        let keep: BTreeSet<Vertex> = comp.iter().copied().collect();
        if c.restrict_to_vertices(&keep).is_full() {
            out.push(Obstruction { tag: "wild-hereditary".to_string(), vertices: comp, arrows: vec![], paths: vec![] });
        }
    }
    out
}

/// Case letter for an arrow `c: u -> v` followed by two distinct arrows
/// `a`, `b` out of `v` with both composites in the coalgebra. With `dual`
/// the arrows are read in the opposite quiver.
fn configuration(q: &Quiver, c: Arrow, a: Arrow, b: Arrow, dual: bool) -> &'static str {
    let src = |x: Arrow| if dual { q.target(x) } else { q.source(x) };
    let tgt = |x: Arrow| if dual { q.source(x) } else { q.target(x) };
    let (u, v) = (src(c), tgt(c));
    if u == v {
        return if a == c || b == c { "d" } else { "other" };
    }
    let (wa, wb) = (tgt(a), tgt(b));
    match (wa == v, wb == v) {
        (true, true) => "other",
        (true, false) => {
            if wb == u {
                "e"
            } else {
                "f"
            }
        }
        (false, true) => {
            if wa == u {
                "e"
            } else {
                "f"
            }
        }
        (false, false) => {
            if wa == u && wb == u {
                "c"
            } else if wa == u || wb == u {
                "g"
            } else if wa == wb {
                "b"
            } else {
                "h"
            }
        }
    }
}
