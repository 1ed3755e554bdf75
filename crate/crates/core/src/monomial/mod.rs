//! Monomial subcoalgebras of path coalgebras: subpath-closed path sets given
//! explicitly or by a factor-closed path language.

mod automaton;
mod ops;

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

pub use automaton::{PathAutomaton, StateSet};
pub use ops::{
    extension_report, string_check, wedge_monomial, ExtensionFlags, Side, StringViolation,
};

pub(crate) use ops::admissibility_gap;

use crate::quiver::{Arrow, Embedding, Path, Quiver, QuiverError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("not subpath closed: {path} is present but its subpath {missing} is not")]
    MissingSubpath { path: String, missing: String },
    #[error("invalid path word: {0}")]
    InvalidWord(String),
    #[error("unknown automaton state {0}")]
    UnknownState(String),
    #[error("duplicate automaton state {0}")]
    DuplicateState(String),
    #[error("automaton state {0} is reached through arrows at different vertices")]
    InconsistentState(String),
    #[error("automaton is not trimmed: state {0} lies on no accepted run")]
    NotTrimmed(String),
    #[error("language is not closed under {side}: {word} is missing")]
    NotFactorClosed { side: &'static str, word: String },
    #[error("path {0} passes through a vertex outside the support")]
    OutsideSupport(String),
    #[error("presentations live on different quivers")]
    QuiverMismatch,
    #[error("{0} is not a member of the ambient coalgebra")]
    NotContained(String),
    #[error("not admissible: {0} is missing")]
    NotAdmissible(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    /// Nontrivial member paths. `complete` means the set is the whole basis;
    /// otherwise it is a listing of unknown extent beyond its longest path.
    Finite { paths: BTreeSet<Path>, complete: bool },
    Pattern(PathAutomaton),
}

/// A subcoalgebra of `kQ` spanned by paths: the trivial paths of `support`
/// together with a factor-closed set of nontrivial paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialCoalgebra {
    quiver: Quiver,
    support: BTreeSet<Vertex>,
    presentation: Presentation,
    admissible: bool,
}

impl MonomialCoalgebra {
    /// `support = None` takes every vertex. Trivial paths in `paths` are
    /// accepted and must lie in the support.
    pub fn finite<I>(
        q: &Quiver,
        support: Option<BTreeSet<Vertex>>,
        paths: I,
        complete: bool,
    ) -> Result<Self, MonomialError>
    where
        I: IntoIterator<Item = Path>,
    {
        let support = support.unwrap_or_else(|| q.vertices().collect());
        let mut set = BTreeSet::new();
        for p in paths {
            if p.is_trivial() {
                if !support.contains(&p.source()) {
                    return Err(MonomialError::OutsideSupport(p.display(q).to_string()));
                }
            } else {
                set.insert(p);
            }
        }
        MonomialCoalgebra::build(q, support, Presentation::Finite { paths: set, complete })
    }

    /// `support = None` takes every vertex.
    pub fn pattern(
        q: &Quiver,
        support: Option<BTreeSet<Vertex>>,
        automaton: PathAutomaton,
    ) -> Result<Self, MonomialError> {
        let support = support.unwrap_or_else(|| q.vertices().collect());
        MonomialCoalgebra::build(q, support, Presentation::Pattern(automaton))
    }

    /// The full path coalgebra `kQ`.
    pub fn full(q: &Quiver) -> Self {
        MonomialCoalgebra::pattern(q, None, PathAutomaton::full(q)).expect("full path language is valid")
    }

    /// The coradical: trivial paths only.
    pub fn socle(q: &Quiver) -> Self {
        MonomialCoalgebra::finite(q, None, [], true).expect("trivial paths are closed")
    }

    fn build(q: &Quiver, support: BTreeSet<Vertex>, presentation: Presentation) -> Result<Self, MonomialError> {
        let mut m = MonomialCoalgebra { quiver: q.clone(), support, presentation, admissible: false };
        validate_monomial(&m)?;
        m.admissible = m.support.len() == q.vertex_count() && q.arrows().all(|a| m.contains(&Path::arrow(q, a)));
        Ok(m)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn support(&self) -> &BTreeSet<Vertex> {
        &self.support
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn is_admissible(&self) -> bool {
        self.admissible
    }

    fn display(&self, p: &Path) -> String {
        p.display(&self.quiver).to_string()
    }

    fn word(&self, steps: Vec<Arrow>) -> String {
        let p = Path::from_arrows(&self.quiver, steps).expect("automaton words compose");
        self.display(&p)
    }

    pub fn contains(&self, p: &Path) -> bool {
        if p.is_trivial() {
            return self.support.contains(&p.source());
        }
        match &self.presentation {
            Presentation::Finite { paths, .. } => paths.contains(p),
            Presentation::Pattern(m) => m.accepts(p.steps()),
        }
    }

    /// Member paths of length at most `n`, in basis order.
    pub fn enumerate(&self, n: usize) -> Vec<Path> {
        let mut out: Vec<Path> = self.support.iter().map(|v| Path::trivial(*v)).collect();
        match &self.presentation {
            Presentation::Finite { paths, .. } => out.extend(paths.iter().filter(|p| p.len() <= n).cloned()),
            Presentation::Pattern(m) => {
                // Prefix closure: extend only words that are themselves members.
                let mut frontier: Vec<(Path, StateSet)> = Vec::new();
                for a in self.quiver.arrows() {
                    let d = m.step(m.initial(), a);
                    if !d.is_empty() {
                        frontier.push((Path::arrow(&self.quiver, a), d));
                    }
                }
                for _ in 0..n {
                    let mut next = Vec::new();
                    for (p, d) in &frontier {
                        out.push(p.clone());
                        for a in self.quiver.outgoing(p.target()) {
                            let d2 = m.step(d, a);
                            if !d2.is_empty() {
                                next.push((p.then(&Path::arrow(&self.quiver, a)).unwrap(), d2));
                            }
                        }
                    }
                    frontier = next;
                }
            }
        }
        out.sort();
        out
    }

    /// Finite-dimensional with a known complete basis.
    pub fn certified_finite(&self) -> bool {
        match &self.presentation {
            Presentation::Finite { complete, .. } => *complete,
            Presentation::Pattern(m) => !m.has_cycle(),
        }
    }

    /// Length of the longest member, when [`Self::certified_finite`].
    pub fn max_length(&self) -> Option<usize> {
        if !self.certified_finite() {
            return None;
        }
        Some(match &self.presentation {
            Presentation::Finite { paths, .. } => paths.iter().map(Path::len).max().unwrap_or(0),
            Presentation::Pattern(m) => {
                let bound = m.state_count();
                self.enumerate(bound).last().map_or(0, Path::len)
            }
        })
    }

    /// Shortest path of the quiver outside the coalgebra, or `None` when
    /// this is the full path coalgebra.
    pub fn missing_path(&self) -> Option<Path> {
        let q = &self.quiver;
        if let Some(v) = q.vertices().find(|v| !self.support.contains(v)) {
            return Some(Path::trivial(v));
        }
        match &self.presentation {
            Presentation::Finite { .. } => {
                let mut queue: VecDeque<Path> = q.vertices().map(Path::trivial).collect();
                while let Some(p) = queue.pop_front() {
                    for a in q.outgoing(p.target()) {
                        let next = p.then(&Path::arrow(q, a)).unwrap();
                        if !self.contains(&next) {
                            return Some(next);
                        }
                        queue.push_back(next);
                    }
                }
                None
            }
            Presentation::Pattern(m) => {
                let mut seen: HashSet<(Vertex, StateSet)> = HashSet::new();
                let mut queue: VecDeque<(Path, StateSet)> =
                    q.vertices().map(|v| (Path::trivial(v), m.initial().clone())).collect();
                while let Some((p, d)) = queue.pop_front() {
                    for a in q.outgoing(p.target()) {
                        let d2 = m.step(&d, a);
                        let next = p.then(&Path::arrow(q, a)).unwrap();
                        if d2.is_disjoint(m.accepting()) {
                            return Some(next);
                        }
                        if seen.insert((next.target(), d2.clone())) {
                            queue.push_back((next, d2));
                        }
                    }
                }
                None
            }
        }
    }

    pub fn is_full(&self) -> bool {
        self.missing_path().is_none()
    }

    /// Member paths not containing `factor`. A trivial factor `e_v` removes
    /// every path through `v`.
    pub fn avoid_factor(&self, factor: &Path) -> MonomialCoalgebra {
        if factor.is_trivial() {
            let keep: BTreeSet<Vertex> = self.support.iter().copied().filter(|v| *v != factor.source()).collect();
            return self.restrict_to_vertices(&keep);
        }
        let q = &self.quiver;
        let presentation = match &self.presentation {
            Presentation::Finite { paths, complete } => Presentation::Finite {
                paths: paths.iter().filter(|p| !p.contains_factor(q, factor)).cloned().collect(),
                complete: *complete,
            },
            Presentation::Pattern(m) => Presentation::Pattern(m.avoid(factor.steps())),
        };
        MonomialCoalgebra::build(q, self.support.clone(), presentation)
            .expect("factor avoidance preserves factor closure")
    }

    /// Member paths all of whose vertices lie in `keep`.
    pub fn restrict_to_vertices(&self, keep: &BTreeSet<Vertex>) -> MonomialCoalgebra {
        let q = &self.quiver;
        let inside = |a: Arrow| keep.contains(&q.source(a)) && keep.contains(&q.target(a));
        let presentation = match &self.presentation {
            Presentation::Finite { paths, complete } => Presentation::Finite {
                paths: paths.iter().filter(|p| p.steps().iter().all(|a| inside(*a))).cloned().collect(),
                complete: *complete,
            },
            Presentation::Pattern(m) => Presentation::Pattern(m.restrict_arrows(inside)),
        };
        let support = self.support.intersection(keep).copied().collect();
        MonomialCoalgebra::build(q, support, presentation).expect("vertex restriction preserves factor closure")
    }

    /// The same coalgebra re-based on its own quiver: the support vertices
    /// and the arrows it contains. Returns the embedding into the old quiver.
    pub fn admissible_form(&self) -> (MonomialCoalgebra, Embedding) {
        let q = &self.quiver;
        let arrows: BTreeSet<Arrow> = q.arrows().filter(|a| self.contains(&Path::arrow(q, *a))).collect();
        let (sub, into_sub) = q.subquiver(&self.support, Some(&arrows));
        let presentation = match &self.presentation {
            Presentation::Finite { paths, complete } => Presentation::Finite {
                paths: paths.iter().map(|p| into_sub.map_path(p).expect("members use member arrows")).collect(),
                complete: *complete,
            },
            Presentation::Pattern(m) => Presentation::Pattern(m.map_arrows(&into_sub.arrows)),
        };
        let m = MonomialCoalgebra::build(&sub, sub.vertices().collect(), presentation)
            .expect("re-basing preserves closure");
        let back = Embedding {
            vertices: into_sub.vertices.iter().map(|(a, b)| (*b, *a)).collect(),
            arrows: into_sub.arrows.iter().map(|(a, b)| (*b, *a)).collect(),
        };
        (m, back)
    }

    /// First member of `self` up to length `n` that `other` lacks.
    pub fn first_outside(&self, other: &MonomialCoalgebra, n: usize) -> Option<Path> {
        self.enumerate(n).into_iter().find(|p| !other.contains(p))
    }
}

/// Checks every structural invariant: subpath closure, support, and for
/// patterns vertex consistency, trimming and factor closure.
pub fn validate_monomial(m: &MonomialCoalgebra) -> Result<(), MonomialError> {
    let q = &m.quiver;
    if let Some(v) = m.support.iter().find(|v| v.0 >= q.vertex_count()) {
        return Err(MonomialError::Quiver(QuiverError::UnknownVertex(v.0.to_string())));
    }
    match &m.presentation {
        Presentation::Finite { paths, .. } => {
            for p in paths {
                if let Some(w) = p.steps().windows(2).find(|w| q.target(w[0]) != q.source(w[1])) {
                    return Err(MonomialError::InvalidWord(format!(
                        "{} cannot follow {}",
                        q.arrow_id(w[1]),
                        q.arrow_id(w[0])
                    )));
                }
                if p.vertices(q).any(|v| !m.support.contains(&v)) {
                    return Err(MonomialError::OutsideSupport(m.display(p)));
                }
                if p.len() >= 2 {
                    for sub in [p.segment(q, 1, p.len()), p.segment(q, 0, p.len() - 1)] {
                        if !paths.contains(&sub) {
                            return Err(MonomialError::MissingSubpath { path: m.display(p), missing: m.display(&sub) });
                        }
                    }
                }
            }
        }
        Presentation::Pattern(a) => {
            let at = a.state_vertices(q)?;
            if let Some(s) = a.useless_state() {
                return Err(MonomialError::NotTrimmed(s.to_string()));
            }
            if let Some(v) = at.iter().flatten().find(|v| !m.support.contains(v)) {
                return Err(MonomialError::OutsideSupport(format!("e({})", q.vertex_name(*v))));
            }
            if let Some(w) = a.prefix_counterexample() {
                return Err(MonomialError::NotFactorClosed { side: "prefixes", word: m.word(w) });
            }
            if let Some(w) = a.suffix_counterexample() {
                return Err(MonomialError::NotFactorClosed { side: "suffixes", word: m.word(w) });
            }
        }
    }
    Ok(())
}
