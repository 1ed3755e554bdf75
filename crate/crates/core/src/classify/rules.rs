use std::collections::BTreeSet;

use super::{verify_witness, Rule, Verdict, Witness};
use crate::gabriel::{localize_monomial, localize_quiver};
use crate::monomial::{extension_report, wedge_monomial, MonomialCoalgebra, Presentation};
use crate::quiver::{is_strongly_connected, Path, Vertex};

/// Longest cell considered when localizing.
pub const DEFAULT_CELL_BOUND: usize = 12;

/// Decision-rule settings: the truncation at which witnesses are verified
/// and the cell bound for localizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classifier {
    pub truncation: usize,
    pub cell_bound: usize,
}

impl Classifier {
    pub fn new(truncation: usize) -> Self {
        Classifier { truncation, cell_bound: DEFAULT_CELL_BOUND }
    }

    pub fn semiprime(&self, m: &MonomialCoalgebra) -> Verdict {
        let (c, _) = m.admissible_form();
        let q = c.quiver();
        let mut attempted = vec![Rule::FiniteFiltration];

        if let Some(top) = c.max_length() {
            if top == 0 {
                return Verdict::Yes {
                    rule: Rule::FiniteFiltration,
                    evidence: "C is its own coradical".to_string(),
                    truncation: None,
                };
            }
            return Verdict::No { rule: Rule::FiniteFiltration, witness: Witness::Square { a: below(&c, top) }, truncation: top };
        }

        let listed = listed_horizon(&c);
        let horizon = self.truncation.min(listed);
        let ext_upto = if listed == usize::MAX { horizon } else { horizon.saturating_sub(1) };
        attempted.push(Rule::ExtensionFailure);
        for f in extension_report(&c, ext_upto) {
            if !f.path.is_trivial() && !(f.left && f.right) {
                let a = c.avoid_factor(&f.path);
                return Verdict::No { rule: Rule::ExtensionFailure, witness: Witness::Square { a }, truncation: horizon };
            }
        }

        attempted.push(Rule::SquareRule);
        let half = horizon / 2;
        if half >= 1 {
            let short = c.enumerate(half);
            if short.iter().all(|p| p.then(p).is_some_and(|pp| c.contains(&pp))) {
                return Verdict::Yes {
                    rule: Rule::SquareRule,
                    evidence: format!("p·p lies in C for all {} members of length at most {half}", short.len()),
                    truncation: Some(horizon),
                };
            }
        }

        attempted.push(Rule::StronglyConnected);
        if c.is_full() && is_strongly_connected(q).iter().all(|(_, s)| *s) {
            return Verdict::Yes {
                rule: Rule::StronglyConnected,
                evidence: "full path coalgebra with strongly connected components".to_string(),
                truncation: None,
            };
        }

        attempted.push(Rule::LocalizedPair);
        if let Some(w) = self.localized_pair(&c) {
            let truncation = match &w {
                Witness::Localized { local, .. } => local.max_length().unwrap_or(1),
                _ => unreachable!(),
            };
            return Verdict::No { rule: Rule::LocalizedPair, witness: w, truncation };
        }

        Verdict::Unknown { attempted, evidence: format!("no rule decides up to length {horizon}") }
    }

    /// First pair `{x, y}` whose localized quiver is acyclic with complete
    /// cells and some member cell.
    fn localized_pair(&self, c: &MonomialCoalgebra) -> Option<Witness> {
        let q = c.quiver();
        let vs: Vec<Vertex> = c.support().iter().copied().collect();
        for (i, &x) in vs.iter().enumerate() {
            for &y in &vs[i + 1..] {
                let set = BTreeSet::from([x, y]);
                let loc = localize_quiver(q, &set, self.cell_bound).ok()?;
                if loc.truncated || loc.cells.is_empty() {
                    continue;
                }
                let lq = &loc.quiver;
                let directions: BTreeSet<(Vertex, Vertex)> =
                    lq.arrows().map(|a| (lq.source(a), lq.target(a))).collect();
                if directions.len() != 1 || directions.iter().any(|(s, t)| s == t) {
                    continue;
                }
                let reach = loc.cells.iter().map(Path::len).max().unwrap_or(0);
                if reach > listed_horizon(c) {
                    continue;
                }
                let lc = localize_monomial(c, &set, reach).ok()?;
                let paths: Vec<Path> = lc.basis.iter().filter_map(|p| loc.decompose(q, p)).collect();
                if paths.iter().all(Path::is_trivial) {
                    continue;
                }
                let local = MonomialCoalgebra::finite(lq, None, paths, true).ok()?;
                let a = below(&local, 1);
                return Some(Witness::Localized { vertices: vec![x, y], cell_bound: self.cell_bound, local, a });
            }
        }
        None
    }

    pub fn prime(&self, m: &MonomialCoalgebra) -> Verdict {
        let (c, _) = m.admissible_form();
        let q = c.quiver();
        let comps = q.connected_components();
        let mut attempted = vec![Rule::StronglyConnected];
        if comps.len() == 1 && c.is_full() && is_strongly_connected(q)[0].1 {
            return Verdict::Yes {
                rule: Rule::StronglyConnected,
                evidence: "full path coalgebra on a strongly connected quiver".to_string(),
                truncation: None,
            };
        }
        let n = c.max_length().unwrap_or(self.truncation.min(listed_horizon(&c)));

        attempted.push(Rule::Disconnected);
        if comps.len() > 1 {
            let first: BTreeSet<Vertex> = comps[0].iter().copied().collect();
            let rest: BTreeSet<Vertex> = comps[1..].iter().flatten().copied().collect();
            let witness = Witness::Pair { a: c.restrict_to_vertices(&first), b: c.restrict_to_vertices(&rest) };
            return Verdict::No { rule: Rule::Disconnected, witness, truncation: n };
        }

        attempted.push(Rule::WedgePair);
        let mut candidates: Vec<MonomialCoalgebra> = Vec::new();
        let mut seen: BTreeSet<Vec<Path>> = BTreeSet::new();
        let factors = c.support().iter().map(|v| Path::trivial(*v)).chain(q.arrows().map(|a| Path::arrow(q, a)));
        for f in factors {
            let a = c.avoid_factor(&f);
            if seen.insert(a.enumerate(n)) && c.first_outside(&a, n).is_some() {
                candidates.push(a);
            }
        }
        let total = c.enumerate(n).len();
        for a in &candidates {
            for b in &candidates {
                let covered = wedge_monomial(a, b, &c, n).is_ok_and(|w| w.len() == total);
                if covered {
                    let witness = Witness::Pair { a: a.clone(), b: b.clone() };
                    if verify_witness(&c, &witness, n).is_ok() {
                        return Verdict::No { rule: Rule::WedgePair, witness, truncation: n };
                    }
                }
            }
        }

        attempted.push(Rule::NotSemiprime);
        match self.semiprime(&c) {
            Verdict::No { witness, truncation, .. } => Verdict::No { rule: Rule::NotSemiprime, witness, truncation },
            _ => Verdict::Unknown { attempted, evidence: format!("no wedge pair among {} candidates", candidates.len()) },
        }
    }
}

/// Members of length below `top`, as a finite subcoalgebra.
fn below(c: &MonomialCoalgebra, top: usize) -> MonomialCoalgebra {
    MonomialCoalgebra::finite(c.quiver(), Some(c.support().clone()), c.enumerate(top - 1), true)
        .expect("a length truncation is subpath closed")
}

/// Longest length at which membership is known: the longest listed path
/// for an incomplete listing, unbounded otherwise.
fn listed_horizon(c: &MonomialCoalgebra) -> usize {
    match c.presentation() {
        Presentation::Finite { paths, complete: false } => paths.iter().map(Path::len).max().unwrap_or(0),
        _ => usize::MAX,
    }
}

/// Semiprimeness at the default cell bound.
pub fn semiprime(c: &MonomialCoalgebra, n: usize) -> Verdict {
    Classifier::new(n).semiprime(c)
}

/// Primeness at the default cell bound.
pub fn prime(c: &MonomialCoalgebra, n: usize) -> Verdict {
    Classifier::new(n).prime(c)
}
