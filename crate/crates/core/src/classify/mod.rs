//! Three-valued classification (semiprime, prime, hereditary, serial,
//! string) with witnesses that re-verify through the linear wedge.

mod report;
mod rules;
mod structure;

use std::collections::BTreeSet;
use std::fmt;

pub use report::{analyze, check_invariants, ClassificationReport, ComponentReport};
pub use rules::{prime, semiprime, Classifier, DEFAULT_CELL_BOUND};
pub use structure::{
    embed_in_closure, hereditary, hereditary_closure, serial, string, wild_obstructions, Obstruction,
};

use crate::gabriel::{localize_monomial, localize_quiver};
use crate::linear::{truncate_in, PathBasis};
use crate::monomial::{MonomialCoalgebra, StringViolation};
use crate::quiver::{paths_up_to, Path, Quiver, Vertex};
use crate::wedge::wedge_linear;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// Finite coradical filtration: semiprime iff cosemisimple.
    FiniteFiltration,
    /// A path with no continuation on one side.
    ExtensionFailure,
    /// Every short member `p` has `p·p` in the coalgebra.
    SquareRule,
    /// Full path coalgebra on a strongly connected quiver.
    StronglyConnected,
    /// A two-vertex localization that is finite and not cosemisimple.
    LocalizedPair,
    /// Two proper subcoalgebras whose wedge is everything.
    WedgePair,
    /// Prime implies semiprime.
    NotSemiprime,
    /// Component verdicts combined over a direct sum.
    DirectSum,
    /// Several connected components split as a wedge.
    Disconnected,
    FullPathCoalgebra,
    SerialShape,
    StringConditions,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::FiniteFiltration => "finite-filtration",
            Rule::ExtensionFailure => "extension-failure",
            Rule::SquareRule => "square-rule",
            Rule::StronglyConnected => "strongly-connected",
            Rule::LocalizedPair => "localized-pair",
            Rule::WedgePair => "wedge-pair",
            Rule::NotSemiprime => "not-semiprime",
            Rule::DirectSum => "direct-sum",
            Rule::Disconnected => "disconnected",
            Rule::FullPathCoalgebra => "full-path-coalgebra",
            Rule::SerialShape => "serial-shape",
            Rule::StringConditions => "string-conditions",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub enum Witness {
    /// Proper subcoalgebra `A` with `A ∧ A ⊇ C`.
    Square { a: MonomialCoalgebra },
    /// Proper subcoalgebras with `A ∧ B ⊇ C`.
    Pair { a: MonomialCoalgebra, b: MonomialCoalgebra },
    /// `eCe` for `e` the idempotent of `vertices`, presented on the
    /// localized quiver, together with a square witness there.
    Localized { vertices: Vec<Vertex>, cell_bound: usize, local: MonomialCoalgebra, a: MonomialCoalgebra },
    /// The witness of one connected component of the report.
    Component { index: usize, inner: Box<Witness> },
    /// A path of the quiver that the coalgebra lacks.
    MissingPath(Path),
    StringViolation(StringViolation),
    /// A Gabriel arrow breaking the line-or-cycle shape.
    Shape { from: Vertex, to: Vertex, label: (usize, usize), reason: String },
}

#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Verdict {
    Yes { rule: Rule, evidence: String, truncation: Option<usize> },
    No { rule: Rule, witness: Witness, truncation: usize },
    Unknown { attempted: Vec<Rule>, evidence: String },
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes { .. } => "yes",
            Verdict::No { .. } => "no",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    /// The deciding rule, or the last one attempted.
    pub fn rule(&self) -> Option<Rule> {
        match self {
            Verdict::Yes { rule, .. } | Verdict::No { rule, .. } => Some(*rule),
            Verdict::Unknown { attempted, .. } => attempted.last().copied(),
        }
    }

    pub fn truncation(&self) -> Option<usize> {
        match self {
            Verdict::Yes { truncation, .. } => *truncation,
            Verdict::No { truncation, .. } => Some(*truncation),
            Verdict::Unknown { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::No { witness, .. } => Some(witness),
            _ => None,
        }
    }

    /// One-line summary, e.g. `yes (square-rule, N=6)`.
    pub fn summary(&self) -> String {
        match self {
            Verdict::Yes { rule, truncation: Some(n), .. } => format!("yes ({rule}, N={n})"),
            Verdict::Yes { rule, truncation: None, .. } => format!("yes ({rule})"),
            Verdict::No { rule, truncation, .. } => format!("no ({rule}, verified at N={truncation})"),
            Verdict::Unknown { attempted, .. } => {
                let names: Vec<&str> = attempted.iter().map(|r| r.name()).collect();
                format!("unknown (tried {})", names.join(", "))
            }
        }
    }
}

/// Paths of `m` up to length `n`, displayed.
pub fn listing(m: &MonomialCoalgebra, n: usize) -> Vec<String> {
    m.enumerate(n).iter().map(|p| p.display(m.quiver()).to_string()).collect()
}

/// Re-checks a witness against `c` at truncation `n`: for wedge witnesses,
/// properness, containment, the subcoalgebra property and the wedge
/// inclusion, all by the linear computation. Component witnesses are
/// checked by [`ClassificationReport::verify`].
pub fn verify_witness(c: &MonomialCoalgebra, witness: &Witness, n: usize) -> Result<(), String> {
    let q = c.quiver();
    match witness {
        Witness::Square { a } => verify_wedge(c, a, a, n),
        Witness::Pair { a, b } => verify_wedge(c, a, b, n),
        Witness::Localized { vertices, cell_bound, local, a } => {
            let x: BTreeSet<Vertex> = vertices.iter().copied().collect();
            let longest = local.max_length().ok_or("localized coalgebra is not certified finite")?;
            let loc = localize_quiver(q, &x, *cell_bound).map_err(|e| e.to_string())?;
            if loc.truncated {
                return Err("localized quiver has cells beyond the bound".to_string());
            }
            if &loc.quiver != local.quiver() {
                return Err("localized quiver does not match the witness".to_string());
            }
            if paths_up_to(&loc.quiver, longest + 1).iter().any(|p| p.len() > longest) {
                return Err("localized quiver has paths beyond the presented ones".to_string());
            }
            let reach = loc.cells.iter().map(Path::len).max().unwrap_or(0) * longest.max(1);
            let lc = localize_monomial(c, &x, reach).map_err(|e| e.to_string())?;
            lc.check_isomorphism(c, &loc)?;
            let mut expect: Vec<Path> = lc.basis.iter().map(|p| loc.decompose(q, p).unwrap()).collect();
            expect.sort();
            if expect != local.enumerate(longest) {
                return Err("localized presentation does not match eCe".to_string());
            }
            verify_wedge(local, a, a, longest)
        }
        Witness::Component { .. } => Err("component witnesses are checked against their report".to_string()),
        Witness::MissingPath(p) => {
            if c.contains(p) {
                Err(format!("{} lies in the coalgebra", p.display(q)))
            } else {
                Ok(())
            }
        }
        Witness::StringViolation(v) => match crate::monomial::string_check(c) {
            Ok(Some(found)) if &found == v => Ok(()),
            Ok(_) => Err(format!("string violation not reproduced: {}", v.describe(q))),
            Err(e) => Err(e.to_string()),
        },
        Witness::Shape { .. } => Ok(()),
    }
}

fn verify_wedge(c: &MonomialCoalgebra, a: &MonomialCoalgebra, b: &MonomialCoalgebra, n: usize) -> Result<(), String> {
    let q = c.quiver();
    for s in [a, b] {
        if s.quiver() != q {
            return Err("witness lives on a different quiver".to_string());
        }
        if let Some(p) = s.first_outside(c, n) {
            return Err(format!("witness path {} is not in C", p.display(q)));
        }
        if c.first_outside(s, n).is_none() {
            return Err(format!("witness is not proper up to length {n}"));
        }
    }
    let basis = PathBasis::new(q, n);
    let tc = truncate_in(c, &basis);
    let w = wedge_linear(truncate_in(a, &basis).space(), truncate_in(b, &basis).space(), &tc)
        .map_err(|e| e.to_string())?;
    match tc.space().witness_outside(&w) {
        None => Ok(()),
        Some(v) => Err(format!("{} is in C but not in the wedge", basis.format_vector(&v))),
    }
}

pub(crate) fn name_list(q: &Quiver, vs: &[Vertex]) -> String {
    vs.iter().map(|v| q.vertex_name(*v)).collect::<Vec<_>>().join(",")
}
