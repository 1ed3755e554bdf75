//! Workspace documents: a quiver, the coalgebra `C` and named
//! subcoalgebras, read from and written to JSON.
//!
//! Paths in documents are arrow-id lists in traversal order (source to
//! target). An automaton reads words in the same order.

use std::collections::{BTreeMap, BTreeSet};

use coalg::monomial::Presentation;
use coalg::{MonomialCoalgebra, Path, PathAutomaton, Quiver, Vertex};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_TRUNCATION: usize = 6;
pub const DEFAULT_CELL_BOUND: usize = coalg::classify::DEFAULT_CELL_BOUND;

/// Name under which the main coalgebra can be referenced.
pub const MAIN: &str = "C";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub quiver: QuiverDoc,
    pub coalgebra: PresentationDoc,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subcoalgebras: BTreeMap<String, PresentationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell_bound: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// `support` restricts the trivial paths; absent means every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PresentationDoc {
    Full {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        support: Option<Vec<String>>,
    },
    Monomial {
        paths: Vec<Vec<String>>,
        /// `false` marks a listing of unknown extent beyond its longest path.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        complete: Option<bool>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        support: Option<Vec<String>>,
    },
    Pattern {
        automaton: AutomatonDoc,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        support: Option<Vec<String>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDoc {
    pub states: Vec<String>,
    /// Absent means every state is initial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<Vec<String>>,
    pub accepting: Vec<String>,
    pub transitions: Vec<TransitionDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionDoc {
    pub from: String,
    pub arrow: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workspace {
    pub quiver: Quiver,
    pub coalgebra: MonomialCoalgebra,
    pub subcoalgebras: BTreeMap<String, MonomialCoalgebra>,
    pub truncation: usize,
    pub cell_bound: usize,
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Workspace, CliError> {
        Workspace::parse_with_default(text, DEFAULT_TRUNCATION)
    }

    /// `default_truncation` applies when the document has no
    /// `"truncation"` key.
    pub fn parse_with_default(text: &str, default_truncation: usize) -> Result<Workspace, CliError> {
        let mut de = serde_json::Deserializer::from_str(text);
        let doc: Document = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let inner = e.inner();
            let at = e.path().to_string();
            let at = if at == "." { String::new() } else { format!(" at {at}") };
            CliError::Input(format!("line {} column {}{at}: {inner}", inner.line(), inner.column()))
        })?;
        de.end().map_err(|e| CliError::Input(format!("trailing input: {e}")))?;
        Workspace::from_document(&doc, default_truncation)
    }

    pub fn from_document(doc: &Document, default_truncation: usize) -> Result<Workspace, CliError> {
        let vertices: Vec<&str> = doc.quiver.vertices.iter().map(String::as_str).collect();
        let arrows: Vec<(&str, &str, &str)> =
            doc.quiver.arrows.iter().map(|a| (a.id.as_str(), a.src.as_str(), a.tgt.as_str())).collect();
        let quiver = Quiver::new(&vertices, &arrows).map_err(|e| CliError::Input(format!("quiver: {e}")))?;
        let coalgebra = load(&quiver, &doc.coalgebra).map_err(|e| CliError::Input(format!("coalgebra: {e}")))?;
        let mut subcoalgebras = BTreeMap::new();
        for (name, p) in &doc.subcoalgebras {
            if name == MAIN {
                return Err(CliError::Input(format!("subcoalgebras.{MAIN}: the name {MAIN} is reserved")));
            }
            let m = load(&quiver, p).map_err(|e| CliError::Input(format!("subcoalgebras.{name}: {e}")))?;
            subcoalgebras.insert(name.clone(), m);
        }
        let ws = Workspace {
            quiver,
            coalgebra,
            subcoalgebras,
            truncation: doc.truncation.unwrap_or(default_truncation),
            cell_bound: doc.cell_bound.unwrap_or(DEFAULT_CELL_BOUND),
        };
        ws.validate()?;
        Ok(ws)
    }

    /// Every named subcoalgebra lies in `C` up to the truncation.
    pub fn validate(&self) -> Result<(), CliError> {
        for (name, m) in &self.subcoalgebras {
            if let Some(p) = m.first_outside(&self.coalgebra, self.truncation) {
                return Err(CliError::Input(format!(
                    "subcoalgebras.{name}: path {} is not in the coalgebra",
                    p.display(&self.quiver)
                )));
            }
        }
        Ok(())
    }

    /// `C` or a named subcoalgebra.
    pub fn get(&self, name: &str) -> Result<&MonomialCoalgebra, CliError> {
        if name == MAIN {
            return Ok(&self.coalgebra);
        }
        self.subcoalgebras.get(name).ok_or_else(|| {
            let known: Vec<&str> = std::iter::once(MAIN).chain(self.subcoalgebras.keys().map(String::as_str)).collect();
            CliError::Input(format!("unknown subcoalgebra {name} (known: {})", known.join(", ")))
        })
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex, CliError> {
        self.quiver.vertex_by_name(name).ok_or_else(|| CliError::Input(format!("unknown vertex {name}")))
    }

    pub fn to_document(&self) -> Document {
        Document {
            quiver: quiver_doc(&self.quiver),
            coalgebra: presentation_doc(&self.coalgebra),
            subcoalgebras: self.subcoalgebras.iter().map(|(k, m)| (k.clone(), presentation_doc(m))).collect(),
            truncation: Some(self.truncation),
            cell_bound: Some(self.cell_bound),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_document()).expect("documents serialize");
        s.push('\n');
        s
    }
}

fn load(q: &Quiver, p: &PresentationDoc) -> Result<MonomialCoalgebra, String> {
    let support = |names: &Option<Vec<String>>| -> Result<Option<BTreeSet<Vertex>>, String> {
        names
            .as_ref()
            .map(|ns| ns.iter().map(|n| q.vertex_by_name(n).ok_or(format!("unknown vertex {n}"))).collect())
            .transpose()
    };
    match p {
        PresentationDoc::Full { support: s } => {
            let full = MonomialCoalgebra::full(q);
            Ok(match support(s)? {
                Some(keep) => full.restrict_to_vertices(&keep),
                None => full,
            })
        }
        PresentationDoc::Monomial { paths, complete, support: s } => {
            let mut out = Vec::with_capacity(paths.len());
            for (k, word) in paths.iter().enumerate() {
                if word.is_empty() {
                    return Err(format!("paths[{k}]: empty word; trivial paths are implicit"));
                }
                out.push(q.path_from_ids(word).map_err(|e| format!("paths[{k}]: {e}"))?);
            }
            MonomialCoalgebra::finite(q, support(s)?, out, complete.unwrap_or(true)).map_err(|e| e.to_string())
        }
        PresentationDoc::Pattern { automaton: a, support: s } => {
            let transitions: Vec<(&str, &str, &str)> =
                a.transitions.iter().map(|t| (t.from.as_str(), t.arrow.as_str(), t.to.as_str())).collect();
            let states: Vec<&str> = a.states.iter().map(String::as_str).collect();
            let accepting: Vec<&str> = a.accepting.iter().map(String::as_str).collect();
            let initial: Option<Vec<&str>> = a.initial.as_ref().map(|i| i.iter().map(String::as_str).collect());
            let automaton = PathAutomaton::new(q, &states, initial.as_deref(), &accepting, &transitions)
                .map_err(|e| format!("automaton: {e}"))?;
            MonomialCoalgebra::pattern(q, support(s)?, automaton).map_err(|e| e.to_string())
        }
    }
}

pub fn quiver_doc(q: &Quiver) -> QuiverDoc {
    QuiverDoc {
        vertices: q.vertices().map(|v| q.vertex_name(v).to_string()).collect(),
        arrows: q
            .arrows()
            .map(|a| ArrowDoc {
                id: q.arrow_id(a).to_string(),
                src: q.vertex_name(q.source(a)).to_string(),
                tgt: q.vertex_name(q.target(a)).to_string(),
            })
            .collect(),
    }
}

/// Arrow ids in traversal order.
pub fn word(q: &Quiver, p: &Path) -> Vec<String> {
    p.steps().iter().map(|a| q.arrow_id(*a).to_string()).collect()
}

fn support_doc(m: &MonomialCoalgebra) -> Option<Vec<String>> {
    let q = m.quiver();
    (m.support().len() != q.vertex_count())
        .then(|| m.support().iter().map(|v| q.vertex_name(*v).to_string()).collect())
}

/// Exact presentation of `m`.
pub fn presentation_doc(m: &MonomialCoalgebra) -> PresentationDoc {
    let q = m.quiver();
    let support = support_doc(m);
    match m.presentation() {
        Presentation::Finite { paths, complete } => PresentationDoc::Monomial {
            paths: paths.iter().map(|p| word(q, p)).collect(),
            complete: (!complete).then_some(false),
            support,
        },
        Presentation::Pattern(a) => {
            let names = a.state_names();
            let pick = |set: &BTreeSet<usize>| set.iter().map(|&s| names[s].clone()).collect::<Vec<_>>();
            PresentationDoc::Pattern {
                automaton: AutomatonDoc {
                    states: names.to_vec(),
                    initial: (a.initial().len() != names.len()).then(|| pick(a.initial())),
                    accepting: pick(a.accepting()),
                    transitions: a
                        .transitions()
                        .iter()
                        .map(|&(f, arrow, t)| TransitionDoc {
                            from: names[f].clone(),
                            arrow: q.arrow_id(arrow).to_string(),
                            to: names[t].clone(),
                        })
                        .collect(),
                },
                support,
            }
        }
    }
}

/// Member paths of `m` up to length `n` as a listing, marked complete when
/// nothing longer exists.
pub fn listing_doc(m: &MonomialCoalgebra, n: usize) -> PresentationDoc {
    let q = m.quiver();
    PresentationDoc::Monomial {
        paths: m.enumerate(n).iter().filter(|p| !p.is_trivial()).map(|p| word(q, p)).collect(),
        complete: Some(m.max_length().is_some_and(|top| top <= n)),
        support: support_doc(m),
    }
}
