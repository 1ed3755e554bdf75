//! Machine-readable output. Field order is fixed by declaration order, so
//! identical inputs give byte-identical text.

use coalg::classify::{ClassificationReport, Obstruction, Verdict, Witness};
use coalg::gabriel::ValuedQuiver;
use coalg::MonomialCoalgebra;
use serde::Serialize;

use crate::workspace::{listing_doc, quiver_doc, word, PresentationDoc, QuiverDoc};

#[derive(Debug, Clone, Serialize)]
pub struct VerdictJson {
    pub verdict: &'static str,
    pub rule: Option<&'static str>,
    pub witness: Option<WitnessJson>,
    pub truncation: Option<usize>,
    pub evidence: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessJson {
    Square {
        a: PresentationDoc,
    },
    Pair {
        a: PresentationDoc,
        b: PresentationDoc,
    },
    Localized {
        vertices: Vec<String>,
        cell_bound: usize,
        quiver: QuiverDoc,
        local: PresentationDoc,
        a: PresentationDoc,
    },
    Component {
        index: usize,
        inner: Box<WitnessJson>,
    },
    MissingPath {
        source: String,
        path: Vec<String>,
    },
    StringViolation {
        condition: String,
        description: String,
    },
    Shape {
        from: String,
        to: String,
        label: [usize; 2],
        reason: String,
    },
}

/// `c` is the coalgebra the witness refers to; component witnesses look up
/// their coalgebra in `components`.
pub fn witness_json(c: &MonomialCoalgebra, w: &Witness, n: usize, components: &[&MonomialCoalgebra]) -> WitnessJson {
    let q = c.quiver();
    match w {
        Witness::Square { a } => WitnessJson::Square { a: listing_doc(a, n) },
        Witness::Pair { a, b } => WitnessJson::Pair { a: listing_doc(a, n), b: listing_doc(b, n) },
        Witness::Localized { vertices, cell_bound, local, a } => {
            let top = local.max_length().unwrap_or(n);
            WitnessJson::Localized {
                vertices: vertices.iter().map(|v| q.vertex_name(*v).to_string()).collect(),
                cell_bound: *cell_bound,
                quiver: quiver_doc(local.quiver()),
                local: listing_doc(local, top),
                a: listing_doc(a, top),
            }
        }
        Witness::Component { index, inner } => {
            let comp = components.get(*index).copied().unwrap_or(c);
            WitnessJson::Component { index: *index, inner: Box::new(witness_json(comp, inner, n, &[])) }
        }
        Witness::MissingPath(p) => {
            WitnessJson::MissingPath { source: q.vertex_name(p.source()).to_string(), path: word(q, p) }
        }
        Witness::StringViolation(v) => {
            WitnessJson::StringViolation { condition: v.condition().to_string(), description: v.describe(q) }
        }
        Witness::Shape { from, to, label, reason } => WitnessJson::Shape {
            from: q.vertex_name(*from).to_string(),
            to: q.vertex_name(*to).to_string(),
            label: [label.0, label.1],
            reason: reason.clone(),
        },
    }
}

pub fn verdict_json(c: &MonomialCoalgebra, v: &Verdict, components: &[&MonomialCoalgebra]) -> VerdictJson {
    let (witness, evidence) = match v {
        Verdict::No { witness, truncation, .. } => (Some(witness_json(c, witness, *truncation, components)), None),
        Verdict::Yes { evidence, .. } | Verdict::Unknown { evidence, .. } => (None, Some(evidence.clone())),
    };
    VerdictJson { verdict: v.label(), rule: v.rule().map(|r| r.name()), witness, truncation: v.truncation(), evidence }
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionJson {
    pub tag: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<String>,
    pub paths: Vec<Vec<String>>,
}

pub fn obstruction_json(c: &MonomialCoalgebra, o: &Obstruction) -> ObstructionJson {
    let q = c.quiver();
    ObstructionJson {
        tag: o.tag.clone(),
        vertices: o.vertices.iter().map(|v| q.vertex_name(*v).to_string()).collect(),
        arrows: o.arrows.iter().map(|a| q.arrow_id(*a).to_string()).collect(),
        paths: o.paths.iter().map(|p| word(q, p)).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentJson {
    pub vertices: Vec<String>,
    pub strongly_connected: bool,
    pub semiprime: VerdictJson,
    pub prime: VerdictJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValuedArrowJson {
    pub from: String,
    pub to: String,
    pub label: [usize; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct ValuedQuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<ValuedArrowJson>,
}

pub fn valued_quiver_json(g: &ValuedQuiver) -> ValuedQuiverJson {
    let name = |v| g.vertices.iter().find(|(w, _)| *w == v).map(|(_, n)| n.clone()).unwrap_or_default();
    ValuedQuiverJson {
        vertices: g.vertices.iter().map(|(_, n)| n.clone()).collect(),
        arrows: g
            .arrows
            .iter()
            .map(|(&(s, t), &(d1, d2))| ValuedArrowJson { from: name(s), to: name(t), label: [d1, d2] })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckJson {
    pub name: String,
    pub ok: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationJson {
    pub quiver: QuiverDoc,
    pub truncation: usize,
    pub cell_bound: usize,
    pub semiprime: VerdictJson,
    pub prime: VerdictJson,
    pub hereditary: VerdictJson,
    pub serial: VerdictJson,
    pub string: VerdictJson,
    pub obstructions: Vec<ObstructionJson>,
    pub components: Vec<ComponentJson>,
}

pub fn classification_json(r: &ClassificationReport) -> ClassificationJson {
    let c = &r.coalgebra;
    let comps: Vec<&MonomialCoalgebra> = r.components.iter().map(|k| &k.coalgebra).collect();
    let v = |x: &Verdict| verdict_json(c, x, &comps);
    ClassificationJson {
        quiver: quiver_doc(c.quiver()),
        truncation: r.truncation,
        cell_bound: r.cell_bound,
        semiprime: v(&r.semiprime),
        prime: v(&r.prime),
        hereditary: v(&r.hereditary),
        serial: v(&r.serial),
        string: v(&r.string),
        obstructions: r.obstructions.iter().map(|o| obstruction_json(c, o)).collect(),
        components: r
            .components
            .iter()
            .map(|k| {
                let kq = k.coalgebra.quiver();
                ComponentJson {
                    vertices: kq.vertices().map(|x| kq.vertex_name(x).to_string()).collect(),
                    strongly_connected: k.strongly_connected,
                    semiprime: verdict_json(&k.coalgebra, &k.semiprime, &[]),
                    prime: verdict_json(&k.coalgebra, &k.prime, &[]),
                }
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisJson {
    #[serde(flatten)]
    pub classification: ClassificationJson,
    /// Member paths per length `0..=N`.
    pub dimensions: Vec<usize>,
    pub gabriel: ValuedQuiverJson,
    pub invariants: Vec<CheckJson>,
}

/// Pretty JSON with a trailing newline.
pub fn to_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
