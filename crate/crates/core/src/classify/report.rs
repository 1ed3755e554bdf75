use std::collections::BTreeSet;

use super::rules::Classifier;
use super::structure::{hereditary, serial, string, wild_obstructions, Obstruction};
use super::{name_list, verify_witness, Rule, Verdict, Witness};
use crate::error::Error;
use crate::gabriel::gabriel_quiver_monomial;
use crate::linear::{socle, truncate};
use crate::monomial::{string_check, validate_monomial, MonomialCoalgebra};
use crate::quiver::{is_strongly_connected, shape_class, Family, Quiver, ShapeClass, Vertex};
use crate::wedge::wedge_power;

#[derive(Debug, Clone)]
pub struct ComponentReport {
    /// The component on its own quiver.
    pub coalgebra: MonomialCoalgebra,
    pub strongly_connected: bool,
    pub semiprime: Verdict,
    pub prime: Verdict,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    /// The admissible form that was classified.
    pub coalgebra: MonomialCoalgebra,
    pub truncation: usize,
    pub cell_bound: usize,
    pub semiprime: Verdict,
    pub prime: Verdict,
    pub hereditary: Verdict,
    pub serial: Verdict,
    pub string: Verdict,
    pub obstructions: Vec<Obstruction>,
    pub components: Vec<ComponentReport>,
}

impl ClassificationReport {
    pub fn quiver(&self) -> &Quiver {
        self.coalgebra.quiver()
    }

    pub fn verdicts(&self) -> [(&'static str, &Verdict); 5] {
        [
            ("semiprime", &self.semiprime),
            ("prime", &self.prime),
            ("hereditary", &self.hereditary),
            ("serial", &self.serial),
            ("string", &self.string),
        ]
    }

    /// Re-verifies every witness carried by a No verdict.
    pub fn verify(&self) -> Result<(), String> {
        let check = |c: &MonomialCoalgebra, v: &Verdict, what: &str| -> Result<(), String> {
            if let Verdict::No { witness, truncation, .. } = v {
                let res = match witness {
                    Witness::Component { index, inner } => {
                        let comp = self.components.get(*index).ok_or("component index out of range")?;
                        verify_witness(&comp.coalgebra, inner, *truncation)
                    }
                    w => verify_witness(c, w, *truncation),
                };
                res.map_err(|e| format!("{what}: {e}"))?;
            }
            Ok(())
        };
        for (what, v) in self.verdicts() {
            check(&self.coalgebra, v, what)?;
        }
        for (k, comp) in self.components.iter().enumerate() {
            check(&comp.coalgebra, &comp.semiprime, &format!("component {k} semiprime"))?;
            check(&comp.coalgebra, &comp.prime, &format!("component {k} prime"))?;
        }
        Ok(())
    }
}

impl Classifier {
    /// Classifies each connected component, combines the verdicts over the
    /// direct sum, re-verifies all witnesses and asserts that semiprime
    /// components are strongly connected.
    pub fn analyze(&self, m: &MonomialCoalgebra) -> Result<ClassificationReport, Error> {
        validate_monomial(m)?;
        let (c, _) = m.admissible_form();
        let q = c.quiver();
        if q.vertex_count() == 0 {
            return Err(Error::InvalidArgument("the zero coalgebra has nothing to classify".to_string()));
        }
        let mut components = Vec::new();
        for comp in q.connected_components() {
            let keep: BTreeSet<Vertex> = comp.iter().copied().collect();
            let (sub, _) = c.restrict_to_vertices(&keep).admissible_form();
            let strongly_connected = is_strongly_connected(sub.quiver()).iter().all(|(_, s)| *s);
            let semiprime = self.semiprime(&sub);
            let prime = self.prime(&sub);
            components.push(ComponentReport { coalgebra: sub, strongly_connected, semiprime, prime });
        }
        for comp in &components {
            if comp.semiprime.is_yes() && !comp.strongly_connected {
                return Err(Error::Consistency(format!(
                    "component on {} is semiprime but not strongly connected",
                    name_list(comp.coalgebra.quiver(), &comp.coalgebra.quiver().vertices().collect::<Vec<_>>())
                )));
            }
        }
        let semiprime = if components.len() == 1 { components[0].semiprime.clone() } else { combine(&components) };
        let prime = if components.len() == 1 {
            match (&components[0].semiprime, &components[0].prime) {
                (Verdict::No { witness, truncation, .. }, Verdict::Unknown { .. }) => {
                    Verdict::No { rule: Rule::NotSemiprime, witness: witness.clone(), truncation: *truncation }
                }
                (_, p) => p.clone(),
            }
        } else {
            self.prime(&c)
        };
        let report = ClassificationReport {
            truncation: self.truncation,
            cell_bound: self.cell_bound,
            semiprime,
            prime,
            hereditary: hereditary(&c)?,
            serial: serial(&c)?,
            string: string(&c)?,
            obstructions: wild_obstructions(&c),
            components,
            coalgebra: c,
        };
        report.verify().map_err(Error::Consistency)?;
        Ok(report)
    }
}

/// Semiprime over a direct sum: every summand semiprime.
fn combine(components: &[ComponentReport]) -> Verdict {
    if let Some((index, Verdict::No { witness, truncation, .. })) =
        components.iter().map(|c| &c.semiprime).enumerate().find(|(_, v)| v.is_no())
    {
        return Verdict::No {
            rule: Rule::DirectSum,
            witness: Witness::Component { index, inner: Box::new(witness.clone()) },
            truncation: *truncation,
        };
    }
    if let Some(k) = components.iter().position(|c| c.semiprime.is_unknown()) {
        return Verdict::Unknown { attempted: vec![Rule::DirectSum], evidence: format!("component {k} is undecided") };
    }
    let truncation = components.iter().filter_map(|c| c.semiprime.truncation()).max();
    Verdict::Yes {
        rule: Rule::DirectSum,
        evidence: format!("all {} components are semiprime", components.len()),
        truncation,
    }
}

/// Classification at the default cell bound.
pub fn analyze(c: &MonomialCoalgebra, n: usize) -> Result<ClassificationReport, Error> {
    Classifier::new(n).analyze(c)
}

/// Theorem-level consistency checks on a classified instance, each with its
/// outcome.
pub fn check_invariants(report: &ClassificationReport) -> Vec<(&'static str, Result<(), String>)> {
    let c = &report.coalgebra;
    let q = c.quiver();
    let n = report.truncation;
    let mut out = Vec::new();

    out.push(("witnesses re-verify", report.verify()));

    out.push((
        "semiprime components are strongly connected",
        match report.components.iter().find(|k| k.semiprime.is_yes() && !k.strongly_connected) {
            Some(_) => Err("a semiprime component is not strongly connected".to_string()),
            None => Ok(()),
        },
    ));

    out.push((
        "finite filtration: semiprime iff cosemisimple",
        match c.max_length() {
            Some(top) if report.semiprime.is_yes() != (top == 0) => {
                Err(format!("semiprime is {} with longest path {top}", report.semiprime.label()))
            }
            _ => Ok(()),
        },
    ));

    let cycles = shape_class(q).iter().all(|(_, s)| matches!(s, ShapeClass::Euclidean(Family::A(_))));
    out.push((
        "hereditary semiprime cycles are serial",
        if cycles && report.hereditary.is_yes() && report.semiprime.is_yes() && !report.serial.is_yes() {
            Err("hereditary semiprime cycle quiver classified non-serial".to_string())
        } else {
            Ok(())
        },
    ));

    out.push((
        "semiprime without obstructions is string",
        if report.semiprime.is_yes() && report.obstructions.is_empty() {
            match string_check(c) {
                Ok(None) => Ok(()),
                Ok(Some(v)) => Err(v.describe(q)),
                Err(e) => Err(e.to_string()),
            }
        } else {
            Ok(())
        },
    ));

    out.push(("Gabriel quiver by wedges equals arrow counts", gabriel_quiver_monomial(c, 1).map(|_| ()).map_err(|e| e.to_string())));

    let filtration = (|| {
        let tc = truncate(c, n);
        let s = socle(&tc);
        for k in 0..=n {
            let w = wedge_power(&s, k + 1, &tc).map_err(|e| e.to_string())?;
            let short: Vec<_> = c.enumerate(k);
            let span = tc.basis().span_of_paths(&short).map_err(|e| e.to_string())?;
            if w != span {
                return Err(format!("wedge power {} differs from paths of length at most {k}", k + 1));
            }
        }
        Ok(())
    })();
    out.push(("coradical filtration is the length filtration", filtration));

    out
}
