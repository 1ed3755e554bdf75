use std::collections::BTreeSet;
use std::fmt::Write;

use coalg::classify::{check_invariants, ClassificationReport, Classifier};
use coalg::gabriel::{gabriel_quiver_monomial, localize_monomial, localize_quiver, predecessor_count, predecessor_degree};
use coalg::linear::{truncate, PathBasis};
use coalg::monomial::wedge_monomial;
use coalg::quiver::to_dot;
use coalg::wedge::{coradical_filtration, wedge_xcheck};
use coalg::{MonomialCoalgebra, Vertex};
use serde::Serialize;

use crate::json::{self, CheckJson};
use crate::text;
use crate::workspace::{quiver_doc, word, QuiverDoc, Workspace, MAIN};
use crate::CliError;

/// What a command produced. Violations turn into exit code 2 after all
/// output has been written.
#[derive(Debug, Default)]
pub struct Outcome {
    pub text: String,
    pub json: Option<String>,
    pub dot: Option<String>,
    pub violations: Vec<String>,
}

fn classifier(ws: &Workspace) -> Classifier {
    Classifier { truncation: ws.truncation, cell_bound: ws.cell_bound }
}

fn report(ws: &Workspace) -> Result<ClassificationReport, CliError> {
    classifier(ws).analyze(&ws.coalgebra).map_err(CliError::from)
}

pub fn classify(ws: &Workspace) -> Result<Outcome, CliError> {
    let r = report(ws)?;
    Ok(Outcome {
        text: text::classification(&r),
        json: Some(json::to_text(&json::classification_json(&r))),
        dot: Some(to_dot(r.quiver())),
        violations: Vec::new(),
    })
}

fn length_dims(c: &MonomialCoalgebra, n: usize) -> Vec<usize> {
    let mut dims = vec![0; n + 1];
    for p in c.enumerate(n) {
        dims[p.len()] += 1;
    }
    dims
}

fn checks_json(checks: &[(String, Result<(), String>)]) -> Vec<CheckJson> {
    checks
        .iter()
        .map(|(name, res)| CheckJson { name: name.clone(), ok: res.is_ok(), detail: res.clone().err() })
        .collect()
}

fn check_lines(out: &mut String, checks: &[(String, Result<(), String>)]) {
    for (name, res) in checks {
        let _ = match res {
            Ok(()) => writeln!(out, "  ok    {name}"),
            Err(e) => writeln!(out, "  FAIL  {name}: {e}"),
        };
    }
}

fn failures(checks: &[(String, Result<(), String>)]) -> Vec<String> {
    checks.iter().filter_map(|(name, res)| res.as_ref().err().map(|e| format!("{name}: {e}"))).collect()
}

pub fn analyze(ws: &Workspace) -> Result<Outcome, CliError> {
    let r = report(ws)?;
    let c = &r.coalgebra;
    let n = ws.truncation;
    let dimensions = length_dims(c, n);
    let gabriel = gabriel_quiver_monomial(c, n)?;
    let checks: Vec<(String, Result<(), String>)> =
        check_invariants(&r).into_iter().map(|(name, res)| (name.to_string(), res)).collect();

    let mut out = text::classification(&r);
    let dims: Vec<String> = dimensions.iter().map(usize::to_string).collect();
    let _ = writeln!(out, "paths by length 0..={n}: {}", dims.join(", "));
    let _ = writeln!(out, "Gabriel quiver: {gabriel}");
    out.push_str("invariants:\n");
    check_lines(&mut out, &checks);

    let analysis = json::AnalysisJson {
        classification: json::classification_json(&r),
        dimensions,
        gabriel: json::valued_quiver_json(&gabriel),
        invariants: checks_json(&checks),
    };
    Ok(Outcome {
        text: out,
        json: Some(json::to_text(&analysis)),
        dot: Some(to_dot(r.quiver())),
        violations: failures(&checks),
    })
}

#[derive(Serialize)]
struct WedgeJson {
    left: String,
    right: String,
    truncation: usize,
    paths: Vec<Vec<String>>,
    equals_coalgebra: bool,
    linear_agrees: bool,
}

pub fn wedge(ws: &Workspace, left: &str, right: &str) -> Result<Outcome, CliError> {
    let (a, b, c) = (ws.get(left)?, ws.get(right)?, &ws.coalgebra);
    let n = ws.truncation;
    let q = &ws.quiver;
    let paths = wedge_monomial(a, b, c, n).map_err(coalg::Error::from)?;
    let xcheck = wedge_xcheck(a, b, c, n)?;
    let members = c.enumerate(n);
    let equal = paths == members;

    let mut out = String::new();
    if equal {
        let _ = writeln!(out, "{left}∧{right} = {MAIN} up to truncation {n}");
    } else {
        let shown: Vec<String> = paths.iter().map(|p| p.display(q).to_string()).collect();
        let _ = writeln!(out, "{left}∧{right} ≠ {MAIN} up to truncation {n}");
        let _ = writeln!(out, "  {left}∧{right} = {}", shown.join(", "));
        if let Some(p) = members.iter().find(|p| !paths.contains(p)) {
            let _ = writeln!(out, "  {} lies in {MAIN} but not in {left}∧{right}", p.display(q));
        }
    }
    let mut violations = Vec::new();
    if xcheck.agrees {
        out.push_str("  the linear wedge agrees\n");
    } else {
        let diff: Vec<String> = xcheck.discrepancy.iter().map(|v| xcheck.basis.format_vector(v)).collect();
        violations.push(format!("combinatorial and linear wedges differ on {}", diff.join(", ")));
    }
    let payload = WedgeJson {
        left: left.to_string(),
        right: right.to_string(),
        truncation: n,
        paths: paths.iter().map(|p| word(q, p)).collect(),
        equals_coalgebra: equal,
        linear_agrees: xcheck.agrees,
    };
    Ok(Outcome { text: out, json: Some(json::to_text(&payload)), dot: None, violations })
}

pub fn gabriel(ws: &Workspace) -> Result<Outcome, CliError> {
    let n = ws.truncation;
    let g = match gabriel_quiver_monomial(&ws.coalgebra, n) {
        Ok(g) => g,
        Err(coalg::Error::Consistency(e)) => {
            return Ok(Outcome { violations: vec![e], ..Outcome::default() });
        }
        Err(e) => return Err(e.into()),
    };
    let mut out = format!("Gabriel quiver by wedges at N={}, equal to the arrow counts\n", n.max(1));
    let names: Vec<&str> = g.vertices.iter().map(|(_, s)| s.as_str()).collect();
    let _ = writeln!(out, "  vertices: {}", names.join(", "));
    let name = |v: Vertex| ws.quiver.vertex_name(v);
    for (&(s, t), &(d1, d2)) in &g.arrows {
        let _ = writeln!(out, "  {} -> {} ({d1},{d2})", name(s), name(t));
    }
    Ok(Outcome {
        text: out,
        json: Some(json::to_text(&json::valued_quiver_json(&g))),
        dot: Some(to_dot(&g)),
        violations: Vec::new(),
    })
}

#[derive(Serialize)]
struct CellJson {
    id: String,
    path: Vec<String>,
}

#[derive(Serialize)]
struct LocalizeJson {
    vertices: Vec<String>,
    cell_bound: usize,
    truncated: bool,
    quiver: QuiverDoc,
    cells: Vec<CellJson>,
    truncation: usize,
    degree_dims: Vec<usize>,
}

pub fn localize(ws: &Workspace, keep: &[String]) -> Result<Outcome, CliError> {
    let x: BTreeSet<Vertex> = keep.iter().map(|k| ws.vertex(k)).collect::<Result<_, _>>()?;
    let q = &ws.quiver;
    let loc = localize_quiver(q, &x, ws.cell_bound)?;
    let lc = localize_monomial(&ws.coalgebra, &x, ws.truncation)?;
    let names: Vec<&str> = x.iter().map(|v| q.vertex_name(*v)).collect();

    let mut out = format!("localized at {} (cell bound {})\n", names.join(","), ws.cell_bound);
    let lq = &loc.quiver;
    for (a, cell) in lq.arrows().zip(&loc.cells) {
        let _ = writeln!(
            out,
            "  {} -> {}  {}",
            lq.vertex_name(lq.source(a)),
            lq.vertex_name(lq.target(a)),
            if lq.arrow_id(a) == cell.display(q).to_string() {
                lq.arrow_id(a).to_string()
            } else {
                format!("{} = {}", lq.arrow_id(a), cell.display(q))
            }
        );
    }
    if loc.truncated {
        let _ = writeln!(out, "  cells longer than {} exist and are omitted", ws.cell_bound);
    }
    let dims: Vec<String> = lc.degree_dims().iter().map(usize::to_string).collect();
    let _ = writeln!(out, "eCe up to N={}: dimension {}, by cell degree {}", ws.truncation, lc.dim(), dims.join(", "));
    let mut violations = Vec::new();
    match lc.check_isomorphism(&ws.coalgebra, &loc) {
        Ok(()) => out.push_str("  comultiplication matches the cell words\n"),
        Err(e) => violations.push(format!("localization is not isomorphic to cell words: {e}")),
    }
    let payload = LocalizeJson {
        vertices: names.iter().map(|s| s.to_string()).collect(),
        cell_bound: ws.cell_bound,
        truncated: loc.truncated,
        quiver: quiver_doc(lq),
        cells: lq.arrows().zip(&loc.cells).map(|(a, p)| CellJson { id: lq.arrow_id(a).to_string(), path: word(q, p) }).collect(),
        truncation: ws.truncation,
        degree_dims: lc.degree_dims(),
    };
    Ok(Outcome { text: out, json: Some(json::to_text(&payload)), dot: Some(to_dot(lq)), violations })
}

#[derive(Serialize)]
struct LayerJson {
    index: usize,
    dim: usize,
    equals_length_filtration: bool,
}

#[derive(Serialize)]
struct PredecessorJson {
    depth: usize,
    hull_of: String,
    simple: String,
    copies: usize,
}

#[derive(Serialize)]
struct FiltrationJson {
    truncation: usize,
    layers: Vec<LayerJson>,
    predecessors: Vec<PredecessorJson>,
}

pub fn filtration(ws: &Workspace, max: usize) -> Result<Outcome, CliError> {
    let n = ws.truncation;
    if max > 0 && n < max + 1 {
        return Err(CliError::Input(format!(
            "truncation {n} too small for predecessor depth {max}; need at least {}",
            max + 1
        )));
    }
    let (c, _) = ws.coalgebra.admissible_form();
    let q = c.quiver();
    let basis = PathBasis::new(q, n);
    let tc = truncate(&c, n);
    let mut out = format!("coradical filtration at N={n}\n");
    let mut violations = Vec::new();
    let mut layers = Vec::new();
    for (k, layer) in coradical_filtration(&tc, max).into_iter().enumerate() {
        let by_length = basis.span_of_paths(&c.enumerate(k))?;
        let equal = layer == by_length;
        let _ = writeln!(
            out,
            "  C_{k}: dim {}{}",
            layer.dim(),
            if equal { format!(", the paths of length at most {k}") } else { String::new() }
        );
        if !equal {
            violations.push(format!("C_{k} differs from the span of paths of length at most {k}"));
        }
        layers.push(LayerJson { index: k, dim: layer.dim(), equals_length_filtration: equal });
    }
    let mut predecessors = Vec::new();
    if max > 0 {
        out.push_str("predecessors (copies of S_j in layer n+1 of the injective hull of S_i):\n");
    }
    for depth in 1..=max {
        for &i in c.support() {
            for &j in c.support() {
                let d = predecessor_degree(&tc, i, j, depth)?;
                let count = predecessor_count(&c, i, j, depth);
                if d != count {
                    violations.push(format!(
                        "depth {depth}, i={}, j={}: wedge gives {d}, path count gives {count}",
                        q.vertex_name(i),
                        q.vertex_name(j)
                    ));
                }
                if d > 0 {
                    let _ = writeln!(out, "  n={depth}: i={} j={} copies {d}", q.vertex_name(i), q.vertex_name(j));
                    predecessors.push(PredecessorJson {
                        depth,
                        hull_of: q.vertex_name(i).to_string(),
                        simple: q.vertex_name(j).to_string(),
                        copies: d,
                    });
                }
            }
        }
    }
    let payload = FiltrationJson { truncation: n, layers, predecessors };
    Ok(Outcome { text: out, json: Some(json::to_text(&payload)), dot: None, violations })
}

/// Every cross-check available on the loaded instance.
pub fn check(ws: &Workspace) -> Result<Outcome, CliError> {
    let n = ws.truncation;
    let mut checks: Vec<(String, Result<(), String>)> = Vec::new();

    let round_trip = Workspace::parse(&ws.to_json()).map_err(|e| e.to_string()).and_then(|back| {
        if &back == ws {
            Ok(())
        } else {
            Err("re-parsed workspace differs".to_string())
        }
    });
    checks.push(("workspace round trip".to_string(), round_trip));

    match report(ws) {
        Ok(r) => checks.extend(check_invariants(&r).into_iter().map(|(name, res)| (name.to_string(), res))),
        Err(e) => checks.push(("classification".to_string(), Err(e.to_string()))),
    }

    let names: Vec<&str> = std::iter::once(MAIN).chain(ws.subcoalgebras.keys().map(String::as_str)).collect();
    for l in &names {
        for r in &names {
            let res = wedge_xcheck(ws.get(l)?, ws.get(r)?, &ws.coalgebra, n).map_err(|e| e.to_string()).and_then(|x| {
                if x.agrees {
                    Ok(())
                } else {
                    Err(format!("{} discrepant vectors", x.discrepancy.len()))
                }
            });
            checks.push((format!("wedge {l}∧{r}: combinatorial equals linear"), res));
        }
    }

    for name in &names {
        let m = ws.get(name)?;
        let res = gabriel_quiver_monomial(m, n).map(|_| ()).map_err(|e| e.to_string());
        checks.push((format!("Gabriel quiver of {name}: wedges equal arrow counts"), res));
    }

    let q = &ws.quiver;
    let mut sets: Vec<BTreeSet<Vertex>> = q.vertices().map(|v| BTreeSet::from([v])).collect();
    if q.vertex_count() > 1 {
        sets.push(q.vertices().collect());
    }
    for x in sets {
        let label: Vec<&str> = x.iter().map(|v| q.vertex_name(*v)).collect();
        let res = localize_quiver(q, &x, ws.cell_bound)
            .and_then(|loc| Ok((localize_monomial(&ws.coalgebra, &x, n)?, loc)))
            .map_err(|e| e.to_string())
            .and_then(|(lc, loc)| lc.check_isomorphism(&ws.coalgebra, &loc));
        checks.push((format!("localization at {}: cell words", label.join(",")), res));
    }

    let mut out = String::new();
    check_lines(&mut out, &checks);
    let failed = failures(&checks);
    let _ = writeln!(out, "{} checks, {} failed", checks.len(), failed.len());
    Ok(Outcome { text: out, json: Some(json::to_text(&checks_json(&checks))), dot: None, violations: failed })
}
