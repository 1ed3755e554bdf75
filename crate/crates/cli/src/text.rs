//! Human-readable report lines.

use std::fmt::Write;

use coalg::classify::{listing, ClassificationReport, Verdict, Witness};
use coalg::{MonomialCoalgebra, Quiver};

/// Paths shown per listing before eliding the rest.
const SHOWN: usize = 12;

pub fn path_list(m: &MonomialCoalgebra, n: usize) -> String {
    let all = listing(m, n);
    if all.len() <= SHOWN {
        return all.join(", ");
    }
    format!("{}, … ({} more)", all[..SHOWN].join(", "), all.len() - SHOWN)
}

pub fn quiver_line(q: &Quiver) -> String {
    let vs: Vec<&str> = q.vertices().map(|v| q.vertex_name(v)).collect();
    let arrows: Vec<String> = q
        .arrows()
        .map(|a| format!("{}: {} -> {}", q.arrow_id(a), q.vertex_name(q.source(a)), q.vertex_name(q.target(a))))
        .collect();
    let count = |k: usize, one: &str, many: &str| if k == 1 { format!("1 {one}") } else { format!("{k} {many}") };
    let mut s = format!("quiver: {}, {}", count(vs.len(), "vertex", "vertices"), count(arrows.len(), "arrow", "arrows"));
    let _ = write!(s, " [{}]", vs.join(", "));
    if !arrows.is_empty() {
        let _ = write!(s, " {{{}}}", arrows.join("; "));
    }
    s
}

pub fn witness_lines(c: &MonomialCoalgebra, w: &Witness, n: usize, components: &[&MonomialCoalgebra], indent: &str) -> Vec<String> {
    let q = c.quiver();
    match w {
        Witness::Square { a } => vec![format!("{indent}A = {}", path_list(a, n))],
        Witness::Pair { a, b } => {
            vec![format!("{indent}A = {}", path_list(a, n)), format!("{indent}B = {}", path_list(b, n))]
        }
        Witness::Localized { vertices, cell_bound, local, a } => {
            let names: Vec<&str> = vertices.iter().map(|v| q.vertex_name(*v)).collect();
            let top = local.max_length().unwrap_or(n);
            vec![
                format!("{indent}localized at {} (cell bound {cell_bound})", names.join(",")),
                format!("{indent}{}", quiver_line(local.quiver())),
                format!("{indent}eCe = {}", path_list(local, top)),
                format!("{indent}A = {}", path_list(a, top)),
            ]
        }
        Witness::Component { index, inner } => {
            let comp = components.get(*index).copied().unwrap_or(c);
            let mut out = vec![format!("{indent}in component {index}:")];
            out.extend(witness_lines(comp, inner, n, &[], &format!("{indent}  ")));
            out
        }
        Witness::MissingPath(p) => vec![format!("{indent}missing path {}", p.display(q))],
        Witness::StringViolation(v) => vec![format!("{indent}condition ({}): {}", v.condition(), v.describe(q))],
        Witness::Shape { from, to, label, reason } => vec![format!(
            "{indent}arrow {} -> {} labelled ({},{}): {reason}",
            q.vertex_name(*from),
            q.vertex_name(*to),
            label.0,
            label.1
        )],
    }
}

pub fn verdict_lines(name: &str, c: &MonomialCoalgebra, v: &Verdict, components: &[&MonomialCoalgebra]) -> Vec<String> {
    let mut out = vec![format!("{name:<11} {}", v.summary())];
    let indent = " ".repeat(14);
    match v {
        Verdict::No { witness, truncation, .. } => out.extend(witness_lines(c, witness, *truncation, components, &indent)),
        Verdict::Yes { evidence, .. } | Verdict::Unknown { evidence, .. } => out.push(format!("{indent}{evidence}")),
    }
    out
}

pub fn classification(r: &ClassificationReport) -> String {
    let c = &r.coalgebra;
    let comps: Vec<&MonomialCoalgebra> = r.components.iter().map(|k| &k.coalgebra).collect();
    let mut out = String::new();
    let _ = writeln!(out, "{}", quiver_line(c.quiver()));
    let _ = writeln!(out, "truncation N={}, cell bound {}", r.truncation, r.cell_bound);
    for (name, v) in r.verdicts() {
        for line in verdict_lines(name, c, v, &comps) {
            let _ = writeln!(out, "{line}");
        }
    }
    if r.obstructions.is_empty() {
        out.push_str("obstructions: none\n");
    } else {
        out.push_str("obstructions:\n");
        for o in &r.obstructions {
            let _ = writeln!(out, "  {}: {}", o.tag, o.location(c.quiver()));
        }
    }
    if r.components.len() > 1 {
        out.push_str("components:\n");
        for (k, comp) in r.components.iter().enumerate() {
            let kq = comp.coalgebra.quiver();
            let vs: Vec<&str> = kq.vertices().map(|v| kq.vertex_name(v)).collect();
            let strong = if comp.strongly_connected { "strongly connected" } else { "not strongly connected" };
            let _ = writeln!(
                out,
                "  {k} [{}] {strong}; semiprime {}; prime {}",
                vs.join(", "),
                comp.semiprime.summary(),
                comp.prime.summary()
            );
        }
    }
    out
}
