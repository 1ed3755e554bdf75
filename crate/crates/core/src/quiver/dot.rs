use std::fmt::Write;

use super::Quiver;

/// Graphs that render as a Graphviz `digraph`.
pub trait ToDot {
    /// Node names in output order.
    fn dot_nodes(&self) -> Vec<String>;
    /// `(source, target, label)` in output order.
    fn dot_edges(&self) -> Vec<(String, String, String)>;
}

fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// DOT text with one node statement per vertex and one labelled edge per
/// arrow, in declaration order. LF line endings.
pub fn to_dot<G: ToDot + ?Sized>(g: &G) -> String {
    let mut out = String::from("digraph Q {\n");
    for n in g.dot_nodes() {
        let _ = writeln!(out, "  {};", quoted(&n));
    }
    for (s, t, label) in g.dot_edges() {
        let _ = writeln!(out, "  {} -> {} [label={}];", quoted(&s), quoted(&t), quoted(&label));
    }
    out.push_str("}\n");
    out
}

impl ToDot for Quiver {
    fn dot_nodes(&self) -> Vec<String> {
        self.vertices().map(|v| self.vertex_name(v).to_string()).collect()
    }

    fn dot_edges(&self) -> Vec<(String, String, String)> {
        self.arrows()
            .map(|a| {
                (
                    self.vertex_name(self.source(a)).to_string(),
                    self.vertex_name(self.target(a)).to_string(),
                    self.arrow_id(a).to_string(),
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_and_line() {
        let one = Quiver::new(&["1"], &[]).unwrap();
        assert_eq!(to_dot(&one), "digraph Q {\n  \"1\";\n}\n");

        let a3 = Quiver::new(&["1", "2", "3"], &[("alpha", "1", "2"), ("beta", "2", "3")]).unwrap();
        let dot = to_dot(&a3);
        let edges: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
        assert_eq!(
            edges,
            [r#"  "1" -> "2" [label="alpha"];"#, r#"  "2" -> "3" [label="beta"];"#]
        );
    }

    #[test]
    fn names_are_escaped() {
        let q = Quiver::new(&["a\"b"], &[]).unwrap();
        assert!(to_dot(&q).contains(r#""a\"b";"#));
    }
}
