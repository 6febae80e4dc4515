//! Graphviz export of sigtrees.

use super::RunResult;
use crate::monomial::Monomial;
use std::fmt::Write;

/// A DOT digraph of the run's sigtree. Nodes read `id: lm`, edges carry the
/// multiplier, and nodes whose leading monomial is in `highlight` are bold.
pub fn export_dot(result: &RunResult, highlight: &[Monomial]) -> String {
    let vars = &result.basis.ctx.vars;
    let mut out = String::from("digraph sigtree {\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (k, n) in result.tree.nodes().iter().enumerate().skip(1) {
        let Some(label) = n.label.as_ref() else { continue };
        let lm = label.lm();
        let text = if lm.is_zero() {
            "0".to_string()
        } else {
            lm.display(vars).to_string()
        };
        let sig = label.sig.to_string_with(&result.basis.ctx);
        let style = if !lm.is_zero() && highlight.contains(&lm) {
            ", style=bold"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  n{k} [label=\"{k}: {text}\", tooltip=\"{sig}\"{style}];"
        );
    }
    for (k, n) in result.tree.nodes().iter().enumerate().skip(1) {
        if let Some(p) = n.parent.filter(|&p| p != 0) {
            let _ = writeln!(
                out,
                "  n{p} -> n{k} [label=\"{}\"];",
                n.multiplier.display(vars)
            );
        }
    }
    out.push_str("}\n");
    out
}
