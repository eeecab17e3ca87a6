use std::fmt::Write;

use continua::{Continuum, Result};

fn quote(id: &str) -> String {
    format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The undirected graph of `R_n` without self-loops, nodes and edges in
/// carrier order.
pub fn export_dot(c: &Continuum, n: usize, name: &str) -> Result<String> {
    let rel = c.relation(n)?;
    let carrier = c.carrier();
    let mut out = String::new();
    writeln!(out, "graph {} {{", quote(&format!("{name}_level_{n}"))).unwrap();
    for x in 0..c.size() {
        writeln!(out, "  {};", quote(carrier.id(x))).unwrap();
    }
    for x in 0..c.size() {
        for y in rel.row(x).iter().filter(|&y| y > x) {
            writeln!(out, "  {} -- {};", quote(carrier.id(x)), quote(carrier.id(y))).unwrap();
        }
    }
    out.push_str("}\n");
    Ok(out)
}
