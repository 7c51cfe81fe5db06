//! OpenQASM 2.0 emission.

use crate::circuit::Circuit;

/// Emits OpenQASM 2.0 text for a circuit, one classical bit per measured
/// wire. `header_comments` lines are placed at the top as `//` comments
/// (used by fragment variants to document their readout bit order).
pub fn export_qasm_with_comments(c: &Circuit, header_comments: &[String]) -> String {
    let mut out = String::new();
    for line in header_comments {
        out.push_str("// ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    out.push_str(&format!("qreg q[{}];\n", c.width));
    if !c.measured.is_empty() {
        out.push_str(&format!("creg c[{}];\n", c.measured.len()));
    }
    for g in &c.gates {
        let args: Vec<String> = g.qubits.iter().map(|q| format!("q[{q}]")).collect();
        out.push_str(&format!("{} {};\n", g.kind.qasm_name(), args.join(",")));
    }
    for (i, &w) in c.measured.iter().enumerate() {
        out.push_str(&format!("measure q[{w}] -> c[{i}];\n"));
    }
    out
}

/// Emits OpenQASM 2.0 text for a circuit.
pub fn export_qasm(c: &Circuit) -> String {
    export_qasm_with_comments(c, &[])
}
