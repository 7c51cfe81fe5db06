//! Circuit intermediate representation and the GHZ-chain benchmark generator.
//!
//! Bitstring convention used throughout the crate: wire 0 is the leftmost
//! character of a bitstring, and the most significant bit of an integer index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    Cnot,
    Swap,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Swap => 2,
            _ => 1,
        }
    }

    pub fn qasm_name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::Cnot => "cx",
            GateKind::Swap => "swap",
        }
    }
}

/// A single gate application. `qubits` holds 1 or 2 wire indices; for CNOT
/// the first entry is the control.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Self {
        Gate { kind, qubits }
    }

    pub fn h(q: usize) -> Self {
        Gate::new(GateKind::H, vec![q])
    }
    pub fn x(q: usize) -> Self {
        Gate::new(GateKind::X, vec![q])
    }
    pub fn y(q: usize) -> Self {
        Gate::new(GateKind::Y, vec![q])
    }
    pub fn z(q: usize) -> Self {
        Gate::new(GateKind::Z, vec![q])
    }
    pub fn s(q: usize) -> Self {
        Gate::new(GateKind::S, vec![q])
    }
    pub fn sdg(q: usize) -> Self {
        Gate::new(GateKind::Sdg, vec![q])
    }
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::new(GateKind::Cnot, vec![control, target])
    }
    pub fn swap(a: usize, b: usize) -> Self {
        Gate::new(GateKind::Swap, vec![a, b])
    }

    pub fn acts_on(&self, wire: usize) -> bool {
        self.qubits.contains(&wire)
    }
}

/// An ordered gate list over `width` wires plus terminal measurements.
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    pub width: usize,
    pub gates: Vec<Gate>,
    /// Wire indices read out at the end, in classical bit order.
    pub measured: Vec<usize>,
}

/// A point where a wire is severed: after the gate at index `position`
/// (which must act on `wire`), before the next gate on that wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WireCut {
    pub wire: usize,
    pub position: usize,
}

/// One invariant violation found by [`Circuit::validate`]. Violations are
/// data, not failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Arity { gate: usize, expected: usize, found: usize },
    DuplicateOperand { gate: usize, wire: usize },
    WireOutOfRange { gate: usize, wire: usize, width: usize },
    MeasureOutOfRange { wire: usize, width: usize },
    DuplicateMeasurement { wire: usize },
    ZeroWidth,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Arity { gate, expected, found } => {
                write!(f, "gate {gate}: expected {expected} operands, found {found}")
            }
            Violation::DuplicateOperand { gate, wire } => {
                write!(f, "gate {gate}: duplicate operand wire {wire}")
            }
            Violation::WireOutOfRange { gate, wire, width } => {
                write!(f, "gate {gate}: wire {wire} out of range for width {width}")
            }
            Violation::MeasureOutOfRange { wire, width } => {
                write!(f, "measurement wire {wire} out of range for width {width}")
            }
            Violation::DuplicateMeasurement { wire } => {
                write!(f, "wire {wire} measured more than once")
            }
            Violation::ZeroWidth => write!(f, "circuit width must be at least 1"),
        }
    }
}

impl Circuit {
    pub fn new(width: usize, gates: Vec<Gate>, measured: Vec<usize>) -> Self {
        Circuit { width, gates, measured }
    }

    /// Collects all invariant violations: operand arity, wire ranges and
    /// duplicate measurements. An empty list means the circuit is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.width == 0 {
            out.push(Violation::ZeroWidth);
        }
        for (i, g) in self.gates.iter().enumerate() {
            let expected = g.kind.arity();
            if g.qubits.len() != expected {
                out.push(Violation::Arity { gate: i, expected, found: g.qubits.len() });
            }
            if g.qubits.len() == 2 && g.qubits[0] == g.qubits[1] {
                out.push(Violation::DuplicateOperand { gate: i, wire: g.qubits[0] });
            }
            for &w in &g.qubits {
                if w >= self.width {
                    out.push(Violation::WireOutOfRange { gate: i, wire: w, width: self.width });
                }
            }
        }
        let mut seen = vec![false; self.width];
        for &w in &self.measured {
            if w >= self.width {
                out.push(Violation::MeasureOutOfRange { wire: w, width: self.width });
            } else if seen[w] {
                out.push(Violation::DuplicateMeasurement { wire: w });
            } else {
                seen[w] = true;
            }
        }
        out
    }

    pub fn check_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            Err(Error::InvalidArgument(msgs.join("; ")))
        }
    }

    /// Gate indices acting on each wire, in circuit order.
    pub fn wire_gates(&self) -> Vec<Vec<usize>> {
        let mut per_wire = vec![Vec::new(); self.width];
        for (i, g) in self.gates.iter().enumerate() {
            for &w in &g.qubits {
                per_wire[w].push(i);
            }
        }
        per_wire
    }
}

/// Builds the GHZ-chain benchmark: H(0); CNOT(i, i+1) down the chain; X on
/// the back half; measure every wire. The ideal output is an equal
/// superposition of 0…01…1 and its complement (global phase +1).
///
/// Both even and odd qubit counts are accepted; for odd `m` the back half is
/// the shorter one (the ideal strings are 0^ceil(m/2) 1^floor(m/2) and its
/// flip).
pub fn build_ghz_chain(m: usize) -> Result<Circuit> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "GHZ chain needs at least 2 qubits, got {m}"
        )));
    }
    let mut gates = vec![Gate::h(0)];
    for i in 0..m - 1 {
        gates.push(Gate::cnot(i, i + 1));
    }
    for j in m.div_ceil(2)..m {
        gates.push(Gate::x(j));
    }
    Ok(Circuit::new(m, gates, (0..m).collect()))
}

/// The two ideal GHZ-chain bitstrings for `m` wires, as integer indices with
/// wire 0 as the most significant bit: 0^ceil(m/2) 1^floor(m/2) and its flip.
pub fn ghz_success_indices(m: usize) -> (u64, u64) {
    let half = m.div_ceil(2);
    let low = (1u64 << (m - half)) - 1; // 0...01...1
    let high = ((1u64 << m) - 1) ^ low; // 1...10...0
    (low, high)
}

/// Formats an integer outcome index as a bitstring, first bit leftmost.
pub fn index_to_bitstring(index: u64, bits: usize) -> String {
    (0..bits)
        .map(|i| if (index >> (bits - 1 - i)) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a bitstring (first bit leftmost) back to an integer index.
pub fn bitstring_to_index(s: &str) -> Result<u64> {
    let mut v = 0u64;
    for c in s.chars() {
        v = (v << 1)
            | match c {
                '0' => 0,
                '1' => 1,
                _ => return Err(Error::Schema(format!("invalid bitstring {s:?}"))),
            };
    }
    Ok(v)
}
