//! ASAP gate scheduling and the noise-insertion pass.
//!
//! Gates start as soon as every operand wire is free; one-qubit gates take
//! `tau_1q_ns` and two-qubit gates `tau_2q_ns`, except SWAP, which runs as
//! three CNOTs on hardware and therefore costs `3 * tau_2q_ns` and a
//! triple-composed depolarizing channel. All measurements happen
//! simultaneously at the end of the timeline, so every wire accumulates idle
//! time up to the makespan. The noise pass turns the timeline into a flat op
//! sequence: a depolarizing channel after each gate and amplitude damping
//! followed by pure dephasing over each idle interval (including the leading
//! idle before a wire's first gate).

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::Result;
use crate::noise::{
    amplitude_damping, depolarizing_1q, depolarizing_2q, pure_dephasing, KrausChannel,
    NoiseParameters, ReadoutPovm,
};

#[derive(Debug, Clone, PartialEq)]
pub struct TimedGate {
    pub gate: Gate,
    pub start_ns: f64,
    pub duration_ns: f64,
}

/// A maximal gap on one wire during which no gate acts on it.
#[derive(Debug, Clone, PartialEq)]
pub struct IdleInterval {
    pub wire: usize,
    pub start_ns: f64,
    pub duration_ns: f64,
}

#[derive(Debug, Clone)]
pub struct ScheduledCircuit {
    pub width: usize,
    pub gates: Vec<TimedGate>,
    pub idles: Vec<IdleInterval>,
    pub makespan_ns: f64,
    pub measured: Vec<usize>,
}

/// As-soon-as-possible scheduling with end-aligned measurement.
pub fn schedule_asap(circuit: &Circuit, params: &NoiseParameters) -> Result<ScheduledCircuit> {
    circuit.check_valid()?;
    params.validate()?;
    let n = circuit.width;
    let mut free_at = vec![0.0f64; n];
    let mut gates = Vec::with_capacity(circuit.gates.len());
    let mut idles = Vec::new();
    for g in &circuit.gates {
        let duration_ns = match g.kind {
            GateKind::Swap => 3.0 * params.tau_2q_ns,
            _ if g.qubits.len() == 1 => params.tau_1q_ns,
            _ => params.tau_2q_ns,
        };
        let start_ns = g.qubits.iter().map(|&q| free_at[q]).fold(0.0f64, f64::max);
        for &q in &g.qubits {
            if start_ns > free_at[q] {
                idles.push(IdleInterval {
                    wire: q,
                    start_ns: free_at[q],
                    duration_ns: start_ns - free_at[q],
                });
            }
            free_at[q] = start_ns + duration_ns;
        }
        gates.push(TimedGate { gate: g.clone(), start_ns, duration_ns });
    }
    let makespan_ns = free_at.iter().copied().fold(0.0f64, f64::max);
    for (w, &t) in free_at.iter().enumerate() {
        if makespan_ns > t {
            idles.push(IdleInterval { wire: w, start_ns: t, duration_ns: makespan_ns - t });
        }
    }
    idles.sort_by(|a, b| {
        a.start_ns.partial_cmp(&b.start_ns).unwrap().then(a.wire.cmp(&b.wire))
    });
    Ok(ScheduledCircuit {
        width: n,
        gates,
        idles,
        makespan_ns,
        measured: circuit.measured.clone(),
    })
}

/// One step of a noisy op sequence: either an ideal gate or a Kraus channel
/// acting on specific wires.
#[derive(Debug, Clone)]
pub enum NoisyOp {
    Unitary(Gate),
    Channel { kraus: KrausChannel, wires: Vec<usize> },
}

/// A time-ordered noisy op sequence plus the readout POVM applied to each
/// measured wire at the end.
#[derive(Debug, Clone)]
pub struct NoisyCircuit {
    pub width: usize,
    pub ops: Vec<NoisyOp>,
    pub measured: Vec<usize>,
    pub readout: ReadoutPovm,
}

impl NoisyCircuit {
    pub fn channel_count(&self) -> usize {
        self.ops.iter().filter(|op| matches!(op, NoisyOp::Channel { .. })).count()
    }
}

/// Inserts noise channels into a schedule. Identity channels (noiseless
/// parameters, zero-length idles) are dropped.
pub fn noise_pass(sched: &ScheduledCircuit, params: &NoiseParameters) -> Result<NoisyCircuit> {
    params.validate()?;
    let p1 = params.p_depol_1q()?;
    let p2 = params.p_depol_2q()?;
    let p_swap = params.p_depol_swap()?;
    let t1_ns = params.t1_ns();
    let t2_ns = params.t2_ns();

    // events carry a start-time key; stable sort keeps each gate's
    // depolarizing channel right behind it and each idle's damping ahead of
    // the gate that ends the idle
    let mut events: Vec<(f64, Vec<NoisyOp>)> = Vec::new();
    for tg in &sched.gates {
        let depol = match tg.gate.kind {
            GateKind::Swap => depolarizing_2q(p_swap)?,
            _ if tg.gate.qubits.len() == 1 => depolarizing_1q(p1)?,
            _ => depolarizing_2q(p2)?,
        };
        let mut ops = vec![NoisyOp::Unitary(tg.gate.clone())];
        if !depol.is_identity(1e-15) {
            ops.push(NoisyOp::Channel { kraus: depol, wires: tg.gate.qubits.clone() });
        }
        events.push((tg.start_ns, ops));
    }
    for idle in &sched.idles {
        let ad = amplitude_damping(idle.duration_ns, t1_ns)?;
        let pd = pure_dephasing(idle.duration_ns, t1_ns, t2_ns)?;
        let mut ops = Vec::new();
        if !ad.is_identity(1e-15) {
            ops.push(NoisyOp::Channel { kraus: ad, wires: vec![idle.wire] });
        }
        if !pd.is_identity(1e-15) {
            ops.push(NoisyOp::Channel { kraus: pd, wires: vec![idle.wire] });
        }
        if !ops.is_empty() {
            events.push((idle.start_ns, ops));
        }
    }
    events.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let ops = events.into_iter().flat_map(|(_, ops)| ops).collect();
    Ok(NoisyCircuit {
        width: sched.width,
        ops,
        measured: sched.measured.clone(),
        readout: params.readout()?,
    })
}
