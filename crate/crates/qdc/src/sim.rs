//! Exact density-matrix simulation, stochastic Kraus-unraveled trajectories,
//! and the noiseless statevector oracle.
//!
//! Index convention: wire 0 is the most significant bit of a state index, so
//! the binary rendering of an index (width n) is the bitstring with wire 0
//! leftmost. Measured-bit tables use the circuit's `measured` order, first
//! listed wire leftmost.

use std::collections::BTreeMap;

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::circuit::{bitstring_to_index, index_to_bitstring, Circuit, GateKind};
use crate::error::{Error, Result};
use crate::noise::ReadoutPovm;
use crate::schedule::{NoisyCircuit, NoisyOp};

/// Dense density matrices beyond this width are refused (~268 MB at 12).
pub const MAX_DENSE_WIRES: usize = 12;
/// Statevector bound for trajectories and the oracle.
pub const MAX_STATEVECTOR_WIRES: usize = 26;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The unitary matrix of a gate; for two-qubit gates the first operand is
/// the most significant sub-index bit.
pub fn gate_matrix(kind: GateKind) -> Array2<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match kind {
        GateKind::H => Array2::from_shape_vec((2, 2), vec![c(s), c(s), c(s), c(-s)]).unwrap(),
        GateKind::X => Array2::from_shape_vec((2, 2), vec![c(0.), c(1.), c(1.), c(0.)]).unwrap(),
        GateKind::Y => Array2::from_shape_vec(
            (2, 2),
            vec![c(0.), Complex64::new(0., -1.), Complex64::new(0., 1.), c(0.)],
        )
        .unwrap(),
        GateKind::Z => Array2::from_shape_vec((2, 2), vec![c(1.), c(0.), c(0.), c(-1.)]).unwrap(),
        GateKind::S => Array2::from_shape_vec(
            (2, 2),
            vec![c(1.), c(0.), c(0.), Complex64::new(0., 1.)],
        )
        .unwrap(),
        GateKind::Sdg => Array2::from_shape_vec(
            (2, 2),
            vec![c(1.), c(0.), c(0.), Complex64::new(0., -1.)],
        )
        .unwrap(),
        GateKind::Cnot => Array2::from_shape_vec(
            (4, 4),
            vec![
                c(1.), c(0.), c(0.), c(0.),
                c(0.), c(1.), c(0.), c(0.),
                c(0.), c(0.), c(0.), c(1.),
                c(0.), c(0.), c(1.), c(0.),
            ],
        )
        .unwrap(),
        GateKind::Swap => Array2::from_shape_vec(
            (4, 4),
            vec![
                c(1.), c(0.), c(0.), c(0.),
                c(0.), c(0.), c(1.), c(0.),
                c(0.), c(1.), c(0.), c(0.),
                c(0.), c(0.), c(0.), c(1.),
            ],
        )
        .unwrap(),
    }
}

fn bit_positions(wires: &[usize], n: usize) -> Vec<usize> {
    wires.iter().map(|&w| n - 1 - w).collect()
}

/// Offset of each local sub-index within a full state index; sub-index bit
/// (k-1-j) belongs to `wires[j]`.
fn sub_offsets(positions: &[usize]) -> Vec<usize> {
    let k = positions.len();
    let d = 1usize << k;
    (0..d)
        .map(|s| {
            positions
                .iter()
                .enumerate()
                .map(|(j, &p)| ((s >> (k - 1 - j)) & 1) << p)
                .sum()
        })
        .collect()
}

/// All state indices whose bits at `positions` are zero.
fn rest_indices(positions: &[usize], n: usize) -> Vec<usize> {
    let mask: usize = positions.iter().map(|&p| 1usize << p).sum();
    (0..1usize << n).filter(|idx| idx & mask == 0).collect()
}

// ---------------------------------------------------------------------------
// statevector backend
// ---------------------------------------------------------------------------

pub fn apply_unitary_sv(psi: &mut [Complex64], u: &Array2<Complex64>, wires: &[usize], n: usize) {
    let k = wires.len();
    let d = 1usize << k;
    let positions = bit_positions(wires, n);
    let offs = sub_offsets(&positions);
    let rests = rest_indices(&positions, n);
    let mut buf = vec![Complex64::ZERO; d];
    for &r in &rests {
        for s in 0..d {
            buf[s] = psi[r + offs[s]];
        }
        for s in 0..d {
            let mut acc = Complex64::ZERO;
            for t in 0..d {
                acc += u[[s, t]] * buf[t];
            }
            psi[r + offs[s]] = acc;
        }
    }
}

/// Exact amplitudes of U|0...0> for a noiseless circuit: the independent
/// ground truth used throughout the tests.
pub fn statevector_oracle(circuit: &Circuit) -> Result<Vec<Complex64>> {
    circuit.check_valid()?;
    let n = circuit.width;
    if n > MAX_STATEVECTOR_WIRES {
        return Err(Error::Capacity(format!(
            "{n} wires exceed the statevector bound of {MAX_STATEVECTOR_WIRES}"
        )));
    }
    let mut psi = vec![Complex64::ZERO; 1 << n];
    psi[0] = c(1.0);
    for g in &circuit.gates {
        apply_unitary_sv(&mut psi, &gate_matrix(g.kind), &g.qubits, n);
    }
    Ok(psi)
}

/// Projective outcome distribution over the measured wires of a noiseless
/// circuit, in measured order.
pub fn oracle_distribution(circuit: &Circuit) -> Result<ProbTable> {
    let psi = statevector_oracle(circuit)?;
    let n = circuit.width;
    let mm = circuit.measured.len();
    let mut probs = vec![0.0; 1 << mm];
    for (z, amp) in psi.iter().enumerate() {
        let p = amp.norm_sqr();
        if p == 0.0 {
            continue;
        }
        let mut o = 0usize;
        for &w in &circuit.measured {
            o = (o << 1) | ((z >> (n - 1 - w)) & 1);
        }
        probs[o] += p;
    }
    Ok(ProbTable { n_bits: mm, probs })
}

// ---------------------------------------------------------------------------
// probability and count tables
// ---------------------------------------------------------------------------

/// A dense bitstring -> probability map over `n_bits` readout bits.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbTable {
    pub n_bits: usize,
    pub probs: Vec<f64>,
}

impl ProbTable {
    pub fn new(n_bits: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != 1 << n_bits {
            return Err(Error::InvalidArgument(format!(
                "table length {} does not match {n_bits} bits",
                probs.len()
            )));
        }
        Ok(ProbTable { n_bits, probs })
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn check_normalized(&self, tol: f64) -> Result<()> {
        for &p in &self.probs {
            if p < -1e-12 {
                return Err(Error::Invariant(format!("negative probability {p}")));
            }
        }
        let t = self.total();
        if (t - 1.0).abs() > tol {
            return Err(Error::Invariant(format!("table sums to {t}, not 1")));
        }
        Ok(())
    }

    pub fn total_variation(&self, other: &ProbTable) -> f64 {
        assert_eq!(self.n_bits, other.n_bits);
        0.5 * self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
    }

    /// Nonzero entries as a bitstring map (first readout bit leftmost).
    pub fn to_map(&self) -> BTreeMap<String, f64> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != 0.0)
            .map(|(i, &p)| (index_to_bitstring(i as u64, self.n_bits), p))
            .collect()
    }
}

/// Sampled measurement outcomes: bitstring -> count, with a fixed shot total.
#[derive(Debug, Clone, PartialEq)]
pub struct CountTable {
    pub n_bits: usize,
    pub shots: u64,
    pub counts: Vec<u64>,
}

impl CountTable {
    pub fn frequencies(&self) -> ProbTable {
        let s = self.shots as f64;
        ProbTable {
            n_bits: self.n_bits,
            probs: self.counts.iter().map(|&k| k as f64 / s).collect(),
        }
    }

    pub fn to_map(&self) -> BTreeMap<String, u64> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(i, &k)| (index_to_bitstring(i as u64, self.n_bits), k))
            .collect()
    }
}

/// Serialized form of a [`CountTable`]: `{shots, counts: {bitstring: int}}`,
/// wire 0 leftmost in each bitstring.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountFile {
    pub shots: u64,
    pub counts: BTreeMap<String, u64>,
}

impl CountFile {
    pub fn from_table(t: &CountTable) -> Self {
        CountFile { shots: t.shots, counts: t.to_map() }
    }

    pub fn to_table(&self, n_bits: usize) -> Result<CountTable> {
        let mut counts = vec![0u64; 1 << n_bits];
        for (s, &k) in &self.counts {
            if s.len() != n_bits {
                return Err(Error::Schema(format!(
                    "bitstring {s:?} has {} bits, expected {n_bits}",
                    s.len()
                )));
            }
            counts[bitstring_to_index(s)? as usize] += k;
        }
        let total: u64 = counts.iter().sum();
        if total != self.shots {
            return Err(Error::Schema(format!(
                "counts sum to {total} but shots = {}",
                self.shots
            )));
        }
        Ok(CountTable { n_bits, shots: self.shots, counts })
    }
}

/// Multinomial draw from (unnormalized) nonnegative weights.
pub fn multinomial(weights: &[f64], shots: u64, rng: &mut impl Rng) -> Vec<u64> {
    let mut cum = Vec::with_capacity(weights.len());
    let mut acc = 0.0;
    for &w in weights {
        acc += w.max(0.0);
        cum.push(acc);
    }
    let total = acc;
    let mut counts = vec![0u64; weights.len()];
    for _ in 0..shots {
        let x: f64 = rng.gen::<f64>() * total;
        let idx = cum.partition_point(|&v| v < x).min(weights.len() - 1);
        counts[idx] += 1;
    }
    counts
}

/// Multinomial sampling of a probability table, reproducible from `seed`.
pub fn sample_counts(table: &ProbTable, shots: u64, seed: u64) -> Result<CountTable> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let counts = multinomial(&table.probs, shots, &mut rng);
    Ok(CountTable { n_bits: table.n_bits, shots, counts })
}

/// Expands a root seed into a per-variant stream by stable hashing of the
/// fragment id and basis string.
pub fn variant_seed(root: u64, fragment_id: usize, basis: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(root.to_le_bytes());
    h.update((fragment_id as u64).to_le_bytes());
    h.update(basis.as_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

// ---------------------------------------------------------------------------
// exact density-matrix backend
// ---------------------------------------------------------------------------

/// A 2^n x 2^n density matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    pub n: usize,
    pub data: Array2<Complex64>,
}

impl DensityMatrix {
    /// |0...0><0...0| on `n` wires.
    pub fn ground(n: usize) -> Result<Self> {
        if n > MAX_DENSE_WIRES {
            return Err(Error::Capacity(format!(
                "{n} wires exceed the dense density-matrix bound of {MAX_DENSE_WIRES}"
            )));
        }
        let dim = 1usize << n;
        let mut data = Array2::<Complex64>::zeros((dim, dim));
        data[[0, 0]] = c(1.0);
        Ok(DensityMatrix { n, data })
    }

    pub fn trace(&self) -> f64 {
        (0..self.data.nrows()).map(|i| self.data[[i, i]].re).sum()
    }

    pub fn purity(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn apply_unitary(&mut self, u: &Array2<Complex64>, wires: &[usize]) {
        self.apply_kraus(std::slice::from_ref(u), wires);
    }

    /// rho -> sum_i K_i rho K_i^dag on the given wires.
    pub fn apply_kraus(&mut self, ops: &[Array2<Complex64>], wires: &[usize]) {
        let n = self.n;
        let k = wires.len();
        let d = 1usize << k;
        debug_assert!(ops.iter().all(|o| o.nrows() == d));
        let positions = bit_positions(wires, n);
        let offs = sub_offsets(&positions);
        let rests = rest_indices(&positions, n);
        let mut block = vec![Complex64::ZERO; d * d];
        let mut tmp = vec![Complex64::ZERO; d * d];
        let mut out = vec![Complex64::ZERO; d * d];
        for &rr in &rests {
            for &rc in &rests {
                for s in 0..d {
                    for t in 0..d {
                        block[s * d + t] = self.data[[rr + offs[s], rc + offs[t]]];
                    }
                }
                out.iter_mut().for_each(|v| *v = Complex64::ZERO);
                for op in ops {
                    for s in 0..d {
                        for t in 0..d {
                            let mut acc = Complex64::ZERO;
                            for u in 0..d {
                                acc += op[[s, u]] * block[u * d + t];
                            }
                            tmp[s * d + t] = acc;
                        }
                    }
                    for s in 0..d {
                        for t in 0..d {
                            let mut acc = Complex64::ZERO;
                            for u in 0..d {
                                acc += tmp[s * d + u] * op[[t, u]].conj();
                            }
                            out[s * d + t] += acc;
                        }
                    }
                }
                for s in 0..d {
                    for t in 0..d {
                        self.data[[rr + offs[s], rc + offs[t]]] = out[s * d + t];
                    }
                }
            }
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.data.nrows()).map(|i| self.data[[i, i]].re).collect()
    }
}

/// Readout distribution over measured bits: each basis outcome feeds the
/// per-wire POVM confusion (outcome "1" with probability E_zz).
fn readout_distribution(
    diag: &[f64],
    n: usize,
    measured: &[usize],
    povm: &ReadoutPovm,
) -> Vec<f64> {
    let mm = measured.len();
    let e = [povm.p_one_given(0), povm.p_one_given(1)];
    let mut out = vec![0.0; 1 << mm];

    // depth-first over measured wires, pruning zero-weight branches
    fn rec(
        diag_z: usize,
        n: usize,
        measured: &[usize],
        e: &[f64; 2],
        level: usize,
        outcome: usize,
        weight: f64,
        out: &mut [f64],
    ) {
        if level == measured.len() {
            out[outcome] += weight;
            return;
        }
        let z = (diag_z >> (n - 1 - measured[level])) & 1;
        let p1 = e[z];
        if p1 < 1.0 {
            rec(diag_z, n, measured, e, level + 1, outcome << 1, weight * (1.0 - p1), out);
        }
        if p1 > 0.0 {
            rec(diag_z, n, measured, e, level + 1, (outcome << 1) | 1, weight * p1, out);
        }
    }

    for (z, &pz) in diag.iter().enumerate() {
        if pz == 0.0 {
            continue;
        }
        rec(z, n, measured, &e, 0, 0, pz, &mut out);
    }
    out
}

/// Runs a noisy op sequence exactly on a density matrix and returns the
/// readout distribution over the measured wires.
pub fn run_exact(noisy: &NoisyCircuit) -> Result<ProbTable> {
    let n = noisy.width;
    let mut rho = DensityMatrix::ground(n)?;
    for op in &noisy.ops {
        match op {
            NoisyOp::Unitary(g) => rho.apply_unitary(&gate_matrix(g.kind), &g.qubits),
            NoisyOp::Channel { kraus, wires } => {
                rho.apply_kraus(&kraus.operators, wires);
                let t = rho.trace();
                if (t - 1.0).abs() > 1e-10 {
                    return Err(Error::Invariant(format!(
                        "trace drifted to {t} after a channel application"
                    )));
                }
            }
        }
    }
    let probs = readout_distribution(&rho.diagonal(), n, &noisy.measured, &noisy.readout);
    ProbTable::new(noisy.measured.len(), probs)
}

// ---------------------------------------------------------------------------
// trajectory backend
// ---------------------------------------------------------------------------

fn kraus_weight(psi: &[Complex64], op: &Array2<Complex64>, offs: &[usize], rests: &[usize]) -> f64 {
    let d = offs.len();
    let mut w = 0.0;
    for &r in rests {
        for s in 0..d {
            let mut acc = Complex64::ZERO;
            for t in 0..d {
                acc += op[[s, t]] * psi[r + offs[t]];
            }
            w += acc.norm_sqr();
        }
    }
    w
}

/// Stochastic unraveling: per trajectory a statevector evolves, each channel
/// picks Kraus operator i with probability ||K_i psi||^2, and readout
/// measures each wire with the square-root (Lueders) operators of the POVM.
pub fn run_trajectories(noisy: &NoisyCircuit, n_traj: u64, seed: u64) -> Result<CountTable> {
    let n = noisy.width;
    if n > MAX_STATEVECTOR_WIRES {
        return Err(Error::Capacity(format!(
            "{n} wires exceed the trajectory bound of {MAX_STATEVECTOR_WIRES}"
        )));
    }
    if n_traj == 0 {
        return Err(Error::InvalidArgument("n_traj must be at least 1".into()));
    }
    let mm = noisy.measured.len();
    let mut counts = vec![0u64; 1 << mm];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = [noisy.readout.p_one_given(0), noisy.readout.p_one_given(1)];

    let gate_mats: Vec<Option<Array2<Complex64>>> = noisy
        .ops
        .iter()
        .map(|op| match op {
            NoisyOp::Unitary(g) => Some(gate_matrix(g.kind)),
            NoisyOp::Channel { .. } => None,
        })
        .collect();

    let mut psi = vec![Complex64::ZERO; 1 << n];
    for _ in 0..n_traj {
        psi.iter_mut().for_each(|v| *v = Complex64::ZERO);
        psi[0] = c(1.0);
        for (op, mat) in noisy.ops.iter().zip(&gate_mats) {
            match op {
                NoisyOp::Unitary(g) => {
                    apply_unitary_sv(&mut psi, mat.as_ref().unwrap(), &g.qubits, n)
                }
                NoisyOp::Channel { kraus, wires } => {
                    let positions = bit_positions(wires, n);
                    let offs = sub_offsets(&positions);
                    let rests = rest_indices(&positions, n);
                    let mut weights = Vec::with_capacity(kraus.operators.len());
                    let mut total = 0.0;
                    for op in &kraus.operators {
                        let w = kraus_weight(&psi, op, &offs, &rests);
                        total += w;
                        weights.push(w);
                    }
                    let x: f64 = rng.gen::<f64>() * total;
                    let mut acc = 0.0;
                    let mut chosen = kraus.operators.len() - 1;
                    for (i, &w) in weights.iter().enumerate() {
                        acc += w;
                        if x < acc {
                            chosen = i;
                            break;
                        }
                    }
                    apply_unitary_sv(&mut psi, &kraus.operators[chosen], wires, n);
                    let norm = weights[chosen].sqrt();
                    if norm > 0.0 {
                        psi.iter_mut().for_each(|v| *v /= norm);
                    }
                }
            }
        }
        // sequential wire-by-wire readout
        let mut outcome = 0usize;
        for &w in &noisy.measured {
            let pos = n - 1 - w;
            let mut p1 = 0.0;
            for (z, amp) in psi.iter().enumerate() {
                p1 += e[(z >> pos) & 1] * amp.norm_sqr();
            }
            let bit = if rng.gen::<f64>() < p1 { 1usize } else { 0usize };
            outcome = (outcome << 1) | bit;
            // apply sqrt(E) or sqrt(I-E), both diagonal, then renormalize
            let m = if bit == 1 {
                [e[0].sqrt(), e[1].sqrt()]
            } else {
                [(1.0 - e[0]).sqrt(), (1.0 - e[1]).sqrt()]
            };
            let mut norm = 0.0;
            for (z, amp) in psi.iter_mut().enumerate() {
                *amp *= c(m[(z >> pos) & 1]);
                norm += amp.norm_sqr();
            }
            let norm = norm.sqrt();
            if norm > 0.0 {
                psi.iter_mut().for_each(|v| *v /= norm);
            }
        }
        counts[outcome] += 1;
    }
    Ok(CountTable { n_bits: mm, shots: n_traj, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_ghz_chain, Gate};
    use crate::noise::{depolarizing_1q, readout_povm, NoiseParameters};
    use crate::schedule::{noise_pass, schedule_asap};

    fn noiseless_run(c: &Circuit) -> ProbTable {
        let params = NoiseParameters::noiseless();
        let sched = schedule_asap(c, &params).unwrap();
        let noisy = noise_pass(&sched, &params).unwrap();
        run_exact(&noisy).unwrap()
    }

    #[test]
    fn statevector_oracle_basics() {
        let h = Circuit::new(1, vec![Gate::h(0)], vec![0]);
        let amps = statevector_oracle(&h).unwrap();
        assert!((amps[0].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((amps[1].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);

        let empty = Circuit::new(3, vec![], vec![0, 1, 2]);
        let amps = statevector_oracle(&empty).unwrap();
        assert!((amps[0].re - 1.0).abs() < 1e-15);
        assert!(amps[1..].iter().all(|a| a.norm() == 0.0));

        let ghz6 = build_ghz_chain(6).unwrap();
        let amps = statevector_oracle(&ghz6).unwrap();
        assert!((amps[0b000111].norm_sqr() - 0.5).abs() < 1e-12);
        assert!((amps[0b111000].norm_sqr() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn exact_noiseless_ghz() {
        let c = build_ghz_chain(4).unwrap();
        let table = noiseless_run(&c);
        assert!((table.probs[0b0011] - 0.5).abs() < 1e-12);
        assert!((table.probs[0b1100] - 0.5).abs() < 1e-12);
        assert!((table.total() - 1.0).abs() < 1e-12);
        // agrees with the statevector oracle everywhere
        let oracle = oracle_distribution(&c).unwrap();
        for i in 0..16 {
            assert!((table.probs[i] - oracle.probs[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_readout_error() {
        // |0> never reads 1; after X the excited state reads 1 with 1-gamma.
        let povm = readout_povm(2.75, 65.0).unwrap();
        let gamma = povm.gamma();

        let idle = NoisyCircuit {
            width: 1,
            ops: vec![],
            measured: vec![0],
            readout: povm.clone(),
        };
        let t = run_exact(&idle).unwrap();
        assert!((t.probs[0] - 1.0).abs() < 1e-12);

        let flipped = NoisyCircuit {
            width: 1,
            ops: vec![NoisyOp::Unitary(Gate::x(0))],
            measured: vec![0],
            readout: povm,
        };
        let t = run_exact(&flipped).unwrap();
        assert!((t.probs[1] - (1.0 - gamma)).abs() < 1e-12);
        assert!((t.probs[0] - gamma).abs() < 1e-12);
    }

    #[test]
    fn purity_decreases_under_depolarizing() {
        let params = NoiseParameters::noiseless();
        let c = build_ghz_chain(3).unwrap();
        let sched = schedule_asap(&c, &params).unwrap();
        let noisy = noise_pass(&sched, &params).unwrap();
        let mut rho = DensityMatrix::ground(3).unwrap();
        for op in &noisy.ops {
            if let NoisyOp::Unitary(g) = op {
                rho.apply_unitary(&gate_matrix(g.kind), &g.qubits);
            }
        }
        assert!((rho.purity() - 1.0).abs() < 1e-10);
        let depol = depolarizing_1q(0.05).unwrap();
        rho.apply_kraus(&depol.operators, &[1]);
        assert!(rho.purity() < 1.0 - 1e-4);
        assert!((rho.trace() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn sampling_is_deterministic_and_sane() {
        let degenerate = ProbTable::new(2, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let t = sample_counts(&degenerate, 100, 7).unwrap();
        assert_eq!(t.counts[0], 100);

        let fair = ProbTable::new(1, vec![0.5, 0.5]).unwrap();
        let t = sample_counts(&fair, 8192, 42).unwrap();
        // binomial 5-sigma bound around 4096
        let sigma = (8192.0f64 * 0.25).sqrt();
        assert!((t.counts[0] as f64 - 4096.0).abs() < 5.0 * sigma);

        let t2 = sample_counts(&fair, 8192, 42).unwrap();
        assert_eq!(t.counts, t2.counts);
    }

    #[test]
    fn trajectories_match_exact_noiseless() {
        let c = build_ghz_chain(4).unwrap();
        let params = NoiseParameters::noiseless();
        let sched = schedule_asap(&c, &params).unwrap();
        let noisy = noise_pass(&sched, &params).unwrap();
        let counts = run_trajectories(&noisy, 10_000, 3).unwrap();
        for (i, &k) in counts.counts.iter().enumerate() {
            if i != 0b0011 && i != 0b1100 {
                assert_eq!(k, 0, "impossible outcome {i:04b} observed");
            }
        }
    }

    #[test]
    fn trajectory_depolarizing_mixes() {
        // p = 3/4 depolarizing on |0> with ideal readout: uniform outcome.
        let noisy = NoisyCircuit {
            width: 1,
            ops: vec![NoisyOp::Channel {
                kraus: depolarizing_1q(0.75).unwrap(),
                wires: vec![0],
            }],
            measured: vec![0],
            readout: readout_povm(0.0, 65.0).unwrap(),
        };
        let n = 20_000u64;
        let counts = run_trajectories(&noisy, n, 11).unwrap();
        let sigma = (n as f64 * 0.25).sqrt();
        assert!((counts.counts[0] as f64 - n as f64 / 2.0).abs() < 5.0 * sigma);
    }

    #[test]
    fn count_file_round_trip() {
        let t = CountTable { n_bits: 2, shots: 10, counts: vec![3, 0, 7, 0] };
        let f = CountFile::from_table(&t);
        assert_eq!(f.counts.get("00"), Some(&3));
        assert_eq!(f.counts.get("10"), Some(&7));
        let back = f.to_table(2).unwrap();
        assert_eq!(back, t);

        let bad = CountFile { shots: 11, counts: f.counts.clone() };
        assert!(bad.to_table(2).is_err());
    }

    #[test]
    fn variant_seed_is_stable_and_distinct() {
        let a = variant_seed(1, 0, "XZ");
        assert_eq!(a, variant_seed(1, 0, "XZ"));
        assert_ne!(a, variant_seed(1, 0, "XY"));
        assert_ne!(a, variant_seed(1, 1, "XZ"));
        assert_ne!(a, variant_seed(2, 0, "XZ"));
    }

    #[test]
    fn capacity_bounds() {
        assert!(DensityMatrix::ground(13).is_err());
        let wide = Circuit::new(27, vec![Gate::h(0)], vec![0]);
        assert!(statevector_oracle(&wide).is_err());
    }
}
