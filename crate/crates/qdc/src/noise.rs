//! Calibrated noise channels: amplitude damping and pure dephasing during
//! idle periods, depolarizing channels after gates, and the
//! relaxation-during-measurement readout POVM.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_T1_US: f64 = 65.0;
pub const DEFAULT_T2_US: f64 = 70.0;
pub const DEFAULT_GAMMA_READOUT: f64 = 0.041;
pub const DEFAULT_EPS_AVG_1Q: f64 = 0.00041;
pub const DEFAULT_EPS_AVG_2Q: f64 = 0.00202;
pub const DEFAULT_TAU_1Q_NS: f64 = 20.0;
pub const DEFAULT_TAU_2Q_NS: f64 = 200.0;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// A completely positive trace-preserving map given by its Kraus operators
/// (2x2 for one-qubit channels, 4x4 for two-qubit ones).
#[derive(Debug, Clone)]
pub struct KrausChannel {
    pub operators: Vec<Array2<Complex64>>,
}

impl KrausChannel {
    pub fn new(operators: Vec<Array2<Complex64>>) -> Result<Self> {
        let ch = KrausChannel { operators };
        ch.check_cptp(1e-12)?;
        Ok(ch)
    }

    pub fn dim(&self) -> usize {
        self.operators[0].nrows()
    }

    pub fn n_qubits(&self) -> usize {
        match self.dim() {
            2 => 1,
            4 => 2,
            d => panic!("unsupported channel dimension {d}"),
        }
    }

    /// Largest absolute deviation of sum K^dag K from the identity.
    pub fn cptp_deviation(&self) -> f64 {
        let d = self.dim();
        let mut acc = Array2::<Complex64>::zeros((d, d));
        for k in &self.operators {
            let kd = k.t().mapv(|v| v.conj());
            acc = acc + kd.dot(k);
        }
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let expect = if i == j { c(1.0) } else { c(0.0) };
                worst = worst.max((acc[[i, j]] - expect).norm());
            }
        }
        worst
    }

    pub fn check_cptp(&self, tol: f64) -> Result<()> {
        let dev = self.cptp_deviation();
        if dev > tol {
            return Err(Error::Invariant(format!(
                "channel is not trace preserving: sum K^dag K deviates from I by {dev:.3e}"
            )));
        }
        Ok(())
    }

    /// True when the channel is a single identity operator (up to `tol`).
    pub fn is_identity(&self, tol: f64) -> bool {
        if self.operators.len() != 1 {
            return false;
        }
        let k = &self.operators[0];
        let d = k.nrows();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let expect = if i == j { c(1.0) } else { c(0.0) };
                (k[[i, j]] - expect).norm() <= tol
            })
        })
    }

    /// Applies the channel to a density matrix of the same dimension.
    pub fn apply(&self, rho: &Array2<Complex64>) -> Array2<Complex64> {
        let d = self.dim();
        let mut out = Array2::<Complex64>::zeros((d, d));
        for k in &self.operators {
            let kd = k.t().mapv(|v| v.conj());
            out = out + k.dot(rho).dot(&kd);
        }
        out
    }
}

/// The two-outcome readout POVM {E, I-E}; `effect_one` is the element for
/// outcome "1", modelling relaxation during the measurement window.
#[derive(Debug, Clone)]
pub struct ReadoutPovm {
    pub effect_one: Array2<Complex64>,
}

impl ReadoutPovm {
    /// Outcome "1" probability given computational basis input bit `z`.
    pub fn p_one_given(&self, z: u8) -> f64 {
        self.effect_one[[z as usize, z as usize]].re
    }

    pub fn gamma(&self) -> f64 {
        1.0 - self.p_one_given(1)
    }

    pub fn is_projective(&self, tol: f64) -> bool {
        self.gamma().abs() <= tol
    }
}

/// p = 1 - exp(-tau/T1), the excited-state decay probability over `tau`.
fn damping_probability(tau: f64, t1: f64) -> f64 {
    if tau == 0.0 {
        return 0.0;
    }
    1.0 - (-tau / t1).exp()
}

/// Amplitude damping over an idle period. `tau_idle` and `t1` must share a
/// time unit.
pub fn amplitude_damping(tau_idle: f64, t1: f64) -> Result<KrausChannel> {
    if t1 <= 0.0 {
        return Err(Error::InvalidArgument(format!("T1 must be positive, got {t1}")));
    }
    if tau_idle < 0.0 {
        return Err(Error::InvalidArgument(format!("negative idle time {tau_idle}")));
    }
    let p = damping_probability(tau_idle, t1);
    if p == 0.0 {
        return KrausChannel::new(vec![Array2::eye(2)]);
    }
    let k0 = Array2::from_shape_vec((2, 2), vec![c(1.0), c(0.0), c(0.0), c((1.0 - p).sqrt())])
        .unwrap();
    let k1 =
        Array2::from_shape_vec((2, 2), vec![c(0.0), c(p.sqrt()), c(0.0), c(0.0)]).unwrap();
    KrausChannel::new(vec![k0, k1])
}

/// Pure-dephasing time from T1 and T2: 1/T_phi = 1/T2 - 1/(2 T1).
pub fn t_phi(t1: f64, t2: f64) -> Result<f64> {
    if t1 <= 0.0 || t2 <= 0.0 {
        return Err(Error::InvalidArgument("T1 and T2 must be positive".into()));
    }
    if t2 > 2.0 * t1 {
        return Err(Error::InvalidArgument(format!(
            "T2 = {t2} exceeds 2*T1 = {} (negative dephasing rate)",
            2.0 * t1
        )));
    }
    let rate = 1.0 / t2 - 1.0 / (2.0 * t1);
    Ok(if rate <= 0.0 { f64::INFINITY } else { 1.0 / rate })
}

/// Pure dephasing over an idle period, with p = 1 - exp(-2 tau / T_phi).
pub fn pure_dephasing(tau_idle: f64, t1: f64, t2: f64) -> Result<KrausChannel> {
    if tau_idle < 0.0 {
        return Err(Error::InvalidArgument(format!("negative idle time {tau_idle}")));
    }
    let tphi = t_phi(t1, t2)?;
    let p = if tphi.is_infinite() || tau_idle == 0.0 {
        0.0
    } else {
        1.0 - (-2.0 * tau_idle / tphi).exp()
    };
    if p == 0.0 {
        return KrausChannel::new(vec![Array2::eye(2)]);
    }
    let k0 = Array2::from_shape_vec((2, 2), vec![c(1.0), c(0.0), c(0.0), c((1.0 - p).sqrt())])
        .unwrap();
    let k1 =
        Array2::from_shape_vec((2, 2), vec![c(0.0), c(0.0), c(0.0), c(p.sqrt())]).unwrap();
    KrausChannel::new(vec![k0, k1])
}

fn pauli_matrices() -> [Array2<Complex64>; 4] {
    let i2 = Array2::from_shape_vec((2, 2), vec![c(1.0), c(0.0), c(0.0), c(1.0)]).unwrap();
    let sx = Array2::from_shape_vec((2, 2), vec![c(0.0), c(1.0), c(1.0), c(0.0)]).unwrap();
    let sy = Array2::from_shape_vec(
        (2, 2),
        vec![c(0.0), Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), c(0.0)],
    )
    .unwrap();
    let sz = Array2::from_shape_vec((2, 2), vec![c(1.0), c(0.0), c(0.0), c(-1.0)]).unwrap();
    [i2, sx, sy, sz]
}

/// One-qubit depolarizing channel: K0 = sqrt(1-p) I, K_i = sqrt(p/3) sigma_i.
pub fn depolarizing_1q(p: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("depolarizing p out of [0,1]: {p}")));
    }
    if p == 0.0 {
        return KrausChannel::new(vec![Array2::eye(2)]);
    }
    let [i2, sx, sy, sz] = pauli_matrices();
    let ops = vec![
        i2.mapv(|v| v * c((1.0 - p).sqrt())),
        sx.mapv(|v| v * c((p / 3.0).sqrt())),
        sy.mapv(|v| v * c((p / 3.0).sqrt())),
        sz.mapv(|v| v * c((p / 3.0).sqrt())),
    ];
    KrausChannel::new(ops)
}

fn kron(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::<Complex64>::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[[i * br + k, j * bc + l]] = a[[i, j]] * b[[k, l]];
                }
            }
        }
    }
    out
}

/// Two-qubit depolarizing channel: all 16 tensor pairs of the one-qubit
/// operator set with per-qubit parameter `p`.
pub fn depolarizing_2q(p: f64) -> Result<KrausChannel> {
    let one = depolarizing_1q(p)?;
    let mut ops = Vec::with_capacity(16);
    for a in &one.operators {
        for b in &one.operators {
            ops.push(kron(a, b));
        }
    }
    KrausChannel::new(ops)
}

/// Inverts the average-fidelity relations to find the depolarizing parameter
/// matching a calibrated average gate error: F_avg(1q) = 1 - 2p/3 and
/// F_avg(2q) = (4(1-p)^2 + 1)/5.
pub fn p_from_avg_error(eps_avg: f64, n_qubits: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&eps_avg) {
        return Err(Error::InvalidArgument(format!("eps_avg out of [0,1): {eps_avg}")));
    }
    let p = match n_qubits {
        1 => 1.5 * eps_avg,
        2 => {
            let sq = 1.0 - 1.25 * eps_avg;
            if sq < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "eps_avg = {eps_avg} has no two-qubit depolarizing parameter"
                )));
            }
            1.0 - sq.sqrt()
        }
        n => return Err(Error::InvalidArgument(format!("n_qubits must be 1 or 2, got {n}"))),
    };
    if p > 1.0 {
        return Err(Error::InvalidArgument(format!(
            "eps_avg = {eps_avg} implies p = {p} > 1"
        )));
    }
    Ok(p)
}

/// Average gate fidelity of the depolarizing channel with parameter `p`.
pub fn avg_fidelity_depolarizing(p: f64, n_qubits: usize) -> f64 {
    match n_qubits {
        1 => 1.0 - 2.0 * p / 3.0,
        2 => (4.0 * (1.0 - p) * (1.0 - p) + 1.0) / 5.0,
        _ => panic!("n_qubits must be 1 or 2"),
    }
}

/// Readout as amplitude damping during the measurement window:
/// E = diag(0, 1-gamma) with gamma = 1 - exp(-t_meas/T1).
pub fn readout_povm(t_meas: f64, t1: f64) -> Result<ReadoutPovm> {
    if t_meas < 0.0 {
        return Err(Error::InvalidArgument(format!("negative t_meas {t_meas}")));
    }
    if t1 <= 0.0 {
        return Err(Error::InvalidArgument(format!("T1 must be positive, got {t1}")));
    }
    let gamma = damping_probability(t_meas, t1);
    let e = Array2::from_shape_vec((2, 2), vec![c(0.0), c(0.0), c(0.0), c(1.0 - gamma)])
        .unwrap();
    Ok(ReadoutPovm { effect_one: e })
}

/// Inverse of the readout calibration: t_meas = -T1 ln(1 - gamma).
pub fn t_meas_from_gamma(gamma: f64, t1: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(Error::InvalidArgument(format!("gamma out of [0,1): {gamma}")));
    }
    Ok(-t1 * (1.0 - gamma).ln())
}

/// The calibration record: chip-averaged decoherence times, measurement
/// duration and average gate errors, plus the assumed gate durations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseParameters {
    pub t1_us: f64,
    pub t2_us: f64,
    pub t_meas_us: f64,
    pub tau_1q_ns: f64,
    pub tau_2q_ns: f64,
    pub eps_avg_1q: f64,
    pub eps_avg_2q: f64,
}

impl NoiseParameters {
    /// Chip-averaged reference calibration: T1 = 65 us, T2 = 70 us,
    /// readout gamma = 4.1%, eps_1q = 0.041%, eps_2q = 0.202%.
    pub fn chip_defaults() -> Self {
        NoiseParameters {
            t1_us: DEFAULT_T1_US,
            t2_us: DEFAULT_T2_US,
            t_meas_us: t_meas_from_gamma(DEFAULT_GAMMA_READOUT, DEFAULT_T1_US).unwrap(),
            tau_1q_ns: DEFAULT_TAU_1Q_NS,
            tau_2q_ns: DEFAULT_TAU_2Q_NS,
            eps_avg_1q: DEFAULT_EPS_AVG_1Q,
            eps_avg_2q: DEFAULT_EPS_AVG_2Q,
        }
    }

    /// All error sources switched off; gate durations kept so scheduling
    /// still produces a timeline.
    pub fn noiseless() -> Self {
        NoiseParameters {
            t1_us: f64::INFINITY,
            t2_us: f64::INFINITY,
            t_meas_us: 0.0,
            tau_1q_ns: DEFAULT_TAU_1Q_NS,
            tau_2q_ns: DEFAULT_TAU_2Q_NS,
            eps_avg_1q: 0.0,
            eps_avg_2q: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.t1_us <= 0.0 || self.t2_us <= 0.0 {
            return Err(Error::InvalidArgument("T1 and T2 must be positive".into()));
        }
        if self.t2_us > 2.0 * self.t1_us {
            return Err(Error::InvalidArgument(format!(
                "T2 = {} us exceeds 2*T1 = {} us",
                self.t2_us,
                2.0 * self.t1_us
            )));
        }
        if self.tau_1q_ns <= 0.0 || self.tau_2q_ns <= 0.0 {
            return Err(Error::InvalidArgument("gate durations must be positive".into()));
        }
        if self.t_meas_us < 0.0 {
            return Err(Error::InvalidArgument("t_meas must be nonnegative".into()));
        }
        for eps in [self.eps_avg_1q, self.eps_avg_2q] {
            if !(0.0..1.0).contains(&eps) {
                return Err(Error::InvalidArgument(format!("eps_avg out of [0,1): {eps}")));
            }
        }
        Ok(())
    }

    pub fn t1_ns(&self) -> f64 {
        self.t1_us * 1000.0
    }
    pub fn t2_ns(&self) -> f64 {
        self.t2_us * 1000.0
    }
    pub fn t_meas_ns(&self) -> f64 {
        self.t_meas_us * 1000.0
    }

    pub fn gamma_readout(&self) -> f64 {
        damping_probability(self.t_meas_us, self.t1_us)
    }

    pub fn p_depol_1q(&self) -> Result<f64> {
        p_from_avg_error(self.eps_avg_1q, 1)
    }

    pub fn p_depol_2q(&self) -> Result<f64> {
        p_from_avg_error(self.eps_avg_2q, 2)
    }

    /// Per-qubit depolarizing strength for a SWAP. Hardware has no native
    /// SWAP; it runs as three back-to-back CNOTs, so its channel is the CNOT
    /// depolarizing channel composed three times. Each composition shrinks
    /// the Bloch vector by 1 − 4p/3 per qubit, giving
    /// p' = 3·(1 − (1 − 4p/3)³)/4.
    pub fn p_depol_swap(&self) -> Result<f64> {
        let p = self.p_depol_2q()?;
        let s = 1.0 - 4.0 * p / 3.0;
        Ok(3.0 * (1.0 - s * s * s) / 4.0)
    }

    pub fn readout(&self) -> Result<ReadoutPovm> {
        readout_povm(self.t_meas_us, self.t1_us)
    }
}

/// On-disk calibration file. Exactly one of `gamma_readout` / `t_meas_us`
/// must be present; everything else falls back to the chip-averaged defaults.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrationFile {
    #[serde(rename = "T1_us")]
    pub t1_us: f64,
    #[serde(rename = "T2_us")]
    pub t2_us: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_readout: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_meas_us: Option<f64>,
    pub eps_avg_1q: f64,
    pub eps_avg_2q: f64,
    #[serde(default = "default_tau_1q")]
    pub tau_1q_ns: f64,
    #[serde(default = "default_tau_2q")]
    pub tau_2q_ns: f64,
}

fn default_tau_1q() -> f64 {
    DEFAULT_TAU_1Q_NS
}
fn default_tau_2q() -> f64 {
    DEFAULT_TAU_2Q_NS
}

impl CalibrationFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: CalibrationFile = serde_json::from_str(text)?;
        Ok(file)
    }

    /// Resolves the file to a full parameter set, deriving t_meas from gamma
    /// (or the reverse) and validating the invariants.
    pub fn resolve(&self) -> Result<NoiseParameters> {
        let t_meas_us = match (self.gamma_readout, self.t_meas_us) {
            (Some(g), None) => t_meas_from_gamma(g, self.t1_us)?,
            (None, Some(t)) => t,
            (Some(_), Some(_)) => {
                return Err(Error::Schema(
                    "calibration file sets both gamma_readout and t_meas_us".into(),
                ))
            }
            (None, None) => {
                return Err(Error::Schema(
                    "calibration file sets neither gamma_readout nor t_meas_us".into(),
                ))
            }
        };
        let params = NoiseParameters {
            t1_us: self.t1_us,
            t2_us: self.t2_us,
            t_meas_us,
            tau_1q_ns: self.tau_1q_ns,
            tau_2q_ns: self.tau_2q_ns,
            eps_avg_1q: self.eps_avg_1q,
            eps_avg_2q: self.eps_avg_2q,
        };
        params.validate()?;
        Ok(params)
    }
}
