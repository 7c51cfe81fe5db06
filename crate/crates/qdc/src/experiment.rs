//! Configuration-driven experiment runner: the chain-length sweep, fragment
//! export for external execution, recombination of externally measured
//! counts, and calibration resolution.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::circuit::build_ghz_chain;
use crate::cutter::{cut_plan_equal, fragment, FragmentSet, FragmentVariant};
use crate::error::{Error, Result};
use crate::noise::{CalibrationFile, NoiseParameters};
use crate::qasm::export_qasm_with_comments;
use crate::recombine::{
    bootstrap_success, negative_mass, recombine, success_probability_from_tables, variant_cost,
    RecombinationPlan, VariantTables,
};
use crate::router::{compact_circuit, grid_coupling, route, CouplingMap};
use crate::schedule::{noise_pass, schedule_asap};
use crate::sim::{
    run_exact, run_trajectories, sample_counts, variant_seed, CountFile, CountTable,
};

/// Whether fragment tables are exact probabilities or sampled counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Sampled,
}

/// Which simulator produces the per-variant distributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Density,
    Trajectory,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Sampled => "sampled",
        })
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Density => "density",
            Backend::Trajectory => "trajectory",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "sampled" => Ok(Mode::Sampled),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s:?}"))),
        }
    }
}

impl FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "density" => Ok(Backend::Density),
            "trajectory" => Ok(Backend::Trajectory),
            _ => Err(Error::InvalidArgument(format!("unknown backend {s:?}"))),
        }
    }
}

fn default_shots() -> u64 {
    8192
}
fn default_resamples() -> usize {
    100
}
fn default_grid() -> [usize; 2] {
    [4, 5]
}
fn default_mode() -> Mode {
    Mode::Exact
}
fn default_backend() -> Backend {
    Backend::Density
}

/// Sweep configuration, read from a JSON file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub m: Vec<usize>,
    pub n_fragments: Vec<usize>,
    #[serde(default = "default_shots")]
    pub shots: u64,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default = "default_backend")]
    pub backend: Backend,
    #[serde(default)]
    pub seed: u64,
    /// Calibration file; absent means the built-in chip-averaged defaults.
    #[serde(default)]
    pub calibration: Option<PathBuf>,
    /// Overrides any calibration with an error-free model.
    #[serde(default)]
    pub noiseless: bool,
    /// Coupling-map file; absent means the grid below.
    #[serde(default)]
    pub coupling_map: Option<PathBuf>,
    #[serde(default = "default_grid")]
    pub grid: [usize; 2],
    /// Initial logical-to-physical placement; absent means identity.
    #[serde(default)]
    pub placement: Option<Vec<usize>>,
    #[serde(default = "default_resamples")]
    pub resamples: usize,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m.is_empty() || self.n_fragments.is_empty() {
            return Err(Error::InvalidArgument("m and n_fragments must be nonempty".into()));
        }
        if self.shots == 0 {
            return Err(Error::InvalidArgument("shots must be at least 1".into()));
        }
        if self.mode == Mode::Exact && self.backend == Backend::Trajectory {
            return Err(Error::InvalidArgument(
                "the trajectory backend produces counts; use mode = \"sampled\" with it".into(),
            ));
        }
        Ok(())
    }

    pub fn resolve_params(&self) -> Result<NoiseParameters> {
        if self.noiseless {
            return Ok(NoiseParameters::noiseless());
        }
        match &self.calibration {
            None => Ok(NoiseParameters::chip_defaults()),
            Some(path) => {
                let text = read_file(path)?;
                CalibrationFile::parse(&text)?.resolve()
            }
        }
    }

    pub fn resolve_map(&self) -> Result<CouplingMap> {
        match &self.coupling_map {
            None => grid_coupling(self.grid[0], self.grid[1]),
            Some(path) => {
                let text = read_file(path)?;
                let map: CouplingMap = serde_json::from_str(&text)?;
                // re-run construction checks on externally supplied maps
                CouplingMap::new(map.n_physical, map.edges.iter().copied())
            }
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).map_err(|e| Error::io(path.display().to_string(), e))
}

fn sha256_hex(text: &str) -> String {
    let mut h = Sha256::new();
    h.update(text.as_bytes());
    format!("{:x}", h.finalize())
}

/// Routes a fragment variant onto the map, compacts it to its active wires
/// and applies the timing/noise passes. Returns the ready-to-run op
/// sequence; readout bits keep the variant's (ancilla, logical, out) order.
pub fn prepare_variant(
    variant: &FragmentVariant,
    map: &CouplingMap,
    placement: Option<&[usize]>,
    params: &NoiseParameters,
) -> Result<(crate::schedule::NoisyCircuit, usize)> {
    let routed = route(&variant.circuit, map, placement)?;
    let (compact, _) = compact_circuit(&routed.circuit);
    let sched = schedule_asap(&compact, params)?;
    Ok((noise_pass(&sched, params)?, routed.swap_count))
}

/// Exact per-variant distributions for a whole fragment set; also returns
/// the total SWAP count across variants.
pub fn exact_variant_tables(
    fs: &FragmentSet,
    map: &CouplingMap,
    placement: Option<&[usize]>,
    params: &NoiseParameters,
) -> Result<(VariantTables, usize)> {
    let mut tables = VariantTables::new();
    let mut swaps = 0;
    for f in &fs.fragments {
        for v in f.variants() {
            let (noisy, s) = prepare_variant(&v, map, placement, params)?;
            swaps += s;
            tables.insert((f.id, v.basis_string.clone()), run_exact(&noisy)?);
        }
    }
    Ok((tables, swaps))
}

/// Sampled per-variant counts (multinomial draws from the exact tables for
/// the density backend, direct trajectories otherwise).
pub fn sampled_variant_counts(
    fs: &FragmentSet,
    map: &CouplingMap,
    placement: Option<&[usize]>,
    params: &NoiseParameters,
    backend: Backend,
    shots: u64,
    root_seed: u64,
) -> Result<(BTreeMap<(usize, String), CountTable>, usize)> {
    let mut counts = BTreeMap::new();
    let mut swaps = 0;
    for f in &fs.fragments {
        for v in f.variants() {
            let (noisy, s) = prepare_variant(&v, map, placement, params)?;
            swaps += s;
            let seed = variant_seed(root_seed, f.id, &v.basis_string);
            let table = match backend {
                Backend::Density => sample_counts(&run_exact(&noisy)?, shots, seed)?,
                Backend::Trajectory => run_trajectories(&noisy, shots, seed)?,
            };
            counts.insert((f.id, v.basis_string.clone()), table);
        }
    }
    Ok((counts, swaps))
}

/// One sweep cell. `status` is "ok" or the reason the cell was skipped;
/// metric fields stay unset for skipped cells.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub m: usize,
    pub n_fragments: usize,
    pub max_fragment_size: usize,
    pub mode: Mode,
    pub backend: Backend,
    pub p_success: Option<f64>,
    pub sem: Option<f64>,
    pub negative_mass: Option<f64>,
    pub variant_count: usize,
    pub swap_count: usize,
    pub seed: u64,
    pub calibration_sha256: String,
    pub coupling_sha256: String,
    pub status: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// The plot interface: one line per cell, stable formatting so equal
    /// (config, seed) runs produce byte-identical files.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,n_fragments,max_fragment_size,P_success,SEM\n");
        for r in &self.rows {
            let p = r.p_success.map(|v| format!("{v:.10e}")).unwrap_or_default();
            let s = r.sem.map(|v| format!("{v:.10e}")).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.m, r.n_fragments, r.max_fragment_size, p, s
            ));
        }
        out
    }
}

/// Runs the full sweep. Infeasible cells (plan preconditions, capacity
/// bounds) become annotated rows instead of aborting the sweep.
pub fn run_sweep(config: &ExperimentConfig) -> Result<SweepResult> {
    config.validate()?;
    let params = config.resolve_params()?;
    let map = config.resolve_map()?;
    let calibration_sha256 = sha256_hex(&serde_json::to_string(&params)?);
    let coupling_sha256 = sha256_hex(&serde_json::to_string(&map)?);
    let placement = config.placement.as_deref();

    let mut rows = Vec::new();
    for &m in &config.m {
        for &n in &config.n_fragments {
            let mut row = SweepRow {
                m,
                n_fragments: n,
                max_fragment_size: 0,
                mode: config.mode,
                backend: config.backend,
                p_success: None,
                sem: None,
                negative_mass: None,
                variant_count: 0,
                swap_count: 0,
                seed: config.seed,
                calibration_sha256: calibration_sha256.clone(),
                coupling_sha256: coupling_sha256.clone(),
                status: "ok".into(),
            };
            match run_cell(config, &params, &map, placement, m, n, &mut row) {
                Ok(()) => {}
                Err(e) => row.status = e.to_string(),
            }
            rows.push(row);
        }
    }
    Ok(SweepResult { rows })
}

fn run_cell(
    config: &ExperimentConfig,
    params: &NoiseParameters,
    map: &CouplingMap,
    placement: Option<&[usize]>,
    m: usize,
    n: usize,
    row: &mut SweepRow,
) -> Result<()> {
    let circuit = build_ghz_chain(m)?;
    let cuts = cut_plan_equal(m, n)?;
    let fs = fragment(&circuit, &cuts)?;
    let plan = RecombinationPlan::from_fragment_set(&fs)?;
    row.max_fragment_size = fs.max_fragment_size();
    row.variant_count = variant_cost(&plan);

    match config.mode {
        Mode::Exact => {
            let (tables, swaps) = exact_variant_tables(&fs, map, placement, params)?;
            row.swap_count = swaps;
            row.p_success = Some(success_probability_from_tables(&plan, &tables)?);
            row.sem = Some(0.0);
            if plan.n_bits <= crate::sim::MAX_DENSE_WIRES {
                row.negative_mass = Some(negative_mass(&recombine(&plan, &tables)?));
            }
        }
        Mode::Sampled => {
            let (counts, swaps) = sampled_variant_counts(
                &fs,
                map,
                placement,
                params,
                config.backend,
                config.shots,
                config.seed,
            )?;
            row.swap_count = swaps;
            let tables: VariantTables = counts
                .iter()
                .map(|(k, t)| (k.clone(), t.frequencies()))
                .collect();
            row.p_success = Some(success_probability_from_tables(&plan, &tables)?);
            let boot_seed = variant_seed(config.seed, usize::MAX, "bootstrap");
            let (_, sem) = bootstrap_success(&counts, &plan, config.resamples, boot_seed)?;
            row.sem = Some(sem);
            if plan.n_bits <= crate::sim::MAX_DENSE_WIRES {
                row.negative_mass = Some(negative_mass(&recombine(&plan, &tables)?));
            }
        }
    }
    Ok(())
}

/// Writes `sweep.json` (full rows) and `sweep.csv` (plot table) to a
/// directory.
pub fn write_sweep(result: &SweepResult, out_dir: &Path) -> Result<()> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir.display().to_string(), e))?;
    write_file(&out_dir.join("sweep.json"), &serde_json::to_string_pretty(result)?)?;
    write_file(&out_dir.join("sweep.csv"), &result.to_csv())
}

/// Manifest written next to exported fragment QASM files; everything a later
/// recombination of externally measured counts needs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub m: usize,
    pub n_fragments: usize,
    pub bit_order: String,
    pub plan: RecombinationPlan,
    pub variants: Vec<ManifestVariant>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestVariant {
    pub fragment: usize,
    pub basis: String,
    pub qasm_file: String,
    pub counts_file: String,
    pub n_readout_bits: usize,
}

pub const MANIFEST_FILE: &str = "manifest.json";
const BIT_ORDER_NOTE: &str = "classical bits are (ancilla bits, logical bits in global wire \
order, cut-wire bits); bitstrings read c[0] leftmost";

/// Cuts the chain circuit and writes one QASM file per fragment variant plus
/// the recombination manifest.
pub fn cmd_cut(m: usize, n_fragments: usize, out_dir: &Path) -> Result<Manifest> {
    let circuit = build_ghz_chain(m)?;
    let cuts = cut_plan_equal(m, n_fragments)?;
    let fs = fragment(&circuit, &cuts)?;
    let plan = RecombinationPlan::from_fragment_set(&fs)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir.display().to_string(), e))?;

    let mut variants = Vec::new();
    for f in &fs.fragments {
        for v in f.variants() {
            let stem = v.file_stem();
            let qasm_file = format!("{stem}.qasm");
            let header = vec![
                format!("fragment {} basis {:?}", f.id, v.basis_string),
                BIT_ORDER_NOTE.to_string(),
            ];
            write_file(&out_dir.join(&qasm_file), &export_qasm_with_comments(&v.circuit, &header))?;
            variants.push(ManifestVariant {
                fragment: f.id,
                basis: v.basis_string.clone(),
                qasm_file,
                counts_file: format!("{stem}.counts.json"),
                n_readout_bits: v.circuit.measured.len(),
            });
        }
    }
    let manifest = Manifest {
        m,
        n_fragments,
        bit_order: BIT_ORDER_NOTE.to_string(),
        plan,
        variants,
    };
    write_file(&out_dir.join(MANIFEST_FILE), &serde_json::to_string_pretty(&manifest)?)?;
    Ok(manifest)
}

/// Result of recombining externally measured counts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecombineReport {
    pub m: usize,
    pub shots: u64,
    pub p_success: f64,
    pub sem: f64,
    pub negative_mass: Option<f64>,
}

/// Loads a manifest plus one counts file per variant and recombines them.
/// Missing files are reported together, naming every absent variant.
pub fn cmd_recombine(
    manifest_path: &Path,
    counts_dir: &Path,
    resamples: usize,
    seed: u64,
) -> Result<RecombineReport> {
    let manifest: Manifest = serde_json::from_str(&read_file(manifest_path)?)?;
    let mut counts = BTreeMap::new();
    let mut missing = Vec::new();
    for v in &manifest.variants {
        let path = counts_dir.join(&v.counts_file);
        if !path.exists() {
            missing.push(format!("fragment {} basis {:?} ({})", v.fragment, v.basis, v.counts_file));
            continue;
        }
        let file: CountFile = serde_json::from_str(&read_file(&path)?)?;
        counts.insert((v.fragment, v.basis.clone()), file.to_table(v.n_readout_bits)?);
    }
    if !missing.is_empty() {
        return Err(Error::IncompleteInput(format!(
            "missing counts for: {}",
            missing.join(", ")
        )));
    }
    let shots = counts.values().next().map(|t| t.shots).unwrap_or(0);
    let plan = &manifest.plan;
    let tables: VariantTables = counts
        .iter()
        .map(|(k, t)| (k.clone(), t.frequencies()))
        .collect();
    let p_success = success_probability_from_tables(plan, &tables)?;
    let (_, sem) = bootstrap_success(&counts, plan, resamples, seed)?;
    let neg = if plan.n_bits <= crate::sim::MAX_DENSE_WIRES {
        Some(negative_mass(&recombine(plan, &tables)?))
    } else {
        None
    };
    Ok(RecombineReport {
        m: manifest.m,
        shots,
        p_success,
        sem,
        negative_mass: neg,
    })
}

/// The resolved calibration with every derived quantity the noise model
/// uses, for auditing a calibration file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub params: NoiseParameters,
    pub gamma_readout: f64,
    pub t_meas_us: f64,
    pub p_depol_1q: f64,
    pub p_depol_2q: f64,
    pub t_phi_us: f64,
}

pub fn cmd_calibrate(calibration: Option<&Path>) -> Result<CalibrationReport> {
    let params = match calibration {
        None => NoiseParameters::chip_defaults(),
        Some(path) => CalibrationFile::parse(&read_file(path)?)?.resolve()?,
    };
    Ok(CalibrationReport {
        gamma_readout: params.gamma_readout(),
        t_meas_us: params.t_meas_us,
        p_depol_1q: params.p_depol_1q()?,
        p_depol_2q: params.p_depol_2q()?,
        t_phi_us: crate::noise::t_phi(params.t1_us, params.t2_us)?,
        params,
    })
}

/// Simulates every variant exactly, samples counts and writes them as the
/// counts files the manifest expects — the closed-loop stand-in for hardware
/// execution.
pub fn write_simulated_counts(
    manifest: &Manifest,
    out_dir: &Path,
    map: &CouplingMap,
    params: &NoiseParameters,
    shots: u64,
    root_seed: u64,
) -> Result<()> {
    let circuit = build_ghz_chain(manifest.m)?;
    let cuts = cut_plan_equal(manifest.m, manifest.n_fragments)?;
    let fs = fragment(&circuit, &cuts)?;
    for f in &fs.fragments {
        for v in f.variants() {
            let (noisy, _) = prepare_variant(&v, map, None, params)?;
            let seed = variant_seed(root_seed, f.id, &v.basis_string);
            let t = sample_counts(&run_exact(&noisy)?, shots, seed)?;
            let entry = manifest
                .variants
                .iter()
                .find(|mv| mv.fragment == f.id && mv.basis == v.basis_string)
                .ok_or_else(|| {
                    Error::IncompleteInput(format!(
                        "manifest lacks fragment {} basis {:?}",
                        f.id, v.basis_string
                    ))
                })?;
            write_file(
                &out_dir.join(&entry.counts_file),
                &serde_json::to_string_pretty(&CountFile::from_table(&t))?,
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn noiseless_config(m: Vec<usize>, n: Vec<usize>) -> ExperimentConfig {
        ExperimentConfig {
            m,
            n_fragments: n,
            shots: 2048,
            mode: Mode::Exact,
            backend: Backend::Density,
            seed: 7,
            calibration: None,
            noiseless: true,
            coupling_map: None,
            grid: [4, 5],
            placement: None,
            resamples: 25,
        }
    }

    #[test]
    fn config_parsing_and_defaults() {
        let cfg = ExperimentConfig::parse(r#"{"m": [4], "n_fragments": [1, 2]}"#).unwrap();
        assert_eq!(cfg.shots, 8192);
        assert_eq!(cfg.mode, Mode::Exact);
        assert_eq!(cfg.backend, Backend::Density);
        assert_eq!(cfg.grid, [4, 5]);
        assert_eq!(cfg.resamples, 100);
        assert!(!cfg.noiseless);

        assert!(ExperimentConfig::parse(r#"{"m": [], "n_fragments": [1]}"#).is_err());
        assert!(ExperimentConfig::parse(
            r#"{"m": [4], "n_fragments": [1], "mode": "exact", "backend": "trajectory"}"#
        )
        .is_err());
        assert!("sampled".parse::<Mode>().is_ok());
        assert!("qpu".parse::<Backend>().is_err());
    }

    #[test]
    fn noiseless_sweep_is_ideal() {
        let result = run_sweep(&noiseless_config(vec![4], vec![1, 2])).unwrap();
        assert_eq!(result.rows.len(), 2);
        for row in &result.rows {
            assert_eq!(row.status, "ok");
            assert!((row.p_success.unwrap() - 1.0).abs() < 1e-10, "{row:?}");
            assert_eq!(row.sem.unwrap(), 0.0);
        }
        assert_eq!(result.rows[0].variant_count, 1);
        assert_eq!(result.rows[1].variant_count, 6);
    }

    #[test]
    fn sweep_csv_is_deterministic() {
        let cfg = ExperimentConfig {
            mode: Mode::Sampled,
            ..noiseless_config(vec![4], vec![2])
        };
        let a = run_sweep(&cfg).unwrap().to_csv();
        let b = run_sweep(&cfg).unwrap().to_csv();
        assert_eq!(a, b);
        assert!(a.starts_with("m,n_fragments,max_fragment_size,P_success,SEM\n"));
    }

    #[test]
    fn infeasible_cells_are_annotated() {
        let result = run_sweep(&noiseless_config(vec![4], vec![1, 3])).unwrap();
        assert_eq!(result.rows.len(), 2);
        assert_eq!(result.rows[0].status, "ok");
        assert_ne!(result.rows[1].status, "ok"); // 3 fragments over 4 wires
        assert!(result.rows[1].p_success.is_none());
        // the CSV still carries the row
        assert_eq!(result.to_csv().lines().count(), 3);
    }

    #[test]
    fn cut_writes_files_and_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = cmd_cut(6, 2, dir.path()).unwrap();
        assert_eq!(manifest.variants.len(), 6);
        for v in &manifest.variants {
            assert!(dir.path().join(&v.qasm_file).exists(), "{}", v.qasm_file);
        }
        assert!(dir.path().join(MANIFEST_FILE).exists());
        // no cuts: a single file
        let dir1 = tempfile::tempdir().unwrap();
        assert_eq!(cmd_cut(4, 1, dir1.path()).unwrap().variants.len(), 1);
        // the larger export scale
        let dir2 = tempfile::tempdir().unwrap();
        let big = cmd_cut(24, 6, dir2.path()).unwrap();
        assert_eq!(big.variants.len(), 42);
        assert_eq!(big.plan.fragments.len(), 6);
    }

    #[test]
    fn cut_then_recombine_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = cmd_cut(4, 2, dir.path()).unwrap();
        let map = grid_coupling(4, 5).unwrap();
        let params = NoiseParameters::noiseless();
        write_simulated_counts(&manifest, dir.path(), &map, &params, 8192, 11).unwrap();
        let report =
            cmd_recombine(&dir.path().join(MANIFEST_FILE), dir.path(), 50, 13).unwrap();
        assert_eq!(report.shots, 8192);
        assert!(
            (report.p_success - 1.0).abs() <= 4.0 * report.sem.max(1e-3),
            "P = {} ± {}",
            report.p_success,
            report.sem
        );
    }

    #[test]
    fn recombine_names_missing_variants() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = cmd_cut(4, 2, dir.path()).unwrap();
        let map = grid_coupling(4, 5).unwrap();
        write_simulated_counts(&manifest, dir.path(), &map, &NoiseParameters::noiseless(), 100, 1)
            .unwrap();
        let victim = &manifest.variants[2];
        std::fs::remove_file(dir.path().join(&victim.counts_file)).unwrap();
        let err = cmd_recombine(&dir.path().join(MANIFEST_FILE), dir.path(), 10, 1).unwrap_err();
        assert!(matches!(err, Error::IncompleteInput(_)));
        assert!(err.to_string().contains(&victim.basis), "{err}");
    }

    #[test]
    fn calibration_report_values() {
        let report = cmd_calibrate(None).unwrap();
        assert!((report.gamma_readout - 0.041).abs() < 1e-12);
        assert!((report.p_depol_1q - 6.15e-4).abs() < 1e-9);
        assert!((report.p_depol_2q - 1.2634e-3).abs() < 5e-7);
        assert!(report.t_meas_us > 2.70 && report.t_meas_us < 2.75);
    }
}
