//! End-to-end checks that cross module boundaries: cut → route → schedule →
//! simulate → recombine against the statevector oracle, QASM round trips
//! through a minimal parser, the CLI surface, and property-based invariants.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;

use proptest::prelude::*;

use qdc::circuit::{build_ghz_chain, Circuit, Gate, GateKind};
use qdc::cutter::{cut_plan_equal, fragment};
use qdc::experiment::{cmd_cut, cmd_recombine, write_simulated_counts, Manifest};
use qdc::noise::NoiseParameters;
use qdc::recombine::{recombine, success_probability, RecombinationPlan};
use qdc::router::{grid_coupling, route, verify_routed, RouteCheck};
use qdc::sim::{oracle_distribution, sample_counts};

// ---------------------------------------------------------------------------
// minimal OpenQASM 2.0 reader for round-trip checks (handles exactly the
// subset the exporter emits)

fn parse_qasm(text: &str) -> Circuit {
    let mut width = 0;
    let mut gates = Vec::new();
    let mut measured: Vec<(usize, usize)> = Vec::new(); // (creg bit, wire)
    let wire = |arg: &str| -> usize {
        arg.trim()
            .strip_prefix("q[")
            .and_then(|s| s.strip_suffix(']'))
            .expect("qubit operand")
            .parse()
            .expect("qubit index")
    };
    for line in text.lines() {
        let line = line.trim().trim_end_matches(';');
        if line.is_empty()
            || line.starts_with("//")
            || line.starts_with("OPENQASM")
            || line.starts_with("include")
            || line.starts_with("creg")
        {
            continue;
        }
        if let Some(rest) = line.strip_prefix("qreg q[") {
            width = rest.strip_suffix(']').expect("qreg").parse().expect("qreg size");
        } else if let Some(rest) = line.strip_prefix("measure ") {
            let (q, c) = rest.split_once("->").expect("measure arrow");
            let bit: usize = c
                .trim()
                .strip_prefix("c[")
                .and_then(|s| s.strip_suffix(']'))
                .expect("clbit")
                .parse()
                .expect("clbit index");
            measured.push((bit, wire(q)));
        } else {
            let (name, args) = line.split_once(' ').expect("gate statement");
            let qubits: Vec<usize> = args.split(',').map(wire).collect();
            let kind = match name {
                "h" => GateKind::H,
                "x" => GateKind::X,
                "y" => GateKind::Y,
                "z" => GateKind::Z,
                "s" => GateKind::S,
                "sdg" => GateKind::Sdg,
                "cx" => GateKind::Cnot,
                "swap" => GateKind::Swap,
                other => panic!("unknown gate {other}"),
            };
            gates.push(Gate::new(kind, qubits));
        }
    }
    measured.sort();
    Circuit::new(width, gates, measured.into_iter().map(|(_, w)| w).collect())
}

#[test]
fn qasm_round_trips_uncut_chain() {
    for m in [2, 5, 8] {
        let c = build_ghz_chain(m).unwrap();
        assert_eq!(parse_qasm(&qdc::qasm::export_qasm(&c)), c);
    }
}

#[test]
fn qasm_round_trips_every_exported_variant() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = cmd_cut(6, 3, dir.path()).unwrap();
    let fs = fragment(&build_ghz_chain(6).unwrap(), &cut_plan_equal(6, 3).unwrap()).unwrap();
    let mut originals = BTreeMap::new();
    for f in &fs.fragments {
        for v in f.variants() {
            originals.insert((f.id, v.basis_string.clone()), v.circuit);
        }
    }
    assert_eq!(manifest.variants.len(), originals.len());
    for mv in &manifest.variants {
        let text = std::fs::read_to_string(dir.path().join(&mv.qasm_file)).unwrap();
        let parsed = parse_qasm(&text);
        assert_eq!(&parsed, &originals[&(mv.fragment, mv.basis.clone())], "{}", mv.qasm_file);
        assert_eq!(parsed.measured.len(), mv.n_readout_bits);
    }
}

// ---------------------------------------------------------------------------
// full pipeline against the oracle

#[test]
fn noiseless_pipeline_matches_oracle_through_routing() {
    let map = grid_coupling(4, 5).unwrap();
    let params = NoiseParameters::noiseless();
    for (m, n) in [(6usize, 3usize), (7, 2), (8, 4)] {
        let c = build_ghz_chain(m).unwrap();
        let oracle = oracle_distribution(&c).unwrap();
        let fs = fragment(&c, &cut_plan_equal(m, n).unwrap()).unwrap();
        let plan = RecombinationPlan::from_fragment_set(&fs).unwrap();
        let (tables, _) =
            qdc::experiment::exact_variant_tables(&fs, &map, None, &params).unwrap();
        let p = recombine(&plan, &tables).unwrap();
        for i in 0..1usize << m {
            assert!((p.probs[i] - oracle.probs[i]).abs() < 1e-10, "m={m} n={n} index {i}");
        }
    }
}

#[test]
fn closed_loop_counts_recombine_near_unity() {
    // cut → export → simulate counts in place of hardware → recombine
    let dir = tempfile::tempdir().unwrap();
    let manifest = cmd_cut(6, 2, dir.path()).unwrap();
    let map = grid_coupling(4, 5).unwrap();
    write_simulated_counts(&manifest, dir.path(), &map, &NoiseParameters::noiseless(), 8192, 7)
        .unwrap();
    let report = cmd_recombine(&dir.path().join("manifest.json"), dir.path(), 100, 7).unwrap();
    assert_eq!(report.m, 6);
    assert_eq!(report.shots, 8192);
    assert!((report.p_success - 1.0).abs() <= 3.0 * report.sem + 1e-3, "{report:?}");
}

#[test]
fn recombine_reports_every_missing_variant() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = cmd_cut(4, 2, dir.path()).unwrap();
    let err = cmd_recombine(&dir.path().join("manifest.json"), dir.path(), 10, 0).unwrap_err();
    let msg = err.to_string();
    for v in &manifest.variants {
        assert!(msg.contains(&v.counts_file), "{msg} lacks {}", v.counts_file);
    }
}

// ---------------------------------------------------------------------------
// CLI surface

fn qdc_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qdc"))
}

#[test]
fn cli_export_qasm_prints_parseable_circuit() {
    let out = qdc_bin().args(["export-qasm", "--m", "4"]).output().unwrap();
    assert!(out.status.success());
    let parsed = parse_qasm(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(parsed, build_ghz_chain(4).unwrap());
}

#[test]
fn cli_calibrate_defaults_report_known_values() {
    let out = qdc_bin().args(["calibrate"]).output().unwrap();
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).unwrap();
    assert!((report["gamma_readout"].as_f64().unwrap() - 0.0414).abs() < 5e-4);
    assert!((report["p_depol_2q"].as_f64().unwrap() - 1.2634e-3).abs() < 1e-6);
}

#[test]
fn cli_cut_then_recombine_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("frags");
    let status = qdc_bin()
        .args(["cut", "--m", "4", "--fragments", "2", "--out"])
        .arg(&out_dir)
        .status()
        .unwrap();
    assert!(status.success());
    let manifest_path = out_dir.join("manifest.json");
    let manifest: Manifest =
        serde_json::from_str(&std::fs::read_to_string(&manifest_path).unwrap()).unwrap();
    let map = grid_coupling(4, 5).unwrap();
    write_simulated_counts(&manifest, &out_dir, &map, &NoiseParameters::noiseless(), 4096, 3)
        .unwrap();
    let out = qdc_bin()
        .args(["recombine", "--resamples", "50", "--manifest"])
        .arg(&manifest_path)
        .arg("--counts")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let p = report["p_success"].as_f64().unwrap();
    assert!((p - 1.0).abs() < 0.05, "p_success = {p}");
}

#[test]
fn cli_sweep_writes_deterministic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.json");
    std::fs::write(
        &config,
        r#"{ "m": [4, 5], "n_fragments": [1, 3], "mode": "exact" }"#,
    )
    .unwrap();
    let run = |out: &Path| {
        let status = qdc_bin()
            .args(["sweep", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read_to_string(out.join("sweep.csv")).unwrap()
    };
    let a = run(&dir.path().join("a"));
    let b = run(&dir.path().join("b"));
    assert_eq!(a, b, "equal (config, seed) runs must be byte-identical");
    assert!(a.starts_with("m,n_fragments,max_fragment_size,P_success,SEM\n"));
    // 4 requested cells; (4,3) and (5,3) are infeasible (fragments would
    // shrink below two wires) but still present as annotated rows
    assert_eq!(a.lines().count(), 5);
    assert_eq!(a.lines().filter(|l| l.ends_with(",,")).count(), 2);
    assert!(a.lines().any(|l| l.starts_with("5,3,") && l.ends_with(",,")));
}

#[test]
fn cli_rejects_exact_trajectory_combination() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.json");
    std::fs::write(&config, r#"{ "m": [4], "n_fragments": [1] }"#).unwrap();
    let out = qdc_bin()
        .args(["sweep", "--backend", "trajectory", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(std::str::from_utf8(&out.stderr).unwrap().contains("error:"));
}

// ---------------------------------------------------------------------------
// property-based invariants

fn arb_gate(width: usize) -> impl Strategy<Value = Gate> {
    let one = (0usize..8, 0..width).prop_map(|(k, q)| {
        let kind = [GateKind::H, GateKind::X, GateKind::Y, GateKind::Z, GateKind::S, GateKind::Sdg]
            [k % 6];
        Gate::new(kind, vec![q])
    });
    let two = (0..width, 0..width, any::<bool>()).prop_filter_map("distinct operands", move |(a, b, swap)| {
        if a == b {
            return None;
        }
        Some(Gate::new(if swap { GateKind::Swap } else { GateKind::Cnot }, vec![a, b]))
    });
    prop_oneof![3 => one, 2 => two]
}

fn arb_circuit() -> impl Strategy<Value = Circuit> {
    (2usize..=6).prop_flat_map(|width| {
        proptest::collection::vec(arb_gate(width), 1..12)
            .prop_map(move |gates| Circuit::new(width, gates, (0..width).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn routing_preserves_distribution_on_grid(c in arb_circuit()) {
        let map = grid_coupling(4, 5).unwrap();
        let routed = route(&c, &map, None).unwrap();
        prop_assert_eq!(verify_routed(&c, &routed, &map).unwrap(), RouteCheck::Ok);
    }

    #[test]
    fn routing_is_idempotent_on_compliant_circuits(c in arb_circuit()) {
        let map = grid_coupling(4, 5).unwrap();
        let routed = route(&c.clone(), &map, None).unwrap();
        let again = route(&routed.circuit, &map, None).unwrap();
        prop_assert_eq!(again.swap_count, 0);
        prop_assert_eq!(&again.circuit.gates, &routed.circuit.gates);
    }

    #[test]
    fn sampled_counts_total_the_requested_shots(
        m in 2usize..=6,
        shots in 1u64..10_000,
        seed in any::<u64>(),
    ) {
        let table = oracle_distribution(&build_ghz_chain(m).unwrap()).unwrap();
        let counts = sample_counts(&table, shots, seed).unwrap();
        prop_assert_eq!(counts.counts.iter().sum::<u64>(), shots);
        prop_assert_eq!(counts.shots, shots);
    }

    #[test]
    fn noiseless_recombination_stays_normalized(m in 2usize..=7, n in 1usize..=3) {
        prop_assume!(2 * n <= m);
        let c = build_ghz_chain(m).unwrap();
        let fs = fragment(&c, &cut_plan_equal(m, n).unwrap()).unwrap();
        let plan = RecombinationPlan::from_fragment_set(&fs).unwrap();
        let map = grid_coupling(4, 5).unwrap();
        let (tables, _) =
            qdc::experiment::exact_variant_tables(&fs, &map, None, &NoiseParameters::noiseless())
                .unwrap();
        let p = recombine(&plan, &tables).unwrap();
        prop_assert!((p.total() - 1.0).abs() < 1e-10);
        prop_assert!((success_probability(&p, m).unwrap() - 1.0).abs() < 1e-10);
    }
}
