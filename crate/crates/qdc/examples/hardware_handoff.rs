//! The external-execution path: export fragment variants as QASM plus a
//! manifest, obtain per-variant counts (here simulated in place of a real
//! device), and recombine the counts with bootstrap error bars.

use qdc::experiment::{cmd_cut, cmd_recombine, write_simulated_counts};
use qdc::noise::NoiseParameters;
use qdc::router::grid_coupling;

fn main() {
    let dir = std::env::temp_dir().join("qdc_handoff");
    let manifest = cmd_cut(6, 2, &dir).unwrap();
    println!("wrote {} variant QASM files to {}", manifest.variants.len(), dir.display());
    for v in &manifest.variants {
        println!("  {} -> expects {}", v.qasm_file, v.counts_file);
    }

    // a hardware provider would run the QASM files; we stand in for it
    let map = grid_coupling(4, 5).unwrap();
    let params = NoiseParameters::chip_defaults();
    write_simulated_counts(&manifest, &dir, &map, &params, 8192, 42).unwrap();

    let report = cmd_recombine(&dir.join("manifest.json"), &dir, 100, 42).unwrap();
    println!(
        "\nrecombined m={} from {} shots/variant: P_success = {:.4} +/- {:.4}",
        report.m, report.shots, report.p_success, report.sem
    );
    if let Some(neg) = report.negative_mass {
        println!("negative mass in the quasi-distribution: {neg:.4}");
    }
}
