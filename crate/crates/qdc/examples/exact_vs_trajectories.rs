//! Runs the same noisy circuit on both simulator backends and compares
//! their distributions: the dense density-matrix backend is exact, the
//! trajectory backend converges to it at the usual 1/sqrt(shots) rate.

use qdc::circuit::index_to_bitstring;
use qdc::noise::NoiseParameters;
use qdc::schedule::{noise_pass, schedule_asap};
use qdc::sim::{run_exact, run_trajectories};
use qdc::build_ghz_chain;

fn main() {
    let m = 4;
    let params = NoiseParameters::chip_defaults();
    let circuit = build_ghz_chain(m).unwrap();
    let noisy = noise_pass(&schedule_asap(&circuit, &params).unwrap(), &params).unwrap();

    let exact = run_exact(&noisy).unwrap();
    println!("exact backend, top outcomes:");
    let mut ranked: Vec<_> = exact.probs.iter().copied().enumerate().collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1));
    for &(i, p) in ranked.iter().take(4) {
        println!("  {}  {p:.5}", index_to_bitstring(i as u64, m));
    }

    for n_traj in [1_000u64, 10_000, 100_000] {
        let counts = run_trajectories(&noisy, n_traj, 11).unwrap();
        let tv = exact.total_variation(&counts.frequencies());
        println!("{n_traj:>7} trajectories: total-variation distance {tv:.5}");
    }
}
