//! Reproduces the headline experiment as a chain-length sweep: success
//! probability versus chain length, uncut and with two fragments. The
//! crossover shows where cutting starts to pay for its extra readouts.

use qdc::experiment::{run_sweep, ExperimentConfig};

fn main() {
    let config = ExperimentConfig::parse(
        r#"{
            "m": [4, 5, 6, 7, 8],
            "n_fragments": [1, 2],
            "mode": "exact",
            "seed": 0
        }"#,
    )
    .unwrap();

    let result = run_sweep(&config).unwrap();
    print!("{}", result.to_csv());
    println!();
    for row in &result.rows {
        match row.p_success {
            Some(p) => println!(
                "m={} fragments={} max_size={} swaps={:2}  P_success={p:.4}",
                row.m, row.n_fragments, row.max_fragment_size, row.swap_count
            ),
            None => println!("m={} fragments={} skipped: {}", row.m, row.n_fragments, row.status),
        }
    }
}
