//! The full divide-and-compute loop in one place: cut the chain, simulate
//! every fragment variant, and recombine the variant distributions into the
//! full circuit's distribution — first noiselessly (exact reconstruction),
//! then under the calibrated noise model.

use qdc::circuit::index_to_bitstring;
use qdc::cutter::{cut_plan_equal, fragment};
use qdc::experiment::exact_variant_tables;
use qdc::noise::NoiseParameters;
use qdc::recombine::{negative_mass, recombine, success_probability, RecombinationPlan};
use qdc::router::grid_coupling;
use qdc::build_ghz_chain;

fn main() {
    let m = 6;
    let circuit = build_ghz_chain(m).unwrap();
    let fs = fragment(&circuit, &cut_plan_equal(m, 2).unwrap()).unwrap();
    let plan = RecombinationPlan::from_fragment_set(&fs).unwrap();
    let map = grid_coupling(4, 5).unwrap();

    for (label, params) in
        [("noiseless", NoiseParameters::noiseless()), ("calibrated", NoiseParameters::chip_defaults())]
    {
        let (tables, swaps) = exact_variant_tables(&fs, &map, None, &params).unwrap();
        let p = recombine(&plan, &tables).unwrap();
        println!("{label}: {} variants, {swaps} SWAPs", tables.len());
        println!("  sum of recombined values  {:.6}", p.total());
        println!("  negative mass             {:.2e}", negative_mass(&p));
        println!("  P_success                 {:.6}", success_probability(&p, m).unwrap());
        println!("  largest entries:");
        let mut ranked: Vec<_> = p.probs.iter().copied().enumerate().collect();
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1));
        for &(i, v) in ranked.iter().take(2) {
            println!("    {}  {v:.5}", index_to_bitstring(i as u64, m));
        }
        println!();
    }
}
