//! Cuts a 6-qubit chain into two fragments and walks through what the
//! cutter produces: fragment shapes, the 3^K basis variants per fragment,
//! and the executable circuit of one variant.

use qdc::cutter::{cut_plan_equal, fragment};
use qdc::qasm::export_qasm;
use qdc::build_ghz_chain;

fn main() {
    let m = 6;
    let circuit = build_ghz_chain(m).unwrap();
    let cuts = cut_plan_equal(m, 2).unwrap();
    for c in &cuts.cuts {
        println!("cut on wire {} before gate {}", c.wire, c.position);
    }

    let fs = fragment(&circuit, &cuts).unwrap();
    println!("\n{} fragments, max size {}:", fs.fragments.len(), fs.max_fragment_size());
    for f in &fs.fragments {
        println!(
            "  fragment {}: global wires {:?}, {} ancilla(s), physical width {}, {} variant(s)",
            f.id,
            f.locals,
            f.n_ancillas(),
            f.width(),
            f.n_variants()
        );
    }

    // every fragment runs once per basis assignment over its touching cuts
    let tail = &fs.fragments[1];
    for v in tail.variants() {
        println!("\nfragment {} variant {:?}:", v.fragment_id, v.basis_string);
        if v.basis_string == "X" {
            print!("{}", export_qasm(&v.circuit));
        } else {
            println!("  ({} gates, {} readout bits)", v.circuit.gates.len(), v.circuit.measured.len());
        }
    }
}
