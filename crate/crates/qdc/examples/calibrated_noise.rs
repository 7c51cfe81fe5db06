//! Shows how the chip-averaged calibration turns into concrete channel
//! strengths, and how a scheduled circuit is decorated with noise.

use qdc::noise::{amplitude_damping, pure_dephasing, t_phi, NoiseParameters};
use qdc::schedule::{noise_pass, schedule_asap};
use qdc::build_ghz_chain;

fn main() {
    let p = NoiseParameters::chip_defaults();
    println!("calibration: T1 = {} us, T2 = {} us, t_meas = {} us", p.t1_us, p.t2_us, p.t_meas_us);
    println!("derived:");
    println!("  T_phi              = {:.2} us", t_phi(p.t1_us, p.t2_us).unwrap());
    println!("  readout gamma      = {:.4}", p.gamma_readout());
    println!("  depolarizing p(1q) = {:.4e}", p.p_depol_1q().unwrap());
    println!("  depolarizing p(2q) = {:.4e}", p.p_depol_2q().unwrap());
    println!("  depolarizing p(SWAP as 3 CNOTs) = {:.4e}", p.p_depol_swap().unwrap());

    println!("\nidle decay per duration:");
    for tau_ns in [20.0, 200.0, 1000.0] {
        let ad = amplitude_damping(tau_ns, p.t1_us * 1000.0).unwrap();
        let pd = pure_dephasing(tau_ns, p.t1_us * 1000.0, p.t2_us * 1000.0).unwrap();
        println!(
            "  {tau_ns:6.0} ns: p_AD = {:.3e}, p_PD = {:.3e} (CPTP dev {:.1e})",
            1.0 - ad.operators[0][[1, 1]].norm_sqr(),
            1.0 - pd.operators[0][[1, 1]].norm_sqr(),
            ad.cptp_deviation().max(pd.cptp_deviation()),
        );
    }

    let c = build_ghz_chain(4).unwrap();
    let sched = schedule_asap(&c, &p).unwrap();
    let noisy = noise_pass(&sched, &p).unwrap();
    println!(
        "\nchain m=4: makespan {} ns, {} idle intervals, {} noise channels in the op stream",
        sched.makespan_ns,
        sched.idles.len(),
        noisy.channel_count()
    );
}
