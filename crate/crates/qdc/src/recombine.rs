//! Recombination of fragment distributions into the full-circuit
//! distribution, the chain-success metric, and bootstrap error bars.
//!
//! For a single cut the reconstruction is
//! `p(b) = sum_alpha sum_{b,b'} gamma_alpha^{bb'} p_A^alpha(..; b') p_B^alpha(b; ..)`
//! with `gamma_X^{bb'} = 2*delta - 1`, `gamma_Y = -gamma_X` and
//! `gamma_Z^{bb'} = 2*delta`; a chain of K cuts nests this K times. The sum
//! is evaluated directly over all 12^K (basis, bit-pair) terms — small K is
//! the regime of interest and auditable code beats clever contraction.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::ghz_success_indices;
use crate::cutter::{Axis, FragmentSet, AXES};
use crate::error::{Error, Result};
use crate::sim::{multinomial, CountTable, ProbTable};

/// Full-table recombination refuses wider outputs than this (the success
/// metric only needs [`recombine_point`]).
pub const MAX_DENSE_RECOMBINE_BITS: usize = 20;

/// The quasi-probability recombination coefficient for basis `axis`, downstream
/// ancilla bit `b` and upstream cut-wire bit `b_prime`.
pub fn gamma(axis: Axis, b: u8, b_prime: u8) -> f64 {
    let equal = b == b_prime;
    match axis {
        Axis::X => {
            if equal {
                1.0
            } else {
                -1.0
            }
        }
        Axis::Y => {
            if equal {
                -1.0
            } else {
                1.0
            }
        }
        Axis::Z => {
            if equal {
                2.0
            } else {
                0.0
            }
        }
    }
}

/// One fragment's role in a chain recombination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanFragment {
    pub id: usize,
    /// Cut index feeding this fragment (absent for the chain head).
    pub in_cut: Option<usize>,
    /// Cut index this fragment measures (absent for the chain tail).
    pub out_cut: Option<usize>,
    pub n_logical: usize,
    /// Global readout bit position of each logical bit (0 = leftmost).
    pub global_positions: Vec<usize>,
}

impl PlanFragment {
    pub fn n_readout_bits(&self) -> usize {
        usize::from(self.in_cut.is_some()) + self.n_logical + usize::from(self.out_cut.is_some())
    }

    /// Variant lookup key for a basis assignment (cut index -> axis):
    /// letters of the touching cuts in ascending cut order.
    pub fn basis_string(&self, axis_of_cut: &BTreeMap<usize, Axis>) -> String {
        let mut cuts: Vec<usize> = self.in_cut.iter().chain(self.out_cut.iter()).copied().collect();
        cuts.sort_unstable();
        cuts.iter().map(|k| axis_of_cut[k].letter()).collect()
    }

    /// Index into a variant table for (ancilla bit, local outcome, out bit),
    /// matching the (ancilla, logical, out-cut) readout order.
    pub fn table_index(&self, anc: usize, locals: usize, out: usize) -> usize {
        let o = usize::from(self.out_cut.is_some());
        (anc << (self.n_logical + o)) | (locals << o) | out
    }
}

/// A validated chain of fragments: fragment `j` feeds fragment `j+1`
/// through cut `links[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecombinationPlan {
    pub n_bits: usize,
    pub fragments: Vec<PlanFragment>,
    /// Cut indices in chain order.
    pub links: Vec<usize>,
}

impl RecombinationPlan {
    pub fn n_cuts(&self) -> usize {
        self.links.len()
    }

    /// Builds the chain plan from a fragment set, rejecting non-chain
    /// topologies (a fragment with two incoming or two outgoing cuts).
    pub fn from_fragment_set(fs: &FragmentSet) -> Result<Self> {
        for f in &fs.fragments {
            if f.in_cuts.len() > 1 || f.out_cuts.len() > 1 {
                return Err(Error::InvalidArgument(format!(
                    "fragment {} touches {} incoming and {} outgoing cuts; only chains recombine",
                    f.id,
                    f.in_cuts.len(),
                    f.out_cuts.len()
                )));
            }
        }
        let heads: Vec<&crate::cutter::Fragment> =
            fs.fragments.iter().filter(|f| f.in_cuts.is_empty()).collect();
        if heads.len() != 1 {
            return Err(Error::InvalidArgument(format!(
                "expected exactly one chain head, found {}",
                heads.len()
            )));
        }
        let mut ordered = vec![heads[0]];
        let mut links = Vec::new();
        while let Some(&out) = ordered.last().unwrap().out_cuts.first() {
            let next = fs
                .fragments
                .iter()
                .find(|f| f.in_cuts.first() == Some(&out))
                .ok_or_else(|| {
                    Error::InvalidArgument(format!("cut {out} has no downstream fragment"))
                })?;
            links.push(out);
            ordered.push(next);
        }
        if ordered.len() != fs.fragments.len() {
            return Err(Error::InvalidArgument(
                "fragments do not form a single chain".into(),
            ));
        }

        let n_bits = fs.source_measured.len();
        let mut covered = vec![false; n_bits];
        let mut fragments = Vec::with_capacity(ordered.len());
        for f in ordered {
            let mut global_positions = Vec::with_capacity(f.logical_measured.len());
            for &(_, global_wire) in &f.logical_measured {
                let pos = fs
                    .source_measured
                    .iter()
                    .position(|&w| w == global_wire)
                    .ok_or_else(|| {
                        Error::Invariant(format!("wire {global_wire} not in source readout"))
                    })?;
                if covered[pos] {
                    return Err(Error::Invariant(format!(
                        "readout bit {pos} claimed by two fragments"
                    )));
                }
                covered[pos] = true;
                global_positions.push(pos);
            }
            fragments.push(PlanFragment {
                id: f.id,
                in_cut: f.in_cuts.first().copied(),
                out_cut: f.out_cuts.first().copied(),
                n_logical: f.logical_measured.len(),
                global_positions,
            });
        }
        if !covered.iter().all(|&c| c) {
            return Err(Error::Invariant("some readout bits belong to no fragment".into()));
        }
        Ok(RecombinationPlan { n_bits, fragments, links })
    }
}

/// Variant distributions keyed by (fragment id, basis string).
pub type VariantTables = BTreeMap<(usize, String), ProbTable>;

fn lookup<'a>(
    tables: &'a VariantTables,
    plan_fragment: &PlanFragment,
    basis: &str,
) -> Result<&'a ProbTable> {
    let t = tables.get(&(plan_fragment.id, basis.to_string())).ok_or_else(|| {
        Error::IncompleteInput(format!(
            "no table for fragment {} basis {:?}",
            plan_fragment.id, basis
        ))
    })?;
    if t.n_bits != plan_fragment.n_readout_bits() {
        return Err(Error::Schema(format!(
            "fragment {} basis {:?}: table has {} bits, expected {}",
            plan_fragment.id,
            basis,
            t.n_bits,
            plan_fragment.n_readout_bits()
        )));
    }
    Ok(t)
}

/// Iterates all {X,Y,Z}^K assignments; for each, hands over the axis map and
/// the variant tables in chain order.
fn for_each_basis_assignment<F>(
    plan: &RecombinationPlan,
    tables: &VariantTables,
    mut f: F,
) -> Result<()>
where
    F: FnMut(&[Axis], &[&ProbTable]) -> (),
{
    let k = plan.n_cuts();
    let mut assignment = vec![0usize; k];
    loop {
        let axes: Vec<Axis> = assignment.iter().map(|&i| AXES[i]).collect();
        let axis_of_cut: BTreeMap<usize, Axis> =
            plan.links.iter().copied().zip(axes.iter().copied()).collect();
        let mut slices = Vec::with_capacity(plan.fragments.len());
        for pf in &plan.fragments {
            slices.push(lookup(tables, pf, &pf.basis_string(&axis_of_cut))?);
        }
        f(&axes, &slices);
        let mut carry = true;
        for slot in assignment.iter_mut().rev() {
            if *slot < 2 {
                *slot += 1;
                carry = false;
                break;
            }
            *slot = 0;
        }
        if carry {
            return Ok(());
        }
    }
}

/// Per-link bits: `anc[i]` is the ancilla bit measured by fragment `i+1`,
/// `out[i]` the cut-wire bit measured by fragment `i`.
fn gamma_product(axes: &[Axis], anc_bits: usize, out_bits: usize) -> f64 {
    let mut w = 1.0;
    for (i, &axis) in axes.iter().enumerate() {
        let b = ((anc_bits >> i) & 1) as u8;
        let bp = ((out_bits >> i) & 1) as u8;
        w *= gamma(axis, b, bp);
        if w == 0.0 {
            return 0.0;
        }
    }
    w
}

/// Recombines exact or empirical variant tables into the full readout
/// distribution. Values are raw quasi-probabilities: negative entries under
/// shot noise are preserved, not clipped.
pub fn recombine(plan: &RecombinationPlan, tables: &VariantTables) -> Result<ProbTable> {
    if plan.n_bits > MAX_DENSE_RECOMBINE_BITS {
        return Err(Error::Capacity(format!(
            "{} readout bits exceed the dense recombination bound of {}",
            plan.n_bits, MAX_DENSE_RECOMBINE_BITS
        )));
    }
    let k = plan.n_cuts();
    if k == 0 {
        let t = lookup(tables, &plan.fragments[0], "")?;
        return Ok(reorder_single(plan, t));
    }

    // global-index contribution of each fragment's local outcome
    let scatter: Vec<Vec<usize>> = plan
        .fragments
        .iter()
        .map(|pf| {
            (0..1usize << pf.n_logical)
                .map(|l| {
                    pf.global_positions
                        .iter()
                        .enumerate()
                        .map(|(bit, &pos)| {
                            ((l >> (pf.n_logical - 1 - bit)) & 1) << (plan.n_bits - 1 - pos)
                        })
                        .sum()
                })
                .collect()
        })
        .collect();

    let mut out = vec![0.0f64; 1 << plan.n_bits];
    for_each_basis_assignment(plan, tables, |axes, slices| {
        for anc_bits in 0..1usize << k {
            for out_bits in 0..1usize << k {
                let w = gamma_product(axes, anc_bits, out_bits);
                if w == 0.0 {
                    continue;
                }
                scatter_product(
                    plan, slices, &scatter, anc_bits, out_bits, 0, 0, w, &mut out,
                );
            }
        }
    })?;
    ProbTable::new(plan.n_bits, out)
}

#[allow(clippy::too_many_arguments)]
fn scatter_product(
    plan: &RecombinationPlan,
    slices: &[&ProbTable],
    scatter: &[Vec<usize>],
    anc_bits: usize,
    out_bits: usize,
    j: usize,
    gidx: usize,
    weight: f64,
    out: &mut [f64],
) {
    if j == plan.fragments.len() {
        out[gidx] += weight;
        return;
    }
    let pf = &plan.fragments[j];
    let anc = if pf.in_cut.is_some() { (anc_bits >> (j - 1)) & 1 } else { 0 };
    let ob = if pf.out_cut.is_some() { (out_bits >> j) & 1 } else { 0 };
    for l in 0..1usize << pf.n_logical {
        let p = slices[j].probs[pf.table_index(anc, l, ob)];
        if p == 0.0 {
            continue;
        }
        scatter_product(
            plan,
            slices,
            scatter,
            anc_bits,
            out_bits,
            j + 1,
            gidx | scatter[j][l],
            weight * p,
            out,
        );
    }
}

/// K = 0 case: the single fragment's table, with bits permuted from the
/// fragment's logical order into the global readout order.
fn reorder_single(plan: &RecombinationPlan, t: &ProbTable) -> ProbTable {
    let pf = &plan.fragments[0];
    let mut out = vec![0.0; 1 << plan.n_bits];
    for (l, &p) in t.probs.iter().enumerate() {
        let mut gidx = 0usize;
        for (bit, &pos) in pf.global_positions.iter().enumerate() {
            gidx |= ((l >> (pf.n_logical - 1 - bit)) & 1) << (plan.n_bits - 1 - pos);
        }
        out[gidx] += p;
    }
    ProbTable { n_bits: plan.n_bits, probs: out }
}

/// Evaluates the recombined quasi-probability of a single global outcome
/// without building the full table; the only recombination path that scales
/// to wide circuits.
pub fn recombine_point(
    plan: &RecombinationPlan,
    tables: &VariantTables,
    global_index: u64,
) -> Result<f64> {
    let k = plan.n_cuts();
    // each fragment's local outcome gathered from the global index
    let local_outcomes: Vec<usize> = plan
        .fragments
        .iter()
        .map(|pf| {
            pf.global_positions.iter().fold(0usize, |acc, &pos| {
                (acc << 1) | ((global_index >> (plan.n_bits - 1 - pos)) & 1) as usize
            })
        })
        .collect();
    if k == 0 {
        let t = lookup(tables, &plan.fragments[0], "")?;
        return Ok(t.probs[local_outcomes[0]]);
    }
    let mut total = 0.0;
    for_each_basis_assignment(plan, tables, |axes, slices| {
        for anc_bits in 0..1usize << k {
            for out_bits in 0..1usize << k {
                let w = gamma_product(axes, anc_bits, out_bits);
                if w == 0.0 {
                    continue;
                }
                let mut prod = w;
                for (j, pf) in plan.fragments.iter().enumerate() {
                    let anc = if pf.in_cut.is_some() { (anc_bits >> (j - 1)) & 1 } else { 0 };
                    let ob = if pf.out_cut.is_some() { (out_bits >> j) & 1 } else { 0 };
                    prod *= slices[j].probs[pf.table_index(anc, local_outcomes[j], ob)];
                    if prod == 0.0 {
                        break;
                    }
                }
                total += prod;
            }
        }
    })?;
    Ok(total)
}

/// Chain-success metric: summed quasi-probability of the two ideal chain
/// bitstrings (0…01…1 and its complement), evaluated raw.
pub fn success_probability(table: &ProbTable, m: usize) -> Result<f64> {
    if table.n_bits != m {
        return Err(Error::InvalidArgument(format!(
            "table covers {} bits, expected {m}",
            table.n_bits
        )));
    }
    if m < 2 {
        return Err(Error::InvalidArgument("success metric needs m >= 2".into()));
    }
    let (a, b) = ghz_success_indices(m);
    Ok(table.probs[a as usize] + table.probs[b as usize])
}

/// Same metric straight from the plan and variant tables, without a full
/// table.
pub fn success_probability_from_tables(
    plan: &RecombinationPlan,
    tables: &VariantTables,
) -> Result<f64> {
    let (a, b) = ghz_success_indices(plan.n_bits);
    Ok(recombine_point(plan, tables, a)? + recombine_point(plan, tables, b)?)
}

/// Total absolute weight of negative entries — the shot-noise diagnostic for
/// quasi-probability tables.
pub fn negative_mass(table: &ProbTable) -> f64 {
    table.probs.iter().filter(|&&p| p < 0.0).map(|&p| -p).sum()
}

/// Total executable circuits for a plan: sum over fragments of
/// 3^(touching cuts).
pub fn variant_cost(plan: &RecombinationPlan) -> usize {
    plan.fragments
        .iter()
        .map(|pf| {
            let t = usize::from(pf.in_cut.is_some()) + usize::from(pf.out_cut.is_some());
            3usize.pow(t as u32)
        })
        .sum()
}

/// Bootstrap estimate of the chain-success metric from variant counts:
/// `resamples` multinomial redraws of every variant, each recombined and
/// scored; returns (sample mean, sample standard deviation). The standard
/// deviation over resamples is the resampling estimate of the statistic's
/// standard error.
pub fn bootstrap_success(
    counts: &BTreeMap<(usize, String), CountTable>,
    plan: &RecombinationPlan,
    resamples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if resamples < 2 {
        return Err(Error::InvalidArgument("need at least 2 resamples".into()));
    }
    let mut shots = None;
    for ((frag, basis), t) in counts {
        if t.shots == 0 {
            return Err(Error::InvalidArgument(format!(
                "variant ({frag}, {basis:?}) has zero shots"
            )));
        }
        match shots {
            None => shots = Some(t.shots),
            Some(s) if s != t.shots => {
                return Err(Error::InvalidArgument(format!(
                    "unequal shots: variant ({frag}, {basis:?}) has {} but another has {s}",
                    t.shots
                )));
            }
            _ => {}
        }
    }
    let shots = shots.ok_or_else(|| Error::IncompleteInput("no variant counts given".into()))?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(resamples);
    for _ in 0..resamples {
        let mut tables = VariantTables::new();
        for (key, t) in counts {
            let weights: Vec<f64> = t.counts.iter().map(|&c| c as f64).collect();
            let redrawn = multinomial(&weights, shots, &mut rng);
            let probs = redrawn.iter().map(|&c| c as f64 / shots as f64).collect();
            tables.insert(key.clone(), ProbTable { n_bits: t.n_bits, probs });
        }
        values.push(success_probability_from_tables(plan, &tables)?);
    }
    let mean = values.iter().sum::<f64>() / resamples as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
        / (resamples as f64 - 1.0);
    Ok((mean, var.sqrt()))
}
