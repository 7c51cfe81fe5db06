//! Wire cutting: splitting a circuit into fragments at severed wires and
//! enumerating the measurement-basis variants each fragment must run.
//!
//! A cut severs one wire between two gates. The upstream fragment measures
//! the severed wire in a basis α ∈ {X, Y, Z}; the downstream fragment
//! replaces the wire with one half of a Bell pair whose ancilla is measured
//! in the same basis at the end of the circuit, steering the replacement
//! wire into the matching eigenstate. The recombiner stitches the resulting
//! distributions back together.
//!
//! Local wire layout per fragment: ancilla wires first (one per incoming
//! cut, in cut order), then the fragment's own wires in ascending global
//! order. Variant readout order is (ancilla bits, logical bits, out-cut
//! bits).

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, WireCut};
use crate::error::{Error, Result};

/// Measurement axis for a cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

pub const AXES: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

impl Axis {
    pub fn letter(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Result<Axis> {
        match c {
            'X' => Ok(Axis::X),
            'Y' => Ok(Axis::Y),
            'Z' => Ok(Axis::Z),
            _ => Err(Error::Schema(format!("unknown basis letter {c:?}"))),
        }
    }

    /// Gates rotating this axis into the computational basis before a
    /// measurement: X -> H, Y -> Sdg then H, Z -> nothing.
    pub fn basis_change(self, wire: usize) -> Vec<Gate> {
        match self {
            Axis::X => vec![Gate::h(wire)],
            Axis::Y => vec![Gate::sdg(wire), Gate::h(wire)],
            Axis::Z => vec![],
        }
    }
}

/// An ordered list of wire cuts. Cut indices elsewhere in the crate refer
/// to positions in this list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSet {
    pub cuts: Vec<WireCut>,
}

impl CutSet {
    pub fn new(cuts: Vec<WireCut>) -> Self {
        CutSet { cuts }
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }
}

/// One connected piece of a cut circuit. Gates are re-indexed to local
/// wires; the Bell-pair and basis-change gates are added per variant, not
/// here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    pub id: usize,
    /// Global wires with a segment in this fragment, ascending. Local wire
    /// index = `n_ancillas() + rank` in this list.
    pub locals: Vec<usize>,
    /// Cut indices whose downstream (Bell-steered) side starts here.
    pub in_cuts: Vec<usize>,
    /// Cut indices whose upstream side is measured here.
    pub out_cuts: Vec<usize>,
    /// Local wire steered by each incoming cut (parallel to `in_cuts`).
    pub steered_wires: Vec<usize>,
    /// Local wire measured for each outgoing cut (parallel to `out_cuts`).
    pub out_wires: Vec<usize>,
    /// The fragment's gates on local wire indices, original order kept.
    pub gates: Vec<Gate>,
    /// (local wire, global wire) for each logical readout bit, in the
    /// original circuit's measurement order.
    pub logical_measured: Vec<(usize, usize)>,
}

impl Fragment {
    pub fn n_ancillas(&self) -> usize {
        self.in_cuts.len()
    }

    /// Reported fragment size: own wires including steered replacements,
    /// excluding Bell ancillas.
    pub fn size(&self) -> usize {
        self.locals.len()
    }

    /// Simulated/executed width: size plus one ancilla per incoming cut.
    pub fn width(&self) -> usize {
        self.n_ancillas() + self.locals.len()
    }

    pub fn n_touching_cuts(&self) -> usize {
        self.in_cuts.len() + self.out_cuts.len()
    }

    pub fn n_variants(&self) -> usize {
        3usize.pow(self.n_touching_cuts() as u32)
    }

    /// Touching cut indices in ascending order, tagged with whether the cut
    /// enters (`true`) or leaves (`false`) this fragment.
    pub fn touching_cuts(&self) -> Vec<(usize, bool)> {
        let mut all: Vec<(usize, bool)> = self
            .in_cuts
            .iter()
            .map(|&k| (k, true))
            .chain(self.out_cuts.iter().map(|&k| (k, false)))
            .collect();
        all.sort_unstable();
        all
    }

    /// Enumerates all `3^t` basis variants, lexicographic in (X, Y, Z) over
    /// the touching cuts in ascending cut order.
    pub fn variants(&self) -> Vec<FragmentVariant> {
        let touching = self.touching_cuts();
        let t = touching.len();
        let mut out = Vec::with_capacity(3usize.pow(t as u32));
        let mut assignment = vec![0usize; t];
        loop {
            let bases: Vec<Axis> = assignment.iter().map(|&i| AXES[i]).collect();
            out.push(self.variant(&touching, &bases));
            // odometer increment
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
                break;
            }
        }
        out
    }

    fn variant(&self, touching: &[(usize, bool)], bases: &[Axis]) -> FragmentVariant {
        let n_anc = self.n_ancillas();
        let width = self.width();
        let basis_string: String = bases.iter().map(|a| a.letter()).collect();

        // basis per touching cut, split back into in/out order
        let basis_of = |cut: usize| -> Axis {
            let pos = touching.iter().position(|&(k, _)| k == cut).unwrap();
            bases[pos]
        };

        let mut gates = Vec::new();
        // ancillas occupy local wires 0..n_anc in cut order
        for (anc, &steered) in self.steered_wires.iter().enumerate() {
            gates.push(Gate::h(anc));
            gates.push(Gate::cnot(anc, steered));
        }
        gates.extend(self.gates.iter().cloned());
        for (slot, &cut) in self.out_cuts.iter().enumerate() {
            gates.extend(basis_of(cut).basis_change(self.out_wires[slot]));
        }
        for (anc, &cut) in self.in_cuts.iter().enumerate() {
            gates.extend(basis_of(cut).basis_change(anc));
        }

        let mut measured = Vec::new();
        measured.extend(0..n_anc);
        measured.extend(self.logical_measured.iter().map(|&(local, _)| local));
        measured.extend(self.out_wires.iter().copied());

        FragmentVariant {
            fragment_id: self.id,
            bases: touching.iter().map(|&(k, _)| (k, basis_of(k))).collect(),
            basis_string,
            circuit: Circuit::new(width, gates, measured),
        }
    }
}

/// One executable circuit: a fragment under a fixed basis assignment over
/// its touching cuts. Readout bits are (ancillas, logical bits, out-cut
/// bits) in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragmentVariant {
    pub fragment_id: usize,
    /// (cut index, basis) pairs, ascending cut index; concatenated letters
    /// form `basis_string`.
    pub bases: Vec<(usize, Axis)>,
    pub basis_string: String,
    pub circuit: Circuit,
}

impl FragmentVariant {
    /// File stem for exported artifacts: `{fragment}_{basisstring}`, or just
    /// the fragment id when the fragment touches no cut.
    pub fn file_stem(&self) -> String {
        if self.basis_string.is_empty() {
            format!("{}", self.fragment_id)
        } else {
            format!("{}_{}", self.fragment_id, self.basis_string)
        }
    }
}

/// The result of cutting a circuit: fragments ordered by their smallest
/// global wire, plus the cut list they refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragmentSet {
    pub fragments: Vec<Fragment>,
    pub cuts: CutSet,
    /// Original circuit width.
    pub source_width: usize,
    /// Original measurement order (global wires).
    pub source_measured: Vec<usize>,
}

impl FragmentSet {
    pub fn max_fragment_size(&self) -> usize {
        self.fragments.iter().map(Fragment::size).max().unwrap_or(0)
    }

    /// Total executable circuits: sum over fragments of 3^(touching cuts).
    pub fn variant_count(&self) -> usize {
        self.fragments.iter().map(Fragment::n_variants).sum()
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

fn validate_cuts(c: &Circuit, cuts: &CutSet) -> Result<()> {
    let per_wire = c.wire_gates();
    let mut seen = std::collections::BTreeSet::new();
    for (i, cut) in cuts.cuts.iter().enumerate() {
        if cut.wire >= c.width {
            return Err(Error::InvalidCut(format!(
                "cut {i}: wire {} out of range for width {}",
                cut.wire, c.width
            )));
        }
        if cut.position >= c.gates.len() || !c.gates[cut.position].acts_on(cut.wire) {
            return Err(Error::InvalidCut(format!(
                "cut {i}: gate {} does not act on wire {}",
                cut.position, cut.wire
            )));
        }
        let rank = per_wire[cut.wire].iter().position(|&g| g == cut.position).unwrap();
        if rank + 1 == per_wire[cut.wire].len() {
            return Err(Error::InvalidCut(format!(
                "cut {i}: nothing follows gate {} on wire {} except its measurement",
                cut.position, cut.wire
            )));
        }
        if !seen.insert((cut.wire, cut.position)) {
            return Err(Error::InvalidCut(format!(
                "cut {i}: duplicate cut on wire {} at gate {}",
                cut.wire, cut.position
            )));
        }
    }
    Ok(())
}

/// Cuts a circuit into fragments.
///
/// Builds the gate-adjacency graph (gates connected when consecutive on a
/// wire), removes the cut edges and returns the connected components. Every
/// cut must actually end up between two different components; a cut whose
/// two sides remain connected through other wires is rejected.
pub fn fragment(c: &Circuit, cuts: &CutSet) -> Result<FragmentSet> {
    c.check_valid()?;
    validate_cuts(c, cuts)?;
    let per_wire = c.wire_gates();
    for (w, gates) in per_wire.iter().enumerate() {
        if gates.is_empty() && c.measured.contains(&w) {
            return Err(Error::InvalidArgument(format!(
                "wire {w} is measured but carries no gates; cutting such circuits is unsupported"
            )));
        }
    }

    // adjacency minus cut edges
    let mut dsu = Dsu::new(c.gates.len());
    let is_cut = |wire: usize, gate: usize| {
        cuts.cuts.iter().any(|cut| cut.wire == wire && cut.position == gate)
    };
    for (w, gates) in per_wire.iter().enumerate() {
        for pair in gates.windows(2) {
            if !is_cut(w, pair[0]) {
                dsu.union(pair[0], pair[1]);
            }
        }
    }
    for (i, cut) in cuts.cuts.iter().enumerate() {
        let rank = per_wire[cut.wire].iter().position(|&g| g == cut.position).unwrap();
        let next = per_wire[cut.wire][rank + 1];
        if dsu.find(cut.position) == dsu.find(next) {
            return Err(Error::CutDoesNotSeparate(format!(
                "cut {i} on wire {} at gate {}: both sides stay connected",
                cut.wire, cut.position
            )));
        }
    }

    // components ordered by smallest (wire, gate) they touch
    let mut roots: Vec<usize> = Vec::new();
    let mut root_key: Vec<(usize, usize)> = Vec::new();
    for g in 0..c.gates.len() {
        let r = dsu.find(g);
        let min_wire = *c.gates[g].qubits.iter().min().unwrap();
        match roots.iter().position(|&x| x == r) {
            Some(i) => root_key[i] = root_key[i].min((min_wire, g)),
            None => {
                roots.push(r);
                root_key.push((min_wire, g));
            }
        }
    }
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by_key(|&i| root_key[i]);
    let frag_of_root = |r: usize, dsu: &mut Dsu| -> usize {
        let r = dsu.find(r);
        order.iter().position(|&i| dsu.find(roots[i]) == r).unwrap()
    };
    if !cuts.is_empty() && order.len() < 2 {
        return Err(Error::CutDoesNotSeparate(
            "cut set leaves the circuit in one piece".into(),
        ));
    }

    let n_frags = order.len();
    // wire segments owned by each fragment
    let mut locals: Vec<std::collections::BTreeSet<usize>> =
        vec![Default::default(); n_frags];
    // owner of the last segment of each wire (for measurements)
    let mut last_owner: Vec<Option<usize>> = vec![None; c.width];
    for (w, gates) in per_wire.iter().enumerate() {
        for &g in gates {
            let f = frag_of_root(g, &mut dsu);
            if !locals[f].insert(w) && false {
                unreachable!();
            }
            last_owner[w] = Some(f);
        }
    }

    let mut fragments: Vec<Fragment> = (0..n_frags)
        .map(|id| Fragment {
            id,
            locals: locals[id].iter().copied().collect(),
            in_cuts: vec![],
            out_cuts: vec![],
            steered_wires: vec![],
            out_wires: vec![],
            gates: vec![],
            logical_measured: vec![],
        })
        .collect();

    // cut endpoints
    for (k, cut) in cuts.cuts.iter().enumerate() {
        let rank = per_wire[cut.wire].iter().position(|&g| g == cut.position).unwrap();
        let next = per_wire[cut.wire][rank + 1];
        let up = frag_of_root(cut.position, &mut dsu);
        let down = frag_of_root(next, &mut dsu);
        fragments[up].out_cuts.push(k);
        fragments[down].in_cuts.push(k);
    }

    // local re-indexing (ancillas occupy the lowest indices)
    let gate_owner: Vec<usize> =
        (0..c.gates.len()).map(|g| frag_of_root(g, &mut dsu)).collect();
    for f in &mut fragments {
        let n_anc = f.in_cuts.len();
        let locals = f.locals.clone();
        let local_of = |w: usize| -> usize { n_anc + locals.binary_search(&w).unwrap() };
        for &k in &f.in_cuts {
            f.steered_wires.push(local_of(cuts.cuts[k].wire));
        }
        for &k in &f.out_cuts {
            f.out_wires.push(local_of(cuts.cuts[k].wire));
        }
        for (idx, g) in c.gates.iter().enumerate() {
            if gate_owner[idx] == f.id {
                let qubits = g.qubits.iter().map(|&w| local_of(w)).collect();
                f.gates.push(Gate::new(g.kind, qubits));
            }
        }
        for &w in &c.measured {
            if last_owner[w] == Some(f.id) {
                f.logical_measured.push((local_of(w), w));
            }
        }
    }

    Ok(FragmentSet {
        fragments,
        cuts: cuts.clone(),
        source_width: c.width,
        source_measured: c.measured.clone(),
    })
}

/// Cut plan for the chain benchmark: splits `m` wires into `n_fragments`
/// contiguous blocks of near-equal size and cuts the first wire of every
/// non-initial block between its two CNOTs. Remainder wires go to the
/// earliest blocks.
pub fn cut_plan_equal(m: usize, n_fragments: usize) -> Result<CutSet> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("chain needs m >= 2, got {m}")));
    }
    if n_fragments == 0 {
        return Err(Error::InvalidArgument("n_fragments must be at least 1".into()));
    }
    if 2 * n_fragments > m {
        return Err(Error::InvalidArgument(format!(
            "{n_fragments} fragments over {m} wires would leave a fragment without a CNOT"
        )));
    }
    let base = m / n_fragments;
    let rem = m % n_fragments;
    let mut cuts = Vec::with_capacity(n_fragments - 1);
    let mut boundary = 0usize;
    for block in 0..n_fragments - 1 {
        boundary += base + usize::from(block < rem);
        // in the chain, gate index b is CNOT(b-1, b): the cut sits between
        // wire b's two CNOTs
        cuts.push(WireCut { wire: boundary, position: boundary });
    }
    Ok(CutSet::new(cuts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::build_ghz_chain;
    use crate::circuit::GateKind;
    use crate::sim::oracle_distribution;

    fn ghz_cut(m: usize, n: usize) -> FragmentSet {
        let c = build_ghz_chain(m).unwrap();
        let cuts = cut_plan_equal(m, n).unwrap();
        fragment(&c, &cuts).unwrap()
    }

    #[test]
    fn single_cut_m6_fragment_shapes() {
        // cut wire 2 between CNOT(1,2) and CNOT(2,3)
        let c = build_ghz_chain(6).unwrap();
        let cuts = CutSet::new(vec![WireCut { wire: 2, position: 2 }]);
        let fs = fragment(&c, &cuts).unwrap();
        assert_eq!(fs.fragments.len(), 2);
        let (a, b) = (&fs.fragments[0], &fs.fragments[1]);
        assert_eq!(a.locals, vec![0, 1, 2]);
        assert_eq!(a.size(), 3);
        assert_eq!(a.width(), 3);
        assert_eq!(a.out_cuts, vec![0]);
        assert!(a.in_cuts.is_empty());
        // downstream: wire 2's continuation plus 3,4,5, and one ancilla
        assert_eq!(b.locals, vec![2, 3, 4, 5]);
        assert_eq!(b.size(), 4);
        assert_eq!(b.width(), 5);
        assert_eq!(b.in_cuts, vec![0]);
        assert_eq!(b.steered_wires, vec![1]); // ancilla is 0, steered wire next
        // wire 2's measurement lives downstream
        assert_eq!(a.logical_measured.iter().map(|&(_, g)| g).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(
            b.logical_measured.iter().map(|&(_, g)| g).collect::<Vec<_>>(),
            vec![2, 3, 4, 5]
        );
    }

    #[test]
    fn no_cuts_single_fragment() {
        let c = build_ghz_chain(4).unwrap();
        let fs = fragment(&c, &CutSet::default()).unwrap();
        assert_eq!(fs.fragments.len(), 1);
        let f = &fs.fragments[0];
        assert_eq!(f.gates, c.gates);
        assert_eq!(f.width(), 4);
        assert_eq!(f.n_variants(), 1);
        let vs = f.variants();
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].circuit.gates, c.gates);
        assert_eq!(vs[0].basis_string, "");
        assert_eq!(vs[0].file_stem(), "0");
    }

    #[test]
    fn five_cuts_m24_chain() {
        let fs = ghz_cut(24, 6);
        assert_eq!(fs.fragments.len(), 6);
        for (i, f) in fs.fragments.iter().enumerate() {
            let expect = if i == 0 || i == 5 { 1 } else { 2 };
            assert_eq!(f.n_touching_cuts(), expect, "fragment {i}");
        }
        assert_eq!(fs.max_fragment_size(), 5);
        assert_eq!(fs.variant_count(), 2 * 3 + 4 * 9);
    }

    #[test]
    fn equal_plan_examples() {
        assert!(cut_plan_equal(8, 1).unwrap().is_empty());
        assert_eq!(cut_plan_equal(24, 6).unwrap().len(), 5);
        assert_eq!(
            cut_plan_equal(24, 6).unwrap().cuts.iter().map(|c| c.wire).collect::<Vec<_>>(),
            vec![4, 8, 12, 16, 20]
        );
        // m=6 into 2: sizes {3,4} as a multiset
        let fs = ghz_cut(6, 2);
        let mut sizes: Vec<usize> = fs.fragments.iter().map(Fragment::size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 4]);
        // too many fragments: some block would hold no CNOT
        assert!(cut_plan_equal(6, 4).is_err());
        assert!(cut_plan_equal(8, 5).is_err());
    }

    #[test]
    fn variant_enumeration() {
        let fs = ghz_cut(6, 2);
        let head = &fs.fragments[0];
        let tail = &fs.fragments[1];
        assert_eq!(head.variants().len(), 3);
        assert_eq!(tail.variants().len(), 3);
        let fs3 = ghz_cut(6, 3);
        let middle = &fs3.fragments[1];
        assert_eq!(middle.n_touching_cuts(), 2);
        assert_eq!(middle.variants().len(), 9);
        let stems: Vec<String> = middle.variants().iter().map(|v| v.file_stem()).collect();
        assert!(stems.contains(&"1_XX".to_string()));
        assert!(stems.contains(&"1_ZY".to_string()));
        assert_eq!(stems.len(), 9);
    }

    #[test]
    fn z_variant_adds_no_basis_change() {
        let fs = ghz_cut(6, 2);
        let head = &fs.fragments[0];
        let z = head
            .variants()
            .into_iter()
            .find(|v| v.basis_string == "Z")
            .unwrap();
        assert_eq!(z.circuit.gates, head.gates);
        let x = head
            .variants()
            .into_iter()
            .find(|v| v.basis_string == "X")
            .unwrap();
        assert_eq!(x.circuit.gates.len(), head.gates.len() + 1);
        assert_eq!(*x.circuit.gates.last().unwrap(), Gate::h(head.out_wires[0]));
    }

    #[test]
    fn variant_readout_order() {
        // tail fragment of the m=6 single-cut plan: ancilla first, then the
        // logical wires in global order
        let fs = ghz_cut(6, 2);
        let tail = &fs.fragments[1];
        assert_eq!(tail.locals, vec![3, 4, 5]);
        let v = &tail.variants()[0];
        let n_logical = tail.logical_measured.len();
        assert_eq!(v.circuit.measured.len(), 1 + n_logical);
        assert_eq!(v.circuit.measured[0], 0); // ancilla
        assert_eq!(&v.circuit.measured[1..], &[1, 2, 3]); // steered + rest
        v.circuit.check_valid().unwrap();
    }

    #[test]
    fn gate_partition_is_preserved() {
        for (m, n) in [(6, 2), (8, 3), (24, 6)] {
            let c = build_ghz_chain(m).unwrap();
            let fs = ghz_cut(m, n);
            let total: usize = fs.fragments.iter().map(|f| f.gates.len()).sum();
            assert_eq!(total, c.gates.len());
            let mut kinds: Vec<GateKind> = fs
                .fragments
                .iter()
                .flat_map(|f| f.gates.iter().map(|g| g.kind))
                .collect();
            let mut expect: Vec<GateKind> = c.gates.iter().map(|g| g.kind).collect();
            kinds.sort_by_key(|k| *k as usize);
            expect.sort_by_key(|k| *k as usize);
            assert_eq!(kinds, expect);
        }
    }

    #[test]
    fn invalid_cuts_rejected() {
        let c = build_ghz_chain(4).unwrap();
        // wire 3's only gates are CNOT(2,3) and X(3); a cut after X(3) would
        // sever only the measurement
        let x3 = c.gates.iter().position(|g| g == &Gate::x(3)).unwrap();
        let bad = CutSet::new(vec![WireCut { wire: 3, position: x3 }]);
        assert!(matches!(fragment(&c, &bad), Err(Error::InvalidCut(_))));
        // gate does not act on the wire
        let bad = CutSet::new(vec![WireCut { wire: 0, position: x3 }]);
        assert!(matches!(fragment(&c, &bad), Err(Error::InvalidCut(_))));
        // duplicate
        let bad = CutSet::new(vec![
            WireCut { wire: 1, position: 1 },
            WireCut { wire: 1, position: 1 },
        ]);
        assert!(matches!(fragment(&c, &bad), Err(Error::InvalidCut(_))));
    }

    #[test]
    fn non_separating_cut_rejected() {
        // two CNOTs on the same pair: cutting one wire between them leaves
        // the gates connected through the other wire
        let c = Circuit::new(2, vec![Gate::cnot(0, 1), Gate::cnot(0, 1)], vec![0, 1]);
        let cuts = CutSet::new(vec![WireCut { wire: 0, position: 0 }]);
        assert!(matches!(fragment(&c, &cuts), Err(Error::CutDoesNotSeparate(_))));
    }

    #[test]
    fn steering_identity() {
        // Bell pair (|00>+|11>)/sqrt(2): measuring both halves in the same
        // basis correlates X and Z outcomes and anticorrelates Y outcomes.
        for axis in AXES {
            let mut gates = vec![Gate::h(0), Gate::cnot(0, 1)];
            gates.extend(axis.basis_change(0));
            gates.extend(axis.basis_change(1));
            let c = Circuit::new(2, gates, vec![0, 1]);
            let p = oracle_distribution(&c).unwrap();
            match axis {
                Axis::X | Axis::Z => {
                    assert!((p.probs[0b00] - 0.5).abs() < 1e-12, "{axis:?}");
                    assert!((p.probs[0b11] - 0.5).abs() < 1e-12, "{axis:?}");
                }
                Axis::Y => {
                    assert!((p.probs[0b01] - 0.5).abs() < 1e-12);
                    assert!((p.probs[0b10] - 0.5).abs() < 1e-12);
                }
            }
        }
    }
}
