//! SWAP-insertion routing onto a hardware coupling graph.
//!
//! The router is deliberately simple and deterministic: gates are processed
//! in order, and a CNOT between non-adjacent physical qubits moves its
//! control along a BFS shortest path toward the target, one SWAP per hop,
//! breaking ties by the smallest physical index. Determinism matters more
//! here than optimality — what the model needs is that SWAPs appear exactly
//! when a circuit no longer fits the connectivity.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::sim::oracle_distribution;

/// An undirected hardware connectivity graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CouplingMap {
    pub n_physical: usize,
    /// Normalized (low, high) pairs.
    pub edges: BTreeSet<(usize, usize)>,
}

impl CouplingMap {
    pub fn new(n_physical: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop on qubit {a}")));
            }
            if a >= n_physical || b >= n_physical {
                return Err(Error::InvalidArgument(format!(
                    "edge ({a},{b}) out of range for {n_physical} qubits"
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        let map = CouplingMap { n_physical, edges: set };
        if !map.is_connected() {
            return Err(Error::InvalidArgument("coupling graph is not connected".into()));
        }
        Ok(map)
    }

    /// A fully connected map: routing on it is always a no-op.
    pub fn complete(n_physical: usize) -> Self {
        let edges = (0..n_physical)
            .flat_map(|a| (a + 1..n_physical).map(move |b| (a, b)))
            .collect();
        CouplingMap { n_physical, edges }
    }

    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, q: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == q {
                    Some(b)
                } else if b == q {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn is_connected(&self) -> bool {
        if self.n_physical == 0 {
            return false;
        }
        if self.n_physical == 1 {
            return true;
        }
        let mut seen = vec![false; self.n_physical];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(q) = queue.pop_front() {
            for nb in self.neighbors(q) {
                if !seen[nb] {
                    seen[nb] = true;
                    queue.push_back(nb);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// BFS hop distances from `from` to every qubit.
    pub fn distances(&self, from: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n_physical];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            for nb in self.neighbors(q) {
                if dist[nb] == usize::MAX {
                    dist[nb] = dist[q] + 1;
                    queue.push_back(nb);
                }
            }
        }
        dist
    }
}

/// Row-major rectangular grid with horizontal and vertical nearest-neighbor
/// edges; the default stand-in for a 20-qubit transmon chip is `grid(4, 5)`.
pub fn grid_coupling(rows: usize, cols: usize) -> Result<CouplingMap> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument(format!("empty grid {rows}x{cols}")));
    }
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let q = r * cols + c;
            if c + 1 < cols {
                edges.push((q, q + 1));
            }
            if r + 1 < rows {
                edges.push((q, q + cols));
            }
        }
    }
    CouplingMap::new(rows * cols, edges)
}

/// A circuit rewritten onto physical qubits.
#[derive(Debug, Clone)]
pub struct RoutedCircuit {
    /// Width equals the coupling map size; `measured` lists the physical
    /// wires of the logical readout bits, in logical order.
    pub circuit: Circuit,
    /// Logical wire -> physical wire at measurement time.
    pub final_permutation: Vec<usize>,
    pub swap_count: usize,
}

/// Routes a circuit onto a coupling map under an initial placement
/// (`None` = identity, mirroring execution without qubit relabeling).
pub fn route(c: &Circuit, map: &CouplingMap, placement: Option<&[usize]>) -> Result<RoutedCircuit> {
    c.check_valid()?;
    if c.width > map.n_physical {
        return Err(Error::Capacity(format!(
            "circuit width {} exceeds {} physical qubits",
            c.width, map.n_physical
        )));
    }
    let mut log2phys: Vec<usize> = match placement {
        None => (0..c.width).collect(),
        Some(p) => {
            if p.len() != c.width {
                return Err(Error::InvalidArgument(format!(
                    "placement length {} does not match width {}",
                    p.len(),
                    c.width
                )));
            }
            let mut seen = vec![false; map.n_physical];
            for &q in p {
                if q >= map.n_physical {
                    return Err(Error::InvalidArgument(format!(
                        "placement target {q} out of range"
                    )));
                }
                if seen[q] {
                    return Err(Error::InvalidArgument(format!(
                        "placement maps two wires to physical qubit {q}"
                    )));
                }
                seen[q] = true;
            }
            p.to_vec()
        }
    };
    let mut phys2log: Vec<Option<usize>> = vec![None; map.n_physical];
    for (l, &q) in log2phys.iter().enumerate() {
        phys2log[q] = Some(l);
    }

    let mut gates = Vec::new();
    let mut swap_count = 0usize;
    for g in &c.gates {
        match g.qubits.len() {
            1 => gates.push(Gate::new(g.kind, vec![log2phys[g.qubits[0]]])),
            _ => {
                let (lc, lt) = (g.qubits[0], g.qubits[1]);
                while !map.is_edge(log2phys[lc], log2phys[lt]) {
                    let cur = log2phys[lc];
                    let dist = map.distances(log2phys[lt]);
                    // step to the lowest-indexed neighbor strictly closer to
                    // the target
                    let next = map
                        .neighbors(cur)
                        .into_iter()
                        .filter(|&nb| dist[nb] + 1 == dist[cur])
                        .min()
                        .ok_or_else(|| {
                            Error::Invariant(format!(
                                "no shortest-path step from {cur} toward {}",
                                log2phys[lt]
                            ))
                        })?;
                    gates.push(Gate::swap(cur, next));
                    swap_count += 1;
                    // update occupancy (the displaced qubit may be empty)
                    let displaced = phys2log[next];
                    phys2log[next] = Some(lc);
                    phys2log[cur] = displaced;
                    log2phys[lc] = next;
                    if let Some(l) = displaced {
                        log2phys[l] = cur;
                    }
                }
                gates.push(Gate::new(g.kind, vec![log2phys[lc], log2phys[lt]]));
            }
        }
    }

    let measured = c.measured.iter().map(|&w| log2phys[w]).collect();
    Ok(RoutedCircuit {
        circuit: Circuit::new(map.n_physical, gates, measured),
        final_permutation: log2phys,
        swap_count,
    })
}

/// Drops wires an output circuit never touches, remapping gate and
/// measurement indices onto a compact range. Returns the compact circuit and
/// the kept original wires in ascending order.
pub fn compact_circuit(c: &Circuit) -> (Circuit, Vec<usize>) {
    let mut used = vec![false; c.width];
    for g in &c.gates {
        for &q in &g.qubits {
            used[q] = true;
        }
    }
    for &w in &c.measured {
        used[w] = true;
    }
    let kept: Vec<usize> = (0..c.width).filter(|&w| used[w]).collect();
    let mut new_index = vec![usize::MAX; c.width];
    for (i, &w) in kept.iter().enumerate() {
        new_index[w] = i;
    }
    let gates = c
        .gates
        .iter()
        .map(|g| Gate::new(g.kind, g.qubits.iter().map(|&q| new_index[q]).collect()))
        .collect();
    let measured = c.measured.iter().map(|&w| new_index[w]).collect();
    (Circuit::new(kept.len(), gates, measured), kept)
}

/// Outcome of [`verify_routed`]: a mismatch is data, not an error.
#[derive(Debug, Clone, PartialEq)]
pub enum RouteCheck {
    Ok,
    Mismatch(String),
}

/// Checks a routing result against the original circuit: every 2-qubit gate
/// must sit on a coupling edge, and the noiseless readout distribution
/// (compared in logical bit order) must be unchanged.
pub fn verify_routed(
    original: &Circuit,
    routed: &RoutedCircuit,
    map: &CouplingMap,
) -> Result<RouteCheck> {
    for (i, g) in routed.circuit.gates.iter().enumerate() {
        if g.qubits.len() == 2 && !map.is_edge(g.qubits[0], g.qubits[1]) {
            return Ok(RouteCheck::Mismatch(format!(
                "gate {i} acts on non-adjacent qubits {:?}",
                g.qubits
            )));
        }
    }
    let reference = oracle_distribution(original)?;
    let (compact, _) = compact_circuit(&routed.circuit);
    let actual = oracle_distribution(&compact)?;
    if reference.n_bits != actual.n_bits {
        return Ok(RouteCheck::Mismatch(format!(
            "readout width changed: {} -> {}",
            reference.n_bits, actual.n_bits
        )));
    }
    for i in 0..reference.probs.len() {
        if (reference.probs[i] - actual.probs[i]).abs() > 1e-12 {
            return Ok(RouteCheck::Mismatch(format!(
                "probability of outcome {i} changed: {} -> {}",
                reference.probs[i], actual.probs[i]
            )));
        }
    }
    Ok(RouteCheck::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::build_ghz_chain;

    fn cnot_chain(n: usize) -> Circuit {
        let gates = (0..n - 1).map(|i| Gate::cnot(i, i + 1)).collect();
        Circuit::new(n, gates, (0..n).collect())
    }

    #[test]
    fn grid_shape() {
        let g = grid_coupling(4, 5).unwrap();
        assert_eq!(g.n_physical, 20);
        assert_eq!(g.edges.len(), 31);
        assert!(g.is_edge(3, 4));
        assert!(!g.is_edge(4, 5)); // 4 ends row 0, 5 starts row 1
        assert!(g.is_edge(4, 9));

        let pair = grid_coupling(1, 2).unwrap();
        assert_eq!(pair.edges.len(), 1);
        assert_eq!(grid_coupling(2, 2).unwrap().edges.len(), 4);
        assert!(grid_coupling(0, 3).is_err());
    }

    #[test]
    fn adjacent_chain_needs_no_swaps() {
        let g = grid_coupling(4, 5).unwrap();
        let r = route(&cnot_chain(5), &g, None).unwrap();
        assert_eq!(r.swap_count, 0);
        assert_eq!(r.final_permutation, vec![0, 1, 2, 3, 4]);
        // idempotence: the gate list is the original, re-indexed identically
        assert_eq!(
            r.circuit.gates,
            cnot_chain(5).gates
        );
    }

    #[test]
    fn row_boundary_forces_swaps() {
        let g = grid_coupling(4, 5).unwrap();
        let r = route(&cnot_chain(6), &g, None).unwrap();
        assert!(r.swap_count >= 1);
        assert_eq!(verify_routed(&cnot_chain(6), &r, &g).unwrap(), RouteCheck::Ok);
    }

    #[test]
    fn complete_graph_is_free() {
        let g = CouplingMap::complete(8);
        let c = build_ghz_chain(8).unwrap();
        let r = route(&c, &g, None).unwrap();
        assert_eq!(r.swap_count, 0);
        assert_eq!(verify_routed(&c, &r, &g).unwrap(), RouteCheck::Ok);
    }

    #[test]
    fn routed_ghz_distribution_survives() {
        let g = grid_coupling(4, 5).unwrap();
        for m in [5, 6, 7] {
            let c = build_ghz_chain(m).unwrap();
            let r = route(&c, &g, None).unwrap();
            assert_eq!(verify_routed(&c, &r, &g).unwrap(), RouteCheck::Ok, "m = {m}");
        }
    }

    #[test]
    fn corrupted_permutation_is_caught() {
        let g = grid_coupling(4, 5).unwrap();
        let c = build_ghz_chain(6).unwrap();
        let mut r = route(&c, &g, None).unwrap();
        r.circuit.measured.swap(0, 5);
        assert!(matches!(
            verify_routed(&c, &r, &g).unwrap(),
            RouteCheck::Mismatch(_)
        ));
    }

    #[test]
    fn custom_placement_validated() {
        let g = grid_coupling(2, 2).unwrap();
        let c = cnot_chain(2);
        assert!(route(&c, &g, Some(&[0, 0])).is_err());
        assert!(route(&c, &g, Some(&[0, 9])).is_err());
        let r = route(&c, &g, Some(&[3, 1])).unwrap();
        assert_eq!(r.swap_count, 0);
        assert_eq!(r.circuit.gates[0], Gate::cnot(3, 1));
    }

    #[test]
    fn capacity_checked() {
        let g = grid_coupling(1, 2).unwrap();
        assert!(matches!(
            route(&cnot_chain(3), &g, None),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn compaction_drops_idle_wires() {
        let c = Circuit::new(6, vec![Gate::cnot(1, 4)], vec![4, 1]);
        let (compact, kept) = compact_circuit(&c);
        assert_eq!(kept, vec![1, 4]);
        assert_eq!(compact.width, 2);
        assert_eq!(compact.gates, vec![Gate::cnot(0, 1)]);
        assert_eq!(compact.measured, vec![1, 0]);
    }
}
