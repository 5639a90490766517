//! Minimum-measurement synthesis by A* over symplectic matrices.
//!
//! Vertices are `M_C`; a generalized S edge costs 1 and a generalized CZ edge
//! costs 2. `res` is a consistent heuristic because it is subadditive and
//! equals the edge weight on every edge.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::gf2::{self, symplectic_form, BitMatrix, BitVector};
use crate::pauli::PauliObservable;
use crate::synthesis::{gate_symplectic, measurement_cost, pauli_correction, realize, Gate};
use crate::tableau::CliffordTableau;

pub const DEFAULT_MAX_QUBITS: usize = 3;
pub const BFS_MAX_QUBITS: usize = 2;

pub fn heuristic(m: &BitMatrix) -> Result<usize> {
    gf2::res(m)
}

/// Non-zero vectors of length `2n` in lexicographic order of `(z, x)`.
fn lex_vectors(n: usize) -> Vec<BitVector> {
    let d = 2 * n;
    (1u64..1 << d)
        .map(|c| {
            let mut v = BitVector::zeros(d);
            for i in 0..d {
                if (c >> (d - 1 - i)) & 1 == 1 {
                    v.set(i, true);
                }
            }
            v
        })
        .collect()
}

/// Unsigned edge gates with their matrices, S edges first.
pub fn edge_gates(n: usize) -> Vec<(Gate, BitMatrix, usize)> {
    let vs = lex_vectors(n);
    let obs: Vec<PauliObservable> = vs
        .iter()
        .map(|v| PauliObservable::from_symplectic_vector(v, false))
        .collect();
    let mut out = Vec::new();
    for p in &obs {
        let g = Gate::GenS(p.clone());
        let m = gate_symplectic(&g, n).expect("valid gate");
        out.push((g, m, 1));
    }
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if !symplectic_form(&vs[i], &vs[j]) {
                let g = Gate::GenCZ(obs[i].clone(), obs[j].clone());
                let m = gate_symplectic(&g, n).expect("valid gate");
                out.push((g, m, 2));
            }
        }
    }
    out
}

pub fn neighbors(m: &BitMatrix) -> Result<Vec<(Gate, BitMatrix, usize)>> {
    gf2::require_symplectic(m)?;
    Ok(edge_gates(m.rows() / 2)
        .into_iter()
        .map(|(g, t, w)| {
            let next = t.mul(m);
            (g, next, w)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalResult {
    /// Gates in execution order.
    pub gates: Vec<Gate>,
    pub correction: PauliObservable,
    pub cost: usize,
    pub expanded: usize,
}

pub fn optimal_synthesize(c: &CliffordTableau, cost_limit: usize) -> Result<OptimalResult> {
    optimal_synthesize_guarded(c, cost_limit, DEFAULT_MAX_QUBITS)
}

pub fn optimal_synthesize_guarded(
    c: &CliffordTableau,
    cost_limit: usize,
    max_qubits: usize,
) -> Result<OptimalResult> {
    let n = c.n();
    if n > max_qubits {
        return Err(Error::Guard {
            what: "optimal search",
            n,
            limit: max_qubits,
        });
    }
    let (path, cost, expanded) = search(&c.to_symplectic(), cost_limit)?;
    let gates: Vec<Gate> = path.into_iter().rev().collect();
    let u = realize(n, &gates, &PauliObservable::identity(n))?;
    let correction = pauli_correction(c, &u)?;
    Ok(OptimalResult {
        gates,
        correction,
        cost,
        expanded,
    })
}

/// Path of edge gates from `start` to the identity: `start = G_1 ⋯ G_k`.
fn search(start: &BitMatrix, cost_limit: usize) -> Result<(Vec<Gate>, usize, usize)> {
    let n = start.rows() / 2;
    let edges = edge_gates(n);
    let mut best: HashMap<BitMatrix, (usize, Option<(BitMatrix, usize)>)> = HashMap::new();
    let mut open = BinaryHeap::new();
    best.insert(start.clone(), (0, None));
    open.push(Reverse((heuristic(start)?, 0usize, start.clone())));
    let mut expanded = 0;
    while let Some(Reverse((f, g, m))) = open.pop() {
        if f > cost_limit {
            break;
        }
        if best[&m].0 < g {
            continue;
        }
        if m.is_identity() {
            let mut path = Vec::new();
            let mut cur = m;
            while let Some((parent, e)) = best[&cur].1.clone() {
                path.push(edges[e].0.clone());
                cur = parent;
            }
            path.reverse();
            return Ok((path, g, expanded));
        }
        expanded += 1;
        for (e, (_, t, w)) in edges.iter().enumerate() {
            let next = t.mul(&m);
            let ng = g + w;
            if best.get(&next).is_some_and(|(bg, _)| *bg <= ng) {
                continue;
            }
            let h = next.add_identity()?.rank();
            best.insert(next.clone(), (ng, Some((m.clone(), e))));
            open.push(Reverse((ng + h, ng, next)));
        }
    }
    Err(Error::SearchExhausted { limit: cost_limit })
}

/// Exact distances from the identity to every element, by uniform-cost search.
pub fn bfs_distances(n: usize) -> Result<HashMap<BitMatrix, usize>> {
    if n == 0 || n > BFS_MAX_QUBITS {
        return Err(Error::Guard {
            what: "exhaustive search",
            n,
            limit: BFS_MAX_QUBITS,
        });
    }
    let d = 2 * n;
    // Transvection-built edge matrices, independent of the gate module.
    let transvection = |v: &BitVector, u: &BitVector| {
        BitMatrix::from_fn(d, d, |i, j| {
            (i == j) ^ (u.get(i) && symplectic_form(v, &BitVector::unit(d, j)))
        })
    };
    let vs: Vec<BitVector> = (1u64..1 << d).map(|c| BitVector::from_u64(d, c)).collect();
    let mut edges: Vec<(BitMatrix, usize)> = vs.iter().map(|v| (transvection(v, v), 1)).collect();
    for (i, a) in vs.iter().enumerate() {
        for b in &vs[i + 1..] {
            if !symplectic_form(a, b) {
                edges.push((transvection(a, b).mul(&transvection(b, a)), 2));
            }
        }
    }
    let id = BitMatrix::identity(d);
    let mut dist = HashMap::from([(id.clone(), 0usize)]);
    let mut heap = BinaryHeap::from([Reverse((0usize, id))]);
    while let Some(Reverse((g, m))) = heap.pop() {
        if dist[&m] < g {
            continue;
        }
        for (t, w) in &edges {
            let next = t.mul(&m);
            if dist.get(&next).is_none_or(|&old| old > g + w) {
                dist.insert(next.clone(), g + w);
                heap.push(Reverse((g + w, next)));
            }
        }
    }
    Ok(dist)
}

pub fn bfs_oracle(m: &BitMatrix) -> Result<usize> {
    gf2::require_symplectic(m)?;
    bfs_distances(m.rows() / 2)?
        .get(m)
        .copied()
        .ok_or_else(|| Error::Internal("element unreachable".into()))
}

/// Optimal cost against `res` over all of Sp(2n, F2).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExceptionalReport {
    pub total: usize,
    /// `(res, cost) → count`.
    pub histogram: BTreeMap<(usize, usize), usize>,
    /// Elements whose optimal cost exceeds `res`.
    pub exceptional: Vec<BitMatrix>,
}

pub fn explore_exceptional(n: usize) -> Result<ExceptionalReport> {
    let mut report = ExceptionalReport::default();
    for m in gf2::enumerate_symplectic(n)? {
        let r = gf2::res(&m)?;
        let (_, cost, _) = search(&m, 4 * n)?;
        report.total += 1;
        *report.histogram.entry((r, cost)).or_default() += 1;
        if cost > r {
            report.exceptional.push(m);
        }
    }
    Ok(report)
}

pub fn sequence_cost(gates: &[Gate]) -> usize {
    gates.iter().map(measurement_cost).sum()
}
