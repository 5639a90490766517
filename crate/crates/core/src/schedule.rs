//! Lowering of gate layers to joint Pauli measurements with ancillas.
//!
//! Each `GenS(P)` uses one ancilla in `|+i⟩`, the joint measurement `Z_a ⊗ P`
//! and an `X` read-out of the ancilla. Each `GenCZ(P, Q)` uses an ancilla
//! pair stabilized by `X Z` and `Z X`, the measurements `Z_a ⊗ P`,
//! `Z_b ⊗ Q`, and two `X` read-outs. Byproduct Paulis are pushed through the
//! later gates and recorded as outcome-parity rules.
//!
//! Outcomes are numbered in file order: joint measurements first, then
//! read-outs.

use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::gf2::{BitVector, EchelonBasis};
use crate::pauli::{commute, PauliObservable};
use crate::synthesis::{synthesis_defects, Gate, SynthesisResult};
use crate::tableau::CliffordTableau;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    X,
    Y,
    Z,
}

impl Basis {
    fn letter(self) -> char {
        match self {
            Basis::X => 'X',
            Basis::Y => 'Y',
            Basis::Z => 'Z',
        }
    }

    fn parse(s: &str) -> Option<Basis> {
        match s {
            "X" => Some(Basis::X),
            "Y" => Some(Basis::Y),
            "Z" => Some(Basis::Z),
            _ => None,
        }
    }

    /// Single-qubit observable on ancilla `a` of a data‖ancilla register.
    pub(crate) fn on(self, total: usize, at: usize) -> PauliObservable {
        let mut p = PauliObservable::identity(total);
        match self {
            Basis::X => p.x.set(at, true),
            Basis::Z => p.z.set(at, true),
            Basis::Y => {
                p.x.set(at, true);
                p.z.set(at, true)
            }
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prep {
    pub ancilla: usize,
    /// Generator over the ancilla register.
    pub stabilizer: PauliObservable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointMeasurement {
    /// Over data‖ancilla.
    pub observable: PauliObservable,
    pub layer: usize,
    pub gate: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Readout {
    pub ancilla: usize,
    pub basis: Basis,
}

/// Apply `pauli` at the end when `constant ⊕ ⟨mask, outcomes⟩` is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixRule {
    pub constant: bool,
    pub mask: BitVector,
    pub pauli: PauliObservable,
}

impl FixRule {
    pub fn fires(&self, outcomes: &BitVector) -> bool {
        self.constant ^ self.mask.dot(outcomes)
    }

    fn mask_text(&self) -> String {
        format!("{}{}", self.constant as u8, self.mask)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementSchedule {
    pub n_data: usize,
    pub n_ancilla: usize,
    pub preps: Vec<Prep>,
    pub measurements: Vec<JointMeasurement>,
    pub readouts: Vec<Readout>,
    pub fixups: Vec<FixRule>,
}

impl MeasurementSchedule {
    pub fn empty(n_data: usize) -> Self {
        MeasurementSchedule {
            n_data,
            n_ancilla: 0,
            preps: Vec::new(),
            measurements: Vec::new(),
            readouts: Vec::new(),
            fixups: Vec::new(),
        }
    }

    pub fn n_outcomes(&self) -> usize {
        self.measurements.len() + self.readouts.len()
    }

    pub fn layer(&self, layer: usize) -> Vec<&JointMeasurement> {
        self.measurements
            .iter()
            .filter(|m| m.layer == layer)
            .collect()
    }
}

/// Conditional byproduct of one gadget: apply `pauli` after the gate when the
/// listed outcomes (plus `constant`) have odd parity.
struct Byproduct {
    constant: bool,
    outcomes: Vec<usize>,
    pauli: PauliObservable,
    gate: usize,
}

/// Pushes each byproduct to the end of the circuit and appends the correction.
fn fold_fixups(
    n: usize,
    gates: &[Gate],
    byproducts: Vec<Byproduct>,
    correction: &PauliObservable,
    n_outcomes: usize,
) -> Result<Vec<FixRule>> {
    // suffix[k] is the product of gates k.. in execution order.
    let mut suffix = vec![CliffordTableau::identity(n)?; gates.len() + 1];
    for k in (0..gates.len()).rev() {
        let mut t = CliffordTableau::identity(n)?;
        for g in &gates[k..] {
            t = g.apply_to(&t)?;
        }
        suffix[k] = t;
    }
    let mut rules = Vec::new();
    for b in byproducts {
        let mut mask = BitVector::zeros(n_outcomes);
        for o in b.outcomes {
            mask.flip(o);
        }
        let pauli = suffix[b.gate + 1].conj(&b.pauli).unsigned();
        rules.push(FixRule {
            constant: b.constant,
            mask,
            pauli,
        });
    }
    if !correction.is_identity() {
        rules.push(FixRule {
            constant: true,
            mask: BitVector::zeros(n_outcomes),
            pauli: correction.unsigned(),
        });
    }
    Ok(rules)
}

fn require_verified(r: &SynthesisResult, target: &CliffordTableau) -> Result<()> {
    let defects = synthesis_defects(r, target);
    if defects.is_empty() {
        Ok(())
    } else {
        Err(Error::Verification(defects.join("; ")))
    }
}

fn ancilla_count(gates: &[Gate]) -> usize {
    gates
        .iter()
        .map(|g| match g {
            Gate::GenS(_) => 1,
            Gate::GenCZ(..) => 2,
        })
        .sum()
}

fn anc_pair_preps(a: usize, m: usize) -> [Prep; 2] {
    let mut xz = PauliObservable::identity(m);
    xz.x.set(a, true);
    xz.z.set(a + 1, true);
    let mut zx = PauliObservable::identity(m);
    zx.z.set(a, true);
    zx.x.set(a + 1, true);
    [
        Prep {
            ancilla: a,
            stabilizer: xz,
        },
        Prep {
            ancilla: a + 1,
            stabilizer: zx,
        },
    ]
}

pub fn compile(r: &SynthesisResult, target: &CliffordTableau) -> Result<MeasurementSchedule> {
    require_verified(r, target)?;
    let n = r.n;
    let gates: Vec<Gate> = r.gates().cloned().collect();
    let m = ancilla_count(&gates);
    let mut s = MeasurementSchedule::empty(n);
    s.n_ancilla = m;
    let joint = |p: &PauliObservable, a: usize| {
        let mut o = p.embed(n + m, 0);
        o.z.set(n + a, true);
        o
    };
    let n_meas: usize = gates.iter().map(crate::synthesis::measurement_cost).sum();
    let mut byproducts = Vec::new();
    let mut a = 0;
    for (k, g) in gates.iter().enumerate() {
        let layer = if k < r.s1.len() { 1 } else { 2 };
        match g {
            Gate::GenS(p) => {
                s.preps.push(Prep {
                    ancilla: a,
                    stabilizer: Basis::Y.on(m, a),
                });
                let mo = s.measurements.len();
                s.measurements.push(JointMeasurement {
                    observable: joint(p, a),
                    layer,
                    gate: k,
                });
                let ro = n_meas + s.readouts.len();
                s.readouts.push(Readout {
                    ancilla: a,
                    basis: Basis::X,
                });
                byproducts.push(Byproduct {
                    constant: true,
                    outcomes: vec![mo, ro],
                    pauli: p.unsigned(),
                    gate: k,
                });
                a += 1;
            }
            Gate::GenCZ(p, q) => {
                s.preps.extend(anc_pair_preps(a, m));
                let m1 = s.measurements.len();
                s.measurements.push(JointMeasurement {
                    observable: joint(p, a),
                    layer,
                    gate: k,
                });
                s.measurements.push(JointMeasurement {
                    observable: joint(q, a + 1),
                    layer,
                    gate: k,
                });
                let r1 = n_meas + s.readouts.len();
                for b in [a, a + 1] {
                    s.readouts.push(Readout {
                        ancilla: b,
                        basis: Basis::X,
                    });
                }
                byproducts.push(Byproduct {
                    constant: false,
                    outcomes: vec![m1 + 1, r1],
                    pauli: p.unsigned(),
                    gate: k,
                });
                byproducts.push(Byproduct {
                    constant: false,
                    outcomes: vec![m1, r1 + 1],
                    pauli: q.unsigned(),
                    gate: k,
                });
                a += 2;
            }
        }
    }
    s.fixups = fold_fixups(n, &gates, byproducts, &r.correction, s.n_outcomes())?;
    let report = check_layers(&s);
    if !report.passed() {
        return Err(Error::Internal(format!(
            "compiled schedule fails layer checks: {report}"
        )));
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerCheck {
    pub layer: usize,
    pub size: usize,
    /// Index pairs (into the layer) of anticommuting observables.
    pub anticommuting: Vec<(usize, usize)>,
    /// Whether the data parts are linearly independent.
    pub independent: bool,
    pub within_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerReport {
    pub layers: Vec<LayerCheck>,
    pub total: usize,
    pub total_within_bound: bool,
    pub unknown_layers: usize,
}

impl LayerReport {
    pub fn passed(&self) -> bool {
        self.total_within_bound
            && self.unknown_layers == 0
            && self
                .layers
                .iter()
                .all(|l| l.anticommuting.is_empty() && l.independent && l.within_bound)
    }
}

impl fmt::Display for LayerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.layers {
            write!(
                f,
                "L{}: {} measurements, {} anticommuting pairs, independent={}, bound={}; ",
                l.layer,
                l.size,
                l.anticommuting.len(),
                l.independent,
                l.within_bound
            )?;
        }
        write!(
            f,
            "total {} (bound {}), {} outside layers 1-2",
            self.total, self.total_within_bound, self.unknown_layers
        )
    }
}

pub fn check_layers(s: &MeasurementSchedule) -> LayerReport {
    let n = s.n_data;
    let layers = (1..=2)
        .map(|layer| {
            let ms = s.layer(layer);
            let mut anticommuting = Vec::new();
            for i in 0..ms.len() {
                for j in i + 1..ms.len() {
                    if !commute(&ms[i].observable, &ms[j].observable) {
                        anticommuting.push((i, j));
                    }
                }
            }
            let mut basis = EchelonBasis::new();
            let independent = ms
                .iter()
                .all(|m| basis.insert(&m.observable.restrict(0, n).symplectic_vector()));
            LayerCheck {
                layer,
                size: ms.len(),
                anticommuting,
                independent,
                within_bound: ms.len() <= n,
            }
        })
        .collect();
    LayerReport {
        layers,
        total: s.measurements.len(),
        total_within_bound: s.measurements.len() <= 2 * n,
        unknown_layers: s
            .measurements
            .iter()
            .filter(|m| m.layer != 1 && m.layer != 2)
            .count(),
    }
}

impl fmt::Display for MeasurementSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "data {} ancilla {}", self.n_data, self.n_ancilla)?;
        for p in &self.preps {
            writeln!(f, "prep a{} {}", p.ancilla, p.stabilizer)?;
        }
        for m in &self.measurements {
            writeln!(f, "meas L{} {}", m.layer, m.observable)?;
        }
        for r in &self.readouts {
            writeln!(f, "read a{} {}", r.ancilla, r.basis.letter())?;
        }
        for x in &self.fixups {
            writeln!(f, "fix {} {}", x.mask_text(), x.pauli)?;
        }
        Ok(())
    }
}

fn parse_ancilla(ln: usize, t: &str, m: usize) -> Result<usize> {
    let a = t
        .strip_prefix('a')
        .and_then(|d| d.parse::<usize>().ok())
        .ok_or_else(|| parse_err(ln, format!("bad ancilla `{t}`")))?;
    if a >= m {
        return Err(parse_err(ln, format!("ancilla {a} out of range")));
    }
    Ok(a)
}

fn parse_pauli(ln: usize, t: &str, n: usize) -> Result<PauliObservable> {
    let p: PauliObservable = t.parse().map_err(|e: Error| parse_err(ln, e.to_string()))?;
    if p.n() != n {
        return Err(parse_err(ln, format!("expected {n} qubits in `{t}`")));
    }
    Ok(p)
}

fn parse_mask(ln: usize, t: &str) -> Result<(bool, BitVector)> {
    let bits: Vec<bool> = t
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(parse_err(ln, format!("bad outcome mask `{t}`"))),
        })
        .collect::<Result<_>>()?;
    let (&constant, rest) = bits
        .split_first()
        .ok_or_else(|| parse_err(ln, "empty outcome mask"))?;
    Ok((constant, BitVector::from_bools(rest)))
}

fn parse_header(ln: usize, l: &str) -> Result<(usize, usize)> {
    match l.split_whitespace().collect::<Vec<_>>()[..] {
        ["data", n, "ancilla", m] => match (n.parse(), m.parse()) {
            (Ok(n), Ok(m)) if n > 0 => Ok((n, m)),
            _ => Err(parse_err(ln, "bad register sizes")),
        },
        _ => Err(parse_err(ln, "header must be `data <n> ancilla <m>`")),
    }
}

fn numbered(s: &str) -> impl Iterator<Item = (usize, &str)> {
    s.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

impl FromStr for MeasurementSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = numbered(s);
        let (ln, head) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let (n, m) = parse_header(ln, head)?;
        let mut out = MeasurementSchedule::empty(n);
        out.n_ancilla = m;
        let mut masks = Vec::new();
        for (ln, l) in lines {
            match l.split_whitespace().collect::<Vec<_>>()[..] {
                ["prep", a, p] => out.preps.push(Prep {
                    ancilla: parse_ancilla(ln, a, m)?,
                    stabilizer: parse_pauli(ln, p, m)?,
                }),
                ["meas", layer, p] => {
                    let layer = layer
                        .strip_prefix('L')
                        .and_then(|d| d.parse().ok())
                        .ok_or_else(|| parse_err(ln, format!("bad layer `{layer}`")))?;
                    let observable = parse_pauli(ln, p, n + m)?;
                    if observable.is_identity() {
                        return Err(parse_err(ln, "identity measurement"));
                    }
                    out.measurements.push(JointMeasurement {
                        observable,
                        layer,
                        gate: out.measurements.len(),
                    });
                }
                ["read", a, b] => out.readouts.push(Readout {
                    ancilla: parse_ancilla(ln, a, m)?,
                    basis: Basis::parse(b)
                        .ok_or_else(|| parse_err(ln, format!("bad basis `{b}`")))?,
                }),
                ["fix", mask, p] => {
                    let (constant, mask) = parse_mask(ln, mask)?;
                    masks.push((ln, mask.len()));
                    out.fixups.push(FixRule {
                        constant,
                        mask,
                        pauli: parse_pauli(ln, p, n)?,
                    });
                }
                _ => return Err(parse_err(ln, format!("unrecognized line `{l}`"))),
            }
        }
        let k = out.n_outcomes();
        if let Some((ln, len)) = masks.into_iter().find(|&(_, len)| len != k) {
            return Err(parse_err(
                ln,
                format!("mask covers {len} outcomes, schedule has {k}"),
            ));
        }
        Ok(out)
    }
}

/// Gate-level lowering that replaces joint measurements by `Λ(X_a, P)` entanglers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanoutOp {
    /// `Λ(X_a, P)` with `P` on the data register.
    LambdaX {
        ancilla: usize,
        pauli: PauliObservable,
        layer: usize,
        gate: usize,
    },
    Measure {
        ancilla: usize,
        basis: Basis,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoutListing {
    pub n_data: usize,
    pub n_ancilla: usize,
    pub preps: Vec<Prep>,
    pub ops: Vec<FanoutOp>,
    pub fixups: Vec<FixRule>,
}

impl FanoutListing {
    pub fn n_outcomes(&self) -> usize {
        self.ops
            .iter()
            .filter(|o| matches!(o, FanoutOp::Measure { .. }))
            .count()
    }
}

/// `GenS(P)`: ancilla in `|0⟩`, `Λ(X_a, P)`, `Y` read-out, byproduct `P` on outcome 1.
/// `GenCZ(P, Q)`: ancilla pair as in the measurement form, `Λ(X_a, P)`,
/// `Λ(X_b, Q)`, two `Z` read-outs, byproducts `Q` and `P`.
pub fn emit_fanout_variant(r: &SynthesisResult, target: &CliffordTableau) -> Result<FanoutListing> {
    require_verified(r, target)?;
    let n = r.n;
    let gates: Vec<Gate> = r.gates().cloned().collect();
    let m = ancilla_count(&gates);
    let mut preps = Vec::new();
    let mut ops = Vec::new();
    let mut byproducts = Vec::new();
    let mut a = 0;
    let mut outcome = 0;
    for (k, g) in gates.iter().enumerate() {
        let layer = if k < r.s1.len() { 1 } else { 2 };
        match g {
            Gate::GenS(p) => {
                preps.push(Prep {
                    ancilla: a,
                    stabilizer: Basis::Z.on(m, a),
                });
                ops.push(FanoutOp::LambdaX {
                    ancilla: a,
                    pauli: p.clone(),
                    layer,
                    gate: k,
                });
                ops.push(FanoutOp::Measure {
                    ancilla: a,
                    basis: Basis::Y,
                });
                byproducts.push(Byproduct {
                    constant: false,
                    outcomes: vec![outcome],
                    pauli: p.unsigned(),
                    gate: k,
                });
                outcome += 1;
                a += 1;
            }
            Gate::GenCZ(p, q) => {
                preps.extend(anc_pair_preps(a, m));
                for (b, o) in [(a, p), (a + 1, q)] {
                    ops.push(FanoutOp::LambdaX {
                        ancilla: b,
                        pauli: o.clone(),
                        layer,
                        gate: k,
                    });
                }
                for b in [a, a + 1] {
                    ops.push(FanoutOp::Measure {
                        ancilla: b,
                        basis: Basis::Z,
                    });
                }
                byproducts.push(Byproduct {
                    constant: false,
                    outcomes: vec![outcome],
                    pauli: q.unsigned(),
                    gate: k,
                });
                byproducts.push(Byproduct {
                    constant: false,
                    outcomes: vec![outcome + 1],
                    pauli: p.unsigned(),
                    gate: k,
                });
                outcome += 2;
                a += 2;
            }
        }
    }
    let fixups = fold_fixups(n, &gates, byproducts, &r.correction, outcome)?;
    Ok(FanoutListing {
        n_data: n,
        n_ancilla: m,
        preps,
        ops,
        fixups,
    })
}

impl fmt::Display for FanoutListing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "data {} ancilla {}", self.n_data, self.n_ancilla)?;
        for p in &self.preps {
            writeln!(f, "prep a{} {}", p.ancilla, p.stabilizer)?;
        }
        for op in &self.ops {
            match op {
                FanoutOp::LambdaX {
                    ancilla,
                    pauli,
                    layer,
                    ..
                } => writeln!(f, "cx L{layer} a{ancilla} {pauli}")?,
                FanoutOp::Measure { ancilla, basis } => {
                    writeln!(f, "read a{ancilla} {}", basis.letter())?
                }
            }
        }
        for x in &self.fixups {
            writeln!(f, "fix {} {}", x.mask_text(), x.pauli)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{all_branches, run_fanout, run_schedule};
    use crate::synthesis::synthesize;
    use crate::tableau::random_clifford;

    fn p(s: &str) -> PauliObservable {
        s.parse().unwrap()
    }

    fn single(n: usize, g: Gate) -> (SynthesisResult, CliffordTableau) {
        let t = g.apply_to(&CliffordTableau::identity(n).unwrap()).unwrap();
        let r = SynthesisResult {
            n,
            s1: vec![g],
            s2: vec![],
            correction: PauliObservable::identity(n),
        };
        (r, t)
    }

    #[test]
    fn empty_result() {
        let c = CliffordTableau::identity(2).unwrap();
        let r = synthesize(&c).unwrap();
        let s = compile(&r, &c).unwrap();
        assert_eq!(s.measurements.len(), 0);
        assert!(check_layers(&s).passed());
        assert!(run_schedule(&s, &[]).unwrap().is_identity());
        assert!(emit_fanout_variant(&r, &c).unwrap().ops.is_empty());
    }

    #[test]
    fn gadget_shapes() {
        let (r, t) = single(1, Gate::GenS(p("+Z")));
        let s = compile(&r, &t).unwrap();
        assert_eq!((s.measurements.len(), s.n_ancilla), (1, 1));
        assert_eq!(s.measurements[0].observable, p("+ZZ"));
        let (r, t) = single(2, Gate::GenCZ(p("+ZI"), p("+IZ")));
        let s = compile(&r, &t).unwrap();
        assert_eq!((s.measurements.len(), s.n_ancilla), (2, 2));
        let f = emit_fanout_variant(&r, &t).unwrap();
        assert_eq!(
            f.ops
                .iter()
                .filter(|o| matches!(o, FanoutOp::LambdaX { .. }))
                .count(),
            2
        );
    }

    #[test]
    fn every_gadget_branch_is_exact() {
        for n in 1..=3 {
            for q in crate::pauli::all_unsigned(n).into_iter().skip(1) {
                for sign in [false, true] {
                    let mut q = q.clone();
                    q.sign = sign;
                    let (r, t) = single(n, Gate::GenS(q.clone()));
                    let s = compile(&r, &t).unwrap();
                    let branches = all_branches(&s).unwrap();
                    assert_eq!(branches.len(), 4);
                    assert!(branches.iter().all(|(_, u)| *u == t), "{q}");
                    let f = emit_fanout_variant(&r, &t).unwrap();
                    for b in [false, true] {
                        assert_eq!(run_fanout(&f, &[b]).unwrap(), t);
                    }
                }
            }
        }
        let ps = crate::pauli::all_unsigned(2);
        for (i, a) in ps.iter().enumerate().skip(1) {
            for b in &ps[i + 1..] {
                if a == b || !commute(a, b) {
                    continue;
                }
                let (r, t) = single(2, Gate::GenCZ(a.clone(), b.negated()));
                let s = compile(&r, &t).unwrap();
                let branches = all_branches(&s).unwrap();
                assert_eq!(branches.len(), 16);
                assert!(branches.iter().all(|(_, u)| *u == t), "{a} {b}");
                let f = emit_fanout_variant(&r, &t).unwrap();
                for k in 0..4u32 {
                    assert_eq!(run_fanout(&f, &[k & 1 == 1, k & 2 == 2]).unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn anticommuting_layer_is_reported() {
        let s: MeasurementSchedule = "data 1 ancilla 1\nmeas L1 +XZ\nmeas L1 +ZZ\n"
            .parse()
            .unwrap();
        let report = check_layers(&s);
        assert!(!report.passed());
        assert_eq!(report.layers[0].anticommuting, vec![(0, 1)]);
        assert!(check_layers(&MeasurementSchedule::empty(3)).passed());
    }

    #[test]
    fn unverified_input_is_rejected() {
        let c = random_clifford(3, 4).unwrap();
        let mut r = synthesize(&c).unwrap();
        r.correction = p("+XXX");
        if !crate::synthesis::verify_synthesis(&r, &c) {
            assert!(matches!(compile(&r, &c), Err(Error::Verification(_))));
        }
    }

    #[test]
    fn text_round_trip_and_full_simulation() {
        for seed in 0..4 {
            let c = random_clifford(2, seed).unwrap();
            let r = synthesize(&c).unwrap();
            let s = compile(&r, &c).unwrap();
            let text = s.to_string();
            let back: MeasurementSchedule = text.parse().unwrap();
            assert_eq!(back.to_string(), text);
            for (_, u) in all_branches(&back).unwrap() {
                assert_eq!(u, c);
            }
            let f = emit_fanout_variant(&r, &c).unwrap();
            let k = f.n_outcomes();
            for b in 0..1u32 << k {
                let branch: Vec<bool> = (0..k).map(|i| b >> i & 1 == 1).collect();
                assert_eq!(run_fanout(&f, &branch).unwrap(), c);
            }
        }
        assert!("data 1 ancilla 0\nfix 11 +X\n"
            .parse::<MeasurementSchedule>()
            .is_err());
        assert!("data 1 ancilla 1\nread a1 X\n"
            .parse::<MeasurementSchedule>()
            .is_err());
    }
}
