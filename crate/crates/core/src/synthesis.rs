//! Two-layer synthesis: a Clifford becomes generalized S / CZ gates in two
//! mutually commuting layers followed by a Pauli correction.

use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::gf2::{BitMatrix, BitVector, EchelonBasis};
use crate::involution::{decompose_two_involutions, normal_form, InvolutionKind};
use crate::pauli::{commute, PauliObservable};
use crate::tableau::{check_gen_cz, check_gen_s, CliffordTableau};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Gate {
    /// `e^{iπP/4}`
    GenS(PauliObservable),
    /// `Λ(P, Q) = e^{iπ(I−P)(I−Q)/4}`
    GenCZ(PauliObservable, PauliObservable),
}

impl Gate {
    pub fn gen_s(p: PauliObservable) -> Result<Gate> {
        check_gen_s(&p)?;
        Ok(Gate::GenS(p))
    }

    pub fn gen_cz(p: PauliObservable, q: PauliObservable) -> Result<Gate> {
        check_gen_cz(&p, &q)?;
        Ok(Gate::GenCZ(p, q))
    }

    pub fn n(&self) -> usize {
        match self {
            Gate::GenS(p) | Gate::GenCZ(p, _) => p.n(),
        }
    }

    pub fn observables(&self) -> Vec<&PauliObservable> {
        match self {
            Gate::GenS(p) => vec![p],
            Gate::GenCZ(p, q) => vec![p, q],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Gate::GenS(p) => check_gen_s(p),
            Gate::GenCZ(p, q) => check_gen_cz(p, q),
        }
    }

    /// `g ∘ t`.
    pub fn apply_to(&self, t: &CliffordTableau) -> Result<CliffordTableau> {
        match self {
            Gate::GenS(p) => t.apply_gen_s(p),
            Gate::GenCZ(p, q) => t.apply_gen_cz(p, q),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::GenS(p) => write!(f, "S {p}"),
            Gate::GenCZ(p, q) => write!(f, "CZ {p} {q}"),
        }
    }
}

pub fn measurement_cost(g: &Gate) -> usize {
    match g {
        Gate::GenS(_) => 1,
        Gate::GenCZ(_, _) => 2,
    }
}

pub fn total_cost(gates: &[Gate]) -> usize {
    gates.iter().map(measurement_cost).sum()
}

pub fn gate_symplectic(g: &Gate, n: usize) -> Result<BitMatrix> {
    if g.n() != n {
        return Err(Error::Dimension(format!(
            "gate on {} qubits, expected {n}",
            g.n()
        )));
    }
    g.validate()?;
    let d = 2 * n;
    let mut m = BitMatrix::identity(d);
    let mut transvect = |v: &BitVector, u: &BitVector| {
        // w ↦ w + ⟨Ωv, w⟩ u on every column
        for j in 0..d {
            if v.get(if j < n { j + n } else { j - n }) {
                for i in u.iter_ones() {
                    m.set(i, j, !m.get(i, j));
                }
            }
        }
    };
    match g {
        Gate::GenS(p) => {
            let v = p.symplectic_vector();
            transvect(&v, &v);
        }
        Gate::GenCZ(p, q) => {
            let (vp, vq) = (p.symplectic_vector(), q.symplectic_vector());
            transvect(&vp, &vq);
            transvect(&vq, &vp);
        }
    }
    Ok(m)
}

/// Applies `gates` in order, then the Pauli `correction`.
pub fn realize(n: usize, gates: &[Gate], correction: &PauliObservable) -> Result<CliffordTableau> {
    let mut t = CliffordTableau::identity(n)?;
    for g in gates {
        t = g.apply_to(&t)?;
    }
    CliffordTableau::compose(&CliffordTableau::from_pauli(correction)?, &t)
}

/// The Pauli `P` with `c == P ∘ u`.
pub fn pauli_correction(c: &CliffordTableau, u: &CliffordTableau) -> Result<PauliObservable> {
    CliffordTableau::compose(c, &u.inverse())?.extract_pauli()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SynthesisResult {
    pub n: usize,
    /// Executed first.
    pub s1: Vec<Gate>,
    pub s2: Vec<Gate>,
    pub correction: PauliObservable,
}

impl SynthesisResult {
    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.s1.iter().chain(&self.s2)
    }

    pub fn total_cost(&self) -> usize {
        total_cost(&self.s1) + total_cost(&self.s2)
    }

    pub fn to_sequence(&self) -> GateSequence {
        GateSequence {
            n: self.n,
            layers: vec![self.s1.clone(), self.s2.clone()],
            correction: self.correction.clone(),
        }
    }
}

/// Gates `B Z_j B†` for the involution with normal form `nf`, `B` realizing `f`.
fn layer_from_involution(r: &BitMatrix) -> Result<Vec<Gate>> {
    let nf = normal_form(r)?;
    let b = CliffordTableau::from_symplectic(&nf.f)?;
    let gates = match nf.kind {
        InvolutionKind::SType => (0..nf.dim)
            .map(|j| Gate::gen_s(b.z_image(j).clone()))
            .collect(),
        InvolutionKind::CzType => (0..nf.dim / 2)
            .map(|m| Gate::gen_cz(b.z_image(2 * m).clone(), b.z_image(2 * m + 1).clone()))
            .collect(),
    };
    gates
}

pub fn synthesize(c: &CliffordTableau) -> Result<SynthesisResult> {
    let n = c.n();
    let (m1, m2) = decompose_two_involutions(&c.to_symplectic())?;
    let s2 = layer_from_involution(&m1)?;
    let s1 = layer_from_involution(&m2)?;
    let mut u = CliffordTableau::identity(n)?;
    for g in s1.iter().chain(&s2) {
        u = g.apply_to(&u)?;
    }
    let correction = pauli_correction(c, &u)?;
    Ok(SynthesisResult {
        n,
        s1,
        s2,
        correction,
    })
}

/// Checks that the gate observables of one layer pairwise commute and are independent.
pub fn layer_defects(layer: &[Gate]) -> Vec<String> {
    let obs: Vec<&PauliObservable> = layer.iter().flat_map(|g| g.observables()).collect();
    let mut out = Vec::new();
    for i in 0..obs.len() {
        for j in i + 1..obs.len() {
            if !commute(obs[i], obs[j]) {
                out.push(format!("{} and {} anticommute", obs[i], obs[j]));
            }
        }
    }
    let mut basis = EchelonBasis::new();
    if !obs.iter().all(|p| basis.insert(&p.symplectic_vector())) {
        out.push("observables are linearly dependent".into());
    }
    out
}

/// Every reason `r` fails to implement `c`; empty when it does.
pub fn synthesis_defects(r: &SynthesisResult, c: &CliffordTableau) -> Vec<String> {
    let n = c.n();
    let mut out = Vec::new();
    if r.n != n || r.correction.n() != n || r.gates().any(|g| g.n() != n) {
        return vec![format!("qubit count differs from target ({n})")];
    }
    if r.correction.sign {
        out.push("correction is not in canonical + form".into());
    }
    for (name, layer) in [("s1", &r.s1), ("s2", &r.s2)] {
        let cost = total_cost(layer);
        if cost > n {
            out.push(format!("{name} costs {cost} > {n} measurements"));
        }
        out.extend(
            layer_defects(layer)
                .into_iter()
                .map(|d| format!("{name}: {d}")),
        );
    }
    let gates: Vec<Gate> = r.gates().cloned().collect();
    match realize(n, &gates, &r.correction) {
        Ok(t) if t == *c => {}
        Ok(_) => out.push("replayed circuit differs from target".into()),
        Err(e) => out.push(format!("replay failed: {e}")),
    }
    out
}

pub fn verify_synthesis(r: &SynthesisResult, c: &CliffordTableau) -> bool {
    synthesis_defects(r, c).is_empty()
}

/// Text form of a gate list split into layers plus a final Pauli.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GateSequence {
    pub n: usize,
    pub layers: Vec<Vec<Gate>>,
    pub correction: PauliObservable,
}

impl GateSequence {
    pub fn gates(&self) -> Vec<Gate> {
        self.layers.iter().flatten().cloned().collect()
    }

    pub fn realize(&self) -> Result<CliffordTableau> {
        realize(self.n, &self.gates(), &self.correction)
    }

    pub fn into_result(self) -> Option<SynthesisResult> {
        let [s1, s2]: [Vec<Gate>; 2] = self.layers.try_into().ok()?;
        Some(SynthesisResult {
            n: self.n,
            s1,
            s2,
            correction: self.correction,
        })
    }
}

impl fmt::Display for GateSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (k, layer) in self.layers.iter().enumerate() {
            if k > 0 {
                writeln!(f, "---")?;
            }
            for g in layer {
                writeln!(f, "{g}")?;
            }
        }
        writeln!(f, "P {}", self.correction)
    }
}

impl FromStr for GateSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, head) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let n: usize = head
            .parse()
            .map_err(|_| parse_err(ln, "first line must be the qubit count"))?;
        if n == 0 {
            return Err(parse_err(ln, "qubit count must be at least 1"));
        }
        let pauli = |ln: usize, t: &str| -> Result<PauliObservable> {
            let p: PauliObservable = t.parse().map_err(|e: Error| parse_err(ln, e.to_string()))?;
            if p.n() != n {
                return Err(parse_err(ln, format!("expected {n} qubits in `{t}`")));
            }
            Ok(p)
        };
        let mut layers = vec![Vec::new()];
        let mut correction = None;
        for (ln, l) in lines {
            if correction.is_some() {
                return Err(parse_err(ln, "content after the correction line"));
            }
            let toks: Vec<&str> = l.split_whitespace().collect();
            match toks[..] {
                ["---"] => layers.push(Vec::new()),
                ["S", p] => {
                    let g = Gate::gen_s(pauli(ln, p)?).map_err(|e| parse_err(ln, e.to_string()))?;
                    layers.last_mut().expect("nonempty").push(g);
                }
                ["CZ", p, q] => {
                    let g = Gate::gen_cz(pauli(ln, p)?, pauli(ln, q)?)
                        .map_err(|e| parse_err(ln, e.to_string()))?;
                    layers.last_mut().expect("nonempty").push(g);
                }
                ["P", p] => correction = Some(pauli(ln, p)?),
                _ => return Err(parse_err(ln, format!("unrecognized line `{l}`"))),
            }
        }
        let correction = correction.ok_or_else(|| parse_err(ln, "missing `P` correction line"))?;
        Ok(GateSequence {
            n,
            layers,
            correction,
        })
    }
}
