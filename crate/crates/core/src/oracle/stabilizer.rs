//! Stabilizer simulator with forced measurement outcomes.

use crate::error::{Error, Result};
use crate::gf2::{symplectic_form, BitMatrix, BitVector};
use crate::pauli::{commute, PauliObservable, Phased};
use crate::tableau::{gen_cz_conjugate, gen_s_conjugate, CliffordTableau};

fn product(a: &PauliObservable, b: &PauliObservable) -> PauliObservable {
    let mut acc = Phased::from_observable(a);
    acc.mul_assign(b);
    acc.into_hermitian()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerState {
    n: usize,
    stabilizers: Vec<PauliObservable>,
    destabilizers: Vec<PauliObservable>,
}

impl StabilizerState {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Self {
        StabilizerState {
            n,
            stabilizers: (0..n).map(|j| PauliObservable::z_gen(n, j)).collect(),
            destabilizers: (0..n).map(|j| PauliObservable::x_gen(n, j)).collect(),
        }
    }

    /// The state stabilized by `gens`, which must be `n` independent commuting observables.
    pub fn from_stabilizers(gens: Vec<PauliObservable>) -> Result<Self> {
        let n = gens.len();
        if n == 0 || gens.iter().any(|g| g.n() != n) {
            return Err(Error::Dimension("need n generators on n qubits".into()));
        }
        for i in 0..n {
            for j in i + 1..n {
                if !commute(&gens[i], &gens[j]) {
                    return Err(Error::InvalidPauli(format!(
                        "{} and {} anticommute",
                        gens[i], gens[j]
                    )));
                }
            }
        }
        let vs: Vec<BitVector> = gens.iter().map(|g| g.symplectic_vector()).collect();
        // Row j computes ⟨Ω g_j, ·⟩.
        let a = BitMatrix::from_fn(n, 2 * n, |j, c| {
            symplectic_form(&vs[j], &BitVector::unit(2 * n, c))
        });
        let mut ds = Vec::with_capacity(n);
        for i in 0..n {
            let d = a
                .solve(&BitVector::unit(n, i))
                .ok_or_else(|| Error::InvalidPauli("stabilizer generators are dependent".into()))?;
            ds.push(d);
        }
        for j in 0..n {
            for i in 0..j {
                if symplectic_form(&ds[i], &ds[j]) {
                    let g = vs[i].clone();
                    ds[j].xor_assign(&g);
                }
            }
        }
        let state = StabilizerState {
            n,
            stabilizers: gens,
            destabilizers: ds
                .iter()
                .map(|d| PauliObservable::from_symplectic_vector(d, false))
                .collect(),
        };
        debug_assert!(state.invariants_hold());
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stabilizers(&self) -> &[PauliObservable] {
        &self.stabilizers
    }

    pub fn tensor(&self, other: &StabilizerState) -> StabilizerState {
        let total = self.n + other.n;
        let lift = |ps: &[PauliObservable], off| {
            ps.iter().map(|p| p.embed(total, off)).collect::<Vec<_>>()
        };
        let mut stabilizers = lift(&self.stabilizers, 0);
        stabilizers.extend(lift(&other.stabilizers, self.n));
        let mut destabilizers = lift(&self.destabilizers, 0);
        destabilizers.extend(lift(&other.destabilizers, self.n));
        StabilizerState {
            n: total,
            stabilizers,
            destabilizers,
        }
    }

    /// Stabilizers pairwise commute, destabilizer `j` anticommutes with stabilizer `j` only,
    /// and destabilizers pairwise commute.
    pub fn invariants_hold(&self) -> bool {
        let (s, d) = (&self.stabilizers, &self.destabilizers);
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                commute(&s[i], &s[j])
                    && commute(&d[i], &d[j])
                    && (commute(&d[i], &s[j]) == (i != j))
            })
        })
    }

    fn check(&self, p: &PauliObservable) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::Dimension(format!(
                "{}-qubit operator on {}-qubit state",
                p.n(),
                self.n
            )));
        }
        Ok(())
    }

    /// Measures `p`; outcome `true` means eigenvalue −1. Returns `(outcome, deterministic)`.
    pub fn measure(&mut self, p: &PauliObservable, forced: Option<bool>) -> Result<(bool, bool)> {
        self.check(p)?;
        if p.is_identity() {
            return Err(Error::InvalidPauli("measuring the identity".into()));
        }
        if let Some(k) = self.stabilizers.iter().position(|s| !commute(s, p)) {
            let sk = self.stabilizers[k].clone();
            for i in 0..self.n {
                if i != k && !commute(&self.stabilizers[i], p) {
                    self.stabilizers[i] = product(&self.stabilizers[i], &sk);
                }
                if i != k && !commute(&self.destabilizers[i], p) {
                    self.destabilizers[i] = product(&self.destabilizers[i], &sk);
                }
            }
            let outcome = forced.unwrap_or(false);
            self.destabilizers[k] = sk;
            self.stabilizers[k] = if outcome { p.negated() } else { p.clone() };
            debug_assert!(self.invariants_hold());
            return Ok((outcome, false));
        }
        let mut acc = Phased::identity(self.n);
        for i in 0..self.n {
            if !commute(&self.destabilizers[i], p) {
                acc.mul_assign(&self.stabilizers[i]);
            }
        }
        let q = acc.into_hermitian();
        if q.x != p.x || q.z != p.z {
            return Err(Error::Internal(
                "deterministic measurement outside the group".into(),
            ));
        }
        let outcome = q.sign != p.sign;
        if forced.is_some_and(|f| f != outcome) {
            return Err(Error::ImpossibleOutcome);
        }
        Ok((outcome, true))
    }

    pub fn apply_pauli(&mut self, p: &PauliObservable) -> Result<()> {
        self.check(p)?;
        for g in self
            .stabilizers
            .iter_mut()
            .chain(self.destabilizers.iter_mut())
        {
            if !commute(g, p) {
                g.sign = !g.sign;
            }
        }
        Ok(())
    }

    pub fn apply_gen_s(&mut self, p: &PauliObservable) -> Result<()> {
        self.check(p)?;
        crate::tableau::check_gen_s(p)?;
        for g in self
            .stabilizers
            .iter_mut()
            .chain(self.destabilizers.iter_mut())
        {
            *g = gen_s_conjugate(p, g);
        }
        Ok(())
    }

    pub fn apply_gen_cz(&mut self, p: &PauliObservable, q: &PauliObservable) -> Result<()> {
        self.check(p)?;
        self.check(q)?;
        crate::tableau::check_gen_cz(p, q)?;
        for g in self
            .stabilizers
            .iter_mut()
            .chain(self.destabilizers.iter_mut())
        {
            *g = gen_cz_conjugate(p, q, g);
        }
        Ok(())
    }

    /// The group element whose restriction to the qubits outside `[lo, hi)` equals `target`
    /// there, returned restricted to `[lo, hi)` with its sign.
    fn element_matching(
        &self,
        target: &PauliObservable,
        lo: usize,
        hi: usize,
    ) -> Result<PauliObservable> {
        let outside = |p: &PauliObservable| {
            let mut v = p.symplectic_vector();
            for i in lo..hi {
                v.set(i, false);
                v.set(self.n + i, false);
            }
            v
        };
        let cols: Vec<BitVector> = self.stabilizers.iter().map(outside).collect();
        let a = BitMatrix::from_columns(&cols)?;
        let coeffs = a
            .solve(&outside(target))
            .ok_or_else(|| Error::Internal(format!("{target} not in the stabilizer group")))?;
        let mut acc = Phased::identity(self.n);
        for i in coeffs.iter_ones() {
            acc.mul_assign(&self.stabilizers[i]);
        }
        let elem = acc.into_hermitian();
        // Sign of the factor outside [lo, hi) must match the target.
        let mut inside = elem.restrict(lo, hi);
        inside.sign = elem.sign ^ target.sign;
        Ok(inside)
    }
}

pub fn measure_joint(
    state: &StabilizerState,
    p: &PauliObservable,
    forced: Option<bool>,
) -> Result<(StabilizerState, bool, bool)> {
    let mut s = state.clone();
    let (outcome, det) = s.measure(p, forced)?;
    Ok((s, outcome, det))
}

/// A data register of `n` qubits, each maximally entangled with a reference qubit,
/// plus an ancilla register. Layout: reference, data, ancilla.
#[derive(Clone, Debug)]
pub struct ChoiMachine {
    pub n_data: usize,
    pub n_ancilla: usize,
    pub state: StabilizerState,
}

impl ChoiMachine {
    pub fn new(n_data: usize, ancilla: Option<StabilizerState>) -> Result<Self> {
        if n_data == 0 {
            return Err(Error::ZeroQubits);
        }
        let n = n_data;
        let mut stabilizers = Vec::new();
        let mut destabilizers = Vec::new();
        for j in 0..n {
            let mut xx = PauliObservable::identity(2 * n);
            xx.x.set(j, true);
            xx.x.set(n + j, true);
            let mut zz = PauliObservable::identity(2 * n);
            zz.z.set(j, true);
            zz.z.set(n + j, true);
            stabilizers.push(xx);
            destabilizers.push(PauliObservable::z_gen(2 * n, n + j));
            stabilizers.push(zz);
            destabilizers.push(PauliObservable::x_gen(2 * n, j));
        }
        let bell = StabilizerState {
            n: 2 * n,
            stabilizers,
            destabilizers,
        };
        debug_assert!(bell.invariants_hold());
        let n_ancilla = ancilla.as_ref().map_or(0, |a| a.n());
        let state = match ancilla {
            Some(a) => bell.tensor(&a),
            None => bell,
        };
        Ok(ChoiMachine {
            n_data,
            n_ancilla,
            state,
        })
    }

    /// Lifts an operator on data‖ancilla to the full register.
    pub fn lift(&self, p: &PauliObservable) -> Result<PauliObservable> {
        if p.n() != self.n_data + self.n_ancilla {
            return Err(Error::Dimension(format!(
                "operator on {} qubits, register has {}",
                p.n(),
                self.n_data + self.n_ancilla
            )));
        }
        Ok(p.embed(self.state.n(), self.n_data))
    }

    pub fn lift_data(&self, p: &PauliObservable) -> Result<PauliObservable> {
        if p.n() != self.n_data {
            return Err(Error::Dimension("data operator size".into()));
        }
        Ok(p.embed(self.state.n(), self.n_data))
    }

    /// The Clifford applied to the data register, assuming the ancillas are
    /// disentangled from it.
    pub fn data_clifford(&self) -> Result<CliffordTableau> {
        let n = self.n_data;
        let total = self.state.n();
        let mut images = Vec::with_capacity(2 * n);
        for zx in [true, false] {
            for j in 0..n {
                let mut t = PauliObservable::identity(total);
                if zx {
                    t.z.set(j, true);
                } else {
                    t.x.set(j, true);
                }
                images.push(self.state.element_matching(&t, n, 2 * n)?);
            }
        }
        CliffordTableau::from_images(images)
    }
}
