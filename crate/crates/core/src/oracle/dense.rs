//! Dense complex-matrix simulator for at most three qubits.
//!
//! Qubit 1 is the most significant tensor factor.

use num_complex::Complex64 as C;

use crate::error::{Error, Result};
use crate::pauli::PauliObservable;
use crate::synthesis::Gate;
use crate::tableau::CliffordTableau;

pub const MAX_QUBITS: usize = 3;
/// Maximum entry deviation accepted after phase alignment.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseUnitary {
    dim: usize,
    data: Vec<C>,
}

impl DenseUnitary {
    pub fn identity(dim: usize) -> Self {
        let mut u = Self::zeros(dim);
        for i in 0..dim {
            u.data[i * dim + i] = C::new(1.0, 0.0);
        }
        u
    }

    fn zeros(dim: usize) -> Self {
        DenseUnitary {
            dim,
            data: vec![C::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, i: usize, j: usize) -> C {
        self.data[i * self.dim + j]
    }

    pub fn mul(&self, other: &DenseUnitary) -> DenseUnitary {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == C::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> DenseUnitary {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    pub fn scale(&self, c: C) -> DenseUnitary {
        DenseUnitary {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * c).collect(),
        }
    }

    fn add(&self, other: &DenseUnitary) -> DenseUnitary {
        DenseUnitary {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn max_deviation(&self, other: &DenseUnitary) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &DenseUnitary, tol: f64) -> bool {
        self.dim == other.dim && self.max_deviation(other) < tol
    }

    /// Deviation after aligning the global phase on `self`'s largest entry.
    pub fn phase_deviation(&self, other: &DenseUnitary) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        let (k, _) = self.data.iter().enumerate().fold((0, 0.0), |best, (k, x)| {
            if x.norm() > best.1 {
                (k, x.norm())
            } else {
                best
            }
        });
        let (a, b) = (self.data[k], other.data[k]);
        if b.norm() < 1e-12 {
            return f64::INFINITY;
        }
        let phase = b / a;
        let phase = phase / phase.norm();
        self.scale(phase).max_deviation(other)
    }

    pub fn equal_up_to_phase(&self, other: &DenseUnitary, tol: f64) -> bool {
        self.phase_deviation(other) < tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.mul(&self.adjoint())
            .approx_eq(&Self::identity(self.dim), tol)
    }

    fn column(&self, j: usize) -> Vec<C> {
        (0..self.dim).map(|i| self.at(i, j)).collect()
    }

    fn apply(&self, v: &[C]) -> Vec<C> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|k| self.at(i, k) * v[k]).sum())
            .collect()
    }
}

fn kron(a: &DenseUnitary, b: &DenseUnitary) -> DenseUnitary {
    let d = a.dim * b.dim;
    let mut out = DenseUnitary::zeros(d);
    for i in 0..a.dim {
        for j in 0..a.dim {
            let x = a.at(i, j);
            for k in 0..b.dim {
                for l in 0..b.dim {
                    out.data[(i * b.dim + k) * d + j * b.dim + l] = x * b.at(k, l);
                }
            }
        }
    }
    out
}

fn single(letter: char) -> DenseUnitary {
    let (o, l, i) = (C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 1.0));
    let data = match letter {
        'I' => vec![l, o, o, l],
        'X' => vec![o, l, l, o],
        'Y' => vec![o, -i, i, o],
        'Z' => vec![l, o, o, -l],
        _ => unreachable!(),
    };
    DenseUnitary { dim: 2, data }
}

/// Matrix of a signed Pauli observable, built letter by letter.
pub fn pauli_matrix(p: &PauliObservable) -> DenseUnitary {
    let mut u = DenseUnitary::identity(1);
    for q in 0..p.n() {
        u = kron(&u, &single(p.letter(q)));
    }
    if p.sign {
        u = u.scale(C::new(-1.0, 0.0));
    }
    u
}

fn guard(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        return Err(Error::Guard {
            what: "dense simulation",
            n,
            limit: MAX_QUBITS,
        });
    }
    Ok(())
}

/// `e^{iπP/4} = (I + iP)/√2`.
pub fn gen_s_matrix(p: &PauliObservable) -> DenseUnitary {
    let d = 1 << p.n();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    DenseUnitary::identity(d)
        .add(&pauli_matrix(p).scale(C::new(0.0, 1.0)))
        .scale(C::new(h, 0.0))
}

/// `Λ(P,Q) = I − (I−P)(I−Q)/2`.
pub fn gen_cz_matrix(p: &PauliObservable, q: &PauliObservable) -> DenseUnitary {
    let d = 1 << p.n();
    let id = DenseUnitary::identity(d);
    let m1 = C::new(-1.0, 0.0);
    let ip = id.add(&pauli_matrix(p).scale(m1));
    let iq = id.add(&pauli_matrix(q).scale(m1));
    id.add(&ip.mul(&iq).scale(C::new(-0.5, 0.0)))
}

pub fn dense_of_gate(g: &Gate) -> Result<DenseUnitary> {
    guard(g.n())?;
    Ok(match g {
        Gate::GenS(p) => gen_s_matrix(p),
        Gate::GenCZ(p, q) => gen_cz_matrix(p, q),
    })
}

/// Reconstructs `U` from its images: `U|0⟩` spans the joint +1 eigenspace of
/// the `Z_j` images, and `U|b⟩ = ∏ (U X_j U†)^{b_j} U|0⟩`.
pub fn dense_of_tableau(t: &CliffordTableau) -> Result<DenseUnitary> {
    let n = t.n();
    guard(n)?;
    let d = 1 << n;
    let id = DenseUnitary::identity(d);
    let mut proj = id.clone();
    for j in 0..n {
        let half = id.add(&pauli_matrix(t.z_image(j))).scale(C::new(0.5, 0.0));
        proj = proj.mul(&half);
    }
    let best = (0..d)
        .map(|j| proj.column(j))
        .max_by(|a, b| norm(a).total_cmp(&norm(b)))
        .expect("d >= 2");
    let nv = norm(&best);
    if nv < 1e-6 {
        return Err(Error::Internal("stabilized state vanished".into()));
    }
    let psi0: Vec<C> = best.iter().map(|x| x / nv).collect();
    let xs: Vec<DenseUnitary> = (0..n).map(|j| pauli_matrix(t.x_image(j))).collect();
    let mut u = DenseUnitary::zeros(d);
    for b in 0..d {
        let mut v = psi0.clone();
        for (j, xj) in xs.iter().enumerate() {
            if (b >> (n - 1 - j)) & 1 == 1 {
                v = xj.apply(&v);
            }
        }
        for (i, x) in v.into_iter().enumerate() {
            u.data[i * d + b] = x;
        }
    }
    Ok(u)
}

fn norm(v: &[C]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Checks `U P U† == t(P)` for every given Pauli.
pub fn agrees_on_conjugation(
    u: &DenseUnitary,
    t: &CliffordTableau,
    paulis: &[PauliObservable],
) -> bool {
    let ud = u.adjoint();
    paulis.iter().all(|p| {
        let lhs = u.mul(&pauli_matrix(p)).mul(&ud);
        let rhs = pauli_matrix(&t.conj(p));
        lhs.approx_eq(&rhs, TOLERANCE)
    })
}
