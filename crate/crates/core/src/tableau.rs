//! Sign-exact Clifford tableaus.
//!
//! `images[j]` is `C Z_j C†` and `images[n + j]` is `C X_j C†`. Column `k` of
//! the symplectic matrix is the symplectic vector of `images[k]`, which makes
//! `M_{CD} = M_C M_D`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{parse_err, Error, Result};
use crate::gf2::{self, BitMatrix, BitVector};
use crate::pauli::{commute, PauliObservable, Phased};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordTableau {
    n: usize,
    images: Vec<PauliObservable>,
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroQubits);
        }
        let images = (0..n)
            .map(|j| PauliObservable::z_gen(n, j))
            .chain((0..n).map(|j| PauliObservable::x_gen(n, j)))
            .collect();
        Ok(CliffordTableau { n, images })
    }

    /// Builds a tableau from generator images, checking that they preserve
    /// the commutation relations of `Z_1..Z_n, X_1..X_n`.
    pub fn from_images(images: Vec<PauliObservable>) -> Result<Self> {
        if images.is_empty() || !images.len().is_multiple_of(2) {
            return Err(Error::Dimension("tableau needs 2n images".into()));
        }
        let n = images.len() / 2;
        if images.iter().any(|p| p.n() != n) {
            return Err(Error::Dimension("image size differs from n".into()));
        }
        let t = CliffordTableau { n, images };
        gf2::require_symplectic(&t.to_symplectic())?;
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[PauliObservable] {
        &self.images
    }

    pub fn z_image(&self, j: usize) -> &PauliObservable {
        &self.images[j]
    }

    pub fn x_image(&self, j: usize) -> &PauliObservable {
        &self.images[self.n + j]
    }

    pub fn to_symplectic(&self) -> BitMatrix {
        let cols: Vec<BitVector> = self.images.iter().map(|p| p.symplectic_vector()).collect();
        BitMatrix::from_columns(&cols).expect("equal image sizes")
    }

    pub fn from_symplectic(m: &BitMatrix) -> Result<Self> {
        gf2::require_symplectic(m)?;
        let images = m
            .columns()
            .iter()
            .map(|c| PauliObservable::from_symplectic_vector(c, false))
            .collect();
        Ok(CliffordTableau {
            n: m.rows() / 2,
            images,
        })
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::Dimension(format!(
                "tableau on {} qubits, operand on {n}",
                self.n
            )));
        }
        Ok(())
    }

    pub fn conjugate(&self, p: &PauliObservable) -> Result<PauliObservable> {
        self.check_n(p.n())?;
        Ok(self.conj(p))
    }

    pub(crate) fn conj(&self, p: &PauliObservable) -> PauliObservable {
        // p = (−1)^s i^{x·z} ∏ X_j^{x_j} ∏ Z_j^{z_j}
        let mut acc = Phased::identity(self.n);
        acc.times_i((2 * p.sign as u8 + p.ixz_exponent()) % 4);
        for j in p.x.iter_ones() {
            acc.mul_assign(self.x_image(j));
        }
        for j in p.z.iter_ones() {
            acc.mul_assign(self.z_image(j));
        }
        acc.into_hermitian()
    }

    /// `a ∘ b`, with `b` applied first.
    pub fn compose(a: &CliffordTableau, b: &CliffordTableau) -> Result<CliffordTableau> {
        a.check_n(b.n)?;
        Ok(CliffordTableau {
            n: a.n,
            images: b.images.iter().map(|p| a.conj(p)).collect(),
        })
    }

    pub fn inverse(&self) -> CliffordTableau {
        let minv = gf2::symplectic_inverse(&self.to_symplectic());
        let mut inv = CliffordTableau::from_symplectic(&minv).expect("inverse is symplectic");
        for k in 0..2 * self.n {
            if self.conj(&inv.images[k]).sign {
                inv.images[k].sign = !inv.images[k].sign;
            }
        }
        inv
    }

    pub fn is_identity(&self) -> bool {
        *self == CliffordTableau::identity(self.n).expect("n >= 1")
    }

    /// The Pauli `P` (sign `+`, global phase dropped) with `self == P` as a Clifford.
    pub fn extract_pauli(&self) -> Result<PauliObservable> {
        if !self.to_symplectic().is_identity() {
            return Err(Error::NotPauli);
        }
        let mut p = PauliObservable::identity(self.n);
        for j in 0..self.n {
            p.x.set(j, self.z_image(j).sign);
            p.z.set(j, self.x_image(j).sign);
        }
        Ok(p)
    }

    /// Tableau of the Pauli unitary `p`; its sign is a global phase.
    pub fn from_pauli(p: &PauliObservable) -> Result<CliffordTableau> {
        let mut t = CliffordTableau::identity(p.n())?;
        for g in t.images.iter_mut() {
            g.sign = !commute(g, p);
        }
        Ok(t)
    }

    /// `e^{iπp/4} ∘ self`.
    pub fn apply_gen_s(&self, p: &PauliObservable) -> Result<CliffordTableau> {
        self.check_n(p.n())?;
        check_gen_s(p)?;
        Ok(self.map_images(|r| gen_s_conjugate(p, r)))
    }

    /// `Λ(p, q) ∘ self`.
    pub fn apply_gen_cz(
        &self,
        p: &PauliObservable,
        q: &PauliObservable,
    ) -> Result<CliffordTableau> {
        self.check_n(p.n())?;
        self.check_n(q.n())?;
        check_gen_cz(p, q)?;
        Ok(self.map_images(|r| gen_cz_conjugate(p, q, r)))
    }

    fn map_images(&self, f: impl Fn(&PauliObservable) -> PauliObservable) -> CliffordTableau {
        CliffordTableau {
            n: self.n,
            images: self.images.iter().map(f).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for p in &self.images {
            s.push_str(&p.to_string());
            s.push('\n');
        }
        s
    }
}

pub(crate) fn check_gen_s(p: &PauliObservable) -> Result<()> {
    if p.is_identity() {
        return Err(Error::InvalidGate("generalized S on the identity".into()));
    }
    Ok(())
}

pub(crate) fn check_gen_cz(p: &PauliObservable, q: &PauliObservable) -> Result<()> {
    if p.n() != q.n() {
        return Err(Error::Dimension(
            "generalized CZ operands differ in size".into(),
        ));
    }
    if p.is_identity() || q.is_identity() || (p.x == q.x && p.z == q.z) {
        return Err(Error::InvalidGate(format!("{p} and {q} are dependent")));
    }
    if !commute(p, q) {
        return Err(Error::InvalidGate(format!("{p} and {q} anticommute")));
    }
    Ok(())
}

/// `e^{iπp/4} r e^{−iπp/4}`: `r` if commuting, else `i·p·r`.
pub(crate) fn gen_s_conjugate(p: &PauliObservable, r: &PauliObservable) -> PauliObservable {
    if commute(p, r) {
        return r.clone();
    }
    let mut acc = Phased::from_observable(p);
    acc.mul_assign(r);
    acc.times_i(1);
    acc.into_hermitian()
}

/// `Λ(p,q) r Λ(p,q)`.
pub(crate) fn gen_cz_conjugate(
    p: &PauliObservable,
    q: &PauliObservable,
    r: &PauliObservable,
) -> PauliObservable {
    let mut acc = Phased::from_observable(r);
    match (!commute(r, p), !commute(r, q)) {
        (false, false) => return r.clone(),
        (true, false) => acc.mul_assign(q),
        (false, true) => acc.mul_assign(p),
        (true, true) => {
            acc.mul_assign(p);
            acc.mul_assign(q);
            acc.times_i(2);
        }
    }
    acc.into_hermitian()
}

pub fn random_clifford_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<CliffordTableau> {
    if n == 0 {
        return Err(Error::ZeroQubits);
    }
    let m = gf2::random_symplectic(n, rng);
    let mut t = CliffordTableau::from_symplectic(&m)?;
    for g in t.images.iter_mut() {
        g.sign = rng.gen();
    }
    Ok(t)
}

pub fn random_clifford(n: usize, seed: u64) -> Result<CliffordTableau> {
    random_clifford_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

impl fmt::Debug for CliffordTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CliffordTableau(")?;
        for (k, p) in self.images.iter().enumerate() {
            let (g, j) = if k < self.n {
                ('Z', k)
            } else {
                ('X', k - self.n)
            };
            write!(f, "{}{g}{}->{p}", if k == 0 { "" } else { ", " }, j + 1)?;
        }
        write!(f, ")")
    }
}

impl FromStr for CliffordTableau {
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
        let mut images = Vec::with_capacity(2 * n);
        let mut last = ln;
        for _ in 0..2 * n {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| parse_err(last, format!("expected {} images", 2 * n)))?;
            last = ln;
            let p: PauliObservable = l.parse().map_err(|e: Error| parse_err(ln, e.to_string()))?;
            if p.n() != n {
                return Err(parse_err(ln, format!("expected {n} letters")));
            }
            images.push(p);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "trailing content"));
        }
        CliffordTableau::from_images(images).map_err(|e| parse_err(last, e.to_string()))
    }
}
