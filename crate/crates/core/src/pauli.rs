//! Signed Pauli observables.
//!
//! An observable is `(−1)^sign · i^{x·z} · X^x Z^z`, so that `Y = iXZ` carries
//! both bits and no explicit sign.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::{symplectic_form, BitVector};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliObservable {
    pub sign: bool,
    pub x: BitVector,
    pub z: BitVector,
}

impl PauliObservable {
    pub fn identity(n: usize) -> Self {
        PauliObservable {
            sign: false,
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
        }
    }

    /// `Z_j` (0-based).
    pub fn z_gen(n: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.z.set(j, true);
        p
    }

    /// `X_j` (0-based).
    pub fn x_gen(n: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.x.set(j, true);
        p
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn negated(&self) -> Self {
        let mut p = self.clone();
        p.sign = !p.sign;
        p
    }

    pub fn unsigned(&self) -> Self {
        let mut p = self.clone();
        p.sign = false;
        p
    }

    pub fn symplectic_vector(&self) -> BitVector {
        BitVector::concat(&self.z, &self.x)
    }

    pub fn from_symplectic_vector(v: &BitVector, sign: bool) -> Self {
        let n = v.len() / 2;
        PauliObservable {
            sign,
            z: v.slice(0, n),
            x: v.slice(n, 2 * n),
        }
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        (0..self.n())
            .filter(|&i| self.x.get(i) || self.z.get(i))
            .count()
    }

    /// Embed into a larger register starting at `offset`.
    pub fn embed(&self, total: usize, offset: usize) -> Self {
        let mut p = Self::identity(total);
        p.sign = self.sign;
        for i in self.x.iter_ones() {
            p.x.set(offset + i, true);
        }
        for i in self.z.iter_ones() {
            p.z.set(offset + i, true);
        }
        p
    }

    /// Tensor factors `[start, end)`, keeping the sign.
    pub fn restrict(&self, start: usize, end: usize) -> Self {
        PauliObservable {
            sign: self.sign,
            x: self.x.slice(start, end),
            z: self.z.slice(start, end),
        }
    }

    pub fn letter(&self, i: usize) -> char {
        match (self.x.get(i), self.z.get(i)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (true, true) => 'Y',
            (false, true) => 'Z',
        }
    }

    pub(crate) fn ixz_exponent(&self) -> u8 {
        (self.x.and(&self.z).count_ones() % 4) as u8
    }
}

fn check_sizes(p: &PauliObservable, q: &PauliObservable) -> Result<()> {
    if p.n() != q.n() {
        return Err(Error::Dimension(format!(
            "pauli sizes {} and {}",
            p.n(),
            q.n()
        )));
    }
    Ok(())
}

pub fn commutes(p: &PauliObservable, q: &PauliObservable) -> Result<bool> {
    check_sizes(p, q)?;
    Ok(commute(p, q))
}

pub(crate) fn commute(p: &PauliObservable, q: &PauliObservable) -> bool {
    p.x.dot(&q.z) == p.z.dot(&q.x)
}

/// Returns `(R, k)` with `p·q = i^k · R`, `k ∈ {0, 1}`.
pub fn multiply(p: &PauliObservable, q: &PauliObservable) -> Result<(PauliObservable, u8)> {
    check_sizes(p, q)?;
    let mut acc = Phased::from_observable(p);
    acc.mul_assign(q);
    Ok(acc.split())
}

/// `i^e · X^x Z^z`, the working form for phase-exact products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Phased {
    pub e: u8,
    pub x: BitVector,
    pub z: BitVector,
}

impl Phased {
    pub fn identity(n: usize) -> Self {
        Phased {
            e: 0,
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
        }
    }

    pub fn from_observable(p: &PauliObservable) -> Self {
        Phased {
            e: (2 * p.sign as u8 + p.ixz_exponent()) % 4,
            x: p.x.clone(),
            z: p.z.clone(),
        }
    }

    /// `self ← self · q`.
    pub fn mul_assign(&mut self, q: &PauliObservable) {
        // Z^{z1} X^{x2} = (−1)^{z1·x2} X^{x2} Z^{z1}
        let swap = self.z.dot(&q.x) as u8;
        self.e = (self.e + 2 * q.sign as u8 + q.ixz_exponent() + 2 * swap) % 4;
        self.x.xor_assign(&q.x);
        self.z.xor_assign(&q.z);
    }

    pub fn times_i(&mut self, k: u8) {
        self.e = (self.e + k) % 4;
    }

    /// Split into a Hermitian observable and a residual power of `i` in {0, 1}.
    pub fn split(self) -> (PauliObservable, u8) {
        let w = (self.x.and(&self.z).count_ones() % 4) as u8;
        let rel = (self.e + 4 - w) % 4;
        let k = rel % 2;
        let sign = (rel - k) / 2 == 1;
        (
            PauliObservable {
                sign,
                x: self.x,
                z: self.z,
            },
            k,
        )
    }

    /// The observable, requiring the accumulated phase to be real.
    pub fn into_hermitian(self) -> PauliObservable {
        let (p, k) = self.split();
        assert_eq!(k, 0, "product is not Hermitian");
        p
    }
}

/// Symplectic form of two observables' vectors.
pub fn symplectic_product(p: &PauliObservable, q: &PauliObservable) -> bool {
    symplectic_form(&p.symplectic_vector(), &q.symplectic_vector())
}

impl fmt::Display for PauliObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.sign { "-" } else { "+" })?;
        for i in 0..self.n() {
            write!(f, "{}", self.letter(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PauliObservable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (sign, body) = match s.chars().next() {
            Some('+') => (false, &s[1..]),
            Some('-') => (true, &s[1..]),
            _ => (false, s),
        };
        if body.is_empty() {
            return Err(Error::InvalidPauli(format!("`{s}` has no qubits")));
        }
        let n = body.chars().count();
        let mut p = PauliObservable::identity(n);
        p.sign = sign;
        for (i, c) in body.chars().enumerate() {
            match c {
                'I' => {}
                'X' => p.x.set(i, true),
                'Y' => {
                    p.x.set(i, true);
                    p.z.set(i, true)
                }
                'Z' => p.z.set(i, true),
                _ => return Err(Error::InvalidPauli(format!("`{s}`: bad letter `{c}`"))),
            }
        }
        Ok(p)
    }
}

pub fn from_string(s: &str) -> Result<PauliObservable> {
    s.parse()
}

#[cfg(test)]
pub(crate) fn all_unsigned(n: usize) -> Vec<PauliObservable> {
    (0..1u64 << (2 * n))
        .map(|c| PauliObservable::from_symplectic_vector(&BitVector::from_u64(2 * n, c), false))
        .collect()
}
