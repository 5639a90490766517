//! Dense vectors and matrices over F2.
//!
//! Symplectic vectors of length `2n` store the z block first and the x block
//! second. The form `⟨Ωa, b⟩` is `a_z·b_x + a_x·b_z`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{parse_err, Error, Result};

const W: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(W)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = rng.gen();
        }
        v.mask_tail();
        v
    }

    fn mask_tail(&mut self) {
        let r = self.len % W;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / W] >> (i % W)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        let m = 1u64 << (i % W);
        if b {
            self.words[i / W] |= m;
        } else {
            self.words[i / W] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / W] ^= 1u64 << (i % W);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() & 1 == 1
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        out
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn first_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * W + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * W + t)
                }
            })
        })
    }

    pub fn concat(a: &BitVector, b: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(a.len + b.len);
        for i in a.iter_ones() {
            out.set(i, true);
        }
        for i in b.iter_ones() {
            out.set(a.len + i, true);
        }
        out
    }

    pub fn slice(&self, start: usize, end: usize) -> BitVector {
        let mut out = BitVector::zeros(end - start);
        for i in start..end {
            if self.get(i) {
                out.set(i - start, true);
            }
        }
        out
    }

    /// Low-order bits of a `u64`, bit `i` of `x` becoming entry `i`.
    pub fn from_u64(len: usize, x: u64) -> BitVector {
        assert!(len <= 64);
        let mut v = BitVector::zeros(len);
        if len > 0 {
            v.words[0] = x;
            v.mask_tail();
        }
        v
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `⟨Ωa, b⟩` for vectors of length `2n` laid out as (z, x).
pub fn symplectic_form(a: &BitVector, b: &BitVector) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len() / 2;
    let mut p = false;
    for i in a.iter_ones() {
        let j = if i < n { i + n } else { i - n };
        p ^= b.get(j);
    }
    p
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

#[derive(Debug, Clone)]
pub struct RankInfo {
    pub rank: usize,
    /// Pivot columns of the reduced row echelon form, ascending.
    pub pivots: Vec<usize>,
    /// Original columns at the pivot positions.
    pub column_basis: Vec<BitVector>,
    pub kernel: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(BitMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    pub fn from_columns(cols: &[BitVector]) -> Result<Self> {
        let rows = cols.first().map_or(0, |c| c.len());
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension("ragged columns".into()));
        }
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in c.iter_ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.data[i].set(j, b)
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn columns(&self) -> Vec<BitVector> {
        self.transpose().data
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for j in r.iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.count_ones() == 1 && r.get(i))
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.xor_assign(b);
        }
        Ok(out)
    }

    pub fn add_identity(&self) -> Result<BitMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("add_identity on non-square matrix".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            out.data[i].flip(i);
        }
        Ok(out)
    }

    pub fn multiply(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    /// Product without the dimension check.
    pub(crate) fn mul(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            let acc = &mut out.data[i];
            for k in r.iter_ones() {
                acc.xor_assign(&other.data[k]);
            }
        }
        out
    }

    /// `self · v`.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        debug_assert_eq!(self.cols, v.len());
        let mut out = BitVector::zeros(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn pow(&self, mut k: usize) -> BitMatrix {
        let mut base = self.clone();
        let mut acc = BitMatrix::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn invert(&self) -> Result<BitMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("invert on non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut b = BitMatrix::identity(n).data;
        for c in 0..n {
            let p = (c..n).find(|&r| a[r].get(c)).ok_or(Error::Singular)?;
            a.swap(c, p);
            b.swap(c, p);
            for r in 0..n {
                if r != c && a[r].get(c) {
                    let (ar, br) = (a[c].clone(), b[c].clone());
                    a[r].xor_assign(&ar);
                    b[r].xor_assign(&br);
                }
            }
        }
        Ok(BitMatrix {
            rows: n,
            cols: n,
            data: b,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank_info().rank
    }

    /// Gaussian elimination with leftmost pivots.
    pub fn rank_info(&self) -> RankInfo {
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| a[i].get(c)) else {
                continue;
            };
            a.swap(r, p);
            let pr = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pr);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut kernel = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVector::zeros(self.cols);
            v.set(f, true);
            for (i, &p) in pivots.iter().enumerate() {
                if a[i].get(f) {
                    v.set(p, true);
                }
            }
            kernel.push(v);
        }
        let column_basis = pivots.iter().map(|&p| self.column(p)).collect();
        RankInfo {
            rank: pivots.len(),
            pivots,
            column_basis,
            kernel,
        }
    }

    /// Some `x` with `self · x = b`, if one exists.
    pub fn solve(&self, b: &BitVector) -> Option<BitVector> {
        let mut a: Vec<(BitVector, bool)> = self
            .data
            .iter()
            .cloned()
            .zip((0..self.rows).map(|i| b.get(i)))
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| a[i].0.get(c)) else {
                continue;
            };
            a.swap(r, p);
            let (pr, pb) = a[r].clone();
            for (i, (row, rb)) in a.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pr);
                    *rb ^= pb;
                }
            }
            pivots.push(c);
            r += 1;
        }
        if a[r..].iter().any(|(_, rb)| *rb) {
            return None;
        }
        let mut x = BitVector::zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x.set(p, a[i].1);
        }
        Some(x)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in &self.data {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| parse_err(ln, "header must be `rows cols`"))?;
        let [rows, cols] = dims[..] else {
            return Err(parse_err(ln, "header must be `rows cols`"));
        };
        let mut data = Vec::with_capacity(rows);
        for _ in 0..rows {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| parse_err(ln, format!("expected {rows} rows")))?;
            if l.len() != cols {
                return Err(parse_err(ln, format!("expected {cols} entries")));
            }
            let mut v = BitVector::zeros(cols);
            for (j, c) in l.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => v.set(j, true),
                    _ => return Err(parse_err(ln, format!("invalid entry `{c}`"))),
                }
            }
            data.push(v);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "trailing content"));
        }
        Ok(BitMatrix { rows, cols, data })
    }
}

pub fn omega(n: usize) -> Result<BitMatrix> {
    if n == 0 {
        return Err(Error::ZeroQubits);
    }
    Ok(BitMatrix::from_fn(2 * n, 2 * n, |i, j| {
        (i < n && j == i + n) || (i >= n && j + n == i)
    }))
}

pub fn is_symplectic(m: &BitMatrix) -> Result<bool> {
    if !m.is_square() || !m.rows().is_multiple_of(2) || m.rows() == 0 {
        return Err(Error::Dimension(format!(
            "symplectic check needs even square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let cols = m.columns();
    for i in 0..cols.len() {
        for j in i..cols.len() {
            let expected = j == i + m.rows() / 2;
            if symplectic_form(&cols[i], &cols[j]) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(crate) fn require_symplectic(m: &BitMatrix) -> Result<()> {
    if is_symplectic(m)? {
        Ok(())
    } else {
        Err(Error::NotSymplectic)
    }
}

/// Rank of `m + I`.
pub fn res(m: &BitMatrix) -> Result<usize> {
    require_symplectic(m)?;
    Ok(m.add_identity()?.rank())
}

/// `Ω Mᵀ Ω`, the inverse of a symplectic matrix.
pub fn symplectic_inverse(m: &BitMatrix) -> BitMatrix {
    let n = m.rows() / 2;
    let sw = |i: usize| if i < n { i + n } else { i - n };
    BitMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(sw(j), sw(i)))
}

/// Incrementally maintained reduced basis of a subspace.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, BitVector)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut v = v.clone();
        for (p, r) in &self.rows {
            if v.get(*p) {
                v.xor_assign(r);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Returns `false` if `v` was already in the span.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for (_, r) in self.rows.iter_mut() {
            if r.get(p) {
                r.xor_assign(&v);
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Uniform symplectic basis built by symplectic Gram–Schmidt on random draws.
pub fn random_symplectic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BitMatrix {
    let dim = 2 * n;
    let mut es: Vec<BitVector> = Vec::with_capacity(n);
    let mut fs: Vec<BitVector> = Vec::with_capacity(n);
    let project = |v: &mut BitVector, es: &[BitVector], fs: &[BitVector]| {
        let (ve, vf) = (v.clone(), v.clone());
        for (e, f) in es.iter().zip(fs) {
            if symplectic_form(&ve, f) {
                v.xor_assign(e);
            }
            if symplectic_form(&vf, e) {
                v.xor_assign(f);
            }
        }
    };
    for _ in 0..n {
        let e = loop {
            let mut v = BitVector::random(dim, rng);
            project(&mut v, &es, &fs);
            if !v.is_zero() {
                break v;
            }
        };
        let f = loop {
            let mut v = BitVector::random(dim, rng);
            project(&mut v, &es, &fs);
            if symplectic_form(&e, &v) {
                break v;
            }
        };
        es.push(e);
        fs.push(f);
    }
    es.extend(fs);
    BitMatrix::from_columns(&es).expect("uniform columns")
}

/// Every element of Sp(2n, F2) by brute force; only sensible for `n ≤ 2`.
pub fn enumerate_symplectic(n: usize) -> Result<Vec<BitMatrix>> {
    if n == 0 || n > 2 {
        return Err(Error::Guard {
            what: "symplectic enumeration",
            n,
            limit: 2,
        });
    }
    let d = 2 * n;
    let total: u64 = 1 << (d * d);
    let mut out = Vec::new();
    for code in 0..total {
        let m = BitMatrix::from_fn(d, d, |i, j| (code >> (i * d + j)) & 1 == 1);
        if is_symplectic(&m)? {
            out.push(m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(s: &str) -> BitMatrix {
        s.parse().unwrap()
    }

    fn m_s() -> BitMatrix {
        m("2 2\n11\n01\n")
    }

    fn m_cz() -> BitMatrix {
        m("4 4\n1001\n0110\n0010\n0001\n")
    }

    fn brute_rank(a: &BitMatrix) -> usize {
        let mut span = std::collections::HashSet::new();
        for mask in 0u32..(1 << a.rows()) {
            let mut v = BitVector::zeros(a.cols());
            for i in 0..a.rows() {
                if mask >> i & 1 == 1 {
                    v.xor_assign(a.row(i));
                }
            }
            span.insert(v);
        }
        span.len().trailing_zeros() as usize
    }

    #[test]
    fn products() {
        let i2 = BitMatrix::identity(2);
        assert_eq!(i2.multiply(&i2).unwrap(), i2);
        assert!(m_s().multiply(&m_s()).unwrap().is_identity());
        assert!(m_cz().multiply(&m_cz()).unwrap().is_identity());
        assert!(BitMatrix::zeros(2, 3).multiply(&i2).is_err());
    }

    #[test]
    fn inversion() {
        assert_eq!(
            BitMatrix::identity(2).invert().unwrap(),
            BitMatrix::identity(2)
        );
        assert_eq!(m_s().invert().unwrap(), m_s());
        assert_eq!(m("2 2\n11\n11\n").invert(), Err(Error::Singular));
    }

    #[test]
    fn ranks() {
        assert_eq!(BitMatrix::zeros(2, 2).rank(), 0);
        assert_eq!(BitMatrix::identity(4).rank(), 4);
        assert_eq!(m("2 2\n11\n11\n").rank(), 1);
        let info = m("2 2\n11\n11\n").rank_info();
        assert_eq!(info.kernel, vec![BitVector::from_bools(&[true, true])]);
    }

    #[test]
    fn omega_and_symplectic() {
        assert_eq!(omega(1).unwrap(), m("2 2\n01\n10\n"));
        assert_eq!(omega(2).unwrap(), m("4 4\n0010\n0001\n1000\n0100\n"));
        assert!(omega(3).unwrap().mul(&omega(3).unwrap()).is_identity());
        assert_eq!(omega(0), Err(Error::ZeroQubits));
        assert!(is_symplectic(&m_s()).unwrap());
        assert!(is_symplectic(&m_cz()).unwrap());
        assert!(!is_symplectic(&m("2 2\n11\n11\n")).unwrap());
        assert!(is_symplectic(&BitMatrix::identity(3)).is_err());
    }

    #[test]
    fn res_values() {
        assert_eq!(res(&BitMatrix::identity(4)).unwrap(), 0);
        assert_eq!(res(&m_s()).unwrap(), 1);
        assert_eq!(res(&m_cz()).unwrap(), 2);
        assert_eq!(res(&m("2 2\n11\n11\n")), Err(Error::NotSymplectic));
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_symplectic(1).unwrap().len(), 6);
        assert_eq!(enumerate_symplectic(2).unwrap().len(), 720);
    }

    #[test]
    fn text_round_trip() {
        let a = m_cz();
        assert_eq!(a.to_text().parse::<BitMatrix>().unwrap(), a);
        assert!("2 2\n12\n00\n".parse::<BitMatrix>().is_err());
        assert!("2 2\n10\n".parse::<BitMatrix>().is_err());
    }

    fn symp(n: usize, seed: u64) -> BitMatrix {
        random_symplectic(n, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    proptest! {
        #[test]
        fn rank_matches_brute_force(r in 1usize..=6, c in 1usize..=6, bits in any::<u64>()) {
            let a = BitMatrix::from_fn(r, c, |i, j| bits >> (i * 6 + j) & 1 == 1);
            prop_assert_eq!(a.rank(), brute_rank(&a));
            let info = a.rank_info();
            for k in &info.kernel {
                prop_assert!(a.mul_vec(k).is_zero());
            }
            prop_assert_eq!(info.kernel.len() + info.rank, c);
        }

        #[test]
        fn inverse_round_trip(n in 1usize..=6, seed in any::<u64>()) {
            let a = symp(n, seed);
            prop_assert!(a.invert().unwrap().mul(&a).is_identity());
            prop_assert_eq!(symplectic_inverse(&a), a.invert().unwrap());
        }

        #[test]
        fn symplectic_closure(n in 1usize..=6, s1 in any::<u64>(), s2 in any::<u64>()) {
            let (a, b) = (symp(n, s1), symp(n, s2));
            prop_assert!(is_symplectic(&a).unwrap());
            prop_assert!(is_symplectic(&a.mul(&b)).unwrap());
            prop_assert!(is_symplectic(&a.invert().unwrap()).unwrap());
        }

        #[test]
        fn res_subadditive(n in 1usize..=6, s1 in any::<u64>(), s2 in any::<u64>()) {
            let (a, b) = (symp(n, s1), symp(n, s2));
            let r = res(&a.mul(&b)).unwrap();
            prop_assert!(r <= res(&a).unwrap() + res(&b).unwrap());
            prop_assert_eq!(res(&a).unwrap() == 0, a.is_identity());
        }
    }
}
