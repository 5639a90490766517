//! Symplectic involutions: two-involution factorization and normal forms.
//!
//! Every `M ∈ Sp(2n, F2)` is conjugate to its inverse by a symplectic
//! involution `J`, so `M = J · (J M)` with both factors involutions. `J` is
//! assembled from pairs `(v, J v)` on a basis and checked before it is
//! returned.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::{self, symplectic_form as om, BitMatrix, BitVector, EchelonBasis};

const SEED: u64 = 0x9e37_79b9_7f4a_7c15;
const PARTNER_ATTEMPTS: usize = 200;
const PARTNER_DRAWS: usize = 64;
const REST_RESTARTS: usize = 200;
const REST_SAMPLES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvolutionKind {
    /// `A'` is an identity matrix.
    SType,
    /// `A'` repeats the block `[[0,1],[1,0]]`.
    CzType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionNormalForm {
    pub f: BitMatrix,
    pub kind: InvolutionKind,
    /// Size of `A'`, equal to `res(r)`.
    pub dim: usize,
}

impl InvolutionNormalForm {
    /// `[[I, A],[0, I]]` with `A = diag(A', 0)`.
    pub fn block_form(&self) -> BitMatrix {
        let n = self.f.rows() / 2;
        let mut b = BitMatrix::identity(2 * n);
        match self.kind {
            InvolutionKind::SType => {
                for j in 0..self.dim {
                    b.set(j, n + j, true);
                }
            }
            InvolutionKind::CzType => {
                for m in 0..self.dim / 2 {
                    b.set(2 * m, n + 2 * m + 1, true);
                    b.set(2 * m + 1, n + 2 * m, true);
                }
            }
        }
        b
    }
}

pub fn is_involution(m: &BitMatrix) -> bool {
    m.is_square() && m.mul(m).is_identity()
}

pub fn decompose_two_involutions(m: &BitMatrix) -> Result<(BitMatrix, BitMatrix)> {
    gf2::require_symplectic(m)?;
    if is_involution(m) {
        return Ok((m.clone(), BitMatrix::identity(m.rows())));
    }
    let j = reversing_involution(m)?;
    let k = j.mul(m);
    if !is_involution(&j) || !is_involution(&k) || !gf2::is_symplectic(&j)? {
        return Err(Error::Internal("two-involution certificate failed".into()));
    }
    Ok((j, k))
}

struct Ctx {
    m: BitMatrix,
    mi: BitMatrix,
    nil: BitMatrix,
    rng: ChaCha8Rng,
    src: Vec<BitVector>,
    dst: Vec<BitVector>,
}

impl Ctx {
    fn np(&self, v: &BitVector, k: usize) -> BitVector {
        let mut v = v.clone();
        for _ in 0..k {
            v = self.nil.mul_vec(&v);
        }
        v
    }

    fn krylov(&self, v: &BitVector) -> Vec<BitVector> {
        let mut basis = EchelonBasis::new();
        let mut out = Vec::new();
        let mut w = v.clone();
        while basis.insert(&w) {
            out.push(w.clone());
            w = self.m.mul_vec(&w);
        }
        out
    }

    fn random_in(&mut self, basis: &[BitVector]) -> BitVector {
        let mut v = BitVector::zeros(self.m.rows());
        for b in basis {
            if self.rng.gen::<bool>() {
                v.xor_assign(b);
            }
        }
        v
    }

    /// Records `M^i a ↦ M^{−i} b` for `i < len`.
    fn reversal(&mut self, a: &BitVector, b: &BitVector, len: usize) {
        let (mut a, mut b) = (a.clone(), b.clone());
        for _ in 0..len {
            self.src.push(a.clone());
            self.dst.push(b.clone());
            a = self.m.mul_vec(&a);
            b = self.mi.mul_vec(&b);
        }
    }
}

/// Vectors in `span(within)` orthogonal to all of `vecs`.
fn perp_within(vecs: &[BitVector], within: &[BitVector]) -> Vec<BitVector> {
    if vecs.is_empty() {
        return within.to_vec();
    }
    let a = BitMatrix::from_fn(vecs.len(), within.len(), |i, k| om(&vecs[i], &within[k]));
    a.rank_info()
        .kernel
        .iter()
        .map(|c| {
            let mut v = BitVector::zeros(within[0].len());
            for k in c.iter_ones() {
                v.xor_assign(&within[k]);
            }
            v
        })
        .collect()
}

/// A symplectic involution `J` with `J M J = M⁻¹`.
pub fn reversing_involution(m: &BitMatrix) -> Result<BitMatrix> {
    gf2::require_symplectic(m)?;
    let d = m.rows();
    let nil = m.add_identity()?;
    let p = nil.pow(d);
    let info = p.rank_info();
    let mut ctx = Ctx {
        m: m.clone(),
        mi: gf2::symplectic_inverse(m),
        nil,
        rng: ChaCha8Rng::seed_from_u64(SEED),
        src: Vec::new(),
        dst: Vec::new(),
    };
    unipotent_part(&mut ctx, info.kernel)?;
    rest_part(&mut ctx, info.column_basis)?;
    if ctx.src.len() != d {
        return Err(Error::Internal("reversal basis has wrong size".into()));
    }
    let s = BitMatrix::from_columns(&ctx.src)?;
    let t = BitMatrix::from_columns(&ctx.dst)?;
    let s_inv = s
        .invert()
        .map_err(|_| Error::Internal("reversal basis is dependent".into()))?;
    Ok(t.mul(&s_inv))
}

/// Splits off cyclic pieces of the unipotent part one orthogonal summand at a time.
fn unipotent_part(ctx: &mut Ctx, mut w: Vec<BitVector>) -> Result<()> {
    while !w.is_empty() {
        let mut e = 0;
        let mut cur = w.clone();
        while cur.iter().any(|v| !v.is_zero()) {
            cur = cur.iter().map(|v| ctx.nil.mul_vec(v)).collect();
            e += 1;
        }
        let phi = |ctx: &Ctx, v: &BitVector| om(&ctx.np(v, e - 1), v);
        let pick = w.iter().find(|v| phi(ctx, v)).cloned();
        let block = if let Some(v) = pick {
            let block = ctx.krylov(&v);
            if block.len() != e {
                return Err(Error::Internal(
                    "non-degenerate cycle has wrong length".into(),
                ));
            }
            ctx.reversal(&v, &v, e);
            block
        } else {
            let (u, up) = hyperbolic_pair(ctx, &w, e)?;
            let mut block = ctx.krylov(&u);
            block.extend(ctx.krylov(&up));
            ctx.reversal(&u, &up, e);
            ctx.reversal(&up, &u, e);
            block
        };
        w = perp_within(&block, &w);
    }
    Ok(())
}

/// Two top vectors `u, u'` with `ω(u, N^{e−1} u') = 1` and equal
/// self-correlations `ω(v, N^j v)` for every `j`.
fn hyperbolic_pair(ctx: &mut Ctx, w: &[BitVector], e: usize) -> Result<(BitVector, BitVector)> {
    let f = |ctx: &Ctx, v: &BitVector, j: usize| om(v, &ctx.np(v, j));
    let b = |ctx: &Ctx, x: &BitVector, y: &BitVector| om(x, &ctx.np(y, e - 1));
    let top = w.iter().find(|v| !ctx.np(v, e - 1).is_zero()).cloned();
    let mut found = None;
    'outer: for attempt in 0..PARTNER_ATTEMPTS {
        let u = match (&top, attempt) {
            (Some(t), 0) => t.clone(),
            _ => {
                let u = ctx.random_in(w);
                if ctx.np(&u, e - 1).is_zero() {
                    continue;
                }
                u
            }
        };
        for _ in 0..PARTNER_DRAWS {
            let up = ctx.random_in(w);
            if !b(ctx, &u, &up) {
                continue;
            }
            if e % 2 == 1 && e >= 3 && f(ctx, &up, e - 2) != f(ctx, &u, e - 2) {
                continue;
            }
            found = Some((u, up));
            break 'outer;
        }
    }
    let (u, mut up) = found.ok_or_else(|| Error::Internal(format!("no partner at depth {e}")))?;
    // Odd correlations below e−2 are fixed by adding N^s y; even ones follow.
    for j in (1..e.saturating_sub(1)).rev().filter(|j| j % 2 == 1) {
        if f(ctx, &up, j) == f(ctx, &u, j) {
            continue;
        }
        let s = e - j - 2;
        if s == 0 {
            return Err(Error::Internal("top correlation left unmatched".into()));
        }
        let y = w
            .iter()
            .find(|y| b(ctx, &up, y))
            .cloned()
            .ok_or_else(|| Error::Internal("degenerate pairing".into()))?;
        up.xor_assign(&ctx.np(&y, s));
    }
    if !b(ctx, &u, &up) || (1..e).any(|j| f(ctx, &u, j) != f(ctx, &up, j)) {
        return Err(Error::Internal(format!(
            "correlation matching failed at depth {e}"
        )));
    }
    Ok((u, up))
}

/// Non-unipotent part: greedy cyclic generators whose orbits are kept
/// orthogonal to the reversal images already chosen.
fn rest_part(ctx: &mut Ctx, w: Vec<BitVector>) -> Result<()> {
    if w.is_empty() {
        return Ok(());
    }
    for _ in 0..REST_RESTARTS {
        let mut gens = Vec::new();
        let mut cur = EchelonBasis::new();
        let mut cons: Vec<BitVector> = Vec::new();
        while cur.dim() < w.len() {
            let allowed = perp_within(&cons, &w);
            let mut best: Option<BitVector> = None;
            let mut best_gain = 0;
            for _ in 0..REST_SAMPLES {
                let v = ctx.random_in(&allowed);
                let mut t = cur.clone();
                let mut gain = 0;
                let mut x = v.clone();
                while t.insert(&x) {
                    gain += 1;
                    x = ctx.m.mul_vec(&x);
                }
                if gain > best_gain {
                    best_gain = gain;
                    best = Some(v);
                }
            }
            let Some(v) = best else { break };
            let mut x = v.clone();
            while cur.insert(&x) {
                x = ctx.m.mul_vec(&x);
            }
            let len = ctx.krylov(&v).len();
            let (mut a, mut b) = (v.clone(), v.clone());
            for _ in 0..len {
                a = ctx.m.mul_vec(&a);
                b = ctx.mi.mul_vec(&b);
                cons.push(a.xor(&b));
            }
            gens.push(v);
        }
        if cur.dim() == w.len() {
            let mut seen = EchelonBasis::new();
            for v in gens {
                let (mut a, mut b) = (v.clone(), v);
                while seen.insert(&a) {
                    ctx.src.push(a.clone());
                    ctx.dst.push(b.clone());
                    a = ctx.m.mul_vec(&a);
                    b = ctx.mi.mul_vec(&b);
                }
            }
            return Ok(());
        }
    }
    Err(Error::Internal(
        "no reversal found for the semisimple part".into(),
    ))
}

/// Brings an involution to the block form `F⁻¹ R F = [[I, A],[0, I]]`.
pub fn normal_form(r: &BitMatrix) -> Result<InvolutionNormalForm> {
    gf2::require_symplectic(r)?;
    if !is_involution(r) {
        return Err(Error::NotInvolution);
    }
    let d = r.rows();
    let n = d / 2;
    let t = r.add_identity()?;
    let beta = |u: &BitVector, w: &BitVector| om(&t.mul_vec(u), w);

    // Complement of Ker T, orthogonalized for β.
    let mut pool: Vec<BitVector> = t
        .rank_info()
        .pivots
        .iter()
        .map(|&p| BitVector::unit(d, p))
        .collect();
    let mut orth: Vec<BitVector> = Vec::new();
    let mut hyp: Vec<(BitVector, BitVector)> = Vec::new();
    while !pool.is_empty() {
        if let Some(i) = pool.iter().position(|v| beta(v, v)) {
            let v = pool.remove(i);
            for x in pool.iter_mut() {
                if beta(x, &v) {
                    x.xor_assign(&v);
                }
            }
            orth.push(v);
        } else {
            let a = pool.remove(0);
            let i = pool
                .iter()
                .position(|x| beta(&a, x))
                .ok_or_else(|| Error::Internal("degenerate form on complement".into()))?;
            let b = pool.remove(i);
            for x in pool.iter_mut() {
                let (xa, xb) = (beta(x, &a), beta(x, &b));
                if xb {
                    x.xor_assign(&a);
                }
                if xa {
                    x.xor_assign(&b);
                }
            }
            hyp.push((a, b));
        }
    }

    let kind = if orth.is_empty() {
        InvolutionKind::CzType
    } else {
        InvolutionKind::SType
    };
    let mut fs: Vec<BitVector> = Vec::new();
    let mut es: Vec<BitVector> = Vec::new();
    match kind {
        InvolutionKind::SType => {
            for (a, b) in hyp {
                let u = orth[0].clone();
                orth[0] = u.xor(&a).xor(&b);
                orth.push(u.xor(&a));
                orth.push(u.xor(&b));
            }
            for f in orth {
                es.push(t.mul_vec(&f));
                fs.push(f);
            }
        }
        InvolutionKind::CzType => {
            for (a, b) in hyp {
                es.push(t.mul_vec(&b));
                es.push(t.mul_vec(&a));
                fs.push(a);
                fs.push(b);
            }
        }
    }
    let k = fs.len();
    for j in 0..k {
        for i in 0..j {
            if om(&fs[i], &fs[j]) {
                let ei = es[i].clone();
                fs[j].xor_assign(&ei);
            }
        }
    }

    // Symplectic Gram–Schmidt on the orthogonal complement.
    let mut pool: Vec<BitVector> = (0..d)
        .map(|c| {
            let u = BitVector::unit(d, c);
            let mut v = u.clone();
            for i in 0..k {
                if om(&u, &fs[i]) {
                    v.xor_assign(&es[i]);
                }
                if om(&u, &es[i]) {
                    v.xor_assign(&fs[i]);
                }
            }
            v
        })
        .filter(|v| !v.is_zero())
        .collect();
    while es.len() < n {
        let a = pool
            .iter()
            .position(|v| !v.is_zero())
            .map(|i| pool.remove(i))
            .ok_or_else(|| Error::Internal("complement exhausted".into()))?;
        let i = pool
            .iter()
            .position(|x| om(&a, x))
            .ok_or_else(|| Error::Internal("complement is degenerate".into()))?;
        let b = pool.remove(i);
        for x in pool.iter_mut() {
            let (xa, xb) = (om(x, &a), om(x, &b));
            if xb {
                x.xor_assign(&a);
            }
            if xa {
                x.xor_assign(&b);
            }
        }
        es.push(a);
        fs.push(b);
    }
    es.extend(fs);
    let f = BitMatrix::from_columns(&es)?;
    let nf = InvolutionNormalForm { f, kind, dim: k };
    let back =
        nf.f.mul(&nf.block_form())
            .mul(&gf2::symplectic_inverse(&nf.f));
    if !gf2::is_symplectic(&nf.f)? || back != *r {
        return Err(Error::Internal("normal form reconstruction failed".into()));
    }
    Ok(nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(s: &str) -> BitMatrix {
        s.parse().unwrap()
    }

    fn check_pair(a: &BitMatrix) {
        let (m1, m2) = decompose_two_involutions(a).unwrap();
        assert_eq!(&m1.mul(&m2), a);
        assert!(is_involution(&m1) && is_involution(&m2));
        assert!(gf2::is_symplectic(&m1).unwrap() && gf2::is_symplectic(&m2).unwrap());
    }

    #[test]
    fn trivial_decompositions() {
        let i = BitMatrix::identity(4);
        assert_eq!(
            decompose_two_involutions(&i).unwrap(),
            (i.clone(), i.clone())
        );
        let s = m("2 2\n11\n01\n");
        assert_eq!(
            decompose_two_involutions(&s).unwrap(),
            (s.clone(), BitMatrix::identity(2))
        );
        assert_eq!(
            decompose_two_involutions(&m("2 2\n11\n11\n")),
            Err(Error::NotSymplectic)
        );
    }

    #[test]
    fn normal_form_examples() {
        let nf = normal_form(&BitMatrix::identity(4)).unwrap();
        assert_eq!((nf.f.is_identity(), nf.dim), (true, 0));
        let nf = normal_form(&m("2 2\n11\n01\n")).unwrap();
        assert_eq!(
            (nf.f.is_identity(), nf.kind, nf.dim),
            (true, InvolutionKind::SType, 1)
        );
        let nf = normal_form(&m("4 4\n1001\n0110\n0010\n0001\n")).unwrap();
        assert_eq!(
            (nf.f.is_identity(), nf.kind, nf.dim),
            (true, InvolutionKind::CzType, 2)
        );
        assert_eq!(
            normal_form(&m("2 2\n10\n11\n").mul(&m("2 2\n11\n01\n"))),
            Err(Error::NotInvolution)
        );
    }

    #[test]
    fn exhaustive_small_groups() {
        for n in 1..=2 {
            for a in gf2::enumerate_symplectic(n).unwrap() {
                check_pair(&a);
                if is_involution(&a) {
                    let nf = normal_form(&a).unwrap();
                    assert_eq!(nf.dim, gf2::res(&a).unwrap());
                }
            }
        }
    }

    #[test]
    fn unipotent_stress() {
        // Odd-length unipotent blocks with repeated multiplicity.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [3usize, 4, 6, 8] {
            for k in [1usize, 2, 3] {
                for _ in 0..20 {
                    let mut a = BitMatrix::identity(2 * n);
                    for _ in 0..k {
                        let v = BitVector::random(2 * n, &mut rng);
                        let tv = BitMatrix::from_fn(2 * n, 2 * n, |i, j| {
                            (i == j) ^ (v.get(i) && om(&v, &BitVector::unit(2 * n, j)))
                        });
                        a = tv.mul(&a);
                    }
                    let g = gf2::random_symplectic(n, &mut rng);
                    let conj = g.mul(&a).mul(&gf2::symplectic_inverse(&g));
                    check_pair(&conj);
                    check_pair(&conj.mul(&conj));
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn random_pairs(n in 1usize..=12, seed in any::<u64>()) {
            let a = gf2::random_symplectic(n, &mut ChaCha8Rng::seed_from_u64(seed));
            check_pair(&a);
            let (m1, m2) = decompose_two_involutions(&a).unwrap();
            for r in [m1, m2] {
                let nf = normal_form(&r).unwrap();
                prop_assert_eq!(nf.dim, gf2::res(&r).unwrap());
            }
        }
    }
}
