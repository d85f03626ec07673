//! Exact arithmetic in F_p and F_{p^m}.
//!
//! A [`FieldContext`] owns the modulus, the fixed primitive element, and the
//! lookup tables (discrete logs, traces) that make element operations O(1)
//! or O(m). Elements are stored as integer encodings `c_0 + c_1 p + ... +
//! c_{m-1} p^{m-1}` of their coefficient vectors; the encoding order is also
//! the canonical element order used everywhere in this crate.
//!
//! Construction is deterministic: the modulus is the monic irreducible of
//! degree m with the smallest coefficient encoding, and the primitive element
//! is the element of order q - 1 with the smallest encoding.

use crate::error::{Error, Result};
use std::sync::atomic::{AtomicU32, Ordering};

/// Hard cap on the field size; everything here is table-driven.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Full q-by-q addition tables are built below this size.
const ADD_TABLE_MAX: u64 = 1024;

static NEXT_CONTEXT_ID: AtomicU32 = AtomicU32::new(1);

/// An element of F_{p^m}, valid only with the context that produced it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldElement {
    ctx: u32,
    enc: u32,
}

/// The field F_{p^m} with its modulus, primitive element, and lookup tables.
pub struct FieldContext {
    id: u32,
    p: u64,
    m: u32,
    q: u64,
    /// Low coefficients c_0..c_{m-1} of the monic modulus x^m + sum c_i x^i.
    modulus: Vec<u64>,
    alpha: u32,
    /// alpha^t for t in 0..2(q-1); doubled so products of logs need no reduction.
    exp: Vec<u32>,
    /// Discrete log base alpha; log[0] is a sentinel.
    log: Vec<u32>,
    /// tr(x) as a residue mod p.
    trace: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

impl std::fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldContext")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of n, without multiplicity.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Coefficient-vector helpers for the bootstrap phase (before tables exist).
mod poly {
    /// c += s * d, coefficients mod p.
    fn add_scaled(c: &mut [u64], d: &[u64], s: u64, p: u64) {
        for (ci, di) in c.iter_mut().zip(d) {
            *ci = (*ci + s * di) % p;
        }
    }

    /// Product of a and b reduced modulo x^m + modlow.
    pub fn mul_mod(p: u64, modlow: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = modlow.len();
        if m == 0 {
            unreachable!("degree-0 modulus");
        }
        let mut full = vec![0u64; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                full[i + j] = (full[i + j] + x * y) % p;
            }
        }
        // Eliminate degrees 2m-2 down to m using x^m = -modlow.
        for i in (m..2 * m - 1).rev() {
            let t = full[i];
            if t != 0 {
                full[i] = 0;
                let neg_t = (p - t) % p;
                let (head, _) = full.split_at_mut(i);
                add_scaled(&mut head[i - m..i], modlow, neg_t, p);
            }
        }
        full.truncate(m);
        full
    }

    pub fn pow_mod(p: u64, modlow: &[u64], a: &[u64], mut e: u64) -> Vec<u64> {
        let m = modlow.len();
        let mut result = vec![0u64; m];
        result[0] = 1;
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(p, modlow, &result, &base);
            }
            base = mul_mod(p, modlow, &base, &base);
            e >>= 1;
        }
        result
    }

    /// Remainder of the monic polynomial `f` under division by the monic
    /// polynomial `g` (both given as full coefficient vectors, low first).
    pub fn rem(p: u64, f: &[u64], g: &[u64]) -> Vec<u64> {
        let dg = g.len() - 1;
        let mut r = f.to_vec();
        for i in (dg..r.len()).rev() {
            let t = r[i];
            if t != 0 {
                r[i] = 0;
                let neg_t = (p - t) % p;
                for j in 0..dg {
                    r[i - dg + j] = (r[i - dg + j] + neg_t * g[j]) % p;
                }
            }
        }
        r.truncate(dg);
        r
    }
}

fn decode(p: u64, m: u32, mut v: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(v % p);
        v /= p;
    }
    out
}

fn encode(p: u64, coeffs: &[u64]) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// True iff x^m + sum modlow_i x^i is irreducible over F_p: no roots and no
/// monic factor of degree at most m/2, checked by exhaustive trial division.
fn is_irreducible(p: u64, modlow: &[u64]) -> bool {
    let m = modlow.len();
    let mut full: Vec<u64> = modlow.to_vec();
    full.push(1);
    for r in 0..p {
        let mut v = 0u64;
        for &c in full.iter().rev() {
            v = (v * r + c) % p;
        }
        if v == 0 {
            return false;
        }
    }
    for d in 2..=(m / 2) {
        for w in 0..p.pow(d as u32) {
            let mut g = decode(p, d as u32, w);
            g.push(1);
            if poly::rem(p, &full, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldContext {
    /// Build F_{p^m} with the canonical modulus and primitive element.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::InvalidExtensionDegree);
        }
        let q = (0..m).try_fold(1u64, |acc, _| {
            let next = acc.checked_mul(p)?;
            (next <= MAX_FIELD_SIZE).then_some(next)
        });
        let q = q.ok_or(Error::FieldTooLarge {
            q: 0,
            cap: MAX_FIELD_SIZE,
        })?;

        let modulus = if m == 1 {
            vec![0] // the modulus x: F_p itself
        } else {
            (0..q)
                .map(|v| decode(p, m, v))
                .find(|low| is_irreducible(p, low))
                .expect("a monic irreducible of every degree exists")
        };

        // Smallest-encoding element of multiplicative order exactly q - 1.
        let factors = prime_factors(q - 1);
        let alpha_digits = (1..q)
            .map(|e| decode(p, m, e))
            .find(|digits| {
                factors.iter().all(|&r| {
                    let pw = poly::pow_mod(p, &modulus, digits, (q - 1) / r);
                    encode(p, &pw) != 1
                })
            })
            .expect("the multiplicative group is cyclic");
        let alpha = encode(p, &alpha_digits) as u32;

        let mut exp = Vec::with_capacity(2 * (q - 1) as usize);
        let mut cur = vec![0u64; m as usize];
        cur[0] = 1;
        for _ in 0..q - 1 {
            exp.push(encode(p, &cur) as u32);
            cur = poly::mul_mod(p, &modulus, &cur, &alpha_digits);
        }
        debug_assert_eq!(encode(p, &cur), 1, "alpha must have order q - 1");
        exp.extend_from_within(..);

        let mut log = vec![u32::MAX; q as usize];
        for (t, &e) in exp.iter().take((q - 1) as usize).enumerate() {
            log[e as usize] = t as u32;
        }

        let digit_add = |x: u32, y: u32| -> u32 {
            let (dx, dy) = (decode(p, m, x as u64), decode(p, m, y as u64));
            let sum: Vec<u64> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
            encode(p, &sum) as u32
        };

        let frob: Vec<u64> = (0..m).map(|j| p.pow(j) % (q - 1).max(1)).collect();
        let mut trace = vec![0u32; q as usize];
        for x in 1..q {
            let t = log[x as usize] as u64;
            let mut s = 0u32;
            for &f in &frob {
                s = digit_add(s, exp[(t * f % (q - 1).max(1)) as usize]);
            }
            debug_assert!((s as u64) < p, "trace must land in the prime field");
            trace[x as usize] = s;
        }

        let neg: Vec<u32> = (0..q)
            .map(|x| encode(p, &decode(p, m, x).iter().map(|c| (p - c) % p).collect::<Vec<_>>()) as u32)
            .collect();

        let add = (q <= ADD_TABLE_MAX).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for x in 0..q as u32 {
                for y in 0..=x {
                    let s = digit_add(x, y);
                    t[(x as u64 * q + y as u64) as usize] = s;
                    t[(y as u64 * q + x as u64) as usize] = s;
                }
            }
            t
        });

        Ok(FieldContext {
            id: NEXT_CONTEXT_ID.fetch_add(1, Ordering::Relaxed),
            p,
            m,
            q,
            modulus,
            alpha,
            exp,
            log,
            trace,
            neg,
            add,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Low coefficients c_0..c_{m-1} of the monic modulus.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn check(&self, x: FieldElement) -> Result<u32> {
        (x.ctx == self.id).then_some(x.enc).ok_or(Error::ContextMismatch)
    }

    fn wrap(&self, enc: u32) -> FieldElement {
        FieldElement { ctx: self.id, enc }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The fixed primitive element.
    pub fn alpha(&self) -> FieldElement {
        self.wrap(self.alpha)
    }

    /// The coset of the indeterminate x, when m >= 2.
    pub fn poly_gen(&self) -> Option<FieldElement> {
        (self.m >= 2).then(|| self.wrap(self.p as u32))
    }

    /// Element with the given coefficient vector (reduced mod p on entry).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.m as usize {
            return Err(Error::ContextMismatch);
        }
        let reduced: Vec<u64> = coeffs.iter().map(|c| c % self.p).collect();
        Ok(self.wrap(encode(self.p, &reduced) as u32))
    }

    /// Element of the prime subfield with the given residue.
    pub fn from_residue(&self, r: u64) -> FieldElement {
        self.wrap((r % self.p) as u32)
    }

    pub fn from_encoding(&self, enc: u64) -> Result<FieldElement> {
        if enc < self.q {
            Ok(self.wrap(enc as u32))
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn encoding(&self, x: FieldElement) -> Result<u64> {
        Ok(self.check(x)? as u64)
    }

    pub fn coeffs(&self, x: FieldElement) -> Result<Vec<u64>> {
        Ok(decode(self.p, self.m, self.check(x)? as u64))
    }

    pub fn is_zero(&self, x: FieldElement) -> Result<bool> {
        Ok(self.check(x)? == 0)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |e| self.wrap(e as u32))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q).map(move |e| self.wrap(e as u32))
    }

    /// alpha^t.
    pub fn power_of_alpha(&self, t: u64) -> FieldElement {
        if self.q == 2 {
            return self.one();
        }
        self.wrap(self.exp[(t % (self.q - 1)) as usize])
    }

    pub(crate) fn add_enc(&self, x: u32, y: u32) -> u32 {
        match &self.add {
            Some(table) => table[(x as u64 * self.q + y as u64) as usize],
            None => {
                let (dx, dy) = (
                    decode(self.p, self.m, x as u64),
                    decode(self.p, self.m, y as u64),
                );
                let sum: Vec<u64> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % self.p).collect();
                encode(self.p, &sum) as u32
            }
        }
    }

    #[inline]
    pub(crate) fn mul_enc(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        self.exp[(self.log[x as usize] + self.log[y as usize]) as usize]
    }

    #[inline]
    pub(crate) fn neg_enc(&self, x: u32) -> u32 {
        self.neg[x as usize]
    }

    #[inline]
    pub(crate) fn trace_enc(&self, x: u32) -> u32 {
        self.trace[x as usize]
    }

    pub(crate) fn trace_table(&self) -> &[u32] {
        &self.trace
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.add_enc(self.check(x)?, self.check(y)?)))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        let ye = self.check(y)?;
        Ok(self.wrap(self.add_enc(self.check(x)?, self.neg_enc(ye))))
    }

    pub fn neg(&self, x: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.neg_enc(self.check(x)?)))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.mul_enc(self.check(x)?, self.check(y)?)))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        let e = self.check(x)?;
        if e == 0 {
            return Err(Error::ZeroInversion);
        }
        let n = self.q - 1;
        let t = self.log[e as usize] as u64;
        Ok(self.wrap(self.exp[((n - t) % n) as usize]))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> Result<FieldElement> {
        let enc = self.check(x)?;
        if enc == 0 {
            return Ok(if e == 0 { self.one() } else { self.zero() });
        }
        let n = self.q - 1;
        let t = self.log[enc as usize] as u64;
        Ok(self.wrap(self.exp[(t % n * (e % n) % n) as usize]))
    }

    /// tr(x) = x + x^p + ... + x^{p^{m-1}}, as a residue mod p.
    pub fn trace_to_prime(&self, x: FieldElement) -> Result<u64> {
        Ok(self.trace_enc(self.check(x)?) as u64)
    }

    /// Discrete log base alpha; None for the zero element.
    pub fn discrete_log(&self, x: FieldElement) -> Result<Option<u64>> {
        let e = self.check(x)?;
        Ok((e != 0).then(|| self.log[e as usize] as u64))
    }

    /// True iff x is a nonzero square, i.e. its discrete log is even.
    pub fn is_square(&self, x: FieldElement) -> Result<bool> {
        if self.q % 2 == 0 {
            return Err(Error::RequiresOddField { q: self.q });
        }
        let e = self.check(x)?;
        if e == 0 {
            return Err(Error::ZeroInversion);
        }
        Ok(self.log[e as usize] % 2 == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Test-local polynomial arithmetic, kept independent of the table-driven
    /// implementation it checks.
    fn naive_mul(p: u64, modlow: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = modlow.len();
        let mut full = vec![0u64; 2 * m];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                full[i + j] = (full[i + j] + x * y) % p;
            }
        }
        for i in (m..2 * m).rev() {
            let t = full[i];
            full[i] = 0;
            for j in 0..m {
                full[i - m + j] = (full[i - m + j] + (p - t % p) % p * modlow[j]) % p;
            }
        }
        full.truncate(m);
        full
    }

    fn naive_order(p: u64, modlow: &[u64], a: &[u64]) -> u64 {
        let mut x = a.to_vec();
        let one = {
            let mut v = vec![0u64; modlow.len()];
            v[0] = 1;
            v
        };
        let mut ord = 1;
        while x != one {
            x = naive_mul(p, modlow, &x, a);
            ord += 1;
        }
        ord
    }

    #[test]
    fn canonical_modulus_examples() {
        assert_eq!(FieldContext::new(3, 1).unwrap().modulus(), &[0]);
        assert_eq!(FieldContext::new(3, 2).unwrap().modulus(), &[1, 0]);
        assert_eq!(FieldContext::new(2, 3).unwrap().modulus(), &[1, 1, 0]);
    }

    #[test]
    fn modulus_is_first_irreducible_in_encoding_order() {
        for (p, m) in [(2, 2), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)] {
            let ctx = FieldContext::new(p, m).unwrap();
            let expected = (0..p.pow(m))
                .map(|v| decode(p, m, v))
                .find(|low| {
                    // Oracle: f has no monic factor of any degree 1..m-1,
                    // by exhaustive trial division.
                    let mut f = low.clone();
                    f.push(1);
                    (1..m).all(|d| {
                        (0..p.pow(d)).all(|w| {
                            let mut g = decode(p, d, w);
                            g.push(1);
                            poly::rem(p, &f, &g).iter().any(|&c| c != 0)
                        })
                    })
                })
                .unwrap();
            assert_eq!(ctx.modulus(), &expected[..], "p={p} m={m}");
        }
    }

    #[test]
    fn alpha_is_smallest_primitive() {
        // (3,1): alpha = 2, the smallest generator of F_3^*.
        let f3 = FieldContext::new(3, 1).unwrap();
        assert_eq!(f3.encoding(f3.alpha()).unwrap(), 2);

        for (p, m) in [(2, 1), (2, 3), (3, 2), (5, 2), (7, 1)] {
            let ctx = FieldContext::new(p, m).unwrap();
            let q = ctx.q();
            let smallest = (1..q)
                .find(|&e| naive_order(p, ctx.modulus(), &decode(p, m, e)) == q - 1)
                .unwrap();
            assert_eq!(ctx.encoding(ctx.alpha()).unwrap(), smallest, "p={p} m={m}");
        }
    }

    #[test]
    fn mul_matches_naive_poly_arithmetic() {
        for (p, m) in [(2, 3), (3, 2), (5, 2)] {
            let ctx = FieldContext::new(p, m).unwrap();
            for a in 0..ctx.q() {
                for b in 0..ctx.q() {
                    let got = ctx
                        .mul(ctx.from_encoding(a).unwrap(), ctx.from_encoding(b).unwrap())
                        .unwrap();
                    let want = naive_mul(p, ctx.modulus(), &decode(p, m, a), &decode(p, m, b));
                    assert_eq!(ctx.encoding(got).unwrap(), encode(p, &want));
                }
            }
        }
    }

    #[test]
    fn x_squared_in_f9_is_two() {
        // Modulus x^2 + 1 over F_3, so x * x reduces to -1 = 2.
        let ctx = FieldContext::new(3, 2).unwrap();
        let x = ctx.poly_gen().unwrap();
        assert_eq!(ctx.encoding(ctx.mul(x, x).unwrap()).unwrap(), 2);
    }

    #[test]
    fn inverse_and_lagrange() {
        for (p, m) in [(2, 2), (3, 2), (5, 1), (7, 1)] {
            let ctx = FieldContext::new(p, m).unwrap();
            for x in ctx.nonzero_elements() {
                assert_eq!(ctx.mul(ctx.inv(x).unwrap(), x).unwrap(), ctx.one());
                assert_eq!(ctx.pow(x, ctx.q() - 1).unwrap(), ctx.one());
            }
        }
        let ctx = FieldContext::new(3, 2).unwrap();
        assert!(matches!(ctx.inv(ctx.zero()), Err(Error::ZeroInversion)));
    }

    #[test]
    fn trace_examples() {
        let ctx = FieldContext::new(3, 2).unwrap();
        assert_eq!(ctx.trace_to_prime(ctx.zero()).unwrap(), 0);
        assert_eq!(ctx.trace_to_prime(ctx.one()).unwrap(), 2); // m mod p
        // tr(x) = x + x^3 = x + 2x = 0 with modulus x^2 + 1.
        assert_eq!(ctx.trace_to_prime(ctx.poly_gen().unwrap()).unwrap(), 0);

        let f8 = FieldContext::new(2, 3).unwrap();
        assert_eq!(f8.trace_to_prime(f8.one()).unwrap(), 1); // m mod p = 3 mod 2
    }

    #[test]
    fn trace_is_sum_of_frobenius_conjugates() {
        for (p, m) in [(2, 3), (3, 2), (3, 4), (5, 2)] {
            let ctx = FieldContext::new(p, m).unwrap();
            for x in ctx.elements() {
                let mut s = ctx.zero();
                let mut conj = x;
                for _ in 0..m {
                    s = ctx.add(s, conj).unwrap();
                    conj = ctx.pow(conj, p).unwrap();
                }
                let coeffs = ctx.coeffs(s).unwrap();
                assert!(coeffs[1..].iter().all(|&c| c == 0), "trace lies in F_p");
                assert_eq!(coeffs[0], ctx.trace_to_prime(x).unwrap());
            }
        }
    }

    #[test]
    fn trace_is_linear_and_surjective() {
        for (p, m) in [(2, 2), (2, 3), (3, 2), (3, 4), (5, 2)] {
            let ctx = FieldContext::new(p, m).unwrap();
            assert!(ctx.q() <= 81);
            for x in ctx.elements() {
                for y in ctx.elements() {
                    let lhs = ctx.trace_to_prime(ctx.add(x, y).unwrap()).unwrap();
                    let rhs =
                        (ctx.trace_to_prime(x).unwrap() + ctx.trace_to_prime(y).unwrap()) % p;
                    assert_eq!(lhs, rhs);
                }
                for c in 0..p {
                    let s = ctx.from_residue(c);
                    let lhs = ctx.trace_to_prime(ctx.mul(s, x).unwrap()).unwrap();
                    assert_eq!(lhs, c * ctx.trace_to_prime(x).unwrap() % p);
                }
            }
            let hit: std::collections::HashSet<u64> = ctx
                .elements()
                .map(|x| ctx.trace_to_prime(x).unwrap())
                .collect();
            assert_eq!(hit.len() as u64, p, "trace is onto F_p");
        }
    }

    #[test]
    fn square_classification() {
        for (p, m) in [(3, 1), (3, 2), (3, 3), (5, 2), (7, 1)] {
            let ctx = FieldContext::new(p, m).unwrap();
            assert!(ctx.is_square(ctx.one()).unwrap());
            assert!(!ctx.is_square(ctx.alpha()).unwrap());
            let alpha_sq = ctx.mul(ctx.alpha(), ctx.alpha()).unwrap();
            assert!(ctx.is_square(alpha_sq).unwrap());
            let squares = ctx
                .nonzero_elements()
                .filter(|&x| ctx.is_square(x).unwrap())
                .count() as u64;
            assert_eq!(squares, (ctx.q() - 1) / 2);
            // Cross-check against explicit squaring.
            let direct: std::collections::HashSet<FieldElement> = ctx
                .nonzero_elements()
                .map(|x| ctx.mul(x, x).unwrap())
                .collect();
            for x in ctx.nonzero_elements() {
                assert_eq!(ctx.is_square(x).unwrap(), direct.contains(&x));
            }
        }
        let even = FieldContext::new(2, 2).unwrap();
        assert!(matches!(
            even.is_square(even.one()),
            Err(Error::RequiresOddField { .. })
        ));
        let odd = FieldContext::new(3, 1).unwrap();
        assert!(odd.is_square(odd.zero()).is_err());
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(FieldContext::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(FieldContext::new(1, 1), Err(Error::NotPrime(1))));
        assert!(matches!(
            FieldContext::new(2, 0),
            Err(Error::InvalidExtensionDegree)
        ));
        assert!(matches!(
            FieldContext::new(2, 21),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn context_mismatch_is_detected() {
        let a = FieldContext::new(3, 2).unwrap();
        let b = FieldContext::new(3, 2).unwrap();
        let x = a.one();
        assert!(matches!(b.add(x, b.one()), Err(Error::ContextMismatch)));
    }

    #[test]
    fn two_element_field_degenerate_cases() {
        let ctx = FieldContext::new(2, 1).unwrap();
        assert_eq!(ctx.alpha(), ctx.one());
        assert_eq!(ctx.pow(ctx.one(), 0).unwrap(), ctx.one());
        assert_eq!(ctx.add(ctx.one(), ctx.one()).unwrap(), ctx.zero());
    }
}
