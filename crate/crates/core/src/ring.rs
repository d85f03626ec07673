//! Arithmetic in the chain ring R_k(F) = F + uF + ... + u^{k-1}F with
//! u^k = 0, for F one of F_p (the base ring) or F_{p^m} (the extension ring),
//! together with the coefficientwise trace down to the base ring, the Gray
//! map, and the homogeneous weight.

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

static NEXT_RING_ID: AtomicU32 = AtomicU32::new(1);

/// Where an element sits in the ideal chain 0 < (u^{k-1}) < ... < (u) < R.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ElementClass {
    Zero,
    /// Nonzero element of the socle (u^{k-1}).
    SocleNonzero,
    /// In the maximal ideal (u) but not in the socle.
    MaximalNotSocle,
    Unit,
}

/// An element a_0 + a_1 u + ... + a_{k-1} u^{k-1}, stored as field encodings.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingElement {
    ctx: u32,
    coeffs: Vec<u32>,
}

pub struct RingContext {
    id: u32,
    field: Arc<FieldContext>,
    k: u32,
    element_count: u64,
}

impl std::fmt::Debug for RingContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RingContext")
            .field("p", &self.field.p())
            .field("m", &self.field.m())
            .field("k", &self.k)
            .finish()
    }
}

impl RingContext {
    pub fn new(field: Arc<FieldContext>, k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::NilpotencyTooSmall(k));
        }
        let mut element_count: u64 = 1;
        for _ in 0..k {
            element_count = element_count
                .checked_mul(field.q())
                .ok_or(Error::Overflow("ring element count"))?;
        }
        Ok(RingContext {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            field,
            k,
            element_count,
        })
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        &self.field
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    /// True when coefficients live in the prime field.
    pub fn is_base_ring(&self) -> bool {
        self.field.m() == 1
    }

    pub fn element_count(&self) -> u64 {
        self.element_count
    }

    /// Length p^{k-1} of Gray images of single ring elements.
    pub fn gray_length(&self) -> u64 {
        self.p().pow(self.k - 1)
    }

    fn check<'a>(&self, a: &'a RingElement) -> Result<&'a [u32]> {
        (a.ctx == self.id)
            .then_some(a.coeffs.as_slice())
            .ok_or(Error::ContextMismatch)
    }

    fn wrap(&self, coeffs: Vec<u32>) -> RingElement {
        debug_assert_eq!(coeffs.len(), self.k as usize);
        RingElement {
            ctx: self.id,
            coeffs,
        }
    }

    pub fn zero(&self) -> RingElement {
        self.wrap(vec![0; self.k as usize])
    }

    pub fn one(&self) -> RingElement {
        let mut c = vec![0; self.k as usize];
        c[0] = 1;
        self.wrap(c)
    }

    /// u^i, for 0 <= i < k.
    pub fn u_power(&self, i: u32) -> Result<RingElement> {
        if i >= self.k {
            return Err(Error::ContextMismatch);
        }
        let mut c = vec![0; self.k as usize];
        c[i as usize] = 1;
        Ok(self.wrap(c))
    }

    pub fn from_field_coeffs(&self, coeffs: &[FieldElement]) -> Result<RingElement> {
        if coeffs.len() != self.k as usize {
            return Err(Error::ContextMismatch);
        }
        let encs = coeffs
            .iter()
            .map(|&c| self.field.encoding(c).map(|e| e as u32))
            .collect::<Result<Vec<u32>>>()?;
        Ok(self.wrap(encs))
    }

    /// Element from field-element encodings a_0..a_{k-1}.
    pub fn from_encodings(&self, encs: &[u64]) -> Result<RingElement> {
        if encs.len() != self.k as usize {
            return Err(Error::ContextMismatch);
        }
        let q = self.field.q();
        let coeffs = encs
            .iter()
            .map(|&e| (e < q).then_some(e as u32).ok_or(Error::ContextMismatch))
            .collect::<Result<Vec<u32>>>()?;
        Ok(self.wrap(coeffs))
    }

    pub fn coeff(&self, a: &RingElement, i: u32) -> Result<FieldElement> {
        let coeffs = self.check(a)?;
        self.field.from_encoding(coeffs[i as usize] as u64)
    }

    pub fn coeff_encodings(&self, a: &RingElement) -> Result<Vec<u64>> {
        Ok(self.check(a)?.iter().map(|&c| c as u64).collect())
    }

    /// The element at `index` in the canonical enumeration order: coefficient
    /// vectors ordered lexicographically with a_0 the most significant digit.
    pub fn element_at(&self, index: u64) -> Result<RingElement> {
        if index >= self.element_count {
            return Err(Error::ContextMismatch);
        }
        let q = self.field.q();
        let mut coeffs = vec![0u32; self.k as usize];
        let mut rest = index;
        for i in (0..self.k as usize).rev() {
            coeffs[i] = (rest % q) as u32;
            rest /= q;
        }
        Ok(self.wrap(coeffs))
    }

    pub fn index_of(&self, a: &RingElement) -> Result<u64> {
        let coeffs = self.check(a)?;
        let q = self.field.q();
        Ok(coeffs.iter().fold(0u64, |acc, &c| acc * q + c as u64))
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.element_count).map(move |i| self.element_at(i).expect("index in range"))
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        let (ca, cb) = (self.check(a)?, self.check(b)?);
        Ok(self.wrap(
            ca.iter()
                .zip(cb)
                .map(|(&x, &y)| self.field.add_enc(x, y))
                .collect(),
        ))
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        let (ca, cb) = (self.check(a)?, self.check(b)?);
        Ok(self.wrap(
            ca.iter()
                .zip(cb)
                .map(|(&x, &y)| self.field.add_enc(x, self.field.neg_enc(y)))
                .collect(),
        ))
    }

    pub fn neg(&self, a: &RingElement) -> Result<RingElement> {
        let ca = self.check(a)?;
        Ok(self.wrap(ca.iter().map(|&x| self.field.neg_enc(x)).collect()))
    }

    /// Convolution in u truncated at degree k-1.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        let (ca, cb) = (self.check(a)?, self.check(b)?);
        let k = self.k as usize;
        let mut out = vec![0u32; k];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate().take(k - i) {
                out[i + j] = self.field.add_enc(out[i + j], self.field.mul_enc(x, y));
            }
        }
        Ok(self.wrap(out))
    }

    /// Multiplication by a prime-field scalar.
    pub fn scalar_mul(&self, s: u64, a: &RingElement) -> Result<RingElement> {
        let ca = self.check(a)?;
        let se = (s % self.p()) as u32;
        Ok(self.wrap(ca.iter().map(|&x| self.field.mul_enc(se, x)).collect()))
    }

    pub fn is_zero(&self, a: &RingElement) -> Result<bool> {
        Ok(self.check(a)?.iter().all(|&c| c == 0))
    }

    /// Units are exactly the elements with a_0 nonzero.
    pub fn is_unit(&self, a: &RingElement) -> Result<bool> {
        Ok(self.check(a)?[0] != 0)
    }

    pub fn classify(&self, a: &RingElement) -> Result<ElementClass> {
        let coeffs = self.check(a)?;
        let k = self.k as usize;
        Ok(if coeffs[0] != 0 {
            ElementClass::Unit
        } else if coeffs.iter().all(|&c| c == 0) {
            ElementClass::Zero
        } else if coeffs[..k - 1].iter().all(|&c| c == 0) {
            ElementClass::SocleNonzero
        } else {
            ElementClass::MaximalNotSocle
        })
    }

    /// Inverse of a unit: solve the triangular system sum a_i b_{t-i} = [t=0].
    pub fn inv(&self, a: &RingElement) -> Result<RingElement> {
        let coeffs = self.check(a)?;
        if coeffs[0] == 0 {
            return Err(Error::NotAUnit);
        }
        let f = &self.field;
        let a0 = f.from_encoding(coeffs[0] as u64)?;
        let b0 = f.inv(a0)?;
        let b0e = f.encoding(b0)? as u32;
        let k = self.k as usize;
        let mut out = vec![0u32; k];
        out[0] = b0e;
        for t in 1..k {
            let mut s = 0u32;
            for i in 1..=t {
                s = f.add_enc(s, f.mul_enc(coeffs[i], out[t - i]));
            }
            out[t] = f.mul_enc(b0e, f.neg_enc(s));
        }
        Ok(self.wrap(out))
    }

    /// Coefficientwise trace from the extension ring down to `base`, which
    /// must be the base ring with the same p and k.
    pub fn generalized_trace(&self, a: &RingElement, base: &RingContext) -> Result<RingElement> {
        if !base.is_base_ring() || base.p() != self.p() || base.k != self.k {
            return Err(Error::RequiresBaseRing);
        }
        let coeffs = self.check(a)?;
        Ok(base.wrap(coeffs.iter().map(|&c| self.field.trace_enc(c)).collect()))
    }

    /// Gray image of a base-ring element: the vector (b_0, ..., b_{p^{k-1}-1})
    /// with b_{ip+eps} = a_{k-1} + sum_{l=1}^{k-2} p_{l-1}(i) a_l + eps a_0,
    /// where p_j(i) is the j-th least-significant base-p digit of i. For k = 2
    /// the digit sum is empty and the formula reads a_1 + eps a_0.
    pub fn gray_digits(&self, a: &RingElement) -> Result<Vec<u64>> {
        if !self.is_base_ring() {
            return Err(Error::RequiresBaseRing);
        }
        let coeffs = self.check(a)?;
        let p = self.p();
        let k = self.k as usize;
        let mut out = Vec::with_capacity(self.gray_length() as usize);
        for i in 0..p.pow(self.k - 2) {
            let mut base = coeffs[k - 1] as u64;
            let mut digits = i;
            for l in 1..=k - 2 {
                base += digits % p * coeffs[l] as u64;
                digits /= p;
            }
            for eps in 0..p {
                out.push((base + eps * coeffs[0] as u64) % p);
            }
        }
        Ok(out)
    }

    /// Homogeneous weight of a base-ring element: 0 at zero, p^{k-1} on the
    /// punctured socle, (p-1) p^{k-2} everywhere else.
    pub fn hom_weight(&self, a: &RingElement) -> Result<u64> {
        if !self.is_base_ring() {
            return Err(Error::RequiresBaseRing);
        }
        Ok(match self.classify(a)? {
            ElementClass::Zero => 0,
            ElementClass::SocleNonzero => self.p().pow(self.k - 1),
            _ => (self.p() - 1) * self.p().pow(self.k - 2),
        })
    }

    /// Coordinatewise homogeneous weight of a vector over the base ring.
    pub fn hom_weight_vector(&self, v: &[RingElement]) -> Result<u64> {
        v.iter().map(|a| self.hom_weight(a)).sum()
    }
}
