//! Character-sum identities that link the weight enumerator to the theta
//! transform, checked at desk scale.

use chaincode_core::characters::additive_character;
use chaincode_core::codes::{digit_phase_sum, TraceCode};
use chaincode_core::defining_sets::{DefiningSet, SetKind};
use chaincode_core::field::FieldContext;
use chaincode_core::ring::RingContext;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn code(p: u64, m: u32, k: u32, kind: SetKind, stride: Option<u64>) -> TraceCode {
    let field = Arc::new(FieldContext::new(p, m).unwrap());
    let ring = Arc::new(RingContext::new(field, k).unwrap());
    let set = match kind {
        SetKind::D1 => DefiningSet::squares(ring).unwrap(),
        SetKind::D2 => DefiningSet::units(ring).unwrap(),
        SetKind::D3 => DefiningSet::coset_representatives(ring, stride.unwrap()).unwrap(),
    };
    TraceCode::new(Arc::new(set)).unwrap()
}

/// sum_{s=1}^{p-1} Theta(s y) = (p-1) N - p w_H(y) for arbitrary digit
/// vectors: 1000 random vectors per prime.
#[test]
fn theta_scaling_identity_random_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1dee);
    for p in [2u64, 3, 5] {
        for _ in 0..1000 {
            let n = rng.gen_range(1..=80usize);
            let y: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            let hamming = y.iter().filter(|&&d| d != 0).count() as u64;
            let mut lhs = Complex64::new(0.0, 0.0);
            for s in 1..p {
                let scaled: Vec<u64> = y.iter().map(|&d| d * s % p).collect();
                lhs += digit_phase_sum(&scaled, p);
            }
            let rhs = ((p - 1) * n as u64) as f64 - (p * hamming) as f64;
            assert!((lhs.re - rhs).abs() < 1e-6, "p={p}: {} vs {rhs}", lhs.re);
            assert!(lhs.im.abs() < 1e-6);
        }
    }
}

/// The inner character sum over the free fiber coordinates vanishes exactly
/// when some middle coefficient is nonzero, and totals p^{(k-2)m} otherwise;
/// exhaustive at (3,2,3) over scalars in the maximal ideal.
#[test]
fn fiber_character_sum_dichotomy() {
    let (p, m, k) = (3u64, 2u32, 3u32);
    let field = FieldContext::new(p, m).unwrap();
    let q = field.q();
    let free = k - 2;

    // a = a_1 u + ... + a_{k-1} u^{k-1}, not all zero.
    let mut scalars = Vec::new();
    for idx in 0..q.pow(k - 1) {
        let mut coeffs = Vec::with_capacity(k as usize - 1);
        let mut rest = idx;
        for _ in 0..k - 1 {
            coeffs.push(rest % q);
            rest /= q;
        }
        if coeffs.iter().any(|&c| c != 0) {
            scalars.push(coeffs);
        }
    }
    assert_eq!(scalars.len() as u64, q.pow(k - 1) - 1);

    for a in scalars {
        let mut total = Complex64::new(0.0, 0.0);
        // Free coordinates x_1..x_{k-2}; B = sum_{i=1}^{k-2} a_i x_{k-1-i}.
        for tuple in 0..q.pow(free) {
            let mut xs = Vec::with_capacity(free as usize);
            let mut rest = tuple;
            for _ in 0..free {
                xs.push(rest % q);
                rest /= q;
            }
            let mut b = field.zero();
            for i in 1..=free as usize {
                let ai = field.from_encoding(a[i - 1]).unwrap();
                let x = field.from_encoding(xs[(k as usize - 1 - i) - 1]).unwrap();
                b = field.add(b, field.mul(ai, x).unwrap()).unwrap();
            }
            total += additive_character(p, field.trace_to_prime(b).unwrap());
        }
        let middle_zero = a[..free as usize].iter().all(|&c| c == 0);
        if middle_zero {
            let expected = q.pow(free) as f64;
            assert!((total.re - expected).abs() < 1e-6 && total.im.abs() < 1e-6);
        } else {
            assert!(total.norm() < 1e-6, "a = {a:?} gives {total}");
        }
    }
}

/// For p = 3 (mod 4): sum_{s=1}^{p-1} theta(s a) = (p-1) Re(theta(a)),
/// exhaustively over the extension ring at (3,3,2).
#[test]
fn theta_real_part_identity_exhaustive() {
    let c = code(3, 3, 2, SetKind::D1, None);
    let ext = c.defining_set().ring().clone();
    let p = ext.p();
    for a_idx in 0..ext.element_count() {
        let a = ext.element_at(a_idx).unwrap();
        let theta_a = c.theta_sum(&a).unwrap();
        let mut lhs = Complex64::new(0.0, 0.0);
        for s in 1..p {
            lhs += c.theta_sum(&ext.scalar_mul(s, &a).unwrap()).unwrap();
        }
        let rhs = (p - 1) as f64 * theta_a.re;
        assert!(
            (lhs.re - rhs).abs() < 1e-6 && lhs.im.abs() < 1e-6,
            "scalar {a_idx}: {lhs} vs {rhs}"
        );
    }
}

/// Every unit scalar yields the same homogeneous weight (p-1) N_i / p, for
/// both the squares code and the units code.
#[test]
fn units_share_one_weight() {
    let cases = [
        (3u64, 2u32, 2u32, SetKind::D1, None),
        (3, 3, 2, SetKind::D1, None),
        (2, 2, 2, SetKind::D2, None),
        (3, 2, 2, SetKind::D2, None),
    ];
    for (p, m, k, kind, stride) in cases {
        let c = code(p, m, k, kind, stride);
        let ext = c.defining_set().ring().clone();
        let base = c.base_ring().clone();
        let expected = (p - 1) * c.gray_length() / p;
        for a_idx in 0..ext.element_count() {
            let a = ext.element_at(a_idx).unwrap();
            if !ext.is_unit(&a).unwrap() {
                continue;
            }
            let w = base
                .hom_weight_vector(c.evaluate(&a).unwrap().entries())
                .unwrap();
            assert_eq!(w, expected, "p={p} m={m} k={k} {kind:?} scalar {a_idx}");
        }
    }
}
