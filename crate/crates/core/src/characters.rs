//! Character sums over F_q: quadratic Gauss sums, square/nonsquare sums,
//! and Gauss sums of multiplicative characters of arbitrary order.
//!
//! Every sum here is computed by exhaustive summation over the field; the
//! closed forms are provided separately so tests can confront the two.

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Absolute tolerance for comparing character sums against closed forms.
/// Sums have at most q unit-magnitude terms, so doubles leave ample headroom.
pub const CHAR_SUM_TOLERANCE: f64 = 1e-6;

/// Tighter tolerance for identities that are exact in exact arithmetic
/// (trivial-character sums, Qbar + Nbar = -1).
pub const EXACT_SUM_TOLERANCE: f64 = 1e-9;

/// The additive character value omega^r with omega = exp(2*pi*i/p).
pub fn additive_character(p: u64, residue: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (residue % p) as f64 / p as f64)
}

fn require_odd(ctx: &FieldContext) -> Result<()> {
    if ctx.q() % 2 == 0 {
        return Err(Error::RequiresOddField { q: ctx.q() });
    }
    Ok(())
}

/// G(eta) = sum over nonzero x of eta(x) * omega^{tr(x)}, with eta the
/// quadratic character, by direct summation.
pub fn quadratic_gauss_sum(ctx: &FieldContext) -> Result<Complex64> {
    require_odd(ctx)?;
    let p = ctx.p();
    let mut sum = Complex64::new(0.0, 0.0);
    for x in ctx.nonzero_elements() {
        let sign = if ctx.is_square(x)? { 1.0 } else { -1.0 };
        sum += sign * additive_character(p, ctx.trace_to_prime(x)?);
    }
    debug_assert!(sum.re.is_finite() && sum.im.is_finite());
    Ok(sum)
}

/// The classical closed form (-1)^{m-1} * (sqrt(p*))^m with
/// p* = (-1)^{(p-1)/2} p, taking the principal branch sqrt(-p) = i sqrt(p).
pub fn quadratic_gauss_sum_closed_form(ctx: &FieldContext) -> Result<Complex64> {
    require_odd(ctx)?;
    let p = ctx.p();
    let m = ctx.m();
    let root = if p % 4 == 1 {
        Complex64::new((p as f64).sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (p as f64).sqrt())
    };
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    Ok(sign * root.powu(m))
}

/// (Qbar, Nbar): the additive-character sums over the nonzero squares and
/// the nonsquares, by direct summation. They satisfy Qbar + Nbar = -1,
/// Qbar = (G(eta) - 1)/2 and Nbar = (-G(eta) - 1)/2.
pub fn square_nonsquare_sums(ctx: &FieldContext) -> Result<(Complex64, Complex64)> {
    require_odd(ctx)?;
    let p = ctx.p();
    let mut q_sum = Complex64::new(0.0, 0.0);
    let mut n_sum = Complex64::new(0.0, 0.0);
    for x in ctx.nonzero_elements() {
        let term = additive_character(p, ctx.trace_to_prime(x)?);
        if ctx.is_square(x)? {
            q_sum += term;
        } else {
            n_sum += term;
        }
    }
    Ok((q_sum, n_sum))
}

/// Gauss sum of the multiplicative character psi = phi^index, where phi maps
/// alpha^t to exp(2*pi*i*t/order): sum over nonzero x of psi(x) omega^{tr(x)}.
/// `order` must divide q - 1; index 0 gives the trivial character (sum -1).
pub fn multiplicative_gauss_sum(ctx: &FieldContext, order: u64, index: u64) -> Result<Complex64> {
    let n = ctx.q() - 1;
    if order == 0 || n % order != 0 {
        return Err(Error::NotADivisor { n: order, order: n });
    }
    let p = ctx.p();
    let j = index % order;
    let mut sum = Complex64::new(0.0, 0.0);
    for t in 0..n.max(1) {
        let x = ctx.power_of_alpha(t);
        let psi = Complex64::from_polar(1.0, 2.0 * PI * (t % order * j % order) as f64 / order as f64);
        sum += psi * additive_character(p, ctx.trace_to_prime(x)?);
    }
    debug_assert!(sum.re.is_finite() && sum.im.is_finite());
    Ok(sum)
}

/// The value psi(x) of the multiplicative character psi = phi^index of the
/// given order at a nonzero element.
pub fn character_value(
    ctx: &FieldContext,
    order: u64,
    index: u64,
    x: FieldElement,
) -> Result<Complex64> {
    let n = ctx.q() - 1;
    if order == 0 || n % order != 0 {
        return Err(Error::NotADivisor { n: order, order: n });
    }
    let t = ctx
        .discrete_log(x)?
        .ok_or(Error::ZeroInversion)?;
    Ok(Complex64::from_polar(
        1.0,
        2.0 * PI * (t % order * (index % order) % order) as f64 / order as f64,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn quadratic_sum_small_fields() {
        // F_3: i*sqrt(3).
        let f3 = FieldContext::new(3, 1).unwrap();
        let g = quadratic_gauss_sum(&f3).unwrap();
        assert!(close(g, Complex64::new(0.0, 3f64.sqrt()), CHAR_SUM_TOLERANCE));

        // F_9: direct summation gives +3 (p = 3 mod 4, m singly even).
        let f9 = FieldContext::new(3, 2).unwrap();
        let g = quadratic_gauss_sum(&f9).unwrap();
        assert!(close(g, Complex64::new(3.0, 0.0), CHAR_SUM_TOLERANCE));

        // F_5: sqrt(5).
        let f5 = FieldContext::new(5, 1).unwrap();
        let g = quadratic_gauss_sum(&f5).unwrap();
        assert!(close(g, Complex64::new(5f64.sqrt(), 0.0), CHAR_SUM_TOLERANCE));

        // F_81: doubly even m, so -9.
        let f81 = FieldContext::new(3, 4).unwrap();
        let g = quadratic_gauss_sum(&f81).unwrap();
        assert!(close(g, Complex64::new(-9.0, 0.0), CHAR_SUM_TOLERANCE));
    }

    #[test]
    fn closed_form_matches_direct_sum_up_to_343() {
        let mut checked = 0;
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let mut m = 1;
            while p.pow(m) <= 343 {
                let ctx = FieldContext::new(p, m).unwrap();
                let direct = quadratic_gauss_sum(&ctx).unwrap();
                let closed = quadratic_gauss_sum_closed_form(&ctx).unwrap();
                assert!(
                    close(direct, closed, CHAR_SUM_TOLERANCE),
                    "p={p} m={m}: {direct} vs {closed}"
                );
                checked += 1;
                m += 1;
            }
        }
        assert!(checked >= 15);
    }

    #[test]
    fn square_nonsquare_sums_identities() {
        for (p, m) in [(3u64, 1u32), (3, 2), (3, 3), (5, 1), (5, 2), (7, 2)] {
            let ctx = FieldContext::new(p, m).unwrap();
            let (qbar, nbar) = square_nonsquare_sums(&ctx).unwrap();
            assert!(
                close(qbar + nbar, Complex64::new(-1.0, 0.0), EXACT_SUM_TOLERANCE),
                "p={p} m={m}"
            );
            let g = quadratic_gauss_sum(&ctx).unwrap();
            assert!(close(qbar, (g - 1.0) / 2.0, CHAR_SUM_TOLERANCE));
            assert!(close(nbar, (-g - 1.0) / 2.0, CHAR_SUM_TOLERANCE));
        }
        // F_9 values from direct summation.
        let f9 = FieldContext::new(3, 2).unwrap();
        let (qbar, nbar) = square_nonsquare_sums(&f9).unwrap();
        assert!(close(qbar, Complex64::new(1.0, 0.0), CHAR_SUM_TOLERANCE));
        assert!(close(nbar, Complex64::new(-2.0, 0.0), CHAR_SUM_TOLERANCE));
        // F_3: Qbar = (-1 + i sqrt(3))/2.
        let f3 = FieldContext::new(3, 1).unwrap();
        let (qbar, _) = square_nonsquare_sums(&f3).unwrap();
        assert!(close(
            qbar,
            Complex64::new(-0.5, 3f64.sqrt() / 2.0),
            CHAR_SUM_TOLERANCE
        ));
    }

    #[test]
    fn multiplicative_sums() {
        // Trivial character: -1 exactly (up to rounding).
        for (p, m) in [(3u64, 2u32), (5, 1), (2, 3), (3, 4)] {
            let ctx = FieldContext::new(p, m).unwrap();
            let g = multiplicative_gauss_sum(&ctx, 1, 0).unwrap();
            assert!(close(g, Complex64::new(-1.0, 0.0), EXACT_SUM_TOLERANCE));
        }
        // Order 2, index 1 is the quadratic character.
        for (p, m) in [(3u64, 2u32), (5, 1), (3, 3)] {
            let ctx = FieldContext::new(p, m).unwrap();
            let g2 = multiplicative_gauss_sum(&ctx, 2, 1).unwrap();
            let geta = quadratic_gauss_sum(&ctx).unwrap();
            assert!(close(g2, geta, CHAR_SUM_TOLERANCE));
        }
        // (3,4), order 4, index 1: magnitude sqrt(q) = 9.
        let ctx = FieldContext::new(3, 4).unwrap();
        let g = multiplicative_gauss_sum(&ctx, 4, 1).unwrap();
        assert!((g.norm() - 9.0).abs() < CHAR_SUM_TOLERANCE);

        assert!(matches!(
            multiplicative_gauss_sum(&ctx, 7, 1),
            Err(Error::NotADivisor { .. })
        ));
    }

    #[test]
    fn nontrivial_sums_have_magnitude_sqrt_q() {
        for (p, m) in [(2u64, 2u32), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 1), (7, 2), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1), (29, 1), (31, 1), (37, 1), (41, 1), (43, 1), (47, 1), (53, 1), (59, 1), (61, 1), (67, 1), (71, 1), (73, 1), (79, 1)] {
            let ctx = FieldContext::new(p, m).unwrap();
            let q = ctx.q();
            if q > 81 {
                continue;
            }
            let sqrt_q = (q as f64).sqrt();
            for order in 1..=q - 1 {
                if (q - 1) % order != 0 {
                    continue;
                }
                for j in 1..order {
                    let g = multiplicative_gauss_sum(&ctx, order, j).unwrap();
                    assert!(
                        (g.norm() - sqrt_q).abs() < CHAR_SUM_TOLERANCE,
                        "p={p} m={m} order={order} j={j}: |G| = {}",
                        g.norm()
                    );
                }
            }
        }
    }
}
