//! Closed-form weight-distribution predictions for the three code families,
//! the character-sum count behind them, the Griesmer bound, and the
//! optimality thresholds.
//!
//! All closed-form weights and frequencies are evaluated in exact integer /
//! rational arithmetic; a closed form that fails to come out integral is an
//! error, never rounded.

use crate::characters::{character_value, multiplicative_gauss_sum};
use crate::defining_sets::SetKind;
use crate::error::{Error, Result};
use crate::field::{is_prime, FieldContext, FieldElement};
use num_integer::Integer;
use num_rational::Ratio;

/// Closed-form weight table kind.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictionKind {
    TwoWeight,
    ThreeWeight,
    BoundsOnly,
    NotApplicable,
}

/// Minimum-distance bracket when only a bound-level statement applies.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct BoundsReport {
    pub lower: Ratio<i128>,
    pub upper: Ratio<i128>,
    pub max_weight_count: u64,
}

/// A closed-form weight/frequency table with its applicability conditions.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct Prediction {
    pub kind: PredictionKind,
    pub applicable: bool,
    pub reason: String,
    /// Nonzero (weight, frequency) pairs, strictly increasing in weight;
    /// frequencies sum to p^{km} - 1 when applicable.
    pub weights: Vec<(u64, u64)>,
    /// Gray length of the image code.
    pub length: u64,
    /// Gray dimension km.
    pub dimension: u32,
    pub bounds: Option<BoundsReport>,
}

impl Prediction {
    fn inapplicable(reason: &str, length: u64, dimension: u32) -> Self {
        Prediction {
            kind: PredictionKind::NotApplicable,
            applicable: false,
            reason: reason.to_string(),
            weights: Vec::new(),
            length,
            dimension,
            bounds: None,
        }
    }
}

fn require_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn require_shape(p: u64, m: u32, k: u32) -> Result<()> {
    require_prime(p)?;
    if m < 1 {
        return Err(Error::InvalidExtensionDegree);
    }
    if k < 2 {
        return Err(Error::NilpotencyTooSmall(k));
    }
    Ok(())
}

fn pow_i128(p: u64, e: u32) -> Result<i128> {
    (p as i128)
        .checked_pow(e)
        .ok_or(Error::Overflow("prime power"))
}

fn to_u64(v: Ratio<i128>, what: &str) -> Result<u64> {
    if !v.is_integer() {
        return Err(Error::NonIntegralClosedForm(format!("{what} = {v}")));
    }
    u64::try_from(v.to_integer()).map_err(|_| Error::Overflow("weight does not fit in u64"))
}

fn sorted_table(mut rows: Vec<(u64, u64)>) -> Vec<(u64, u64)> {
    rows.sort_unstable();
    rows
}

/// Gray length p^{k-1} |D1| = (p^m - 1) p^{(k-1)(m+1)} / 2.
pub fn squares_code_length(p: u64, m: u32, k: u32) -> Result<u64> {
    let n = (pow_i128(p, m)? - 1) * pow_i128(p, (k - 1) * (m + 1))?;
    to_u64(Ratio::new(n, 2), "squares-code length")
}

/// Gray length p^{k-1} |D2| = (p^m - 1) p^{(k-1)(m+1)}.
pub fn units_code_length(p: u64, m: u32, k: u32) -> Result<u64> {
    let n = (pow_i128(p, m)? - 1) * pow_i128(p, (k - 1) * (m + 1))?;
    u64::try_from(n).map_err(|_| Error::Overflow("units-code length"))
}

/// Closed-form table for the squares code (D1): three weights when m is
/// even, two weights when m is odd and p = 3 (mod 4).
pub fn predict_d1(p: u64, m: u32, k: u32) -> Result<Prediction> {
    require_shape(p, m, k)?;
    if p == 2 {
        return Err(Error::SquaresNeedOddCharacteristic);
    }
    let dimension = k * m;
    let length = squares_code_length(p, m, k)?;
    let n1 = Ratio::from_integer(length as i128);
    let scale = Ratio::new(p as i128 - 1, p as i128);
    let half_block = Ratio::new(pow_i128(p, (k - 1) * (m + 1))?, 2);
    let code_size = pow_i128(p, dimension)?;
    let q = pow_i128(p, m)?;

    if m % 2 == 0 {
        let root = pow_i128(p, m / 2)?;
        let w1 = to_u64(scale * (n1 - half_block * (root - 1)), "w1")?;
        let w2 = to_u64(scale * n1, "w2")?;
        let w3 = to_u64(scale * (n1 + half_block * (root + 1)), "w3")?;
        let f_out = u64::try_from((q - 1) / 2).unwrap();
        let f_mid = u64::try_from(code_size - q).unwrap();
        return Ok(Prediction {
            kind: PredictionKind::ThreeWeight,
            applicable: true,
            reason: "m even".into(),
            weights: sorted_table(vec![(w1, f_out), (w2, f_mid), (w3, f_out)]),
            length,
            dimension,
            bounds: None,
        });
    }
    if p % 4 == 3 {
        let w1 = to_u64(scale * n1, "w1")?;
        let w2 = to_u64(scale * (n1 + half_block), "w2")?;
        let f1 = u64::try_from(code_size - q).unwrap();
        let f2 = u64::try_from(q - 1).unwrap();
        return Ok(Prediction {
            kind: PredictionKind::TwoWeight,
            applicable: true,
            reason: "m odd and p = 3 (mod 4)".into(),
            weights: sorted_table(vec![(w1, f1), (w2, f2)]),
            length,
            dimension,
            bounds: None,
        });
    }
    Ok(Prediction::inapplicable(
        "no closed form for m odd with p = 1 (mod 4)",
        length,
        dimension,
    ))
}

/// Closed-form two-weight table for the units code (D2); applies to every
/// prime p.
pub fn predict_d2(p: u64, m: u32, k: u32) -> Result<Prediction> {
    require_shape(p, m, k)?;
    let dimension = k * m;
    let length = units_code_length(p, m, k)?;
    let n2 = Ratio::from_integer(length as i128);
    let scale = Ratio::new(p as i128 - 1, p as i128);
    let block = Ratio::from_integer(pow_i128(p, (k - 1) * (m + 1))?);
    let code_size = pow_i128(p, dimension)?;
    let q = pow_i128(p, m)?;

    let w1 = to_u64(scale * n2, "w1")?;
    let w2 = to_u64(scale * (n2 + block), "w2")?;
    Ok(Prediction {
        kind: PredictionKind::TwoWeight,
        applicable: true,
        reason: "any prime p".into(),
        weights: sorted_table(vec![
            (w1, u64::try_from(code_size - q).unwrap()),
            (w2, u64::try_from(q - 1).unwrap()),
        ]),
        length,
        dimension,
        bounds: None,
    })
}

/// Parameters derived from the coset stride N'.
fn coset_shape(p: u64, m: u32, stride: u64) -> Result<(u64, u64)> {
    let q = p.pow(m);
    if stride == 0 || (q - 1) % stride != 0 {
        return Err(Error::NotADivisor {
            n: stride,
            order: q - 1,
        });
    }
    let index = (q - 1) / (p - 1);
    let char_order = stride.gcd(&index);
    let rep_count = (q - 1) / ((p - 1) * char_order);
    Ok((char_order, rep_count))
}

/// Integer square-root floor.
fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    while r * r > n {
        r -= 1;
    }
    r
}

/// Closed-form table or bounds for the coset-representative code (D3).
///
/// char_order = 1 gives the two-weight table; char_order > 2 with the
/// semiprimitive conditions gives a three-weight table; anything else covered
/// by the bound statement yields a bounds-only report with at most
/// char_order + 1 nonzero weights.
pub fn predict_d3(p: u64, m: u32, k: u32, stride: u64) -> Result<Prediction> {
    require_shape(p, m, k)?;
    let (char_order, rep_count) = coset_shape(p, m, stride)?;
    let dimension = k * m;
    let q = pow_i128(p, m)?;
    let code_size = pow_i128(p, dimension)?;
    let block = pow_i128(p, (k - 1) * (m + 1))?;
    let length = u64::try_from(rep_count as i128 * block).map_err(|_| Error::Overflow("length"))?;
    let parity_ok = m % 2 == 0 || p % 4 == 3;

    if char_order == 1 {
        if !parity_ok {
            return Ok(Prediction::inapplicable(
                "char_order 1 needs m even, or m odd with p = 3 (mod 4)",
                length,
                dimension,
            ));
        }
        let w1 = to_u64(Ratio::new((q - 1) * block, p as i128), "w1")?;
        let w2 = to_u64(
            Ratio::from_integer(pow_i128(p, k * (m + 1) - 2)?),
            "w2",
        )?;
        return Ok(Prediction {
            kind: PredictionKind::TwoWeight,
            applicable: true,
            reason: "char_order = 1".into(),
            weights: sorted_table(vec![
                (w1, u64::try_from(code_size - q).unwrap()),
                (w2, u64::try_from(q - 1).unwrap()),
            ]),
            length,
            dimension,
        bounds: None,
        });
    }

    // Semiprimitive three-weight tables need m even and char_order > 2.
    if m % 2 == 0 && char_order > 2 {
        let minimal_flip = (1..=2 * char_order)
            .find(|&e| pow_mod(p, e, char_order) == char_order - 1);
        if let Some(kp) = minimal_flip {
            if (m as u64) % (2 * kp) == 0 {
                let t = (m as u64) / (2 * kp);
                let root = pow_i128(p, m / 2)?;
                let n2 = char_order as i128;
                let unit_row = (
                    to_u64(
                        Ratio::new(block * (q - 1), p as i128 * char_order as i128),
                        "middle weight",
                    )?,
                    u64::try_from(code_size - q).unwrap(),
                );
                let case_a = char_order % 2 == 0
                    && p % 2 == 1
                    && t % 2 == 1
                    && ((pow_i128(p, kp as u32)? + 1) / n2) % 2 == 1;
                let sign = if t % 2 == 0 { 1i128 } else { -1i128 };
                let socle_rows = if case_a {
                    if (n2 - 1) * (n2 - 1) >= q {
                        return Ok(Prediction::inapplicable(
                            "semiprimitive case needs char_order < sqrt(q) + 1",
                            length,
                            dimension,
                        ));
                    }
                    vec![
                        (
                            to_u64(
                                Ratio::new(block, p as i128)
                                    * Ratio::new(q - (n2 - 1) * root, n2),
                                "low weight",
                            )?,
                            u64::try_from((q - 1) / n2).unwrap(),
                        ),
                        (
                            to_u64(
                                Ratio::new(block, p as i128) * Ratio::new(q + root, n2),
                                "high weight",
                            )?,
                            u64::try_from((n2 - 1) * (q - 1) / n2).unwrap(),
                        ),
                    ]
                } else {
                    if root + sign * (n2 - 1) <= 0 {
                        return Ok(Prediction::inapplicable(
                            "sqrt(q) + (-1)^t (char_order - 1) must be positive",
                            length,
                            dimension,
                        ));
                    }
                    vec![
                        (
                            to_u64(
                                Ratio::new(block, p as i128)
                                    * Ratio::new(q + sign * (n2 - 1) * root, n2),
                                "first socle weight",
                            )?,
                            u64::try_from((q - 1) / n2).unwrap(),
                        ),
                        (
                            to_u64(
                                Ratio::new(block, p as i128) * Ratio::new(q - sign * root, n2),
                                "second socle weight",
                            )?,
                            u64::try_from((n2 - 1) * (q - 1) / n2).unwrap(),
                        ),
                    ]
                };
                let mut rows = socle_rows;
                rows.push(unit_row);
                return Ok(Prediction {
                    kind: PredictionKind::ThreeWeight,
                    applicable: true,
                    reason: if case_a {
                        "semiprimitive, all-odd case".into()
                    } else {
                        format!("semiprimitive, general case (t = {t})")
                    },
                    weights: sorted_table(rows),
                    length,
                    dimension,
                    bounds: None,
                });
            }
        }
    }

    // Bound-level statement: 1 < char_order < sqrt(q) + 1 and the usual
    // parity condition.
    if parity_ok && (char_order - 1).pow(2) < q as u64 {
        let n2 = char_order as i128;
        let upper = Ratio::new(block * (q - 1), p as i128 * n2);
        let lower = if m % 2 == 0 {
            Ratio::new(block * (q - (n2 - 1) * pow_i128(p, m / 2)?), p as i128 * n2)
        } else {
            // sqrt(q) is irrational here; rounding it up keeps the bound valid.
            let root_up = (isqrt(q as u64) + 1) as i128;
            Ratio::new(block * (q - (n2 - 1) * root_up), p as i128 * n2)
        };
        return Ok(Prediction {
            kind: PredictionKind::BoundsOnly,
            applicable: true,
            reason: format!("bounds only: char_order = {char_order}"),
            weights: Vec::new(),
            length,
            dimension,
            bounds: Some(BoundsReport {
                lower,
                upper,
                max_weight_count: char_order + 1,
            }),
        });
    }

    Ok(Prediction::inapplicable(
        "no closed form or bound covers these parameters",
        length,
        dimension,
    ))
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    result
}

/// Number of coset representatives d_j with tr(b d_j) = 0, evaluated through
/// the character-sum formula: p N(b) = n_1 + (1/N'_2) sum_j G(conj phi^j) phi^j(b).
/// The result must round to an integer within 1e-6.
pub fn eq1_count(ctx: &FieldContext, b: FieldElement, stride: u64) -> Result<u64> {
    let p = ctx.p();
    let (char_order, rep_count) = coset_shape(p, ctx.m(), stride)?;
    if ctx.is_zero(b)? {
        return Err(Error::ZeroInversion);
    }
    let mut sum = num_complex::Complex64::new(0.0, 0.0);
    for j in 0..char_order {
        let gauss = multiplicative_gauss_sum(ctx, char_order, (char_order - j) % char_order)?;
        sum += gauss * character_value(ctx, char_order, j, b)?;
    }
    let p_count = rep_count as f64 + sum.re / char_order as f64;
    let value = p_count / p as f64;
    let rounded = value.round();
    if (value - rounded).abs() > 1e-6 || rounded < 0.0 {
        return Err(Error::VerificationFailed(format!(
            "character-sum count is not integral: {value}"
        )));
    }
    Ok(rounded as u64)
}

/// The Griesmer sum for a p-ary [n, dim, d] code: sum of ceil(d / p^i).
pub fn griesmer_sum(p: u64, dim: u32, d: u64) -> Result<u128> {
    require_prime(p)?;
    if dim < 1 {
        return Err(Error::InvalidWeight("dimension must be at least 1"));
    }
    if d < 1 {
        return Err(Error::InvalidWeight("distance must be at least 1"));
    }
    let mut sum = 0u128;
    let mut power = 1u128;
    for _ in 0..dim {
        sum += (d as u128).div_ceil(power);
        power = power.saturating_mul(p as u128);
    }
    Ok(sum)
}

/// True iff [n, dim, d] meets the Griesmer bound while [n, dim, d+1] cannot
/// exist.
pub fn is_griesmer_optimal(n: u64, dim: u32, d: u64, p: u64) -> Result<bool> {
    Ok(griesmer_sum(p, dim, d)? <= n as u128 && griesmer_sum(p, dim, d + 1)? > n as u128)
}

/// Minimum extension degree from the optimality threshold of one family,
/// with the side conditions under which the threshold statement holds.
#[derive(Clone, Debug, serde::Serialize)]
pub struct OptimalityThreshold {
    pub min_m: u64,
    pub side_condition: &'static str,
}

pub fn optimality_threshold(kind: SetKind, p: u64, k: u32) -> Result<OptimalityThreshold> {
    require_prime(p)?;
    if k < 2 {
        return Err(Error::NilpotencyTooSmall(k));
    }
    let pk1 = pow_i128(p, k - 1)?;
    let k_i = k as i128;
    let p_i = p as i128;
    let (numerator, denominator, side_condition) = match kind {
        SetKind::D1 => (
            pk1 - 2 * k_i + 1,
            2 * (k_i - 1),
            "m odd and p = 3 (mod 4)",
        ),
        SetKind::D2 => (pk1 - k_i, k_i - 1, "any prime p, any m"),
        SetKind::D3 => (
            pk1 - p_i * (k_i - 1) + k_i - 2,
            (p_i - 1) * (k_i - 1),
            "char_order = 1 and (m even, or m odd and p = 3 (mod 4))",
        ),
    };
    let floor_term = numerator.div_euclid(denominator) + 1;
    let min_m = std::cmp::max(k_i, floor_term);
    Ok(OptimalityThreshold {
        min_m: u64::try_from(min_m).map_err(|_| Error::Overflow("threshold"))?,
        side_condition,
    })
}

/// Identity check of the two k(m+1)-exponent forms of the high weight in the
/// char_order = 1 table: p^{k(m+1)-2} = p^{(k-1)(m+1)} p^{m-1}.
pub fn socle_weight_forms_agree(p: u64, m: u32, k: u32) -> Result<bool> {
    require_shape(p, m, k)?;
    Ok(pow_i128(p, k * (m + 1) - 2)? == pow_i128(p, (k - 1) * (m + 1))? * pow_i128(p, m - 1)?)
}

/// Which k = 2 comparison table to evaluate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ComparisonTable {
    TwoWeight,
    ThreeWeight,
}

/// Ratio between this construction's k = 2 weights and the single-nilpotent
/// construction's weights, row by row; all rows (and the lengths) must agree
/// on one constant, which is returned. Exact rational arithmetic throughout.
pub fn k2_weight_ratio(p: u64, m: u32, table: ComparisonTable) -> Result<Ratio<i128>> {
    require_prime(p)?;
    if m < 1 {
        return Err(Error::InvalidExtensionDegree);
    }
    let q = pow_i128(p, m)?;
    let p_i = p as i128;
    let qp = pow_i128(p, m + 1)?; // p^{m+1}
    let pm1 = pow_i128(p, m - 1)?; // p^{m-1}

    let rows: Vec<(Ratio<i128>, Ratio<i128>)> = match table {
        ComparisonTable::TwoWeight => vec![
            (
                Ratio::new((qp - q) * (q - 1), 2),
                Ratio::from_integer((q - pm1) * (q - 1)),
            ),
            (
                Ratio::new(q * (qp - q), 2),
                Ratio::from_integer(pm1 * (qp - q)),
            ),
            // Lengths scale by the same constant.
            (Ratio::new((q - 1) * qp, 2), Ratio::from_integer(q * q - q)),
        ],
        ComparisonTable::ThreeWeight => {
            if m % 2 != 0 {
                return Err(Error::NonIntegralClosedForm(
                    "three-weight comparison needs m even".into(),
                ));
            }
            let root = pow_i128(p, m / 2)?;
            vec![
                (
                    Ratio::new((qp - q) * (q - root), 2),
                    Ratio::from_integer((q - pm1) * (q - root)),
                ),
                (
                    Ratio::new((qp - q) * (q - 1), 2),
                    Ratio::from_integer((q - pm1) * (q - 1)),
                ),
                (
                    Ratio::new((qp - q) * (q + root), 2),
                    Ratio::from_integer((q - pm1) * (q + root)),
                ),
            ]
        }
    };
    let first = rows[0].0 / rows[0].1;
    for (ours, reference) in &rows[1..] {
        if ours / reference != first {
            return Err(Error::VerificationFailed(
                "weight rows do not share a constant ratio".into(),
            ));
        }
    }
    let _ = p_i;
    Ok(first)
}
