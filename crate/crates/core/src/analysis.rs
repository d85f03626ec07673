//! Dual-code low-support search and minimal-codeword analysis.
//!
//! The dual search scans candidate dual words supported on one or two
//! coordinates; linearity makes checking orthogonality against an F_p-basis
//! of the extension ring sufficient, and every witness is re-verified against
//! the full code. The minimality scan compares Gray supports pairwise over
//! scalar classes (scalar multiples share a support by linearity of the Gray
//! map, so one representative per class suffices).

use crate::codes::TraceCode;
use crate::error::{Error, Result};
use crate::ring::RingElement;
use std::ops::Range;

/// Elementary-check cap for the dual search: |D|^2 p^{2k} km.
pub const DUAL_SEARCH_BUDGET: u128 = 1_000_000_000;

/// Cap on code size for the pairwise support scan.
pub const MINIMALITY_CODEWORD_CAP: u64 = 10_000;

/// A dual codeword supported on at most two coordinates.
#[derive(Clone, Debug, serde::Serialize)]
pub struct DualWitness {
    /// Defining-set positions carrying the nonzero symbols.
    pub positions: Vec<usize>,
    /// Base-ring coefficient vectors of those symbols.
    pub values: Vec<Vec<u64>>,
    pub weight: u64,
}

/// Outcome of the support-1 and support-2 scans over the dual code.
#[derive(Clone, Debug, serde::Serialize)]
pub struct DualSearchReport {
    pub support1_found: bool,
    pub min_weight_support1: Option<u64>,
    pub min_weight_support2: Option<u64>,
    pub witness: Option<DualWitness>,
    /// 2 (p-1) p^{k-2}, the value the search is confronted with.
    pub claimed: u64,
}

impl DualSearchReport {
    /// Minimum weight over both scans. This equals the dual homogeneous
    /// distance whenever it is at most `claimed` (supports of size three or
    /// more cannot undercut a support-2 witness of the claimed value).
    pub fn observed_minimum(&self) -> Option<u64> {
        match (self.min_weight_support1, self.min_weight_support2) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

/// One covering violation: the scalar indices (codeword labels) of a pair
/// with support(covered) contained in support(covering).
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct CoveringPair {
    pub covering_scalar: u64,
    pub covered_scalar: u64,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct MinimalityReport {
    pub all_minimal: bool,
    /// Up to ten witnesses, in scan order.
    pub violations: Vec<CoveringPair>,
    /// Whether the sufficient ratio condition q w_min > (q-1) w_max holds.
    pub ab_ratio_ok: bool,
    /// Scalar classes examined (one representative each).
    pub checked_classes: u64,
}

/// The sufficient minimality condition: w_min / w_max > (q-1)/q, as an exact
/// integer comparison.
pub fn ashikhmin_barg(w_min: u64, w_max: u64, q: u64) -> Result<bool> {
    if w_min == 0 || w_max < w_min {
        return Err(Error::InvalidWeight(
            "weights must satisfy 0 < w_min <= w_max",
        ));
    }
    if q < 2 {
        return Err(Error::InvalidWeight("alphabet must have at least two elements"));
    }
    Ok((q as u128) * (w_min as u128) > (q as u128 - 1) * (w_max as u128))
}

fn partition(total: u64, threads: usize) -> Vec<Range<u64>> {
    let workers = threads.max(1).min(total.max(1) as usize) as u64;
    let base = total / workers;
    let extra = total % workers;
    let mut out = Vec::with_capacity(workers as usize);
    let mut start = 0;
    for w in 0..workers {
        let len = base + u64::from(w < extra);
        out.push(start..start + len);
        start += len;
    }
    out
}

fn run_partitioned<T, F>(total: u64, threads: usize, worker: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
{
    let ranges = partition(total, threads);
    if ranges.len() == 1 {
        let r = ranges.into_iter().next().unwrap();
        return vec![worker(r)];
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| scope.spawn(|| worker(r)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// Multiplication and addition tables over the base ring, indexed by the
/// canonical element index.
struct BaseTables {
    count: usize,
    mul: Vec<u32>,
    add: Vec<u32>,
    weight: Vec<u64>,
}

impl BaseTables {
    fn new(code: &TraceCode) -> Result<Self> {
        let base = code.base_ring();
        let count = base.element_count() as usize;
        let mut mul = vec![0u32; count * count];
        let mut add = vec![0u32; count * count];
        for i in 0..count {
            let a = base.element_at(i as u64)?;
            for j in 0..count {
                let b = base.element_at(j as u64)?;
                mul[i * count + j] = base.index_of(&base.mul(&a, &b)?)? as u32;
                add[i * count + j] = base.index_of(&base.add(&a, &b)?)? as u32;
            }
        }
        Ok(BaseTables {
            count,
            mul,
            add,
            weight: code.hom_weight_table().to_vec(),
        })
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.count + b as usize]
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.count + b as usize]
    }
}

/// Trace of every basis element against every defining-set position:
/// column x becomes the vector (Tr(e_b x))_b over the km basis elements
/// alpha^j u^i. Orthogonality against these columns is orthogonality against
/// the whole code, by linearity.
fn basis_trace_columns(code: &TraceCode) -> Result<Vec<Vec<u32>>> {
    let ext = code.defining_set().ring();
    let base = code.base_ring();
    let field = ext.field();
    let mut basis: Vec<RingElement> = Vec::new();
    for i in 0..ext.k() {
        for j in 0..field.m() {
            let mut coeffs = vec![field.zero(); ext.k() as usize];
            coeffs[i as usize] = field.power_of_alpha(j as u64);
            basis.push(ext.from_field_coeffs(&coeffs)?);
        }
    }
    (0..code.defining_set().len())
        .map(|pos| {
            let x = code.defining_set().element(pos)?;
            basis
                .iter()
                .map(|b| {
                    let tr = ext.generalized_trace(&ext.mul(b, &x)?, base)?;
                    Ok(base.index_of(&tr)? as u32)
                })
                .collect()
        })
        .collect()
}

/// Scan the dual code for words of support one and two, returning the
/// minimum homogeneous weight found on each support size. Deterministic in
/// the thread count: workers return their range-minimum keyed by
/// (weight, pair, symbols) and stop early only at the absolute floor.
pub fn dual_low_weight_search(code: &TraceCode, threads: usize) -> Result<DualSearchReport> {
    let ext = code.defining_set().ring();
    let p = ext.p();
    let k = ext.k();
    let n = code.defining_set().len();
    let km = (k * ext.field().m()) as u128;
    let count = code.base_ring().element_count() as u128;
    let required = (n as u128).pow(2) * count * count * km;
    if required > DUAL_SEARCH_BUDGET {
        return Err(Error::BudgetExceeded {
            required,
            cap: DUAL_SEARCH_BUDGET,
        });
    }

    let tables = BaseTables::new(code)?;
    let columns = basis_trace_columns(code)?;
    let claimed = 2 * (p - 1) * p.pow(k - 2);
    let count = tables.count as u32;

    // Support 1: gamma * Tr(e_b x) = 0 for every basis element.
    let mut support1: Option<(u64, usize, u32)> = None;
    for (pos, column) in columns.iter().enumerate() {
        for gamma in 1..count {
            if column.iter().all(|&t| tables.mul(gamma, t) == 0) {
                let cand = (tables.weight[gamma as usize], pos, gamma);
                if support1.map_or(true, |best| cand < best) {
                    support1 = Some(cand);
                }
            }
        }
    }

    // Support 2: row-partitioned scan over position pairs (i < j).
    type Hit = (u64, usize, usize, u32, u32);
    let floor = claimed;
    let results: Vec<Option<Hit>> = run_partitioned(n as u64, threads, |rows| {
        let mut best: Option<Hit> = None;
        let mut scaled = vec![0u32; columns[0].len()];
        'rows: for i in rows.start as usize..rows.end as usize {
            for j in i + 1..n {
                for gx in 1..count {
                    for (slot, &t) in scaled.iter_mut().zip(&columns[i]) {
                        *slot = tables.mul(gx, t);
                    }
                    for gy in 1..count {
                        let ok = scaled
                            .iter()
                            .zip(&columns[j])
                            .all(|(&sx, &t)| tables.add(sx, tables.mul(gy, t)) == 0);
                        if ok {
                            let wt =
                                tables.weight[gx as usize] + tables.weight[gy as usize];
                            let cand = (wt, i, j, gx, gy);
                            if best.map_or(true, |b| cand < b) {
                                best = Some(cand);
                                if wt == floor {
                                    break 'rows;
                                }
                            }
                        }
                    }
                }
            }
        }
        best
    });
    let support2 = results.into_iter().flatten().min();

    // Re-verify the best witness against every codeword, not just the basis.
    let witness = match (support1, support2) {
        (Some((w1, pos, gamma)), s2) if s2.map_or(true, |(w2, ..)| w1 <= w2) => {
            Some((vec![(pos, gamma)], w1))
        }
        (_, Some((w2, i, j, gx, gy))) => Some((vec![(i, gx), (j, gy)], w2)),
        _ => None,
    };
    let witness = witness
        .map(|(symbols, weight)| {
            verify_witness(code, &tables, &symbols)?;
            let base = code.base_ring();
            Ok::<_, Error>(DualWitness {
                positions: symbols.iter().map(|&(pos, _)| pos).collect(),
                values: symbols
                    .iter()
                    .map(|&(_, g)| base.coeff_encodings(&base.element_at(g as u64)?))
                    .collect::<Result<_>>()?,
                weight,
            })
        })
        .transpose()?;

    Ok(DualSearchReport {
        support1_found: support1.is_some(),
        min_weight_support1: support1.map(|(w, ..)| w),
        min_weight_support2: support2.map(|(w, ..)| w),
        witness,
        claimed,
    })
}

/// Full inner-product check of a sparse dual word against all codewords.
fn verify_witness(code: &TraceCode, tables: &BaseTables, symbols: &[(usize, u32)]) -> Result<()> {
    let ext = code.defining_set().ring();
    let field = ext.field();
    let base = code.base_ring();
    for a_idx in 0..code.codeword_count() {
        let a = ext.element_at(a_idx)?;
        let mut acc = 0u32;
        for &(pos, gamma) in symbols {
            let d = code.defining_set().element(pos)?;
            let entry = ext.generalized_trace(&ext.mul(&a, &d)?, base)?;
            acc = tables.add(acc, tables.mul(gamma, base.index_of(&entry)? as u32));
        }
        if acc != 0 {
            return Err(Error::VerificationFailed(format!(
                "dual witness fails on codeword {a_idx}"
            )));
        }
    }
    let _ = field;
    Ok(())
}

/// Exhaustive pairwise support-inclusion scan over the Gray image, one
/// representative per scalar class. A covering pair between distinct classes
/// is a genuine violation; scalar multiples share their support and are not.
pub fn minimal_codewords_check(code: &TraceCode, threads: usize) -> Result<MinimalityReport> {
    let total = code.codeword_count();
    if total > MINIMALITY_CODEWORD_CAP {
        return Err(Error::BudgetExceeded {
            required: total as u128,
            cap: MINIMALITY_CODEWORD_CAP as u128,
        });
    }
    let ext = code.defining_set().ring();
    let p = ext.p();

    // Scalar-class representatives: smallest scalar index per class.
    let mut reps: Vec<u64> = Vec::new();
    for a_idx in 1..total {
        let a = ext.element_at(a_idx)?;
        let minimal = (2..p)
            .map(|s| ext.scalar_mul(s, &a).and_then(|sa| ext.index_of(&sa)))
            .collect::<Result<Vec<u64>>>()?
            .into_iter()
            .all(|other| other >= a_idx);
        if minimal {
            reps.push(a_idx);
        }
    }

    // Gray supports as bitsets.
    let n = code.defining_set().len();
    let stride = code.base_ring().gray_length() as usize;
    let gray_len = n * stride;
    let words = gray_len.div_ceil(64);
    let k = ext.k() as usize;
    let mut supports: Vec<u64> = vec![0; reps.len() * words];
    let mut weights: Vec<u64> = vec![0; reps.len()];
    let mut scratch = vec![0u32; k];
    let mut indices = vec![0u32; n];
    for (r, &a_idx) in reps.iter().enumerate() {
        code.codeword_indices(a_idx, &mut scratch, &mut indices);
        let bits = &mut supports[r * words..(r + 1) * words];
        let mut weight = 0u64;
        for (pos, &e) in indices.iter().enumerate() {
            for (t, &digit) in code.gray_digit_slice(e as usize).iter().enumerate() {
                if digit != 0 {
                    let bit = pos * stride + t;
                    bits[bit / 64] |= 1u64 << (bit % 64);
                    weight += 1;
                }
            }
        }
        weights[r] = weight;
    }

    let w_min = *weights.iter().min().expect("nonzero codewords exist");
    let w_max = *weights.iter().max().expect("nonzero codewords exist");
    let ab_ratio_ok = ashikhmin_barg(w_min, w_max, p)?;

    let rep_count = reps.len() as u64;
    let results: Vec<Vec<CoveringPair>> = run_partitioned(rep_count, threads, |range| {
        let mut found = Vec::new();
        for i in range.start as usize..range.end as usize {
            let sup_i = &supports[i * words..(i + 1) * words];
            for j in 0..reps.len() {
                if i == j || weights[j] > weights[i] {
                    continue;
                }
                let sup_j = &supports[j * words..(j + 1) * words];
                if sup_j.iter().zip(sup_i).all(|(&b, &a)| b & !a == 0) {
                    found.push(CoveringPair {
                        covering_scalar: reps[i],
                        covered_scalar: reps[j],
                    });
                    if found.len() >= 10 {
                        return found;
                    }
                }
            }
        }
        found
    });
    let mut violations: Vec<CoveringPair> = results.into_iter().flatten().collect();
    violations.truncate(10);

    Ok(MinimalityReport {
        all_minimal: violations.is_empty(),
        violations,
        ab_ratio_ok,
        checked_classes: rep_count,
    })
}
