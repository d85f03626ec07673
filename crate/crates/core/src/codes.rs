//! Trace-code construction and exact weight enumeration.
//!
//! A [`TraceCode`] is the code {(Tr(a d))_{d in D} : a in the extension
//! ring}. The enumerator walks every scalar a, evaluates every coordinate
//! through lookup tables, and histograms homogeneous weights exactly. The
//! scalar loop is data-parallel: workers own disjoint index ranges and merge
//! private histograms by addition, so results are independent of the worker
//! count.

use crate::characters::additive_character;
use crate::defining_sets::{DefiningSet, SetKind};
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::ring::{RingContext, RingElement};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashSet};
use std::ops::Range;
use std::sync::Arc;

/// Hard cap on scalar-times-coordinate evaluations for full enumerations.
pub const ENUMERATION_BUDGET: u128 = 100_000_000;

/// A codeword in ring form: one base-ring entry per defining-set element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Codeword {
    entries: Vec<RingElement>,
}

impl Codeword {
    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Exact weight -> frequency table of a full code.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize)]
pub struct WeightEnumerator {
    pairs: Vec<(u64, u64)>,
}

impl WeightEnumerator {
    pub fn from_map(map: BTreeMap<u64, u64>) -> Self {
        WeightEnumerator {
            pairs: map.into_iter().collect(),
        }
    }

    /// (weight, frequency) pairs sorted by weight.
    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn nonzero_pairs(&self) -> Vec<(u64, u64)> {
        self.pairs.iter().copied().filter(|&(w, _)| w != 0).collect()
    }

    pub fn total_frequency(&self) -> u64 {
        self.pairs.iter().map(|&(_, f)| f).sum()
    }

    pub fn frequency_of(&self, weight: u64) -> u64 {
        self.pairs
            .iter()
            .find(|&&(w, _)| w == weight)
            .map_or(0, |&(_, f)| f)
    }

    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.pairs.iter().find(|&&(w, f)| w != 0 && f != 0).map(|&(w, _)| w)
    }

    pub fn max_nonzero_weight(&self) -> Option<u64> {
        self.pairs
            .iter()
            .rev()
            .find(|&&(w, f)| w != 0 && f != 0)
            .map(|&(w, _)| w)
    }
}

/// Shape of the Gray image: [gray_length, gray_dimension, min_distance] over
/// F_p, together with the exact enumerator.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CodeSummary {
    pub kind: SetKind,
    pub ring_length: u64,
    pub gray_length: u64,
    pub code_size: u64,
    pub gray_dimension: u32,
    pub alphabet: u64,
    pub min_distance: u64,
    pub enumerator: WeightEnumerator,
}

/// Result of the coordinate-permutation invariance check.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ActionCheck {
    pub ok: bool,
    pub trials: u32,
    pub failure: Option<String>,
}

pub struct TraceCode {
    set: Arc<DefiningSet>,
    base_ring: Arc<RingContext>,
    /// Homogeneous weight by base-ring element index (classification rule).
    hom_w: Vec<u64>,
    /// Hamming weight of the Gray image by element index (digit rule).
    ham_w: Vec<u64>,
    /// Gray digits by element index, flat with stride p^{k-1}.
    gray_digits: Vec<u64>,
    /// Sum of additive-character values over the Gray digits, per element.
    theta_by_element: Vec<Complex64>,
}

/// Split 0..total into at most `threads` contiguous ranges.
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

/// Run `worker` over a partition of 0..total and collect results in range
/// order; single-threaded when one range suffices.
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
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// Base-ring element index of Tr(a d): traces of the truncated convolution
/// coefficients, packed with the t = 0 coefficient most significant.
#[inline]
fn coord_index(field: &FieldContext, trace: &[u32], p: u64, a: &[u32], d: &[u32]) -> usize {
    let mut idx = 0u64;
    for t in 0..a.len() {
        let mut s = 0u64;
        for i in 0..=t {
            s += trace[field.mul_enc(a[i], d[t - i]) as usize] as u64;
        }
        idx = idx * p + s % p;
    }
    idx as usize
}

/// Scalar index -> coefficient encodings, a_0 most significant.
#[inline]
fn decompose(mut idx: u64, q: u64, out: &mut [u32]) {
    for slot in (0..out.len()).rev() {
        out[slot] = (idx % q) as u32;
        idx /= q;
    }
}

/// Theta applied to a digit vector: the sum of omega^{digit} terms.
pub fn digit_phase_sum(digits: &[u64], p: u64) -> Complex64 {
    digits
        .iter()
        .map(|&d| additive_character(p, d))
        .sum()
}

impl TraceCode {
    pub fn new(set: Arc<DefiningSet>) -> Result<Self> {
        let ext = set.ring();
        let p = ext.p();
        let k = ext.k();
        let base_field = Arc::new(FieldContext::new(p, 1)?);
        let base_ring = Arc::new(RingContext::new(base_field, k)?);

        let count = base_ring.element_count() as usize;
        let stride = base_ring.gray_length() as usize;
        let mut hom_w = Vec::with_capacity(count);
        let mut ham_w = Vec::with_capacity(count);
        let mut gray_digits = Vec::with_capacity(count * stride);
        let mut theta_by_element = Vec::with_capacity(count);
        for idx in 0..base_ring.element_count() {
            let el = base_ring.element_at(idx)?;
            hom_w.push(base_ring.hom_weight(&el)?);
            let digits = base_ring.gray_digits(&el)?;
            ham_w.push(digits.iter().filter(|&&d| d != 0).count() as u64);
            theta_by_element.push(digit_phase_sum(&digits, p));
            gray_digits.extend_from_slice(&digits);
        }

        Ok(TraceCode {
            set,
            base_ring,
            hom_w,
            ham_w,
            gray_digits,
            theta_by_element,
        })
    }

    pub fn defining_set(&self) -> &Arc<DefiningSet> {
        &self.set
    }

    /// Homogeneous weight by base-ring element index.
    pub(crate) fn hom_weight_table(&self) -> &[u64] {
        &self.hom_w
    }

    /// Gray digits of one base-ring element, by element index.
    pub(crate) fn gray_digit_slice(&self, element_index: usize) -> &[u64] {
        let stride = self.base_ring.gray_length() as usize;
        &self.gray_digits[element_index * stride..(element_index + 1) * stride]
    }

    pub fn base_ring(&self) -> &Arc<RingContext> {
        &self.base_ring
    }

    /// Number of codewords, p^{km} (one per extension-ring scalar).
    pub fn codeword_count(&self) -> u64 {
        self.set.ring().element_count()
    }

    pub fn ring_length(&self) -> u64 {
        self.set.len() as u64
    }

    pub fn gray_length(&self) -> u64 {
        self.ring_length() * self.base_ring.gray_length()
    }

    fn enumeration_cost(&self) -> u128 {
        self.codeword_count() as u128 * self.ring_length() as u128
    }

    fn check_budget(&self) -> Result<()> {
        let required = self.enumeration_cost();
        if required > ENUMERATION_BUDGET {
            return Err(Error::BudgetExceeded {
                required,
                cap: ENUMERATION_BUDGET,
            });
        }
        Ok(())
    }

    /// The codeword (Tr(a d))_{d in D}.
    pub fn evaluate(&self, a: &RingElement) -> Result<Codeword> {
        let ext = self.set.ring();
        let entries = (0..self.set.len())
            .map(|i| {
                let d = self.set.element(i)?;
                ext.generalized_trace(&ext.mul(a, &d)?, &self.base_ring)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Codeword { entries })
    }

    /// Gray image of a codeword as digits mod p.
    pub fn gray_codeword(&self, cw: &Codeword) -> Result<Vec<u64>> {
        let mut out = Vec::with_capacity((cw.len() as u64 * self.base_ring.gray_length()) as usize);
        for entry in &cw.entries {
            out.extend(self.base_ring.gray_digits(entry)?);
        }
        Ok(out)
    }

    /// Base-ring element indices of the codeword for scalar index `a_idx`,
    /// written into `out` (one entry per defining-set position).
    pub(crate) fn codeword_indices(&self, a_idx: u64, scratch: &mut [u32], out: &mut [u32]) {
        let ext = self.set.ring();
        let field = ext.field();
        let trace = field.trace_table();
        let p = ext.p();
        decompose(a_idx, field.q(), scratch);
        for (slot, di) in out.iter_mut().zip(0..self.set.len()) {
            *slot = coord_index(field, trace, p, scratch, self.set.packed(di)) as u32;
        }
    }

    /// Exact homogeneous weight histogram over all p^{km} scalars.
    pub fn hom_weight_enumerator(&self, threads: usize) -> Result<WeightEnumerator> {
        self.check_budget()?;
        let (hom, _) = self.dual_route_histograms(threads);
        Ok(WeightEnumerator::from_map(hom))
    }

    /// Histograms from the two independent weight routes: the classification
    /// rule (homogeneous) and the materialized Gray digits (Hamming).
    fn dual_route_histograms(&self, threads: usize) -> (BTreeMap<u64, u64>, BTreeMap<u64, u64>) {
        let ext = self.set.ring();
        let field = ext.field();
        let trace = field.trace_table();
        let p = ext.p();
        let q = field.q();
        let k = ext.k() as usize;
        let n = self.set.len();

        let results = run_partitioned(self.codeword_count(), threads, |range| {
            let mut hom = BTreeMap::new();
            let mut ham = BTreeMap::new();
            let mut a = vec![0u32; k];
            for a_idx in range {
                decompose(a_idx, q, &mut a);
                let mut w_hom = 0u64;
                let mut w_ham = 0u64;
                for di in 0..n {
                    let idx = coord_index(field, trace, p, &a, self.set.packed(di));
                    w_hom += self.hom_w[idx];
                    w_ham += self.ham_w[idx];
                }
                *hom.entry(w_hom).or_insert(0u64) += 1;
                *ham.entry(w_ham).or_insert(0u64) += 1;
            }
            (hom, ham)
        });

        let mut hom = BTreeMap::new();
        let mut ham = BTreeMap::new();
        for (h1, h2) in results {
            for (w, f) in h1 {
                *hom.entry(w).or_insert(0) += f;
            }
            for (w, f) in h2 {
                *ham.entry(w).or_insert(0) += f;
            }
        }
        (hom, ham)
    }

    /// Full summary of the Gray image. Verifies that the Gray-Hamming route
    /// agrees with the homogeneous route and that the evaluation map is
    /// injective (weight zero exactly once); both failures are reported as
    /// errors, never absorbed.
    pub fn gray_summary(&self, threads: usize) -> Result<CodeSummary> {
        self.check_budget()?;
        let (hom, ham) = self.dual_route_histograms(threads);
        if hom != ham {
            return Err(Error::VerificationFailed(
                "Gray-image Hamming distribution differs from the homogeneous distribution".into(),
            ));
        }
        let enumerator = WeightEnumerator::from_map(hom);
        if enumerator.frequency_of(0) != 1 {
            return Err(Error::VerificationFailed(format!(
                "evaluation map is not injective: weight 0 occurs {} times",
                enumerator.frequency_of(0)
            )));
        }
        let ext = self.set.ring();
        let min_distance = enumerator.min_nonzero_weight().unwrap_or(0);
        Ok(CodeSummary {
            kind: self.set.kind(),
            ring_length: self.ring_length(),
            gray_length: self.gray_length(),
            code_size: self.codeword_count(),
            gray_dimension: ext.k() * ext.field().m(),
            alphabet: ext.p(),
            min_distance,
            enumerator,
        })
    }

    /// Theta applied to the Gray image of the codeword of `a`.
    pub fn theta_sum(&self, a: &RingElement) -> Result<Complex64> {
        let ext = self.set.ring();
        let field = ext.field();
        let trace = field.trace_table();
        let p = ext.p();
        let encs = ext.coeff_encodings(a)?;
        let packed: Vec<u32> = encs.iter().map(|&e| e as u32).collect();
        let mut sum = Complex64::new(0.0, 0.0);
        for di in 0..self.set.len() {
            sum += self.theta_by_element[coord_index(field, trace, p, &packed, self.set.packed(di))];
        }
        Ok(sum)
    }

    /// For random unit pairs (u', v') from the defining set, checks that
    /// x -> (u'/v') x permutes the set and that the induced coordinate
    /// permutation maps the codeword set onto itself (exhaustive comparison).
    pub fn regular_action_check(&self, trials: u32, seed: u64) -> Result<ActionCheck> {
        self.check_budget()?;
        let ext = self.set.ring();
        let n = self.set.len();
        let k = ext.k() as usize;
        let q = ext.field().q();

        // Materialize the codeword set once, as base-ring index vectors.
        let mut scratch = vec![0u32; k];
        let mut words: Vec<Vec<u32>> = Vec::with_capacity(self.codeword_count() as usize);
        for a_idx in 0..self.codeword_count() {
            let mut w = vec![0u32; n];
            self.codeword_indices(a_idx, &mut scratch, &mut w);
            words.push(w);
        }
        let word_set: HashSet<&[u32]> = words.iter().map(|w| w.as_slice()).collect();
        let positions = self.set.position_map();

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for trial in 0..trials {
            let u_pos = rng.gen_range(0..n);
            let v_pos = rng.gen_range(0..n);
            let u = self.set.element(u_pos)?;
            let v = self.set.element(v_pos)?;
            let g = ext.mul(&u, &ext.inv(&v)?)?;

            let mut perm = vec![0usize; n];
            let mut seen = vec![false; n];
            for (j, slot) in perm.iter_mut().enumerate() {
                let image = ext.mul(&g, &self.set.element(j)?)?;
                let encs = ext.coeff_encodings(&image)?;
                let key: Vec<u32> = encs.iter().map(|&e| e as u32).collect();
                match positions.get(&key) {
                    Some(&pos) if !seen[pos] => {
                        seen[pos] = true;
                        *slot = pos;
                    }
                    Some(_) => {
                        return Ok(ActionCheck {
                            ok: false,
                            trials: trial + 1,
                            failure: Some(format!(
                                "multiplication by element {u_pos}/{v_pos} is not injective on the set"
                            )),
                        })
                    }
                    None => {
                        return Ok(ActionCheck {
                            ok: false,
                            trials: trial + 1,
                            failure: Some(format!(
                                "multiplication by element {u_pos}/{v_pos} leaves the set"
                            )),
                        })
                    }
                }
            }

            let mut permuted = vec![0u32; n];
            for word in &words {
                for (j, &pj) in perm.iter().enumerate() {
                    permuted[j] = word[pj];
                }
                if !word_set.contains(permuted.as_slice()) {
                    return Ok(ActionCheck {
                        ok: false,
                        trials: trial + 1,
                        failure: Some(format!(
                            "coordinate permutation from pair ({u_pos}, {v_pos}) does not preserve the code"
                        )),
                    });
                }
            }
        }
        let _ = q;
        Ok(ActionCheck {
            ok: true,
            trials,
            failure: None,
        })
    }

    /// Ring-form dump line: coordinates comma-separated, coefficients of one
    /// ring element joined by '|' (field elements as coefficient tuples).
    pub fn format_ring_codeword(&self, cw: &Codeword) -> Result<String> {
        let parts = cw
            .entries
            .iter()
            .map(|entry| {
                let coeffs = self.base_ring.coeff_encodings(entry)?;
                Ok(coeffs
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join("|"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(parts.join(","))
    }

    /// Gray-form dump line: one alphanumeric digit per coordinate.
    pub fn format_gray_codeword(&self, cw: &Codeword) -> Result<String> {
        let digits = self.gray_codeword(cw)?;
        digits
            .iter()
            .map(|&d| char::from_digit(d as u32, 36).ok_or(Error::Overflow("gray digit alphabet")))
            .collect()
    }
}
