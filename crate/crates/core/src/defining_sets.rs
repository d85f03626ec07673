//! Deterministic construction of the three defining sets inside the
//! extension ring: squares-with-full-fibers (D1), the full unit group (D2),
//! and coset-representatives-with-full-fibers (D3).
//!
//! Element order is part of the external contract (codeword dumps index
//! coordinates by it): x_0 runs through its defining sequence first, then the
//! fiber coordinates x_1..x_{k-1} in lexicographic coefficient-encoding
//! order with x_1 varying slowest.

use crate::error::{Error, Result};
use crate::ring::{RingContext, RingElement};
use num_integer::Integer;
use std::collections::HashMap;
use std::sync::Arc;

/// Refuse to materialize sets beyond this many elements.
pub const MAX_SET_ELEMENTS: u64 = 4_000_000;

/// Which defining-set family a set belongs to (the `--set` CLI vocabulary).
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    D1,
    D2,
    D3,
}

impl std::fmt::Display for SetKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SetKind::D1 => "d1",
            SetKind::D2 => "d2",
            SetKind::D3 => "d3",
        })
    }
}

/// Parameters of the coset-representative construction: the exponent stride
/// N', N'_1 = lcm(N', (q-1)/(p-1)), N'_2 = gcd(N', (q-1)/(p-1)) and the
/// representative count n_1 = N'_1 / N'.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct CosetParams {
    pub stride: u64,
    pub stride_lcm: u64,
    pub char_order: u64,
    pub rep_count: u64,
}

/// A materialized defining set: an ordered, duplicate-free list of extension
/// ring elements, stored flat (k field encodings per element).
pub struct DefiningSet {
    kind: SetKind,
    ring: Arc<RingContext>,
    data: Vec<u32>,
    params: Option<CosetParams>,
}

impl std::fmt::Debug for DefiningSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DefiningSet")
            .field("kind", &self.kind)
            .field("len", &self.len())
            .field("params", &self.params)
            .finish()
    }
}

impl DefiningSet {
    /// D1: x_0 over the nonzero squares (even powers of alpha in increasing
    /// exponent), full fibers above. Size p^{(k-1)m} (p^m - 1) / 2.
    pub fn squares(ring: Arc<RingContext>) -> Result<Self> {
        if ring.p() == 2 {
            return Err(Error::SquaresNeedOddCharacteristic);
        }
        let field = ring.field().clone();
        let q = field.q();
        let x0: Vec<u32> = (0..q - 1)
            .step_by(2)
            .map(|t| field.encoding(field.power_of_alpha(t)).expect("own element") as u32)
            .collect();
        Self::build(SetKind::D1, ring, &x0, None)
    }

    /// D2: the whole unit group, x_0 over all powers of alpha in increasing
    /// exponent. Size p^{(k-1)m} (p^m - 1).
    pub fn units(ring: Arc<RingContext>) -> Result<Self> {
        let field = ring.field().clone();
        let q = field.q();
        let x0: Vec<u32> = (0..q - 1)
            .map(|t| field.encoding(field.power_of_alpha(t)).expect("own element") as u32)
            .collect();
        Self::build(SetKind::D2, ring, &x0, None)
    }

    /// D3: x_0 over the coset representatives alpha^{stride (j-1)},
    /// j = 1..n_1, full fibers above. `stride` must divide p^m - 1.
    pub fn coset_representatives(ring: Arc<RingContext>, stride: u64) -> Result<Self> {
        let field = ring.field().clone();
        let q = field.q();
        let p = field.p();
        let group_order = q - 1;
        if stride == 0 || group_order % stride != 0 {
            return Err(Error::NotADivisor {
                n: stride,
                order: group_order,
            });
        }
        let index = group_order / (p - 1);
        let stride_lcm = stride.lcm(&index);
        let char_order = stride.gcd(&index);
        let rep_count = stride_lcm / stride;
        let x0: Vec<u32> = (0..rep_count)
            .map(|j| {
                field
                    .encoding(field.power_of_alpha(stride * j))
                    .expect("own element") as u32
            })
            .collect();
        Self::build(
            SetKind::D3,
            ring,
            &x0,
            Some(CosetParams {
                stride,
                stride_lcm,
                char_order,
                rep_count,
            }),
        )
    }

    fn build(
        kind: SetKind,
        ring: Arc<RingContext>,
        x0: &[u32],
        params: Option<CosetParams>,
    ) -> Result<Self> {
        let q = ring.field().q();
        let k = ring.k() as usize;
        let fibers = q.pow(ring.k() - 1);
        let size = x0.len() as u64 * fibers;
        if size > MAX_SET_ELEMENTS {
            return Err(Error::BudgetExceeded {
                required: size as u128,
                cap: MAX_SET_ELEMENTS as u128,
            });
        }
        let mut data = Vec::with_capacity(size as usize * k);
        for &head in x0 {
            for fiber in 0..fibers {
                data.push(head);
                // x_1 is the slowest-varying fiber coordinate.
                let mut rest = fiber;
                let mut tail = vec![0u32; k - 1];
                for slot in (0..k - 1).rev() {
                    tail[slot] = (rest % q) as u32;
                    rest /= q;
                }
                data.extend_from_slice(&tail);
            }
        }
        Ok(DefiningSet {
            kind,
            ring,
            data,
            params,
        })
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn params(&self) -> Option<&CosetParams> {
        self.params.as_ref()
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.ring.k() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Field encodings of the i-th element's coefficients.
    pub(crate) fn packed(&self, i: usize) -> &[u32] {
        let k = self.ring.k() as usize;
        &self.data[i * k..(i + 1) * k]
    }

    pub fn element(&self, i: usize) -> Result<RingElement> {
        if i >= self.len() {
            return Err(Error::ContextMismatch);
        }
        let encs: Vec<u64> = self.packed(i).iter().map(|&e| e as u64).collect();
        self.ring.from_encodings(&encs)
    }

    pub fn iter(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.len()).map(move |i| self.element(i).expect("index in range"))
    }

    /// Position of each element, for permutation checks.
    pub fn position_map(&self) -> HashMap<Vec<u32>, usize> {
        (0..self.len())
            .map(|i| (self.packed(i).to_vec(), i))
            .collect()
    }

    pub fn position_of(&self, el: &RingElement) -> Result<Option<usize>> {
        let encs = self.ring.coeff_encodings(el)?;
        let packed: Vec<u32> = encs.iter().map(|&e| e as u32).collect();
        Ok((0..self.len()).find(|&i| self.packed(i) == packed.as_slice()))
    }
}
