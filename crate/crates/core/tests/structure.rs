//! Structural checks: coordinate-permutation invariance under the unit
//! action, and randomized algebraic properties.

use chaincode_core::codes::TraceCode;
use chaincode_core::defining_sets::{DefiningSet, SetKind};
use chaincode_core::field::FieldContext;
use chaincode_core::ring::RingContext;
use proptest::prelude::*;
use std::sync::Arc;

fn build(p: u64, m: u32, k: u32, kind: SetKind, stride: Option<u64>) -> TraceCode {
    let field = Arc::new(FieldContext::new(p, m).unwrap());
    let ring = Arc::new(RingContext::new(field, k).unwrap());
    let set = match kind {
        SetKind::D1 => DefiningSet::squares(ring).unwrap(),
        SetKind::D2 => DefiningSet::units(ring).unwrap(),
        SetKind::D3 => DefiningSet::coset_representatives(ring, stride.unwrap()).unwrap(),
    };
    TraceCode::new(Arc::new(set)).unwrap()
}

#[test]
fn unit_action_preserves_the_code() {
    let squares = build(3, 2, 2, SetKind::D1, None);
    let check = squares.regular_action_check(16, 7).unwrap();
    assert!(check.ok, "{:?}", check.failure);

    let units = build(2, 2, 2, SetKind::D2, None);
    let check = units.regular_action_check(16, 7).unwrap();
    assert!(check.ok, "{:?}", check.failure);
}

#[test]
fn action_check_is_seed_deterministic() {
    let code = build(3, 2, 2, SetKind::D1, None);
    let a = code.regular_action_check(4, 99).unwrap();
    let b = code.regular_action_check(4, 99).unwrap();
    assert_eq!(a.ok, b.ok);
    assert_eq!(a.trials, b.trials);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Field axioms at random small parameters and random elements.
    #[test]
    fn field_axioms(seed in 0u64..1_000_000, pick in 0usize..5) {
        let (p, m) = [(2u64, 4u32), (3, 2), (3, 3), (5, 2), (7, 1)][pick];
        let ctx = FieldContext::new(p, m).unwrap();
        let q = ctx.q();
        let a = ctx.from_encoding(seed % q).unwrap();
        let b = ctx.from_encoding(seed / q % q).unwrap();
        let c = ctx.from_encoding(seed / (q * q) % q).unwrap();

        prop_assert_eq!(ctx.mul(a, b).unwrap(), ctx.mul(b, a).unwrap());
        prop_assert_eq!(
            ctx.mul(a, ctx.mul(b, c).unwrap()).unwrap(),
            ctx.mul(ctx.mul(a, b).unwrap(), c).unwrap()
        );
        prop_assert_eq!(
            ctx.mul(a, ctx.add(b, c).unwrap()).unwrap(),
            ctx.add(ctx.mul(a, b).unwrap(), ctx.mul(a, c).unwrap()).unwrap()
        );
        prop_assert_eq!(ctx.add(a, ctx.neg(a).unwrap()).unwrap(), ctx.zero());
    }

    /// Ring multiplication is associative and commutative under truncation.
    #[test]
    fn ring_axioms(seed in 0u64..10_000_000, pick in 0usize..4) {
        let (p, m, k) = [(2u64, 2u32, 3u32), (3, 1, 4), (3, 2, 2), (5, 1, 3)][pick];
        let field = Arc::new(FieldContext::new(p, m).unwrap());
        let ring = RingContext::new(field, k).unwrap();
        let total = ring.element_count();
        let a = ring.element_at(seed % total).unwrap();
        let b = ring.element_at(seed / 7 % total).unwrap();
        let c = ring.element_at(seed / 13 % total).unwrap();

        prop_assert_eq!(ring.mul(&a, &b).unwrap(), ring.mul(&b, &a).unwrap());
        prop_assert_eq!(
            ring.mul(&a, &ring.mul(&b, &c).unwrap()).unwrap(),
            ring.mul(&ring.mul(&a, &b).unwrap(), &c).unwrap()
        );
        prop_assert_eq!(
            ring.mul(&a, &ring.add(&b, &c).unwrap()).unwrap(),
            ring.add(&ring.mul(&a, &b).unwrap(), &ring.mul(&a, &c).unwrap()).unwrap()
        );
    }

    /// The Gray map turns homogeneous weight into Hamming weight on random
    /// vectors over the base ring.
    #[test]
    fn gray_vector_isometry(seed in 0u64..u64::MAX, pick in 0usize..4, len in 1usize..6) {
        let (p, k) = [(2u64, 2u32), (3, 2), (2, 3), (3, 3)][pick];
        let field = Arc::new(FieldContext::new(p, 1).unwrap());
        let ring = RingContext::new(field, k).unwrap();
        let total = ring.element_count();
        let mut state = seed;
        let mut vector = Vec::new();
        let mut gray = Vec::new();
        for _ in 0..len {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let el = ring.element_at(state % total).unwrap();
            gray.extend(ring.gray_digits(&el).unwrap());
            vector.push(el);
        }
        let hom = ring.hom_weight_vector(&vector).unwrap();
        let ham = gray.iter().filter(|&&d| d != 0).count() as u64;
        prop_assert_eq!(hom, ham);
    }
}
