mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{batch_slots, fold, modulus, oracle_tag, sig_value, single_sig, singles, slot_values};
use nested_cff::agg::{
    bounded_agg, bounded_verify, exclusively_mergeable, lambda_robust_verify, merge, unbounded_agg,
    unbounded_verify, AggError, AggregateScheme, Claim, ClaimSequence, MockScheme, MockSignature,
    Signed,
};
use nested_cff::binmat::{catalog, sperner_matrix};
use nested_cff::costs::verify_multiplications;
use nested_cff::nested::{
    sperner_nested_level, IngredientPolicy, NestedFamily, NestedFamilySpec, RowProvenance,
};

fn claim(tag: &str) -> Claim {
    Claim::new(
        format!("pk-{tag}").into_bytes(),
        format!("msg-{tag}").into_bytes(),
    )
    .unwrap()
}

fn to_u128(v: &BigUint) -> u128 {
    v.to_u64_digits()
        .iter()
        .rev()
        .fold(0u128, |acc, &d| (acc << 64) | d as u128)
}

/// Aggregates `items` along a random binary tree.
fn random_tree<F>(
    items: &[Signed<MockSignature>],
    rng: &mut ChaCha8Rng,
    mut step: F,
) -> Signed<MockSignature>
where
    F: FnMut(&Signed<MockSignature>, &Signed<MockSignature>) -> Signed<MockSignature>,
{
    let mut pool: Vec<_> = items.to_vec();
    while pool.len() > 1 {
        let i = rng.gen_range(0..pool.len());
        let a = pool.swap_remove(i);
        let j = rng.gen_range(0..pool.len());
        let b = pool.swap_remove(j);
        pool.push(step(&a, &b));
    }
    pool.pop().unwrap()
}

fn families() -> Vec<NestedFamily> {
    let fig = catalog::two_cff_9x12();
    vec![
        NestedFamily::new(NestedFamilySpec::Sperner1).unwrap(),
        NestedFamily::new(NestedFamilySpec::KroneckerNested {
            seed: fig.clone(),
            d: 2,
            lambda: 1,
        })
        .unwrap(),
        NestedFamily::new(NestedFamilySpec::Const1Nested {
            seed: fig,
            d: 2,
            lambda: 1,
            policy: IngredientPolicy::Sperner,
        })
        .unwrap(),
    ]
}

#[test]
fn merge_and_row_selection() {
    let entries = |ps: &[usize]| {
        let mut c = ClaimSequence::new();
        for &p in ps {
            c.set(p - 1, Some(claim(&p.to_string())));
        }
        c
    };
    let a = entries(&[1, 5, 9]);
    let b = entries(&[2, 8, 10]);
    assert!(exclusively_mergeable(&a, &b));
    let m = merge(&a, &b).unwrap();
    assert_eq!(
        m.support().map(|p| p + 1).collect::<Vec<_>>(),
        vec![1, 2, 5, 8, 9, 10]
    );
    let row = m.select_row(&catalog::one_cff_5x10(), 2);
    assert_eq!(
        row.support().map(|p| p + 1).collect::<Vec<_>>(),
        vec![2, 5, 8, 9]
    );

    let mut clash = entries(&[5]);
    clash.set(4, Some(claim("other")));
    assert!(!exclusively_mergeable(&a, &clash));
    assert_eq!(
        merge(&a, &clash),
        Err(AggError::NotExclusivelyMergeable { position: 4 })
    );
}

#[test]
fn slots_are_sums_over_rows() {
    let m = catalog::one_cff_5x10();
    let items = singles(10, &BTreeSet::new(), 4);
    let chosen: Vec<_> = [0, 1, 4, 7, 8, 9]
        .iter()
        .map(|&j| items[j].clone())
        .collect();
    let sub = fold(&chosen, |a, b| bounded_agg(&m, &MockScheme, a, b).unwrap());
    let tau = slot_values(sub.slots().unwrap());
    // Slot 3 covers columns 2, 5, 8, 9 (1-based), recomputed from the raw tags.
    let expected: BigUint = [1usize, 4, 7, 8]
        .iter()
        .map(|&j| {
            let (_, c) = items[j].claims.single_claim().unwrap();
            oracle_tag(c.pk(), c.msg())
        })
        .sum::<BigUint>()
        % modulus();
    assert_eq!(tau[3], to_u128(&expected));

    let all = fold(&items, |a, b| bounded_agg(&m, &MockScheme, a, b).unwrap());
    let first_row: BigUint = items[..4]
        .iter()
        .map(|s| sig_value(&single_sig(s)))
        .sum::<BigUint>()
        % modulus();
    assert_eq!(slot_values(all.slots().unwrap())[1], to_u128(&first_row));
    assert_eq!(slot_values(all.slots().unwrap()), batch_slots(&m, &items));
}

#[test]
fn bounded_single_faults_are_found() {
    let m = catalog::one_cff_5x10();
    for bad in (0..10).map(Some).chain([None]) {
        let bad_set: BTreeSet<usize> = bad.into_iter().collect();
        let items = singles(10, &bad_set, 8);
        let all = fold(&items, |a, b| bounded_agg(&m, &MockScheme, a, b).unwrap());
        let out = bounded_verify(&m, 1, &MockScheme, &all).unwrap();
        assert_eq!(out.invalid, bad_set);
        assert_eq!(out.valid.len() + out.invalid.len(), 10);
        assert_eq!(out.fast_path, bad.is_none());
        assert!(!out.guarantee_void);
    }
}

#[test]
fn duplicate_claims_are_rejected() {
    let m = catalog::one_cff_5x10();
    let items = singles(3, &BTreeSet::new(), 1);
    assert_eq!(
        bounded_agg(&m, &MockScheme, &items[0], &items[0]),
        Err(AggError::DuplicateClaim { position: 0 })
    );
    let mut f = NestedFamily::new(NestedFamilySpec::Sperner1).unwrap();
    f.ensure_covering(3).unwrap();
    assert!(matches!(
        unbounded_agg(&f, &MockScheme, &items[1], &items[1]),
        Err(AggError::DuplicateClaim { .. })
    ));
}

/// Checks that aggregating a short and a long input fills every slot of the
/// longer level as a batch aggregation would, and reports the provenance
/// of the added rows.
fn level_step(f: &mut NestedFamily, lo_cols: usize, hi_cols: usize) -> Vec<RowProvenance> {
    let lo = f.ensure_covering(lo_cols).unwrap();
    let hi = f.ensure_covering(hi_cols).unwrap();
    let items = singles(hi_cols, &BTreeSet::new(), 6);
    let short = fold(&items[..lo_cols], |a, b| {
        unbounded_agg(f, &MockScheme, a, b).unwrap()
    });
    let long = fold(&items[lo_cols..], |a, b| {
        unbounded_agg(f, &MockScheme, a, b).unwrap()
    });
    assert_eq!(short.slots().unwrap().rows(), f.matrix(lo).unwrap().rows());
    let both = unbounded_agg(f, &MockScheme, &short, &long).unwrap();
    assert_eq!(
        slot_values(both.slots().unwrap()),
        batch_slots(f.matrix(hi).unwrap(), &items)
    );
    assert!(unbounded_verify(f, &MockScheme, &both).unwrap().all_valid());
    f.provenance_between(lo, hi).unwrap()
}

#[test]
fn zero_one_and_repeat_rows() {
    let mut s = NestedFamily::new(NestedFamilySpec::Sperner1).unwrap();
    assert_eq!(level_step(&mut s, 6, 10), vec![RowProvenance::Zero]);
    assert_eq!(level_step(&mut s, 10, 20), vec![RowProvenance::One]);
    let fig = catalog::two_cff_9x12();
    let mut k = NestedFamily::new(NestedFamilySpec::KroneckerNested {
        seed: fig,
        d: 2,
        lambda: 1,
    })
    .unwrap();
    let tags = level_step(&mut k, 12, 30);
    assert!(tags.iter().any(|t| matches!(t, RowProvenance::Repeat(_))));
    assert!(tags.contains(&RowProvenance::Zero));
}

#[test]
fn a_single_signature_in_a_large_family() {
    let mut f = NestedFamily::new(NestedFamilySpec::Sperner1).unwrap();
    f.ensure_covering(30).unwrap();
    let items = singles(30, &BTreeSet::from([29]), 2);
    let out = unbounded_verify(&f, &MockScheme, &items[29]).unwrap();
    assert_eq!(out.invalid, BTreeSet::from([29]));
    let out = unbounded_verify(&f, &MockScheme, &items[3]).unwrap();
    assert!(out.all_valid() && out.fast_path && out.scheme_calls == 1);
}

#[test]
fn lambda_robust_rows() {
    let spec = NestedFamilySpec::RowRepeated {
        base: Box::new(NestedFamilySpec::Sperner1),
        copies: 2,
    };
    let mut f = NestedFamily::new(spec).unwrap();
    let k = f.ensure_covering(15).unwrap();
    let t = f.matrix(k).unwrap().rows();
    let items = singles(15, &BTreeSet::from([6]), 3);
    let all = fold(&items, |a, b| unbounded_agg(&f, &MockScheme, a, b).unwrap());
    for drop in 0..=t {
        let out = lambda_robust_verify(&f, &MockScheme, &all, &BTreeSet::from([drop])).unwrap();
        assert_eq!(out.invalid, BTreeSet::from([6]), "slot {drop} dropped");
    }
    let too_many = lambda_robust_verify(&f, &MockScheme, &all, &BTreeSet::from([1, 2]));
    assert_eq!(
        too_many,
        Err(AggError::RobustnessExceeded {
            missing: 2,
            lambda: 2
        })
    );
    assert!(matches!(
        lambda_robust_verify(&f, &MockScheme, &all, &BTreeSet::from([t + 1])),
        Err(AggError::SlotOutOfRange { .. })
    ));
}

#[test]
fn multiplication_count_for_a_full_sperner_level() {
    let level = sperner_nested_level(13).unwrap();
    assert_eq!(level.cols(), 1716);
    let c = verify_multiplications(&level.matrix, 1716);
    assert!(c.row_weights.iter().all(|&w| w == 792));
    assert_eq!(c.total, 1716 - 13 + 13 * 792);
    let m = sperner_matrix(10);
    let c = verify_multiplications(&m, 10);
    assert_eq!(c.row_weights.iter().sum::<usize>(), 20);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scheme_laws(seeds in proptest::collection::vec(any::<[u8; 8]>(), 1..6), x in any::<u128>(), y in any::<u128>(), z in any::<u128>()) {
        let s = MockScheme;
        let (a, b, c) = (MockSignature::new(x), MockSignature::new(y), MockSignature::new(z));
        prop_assert_eq!(s.aggregate(&a, &b), s.aggregate(&b, &a));
        prop_assert_eq!(s.aggregate(&s.aggregate(&a, &b), &c), s.aggregate(&a, &s.aggregate(&b, &c)));
        prop_assert_eq!(s.aggregate(&a, &s.empty()), a);
        let expected = (BigUint::from(a.value()) + BigUint::from(b.value())) % modulus();
        prop_assert_eq!(s.aggregate(&a, &b).value(), to_u128(&expected));
        prop_assert_eq!(MockSignature::from_bytes(&a.to_bytes()), Some(a));

        let mut claims = ClaimSequence::new();
        let mut sigs = Vec::new();
        for (j, seed) in seeds.iter().enumerate() {
            let (pk, sk) = s.keygen(seed);
            let msg = format!("m{j}").into_bytes();
            let sig = s.sign(&sk, &msg);
            prop_assert_eq!(BigUint::from(sig.value()), oracle_tag(&pk, &msg));
            claims.set(j, Some(Claim::new(pk, msg).unwrap()));
            sigs.push(sig);
        }
        let agg = s.aggregate_all(&sigs);
        prop_assert!(s.verify(&claims, &agg));
        prop_assert!(!s.verify(&claims, &s.aggregate(&agg, &MockSignature::new(1))));
        let mut tampered = claims.clone();
        let (pos, c) = claims.claims().next().map(|(p, c)| (p, c.clone())).unwrap();
        tampered.set(pos, Some(Claim::new(c.pk().to_vec(), b"tampered".to_vec()).unwrap()));
        prop_assert!(!s.verify(&tampered, &agg));
    }

    #[test]
    fn fast_path_is_sound(n in 1usize..40, bad in proptest::collection::btree_set(0usize..40, 0..3), seed in any::<u64>()) {
        let bad: BTreeSet<usize> = bad.into_iter().filter(|&b| b < n).collect();
        let mut f = NestedFamily::new(NestedFamilySpec::Sperner1).unwrap();
        f.ensure_covering(n).unwrap();
        let items = singles(n, &bad, seed);
        let all = fold(&items, |a, b| unbounded_agg(&f, &MockScheme, a, b).unwrap());
        let out = unbounded_verify(&f, &MockScheme, &all).unwrap();
        prop_assert_eq!(out.fast_path, bad.is_empty());
        if bad.len() <= 1 {
            prop_assert_eq!(&out.invalid, &bad);
        }
        prop_assert_eq!(out.guarantee_void, bad.len() > 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn order_and_grouping_do_not_matter(kind in 0usize..3, n in 2usize..50, seed in any::<u64>()) {
        let mut f = families().swap_remove(kind);
        let k = f.ensure_covering(n).unwrap();
        let items = singles(n, &BTreeSet::new(), seed);
        let batch = batch_slots(f.matrix(k).unwrap(), &items);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_tree(&items, &mut rng, |a, b| unbounded_agg(&f, &MockScheme, a, b).unwrap());
        prop_assert_eq!(slot_values(tree.slots().unwrap()), batch.clone());
        let mut shuffled = items.clone();
        shuffled.shuffle(&mut rng);
        let chain = fold(&shuffled, |a, b| unbounded_agg(&f, &MockScheme, a, b).unwrap());
        prop_assert_eq!(slot_values(chain.slots().unwrap()), batch);
        prop_assert!(unbounded_verify(&f, &MockScheme, &chain).unwrap().all_valid());
    }

    #[test]
    fn bounded_matches_batch_and_finds_faults(bad in proptest::collection::btree_set(0usize..12, 0..=2), seed in any::<u64>()) {
        let m = catalog::two_cff_9x12();
        let items = singles(12, &bad, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all = random_tree(&items, &mut rng, |a, b| bounded_agg(&m, &MockScheme, a, b).unwrap());
        prop_assert_eq!(slot_values(all.slots().unwrap()), batch_slots(&m, &items));
        let out = bounded_verify(&m, 2, &MockScheme, &all).unwrap();
        prop_assert_eq!(out.invalid, bad);
    }
}
