//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{batch_slots, choose, fold, permutation_oracle, singles, slot_values};
use nested_cff::agg::{
    bounded_agg, bounded_verify, lambda_robust_verify, unbounded_agg, unbounded_verify,
    AggregateScheme, Claim, ClaimSequence, MockScheme, MockSignature, Signed, VerifyOutcome,
};
use nested_cff::binmat::{catalog, const1, is_d_cff, is_d_lambda_cff, kronecker, sperner_matrix};
use nested_cff::costs::{estimate, FamilyChoice};
use nested_cff::nested::{verify_nesting, IngredientPolicy, NestedFamily, NestedFamilySpec};

const LIMIT_FIG_CHECK: Duration = Duration::from_secs(1);
const LIMIT_SINGLE_FAULTS: Duration = Duration::from_secs(30);
const LIMIT_DOUBLE_FAULTS: Duration = Duration::from_secs(120);
const LIMIT_CONST1_CHECK: Duration = Duration::from_secs(300);

const RANDOM_DOUBLE_FAULTS: usize = 500;
const ORDERS_PER_KIND: usize = 100;
const MAX_ORDER_N: usize = 50;
const SCHEME_CASES: usize = 1000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(format!("{took:.2?} (limit {limit:?})"))
}

fn fig_family() -> NestedFamilySpec {
    NestedFamilySpec::KroneckerNested {
        seed: catalog::two_cff_9x12(),
        d: 2,
        lambda: 1,
    }
}

fn const1_family() -> NestedFamilySpec {
    NestedFamilySpec::Const1Nested {
        seed: catalog::two_cff_9x12(),
        d: 2,
        lambda: 1,
        policy: IngredientPolicy::Sperner,
    }
}

fn exact(out: &VerifyOutcome, n: usize, bad: &BTreeSet<usize>) -> bool {
    let valid: BTreeSet<usize> = (0..n).filter(|j| !bad.contains(j)).collect();
    out.invalid == *bad && out.valid == valid
}

/// Aggregates `items` in a random arrival order.
fn shuffled_fold<F>(
    items: &[Signed<MockSignature>],
    rng: &mut ChaCha8Rng,
    step: F,
) -> Signed<MockSignature>
where
    F: FnMut(&Signed<MockSignature>, &Signed<MockSignature>) -> Signed<MockSignature>,
{
    let mut order = items.to_vec();
    order.shuffle(rng);
    fold(&order, step)
}

fn fig_regression() -> Outcome {
    let start = Instant::now();
    let fig = catalog::two_cff_9x12();
    ensure(fig.rows() == 9 && fig.cols() == 12, || {
        "wrong dimensions".into()
    })?;
    ensure(is_d_cff(&fig, 2), || "not a 2-CFF".into())?;
    ensure(!is_d_cff(&fig, 3), || "unexpectedly a 3-CFF".into())?;
    let triples = choose(&(0..12).collect::<Vec<_>>(), 3).len();
    ensure(triples == 220 && permutation_oracle(&fig, 2), || {
        "permutation oracle disagrees".into()
    })?;
    Ok(format!("220 triples, {}", within(start, LIMIT_FIG_CHECK)?))
}

fn sperner_reproduction() -> Outcome {
    ensure(sperner_matrix(10) == catalog::one_cff_5x10(), || {
        "matrices differ".into()
    })?;
    Ok("5x10 bit-for-bit".into())
}

fn single_faults() -> Outcome {
    let start = Instant::now();
    let mut family = NestedFamily::new(NestedFamilySpec::Sperner1).unwrap();
    family.ensure_covering(35).unwrap();
    let mut cases = 0;
    for n in 2..=35 {
        let k = family.covering(n).unwrap();
        let m = family.matrix(k).unwrap();
        for j in 0..n {
            let bad = BTreeSet::from([j]);
            let items = singles(n, &bad, (n * 100 + j) as u64);
            let b = fold(&items, |x, y| bounded_agg(m, &MockScheme, x, y).unwrap());
            let u = fold(&items, |x, y| {
                unbounded_agg(&family, &MockScheme, x, y).unwrap()
            });
            let bo = bounded_verify(m, 1, &MockScheme, &b).unwrap();
            let uo = unbounded_verify(&family, &MockScheme, &u).unwrap();
            ensure(exact(&bo, n, &bad), || {
                format!("bounded n={n} fault={}", j + 1)
            })?;
            ensure(exact(&uo, n, &bad), || {
                format!("unbounded n={n} fault={}", j + 1)
            })?;
            cases += 1;
        }
    }
    Ok(format!(
        "{cases}/{cases} cases exact, {}",
        within(start, LIMIT_SINGLE_FAULTS)?
    ))
}

fn double_faults() -> Outcome {
    let start = Instant::now();
    let mut family = NestedFamily::new(fig_family()).unwrap();
    family.ensure_levels(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);

    let positions: Vec<usize> = (0..12).collect();
    let subsets: Vec<Vec<usize>> = choose(&positions, 1)
        .into_iter()
        .chain(choose(&positions, 2))
        .collect();
    ensure(subsets.len() == 78, || format!("{} subsets", subsets.len()))?;
    for (idx, s) in subsets.iter().enumerate() {
        let bad: BTreeSet<usize> = s.iter().copied().collect();
        let items = singles(12, &bad, idx as u64);
        let agg = shuffled_fold(&items, &mut rng, |x, y| {
            unbounded_agg(&family, &MockScheme, x, y).unwrap()
        });
        let out = unbounded_verify(&family, &MockScheme, &agg).unwrap();
        ensure(exact(&out, 12, &bad), || format!("level 1 faults {bad:?}"))?;
        let out = bounded_verify(family.matrix(1).unwrap(), 2, &MockScheme, &agg).unwrap();
        ensure(exact(&out, 12, &bad), || {
            format!("level 1 bounded faults {bad:?}")
        })?;
    }

    for case in 0..RANDOM_DOUBLE_FAULTS {
        let a = rng.gen_range(0..144);
        let b = (a + rng.gen_range(1..144)) % 144;
        let bad = BTreeSet::from([a, b]);
        let items = singles(144, &bad, 1000 + case as u64);
        let agg = shuffled_fold(&items, &mut rng, |x, y| {
            unbounded_agg(&family, &MockScheme, x, y).unwrap()
        });
        let out = unbounded_verify(&family, &MockScheme, &agg).unwrap();
        ensure(exact(&out, 144, &bad), || format!("level 2 faults {bad:?}"))?;
    }
    Ok(format!(
        "78 + {RANDOM_DOUBLE_FAULTS} cases exact, {}",
        within(start, LIMIT_DOUBLE_FAULTS)?
    ))
}

fn incremental_vs_batch() -> Outcome {
    let kinds = [
        ("sperner1", NestedFamilySpec::Sperner1),
        ("kronecker", fig_family()),
        ("const1", const1_family()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, spec) in kinds {
        let mut family = NestedFamily::new(spec).unwrap();
        family.ensure_covering(MAX_ORDER_N).unwrap();
        for trial in 0..ORDERS_PER_KIND {
            let n = if trial == 0 {
                MAX_ORDER_N
            } else {
                rng.gen_range(2..=MAX_ORDER_N)
            };
            let items = singles(n, &BTreeSet::new(), trial as u64);
            let m = family.matrix(family.covering(n).unwrap()).unwrap();
            let agg = shuffled_fold(&items, &mut rng, |x, y| {
                unbounded_agg(&family, &MockScheme, x, y).unwrap()
            });
            ensure(
                slot_values(agg.slots().unwrap()) == batch_slots(m, &items),
                || format!("{name}: mismatch in trial {trial} at n={n}"),
            )?;
        }
    }
    Ok(format!("3 x {ORDERS_PER_KIND} orders, 0 mismatches"))
}

fn nesting() -> Outcome {
    // (name, spec, levels checked step by step, top level for the subsequence pairs)
    let cases = [
        ("sperner1", NestedFamilySpec::Sperner1, 11, 11),
        ("kronecker", fig_family(), 2, 4),
        ("const1", const1_family(), 2, 3),
    ];
    let mut pairs = 0;
    for (name, spec, levels, top) in cases {
        let mut family = NestedFamily::new(spec).unwrap();
        family
            .ensure_levels(top)
            .map_err(|e| format!("{name}: {e}"))?;
        for k in 2..=levels {
            let scan = verify_nesting(family.matrix(k - 1).unwrap(), family.matrix(k).unwrap())
                .map_err(|e| format!("{name} level {k}: {e}"))?;
            ensure(scan == family.level(k).unwrap().provenance, || {
                format!("{name} level {k}: provenance differs")
            })?;
            pairs += 1;
        }
        for k in 1..=top - 2 {
            let scan = verify_nesting(family.matrix(k).unwrap(), family.matrix(k + 2).unwrap())
                .map_err(|e| format!("{name} levels {k},{}: {e}", k + 2))?;
            let stored = family.provenance_between(k, k + 2).unwrap();
            ensure(scan == stored, || {
                format!("{name} levels {k},{}: composed provenance differs", k + 2)
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} level pairs nested"))
}

fn cost_figures() -> Outcome {
    let small = estimate(1700, 1, 48, &FamilyChoice::OptimalSperner)
        .unwrap()
        .total_bytes;
    let large = estimate(1_300_000, 1, 48, &FamilyChoice::OptimalSperner)
        .unwrap()
        .total_bytes;
    ensure(small == 672 && large == 1152, || {
        format!("got {small} and {large} bytes")
    })?;
    Ok("672 and 1152 bytes".into())
}

fn lambda_suite() -> Outcome {
    let base = sperner_matrix(6).repeat_rows(2).unwrap();
    ensure(is_d_lambda_cff(&base, 1, 2), || {
        "input is not a (1;2)-CFF".into()
    })?;
    let product = kronecker(&base, &base).unwrap();
    ensure(is_d_lambda_cff(&product, 1, 4), || {
        "product is not a (1;4)-CFF".into()
    })?;

    let spec = NestedFamilySpec::RowRepeated {
        base: Box::new(NestedFamilySpec::Sperner1),
        copies: 2,
    };
    let mut family = NestedFamily::new(spec).unwrap();
    family.ensure_covering(20).unwrap();
    let mut cases = 0;
    for n in 2..=20 {
        let t = family.matrix(family.covering(n).unwrap()).unwrap().rows();
        for j in 0..n {
            let bad = BTreeSet::from([j]);
            let items = singles(n, &bad, (n * 100 + j) as u64);
            let agg = fold(&items, |x, y| {
                unbounded_agg(&family, &MockScheme, x, y).unwrap()
            });
            for drop in 0..=t {
                let out = lambda_robust_verify(&family, &MockScheme, &agg, &BTreeSet::from([drop]))
                    .unwrap();
                ensure(exact(&out, n, &bad), || {
                    format!("n={n} fault={} dropped slot {drop}", j + 1)
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!(
        "(1;4) product; {cases}/{cases} dropped-slot cases exact"
    ))
}

fn const1_property() -> Outcome {
    let start = Instant::now();
    let fig = catalog::two_cff_9x12();
    let m = const1(&fig, &fig, &sperner_matrix(12)).unwrap();
    ensure(m.rows() == 63 && m.cols() == 144, || {
        format!("{}x{}", m.rows(), m.cols())
    })?;
    ensure(is_d_cff(&m, 2), || "not a 2-CFF".into())?;
    Ok(format!(
        "63x144 2-CFF over 487344 triples, {}",
        within(start, LIMIT_CONST1_CHECK)?
    ))
}

fn scheme_laws() -> Outcome {
    let s = MockScheme;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for case in 0..SCHEME_CASES {
        let [a, b, c] = [0; 3].map(|_| MockSignature::new(rng.gen()));
        ensure(s.aggregate(&a, &b) == s.aggregate(&b, &a), || {
            format!("commutativity, case {case}")
        })?;
        ensure(
            s.aggregate(&s.aggregate(&a, &b), &c) == s.aggregate(&a, &s.aggregate(&b, &c)),
            || format!("associativity, case {case}"),
        )?;
        ensure(
            s.aggregate(&a, &s.empty()) == a && s.aggregate(&s.empty(), &a) == a,
            || format!("identity, case {case}"),
        )?;

        let count = rng.gen_range(1..6);
        let mut claims = ClaimSequence::new();
        let mut sigs = Vec::new();
        for j in 0..count {
            let (pk, sk) = s.keygen(&rng.gen::<[u8; 16]>());
            let msg: Vec<u8> = (0..rng.gen_range(0..20)).map(|_| rng.gen()).collect();
            sigs.push(s.sign(&sk, &msg));
            claims.set(2 * j, Some(Claim::new(pk, msg).unwrap()));
        }
        let agg = s.aggregate_all(&sigs);
        ensure(s.verify(&claims, &agg), || {
            format!("honest aggregate rejected, case {case}")
        })?;
        let pos = 2 * rng.gen_range(0..count);
        let victim = claims.get(pos).unwrap().clone();
        let mut msg = victim.msg().to_vec();
        msg.push(rng.gen());
        let mut tampered = claims.clone();
        tampered.set(pos, Some(Claim::new(victim.pk().to_vec(), msg).unwrap()));
        ensure(!s.verify(&tampered, &agg), || {
            format!("tampered message accepted, case {case}")
        })?;
        let shifted = s.aggregate(&agg, &MockSignature::new(rng.gen_range(1..u128::MAX)));
        ensure(!s.verify(&claims, &shifted), || {
            format!("tampered signature accepted, case {case}")
        })?;
    }
    Ok(format!("{SCHEME_CASES} cases"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("9x12 matrix is a 2-CFF and not a 3-CFF", fig_regression),
        (
            "sperner_matrix(10) reproduces the 5x10 catalog matrix",
            sperner_reproduction,
        ),
        ("single faults identified for n = 2..35", single_faults),
        (
            "double faults identified at n = 12 and n = 144",
            double_faults,
        ),
        ("incremental aggregation equals batch", incremental_vs_batch),
        ("nesting and provenance of generated levels", nesting),
        ("cost figures", cost_figures),
        (
            "(d;lambda) multiplication and robust verification",
            lambda_suite,
        ),
        ("Const1 63x144 is a 2-CFF", const1_property),
        ("scheme laws", scheme_laws),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
