//! Test-only oracles, written against plain sets and big integers so that
//! they share no code paths with the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nested_cff::agg::{
    AggregateScheme, AggregateSignature, Claim, MockScheme, MockSignature, SignatureInput, Signed,
};
use nested_cff::binmat::BinaryMatrix;

/// Blocks of the set system: column `j` as the set of rows holding a 1.
pub fn blocks(m: &BinaryMatrix) -> Vec<BTreeSet<usize>> {
    (0..m.cols())
        .map(|j| (0..m.rows()).filter(|&i| m.get(i, j)).collect())
        .collect()
}

/// Every `k`-subset of `items`, by plain recursion.
pub fn choose(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (idx, &first) in items.iter().enumerate() {
        for mut rest in choose(&items[idx + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `(d; lambda)`-cover-freeness straight from the definition: every block
/// keeps at least `lambda` elements outside the union of any `d` others.
/// With fewer than `d` other blocks, all of them are used.
pub fn naive_cff(m: &BinaryMatrix, d: usize, lambda: usize) -> bool {
    let b = blocks(m);
    let n = b.len();
    for i in 0..n {
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        for group in choose(&others, d.min(others.len())) {
            let union: BTreeSet<usize> = group.iter().flat_map(|&j| b[j].iter().copied()).collect();
            if b[i].difference(&union).count() < lambda {
                return false;
            }
        }
    }
    true
}

/// Every `d+1` columns carry a `(d+1) x (d+1)` permutation submatrix.
pub fn permutation_oracle(m: &BinaryMatrix, d: usize) -> bool {
    let cols: Vec<usize> = (0..m.cols()).collect();
    let k = (d + 1).min(m.cols());
    choose(&cols, k).iter().all(|subset| {
        subset
            .iter()
            .all(|&c| (0..m.rows()).any(|r| subset.iter().all(|&x| m.get(r, x) == (x == c))))
    })
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> BinaryMatrix {
    let data: Vec<Vec<u8>> = (0..rows)
        .map(|_| (0..cols).map(|_| u8::from(rng.gen_bool(density))).collect())
        .collect();
    BinaryMatrix::from_rows(&data).unwrap()
}

pub fn modulus() -> BigUint {
    BigUint::from(2u8).pow(128) - BigUint::from(159u8)
}

pub fn sig_value(s: &MockSignature) -> BigUint {
    BigUint::from(s.value())
}

/// `n` one-claim inputs at positions `0..n`; positions in `bad` sign a
/// different message than they claim.
pub fn singles(n: usize, bad: &BTreeSet<usize>, seed: u64) -> Vec<Signed<MockSignature>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = MockScheme;
    (0..n)
        .map(|j| {
            let sk: [u8; 16] = rng.gen();
            let (pk, sk) = s.keygen(&sk);
            let msg: [u8; 12] = rng.gen();
            let sig = if bad.contains(&j) {
                s.sign(&sk, b"not the claimed message")
            } else {
                s.sign(&sk, &msg)
            };
            Signed::single(j, Claim::new(pk, msg.to_vec()).unwrap(), sig)
        })
        .collect()
}

pub fn single_sig(s: &Signed<MockSignature>) -> MockSignature {
    match s.signature {
        SignatureInput::Single(x) => x,
        SignatureInput::Slots(_) => panic!("expected a single signature"),
    }
}

/// The slot vector a batch aggregator would build over the first
/// `items.len()` columns of `m`, computed with big-integer sums.
pub fn batch_slots(m: &BinaryMatrix, items: &[Signed<MockSignature>]) -> Vec<u128> {
    let p = modulus();
    let mut slots = vec![BigUint::from(0u8); m.rows() + 1];
    for item in items {
        let (col, _) = item.claims.single_claim().expect("one claim");
        let v = sig_value(&single_sig(item));
        slots[0] += &v;
        for (i, slot) in slots.iter_mut().skip(1).enumerate() {
            if m.get(i, col) {
                *slot += &v;
            }
        }
    }
    slots
        .into_iter()
        .map(|s| {
            let r = s % &p;
            let digits = r.to_u64_digits();
            digits
                .iter()
                .rev()
                .fold(0u128, |acc, &d| (acc << 64) | d as u128)
        })
        .collect()
}

pub fn slot_values(tau: &AggregateSignature<MockSignature>) -> Vec<u128> {
    tau.slots.iter().map(|s| s.value()).collect()
}

/// Folds `items` left to right with `step`.
pub fn fold<F>(items: &[Signed<MockSignature>], mut step: F) -> Signed<MockSignature>
where
    F: FnMut(&Signed<MockSignature>, &Signed<MockSignature>) -> Signed<MockSignature>,
{
    let mut acc = items[0].clone();
    for x in &items[1..] {
        acc = step(&acc, x);
    }
    acc
}

/// Tag `H(pk || 0 || msg) mod p` computed independently.
pub fn oracle_tag(pk: &[u8], msg: &[u8]) -> BigUint {
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    h.update(pk);
    h.update([0u8]);
    h.update(msg);
    BigUint::from_bytes_be(&h.finalize()) % modulus()
}

pub fn scheme() -> MockScheme {
    MockScheme
}

pub fn aggregate_values(vals: &[MockSignature]) -> MockSignature {
    let s = MockScheme;
    vals.iter().fold(s.empty(), |a, b| s.aggregate(&a, b))
}
