use std::fmt::Debug;

use num_bigint::BigUint;
use sha2::{Digest, Sha256};

use super::ClaimSequence;

/// An aggregate signature scheme over claim sequences.
///
/// `aggregate` must be associative and commutative with `empty` as the
/// identity, and `verify(C, agg of sign(C[j]))` must hold for every `C`.
pub trait AggregateScheme {
    type SecretKey: Clone + Debug;
    type Signature: Clone + Debug + PartialEq + Eq;

    /// Deterministic key generation from seed bytes. Returns `(pk, sk)`.
    fn keygen(&self, seed: &[u8]) -> (Vec<u8>, Self::SecretKey);
    fn sign(&self, sk: &Self::SecretKey, msg: &[u8]) -> Self::Signature;
    fn empty(&self) -> Self::Signature;
    fn aggregate(&self, a: &Self::Signature, b: &Self::Signature) -> Self::Signature;
    /// Placeholders are ignored; an all-placeholder sequence pairs with
    /// `empty()`.
    fn verify(&self, claims: &ClaimSequence, sig: &Self::Signature) -> bool;

    fn aggregate_all<'a, I>(&self, sigs: I) -> Self::Signature
    where
        I: IntoIterator<Item = &'a Self::Signature>,
        Self::Signature: 'a,
    {
        sigs.into_iter()
            .fold(self.empty(), |acc, s| self.aggregate(&acc, s))
    }
}

/// `2^128 - 159`, the largest prime below `2^128`.
pub const MOCK_MODULUS: u128 = u128::MAX - 158;

const PK_DOMAIN: u8 = 0x4B;

/// Additive MAC-style test scheme. **Not secure**: anyone who knows a public
/// key can compute valid signatures for it. Use it for testing only.
///
/// * `pk = SHA-256(0x4B || sk)`
/// * `sign(sk, m) = SHA-256(pk || 0x00 || m) mod p`, `p = 2^128 - 159`
/// * aggregation is addition mod `p`, the empty signature is `0`
#[derive(Debug, Clone, Copy, Default)]
pub struct MockScheme;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MockSignature(u128);

impl MockSignature {
    /// Reduces `value` mod `p`.
    pub fn new(value: u128) -> Self {
        MockSignature(value % MOCK_MODULUS)
    }

    pub fn value(self) -> u128 {
        self.0
    }

    /// Minimal big-endian bytes, at least one byte (`0` is `[0]`).
    pub fn to_bytes(self) -> Vec<u8> {
        let bytes = self.0.to_be_bytes();
        let start = bytes.iter().position(|&b| b != 0).unwrap_or(15);
        bytes[start..].to_vec()
    }

    /// Inverse of [`MockSignature::to_bytes`]; also accepts leading zeros.
    /// Rejects values that are not reduced mod `p`.
    pub fn from_bytes(bytes: &[u8]) -> Option<Self> {
        if bytes.is_empty() {
            return None;
        }
        let stripped = &bytes[bytes.iter().position(|&b| b != 0).unwrap_or(bytes.len())..];
        if stripped.len() > 16 {
            return None;
        }
        let mut buf = [0u8; 16];
        buf[16 - stripped.len()..].copy_from_slice(stripped);
        let v = u128::from_be_bytes(buf);
        (v < MOCK_MODULUS).then_some(MockSignature(v))
    }
}

fn add_mod(a: u128, b: u128) -> u128 {
    let (s, overflow) = a.overflowing_add(b);
    // a, b < p, so a + b < 2p < 2^129: one subtraction suffices.
    if overflow || s >= MOCK_MODULUS {
        s.wrapping_sub(MOCK_MODULUS)
    } else {
        s
    }
}

impl MockScheme {
    pub fn public_key(sk: &[u8]) -> Vec<u8> {
        let mut h = Sha256::new();
        h.update([PK_DOMAIN]);
        h.update(sk);
        h.finalize().to_vec()
    }

    pub fn tag(pk: &[u8], msg: &[u8]) -> MockSignature {
        let mut h = Sha256::new();
        h.update(pk);
        h.update([0u8]);
        h.update(msg);
        let digest = h.finalize();
        let reduced = BigUint::from_bytes_be(&digest) % BigUint::from(MOCK_MODULUS);
        let mut buf = [0u8; 16];
        let bytes = reduced.to_bytes_be();
        buf[16 - bytes.len()..].copy_from_slice(&bytes);
        MockSignature(u128::from_be_bytes(buf))
    }
}

impl AggregateScheme for MockScheme {
    type SecretKey = Vec<u8>;
    type Signature = MockSignature;

    fn keygen(&self, seed: &[u8]) -> (Vec<u8>, Vec<u8>) {
        (Self::public_key(seed), seed.to_vec())
    }

    fn sign(&self, sk: &Vec<u8>, msg: &[u8]) -> MockSignature {
        Self::tag(&Self::public_key(sk), msg)
    }

    fn empty(&self) -> MockSignature {
        MockSignature(0)
    }

    fn aggregate(&self, a: &MockSignature, b: &MockSignature) -> MockSignature {
        MockSignature(add_mod(a.0, b.0))
    }

    fn verify(&self, claims: &ClaimSequence, sig: &MockSignature) -> bool {
        let expected = claims.claims().fold(0u128, |acc, (_, c)| {
            add_mod(acc, Self::tag(c.pk(), c.msg()).0)
        });
        expected == sig.0
    }
}
