//! Seeded fault-injection experiments over a nested family.
//!
//! Each trial signs `n` fresh messages, invalidates `faults` of them, builds
//! the aggregate from singles in a random arrival order, optionally drops
//! some row slots, and checks that verification rejects exactly the
//! invalidated claims.

use std::collections::BTreeSet;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::agg::{
    bounded_agg, bounded_verify, lambda_robust_verify, unbounded_agg, unbounded_verify, AggError,
    AggregateScheme, Claim, Signed,
};
use crate::combinatorics::{binomial, KSubsets};
use crate::nested::{NestedError, NestedFamily};

/// Trials beyond this count are refused in exhaustive mode.
pub const MAX_EXHAUSTIVE_TRIALS: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trials {
    /// Every fault subset combined with every dropped-slot subset.
    Exhaustive,
    Sampled(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimMode {
    /// Fold singles with `unbounded_agg` through the growing levels.
    Unbounded,
    /// Fold singles with `bounded_agg` at the covering level only.
    Bounded,
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub n: usize,
    pub faults: usize,
    pub drop_slots: usize,
    pub trials: Trials,
    pub seed: u64,
    pub mode: SimMode,
    /// Permit `faults > d`; outcomes are then reported, not guaranteed.
    pub beyond_guarantee: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub n: usize,
    pub d: usize,
    pub lambda: u64,
    /// Native index and row count of the covering level.
    pub level: usize,
    pub t: usize,
    pub trials: u64,
    pub exact: u64,
    pub fast_path: u64,
    pub guarantee_void: u64,
    pub scheme_calls: u64,
    pub mean_slots: f64,
    pub ratio: f64,
}

impl SimReport {
    pub fn accuracy(&self) -> f64 {
        if self.trials == 0 {
            1.0
        } else {
            self.exact as f64 / self.trials as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("invalid simulation parameter: {0}")]
    InvalidParameter(String),
    #[error("exhaustive run needs {0} trials, over the limit of {MAX_EXHAUSTIVE_TRIALS}")]
    TooManyTrials(String),
    #[error(transparent)]
    Nested(#[from] NestedError),
    #[error(transparent)]
    Agg(#[from] AggError),
}

struct Context<'a, Sc: AggregateScheme> {
    family: &'a NestedFamily,
    scheme: &'a Sc,
    keys: Vec<(Vec<u8>, Sc::SecretKey)>,
    k: usize,
    mode: SimMode,
}

impl<Sc: AggregateScheme> Context<'_, Sc> {
    fn trial(
        &self,
        rng: &mut ChaCha8Rng,
        faults: &BTreeSet<usize>,
        dropped: &BTreeSet<usize>,
        stats: &mut SimReport,
    ) -> Result<(), SimError> {
        let mut singles: Vec<Signed<Sc::Signature>> = self
            .keys
            .iter()
            .enumerate()
            .map(|(j, (pk, sk))| {
                let msg: [u8; 16] = rng.gen();
                let sig = if faults.contains(&j) {
                    let mut other = msg.to_vec();
                    other.push(0xFF);
                    self.scheme.sign(sk, &other)
                } else {
                    self.scheme.sign(sk, &msg)
                };
                Ok(Signed::single(
                    j,
                    Claim::new(pk.clone(), msg.to_vec())?,
                    sig,
                ))
            })
            .collect::<Result<_, AggError>>()?;
        singles.shuffle(rng);

        let matrix = self.family.matrix(self.k).expect("covering level exists");
        let mut acc = singles[0].clone();
        for s in &singles[1..] {
            acc = match self.mode {
                SimMode::Unbounded => unbounded_agg(self.family, self.scheme, &acc, s)?,
                SimMode::Bounded => bounded_agg(matrix, self.scheme, &acc, s)?,
            };
        }
        let outcome = match (self.mode, dropped.is_empty()) {
            (SimMode::Bounded, true) => bounded_verify(matrix, self.family.d(), self.scheme, &acc)?,
            (_, true) => unbounded_verify(self.family, self.scheme, &acc)?,
            (_, false) => lambda_robust_verify(self.family, self.scheme, &acc, dropped)?,
        };
        stats.trials += 1;
        stats.exact += u64::from(outcome.invalid == *faults);
        stats.fast_path += u64::from(outcome.fast_path);
        stats.guarantee_void += u64::from(outcome.guarantee_void);
        stats.scheme_calls += outcome.scheme_calls as u64;
        Ok(())
    }
}

/// Runs the experiment, growing `family` as needed to cover `n`.
pub fn simulate<Sc: AggregateScheme>(
    family: &mut NestedFamily,
    scheme: &Sc,
    cfg: &SimConfig,
) -> Result<SimReport, SimError> {
    if cfg.n == 0 {
        return Err(SimError::InvalidParameter("n must be at least 1".into()));
    }
    if cfg.faults > cfg.n {
        return Err(SimError::InvalidParameter(format!(
            "{} faults among {} claims",
            cfg.faults, cfg.n
        )));
    }
    if cfg.faults > family.d() && !cfg.beyond_guarantee {
        return Err(SimError::InvalidParameter(format!(
            "{} faults exceed d = {}; allow this explicitly to run outside the guarantee",
            cfg.faults,
            family.d()
        )));
    }
    if cfg.drop_slots > 0 && cfg.mode == SimMode::Bounded {
        return Err(SimError::InvalidParameter(
            "dropped slots need the unbounded mode".into(),
        ));
    }
    let k = family.ensure_covering(cfg.n)?;
    let level = family.level(k).expect("covering level exists");
    let t = level.rows();
    let lambda = family.lambda_at(k);
    if cfg.drop_slots as u64 >= lambda {
        return Err(SimError::InvalidParameter(format!(
            "{} dropped slots, but lambda = {lambda} tolerates at most {}",
            cfg.drop_slots,
            lambda - 1
        )));
    }
    if cfg.drop_slots > t {
        return Err(SimError::InvalidParameter(format!(
            "{} dropped slots of {t} rows",
            cfg.drop_slots
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let keys = (0..cfg.n)
        .map(|_| {
            let seed: [u8; 32] = rng.gen();
            scheme.keygen(&seed)
        })
        .collect();
    let mut stats = SimReport {
        n: cfg.n,
        d: family.d(),
        lambda,
        level: level.level,
        t,
        trials: 0,
        exact: 0,
        fast_path: 0,
        guarantee_void: 0,
        scheme_calls: 0,
        mean_slots: (t + 1) as f64,
        ratio: cfg.n as f64 / t as f64,
    };
    let ctx = Context {
        family,
        scheme,
        keys,
        k,
        mode: cfg.mode,
    };

    match cfg.trials {
        Trials::Exhaustive => {
            let count = binomial(cfg.n as u64, cfg.faults as u64)
                .zip(binomial(t as u64, cfg.drop_slots as u64))
                .and_then(|(a, b)| a.checked_mul(b));
            match count {
                Some(c) if c <= MAX_EXHAUSTIVE_TRIALS => {}
                Some(c) => return Err(SimError::TooManyTrials(c.to_string())),
                None => return Err(SimError::TooManyTrials("more than 2^128".into())),
            }
            for f in KSubsets::new(cfg.n, cfg.faults) {
                let faults: BTreeSet<usize> = f.into_iter().collect();
                for drop in KSubsets::new(t, cfg.drop_slots) {
                    let dropped: BTreeSet<usize> = drop.into_iter().map(|r| r + 1).collect();
                    ctx.trial(&mut rng, &faults, &dropped, &mut stats)?;
                }
            }
        }
        Trials::Sampled(m) => {
            for _ in 0..m {
                let faults: BTreeSet<usize> = index::sample(&mut rng, cfg.n, cfg.faults)
                    .into_iter()
                    .collect();
                let dropped: BTreeSet<usize> = index::sample(&mut rng, t, cfg.drop_slots)
                    .into_iter()
                    .map(|r| r + 1)
                    .collect();
                ctx.trial(&mut rng, &faults, &dropped, &mut stats)?;
            }
        }
    }
    Ok(stats)
}
