//! Sources of `c(n)` values: the trusted brute-force count, or a fast
//! representation certified against it on an initial range.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::automata::{semigroup_trick, Dfao, DEFAULT_STATE_CAP};
use crate::cyclic::cyclic_complexity;
use crate::error::{Error, Result};
use crate::linrep::{learn_from_oracle, rat, LearnConfig, LinearRepresentation, Rational};
use crate::words::ThueMorse;

use super::target::Target;

/// Default range on which a representation must match the brute-force count.
pub const DEFAULT_CERTIFY_THROUGH: u64 = 300;

/// Cyclic complexity of the Thue–Morse word by direct factor counting,
/// memoized and optionally spread over worker threads.
#[derive(Debug, Default)]
pub struct BruteForce {
    jobs: usize,
    memo: Mutex<HashMap<u64, u64>>,
}

impl BruteForce {
    pub fn new(jobs: usize) -> Self {
        BruteForce {
            jobs: jobs.max(1),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn c(&self, n: u64) -> Result<u64> {
        if let Some(&x) = self.memo.lock().expect("memo lock").get(&n) {
            return Ok(x);
        }
        let x = cyclic_complexity(&ThueMorse, n as usize)?;
        self.memo.lock().expect("memo lock").insert(n, x);
        Ok(x)
    }

    /// `c(0), ..., c(n_max)`.
    pub fn table(&self, n_max: u64) -> Result<Vec<u64>> {
        let jobs = self.jobs.min(n_max as usize + 1);
        if jobs <= 1 {
            return (0..=n_max).map(|n| self.c(n)).collect();
        }
        // interleaved so that every worker gets a share of the large n
        let parts: Vec<Result<Vec<(u64, u64)>>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs as u64)
                .map(|t| {
                    s.spawn(move || {
                        (t..=n_max)
                            .step_by(jobs)
                            .map(|n| self.c(n).map(|x| (n, x)))
                            .collect::<Result<Vec<_>>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        });
        let mut out = vec![0u64; n_max as usize + 1];
        for part in parts {
            for (n, x) in part? {
                out[n as usize] = x;
            }
        }
        Ok(out)
    }
}

#[derive(Debug)]
pub enum Evaluator {
    Brute(BruteForce),
    Rep(LinearRepresentation),
}

impl Evaluator {
    pub fn brute(jobs: usize) -> Self {
        Evaluator::Brute(BruteForce::new(jobs))
    }

    pub fn label(&self) -> String {
        match self {
            Evaluator::Brute(_) => "brute-force factor count".into(),
            Evaluator::Rep(r) => format!("linear representation of rank {}", r.rank()),
        }
    }

    pub fn is_brute(&self) -> bool {
        matches!(self, Evaluator::Brute(_))
    }

    /// Largest `n` at which single values are cheap enough for wide scans.
    pub fn point_limit(&self) -> u64 {
        match self {
            Evaluator::Brute(_) => 1 << 12,
            Evaluator::Rep(_) => u64::MAX >> 4,
        }
    }

    pub fn c(&self, n: u64) -> Result<Rational> {
        match self {
            Evaluator::Brute(b) => Ok(rat(b.c(n)? as i64)),
            Evaluator::Rep(r) => Ok(r.evaluate(n)),
        }
    }

    pub fn table(&self, n_max: u64) -> Result<Vec<Rational>> {
        match self {
            Evaluator::Brute(b) => Ok(b.table(n_max)?.into_iter().map(|x| rat(x as i64)).collect()),
            Evaluator::Rep(r) => Ok(r.values_up_to(n_max)),
        }
    }
}

/// A sequence derived from `c`, with its minimized representation and
/// minimized automaton.
#[derive(Debug, Clone)]
pub struct Derived {
    pub name: &'static str,
    pub target: Target,
    pub rep: LinearRepresentation,
    pub dfao: Dfao,
}

/// A representation of `c` checked against the brute-force count, together
/// with the automatic sequences `a0`, `a1`, `a3` in the recurrences
/// `c(2i) = 2c(i) + a0(i)`, `c(4i+1) = 2c(i+1) + c(2i+1) + a1(i)` and
/// `c(4i+3) = c(2i)/2 + c(2i+3) + c(2i+4)/2 + a3(i)`.
#[derive(Debug, Clone)]
pub struct Certified {
    pub c: LinearRepresentation,
    pub certified_through: u64,
    pub a0: Derived,
    pub a1: Derived,
    pub a3: Derived,
}

pub const A0_TARGET: &str = "c(2n) - 2c(n)";
pub const A1_TARGET: &str = "c(4n+1) - 2c(n+1) - c(2n+1)";
pub const A3_TARGET: &str = "c(4n+3) - 1/2 c(2n) - c(2n+3) - 1/2 c(2n+4)";

impl Certified {
    /// Learns `c` from the brute-force count, minimizes, and certifies it.
    pub fn learn(brute: &BruteForce, config: LearnConfig, certify_through: u64) -> Result<Self> {
        let learned = learn_from_oracle(|n| Ok(rat(brute.c(n)? as i64)), config)?;
        Certified::from_rep(learned.rep.minimize(), brute, certify_through)
    }

    /// Certifies a given representation of `c` on `0..=certify_through`.
    pub fn from_rep(
        c: LinearRepresentation,
        brute: &BruteForce,
        certify_through: u64,
    ) -> Result<Self> {
        let oracle = brute.table(certify_through)?;
        for (n, (got, want)) in c
            .values_up_to(certify_through)
            .iter()
            .zip(&oracle)
            .enumerate()
        {
            if *got != rat(*want as i64) {
                return Err(Error::Uncertified {
                    n: n as u64,
                    detail: format!("representation gives {got}, factor count gives {want}"),
                });
            }
        }
        let derive = |name: &'static str, target: &str| -> Result<Derived> {
            let target: Target = target.parse()?;
            let rep = target.to_rep(&c)?;
            let dfao = semigroup_trick(&rep, DEFAULT_STATE_CAP)?.minimize();
            Ok(Derived {
                name,
                target,
                rep,
                dfao,
            })
        };
        Ok(Certified {
            a0: derive("a0", A0_TARGET)?,
            a1: derive("a1", A1_TARGET)?,
            a3: derive("a3", A3_TARGET)?,
            c,
            certified_through: certify_through,
        })
    }

    pub fn evaluator(&self) -> Evaluator {
        Evaluator::Rep(self.c.clone())
    }
}
