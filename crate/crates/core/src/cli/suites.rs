//! Verification suites behind `verify`.
//!
//! Sampled suites draw every code parameter and code seed from one ChaCha8
//! stream seeded by `--seed`, so a report depends only on its flags.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code_oracle::{random_code, random_cw_code, verify_identities, verify_inequalities};
use crate::error::{invalid, Error, Result};
use crate::finite_field::{is_prime, verify_prop21};
use crate::inequality_constants::{
    balanced_matrix_max, cw_constants, matrix_balancing_max_bruteforce, max_pairwise_products,
    max_pairwise_products_bruteforce, ostergard_rhs, OstergardTerms,
};
use crate::polynomials::{binom, pow};
use crate::rational::{frac, int};
use crate::report::{CheckEntry, Params, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Identities and inequalities on random unrestricted codes.
    Delsarte,
    /// The same plus the constant-weight checks on random constant-weight codes.
    Cw,
    /// Dot-product counts over nonzero prime-field vectors.
    Prop21,
    /// Closed-form balancing maxima against exhaustive search.
    Balancing,
    /// The k=1 constant-weight bound against its direct formula.
    Ostergard,
    /// Every suite above with its default ranges.
    All,
}

/// Parameters for the sampled code suites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleConfig {
    pub q: Vec<u64>,
    pub n_max: u64,
    pub size_max: u64,
    /// Codes drawn per alphabet size.
    pub samples: u64,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            q: vec![2, 3, 5],
            n_max: 7,
            size_max: 10,
            samples: 500,
            seed: 0,
        }
    }
}

impl SampleConfig {
    fn validate(&self) -> Result<()> {
        if let Some(&q) = self.q.iter().find(|&&q| !is_prime(q)) {
            return Err(Error::NotPrime(q));
        }
        if self.n_max < 2 {
            return Err(invalid("--n-max must be at least 2"));
        }
        if self.size_max < 2 {
            return Err(invalid("--size-max must be at least 2"));
        }
        Ok(())
    }
}

fn capped(space: &BigInt, cap: u64) -> u64 {
    space.to_u64().map_or(cap, |s| s.min(cap))
}

/// Identity and inequality checks on random codes of length `2..=n_max` and
/// size `2..=size_max`; with `constant_weight` the codes are drawn from a
/// random weight class and the constant-weight checks are included.
pub fn sampled_codes(cfg: &SampleConfig, constant_weight: bool) -> Result<VerificationReport> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = VerificationReport::new();
    for &q in &cfg.q {
        for sample in 0..cfg.samples {
            let n = rng.gen_range(2..=cfg.n_max);
            let extra = Params::new().with("sample", sample);
            if constant_weight {
                // q = 2, w = n leaves a single word; draw again.
                let w = loop {
                    let w = rng.gen_range(1..=n);
                    if binom(n, w) * pow(q - 1, w) >= BigInt::from(2) {
                        break w;
                    }
                };
                let space = binom(n, w) * pow(q - 1, w);
                let m = rng.gen_range(2..=capped(&space, cfg.size_max));
                let code = random_cw_code(q, n as usize, w as usize, m as usize, rng.gen())?;
                report.extend(verify_identities(&code, Some(w as usize), &extra)?);
                report.extend(verify_inequalities(&code, Some(w as usize), &extra)?);
            } else {
                let m = rng.gen_range(2..=capped(&pow(q, n), cfg.size_max));
                let code = random_code(q, n as usize, m as usize, rng.gen())?;
                report.extend(verify_identities(&code, None, &extra)?);
                report.extend(verify_inequalities(&code, None, &extra)?);
            }
        }
    }
    Ok(report)
}

pub fn prop21(primes: &[u64], j_max: u64) -> Result<VerificationReport> {
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(p));
    }
    verify_prop21(primes, j_max)
}

/// Scalar maxima for every `total <= 16`, `parts <= 5`, and matrix maxima for
/// every `q <= 4`, `columns <= 4`, column sum `<= 8` and feasible row total.
pub fn balancing() -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let yes = int(1);
    let flag = |b: bool| int(b as i64);
    for total in 0..=16u64 {
        for parts in 1..=5u64 {
            let p = Params::new().with("total", total).with("parts", parts);
            let brute = max_pairwise_products_bruteforce(total, parts)?;
            let closed = max_pairwise_products(&BigInt::from(total), parts);
            report.push(CheckEntry::equality(
                "scalar_max",
                &p,
                &int(closed),
                &int(brute.max),
            ));
            report.push(CheckEntry::equality(
                "scalar_maximizers_balanced",
                &p,
                &yes,
                &flag(brute.balanced_only),
            ));
        }
    }
    for q in 2..=4u64 {
        for columns in 1..=4u64 {
            for col_sum in 1..=8u64 {
                for rest in 0..=col_sum * columns {
                    let p = Params::new()
                        .with("q", q)
                        .with("columns", columns)
                        .with("col_sum", col_sum)
                        .with("rest", rest);
                    let brute = matrix_balancing_max_bruteforce(col_sum, rest, q, columns)?
                        .expect("rest within column capacity");
                    let closed = balanced_matrix_max(
                        &BigInt::from(col_sum),
                        &BigInt::from(rest),
                        q,
                        &BigInt::from(columns),
                    )?
                    .total();
                    report.push(CheckEntry::equality(
                        "matrix_max",
                        &p,
                        &int(closed),
                        &int(brute.max),
                    ));
                    report.push(CheckEntry::equality(
                        "matrix_maximizers_balanced",
                        &p,
                        &yes,
                        &flag(brute.balanced_only),
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Ranges for the k=1 constant-weight comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OstergardConfig {
    pub q: Vec<u64>,
    pub n: Vec<u64>,
    pub m: Vec<u64>,
}

impl Default for OstergardConfig {
    fn default() -> Self {
        OstergardConfig {
            q: (2..=7).collect(),
            n: (2..=10).collect(),
            m: (2..=40).collect(),
        }
    }
}

/// `(2/(q-1)) T(1)` against the direct formula, and the part sums of the
/// direct formula, for every weight `1..=n`.
pub fn ostergard(cfg: &OstergardConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    for &q in &cfg.q {
        for &n in &cfg.n {
            for w in 1..=n {
                for &m in &cfg.m {
                    let p = Params::new()
                        .with("q", q)
                        .with("n", n)
                        .with("w", w)
                        .with("M", m);
                    let t = cw_constants(q, n, w, m, 1)?.t;
                    let scaled = frac(BigInt::from(2) * t, BigInt::from(q - 1));
                    report.push(CheckEntry::equality(
                        "ostergard_equivalence",
                        &p,
                        &int(ostergard_rhs(q, n, w, m)?),
                        &scaled,
                    ));
                    let terms = OstergardTerms::new(q, n, w, m)?;
                    let sum = |v: &[BigInt]| int(v.iter().sum::<BigInt>());
                    report.push(CheckEntry::equality(
                        "ostergard_parts_sum",
                        &p,
                        &int(m),
                        &sum(&terms.m_parts),
                    ));
                    report.push(CheckEntry::equality(
                        "ostergard_primed_parts_sum",
                        &p,
                        &int(m),
                        &sum(&terms.m_prime_parts),
                    ));
                }
            }
        }
    }
    Ok(report)
}
