//! Arithmetic in GF(p) for prime `p`, and exhaustive counters for the number
//! of nonzero vectors `b` with `a.b != 0` (resp. `a.b == 0`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{invalid, Error, Result};
use crate::polynomials::pow;
use crate::rational::int;
use crate::report::{CheckEntry, Params, VerificationReport};

/// Largest enumeration the counters will attempt.
pub const ENUMERATION_GUARD: u128 = 10_000_000;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            let mut m = q;
            while m.is_multiple_of(d) {
                m /= d;
            }
            return m == 1;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_guard(size: u128) -> Result<()> {
    if size > ENUMERATION_GUARD {
        return Err(Error::GuardExceeded {
            size,
            limit: ENUMERATION_GUARD,
        });
    }
    Ok(())
}

/// The prime field GF(p) on the representatives `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        let a = a % self.p;
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        // Fermat: a^(p-2)
        let mut result = 1u64;
        let mut base = a;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        Ok(result)
    }

    pub fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

/// Steps `tuple` to its lexicographic successor in `{1..q-1}^len`.
///
/// Returns `false` (leaving the tuple reset to all ones) once the last tuple
/// has been passed. Start from `vec![1; len]`.
pub fn advance_nonzero(tuple: &mut [u64], q: u64) -> bool {
    for slot in tuple.iter_mut().rev() {
        if *slot + 1 < q {
            *slot += 1;
            return true;
        }
        *slot = 1;
    }
    false
}

/// A vector in `(GF(p)*)^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NonzeroVector {
    field: PrimeField,
    entries: Vec<u64>,
}

impl NonzeroVector {
    pub fn new(field: PrimeField, entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(invalid("nonzero vector must have length at least 1"));
        }
        if let Some(bad) = entries.iter().find(|&&e| e == 0 || e >= field.p) {
            return Err(invalid(format!(
                "entry {bad} is not a nonzero element of GF({})",
                field.p
            )));
        }
        Ok(NonzeroVector { field, entries })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn count_dot(a: &NonzeroVector, want_zero: bool) -> Result<u64> {
    let p = a.field.p;
    check_guard((p as u128 - 1).saturating_pow(a.len() as u32))?;
    let mut b = vec![1u64; a.len()];
    let mut count = 0u64;
    loop {
        if (a.field.dot(&a.entries, &b) == 0) == want_zero {
            count += 1;
        }
        if !advance_nonzero(&mut b, p) {
            break;
        }
    }
    Ok(count)
}

/// Number of `b` in `(GF(p)*)^j` with `a.b != 0`, by exhaustive enumeration.
pub fn count_nonzero_dot(a: &NonzeroVector) -> Result<u64> {
    count_dot(a, false)
}

/// Number of `b` in `(GF(p)*)^j` with `a.b == 0`, by exhaustive enumeration.
pub fn count_zero_dot(a: &NonzeroVector) -> Result<u64> {
    count_dot(a, true)
}

/// Closed forms `N = (q-1)/q [(q-1)^j - (-1)^j]` and `Z = (q-1)^j - N`.
pub fn prop21_closed_form(q: u64, j: u64) -> Result<(BigInt, BigInt)> {
    if q < 2 || j < 1 {
        return Err(invalid(format!("need q >= 2 and j >= 1, got q={q}, j={j}")));
    }
    let total = pow(q - 1, j);
    let sign = if j.is_multiple_of(2) { 1 } else { -1 };
    let bracket = &total - BigInt::from(sign);
    let (quot, rem) = bracket.div_rem(&BigInt::from(q));
    if !rem.is_zero() {
        return Err(Error::Arithmetic(format!(
            "(q-1)^{j} - (-1)^{j} not divisible by q={q}"
        )));
    }
    let nonzero = quot * BigInt::from(q - 1);
    let zero = total - &nonzero;
    Ok((nonzero, zero))
}

/// Exhaustively compares both counters against the closed forms for every
/// `a` in `(GF(p)*)^j`, `p` in `primes`, `1 <= j <= j_max`.
pub fn verify_prop21(primes: &[u64], j_max: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    for &p in primes {
        let field = PrimeField::new(p)?;
        for j in 1..=j_max {
            let (n_closed, z_closed) = prop21_closed_form(p, j)?;
            let total = pow(p - 1, j);
            let mut a = vec![1u64; j as usize];
            let mut index = 0i64;
            loop {
                let v = NonzeroVector::new(field, a.clone())?;
                let nz = BigInt::from(count_nonzero_dot(&v)?);
                let z = BigInt::from(count_zero_dot(&v)?);
                let params = Params::new()
                    .with("p", p)
                    .with("j", j)
                    .with("a_index", index);
                report.push(CheckEntry::equality(
                    "prop21_nonzero",
                    &params,
                    &int(n_closed.clone()),
                    &int(nz.clone()),
                ));
                report.push(CheckEntry::equality(
                    "prop21_zero",
                    &params,
                    &int(z_closed.clone()),
                    &int(z.clone()),
                ));
                report.push(CheckEntry::equality(
                    "prop21_partition",
                    &params,
                    &int(total.clone()),
                    &int(nz + z),
                ));
                index += 1;
                if !advance_nonzero(&mut a, p) {
                    break;
                }
            }
        }
    }
    Ok(report)
}
