//! Binomial coefficients, Krawtchouk polynomials and their split into the
//! nonnegative parts `P_k^-` and `P_k^+`.
//!
//! Everything here is exact. `P_k^-` can carry a denominator of 2, so it is
//! returned as a [`Rational`]; [`scaled_pk_minus`] returns the integer
//! `(2(q-1)/q) * P_k^-` that the constant-weight constants divide.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::rational::{int, Rational};

/// Evaluation point for the degree-`k` polynomials over alphabet size `q`
/// and length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolyParams {
    q: u64,
    n: u64,
    k: u64,
    x: u64,
}

impl PolyParams {
    pub fn new(q: u64, n: u64, k: u64, x: u64) -> Result<Self> {
        if q < 2 {
            return Err(invalid(format!("alphabet size q={q} must be at least 2")));
        }
        if n < 1 {
            return Err(invalid("length n must be at least 1"));
        }
        if k < 1 || k > n {
            return Err(invalid(format!("degree k={k} must lie in 1..={n}")));
        }
        if x > n {
            return Err(invalid(format!("point x={x} must lie in 0..={n}")));
        }
        Ok(PolyParams { q, n, k, x })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn x(&self) -> u64 {
        self.x
    }
}

/// `C(a, b)`, zero whenever `b < 0`, `b > a` or `a < 0`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if a < 0 || b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

pub(crate) fn binom(a: u64, b: u64) -> BigInt {
    BigInt::from(binomial(a as i64, b as i64))
}

pub(crate) fn pow(base: u64, exp: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `(-1)^j`
fn sign(j: u64) -> BigInt {
    if j.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `(q-1)^k C(n,k)`: the value of `P_k(n;0)` and of `P_k^+ + P_k^-`.
pub fn weight_class_size(q: u64, n: u64, k: u64) -> BigInt {
    pow(q - 1, k) * binom(n, k)
}

/// Terms `C(x,j) C(n-x,k-j) (q-1)^(k-j)` of every sum below, indexed by `j`.
fn shared_terms(p: &PolyParams) -> impl Iterator<Item = (u64, BigInt)> + '_ {
    (0..=p.k).map(move |j| {
        let t =
            binom(p.x, j) * BigInt::from(binomial(p.n as i64 - p.x as i64, p.k as i64 - j as i64));
        (j, t * pow(p.q - 1, p.k - j))
    })
}

/// `P_k(n;x) = sum_j (-1)^j (q-1)^(k-j) C(x,j) C(n-x,k-j)`.
pub fn krawtchouk(p: &PolyParams) -> BigInt {
    shared_terms(p).map(|(j, t)| sign(j) * t).sum()
}

/// `P_k^-(n;x) = 1/2 sum_j [(q-1)^j - (-1)^j] (q-1)^(k-j) C(x,j) C(n-x,k-j)`.
pub fn pk_minus(p: &PolyParams) -> Rational {
    let doubled: BigInt = shared_terms(p)
        .map(|(j, t)| (pow(p.q - 1, j) - sign(j)) * t)
        .sum();
    Rational::new(doubled, BigInt::from(2))
}

/// `P_k^+(n;x) = (q-1)^k C(n,k) - P_k^-(n;x)`.
pub fn pk_plus(p: &PolyParams) -> Rational {
    int(weight_class_size(p.q, p.n, p.k)) - pk_minus(p)
}

/// The integer `(2(q-1)/q) * P_k^-(n;x)`.
///
/// Every bracket `(q-1)^j - (-1)^j` is divisible by `q`; a bracket that is
/// not is reported as an arithmetic fault.
pub fn scaled_pk_minus(p: &PolyParams) -> Result<BigInt> {
    let q = BigInt::from(p.q);
    let mut acc = BigInt::zero();
    for (j, t) in shared_terms(p) {
        let bracket = pow(p.q - 1, j) - sign(j);
        let (quot, rem) = bracket.div_rem(&q);
        if !rem.is_zero() {
            return Err(Error::Arithmetic(format!(
                "(q-1)^{j} - (-1)^{j} not divisible by q={}",
                p.q
            )));
        }
        acc += quot * t;
    }
    Ok(acc * BigInt::from(p.q - 1))
}

/// `P_k(n;i)` for every `k` in `1..=n` and `i` in `0..=n`, row-major in `k`.
#[derive(Debug, Clone)]
pub struct KrawtchoukTable {
    n: u64,
    values: Vec<Vec<BigInt>>,
}

impl KrawtchoukTable {
    pub fn new(q: u64, n: u64) -> Result<Self> {
        let mut values = Vec::with_capacity(n as usize);
        for k in 1..=n {
            let row = (0..=n)
                .map(|x| PolyParams::new(q, n, k, x).map(|p| krawtchouk(&p)))
                .collect::<Result<Vec<_>>>()?;
            values.push(row);
        }
        Ok(KrawtchoukTable { n, values })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `P_k(n;i)`; `k` is 1-based.
    pub fn get(&self, k: u64, i: u64) -> &BigInt {
        &self.values[(k - 1) as usize][i as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn pp(q: u64, n: u64, k: u64, x: u64) -> PolyParams {
        PolyParams::new(q, n, k, x).unwrap()
    }

    /// Three-term recurrence in the degree, independent of the defining sum:
    /// (k+1) P_{k+1} = [(n-k)(q-1) + k - q x] P_k - (q-1)(n-k+1) P_{k-1}.
    fn krawtchouk_by_recurrence(q: i64, n: i64, k: i64, x: i64) -> BigInt {
        let mut prev = BigInt::one();
        let mut cur = BigInt::from((q - 1) * n - q * x);
        if k == 0 {
            return prev;
        }
        for j in 1..k {
            let next = (BigInt::from((n - j) * (q - 1) + j - q * x) * &cur
                - BigInt::from((q - 1) * (n - j + 1)) * &prev)
                / BigInt::from(j + 1);
            prev = cur;
            cur = next;
        }
        cur
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(5, 0), BigUint::one());
        assert_eq!(binomial(-1, 0), BigUint::zero());
        assert_eq!(binomial(4, -1), BigUint::zero());
        assert_eq!(binomial(60, 30), BigUint::from(118264581564861424u64));
    }

    #[test]
    fn params_reject_out_of_range() {
        assert!(PolyParams::new(1, 4, 1, 0).is_err());
        assert!(PolyParams::new(2, 0, 1, 0).is_err());
        assert!(PolyParams::new(2, 4, 0, 0).is_err());
        assert!(PolyParams::new(2, 4, 5, 0).is_err());
        assert!(PolyParams::new(2, 4, 2, 5).is_err());
    }

    #[test]
    fn krawtchouk_examples() {
        assert_eq!(krawtchouk(&pp(3, 4, 1, 2)), BigInt::from(2));
        assert_eq!(krawtchouk(&pp(3, 4, 2, 0)), BigInt::from(24));
        assert_eq!(krawtchouk(&pp(2, 4, 2, 1)), BigInt::zero());
        assert_eq!(krawtchouk_by_recurrence(2, 4, 2, 1), BigInt::zero());
    }

    #[test]
    fn pk_minus_examples() {
        assert_eq!(pk_minus(&pp(3, 4, 1, 2)), int(3));
        assert_eq!(pk_minus(&pp(2, 4, 2, 1)), int(3));
        for q in 2..6 {
            for n in 1..6 {
                for k in 1..=n {
                    assert!(pk_minus(&pp(q, n, k, 0)).is_zero());
                }
            }
        }
    }

    #[test]
    fn pk_plus_examples() {
        assert_eq!(pk_plus(&pp(2, 4, 2, 1)), int(3));
        assert_eq!(pk_plus(&pp(3, 4, 1, 2)), int(5));
        assert_eq!(pk_plus(&pp(3, 4, 2, 0)), int(24));
    }

    #[test]
    fn scaled_pk_minus_examples() {
        assert_eq!(scaled_pk_minus(&pp(3, 4, 1, 2)).unwrap(), BigInt::from(4));
        assert_eq!(scaled_pk_minus(&pp(2, 4, 2, 1)).unwrap(), BigInt::from(3));
        assert!(scaled_pk_minus(&pp(5, 6, 3, 0)).unwrap().is_zero());
    }

    #[test]
    fn pk_minus_can_be_half_integral() {
        // q=3, n=1, k=1, x=1: bracket (2 - (-1)) = 3, halved.
        assert_eq!(pk_minus(&pp(3, 1, 1, 1)), frac(3, 2));
    }

    #[test]
    fn table_matches_pointwise() {
        let t = KrawtchoukTable::new(3, 5).unwrap();
        assert_eq!(t.n(), 5);
        for k in 1..=5 {
            for i in 0..=5 {
                assert_eq!(t.get(k, i), &krawtchouk(&pp(3, 5, k, i)));
            }
        }
    }

    fn params() -> impl Strategy<Value = PolyParams> {
        (2u64..9, 1u64..13)
            .prop_flat_map(|(q, n)| (Just(q), Just(n), 1..=n, 0..=n))
            .prop_map(|(q, n, k, x)| pp(q, n, k, x))
    }

    proptest! {
        #[test]
        fn split_sums_to_weight_class(p in params()) {
            prop_assert_eq!(pk_plus(&p) + pk_minus(&p), int(weight_class_size(p.q, p.n, p.k)));
        }

        #[test]
        fn split_difference_is_krawtchouk(p in params()) {
            prop_assert_eq!(pk_plus(&p) - pk_minus(&p), int(krawtchouk(&p)));
        }

        #[test]
        fn krawtchouk_matches_recurrence(p in params()) {
            prop_assert_eq!(
                krawtchouk(&p),
                krawtchouk_by_recurrence(p.q as i64, p.n as i64, p.k as i64, p.x as i64)
            );
        }

        #[test]
        fn degree_one_is_linear(q in 2u64..9, n in 1u64..13, x in 0u64..13) {
            prop_assume!(x <= n);
            let expected = BigInt::from((q - 1) as i64 * n as i64 - q as i64 * x as i64);
            prop_assert_eq!(krawtchouk(&pp(q, n, 1, x)), expected);
        }

        #[test]
        fn scaled_matches_rational_route(p in params()) {
            let scaled = scaled_pk_minus(&p).unwrap();
            prop_assert!(scaled >= BigInt::zero());
            let via_rational = pk_minus(&p) * frac(2 * (p.q as i64 - 1), p.q as i64);
            prop_assert_eq!(int(scaled), via_rational);
        }

        #[test]
        fn binary_pk_minus_is_integral(n in 1u64..16, k in 1u64..16, x in 0u64..16) {
            prop_assume!(k <= n && x <= n);
            prop_assert!(crate::rational::is_integer(&pk_minus(&pp(2, n, k, x))));
        }
    }
}
