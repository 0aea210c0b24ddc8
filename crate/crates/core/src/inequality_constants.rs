//! Closed-form right-hand sides: balanced maxima of pairwise-product sums, the
//! upper bound on `S(k)` for general codes, the improved Delsarte right-hand
//! side, the constant-weight constants `T_1..T_3`, and the k=1 special case
//! written in terms of `M_i`, `M'_i`.
//!
//! Divisions are Euclidean throughout (`0 <= remainder < divisor`). Inputs are
//! plain integers; `q` need not be a prime power here.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::polynomials::{binom, scaled_pk_minus, weight_class_size, PolyParams};
use crate::rational::{int, Rational};

/// `sum_{c<d} n_c n_d` over the balanced split of `total` into `parts` parts:
/// `total = s*parts + rho`, giving `C(parts-rho,2) s^2 + (parts-rho) rho s(s+1) + C(rho,2)(s+1)^2`.
pub fn max_pairwise_products(total: &BigInt, parts: u64) -> BigInt {
    assert!(parts >= 1, "at least one part");
    let h = BigInt::from(parts);
    let (s, rho) = total.div_mod_floor(&h);
    let small = &h - &rho;
    let s1 = &s + 1;
    choose2(&small) * &s * &s + &small * &rho * &s * &s1 + choose2(&rho) * &s1 * &s1
}

fn choose2(v: &BigInt) -> BigInt {
    if v < &BigInt::from(2) {
        BigInt::zero()
    } else {
        v * (v - 1) / 2
    }
}

/// Result of an exhaustive maximization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceMax {
    pub max: BigInt,
    /// Every maximizer satisfies the balance conditions.
    pub balanced_only: bool,
    /// At least one balanced configuration attains the maximum.
    pub balanced_attains: bool,
}

fn visit_compositions(total: u64, parts: usize, f: &mut dyn FnMut(&[u64])) {
    fn rec(remaining: u64, slot: usize, buf: &mut Vec<u64>, f: &mut dyn FnMut(&[u64])) {
        if slot + 1 == buf.len() {
            buf[slot] = remaining;
            f(buf);
            return;
        }
        for v in 0..=remaining {
            buf[slot] = v;
            rec(remaining - v, slot + 1, buf, f);
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    let mut buf = vec![0u64; parts];
    rec(total, 0, &mut buf, f);
}

fn pair_sum(parts: &[u64]) -> u64 {
    let total: u64 = parts.iter().sum();
    let squares: u64 = parts.iter().map(|v| v * v).sum();
    (total * total - squares) / 2
}

fn is_balanced(parts: &[u64]) -> bool {
    match (parts.iter().min(), parts.iter().max()) {
        (Some(lo), Some(hi)) => hi - lo <= 1,
        _ => true,
    }
}

/// Exhaustive maximum of `sum_{c<d} n_c n_d` over all compositions of
/// `total` into `parts` nonnegative parts. Guarded to `total <= 16`, `parts <= 5`.
pub fn max_pairwise_products_bruteforce(total: u64, parts: u64) -> Result<BruteForceMax> {
    if parts < 1 {
        return Err(invalid("need at least one part"));
    }
    if total > 16 || parts > 5 {
        return Err(Error::GuardExceeded {
            size: (total as u128 + 1).pow(parts as u32),
            limit: 17u128.pow(5),
        });
    }
    let mut best = 0u64;
    let mut values = Vec::new();
    visit_compositions(total, parts as usize, &mut |c| {
        let v = pair_sum(c);
        best = best.max(v);
        values.push((v, is_balanced(c)));
    });
    Ok(BruteForceMax {
        max: BigInt::from(best),
        balanced_only: values.iter().all(|&(v, b)| v < best || b),
        balanced_attains: values.iter().any(|&(v, b)| v == best && b),
    })
}

fn validate_general(q: u64, n: u64, m: u64, k: u64) -> Result<()> {
    if q < 2 {
        return Err(invalid(format!("q={q} must be at least 2")));
    }
    if k < 1 || k > n {
        return Err(invalid(format!("k={k} must lie in 1..={n}")));
    }
    if m < 1 {
        return Err(invalid("code size M must be at least 1"));
    }
    Ok(())
}

/// `(q-1)^k C(n,k) [ (q-1)/(2q) M^2 + r(r-q)/(2q) ]` with `r = M mod q`.
pub fn qt1_upper_bound(q: u64, n: u64, m: u64, k: u64) -> Result<Rational> {
    validate_general(q, n, m, k)?;
    let r = (m % q) as i64;
    let q_i = q as i64;
    let m_b = BigInt::from(m);
    let inner = BigInt::from(q - 1) * &m_b * &m_b + BigInt::from(r * (r - q_i));
    Ok(int(weight_class_size(q, n, k)) * Rational::new(inner, BigInt::from(2 * q)))
}

/// `(1/M) r(q-r) (q-1)^(k-1) C(n,k)` with `r = M mod q`.
pub fn delthm_rhs(q: u64, n: u64, m: u64, k: u64) -> Result<Rational> {
    validate_general(q, n, m, k)?;
    let r = m % q;
    let num = BigInt::from(r * (q - r)) * crate::polynomials::pow(q - 1, k - 1) * binom(n, k);
    Ok(Rational::new(num, BigInt::from(m)))
}

/// Maximum of `sum_i sum_{c<d} n_ci n_di` over `q x columns` nonnegative
/// matrices with every column summing to `col_sum` and rows `2..q` summing
/// to `rest_total` overall, attained by spreading `rest_total` evenly across
/// columns and each column's share evenly across rows `2..q`.
///
/// Returns the three pieces (first row against the rest for all columns;
/// rest-vs-rest for the `columns - r` columns with share `quot`; rest-vs-rest
/// for the `r` columns with share `quot + 1`).
pub fn balanced_matrix_max(
    col_sum: &BigInt,
    rest_total: &BigInt,
    q: u64,
    columns: &BigInt,
) -> Result<BalancedPieces> {
    if q < 2 {
        return Err(invalid("q must be at least 2"));
    }
    if !columns.is_positive() {
        return Err(invalid("need at least one column"));
    }
    let (quot, rem) = rest_total.div_mod_floor(columns);
    let full = columns - &rem;
    let quot1: BigInt = &quot + 1;
    let (s, t) = quot.div_mod_floor(&BigInt::from(q - 1));
    let (s1, t1) = quot1.div_mod_floor(&BigInt::from(q - 1));
    let cross = &full * (col_sum - &quot) * &quot + &rem * (col_sum - &quot1) * &quot1;
    let low = &full * max_pairwise_products(&quot, q - 1);
    let high = &rem * max_pairwise_products(&quot1, q - 1);
    Ok(BalancedPieces {
        quotient: quot,
        remainder: rem,
        s,
        t,
        s_prime: s1,
        t_prime: t1,
        cross,
        low,
        high,
    })
}

/// Intermediate values of [`balanced_matrix_max`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedPieces {
    pub quotient: BigInt,
    pub remainder: BigInt,
    pub s: BigInt,
    pub t: BigInt,
    pub s_prime: BigInt,
    pub t_prime: BigInt,
    pub cross: BigInt,
    pub low: BigInt,
    pub high: BigInt,
}

impl BalancedPieces {
    pub fn total(&self) -> BigInt {
        &self.cross + &self.low + &self.high
    }
}

/// The constants `q_k, r_k, s_k, t_k, s'_k, t'_k, T_1, T_2, T_3, T` for a
/// constant-weight code of length `n`, weight `w`, size `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CWConstantSet {
    #[serde(with = "bigint_str")]
    pub q_k: BigInt,
    #[serde(with = "bigint_str")]
    pub r_k: BigInt,
    #[serde(with = "bigint_str")]
    pub s_k: BigInt,
    #[serde(with = "bigint_str")]
    pub t_k: BigInt,
    #[serde(with = "bigint_str")]
    pub s_prime_k: BigInt,
    #[serde(with = "bigint_str")]
    pub t_prime_k: BigInt,
    #[serde(with = "bigint_str")]
    pub t1: BigInt,
    #[serde(with = "bigint_str")]
    pub t2: BigInt,
    #[serde(with = "bigint_str")]
    pub t3: BigInt,
    #[serde(with = "bigint_str")]
    pub t: BigInt,
}

pub(crate) mod bigint_str {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// The dividend/divisor pair `(M * scaled_pk_minus(w), (q-1)^k C(n,k))`.
fn cw_division(q: u64, n: u64, w: u64, m: u64, k: u64) -> Result<(BigInt, BigInt)> {
    let p = PolyParams::new(q, n, k, w)?;
    let dividend = BigInt::from(m) * scaled_pk_minus(&p)?;
    Ok((dividend, weight_class_size(q, n, k)))
}

pub fn cw_constants(q: u64, n: u64, w: u64, m: u64, k: u64) -> Result<CWConstantSet> {
    validate_general(q, n, m, k)?;
    if w > n {
        return Err(invalid(format!("weight w={w} exceeds length n={n}")));
    }
    let (dividend, columns) = cw_division(q, n, w, m, k)?;
    let pieces = balanced_matrix_max(&BigInt::from(m), &dividend, q, &columns)?;
    let t1 = pieces.cross.clone();
    let t2 = pieces.low.clone();
    let t3 = pieces.high.clone();
    if t1.is_negative() || t2.is_negative() || t3.is_negative() {
        return Err(Error::Arithmetic(format!(
            "negative T term for q={q}, n={n}, w={w}, M={m}, k={k}"
        )));
    }
    Ok(CWConstantSet {
        t: &t1 + &t2 + &t3,
        q_k: pieces.quotient,
        r_k: pieces.remainder,
        s_k: pieces.s,
        t_k: pieces.t,
        s_prime_k: pieces.s_prime,
        t_prime_k: pieces.t_prime,
        t1,
        t2,
        t3,
    })
}

/// `(M-1)(q-1)^k C(n,k) - 2q/((q-1)M) * T(k)`.
pub fn maintr_rhs(q: u64, n: u64, w: u64, m: u64, k: u64) -> Result<Rational> {
    let c = cw_constants(q, n, w, m, k)?;
    let lead = int(BigInt::from(m - 1) * weight_class_size(q, n, k));
    let scale = Rational::new(BigInt::from(2 * q), BigInt::from((q - 1) * m));
    Ok(lead - scale * int(c.t))
}

/// The k=1 quantities of the constant-weight bound written directly in terms
/// of `Mw = kn + t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OstergardTerms {
    pub k: BigInt,
    pub t: BigInt,
    /// `M_0 = M-k-1`, `M_i = floor((k+i)/(q-1))` for `1 <= i <= q-1`.
    pub m_parts: Vec<BigInt>,
    /// `M'_0 = M-k`, `M'_i = floor((k+i-1)/(q-1))` for `1 <= i <= q-1`.
    pub m_prime_parts: Vec<BigInt>,
}

impl OstergardTerms {
    pub fn new(q: u64, n: u64, w: u64, m: u64) -> Result<Self> {
        if q < 2 || n < 1 || w < 1 || w > n || m < 1 {
            return Err(invalid(format!(
                "need q >= 2, 1 <= w <= n, M >= 1; got q={q}, n={n}, w={w}, M={m}"
            )));
        }
        let (k, t) = BigInt::from(m * w).div_mod_floor(&BigInt::from(n));
        let m_b = BigInt::from(m);
        let qm1 = BigInt::from(q - 1);
        let mut m_parts = vec![&m_b - &k - 1];
        let mut m_prime_parts = vec![&m_b - &k];
        for i in 1..q {
            m_parts.push((&k + BigInt::from(i)).div_floor(&qm1));
            m_prime_parts.push((&k + BigInt::from(i) - BigInt::from(1)).div_floor(&qm1));
        }
        Ok(OstergardTerms {
            k,
            t,
            m_parts,
            m_prime_parts,
        })
    }
}

fn pair_products(parts: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            acc += &parts[i] * &parts[j];
        }
    }
    acc
}

/// `2t sum_{i<j} M_i M_j + 2(n-t) sum_{i<j} M'_i M'_j`.
pub fn ostergard_rhs(q: u64, n: u64, w: u64, m: u64) -> Result<BigInt> {
    let terms = OstergardTerms::new(q, n, w, m)?;
    let n_b = BigInt::from(n);
    Ok(BigInt::from(2) * &terms.t * pair_products(&terms.m_parts)
        + BigInt::from(2) * (n_b - &terms.t) * pair_products(&terms.m_prime_parts))
}

/// Exhaustive maximum over `q x columns` matrices with column sums `col_sum`
/// and rows `2..q` totalling `rest_total`. Guarded to `q <= 4`, `columns <= 4`,
/// `col_sum <= 8`.
///
/// The objective is a sum of per-column terms, so every matrix is visited as a
/// split of `rest_total` into column shares followed by every composition of
/// each share over rows `2..q`; the per-column maxima and maximizer sets are
/// tabulated by full enumeration first.
pub fn matrix_balancing_max_bruteforce(
    col_sum: u64,
    rest_total: u64,
    q: u64,
    columns: u64,
) -> Result<Option<BruteForceMax>> {
    if q < 2 || columns < 1 {
        return Err(invalid("need q >= 2 and at least one column"));
    }
    if q > 4 || columns > 4 || col_sum > 8 {
        return Err(Error::GuardExceeded {
            size: (col_sum as u128 + 1).pow((q * columns) as u32),
            limit: 9u128.pow(16),
        });
    }
    if rest_total > col_sum * columns {
        return Ok(None);
    }
    // For each share m of a column: the best column value, whether every
    // maximizing split of m over rows 2..q is balanced, and whether some is.
    let mut per_share = Vec::with_capacity(col_sum as usize + 1);
    for share in 0..=col_sum {
        let mut best = 0u64;
        let mut rows: Vec<(u64, bool)> = Vec::new();
        visit_compositions(share, (q - 1) as usize, &mut |rest| {
            let mut col = Vec::with_capacity(q as usize);
            col.push(col_sum - share);
            col.extend_from_slice(rest);
            let v = pair_sum(&col);
            best = best.max(v);
            rows.push((v, is_balanced(rest)));
        });
        let only = rows.iter().all(|&(v, b)| v < best || b);
        let attains = rows.iter().any(|&(v, b)| v == best && b);
        per_share.push((best, only, attains));
    }
    let mut best = 0u64;
    let mut shares_seen: Vec<(u64, bool, bool)> = Vec::new();
    let mut shares = vec![0u64; columns as usize];
    loop {
        if shares.iter().sum::<u64>() == rest_total {
            let value: u64 = shares.iter().map(|&s| per_share[s as usize].0).sum();
            let first_row: Vec<u64> = shares.iter().map(|&s| col_sum - s).collect();
            let inner_only = shares.iter().all(|&s| per_share[s as usize].1);
            let inner_attains = shares.iter().all(|&s| per_share[s as usize].2);
            let bal = is_balanced(&first_row);
            best = best.max(value);
            shares_seen.push((value, bal && inner_only, bal && inner_attains));
        }
        // odometer over 0..=col_sum
        let mut i = shares.len();
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if shares[i] < col_sum {
                shares[i] += 1;
                advanced = true;
                break;
            }
            shares[i] = 0;
        }
        if !advanced {
            break;
        }
    }
    Ok(Some(BruteForceMax {
        max: BigInt::from(best),
        balanced_only: shares_seen.iter().all(|&(v, only, _)| v < best || only),
        balanced_attains: shares_seen.iter().any(|&(v, _, att)| v == best && att),
    }))
}
