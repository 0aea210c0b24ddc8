//! Explicit codes and the brute-force side of every identity: distance
//! distributions, the double-counting quantities `S(k)`, `S_1(k)`, `S_0(k)`,
//! and the suites that compare them with the closed forms.
//!
//! `S(k)` is computed by walking column combinations; `S_1(k)` and `S_0(k)`
//! walk rows and row pairs. The two routes share nothing beyond field
//! arithmetic, so `S_1(k) = 2 S(k)` is a real cross-check.

use std::collections::HashSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::finite_field::{advance_nonzero, check_guard, PrimeField};
use crate::inequality_constants::{cw_constants, delthm_rhs, maintr_rhs, qt1_upper_bound};
use crate::polynomials::{
    binom, krawtchouk, pk_minus, pk_plus, pow, scaled_pk_minus, weight_class_size, PolyParams,
};
use crate::rational::{int, Rational};
use crate::report::{CheckEntry, Params, VerificationReport};

/// An `M x n` array over `{0..q-1}` with pairwise distinct rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Code {
    q: u64,
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl Code {
    pub fn new(q: u64, n: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        if q < 2 {
            return Err(invalid(format!("alphabet size q={q} must be at least 2")));
        }
        if n < 1 {
            return Err(invalid("length must be at least 1"));
        }
        if rows.is_empty() {
            return Err(invalid("a code needs at least one codeword"));
        }
        let mut seen = HashSet::with_capacity(rows.len());
        for row in &rows {
            if row.len() != n {
                return Err(Error::LengthMismatch(row.len(), n));
            }
            if let Some(bad) = row.iter().find(|&&s| s >= q) {
                return Err(invalid(format!(
                    "symbol {bad} outside alphabet of size {q}"
                )));
            }
            if !seen.insert(row) {
                return Err(invalid(format!("duplicate codeword {row:?}")));
            }
        }
        Ok(Code { q, n, rows })
    }

    /// Parses rows written as digit strings, e.g. `["1100", "0011"]`.
    pub fn from_strs(q: u64, rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.chars()
                    .map(|c| {
                        c.to_digit(36)
                            .map(u64::from)
                            .ok_or_else(|| invalid(format!("bad symbol {c:?}")))
                    })
                    .collect::<Result<Vec<u64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let n = parsed.first().map_or(0, Vec::len);
        Code::new(q, n, parsed)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// `Some(w)` when every codeword has exactly `w` nonzero coordinates.
    pub fn constant_weight(&self) -> Option<usize> {
        let w = weight(&self.rows[0]);
        self.rows.iter().all(|r| weight(r) == w).then_some(w)
    }

    fn field(&self) -> Result<PrimeField> {
        PrimeField::new(self.q)
    }
}

pub fn weight(word: &[u64]) -> usize {
    word.iter().filter(|&&s| s != 0).count()
}

pub fn hamming_distance(u: &[u64], v: &[u64]) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    Ok(u.iter().zip(v).filter(|(a, b)| a != b).count())
}

/// `B_i = |{(u,v) in C^2 : d(u,v) = i}| / M`, together with the raw counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceDistribution {
    pub m: usize,
    pub pair_counts: Vec<u64>,
    pub b: Vec<Rational>,
}

impl DistanceDistribution {
    pub fn n(&self) -> usize {
        self.b.len() - 1
    }

    /// Smallest nonzero distance, if the code has two words.
    pub fn minimum_distance(&self) -> Option<usize> {
        (1..self.pair_counts.len()).find(|&i| self.pair_counts[i] > 0)
    }
}

pub fn distance_distribution(code: &Code) -> DistanceDistribution {
    let mut pair_counts = vec![0u64; code.n + 1];
    for u in &code.rows {
        for v in &code.rows {
            let d = u.iter().zip(v).filter(|(a, b)| a != b).count();
            pair_counts[d] += 1;
        }
    }
    let m = code.rows.len();
    let b = pair_counts
        .iter()
        .map(|&c| Rational::new(BigInt::from(c), BigInt::from(m)))
        .collect();
    DistanceDistribution { m, pair_counts, b }
}

/// Occurrences `x_c` of each symbol `c-1` in a column of `F_q^M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolCounts {
    pub counts: Vec<u64>,
}

impl SymbolCounts {
    pub fn from_column(column: impl IntoIterator<Item = u64>, q: u64) -> Self {
        let mut counts = vec![0u64; q as usize];
        for s in column {
            counts[s as usize] += 1;
        }
        SymbolCounts { counts }
    }

    /// `sum_{c<d} x_c x_d`.
    pub fn pair_product_sum(&self) -> u64 {
        let total: u64 = self.counts.iter().sum();
        let squares: u64 = self.counts.iter().map(|x| x * x).sum();
        (total * total - squares) / 2
    }

    /// `sum_{c>=2} x_c`, the number of nonzero entries.
    pub fn nonzero(&self) -> u64 {
        self.counts[1..].iter().sum()
    }
}

fn check_k(code: &Code, k: usize) -> Result<()> {
    if k < 1 || k > code.n {
        return Err(invalid(format!("k={k} must lie in 1..={}", code.n)));
    }
    let size = weight_class_size(code.q, code.n as u64, k as u64);
    check_guard(size.to_u128().unwrap_or(u128::MAX))
}

/// `S(k)`: for every column subset `i_1<..<i_k` and every `alpha` in
/// `(F_q*)^k`, the pair-product sum of the symbol counts of
/// `alpha_1 u'_{i_1} + .. + alpha_k u'_{i_k}`.
pub fn s_of_k_direct(code: &Code, k: usize) -> Result<BigInt> {
    let field = code.field()?;
    check_k(code, k)?;
    let q = code.q;
    let m = code.rows.len();
    let mut total: u128 = 0;
    let mut combined = vec![0u64; m];
    for cols in (0..code.n).combinations(k) {
        let mut alpha = vec![1u64; k];
        loop {
            for (slot, row) in combined.iter_mut().zip(&code.rows) {
                *slot = cols
                    .iter()
                    .zip(&alpha)
                    .fold(0, |acc, (&c, &a)| field.add(acc, field.mul(a, row[c])));
            }
            let counts = SymbolCounts::from_column(combined.iter().copied(), q);
            total += counts.pair_product_sum() as u128;
            if !advance_nonzero(&mut alpha, q) {
                break;
            }
        }
    }
    Ok(BigInt::from(total))
}

/// `S_1(k)`: the number of (ordered row pair `m != l`, column subset, `alpha`)
/// with `alpha . (row_m - row_l)|subset != 0`.
pub fn s1_of_k_paircount(code: &Code, k: usize) -> Result<BigInt> {
    let field = code.field()?;
    check_k(code, k)?;
    let q = code.q;
    let subsets: Vec<Vec<usize>> = (0..code.n).combinations(k).collect();
    let mut total: u128 = 0;
    for (mi, u) in code.rows.iter().enumerate() {
        for (li, v) in code.rows.iter().enumerate() {
            if mi == li {
                continue;
            }
            let diff: Vec<u64> = u.iter().zip(v).map(|(&a, &b)| field.sub(a, b)).collect();
            for cols in &subsets {
                let entries: Vec<u64> = cols.iter().map(|&c| diff[c]).collect();
                let mut alpha = vec![1u64; k];
                loop {
                    if field.dot(&alpha, &entries) != 0 {
                        total += 1;
                    }
                    if !advance_nonzero(&mut alpha, q) {
                        break;
                    }
                }
            }
        }
    }
    Ok(BigInt::from(total))
}

/// `S_0(k)`: the number of (row, column subset, `alpha`) with
/// `alpha . row|subset != 0`, for a constant-weight-`w` code.
pub fn s0_of_k_paircount(code: &Code, w: usize, k: usize) -> Result<BigInt> {
    let field = code.field()?;
    check_k(code, k)?;
    if code.rows.iter().any(|r| weight(r) != w) {
        return Err(Error::NotConstantWeight(w));
    }
    let q = code.q;
    let subsets: Vec<Vec<usize>> = (0..code.n).combinations(k).collect();
    let mut total: u128 = 0;
    for row in &code.rows {
        for cols in &subsets {
            let entries: Vec<u64> = cols.iter().map(|&c| row[c]).collect();
            let mut alpha = vec![1u64; k];
            loop {
                if field.dot(&alpha, &entries) != 0 {
                    total += 1;
                }
                if !advance_nonzero(&mut alpha, q) {
                    break;
                }
            }
        }
    }
    Ok(BigInt::from(total))
}

fn word_space_size(q: u64, n: usize) -> Result<u64> {
    q.checked_pow(n as u32)
        .filter(|&s| s <= usize::MAX as u64)
        .ok_or_else(|| invalid(format!("word space {q}^{n} too large")))
}

fn word_from_index(mut index: u64, q: u64, n: usize) -> Vec<u64> {
    let mut word = vec![0u64; n];
    for slot in word.iter_mut().rev() {
        *slot = index % q;
        index /= q;
    }
    word
}

/// Every word of `F_q^n` in lexicographic order.
pub fn all_words(q: u64, n: usize) -> Result<Vec<Vec<u64>>> {
    let size = word_space_size(q, n)?;
    check_guard(size as u128)?;
    Ok((0..size).map(|i| word_from_index(i, q, n)).collect())
}

/// Every weight-`w` word of `F_q^n` in lexicographic order.
pub fn constant_weight_words(q: u64, n: usize, w: usize) -> Result<Vec<Vec<u64>>> {
    if w > n {
        return Err(invalid(format!("weight {w} exceeds length {n}")));
    }
    let count = binom(n as u64, w as u64) * pow(q - 1, w as u64);
    check_guard(count.to_u128().unwrap_or(u128::MAX))?;
    let mut out = Vec::new();
    for support in (0..n).combinations(w) {
        let mut symbols = vec![1u64; w];
        loop {
            let mut word = vec![0u64; n];
            for (&pos, &s) in support.iter().zip(&symbols) {
                word[pos] = s;
            }
            out.push(word);
            if !advance_nonzero(&mut symbols, q) {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

fn sample_code(q: u64, n: usize, space: Vec<Vec<u64>>, m: usize, seed: u64) -> Result<Code> {
    if m < 1 || m > space.len() {
        return Err(invalid(format!(
            "cannot pick {m} distinct words from a space of {}",
            space.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<usize> = sample(&mut rng, space.len(), m).into_vec();
    picked.sort_unstable();
    let rows = picked.into_iter().map(|i| space[i].clone()).collect();
    Code::new(q, n, rows)
}

/// `m` distinct words drawn uniformly from `F_q^n` with a ChaCha8 generator
/// seeded by `seed`. Rows come back in lexicographic order.
pub fn random_code(q: u64, n: usize, m: usize, seed: u64) -> Result<Code> {
    if q < 2 || n < 1 {
        return Err(invalid("need q >= 2 and n >= 1"));
    }
    sample_code(q, n, all_words(q, n)?, m, seed)
}

/// `m` distinct weight-`w` words drawn uniformly, as [`random_code`].
pub fn random_cw_code(q: u64, n: usize, w: usize, m: usize, seed: u64) -> Result<Code> {
    if q < 2 || n < 1 {
        return Err(invalid("need q >= 2 and n >= 1"));
    }
    sample_code(q, n, constant_weight_words(q, n, w)?, m, seed)
}

fn enumerate_from(
    q: u64,
    n: usize,
    space: Vec<Vec<u64>>,
    m: usize,
) -> Result<impl Iterator<Item = Code>> {
    if m < 1 || m > space.len() {
        return Err(invalid(format!(
            "cannot pick {m} distinct words from a space of {}",
            space.len()
        )));
    }
    let subsets = binom(space.len() as u64, m as u64);
    check_guard(subsets.to_u128().unwrap_or(u128::MAX))?;
    Ok((0..space.len()).combinations(m).map(move |idx| Code {
        q,
        n,
        rows: idx.into_iter().map(|i| space[i].clone()).collect(),
    }))
}

/// Every `m`-subset of `F_q^n`, each exactly once.
pub fn enumerate_all_codes(q: u64, n: usize, m: usize) -> Result<impl Iterator<Item = Code>> {
    enumerate_from(q, n, all_words(q, n)?, m)
}

/// Every `m`-subset of the weight-`w` words of `F_q^n`, each exactly once.
pub fn enumerate_all_cw_codes(
    q: u64,
    n: usize,
    w: usize,
    m: usize,
) -> Result<impl Iterator<Item = Code>> {
    enumerate_from(q, n, constant_weight_words(q, n, w)?, m)
}

/// Largest word space [`max_code_size`] will search.
pub const MAX_CODE_SEARCH_SPACE: usize = 128;

/// Exact maximum size of a code in `F_q^n` (weight-`w` words only when `w`
/// is given) with minimum distance at least `d`, by exhaustive branch and
/// bound over cliques of the distance graph.
pub fn max_code_size(q: u64, n: usize, d: usize, w: Option<usize>) -> Result<usize> {
    let words = match w {
        Some(w) => constant_weight_words(q, n, w)?,
        None => all_words(q, n)?,
    };
    if words.len() > MAX_CODE_SEARCH_SPACE {
        return Err(Error::GuardExceeded {
            size: words.len() as u128,
            limit: MAX_CODE_SEARCH_SPACE as u128,
        });
    }
    if words.is_empty() {
        return Ok(0);
    }
    let adj: Vec<u128> = words
        .iter()
        .map(|u| {
            words.iter().enumerate().fold(0u128, |acc, (j, v)| {
                let dist = u.iter().zip(v).filter(|(a, b)| a != b).count();
                if dist >= d && dist > 0 {
                    acc | (1u128 << j)
                } else {
                    acc
                }
            })
        })
        .collect();
    let all = if words.len() == 128 {
        u128::MAX
    } else {
        (1u128 << words.len()) - 1
    };
    let mut best = 1usize;
    expand_clique(&adj, 0, all, &mut best);
    Ok(best)
}

/// Greedy colouring of `cand`; returns vertices in colouring order with the
/// colour number of each, which bounds the clique size reachable from it.
fn colour_order(adj: &[u128], cand: u128) -> Vec<(usize, usize)> {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut uncoloured = cand;
    let mut colour = 0;
    while uncoloured != 0 {
        colour += 1;
        let mut available = uncoloured;
        while available != 0 {
            let v = available.trailing_zeros() as usize;
            available &= !(1u128 << v);
            available &= !adj[v];
            uncoloured &= !(1u128 << v);
            order.push((v, colour));
        }
    }
    order
}

fn expand_clique(adj: &[u128], size: usize, mut cand: u128, best: &mut usize) {
    let order = colour_order(adj, cand);
    for &(v, colour) in order.iter().rev() {
        if size + colour <= *best {
            return;
        }
        let next = cand & adj[v];
        if next == 0 {
            *best = (*best).max(size + 1);
        } else {
            expand_clique(adj, size + 1, next, best);
        }
        cand &= !(1u128 << v);
    }
}

fn base_params(code: &Code, k: usize, w: Option<usize>) -> Params {
    let p = Params::new()
        .with("q", code.q)
        .with("n", code.n)
        .with("M", code.rows.len())
        .with("k", k);
    match w {
        Some(w) => p.with("w", w),
        None => p,
    }
}

fn weighted_sum<F>(dist: &DistanceDistribution, from: usize, mut value: F) -> Result<Rational>
where
    F: FnMut(u64) -> Result<Rational>,
{
    let mut acc = Rational::zero();
    for (i, b) in dist.b.iter().enumerate().skip(from) {
        if !b.is_zero() {
            acc += value(i as u64)? * b;
        }
    }
    Ok(acc)
}

fn require_weight(code: &Code, w: Option<usize>) -> Result<()> {
    if let Some(w) = w {
        if code.rows.iter().any(|r| weight(r) != w) {
            return Err(Error::NotConstantWeight(w));
        }
    }
    Ok(())
}

/// Exact identity checks for every `k` in `1..=n`: the pair-count identity
/// `S_1 = 2S`, the two `P_k^-` / `P_k^+` sums against `S(k)`, and (for
/// constant-weight codes) the row count `S_0(k)`.
pub fn verify_identities(
    code: &Code,
    w: Option<usize>,
    extra: &Params,
) -> Result<VerificationReport> {
    require_weight(code, w)?;
    let dist = distance_distribution(code);
    let (q, n, m) = (code.q, code.n as u64, code.rows.len() as u64);
    let mut report = VerificationReport::new();
    let scale = Rational::new(BigInt::from(q), BigInt::from((q - 1) * m));
    for k in 1..=code.n {
        let mut params = base_params(code, k, w);
        params.0.extend(extra.0.clone());
        let s = s_of_k_direct(code, k)?;
        let s1 = s1_of_k_paircount(code, k)?;
        report.push(CheckEntry::equality(
            "pair_count_doubles_s",
            &params,
            &int(BigInt::from(2) * &s),
            &int(s1),
        ));
        let s_scaled = &scale * int(s);
        let minus_sum = weighted_sum(&dist, 1, |i| {
            Ok(pk_minus(&PolyParams::new(q, n, k as u64, i)?))
        })?;
        report.push(CheckEntry::equality(
            "pk_minus_sum",
            &params,
            &s_scaled,
            &minus_sum,
        ));
        let plus_sum = weighted_sum(&dist, 1, |i| {
            Ok(pk_plus(&PolyParams::new(q, n, k as u64, i)?))
        })?;
        let plus_expected =
            int(BigInt::from(m - 1) * weight_class_size(q, n, k as u64)) - &s_scaled;
        report.push(CheckEntry::equality(
            "pk_plus_sum",
            &params,
            &plus_expected,
            &plus_sum,
        ));
        if let Some(w) = w {
            let s0 = s0_of_k_paircount(code, w, k)?;
            let expected =
                BigInt::from(m) * scaled_pk_minus(&PolyParams::new(q, n, k as u64, w as u64)?)?;
            report.push(CheckEntry::equality(
                "cw_row_count",
                &params,
                &int(expected),
                &int(s0),
            ));
        }
    }
    Ok(report)
}

/// Exact inequality checks for every `k`: the general upper bound on `S(k)`,
/// the Delsarte and improved Delsarte inequalities, and (for constant-weight
/// codes) `S(k) <= T(k)` and the constant-weight inequality.
pub fn verify_inequalities(
    code: &Code,
    w: Option<usize>,
    extra: &Params,
) -> Result<VerificationReport> {
    require_weight(code, w)?;
    let dist = distance_distribution(code);
    let (q, n, m) = (code.q, code.n as u64, code.rows.len() as u64);
    let mut report = VerificationReport::new();
    for k in 1..=code.n {
        let ku = k as u64;
        let mut params = base_params(code, k, w);
        params.0.extend(extra.0.clone());
        let s = int(s_of_k_direct(code, k)?);
        report.push(CheckEntry::at_most(
            "s_upper_bound",
            &params,
            &qt1_upper_bound(q, n, m, ku)?,
            &s,
        ));
        let kraw = |i: u64| Ok(int(krawtchouk(&PolyParams::new(q, n, ku, i)?)));
        let full = weighted_sum(&dist, 0, kraw)?;
        report.push(CheckEntry::at_least(
            "delsarte",
            &params,
            &Rational::zero(),
            &full,
        ));
        report.push(CheckEntry::at_least(
            "improved_delsarte",
            &params,
            &delthm_rhs(q, n, m, ku)?,
            &full,
        ));
        if let Some(w) = w {
            let t = cw_constants(q, n, w as u64, m, ku)?.t;
            report.push(CheckEntry::at_most(
                "cw_s_upper_bound",
                &params,
                &int(t),
                &s,
            ));
            let tail = weighted_sum(&dist, 1, kraw)?;
            report.push(CheckEntry::at_least(
                "cw_inequality",
                &params,
                &maintr_rhs(q, n, w as u64, m, ku)?,
                &tail,
            ));
        }
    }
    Ok(report)
}
