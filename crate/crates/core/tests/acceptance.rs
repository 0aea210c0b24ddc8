//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use codebounds::code_oracle::{
    enumerate_all_cw_codes, max_code_size, random_code, random_cw_code, s0_of_k_paircount,
    s1_of_k_paircount, s_of_k_direct, Code, MAX_CODE_SEARCH_SPACE,
};
use codebounds::finite_field::{
    count_nonzero_dot, count_zero_dot, prop21_closed_form, NonzeroVector, PrimeField,
};
use codebounds::inequality_constants::{
    balanced_matrix_max, cw_constants, delthm_rhs, maintr_rhs, matrix_balancing_max_bruteforce,
    max_pairwise_products, max_pairwise_products_bruteforce, ostergard_rhs, qt1_upper_bound,
};
use codebounds::lp::{classical_lp_bound, cw_bound, improved_bound, BoundOptions};

type Rat = BigRational;
type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn r(v: impl Into<BigInt>) -> Rat {
    Rat::from_integer(v.into())
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure!(
        took <= limit,
        "{what} took {took:?}, over the {limit:?} budget"
    );
    Ok(())
}

// Independent reference formulas, evaluated by direct summation.

fn choose(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn ipow(b: i64, e: i64) -> BigInt {
    (0..e).fold(BigInt::one(), |acc, _| acc * b)
}

fn kraw_ref(q: u64, n: u64, k: u64, x: u64) -> BigInt {
    let (q, n, k, x) = (q as i64, n as i64, k as i64, x as i64);
    (0..=k)
        .map(|j| ipow(-1, j) * ipow(q - 1, k - j) * choose(x, j) * choose(n - x, k - j))
        .sum()
}

fn pk_minus_ref(q: u64, n: u64, k: u64, x: u64) -> Rat {
    let (q, n, k, x) = (q as i64, n as i64, k as i64, x as i64);
    let sum: BigInt = (0..=k)
        .map(|j| {
            (ipow(q - 1, j) - ipow(-1, j))
                * ipow(q - 1, k - j)
                * choose(x, j)
                * choose(n - x, k - j)
        })
        .sum();
    Rat::new(sum, BigInt::from(2))
}

fn class_size(q: u64, n: u64, k: u64) -> BigInt {
    ipow(q as i64 - 1, k as i64) * choose(n as i64, k as i64)
}

/// `B_0..B_n` from all ordered pairs.
fn distribution_ref(code: &Code) -> Vec<Rat> {
    let rows = code.rows();
    let mut counts = vec![0i64; code.len() + 1];
    for u in rows {
        for v in rows {
            counts[u.iter().zip(v).filter(|(a, b)| a != b).count()] += 1;
        }
    }
    let m = rows.len() as i64;
    counts
        .into_iter()
        .map(|c| Rat::new(c.into(), m.into()))
        .collect()
}

fn kraw_sum(code: &Code, k: u64, from: usize) -> Rat {
    let (q, n) = (code.q(), code.len() as u64);
    distribution_ref(code)
        .iter()
        .enumerate()
        .skip(from)
        .map(|(i, b)| r(kraw_ref(q, n, k, i as u64)) * b)
        .sum()
}

const ALPHABETS: [u64; 3] = [2, 3, 5];
const CODES_PER_ALPHABET: usize = 200;

/// Random codes with `n` in 2..=7 and `M` in 2..=10 (capped by the space).
fn sample_codes(seed: u64) -> Vec<Code> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for q in ALPHABETS {
        for _ in 0..CODES_PER_ALPHABET {
            let n = rng.gen_range(2..=7usize);
            let space = q.pow(n as u32) as usize;
            let m = rng.gen_range(2..=space.min(10));
            out.push(random_code(q, n, m, rng.gen()).expect("valid sample"));
        }
    }
    out
}

/// Random constant-weight codes; weights leaving fewer than two words are
/// redrawn.
fn sample_cw_codes(seed: u64) -> Vec<(Code, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for q in ALPHABETS {
        for _ in 0..CODES_PER_ALPHABET {
            let n = rng.gen_range(2..=7usize);
            let (w, space) = loop {
                let w = rng.gen_range(1..=n);
                let space = (choose(n as i64, w as i64) * ipow(q as i64 - 1, w as i64))
                    .try_into()
                    .unwrap_or(usize::MAX);
                if space >= 2 {
                    break (w, space);
                }
            };
            let m = rng.gen_range(2..=space.min(10));
            out.push((
                random_cw_code(q, n, w, m, rng.gen()).expect("valid sample"),
                w,
            ));
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let codes = sample_codes(1);
    let mut checks = 0;
    for code in &codes {
        let (q, n, m) = (code.q(), code.len() as u64, code.size() as i64);
        let dist = distribution_ref(code);
        for k in 1..=n {
            let s = s_of_k_direct(code, k as usize).map_err(|e| e.to_string())?;
            let s1 = s1_of_k_paircount(code, k as usize).map_err(|e| e.to_string())?;
            ensure!(
                s1 == BigInt::from(2) * &s,
                "S_1 != 2S for {:?} k={k}",
                code.rows()
            );
            let scaled = Rat::new(BigInt::from(q) * &s, BigInt::from((q as i64 - 1) * m));
            let minus: Rat = (1..=n)
                .map(|i| pk_minus_ref(q, n, k, i) * &dist[i as usize])
                .sum();
            ensure!(
                minus == scaled,
                "P^- sum mismatch for {:?} k={k}",
                code.rows()
            );
            let plus: Rat = (1..=n)
                .map(|i| (r(class_size(q, n, k)) - pk_minus_ref(q, n, k, i)) * &dist[i as usize])
                .sum();
            let plus_expected = r(BigInt::from(m - 1) * class_size(q, n, k)) - &scaled;
            ensure!(
                plus == plus_expected,
                "P^+ sum mismatch for {:?} k={k}",
                code.rows()
            );
            checks += 3;
        }
    }
    within(start, Duration::from_secs(60), "criterion 1")?;
    Ok(format!("{} codes, {checks} exact equalities", codes.len()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let codes = sample_cw_codes(2);
    let mut checks = 0;
    for (code, w) in &codes {
        let (q, n, m) = (code.q(), code.len() as u64, code.size() as u64);
        for k in 1..=n {
            let s0 = s0_of_k_paircount(code, *w, k as usize).map_err(|e| e.to_string())?;
            let expected = Rat::new(BigInt::from(2 * (q - 1) * m), BigInt::from(q))
                * pk_minus_ref(q, n, k, *w as u64);
            ensure!(
                r(s0) == expected,
                "S_0 mismatch for {:?} w={w} k={k}",
                code.rows()
            );
            let s = s_of_k_direct(code, k as usize).map_err(|e| e.to_string())?;
            let t = cw_constants(q, n, *w as u64, m, k)
                .map_err(|e| e.to_string())?
                .t;
            ensure!(s <= t, "S={s} > T={t} for {:?} w={w} k={k}", code.rows());
            checks += 2;
        }
    }
    within(start, Duration::from_secs(60), "criterion 2")?;
    Ok(format!(
        "{} constant-weight codes, {checks} checks",
        codes.len()
    ))
}

fn criterion_3() -> Outcome {
    let mut checks = 0;
    for code in sample_codes(3) {
        let (q, n, m) = (code.q(), code.len() as u64, code.size() as u64);
        for k in 1..=n {
            let s = r(s_of_k_direct(&code, k as usize).map_err(|e| e.to_string())?);
            ensure!(
                s <= qt1_upper_bound(q, n, m, k).unwrap(),
                "S bound fails for {:?} k={k}",
                code.rows()
            );
            let full = kraw_sum(&code, k, 0);
            ensure!(
                full >= Rat::zero(),
                "classical inequality fails for {:?} k={k}",
                code.rows()
            );
            ensure!(
                full >= delthm_rhs(q, n, m, k).unwrap(),
                "improved inequality fails for {:?} k={k}",
                code.rows()
            );
            checks += 3;
        }
    }
    for (code, w) in sample_cw_codes(4) {
        let (q, n, m, w) = (code.q(), code.len() as u64, code.size() as u64, w as u64);
        for k in 1..=n {
            let s = s_of_k_direct(&code, k as usize).map_err(|e| e.to_string())?;
            ensure!(
                s <= cw_constants(q, n, w, m, k).unwrap().t,
                "S > T for {:?} k={k}",
                code.rows()
            );
            let tail = kraw_sum(&code, k, 1);
            ensure!(
                tail >= maintr_rhs(q, n, w, m, k).unwrap(),
                "constant-weight inequality fails for {:?} k={k}",
                code.rows()
            );
            ensure!(
                kraw_sum(&code, k, 0) >= delthm_rhs(q, n, m, k).unwrap(),
                "improved inequality fails for {:?}",
                code.rows()
            );
            checks += 3;
        }
    }
    for (q, words) in [
        (2u64, vec!["00", "01", "10", "11"]),
        (
            3,
            vec!["00", "01", "02", "10", "11", "12", "20", "21", "22"],
        ),
    ] {
        let code = Code::from_strs(q, &words).unwrap();
        for k in 1..=2 {
            let lhs = kraw_sum(&code, k, 0);
            let rhs = delthm_rhs(q, 2, words.len() as u64, k).unwrap();
            ensure!(
                lhs.is_zero() && rhs.is_zero(),
                "full space F_{q}^2 k={k}: {lhs} vs {rhs}"
            );
        }
    }
    let pair = Code::from_strs(2, &["1100", "0011"]).unwrap();
    let lhs = kraw_sum(&pair, 1, 1);
    let rhs = maintr_rhs(2, 4, 2, 2, 1).unwrap();
    ensure!(
        lhs == r(-4) && rhs == r(-4),
        "{{1100, 0011}} at k=1: {lhs} vs {rhs}"
    );
    Ok(format!(
        "{checks} sampled inequalities, 3 equality witnesses"
    ))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut vectors = 0;
    for p in [2u64, 3, 5, 7] {
        let field = PrimeField::new(p).unwrap();
        for j in 1..=4u32 {
            let (n_closed, z_closed) = prop21_closed_form(p, j as u64).unwrap();
            let total = (p - 1).pow(j);
            // Tuples in (F_p*)^j indexed by base-(p-1) digits.
            let tuple = |mut idx: u64| -> Vec<u64> {
                (0..j)
                    .map(|_| {
                        let d = idx % (p - 1) + 1;
                        idx /= p - 1;
                        d
                    })
                    .collect()
            };
            for ai in 0..total {
                let a = tuple(ai);
                let nonzero = (0..total)
                    .filter(|&bi| a.iter().zip(tuple(bi)).map(|(x, y)| x * y).sum::<u64>() % p != 0)
                    .count() as u64;
                let v = NonzeroVector::new(field, a.clone()).unwrap();
                ensure!(
                    count_nonzero_dot(&v).unwrap() == nonzero,
                    "library count differs for a={a:?} mod {p}"
                );
                ensure!(
                    count_zero_dot(&v).unwrap() == total - nonzero,
                    "library zero count differs for a={a:?} mod {p}"
                );
                ensure!(
                    BigInt::from(nonzero) == n_closed,
                    "N(a) differs from closed form for a={a:?} mod {p}"
                );
                ensure!(
                    BigInt::from(total - nonzero) == z_closed,
                    "Z(a) differs from closed form for a={a:?} mod {p}"
                );
                vectors += 1;
            }
        }
    }
    within(start, Duration::from_secs(10), "criterion 4")?;
    Ok(format!("{vectors} vectors"))
}

/// Every composition of `total` into `parts` parts.
fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

fn pair_products(v: &[u64]) -> u64 {
    let mut s = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            s += v[i] * v[j];
        }
    }
    s
}

fn criterion_5() -> Outcome {
    let mut cases = 0;
    for total in 0..=16u64 {
        for parts in 1..=5usize {
            let all = compositions(total, parts);
            let best = all.iter().map(|c| pair_products(c)).max().unwrap();
            let closed = max_pairwise_products(&BigInt::from(total), parts as u64);
            ensure!(
                closed == BigInt::from(best),
                "scalar max M={total} h={parts}: {closed} vs {best}"
            );
            for c in all.iter().filter(|c| pair_products(c) == best) {
                let spread = c.iter().max().unwrap() - c.iter().min().unwrap();
                ensure!(spread <= 1, "unbalanced maximizer {c:?}");
            }
            let lib = max_pairwise_products_bruteforce(total, parts as u64).unwrap();
            ensure!(
                lib.max == closed && lib.balanced_only,
                "library brute force disagrees at M={total} h={parts}"
            );
            cases += 1;
        }
    }
    // Full matrix enumeration on the smaller cases.
    for q in 2..=3usize {
        for cols in 1..=3usize {
            for col_sum in 1..=5u64 {
                let column_choices = compositions(col_sum, q);
                for rest in 0..=col_sum * cols as u64 {
                    let mut best: Option<u64> = None;
                    let mut idx = vec![0usize; cols];
                    loop {
                        let chosen: Vec<&Vec<u64>> =
                            idx.iter().map(|&i| &column_choices[i]).collect();
                        if chosen.iter().map(|c| col_sum - c[0]).sum::<u64>() == rest {
                            let v: u64 = chosen.iter().map(|c| pair_products(c)).sum();
                            best = Some(best.map_or(v, |b| b.max(v)));
                        }
                        let mut i = 0;
                        while i < cols && idx[i] + 1 == column_choices.len() {
                            idx[i] = 0;
                            i += 1;
                        }
                        if i == cols {
                            break;
                        }
                        idx[i] += 1;
                    }
                    let lib = matrix_balancing_max_bruteforce(col_sum, rest, q as u64, cols as u64)
                        .unwrap()
                        .unwrap();
                    ensure!(
                        Some(lib.max.clone()) == best.map(BigInt::from),
                        "matrix brute force q={q} N={cols} M={col_sum} M'={rest}"
                    );
                    cases += 1;
                }
            }
        }
    }
    for q in 2..=4u64 {
        for cols in 1..=4u64 {
            for col_sum in 1..=8u64 {
                for rest in 0..=col_sum * cols {
                    let brute = matrix_balancing_max_bruteforce(col_sum, rest, q, cols)
                        .unwrap()
                        .unwrap();
                    let closed = balanced_matrix_max(
                        &BigInt::from(col_sum),
                        &BigInt::from(rest),
                        q,
                        &BigInt::from(cols),
                    )
                    .unwrap()
                    .total();
                    ensure!(
                        brute.max == closed,
                        "matrix max q={q} N={cols} M={col_sum} M'={rest}: {closed} vs {}",
                        brute.max
                    );
                    ensure!(
                        brute.balanced_only,
                        "unbalanced matrix maximizer q={q} N={cols} M={col_sum} M'={rest}"
                    );
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for q in 2..=7u64 {
        for n in 2..=10u64 {
            for w in 1..=n {
                for m in 2..=40u64 {
                    let t = cw_constants(q, n, w, m, 1).unwrap().t;
                    let lhs = Rat::new(BigInt::from(2) * t, BigInt::from(q - 1));
                    let rhs = r(ostergard_rhs(q, n, w, m).unwrap());
                    ensure!(lhs == rhs, "q={q} n={n} w={w} M={m}: {lhs} vs {rhs}");
                    cases += 1;
                }
            }
        }
    }
    ensure!(
        ostergard_rhs(3, 4, 2, 3).unwrap() == BigInt::from(20),
        "(3,4,2,3) should give 20"
    );
    within(start, Duration::from_secs(10), "criterion 6")?;
    Ok(format!("{cases} cases"))
}

fn criterion_7() -> Outcome {
    let o = BoundOptions::default();
    for q in [2u64, 3, 5] {
        for n in 2..=6u64 {
            let b = classical_lp_bound(q, n, n, &o).unwrap().bound;
            ensure!(b == q, "A_{q}({n},{n}) bound {b}, expected {q}");
        }
        for n in 1.. {
            let size = q.pow(n as u32);
            if size > 256 {
                break;
            }
            let b = classical_lp_bound(q, n, 1, &o).unwrap().bound;
            ensure!(b == size, "A_{q}({n},1) bound {b}, expected {size}");
        }
    }
    let r243 = classical_lp_bound(2, 4, 3, &o).unwrap();
    ensure!(
        r243.real_optimum == Some(Rat::new(8.into(), 3.into())),
        "real optimum {:?}",
        r243.real_optimum
    );
    let cw = cw_bound(2, 4, 4, 2, &o).unwrap().bound;
    ensure!(cw == 2, "cw bound {cw}");
    let has_distance_4 = |c: &Code| {
        let rows = c.rows();
        (0..rows.len()).all(|i| {
            (i + 1..rows.len())
                .all(|j| rows[i].iter().zip(&rows[j]).filter(|(a, b)| a != b).count() >= 4)
        })
    };
    let pairs = enumerate_all_cw_codes(2, 4, 2, 2)
        .unwrap()
        .filter(|c| has_distance_4(c))
        .count();
    let triples = enumerate_all_cw_codes(2, 4, 2, 3)
        .unwrap()
        .filter(|c| has_distance_4(c))
        .count();
    ensure!(
        pairs > 0 && triples == 0,
        "exhaustive maximum is not 2 ({pairs} pairs, {triples} triples)"
    );
    Ok("all sanity values exact".into())
}

fn criterion_8() -> Outcome {
    let o = BoundOptions::default();
    let (mut bounds, mut oracle) = (0, 0);
    for q in ALPHABETS {
        for n in 1..=7u64 {
            let enumerable = q.pow(n as u32) as usize <= MAX_CODE_SEARCH_SPACE;
            let mut previous: Option<u64> = None;
            for d in 1..=n {
                let classical = classical_lp_bound(q, n, d, &o).unwrap();
                let improved = improved_bound(q, n, d, &o).unwrap();
                ensure!(
                    improved.scan_is_consistent(),
                    "inconsistent scan q={q} n={n} d={d}"
                );
                ensure!(
                    improved.bound <= classical.bound,
                    "improved {} > classical {} at q={q} n={n} d={d}",
                    improved.bound,
                    classical.bound
                );
                if let Some(p) = previous {
                    ensure!(
                        classical.bound <= p,
                        "classical bound increases with d at q={q} n={n} d={d}"
                    );
                }
                previous = Some(classical.bound);
                bounds += 2;
                if enumerable {
                    let a = max_code_size(q, n as usize, d as usize, None).unwrap() as u64;
                    ensure!(
                        a <= improved.bound,
                        "A_{q}({n},{d}) = {a} exceeds bound {}",
                        improved.bound
                    );
                    oracle += 1;
                }
                for w in 1..=n {
                    let cw = cw_bound(q, n, d, w, &o).unwrap();
                    ensure!(
                        cw.scan_is_consistent(),
                        "inconsistent cw scan q={q} n={n} d={d} w={w}"
                    );
                    ensure!(
                        cw.bound <= classical.bound,
                        "cw {} > classical {} at q={q} n={n} d={d} w={w}",
                        cw.bound,
                        classical.bound
                    );
                    bounds += 1;
                    let space = choose(n as i64, w as i64) * ipow(q as i64 - 1, w as i64);
                    if space <= BigInt::from(MAX_CODE_SEARCH_SPACE) {
                        let a = max_code_size(q, n as usize, d as usize, Some(w as usize)).unwrap()
                            as u64;
                        ensure!(
                            a <= cw.bound,
                            "A_{q}({n},{d},{w}) = {a} exceeds bound {}",
                            cw.bound
                        );
                        oracle += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{bounds} bounds, {oracle} exhaustive optima"))
}

fn run_cli(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_codebounds"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn criterion_9() -> Outcome {
    let invocations: [&[&str]; 4] = [
        &[
            "verify",
            "--suite",
            "delsarte",
            "--q",
            "2,3",
            "--n-max",
            "5",
            "--size-max",
            "8",
            "--samples",
            "200",
            "--seed",
            "7",
        ],
        &[
            "verify",
            "--suite",
            "cw",
            "--q",
            "2,3,5",
            "--n-max",
            "5",
            "--samples",
            "50",
            "--seed",
            "11",
            "--format",
            "json",
        ],
        &[
            "bound", "--q", "2,3", "--n", "2..6", "--d", "1..6", "--method", "improved",
            "--format", "csv",
        ],
        &[
            "bound", "--q", "2,3", "--n", "4..6", "--d", "2..4", "--w", "1..3", "--method", "cw",
            "--format", "json",
        ],
    ];
    for args in invocations {
        let first = run_cli(args)?;
        let second = run_cli(args)?;
        ensure!(first.0 == 0, "{args:?} exited {}", first.0);
        ensure!(!first.1.is_empty(), "{args:?} printed nothing");
        ensure!(first == second, "{args:?} output differs between runs");
    }
    Ok(format!(
        "{} invocations repeated byte for byte",
        invocations.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("double-counting identities", criterion_1),
        ("constant-weight row count and S(k) <= T(k)", criterion_2),
        ("inequalities and equality witnesses", criterion_3),
        ("nonzero dot-product counts", criterion_4),
        ("balancing maxima", criterion_5),
        ("k=1 constant-weight formula equivalence", criterion_6),
        ("LP sanity values", criterion_7),
        ("bound dominance and soundness", criterion_8),
        ("CLI determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.1}s)", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({reason}; {secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
