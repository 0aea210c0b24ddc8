//! Constraint systems over the distance distribution `B_d..B_n`.
//!
//! `B_0 = 1` is substituted, so the `i = 0` term of each Krawtchouk sum moves
//! to the right-hand side as `-P_k(n;0)`. Distances `1..d-1` are absent by
//! definition of minimum distance.

use num_bigint::BigInt;

use crate::error::{invalid, Result};
use crate::inequality_constants::{delthm_rhs, maintr_rhs};
use crate::lp::simplex::{LinearSystem, Relation};
use crate::polynomials::{weight_class_size, KrawtchoukTable};
use crate::rational::{int, Rational};

fn validate(q: u64, n: u64, d: u64) -> Result<()> {
    if q < 2 {
        return Err(invalid(format!("q={q} must be at least 2")));
    }
    if n < 1 {
        return Err(invalid("n must be at least 1"));
    }
    if d < 1 || d > n {
        return Err(invalid(format!("d={d} must lie in 1..={n}")));
    }
    Ok(())
}

/// Distances carried as LP variables.
pub fn distance_support(d: u64, max_distance: u64, even_only: bool) -> Vec<u64> {
    (d..=max_distance)
        .filter(|i| !even_only || i % 2 == 0)
        .collect()
}

fn system_over(support: &[u64]) -> LinearSystem {
    LinearSystem::new(support.iter().map(|i| format!("B{i}")).collect())
}

fn krawtchouk_row(table: &KrawtchoukTable, k: u64, support: &[u64]) -> Vec<Rational> {
    support
        .iter()
        .map(|&i| int(table.get(k, i).clone()))
        .collect()
}

fn ones(len: usize) -> Vec<Rational> {
    vec![int(1); len]
}

/// `sum_{i=d}^n P_k(n;i) B_i >= -P_k(n;0)` for every `k`, maximizing `sum B_i`.
pub fn build_classical_system(q: u64, n: u64, d: u64) -> Result<LinearSystem> {
    validate(q, n, d)?;
    let support = distance_support(d, n, false);
    classical_over(q, n, &support)
}

fn classical_over(q: u64, n: u64, support: &[u64]) -> Result<LinearSystem> {
    let table = KrawtchoukTable::new(q, n)?;
    let mut sys = system_over(support);
    for k in 1..=n {
        let rhs = -int(table.get(k, 0).clone());
        sys.add(
            format!("delsarte k={k}"),
            krawtchouk_row(&table, k, support),
            Relation::Ge,
            rhs,
        )?;
    }
    sys.maximize(ones(support.len()))?;
    Ok(sys)
}

/// Right-hand sides of the improved rows, indexed by `k - 1`.
pub fn improved_rhs(q: u64, n: u64, m: u64) -> Result<Vec<Rational>> {
    (1..=n)
        .map(|k| Ok(delthm_rhs(q, n, m, k)? - int(weight_class_size(q, n, k))))
        .collect()
}

/// Improved rows `sum_i P_k(n;i) B_i >= delthm_rhs - P_k(n;0)` plus
/// `sum_i B_i = M - 1`. No objective.
pub fn build_improved_system(q: u64, n: u64, d: u64, m: u64) -> Result<LinearSystem> {
    validate(q, n, d)?;
    if m < 2 {
        return Err(invalid(format!("M={m} must be at least 2")));
    }
    let support = distance_support(d, n, false);
    let table = KrawtchoukTable::new(q, n)?;
    let mut sys = system_over(&support);
    for (k, rhs) in (1..=n).zip(improved_rhs(q, n, m)?) {
        sys.add(
            format!("improved k={k}"),
            krawtchouk_row(&table, k, &support),
            Relation::Ge,
            rhs,
        )?;
    }
    sys.add(
        "size",
        ones(support.len()),
        Relation::Eq,
        int(BigInt::from(m - 1)),
    )?;
    Ok(sys)
}

fn validate_cw(q: u64, n: u64, d: u64, w: u64) -> Result<()> {
    validate(q, n, d)?;
    if w < 1 || w > n {
        return Err(invalid(format!("w={w} must lie in 1..={n}")));
    }
    if d > 2 * w {
        return Err(invalid(format!(
            "d={d} exceeds 2w={}: no two distinct weight-{w} words are that far apart",
            2 * w
        )));
    }
    Ok(())
}

fn cw_support(q: u64, n: u64, d: u64, w: u64, binary_parity: bool) -> Vec<u64> {
    distance_support(d, n.min(2 * w), binary_parity && q == 2)
}

/// Classical system restricted to the distances a weight-`w` code can
/// realize (`i <= 2w`, and even `i` only for binary codes when
/// `binary_parity` is set).
pub fn build_cw_classical_system(
    q: u64,
    n: u64,
    d: u64,
    w: u64,
    binary_parity: bool,
) -> Result<LinearSystem> {
    validate_cw(q, n, d, w)?;
    classical_over(q, n, &cw_support(q, n, d, w, binary_parity))
}

/// Right-hand sides of the constant-weight system rows in build order:
/// classical, improved and constant-weight for each `k`.
pub fn cw_rhs(q: u64, n: u64, w: u64, m: u64) -> Result<Vec<Rational>> {
    let mut out = Vec::with_capacity(3 * n as usize);
    for k in 1..=n {
        let p0 = int(weight_class_size(q, n, k));
        out.push(-p0.clone());
        out.push(delthm_rhs(q, n, m, k)? - p0);
        out.push(maintr_rhs(q, n, w, m, k)?);
    }
    Ok(out)
}

/// Classical, improved and constant-weight rows for every `k`, plus
/// `sum_i B_i = M - 1`, over the constant-weight support. No objective.
pub fn build_cw_system(
    q: u64,
    n: u64,
    d: u64,
    w: u64,
    m: u64,
    binary_parity: bool,
) -> Result<LinearSystem> {
    validate_cw(q, n, d, w)?;
    if m < 2 {
        return Err(invalid(format!("M={m} must be at least 2")));
    }
    let support = cw_support(q, n, d, w, binary_parity);
    let table = KrawtchoukTable::new(q, n)?;
    let mut sys = system_over(&support);
    let mut rhs = cw_rhs(q, n, w, m)?.into_iter();
    for k in 1..=n {
        let row = krawtchouk_row(&table, k, &support);
        for family in ["delsarte", "improved", "constant-weight"] {
            let b = rhs.next().expect("three right-hand sides per k");
            sys.add(format!("{family} k={k}"), row.clone(), Relation::Ge, b)?;
        }
    }
    sys.add(
        "size",
        ones(support.len()),
        Relation::Eq,
        int(BigInt::from(m - 1)),
    )?;
    Ok(sys)
}
