//! Bound drivers.
//!
//! The classical bound is a single LP. The improved and constant-weight
//! bounds depend on the code size `M` through their right-hand sides, so they
//! scan `M = 2, 3, ...` and stop at the first infeasible system: a code of
//! size `M` contains codes of every smaller size, so infeasibility at `M`
//! rules out all larger codes even though LP feasibility itself need not be
//! monotone in `M`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::finite_field::is_prime_power;
use crate::lp::simplex::{
    simplex_solve, Constraint, FarkasCertificate, LinearSystem, LpOutcome, DEFAULT_PIVOT_LIMIT,
};
use crate::lp::systems::{
    build_classical_system, build_cw_classical_system, build_cw_system, build_improved_system,
    cw_rhs, improved_rhs,
};
use crate::rational::{floor, format_ratio, int, parse_ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Classical,
    Improved,
    ConstantWeight,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Classical => "classical",
            Method::Improved => "improved",
            Method::ConstantWeight => "constant-weight",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundOptions {
    pub pivot_limit: usize,
    /// Restrict binary constant-weight systems to even distances.
    pub binary_parity: bool,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            pivot_limit: DEFAULT_PIVOT_LIMIT,
            binary_parity: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    #[serde(rename = "M")]
    pub m: u64,
    pub feasible: bool,
}

/// Evidence behind a bound: the optimal distribution of the classical LP, or
/// the Farkas certificate of the first infeasible system in a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    OptimalPoint(Vec<Rational>),
    Infeasible {
        m: u64,
        certificate: FarkasCertificate,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundResult {
    pub q: u64,
    pub n: u64,
    pub d: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<u64>,
    pub method: Method,
    /// `1 + max sum B_i`, classical only.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_ratio")]
    pub real_optimum: Option<Rational>,
    pub bound: u64,
    pub scan: Vec<ScanEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    #[serde(skip)]
    pub certificate: Option<Certificate>,
}

mod opt_ratio {
    use super::*;
    use serde::{de::Error as _, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        v: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_str(&format_ratio(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|s| parse_ratio(&s).map_err(D::Error::custom))
            .transpose()
    }
}

fn prime_power_warning(q: u64) -> Option<String> {
    (!is_prime_power(q)).then(|| {
        format!(
            "q={q} is not a prime power; the inequalities are only established over finite fields"
        )
    })
}

fn to_u64(v: &BigInt) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::Arithmetic(format!("bound {v} does not fit in 64 bits")))
}

/// Solves a maximization system and returns `(1 + optimum, point)`.
fn solve_size_lp(sys: &LinearSystem, opts: &BoundOptions) -> Result<(Rational, Vec<Rational>)> {
    match simplex_solve(sys, opts.pivot_limit)? {
        LpOutcome::Optimal { value, point } => Ok((value + int(1), point)),
        LpOutcome::Infeasible { .. } => Err(Error::Arithmetic(
            "size LP is infeasible although B = 0 satisfies it".into(),
        )),
        LpOutcome::Unbounded { .. } => Err(Error::Arithmetic("size LP is unbounded".into())),
    }
}

pub fn classical_lp_bound(q: u64, n: u64, d: u64, opts: &BoundOptions) -> Result<BoundResult> {
    let sys = build_classical_system(q, n, d)?;
    let (real, point) = solve_size_lp(&sys, opts)?;
    Ok(BoundResult {
        q,
        n,
        d,
        w: None,
        method: Method::Classical,
        bound: to_u64(&floor(&real))?,
        real_optimum: Some(real),
        scan: Vec::new(),
        warning: prime_power_warning(q),
        certificate: Some(Certificate::OptimalPoint(point)),
    })
}

struct Scan {
    entries: Vec<ScanEntry>,
    certificate: Option<Certificate>,
    bound: u64,
}

/// A feasible point stored as its coordinate sum and its left-hand side on
/// every inequality row.
struct Candidate {
    sum: Rational,
    lhs: Vec<Rational>,
}

impl Candidate {
    fn new(rows: &[Constraint], point: &[Rational]) -> Option<Self> {
        let sum: Rational = point.iter().sum();
        sum.is_positive().then(|| Candidate {
            lhs: rows.iter().map(|c| c.lhs(point)).collect(),
            sum,
        })
    }

    /// Whether the point scaled to coordinate sum `target` meets every
    /// right-hand side.
    fn fits_scaled(&self, target: &Rational, rhs: &[Rational]) -> bool {
        self.lhs
            .iter()
            .zip(rhs)
            .all(|(l, r)| target * l >= &self.sum * r)
    }
}

/// Inequality rows grouped by identical coefficients; only the largest
/// right-hand side in each group binds.
struct RowGroups {
    coeffs: Vec<Vec<Rational>>,
    members: Vec<Vec<usize>>,
}

impl RowGroups {
    fn new(rows: &[Constraint]) -> Self {
        let mut groups = RowGroups {
            coeffs: Vec::new(),
            members: Vec::new(),
        };
        for (i, c) in rows.iter().enumerate() {
            match groups.coeffs.iter().position(|g| *g == c.coeffs) {
                Some(g) => groups.members[g].push(i),
                None => {
                    groups.coeffs.push(c.coeffs.clone());
                    groups.members.push(vec![i]);
                }
            }
        }
        groups
    }

    fn binding_rhs(&self, rhs: &[Rational]) -> Vec<Rational> {
        self.members
            .iter()
            .map(|m| {
                m.iter()
                    .map(|&i| &rhs[i])
                    .max()
                    .expect("nonempty group")
                    .clone()
            })
            .collect()
    }

    fn admits(&self, point: &[Rational], binding: &[Rational]) -> bool {
        point.iter().all(|x| !x.is_negative())
            && self
                .coeffs
                .iter()
                .zip(binding)
                .all(|(c, b)| dot(c, point) >= *b)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The active set of a feasible vertex (the size equation, distances at zero
/// and row groups at equality) with its equation matrix factored, so the
/// vertex can be recomputed for new right-hand sides by a matrix product.
struct ActiveSet {
    zero_vars: usize,
    tight_groups: Vec<usize>,
    /// `x = solve * e` for the equation right-hand side vector `e`.
    solve: Vec<Vec<Rational>>,
    /// Consistency conditions `c * e = 0` for redundant equations.
    consistency: Vec<Vec<Rational>>,
}

impl ActiveSet {
    fn new(groups: &RowGroups, point: &[Rational], binding: &[Rational]) -> Option<Self> {
        let vars = point.len();
        let zero: Vec<usize> = (0..vars).filter(|&j| point[j].is_zero()).collect();
        let tight_groups: Vec<usize> = (0..groups.coeffs.len())
            .filter(|&g| dot(&groups.coeffs[g], point) == binding[g])
            .collect();
        let mut matrix = vec![vec![int(1); vars]];
        for &j in &zero {
            let mut e = vec![Rational::zero(); vars];
            e[j] = int(1);
            matrix.push(e);
        }
        matrix.extend(tight_groups.iter().map(|&g| groups.coeffs[g].clone()));
        let (solve, consistency) = left_inverse(matrix, vars)?;
        Some(ActiveSet {
            zero_vars: zero.len(),
            tight_groups,
            solve,
            consistency,
        })
    }

    fn vertex(&self, target: &Rational, binding: &[Rational]) -> Option<Vec<Rational>> {
        let mut e = Vec::with_capacity(1 + self.zero_vars + self.tight_groups.len());
        e.push(target.clone());
        e.extend(std::iter::repeat_n(Rational::zero(), self.zero_vars));
        e.extend(self.tight_groups.iter().map(|&g| binding[g].clone()));
        if self.consistency.iter().any(|c| !dot(c, &e).is_zero()) {
            return None;
        }
        Some(self.solve.iter().map(|r| dot(r, &e)).collect())
    }
}

type Matrix = Vec<Vec<Rational>>;

/// Gauss-Jordan elimination of `[A | I]` for an `e x vars` matrix `A`.
/// Returns `(L, C)` with `L A = I` and `C A = 0`, or `None` if `A` lacks full
/// column rank.
fn left_inverse(matrix: Matrix, vars: usize) -> Option<(Matrix, Matrix)> {
    let eqs = matrix.len();
    let mut rows: Vec<Vec<Rational>> = matrix
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.extend((0..eqs).map(|j| if i == j { int(1) } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..vars {
        let pivot = (col..eqs).find(|&i| !rows[i][col].is_zero())?;
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        rows[col].iter_mut().for_each(|v| *v *= &inv);
        let prow = rows[col].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i == col || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (v, p) in r.iter_mut().zip(&prow).skip(col) {
                *v -= &f * p;
            }
        }
    }
    let mut tail = rows.split_off(vars);
    let strip = |r: &mut Vec<Rational>| {
        r.drain(..vars);
    };
    rows.iter_mut().for_each(strip);
    tail.iter_mut().for_each(strip);
    Some((rows, tail))
}

/// Ascending feasibility scan over `M = 2..=upper + 1`, falling back to
/// `upper` if every system is feasible.
///
/// Only the right-hand sides depend on `M`. Before solving, two candidate
/// points with `sum B_i = M - 1` are checked by exact substitution: the vertex
/// obtained by holding the last LP solution's active set at equality under
/// the new right-hand sides, and the seed point scaled. If either satisfies
/// every row the LP is skipped. `rhs(m)` must list the
/// right-hand sides of every row of `build(m)` except the trailing size
/// equation.
fn feasibility_scan<F, R>(
    upper: u64,
    seed: &[Rational],
    opts: &BoundOptions,
    mut build: F,
    mut rhs: R,
) -> Result<Scan>
where
    F: FnMut(u64) -> Result<LinearSystem>,
    R: FnMut(u64) -> Result<Vec<Rational>>,
{
    let template = build(2)?;
    let (_size, rows) = template.constraints.split_last().expect("size row");
    let seed = Candidate::new(rows, seed);
    let groups = RowGroups::new(rows);
    let mut active: Option<ActiveSet> = None;
    let mut entries = Vec::new();
    for m in 2..=upper + 1 {
        let target = int(BigInt::from(m - 1));
        let b = rhs(m)?;
        debug_assert_eq!(b.len(), rows.len());
        let binding = groups.binding_rhs(&b);
        let from_active = || {
            active
                .as_ref()
                .and_then(|a| a.vertex(&target, &binding))
                .is_some_and(|x| groups.admits(&x, &binding))
        };
        if from_active() || seed.as_ref().is_some_and(|c| c.fits_scaled(&target, &b)) {
            entries.push(ScanEntry { m, feasible: true });
            continue;
        }
        match simplex_solve(&build(m)?, opts.pivot_limit)? {
            LpOutcome::Infeasible { certificate } => {
                entries.push(ScanEntry { m, feasible: false });
                return Ok(Scan {
                    entries,
                    certificate: Some(Certificate::Infeasible { m, certificate }),
                    bound: m - 1,
                });
            }
            LpOutcome::Optimal { point, .. } | LpOutcome::Unbounded { point, .. } => {
                active = ActiveSet::new(&groups, &point, &binding).or(active);
                entries.push(ScanEntry { m, feasible: true });
            }
        }
    }
    Ok(Scan {
        entries,
        certificate: None,
        bound: upper.max(1),
    })
}

pub fn improved_bound(q: u64, n: u64, d: u64, opts: &BoundOptions) -> Result<BoundResult> {
    let classical = classical_lp_bound(q, n, d, opts)?;
    let seed = match &classical.certificate {
        Some(Certificate::OptimalPoint(p)) => p.clone(),
        _ => Vec::new(),
    };
    let scan = feasibility_scan(
        classical.bound,
        &seed,
        opts,
        |m| build_improved_system(q, n, d, m),
        |m| improved_rhs(q, n, m),
    )?;
    Ok(BoundResult {
        q,
        n,
        d,
        w: None,
        method: Method::Improved,
        real_optimum: None,
        bound: scan.bound,
        scan: scan.entries,
        warning: prime_power_warning(q),
        certificate: scan.certificate,
    })
}

pub fn cw_bound(q: u64, n: u64, d: u64, w: u64, opts: &BoundOptions) -> Result<BoundResult> {
    if w < 1 || w > n {
        return Err(invalid(format!("w={w} must lie in 1..={n}")));
    }
    if d < 1 || d > n {
        return Err(invalid(format!("d={d} must lie in 1..={n}")));
    }
    let mut result = BoundResult {
        q,
        n,
        d,
        w: Some(w),
        method: Method::ConstantWeight,
        real_optimum: None,
        bound: 1,
        scan: Vec::new(),
        warning: prime_power_warning(q),
        certificate: None,
    };
    if d > 2 * w {
        return Ok(result);
    }
    let base = build_cw_classical_system(q, n, d, w, opts.binary_parity)?;
    let (real, seed) = solve_size_lp(&base, opts)?;
    let limit = to_u64(&floor(&real))?;
    let scan = feasibility_scan(
        limit,
        &seed,
        opts,
        |m| build_cw_system(q, n, d, w, m, opts.binary_parity),
        |m| cw_rhs(q, n, w, m),
    )?;
    result.bound = scan.bound;
    result.scan = scan.entries;
    result.certificate = scan.certificate;
    Ok(result)
}

impl BoundResult {
    /// The scan is contiguous from 2, every entry but the last is feasible,
    /// and the bound is one less than the first infeasible size.
    pub fn scan_is_consistent(&self) -> bool {
        if self.scan.is_empty() {
            return self.method == Method::Classical || self.bound == 1;
        }
        let contiguous = self
            .scan
            .iter()
            .enumerate()
            .all(|(i, e)| e.m == i as u64 + 2);
        let (last, head) = self.scan.split_last().expect("nonempty");
        let tail_ok = if last.feasible {
            self.bound == last.m - 1 || self.bound == last.m
        } else {
            self.bound == last.m - 1
        };
        contiguous && head.iter().all(|e| e.feasible) && tail_ok
    }

    pub fn real_optimum_is_nonnegative(&self) -> bool {
        self.real_optimum.as_ref().is_none_or(|r| !r.is_negative())
    }
}
