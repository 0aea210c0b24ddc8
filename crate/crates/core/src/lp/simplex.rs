//! Dense two-phase primal simplex over exact rationals.
//!
//! Every variable is implicitly nonnegative. Pivoting follows Bland's
//! least-index rule in both phases, so the solver cannot cycle and the pivot
//! sequence is fully deterministic. Nothing is returned unchecked: optimal and
//! feasible points are substituted back into the system, and infeasibility
//! comes with a Farkas multiplier vector that is verified the same way.

use num_traits::{Signed, Zero};

use crate::error::{invalid, Error, Result};
use crate::rational::Rational;

/// Default cap on the number of pivots across both phases.
pub const DEFAULT_PIVOT_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub label: String,
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs(&self, point: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(point)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, x)| c * x)
            .sum()
    }

    pub fn is_satisfied_by(&self, point: &[Rational]) -> bool {
        let lhs = self.lhs(point);
        match self.relation {
            Relation::Ge => lhs >= self.rhs,
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// Linear constraints over nonnegative variables, with an optional objective
/// to maximize.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearSystem {
    pub variables: Vec<String>,
    pub constraints: Vec<Constraint>,
    pub objective: Option<Vec<Rational>>,
}

impl LinearSystem {
    pub fn new(variables: Vec<String>) -> Self {
        LinearSystem {
            variables,
            constraints: Vec::new(),
            objective: None,
        }
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn add(
        &mut self,
        label: impl Into<String>,
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) -> Result<()> {
        if coeffs.len() != self.variables.len() {
            return Err(Error::LengthMismatch(coeffs.len(), self.variables.len()));
        }
        self.constraints.push(Constraint {
            label: label.into(),
            coeffs,
            relation,
            rhs,
        });
        Ok(())
    }

    pub fn maximize(&mut self, coeffs: Vec<Rational>) -> Result<()> {
        if coeffs.len() != self.variables.len() {
            return Err(Error::LengthMismatch(coeffs.len(), self.variables.len()));
        }
        self.objective = Some(coeffs);
        Ok(())
    }

    pub fn objective_value(&self, point: &[Rational]) -> Rational {
        match &self.objective {
            Some(c) => c.iter().zip(point).map(|(a, b)| a * b).sum(),
            None => Rational::zero(),
        }
    }

    /// Nonnegativity plus every constraint, checked exactly.
    pub fn is_satisfied_by(&self, point: &[Rational]) -> bool {
        point.len() == self.variables.len()
            && point.iter().all(|x| !x.is_negative())
            && self.constraints.iter().all(|c| c.is_satisfied_by(point))
    }
}

/// Multipliers `y`, one per constraint, with `y >= 0` on `>=` rows, `y <= 0`
/// on `<=` rows, `y^T A <= 0` componentwise and `y^T b > 0`. Together with
/// `x >= 0` these make `A x (rel) b` impossible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<Rational>,
}

impl FarkasCertificate {
    pub fn verify(&self, sys: &LinearSystem) -> bool {
        if self.multipliers.len() != sys.constraints.len() {
            return false;
        }
        let sign_ok =
            self.multipliers
                .iter()
                .zip(&sys.constraints)
                .all(|(y, c)| match c.relation {
                    Relation::Ge => !y.is_negative(),
                    Relation::Le => !y.is_positive(),
                    Relation::Eq => true,
                });
        if !sign_ok {
            return false;
        }
        let combined_ok = (0..sys.num_variables()).all(|j| {
            let col: Rational = self
                .multipliers
                .iter()
                .zip(&sys.constraints)
                .filter(|(y, _)| !y.is_zero())
                .map(|(y, c)| y * &c.coeffs[j])
                .sum();
            !col.is_positive()
        });
        let rhs: Rational = self
            .multipliers
            .iter()
            .zip(&sys.constraints)
            .map(|(y, c)| y * &c.rhs)
            .sum();
        combined_ok && rhs.is_positive()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// For systems without an objective `value` is zero and `point` is any
    /// feasible point.
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
    Infeasible {
        certificate: FarkasCertificate,
    },
    /// `point + t * ray` is feasible for all `t >= 0` and the objective grows
    /// along `ray`.
    Unbounded {
        point: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible { .. })
    }
}

/// Column roles in the tableau.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    Structural(usize),
    Slack(usize),
    Artificial(usize),
}

struct Tableau {
    /// `rows[i]` holds the constraint coefficients followed by the rhs.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs followed by minus the current objective value.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    columns: Vec<Column>,
    /// Column that formed the identity in row `i` at the start.
    initial_basic: Vec<usize>,
    /// `+1`/`-1` per row: orientation applied to the original constraint.
    row_sign: Vec<i8>,
    active_rows: Vec<bool>,
    pivots: usize,
    pivot_limit: usize,
}

impl Tableau {
    fn width(&self) -> usize {
        self.columns.len()
    }

    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width()]
    }

    fn pivot(&mut self, row: usize, col: usize) -> Result<()> {
        self.pivots += 1;
        if self.pivots > self.pivot_limit {
            return Err(Error::PivotLimit(self.pivot_limit));
        }
        let width = self.width();
        let inv = self.rows[row][col].recip();
        for v in self.rows[row].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[row]);
        let nonzero: Vec<usize> = (0..=width).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || !self.active_rows[i] || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for &j in &nonzero {
                r[j] -= &factor * &pivot_row[j];
            }
        }
        if !self.cost[col].is_zero() {
            let factor = self.cost[col].clone();
            for &j in &nonzero {
                self.cost[j] -= &factor * &pivot_row[j];
            }
        }
        self.rows[row] = pivot_row;
        self.basis[row] = col;
        Ok(())
    }

    /// Recomputes the cost row for column costs `c` given the current basis.
    fn price(&mut self, c: &[Rational]) {
        let width = self.width();
        let mut cost: Vec<Rational> = c.to_vec();
        cost.push(Rational::zero());
        for (i, row) in self.rows.iter().enumerate() {
            if !self.active_rows[i] {
                continue;
            }
            let cb = &c[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=width {
                if !row[j].is_zero() {
                    cost[j] -= cb * &row[j];
                }
            }
        }
        self.cost = cost;
    }

    /// Runs Bland-rule minimization of the priced cost over columns allowed by
    /// `allowed`. Returns the unbounded entering column, if any.
    fn optimize(&mut self, allowed: &dyn Fn(Column) -> bool) -> Result<Option<usize>> {
        let width = self.width();
        loop {
            let entering =
                (0..width).find(|&j| allowed(self.columns[j]) && self.cost[j].is_negative());
            let Some(col) = entering else {
                return Ok(None);
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if !self.active_rows[i] || !self.rows[i][col].is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / &self.rows[i][col];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, col)?,
                None => return Ok(Some(col)),
            }
        }
    }

    fn structural_point(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if !self.active_rows[i] {
                continue;
            }
            if let Column::Structural(j) = self.columns[b] {
                x[j] = self.rhs(i).clone();
            }
        }
        x
    }
}

/// Solves `sys` exactly: maximizes the objective if present, otherwise finds
/// a feasible point.
pub fn simplex_solve(sys: &LinearSystem, pivot_limit: usize) -> Result<LpOutcome> {
    let (reduced, origin) = merge_parallel_rows(sys);
    let outcome = solve_exact(&reduced, pivot_limit)?;
    let outcome = match outcome {
        LpOutcome::Infeasible { certificate } => {
            let mut multipliers = vec![Rational::zero(); sys.constraints.len()];
            for (y, &row) in certificate.multipliers.into_iter().zip(&origin) {
                multipliers[row] = y;
            }
            let certificate = FarkasCertificate { multipliers };
            if !certificate.verify(sys) {
                return Err(Error::Arithmetic(
                    "infeasibility certificate failed verification".into(),
                ));
            }
            LpOutcome::Infeasible { certificate }
        }
        LpOutcome::Optimal { point, .. } | LpOutcome::Unbounded { point, .. }
            if !sys.is_satisfied_by(&point) =>
        {
            return Err(Error::Arithmetic("solution violates a merged row".into()));
        }
        other => other,
    };
    Ok(outcome)
}

/// Among `>=` rows with identical coefficients keeps only the first one with
/// the largest right-hand side; the others are implied. Returns the reduced
/// system and the original index of every kept row.
fn merge_parallel_rows(sys: &LinearSystem) -> (LinearSystem, Vec<usize>) {
    let mut kept: Vec<usize> = Vec::with_capacity(sys.constraints.len());
    for (i, c) in sys.constraints.iter().enumerate() {
        let twin = (c.relation == Relation::Ge)
            .then(|| {
                kept.iter().position(|&k| {
                    let o = &sys.constraints[k];
                    o.relation == Relation::Ge && o.coeffs == c.coeffs
                })
            })
            .flatten();
        match twin {
            Some(pos) if sys.constraints[kept[pos]].rhs < c.rhs => kept[pos] = i,
            Some(_) => {}
            None => kept.push(i),
        }
    }
    let reduced = LinearSystem {
        variables: sys.variables.clone(),
        constraints: kept.iter().map(|&i| sys.constraints[i].clone()).collect(),
        objective: sys.objective.clone(),
    };
    (reduced, kept)
}

fn solve_exact(sys: &LinearSystem, pivot_limit: usize) -> Result<LpOutcome> {
    let n = sys.num_variables();
    for c in &sys.constraints {
        if c.coeffs.len() != n {
            return Err(Error::LengthMismatch(c.coeffs.len(), n));
        }
    }
    if let Some(obj) = &sys.objective {
        if obj.len() != n {
            return Err(Error::LengthMismatch(obj.len(), n));
        }
    }
    let m = sys.constraints.len();

    // Orient every row as `>=` or `=`, then flip rows with negative rhs. A
    // `>=` row whose flip gives its slack a +1 coefficient starts with the
    // slack basic; every other row gets an artificial.
    let mut columns: Vec<Column> = (0..n).map(Column::Structural).collect();
    let mut oriented: Vec<(Vec<Rational>, Rational, bool, i8)> = Vec::with_capacity(m);
    for c in &sys.constraints {
        let (coeffs, rhs, has_slack) = match c.relation {
            Relation::Ge => (c.coeffs.clone(), c.rhs.clone(), true),
            Relation::Le => (c.coeffs.iter().map(|v| -v).collect(), -&c.rhs, true),
            Relation::Eq => (c.coeffs.clone(), c.rhs.clone(), false),
        };
        let flip: i8 = if rhs.is_negative() { -1 } else { 1 };
        let orient: i8 = if c.relation == Relation::Le { -1 } else { 1 };
        oriented.push((coeffs, rhs, has_slack, flip * orient));
    }
    let mut slack_col = vec![None; m];
    for (i, (_, _, has_slack, _)) in oriented.iter().enumerate() {
        if *has_slack {
            slack_col[i] = Some(columns.len());
            columns.push(Column::Slack(i));
        }
    }
    let mut art_col = vec![None; m];
    for (i, (_, rhs, has_slack, _)) in oriented.iter().enumerate() {
        // slack enters with coefficient -1 before the flip, +1 after it
        let slack_basic = *has_slack && rhs.is_negative();
        if !slack_basic {
            art_col[i] = Some(columns.len());
            columns.push(Column::Artificial(i));
        }
    }
    let width = columns.len();
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut row_sign = Vec::with_capacity(m);
    for (i, (coeffs, rhs, _, sign)) in oriented.into_iter().enumerate() {
        let flip = rhs.is_negative();
        let mut row = vec![Rational::zero(); width + 1];
        for (j, v) in coeffs.into_iter().enumerate() {
            row[j] = if flip { -v } else { v };
        }
        if let Some(s) = slack_col[i] {
            row[s] = Rational::from_integer(if flip { 1.into() } else { (-1).into() });
        }
        if let Some(a) = art_col[i] {
            row[a] = Rational::from_integer(1.into());
        }
        row[width] = if flip { -rhs } else { rhs };
        basis.push(
            art_col[i]
                .or(slack_col[i])
                .expect("every row has a basic column"),
        );
        rows.push(row);
        row_sign.push(sign);
    }
    let initial_basic = basis.clone();
    let mut tab = Tableau {
        rows,
        cost: Vec::new(),
        basis,
        columns,
        initial_basic,
        row_sign,
        active_rows: vec![true; m],
        pivots: 0,
        pivot_limit,
    };

    // Phase 1: minimize the sum of artificials.
    let phase1_cost: Vec<Rational> = tab
        .columns
        .iter()
        .map(|c| match c {
            Column::Artificial(_) => Rational::from_integer(1.into()),
            _ => Rational::zero(),
        })
        .collect();
    tab.price(&phase1_cost);
    tab.optimize(&|_| true)?;
    let infeasibility = -tab.cost[width].clone();
    if infeasibility.is_positive() {
        // pi_i = c_j - d_j for the column j that started basic in row i
        let multipliers: Vec<Rational> = (0..m)
            .map(|i| {
                let j = tab.initial_basic[i];
                let pi = &phase1_cost[j] - &tab.cost[j];
                pi * Rational::from_integer(tab.row_sign[i].into())
            })
            .collect();
        let certificate = FarkasCertificate { multipliers };
        if !certificate.verify(sys) {
            return Err(Error::Arithmetic(
                "infeasibility certificate failed verification".into(),
            ));
        }
        return Ok(LpOutcome::Infeasible { certificate });
    }

    // Drive remaining (zero-level) artificials out of the basis, dropping
    // rows that turn out to be redundant.
    for i in 0..m {
        if !matches!(tab.columns[tab.basis[i]], Column::Artificial(_)) {
            continue;
        }
        let replacement = (0..width).find(|&j| {
            !matches!(tab.columns[j], Column::Artificial(_)) && !tab.rows[i][j].is_zero()
        });
        match replacement {
            Some(j) => tab.pivot(i, j)?,
            None => tab.active_rows[i] = false,
        }
    }
    let not_artificial = |c: Column| !matches!(c, Column::Artificial(_));

    let Some(objective) = &sys.objective else {
        let point = tab.structural_point(n);
        return finish_optimal(sys, Rational::zero(), point);
    };

    // Phase 2: minimize -objective.
    let phase2_cost: Vec<Rational> = tab
        .columns
        .iter()
        .map(|c| match c {
            Column::Structural(j) => -&objective[*j],
            _ => Rational::zero(),
        })
        .collect();
    tab.price(&phase2_cost);
    if let Some(col) = tab.optimize(&not_artificial)? {
        let point = tab.structural_point(n);
        let mut ray = vec![Rational::zero(); n];
        if let Column::Structural(j) = tab.columns[col] {
            ray[j] = Rational::from_integer(1.into());
        }
        for i in 0..m {
            if !tab.active_rows[i] {
                continue;
            }
            if let Column::Structural(j) = tab.columns[tab.basis[i]] {
                ray[j] = -&tab.rows[i][col];
            }
        }
        if !sys.is_satisfied_by(&point) {
            return Err(Error::Arithmetic(
                "unbounded base point is infeasible".into(),
            ));
        }
        return Ok(LpOutcome::Unbounded { point, ray });
    }
    let point = tab.structural_point(n);
    let value = sys.objective_value(&point);
    finish_optimal(sys, value, point)
}

fn finish_optimal(sys: &LinearSystem, value: Rational, point: Vec<Rational>) -> Result<LpOutcome> {
    if !sys.is_satisfied_by(&point) {
        return Err(Error::Arithmetic(
            "simplex point failed substitution check".into(),
        ));
    }
    Ok(LpOutcome::Optimal { value, point })
}

/// Builds a system from integer rows.
pub fn system_from_rows(
    variables: &[&str],
    rows: &[(&[i64], Relation, i64)],
    objective: Option<&[i64]>,
) -> Result<LinearSystem> {
    let mut sys = LinearSystem::new(variables.iter().map(|s| s.to_string()).collect());
    for (i, (coeffs, rel, rhs)) in rows.iter().enumerate() {
        let coeffs = coeffs
            .iter()
            .map(|&v| Rational::from_integer(v.into()))
            .collect();
        sys.add(
            format!("row{i}"),
            coeffs,
            *rel,
            Rational::from_integer((*rhs).into()),
        )?;
    }
    if let Some(obj) = objective {
        if obj.len() != variables.len() {
            return Err(invalid("objective length mismatch"));
        }
        sys.maximize(
            obj.iter()
                .map(|&v| Rational::from_integer(v.into()))
                .collect(),
        )?;
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;
    use Relation::*;

    fn solve(sys: &LinearSystem) -> LpOutcome {
        simplex_solve(sys, DEFAULT_PIVOT_LIMIT).unwrap()
    }

    #[test]
    fn single_upper_bound() {
        let sys = system_from_rows(&["x"], &[(&[1], Le, 3)], Some(&[1])).unwrap();
        match solve(&sys) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, int(3));
                assert_eq!(point, vec![int(3)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn contradictory_bounds_are_infeasible_with_certificate() {
        let sys = system_from_rows(&["x"], &[(&[1], Ge, 1), (&[1], Le, 0)], Some(&[1])).unwrap();
        match solve(&sys) {
            LpOutcome::Infeasible { certificate } => assert!(certificate.verify(&sys)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn binary_length_four_distance_three() {
        // Krawtchouk rows for q=2, n=4 over (B_3, B_4), with B_0 = 1 moved right.
        let sys = system_from_rows(
            &["B3", "B4"],
            &[
                (&[-2, -4], Ge, -4),
                (&[0, 6], Ge, -6),
                (&[2, -4], Ge, -4),
                (&[-1, 1], Ge, -1),
            ],
            Some(&[1, 1]),
        )
        .unwrap();
        match solve(&sys) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, frac(5, 3));
                assert_eq!(point, vec![frac(4, 3), frac(1, 3)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded_objective() {
        let sys = system_from_rows(&["x", "y"], &[(&[1, -1], Le, 1)], Some(&[1, 0])).unwrap();
        match solve(&sys) {
            LpOutcome::Unbounded { point, ray } => {
                assert!(sys.is_satisfied_by(&point));
                let far: Vec<Rational> = point
                    .iter()
                    .zip(&ray)
                    .map(|(p, r)| p + r * int(100))
                    .collect();
                assert!(sys.is_satisfied_by(&far));
                assert!(sys.objective_value(&far) > sys.objective_value(&point));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn equality_feasibility_without_objective() {
        let sys =
            system_from_rows(&["a", "b"], &[(&[1, 1], Eq, 2), (&[1, -1], Ge, 1)], None).unwrap();
        assert!(matches!(solve(&sys), LpOutcome::Optimal { .. }));
        let sys =
            system_from_rows(&["a", "b"], &[(&[1, 1], Eq, 2), (&[1, 1], Ge, 3)], None).unwrap();
        assert!(matches!(solve(&sys), LpOutcome::Infeasible { .. }));
    }

    #[test]
    fn redundant_equalities() {
        let sys = system_from_rows(
            &["a", "b"],
            &[(&[1, 1], Eq, 2), (&[2, 2], Eq, 4), (&[1, 0], Le, 1)],
            Some(&[0, 1]),
        )
        .unwrap();
        match solve(&sys) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_variable_system() {
        let sys = system_from_rows(&[], &[(&[], Eq, 1)], None).unwrap();
        assert!(matches!(solve(&sys), LpOutcome::Infeasible { .. }));
        let sys = system_from_rows(&[], &[(&[], Ge, -1)], Some(&[])).unwrap();
        assert!(matches!(solve(&sys), LpOutcome::Optimal { .. }));
    }

    #[test]
    fn pivot_limit_is_enforced() {
        let sys = system_from_rows(
            &["x", "y"],
            &[(&[1, 1], Ge, 1), (&[1, 2], Le, 4)],
            Some(&[1, 1]),
        )
        .unwrap();
        assert_eq!(simplex_solve(&sys, 0), Err(Error::PivotLimit(0)));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example, which cycles under the textbook largest-coefficient rule.
        let mut sys = LinearSystem::new(vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()]);
        sys.add(
            "r1",
            vec![frac(1, 4), int(-60), frac(-1, 25), int(9)],
            Le,
            int(0),
        )
        .unwrap();
        sys.add(
            "r2",
            vec![frac(1, 2), int(-90), frac(-1, 50), int(3)],
            Le,
            int(0),
        )
        .unwrap();
        sys.add("r3", vec![int(0), int(0), int(1), int(0)], Le, int(1))
            .unwrap();
        sys.maximize(vec![frac(3, 4), int(-150), frac(1, 50), int(-6)])
            .unwrap();
        match solve(&sys) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, frac(1, 20)),
            other => panic!("{other:?}"),
        }
    }

    /// Brute-force optimum of a 2-variable LP over the vertices formed by
    /// pairs of constraint lines (including the axes).
    fn vertex_enumeration(rows: &[(Vec<i64>, i64)], obj: &[i64]) -> Option<Rational> {
        let mut lines: Vec<(Rational, Rational, Rational)> = rows
            .iter()
            .map(|(a, b)| (int(a[0]), int(a[1]), int(*b)))
            .collect();
        lines.push((int(1), int(0), int(0)));
        lines.push((int(0), int(1), int(0)));
        let feasible = |x: &Rational, y: &Rational| {
            !x.is_negative()
                && !y.is_negative()
                && rows
                    .iter()
                    .all(|(a, b)| int(a[0]) * x + int(a[1]) * y >= int(*b))
        };
        let mut best: Option<Rational> = None;
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let (a1, b1, c1) = &lines[i];
                let (a2, b2, c2) = &lines[j];
                let det = a1 * b2 - a2 * b1;
                if det.is_zero() {
                    continue;
                }
                let x = (c1 * b2 - c2 * b1) / &det;
                let y = (a1 * c2 - a2 * c1) / &det;
                if feasible(&x, &y) {
                    let v = int(obj[0]) * &x + int(obj[1]) * &y;
                    if best.as_ref().is_none_or(|b| v > *b) {
                        best = Some(v);
                    }
                }
            }
        }
        best
    }

    proptest! {
        #[test]
        fn bounded_two_variable_lps_match_vertex_enumeration(
            rows in proptest::collection::vec((proptest::collection::vec(-6i64..7, 2), -10i64..11), 1..6),
            obj in proptest::collection::vec(0i64..5, 2),
        ) {
            // A box keeps the problem bounded.
            let mut rows = rows;
            rows.push((vec![-1, 0], -8));
            rows.push((vec![0, -1], -8));
            let sys_rows: Vec<(&[i64], Relation, i64)> =
                rows.iter().map(|(a, b)| (a.as_slice(), Ge, *b)).collect();
            let sys = system_from_rows(&["x", "y"], &sys_rows, Some(&obj)).unwrap();
            let expected = vertex_enumeration(&rows, &obj);
            match simplex_solve(&sys, DEFAULT_PIVOT_LIMIT).unwrap() {
                LpOutcome::Optimal { value, point } => {
                    prop_assert!(sys.is_satisfied_by(&point));
                    prop_assert_eq!(Some(value), expected);
                }
                LpOutcome::Infeasible { certificate } => {
                    prop_assert!(certificate.verify(&sys));
                    prop_assert_eq!(expected, None);
                }
                LpOutcome::Unbounded { .. } => prop_assert!(false, "box-bounded LP reported unbounded"),
            }
        }
    }
}
