//! Exact linear feasibility and optimization over the rationals.
//!
//! Small systems (at most [`FM_MAX_VARS`] variables) go through
//! Fourier–Motzkin elimination; larger ones through a dense two-phase simplex
//! with Bland's anti-cycling rule. Both paths return a rational witness when
//! the system is feasible and a Farkas certificate when it is not.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, QVector};
use crate::scalar::Rational;

pub const FM_MAX_VARS: usize = 8;

/// Past this many live rows elimination hands over to the simplex.
const FM_ROW_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `coeffs . x  (<= | >= | =)  rhs`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearConstraint {
    pub coeffs: QVector,
    pub relation: Relation,
    pub rhs: Rational,
}

impl LinearConstraint {
    pub fn new(coeffs: QVector, relation: Relation, rhs: Rational) -> Self {
        LinearConstraint {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn le(coeffs: QVector, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Le, rhs)
    }

    pub fn ge(coeffs: QVector, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Ge, rhs)
    }

    pub fn eq(coeffs: QVector, rhs: Rational) -> Self {
        Self::new(coeffs, Relation::Eq, rhs)
    }

    /// `x_var >= 0` in a space of `nvars` variables.
    pub fn nonneg(var: usize, nvars: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); nvars];
        coeffs[var] = Rational::one();
        Self::ge(coeffs, Rational::zero())
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }

    /// Signed slack that is nonnegative exactly when an inequality holds.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Ge => lhs - &self.rhs,
            _ => &self.rhs - lhs,
        }
    }

    /// The constraint as `a . x <= b` (or `= b`).
    fn normalized(&self) -> (QVector, Rational, bool) {
        match self.relation {
            Relation::Le => (self.coeffs.clone(), self.rhs.clone(), false),
            Relation::Eq => (self.coeffs.clone(), self.rhs.clone(), true),
            Relation::Ge => (
                self.coeffs.iter().map(|c| -c).collect(),
                -self.rhs.clone(),
                false,
            ),
        }
    }
}

/// Multipliers `l` on the constraints, each written as `a_i . x <= b_i`
/// (a `>=` constraint is negated first; equalities keep their orientation),
/// with `l_i >= 0` on inequalities, `sum l_i a_i = 0` and `sum l_i b_i < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FarkasCertificate {
    pub multipliers: Vec<Rational>,
}

impl FarkasCertificate {
    pub fn verify(&self, constraints: &[LinearConstraint], nvars: usize) -> bool {
        if self.multipliers.len() != constraints.len() {
            return false;
        }
        let mut combo = vec![Rational::zero(); nvars];
        let mut rhs = Rational::zero();
        for (l, c) in self.multipliers.iter().zip(constraints) {
            let (a, b, is_eq) = c.normalized();
            if !is_eq && l.is_negative() {
                return false;
            }
            if l.is_zero() {
                continue;
            }
            for (acc, ai) in combo.iter_mut().zip(&a) {
                *acc += l * ai;
            }
            rhs += l * &b;
        }
        combo.iter().all(Rational::is_zero) && rhs.is_negative()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Feasibility {
    Feasible { witness: QVector },
    Infeasible { certificate: FarkasCertificate },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }

    pub fn witness(&self) -> Option<&QVector> {
        match self {
            Feasibility::Feasible { witness } => Some(witness),
            Feasibility::Infeasible { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: QVector, value: Rational },
    Unbounded,
    Infeasible(FarkasCertificate),
}

fn check_dims(constraints: &[LinearConstraint], nvars: usize) -> Result<()> {
    match constraints.iter().find(|c| c.coeffs.len() != nvars) {
        Some(c) => Err(Error::DimensionMismatch {
            expected: nvars,
            found: c.coeffs.len(),
        }),
        None => Ok(()),
    }
}

/// Exact feasibility of a finite constraint system in `nvars` variables.
pub fn lp_feasible(constraints: &[LinearConstraint], nvars: usize) -> Result<Feasibility> {
    check_dims(constraints, nvars)?;
    if nvars <= FM_MAX_VARS {
        if let Some(f) = fourier_motzkin(constraints, nvars)? {
            return Ok(f);
        }
    }
    simplex_feasible(constraints, nvars)
}

/// Maximizes `objective . x` subject to the constraints.
pub fn maximize(
    constraints: &[LinearConstraint],
    nvars: usize,
    objective: &[Rational],
) -> Result<LpOutcome> {
    check_dims(constraints, nvars)?;
    if objective.len() != nvars {
        return Err(Error::DimensionMismatch {
            expected: nvars,
            found: objective.len(),
        });
    }
    Ok(Tableau::build(constraints, nvars).solve(Some(objective)))
}

pub fn simplex_feasible(constraints: &[LinearConstraint], nvars: usize) -> Result<Feasibility> {
    check_dims(constraints, nvars)?;
    Ok(match Tableau::build(constraints, nvars).solve(None) {
        LpOutcome::Optimal { point, .. } => Feasibility::Feasible { witness: point },
        LpOutcome::Infeasible(certificate) => Feasibility::Infeasible { certificate },
        LpOutcome::Unbounded => unreachable!("phase one is bounded below"),
    })
}

/// Inequalities that hold with equality on the whole feasible set, plus a
/// feasible point strictly inside every other inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicitEqualities {
    pub tight: Vec<usize>,
    pub relative_interior: QVector,
}

pub fn implicit_equalities(
    constraints: &[LinearConstraint],
    nvars: usize,
) -> Result<std::result::Result<ImplicitEqualities, FarkasCertificate>> {
    check_dims(constraints, nvars)?;
    let base = match lp_feasible(constraints, nvars)? {
        Feasibility::Feasible { witness } => witness,
        Feasibility::Infeasible { certificate } => return Ok(Err(certificate)),
    };
    let mut tight = Vec::new();
    let mut loose_points: Vec<QVector> = Vec::new();
    for (i, c) in constraints.iter().enumerate() {
        if c.relation == Relation::Eq {
            continue;
        }
        if c.slack(&base).is_positive() {
            continue;
        }
        // maximize the slack of constraint i
        let objective: QVector = match c.relation {
            Relation::Le => c.coeffs.iter().map(|a| -a).collect(),
            _ => c.coeffs.clone(),
        };
        match maximize(constraints, nvars, &objective)? {
            LpOutcome::Optimal { point, .. } => {
                if c.slack(&point).is_positive() {
                    loose_points.push(point);
                } else {
                    tight.push(i);
                }
            }
            LpOutcome::Unbounded => {
                // an unbounded direction still has feasible points with positive slack
                let mut bounded = constraints.to_vec();
                let mut tmp = c.clone();
                tmp.relation = match c.relation {
                    Relation::Le => Relation::Le,
                    _ => Relation::Ge,
                };
                tmp.rhs = match c.relation {
                    Relation::Le => &c.rhs - Rational::one(),
                    _ => &c.rhs + Rational::one(),
                };
                bounded.push(tmp);
                let w = lp_feasible(&bounded, nvars)?
                    .witness()
                    .cloned()
                    .expect("unbounded slack admits slack one");
                loose_points.push(w);
            }
            LpOutcome::Infeasible(_) => unreachable!("system was feasible"),
        }
    }
    let mut relative_interior = base;
    if !loose_points.is_empty() {
        let count = Rational::int(loose_points.len() as i64 + 1);
        for p in &loose_points {
            for (acc, v) in relative_interior.iter_mut().zip(p) {
                *acc += v;
            }
        }
        for v in relative_interior.iter_mut() {
            *v = &*v / &count;
        }
    }
    Ok(Ok(ImplicitEqualities {
        tight,
        relative_interior,
    }))
}

#[derive(Clone)]
struct FmRow {
    coeffs: QVector,
    rhs: Rational,
    is_eq: bool,
    mult: QVector,
}

impl FmRow {
    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    fn add_scaled(&mut self, other: &FmRow, f: &Rational) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += f * b;
        }
        self.rhs += f * &other.rhs;
        for (a, b) in self.mult.iter_mut().zip(&other.mult) {
            *a += f * b;
        }
    }

    fn scaled(&self, f: &Rational) -> FmRow {
        FmRow {
            coeffs: self.coeffs.iter().map(|a| a * f).collect(),
            rhs: &self.rhs * f,
            is_eq: self.is_eq,
            mult: self.mult.iter().map(|a| a * f).collect(),
        }
    }

    /// Scales an inequality so its first nonzero coefficient has magnitude 1.
    fn normalize(self) -> FmRow {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(lead) if !self.is_eq => {
                let f = lead.abs().recip().expect("nonzero");
                self.scaled(&f)
            }
            _ => self,
        }
    }

    fn contradiction(&self) -> Option<FarkasCertificate> {
        if !self.is_trivial() {
            return None;
        }
        if self.is_eq && !self.rhs.is_zero() {
            let s = if self.rhs.is_positive() {
                -Rational::one()
            } else {
                Rational::one()
            };
            return Some(FarkasCertificate {
                multipliers: self.mult.iter().map(|m| m * &s).collect(),
            });
        }
        if !self.is_eq && self.rhs.is_negative() {
            return Some(FarkasCertificate {
                multipliers: self.mult.clone(),
            });
        }
        None
    }
}

enum FmStep {
    Substitute(usize, FmRow),
    Bounds(usize, Vec<FmRow>),
}

/// Fourier–Motzkin elimination with multiplier tracking. Returns `None` when
/// the row count outgrows the cap.
pub fn fourier_motzkin(
    constraints: &[LinearConstraint],
    nvars: usize,
) -> Result<Option<Feasibility>> {
    check_dims(constraints, nvars)?;
    let m = constraints.len();
    let mut rows: Vec<FmRow> = constraints
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let (coeffs, rhs, is_eq) = c.normalized();
            let mut mult = vec![Rational::zero(); m];
            mult[i] = Rational::one();
            FmRow {
                coeffs,
                rhs,
                is_eq,
                mult,
            }
        })
        .collect();
    let mut steps = Vec::with_capacity(nvars);

    for v in 0..nvars {
        if let Some(cert) = rows.iter().find_map(FmRow::contradiction) {
            return Ok(Some(Feasibility::Infeasible { certificate: cert }));
        }
        rows.retain(|r| !r.is_trivial());

        if let Some(e) = rows.iter().position(|r| r.is_eq && !r.coeffs[v].is_zero()) {
            let pivot = rows.swap_remove(e);
            for r in rows.iter_mut() {
                if r.coeffs[v].is_zero() {
                    continue;
                }
                let f = -(&r.coeffs[v] / &pivot.coeffs[v]);
                r.add_scaled(&pivot, &f);
            }
            steps.push(FmStep::Substitute(v, pivot));
            continue;
        }

        let (involved, mut rest): (Vec<FmRow>, Vec<FmRow>) =
            rows.into_iter().partition(|r| !r.coeffs[v].is_zero());
        let (pos, neg): (Vec<&FmRow>, Vec<&FmRow>) =
            involved.iter().partition(|r| r.coeffs[v].is_positive());
        for p in &pos {
            for n in &neg {
                let mut combo = p.scaled(&n.coeffs[v].abs());
                combo.add_scaled(n, &p.coeffs[v]);
                combo.coeffs[v] = Rational::zero();
                rest.push(combo.normalize());
            }
        }
        rows = dedup_rows(rest);
        steps.push(FmStep::Bounds(v, involved));
        if rows.len() > FM_ROW_CAP {
            return Ok(None);
        }
    }
    if let Some(cert) = rows.iter().find_map(FmRow::contradiction) {
        return Ok(Some(Feasibility::Infeasible { certificate: cert }));
    }

    let mut x = vec![Rational::zero(); nvars];
    for step in steps.iter().rev() {
        match step {
            FmStep::Substitute(v, row) => {
                let rest: Rational = (0..nvars)
                    .filter(|&w| w != *v)
                    .map(|w| &row.coeffs[w] * &x[w])
                    .sum();
                x[*v] = (&row.rhs - rest) / &row.coeffs[*v];
            }
            FmStep::Bounds(v, rows) => {
                let mut lo: Option<Rational> = None;
                let mut hi: Option<Rational> = None;
                for row in rows {
                    let rest: Rational = (0..nvars)
                        .filter(|&w| w != *v)
                        .map(|w| &row.coeffs[w] * &x[w])
                        .sum();
                    let bound = (&row.rhs - rest) / &row.coeffs[*v];
                    if row.coeffs[*v].is_positive() {
                        if hi.as_ref().is_none_or(|h| bound < *h) {
                            hi = Some(bound);
                        }
                    } else if lo.as_ref().is_none_or(|l| bound > *l) {
                        lo = Some(bound);
                    }
                }
                x[*v] = match (lo, hi) {
                    (Some(l), Some(h)) => (l + h) / Rational::int(2),
                    (Some(l), None) => l,
                    (None, Some(h)) => h,
                    (None, None) => Rational::zero(),
                };
            }
        }
    }
    debug_assert!(constraints.iter().all(|c| c.satisfied_by(&x)));
    Ok(Some(Feasibility::Feasible { witness: x }))
}

/// Keeps the tightest right-hand side among inequalities with equal coefficients.
fn dedup_rows(rows: Vec<FmRow>) -> Vec<FmRow> {
    let mut out: Vec<FmRow> = Vec::with_capacity(rows.len());
    for r in rows {
        if !r.is_eq && r.is_trivial() && !r.rhs.is_negative() {
            continue;
        }
        match out
            .iter_mut()
            .find(|o| !o.is_eq && !r.is_eq && o.coeffs == r.coeffs)
        {
            Some(o) => {
                if r.rhs < o.rhs {
                    *o = r;
                }
            }
            None => out.push(r),
        }
    }
    out
}

/// Dense tableau for `A z = b, z >= 0, b >= 0` where `z` packs the split free
/// variables, one slack per inequality and one artificial per row.
struct Tableau {
    nvars: usize,
    rows: usize,
    /// columns: 2*nvars split vars, then slacks, then artificials, then rhs
    cols: usize,
    n_struct: usize,
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// row sign flips applied so that b >= 0; slack column per row if any
    sign: Vec<Rational>,
}

impl Tableau {
    fn build(constraints: &[LinearConstraint], nvars: usize) -> Tableau {
        let rows = constraints.len();
        let n_slack = constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let n_struct = 2 * nvars + n_slack;
        let cols = n_struct + rows + 1;
        let mut t = vec![vec![Rational::zero(); cols]; rows];
        let mut sign = Vec::with_capacity(rows);
        let mut slack = 2 * nvars;
        for (i, c) in constraints.iter().enumerate() {
            let (a, b, is_eq) = c.normalized();
            let s = if b.is_negative() {
                -Rational::one()
            } else {
                Rational::one()
            };
            for k in 0..nvars {
                t[i][k] = &a[k] * &s;
                t[i][nvars + k] = -(&a[k] * &s);
            }
            if !is_eq {
                t[i][slack] = s.clone();
                slack += 1;
            }
            t[i][n_struct + i] = Rational::one();
            t[i][cols - 1] = &b * &s;
            sign.push(s);
        }
        Tableau {
            nvars,
            rows,
            cols,
            n_struct,
            t,
            basis: (n_struct..n_struct + rows).collect(),
            sign,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip().expect("pivot is nonzero");
        for x in self.t[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        (0..self.cols - 1)
            .map(|j| {
                let cb: Rational = (0..self.rows)
                    .filter(|&i| !cost[self.basis[i]].is_zero() && !self.t[i][j].is_zero())
                    .map(|i| &cost[self.basis[i]] * &self.t[i][j])
                    .sum();
                &cost[j] - cb
            })
            .collect()
    }

    /// Bland-rule primal simplex minimizing `cost` over the allowed columns.
    /// Returns false when unbounded.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let rc = self.reduced_costs(cost);
            let Some(enter) = (0..allowed).find(|&j| rc[j].is_negative()) else {
                return true;
            };
            let rhs = self.cols - 1;
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows {
                let a = &self.t[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.t[i][rhs] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }

    fn point(&self) -> QVector {
        let rhs = self.cols - 1;
        let mut z = vec![Rational::zero(); self.cols - 1];
        for (i, &b) in self.basis.iter().enumerate() {
            z[b] = self.t[i][rhs].clone();
        }
        (0..self.nvars)
            .map(|k| &z[k] - &z[self.nvars + k])
            .collect()
    }

    fn solve(mut self, objective: Option<&[Rational]>) -> LpOutcome {
        let width = self.cols - 1;
        let mut phase1 = vec![Rational::zero(); width];
        for c in phase1.iter_mut().skip(self.n_struct) {
            *c = Rational::one();
        }
        self.run(&phase1, width);
        let rhs = self.cols - 1;
        let infeasibility: Rational = (0..self.rows)
            .filter(|&i| self.basis[i] >= self.n_struct)
            .map(|i| self.t[i][rhs].clone())
            .sum();
        if infeasibility.is_positive() {
            // y_i = 1 - reduced cost of artificial i; multipliers are -y_i * sign_i
            let rc = self.reduced_costs(&phase1);
            let multipliers = (0..self.rows)
                .map(|i| {
                    let y = Rational::one() - &rc[self.n_struct + i];
                    -(y * &self.sign[i])
                })
                .collect();
            return LpOutcome::Infeasible(FarkasCertificate { multipliers });
        }
        // drive zero-level artificials out of the basis where possible
        for i in 0..self.rows {
            if self.basis[i] < self.n_struct {
                continue;
            }
            if let Some(j) = (0..self.n_struct).find(|&j| !self.t[i][j].is_zero()) {
                self.pivot(i, j);
            }
        }
        let Some(obj) = objective else {
            let point = self.point();
            return LpOutcome::Optimal {
                point,
                value: Rational::zero(),
            };
        };
        let mut cost = vec![Rational::zero(); width];
        for k in 0..self.nvars {
            cost[k] = -obj[k].clone();
            cost[self.nvars + k] = obj[k].clone();
        }
        if !self.run(&cost, self.n_struct) {
            return LpOutcome::Unbounded;
        }
        let point = self.point();
        let value = dot(obj, &point);
        LpOutcome::Optimal { point, value }
    }
}
