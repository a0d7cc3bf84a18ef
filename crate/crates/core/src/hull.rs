//! Convex hulls over `Q` and over the rings `T = Z[S^-1]`.
//!
//! `Cnv_T(X)` is the set of combinations `sum xi_i x_i` with `sum xi_i = 1`
//! and every `xi_i` in `[0, 1] ∩ T`. Membership over `Q` is a single exact
//! feasibility problem. Membership over `T` is decided in three steps:
//!
//! 1. the rational coefficient polytope `Q` must be nonempty;
//! 2. its affine hull is cut out by the original equalities plus the
//!    coefficients that vanish on all of `Q` (implicit equalities);
//! 3. that affine hull must contain a `T`-point, which the Smith normal form of
//!    the cleared integer system decides. `T`-points of a nonempty affine
//!    lattice are dense in its real span, and `Q` has nonempty relative
//!    interior there, so a `T`-point of `Q` exists; it is produced by
//!    rounding an interior rational point onto a refining `p^-k` grid.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, solve_affine, IntMatrix, QMatrix, QVector};
use crate::lp::{implicit_equalities, lp_feasible, FarkasCertificate, Feasibility, LinearConstraint};
use crate::mode::{bary_op, eval_term, random_ring_parameter, Point, Term};
use crate::scalar::{ring_contains, smallest_inverted_prime, Rational, RingSpec};

/// Sparse convex combination over indices of a generator list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaryCombination {
    pub support: Vec<(usize, Rational)>,
}

impl BaryCombination {
    /// Drops zero coefficients from a dense coefficient vector.
    pub fn from_dense(coeffs: &[Rational]) -> Self {
        BaryCombination {
            support: coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (i, c) in &self.support {
            out[*i] += c;
        }
        out
    }

    pub fn coefficient_sum(&self) -> Rational {
        self.support.iter().map(|(_, c)| c).sum()
    }

    pub fn recombine(&self, points: &[Point]) -> Result<Point> {
        let pts: Vec<Point> = self.support.iter().map(|(i, _)| points[*i].clone()).collect();
        let cs: Vec<Rational> = self.support.iter().map(|(_, c)| c.clone()).collect();
        Point::combination(&pts, &cs)
    }

    /// Every coefficient lies in `[0, 1] ∩ T` and they sum to one.
    pub fn is_t_combination(&self, ring: &RingSpec) -> bool {
        self.coefficient_sum().is_one()
            && self
                .support
                .iter()
                .all(|(_, c)| crate::scalar::interval_member(c, ring, false))
    }
}

fn check_points(d: &Point, xs: &[Point]) -> Result<usize> {
    if xs.is_empty() {
        return Err(Error::EmptyInput("generator set"));
    }
    let n = d.dim();
    for x in xs {
        if x.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x.dim(),
            });
        }
    }
    Ok(n)
}

/// `sum xi_i x_i = d`, `sum xi_i = 1`, `xi >= 0` in the variables `xi`.
fn coefficient_system(d: &Point, xs: &[Point]) -> Vec<LinearConstraint> {
    let m = xs.len();
    let mut cs: Vec<LinearConstraint> = (0..d.dim())
        .map(|j| LinearConstraint::eq(xs.iter().map(|x| x[j].clone()).collect(), d[j].clone()))
        .collect();
    cs.push(LinearConstraint::eq(vec![Rational::one(); m], Rational::one()));
    cs.extend((0..m).map(|i| LinearConstraint::nonneg(i, m)));
    cs
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum QMembership {
    Member { combination: BaryCombination },
    NotMember { certificate: FarkasCertificate },
}

pub fn decide_q_membership(d: &Point, xs: &[Point]) -> Result<QMembership> {
    check_points(d, xs)?;
    let cs = coefficient_system(d, xs);
    Ok(match lp_feasible(&cs, xs.len())? {
        Feasibility::Feasible { witness } => QMembership::Member {
            combination: BaryCombination::from_dense(&witness),
        },
        Feasibility::Infeasible { certificate } => QMembership::NotMember { certificate },
    })
}

pub fn hull_member_q(d: &Point, xs: &[Point]) -> Result<Option<BaryCombination>> {
    Ok(match decide_q_membership(d, xs)? {
        QMembership::Member { combination } => Some(combination),
        QMembership::NotMember { .. } => None,
    })
}

/// Why a point is outside `Cnv_T(X)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum TObstruction {
    /// Not even in the rational hull.
    OutsideRationalHull { certificate: FarkasCertificate },
    /// The affine hull of the coefficient polytope has no `T`-point: after the
    /// Smith reduction, `invariant_factor * y = rhs` has no solution in `T`.
    RingObstruction {
        invariant_factor: String,
        rhs: String,
        /// coefficients forced to zero on the whole rational polytope
        vanishing: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TMembership {
    Member { combination: BaryCombination },
    NotMember { obstruction: TObstruction },
}

/// Decides `d ∈ Cnv_T(X)` exactly.
pub fn decide_t_membership(d: &Point, xs: &[Point], ring: &RingSpec) -> Result<TMembership> {
    check_points(d, xs)?;
    let m = xs.len();
    let cs = coefficient_system(d, xs);
    let implicit = match implicit_equalities(&cs, m)? {
        Ok(ie) => ie,
        Err(certificate) => {
            return Ok(TMembership::NotMember {
                obstruction: TObstruction::OutsideRationalHull { certificate },
            })
        }
    };
    let first_nonneg = d.dim() + 1;
    let vanishing: Vec<usize> = implicit.tight.iter().map(|&i| i - first_nonneg).collect();
    let live: Vec<usize> = (0..m).filter(|i| !vanishing.contains(i)).collect();

    // equality system restricted to the live coefficients, cleared to integers
    let eq_rows: Vec<(Vec<Rational>, Rational)> = cs[..first_nonneg]
        .iter()
        .map(|c| (live.iter().map(|&i| c.coeffs[i].clone()).collect(), c.rhs.clone()))
        .collect();
    let (int_m, int_c) = clear_denominators(&eq_rows);
    let snf = smith_normal_form(&int_m, live.len())?;
    let uc: Vec<BigInt> = snf
        .u
        .iter()
        .map(|row| row.iter().zip(&int_c).map(|(a, b)| a * b).sum())
        .collect();
    let factors = snf.invariant_factors();
    let mut y = vec![Rational::zero(); live.len()];
    for (i, f) in factors.iter().enumerate() {
        let yi = Rational::new(uc[i].clone(), f.clone())?;
        if !ring_contains(&yi, ring) {
            return Ok(TMembership::NotMember {
                obstruction: TObstruction::RingObstruction {
                    invariant_factor: f.to_string(),
                    rhs: uc[i].to_string(),
                    vanishing,
                },
            });
        }
        y[i] = yi;
    }
    debug_assert!(uc[factors.len()..].iter().all(Zero::is_zero));

    let v = |r: usize, c: usize| Rational::int(snf.v[r][c].clone());
    let base: QVector = (0..live.len())
        .map(|r| (0..live.len()).map(|c| v(r, c) * &y[c]).sum())
        .collect();
    let kernel: Vec<QVector> = (factors.len()..live.len())
        .map(|c| (0..live.len()).map(|r| v(r, c)).collect())
        .collect();
    let target: QVector = live.iter().map(|&i| implicit.relative_interior[i].clone()).collect();

    let coeffs = round_into_polytope(&base, &kernel, &target, smallest_inverted_prime(ring))?;
    let mut dense = vec![Rational::zero(); m];
    for (&i, c) in live.iter().zip(coeffs) {
        dense[i] = c;
    }
    let combination = BaryCombination::from_dense(&dense);
    debug_assert!(combination.is_t_combination(ring));
    Ok(TMembership::Member { combination })
}

pub fn hull_member_t(d: &Point, xs: &[Point], ring: &RingSpec) -> Result<Option<BaryCombination>> {
    Ok(match decide_t_membership(d, xs, ring)? {
        TMembership::Member { combination } => Some(combination),
        TMembership::NotMember { .. } => None,
    })
}

fn clear_denominators(rows: &[(Vec<Rational>, Rational)]) -> (IntMatrix, Vec<BigInt>) {
    let mut mat = Vec::with_capacity(rows.len());
    let mut rhs = Vec::with_capacity(rows.len());
    for (coeffs, b) in rows {
        let l = coeffs
            .iter()
            .chain(std::iter::once(b))
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scale = Rational::int(l);
        mat.push(
            coeffs
                .iter()
                .map(|c| (c * &scale).numer().clone())
                .collect(),
        );
        rhs.push((b * &scale).numer().clone());
    }
    (mat, rhs)
}

/// Finds `base + K w` with every entry nonnegative and `w` on a `p^-k` grid by
/// rounding the exact `w*` with `base + K w* = target` (all entries of
/// `target` positive).
fn round_into_polytope(
    base: &[Rational],
    kernel: &[QVector],
    target: &[Rational],
    p: u64,
) -> Result<QVector> {
    if kernel.is_empty() {
        return Ok(base.to_vec());
    }
    let len = base.len();
    let k_mat = QMatrix::from_columns(kernel, len)?;
    let diff: QVector = target.iter().zip(base).map(|(t, b)| t - b).collect();
    let sol = solve_affine(&k_mat, &diff)?.expect("interior point lies on the lattice span");
    let w = sol.particular;
    let p = Rational::int(p as i64);
    let mut scale = Rational::one();
    for _ in 0..4096 {
        let w_k: QVector = w
            .iter()
            .map(|wi| Rational::int((wi * &scale).round_half_up()) / &scale)
            .collect();
        let cand: QVector = (0..len)
            .map(|r| &base[r] + crate::linalg::dot(k_mat.row(r), &w_k))
            .collect();
        if cand.iter().all(|c| !c.is_negative()) {
            return Ok(cand);
        }
        scale *= &p;
    }
    Err(Error::Unsupported("grid rounding did not converge".into()))
}

/// A Carathéodory reduction: affinely independent support, positive weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caratheodory {
    pub indices: Vec<usize>,
    pub coefficients: Vec<Rational>,
}

pub fn caratheodory(d: &Point, xs: &[Point]) -> Result<Caratheodory> {
    let start = hull_member_q(d, xs)?.ok_or(Error::NotAMember)?;
    let n = d.dim();
    let mut support: Vec<(usize, Rational)> = start.support;
    loop {
        // affine dependencies are kernel vectors of the columns (x_i, 1)
        let cols: Vec<QVector> = support
            .iter()
            .map(|(i, _)| {
                let mut c = xs[*i].coords().to_vec();
                c.push(Rational::one());
                c
            })
            .collect();
        let mat = QMatrix::from_columns(&cols, n + 1)?;
        let zero = vec![Rational::zero(); n + 1];
        let sol = solve_affine(&mat, &zero)?.expect("homogeneous system");
        let Some(mut dep) = sol.kernel.into_iter().next() else {
            break;
        };
        if !dep.iter().any(Rational::is_positive) {
            dep.iter_mut().for_each(|x| *x = -x.clone());
        }
        let t = support
            .iter()
            .zip(&dep)
            .filter(|(_, l)| l.is_positive())
            .map(|((_, c), l)| c / l)
            .min()
            .expect("dependency has a positive entry");
        support = support
            .into_iter()
            .zip(&dep)
            .map(|((i, c), l)| (i, c - &t * l))
            .filter(|(_, c)| !c.is_zero())
            .collect();
    }
    let (indices, coefficients) = support.into_iter().unzip();
    Ok(Caratheodory {
        indices,
        coefficients,
    })
}

/// Points `a b s` of the `T`-line through `a`, `b` with `s` between `p` and `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TSegment {
    pub a: Point,
    pub b: Point,
    pub p: Rational,
    pub r: Rational,
}

impl TSegment {
    pub fn new(a: Point, b: Point, p: Rational, r: Rational, ring: &RingSpec) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: b.dim(),
            });
        }
        if a == b {
            return Err(Error::InvalidParameter("line anchors coincide".into()));
        }
        for e in [&p, &r] {
            if !ring_contains(e, ring) {
                return Err(Error::InvalidParameter(format!("{e} is not in {ring}")));
            }
        }
        Ok(TSegment { a, b, p, r })
    }
}

/// The slice of a `T`-segment whose parameters have denominator dividing
/// `(prod S)^depth`, ordered by parameter.
pub fn t_segment_points(seg: &TSegment, ring: &RingSpec, depth: u32) -> Result<Vec<Point>> {
    let grid = Rational::int(num_traits::pow(ring.radical(), depth as usize));
    let (lo, hi) = if seg.p <= seg.r {
        (&seg.p, &seg.r)
    } else {
        (&seg.r, &seg.p)
    };
    let first = -(-(lo * &grid)).floor();
    let last = (hi * &grid).floor();
    let mut out = Vec::new();
    let mut j = first;
    while j <= last {
        let s = Rational::int(j.clone()) / &grid;
        out.push(bary_op(&seg.a, &seg.b, &s)?);
        j += 1;
    }
    Ok(out)
}

/// Positive integers below `bound` with no inverted prime factor.
fn line_multipliers(ring: &RingSpec, bound: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut m = BigInt::one();
    while &m < bound {
        if ring.strip_units(&m) == m {
            out.push(m.clone());
        }
        m += 1;
    }
    out
}

/// Bounded under-approximation of the least `T`-segment convex set containing `xs`.
///
/// Each `T`-line through two points `c != d` is `l_T(c, c + (d - c)/m)` for a
/// positive integer `m` free of inverted primes. A round adds, for every pair
/// and every `m < R^(depth+1)` (`R` the product of the inverted primes), the
/// points `c + (s/m)(d - c)` with `s ∈ [0, m]` on the `R^-depth` grid.
pub fn segment_closure_bounded(
    xs: &[Point],
    ring: &RingSpec,
    depth: u32,
    rounds: u32,
) -> Result<BTreeSet<Point>> {
    let first = xs.first().ok_or(Error::EmptyInput("generator set"))?;
    if let Some(bad) = xs.iter().find(|x| x.dim() != first.dim()) {
        return Err(Error::DimensionMismatch {
            expected: first.dim(),
            found: bad.dim(),
        });
    }
    let radical = ring.radical();
    let grid = num_traits::pow(radical.clone(), depth as usize);
    let multipliers = line_multipliers(ring, &(&grid * &radical));
    let grid = Rational::int(grid);
    let mut set: BTreeSet<Point> = xs.iter().cloned().collect();
    for _ in 0..rounds {
        let current: Vec<Point> = set.iter().cloned().collect();
        let mut added = BTreeSet::new();
        for (i, c) in current.iter().enumerate() {
            for d in &current[i + 1..] {
                let diff = d.sub(c);
                for m in &multipliers {
                    let steps = m * grid.numer();
                    let mut j = BigInt::zero();
                    while j <= steps {
                        let t = Rational::new(j.clone(), steps.clone())?;
                        added.insert(c.add(&diff.scale(&t)));
                        j += 1;
                    }
                }
            }
        }
        let before = set.len();
        set.extend(added);
        if set.len() == before {
            break;
        }
    }
    Ok(set)
}

/// A failure of rational convexity: `a b q` left the generated `T`-hull.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeFailure {
    pub a: Point,
    pub b: Point,
    pub q: Rational,
    pub point: Point,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub samples: usize,
    pub failures: Vec<ProbeFailure>,
}

/// Tests one instance `a b q ∈ Cnv_T(G)`; `None` when it passes.
pub fn probe_instance(
    generators: &[Point],
    ring: &RingSpec,
    a: &Point,
    b: &Point,
    q: &Rational,
) -> Result<Option<ProbeFailure>> {
    let point = bary_op(a, b, q)?;
    Ok(match hull_member_t(&point, generators, ring)? {
        Some(_) => None,
        None => Some(ProbeFailure {
            a: a.clone(),
            b: b.clone(),
            q: q.clone(),
            point,
        }),
    })
}

/// Samples pairs from `Cnv_T(G)` by random `T`-terms over the generators and
/// rational `q ∈ (0, 1)`, reporting every `a b q` outside `Cnv_T(G)`.
pub fn q_convexity_probe(
    generators: &[Point],
    ring: &RingSpec,
    samples: usize,
    seed: u64,
) -> Result<ProbeReport> {
    if generators.is_empty() {
        return Err(Error::EmptyInput("generator set"));
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let params: Vec<Rational> = (0..8)
        .map(|_| loop {
            let p = random_ring_parameter(&mut rng, ring, 3);
            if p.is_positive() && p < Rational::one() {
                break p;
            }
        })
        .collect();
    let mut failures = Vec::new();
    for _ in 0..samples {
        let ta = Term::random(&mut rng, generators.len(), 3, &params);
        let tb = Term::random(&mut rng, generators.len(), 3, &params);
        let a = eval_term(&ta, generators)?;
        let b = eval_term(&tb, generators)?;
        let den = rng.gen_range(2..=12i64);
        let q = Rational::frac(rng.gen_range(1..den), den);
        if let Some(f) = probe_instance(generators, ring, &a, &b, &q)? {
            failures.push(f);
        }
    }
    Ok(ProbeReport { samples, failures })
}

/// A finite generating set with its extreme points and affine dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VPolytope {
    generators: Vec<Point>,
    vertices: Vec<Point>,
    dimension: usize,
}

impl VPolytope {
    pub fn new(generators: Vec<Point>) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyInput("polytope generators"))?;
        let n = first.dim();
        if let Some(bad) = generators.iter().find(|g| g.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        let distinct: Vec<Point> = {
            let mut seen = BTreeSet::new();
            generators.iter().filter(|g| seen.insert((*g).clone())).cloned().collect()
        };
        let mut vertices = Vec::new();
        for (i, g) in distinct.iter().enumerate() {
            let others: Vec<Point> = distinct
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            if others.is_empty() || hull_member_q(g, &others)?.is_none() {
                vertices.push(g.clone());
            }
        }
        let dimension = affine_dimension(&distinct);
        Ok(VPolytope {
            generators,
            vertices,
            dimension,
        })
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn ambient_dim(&self) -> usize {
        self.generators[0].dim()
    }

    pub fn contains(&self, d: &Point) -> Result<bool> {
        Ok(hull_member_q(d, &self.vertices)?.is_some())
    }
}

/// Rank of the differences `x_i - x_0`.
pub fn affine_dimension(points: &[Point]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let rows: Vec<QVector> = points[1..].iter().map(|p| p.sub(first).into_coords()).collect();
    if rows.is_empty() {
        return 0;
    }
    QMatrix::from_rows(rows, first.dim()).expect("equal dimensions").rank()
}

/// Random point of `Cnv_T(G)` from a random `T`-term.
pub fn random_t_hull_point<R: Rng + ?Sized>(
    rng: &mut R,
    generators: &[Point],
    ring: &RingSpec,
    depth: usize,
) -> Result<(Term, Point)> {
    let params: Vec<Rational> = (0..6)
        .map(|_| loop {
            let p = random_ring_parameter(rng, ring, 3);
            if p.is_positive() && p < Rational::one() {
                break p;
            }
        })
        .collect();
    let t = Term::random(rng, generators.len(), depth, &params);
    let pt = eval_term(&t, generators)?;
    Ok((t, pt))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn pts(s: &[&str]) -> Vec<Point> {
        s.iter().map(|p| Point::parse(p).unwrap()).collect()
    }

    fn p1(s: &str) -> Point {
        Point::parse(s).unwrap()
    }

    fn square() -> Vec<Point> {
        pts(&["0,0", "1,0", "1,1", "0,1"])
    }

    #[test]
    fn q_membership_examples() {
        let c = hull_member_q(&p1("1"), &pts(&["0", "3"])).unwrap().unwrap();
        assert_eq!(c.dense(2), vec![q("2/3"), q("1/3")]);
        match decide_q_membership(&p1("4"), &pts(&["0", "3"])).unwrap() {
            QMembership::NotMember { certificate } => {
                let cs = coefficient_system(&p1("4"), &pts(&["0", "3"]));
                assert!(certificate.verify(&cs, 2));
            }
            other => panic!("{other:?}"),
        }
        let c = hull_member_q(&p1("1/2,1/2"), &square()).unwrap().unwrap();
        assert_eq!(c.recombine(&square()).unwrap(), p1("1/2,1/2"));
        assert!(hull_member_q(&p1("1"), &[]).is_err());
        assert!(hull_member_q(&p1("1"), &pts(&["0,1"])).is_err());
    }

    #[test]
    fn t_membership_examples() {
        let d = RingSpec::dyadic();
        match decide_t_membership(&p1("1"), &pts(&["0", "3"]), &d).unwrap() {
            TMembership::NotMember {
                obstruction: TObstruction::RingObstruction { .. },
            } => {}
            other => panic!("{other:?}"),
        }
        let c = hull_member_t(&p1("3/2"), &pts(&["0", "3"]), &d).unwrap().unwrap();
        assert_eq!(c.dense(2), vec![q("1/2"), q("1/2")]);
        let xs = pts(&["0", "1/2", "3"]);
        let c = hull_member_t(&p1("1"), &xs, &d).unwrap().unwrap();
        assert!(c.is_t_combination(&d));
        assert_eq!(c.recombine(&xs).unwrap(), p1("1"));
        assert!(hull_member_t(&p1("4"), &xs, &d).unwrap().is_none());
    }

    #[test]
    fn t_membership_ternary_ring() {
        let t3 = RingSpec::new([3]).unwrap();
        assert!(hull_member_t(&p1("1"), &pts(&["0", "3"]), &t3).unwrap().is_some());
        assert!(hull_member_t(&p1("3/2"), &pts(&["0", "3"]), &t3).unwrap().is_none());
    }

    #[test]
    fn caratheodory_examples() {
        let c = caratheodory(&p1("1/2,1/2"), &square()).unwrap();
        assert!(c.indices.len() <= 3);
        let sup: Vec<Point> = c.indices.iter().map(|&i| square()[i].clone()).collect();
        assert_eq!(Point::combination(&sup, &c.coefficients).unwrap(), p1("1/2,1/2"));
        assert!(c.coefficients.iter().all(Rational::is_positive));

        let c = caratheodory(&p1("1,0"), &square()).unwrap();
        assert_eq!(c.indices, vec![1]);
        assert_eq!(c.coefficients, vec![q("1")]);

        let xs = pts(&["0", "3", "5"]);
        let c = caratheodory(&p1("1"), &xs).unwrap();
        assert!(c.indices.len() <= 2);
        assert_eq!(caratheodory(&p1("7"), &xs), Err(Error::NotAMember));
    }

    #[test]
    fn t_segment_examples() {
        let d = RingSpec::dyadic();
        let seg = TSegment::new(p1("0"), p1("1"), q("0"), q("3"), &d).unwrap();
        assert_eq!(t_segment_points(&seg, &d, 0).unwrap(), pts(&["0", "1", "2", "3"]));
        assert_eq!(
            t_segment_points(&seg, &d, 1).unwrap(),
            pts(&["0", "1/2", "1", "3/2", "2", "5/2", "3"])
        );
        let seg = TSegment::new(p1("0"), p1("3"), q("0"), q("1"), &d).unwrap();
        assert_eq!(t_segment_points(&seg, &d, 1).unwrap(), pts(&["0", "3/2", "3"]));
        assert!(TSegment::new(p1("0"), p1("0"), q("0"), q("1"), &d).is_err());
        assert!(TSegment::new(p1("0"), p1("1"), q("0"), q("1/3"), &d).is_err());
        let rev = TSegment::new(p1("0"), p1("1"), q("1"), q("0"), &d).unwrap();
        assert_eq!(t_segment_points(&rev, &d, 1).unwrap(), pts(&["0", "1/2", "1"]));
    }

    #[test]
    fn closure_examples() {
        let d = RingSpec::dyadic();
        let xs = pts(&["0", "3"]);
        let c = segment_closure_bounded(&xs, &d, 1, 1).unwrap();
        assert!(c.contains(&p1("1")));
        let single = segment_closure_bounded(&pts(&["2/3"]), &d, 3, 3).unwrap();
        assert_eq!(single.len(), 1);
        let c0 = segment_closure_bounded(&xs, &d, 0, 1).unwrap();
        assert!(!c0.contains(&p1("1")));
        assert!(c0.is_subset(&c));
    }

    #[test]
    fn probe_examples() {
        let d = RingSpec::dyadic();
        let g = pts(&["0", "3"]);
        let f = probe_instance(&g, &d, &p1("0"), &p1("3"), &q("1/3")).unwrap().unwrap();
        assert_eq!(f.point, p1("1"));
        let g01 = pts(&["0", "1"]);
        assert!(probe_instance(&g01, &d, &p1("0"), &p1("1"), &q("1/3")).unwrap().is_some());
        let report = q_convexity_probe(&g, &d, 40, 7).unwrap();
        assert!(!report.failures.is_empty());
        for f in &report.failures {
            assert!(hull_member_t(&f.point, &g, &d).unwrap().is_none());
        }
        let zero = q_convexity_probe(&pts(&["0"]), &d, 20, 1).unwrap();
        assert!(zero.failures.is_empty());
    }

    #[test]
    fn polytope_vertices_and_dimension() {
        let mut g = square();
        g.push(p1("1/2,1/2"));
        g.push(p1("1,0"));
        let poly = VPolytope::new(g).unwrap();
        assert_eq!(poly.vertices().len(), 4);
        assert_eq!(poly.dimension(), 2);
        let seg = VPolytope::new(pts(&["0,0", "1,1", "2,2"])).unwrap();
        assert_eq!(seg.vertices(), &pts(&["0,0", "2,2"])[..]);
        assert_eq!(seg.dimension(), 1);
        let pt = VPolytope::new(pts(&["1,1", "1,1"])).unwrap();
        assert_eq!(pt.vertices().len(), 1);
        assert_eq!(pt.dimension(), 0);
    }
}
