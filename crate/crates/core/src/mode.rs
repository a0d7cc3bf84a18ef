//! Barycentric operations, binary terms, and executable checks of the mode laws.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, QVector};
use crate::scalar::{interval_member, Rational, RingSpec};

/// A point of `Q^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(QVector);

impl Point {
    pub fn new(coords: QVector) -> Self {
        Point(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    /// Parses comma-separated rationals, e.g. `"1/2, -3"`.
    pub fn parse(s: &str) -> Result<Self> {
        s.split(',')
            .map(|c| c.trim().parse())
            .collect::<Result<QVector>>()
            .map(Point)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| Rational::int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> QVector {
        self.0
    }

    fn same_dim(&self, other: &Point) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, f: &Rational) -> Point {
        Point(self.0.iter().map(|a| a * f).collect())
    }

    /// `x y p = (1 - p) x + p y`.
    pub fn bary(&self, other: &Point, p: &Rational) -> Result<Point> {
        bary_op(self, other, p)
    }

    pub fn squared_distance(&self, other: &Point) -> Rational {
        let d = self.sub(other);
        dot(&d.0, &d.0)
    }

    /// `sum c_i p_i` over equally sized points.
    pub fn combination(points: &[Point], coeffs: &[Rational]) -> Result<Point> {
        let first = points.first().ok_or(Error::EmptyInput("points"))?;
        if points.len() != coeffs.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                found: coeffs.len(),
            });
        }
        let mut acc = Point::zeros(first.dim());
        for (pt, c) in points.iter().zip(coeffs) {
            first.same_dim(pt)?;
            if c.is_zero() {
                continue;
            }
            for (a, v) in acc.0.iter_mut().zip(&pt.0) {
                *a += c * v;
            }
        }
        Ok(acc)
    }
}

impl Index<usize> for Point {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn bary_op(x: &Point, y: &Point, p: &Rational) -> Result<Point> {
    x.same_dim(y)?;
    let q = Rational::one() - p;
    Ok(Point(
        x.0.iter().zip(&y.0).map(|(a, b)| &q * a + p * b).collect(),
    ))
}

/// A binary barycentric term: leaves are variables `x_i`, an inner node
/// `Op(l, r, p)` denotes `l r p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Op(Box<Term>, Box<Term>, Rational),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn op(left: Term, right: Term, p: Rational) -> Term {
        Term::Op(Box::new(left), Box::new(right), p)
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Op(l, r, _) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn max_var(&self) -> usize {
        match self {
            Term::Var(i) => *i,
            Term::Op(l, r, _) => l.max_var().max(r.max_var()),
        }
    }

    pub fn parameters(&self) -> Vec<&Rational> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out
    }

    fn collect_params<'a>(&'a self, out: &mut Vec<&'a Rational>) {
        if let Term::Op(l, r, p) = self {
            l.collect_params(out);
            r.collect_params(out);
            out.push(p);
        }
    }

    /// Random term over `x_0..x_{nvars-1}` whose parameters are drawn from `params`.
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        nvars: usize,
        max_depth: usize,
        params: &[Rational],
    ) -> Term {
        if max_depth == 0 || params.is_empty() || rng.gen_bool(0.3) {
            return Term::Var(rng.gen_range(0..nvars));
        }
        let l = Term::random(rng, nvars, max_depth - 1, params);
        let r = Term::random(rng, nvars, max_depth - 1, params);
        let p = params[rng.gen_range(0..params.len())].clone();
        Term::op(l, r, p)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::Op(l, r, p) => write!(f, "(op {l} {r} {p})"),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Term> {
        let tokens: Vec<String> = s
            .replace('(', " ( ")
            .replace(')', " ) ")
            .split_whitespace()
            .map(str::to_owned)
            .collect();
        let mut pos = 0;
        let t = parse_term(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!("trailing input after term: {:?}", &tokens[pos..])));
        }
        Ok(t)
    }
}

fn parse_term(tokens: &[String], pos: &mut usize) -> Result<Term> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::Parse("unexpected end of term".into()))?;
    *pos += 1;
    if tok == "(" {
        let head = tokens.get(*pos).map(String::as_str);
        if head != Some("op") {
            return Err(Error::Parse(format!("expected `op`, found {head:?}")));
        }
        *pos += 1;
        let l = parse_term(tokens, pos)?;
        let r = parse_term(tokens, pos)?;
        let p: Rational = tokens
            .get(*pos)
            .ok_or_else(|| Error::Parse("missing parameter".into()))?
            .parse()?;
        *pos += 1;
        if tokens.get(*pos).map(String::as_str) != Some(")") {
            return Err(Error::Parse("expected `)`".into()));
        }
        *pos += 1;
        Ok(Term::op(l, r, p))
    } else if let Some(idx) = tok.strip_prefix('x') {
        idx.parse()
            .map(Term::Var)
            .map_err(|_| Error::Parse(format!("bad variable {tok:?}")))
    } else {
        Err(Error::Parse(format!("unexpected token {tok:?}")))
    }
}

pub fn eval_term(t: &Term, assignment: &[Point]) -> Result<Point> {
    match t {
        Term::Var(i) => assignment.get(*i).cloned().ok_or(Error::UnboundVariable(*i)),
        Term::Op(l, r, p) => {
            let a = eval_term(l, assignment)?;
            let b = eval_term(r, assignment)?;
            bary_op(&a, &b, p)
        }
    }
}

/// Coefficients `(c_0, .., c_k)` of the affine combination a term denotes
/// over `x_0..x_k`.
pub fn term_coefficients(t: &Term, k: usize) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); k + 1];
    accumulate(t, &Rational::one(), &mut out)?;
    Ok(out)
}

fn accumulate(t: &Term, weight: &Rational, out: &mut [Rational]) -> Result<()> {
    match t {
        Term::Var(i) => {
            let slot = out.get_mut(*i).ok_or(Error::UnboundVariable(*i))?;
            *slot += weight;
            Ok(())
        }
        Term::Op(l, r, p) => {
            accumulate(l, &(weight * (Rational::one() - p)), out)?;
            accumulate(r, &(weight * p), out)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Idempotence,
    TwistedCommutativity,
    Entropic,
    Cancellativity,
}

/// One sampled instance: points `x, y, z, t` and parameters `p, q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawInstance {
    pub x: Point,
    pub y: Point,
    pub z: Point,
    pub t: Point,
    pub p: Rational,
    pub q: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawViolation {
    pub law: Law,
    pub instance: LawInstance,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub instances: usize,
    pub checks: usize,
    /// cancellation probes skipped because `p = 0`
    pub not_applicable: usize,
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check_instance(&mut self, inst: &LawInstance) -> Result<()> {
        let LawInstance { x, y, z, t, p, q } = inst;
        let one = Rational::one();
        let record = |law: Law, ok: bool, report: &mut LawReport| {
            report.checks += 1;
            if !ok {
                report.violations.push(LawViolation {
                    law,
                    instance: inst.clone(),
                });
            }
        };
        self.instances += 1;

        record(Law::Idempotence, bary_op(x, x, p)? == *x, self);

        let twisted = bary_op(x, y, p)? == bary_op(y, x, &(&one - p))?;
        record(Law::TwistedCommutativity, twisted, self);

        let lhs = bary_op(&bary_op(x, y, p)?, &bary_op(z, t, p)?, q)?;
        let rhs = bary_op(&bary_op(x, z, q)?, &bary_op(y, t, q)?, p)?;
        record(Law::Entropic, lhs == rhs, self);

        if p.is_zero() {
            self.not_applicable += 1;
        } else {
            let premise = bary_op(x, y, p)? == bary_op(x, z, p)?;
            record(Law::Cancellativity, !premise || y == z, self);
        }
        Ok(())
    }
}

/// Checks the laws on every `(x, y, z, t)` from `sample` and every `(p, q)`
/// from `parameters`.
pub fn check_laws(sample: &[Point], parameters: &[Rational]) -> Result<LawReport> {
    if sample.is_empty() {
        return Err(Error::EmptyInput("law sample"));
    }
    let mut report = LawReport::default();
    for x in sample {
        for y in sample {
            for z in sample {
                for t in sample {
                    for p in parameters {
                        for q in parameters {
                            report.check_instance(&LawInstance {
                                x: x.clone(),
                                y: y.clone(),
                                z: z.clone(),
                                t: t.clone(),
                                p: p.clone(),
                                q: q.clone(),
                            })?;
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Random rational in `[lo, hi]` with denominator at most `max_den`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(lo * den..=hi * den);
    Rational::frac(num, den)
}

pub fn random_point<R: Rng + ?Sized>(rng: &mut R, dim: usize, range: i64, max_den: i64) -> Point {
    Point::new((0..dim).map(|_| random_rational(rng, -range, range, max_den)).collect())
}

/// Random parameter from the closed unit interval of `ring`, occasionally 0 or 1.
pub fn random_ring_parameter<R: Rng + ?Sized>(rng: &mut R, ring: &RingSpec, max_exp: u32) -> Rational {
    match rng.gen_range(0..10) {
        0 => Rational::zero(),
        1 => Rational::one(),
        _ => loop {
            let primes = ring.inverted_primes();
            let p = primes[rng.gen_range(0..primes.len())];
            let den = (p as i64).pow(rng.gen_range(1..=max_exp));
            let cand = Rational::frac(rng.gen_range(1..den), den);
            if interval_member(&cand, ring, true) {
                return cand;
            }
        },
    }
}

pub fn random_law_instance<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> LawInstance {
    let mut pt = || random_point(rng, dim, 5, 12);
    let (x, y, z, t) = (pt(), pt(), pt(), pt());
    let param = |rng: &mut R| match rng.gen_range(0..8) {
        0 => Rational::zero(),
        1 => Rational::one(),
        _ => random_rational(rng, -1, 2, 16),
    };
    let p = param(rng);
    let q = param(rng);
    LawInstance { x, y, z, t, p, q }
}

/// Result of the exact check of the three identities relating `y`, `x` and
/// `b = y x p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveryRelations {
    pub b: Point,
    /// `x = y b (1/p)`
    pub recovers_x: bool,
    /// `y = b x (p/(p-1))`
    pub recovers_y: bool,
    /// `p^2 |y - x|^2 = |y - b|^2`
    pub distance_scaled: bool,
}

impl RecoveryRelations {
    pub fn all_hold(&self) -> bool {
        self.recovers_x && self.recovers_y && self.distance_scaled
    }
}

pub fn recovery_relations(y: &Point, x: &Point, p: &Rational) -> Result<RecoveryRelations> {
    if !(p.is_positive() && *p < Rational::one()) {
        return Err(Error::InvalidParameter(format!("{p} is not in (0, 1)")));
    }
    if y == x {
        return Err(Error::InvalidParameter("y and x coincide".into()));
    }
    let b = bary_op(y, x, p)?;
    let recovers_x = bary_op(y, &b, &p.recip()?)? == *x;
    let recovers_y = bary_op(&b, x, &(p / &(p - &Rational::one())))? == *y;
    let distance_scaled = y.squared_distance(x) * p * p == y.squared_distance(&b);
    Ok(RecoveryRelations {
        b,
        recovers_x,
        recovers_y,
        distance_scaled,
    })
}
