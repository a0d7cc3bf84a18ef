//! Exact rational scalars and the coefficient rings `Z[S^-1]`.
//!
//! Every computation in this crate is carried out over [`Rational`], an
//! arbitrary-precision fraction kept in lowest terms. A [`RingSpec`] names a
//! localization of the integers by the finite set of primes it inverts.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact fraction `numerator / denominator` with `denominator >= 1` and
/// `gcd(numerator, denominator) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// Panicking shorthand for literals in code and tests.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("nonzero denominator")
    }

    pub fn int(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_big(value: BigRational) -> Self {
        Rational(value)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Nearest integer, ties rounded up.
    pub fn round_half_up(&self) -> BigInt {
        (&self.0 + BigRational::new(BigInt::one(), BigInt::from(2)))
            .floor()
            .to_integer()
    }

    pub fn pow(&self, exp: i32) -> Self {
        Rational(num_traits::pow::Pow::pow(&self.0, exp))
    }

    /// Lossy conversion for display purposes only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rational::int(n))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Int(i) => Ok(Rational::int(i)),
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::int(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::int(v)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by zero panics, as for the underlying type; use `recip` for a checked path.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Prime factors of `n`, ascending, without multiplicity. Trial division;
/// the denominators seen here are small.
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            out.push(p.clone());
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The unital subring `T = Z[S^-1]` of the rationals for a nonempty finite
/// set `S` of primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RingSpecRepr", into = "RingSpecRepr")]
pub struct RingSpec {
    inverted_primes: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RingSpecRepr {
    inverted_primes: Vec<u64>,
}

impl TryFrom<RingSpecRepr> for RingSpec {
    type Error = Error;
    fn try_from(r: RingSpecRepr) -> Result<Self> {
        RingSpec::new(r.inverted_primes)
    }
}

impl From<RingSpec> for RingSpecRepr {
    fn from(r: RingSpec) -> Self {
        RingSpecRepr {
            inverted_primes: r.inverted_primes,
        }
    }
}

impl RingSpec {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut inverted_primes: Vec<u64> = primes.into_iter().collect();
        inverted_primes.sort_unstable();
        inverted_primes.dedup();
        if inverted_primes.is_empty() {
            return Err(Error::InvalidRing("at least one prime must be inverted".into()));
        }
        if let Some(&bad) = inverted_primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidRing(format!("{bad} is not prime")));
        }
        Ok(RingSpec { inverted_primes })
    }

    /// The dyadic rationals `Z[1/2]`.
    pub fn dyadic() -> Self {
        RingSpec {
            inverted_primes: vec![2],
        }
    }

    pub fn inverted_primes(&self) -> &[u64] {
        &self.inverted_primes
    }

    /// Product of the inverted primes; powers of it generate the denominator grid.
    pub fn radical(&self) -> BigInt {
        self.inverted_primes.iter().map(|&p| BigInt::from(p)).product()
    }

    pub fn contains(&self, q: &Rational) -> bool {
        ring_contains(q, self)
    }

    /// Removes every inverted prime from `n`, leaving the part that is not a
    /// unit of the ring.
    pub fn strip_units(&self, n: &BigInt) -> BigInt {
        let mut n = n.abs();
        if n.is_zero() {
            return n;
        }
        for &p in &self.inverted_primes {
            let p = BigInt::from(p);
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        n
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.inverted_primes.iter().map(|p| p.to_string()).collect();
        write!(f, "Z[1/{}]", ps.join(", 1/"))
    }
}

/// Parses a prime list such as `2`, `2,5` or `{2, 5}`.
impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let primes = body
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidRing(format!("cannot parse prime {:?}", p.trim())))
            })
            .collect::<Result<Vec<u64>>>()?;
        RingSpec::new(primes)
    }
}

pub fn ring_contains(q: &Rational, ring: &RingSpec) -> bool {
    ring.strip_units(q.denom()).is_one()
}

pub fn interval_member(q: &Rational, ring: &RingSpec, open: bool) -> bool {
    if !ring_contains(q, ring) {
        return false;
    }
    if open {
        q.is_positive() && *q < Rational::one()
    } else {
        !q.is_negative() && *q <= Rational::one()
    }
}

pub fn smallest_inverted_prime(ring: &RingSpec) -> u64 {
    ring.inverted_primes[0]
}

/// The exponent of `p` in `q`: `q = p^v * a/b` with `p` dividing neither `a` nor `b`.
pub fn prime_valuation(q: &Rational, p: u64) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut n = n.clone();
        let mut k = 0i64;
        loop {
            let (quot, rem) = n.div_rem(&p);
            if !rem.is_zero() {
                return k;
            }
            n = quot;
            k += 1;
        }
    };
    Ok(count(q.numer()) - count(q.denom()))
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&Rational::int(*other)))
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        *self == Rational::int(*other)
    }
}
