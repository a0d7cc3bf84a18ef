//! Affine independence and bases, affine maps, and affine equivalence of
//! V-polytopes as the decision procedure for isomorphism of their
//! barycentric algebras.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::{hull_member_q, VPolytope};
use crate::linalg::{solve_affine, QMatrix, QVector};
use crate::mode::{random_ring_parameter, Point};
use crate::scalar::{interval_member, Rational, RingSpec};

fn difference_rank(points: &[Point]) -> usize {
    crate::hull::affine_dimension(points)
}

/// Difference vectors from the first point are linearly independent.
pub fn affine_independent(points: &[Point]) -> bool {
    points.is_empty() || difference_rank(points) + 1 == points.len()
}

/// Is `x` an affine combination of `others`?
pub fn in_affine_span(x: &Point, others: &[Point]) -> Result<bool> {
    let Some(first) = others.first() else {
        return Ok(false);
    };
    let n = first.dim();
    let mut rows: Vec<QVector> = (0..n)
        .map(|r| others.iter().map(|p| p.coords()[r].clone()).collect())
        .collect();
    rows.push(vec![Rational::one(); others.len()]);
    let m = QMatrix::from_rows(rows, others.len())?;
    let mut rhs = x.coords().to_vec();
    rhs.push(Rational::one());
    Ok(solve_affine(&m, &rhs)?.is_some())
}

/// Independence in the span sense: no point is an affine combination of the others.
pub fn affine_independent_by_span(points: &[Point]) -> Result<bool> {
    for i in 0..points.len() {
        let others: Vec<Point> = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        if in_affine_span(&points[i], &others)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Greedy maximal independent sub-list, in input order.
pub fn max_independent_subset(points: &[Point]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut current: Vec<Point> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        current.push(p.clone());
        if affine_independent(&current) {
            chosen.push(i);
        } else {
            current.pop();
        }
    }
    chosen
}

/// Extends an independent set to `n + 1` points by trying `a_0 + e_i` in order.
pub fn extend_to_basis(independent: &[Point], n: usize) -> Result<Vec<Point>> {
    if !affine_independent(independent) {
        return Err(Error::AffinelyDependent);
    }
    let mut out = independent.to_vec();
    if out.is_empty() {
        out.push(Point::zeros(n));
    }
    if let Some(bad) = out.iter().find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    let base = out[0].clone();
    for i in 0..n {
        if out.len() == n + 1 {
            break;
        }
        let mut e = Point::zeros(n).into_coords();
        e[i] = Rational::one();
        out.push(base.add(&Point::new(e)));
        if !affine_independent(&out) {
            out.pop();
        }
    }
    debug_assert_eq!(out.len(), n + 1);
    Ok(out)
}

/// `x -> A x + b` with `A` invertible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap {
    matrix: QMatrix,
    translation: QVector,
}

impl AffineMap {
    pub fn new(matrix: QMatrix, translation: QVector) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        if translation.len() != matrix.rows() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: translation.len(),
            });
        }
        if matrix.determinant()?.is_zero() {
            return Err(Error::NonInvertible);
        }
        Ok(AffineMap { matrix, translation })
    }

    pub fn identity(n: usize) -> Self {
        AffineMap {
            matrix: QMatrix::identity(n),
            translation: vec![Rational::zero(); n],
        }
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn translation(&self) -> &[Rational] {
        &self.translation
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        let mut v = self.matrix.mul_vec(x.coords())?;
        for (a, b) in v.iter_mut().zip(&self.translation) {
            *a += b;
        }
        Ok(Point::new(v))
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let inv = self.matrix.inverse()?;
        let t = inv.mul_vec(&self.translation)?.into_iter().map(|x| -x).collect();
        Ok(AffineMap {
            matrix: inv,
            translation: t,
        })
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap> {
        let matrix = self.matrix.mul(&other.matrix)?;
        let mut translation = self.matrix.mul_vec(&other.translation)?;
        for (a, b) in translation.iter_mut().zip(&self.translation) {
            *a += b;
        }
        Ok(AffineMap { matrix, translation })
    }

    /// Random invertible map with small integer-over-`max_den` entries.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, range: i64, max_den: i64) -> AffineMap {
        loop {
            let rows: Vec<QVector> = (0..n)
                .map(|_| (0..n).map(|_| crate::mode::random_rational(rng, -range, range, max_den)).collect())
                .collect();
            let t = (0..n).map(|_| crate::mode::random_rational(rng, -range, range, max_den)).collect();
            let m = QMatrix::from_rows(rows, n).expect("square");
            if let Ok(map) = AffineMap::new(m, t) {
                return map;
            }
        }
    }
}

impl fmt::Display for AffineMap {
    /// `3x + 1/2` in one dimension, `x -> [[..], ..] x + (..)` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 1 {
            let a = &self.matrix[(0, 0)];
            let b = &self.translation[0];
            let lin = if a.is_one() {
                "x".to_string()
            } else if (-a).is_one() {
                "-x".to_string()
            } else {
                format!("{a}x")
            };
            return if b.is_zero() {
                f.write_str(&lin)
            } else if b.is_negative() {
                write!(f, "{lin} - {}", -b)
            } else {
                write!(f, "{lin} + {b}")
            };
        }
        let rows: Vec<String> = self
            .matrix
            .to_rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        let t: Vec<String> = self.translation.iter().map(|x| x.to_string()).collect();
        write!(f, "x -> [{}] x + ({})", rows.join(", "), t.join(", "))
    }
}

/// The unique affine map with `src_i -> dst_i`; `src` must be an affine basis.
pub fn map_from_correspondence(src: &[Point], dst: &[Point]) -> Result<AffineMap> {
    let first = src.first().ok_or(Error::EmptyInput("source basis"))?;
    let n = first.dim();
    if src.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: src.len(),
        });
    }
    if dst.len() != src.len() {
        return Err(Error::DimensionMismatch {
            expected: src.len(),
            found: dst.len(),
        });
    }
    if let Some(bad) = src.iter().chain(dst).find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    if !affine_independent(src) {
        return Err(Error::AffinelyDependent);
    }
    let s_cols: Vec<QVector> = src[1..].iter().map(|p| p.sub(&src[0]).into_coords()).collect();
    let d_cols: Vec<QVector> = dst[1..].iter().map(|p| p.sub(&dst[0]).into_coords()).collect();
    let s = QMatrix::from_columns(&s_cols, n)?;
    let d = QMatrix::from_columns(&d_cols, n)?;
    let a = d.mul(&s.inverse()?)?;
    let mut b = a.mul_vec(src[0].coords())?;
    for (x, y) in b.iter_mut().zip(dst[0].coords()) {
        *x = y - &*x;
    }
    AffineMap::new(a, b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EquivalenceReason {
    DimensionMismatch { left: usize, right: usize },
    VertexCountMismatch { left: usize, right: usize },
    ExhaustedCorrespondences { tried: usize },
}

impl fmt::Display for EquivalenceReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivalenceReason::DimensionMismatch { left, right } => {
                write!(f, "affine dimensions differ ({left} vs {right})")
            }
            EquivalenceReason::VertexCountMismatch { left, right } => {
                write!(f, "vertex counts differ ({left} vs {right})")
            }
            EquivalenceReason::ExhaustedCorrespondences { tried } => {
                write!(f, "no vertex correspondence extends to an affine bijection ({tried} tuples tried)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub witness: Option<AffineMap>,
    pub reason: Option<EquivalenceReason>,
    /// ordered tuples examined, and how many the signature filter discarded
    pub tuples_examined: usize,
    pub tuples_filtered: usize,
}

impl EquivalenceVerdict {
    fn rejected(reason: EquivalenceReason) -> Self {
        EquivalenceVerdict {
            equivalent: false,
            witness: None,
            reason: Some(reason),
            tuples_examined: 0,
            tuples_filtered: 0,
        }
    }
}

/// Barycentric coordinates of each point with respect to an affine basis of
/// its hull (`frame`), or `None` if some point leaves the affine hull.
fn barycentric_coordinates(frame: &[Point], points: &[Point]) -> Result<Option<Vec<QVector>>> {
    let n = frame[0].dim();
    let mut rows: Vec<QVector> = (0..n)
        .map(|r| frame.iter().map(|p| p.coords()[r].clone()).collect())
        .collect();
    rows.push(vec![Rational::one(); frame.len()]);
    let m = QMatrix::from_rows(rows, frame.len())?;
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        let mut rhs = p.coords().to_vec();
        rhs.push(Rational::one());
        match solve_affine(&m, &rhs)? {
            Some(sol) => out.push(sol.particular),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Per frame point, how many vertices have positive, zero and negative
/// barycentric coordinate for it. Invariant under affine bijections.
fn signature(coords: &[QVector]) -> Vec<(usize, usize, usize)> {
    let k = coords.first().map_or(0, Vec::len);
    (0..k)
        .map(|i| {
            let mut s = (0, 0, 0);
            for c in coords {
                match c[i].signum() {
                    1 => s.0 += 1,
                    0 => s.1 += 1,
                    _ => s.2 += 1,
                }
            }
            s
        })
        .collect()
}

/// Ordered `k`-tuples of distinct indices below `m`, lexicographically.
fn next_tuple(t: &mut [usize], m: usize) -> bool {
    let k = t.len();
    loop {
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < m {
                break;
            }
            t[i] = 0;
        }
        let distinct: BTreeSet<usize> = t.iter().copied().collect();
        if distinct.len() == k {
            return true;
        }
    }
}

/// Decides whether an invertible affine map of the ambient space carries
/// `c` onto `c2`, returning the first witness in lexicographic tuple order.
pub fn affine_equivalence(c: &VPolytope, c2: &VPolytope) -> Result<EquivalenceVerdict> {
    let n = c.ambient_dim();
    if c2.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: c2.ambient_dim(),
        });
    }
    if c.dimension() != c2.dimension() {
        return Ok(EquivalenceVerdict::rejected(EquivalenceReason::DimensionMismatch {
            left: c.dimension(),
            right: c2.dimension(),
        }));
    }
    let (v, v2) = (c.vertices(), c2.vertices());
    if v.len() != v2.len() {
        return Ok(EquivalenceVerdict::rejected(EquivalenceReason::VertexCountMismatch {
            left: v.len(),
            right: v2.len(),
        }));
    }
    let anchor_idx = max_independent_subset(v);
    let anchor: Vec<Point> = anchor_idx.iter().map(|&i| v[i].clone()).collect();
    let src = extend_to_basis(&anchor, n)?;
    let own = barycentric_coordinates(&anchor, v)?.expect("vertices lie in their own hull");
    let own_sig = signature(&own);
    let targets: BTreeSet<&Point> = v2.iter().collect();

    let k = anchor.len();
    let mut tuple: Vec<usize> = (0..k).collect();
    let (mut examined, mut filtered) = (0, 0);
    loop {
        let image: Vec<Point> = tuple.iter().map(|&i| v2[i].clone()).collect();
        if affine_independent(&image) {
            examined += 1;
            let coords = barycentric_coordinates(&image, v2)?;
            if coords.as_deref().map(signature) != Some(own_sig.clone()) {
                filtered += 1;
            } else {
                let dst = extend_to_basis(&image, n)?;
                let psi = map_from_correspondence(&src, &dst)?;
                let mut hit = BTreeSet::new();
                let mut ok = true;
                for x in v {
                    let y = psi.apply(x)?;
                    if !targets.contains(&y) || !hit.insert(y) {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Ok(EquivalenceVerdict {
                        equivalent: true,
                        witness: Some(psi),
                        reason: None,
                        tuples_examined: examined,
                        tuples_filtered: filtered,
                    });
                }
            }
        }
        if !next_tuple(&mut tuple, v2.len()) {
            break;
        }
    }
    Ok(EquivalenceVerdict {
        equivalent: false,
        witness: None,
        reason: Some(EquivalenceReason::ExhaustedCorrespondences { tried: examined }),
        tuples_examined: examined,
        tuples_filtered: filtered,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomomorphismFailure {
    pub x: Point,
    pub y: Point,
    pub p: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomomorphismCheck {
    pub samples: usize,
    pub failures: Vec<HomomorphismFailure>,
}

/// Checks `psi(x y p) = psi(x) psi(y) p` on random `x, y` in `Cnv_Q(points)`
/// and `p` in the open unit interval of the ring.
pub fn homomorphism_check<R: Rng + ?Sized>(
    psi: &AffineMap,
    points: &[Point],
    ring: &RingSpec,
    samples: usize,
    rng: &mut R,
) -> Result<HomomorphismCheck> {
    let mut failures = Vec::new();
    for _ in 0..samples {
        let x = random_convex_point(rng, points)?;
        let y = random_convex_point(rng, points)?;
        let p = loop {
            let p = random_ring_parameter(rng, ring, 4);
            if interval_member(&p, ring, true) {
                break p;
            }
        };
        let lhs = psi.apply(&x.bary(&y, &p)?)?;
        let rhs = psi.apply(&x)?.bary(&psi.apply(&y)?, &p)?;
        if lhs != rhs {
            failures.push(HomomorphismFailure { x, y, p });
        }
    }
    Ok(HomomorphismCheck { samples, failures })
}

/// Random convex combination with weights of denominator at most 12.
pub fn random_convex_point<R: Rng + ?Sized>(rng: &mut R, points: &[Point]) -> Result<Point> {
    if points.is_empty() {
        return Err(Error::EmptyInput("points"));
    }
    let raw: Vec<i64> = points.iter().map(|_| rng.gen_range(0..=12)).collect();
    let total: i64 = raw.iter().sum();
    let weights: Vec<Rational> = if total == 0 {
        let mut w = vec![Rational::zero(); points.len()];
        w[0] = Rational::one();
        w
    } else {
        raw.iter().map(|&r| Rational::frac(r, total)).collect()
    };
    Point::combination(points, &weights)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    pub witness: Option<AffineMap>,
    pub rationale: String,
    pub equivalence: EquivalenceVerdict,
    pub homomorphism: Option<HomomorphismCheck>,
}

/// Isomorphism of `(C, I°(T))` and `(C', I°(T))` through affine
/// equivalence, with a homomorphism spot-check of the witness.
pub fn iso_decide(
    c: &VPolytope,
    c2: &VPolytope,
    ring: &RingSpec,
    samples: usize,
    seed: u64,
) -> Result<IsoVerdict> {
    let equivalence = affine_equivalence(c, c2)?;
    let Some(psi) = equivalence.witness.clone() else {
        let reason = equivalence
            .reason
            .as_ref()
            .map_or_else(String::new, ToString::to_string);
        return Ok(IsoVerdict {
            isomorphic: false,
            witness: None,
            rationale: format!("not isomorphic: {reason}; an isomorphism would be an affine bijection"),
            equivalence,
            homomorphism: None,
        });
    };
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let check = homomorphism_check(&psi, c.vertices(), ring, samples, &mut rng)?;
    let rationale = format!(
        "isomorphic over {ring}: psi = {psi} maps the vertices of C onto those of C' and restricts to an isomorphism of the barycentric algebras and of the midpoint groupoids"
    );
    Ok(IsoVerdict {
        isomorphic: true,
        witness: Some(psi),
        rationale,
        equivalence,
        homomorphism: Some(check),
    })
}

pub fn hexagon() -> Vec<Point> {
    [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
        .iter()
        .map(|&(a, b)| Point::from_ints(&[a, b]))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexagonReport {
    pub vertices: Vec<Point>,
    pub midpoint_03: Point,
    pub midpoint_14: Point,
    pub midpoints_agree: bool,
    pub each_vertex_outside_others: bool,
    pub holds: bool,
}

/// `a0 a3 1/2 = a1 a4 1/2` while no vertex lies in the hull of the others.
pub fn hexagon_report(vertices: &[Point]) -> Result<HexagonReport> {
    if vertices.len() != 6 {
        return Err(Error::InvalidParameter(format!(
            "a hexagon has 6 vertices, got {}",
            vertices.len()
        )));
    }
    let half = Rational::frac(1, 2);
    let m03 = vertices[0].bary(&vertices[3], &half)?;
    let m14 = vertices[1].bary(&vertices[4], &half)?;
    let mut outside = true;
    for i in 0..6 {
        let others: Vec<Point> = (0..6).filter(|&j| j != i).map(|j| vertices[j].clone()).collect();
        if hull_member_q(&vertices[i], &others)?.is_some() {
            outside = false;
        }
    }
    let agree = m03 == m14;
    Ok(HexagonReport {
        vertices: vertices.to_vec(),
        midpoint_03: m03,
        midpoint_14: m14,
        midpoints_agree: agree,
        each_vertex_outside_others: outside,
        holds: agree && outside,
    })
}

pub fn hexagon_relation_check() -> bool {
    hexagon_report(&hexagon()).map(|r| r.holds).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(s: &[&str]) -> Vec<Point> {
        s.iter().map(|p| Point::parse(p).unwrap()).collect()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn square() -> VPolytope {
        VPolytope::new(pts(&["0,0", "1,0", "1,1", "0,1"])).unwrap()
    }

    #[test]
    fn independence_examples() {
        assert!(affine_independent(&pts(&["0,0", "1,0", "0,1"])));
        assert!(!affine_independent(&pts(&["0", "1", "2"])));
        assert!(!affine_independent(&hexagon()));
        for set in [pts(&["0,0", "1,0", "0,1"]), pts(&["0", "1", "2"]), hexagon(), pts(&["1,1"])] {
            assert_eq!(affine_independent(&set), affine_independent_by_span(&set).unwrap());
        }
    }

    #[test]
    fn maximal_subsets() {
        assert_eq!(max_independent_subset(square().vertices()).len(), 3);
        assert_eq!(max_independent_subset(&pts(&["0", "1", "2", "3"])), vec![0, 1]);
        assert_eq!(max_independent_subset(&pts(&["2,2"])), vec![0]);
    }

    #[test]
    fn basis_extension() {
        assert_eq!(extend_to_basis(&pts(&["0,0"]), 2).unwrap(), pts(&["0,0", "1,0", "0,1"]));
        let full = pts(&["0,0", "1,0", "0,1"]);
        assert_eq!(extend_to_basis(&full, 2).unwrap(), full);
        assert_eq!(extend_to_basis(&pts(&["0", "1"]), 1).unwrap(), pts(&["0", "1"]));
        assert!(matches!(
            extend_to_basis(&pts(&["0", "1", "2"]), 1),
            Err(Error::AffinelyDependent)
        ));
        let ext = extend_to_basis(&pts(&["1,1", "2,2"]), 2).unwrap();
        assert_eq!(ext.len(), 3);
        assert!(affine_independent(&ext));
    }

    #[test]
    fn correspondence_maps() {
        let basis = pts(&["0,0", "1,0", "0,1"]);
        assert_eq!(map_from_correspondence(&basis, &basis).unwrap(), AffineMap::identity(2));
        let psi = map_from_correspondence(&basis, &pts(&["0,0", "2,0", "1,1"])).unwrap();
        assert_eq!(psi.matrix().to_rows(), vec![vec![q("2"), q("1")], vec![q("0"), q("1")]]);
        assert_eq!(psi.translation(), &[q("0"), q("0")]);
        assert!(matches!(
            map_from_correspondence(&basis, &pts(&["0,0", "1,1", "2,2"])),
            Err(Error::NonInvertible)
        ));
        assert!(matches!(
            map_from_correspondence(&pts(&["0,0", "1,1", "2,2"]), &basis),
            Err(Error::AffinelyDependent)
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let psi = map_from_correspondence(&pts(&["0,0", "1,0", "0,1"]), &pts(&["1,2", "3,2", "1/2,5"])).unwrap();
        let inv = psi.inverse().unwrap();
        let x = Point::parse("7/3,-1").unwrap();
        assert_eq!(inv.apply(&psi.apply(&x).unwrap()).unwrap(), x);
        assert_eq!(psi.compose(&inv).unwrap(), AffineMap::identity(2));
    }

    #[test]
    fn square_and_parallelogram() {
        let para = VPolytope::new(pts(&["0,0", "2,0", "3,1", "1,1"])).unwrap();
        let v = affine_equivalence(&square(), &para).unwrap();
        assert!(v.equivalent);
        let psi = v.witness.unwrap();
        let image: BTreeSet<Point> = square().vertices().iter().map(|x| psi.apply(x).unwrap()).collect();
        let target: BTreeSet<Point> = para.vertices().iter().cloned().collect();
        assert_eq!(image, target);
    }

    #[test]
    fn square_and_triangle() {
        let tri = VPolytope::new(pts(&["0,0", "1,0", "0,1"])).unwrap();
        let v = affine_equivalence(&square(), &tri).unwrap();
        assert!(!v.equivalent && v.witness.is_none());
        assert_eq!(v.reason, Some(EquivalenceReason::VertexCountMismatch { left: 4, right: 3 }));
        let iso = iso_decide(&square(), &tri, &RingSpec::dyadic(), 10, 0).unwrap();
        assert!(!iso.isomorphic);
    }

    #[test]
    fn non_equivalent_quadrilateral() {
        // a trapezoid is not an affine image of a square
        let trap = VPolytope::new(pts(&["0,0", "3,0", "2,1", "1,1"])).unwrap();
        let v = affine_equivalence(&square(), &trap).unwrap();
        assert!(!v.equivalent);
        assert!(matches!(v.reason, Some(EquivalenceReason::ExhaustedCorrespondences { .. })));
    }

    #[test]
    fn segments_are_isomorphic() {
        let c = VPolytope::new(pts(&["0", "1"])).unwrap();
        let c2 = VPolytope::new(pts(&["0", "3"])).unwrap();
        let iso = iso_decide(&c, &c2, &RingSpec::dyadic(), 50, 1).unwrap();
        assert!(iso.isomorphic);
        assert_eq!(iso.witness.unwrap().to_string(), "3x");
        assert!(iso.homomorphism.unwrap().failures.is_empty());
    }

    #[test]
    fn triangles_are_isomorphic() {
        let c = VPolytope::new(pts(&["0,0", "1,0", "0,1"])).unwrap();
        let c2 = VPolytope::new(pts(&["0,0", "2,0", "1,3"])).unwrap();
        let iso = iso_decide(&c, &c2, &RingSpec::dyadic(), 50, 2).unwrap();
        assert!(iso.isomorphic);
        let psi = iso.witness.unwrap();
        for (x, y) in c.vertices().iter().zip(c2.vertices()) {
            assert_eq!(&psi.apply(x).unwrap(), y);
        }
    }

    #[test]
    fn lower_dimensional_polytopes() {
        let c = VPolytope::new(pts(&["0,0", "1,1"])).unwrap();
        let c2 = VPolytope::new(pts(&["2,0", "2,5"])).unwrap();
        assert!(affine_equivalence(&c, &c2).unwrap().equivalent);
        let flat = VPolytope::new(pts(&["0,0", "1,0", "2,0"])).unwrap();
        let v = affine_equivalence(&square(), &flat).unwrap();
        assert_eq!(v.reason, Some(EquivalenceReason::DimensionMismatch { left: 2, right: 1 }));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let c = VPolytope::new(pts(&["0", "1"])).unwrap();
        assert!(affine_equivalence(&c, &square()).is_err());
    }

    #[test]
    fn hexagon_relation() {
        assert!(hexagon_relation_check());
        let r = hexagon_report(&hexagon()).unwrap();
        assert_eq!(r.midpoint_03, Point::from_ints(&[0, 0]));
        let mut bent = hexagon();
        bent[4] = Point::parse("-1,-2").unwrap();
        let r = hexagon_report(&bent).unwrap();
        assert!(!r.midpoints_agree && !r.holds);
        assert!(hexagon_report(&pts(&["0,0", "1,0", "0,1"])).is_err());
    }
}
