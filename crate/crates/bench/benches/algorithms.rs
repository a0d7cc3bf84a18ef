use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use midpoint::affine::{affine_equivalence, AffineMap};
use midpoint::formula::synth_phi;
use midpoint::hull::{caratheodory, hull_member_t, segment_closure_bounded, VPolytope};
use midpoint::linalg::smith_normal_form;
use midpoint::mode::random_point;
use midpoint::{Point, Rational, RingSpec};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn pts(s: &[&str]) -> Vec<Point> {
    s.iter().map(|p| Point::parse(p).unwrap()).collect()
}

fn formulas(c: &mut Criterion) {
    let mut group = c.benchmark_group("synth_phi");
    let cases = [
        ("figure3", vec![Rational::frac(-1, 2), Rational::frac(3, 2)], RingSpec::new([3]).unwrap()),
        ("dyadic_pair", vec![Rational::int(-1), Rational::int(2)], RingSpec::dyadic()),
        (
            "five_terms",
            ["-7/16", "5/16", "3/4", "-1/8", "1/2"].iter().map(|s| s.parse().unwrap()).collect(),
            RingSpec::new([2, 5]).unwrap(),
        ),
    ];
    for (name, xi, ring) in &cases {
        group.bench_with_input(BenchmarkId::from_parameter(name), xi, |b, xi| {
            b.iter(|| synth_phi(black_box(xi), ring).unwrap())
        });
    }
    group.finish();
}

fn hulls(c: &mut Criterion) {
    let square = pts(&["0,0", "1,0", "1,1", "0,1"]);
    let inside = Point::parse("3/8,5/16").unwrap();
    let third = Point::parse("1/3,1/3").unwrap();
    c.bench_function("hull_member_t/square_dyadic", |b| {
        b.iter(|| hull_member_t(black_box(&inside), &square, &RingSpec::dyadic()).unwrap())
    });
    c.bench_function("hull_member_t/square_obstruction", |b| {
        b.iter(|| hull_member_t(black_box(&third), &square, &RingSpec::dyadic()).unwrap())
    });
    let mut rng = StdRng::seed_from_u64(1);
    let cloud: Vec<Point> = (0..8).map(|_| random_point(&mut rng, 3, 5, 4)).collect();
    let centroid = Point::combination(&cloud, &vec![Rational::frac(1, 8); 8]).unwrap();
    c.bench_function("caratheodory/8_points_3d", |b| {
        b.iter(|| caratheodory(black_box(&centroid), &cloud).unwrap())
    });
    let seg = pts(&["0", "3"]);
    c.bench_function("closure/0_3_depth2_rounds1", |b| {
        b.iter(|| segment_closure_bounded(black_box(&seg), &RingSpec::dyadic(), 2, 1).unwrap())
    });
}

fn linear_algebra(c: &mut Criterion) {
    let m: Vec<Vec<BigInt>> = [[2, 4, 4, 1], [-6, 6, 12, 3], [10, -4, -16, 7]]
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    c.bench_function("smith_normal_form/3x4", |b| b.iter(|| smith_normal_form(black_box(&m), 4).unwrap()));
}

fn equivalence(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(2);
    let hexagon = midpoint::affine::hexagon();
    let psi = AffineMap::random(&mut rng, 2, 3, 3);
    let c1 = VPolytope::new(hexagon.clone()).unwrap();
    let c2 = VPolytope::new(hexagon.iter().map(|p| psi.apply(p).unwrap()).collect()).unwrap();
    c.bench_function("affine_equivalence/hexagon", |b| {
        b.iter(|| affine_equivalence(black_box(&c1), &c2).unwrap())
    });
}

criterion_group!(benches, formulas, hulls, linear_algebra, equivalence);
criterion_main!(benches);
