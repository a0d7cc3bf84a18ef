use std::collections::BTreeSet;

use midpoint::affine::{
    affine_equivalence, affine_independent, affine_independent_by_span, map_from_correspondence,
    max_independent_subset, AffineMap,
};
use midpoint::formula::{check_satisfaction, synth_phi, verify_phi};
use midpoint::hull::{caratheodory, hull_member_q, hull_member_t, random_t_hull_point, VPolytope};
use midpoint::linalg::{int_determinant, int_mul, smith_normal_form, solve_affine, IntMatrix};
use midpoint::lp::{fourier_motzkin, lp_feasible, simplex_feasible, Feasibility, LinearConstraint};
use midpoint::mode::{eval_term, term_coefficients, LawInstance, LawReport};
use midpoint::{Point, QMatrix, Rational, RingSpec, Term};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::frac(n, d))
}

fn point(dim: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(rational(), dim).prop_map(Point::new)
}

fn unit_param() -> impl Strategy<Value = Rational> {
    (1i64..=15).prop_map(|n| Rational::frac(n, 16))
}

fn ring() -> impl Strategy<Value = RingSpec> {
    prop::sample::select(vec![vec![2u64], vec![3], vec![2, 5], vec![5]])
        .prop_map(|p| RingSpec::new(p).unwrap())
}

fn coefficient_vector() -> impl Strategy<Value = Vec<Rational>> {
    (1i64..=16, prop::collection::vec(-20i64..=20, 0..=4)).prop_map(|(d, mut num)| {
        let s: i64 = num.iter().sum();
        num.push(d - s);
        num.into_iter().map(|n| Rational::frac(n, d)).collect()
    })
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(prop::collection::vec(rational(), cols), rows)
        .prop_map(move |r| QMatrix::from_rows(r, cols).unwrap())
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec((-9i64..=9).prop_map(BigInt::from), cols), rows)
}

fn constraint(nvars: usize) -> impl Strategy<Value = LinearConstraint> {
    (prop::collection::vec(-4i64..=4, nvars), -6i64..=6, 0..3u8).prop_map(move |(c, b, rel)| {
        let coeffs = c.into_iter().map(Rational::int).collect();
        let rhs = Rational::int(b);
        match rel {
            0 => LinearConstraint::le(coeffs, rhs),
            1 => LinearConstraint::ge(coeffs, rhs),
            _ => LinearConstraint::eq(coeffs, rhs),
        }
    })
}

fn check_feasibility(f: &Feasibility, cs: &[LinearConstraint], nvars: usize) {
    match f {
        Feasibility::Feasible { witness } => assert!(cs.iter().all(|c| c.satisfied_by(witness))),
        Feasibility::Infeasible { certificate } => assert!(certificate.verify(cs, nvars)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_display_round_trips(q in rational()) {
        prop_assert_eq!(q.to_string().parse::<Rational>().unwrap(), q);
    }

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a);
        }
    }

    #[test]
    fn open_interval_inside_closed(q in rational(), t in ring()) {
        if midpoint::scalar::interval_member(&q, &t, true) {
            prop_assert!(midpoint::scalar::interval_member(&q, &t, false));
        }
    }

    #[test]
    fn inverse_is_two_sided(m in matrix(3, 3)) {
        if let Ok(inv) = m.inverse() {
            prop_assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(3));
            prop_assert_eq!(inv.mul(&m).unwrap(), QMatrix::identity(3));
        } else {
            prop_assert!(m.determinant().unwrap().is_zero());
        }
    }

    #[test]
    fn solve_affine_is_exact(m in matrix(3, 4), b in prop::collection::vec(rational(), 3)) {
        match solve_affine(&m, &b).unwrap() {
            Some(sol) => {
                prop_assert_eq!(m.mul_vec(&sol.particular).unwrap(), b);
                prop_assert_eq!(sol.kernel.len(), 4 - m.rank());
                for k in &sol.kernel {
                    prop_assert!(m.mul_vec(k).unwrap().iter().all(Rational::is_zero));
                }
            }
            None => prop_assert!(m.rank() < 3),
        }
    }

    #[test]
    fn smith_normal_form_contract(m in int_matrix(3, 4)) {
        let snf = smith_normal_form(&m, 4).unwrap();
        let um = int_mul(&snf.u, &m, 3, 4);
        prop_assert_eq!(int_mul(&um, &snf.v, 4, 4), snf.d.clone());
        prop_assert!(int_determinant(&snf.u).abs().is_one());
        prop_assert!(int_determinant(&snf.v).abs().is_one());
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        for i in 0..3 {
            for j in 0..4 {
                if i != j {
                    prop_assert!(snf.d[i][j].is_zero());
                }
            }
        }
    }

    #[test]
    fn lp_answers_carry_proofs(cs in prop::collection::vec(constraint(3), 1..7)) {
        let f = lp_feasible(&cs, 3).unwrap();
        check_feasibility(&f, &cs, 3);
        let s = simplex_feasible(&cs, 3).unwrap();
        check_feasibility(&s, &cs, 3);
        prop_assert_eq!(f.is_feasible(), s.is_feasible());
        if let Some(fm) = fourier_motzkin(&cs, 3).unwrap() {
            check_feasibility(&fm, &cs, 3);
            prop_assert_eq!(fm.is_feasible(), s.is_feasible());
        }
    }

    #[test]
    fn mode_laws_hold(x in point(2), y in point(2), z in point(2), t in point(2), p in unit_param(), q in unit_param()) {
        let mut report = LawReport::default();
        report.check_instance(&LawInstance { x, y, z, t, p, q }).unwrap();
        prop_assert!(report.is_clean());
    }

    #[test]
    fn term_evaluation_matches_coefficients(seed in any::<u64>(), pts in prop::collection::vec(point(2), 3)) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let params = [Rational::frac(1, 2), Rational::frac(1, 4), Rational::frac(3, 4)];
        let t = Term::random(&mut rng, 3, 4, &params);
        let coeffs = term_coefficients(&t, 2).unwrap();
        prop_assert!(coeffs.iter().sum::<Rational>().is_one());
        prop_assert_eq!(eval_term(&t, &pts).unwrap(), Point::combination(&pts, &coeffs).unwrap());
    }

    #[test]
    fn t_hull_points_are_members(seed in any::<u64>(), gens in prop::collection::vec(point(2), 1..5), t in ring()) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let (_, d) = random_t_hull_point(&mut rng, &gens, &t, 3).unwrap();
        let comb = hull_member_t(&d, &gens, &t).unwrap().expect("term value lies in the T-hull");
        prop_assert!(comb.is_t_combination(&t));
        prop_assert_eq!(comb.recombine(&gens).unwrap(), d);
    }

    #[test]
    fn t_membership_implies_q_membership(d in point(2), gens in prop::collection::vec(point(2), 1..5)) {
        if hull_member_t(&d, &gens, &RingSpec::dyadic()).unwrap().is_some() {
            prop_assert!(hull_member_q(&d, &gens).unwrap().is_some());
        }
    }

    #[test]
    fn caratheodory_contract(seed in any::<u64>(), gens in prop::collection::vec(point(3), 1..7)) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let (_, d) = random_t_hull_point(&mut rng, &gens, &RingSpec::dyadic(), 3).unwrap();
        let c = caratheodory(&d, &gens).unwrap();
        let support: Vec<Point> = c.indices.iter().map(|&i| gens[i].clone()).collect();
        prop_assert!(affine_independent(&support));
        prop_assert!(support.len() <= 4);
        prop_assert!(c.coefficients.iter().all(Rational::is_positive));
        prop_assert!(c.coefficients.iter().sum::<Rational>().is_one());
        prop_assert_eq!(Point::combination(&support, &c.coefficients).unwrap(), d);
    }

    #[test]
    fn synthesized_formulas_verify(xi in coefficient_vector(), t in ring()) {
        let phi = synth_phi(&xi, &t).unwrap();
        prop_assert!(verify_phi(&phi, &xi).unwrap());
        prop_assert!(phi.parameters_in_ring());
    }

    #[test]
    fn formulas_pin_down_the_combination(xi in coefficient_vector(), pts in prop::collection::vec(point(2), 5), shift in rational()) {
        let a = &pts[..xi.len()];
        let phi = synth_phi(&xi, &RingSpec::dyadic()).unwrap();
        let b = Point::combination(a, &xi).unwrap();
        prop_assert!(check_satisfaction(&phi, a, &b).unwrap().is_some());
        if !shift.is_zero() {
            let off = b.add(&Point::new(vec![shift, Rational::zero()]));
            prop_assert!(check_satisfaction(&phi, a, &off).unwrap().is_none());
        }
    }

    #[test]
    fn independence_definitions_agree(pts in prop::collection::vec(point(2), 1..5)) {
        prop_assert_eq!(affine_independent(&pts), affine_independent_by_span(&pts).unwrap());
    }

    #[test]
    fn maximal_subset_size_is_order_free(pts in prop::collection::vec(point(3), 1..7), perm in any::<u64>()) {
        use rand::seq::SliceRandom;
        let size = max_independent_subset(&pts).len();
        let mut rng = rand::rngs::StdRng::seed_from_u64(perm);
        for _ in 0..10 {
            let mut shuffled = pts.clone();
            shuffled.shuffle(&mut rng);
            prop_assert_eq!(max_independent_subset(&shuffled).len(), size);
        }
    }

    #[test]
    fn correspondence_maps_hit_targets(src in prop::collection::vec(point(2), 3), dst in prop::collection::vec(point(2), 3)) {
        prop_assume!(affine_independent(&src) && affine_independent(&dst));
        let psi = map_from_correspondence(&src, &dst).unwrap();
        for (s, d) in src.iter().zip(&dst) {
            prop_assert_eq!(&psi.apply(s).unwrap(), d);
        }
        let inv = psi.inverse().unwrap();
        for (s, d) in src.iter().zip(&dst) {
            prop_assert_eq!(&inv.apply(d).unwrap(), s);
        }
    }

    #[test]
    fn equivalence_round_trip(seed in any::<u64>(), gens in prop::collection::vec(point(2), 1..6)) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let psi = AffineMap::random(&mut rng, 2, 3, 4);
        let c = VPolytope::new(gens.clone()).unwrap();
        let image: Vec<Point> = gens.iter().map(|g| psi.apply(g).unwrap()).collect();
        let c2 = VPolytope::new(image).unwrap();
        let v = affine_equivalence(&c, &c2).unwrap();
        prop_assert!(v.equivalent);
        let w = v.witness.unwrap();
        let mapped: BTreeSet<Point> = c.vertices().iter().map(|x| w.apply(x).unwrap()).collect();
        let target: BTreeSet<Point> = c2.vertices().iter().cloned().collect();
        prop_assert_eq!(mapped, target);
    }
}
