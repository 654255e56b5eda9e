mod common;

use common::c;
use num_complex::Complex64;
use proptest::prelude::*;
use semigalois::cli::ProblemSpec;
use semigalois::domain::{build_domain, generator_loop, validate_spider, Disc, Domain};
use semigalois::numerics::GaussianRational;
use semigalois::perm::{generate, subgroups, Permutation};
use semigalois::realize::realize_cyclic;
use semigalois::tracking::{monodromy, TrackerOptions};
use semigalois::vandermonde::{sign_report, delta, normalize_roots, sigma_enum};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perm_pair(max: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max).prop_flat_map(|n| (perm(n), perm(n)))
}

fn perm_triple(max: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1..=max).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-1000i64..1000, 1i64..500, -1000i64..1000, 1i64..500).prop_map(|(a, b, c, d)| GaussianRational::from_fractions(a, b, c, d))
}

fn point() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| c(re, im))
}

fn separated(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(point(), n).prop_filter("roots too close", |r| {
        (0..r.len()).all(|i| (i + 1..r.len()).all(|j| (r[i] - r[j]).norm() > 0.05))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn composition_is_associative((a, b, d) in perm_triple(8)) {
        prop_assert_eq!(a.compose(&b).compose(&d), a.compose(&b.compose(&d)));
    }

    #[test]
    fn inverse_cancels(p in (1usize..=8).prop_flat_map(perm)) {
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert!(p.inverse().compose(&p).is_identity());
        prop_assert!(p.pow(p.order() as i64).is_identity());
    }

    #[test]
    fn sign_is_multiplicative((a, b) in perm_pair(8)) {
        prop_assert_eq!(a.compose(&b).sign(), a.sign() * b.sign());
    }

    #[test]
    fn cycle_notation_round_trips(p in (1usize..=9).prop_flat_map(perm)) {
        let text = p.to_cycle_string();
        prop_assert_eq!(Permutation::parse_cycles(p.degree(), &text).unwrap(), p.clone());
        prop_assert_eq!(Permutation::parse_one_line(&p.to_one_line()).unwrap(), p);
    }

    #[test]
    fn group_order_and_orbits((a, b) in perm_pair(6)) {
        let n = a.degree();
        let g = generate(n, &[a.clone(), b.clone()], 1000).unwrap();
        let orbits = g.orbits();
        let mut seen: Vec<usize> = orbits.iter().flatten().copied().collect();
        seen.sort();
        prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
        for o in &orbits {
            // orbit-stabilizer: orbit lengths divide |G|
            prop_assert_eq!(g.order() % o.len(), 0);
        }
        prop_assert_eq!(g.order() % a.order(), 0);
        prop_assert!(g.contains(&a.compose(&b)));
    }

    #[test]
    fn gaussian_rationals_round_trip(q in gaussian()) {
        let back: GaussianRational = q.to_string().parse().unwrap();
        prop_assert_eq!(back, q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn subgroup_indices_multiply((a, b) in perm_pair(5)) {
        let g = generate(a.degree(), &[a, b], 1000).unwrap();
        let lattice = subgroups(&g, 200).unwrap();
        prop_assert!(lattice.verify_index_chains().is_ok());
        prop_assert_eq!(lattice.index_in_group(lattice.full()), 1);
        prop_assert_eq!(lattice.index_in_group(lattice.trivial()), g.order());
    }

    #[test]
    fn delta_square_is_symmetric(alpha in (2usize..=4).prop_flat_map(separated)) {
        let a = normalize_roots(&alpha);
        let d = delta(&a).unwrap();
        prop_assert!(d.norm() > 0.0);
        for s in sigma_enum(a.len()) {
            let r = sign_report(&a, &s, 1e-8).unwrap();
            prop_assert!(r.square_ok, "{}", r.sigma);
        }
    }

    #[test]
    fn lassos_keep_clear(center in point(), r in 0.2f64..1.0, inner in 0.05f64..0.15, angle in 0.0f64..6.28) {
        let holes = vec![
            Disc::new(center + Complex64::from_polar(0.5 * r, angle), inner * r).unwrap(),
            Disc::new(center - Complex64::from_polar(0.5 * r, angle), inner * r).unwrap(),
        ];
        let Ok(d) = build_domain(Disc::new(center, 2.0 * r).unwrap(), holes, None) else { return Ok(()) };
        prop_assume!(validate_spider(&d).iter().all(|l| l.clear));
        for j in 1..=d.num_holes() {
            let path = generator_loop(&d, j).unwrap();
            prop_assert!(path.is_closed());
            for p in path.sample(400) {
                prop_assert!(d.clearance(p) >= d.margin * (1.0 - 1e-9), "clearance {} < margin {}", d.clearance(p), d.margin);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn root_polynomials_give_full_cycles(n in 2usize..=6, inner in 0.1f64..0.8, width in 0.5f64..3.0) {
        let mut f = common::root_spec(n);
        f = f.with_domain(Domain::annulus(inner, inner + width).unwrap());
        let opts = TrackerOptions::default();
        let m = monodromy(&f, &opts).unwrap();
        prop_assert_eq!(m.gens.len(), 1);
        prop_assert_eq!(m.gens[0].cycle_type(), vec![n]);
        prop_assert!(m.report.base_residual < 1e-10);
    }

    #[test]
    fn cyclic_realizations_are_transitive(n in 1usize..=6, center in point(), radius in 0.1f64..1.0) {
        let r = realize_cyclic(n, Disc::new(center, radius).unwrap(), &TrackerOptions::default()).unwrap();
        prop_assert_eq!(r.certificate.order, n);
        prop_assert_eq!(r.certificate.orbit_sizes.clone(), vec![n]);
        r.reverify(&TrackerOptions::default()).unwrap();
    }

    #[test]
    fn problem_files_round_trip(n in 1usize..=4, consts in prop::collection::vec(gaussian(), 4)) {
        let mut f = common::root_spec(n);
        for (k, q) in consts.into_iter().take(n).enumerate() {
            let mut v = vec![q];
            if k == 0 {
                v.push(GaussianRational::from_integers(-1, 0));
            }
            f.coeffs[k] = semigalois::numerics::PolyX::exact(v);
        }
        let text = serde_json::to_string(&ProblemSpec::from_spec(&f)).unwrap();
        let back = ProblemSpec::parse(&text).unwrap().to_spec().unwrap();
        prop_assert_eq!(back, f);
    }
}
