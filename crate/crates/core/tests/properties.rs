//! Property tests across modules.

use gowerslab::calculus::{degree_by_derivatives, DegreeMode};
use gowerslab::config::Caps;
use gowerslab::constraints::{cs_complexity, dependency_set, AffineConstraint};
use gowerslab::degstruct::{is_structured, witness_is_valid, StructureSpec};
use gowerslab::factor::{joint_distribution, quadratic_form, uniformity_certify, PolynomialFactor, UniformityMetric};
use gowerslab::field::{eval_form, form_le, AffineMap, Domain, Fp, LinearForm, Point};
use gowerslab::gowers::{gowers_norm, EvalMode, TableFn};
use gowerslab::io;
use gowerslab::par::rng;
use gowerslab::poly::{random_poly, random_poly_with, NCPoly};
use gowerslab::tester::{
    affinity_family, big_picture, is_free, partially_induces, rejection_probability, RFunction, RejectionMode,
};
use proptest::prelude::*;
use rand::Rng;
use std::path::Path;

fn caps() -> Caps {
    Caps::default()
}

fn field(p: u32) -> Fp {
    Fp::new(p).unwrap()
}

/// A random polynomial with `p ∈ {2, 3}`, `n ≤ 3`, degree `≤ 4`, depth `≤ 1`.
fn any_poly(seed: u64) -> NCPoly {
    let mut r = rng(seed, 0);
    loop {
        let p = [2u32, 3][r.gen_range(0..2)];
        let n = r.gen_range(1..=3);
        let k = r.gen_range(0..=1);
        let d = r.gen_range(1..=4);
        if let Ok(poly) = random_poly_with(p, n, d, k, &mut r) {
            return poly;
        }
    }
}

fn random_point(p: u32, n: usize, r: &mut impl Rng) -> Point {
    Point((0..n).map(|_| r.gen_range(0..p)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eval_form_is_additive_in_each_slot(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5]), ell in 1usize..4, n in 1usize..4) {
        let f = field(p);
        let mut r = rng(seed, 0);
        let form = LinearForm((0..ell).map(|_| r.gen_range(0..p)).collect());
        let xs: Vec<Point> = (0..ell).map(|_| random_point(p, n, &mut r)).collect();
        let j = r.gen_range(0..ell);
        let a = random_point(p, n, &mut r);
        let b = random_point(p, n, &mut r);
        let with = |v: &Point| {
            let mut ys = xs.clone();
            ys[j] = v.clone();
            eval_form(f, &form, &ys).unwrap()
        };
        let sum = Point(a.0.iter().zip(&b.0).map(|(&x, &y)| f.add(x, y)).collect());
        let lhs = with(&sum);
        let rhs: Vec<u32> = with(&a).0.iter().zip(&with(&b).0).zip(&with(&Point::zero(n)).0)
            .map(|((&x, &y), &z)| f.sub(f.add(x, y), z)).collect();
        prop_assert_eq!(lhs.0, rhs);
    }

    #[test]
    fn polynomial_values_lie_in_their_level(seed in any::<u64>()) {
        let poly = any_poly(seed);
        let dom = Domain::new(field(poly.p()), poly.n()).unwrap();
        for x in dom.points() {
            prop_assert!(poly.evaluate(&x).unwrap().in_level(poly.depth()));
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(s1 in any::<u64>(), s2 in any::<u64>(), lambda in -7i64..8) {
        let a = any_poly(s1);
        let mut r = rng(s2, 0);
        let b = random_poly_with(a.p(), a.n(), r.gen_range(1..=a.n().min(3) as u32), 0, &mut r).unwrap();
        let sum = a.add(&b).unwrap();
        let scaled = a.int_scale(lambda).unwrap();
        let dom = Domain::new(field(a.p()), a.n()).unwrap();
        for x in dom.points() {
            let va = a.evaluate(&x).unwrap();
            prop_assert_eq!(sum.evaluate(&x).unwrap(), va.add(&b.evaluate(&x).unwrap()));
            prop_assert_eq!(scaled.evaluate(&x).unwrap(), va.scale(lambda));
        }
    }

    #[test]
    fn derivatives_lower_degree(seed in any::<u64>()) {
        let poly = any_poly(seed);
        let d = degree_by_derivatives(&poly, 8, DegreeMode::Basis, &caps()).unwrap();
        prop_assert_eq!(d.degree, Some(poly.degree()));
        let dom = Domain::new(field(poly.p()), poly.n()).unwrap();
        for h in dom.points() {
            prop_assert!(poly.additive_derivative(&h).unwrap().degree() < poly.degree());
        }
    }

    #[test]
    fn u1_is_absolute_bias(seed in any::<u64>()) {
        let poly = any_poly(seed);
        let f = TableFn::phase_of(&poly, &caps()).unwrap();
        prop_assert!((gowers_norm(&f, 1, &caps()).unwrap() - f.bias().norm()).abs() < 1e-12);
    }

    #[test]
    fn unit_gowers_norm_characterizes_degree(seed in any::<u64>()) {
        let poly = any_poly(seed);
        let f = TableFn::phase_of(&poly, &caps()).unwrap();
        for d in 1..=poly.degree() + 1 {
            let norm = gowers_norm(&f, d, &caps()).unwrap();
            prop_assert_eq!((norm - 1.0).abs() < 1e-9, poly.degree() < d, "U{} = {}", d, norm);
        }
    }

    #[test]
    fn cs_complexity_is_invariant(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3])) {
        let f = field(p);
        let mut r = rng(seed, 0);
        let ell = r.gen_range(1..=3usize);
        let m = r.gen_range(2..=4usize);
        let forms: Vec<LinearForm> = (0..m)
            .map(|_| LinearForm((0..ell).map(|_| r.gen_range(0..p)).collect()))
            .filter(|l| !l.is_zero())
            .collect();
        prop_assume!(forms.len() >= 2);
        let base = cs_complexity(f, &forms).unwrap();
        let mut permuted = forms.clone();
        permuted.reverse();
        prop_assert_eq!(cs_complexity(f, &permuted).unwrap(), base);
        let mat = AffineMap::random(f, ell, &mut r).matrix;
        let changed: Vec<LinearForm> = forms
            .iter()
            .map(|l| LinearForm((0..ell).map(|j| (0..ell).fold(0, |acc, i| f.add(acc, f.mul(l.0[i], mat[i][j])))).collect()))
            .collect();
        prop_assert_eq!(cs_complexity(f, &changed).unwrap(), base);
    }

    #[test]
    fn membership_is_affine_invariant(seed in any::<u64>()) {
        let mut r = rng(seed, 0);
        let (p, n) = [(2u32, 3usize), (3, 2)][r.gen_range(0..2)];
        let f = random_poly_with(p, n, r.gen_range(1..=3), 0, &mut r).unwrap();
        let g = f.compose_affine(&AffineMap::random(field(p), n, &mut r)).unwrap();
        for spec in [
            StructureSpec::splitting(p, 2).unwrap(),
            StructureSpec::factorization(p, 2).unwrap(),
            StructureSpec::square_root(p, 2).unwrap(),
            StructureSpec::low_rank(p, 2, 1).unwrap(),
        ] {
            let a = is_structured(&f, &spec, &caps()).unwrap();
            let b = is_structured(&g, &spec, &caps()).unwrap();
            prop_assert_eq!(a.is_member(), b.is_member(), "{}", spec.label());
            for (h, m) in [(&f, &a), (&g, &b)] {
                if m.is_member() {
                    prop_assert!(witness_is_valid(h, &spec, m).unwrap());
                }
            }
        }
    }

    #[test]
    fn rejection_is_positive_exactly_when_not_free(seed in any::<u64>(), n in 1usize..4) {
        let family = affinity_family(2, &caps()).unwrap();
        let mut r = rng(seed, 0);
        let f = if r.gen_bool(0.5) {
            RFunction::random(2, n, 2, seed).unwrap()
        } else {
            let a: Vec<u32> = (0..=n).map(|_| r.gen_range(0..2)).collect();
            RFunction::from_classical(&NCPoly::linear(2, &a).unwrap()).unwrap()
        };
        let rej = rejection_probability(&f, &family, RejectionMode::Exact, &caps()).unwrap();
        prop_assert_eq!(rej.probability > 0.0, !is_free(&f, &family, &caps()).unwrap().free);
        let g = f.compose_affine(&AffineMap::random(field(2), n, &mut r));
        let rej_g = rejection_probability(&g, &family, RejectionMode::Exact, &caps()).unwrap();
        prop_assert_eq!(rej.inducing_tuples, rej_g.inducing_tuples);
    }

    #[test]
    fn inducing_implies_partial_inducing(seed in any::<u64>()) {
        let family = affinity_family(2, &caps()).unwrap();
        let mut r = rng(seed, 0);
        let n = 3;
        let f = RFunction::random(2, n, 2, seed).unwrap();
        let polys: Vec<NCPoly> = (0..r.gen_range(1..=2))
            .map(|_| random_poly_with(2, n, r.gen_range(1..=2), 0, &mut r).unwrap())
            .collect();
        let b = PolynomialFactor::new(2, n, polys).unwrap();
        let bp = big_picture(&f, &b, &caps()).unwrap();
        for ic in &family {
            if !is_free(&f, std::slice::from_ref(ic), &caps()).unwrap().free {
                prop_assert!(partially_induces(&bp, &b.degrees(), &b.depths(), ic, &caps()).unwrap().is_some());
            }
        }
    }

    #[test]
    fn binary_tables_round_trip(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5]), n in 0usize..4, r_size in 1u32..6) {
        let f = RFunction::random(p, n, r_size, seed).unwrap();
        let back = io::decode_rfunction(&io::encode_rfunction(&f), Some(r_size), Path::new("f")).unwrap();
        prop_assert_eq!(back, f);
        let poly = random_poly(p, n.max(1), 1, 0, seed).unwrap();
        let t = TableFn::phase_of(&poly, &caps()).unwrap();
        prop_assert_eq!(io::decode_complex_table(&io::encode_complex_table(&t), Path::new("t")).unwrap(), t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn certified_factors_are_equidistributed(seed in any::<u64>()) {
        let mut r = rng(seed, 0);
        let n = 6;
        let polys: Vec<NCPoly> = (0..r.gen_range(1..=2))
            .map(|_| random_poly_with(2, n, 2, 0, &mut r).unwrap())
            .collect();
        let b = PolynomialFactor::new(2, n, polys).unwrap();
        let cert = uniformity_certify(&b, 1.0, UniformityMetric::Gowers, &caps()).unwrap();
        let eps = cert.epsilon_achieved;
        prop_assume!(eps < 1.0);
        let hist = b.atom_histogram(&caps()).unwrap();
        prop_assert!(hist.max_deviation <= eps + 1e-12, "atoms {} vs ε {}", hist.max_deviation, eps);
        if eps < 1.0 / b.order() as f64 {
            prop_assert_eq!(hist.realized as u128, b.order());
        }
        let joint = joint_distribution(&b, &AffineConstraint::cube(2), EvalMode::Exhaustive, &caps()).unwrap();
        prop_assert_eq!(joint.inconsistent_mass, 0.0);
        prop_assert!(joint.max_deviation <= eps + 1e-12, "joint {} vs ε {}", joint.max_deviation, eps);
    }

    #[test]
    fn certification_survives_hyperplane_restriction(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3])) {
        let mut r = rng(seed, 0);
        let (t, n) = if p == 2 { (3, 6) } else { (2, 4) };
        let q = quadratic_form(p, t).unwrap();
        let b = PolynomialFactor::new(p, n, vec![q.clone()]).unwrap();
        let eps = uniformity_certify(&b, 1.0, UniformityMetric::Gowers, &caps()).unwrap().epsilon_achieved;
        let hyperplanes = gowerslab::field::enumerate_hyperplanes(field(p), n).unwrap();
        let h = &hyperplanes[r.gen_range(0..hyperplanes.len())];
        let restricted = q.restrict(h).unwrap();
        prop_assert_eq!(restricted.degree(), 2);
        let rb = PolynomialFactor::new(p, n - 1, vec![restricted]).unwrap();
        let relaxed = (p as f64).sqrt() * eps;
        let cert = uniformity_certify(&rb, relaxed + 1e-12, UniformityMetric::Gowers, &caps()).unwrap();
        prop_assert!(cert.passed, "ε' = {} vs {}", cert.epsilon_achieved, relaxed);
    }

    #[test]
    fn composition_does_not_raise_degree(seed in any::<u64>()) {
        let mut r = rng(seed, 0);
        let n = 6;
        let p1 = quadratic_form(2, 3).unwrap();
        let p2 = NCPoly::classical(2, n, &[(vec![1, 0, 1, 0, 0, 0], 1), (vec![0, 1, 0, 0, 1, 0], 1), (vec![0, 0, 0, 1, 0, 1], 1)]).unwrap();
        let b = PolynomialFactor::new(2, n, vec![p1.clone(), p2.clone()]).unwrap();
        prop_assert!(uniformity_certify(&b, 0.9, UniformityMetric::Gowers, &caps()).unwrap().passed);
        let gamma: Vec<u32> = (0..4).map(|_| r.gen_range(0..2)).collect();
        let compose = |a: &NCPoly, c: &NCPoly| {
            let (ta, tc) = (a.fp_table().unwrap(), c.fp_table().unwrap());
            let vals: Vec<u32> = ta.iter().zip(&tc).map(|(&x, &y)| gamma[(x + 2 * y) as usize]).collect();
            NCPoly::from_fp_table(2, n, &vals).unwrap()
        };
        let f = compose(&p1, &p2);
        let q1 = random_poly_with(2, n, r.gen_range(1..=2), 0, &mut r).unwrap();
        let q2 = random_poly_with(2, n, r.gen_range(1..=2), 0, &mut r).unwrap();
        let g = compose(&q1, &q2);
        prop_assert!(g.degree() <= f.degree(), "deg Γ(Q) = {} > deg Γ(P) = {}", g.degree(), f.degree());
    }
}

#[test]
fn form_order_is_a_partial_order() {
    for (p, k) in [(2u32, 4usize), (3, 3), (3, 4)] {
        let dom = Domain::new(field(p), k).unwrap();
        let forms: Vec<LinearForm> = dom.points().map(|x| LinearForm(x.0)).collect();
        for a in &forms {
            assert!(form_le(a, a));
            for b in &forms {
                if form_le(a, b) && form_le(b, a) {
                    assert_eq!(a, b);
                }
                if !form_le(a, b) {
                    continue;
                }
                for c in &forms {
                    if form_le(b, c) {
                        assert!(form_le(a, c));
                    }
                }
            }
        }
    }
}

#[test]
fn every_point_lies_on_equally_many_hyperplanes() {
    for (p, max_n) in [(2u32, 6usize), (3, 4), (5, 3), (7, 3)] {
        let f = field(p);
        for n in 1..=max_n {
            if (p as u64).pow(n as u32) > 512 {
                continue;
            }
            let hyperplanes = gowerslab::field::enumerate_hyperplanes(f, n).unwrap();
            let dom = Domain::new(f, n).unwrap();
            let counts: Vec<usize> = dom
                .points()
                .map(|x| hyperplanes.iter().filter(|h| h.contains(f, &x)).count())
                .collect();
            let expected = (p.pow(n as u32) - 1) / (p - 1);
            assert!(
                counts.iter().all(|&c| c as u32 == expected),
                "p = {p}, n = {n}: {counts:?}"
            );
        }
    }
}

#[test]
fn cube_relation_annihilates_affine_polynomials() {
    let cube = AffineConstraint::cube(3);
    for n in 1..=4 {
        let dom = Domain::new(field(2), n).unwrap();
        for mask in 0u32..(1 << (n + 1)) {
            let a: Vec<u32> = (0..=n).map(|i| mask >> i & 1).collect();
            let poly = NCPoly::linear(2, &a).unwrap();
            let table = poly.fp_table().unwrap();
            for x in 0..dom.size() {
                for y in 0..dom.size() {
                    for z in 0..dom.size() {
                        let xs = [x, y, z];
                        let s: u32 = cube
                            .forms()
                            .iter()
                            .map(|l| table[dom.combine(l.weights(), &xs) as usize])
                            .sum();
                        assert_eq!(s % 2, 0);
                    }
                }
            }
        }
    }
    let set = dependency_set(field(2), &cube, 1, 0, &caps()).unwrap();
    assert!(set.contains(&[1, 1, 1, 1]));
}
