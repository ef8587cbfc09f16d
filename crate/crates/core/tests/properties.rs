use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use proptest::prelude::*;
use torus_verlinde::charvar::{
    components, curve_param, exceptional_intersections, excluded_traces, make_knot, moebius_phi,
    solve_trace_param, MoebiusImage, ProjectivePoint, TorusKnot,
};
use torus_verlinde::chebyshev::{chebyshev_first, chebyshev_second, curve_polynomials};
use torus_verlinde::exactnum::{cyclotomic_polynomial, int, rational, totient, CyclotomicNumber};
use torus_verlinde::torsion::{adjoint_torsion, hessian_at, hessian_closed_form};
use torus_verlinde::verlinde::{MultiIndex, RationalRoute, TrigRoute};

fn knot() -> impl Strategy<Value = TorusKnot> {
    (2u32..=9, 3u32..=11)
        .prop_filter("coprime, p < q", |(p, q)| p < q && p.gcd(q) == 1)
        .prop_map(|(p, q)| make_knot(p as i64, q as i64).unwrap())
}

fn element(order: usize) -> impl Strategy<Value = CyclotomicNumber> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 1..=order + 2).prop_map(move |cs| {
        let coeffs: Vec<_> = cs.into_iter().map(|(n, d)| rational(n, d)).collect();
        CyclotomicNumber::from_coeffs(order, &coeffs)
    })
}

fn field_pair() -> impl Strategy<Value = (CyclotomicNumber, CyclotomicNumber, CyclotomicNumber)> {
    (3usize..=24).prop_flat_map(|n| (element(n), element(n), element(n)))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-8 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms((a, b, c) in field_pair()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert_eq!(&a * &inv, CyclotomicNumber::one(a.order()));
        }
    }

    #[test]
    fn embedding_is_a_ring_map((a, b, _) in field_pair()) {
        prop_assert!(close((&a * &b).embed_float(), a.embed_float() * b.embed_float()));
        prop_assert!(close((&a + &b).embed_float(), a.embed_float() + b.embed_float()));
    }

    #[test]
    fn chebyshev_at_two_cos(k in 0i64..=25, j in 0i64..=40, n in 3usize..=20) {
        let t = CyclotomicNumber::two_cos_root(n, j);
        let want = CyclotomicNumber::two_cos_root(n, j * k);
        prop_assert_eq!(chebyshev_first(k).eval(&t), want);
        let th = 2.0 * PI * j as f64 / n as f64;
        let s = chebyshev_second(k).unwrap().eval(&(2.0 * th.cos()));
        if th.sin().abs() > 1e-3 {
            let want = ((k + 1) as f64 * th).sin() / th.sin();
            prop_assert!((s - want).abs() < 1e-6 * (1.0 + want.abs()));
        }
    }

    #[test]
    fn hessian_negative_and_closed(k in knot()) {
        for c in components(&k) {
            let h = hessian_at(&k, c);
            prop_assert!(h.to_f64() < 0.0);
            prop_assert_eq!(&h, &hessian_closed_form(&k, c));
            let t = adjoint_torsion(&k, c);
            prop_assert!(t.float > 0.0);
            let sa = (PI * c.a() as f64 / k.p() as f64).sin();
            let sb = (PI * c.b() as f64 / k.q() as f64).sin();
            let want = (k.p() * k.q()) as f64 / (16.0 * sa * sa * sb * sb);
            prop_assert!((t.float - want).abs() < 1e-9 * want);
        }
    }

    #[test]
    fn reduction_order_is_irrelevant(
        (p, q) in prop::sample::select(vec![(2u32, 5u32), (3, 4), (3, 5), (2, 7)]),
        g in 0u32..=2,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 2..=4),
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
    ) {
        let k = make_knot(p as i64, q as i64).unwrap();
        let grid: Vec<_> = k.grid().collect();
        let labels: Vec<_> = picks.iter().map(|ix| *ix.get(&grid)).collect();
        let n = MultiIndex::from_labels(&k, &labels);
        let route = RationalRoute::new(&k);
        let m = n.positions().len();
        let (i, j) = (i.index(m), j.index(m));
        prop_assume!(i != j);
        prop_assert_eq!(route.d_reducing(g, &n, i, j), route.d(g, &n));
    }

    #[test]
    fn surface_relation(
        (p, q) in prop::sample::select(vec![(2u32, 5u32), (3, 5)]),
        g in 0u32..=3,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 0..=2),
    ) {
        let k = make_knot(p as i64, q as i64).unwrap();
        let grid: Vec<_> = k.grid().collect();
        let labels: Vec<_> = picks.iter().map(|ix| *ix.get(&grid)).collect();
        let trig = TrigRoute::new(&k);
        let n = MultiIndex::from_labels(&k, &labels);
        let e = 1 - g as i32 - labels.len() as i32;
        let scale = if e >= 0 { int(1 << e) } else { rational(1, 1 << -e) };
        let d = trig.d(g, &n);
        prop_assert_eq!(&d, &trig.surface(g, &labels).scale(&scale));
        prop_assert_eq!(d.to_rational(), Some(RationalRoute::new(&k).d(g, &n)));
    }

    #[test]
    fn puncture_spec_roundtrip(k in knot(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..=5)) {
        let grid: Vec<_> = k.grid().collect();
        let labels: Vec<_> = picks.iter().map(|ix| *ix.get(&grid)).collect();
        let spec = labels
            .iter()
            .map(|x| format!("{},{}", x.a, x.b))
            .collect::<Vec<_>>()
            .join(";");
        let n = MultiIndex::parse(&k, &spec).unwrap();
        prop_assert_eq!(&n, &MultiIndex::from_labels(&k, &labels));
        prop_assert_eq!(n.weight() as usize, labels.len());
    }

    #[test]
    fn moebius_interior_and_curve(k in knot(), s in -3.0f64..3.0, t in -2.2f64..2.2) {
        let curve = curve_polynomials(k.p(), k.q()).unwrap();
        let pt = curve_param(&k, &t).unwrap();
        let size = 1.0 + chebyshev_first((k.p() * k.q()) as i64).eval(&t).abs();
        prop_assert!(pt.curve_residual(&curve).abs() < 1e-9 * size);
        for c in components(&k) {
            let e = exceptional_intersections(&k, c);
            let z = ProjectivePoint::new(1.0 + s * s, s);
            prop_assume!(!z.proportional(&e.plus, 1e-6) && !z.proportional(&e.minus, 1e-6));
            match moebius_phi(&k, c, z) {
                MoebiusImage::Trace(v) => prop_assert!(v.is_finite()),
                other => prop_assert!(false, "{:?}", other),
            }
        }
    }
}

#[test]
fn cyclotomic_polynomials_vanish_at_primitive_roots() {
    for n in 1..=60usize {
        let phi = cyclotomic_polynomial(n);
        assert_eq!(phi.degree(), totient(n));
        let zeta = CyclotomicNumber::root_of_unity(n, 1);
        let mut acc = CyclotomicNumber::zero(n);
        let mut pow = CyclotomicNumber::one(n);
        for c in phi.coeffs() {
            acc = &acc + &pow.scale(&c.clone().into());
            pow = &pow * &zeta;
        }
        assert!(acc.is_zero(), "n = {n}");
        let z = Complex64::from_polar(1.0, 2.0 * PI / n as f64);
        let v: Complex64 = phi
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| z.powi(i as i32) * c.to_string().parse::<f64>().unwrap())
            .sum();
        assert!(v.norm() < 1e-6, "n = {n}: {v}");
        let one = CyclotomicNumber::one(n);
        for k in 1..n as i64 {
            assert_ne!(zeta.pow(k).unwrap(), one, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn trace_solutions_are_the_excluded_traces() {
    for p in 2..=8u32 {
        for q in p + 1..=11 {
            if p.gcd(&q) != 1 {
                continue;
            }
            let k = make_knot(p as i64, q as i64).unwrap();
            for c in components(&k) {
                assert!(
                    excluded_traces(&k, c).same_set(&solve_trace_param(&k, c)),
                    "{k} {c}"
                );
            }
        }
    }
}
