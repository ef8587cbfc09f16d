//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;
use torus_verlinde::charvar::{
    components, curve_param, exceptional_intersections, excluded_traces, make_knot, moebius_phi,
    solve_trace_param, MoebiusImage, ProjectivePoint, TorusKnot,
};
use torus_verlinde::chebyshev::{
    chebyshev_first, chebyshev_second, critical_points, curve_polynomials, singular_points,
    Polynomial,
};
use torus_verlinde::exactnum::{int, rational};
use torus_verlinde::torsion::{adjoint_torsion, hessian_at, torsion_power_sum, TorsionTable};
use torus_verlinde::verlinde::{
    check_fusion_rule_one, check_fusion_rule_two, check_hessian, check_initial_values,
    check_s_matrix, classical_verlinde_check, fusion_tensor, integrality_report,
    zagier_lemma_check, zagier_specialization_check, MultiIndex, RationalRoute, TrigRoute,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn knots_up_to(max: u32) -> Vec<TorusKnot> {
    let mut v = Vec::new();
    for p in 2..max {
        for q in p + 1..=max {
            if p.gcd(&q) == 1 {
                v.push(make_knot(p as i64, q as i64).unwrap());
            }
        }
    }
    v
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn trefoil_constancy() -> Outcome {
    let k = make_knot(2, 3).unwrap();
    for g in 0..=10 {
        let s = torsion_power_sum(&k, g);
        ensure(s.rational == Some(int(1)), || {
            format!("g = {g}: {}", s.value)
        })?;
    }
    Ok(())
}

fn genus_zero_universality() -> Outcome {
    for k in knots_up_to(15) {
        let s = TorsionTable::new(&k).power_sum(0);
        ensure(s.rational == Some(int(1)), || format!("{k}: {}", s.value))?;
    }
    Ok(())
}

fn integrality() -> Outcome {
    for k in knots_up_to(12) {
        let r = integrality_report(&k, 8);
        if let Some(row) = r.rows.iter().find(|row| !row.passed()) {
            return Err(format!("{k}: {row:?}"));
        }
    }
    Ok(())
}

fn anchored_values() -> Outcome {
    for k in knots_up_to(12) {
        let (p, q) = (k.p() as i64, k.q() as i64);
        let route = RationalRoute::new(&k);
        let trig = TrigRoute::new(&k);
        let zero = MultiIndex::zero(&k);
        for (g, want) in [(0, int(4)), (1, int((p - 1) * (q - 1)))] {
            let r = route.d(g, &zero);
            let t = trig.d(g, &zero).to_rational();
            ensure(r == want && t.as_ref() == Some(&want), || {
                format!("{k}: d({g}, 0) rational {r}, trig {t:?}, want {want}")
            })?;
        }
        for x in k.grid() {
            let (a, b) = (x.a as i64, x.b as i64);
            let want = if a % 2 == 1 && b % 2 == 1 {
                rational((p - a) * (q - b), 2)
            } else {
                int(0)
            };
            let l = MultiIndex::single(&k, x);
            let r = route.d(1, &l);
            let t = trig.d(1, &l).to_rational();
            ensure(r == want && t.as_ref() == Some(&want), || {
                format!("{k}: d(1, l{x}) rational {r}, trig {t:?}, want {want}")
            })?;
        }
    }
    let k = make_knot(2, 5).unwrap();
    let route = RationalRoute::new(&k);
    let trig = TrigRoute::new(&k);
    let zero = MultiIndex::zero(&k);
    for (g, want) in [(2, 5), (3, 15)] {
        let scale = int(1 << (g - 2));
        let r = route.d(g, &zero) * &scale;
        let t = trig.d(g, &zero).to_rational().map(|v| v * &scale);
        ensure(r == int(want) && t == Some(int(want)), || {
            format!("(2, 5) g = {g}: rational {r}, trig {t:?}, want {want}")
        })?;
    }
    Ok(())
}

fn fusion_rules() -> Outcome {
    for (p, q) in [(2, 5), (3, 5)] {
        let k = make_knot(p, q).unwrap();
        let route = RationalRoute::new(&k);
        let trig = TrigRoute::new(&k);
        let outcomes = [
            check_fusion_rule_one(&k, 2, 2, |g, n| route.d(g, n)),
            check_fusion_rule_two(&k, 2, 2, |g, n| route.d(g, n)),
            check_fusion_rule_one(&k, 2, 2, |g, n| trig.d(g, n)),
            check_fusion_rule_two(&k, 2, 2, |g, n| trig.d(g, n)),
        ];
        for o in outcomes {
            ensure(o.passed() && o.checked > 0, || {
                format!(
                    "{k} {}: {} of {} failed {:?}",
                    o.name, o.failed, o.checked, o.failures
                )
            })?;
        }
    }
    Ok(())
}

fn initial_values() -> Outcome {
    for (p, q) in [(2, 5), (3, 4), (3, 5)] {
        let k = make_knot(p, q).unwrap();
        let o = check_initial_values(&TrigRoute::new(&k), &fusion_tensor(&k));
        ensure(o.passed(), || format!("{k}: {:?}", o.failures))?;
    }
    Ok(())
}

fn hessian_identity() -> Outcome {
    for k in knots_up_to(12) {
        let o = check_hessian(&k);
        ensure(o.passed(), || format!("{k}: {:?}", o.failures))?;
    }
    let k = make_knot(2, 3).unwrap();
    let c = k.component(1, 1).unwrap();
    let h = hessian_at(&k, c).to_rational();
    let t = adjoint_torsion(&k, c).exact.to_rational();
    ensure(h == Some(int(-12)) && t == Some(rational(1, 2)), || {
        format!("trefoil Hessian {h:?}, tau {t:?}")
    })
}

fn geometry() -> Outcome {
    for k in knots_up_to(12) {
        let (p, q) = (k.p(), k.q());
        let comps = components(&k);
        ensure(comps.len() as u32 == (p - 1) * (q - 1) / 2, || {
            format!("{k}: {} components", comps.len())
        })?;
        let curve = curve_polynomials(p, q).unwrap();
        let sing = singular_points(p, q).unwrap();
        ensure(sing.len() == comps.len(), || {
            format!("{k}: {} nodes", sing.len())
        })?;
        for pt in &sing {
            for (name, f) in [("F", &curve.f), ("F_X", &curve.fx), ("F_Y", &curve.fy)] {
                ensure(f.eval(&pt.x, &pt.y).is_zero(), || {
                    format!("{k}: {name} nonzero at ({}, {})", pt.a, pt.b)
                })?;
            }
        }
        for pt in critical_points(p, q).unwrap() {
            if pt.a % 2 != pt.b % 2 {
                ensure(!curve.f.eval(&pt.x, &pt.y).is_zero(), || {
                    format!("{k}: ({}, {}) wrongly on the curve", pt.a, pt.b)
                })?;
            }
        }

        let t = Polynomial::z();
        let pt = curve_param(&k, &t).map_err(|e| e.to_string())?;
        ensure(pt.curve_residual(&curve).is_zero(), || {
            format!("{k}: F(C_q, C_p) != 0")
        })?;
        ensure(pt.surface_residual(&curve).is_zero(), || {
            format!("{k}: F_X C_q' + F_Y C_p' != 0")
        })?;
        ensure(
            pt.z0 == chebyshev_first(q as i64).derivative()
                && pt.z1 == chebyshev_first(p as i64).derivative(),
            || format!("{k}: exceptional coordinate is not [C_q' : C_p']"),
        )?;

        for c in &comps {
            let ex = excluded_traces(&k, *c);
            let sol = solve_trace_param(&k, *c);
            ensure(ex.same_set(&sol), || format!("{k} {c}: solutions {sol:?}"))?;

            let ang_a = PI * (c.a() as i64 * k.r()) as f64 / p as f64;
            let ang_b = PI * (c.b() as i64 * k.s()) as f64 / q as f64;
            let u = q as f64 * (PI * c.a() as f64 / p as f64).sin();
            let v = p as f64 * (PI * c.b() as f64 / q as f64).sin();
            let ends = [
                (ProjectivePoint::new(u, -v), 2.0 * (ang_a - ang_b).cos()),
                (ProjectivePoint::new(u, v), 2.0 * (ang_a + ang_b).cos()),
            ];
            for (z, want) in ends {
                match moebius_phi(&k, *c, z) {
                    MoebiusImage::Excluded(w) if (w - want).abs() < 1e-9 => {}
                    other => return Err(format!("{k} {c}: {z:?} -> {other:?}, want {want}")),
                }
            }
            ensure(
                (ex.minus.to_f64() - ends[0].1).abs() < 1e-9
                    && (ex.plus.to_f64() - ends[1].1).abs() < 1e-9,
                || format!("{k} {c}: excluded traces {:?}", ex.floats()),
            )?;
            let e = exceptional_intersections(&k, *c);
            ensure(
                e.minus.proportional(&ends[0].0, 1e-12) && e.plus.proportional(&ends[1].0, 1e-12),
                || format!("{k} {c}: intersections {e:?}"),
            )?;
            let inf = moebius_phi(&k, *c, ProjectivePoint::new(1.0, 0.0));
            ensure(inf == MoebiusImage::Infinity, || {
                format!("{k} {c}: [1:0] -> {inf:?}")
            })?;
        }
    }
    Ok(())
}

fn chebyshev_identities() -> Outcome {
    let z = Polynomial::z();
    let z2_minus_4 = z.mul(&z).sub(&Polynomial::from_i64(&[4]));
    for k in 0..=30i64 {
        for l in 0..=30i64 {
            if k * l <= 64 {
                let lhs = chebyshev_first(k).compose(&chebyshev_first(l));
                ensure(lhs == chebyshev_first(k * l), || format!("C_{k} o C_{l}"))?;
            }
        }
        if k == 0 {
            continue;
        }
        let s = chebyshev_second(k - 1).map_err(|e| e.to_string())?;
        let c = chebyshev_first(k);
        ensure(c.derivative() == s.scale(&int(k)), || {
            format!("C_{k}' != {k} S_{}", k - 1)
        })?;
        let lhs = z2_minus_4.mul(&s.derivative());
        let rhs = c.scale(&int(k)).sub(&z.mul(&s));
        ensure(lhs == rhs, || format!("differential identity at k = {k}"))?;
    }
    Ok(())
}

fn classical_corollary() -> Outcome {
    for q in (3..=15u32).step_by(2) {
        for g in 0..=6u32 {
            let c = classical_verlinde_check(q, g).map_err(|e| e.to_string())?;
            ensure(c.divisible, || format!("q = {q}, g = {g}: {}", c.value))?;
            let float: f64 = (q as f64 / 2.0).powi(g as i32 - 1)
                * (1..q)
                    .map(|j| (PI * j as f64 / q as f64).sin().powi(2 - 2 * g as i32))
                    .sum::<f64>();
            let exact = num_traits::ToPrimitive::to_f64(&c.value).unwrap();
            ensure((float - exact).abs() <= 1e-9 * float.abs().max(1.0), || {
                format!("q = {q}, g = {g}: exact {exact} vs float {float}")
            })?;
        }
    }
    let c = classical_verlinde_check(5, 2).map_err(|e| e.to_string())?;
    ensure(c.value == int(20), || format!("q = 5, g = 2: {}", c.value))
}

fn orthogonality() -> Outcome {
    for k in 2..=12usize {
        for m1 in 1..k {
            for m2 in 1..k {
                ensure(
                    zagier_lemma_check(k, m1, m2).map_err(|e| e.to_string())?,
                    || format!("k = {k}, m = ({m1}, {m2})"),
                )?;
            }
            ensure(
                zagier_specialization_check(k, m1).map_err(|e| e.to_string())?,
                || format!("specialization k = {k}, j = {m1}"),
            )?;
        }
    }
    for k in knots_up_to(12) {
        let o = check_s_matrix(&k);
        ensure(o.passed(), || format!("{k}: {:?}", o.failures))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (
            "trefoil constancy",
            Duration::from_secs(1),
            trefoil_constancy,
        ),
        (
            "genus zero universality",
            Duration::from_secs(120),
            genus_zero_universality,
        ),
        ("integrality", Duration::from_secs(300), integrality),
        ("anchored values", Duration::from_secs(10), anchored_values),
        ("fusion rules", Duration::from_secs(180), fusion_rules),
        ("initial values", Duration::from_secs(120), initial_values),
        (
            "Hessian identity",
            Duration::from_secs(30),
            hessian_identity,
        ),
        ("geometry", Duration::from_secs(60), geometry),
        (
            "Chebyshev identities",
            Duration::from_secs(10),
            chebyshev_identities,
        ),
        (
            "classical corollary",
            Duration::from_secs(60),
            classical_corollary,
        ),
        (
            "orthogonality and S-matrix",
            Duration::from_secs(30),
            orthogonality,
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let verdict = match (&result, took <= *limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over the {:?} limit)", limit),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("{verdict} {:>2} {name} [{:.2?}]", i + 1, took);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
