//! The curve C_p(X) = C_q(Y), its nodes, and a sampled branch of its resolution.

use torus_verlinde::charvar::{curve_param, make_knot};
use torus_verlinde::chebyshev::{
    chebyshev_first, chebyshev_second, curve_polynomials, singular_points, Polynomial,
};

fn coeffs(p: &Polynomial) -> String {
    let c: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    format!("[{}]", c.join(", "))
}

fn main() {
    for k in 0..=5 {
        println!("C_{k} = {}", coeffs(&chebyshev_first(k)));
    }
    println!("S_4 = {}", coeffs(&chebyshev_second(4).unwrap()));

    let (p, q) = (3, 4);
    let knot = make_knot(p as i64, q as i64).unwrap();
    let curve = curve_polynomials(p, q).unwrap();
    for pt in singular_points(p, q).unwrap() {
        let (x, y) = pt.float();
        println!("node ({}, {}) at ({x:.6}, {y:.6})", pt.a, pt.b);
    }

    let param = curve_param(&knot, &Polynomial::z()).unwrap();
    println!(
        "F(C_q(t), C_p(t)) is zero: {}",
        param.curve_residual(&curve).is_zero()
    );
    println!(
        "blow-up residual is zero:  {}",
        param.surface_residual(&curve).is_zero()
    );

    for i in 0..=4 {
        let t = -2.0 + i as f64;
        let s = curve_param(&knot, &t).unwrap();
        println!(
            "t = {t:+.1}  X = {:+.4}  Y = {:+.4}  [{:+.4} : {:+.4}]",
            s.x, s.y, s.z0, s.z1
        );
    }
}
