//! Exact arithmetic in Q(zeta_N): sines, cosines, inverses and the float embedding.

use torus_verlinde::exactnum::{cyclotomic_polynomial, CyclotomicNumber};

fn main() {
    let n = 30;
    println!(
        "Phi_{n} has coefficients {:?}",
        cyclotomic_polynomial(n).coeffs()
    );

    let s = CyclotomicNumber::sin_sq_pi_frac(1, 5, n).unwrap();
    let inv = s.inv().unwrap();
    println!("sin^2(pi/5)     = {s}");
    println!("                ~ {}", s.to_f64());
    println!("1/sin^2(pi/5)   = {inv}");
    println!("product         = {}", &s * &inv);

    // 2cos(pi/5) is the golden ratio
    let phi = CyclotomicNumber::two_cos_pi_frac(1, 5, n).unwrap();
    let check = &(&phi * &phi) - &phi;
    println!("phi^2 - phi     = {}", check);
}
