//! Adjoint torsion per component and the power sums over components.

use torus_verlinde::charvar::make_knot;
use torus_verlinde::torsion::{hessian_at, TorsionTable};

fn main() {
    for (p, q) in [(2, 3), (2, 5), (3, 4), (3, 5)] {
        let k = make_knot(p, q).unwrap();
        let table = TorsionTable::new(&k);
        println!("{k}");
        for t in table.torsions() {
            let h = hessian_at(&k, t.component).to_f64();
            println!(
                "  {}  tau ~ {:.9}  Hessian ~ {:.6}",
                t.component, t.float, h
            );
        }
        let sums: Vec<String> = (0..=6)
            .map(|g| match table.power_sum(g).rational {
                Some(r) => r.to_string(),
                None => "irrational".into(),
            })
            .collect();
        println!("  sum (2 tau)^(g-1), g = 0..6: {}", sums.join(", "));
    }
}
