//! Knot Verlinde numbers by the sine sum and by the fusion recursion.

use torus_verlinde::charvar::make_knot;
use torus_verlinde::exactnum::int;
use torus_verlinde::verlinde::{fusion_tensor, MultiIndex, RationalRoute, TrigRoute};

fn main() {
    let k = make_knot(2, 5).unwrap();
    let route = RationalRoute::new(&k);
    let trig = TrigRoute::new(&k);

    let t = fusion_tensor(&k);
    let grid: Vec<_> = k.grid().collect();
    println!("{k}: {} labels, nonzero N_xyz:", grid.len());
    for (i, x) in grid.iter().enumerate() {
        for (j, y) in grid.iter().enumerate() {
            for (l, z) in grid.iter().enumerate() {
                let n = t.at(i, j, l);
                if n != int(0) {
                    println!("  N{x}{y}{z} = {n}");
                }
            }
        }
    }

    for spec in ["", "1,1", "1,1;1,1", "1,3;1,3", "1,1;1,2;1,2"] {
        let n = MultiIndex::parse(&k, spec).unwrap();
        for g in 0..=3 {
            let r = route.d(g, &n);
            let s = trig.d(g, &n).to_rational();
            println!(
                "d({g}, {n}) = {r}  (sine sum agrees: {})",
                s.as_ref() == Some(&r)
            );
        }
    }
}
