//! The SU(2) Verlinde numbers at level q - 2 and their divisibility by 2^g.

use torus_verlinde::verlinde::classical_verlinde_check;

fn main() {
    for q in (3..=11).step_by(2) {
        let row: Vec<String> = (0..=5)
            .map(|g| {
                let c = classical_verlinde_check(q, g).unwrap();
                format!("{}{}", c.value, if c.divisible { "" } else { "!" })
            })
            .collect();
        println!("q = {q:>2}: {}", row.join("  "));
    }
}
