//! The S-matrix of a torus knot, its orthogonality, and the sine-sum lemma behind it.

use torus_verlinde::charvar::{components, make_knot};
use torus_verlinde::torsion::torsion_s_matrix_relation_exact;
use torus_verlinde::verlinde::{s_matrix, zagier_lemma_check};

fn main() {
    let k = make_knot(3, 4).unwrap();
    let s = s_matrix(&k);
    println!("{k}: {}x{} S-matrix", s.dim(), s.dim());
    println!("symmetry error      {:e}", s.symmetry_error());
    println!("orthogonality error {:e}", s.orthogonality_error());
    for c in components(&k) {
        println!(
            "2 tau S^2 = 1 at {c}: {}",
            torsion_s_matrix_relation_exact(&k, c)
        );
    }
    for kk in [5, 8] {
        let ok = (1..kk).all(|m1| (1..kk).all(|m2| zagier_lemma_check(kk, m1, m2).unwrap()));
        println!("sine-sum lemma holds for k = {kk}: {ok}");
    }
}
