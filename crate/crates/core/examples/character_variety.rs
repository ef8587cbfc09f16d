//! Irreducible components of the SL(2,C) character variety of a torus knot and the
//! meridian traces each one omits.

use torus_verlinde::charvar::{
    components, exceptional_intersections, excluded_traces, make_knot, moebius_phi,
    solve_trace_param, ProjectivePoint,
};

fn main() {
    let k = make_knot(3, 5).unwrap();
    println!(
        "{k}: r = {}, s = {}, {} components",
        k.r(),
        k.s(),
        k.component_count()
    );
    for c in components(&k) {
        let ex = excluded_traces(&k, c);
        let [plus, minus] = ex.floats();
        let roots = solve_trace_param(&k, c);
        println!(
            "{c}: excluded {plus:+.6} (plus), {minus:+.6} (minus); same as roots: {}",
            ex.same_set(&roots)
        );
        let e = exceptional_intersections(&k, c);
        for z in [
            e.plus,
            e.minus,
            ProjectivePoint::INFINITY,
            ProjectivePoint::new(1.0, 1.0),
        ] {
            println!(
                "    [{:+.4} : {:+.4}] -> {:?}",
                z.z0,
                z.z1,
                moebius_phi(&k, c, z)
            );
        }
    }
}
