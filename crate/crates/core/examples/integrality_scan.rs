//! 2^(g-2) d(g, 0) over a small grid of torus knots, with the three routes compared.

use torus_verlinde::cli::scan_report;

fn main() {
    let report = scan_report(7, 9, 6);
    print!("{}", report.text());
}
