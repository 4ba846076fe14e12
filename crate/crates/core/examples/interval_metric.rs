//! The quasi-metric induced by the monoid action, on the interval, on
//! functions over a finite lattice, and on the monoid itself.

use ordkit::interval::{fmt_q, q, PLMap};
use ordkit::order::FinPoset;
use ordkit::umodules::{
    check_archimedean, dist, le_r, rho, rho_bisection, EarlySaturationModule, FunctionModule, IntervalModule, PLModule,
};

fn main() -> ordkit::Result<()> {
    let m = IntervalModule::default();
    let (a, b) = (q(3, 4), q(1, 3));
    println!("interval: rho(3/4, 1/3) = {}, dist = {}", fmt_q(&rho(&m, &a, &b)?), fmt_q(&dist(&m, &a, &b)?));
    for r in [q(1, 4), q(5, 12), q(1, 2)] {
        println!("  3/4 <=_{} 1/3: {}", fmt_q(&r), le_r(&m, &a, &b, &r));
    }

    let fm = FunctionModule::directed(FinPoset::diamond())?;
    let x = fm.element(vec![q(1, 5), q(3, 5), q(1, 5), q(1, 1)])?;
    let y = fm.element(vec![q(0, 1), q(1, 5), q(0, 1), q(1, 1)])?;
    let (lo, hi) = rho_bisection(&fm, &x, &y, 12);
    println!("diamond: rho = {}, bisection in ({}, {}]", fmt_q(&rho(&fm, &x, &y)?), fmt_q(&lo), fmt_q(&hi));

    let f = PLMap::from_points(&[(q(0, 1), q(0, 1)), (q(1, 2), q(3, 4)), (q(1, 1), q(1, 1))])?;
    println!("monoid: rho(f, id) = {}", fmt_q(&rho(&PLModule, &f, &PLMap::identity())?));

    let report = check_archimedean(&EarlySaturationModule, &[(true, false), (false, true)]);
    println!("early saturation module Archimedean: {} ({:?})", report.passed(), report.counterexamples);
    Ok(())
}
