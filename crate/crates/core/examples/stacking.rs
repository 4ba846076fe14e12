//! Gluing elements along a partition of the interval, and the extension of
//! the action to maps that need not fix 0.

use ordkit::interval::{fmt_q, q, PLMap};
use ordkit::order::FinPoset;
use ordkit::umodules::{extend_to_uhat, stack_glue, stack_glue_n, unstack_verify, FunctionModule, IntervalModule, UModule};

fn main() -> ordkit::Result<()> {
    let m = IntervalModule::default();
    let r = q(1, 3);
    let c = stack_glue(&m, &r, &q(1, 1), &q(1, 2))?;
    println!("glue(1, 1/2) at 1/3 = {}", fmt_q(&c));
    match stack_glue(&m, &r, &q(1, 2), &q(1, 2)) {
        Ok(c) => println!("unexpected glue {}", fmt_q(&c)),
        Err(e) => println!("glue(1/2, 1/2) rejected: {e}"),
    }
    let w = PLMap::trunc_add(&q(1, 4))?;
    println!("(+1/4) acting on 1/2 = {}", fmt_q(&extend_to_uhat(&m, &w, &q(1, 2))?));

    let fm = FunctionModule::directed(FinPoset::chain(3))?;
    let part = [q(0, 1), q(1, 4), q(1, 2), q(1, 1)];
    let top = fm.top().expect("top");
    let pieces = [top.clone(), fm.element(vec![q(1, 3), q(1, 1), q(1, 1)])?, fm.element(vec![q(0, 1), q(1, 2), q(1, 1)])?];
    let c = stack_glue_n(&fm, &part, &pieces)?;
    println!("three pieces on C3 glue to {}", fm.show(&c));
    println!("unstacking holds: {}", unstack_verify(&fm, &c, &c, &part)?.holds());
    Ok(())
}
