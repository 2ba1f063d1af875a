//! Evaluate twisted quadratic Gauss sums both ways: the symbolic closed
//! form and the literal root-of-unity sum, compared in high-precision
//! fixed-point arithmetic.

use etaops::arith::{gauss_sum_formula, GaussBrute};
use etaops::fixedpoint::Ctx;

fn main() {
    let ctx = Ctx::new(40);
    for (m, t) in [(3u64, 1i64), (5, 2), (7, 3), (15, 4), (21, 0), (1001, 77)] {
        let value = gauss_sum_formula(m, t);
        let closed = value.eval(&ctx);
        let brute = GaussBrute::new(&ctx, m).sum(t);
        let dr = ctx.sub(&closed.re, &brute.re);
        let di = ctx.sub(&closed.im, &brute.im);
        assert!(ctx.abs_le_pow10(&dr, 20) && ctx.abs_le_pow10(&di, 20));
        println!("g({t}; {m}) = {value}  (matches brute force to 10^-20)");
    }
}
