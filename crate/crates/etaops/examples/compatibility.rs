//! Decide which operator indices carry one eta-quotient to another: the
//! closed-form criterion over a range of indices, cross-checked by the
//! random sampling oracle on the double cover.

use etaops::characters::{
    compatible_closed_form, compatible_sample_oracle, EtaDirichletChar, OracleVerdict,
    RealDirichlet,
};
use etaops::qseries::EtaExponents;

fn main() -> etaops::Result<()> {
    let source = EtaExponents::new(2, [(1, -3), (2, 7)])?;
    let target = EtaExponents::new(2, [(1, 1), (2, 3)])?;
    let chi = RealDirichlet::trivial(2);
    println!("source: {source}");
    println!("target: {target}");

    let mut admitted = Vec::new();
    for l in 1..=60u64 {
        if compatible_closed_form(2, &chi, &source, &chi, &target, l)? {
            admitted.push(l);
        }
    }
    println!("closed form admits l = {admitted:?}");

    let v = EtaDirichletChar::from_exponents(source);
    let w = EtaDirichletChar::from_exponents(target);
    for l in [5u64, 29, 7] {
        let verdict = compatible_sample_oracle(2, &v, &w, l, 500, 42)?;
        match verdict {
            OracleVerdict::NoCounterexample => {
                println!("oracle, l = {l}: no counterexample in 500 samples")
            }
            OracleVerdict::Counterexample(m) => {
                println!("oracle, l = {l}: counterexample at {m}")
            }
        }
    }
    Ok(())
}
