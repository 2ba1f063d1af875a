//! Evaluate the multiplier system of an eta-quotient on explicit group
//! elements of the metaplectic double cover, and check multiplicativity
//! on a random product.

use etaops::characters::EtaDirichletChar;
use etaops::metaplectic::{meta_compose, random_gamma0, MatZ, MetaElem};
use etaops::qseries::EtaExponents;

fn main() -> etaops::Result<()> {
    let ex = EtaExponents::new(4, [(1, -2), (2, 5), (4, -2)])?;
    let v = EtaDirichletChar::from_exponents(ex.clone());
    println!("quotient: {ex}  (twice-weight {})", ex.twice_weight());

    let samples = vec![
        ("T", MetaElem::lift(MatZ::t())),
        ("-I", MetaElem::lift(MatZ::neg_identity())),
        ("(I, -1)", MetaElem::new(MatZ::identity(), -1)),
        ("random word 1", MetaElem::lift(random_gamma0(4, 6, 1))),
        ("random word 2", MetaElem::lift(random_gamma0(4, 6, 2))),
    ];
    for (label, elem) in &samples {
        println!("  v({label}) = v({elem}) = {}", v.eval(elem)?);
    }

    let x = MetaElem::lift(random_gamma0(4, 8, 3));
    let y = MetaElem::lift(random_gamma0(4, 8, 4));
    let product = v.eval(&meta_compose(&x, &y))?;
    let split = v.eval(&x)? * v.eval(&y)?;
    println!("multiplicativity: v(xy) = {product}, v(x) v(y) = {split}");
    assert_eq!(product, split);
    Ok(())
}
