//! Expand an eta-quotient as a q-series and tabulate its vanishing order
//! at every cusp class, confirming the valence identity that the orders,
//! weighted by class widths, sum to index * 2k / 24.

use num::rational::BigRational;
use num::BigInt;

use etaops::qseries::{cusps_gamma0, eta_quotient_series, valence_bound24, EtaExponents};

fn main() -> etaops::Result<()> {
    let ex = EtaExponents::new(8, [(1, 1), (2, -2), (4, 5), (8, -2)])?;
    println!("quotient: {ex}  (twice-weight {})", ex.twice_weight());
    println!("series:   {}", eta_quotient_series(&ex, 10));

    let mut weighted = BigRational::from(BigInt::from(0));
    for class in cusps_gamma0(ex.level()) {
        let ord = ex.ord_at_cusp(class.denominator);
        println!(
            "  cusps with denominator {:>2} (count {}, width {}): order {}",
            class.denominator, class.count, class.width, ord
        );
        weighted += ord * BigRational::from(BigInt::from((class.count * class.width) as i64));
    }
    let valence = BigRational::new(
        BigInt::from(valence_bound24(ex.level(), ex.twice_weight())),
        BigInt::from(24),
    );
    println!("weighted order sum {weighted} = index * 2k / 24 = {valence}");
    assert_eq!(weighted, valence);
    Ok(())
}
