//! Apply an index-l operator to powers of eta at level one, printing the
//! image series and confirming the two independent evaluation paths agree.

use etaops::heckeops::{r_even, r_odd, tl_level1_etapower, PrTable};

fn main() -> etaops::Result<()> {
    for (r, l) in [(24i64, 2u64), (2, 25), (1, 25)] {
        let (series, constant) = tl_level1_etapower(r, l, 8)?;
        println!("T_{l} eta^{r}: constant {constant}, series {series}");
        let tab = PrTable::for_lattice(r, l, series.known_through24());
        for (n, coeff) in series.terms() {
            let direct = if r % 2 == 0 {
                r_even(n, r, l, &tab)?
            } else {
                r_odd(n, r, l, &tab)?
            };
            assert_eq!(*coeff, direct);
        }
        println!("  coefficient formula agrees on every printed term");
    }
    Ok(())
}
