//! Enumerate all holomorphic eta-quotients on the levels and weights where
//! the relevant space is one-dimensional, and list one level in full.

use etaops::search::{dimension_candidates, enumerate_holomorphic_etaquotients};

fn main() -> etaops::Result<()> {
    println!("{:>5} {:>4} {:>6}", "N", "2k", "count");
    for (level, tw) in dimension_candidates(true) {
        let quotients = enumerate_holomorphic_etaquotients(level, tw, false)?;
        println!("{level:>5} {tw:>4} {:>6}", quotients.len());
    }

    let (level, tw) = (4u64, 2i64);
    println!("\nall holomorphic quotients at N = {level}, 2k = {tw}:");
    for ex in enumerate_holomorphic_etaquotients(level, tw, false)? {
        println!("  {ex}  (leading exponent {}/24)", ex.offset24());
    }
    Ok(())
}
