//! Scratch: pair counts over the boundary grid.
use etaops::search::{admissible_operator_rows, dimension_candidates};

fn main() -> etaops::Result<()> {
    let mut even = 0usize;
    let mut odd = 0usize;
    for (level, tw) in dimension_candidates(false) {
        let rows = admissible_operator_rows(level, tw)?;
        let e = rows.iter().filter(|r| r.twice_weight % 2 == 0).count();
        println!("N = {level:<3} 2k = {tw:<2} -> {} pairs ({e} even)", rows.len());
        even += e;
        odd += rows.len() - e;
    }
    println!("boundary grid: {even} integral, {odd} half-integral");
    Ok(())
}
