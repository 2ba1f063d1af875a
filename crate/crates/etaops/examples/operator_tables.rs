//! Regenerate the archived operator tables: every ordered pair of
//! holomorphic eta-quotients with at least one admissible index, across
//! all levels and weights where the space is one-dimensional. Writes
//! `operator_pairs.csv` and `operator_pairs.txt` into the directory given
//! as the first argument (default `tables`).

use etaops::search::{admissible_operator_rows, dimension_candidates, rows_to_csv, rows_to_text};

fn main() -> etaops::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "tables".into());
    let dir = std::path::Path::new(&dir);
    std::fs::create_dir_all(dir).expect("create output directory");

    let mut rows = Vec::new();
    for (level, tw) in dimension_candidates(true) {
        let before = rows.len();
        rows.extend(admissible_operator_rows(level, tw)?);
        println!("N = {level:<3} 2k = {tw:<3} -> {} pairs", rows.len() - before);
    }
    let integral = rows.iter().filter(|r| r.twice_weight % 2 == 0).count();
    let half = rows.len() - integral;
    println!(
        "total: {} pairs ({integral} integral-weight, {half} half-integral-weight)",
        rows.len()
    );

    std::fs::write(dir.join("operator_pairs.csv"), rows_to_csv(&rows)).expect("write csv");
    std::fs::write(dir.join("operator_pairs.txt"), rows_to_text(&rows)).expect("write text");
    println!("wrote {}", dir.join("operator_pairs.csv").display());
    println!("wrote {}", dir.join("operator_pairs.txt").display());
    Ok(())
}
