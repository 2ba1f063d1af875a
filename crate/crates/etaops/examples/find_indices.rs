//! Solve for the full congruence class of operator indices carrying one
//! eta-quotient to another, in both the integral-weight and the
//! half-integral-weight regime.

use etaops::qseries::EtaExponents;
use etaops::search::findl;

fn main() -> etaops::Result<()> {
    let cases = [
        (2u64, vec![(1u64, -3i64), (2, 7)], vec![(1, 1), (2, 3)]),
        (
            4,
            vec![(1, -6), (2, 15), (4, -6)],
            vec![(1, -3), (2, 6)],
        ),
        (4, vec![(1, -2), (2, 5), (4, -2)], vec![(1, 1), (2, 0)]),
    ];
    for (level, src, tgt) in cases {
        let source = EtaExponents::new(level, src)?;
        let target = EtaExponents::new(level, tgt)?;
        let admissible = findl(level, &source, &target)?;
        println!("N = {level}: {source}  ->  {target}");
        if admissible.is_empty() {
            println!("  no admissible index");
        } else {
            println!("  {admissible}");
            println!("  members up to 200: {:?}", admissible.members_up_to(200));
        }
    }
    Ok(())
}
