//! Rebuild a progression of eta-power coefficients as an exact linear
//! combination of eta-quotient blocks and certify the identity to its
//! valence bound. Pass `r p beta` on the command line, e.g. `-- -1 13 1`
//! for the partition-number progression mod 13.

use etaops::express::{build_identity, verify_identity, ExpressProblem};

fn main() -> etaops::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer arguments r p beta"))
        .collect();
    let (r, p, beta) = match args[..] {
        [r, p, beta] => (r, p as u64, beta as u32),
        [] => (2, 13, 2),
        _ => panic!("expected exactly three arguments: r p beta"),
    };

    let prob = ExpressProblem::new(r, p, beta)?;
    println!("{prob}");
    let mut id = build_identity(&prob)?;
    println!("identity with {} block terms:", id.terms.len());
    for (y, c) in &id.terms {
        println!("  {c} * [{}]", prob.block(*y));
    }
    let ok = verify_identity(&mut id, 0)?;
    println!(
        "certified: {} (coefficients compared through 24-fold exponent {})",
        ok, id.verified_to
    );
    Ok(())
}
