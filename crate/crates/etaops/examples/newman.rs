//! Verify the eigenform property of pure eta-powers under index-l
//! operators: every eta^r with 0 <= r <= 24 is an eigenform whenever
//! 24 divides r(l - 1), with eigenvalue given by a closed divisor sum.

use etaops::heckeops::newman_check;

fn main() -> etaops::Result<()> {
    for (r, l) in [(24i64, 2u64), (24, 35), (12, 5), (2, 13), (1, 25), (23, 49)] {
        let report = newman_check(r, l, 300)?;
        println!(
            "eta^{:<2} under T_{:<2}: {} (eigenvalue {}, {} lattice and {} off-lattice \
             coefficients checked)",
            report.r,
            report.l,
            if report.pass { "eigenform" } else { "FAILED" },
            report.eigenvalue,
            report.checked_lattice,
            report.checked_off_lattice,
        );
        if let Some(n) = report.first_discrepancy {
            println!("  first discrepancy at numerator {n}");
        }
    }
    Ok(())
}
