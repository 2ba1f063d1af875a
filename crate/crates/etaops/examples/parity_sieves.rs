//! Express even- and odd-indexed subsequences of eta-power coefficients as
//! eta-quotients on Gamma0(8), and confirm each identity on a prefix of
//! coefficients. The crate's acceptance suite certifies the same twelve
//! identities rigorously via the valence bound.

use num::rational::BigRational;
use num::BigInt;

use etaops::qseries::{eta_power_coeffs, eta_quotient_series, EtaExponents};

struct Sieve {
    exps: Vec<(u64, i64)>,
    r: i64,
    stride: i64,
    residue: i64,
    scale: (i64, i64),
}

fn main() -> etaops::Result<()> {
    let sieves = [
        Sieve { exps: vec![(1, 1), (2, -2), (4, 5), (8, -2)], r: 2, stride: 2, residue: 0, scale: (1, 1) },
        Sieve { exps: vec![(1, 1), (4, -1), (8, 2)], r: 2, stride: 2, residue: 1, scale: (-1, 2) },
        Sieve { exps: vec![(1, -5), (4, 5), (8, -2)], r: -2, stride: 2, residue: 0, scale: (1, 1) },
        Sieve { exps: vec![(1, -5), (2, 2), (4, -1), (8, 2)], r: -2, stride: 2, residue: 1, scale: (1, 2) },
        Sieve { exps: vec![(1, -2), (2, 10), (4, -4)], r: 4, stride: 2, residue: 0, scale: (1, 1) },
        Sieve { exps: vec![(1, 2), (2, -2), (4, 4)], r: 4, stride: 2, residue: 1, scale: (-1, 4) },
        Sieve { exps: vec![(1, -14), (2, 14), (4, -4)], r: -4, stride: 2, residue: 0, scale: (1, 1) },
        Sieve { exps: vec![(1, -10), (2, 2), (4, 4)], r: -4, stride: 2, residue: 1, scale: (1, 4) },
        Sieve { exps: vec![(1, 5), (2, -4), (4, 5), (8, -2)], r: 4, stride: 4, residue: 0, scale: (1, 1) },
        Sieve { exps: vec![(1, -1), (2, 2), (4, 5), (8, -2)], r: 4, stride: 4, residue: 1, scale: (-1, 4) },
        Sieve { exps: vec![(1, 5), (2, -2), (4, -1), (8, 2)], r: 4, stride: 4, residue: 2, scale: (1, 2) },
        Sieve { exps: vec![(1, -1), (2, 4), (4, -1), (8, 2)], r: 4, stride: 4, residue: 3, scale: (1, 8) },
    ];
    let depth = 60usize;
    for s in &sieves {
        let ex = EtaExponents::new(8, s.exps.clone())?;
        let lhs = eta_quotient_series(&ex, depth);
        let tab = eta_power_coeffs(s.r, (s.stride as usize) * depth + s.residue as usize + 1);
        let scale = BigRational::new(BigInt::from(s.scale.0), BigInt::from(s.scale.1));
        for n in 0..depth as i64 {
            let want = BigRational::from(tab[(s.stride * n + s.residue) as usize].clone()) * &scale;
            assert_eq!(lhs.coeff_at_num24(ex.offset24() + 24 * n), want);
        }
        println!(
            "{ex}  =  {}/{} * sum P_{}({}n + {}) q^(({} + 24n)/24)   [prefix of {depth} checked]",
            s.scale.0, s.scale.1, s.r, s.stride, s.residue, ex.offset24()
        );
    }
    Ok(())
}
