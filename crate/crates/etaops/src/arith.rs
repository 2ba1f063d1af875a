//! Number-theoretic primitives: the Kronecker-Jacobi symbol, Moebius and
//! divisor functions, square-part radicals of integers, 24th roots of unity,
//! and separable quadratic Gauss sums evaluated both by brute force and by a
//! closed formula.

use crate::fixedpoint::{Ctx, Cx};
use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Kronecker-Jacobi symbol `(a | n)`, totally defined on `Z x Z`.
///
/// Characterized by: `(a|2) = 0, 1, -1` for `a` even, `a = +-1 (mod 8)`,
/// `a = +-3 (mod 8)` respectively; `(a|-1) = -1` exactly for `a < 0`;
/// `(a|1) = 1`; `(a|0) = 1` exactly for `a = +-1`; and complete
/// multiplicativity in the lower argument elsewhere.
pub fn kronecker_big(a: &BigInt, n: &BigInt) -> i32 {
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    if a.is_even() && n.is_even() {
        return 0;
    }
    let mut a = a.clone();
    let mut n = n.clone();
    let mut result = 1i32;
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    let tz = n.trailing_zeros().unwrap_or(0);
    if tz > 0 {
        n >>= tz;
        if tz % 2 == 1 {
            let am8 = a.mod_floor(&BigInt::from(8)).to_i64().unwrap();
            if am8 == 3 || am8 == 5 {
                result = -result;
            }
        }
    }
    a = a.mod_floor(&n);
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            a >>= tz;
            if tz % 2 == 1 {
                let nm8 = n.mod_floor(&BigInt::from(8)).to_i64().unwrap();
                if nm8 == 3 || nm8 == 5 {
                    result = -result;
                }
            }
        }
        let am4 = a.mod_floor(&BigInt::from(4)).to_i64().unwrap();
        let nm4 = n.mod_floor(&BigInt::from(4)).to_i64().unwrap();
        if am4 == 3 && nm4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Kronecker-Jacobi symbol on machine integers.
pub fn kronecker(a: i64, n: i64) -> i32 {
    kronecker_big(&BigInt::from(a), &BigInt::from(n))
}

/// Trial-division factorization of `n >= 1` as sorted `(prime, exponent)`.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize expects a positive integer");
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Moebius function of `n >= 1`.
pub fn moebius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sorted list of positive divisors of `n >= 1`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let prev = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

/// Euler phi of `n >= 1`.
pub fn euler_phi(n: u64) -> u64 {
    let mut out = n;
    for (p, _) in factorize(n) {
        out = out / p * (p - 1);
    }
    out
}

/// Sum of positive divisors when `x` is a positive integer, else `0`.
pub fn sigma_divisors(x: &BigRational) -> BigInt {
    if !x.is_integer() || !x.numer().is_positive() {
        return BigInt::zero();
    }
    let n = x
        .numer()
        .to_u64()
        .expect("sigma_divisors argument exceeds u64");
    let mut out = BigInt::one();
    for (p, e) in factorize(n) {
        let p = BigInt::from(p);
        let mut geo = BigInt::one();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            geo += &pk;
        }
        out *= geo;
    }
    out
}

/// Convenience wrapper for integer arguments of [`sigma_divisors`].
pub fn sigma_u64(n: u64) -> BigInt {
    sigma_divisors(&BigRational::from(BigInt::from(n)))
}

/// The square-part radicals of a positive integer `m`:
///
/// * `rad_e`: product of primes dividing `m` to an even power,
/// * `rad_o`: product of primes dividing `m` to an odd power,
/// * `rad = rad_e * rad_o`, `radp = rad_e^2 * rad_o`,
/// * `irad = m / rad`, `iradp = m / radp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RadParts {
    pub rad_e: u64,
    pub rad_o: u64,
    pub rad: u64,
    pub radp: u64,
    pub irad: u64,
    pub iradp: u64,
}

/// Computes [`RadParts`] of `m >= 1`.
pub fn rad_parts(m: u64) -> RadParts {
    let mut rad_e = 1u64;
    let mut rad_o = 1u64;
    for (p, e) in factorize(m) {
        if e % 2 == 0 {
            rad_e *= p;
        } else {
            rad_o *= p;
        }
    }
    let rad = rad_e * rad_o;
    let radp = rad_e * rad_e * rad_o;
    RadParts {
        rad_e,
        rad_o,
        rad,
        radp,
        irad: m / rad,
        iradp: m / radp,
    }
}

/// Multi-argument form: radicals of `gcd` of the arguments.
pub fn rad_parts_gcd(args: &[u64]) -> RadParts {
    let g = args.iter().fold(0u64, |acc, &x| acc.gcd(&x));
    assert!(g >= 1, "rad_parts_gcd needs a nonzero gcd");
    rad_parts(g)
}

/// Whether a non-negative integer is a perfect square.
pub fn is_square_big(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// A 24th root of unity `e(k/24)`, stored by its exponent `k mod 24`.
///
/// Signs embed as `e(0/24)` and `e(12/24)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mu24(u8);

impl Mu24 {
    pub const ONE: Mu24 = Mu24(0);
    pub const MINUS_ONE: Mu24 = Mu24(12);

    /// `e(k/24)` for any integer `k`.
    pub fn from_exponent(k: i64) -> Mu24 {
        Mu24(k.rem_euclid(24) as u8)
    }

    pub fn from_exponent_big(k: &BigInt) -> Mu24 {
        Mu24(k.mod_floor(&BigInt::from(24)).to_u8().unwrap())
    }

    /// Embeds a sign `+-1`.
    pub fn from_sign(s: i32) -> Mu24 {
        match s {
            1 => Mu24(0),
            -1 => Mu24(12),
            _ => panic!("sign must be +-1"),
        }
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn inv(self) -> Mu24 {
        Mu24((24 - self.0) % 24)
    }

    pub fn pow(self, e: i64) -> Mu24 {
        Mu24::from_exponent(self.0 as i64 * e.rem_euclid(24))
    }

    /// `+1` or `-1` when the root is real, else `None`.
    pub fn as_sign(self) -> Option<i32> {
        match self.0 {
            0 => Some(1),
            12 => Some(-1),
            _ => None,
        }
    }

    /// Numeric value in a fixed-point context.
    pub fn value(self, ctx: &Ctx) -> Cx {
        ctx.e_frac(&BigRational::new(BigInt::from(self.0), BigInt::from(24)))
    }
}

impl std::ops::Mul for Mu24 {
    type Output = Mu24;
    fn mul(self, rhs: Mu24) -> Mu24 {
        Mu24((self.0 + rhs.0) % 24)
    }
}

impl fmt::Display for Mu24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({}/24)", self.0)
    }
}

/// Exact value of a separable Gauss sum: `coeff * i^i_power * sqrt(sqrt_part)`
/// with `coeff` rational, `sqrt_part` square-free positive and `i_power`
/// reduced mod 4. The canonical zero is `(0, 1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussValue {
    pub coeff: BigRational,
    pub sqrt_part: u64,
    pub i_power: u8,
}

impl GaussValue {
    pub fn zero() -> GaussValue {
        GaussValue {
            coeff: BigRational::zero(),
            sqrt_part: 1,
            i_power: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Numeric value in a fixed-point context.
    pub fn eval(&self, ctx: &Ctx) -> Cx {
        let mag = ctx.mul(
            &ctx.from_ratio(&self.coeff),
            &ctx.sqrt(&ctx.from_i64(self.sqrt_part as i64)),
        );
        let unit = match self.i_power % 4 {
            0 => ctx.cfrom_ratio(&BigRational::one(), &BigRational::zero()),
            1 => ctx.cfrom_ratio(&BigRational::zero(), &BigRational::one()),
            2 => ctx.cfrom_ratio(&(-BigRational::one()), &BigRational::zero()),
            _ => ctx.cfrom_ratio(&BigRational::zero(), &(-BigRational::one())),
        };
        ctx.cscale(&unit, &mag)
    }
}

impl fmt::Display for GaussValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        if self.i_power % 4 != 0 {
            write!(f, " * i^{}", self.i_power % 4)?;
        }
        if self.sqrt_part != 1 {
            write!(f, " * sqrt({})", self.sqrt_part)?;
        }
        Ok(())
    }
}

/// Closed formula for `sum_{b mod m} (b|m) e(t b / m)`, for odd `m >= 1`.
///
/// The sum vanishes unless `irad(m) | t`. Otherwise it equals
/// `i^(u^2) * (m / sqrt(radp)) * ((t/iradp) | rad_o) * prod_{p | rad_e}
/// (p - 1 - p ((t/irad) | p)^2)` where `u` counts primes `p | rad_o` with
/// `p = 3 (mod 4)`.
pub fn gauss_sum_formula(m: u64, t: i64) -> GaussValue {
    assert!(m >= 1 && m % 2 == 1, "gauss_sum_formula needs odd m");
    let r = rad_parts(m);
    if r.irad != 0 && t.rem_euclid(r.irad as i64) != 0 {
        return GaussValue::zero();
    }
    let u = factorize(r.rad_o)
        .iter()
        .filter(|&&(p, _)| p % 4 == 3)
        .count() as u8;
    // m / sqrt(radp) = (m / (rad_e * rad_o)) * sqrt(rad_o)
    let mut coeff = BigRational::new(BigInt::from(m), BigInt::from(r.rad_e * r.rad_o));
    let t_iradp = t / r.iradp as i64;
    coeff *= BigRational::from(BigInt::from(kronecker(t_iradp, r.rad_o as i64)));
    let t_irad = t / r.irad as i64;
    for (p, _) in factorize(r.rad_e) {
        let k = kronecker(t_irad, p as i64);
        coeff *= BigRational::from(BigInt::from(p as i64 - 1 - p as i64 * (k * k) as i64));
    }
    if coeff.is_zero() {
        return GaussValue::zero();
    }
    GaussValue {
        coeff,
        sqrt_part: r.rad_o,
        i_power: (u as u32 * u as u32 % 4) as u8,
    }
}

/// Brute-force evaluator for the Gauss sums of a fixed modulus `m`.
///
/// Precomputes the Kronecker symbols and the `m`-th roots of unity once so
/// that sweeps over many shifts `t` stay cheap.
pub struct GaussBrute<'a> {
    ctx: &'a Ctx,
    m: u64,
    roots: Vec<Cx>,
    symbols: Vec<i32>,
}

impl<'a> GaussBrute<'a> {
    pub fn new(ctx: &'a Ctx, m: u64) -> GaussBrute<'a> {
        assert!(m >= 1);
        let base = ctx.e_frac(&BigRational::new(BigInt::one(), BigInt::from(m)));
        let mut roots = Vec::with_capacity(m as usize);
        let mut acc = ctx.cfrom_ratio(&BigRational::one(), &BigRational::zero());
        for _ in 0..m {
            roots.push(acc.clone());
            acc = ctx.cmul(&acc, &base);
        }
        let symbols = (0..m).map(|b| kronecker(b as i64, m as i64)).collect();
        GaussBrute {
            ctx,
            m,
            roots,
            symbols,
        }
    }

    /// `sum_{b mod m} (b|m) e(t b / m)`.
    pub fn sum(&self, t: i64) -> Cx {
        let mut out = self.ctx.czero();
        for b in 0..self.m {
            let s = self.symbols[b as usize];
            if s == 0 {
                continue;
            }
            let idx = ((t.rem_euclid(self.m as i64) as u64) * b % self.m) as usize;
            let root = &self.roots[idx];
            if s > 0 {
                out = self.ctx.cadd(&out, root);
            } else {
                out = self.ctx.csub(&out, root);
            }
        }
        out
    }
}

/// One-shot brute-force Gauss sum; see [`GaussBrute`] for sweeps.
pub fn gauss_sum_bruteforce(ctx: &Ctx, m: u64, t: i64) -> Cx {
    GaussBrute::new(ctx, m).sum(t)
}
