//! Fixed-point real and complex arithmetic with a configurable number of
//! decimal digits.
//!
//! Values are stored as integer mantissas scaled by `10^digits`. The module
//! provides the handful of operations the crate needs at high precision:
//! square roots with the principal branch on complex arguments, pi, and the
//! circle map `e(x) = exp(2 pi i x)` for rational `x`. All errors are a few
//! units in the last place, far below the tolerances used by callers (which
//! work at 60 digits and decide quantities separated by at least `1e-20`).

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};

/// A fixed-point real number: the represented value is `mantissa / 10^digits`
/// for the [`Ctx`] it was produced by. `Fx` values from different contexts
/// must not be mixed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fx(pub BigInt);

/// A fixed-point complex number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cx {
    pub re: Fx,
    pub im: Fx,
}

/// Arithmetic context: precision plus cached constants.
pub struct Ctx {
    digits: u32,
    scale: BigInt,
    two_pi: BigInt,
}

/// Rounds `n / d` to the nearest integer, ties away from zero. `d > 0`.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    if &r.abs() * 2 >= *d {
        if n.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

impl Ctx {
    /// Creates a context carrying `digits` decimal digits (at least 20).
    pub fn new(digits: u32) -> Ctx {
        assert!(digits >= 20, "fixed-point context needs at least 20 digits");
        let scale = BigInt::from(10u32).pow(digits);
        let mut ctx = Ctx {
            digits,
            scale,
            two_pi: BigInt::zero(),
        };
        ctx.two_pi = ctx.compute_two_pi();
        ctx
    }

    /// The number of decimal digits carried.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn zero(&self) -> Fx {
        Fx(BigInt::zero())
    }

    pub fn from_i64(&self, v: i64) -> Fx {
        Fx(BigInt::from(v) * &self.scale)
    }

    pub fn from_bigint(&self, v: &BigInt) -> Fx {
        Fx(v * &self.scale)
    }

    pub fn from_ratio(&self, q: &BigRational) -> Fx {
        Fx(round_div(&(q.numer() * &self.scale), q.denom()))
    }

    pub fn add(&self, a: &Fx, b: &Fx) -> Fx {
        Fx(&a.0 + &b.0)
    }

    pub fn sub(&self, a: &Fx, b: &Fx) -> Fx {
        Fx(&a.0 - &b.0)
    }

    pub fn neg(&self, a: &Fx) -> Fx {
        Fx(-&a.0)
    }

    pub fn mul(&self, a: &Fx, b: &Fx) -> Fx {
        Fx(round_div(&(&a.0 * &b.0), &self.scale))
    }

    pub fn div(&self, a: &Fx, b: &Fx) -> Fx {
        assert!(!b.0.is_zero(), "fixed-point division by zero");
        let n = &a.0 * &self.scale;
        if b.0.is_negative() {
            Fx(round_div(&-n, &-&b.0))
        } else {
            Fx(round_div(&n, &b.0))
        }
    }

    pub fn mul_i64(&self, a: &Fx, k: i64) -> Fx {
        Fx(&a.0 * BigInt::from(k))
    }

    pub fn div_i64(&self, a: &Fx, k: i64) -> Fx {
        assert!(k != 0);
        let d = BigInt::from(k.abs());
        let n = if k < 0 { -&a.0 } else { a.0.clone() };
        Fx(round_div(&n, &d))
    }

    /// Square root of a non-negative value, rounded to nearest.
    pub fn sqrt(&self, a: &Fx) -> Fx {
        assert!(!a.0.is_negative(), "fixed-point sqrt of a negative value");
        let prod = &a.0 * &self.scale;
        let m = prod.sqrt();
        // `sqrt` floors; bump when `m + 1` is closer to the true root.
        if (&prod - &m * &m) * 2 > (&m * 2 + 1) {
            Fx(m + 1)
        } else {
            Fx(m)
        }
    }

    /// Absolute value of `a - b` expressed as a rational number.
    pub fn abs_diff(&self, a: &Fx, b: &Fx) -> BigRational {
        BigRational::new((&a.0 - &b.0).abs(), self.scale.clone())
    }

    /// `|a| <= num / den` with exact integer arithmetic.
    pub fn abs_le_ratio(&self, a: &Fx, num: i64, den: u64) -> bool {
        a.0.abs() * BigInt::from(den) <= BigInt::from(num) * &self.scale
    }

    /// `|a| <= 10^(-e)` with exact integer arithmetic.
    pub fn abs_le_pow10(&self, a: &Fx, e: u32) -> bool {
        a.0.abs() * BigInt::from(10u32).pow(e) <= self.scale
    }

    pub fn to_f64(&self, a: &Fx) -> f64 {
        let q = BigRational::new(a.0.clone(), self.scale.clone());
        q.to_f64().unwrap_or(f64::NAN)
    }

    /// Rounds to the nearest rational with the given denominator and reports
    /// the quality of the fit as `|value - rounded|` in units of `1/10^digits`.
    pub fn round_to_den(&self, a: &Fx, den: &BigInt) -> (BigRational, BigInt) {
        assert!(den.is_positive());
        let num = round_div(&(&a.0 * den), &self.scale);
        let err = (&a.0 * den - &num * &self.scale).abs();
        (BigRational::new(num, den.clone()), round_div(&err, den))
    }

    fn compute_two_pi(&self) -> BigInt {
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239), with guard digits.
        let guard = BigInt::from(10u32).pow(12);
        let scale = &self.scale * &guard;
        let pi = Self::atan_inv(&scale, 5) * 16 - Self::atan_inv(&scale, 239) * 4;
        round_div(&(pi * 2), &guard)
    }

    /// `atan(1/x) * scale`, for integer `x >= 2`.
    fn atan_inv(scale: &BigInt, x: i64) -> BigInt {
        let x2 = BigInt::from(x) * BigInt::from(x);
        let mut power = scale / BigInt::from(x);
        let mut total = BigInt::zero();
        let mut k: i64 = 0;
        while !power.is_zero() {
            let term = &power / BigInt::from(2 * k + 1);
            if k % 2 == 0 {
                total += &term;
            } else {
                total -= &term;
            }
            power = &power / &x2;
            k += 1;
        }
        total
    }

    /// Reduces `a` into `(-pi, pi]` modulo `2 pi`.
    fn range_reduce(&self, a: &Fx) -> Fx {
        let k = round_div(&a.0, &self.two_pi);
        Fx(&a.0 - k * &self.two_pi)
    }

    /// Cosine and sine of `a` by Taylor series after range reduction.
    pub fn cos_sin(&self, a: &Fx) -> (Fx, Fx) {
        let x = self.range_reduce(a);
        let x2 = self.mul(&x, &x);
        // cos: sum (-1)^j x^(2j) / (2j)!
        let mut term = self.from_i64(1);
        let mut cos = term.clone();
        let mut j: i64 = 0;
        while !term.0.is_zero() {
            term = self.mul(&term, &x2);
            term = self.div_i64(&term, (2 * j + 1) * (2 * j + 2));
            term = self.neg(&term);
            cos = self.add(&cos, &term);
            j += 1;
        }
        // sin: sum (-1)^j x^(2j+1) / (2j+1)!
        let mut term = x.clone();
        let mut sin = term.clone();
        let mut j: i64 = 0;
        while !term.0.is_zero() {
            term = self.mul(&term, &x2);
            term = self.div_i64(&term, (2 * j + 2) * (2 * j + 3));
            term = self.neg(&term);
            sin = self.add(&sin, &term);
            j += 1;
        }
        (cos, sin)
    }

    /// The circle map `e(x) = exp(2 pi i x)` for rational `x`.
    pub fn e_frac(&self, x: &BigRational) -> Cx {
        let frac = x - x.floor();
        let theta = Fx(round_div(
            &(frac.numer() * &self.two_pi),
            frac.denom(),
        ));
        let (c, s) = self.cos_sin(&theta);
        Cx { re: c, im: s }
    }

    pub fn cone(&self) -> Cx {
        Cx {
            re: self.from_i64(1),
            im: self.zero(),
        }
    }

    pub fn czero(&self) -> Cx {
        Cx {
            re: self.zero(),
            im: self.zero(),
        }
    }

    pub fn cfrom_ratio(&self, re: &BigRational, im: &BigRational) -> Cx {
        Cx {
            re: self.from_ratio(re),
            im: self.from_ratio(im),
        }
    }

    pub fn cadd(&self, a: &Cx, b: &Cx) -> Cx {
        Cx {
            re: self.add(&a.re, &b.re),
            im: self.add(&a.im, &b.im),
        }
    }

    pub fn csub(&self, a: &Cx, b: &Cx) -> Cx {
        Cx {
            re: self.sub(&a.re, &b.re),
            im: self.sub(&a.im, &b.im),
        }
    }

    pub fn cmul(&self, a: &Cx, b: &Cx) -> Cx {
        Cx {
            re: self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im)),
            im: self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re)),
        }
    }

    pub fn cscale(&self, a: &Cx, s: &Fx) -> Cx {
        Cx {
            re: self.mul(&a.re, s),
            im: self.mul(&a.im, s),
        }
    }

    pub fn cdiv(&self, a: &Cx, b: &Cx) -> Cx {
        let norm = self.add(&self.mul(&b.re, &b.re), &self.mul(&b.im, &b.im));
        assert!(!norm.0.is_zero(), "fixed-point complex division by zero");
        let conj = Cx {
            re: b.re.clone(),
            im: self.neg(&b.im),
        };
        let num = self.cmul(a, &conj);
        Cx {
            re: self.div(&num.re, &norm),
            im: self.div(&num.im, &norm),
        }
    }

    pub fn cabs(&self, a: &Cx) -> Fx {
        self.sqrt(&self.add(&self.mul(&a.re, &a.re), &self.mul(&a.im, &a.im)))
    }

    /// Principal square root: the branch with `-pi/2 < arg sqrt(z) <= pi/2`.
    ///
    /// Negative reals map to `i sqrt(|z|)` (argument `pi/2`, on the branch).
    pub fn csqrt(&self, a: &Cx) -> Cx {
        if a.im.0.is_zero() {
            if a.re.0.is_negative() {
                return Cx {
                    re: self.zero(),
                    im: self.sqrt(&self.neg(&a.re)),
                };
            }
            return Cx {
                re: self.sqrt(&a.re),
                im: self.zero(),
            };
        }
        let m = self.cabs(a);
        let u = self.sqrt(&self.div_i64(&self.add(&m, &a.re), 2));
        let mut w = self.sqrt(&self.div_i64(&self.sub(&m, &a.re), 2));
        if a.im.0.is_negative() {
            w = self.neg(&w);
        }
        Cx { re: u, im: w }
    }
}
