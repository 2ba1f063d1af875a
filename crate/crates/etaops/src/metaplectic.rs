//! The metaplectic double cover of the positive-determinant integer matrices.
//!
//! Elements are pairs `(A, eps)` with `eps = +-1`. Composition multiplies the
//! matrices and corrects the sign by a 2-cocycle `sigma(A, B)` built from
//! principal branches of complex square roots. The cocycle is evaluated
//! numerically at the interior point `tau = 2i` with 60 decimal digits and
//! rounded to the nearest sign; the two candidate values are 2 apart, so the
//! rounding has an enormous safety margin.

use crate::fixedpoint::{Ctx, Cx};
use crate::EtaError;
use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::OnceLock;

/// A 2x2 integer matrix with positive determinant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatZ {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl MatZ {
    /// Validates `det > 0`.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> crate::Result<MatZ> {
        let m = MatZ { a, b, c, d };
        if m.det().is_positive() {
            Ok(m)
        } else {
            Err(EtaError::InvalidArgument(format!(
                "matrix {m} must have positive determinant"
            )))
        }
    }

    /// Panicking convenience constructor from machine integers.
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> MatZ {
        MatZ::new(a.into(), b.into(), c.into(), d.into()).expect("determinant must be positive")
    }

    pub fn identity() -> MatZ {
        MatZ::from_i64(1, 0, 0, 1)
    }

    /// The translation generator `T = [1 1; 0 1]`.
    pub fn t() -> MatZ {
        MatZ::from_i64(1, 1, 0, 1)
    }

    /// The inversion generator `S = [0 -1; 1 0]`.
    pub fn s() -> MatZ {
        MatZ::from_i64(0, -1, 1, 0)
    }

    pub fn neg_identity() -> MatZ {
        MatZ::from_i64(-1, 0, 0, -1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, rhs: &MatZ) -> MatZ {
        MatZ {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn neg(&self) -> MatZ {
        MatZ {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    /// Whether the matrix lies in `Gamma0(N)`: determinant one and `N | c`.
    pub fn in_gamma0(&self, level: u64) -> bool {
        self.det().is_one() && self.c.mod_floor(&BigInt::from(level)).is_zero()
    }
}

impl fmt::Display for MatZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}]", self.a, self.b, self.c, self.d)
    }
}

/// An element `(A, eps)` of the double cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaElem {
    pub mat: MatZ,
    pub eps: i32,
}

impl MetaElem {
    /// The canonical lift `(A, +1)`.
    pub fn lift(mat: MatZ) -> MetaElem {
        MetaElem { mat, eps: 1 }
    }

    pub fn new(mat: MatZ, eps: i32) -> MetaElem {
        assert!(eps == 1 || eps == -1, "eps must be +-1");
        MetaElem { mat, eps }
    }
}

impl fmt::Display for MetaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:+})", self.mat, self.eps)
    }
}

fn default_ctx() -> &'static Ctx {
    static CTX: OnceLock<Ctx> = OnceLock::new();
    CTX.get_or_init(|| Ctx::new(60))
}

/// Rounds a fixed-point complex number known to be `+-1` to its sign.
fn round_sign(ctx: &Ctx, z: &Cx) -> i32 {
    const TOL: u32 = 20;
    assert!(
        ctx.abs_le_pow10(&z.im, TOL),
        "cocycle value has a non-negligible imaginary part"
    );
    let down = ctx.sub(&z.re, &ctx.from_i64(1));
    let up = ctx.add(&z.re, &ctx.from_i64(1));
    if ctx.abs_le_pow10(&down, TOL) {
        1
    } else if ctx.abs_le_pow10(&up, TOL) {
        -1
    } else {
        panic!("cocycle value is not close to +-1");
    }
}

/// The sign cocycle `sigma(A, B)` of the double cover, evaluated at
/// `tau = 2i`:
///
/// ```text
/// sigma = sqrt(c1 B(tau) + d1) sqrt(c2 tau + d2) / sqrt(c3 tau + d3)
/// ```
///
/// where `(c3, d3)` is the lower row of `AB` and every square root takes the
/// principal branch `-pi/2 < arg sqrt(z) <= pi/2`.
pub fn cocycle_sigma(a: &MatZ, b: &MatZ) -> i32 {
    cocycle_sigma_ctx(default_ctx(), a, b)
}

/// [`cocycle_sigma`] with an explicit precision context.
pub fn cocycle_sigma_ctx(ctx: &Ctx, a: &MatZ, b: &MatZ) -> i32 {
    assert!(a.det().is_positive() && b.det().is_positive());
    // tau = 2i. With integer entries, x tau + y is the complex (y, 2x).
    let lin = |x: &BigInt, y: &BigInt| Cx {
        re: ctx.from_bigint(y),
        im: ctx.from_bigint(&(x * 2)),
    };
    let b_num = lin(&b.a, &b.b);
    let b_den = lin(&b.c, &b.d);
    let btau = ctx.cdiv(&b_num, &b_den);
    let c1 = ctx.from_bigint(&a.c);
    let z1 = Cx {
        re: ctx.add(&ctx.mul(&btau.re, &c1), &ctx.from_bigint(&a.d)),
        im: ctx.mul(&btau.im, &c1),
    };
    let prod = a.mul(b);
    let z3 = lin(&prod.c, &prod.d);
    let num = ctx.cmul(&ctx.csqrt(&z1), &ctx.csqrt(&b_den));
    let delta = ctx.cdiv(&num, &ctx.csqrt(&z3));
    round_sign(ctx, &delta)
}

/// Composition in the double cover:
/// `(A, e1) (B, e2) = (AB, e1 e2 sigma(A, B))`.
pub fn meta_compose(x: &MetaElem, y: &MetaElem) -> MetaElem {
    MetaElem {
        mat: x.mat.mul(&y.mat),
        eps: x.eps * y.eps * cocycle_sigma(&x.mat, &y.mat),
    }
}

/// Inverse of a determinant-one element of the double cover.
pub fn meta_inverse(x: &MetaElem) -> MetaElem {
    assert!(x.mat.det().is_one(), "meta_inverse needs determinant one");
    let inv = MatZ {
        a: x.mat.d.clone(),
        b: -&x.mat.b,
        c: -&x.mat.c,
        d: x.mat.a.clone(),
    };
    let eps = x.eps * cocycle_sigma(&x.mat, &inv);
    MetaElem { mat: inv, eps }
}

/// Right coset representatives `(a, b; 0, d)` of the double coset attached to
/// `diag(m, l/m)` inside the level-`N` upper triangular set: `a d = l`,
/// `gcd(a, N) = 1`, `0 <= b < d` and `gcd(a, b, d) = m`, ordered
/// lexicographically by `(a, b)`.
pub fn coset_reps_doubledecomp(l: u64, level: u64, m: u64) -> Vec<MatZ> {
    assert!(l >= 1 && level >= 1 && m >= 1);
    let mut out = Vec::new();
    if l % (m * m) != 0 || m.gcd(&level) != 1 {
        return out;
    }
    for a in crate::arith::divisors(l) {
        if a.gcd(&level) != 1 {
            continue;
        }
        let d = l / a;
        for b in 0..d {
            if a.gcd(&b).gcd(&d) == m {
                out.push(MatZ::from_i64(a as i64, b as i64, 0, d as i64));
            }
        }
    }
    out
}

/// Decomposes an upper triangular matrix through the diagonal `diag(1, l)`:
/// returns `(g1, alpha, g2)` with `g1, g2` in the cover of `Gamma0(N)`,
/// `alpha = diag(1, a d)`, and `g1 * alpha * g2` equal, in the double cover,
/// to the canonical lift of `(a, b; 0, d)`.
///
/// Requires `a, d >= 1`, `gcd(a, N) = 1` and `gcd(a, b, d) = 1`. The choice
/// is deterministic: the smallest non-negative `x` with
/// `gcd(N d, -N b + a x) = 1`, then the Bezout solution with `y` of minimal
/// magnitude (ties resolved to `y > 0`).
pub fn decompose_ab0d(
    a: i64,
    b: i64,
    d: i64,
    level: u64,
) -> crate::Result<(MetaElem, MatZ, MetaElem)> {
    if a < 1 || d < 1 {
        return Err(EtaError::InvalidArgument(
            "decompose_ab0d needs a, d >= 1".into(),
        ));
    }
    let n = level as i64;
    if a.gcd(&n) != 1 {
        return Err(EtaError::InvalidArgument(
            "decompose_ab0d needs gcd(a, N) = 1".into(),
        ));
    }
    if a.gcd(&b).gcd(&d) != 1 {
        return Err(EtaError::InvalidArgument(
            "decompose_ab0d needs gcd(a, b, d) = 1".into(),
        ));
    }
    let nd = n * d;
    let mut x = 0i64;
    let e = loop {
        let e = -n * b + a * x;
        if e.gcd(&nd) == 1 {
            break e;
        }
        x += 1;
        assert!(x <= 24 * nd.abs() + 24, "no admissible shift found");
    };
    // Bezout: e y + N d z = 1 with |y| minimal, ties to positive y.
    let (_, y0, _) = extended_gcd(e, nd);
    let mut y = y0.mod_floor(&nd);
    if 2 * y > nd {
        y -= nd;
    }
    let z = (1 - e * y) / nd;
    debug_assert_eq!(e * y + nd * z, 1);
    let g1 = MatZ::from_i64(e, z, -nd, y);
    let alpha = MatZ::from_i64(1, 0, 0, a * d);
    let g2 = MatZ::from_i64(a * y, b * y - d * z, n, x);
    let first = meta_compose(&MetaElem::lift(g1.clone()), &MetaElem::lift(alpha.clone()));
    let total = meta_compose(&first, &MetaElem::lift(g2.clone()));
    debug_assert_eq!(total.mat, MatZ::from_i64(a, b, 0, d));
    // Put the correcting sign on g2 so that g1 * alpha * g2 is exactly the
    // canonical lift of (a, b; 0, d).
    Ok((
        MetaElem::lift(g1),
        alpha,
        MetaElem::new(g2, total.eps),
    ))
}

/// Extended Euclid: returns `(g, s, t)` with `s a + t b = g = gcd(a, b)`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = extended_gcd(b, a.rem_euclid(b));
        (g, t, s - (a.div_euclid(b)) * t)
    }
}

/// A pseudorandom word in the generators `[1 1; 0 1]`, `[1 0; N 1]` and `-I`
/// of `Gamma0(N)`, reproducible from the seed.
pub fn random_gamma0(level: u64, word_length: u32, seed: u64) -> MatZ {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = MatZ::identity();
    for _ in 0..word_length {
        let e = loop {
            let e = rng.gen_range(-3i64..=3);
            if e != 0 {
                break e;
            }
        };
        let g = if rng.gen_bool(0.5) {
            MatZ::from_i64(1, e, 0, 1)
        } else {
            MatZ::from_i64(1, 0, e * level as i64, 1)
        };
        acc = acc.mul(&g);
    }
    if rng.gen_bool(0.25) {
        acc = acc.neg();
    }
    debug_assert!(acc.in_gamma0(level));
    acc
}
