//! Expressing sieved eta-power expansions as finite sums of eta-quotients.
//!
//! Fix an integer `r` and a prime power `p^beta` with `24 | r (p^2 - 1)`.
//! Picking every `p^beta`-th coefficient out of the expansion of the `r`-th
//! power of the Euler product yields the series
//!
//! ```text
//!     F(q) = q^(p^ob r / 24) * sum_n P_r(p^beta n + A) q^n,
//! ```
//!
//! where `P_r(m)` is the coefficient of `q^m` in `prod_j (1 - q^j)^r`, the
//! shift is `A = r (p^(beta+ob) - 1) / 24`, and `ob` is the parity of
//! `beta`. This series is a weakly holomorphic modular form of weight `r/2`
//! on `Gamma0(p)`, living in the same space as the one-parameter family of
//! eta-quotients
//!
//! ```text
//!     G_y = eta^r(p^ob tau) * (eta(p tau) / eta(tau))^(24 y / gcd(12, p-1)),
//! ```
//!
//! whose leading exponents form an arithmetic progression of step
//! `pi = (p-1)/gcd(12, p-1)`. Whether `F` is a finite linear combination of
//! the `G_y` is decidable by a bounded computation: the first nonzero
//! coefficient of `F` must sit on the step-`pi` sub-lattice, and a
//! triangular linear system over a window determined by a valence bound
//! must close. This module performs that decision, solves for the exact
//! rational coefficients, re-verifies the resulting identity to any
//! requested depth, and renders it as text, JSON, or LaTeX.

use std::fmt;
use std::fmt::Write as _;

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::factorize;
use crate::qseries::{
    eta_power_coeffs, eta_quotient_series, series_equal_certified, valence_bound24, EtaExponents,
    QExp24,
};
use crate::EtaError;

/// Ceiling of `a / b` for `b > 0`.
fn ceil_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b) + (a.rem_euclid(b) != 0) as i64
}

fn ceil_rat(x: &BigRational) -> i64 {
    x.ceil()
        .to_integer()
        .to_i64()
        .expect("ceiling fits in an i64")
}

/// The data of a sieving problem: read off every `p^beta`-th coefficient of
/// the `r`-th Euler-product power and ask for the result as a combination
/// of level-`p` eta-quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpressProblem {
    r: i64,
    p: u64,
    beta: u32,
}

impl ExpressProblem {
    /// Requires `p` prime, `beta >= 1` and `24 | r (p^2 - 1)`; the last
    /// condition is exactly when the sieved series transforms with an
    /// eta-quotient multiplier on `Gamma0(p)`.
    pub fn new(r: i64, p: u64, beta: u32) -> crate::Result<ExpressProblem> {
        if beta == 0 {
            return Err(EtaError::InvalidArgument(
                "the exponent beta must be at least 1".into(),
            ));
        }
        if p < 2 || factorize(p) != vec![(p, 1)] {
            return Err(EtaError::InvalidArgument(format!("{p} is not prime")));
        }
        if r.abs() > 1 << 20 {
            return Err(EtaError::Resource(format!(
                "eta-power exponent {r} exceeds the supported range"
            )));
        }
        let p2 = p as i128 * p as i128;
        if (r as i128 * (p2 - 1)).rem_euclid(24) != 0 {
            return Err(EtaError::InvalidArgument(format!(
                "24 must divide r (p^2 - 1), but r = {r} and p = {p} leave \
                 remainder {}",
                (r as i128 * (p2 - 1)).rem_euclid(24)
            )));
        }
        match (p as i128).checked_pow(beta + 1) {
            Some(v) if v <= 1 << 40 => {}
            _ => {
                return Err(EtaError::Resource(format!(
                    "{p}^{} exceeds the supported table range",
                    beta + 1
                )));
            }
        }
        Ok(ExpressProblem { r, p, beta })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    /// The parity bit of `beta`; it decides which factor of the blocks
    /// carries the base exponent `r`.
    pub fn ob(&self) -> u32 {
        self.beta % 2
    }

    fn gcd12(&self) -> i64 {
        12i64.gcd(&(self.p as i64 - 1))
    }

    /// The step `pi = (p-1)/gcd(12, p-1)` of the progression formed by the
    /// leading exponents of the blocks.
    pub fn pi(&self) -> i64 {
        (self.p as i64 - 1) / self.gcd12()
    }

    /// The multiplier `24 / gcd(12, p-1)` turning the block index `y` into
    /// an eta exponent.
    pub fn y_factor(&self) -> i64 {
        24 / self.gcd12()
    }

    /// `p^beta` (guarded against overflow by the constructor).
    pub fn p_pow_beta(&self) -> i64 {
        (self.p as i64).pow(self.beta)
    }

    fn p_pow_ob(&self) -> i64 {
        (self.p as i64).pow(self.ob())
    }

    /// The shift `A = r (p^(beta+ob) - 1) / 24` in the sieved coefficient
    /// `P_r(p^beta n + A)`.
    pub fn shift(&self) -> i64 {
        let pw = (self.p as i128).pow(self.beta + self.ob());
        i64::try_from(self.r as i128 * (pw - 1) / 24)
            .expect("shift fits in an i64 by the constructor bounds")
    }

    /// The smallest index `n` with `p^beta n + A >= 0`; the sieved series
    /// can carry nonzero terms from here on (this is negative when `A > 0`).
    pub fn n_min(&self) -> i64 {
        ceil_div(-self.shift(), self.p_pow_beta())
    }

    /// 24 times the leading exponent of the sieved series as produced by
    /// [`f_series`].
    pub fn offset24(&self) -> i64 {
        self.p_pow_ob() * self.r + 24 * self.n_min()
    }

    /// The eta-quotient block `G_y` on `Gamma0(p)`. For odd `beta` it is
    /// `eta^(-Y)(tau) eta^(r+Y)(p tau)` with `Y = y_factor * y`; for even
    /// `beta` the exponent pair is `(r - Y, Y)` instead.
    pub fn block(&self, y: i64) -> EtaExponents {
        let yy = self.y_factor() * y;
        let (e1, ep) = if self.ob() == 1 {
            (-yy, self.r + yy)
        } else {
            (self.r - yy, yy)
        };
        let ex = EtaExponents::new(self.p, [(1, e1), (self.p, ep)])
            .expect("block divisors match the level");
        debug_assert_eq!(
            ex.offset24(),
            self.p_pow_ob() * self.r + 24 * self.pi() * y
        );
        ex
    }
}

impl fmt::Display for ExpressProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "P_{}({}^{} n + {})",
            self.r,
            self.p,
            self.beta,
            self.shift()
        )
    }
}

/// The truncated sieved series `q^(p^ob r/24) sum_n P_r(p^beta n + A) q^n`,
/// reindexed to start at the first index whose argument is nonnegative.
/// Produces `nmax + 1` coefficients.
pub fn f_series(prob: &ExpressProblem, nmax: usize) -> QExp24 {
    let pb = prob.p_pow_beta();
    let a = prob.shift();
    let n0 = prob.n_min();
    let top = pb * (n0 + nmax as i64) + a;
    let tab = eta_power_coeffs(prob.r(), top as usize + 1);
    let coeffs = (0..=nmax as i64)
        .map(|j| tab[(pb * (n0 + j) + a) as usize].clone())
        .collect();
    QExp24::from_bigint_coeffs(prob.offset24(), coeffs)
}

fn sigma_table(nmax: usize) -> Vec<i64> {
    let mut sig = vec![0i64; nmax + 1];
    for d in 1..=nmax {
        let mut m = d;
        while m <= nmax {
            sig[m] += d as i64;
            m += d;
        }
    }
    sig
}

/// Coefficients `a_0, ..., a_nmax` of the normalized block,
/// `G_y = q^(ord) sum_n a_n q^n`, computed through the logarithmic
/// derivative of the eta product rather than by expanding it:
/// `n a_n = -sum_(k=1..n) w_k a_(n-k)` with
/// `w_k = r p^ob sigma(k/p^ob) + (24 y / gcd(12, p-1)) (p sigma(k/p) - sigma(k))`
/// and `sigma(x) = 0` unless `x` is a positive integer.
pub fn a_coeff(prob: &ExpressProblem, y: i64, nmax: usize) -> Vec<BigRational> {
    let sig = sigma_table(nmax);
    let p = prob.p() as i64;
    let pob = prob.p_pow_ob();
    let yf = prob.y_factor() * y;
    let r = prob.r();
    let sig_at = |k: i64, m: i64| -> i64 {
        if k % m == 0 {
            sig[(k / m) as usize]
        } else {
            0
        }
    };
    let mut a = Vec::with_capacity(nmax + 1);
    a.push(BigRational::one());
    for n in 1..=nmax as i64 {
        let mut acc = BigRational::zero();
        for k in 1..=n {
            let w = r as i128 * pob as i128 * sig_at(k, pob) as i128
                + yf as i128 * (p as i128 * sig_at(k, p) as i128 - sig[k as usize] as i128);
            if w != 0 {
                acc += BigRational::from(BigInt::from(w)) * &a[(n - k) as usize];
            }
        }
        a.push(-acc / BigRational::from(BigInt::from(n)));
    }
    a
}

/// The exact threshold `X`: any identity needs blocks up to some
/// `y1 >= X`, by comparing orders at the two cusps of `Gamma0(p)`.
fn x_bound(prob: &ExpressProblem) -> BigRational {
    let p = BigInt::from(prob.p());
    let g = BigInt::from(prob.gcd12());
    if prob.r() >= 0 {
        let num = g * BigInt::from(prob.r()) * (p.pow(prob.beta() - prob.ob()) - 1);
        let den = BigInt::from(24) * p.pow(prob.beta() - 1) * (&p - 1);
        BigRational::new(num, den)
    } else {
        let num = g * BigInt::from(-prob.r()) * (p.pow(prob.beta() + 1) - p.pow(1 - prob.ob()));
        let den = BigInt::from(24) * (&p - 1);
        BigRational::new(num, den)
    }
}

/// The first and last block indices of a potential identity.
///
/// `y0` is the smallest `y` with `P_r(A + p^beta pi y) != 0`, scanning a
/// window that extends 24 steps past every other bound in play; `None`
/// means everything on the window vanished. `y1` is the larger of `y0` and
/// the valence threshold `X`, advanced once more when `X` lands exactly on
/// `y0` (so the window of the matching test is never degenerate for a
/// nonconstant series).
pub fn thresholds(prob: &ExpressProblem) -> (Option<i64>, i64) {
    let pb = prob.p_pow_beta();
    let pi = prob.pi();
    let a = prob.shift();
    let step = pb * pi;
    let x = x_bound(prob);
    let xceil = ceil_rat(&x);
    let y_start = ceil_div(-a, step);
    let y_end = xceil.max(y_start) + 24;
    let tab = eta_power_coeffs(prob.r(), (a + step * y_end) as usize + 1);
    let y0 = (y_start..=y_end).find(|&y| !tab[(a + step * y) as usize].is_zero());
    let y1 = match y0 {
        Some(y0) => {
            let mut y1 = y0.max(xceil);
            if prob.r() != 0 && BigRational::from(BigInt::from(y0)) == x {
                y1 += 1;
            }
            y1
        }
        None => xceil,
    };
    (y0, y1)
}

/// The solved triangular system: block coefficients, their expansions, and
/// the sieved-coefficient table backing them.
struct System {
    y0: i64,
    span: usize,
    cs: Vec<BigRational>,
    avecs: Vec<Vec<BigRational>>,
    ptab: Vec<BigInt>,
}

fn solve_system(prob: &ExpressProblem) -> Option<System> {
    let (y0, y1) = match thresholds(prob) {
        (Some(y0), y1) => (y0, y1),
        (None, _) => return None,
    };
    let pb = prob.p_pow_beta();
    let pi = prob.pi();
    let a = prob.shift();
    let span = (pi * (y1 - y0)) as usize;
    let top = a + pb * pi * y1;
    let ptab = eta_power_coeffs(prob.r(), top as usize + 1);
    let avecs: Vec<Vec<BigRational>> = (y0..=y1).map(|y| a_coeff(prob, y, span)).collect();
    let mut cs: Vec<BigRational> = Vec::with_capacity((y1 - y0 + 1) as usize);
    for (i, y) in (y0..=y1).enumerate() {
        let mut v = BigRational::from(ptab[(a + pb * pi * y) as usize].clone());
        for j in 0..i {
            v -= &cs[j] * &avecs[j][pi as usize * (i - j)];
        }
        cs.push(v);
    }
    Some(System {
        y0,
        span,
        cs,
        avecs,
        ptab,
    })
}

/// The coefficients `c_y` for `y0 <= y <= y1`, solved from the triangular
/// system that matches the sieved series against the blocks term by term.
/// Zero entries are kept; errors when the whole search window vanishes.
pub fn c_coeffs(prob: &ExpressProblem) -> crate::Result<Vec<(i64, BigRational)>> {
    match solve_system(prob) {
        Some(sys) => Ok((sys.y0..).zip(sys.cs).collect()),
        None => Err(EtaError::InvalidArgument(
            "every sieved coefficient on the search window vanishes; \
             there is nothing to express"
                .into(),
        )),
    }
}

/// Verdict of the finite expressibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    /// The sieved series equals the block combination given by the nonzero
    /// entries of [`c_coeffs`].
    Holds,
    /// Not expressible. The witness is the first index carrying a nonzero
    /// sieved coefficient when that index is off the step-`pi` sub-lattice,
    /// or else the index of the first matching equation that breaks.
    Fails(i64),
    /// No nonzero sieved coefficient was found on the search window.
    Vacuous,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckOutcome::Holds => write!(f, "holds"),
            CheckOutcome::Fails(w) => write!(f, "fails (witness index {w})"),
            CheckOutcome::Vacuous => write!(f, "vacuous (no nonzero coefficient found)"),
        }
    }
}

/// Decides expressibility by a finite computation.
///
/// First the support test: the smallest index `t` with
/// `P_r(p^beta t + A) != 0` must be divisible by `pi`, since the block
/// orders only reach the step-`pi` sub-lattice. Then the matching test:
/// the triangular solution must satisfy the matching equations through
/// `n = pi (y1 - y0)`; by a valence bound on `Gamma0(p)`, matching on that
/// finite range forces equality of the full series.
pub fn check_condition(prob: &ExpressProblem) -> crate::Result<CheckOutcome> {
    let pb = prob.p_pow_beta();
    let pi = prob.pi();
    let a = prob.shift();
    let start = prob.n_min();
    let end = (pi * (ceil_rat(&x_bound(prob)) + 24)).max(start);
    let tab = eta_power_coeffs(prob.r(), (a + pb * end) as usize + 1);
    let first = (start..=end).find(|&t| !tab[(a + pb * t) as usize].is_zero());
    let Some(t0) = first else {
        return Ok(CheckOutcome::Vacuous);
    };
    if t0.rem_euclid(pi) != 0 {
        return Ok(CheckOutcome::Fails(t0));
    }
    let sys = solve_system(prob).expect("a nonzero coefficient exists on the window");
    debug_assert_eq!(sys.y0, t0 / pi);
    for n in 0..=sys.span as i64 {
        let lhs = BigRational::from(sys.ptab[(a + pb * (pi * sys.y0 + n)) as usize].clone());
        let mut rhs = BigRational::zero();
        for j in 0..=(n / pi) as usize {
            rhs += &sys.cs[j] * &sys.avecs[j][(n - pi * j as i64) as usize];
        }
        if lhs != rhs {
            return Ok(CheckOutcome::Fails(n));
        }
    }
    Ok(CheckOutcome::Holds)
}

/// An identity expressing the sieved series as a finite combination of
/// eta-quotient blocks.
#[derive(Clone, Debug)]
pub struct Identity {
    pub problem: ExpressProblem,
    /// The nonzero coefficients `(y, c_y)` in increasing `y`.
    pub terms: Vec<(i64, BigRational)>,
    /// 24 times the largest exponent through which both sides have been
    /// compared coefficient by coefficient; 0 before any verification.
    pub verified_to: i64,
    pub status: CheckOutcome,
}

/// Solves for the identity; requires [`check_condition`] to hold.
pub fn build_identity(prob: &ExpressProblem) -> crate::Result<Identity> {
    match check_condition(prob)? {
        CheckOutcome::Holds => {}
        CheckOutcome::Fails(w) => {
            return Err(EtaError::VerificationFailed(format!(
                "the sieved series {prob} is not a combination of the \
                 level-{} blocks (first failure at index {w})",
                prob.p()
            )));
        }
        CheckOutcome::Vacuous => {
            return Err(EtaError::InvalidArgument(format!(
                "every coefficient of {prob} on the search window vanishes; \
                 there is nothing to express"
            )));
        }
    }
    let terms: Vec<(i64, BigRational)> = c_coeffs(prob)?
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Ok(Identity {
        problem: prob.clone(),
        terms,
        verified_to: 0,
        status: CheckOutcome::Holds,
    })
}

/// Independently re-verifies an identity by expanding both sides and
/// certifying equality as modular forms of weight `r/2` on `Gamma0(p)`.
///
/// The comparison depth is the valence bound plus the pole budget implied
/// by the worst order at the finite cusp, plus `extra` more lattice steps
/// if requested. Returns `Ok(false)` when some coefficient genuinely
/// differs; on success, records the certified depth in `verified_to`.
pub fn verify_identity(id: &mut Identity, extra: i64) -> crate::Result<bool> {
    let prob = &id.problem;
    let p = prob.p();
    let r = prob.r();
    let pb = prob.p_pow_beta();
    // Order of the sieved series at the cusp with denominator 1: at least
    // r/(24 p^beta) for r >= 0, and at least r p^beta / 24 otherwise.
    let mut worst = if r >= 0 {
        BigRational::new(BigInt::from(r), BigInt::from(24 * pb))
    } else {
        BigRational::new(BigInt::from(r) * BigInt::from(pb), BigInt::from(24))
    };
    for (y, _) in &id.terms {
        let o = prob.block(*y).ord_at_cusp(1);
        if o < worst {
            worst = o;
        }
    }
    let mut budget24 = 24 * extra.max(0);
    if worst.is_negative() {
        budget24 += ceil_rat(&(-worst * BigRational::from(BigInt::from(24 * p as i64))));
    }
    let depth = valence_bound24(p, r) + budget24;
    let f_off = prob.offset24();
    let f_len = ((depth - f_off).div_euclid(24) + 2).max(1) as usize;
    let f = f_series(prob, f_len - 1);
    let mut rhs = QExp24::from_bigint_coeffs(f_off, vec![BigInt::zero(); f_len]);
    for (y, c) in &id.terms {
        let ex = prob.block(*y);
        let len = ((depth - ex.offset24()).div_euclid(24) + 2).max(1) as usize;
        rhs = rhs.add(&eta_quotient_series(&ex, len).scale(c))?;
    }
    match series_equal_certified(&f, &rhs, p, r, budget24) {
        Ok(()) => {
            id.verified_to = depth;
            Ok(true)
        }
        Err(EtaError::VerificationFailed(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Serializes an identity as JSON, with the exact rational coefficients
/// carried as decimal strings.
pub fn identity_to_json(id: &Identity) -> String {
    let terms: Vec<serde_json::Value> = id
        .terms
        .iter()
        .map(|(y, c)| {
            serde_json::json!({
                "y": y,
                "c_num": c.numer().to_string(),
                "c_den": c.denom().to_string(),
            })
        })
        .collect();
    serde_json::json!({
        "r": id.problem.r(),
        "p": id.problem.p(),
        "beta": id.problem.beta(),
        "terms": terms,
        "verified_to": id.verified_to,
    })
    .to_string()
}

/// A positive integer in factored LaTeX form, e.g. `2^{2} \cdot 3 \cdot 13`.
/// Factors above 10^6 that resist trial division are printed unfactored.
fn latex_factored(v: &BigInt) -> String {
    debug_assert!(v.is_positive());
    if v.is_one() {
        return "1".into();
    }
    let mut rest = v.clone();
    let mut parts: Vec<String> = Vec::new();
    let limit = BigInt::from(1_000_000u64);
    let mut d = BigInt::from(2u32);
    while &d * &d <= rest && d <= limit {
        let mut e = 0u32;
        while (&rest % &d).is_zero() {
            rest /= &d;
            e += 1;
        }
        if e == 1 {
            parts.push(format!("{d}"));
        } else if e > 1 {
            parts.push(format!("{d}^{{{e}}}"));
        }
        d += if d == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if !rest.is_one() {
        parts.push(format!("{rest}"));
    }
    parts.join(" \\cdot ")
}

pub(crate) fn eta_latex(ex: &EtaExponents) -> String {
    let mut s = String::new();
    for (&n, &e) in ex.exponents() {
        let _ = write!(s, "\\eta^{{{e}}}");
        if n == 1 {
            s.push_str("(\\tau)");
        } else {
            let _ = write!(s, "({n}\\tau)");
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// Renders an identity as a LaTeX equation. The left side is reindexed to
/// start at the first nonzero coefficient; integer constants appear in
/// factored form.
pub fn identity_to_latex(id: &Identity) -> String {
    let prob = &id.problem;
    let pb = prob.p_pow_beta();
    // Start the display at the first nonzero coefficient, which for a
    // solved identity sits at fine index pi * y0.
    let t0 = match id.terms.first() {
        Some((y0, _)) => prob.pi() * y0,
        None => prob.n_min(),
    };
    let arg0 = prob.shift() + pb * t0;
    let off = (prob.p_pow_ob()) * prob.r() + 24 * t0;
    let mut s = String::new();
    if off == 24 {
        s.push('q');
    } else if off != 0 {
        let g = off.gcd(&24);
        let (num, den) = (off / g, 24 / g);
        if den == 1 {
            let _ = write!(s, "q^{{{num}}}");
        } else {
            let _ = write!(s, "q^{{{num}/{den}}}");
        }
    }
    let _ = write!(s, "\\sum_{{n \\ge 0}} P_{{{}}}\\left(", prob.r());
    let _ = write!(s, "{}^{{{}}} n", prob.p(), prob.beta());
    if arg0 != 0 {
        let _ = write!(s, " + {arg0}");
    }
    s.push_str("\\right) q^{n} = ");
    if id.terms.is_empty() {
        s.push('0');
        return s;
    }
    for (i, (y, c)) in id.terms.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        let block = eta_latex(&prob.block(*y));
        let coeff = if mag.is_one() {
            String::new()
        } else if mag.denom().is_one() {
            latex_factored(mag.numer())
        } else {
            format!(
                "\\frac{{{}}}{{{}}}",
                latex_factored(mag.numer()),
                latex_factored(mag.denom())
            )
        };
        if coeff.is_empty() {
            s.push_str(&block);
        } else if block == "1" {
            s.push_str(&coeff);
        } else {
            let _ = write!(s, "{coeff}{block}");
        }
    }
    s
}

/// Renders an identity as a plain-text equation mirroring the LaTeX form.
pub fn identity_to_text(id: &Identity) -> String {
    let prob = &id.problem;
    let pb = prob.p_pow_beta();
    let t0 = match id.terms.first() {
        Some((y0, _)) => prob.pi() * y0,
        None => prob.n_min(),
    };
    let arg0 = prob.shift() + pb * t0;
    let off = prob.p_pow_ob() * prob.r() + 24 * t0;
    let mut s = String::new();
    if off != 0 {
        let g = off.gcd(&24);
        let (num, den) = (off / g, 24 / g);
        if den == 1 {
            let _ = write!(s, "q^{num} ");
        } else {
            let _ = write!(s, "q^({num}/{den}) ");
        }
    }
    let _ = write!(s, "sum P_{}({}^{} n", prob.r(), prob.p(), prob.beta());
    if arg0 != 0 {
        let _ = write!(s, " + {arg0}");
    }
    s.push_str(") q^n = ");
    if id.terms.is_empty() {
        s.push('0');
        return s;
    }
    for (i, (y, c)) in id.terms.iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        if !mag.is_one() {
            let _ = write!(s, "{mag} * ");
        }
        let _ = write!(s, "[{}]", prob.block(*y));
    }
    s
}
