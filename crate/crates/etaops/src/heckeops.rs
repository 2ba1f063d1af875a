//! Double coset (Hecke-type) operators `T_l` acting on q-expansions.
//!
//! An operator is described by an [`OperatorSpec`]: a level `N`, an index
//! `l`, and a compatible pair of eta-characters (source and target). Three
//! computation paths are provided.
//!
//! * [`tl_rad_case`]: when every prime of `l` divides `N`, the coset
//!   representatives are the translations `(1, b; 0, l)` alone and the
//!   operator reduces to an exact coefficient filter: it keeps the
//!   coefficients whose exponent numerator is `l * t2 (mod 24 l)`, where
//!   `e(t2/24)` is the target character's value at the lifted translation,
//!   and divides the exponent by `l`.
//! * [`tl_coprime_prime`]: for prime `l` coprime to `N` (integral weight),
//!   the image is the filter part plus a stretch part `f(l tau)` weighted by
//!   the inverse character value on the coset of `(l, 0; 0, 1)`; the weight
//!   is evaluated exactly through the metaplectic decomposition.
//! * [`tl_level1_etapower`]: the full divisor sum for `eta^r` at level one,
//!   evaluated as an exact-rounded fixed-point sum of root-of-unity phases
//!   against the coefficients of `prod (1 - q^j)^r`. Every rounded
//!   coefficient is certified against an a priori denominator bound; failure
//!   to certify is an error, never a silent approximation.
//!
//! Independently of the transform path, [`r_even`] and [`r_odd`] evaluate
//! the closed-form divisor sums for the coefficients of `l^(r/4) T_l eta^r`
//! (Moebius sums for even `r`, Gauss-sum data for odd `r`, where `l` must be
//! a perfect square). [`newman_check`] compares the closed forms against the
//! eigenform prediction `R(n) = R(r) P_r((n - r)/24)` and reports the first
//! discrepancy, if any. [`tl_order_bound`] bounds cusp orders of the image
//! from cusp orders of the input.

use crate::arith::{divisors, factorize, kronecker, kronecker_big, moebius, rad_parts, Mu24};
use crate::characters::{compatible_closed_form, v1v2_on_coset, EtaDirichletChar};
use crate::fixedpoint::{Ctx, Cx};
use crate::metaplectic::MatZ;
use crate::qseries::{eta_power_coeffs, QExp24};
use crate::EtaError;
use num::bigint::BigInt;
use num::integer::{Integer, Roots};
use num::rational::BigRational;
use num::traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// An exact scalar of the form `mantissa * base^exponent` with a rational
/// exponent. Operator prefactors such as `l^(1 - k/2)` are half- or
/// quarter-integral powers of `l`; keeping the power symbolic keeps every
/// series coefficient rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledConstant {
    base: u64,
    mantissa: BigRational,
    exponent: BigRational,
}

impl ScaledConstant {
    pub fn new(base: u64, mantissa: BigRational, exponent: BigRational) -> ScaledConstant {
        assert!(base >= 1, "the base of a scaled constant must be positive");
        ScaledConstant {
            base,
            mantissa,
            exponent,
        }
    }

    /// The pure power `base^exponent`.
    pub fn power(base: u64, exponent: BigRational) -> ScaledConstant {
        ScaledConstant::new(base, BigRational::one(), exponent)
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn mantissa(&self) -> &BigRational {
        &self.mantissa
    }

    pub fn exponent(&self) -> &BigRational {
        &self.exponent
    }

    /// Multiplies the mantissa by an exact rational factor.
    pub fn scaled(&self, s: &BigRational) -> ScaledConstant {
        ScaledConstant::new(self.base, &self.mantissa * s, self.exponent.clone())
    }

    /// The exact rational value, when the power of the base is rational:
    /// either the exponent is an integer, or the base is a perfect power of
    /// the exponent's denominator.
    pub fn exact_rational(&self) -> Option<BigRational> {
        if self.mantissa.is_zero() {
            return Some(BigRational::zero());
        }
        if self.base == 1 {
            return Some(self.mantissa.clone());
        }
        let e = self.exponent.numer().to_i64()?;
        let d = self.exponent.denom().to_u32()?;
        if d == 1 {
            return Some(&self.mantissa * pow_rational(self.base, e));
        }
        let root = self.base.nth_root(d);
        if root.pow(d) == self.base {
            Some(&self.mantissa * pow_rational(root, e))
        } else {
            None
        }
    }
}

impl fmt::Display for ScaledConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent.is_zero() {
            return write!(f, "{}", self.mantissa);
        }
        if self.mantissa.is_one() {
            write!(f, "{}^({})", self.base, self.exponent)
        } else {
            write!(f, "{} * {}^({})", self.mantissa, self.base, self.exponent)
        }
    }
}

/// `base^e` as an exact rational (negative exponents give reciprocals).
fn pow_rational(base: u64, e: i64) -> BigRational {
    let p = BigInt::from(base).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// A validated double coset operator: level, index and a compatible pair of
/// eta-characters of equal weight. Construction fails unless the closed-form
/// compatibility test accepts the pair at index `l`, so a value of this type
/// certifies that `T_l` maps forms with the source character to forms with
/// the target character.
#[derive(Clone, Debug)]
pub struct OperatorSpec {
    level: u64,
    l: u64,
    twice_weight: i64,
    source: EtaDirichletChar,
    target: EtaDirichletChar,
}

impl OperatorSpec {
    pub fn new(
        level: u64,
        l: u64,
        source: EtaDirichletChar,
        target: EtaDirichletChar,
    ) -> crate::Result<OperatorSpec> {
        if l == 0 {
            return Err(EtaError::InvalidArgument("the index l must be positive".into()));
        }
        if source.level() != level || target.level() != level {
            return Err(EtaError::InvalidArgument(format!(
                "character levels {} and {} must both equal the operator level {level}",
                source.level(),
                target.level()
            )));
        }
        let twice_weight = source.exponents().twice_weight();
        if target.exponents().twice_weight() != twice_weight {
            return Err(EtaError::InvalidArgument(format!(
                "source weight {}/2 differs from target weight {}/2",
                twice_weight,
                target.exponents().twice_weight()
            )));
        }
        let ok = compatible_closed_form(
            level,
            source.chi(),
            source.exponents(),
            target.chi(),
            target.exponents(),
            l,
        )?;
        if !ok {
            return Err(EtaError::InvalidArgument(format!(
                "the characters are not compatible at index l = {l}"
            )));
        }
        Ok(OperatorSpec {
            level,
            l,
            twice_weight,
            source,
            target,
        })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    /// Twice the weight `k` (integral for even values, half-integral
    /// otherwise).
    pub fn twice_weight(&self) -> i64 {
        self.twice_weight
    }

    pub fn weight(&self) -> BigRational {
        BigRational::new(BigInt::from(self.twice_weight), BigInt::from(2))
    }

    pub fn source(&self) -> &EtaDirichletChar {
        &self.source
    }

    pub fn target(&self) -> &EtaDirichletChar {
        &self.target
    }

    /// The constant `l^(1 - k/2)` multiplying the series returned by the
    /// transform paths: `T_l f = prefactor * series`.
    pub fn prefactor(&self) -> ScaledConstant {
        ScaledConstant::power(
            self.l,
            BigRational::new(BigInt::from(4 - self.twice_weight), BigInt::from(4)),
        )
    }
}

/// Checks that the series lies on the exponent lattice of the operator's
/// source character.
fn check_source_lattice(op: &OperatorSpec, f: &QExp24) -> crate::Result<()> {
    let t1 = op.source.value_at_t().exponent() as i64;
    if (f.offset24 - t1).rem_euclid(24) != 0 {
        return Err(EtaError::InvalidArgument(format!(
            "series offset {} is not congruent to the source exponent {} mod 24",
            f.offset24, t1
        )));
    }
    Ok(())
}

/// The smallest numerator `>= from` congruent to `l * t2` modulo `24 l`.
fn align_select(from: i64, l: i64, t2: i64) -> i64 {
    from + (l * t2 - from).rem_euclid(24 * l)
}

/// Applies `T_l` when every prime of `l` divides the level.
///
/// In this case the only coset representatives are `(1, b; 0, l)` for
/// `0 <= b < l`, and the geometric sum over `b` keeps exactly the
/// coefficients with numerator `l * t2 (mod 24 l)`, rescaling their exponent
/// by `1/l`. Returns the sieved series together with the prefactor
/// `l^(1 - k/2)`, so that `T_l f = prefactor * series`.
pub fn tl_rad_case(op: &OperatorSpec, f: &QExp24) -> crate::Result<(QExp24, ScaledConstant)> {
    for (p, _) in factorize(op.l) {
        if op.level % p != 0 {
            return Err(EtaError::InvalidArgument(format!(
                "prime {p} divides l = {} but not the level {}; the sieve path needs rad(l) | rad(N)",
                op.l, op.level
            )));
        }
    }
    check_source_lattice(op, f)?;
    let li = op.l as i64;
    let t2 = op.target.value_at_t().exponent() as i64;
    let m0 = align_select(f.offset24, li, t2);
    let mut coeffs = Vec::new();
    let mut m = m0;
    while m <= f.known_through24() {
        coeffs.push(f.coeff_at_num24(m));
        m += 24 * li;
    }
    Ok((QExp24::from_coeffs(m0 / li, coeffs), op.prefactor()))
}

/// Applies `T_l` for prime `l` coprime to the level, in integral weight.
///
/// The image is `prefactor * (sieve + w * l^(k-1) * stretch)` where the
/// sieve part is as in [`tl_rad_case`], the stretch part maps a coefficient
/// at numerator `m` to numerator `l m`, and `w` is the inverse character
/// weight of the coset of `(l, 0; 0, 1)`, evaluated exactly. The first
/// `out_terms` coefficients of the image are produced; the input must be
/// known far enough (through numerator `l * last_output_numerator`).
pub fn tl_coprime_prime(
    op: &OperatorSpec,
    f: &QExp24,
    out_terms: usize,
) -> crate::Result<(QExp24, ScaledConstant)> {
    let l = op.l;
    let fac = factorize(l);
    if fac.len() != 1 || fac[0].1 != 1 {
        return Err(EtaError::InvalidArgument(format!(
            "l = {l} must be prime for the coprime path"
        )));
    }
    if l.gcd(&op.level) != 1 {
        return Err(EtaError::InvalidArgument(format!(
            "l = {l} must be coprime to the level {}",
            op.level
        )));
    }
    if op.twice_weight.rem_euclid(2) != 0 {
        return Err(EtaError::Unsupported(
            "half-integral weight: the stretch factor l^(k-1) is irrational".into(),
        ));
    }
    check_source_lattice(op, f)?;
    let w = v1v2_on_coset(
        op.level,
        &op.source,
        &op.target,
        l,
        &MatZ::from_i64(l as i64, 0, 0, 1),
    )?;
    let w = w.as_sign().ok_or_else(|| {
        EtaError::Unsupported("the stretch coset weight is not a sign".into())
    })?;
    let k = op.twice_weight / 2;
    let stretch_scale = BigRational::from(BigInt::from(w)) * pow_rational(l, k - 1);
    let li = l as i64;
    let t2 = op.target.value_at_t().exponent() as i64;
    let sieve_start = align_select(f.offset24, li, t2) / li;
    let stretch_start = li * f.offset24;
    if (sieve_start - stretch_start).rem_euclid(24) != 0 {
        return Err(EtaError::InvalidArgument(
            "sieve and stretch terms lie on different exponent lattices".into(),
        ));
    }
    let nu0 = sieve_start.min(stretch_start);
    let mut coeffs = Vec::with_capacity(out_terms);
    for j in 0..out_terms {
        let nu = nu0 + 24 * j as i64;
        let fine = nu * li;
        if fine > f.known_through24() {
            return Err(EtaError::InvalidArgument(format!(
                "series known through numerator {}, but output coefficient {j} needs numerator {fine}",
                f.known_through24()
            )));
        }
        let mut c = f.coeff_at_num24(fine);
        if nu % li == 0 {
            c += f.coeff_at_num24(nu / li) * &stretch_scale;
        }
        coeffs.push(c);
    }
    Ok((QExp24::from_coeffs(nu0, coeffs), op.prefactor()))
}

/// Per-divisor data for the level-one divisor sum: the scalar
/// `a^(r/2) e(-r(d-1)/8)`, the table of `24 a l`-th roots of unity, and a
/// cache of the inner sums over `b` keyed by the phase class.
struct DivisorData {
    a: u64,
    d: u64,
    g: u64,
    prefac: Cx,
    roots: Vec<Cx>,
    bsums: BTreeMap<i64, Cx>,
}

/// Numeric evaluator for the coefficients of `l^(r/4) T_l eta^r` at level
/// one, on the fine exponent lattice (numerator units of `1/(24 l)`).
struct Level1Transform {
    ctx: Ctx,
    r: i64,
    l: u64,
    ptab: Vec<BigInt>,
    dens: Vec<DivisorData>,
}

impl Level1Transform {
    /// Prepares tables good for any fine numerator up to `max_fine`. The
    /// working precision is sized from the largest table entry so that the
    /// absolute error stays far below the certification tolerance.
    fn new(r: i64, l: u64, max_fine: i64) -> Level1Transform {
        let klim = ((max_fine as i128 - r as i128).max(0) / 24) as usize + 1;
        let ptab = eta_power_coeffs(r, klim);
        let bits = ptab.iter().map(|c| c.bits()).max().unwrap_or(1);
        let digits = 100 + (bits as u32 * 302) / 1000;
        let ctx = Ctx::new(digits);
        let mut dens = Vec::new();
        for a in divisors(l) {
            let d = l / a;
            let g = a.gcd(&d);
            let order = 24 * a as i64 * l as i64;
            let base = ctx.e_frac(&BigRational::new(BigInt::one(), BigInt::from(order)));
            let mut roots = Vec::with_capacity(order as usize);
            roots.push(ctx.cone());
            for j in 1..order as usize {
                let next = ctx.cmul(&roots[j - 1], &base);
                roots.push(next);
            }
            // a^(r/2): exact for even r, via one square root for odd r.
            let whole = pow_rational(a, r.div_euclid(2));
            let mut scalar = ctx.from_ratio(&whole);
            if r.rem_euclid(2) == 1 {
                scalar = ctx.mul(&scalar, &ctx.sqrt(&ctx.from_i64(a as i64)));
            }
            let phase = Mu24::from_exponent(-3 * r * (d as i64 - 1)).value(&ctx);
            let prefac = ctx.cscale(&phase, &scalar);
            dens.push(DivisorData {
                a,
                d,
                g,
                prefac,
                roots,
                bsums: BTreeMap::new(),
            });
        }
        Level1Transform {
            ctx,
            r,
            l,
            ptab,
            dens,
        }
    }

    /// The coefficient of `q^(n / (24 l))` in `l^(r/4) T_l eta^r`, as a
    /// fixed-point complex number (exactly real up to the working error).
    fn fine_coeff(&mut self, n: i64) -> Cx {
        let Level1Transform {
            ctx,
            r,
            l,
            ptab,
            dens,
        } = self;
        let rr = *r as i128;
        let ll = *l as i128;
        let nn = n as i128;
        let mut acc = ctx.czero();
        for dd in dens.iter_mut() {
            let a2 = (dd.a as i128) * (dd.a as i128);
            if nn % a2 != 0 {
                continue;
            }
            let diff = nn / a2 - rr;
            if diff % 24 != 0 || diff < 0 {
                continue;
            }
            let p = &ptab[(diff / 24) as usize];
            if p.is_zero() {
                continue;
            }
            let order = 24 * dd.a as i128 * ll;
            let cls = (nn - rr * ll * ll).rem_euclid(order) as i64;
            if !dd.bsums.contains_key(&cls) {
                let mut s = ctx.czero();
                for b in 0..dd.d {
                    let w = if rr.rem_euclid(2) == 0 {
                        i32::from(b.gcd(&dd.g) == 1)
                    } else {
                        kronecker(-(b as i64), dd.g as i64)
                    };
                    if w == 0 {
                        continue;
                    }
                    let idx = ((cls as i128 * b as i128).rem_euclid(order)) as usize;
                    s = if w > 0 {
                        ctx.cadd(&s, &dd.roots[idx])
                    } else {
                        ctx.csub(&s, &dd.roots[idx])
                    };
                }
                dd.bsums.insert(cls, s);
            }
            let term = ctx.cscale(&ctx.cmul(&dd.prefac, &dd.bsums[&cls]), &ctx.from_bigint(p));
            acc = ctx.cadd(&acc, &term);
        }
        acc
    }
}

/// The scaled transform `l^(r/4) T_l eta^r` at level one, as a q-expansion
/// on the coarse lattice `n = n0 + 24 j` for `j = 0..=nmax`, where `n0` is
/// the first numerator (congruent to `r` mod 24) that any divisor term can
/// reach. Requires `24 | r (l - 1)`. Returns the series together with the
/// constant `l^(-r/4)`, so that `T_l eta^r = constant * series`.
///
/// Every coefficient is the full divisor sum of root-of-unity phases,
/// evaluated in fixed point and rounded to the denominator bound
/// `l^(ceil(|r|/2) + 1)`; the rounding residue and the imaginary part must
/// both vanish to 40 digits, otherwise the call fails loudly.
pub fn tl_level1_etapower(
    r: i64,
    l: u64,
    nmax: usize,
) -> crate::Result<(QExp24, ScaledConstant)> {
    if l == 0 {
        return Err(EtaError::InvalidArgument("the index l must be positive".into()));
    }
    if (r as i128 * (l as i128 - 1)) % 24 != 0 {
        return Err(EtaError::InvalidArgument(format!(
            "24 must divide r (l - 1); got r = {r}, l = {l}"
        )));
    }
    let li = l as i64;
    // First reachable numerator: n l >= r a^2 for some divisor a of l, so
    // n >= r/l when r >= 0 and n >= r l otherwise; align up to r mod 24.
    let nmin = if r >= 0 { (r + li - 1).div_euclid(li) } else { r * li };
    let n0 = nmin + (r - nmin).rem_euclid(24);
    let n_last = n0 + 24 * nmax as i64;
    let mut t = Level1Transform::new(r, l, n_last.max(0) * li);
    let den = BigInt::from(l).pow((r.unsigned_abs() as u32 + 1) / 2 + 1);
    let err_bound = BigInt::from(10u32).pow(t.ctx.digits() - 40);
    let mut coeffs = Vec::with_capacity(nmax + 1);
    for j in 0..=nmax {
        let n = n0 + 24 * j as i64;
        let z = t.fine_coeff(n * li);
        let (val, err) = t.ctx.round_to_den(&z.re, &den);
        if !t.ctx.abs_le_pow10(&z.im, 40) || err > err_bound {
            return Err(EtaError::VerificationFailed(format!(
                "coefficient at numerator {n} did not certify as a rational with denominator {den}"
            )));
        }
        coeffs.push(val);
    }
    Ok((
        QExp24::from_coeffs(n0, coeffs),
        ScaledConstant::power(l, BigRational::new(BigInt::from(-r), BigInt::from(4))),
    ))
}

/// A coefficient table of `prod_j (1 - q^j)^r`, the exact power series whose
/// entry `P_r(k)` is the coefficient of `q^k`; `eta^r = q^(r/24) sum_k
/// P_r(k) q^k`.
pub struct PrTable {
    r: i64,
    coeffs: Vec<BigInt>,
}

impl PrTable {
    /// Computes the first `len` coefficients for the given power.
    pub fn for_eta_power(r: i64, len: usize) -> PrTable {
        PrTable {
            r,
            coeffs: eta_power_coeffs(r, len.max(1)),
        }
    }

    /// A table long enough to evaluate [`r_even`] or [`r_odd`] at every
    /// numerator up to `max_coarse` for the given index `l`.
    pub fn for_lattice(r: i64, l: u64, max_coarse: i64) -> PrTable {
        let karg = (max_coarse as i128 * l as i128 - r as i128).max(0) / 24;
        PrTable::for_eta_power(r, karg as usize + 1)
    }

    /// Adopts a precomputed coefficient table, for example one loaded
    /// through [`crate::qseries::CoeffCache`].
    pub fn from_bigint(r: i64, coeffs: Vec<BigInt>) -> PrTable {
        PrTable { r, coeffs }
    }

    /// Adopts precomputed small coefficients (for example a row of
    /// [`crate::qseries::eta_power_family_i128`]).
    pub fn from_i128(r: i64, coeffs: &[i128]) -> PrTable {
        PrTable {
            r,
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `P_r(k)`: zero for negative `k`, an error past the table end.
    pub fn get(&self, k: i64) -> crate::Result<BigInt> {
        if k < 0 {
            return Ok(BigInt::zero());
        }
        self.coeffs.get(k as usize).cloned().ok_or_else(|| {
            EtaError::InvalidArgument(format!(
                "P_{} table holds {} entries but index {k} was requested",
                self.r,
                self.coeffs.len()
            ))
        })
    }
}

/// Shared argument checks for the closed-form divisor sums.
fn check_r_args(n_parity_even: bool, r: i64, l: u64, tab: &PrTable) -> crate::Result<()> {
    if l == 0 {
        return Err(EtaError::InvalidArgument("the index l must be positive".into()));
    }
    if (r.rem_euclid(2) == 0) != n_parity_even {
        return Err(EtaError::InvalidArgument(format!(
            "r = {r} has the wrong parity for this evaluation path"
        )));
    }
    if (r as i128 * (l as i128 - 1)) % 24 != 0 {
        return Err(EtaError::InvalidArgument(format!(
            "24 must divide r (l - 1); got r = {r}, l = {l}"
        )));
    }
    if tab.r() != r {
        return Err(EtaError::InvalidArgument(format!(
            "table was built for r = {} but r = {r} was requested",
            tab.r()
        )));
    }
    Ok(())
}

/// The `P_r` argument `(n l / a^2 - r) / 24` when it is a non-negative
/// integer, or `None` when the term vanishes.
fn p_argument(n: i64, r: i64, l: u64, a: u64) -> Option<i64> {
    let a2 = (a as i128) * (a as i128);
    let nl = n as i128 * l as i128;
    if nl % a2 != 0 {
        return None;
    }
    let diff = nl / a2 - r as i128;
    if diff % 24 != 0 || diff < 0 {
        return None;
    }
    Some((diff / 24) as i64)
}

/// The coefficient `R(n; r, l)` of `q^(n/24)` in `l^(r/4) T_l eta^r` for
/// even `r`, as an exact Moebius-type divisor sum:
///
/// `sum_(a | l) a^(r/2) (-1)^(r(d-1)/4) sum_t mu(t) (d/t) P_r((n l/a^2 - r)/24)`
///
/// where `d = l/a` and `t` runs over the divisors of `gcd(a, d)` that are
/// multiples of `24a / gcd(24a, n - r l)`. Requires `24 | r (l - 1)`.
pub fn r_even(n: i64, r: i64, l: u64, tab: &PrTable) -> crate::Result<BigRational> {
    check_r_args(true, r, l, tab)?;
    let rr = r as i128;
    let c = n as i128 - rr * l as i128;
    let mut total = BigRational::zero();
    for a in divisors(l) {
        let d = l / a;
        let dd = d as i128;
        // Consequences of 24 | r (l - 1) at every divisor; these make the
        // sign and the lattice arguments integral.
        assert!((rr * (dd * dd - 1)) % 24 == 0);
        assert!((rr * (dd - 1)) % 4 == 0);
        let karg = match p_argument(n, r, l, a) {
            Some(k) => k,
            None => continue,
        };
        let p = tab.get(karg)?;
        if p.is_zero() {
            continue;
        }
        let m24a = 24 * a as i128;
        let s = m24a / m24a.gcd(&c);
        let mut inner: i128 = 0;
        for t in divisors(a.gcd(&d)) {
            if (t as i128) % s != 0 {
                continue;
            }
            inner += moebius(t) as i128 * (d / t) as i128;
        }
        if inner == 0 {
            continue;
        }
        let sign = if ((rr * (dd - 1)) / 4).rem_euclid(2) == 1 {
            -1
        } else {
            1
        };
        total += pow_rational(a, r / 2)
            * BigRational::from(BigInt::from(sign * inner) * p);
    }
    Ok(total)
}

/// [`r_even`] specialized to squarefree `l`, where the Moebius sum collapses
/// to the divisors `a` with `24 a | n - r l`:
///
/// `l sum_(a | l, 24a | n - rl) a^(r/2 - 1) (-1)^(r(d-1)/4) P_r((n l/a^2 - r)/24)`.
pub fn r_even_squarefree(n: i64, r: i64, l: u64, tab: &PrTable) -> crate::Result<BigRational> {
    check_r_args(true, r, l, tab)?;
    if moebius(l) == 0 {
        return Err(EtaError::InvalidArgument(format!(
            "l = {l} is not squarefree"
        )));
    }
    let rr = r as i128;
    let c = n as i128 - rr * l as i128;
    let mut total = BigRational::zero();
    for a in divisors(l) {
        if c % (24 * a as i128) != 0 {
            continue;
        }
        let dd = (l / a) as i128;
        let karg = match p_argument(n, r, l, a) {
            Some(k) => k,
            None => continue,
        };
        let p = tab.get(karg)?;
        let sign = if ((rr * (dd - 1)) / 4).rem_euclid(2) == 1 {
            -1
        } else {
            1
        };
        total += pow_rational(a, r / 2 - 1) * BigRational::from(BigInt::from(sign) * p);
    }
    Ok(total * BigRational::from(BigInt::from(l)))
}

/// Inner data of one divisor term of [`r_odd`]: everything except the choice
/// of the square-root radical, which differs between the general path and
/// the squarefree-square specialization.
fn r_odd_term(
    n: i64,
    r: i64,
    l: u64,
    a: u64,
    tab: &PrTable,
    radical: u64,
    use_eo_symbol: bool,
) -> crate::Result<BigRational> {
    let d = l / a;
    let g = a.gcd(&d);
    let parts = rad_parts(g);
    let rr = r as i128;
    let c = n as i128 - rr * l as i128;
    let m24a = 24 * a as i128;
    let radc = parts.rad as i128 * c;
    if radc % m24a != 0 {
        return Ok(BigRational::zero());
    }
    let tval = radc / m24a;
    let karg = match p_argument(n, r, l, a) {
        Some(k) => k,
        None => return Ok(BigRational::zero()),
    };
    let p = tab.get(karg)?;
    if p.is_zero() {
        return Ok(BigRational::zero());
    }
    let base = if ((r - 1) / 2).rem_euclid(2) == 1 { -2 } else { 2 };
    let k1 = kronecker(base, d as i64);
    let k2 = if use_eo_symbol {
        kronecker(parts.rad_e as i64, parts.rad_o as i64)
    } else {
        1
    };
    let k3 = kronecker_big(&BigInt::from(tval), &BigInt::from(parts.rad_o));
    if k1 * k2 * k3 == 0 {
        return Ok(BigRational::zero());
    }
    let mut prod_e: i128 = 1;
    for (q, _) in factorize(parts.rad_e) {
        prod_e *= if tval % q as i128 == 0 {
            q as i128 - 1
        } else {
            -1
        };
    }
    // a^(r/2) / sqrt(radical) = a^((r-1)/2) sqrt(a / radical); the quotient
    // is a perfect square whenever l is, which the caller guarantees.
    assert!(
        a % radical == 0,
        "the radical must divide a when l is a perfect square"
    );
    let quot = a / radical;
    let sq = quot.sqrt();
    assert!(sq * sq == quot, "a / radical must be a perfect square");
    let scale = pow_rational(a, (r - 1) / 2)
        * BigRational::from(BigInt::from(d) * BigInt::from(sq));
    Ok(scale * BigRational::from(BigInt::from((k1 * k2 * k3) as i128 * prod_e) * p))
}

/// The coefficient `R(n; r, l)` of `q^(n/24)` in `l^(r/4) T_l eta^r` for odd
/// `r` and a perfect square `l`, via the closed Gauss-sum evaluation. With
/// `d = l/a`, `g = gcd(a, d)` and `t = rad(g)(n - rl)/(24a)` (terms without
/// `24a | rad(g)(n - rl)` vanish), each divisor contributes
///
/// `(2 (-1)^((r-1)/2) | d) (radE | radO) [d a^(r/2) / sqrt(radp(g))]
///  (t | radO) prod_(p | radE) (p - 1 - p (t | p)^2) P_r((n l/a^2 - r)/24)`.
///
/// Requires `24 | r (l - 1)` (which forces `l` odd).
pub fn r_odd(n: i64, r: i64, l: u64, tab: &PrTable) -> crate::Result<BigRational> {
    check_r_args(false, r, l, tab)?;
    let sl = l.sqrt();
    if sl * sl != l {
        return Err(EtaError::InvalidArgument(format!(
            "l = {l} must be a perfect square for odd r"
        )));
    }
    assert!(l % 2 == 1, "24 | r(l-1) with odd r forces odd l");
    let mut total = BigRational::zero();
    for a in divisors(l) {
        let parts = rad_parts(a.gcd(&(l / a)));
        total += r_odd_term(n, r, l, a, tab, parts.radp, true)?;
    }
    Ok(total)
}

/// [`r_odd`] specialized to `l = m^2` with `m` squarefree: the radical
/// `rad(g)` replaces `radp(g)` and the symbol `(radE | radO)` drops out.
pub fn r_odd_special(n: i64, r: i64, l: u64, tab: &PrTable) -> crate::Result<BigRational> {
    check_r_args(false, r, l, tab)?;
    let sl = l.sqrt();
    if sl * sl != l || moebius(sl) == 0 {
        return Err(EtaError::InvalidArgument(format!(
            "l = {l} must be the square of a squarefree number"
        )));
    }
    let mut total = BigRational::zero();
    for a in divisors(l) {
        let parts = rad_parts(a.gcd(&(l / a)));
        total += r_odd_term(n, r, l, a, tab, parts.rad, false)?;
    }
    Ok(total)
}

/// Outcome of an eigenform check for `T_l` on `eta^r`: whether every checked
/// coefficient satisfies `R(n; r, l) = R(r; r, l) P_r((n - r)/24)`, the
/// eigenvalue `R(r; r, l)`, and the first offending numerator if any.
#[derive(Clone, Debug)]
pub struct NewmanReport {
    pub r: i64,
    pub l: u64,
    pub nmax: usize,
    pub pass: bool,
    pub eigenvalue: BigRational,
    pub first_discrepancy: Option<i64>,
    pub checked_lattice: usize,
    pub checked_off_lattice: usize,
}

/// Verifies the eigenform identity for `eta^r` under `T_l` through the
/// closed-form divisor sums, building its own coefficient table. Requires
/// `0 <= r <= 24`, `24 | r (l - 1)`, and a perfect square `l` when `r` is
/// odd. Lattice numerators `n = r + 24k` for `k = 0..=nmax` are compared
/// exactly; off-lattice numerators are spot-checked to vanish.
pub fn newman_check(r: i64, l: u64, nmax: usize) -> crate::Result<NewmanReport> {
    let tab = PrTable::for_lattice(r, l, r + 24 * nmax as i64 + 23);
    newman_check_with(r, l, nmax, &tab)
}

/// [`newman_check`] against a caller-supplied table (so a sweep over many
/// indices can share one table per power).
pub fn newman_check_with(
    r: i64,
    l: u64,
    nmax: usize,
    tab: &PrTable,
) -> crate::Result<NewmanReport> {
    if !(0..=24).contains(&r) {
        return Err(EtaError::InvalidArgument(format!(
            "the eigenform check covers 0 <= r <= 24; got r = {r}"
        )));
    }
    let evaluate = |n: i64| -> crate::Result<BigRational> {
        if r % 2 == 0 {
            r_even(n, r, l, tab)
        } else {
            r_odd(n, r, l, tab)
        }
    };
    let eigenvalue = evaluate(r)?;
    let mut pass = true;
    let mut first_discrepancy = None;
    let mut checked_lattice = 0;
    for k in 0..=nmax {
        let n = r + 24 * k as i64;
        let lhs = evaluate(n)?;
        let rhs = &eigenvalue * BigRational::from(tab.get(k as i64)?);
        checked_lattice += 1;
        if lhs != rhs {
            pass = false;
            first_discrepancy = Some(n);
            break;
        }
    }
    let mut checked_off_lattice = 0;
    if pass {
        for k in 0..=nmax {
            let n = r + 24 * k as i64 + 1 + (k % 23) as i64;
            checked_off_lattice += 1;
            if !evaluate(n)?.is_zero() {
                pass = false;
                first_discrepancy = Some(n);
                break;
            }
        }
    }
    Ok(NewmanReport {
        r,
        l,
        nmax,
        pass,
        eigenvalue,
        first_discrepancy,
        checked_lattice,
        checked_off_lattice,
    })
}

/// Lower bound for the cusp order of `T_l f` at `a/c` (with `gcd(a, c) = 1`,
/// `c > 0`) from the cusp orders of `f`:
///
/// `ord_(a/c)(T_l f) >= min_(0 <= lam < l) gcd(a + c lam, c l)^2 / l *
///  ord((a + c lam) / (c l))(f)`.
///
/// The `orders` closure receives the reduced cusp `(numerator, denominator)`
/// and must return the invariant q-exponent order of `f` there.
pub fn tl_order_bound(
    l: u64,
    orders: impl Fn(i64, u64) -> BigRational,
    a: i64,
    c: u64,
) -> crate::Result<BigRational> {
    if l == 0 || c == 0 {
        return Err(EtaError::InvalidArgument(
            "the index l and the cusp denominator must be positive".into(),
        ));
    }
    if a.unsigned_abs().gcd(&c) != 1 {
        return Err(EtaError::InvalidArgument(format!(
            "cusp {a}/{c} is not reduced"
        )));
    }
    let cl = c * l;
    let mut best: Option<BigRational> = None;
    for lam in 0..l {
        let num = a + c as i64 * lam as i64;
        let g = num.unsigned_abs().gcd(&cl).max(1);
        let bound = BigRational::new(BigInt::from(g) * BigInt::from(g), BigInt::from(l))
            * orders(num / g as i64, cl / g);
        best = Some(match best {
            Some(b) if b <= bound => b,
            _ => bound,
        });
    }
    Ok(best.expect("l >= 1 yields at least one representative"))
}
