//! Multiplier systems on the metaplectic double cover.
//!
//! This module evaluates the eta multiplier `v_eta`, the eta-quotient
//! multiplier `v_r` on `Gamma0(N)~`, and real Dirichlet characters, and it
//! decides when two such characters admit a double coset operator between
//! them for a given scaling matrix `diag(1, l)`.  The decision is available
//! both as an exact closed form (four congruence/symbol conditions) and as a
//! randomized matrix oracle that tests the defining relation on sampled group
//! elements.  The module also evaluates the combined character weight that a
//! coset representative `(a, b; 0, d)` carries inside the operator sum.

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

use crate::arith::{factorize, kronecker, kronecker_big, Mu24};
use crate::metaplectic::{decompose_ab0d, random_gamma0, MatZ, MetaElem};
use crate::qseries::EtaExponents;
use crate::EtaError;

/// A real Dirichlet character `d -> (disc / d)` (Kronecker symbol) attached
/// to a modulus `N`.
///
/// The character vanishes off the coprime-to-`N` domain and takes values in
/// `{-1, +1}` on it.  The constructor rejects data for which either property
/// fails, or for which the symbol is not genuinely periodic modulo `N` on the
/// coprime domain (that is, data that do not describe a character mod `N`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealDirichlet {
    modulus: u64,
    disc: i64,
}

impl RealDirichlet {
    /// The trivial character modulo `modulus`.
    pub fn trivial(modulus: u64) -> RealDirichlet {
        RealDirichlet { modulus, disc: 1 }
    }

    /// Builds `d -> (disc / d)` as a character modulo `modulus`.
    pub fn new(modulus: u64, disc: i64) -> crate::Result<RealDirichlet> {
        if modulus == 0 {
            return Err(EtaError::InvalidArgument(
                "character modulus must be positive".into(),
            ));
        }
        if disc == 0 {
            return Err(EtaError::InvalidArgument(
                "character discriminant must be nonzero".into(),
            ));
        }
        if !(disc.rem_euclid(4) == 0 || disc.rem_euclid(4) == 1) {
            return Err(EtaError::InvalidArgument(format!(
                "discriminant {disc} is not 0 or 1 mod 4"
            )));
        }
        let chr = RealDirichlet { modulus, disc };
        // The Kronecker symbol is periodic modulo 4|disc|; sweeping one
        // common period certifies both nonvanishing and periodicity mod N.
        let period = lcm_u64(modulus, 4 * disc.unsigned_abs());
        if period > 5_000_000 {
            return Err(EtaError::Resource(format!(
                "character validation period {period} is too large"
            )));
        }
        let mut class_value: Vec<Option<i32>> = vec![None; modulus as usize];
        for d in 1..=period {
            if gcd_u64(d, modulus) != 1 {
                continue;
            }
            let v = kronecker(disc, d as i64);
            if v == 0 {
                return Err(EtaError::InvalidArgument(format!(
                    "(({disc}/.)) vanishes at {d}, which is coprime to {modulus}"
                )));
            }
            let class = (d % modulus) as usize;
            match class_value[class] {
                None => class_value[class] = Some(v),
                Some(w) if w == v => {}
                Some(_) => {
                    return Err(EtaError::InvalidArgument(format!(
                        "(({disc}/.)) is not periodic modulo {modulus}"
                    )));
                }
            }
        }
        Ok(chr)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    /// Whether the character is identically 1 on its coprime domain.
    pub fn is_trivial(&self) -> bool {
        // A validated character is trivial exactly when the discriminant is a
        // perfect square: square tops give symbol 1 wherever they are nonzero.
        if self.disc < 0 {
            return false;
        }
        let s = (self.disc as u64).isqrt();
        s * s == self.disc as u64
    }

    /// Real characters square to the trivial character, so each is its own
    /// inverse.
    pub fn inverse(&self) -> RealDirichlet {
        self.clone()
    }

    /// Character value at `d`; zero when `gcd(d, modulus) > 1`.
    pub fn eval_i64(&self, d: i64) -> i32 {
        if gcd_u64(d.unsigned_abs(), self.modulus) != 1 {
            return 0;
        }
        kronecker(self.disc, d)
    }

    /// Character value at a big integer `d`.
    pub fn eval(&self, d: &BigInt) -> i32 {
        if d.gcd(&BigInt::from(self.modulus)) != BigInt::one() {
            return 0;
        }
        kronecker_big(&BigInt::from(self.disc), d)
    }

    /// The parity `chi(-1)`.
    pub fn parity(&self) -> i32 {
        self.eval_i64(-1)
    }
}

impl std::fmt::Display for RealDirichlet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            write!(f, "trivial character mod {}", self.modulus)
        } else {
            write!(f, "(({}/.)) mod {}", self.disc, self.modulus)
        }
    }
}

/// The eta multiplier on the double cover of `SL2(Z)`.
///
/// For a lifted matrix `((a, b; c, d), eps)` of determinant one the value is
/// the 24th root of unity
///
/// * `eps * (d/|c|) * e(((a+d-3)c - bd(c^2-1)) / 24)` when `c` is odd,
/// * `eps * (c/d) * e(((a-2d)c - bd(c^2-1) + 3d - 3) / 24)` when `c` is even,
///
/// with `(./.)` the Kronecker symbol and `e(x) = exp(2 pi i x)`.
pub fn v_eta(x: &MetaElem) -> crate::Result<Mu24> {
    if x.mat.det() != BigInt::one() {
        return Err(EtaError::InvalidArgument(
            "v_eta needs a determinant-one matrix".into(),
        ));
    }
    let (a, b, c, d) = (&x.mat.a, &x.mat.b, &x.mat.c, &x.mat.d);
    let (sign, exp24) = if c.is_odd() {
        let sign = kronecker_big(d, &c.abs());
        let exp24 = (a + d - 3) * c - b * d * (c * c - 1);
        (sign, exp24)
    } else {
        let sign = kronecker_big(c, d);
        let exp24 = (a - d * 2) * c - b * d * (c * c - 1) + d * 3 - 3;
        (sign, exp24)
    };
    debug_assert!(sign != 0, "coprimality of a matrix row forces a unit symbol");
    let eps = Mu24::from_sign(x.eps);
    Ok(Mu24::from_exponent_big(&exp24) * Mu24::from_sign(sign) * eps)
}

/// The eta-quotient multiplier `v_r` on `Gamma0(N)~`.
///
/// For exponents `r_n` indexed by divisors `n | N` the value at a lifted
/// matrix `((a, b; c, d), eps)` with `N | c` is the product over `n` of
/// `v_eta((a, bn; c/n, d), eps)^(r_n)`.
pub fn v_r(spec: &EtaExponents, x: &MetaElem) -> crate::Result<Mu24> {
    if !x.mat.in_gamma0(spec.level()) {
        return Err(EtaError::InvalidArgument(format!(
            "v_r needs a matrix in Gamma0({})",
            spec.level()
        )));
    }
    let mut acc = Mu24::ONE;
    for (&n, &rn) in spec.exponents() {
        let conj = MatZ {
            a: x.mat.a.clone(),
            b: &x.mat.b * n,
            c: &x.mat.c / n,
            d: x.mat.d.clone(),
        };
        acc = acc * v_eta(&MetaElem::new(conj, x.eps))?.pow(rn);
    }
    Ok(acc)
}

/// A character `chi * v_r` on `Gamma0(N)~`: the product of a real Dirichlet
/// character evaluated at the lower-right entry and the eta-quotient
/// multiplier.  This is the shape of character the compatibility criterion
/// and the operators work with.
#[derive(Clone, Debug)]
pub struct EtaDirichletChar {
    chi: RealDirichlet,
    exps: EtaExponents,
}

impl EtaDirichletChar {
    pub fn new(chi: RealDirichlet, exps: EtaExponents) -> crate::Result<EtaDirichletChar> {
        if chi.modulus() != exps.level() {
            return Err(EtaError::InvalidArgument(format!(
                "character modulus {} does not match level {}",
                chi.modulus(),
                exps.level()
            )));
        }
        Ok(EtaDirichletChar { chi, exps })
    }

    /// The multiplier of an eta-quotient, with trivial Dirichlet part.
    pub fn from_exponents(exps: EtaExponents) -> EtaDirichletChar {
        let chi = RealDirichlet::trivial(exps.level());
        EtaDirichletChar { chi, exps }
    }

    pub fn chi(&self) -> &RealDirichlet {
        &self.chi
    }

    pub fn exponents(&self) -> &EtaExponents {
        &self.exps
    }

    pub fn level(&self) -> u64 {
        self.exps.level()
    }

    /// The exponent class mod 24 of the value at the lifted translation:
    /// `chi*v_r (T~) = e(sum_n n r_n / 24)`.
    pub fn value_at_t(&self) -> Mu24 {
        Mu24::from_exponent(self.exps.offset24())
    }

    pub fn eval(&self, x: &MetaElem) -> crate::Result<Mu24> {
        let vr = v_r(&self.exps, x)?;
        let s = self.chi.eval(&x.mat.d);
        if s == 0 {
            return Err(EtaError::InvalidArgument(
                "Dirichlet factor vanishes; matrix is not in the group".into(),
            ));
        }
        Ok(vr * Mu24::from_sign(s))
    }
}

/// The quantity `delta = l^(2|k|) * prod_{2 ∤ (r_n - r'_n)} n` entering the
/// compatibility criterion, with `k = (sum_n r_n)/2` the common weight.
pub fn delta_of(r: &EtaExponents, rp: &EtaExponents, l: u64) -> crate::Result<BigInt> {
    let map = delta_factor_map(r, rp, l)?;
    let mut delta = BigInt::one();
    for (p, e) in map {
        delta *= BigInt::from(p).pow(e as u32);
    }
    Ok(delta)
}

/// Prime factorization of `delta` assembled symbolically, so that square
/// tests and square-free kernels never require factoring a huge integer.
fn delta_factor_map(
    r: &EtaExponents,
    rp: &EtaExponents,
    l: u64,
) -> crate::Result<BTreeMap<u64, u64>> {
    if r.level() != rp.level() {
        return Err(EtaError::InvalidArgument(
            "delta needs exponent vectors of the same level".into(),
        ));
    }
    if r.twice_weight() != rp.twice_weight() {
        return Err(EtaError::InvalidArgument(
            "delta needs exponent vectors of equal weight".into(),
        ));
    }
    if l == 0 {
        return Err(EtaError::InvalidArgument("l must be positive".into()));
    }
    let e = r.twice_weight().unsigned_abs();
    let mut map: BTreeMap<u64, u64> = BTreeMap::new();
    for (p, a) in factorize(l) {
        *map.entry(p).or_insert(0) += e * a as u64;
    }
    for n in crate::arith::divisors(r.level()) {
        if (r.exponent(n) - rp.exponent(n)).rem_euclid(2) == 1 {
            for (p, a) in factorize(n) {
                *map.entry(p).or_insert(0) += a as u64;
            }
        }
    }
    map.retain(|_, e| *e > 0);
    Ok(map)
}

fn delta_squarefree_kernel(map: &BTreeMap<u64, u64>) -> crate::Result<u64> {
    let mut kernel: u64 = 1;
    for (&p, &e) in map {
        if e % 2 == 1 {
            kernel = kernel.checked_mul(p).ok_or_else(|| {
                EtaError::Resource("square-free kernel of delta overflows u64".into())
            })?;
        }
    }
    Ok(kernel)
}

/// Decides whether `chi * v_r` and `chi' * v_r'` admit a double coset
/// operator for the scaling matrix `diag(1, l)`, by the exact four-condition
/// criterion:
///
/// 1. `l * sum (N/n) r_n ≡ sum (N/n) r'_n (mod 24)`;
/// 2. `sum n r_n ≡ l * sum n r'_n (mod 24)`;
/// 3. if `Nl` is odd then `delta ≡ 1 (mod 4)`;
/// 4. `chi(d) chi'(d) = (delta/d)` for every nonzero `d` coprime to `Nl`.
///
/// Condition 4 is decided exactly: both sides are completely multiplicative
/// in `d` and periodic on the positive coprime domain, so checking one full
/// period together with `d = -1` covers all nonzero `d`.  Since `d` ranges
/// over integers coprime to `Nl` and every prime of `delta` divides `Nl`,
/// `delta` may be replaced by its square-free kernel, which keeps the period
/// small.
pub fn compatible_closed_form(
    level: u64,
    chi: &RealDirichlet,
    r: &EtaExponents,
    chi2: &RealDirichlet,
    rp: &EtaExponents,
    l: u64,
) -> crate::Result<bool> {
    if r.level() != level || rp.level() != level {
        return Err(EtaError::InvalidArgument(
            "exponent vectors must live on the stated level".into(),
        ));
    }
    if chi.modulus() != level || chi2.modulus() != level {
        return Err(EtaError::InvalidArgument(
            "Dirichlet characters must have the stated level as modulus".into(),
        ));
    }
    if r.twice_weight() != rp.twice_weight() {
        return Err(EtaError::InvalidArgument(
            "the criterion requires equal weights".into(),
        ));
    }
    if l == 0 {
        return Err(EtaError::InvalidArgument("l must be positive".into()));
    }
    let li = l as i128;
    let cond1 = (li * r.dual24() as i128 - rp.dual24() as i128).rem_euclid(24) == 0;
    let cond2 = (r.offset24() as i128 - li * rp.offset24() as i128).rem_euclid(24) == 0;
    if !cond1 || !cond2 {
        return Ok(false);
    }
    let map = delta_factor_map(r, rp, l)?;
    if level % 2 == 1 && l % 2 == 1 {
        let mut delta_mod4: u64 = 1;
        for (&p, &e) in &map {
            for _ in 0..e {
                delta_mod4 = (delta_mod4 * (p % 4)) % 4;
            }
        }
        if delta_mod4 != 1 {
            return Ok(false);
        }
    }
    // Condition 4 with delta replaced by its square-free kernel.
    let kernel = delta_squarefree_kernel(&map)?;
    if chi.parity() * chi2.parity() != 1 {
        return Ok(false);
    }
    let nl = level
        .checked_mul(l)
        .ok_or_else(|| EtaError::Resource("level * l overflows u64".into()))?;
    let period = lcm_u64(8 * nl, 8 * kernel);
    if period > 50_000_000 {
        return Err(EtaError::Resource(format!(
            "condition-4 sweep period {period} is too large"
        )));
    }
    for d in 1..=period {
        if gcd_u64(d, nl) != 1 {
            continue;
        }
        let lhs = chi.eval_i64(d as i64) * chi2.eval_i64(d as i64);
        let rhs = kronecker(kernel as i64, d as i64);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the randomized compatibility oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    /// Every sampled matrix satisfied the defining relation.
    NoCounterexample,
    /// A sampled matrix violating the relation, as a witness.
    Counterexample(MatZ),
}

/// Randomized check of the defining relation behind compatibility:
/// `v1((a,b;c,d)~) = v2((a, bl; c/l, d)~)` for `(a,b;c,d)` running through
/// `T`, `-I`, and `trials` pseudorandom elements of `Gamma0(N l)` with
/// `c > 0`.  Returns the first violating matrix, if any.
pub fn compatible_sample_oracle(
    level: u64,
    v1: &EtaDirichletChar,
    v2: &EtaDirichletChar,
    l: u64,
    trials: u32,
    seed: u64,
) -> crate::Result<OracleVerdict> {
    if v1.level() != level || v2.level() != level {
        return Err(EtaError::InvalidArgument(
            "oracle characters must share the stated level".into(),
        ));
    }
    if l == 0 {
        return Err(EtaError::InvalidArgument("l must be positive".into()));
    }
    let nl = level
        .checked_mul(l)
        .ok_or_else(|| EtaError::Resource("level * l overflows u64".into()))?;
    for trial in 0..trials {
        let gamma = match trial {
            0 => MatZ::t(),
            1 => MatZ::neg_identity(),
            _ => {
                let mut candidate = MatZ::identity();
                for bump in 0..64u64 {
                    let g = random_gamma0(nl, 5, seed ^ (trial as u64).wrapping_mul(0x9e3779b9) ^ bump);
                    if !g.c.is_zero() {
                        candidate = if g.c.is_negative() { g.neg() } else { g };
                        break;
                    }
                }
                if candidate.c.is_zero() {
                    continue;
                }
                candidate
            }
        };
        let conj = MatZ {
            a: gamma.a.clone(),
            b: &gamma.b * l,
            c: &gamma.c / l,
            d: gamma.d.clone(),
        };
        let lhs = v1.eval(&MetaElem::lift(gamma.clone()))?;
        let rhs = v2.eval(&MetaElem::lift(conj))?;
        if lhs != rhs {
            return Ok(OracleVerdict::Counterexample(gamma));
        }
    }
    Ok(OracleVerdict::NoCounterexample)
}

/// The exponent reversal `n -> r_{N/n}` induced by the Fricke involution;
/// conjugating the multiplier of an eta-quotient by `(0, -1; N, 0)` yields
/// the multiplier of the reversed exponent vector.
pub fn fricke_transform(r: &EtaExponents) -> EtaExponents {
    let level = r.level();
    let entries: Vec<(u64, i64)> = crate::arith::divisors(level)
        .into_iter()
        .map(|n| (n, r.exponent(level / n)))
        .collect();
    EtaExponents::new(level, entries).expect("divisor reversal preserves validity")
}

/// The weight `(v1 |_alpha v2)^{-1}((a, b; 0, d)~)` carried by a coset
/// representative inside the operator sum, where `alpha` lifts `diag(1, l)`
/// and `ad = l`.
///
/// For `a = 1` this is `v2(T~)^(-b)`.  For `a > 1` the representative is
/// decomposed as `g1 * alpha * g2` with `g1, g2` in `Gamma0(N)~` and the
/// value is `v1^(-1)(g1) * v2^(-1)(g2)`.  Callers must pass compatible
/// characters; the value is then independent of the decomposition chosen.
pub fn v1v2_on_coset(
    level: u64,
    v1: &EtaDirichletChar,
    v2: &EtaDirichletChar,
    l: u64,
    rep: &MatZ,
) -> crate::Result<Mu24> {
    if v1.level() != level || v2.level() != level {
        return Err(EtaError::InvalidArgument(
            "coset weight needs characters on the stated level".into(),
        ));
    }
    if !rep.c.is_zero() {
        return Err(EtaError::InvalidArgument(
            "coset representative must be upper triangular".into(),
        ));
    }
    let a = rep
        .a
        .to_i64()
        .ok_or_else(|| EtaError::Resource("representative entry exceeds i64".into()))?;
    let b = rep
        .b
        .to_i64()
        .ok_or_else(|| EtaError::Resource("representative entry exceeds i64".into()))?;
    let d = rep
        .d
        .to_i64()
        .ok_or_else(|| EtaError::Resource("representative entry exceeds i64".into()))?;
    if a < 1 || d < 1 || (a as u64) * (d as u64) != l {
        return Err(EtaError::InvalidArgument(
            "representative must have positive diagonal with ad = l".into(),
        ));
    }
    if !(0 <= b && b < d) {
        return Err(EtaError::InvalidArgument(
            "representative must have 0 <= b < d".into(),
        ));
    }
    if gcd_u64(a as u64, level) != 1 || a.gcd(&b).gcd(&d) != 1 {
        return Err(EtaError::InvalidArgument(
            "representative is not in the unit double coset".into(),
        ));
    }
    if a == 1 {
        return Ok(v2.value_at_t().pow(-b));
    }
    let (g1, _alpha, g2) = decompose_ab0d(a, b, d, level)?;
    Ok(v1.eval(&g1)?.inv() * v2.eval(&g2)?.inv())
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd_u64(a, b) * b
}
