//! Exact q-expansions on the 1/24-integral exponent lattice.
//!
//! Eta-quotients expand as `q^(t/24)` times an integer power series in `q`,
//! so a series is stored as a leading numerator exponent `offset24` together
//! with dense rational coefficients at numerator steps of 24. Products of
//! Euler factors are computed by sparse pentagonal multiplications and
//! divisions; a checked `i128` fast path falls back to `BigInt` arithmetic on
//! overflow, so results are exact regardless of coefficient growth.

use crate::EtaError;
use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

/// Exponent data of an eta-quotient on `Gamma0(N)`: a level `N` and a map
/// `n -> r_n` over divisors `n` of `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EtaExponents {
    level: u64,
    r: BTreeMap<u64, i64>,
}

impl EtaExponents {
    /// Validates that the level is positive and every index divides it.
    /// Zero exponents are dropped.
    pub fn new(level: u64, entries: impl IntoIterator<Item = (u64, i64)>) -> crate::Result<Self> {
        if level == 0 {
            return Err(EtaError::InvalidArgument("level must be positive".into()));
        }
        let mut r = BTreeMap::new();
        for (n, rn) in entries {
            if n == 0 || level % n != 0 {
                return Err(EtaError::InvalidArgument(format!(
                    "index {n} does not divide the level {level}"
                )));
            }
            if rn != 0 {
                let slot = r.entry(n).or_insert(0i64);
                *slot += rn;
                if *slot == 0 {
                    r.remove(&n);
                }
            }
        }
        Ok(EtaExponents { level, r })
    }

    /// A single eta power `eta(n tau)^r` at level `N`.
    pub fn single(level: u64, n: u64, r: i64) -> crate::Result<Self> {
        EtaExponents::new(level, [(n, r)])
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.r
    }

    pub fn exponent(&self, n: u64) -> i64 {
        self.r.get(&n).copied().unwrap_or(0)
    }

    /// Twice the weight: `sum r_n`.
    pub fn twice_weight(&self) -> i64 {
        self.r.values().sum()
    }

    /// Leading exponent numerator `sum n r_n` (the expansion begins at
    /// `q^(offset/24)`).
    pub fn offset24(&self) -> i64 {
        self.r.iter().map(|(n, rn)| *n as i64 * rn).sum()
    }

    /// The dual exponent sum `sum (N/n) r_n`.
    pub fn dual24(&self) -> i64 {
        self.r
            .iter()
            .map(|(n, rn)| (self.level / n) as i64 * rn)
            .sum()
    }

    /// Reinterprets the same exponents at a new level (a multiple of every
    /// index).
    pub fn with_level(&self, level: u64) -> crate::Result<Self> {
        EtaExponents::new(level, self.r.iter().map(|(n, rn)| (*n, *rn)))
    }

    /// Pointwise sum of exponents at the lcm of the two levels.
    pub fn mul(&self, rhs: &EtaExponents) -> EtaExponents {
        let level = self.level.lcm(&rhs.level);
        let mut entries: Vec<(u64, i64)> = self.r.iter().map(|(n, r)| (*n, *r)).collect();
        entries.extend(rhs.r.iter().map(|(n, r)| (*n, *r)));
        EtaExponents::new(level, entries).expect("indices divide the lcm")
    }

    /// Invariant vanishing order at the cusp class of denominator `c`:
    /// `(1/24) sum gcd(c, n)^2 r_n / n`, measured in the `q`-exponent scale.
    pub fn ord_at_cusp(&self, c: u64) -> BigRational {
        let mut acc = BigRational::zero();
        for (n, rn) in &self.r {
            let g = c.gcd(n);
            acc += BigRational::new(BigInt::from(g * g) * BigInt::from(*rn), BigInt::from(24 * n));
        }
        acc
    }

    /// Whether every cusp of `Gamma0(N)` has non-negative invariant order.
    pub fn holomorphic_at_cusps(&self) -> bool {
        cusps_gamma0(self.level)
            .iter()
            .all(|cl| !self.ord_at_cusp(cl.denominator).is_negative())
    }

    /// The exact q-expansion with `nterms` known lattice coefficients.
    pub fn series(&self, nterms: usize) -> QExp24 {
        eta_quotient_series(self, nterms)
    }
}

impl fmt::Display for EtaExponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (n, rn) in &self.r {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let arg = if *n == 1 {
                "tau".to_string()
            } else {
                format!("{n}tau")
            };
            if *rn == 1 {
                write!(f, "eta({arg})")?;
            } else {
                write!(f, "eta({arg})^{rn}")?;
            }
        }
        Ok(())
    }
}

/// A truncated q-expansion `sum c_k q^((offset24 + 24 k)/24)`; entries past
/// `coeffs.len()` are unknown, not zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExp24 {
    pub offset24: i64,
    pub coeffs: Vec<BigRational>,
}

impl QExp24 {
    pub fn from_coeffs(offset24: i64, coeffs: Vec<BigRational>) -> QExp24 {
        QExp24 { offset24, coeffs }
    }

    pub fn from_bigint_coeffs(offset24: i64, coeffs: Vec<BigInt>) -> QExp24 {
        QExp24 {
            offset24,
            coeffs: coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c))
                .collect(),
        }
    }

    /// The largest numerator exponent whose coefficient is known.
    pub fn known_through24(&self) -> i64 {
        self.offset24 + 24 * self.coeffs.len() as i64 - 24
    }

    /// Coefficient of `q^(num/24)`; zero below the offset or off the
    /// lattice, panics past the known range.
    pub fn coeff_at_num24(&self, num: i64) -> BigRational {
        if num < self.offset24 || (num - self.offset24).rem_euclid(24) != 0 {
            return BigRational::zero();
        }
        let k = ((num - self.offset24) / 24) as usize;
        assert!(
            k < self.coeffs.len(),
            "coefficient of q^({num}/24) is beyond the known range"
        );
        self.coeffs[k].clone()
    }

    /// Iterates the known nonzero terms as `(numerator exponent, coeff)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.offset24 + 24 * k as i64, c))
    }

    /// Multiplication by `q^(delta/24)`.
    pub fn shift24(&self, delta: i64) -> QExp24 {
        QExp24 {
            offset24: self.offset24 + delta,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> QExp24 {
        QExp24 {
            offset24: self.offset24,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Product; the result is known through the shorter of the two inputs.
    pub fn mul(&self, rhs: &QExp24) -> QExp24 {
        let len = self.coeffs.len().min(rhs.coeffs.len());
        let mut out = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().take(len).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(len - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QExp24 {
            offset24: self.offset24 + rhs.offset24,
            coeffs: out,
        }
    }

    /// Sum; both offsets must agree modulo 24 so the lattices align.
    pub fn add(&self, rhs: &QExp24) -> crate::Result<QExp24> {
        if (self.offset24 - rhs.offset24).rem_euclid(24) != 0 {
            return Err(EtaError::InvalidArgument(format!(
                "cannot add series on different exponent lattices \
                 ({} vs {} mod 24)",
                self.offset24.rem_euclid(24),
                rhs.offset24.rem_euclid(24)
            )));
        }
        let offset = self.offset24.min(rhs.offset24);
        let kt = self.known_through24().min(rhs.known_through24());
        if kt < offset {
            return Ok(QExp24 {
                offset24: offset,
                coeffs: Vec::new(),
            });
        }
        let len = ((kt - offset) / 24 + 1) as usize;
        let mut out = vec![BigRational::zero(); len];
        for (src, base) in [(self, self.offset24), (rhs, rhs.offset24)] {
            let start = ((base - offset) / 24) as usize;
            for (k, c) in src.coeffs.iter().enumerate() {
                if start + k < len {
                    out[start + k] += c;
                }
            }
        }
        Ok(QExp24 {
            offset24: offset,
            coeffs: out,
        })
    }

    /// Declares coefficients known (zero) through numerator exponent `kt`.
    /// Use only when the series is exact, e.g. a finite polynomial.
    pub fn with_known_through24(mut self, kt: i64) -> QExp24 {
        while self.known_through24() < kt {
            self.coeffs.push(BigRational::zero());
        }
        self
    }

    /// Drops knowledge past numerator exponent `kt`.
    pub fn truncate_known24(mut self, kt: i64) -> QExp24 {
        if kt < self.offset24 {
            self.coeffs.clear();
        } else {
            let len = ((kt - self.offset24) / 24 + 1) as usize;
            self.coeffs.truncate(len);
        }
        self
    }

    /// Strips leading zero coefficients, keeping the lattice residue.
    pub fn normalized(mut self) -> QExp24 {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 && lead < self.coeffs.len() {
            self.coeffs.drain(..lead);
            self.offset24 += 24 * lead as i64;
        }
        self
    }
}

impl fmt::Display for QExp24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut shown = 0;
        let mut first = true;
        for (num, c) in self.terms() {
            if shown == 8 {
                write!(f, " + ...")?;
                break;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coeff_part = if mag.is_one() && num != 0 {
                String::new()
            } else {
                format!("{mag}")
            };
            let q_part = match (num, num % 24) {
                (0, _) => String::new(),
                (24, _) => "q".to_string(),
                (_, 0) => format!("q^{}", num / 24),
                _ => format!("q^({num}/24)"),
            };
            match (coeff_part.is_empty(), q_part.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{q_part}")?,
                (false, true) => write!(f, "{coeff_part}")?,
                (false, false) => write!(f, "{coeff_part}{q_part}")?,
            }
            shown += 1;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " (known through q^({}/24))", self.known_through24())
    }
}

/// Signed pentagonal exponents of `prod (1 - q^j) = sum_k (-1)^k
/// q^(k(3k-1)/2)`, listed with exponent at most `max`, ascending.
pub fn pentagonal_exponents(max: usize) -> Vec<(usize, i8)> {
    let mut out = vec![(0usize, 1i8)];
    let mut k = 1i64;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let mut pushed = false;
        for e in [k * (3 * k - 1) / 2, k * (3 * k + 1) / 2] {
            if e as usize <= max {
                out.push((e as usize, sign));
                pushed = true;
            }
        }
        if !pushed {
            break;
        }
        k += 1;
    }
    out.sort_unstable();
    out
}

fn sparse_mul_i128(c: &mut [i128], pents: &[(usize, i8)], stride: usize) -> bool {
    for k in (0..c.len()).rev() {
        let mut acc = 0i128;
        for (p, s) in pents {
            let e = p * stride;
            if e > k {
                break;
            }
            let term = c[k - e];
            acc = match if *s > 0 {
                acc.checked_add(term)
            } else {
                acc.checked_sub(term)
            } {
                Some(v) => v,
                None => return false,
            };
        }
        c[k] = acc;
    }
    true
}

fn sparse_div_i128(c: &mut [i128], pents: &[(usize, i8)], stride: usize) -> bool {
    for k in 0..c.len() {
        let mut acc = c[k];
        for (p, s) in &pents[1..] {
            let e = p * stride;
            if e > k {
                break;
            }
            let term = c[k - e];
            acc = match if *s > 0 {
                acc.checked_sub(term)
            } else {
                acc.checked_add(term)
            } {
                Some(v) => v,
                None => return false,
            };
        }
        c[k] = acc;
    }
    true
}

fn sparse_mul_big(c: &mut [BigInt], pents: &[(usize, i8)], stride: usize) {
    for k in (0..c.len()).rev() {
        let mut acc = BigInt::zero();
        for (p, s) in pents {
            let e = p * stride;
            if e > k {
                break;
            }
            if *s > 0 {
                acc += &c[k - e];
            } else {
                acc -= &c[k - e];
            }
        }
        c[k] = acc;
    }
}

fn sparse_div_big(c: &mut [BigInt], pents: &[(usize, i8)], stride: usize) {
    for k in 0..c.len() {
        let mut acc = std::mem::take(&mut c[k]);
        for (p, s) in &pents[1..] {
            let e = p * stride;
            if e > k {
                break;
            }
            if *s > 0 {
                acc -= &c[k - e];
            } else {
                acc += &c[k - e];
            }
        }
        c[k] = acc;
    }
}

/// Applies the factor `prod(1 - q^(stride j))^r` to a unit plan: the list of
/// `(stride, r)` steps, positive exponents first so intermediate products of
/// holomorphic quotients stay small.
fn unit_plan(r: &BTreeMap<u64, i64>) -> Vec<(usize, i64)> {
    let mut plan: Vec<(usize, i64)> = Vec::new();
    for (n, rn) in r.iter().filter(|(_, rn)| **rn > 0) {
        plan.push((*n as usize, *rn));
    }
    for (n, rn) in r.iter().filter(|(_, rn)| **rn < 0) {
        plan.push((*n as usize, *rn));
    }
    plan
}

fn run_plan_i128(plan: &[(usize, i64)], nterms: usize) -> Option<Vec<i128>> {
    let pents = pentagonal_exponents(nterms.saturating_sub(1));
    let mut c = vec![0i128; nterms];
    if nterms > 0 {
        c[0] = 1;
    }
    for (stride, r) in plan {
        for _ in 0..r.unsigned_abs() {
            let ok = if *r > 0 {
                sparse_mul_i128(&mut c, &pents, *stride)
            } else {
                sparse_div_i128(&mut c, &pents, *stride)
            };
            if !ok {
                return None;
            }
        }
    }
    Some(c)
}

fn run_plan_big(plan: &[(usize, i64)], nterms: usize) -> Vec<BigInt> {
    let pents = pentagonal_exponents(nterms.saturating_sub(1));
    let mut c = vec![BigInt::zero(); nterms];
    if nterms > 0 {
        c[0] = BigInt::one();
    }
    for (stride, r) in plan {
        for _ in 0..r.unsigned_abs() {
            if *r > 0 {
                sparse_mul_big(&mut c, &pents, *stride);
            } else {
                sparse_div_big(&mut c, &pents, *stride);
            }
        }
    }
    c
}

fn run_plan(plan: &[(usize, i64)], nterms: usize) -> Vec<BigInt> {
    match run_plan_i128(plan, nterms) {
        Some(c) => c.into_iter().map(BigInt::from).collect(),
        None => run_plan_big(plan, nterms),
    }
}

/// Coefficients of `prod_{j>=1} (1 - q^j)^r` through `q^(nterms-1)`; for
/// `r = -1` these are the partition numbers.
pub fn eta_power_coeffs(r: i64, nterms: usize) -> Vec<BigInt> {
    run_plan(&[(1, r)], nterms)
}

/// Coefficient tables of `prod (1 - q^j)^r` for every `r = 0..=rmax` at
/// once, sharing the multiplication passes between consecutive exponents.
/// Returns `None` if any value overflows `i128` (the tables for
/// `rmax <= 24` stay far inside the range for any practical length).
pub fn eta_power_family_i128(rmax: u32, nterms: usize) -> Option<Vec<Vec<i128>>> {
    let pents = pentagonal_exponents(nterms.saturating_sub(1));
    let mut c = vec![0i128; nterms];
    if nterms > 0 {
        c[0] = 1;
    }
    let mut family = Vec::with_capacity(rmax as usize + 1);
    family.push(c.clone());
    for _ in 1..=rmax {
        if !sparse_mul_i128(&mut c, &pents, 1) {
            return None;
        }
        family.push(c.clone());
    }
    Some(family)
}

/// The exact expansion of an eta-quotient with `nterms` known lattice
/// coefficients: `q^(offset/24) sum_k c_k q^k`.
pub fn eta_quotient_series(ex: &EtaExponents, nterms: usize) -> QExp24 {
    let plan = unit_plan(ex.exponents());
    QExp24::from_bigint_coeffs(ex.offset24(), run_plan(&plan, nterms))
}

/// Index of `Gamma0(N)` in the full modular group: `N prod_{p|N} (1 + 1/p)`.
pub fn index_gamma0(level: u64) -> u64 {
    let mut idx = level;
    for (p, _) in crate::arith::factorize(level) {
        idx = idx / p * (p + 1);
    }
    idx
}

/// One class of cusps of `Gamma0(N)` sharing a denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspClass {
    /// Denominator `c`, a divisor of the level.
    pub denominator: u64,
    /// Number of inequivalent cusps with this denominator:
    /// `phi(gcd(c, N/c))`.
    pub count: u64,
    /// Width of each: `N / gcd(c^2, N)`.
    pub width: u64,
}

/// Cusp classes of `Gamma0(N)`, one entry per divisor denominator. The
/// widths weighted by counts sum to the index.
pub fn cusps_gamma0(level: u64) -> Vec<CuspClass> {
    crate::arith::divisors(level)
        .into_iter()
        .map(|c| CuspClass {
            denominator: c,
            count: crate::arith::euler_phi(c.gcd(&(level / c))),
            width: level / (c * c).gcd(&level),
        })
        .collect()
}

/// Numerator-exponent depth that certifies equality of two forms of the
/// given twice-weight on `Gamma0(N)`: a nonzero form holomorphic at every
/// cusp vanishes at infinity to invariant order at most `k [SL2(Z) :
/// Gamma0(N)] / 12`, i.e. numerator exponent at most `index * 2k`.
pub fn valence_bound24(level: u64, twice_weight: i64) -> i64 {
    index_gamma0(level) as i64 * twice_weight
}

/// Certifies that two truncated expansions are equal as modular forms of
/// the given twice-weight on `Gamma0(N)`.
///
/// `pole_budget24` is 24 times the sum over cusps other than infinity of
/// `width * count * max(0, -ord)` for the difference; pass 0 when both
/// forms are holomorphic at every cusp. Errors if the truncations are too
/// short to certify or if a coefficient differs.
pub fn series_equal_certified(
    f: &QExp24,
    g: &QExp24,
    level: u64,
    twice_weight: i64,
    pole_budget24: i64,
) -> crate::Result<()> {
    let depth = valence_bound24(level, twice_weight) + pole_budget24;
    for (name, s) in [("left", f), ("right", g)] {
        if s.known_through24() < depth {
            return Err(EtaError::Resource(format!(
                "{name} series known through q^({}/24) but q^({depth}/24) \
                 is needed to certify equality",
                s.known_through24()
            )));
        }
    }
    let start = f.offset24.min(g.offset24);
    for num in start..=depth {
        let on_f = (num - f.offset24).rem_euclid(24) == 0;
        let on_g = (num - g.offset24).rem_euclid(24) == 0;
        if !on_f && !on_g {
            continue;
        }
        let cf = if on_f {
            f.coeff_at_num24(num)
        } else {
            BigRational::zero()
        };
        let cg = if on_g {
            g.coeff_at_num24(num)
        } else {
            BigRational::zero()
        };
        if cf != cg {
            return Err(EtaError::VerificationFailed(format!(
                "coefficient of q^({num}/24) differs: {cf} vs {cg}"
            )));
        }
    }
    Ok(())
}

/// On-disk cache of `eta_power_coeffs` tables, keyed by exponent. Files are
/// JSON with a versioned magic header and are written atomically; unreadable
/// or mismatched files are ignored and recomputed.
pub struct CoeffCache {
    dir: Option<PathBuf>,
}

const CACHE_MAGIC: &str = "etaops-coeff-cache-v1";

impl CoeffCache {
    /// Uses the directory in `ETAOPS_CACHE`, or no cache if unset.
    pub fn from_env() -> CoeffCache {
        CoeffCache {
            dir: std::env::var_os("ETAOPS_CACHE").map(PathBuf::from),
        }
    }

    pub fn at_dir(dir: PathBuf) -> CoeffCache {
        CoeffCache { dir: Some(dir) }
    }

    pub fn disabled() -> CoeffCache {
        CoeffCache { dir: None }
    }

    fn path_for(&self, r: i64) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("eta_power_{r}.json")))
    }

    fn load(&self, r: i64, nterms: usize) -> Option<Vec<BigInt>> {
        let path = self.path_for(r)?;
        let text = std::fs::read_to_string(path).ok()?;
        let v: serde_json::Value = serde_json::from_str(&text).ok()?;
        if v.get("magic")?.as_str()? != CACHE_MAGIC {
            return None;
        }
        if v.get("r")?.as_i64()? != r {
            return None;
        }
        let terms = v.get("coeffs")?.as_array()?;
        if terms.len() < nterms {
            return None;
        }
        let mut out = Vec::with_capacity(nterms);
        for t in terms.iter().take(nterms) {
            out.push(t.as_str()?.parse::<BigInt>().ok()?);
        }
        Some(out)
    }

    fn store(&self, r: i64, coeffs: &[BigInt]) {
        let Some(path) = self.path_for(r) else {
            return;
        };
        let Some(dir) = path.parent() else {
            return;
        };
        if std::fs::create_dir_all(dir).is_err() {
            return;
        }
        let v = serde_json::json!({
            "magic": CACHE_MAGIC,
            "r": r,
            "coeffs": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        });
        let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
        if std::fs::write(&tmp, v.to_string()).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }

    /// Returns the first `nterms` coefficients of `prod (1 - q^j)^r`,
    /// reusing and extending the cached table when possible.
    pub fn eta_power(&self, r: i64, nterms: usize) -> Vec<BigInt> {
        if let Some(hit) = self.load(r, nterms) {
            return hit;
        }
        let coeffs = eta_power_coeffs(r, nterms);
        self.store(r, &coeffs);
        coeffs
    }
}

/// Convenience for tests and examples: coefficient list as i64, panicking on
/// overflow.
pub fn coeffs_to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter()
        .map(|c| c.to_i64().expect("coefficient fits in i64"))
        .collect()
}
