//! Search routines over eta-quotients: levels and weights whose spaces are
//! forced one-dimensional by the valence bound, complete enumeration of
//! holomorphic eta-quotients of a given level and weight, the set of indices
//! `l` admissible for a pair of quotients, and exact determination of the
//! proportionality constant of the resulting operator identity.
//!
//! The enumeration is exact: cusp orders are linear in the exponent vector
//! and the order matrix over the divisors of the level is invertible, so the
//! rational relaxation of the holomorphy constraints is a simplex in order
//! coordinates. Each exponent is bounded by the extrema of a linear
//! functional over that simplex, i.e. over its vertices, and the integer
//! points of the resulting box are swept lexicographically with the final
//! coordinate forced by the weight.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::bigint::BigInt;
use num::integer::{Integer, Roots};
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};

use crate::arith::{divisors, factorize};
use crate::characters::{compatible_closed_form, EtaDirichletChar, RealDirichlet};
use crate::heckeops::{tl_level1_etapower, tl_rad_case, OperatorSpec, ScaledConstant};
use crate::qseries::{
    cusps_gamma0, eta_quotient_series, index_gamma0, series_equal_certified, valence_bound24,
    EtaExponents, QExp24,
};
use crate::EtaError;

/// All pairs `(level, twice_weight)` whose space of forms is pinned down by
/// the valence inequality: `index * twice_weight < 24` when `strict`, and
/// `index * twice_weight == 24` otherwise. Sorted by level, then weight.
pub fn dimension_candidates(strict: bool) -> Vec<(u64, i64)> {
    let mut out = Vec::new();
    for level in 1..=24u64 {
        let idx = index_gamma0(level) as i64;
        if idx > 24 {
            continue;
        }
        for tw in 1..=24i64 {
            let v = idx * tw;
            if v > 24 {
                break;
            }
            if (strict && v < 24) || (!strict && v == 24) {
                out.push((level, tw));
            }
        }
    }
    out
}

/// Exact inverse of a square rational matrix by Gauss-Jordan elimination;
/// `None` if singular.
fn invert(mut m: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let d = m.len();
    let mut inv: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == j {
                        BigRational::from(BigInt::from(1))
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..d {
        let pivot = (col..d).find(|&row| !m[row][col].is_zero())?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let pv = m[col][col].clone();
        for j in 0..d {
            m[col][j] /= &pv;
            inv[col][j] /= &pv;
        }
        for row in 0..d {
            if row != col && !m[row][col].is_zero() {
                let f = m[row][col].clone();
                for j in 0..d {
                    let a = &m[col][j] * &f;
                    m[row][j] -= a;
                    let b = &inv[col][j] * &f;
                    inv[row][j] -= b;
                }
            }
        }
    }
    Some(inv)
}

/// Per-exponent integer bounds containing every holomorphic exponent vector
/// of the given weight, from the vertices of the order-coordinate simplex.
fn exponent_box(level: u64, twice_weight: i64) -> (Vec<u64>, Vec<i64>, Vec<i64>) {
    let ds = divisors(level);
    let d = ds.len();
    let m: Vec<Vec<BigRational>> = ds
        .iter()
        .map(|c| {
            ds.iter()
                .map(|n| {
                    let g = c.gcd(n);
                    BigRational::new(BigInt::from(g * g), BigInt::from(24 * n))
                })
                .collect()
        })
        .collect();
    let minv = invert(m).expect("the cusp order matrix of Gamma0(N) is invertible");
    let total = BigInt::from(index_gamma0(level)) * BigInt::from(twice_weight);
    let classes = cusps_gamma0(level);
    let mut lo = vec![0i64; d];
    let mut hi = vec![0i64; d];
    for n in 0..d {
        let mut lo_n: Option<BigRational> = None;
        let mut hi_n: Option<BigRational> = None;
        for (i, cl) in classes.iter().enumerate() {
            // Vertex of the simplex: the whole order total at this cusp class.
            let oi = BigRational::new(total.clone(), BigInt::from(24 * cl.count * cl.width));
            let rv = &minv[n][i] * &oi;
            lo_n = Some(match lo_n {
                Some(v) => v.min(rv.clone()),
                None => rv.clone(),
            });
            hi_n = Some(match hi_n {
                Some(v) => v.max(rv),
                None => rv,
            });
        }
        lo[n] = lo_n.unwrap().floor().to_integer().to_i64().expect("small bound");
        hi[n] = hi_n.unwrap().ceil().to_integer().to_i64().expect("small bound");
    }
    (ds, lo, hi)
}

fn enumerate_walk(
    ds: &[u64],
    lo: &[i64],
    hi: &[i64],
    suf_lo: &[i64],
    suf_hi: &[i64],
    level: u64,
    cusp_only: bool,
    current: &mut Vec<i64>,
    remaining: i64,
    out: &mut Vec<EtaExponents>,
) {
    let j = current.len();
    if j + 1 == ds.len() {
        if (lo[j]..=hi[j]).contains(&remaining) {
            current.push(remaining);
            push_if_holomorphic(ds, current, level, cusp_only, out);
            current.pop();
        }
        return;
    }
    for v in lo[j]..=hi[j] {
        let rest = remaining - v;
        if rest < suf_lo[j + 1] || rest > suf_hi[j + 1] {
            continue;
        }
        current.push(v);
        enumerate_walk(
            ds, lo, hi, suf_lo, suf_hi, level, cusp_only, current, rest, out,
        );
        current.pop();
    }
}

fn push_if_holomorphic(
    ds: &[u64],
    current: &[i64],
    level: u64,
    cusp_only: bool,
    out: &mut Vec<EtaExponents>,
) {
    let exps = EtaExponents::new(level, ds.iter().copied().zip(current.iter().copied()))
        .expect("divisors of the level are valid indices");
    for c in ds {
        let o = exps.ord_at_cusp(*c);
        if o.is_negative() || (cusp_only && o.is_zero()) {
            return;
        }
    }
    out.push(exps);
}

fn enumerate_with_margin(
    level: u64,
    twice_weight: i64,
    cusp_only: bool,
    margin: i64,
) -> crate::Result<Vec<EtaExponents>> {
    if level == 0 {
        return Err(EtaError::InvalidArgument("level must be positive".into()));
    }
    if twice_weight < 0 {
        return Ok(Vec::new());
    }
    let (ds, mut lo, mut hi) = exponent_box(level, twice_weight);
    for v in &mut lo {
        *v -= margin;
    }
    for v in &mut hi {
        *v += margin;
    }
    let d = ds.len();
    let mut suf_lo = vec![0i64; d + 1];
    let mut suf_hi = vec![0i64; d + 1];
    for j in (0..d).rev() {
        suf_lo[j] = suf_lo[j + 1] + lo[j];
        suf_hi[j] = suf_hi[j + 1] + hi[j];
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(d);
    enumerate_walk(
        &ds,
        &lo,
        &hi,
        &suf_lo,
        &suf_hi,
        level,
        cusp_only,
        &mut current,
        twice_weight,
        &mut out,
    );
    Ok(out)
}

/// Every eta-quotient of the given level and twice-weight whose invariant
/// order is non-negative at all cusps (strictly positive when `cusp_only`),
/// in lexicographic order of the exponent vector over ascending divisors.
///
/// Weight zero yields the constant quotient alone; negative weight yields
/// nothing, since the total cusp order of a holomorphic quotient equals
/// `index * twice_weight / 24`.
pub fn enumerate_holomorphic_etaquotients(
    level: u64,
    twice_weight: i64,
    cusp_only: bool,
) -> crate::Result<Vec<EtaExponents>> {
    enumerate_with_margin(level, twice_weight, cusp_only, 0)
}

/// The set of indices `l` for which a pair of eta-quotients passes the
/// closed-form compatibility criterion, described by congruence data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissibleL {
    /// Even twice-weight: admissibility depends only on `l mod 24`.
    Integral {
        /// Residues in `0..24`; `l` is admissible iff `l mod 24` is listed.
        residues: BTreeSet<u64>,
    },
    /// Odd twice-weight: admissible `l` are exactly `l0 * m^2` for the fixed
    /// square-free `l0` and squares `m^2` in the listed residue classes.
    HalfIntegral {
        /// The least positive integer whose product with `l` must be square.
        l0: u64,
        /// Residues of `m^2` mod 24, a subset of `{0, 1, 4, 9, 12, 16}`.
        m2_residues: BTreeSet<u64>,
    },
}

impl AdmissibleL {
    /// Whether a positive index is admissible.
    pub fn contains(&self, l: u64) -> bool {
        if l == 0 {
            return false;
        }
        match self {
            AdmissibleL::Integral { residues } => residues.contains(&(l % 24)),
            AdmissibleL::HalfIntegral { l0, m2_residues } => {
                if l % l0 != 0 {
                    return false;
                }
                let q = l / l0;
                let s = q.sqrt();
                s * s == q && m2_residues.contains(&(q % 24))
            }
        }
    }

    /// Whether no index at all is admissible.
    pub fn is_empty(&self) -> bool {
        match self {
            AdmissibleL::Integral { residues } => residues.is_empty(),
            AdmissibleL::HalfIntegral { m2_residues, .. } => m2_residues.is_empty(),
        }
    }

    /// All admissible indices up to a bound, ascending.
    pub fn members_up_to(&self, bound: u64) -> Vec<u64> {
        match self {
            AdmissibleL::Integral { .. } => (1..=bound).filter(|l| self.contains(*l)).collect(),
            AdmissibleL::HalfIntegral { l0, m2_residues } => {
                let mut out = Vec::new();
                let mut m = 1u64;
                while l0 * m * m <= bound {
                    if m2_residues.contains(&(m * m % 24)) {
                        out.push(l0 * m * m);
                    }
                    m += 1;
                }
                out
            }
        }
    }
}

impl fmt::Display for AdmissibleL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdmissibleL::Integral { residues } => {
                if residues.is_empty() {
                    return write!(f, "no admissible l");
                }
                let list: Vec<String> = residues.iter().map(u64::to_string).collect();
                write!(f, "l == {{{}}} (mod 24)", list.join(", "))
            }
            AdmissibleL::HalfIntegral { l0, m2_residues } => {
                if m2_residues.is_empty() {
                    return write!(f, "no admissible l");
                }
                let list: Vec<String> = m2_residues.iter().map(u64::to_string).collect();
                write!(f, "l = {l0} m^2 with m^2 == {{{}}} (mod 24)", list.join(", "))
            }
        }
    }
}

/// Finds every index `l` compatible with the pair `(r, rp)` of equal level
/// and weight, under trivial Dirichlet characters.
///
/// For even twice-weight the criterion depends only on `l mod 24`, so the
/// residues are read off by scanning one period. For odd twice-weight the
/// fourth condition forces `l` times the product of divisors with odd
/// exponent difference to be a square, so `l = l0 m^2` with `l0` that
/// product's square-free kernel, and the remaining congruences cut out
/// residue classes of `m^2` mod 24.
pub fn findl(level: u64, r: &EtaExponents, rp: &EtaExponents) -> crate::Result<AdmissibleL> {
    if r.level() != level || rp.level() != level {
        return Err(EtaError::InvalidArgument(
            "exponent vectors must live on the stated level".into(),
        ));
    }
    if r.twice_weight() != rp.twice_weight() {
        return Err(EtaError::InvalidArgument(
            "the operator needs equal weights on both sides".into(),
        ));
    }
    let chi = RealDirichlet::trivial(level);
    if r.twice_weight() % 2 == 0 {
        let mut residues = BTreeSet::new();
        for l in 1..=24u64 {
            if compatible_closed_form(level, &chi, r, &chi, rp, l)? {
                residues.insert(l % 24);
            }
        }
        Ok(AdmissibleL::Integral { residues })
    } else {
        // Square-free kernel of the product of divisors where the exponent
        // difference is odd.
        let mut parity: BTreeMap<u64, bool> = BTreeMap::new();
        for n in divisors(level) {
            if (r.exponent(n) - rp.exponent(n)).rem_euclid(2) == 1 {
                for (p, e) in factorize(n) {
                    if e % 2 == 1 {
                        let slot = parity.entry(p).or_insert(false);
                        *slot = !*slot;
                    }
                }
            }
        }
        let l0: u64 = parity
            .iter()
            .filter(|(_, odd)| **odd)
            .map(|(p, _)| *p)
            .product();
        let mut m2_residues = BTreeSet::new();
        for m in 1..=24u64 {
            if compatible_closed_form(level, &chi, r, &chi, rp, l0 * m * m)? {
                m2_residues.insert(m * m % 24);
            }
        }
        Ok(AdmissibleL::HalfIntegral { l0, m2_residues })
    }
}

/// Lower bound, over every cusp with denominator `c`, for the invariant
/// order of the transformed quotient: each coset term lands at a cusp whose
/// denominator divides `c l`, with the order scaled by `gcd^2 / l`.
fn image_order_floor(r: &EtaExponents, l: u64, c: u64) -> BigRational {
    let cl = c * l;
    divisors(cl)
        .into_iter()
        .map(|g| BigRational::new(BigInt::from(g * g), BigInt::from(l)) * r.ord_at_cusp(cl / g))
        .min()
        .expect("cl has at least one divisor")
}

/// Reads off the constant of proportionality from the first coefficient,
/// cross-checks it at an independent second index, then certifies the
/// equality up to the valence depth. Fails hard when the series is not a
/// single rational multiple of the target.
fn proportional_mantissa(
    s: &QExp24,
    g: &QExp24,
    level: u64,
    twice_weight: i64,
    pole_budget24: i64,
) -> crate::Result<BigRational> {
    let mantissa = s.coeff_at_num24(g.offset24);
    let second = g
        .terms()
        .find(|(num, c)| *num > g.offset24 && !c.is_zero() && *num <= s.known_through24());
    if let Some((num, c)) = second {
        if s.coeff_at_num24(num) != &mantissa * c {
            return Err(EtaError::VerificationFailed(format!(
                "the transform is not a single multiple of the target: the \
                 ratios at q^({}/24) and q^({num}/24) disagree",
                g.offset24
            )));
        }
    }
    series_equal_certified(s, &g.scale(&mantissa), level, twice_weight, pole_budget24)?;
    Ok(mantissa)
}

/// The exact constant `c` with `T_l eta^r = c eta^rp`, determined from the
/// first nonzero coefficient and certified to the valence depth.
///
/// The pair must be compatible at `l`, and `l` must be reachable by an exact
/// transform path: level one, or radical of `l` dividing the radical of the
/// level. The constant is returned as `mantissa * l^exponent` with rational
/// mantissa read off the series quotient.
pub fn determine_constant(
    level: u64,
    r: &EtaExponents,
    rp: &EtaExponents,
    l: u64,
) -> crate::Result<ScaledConstant> {
    if r.level() != level || rp.level() != level {
        return Err(EtaError::InvalidArgument(
            "exponent vectors must live on the stated level".into(),
        ));
    }
    if l == 0 {
        return Err(EtaError::InvalidArgument("the index l must be positive".into()));
    }
    let tw = r.twice_weight();
    if level == 1 {
        if r != rp {
            return Err(EtaError::InvalidArgument(
                "level one carries a single eta power per weight".into(),
            ));
        }
        let chi = RealDirichlet::trivial(1);
        if !compatible_closed_form(level, &chi, r, &chi, rp, l)? {
            return Err(EtaError::InvalidArgument(format!(
                "the pair is not compatible at l = {l}"
            )));
        }
        let depth = valence_bound24(1, tw);
        let first = if tw >= 0 { 0 } else { tw * l as i64 };
        let nmax = ((depth - first).div_euclid(24) + 2).max(2) as usize;
        let (series, constant) = tl_level1_etapower(tw, l, nmax)?;
        let g = eta_quotient_series(r, ((depth - tw).div_euclid(24) + 2).max(2) as usize);
        let mantissa = proportional_mantissa(&series, &g, level, tw, 0)?;
        return Ok(constant.scaled(&mantissa));
    }
    let op = OperatorSpec::new(
        level,
        l,
        EtaDirichletChar::from_exponents(r.clone()),
        EtaDirichletChar::from_exponents(rp.clone()),
    )?;
    // Pole budget for the difference at cusps away from infinity, from the
    // order floor of the transform and the order of the target.
    let mut budget = BigRational::zero();
    for cl in cusps_gamma0(level) {
        if cl.denominator == level {
            continue;
        }
        let worst = image_order_floor(r, l, cl.denominator).min(rp.ord_at_cusp(cl.denominator));
        if worst.is_negative() {
            budget += BigRational::from(BigInt::from(24 * cl.count * cl.width)) * -worst;
        }
    }
    let budget24 = budget
        .ceil()
        .to_integer()
        .to_i64()
        .expect("pole budget fits in machine range");
    let depth = valence_bound24(level, tw) + budget24;
    let nf = ((l as i64 * (depth + 24) - r.offset24()).max(24).div_euclid(24) + 2) as usize;
    let f = eta_quotient_series(r, nf);
    let (series, constant) = tl_rad_case(&op, &f)?;
    let g = eta_quotient_series(
        rp,
        ((depth - rp.offset24()).max(24).div_euclid(24) + 2) as usize,
    );
    let mantissa = proportional_mantissa(&series, &g, level, tw, budget24)?;
    Ok(constant.scaled(&mantissa))
}

/// One admissible source/target pair at a level and weight, with the full
/// congruence description of its indices.
#[derive(Clone, Debug)]
pub struct OperatorTableRow {
    pub level: u64,
    pub twice_weight: i64,
    pub source: EtaExponents,
    pub target: EtaExponents,
    pub admissible: AdmissibleL,
}

/// All ordered pairs of holomorphic eta-quotients of the given level and
/// twice-weight carrying at least one admissible index, in lexicographic
/// order of (source, target) exponent vectors.
pub fn admissible_operator_rows(
    level: u64,
    twice_weight: i64,
) -> crate::Result<Vec<OperatorTableRow>> {
    let quotients = enumerate_holomorphic_etaquotients(level, twice_weight, false)?;
    let mut rows = Vec::new();
    for source in &quotients {
        for target in &quotients {
            let admissible = findl(level, source, target)?;
            if !admissible.is_empty() {
                rows.push(OperatorTableRow {
                    level,
                    twice_weight,
                    source: source.clone(),
                    target: target.clone(),
                    admissible,
                });
            }
        }
    }
    Ok(rows)
}

fn exponent_key(exps: &EtaExponents) -> String {
    if exps.exponents().is_empty() {
        return "1:0".into();
    }
    let items: Vec<String> = exps
        .exponents()
        .iter()
        .map(|(n, rn)| format!("{n}:{rn}"))
        .collect();
    items.join(" ")
}

/// Renders rows as CSV with `n:r`-pair exponent columns; the admissibility
/// column lists residues separated by semicolons.
pub fn rows_to_csv(rows: &[OperatorTableRow]) -> String {
    let mut out = String::from("level,twice_weight,source,target,kind,l0,residues\n");
    for row in rows {
        let (kind, l0, residues): (&str, String, Vec<String>) = match &row.admissible {
            AdmissibleL::Integral { residues } => (
                "integral",
                String::new(),
                residues.iter().map(u64::to_string).collect(),
            ),
            AdmissibleL::HalfIntegral { l0, m2_residues } => (
                "half-integral",
                l0.to_string(),
                m2_residues.iter().map(u64::to_string).collect(),
            ),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.level,
            row.twice_weight,
            exponent_key(&row.source),
            exponent_key(&row.target),
            kind,
            l0,
            residues.join(";")
        ));
    }
    out
}

/// Renders rows as a readable table in eta notation.
pub fn rows_to_text(rows: &[OperatorTableRow]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&format!(
            "N = {:<3} 2k = {:<3} {}  ->  {}  :  {}\n",
            row.level, row.twice_weight, row.source, row.target, row.admissible
        ));
    }
    out
}
