//! The coefficient function `F_N` on `P¹(Z/pqZ)`, its six-fold sibling
//! `F_{E_N}`, the Bernoulli-sum form, and the Eisenstein element as a
//! [`SymbolSum`].
//!
//! Points `(c : d)` split into three cases:
//!
//! * generic, `gcd(d - c, pq) = 1`: `(c : d) = (r - 1 : r + 1)` and
//!   `F_N = 2(S(r, N) - 2S(r, 2N))`;
//! * the unit class `(1 : 1)`, where `F_N = 0`;
//! * exceptional, `gcd(d - c, pq) = x ∈ {p, q}`: the point has one of the forms
//!   `(±(1 + kx) : 1)` or `(1 : ±(1 + kx))` and `F_N = ±(P_N(γ₁) - P_N(γ₂))`
//!   for the matrices of [`build_exceptional_pair`](crate::mat2::build_exceptional_pair).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{bernoulli1, dedekind, inverse_mod};
use crate::mat2::build_exceptional_pair_shifted;
use crate::oracle::numeric_f;
use crate::p1::{enumerate, normalize, Level, P1Point};
use crate::periods::{p_value, Series};
use crate::{BigInt, Error, Int, Rational, Result};

/// Sparse formal sum `Σ a_g ξ(g)` over canonical points, without zero terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolSum<K> {
    level: Level,
    terms: BTreeMap<P1Point, K>,
}

impl<K> SymbolSum<K>
where
    K: Clone + Zero + PartialEq,
{
    pub fn new(level: &Level) -> Self {
        SymbolSum { level: level.clone(), terms: BTreeMap::new() }
    }

    /// The single symbol `ξ(g)`.
    pub fn symbol(level: &Level, g: P1Point, coefficient: K) -> Self {
        let mut s = Self::new(level);
        s.add_term(g, coefficient);
        s
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    /// Adds `k ξ(g)`, dropping the entry if it cancels.
    pub fn add_term(&mut self, g: P1Point, k: K) {
        let entry = self.terms.entry(g).or_insert_with(K::zero);
        *entry = entry.clone() + k;
        if entry.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn get(&self, g: &P1Point) -> K {
        self.terms.get(g).cloned().unwrap_or_else(K::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&P1Point, &K)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficientwise `k · self`.
    pub fn scale(&self, k: &K) -> Self
    where
        K: Mul<Output = K>,
    {
        let mut out = Self::new(&self.level);
        for (g, v) in &self.terms {
            out.add_term(*g, k.clone() * v.clone());
        }
        out
    }

    /// `self + other`; both sums must share a level.
    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level.n(), other.level.n()));
        }
        let mut out = self.clone();
        for (g, v) in &other.terms {
            out.add_term(*g, v.clone());
        }
        Ok(out)
    }
}

impl<K: Clone + Zero + PartialEq + Neg<Output = K>> Neg for SymbolSum<K> {
    type Output = Self;

    fn neg(self) -> Self {
        let terms = self.terms.into_iter().map(|(g, v)| (g, -v)).collect();
        SymbolSum { level: self.level, terms }
    }
}

impl<K: Clone + Zero + PartialEq + Add<Output = K>> Add for SymbolSum<K> {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        self.plus(&other).expect("sums at the same level")
    }
}

/// Which of the two residue forms `(1 + kx, ·)` / `(1, 1 + kx)` a point has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `(±(1 + kx) : 1)`.
    LeftOfOne,
    /// `(1 : ±(1 + kx))`.
    RightOfOne,
}

/// Case of the coefficient table a point falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    /// `(c : d) = (r - 1 : r + 1)` with `r ≡ (c + d)(d - c)⁻¹ (mod pq)`.
    Generic { r: u64 },
    /// One of the forms `(1 + kx : 1)`, `(-1 - kx : 1)`, `(1 : 1 + kx)`, `(1 : -1 - kx)`;
    /// `negated` marks the `-1 - kx` variants.
    Exceptional { x: u64, k: i64, side: Side, negated: bool },
    /// `pq | d - c`.
    UnitClass,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::Generic { r } => write!(f, "generic(r={r})"),
            CaseTag::Exceptional { x, k, side, negated } => {
                let sign = if *negated { "-" } else { "+" };
                let side = match side {
                    Side::LeftOfOne => "left",
                    Side::RightOfOne => "right",
                };
                write!(f, "exceptional(x={x},k={k},{side}{sign})")
            }
            CaseTag::UnitClass => f.write_str("unit"),
        }
    }
}

/// Every exceptional form matched by `g`, in dispatch order:
/// `x = p` before `q`; left before right; `+` before `-`.
pub fn exceptional_forms(g: &P1Point, level: &Level) -> Vec<CaseTag> {
    let n = level.n() as i64;
    let (c, d) = (g.c as i64, g.d as i64);
    let mut out = Vec::new();
    for x in [level.p(), level.q()] {
        let y = n / x as i64;
        for side in [Side::LeftOfOne, Side::RightOfOne] {
            // Left: (e : 1) with e = c d⁻¹; right: (1 : e) with e = d c⁻¹.
            let (num, den) = match side {
                Side::LeftOfOne => (c, d),
                Side::RightOfOne => (d, c),
            };
            let Some(inv) = inverse_mod(den, n) else { continue };
            let e = (num * inv).rem_euclid(n);
            for negated in [false, true] {
                let t = if negated { -1 - e } else { e - 1 }.rem_euclid(n);
                if t % x as i64 != 0 {
                    continue;
                }
                let k = (t / x as i64).rem_euclid(y);
                if k != 0 {
                    out.push(CaseTag::Exceptional { x, k, side, negated });
                }
            }
        }
    }
    out
}

/// Case of `g` in the coefficient table; exceptional points report their first form.
pub fn classify(g: &P1Point, level: &Level) -> CaseTag {
    let n = level.n() as i64;
    let diff = (g.d as i64 - g.c as i64).rem_euclid(n);
    if diff == 0 {
        return CaseTag::UnitClass;
    }
    if let Some(inv) = inverse_mod(diff, n) {
        let r = ((g.c + g.d) as i64 * inv).rem_euclid(n);
        return CaseTag::Generic { r: r as u64 };
    }
    exceptional_forms(g, level)
        .into_iter()
        .next()
        .expect("every non-generic, non-unit point has an exceptional form")
}

/// How the generic residue `r mod pq` is lifted to an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum RepresentativeRule {
    /// `r ∈ [0, pq)`.
    Residue,
    /// The odd representative of `r` in `[0, 2pq)`.
    #[default]
    Odd,
}

impl RepresentativeRule {
    pub fn lift(self, r: u64, level: &Level) -> u64 {
        match self {
            RepresentativeRule::Residue => r,
            RepresentativeRule::Odd if r % 2 == 1 => r,
            RepresentativeRule::Odd => r + level.n(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RepresentativeRule::Residue => "residue",
            RepresentativeRule::Odd => "odd",
        }
    }
}

/// Generic value `2(S(r, N) - 2S(r, 2N))`.
pub fn generic_value<I: Int>(r: I, n: u64) -> Ratio<I> {
    let nn = I::of(n as i64);
    let s1 = dedekind(r.clone(), nn.clone()).expect("N >= 1");
    let s2 = dedekind(r, I::of(2) * nn).expect("2N >= 1");
    (s1 - s2 * Ratio::from_integer(I::of(2))) * Ratio::from_integer(I::of(2))
}

/// `Σ_{h=0}^{pq-1} B̄₁(hr / 2pq)`.
pub fn bernoulli_sum<I: Int>(r: I, level: &Level) -> Ratio<I> {
    let n = level.n() as i64;
    (0..n).fold(Ratio::zero(), |acc, h| acc + bernoulli1(&Ratio::new(I::of(h) * r.clone(), I::of(2 * n))))
}

/// The Bernoulli-sum form of `F_pq` on the generic class with representative `r`.
///
/// The sum `Σ B̄₁(hr/2pq)` is half of `F_pq`; this returns twice the sum.
pub fn f_value_bernoulli<I: Int>(r: I, level: &Level) -> Ratio<I> {
    bernoulli_sum(r, level) * Ratio::from_integer(I::of(2))
}

/// `±(P_N(γ₁) - P_N(γ₂))` for an exceptional tag, with Bezout witnesses shifted
/// along their solution lines.
pub fn exceptional_value<I: Int>(
    tag: &CaseTag,
    series: Series,
    level: &Level,
    shift1: i64,
    shift2: i64,
) -> Result<Ratio<I>> {
    let CaseTag::Exceptional { x, k, side, .. } = *tag else {
        return Err(Error::DegenerateInput("exceptional_value needs an exceptional tag"));
    };
    let pair = build_exceptional_pair_shifted::<I>(x, k, level, shift1, shift2)?;
    let v = p_value(&pair.gamma1, series, level)? - p_value(&pair.gamma2, series, level)?;
    Ok(match side {
        Side::LeftOfOne => v,
        Side::RightOfOne => -v,
    })
}

/// Where a coefficient came from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FSource {
    /// The exact case table.
    Formula,
    /// Rounded numeric integral: `estimate ≈ F_{E_N}`, `bound` its error estimate.
    Oracle { estimate: f64, bound: f64 },
}

impl FSource {
    pub fn label(&self) -> &'static str {
        match self {
            FSource::Formula => "formula",
            FSource::Oracle { .. } => "oracle",
        }
    }
}

/// One coefficient `F_N(g)` with its case and provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct Coefficient {
    pub point: P1Point,
    pub tag: CaseTag,
    pub value: Rational,
    pub source: FSource,
}

/// Quadrature tolerance used for oracle-derived coefficients.
pub const ORACLE_TOL: f64 = 0.05;
/// Largest distance to an integer accepted when rounding an oracle value.
pub const ROUNDING_LIMIT: f64 = 0.4;

/// `F_N(g)`: exact where the table applies, otherwise the rounded value of
/// `numeric_F / 6`.
pub fn f_value(g: &P1Point, series: Series, level: &Level, rule: RepresentativeRule) -> Result<Coefficient> {
    let tag = classify(g, level);
    let exact = |tag: CaseTag, value: Rational| Ok(Coefficient { point: *g, tag, value, source: FSource::Formula });
    match tag {
        CaseTag::UnitClass => exact(tag, Rational::zero()),
        CaseTag::Generic { r } => {
            let r = BigInt::from(rule.lift(r, level));
            exact(tag, generic_value(r, series.modulus(level)))
        }
        CaseTag::Exceptional { .. } => {
            for form in exceptional_forms(g, level) {
                match exceptional_value::<BigInt>(&form, series, level, 0, 0) {
                    Ok(v) => return exact(form, v),
                    Err(Error::NotInstantiable { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            oracle_value(g, tag, series, level)
        }
    }
}

fn oracle_value(g: &P1Point, tag: CaseTag, series: Series, level: &Level) -> Result<Coefficient> {
    let est = numeric_f::<f64>(g, series, level, ORACLE_TOL)?;
    let six_f = est.value.re;
    let rounded = (six_f / 6.0).round();
    let distance = (six_f - 6.0 * rounded).abs();
    if est.error >= ROUNDING_LIMIT || distance + est.error >= ROUNDING_LIMIT {
        return Err(Error::PrecisionFailure { bound: distance + est.error, tol: ROUNDING_LIMIT });
    }
    let value = Rational::from_integer(BigInt::from(rounded.to_i64().expect("small coefficient")));
    Ok(Coefficient { point: *g, tag, value, source: FSource::Oracle { estimate: six_f, bound: est.error } })
}

/// All coefficients `F_N(g)` in point order.
pub fn coefficient_table(series: Series, level: &Level, rule: RepresentativeRule) -> Result<Vec<Coefficient>> {
    enumerate(level).iter().map(|g| f_value(g, series, level, rule)).collect()
}

/// `Σ_g F_N(g) ξ(g)` under the default representative rule.
pub fn eisenstein_element(series: Series, level: &Level) -> Result<SymbolSum<Rational>> {
    Ok(element_from_table(&coefficient_table(series, level, RepresentativeRule::default())?, level))
}

/// The symbol sum carried by a coefficient table.
pub fn element_from_table(table: &[Coefficient], level: &Level) -> SymbolSum<Rational> {
    let mut out = SymbolSum::new(level);
    for row in table {
        out.add_term(row.point, row.value.clone());
    }
    out
}

/// `Σ_g F_{E_N}(g) ξ(g) = 6 Σ_g F_N(g) ξ(g)`.
pub fn even_eisenstein_coefficients(series: Series, level: &Level) -> Result<SymbolSum<Rational>> {
    Ok(eisenstein_element(series, level)?.scale(&Rational::from_integer(BigInt::from(6))))
}

/// The point `(c : d)` as a canonical class.
pub fn point(c: i64, d: i64, level: &Level) -> Result<P1Point> {
    normalize(c, d, level)
}
