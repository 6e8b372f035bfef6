//! Cusps of `X0(pq)`, ramification indices, constant terms of the Eisenstein
//! basis, the divisor `δ(E)`, and boundary maps on symbol sums.
//!
//! Constant terms use the normalization in which `E_N` has constant term
//! `N - 1` at `∞` (24 times the η-normalized values).
//!
//! Orientation: a symbol `ξ(g)` is the geodesic `g·0 → g·∞`, so its boundary is
//! `[g·0] - [g·∞]`. The closed forms in [`boundary_abc`] and
//! [`boundary_even_abc`] use the opposite orientation and equal the negatives
//! of [`boundary_symbol_sum`] and [`boundary_even`].

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::eisenstein::{eisenstein_element, SymbolSum};
use crate::mat2::Mat2;
use crate::p1::{
    alpha_prime, alpha_prime_pq, beta_prime, bezout_lm, bottom_row, coset_reps_gamma2cap, normalize, Level, P1Point,
};
use crate::periods::Series;
use crate::{BigInt, Error, Int, Rational, Result};

/// The four cusp classes of `Γ0(pq)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CuspClass {
    Infinity,
    OneOverP,
    OneOverQ,
    Zero,
}

impl CuspClass {
    pub const ALL: [CuspClass; 4] = [CuspClass::Infinity, CuspClass::OneOverP, CuspClass::OneOverQ, CuspClass::Zero];

    /// Class with denominator gcd `g = gcd(c, pq)`.
    fn from_gcd(g: u64, level: &Level) -> CuspClass {
        if g == level.n() {
            CuspClass::Infinity
        } else if g == level.p() {
            CuspClass::OneOverP
        } else if g == level.q() {
            CuspClass::OneOverQ
        } else {
            CuspClass::Zero
        }
    }

    /// `∞`, `1/p`, `1/q` or `0`.
    pub fn label(self, level: &Level) -> String {
        match self {
            CuspClass::Infinity => "inf".to_string(),
            CuspClass::OneOverP => format!("1/{}", level.p()),
            CuspClass::OneOverQ => format!("1/{}", level.q()),
            CuspClass::Zero => "0".to_string(),
        }
    }

    /// A matrix of `SL₂(Z)` sending `∞` to the representative cusp.
    pub fn width_matrix<I: Int>(self, level: &Level) -> Mat2<I> {
        match self {
            CuspClass::Infinity => Mat2::identity(),
            CuspClass::Zero => Mat2::s(),
            CuspClass::OneOverP => Mat2::from_i64(1, 0, level.p() as i64, 1).expect("unimodular"),
            CuspClass::OneOverQ => Mat2::from_i64(1, 0, level.q() as i64, 1).expect("unimodular"),
        }
    }
}

/// Class of the reduced cusp `a/c` (`∞ = 1/0`).
pub fn cusp_class<I: Int>(a: &I, c: &I, level: &Level) -> Result<CuspClass> {
    if !a.gcd(c).is_one() {
        return Err(Error::NotACusp(a.to_string(), c.to_string()));
    }
    let g = c.gcd(&I::of(level.n() as i64));
    Ok(CuspClass::from_gcd(g.to_u64().expect("divisor of pq"), level))
}

/// Ramification index of `X0(pq) → X(1)` at the cusp: its width.
pub fn ramification(cls: CuspClass, level: &Level) -> u64 {
    match cls {
        CuspClass::Infinity => 1,
        CuspClass::OneOverP => level.q(),
        CuspClass::OneOverQ => level.p(),
        CuspClass::Zero => level.n(),
    }
}

/// Divisor `Σ a_x [x]` on the four cusp classes; zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspDivisor<K> {
    coefficients: BTreeMap<CuspClass, K>,
}

impl<K> Default for CuspDivisor<K> {
    fn default() -> Self {
        CuspDivisor { coefficients: BTreeMap::new() }
    }
}

impl<K: Clone + Zero + PartialEq> CuspDivisor<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (CuspClass, K)>) -> Self {
        let mut d = Self::new();
        for (x, k) in pairs {
            d.add_term(x, k);
        }
        d
    }

    pub fn add_term(&mut self, x: CuspClass, k: K) {
        let entry = self.coefficients.entry(x).or_insert_with(K::zero);
        *entry = entry.clone() + k;
        if entry.is_zero() {
            self.coefficients.remove(&x);
        }
    }

    pub fn coefficient(&self, x: CuspClass) -> K {
        self.coefficients.get(&x).cloned().unwrap_or_else(K::zero)
    }

    /// Sum of the coefficients.
    pub fn degree(&self) -> K {
        self.coefficients.values().cloned().fold(K::zero(), |a, b| a + b)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CuspClass, &K)> {
        self.coefficients.iter()
    }

    /// Classes with non-zero coefficient.
    pub fn support(&self) -> Vec<CuspClass> {
        self.coefficients.keys().copied().collect()
    }

    pub fn scale(&self, k: &K) -> Self
    where
        K: Mul<Output = K>,
    {
        Self::from_pairs(self.coefficients.iter().map(|(x, v)| (*x, k.clone() * v.clone())))
    }

    /// `[a] - [b]`.
    pub fn edge(a: CuspClass, b: CuspClass) -> Self
    where
        K: One + Neg<Output = K>,
    {
        Self::from_pairs([(a, K::one()), (b, -K::one())])
    }
}

impl<K: std::fmt::Display + Clone + Zero + PartialEq + PartialOrd + Neg<Output = K>> CuspDivisor<K> {
    /// Human-readable form such as `14[inf] - 14[0]`.
    pub fn render(&self, level: &Level) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (x, v)) in self.coefficients.iter().enumerate() {
            let negative = *v < K::zero();
            let mag = if negative { -v.clone() } else { v.clone() };
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let _ = write!(out, "{mag}[{}]", x.label(level));
        }
        out
    }
}

impl<K: Clone + Zero + PartialEq> Add for CuspDivisor<K> {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        let mut out = self;
        for (x, v) in other.coefficients {
            out.add_term(x, v);
        }
        out
    }
}

impl<K: Clone + Zero + PartialEq + Neg<Output = K>> Neg for CuspDivisor<K> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::from_pairs(self.coefficients.into_iter().map(|(x, v)| (x, -v)))
    }
}

impl<K: Clone + Zero + PartialEq + Neg<Output = K>> Sub for CuspDivisor<K> {
    type Output = Self;

    fn sub(self, other: Self) -> Self {
        self + (-other)
    }
}

/// Constant terms `a₀(E_N|σ_x)` at the four cusps.
///
/// For `E_pq`: `pq - 1`, `(p - q)/q`, `(q - p)/p`, `(1 - pq)/pq` at `∞, 1/p, 1/q, 0`.
/// For `E_p`: `p - 1`, `p - 1`, `(1 - p)/p`, `(1 - p)/p`; `E_q` symmetrically.
pub fn a0_table<I: Int>(series: Series, level: &Level) -> BTreeMap<CuspClass, Ratio<I>> {
    let (p, q) = (I::of(level.p() as i64), I::of(level.q() as i64));
    let one = I::one();
    let r = |n: I, d: I| Ratio::new(n, d);
    let entries = match series {
        Series::PQ => {
            let n = p.clone() * q.clone();
            [
                r(n.clone() - one.clone(), one.clone()),
                r(p.clone() - q.clone(), q.clone()),
                r(q.clone() - p.clone(), p.clone()),
                r(one - n.clone(), n),
            ]
        }
        Series::P => [
            r(p.clone() - one.clone(), one.clone()),
            r(p.clone() - one.clone(), one.clone()),
            r(one.clone() - p.clone(), p.clone()),
            r(one - p.clone(), p),
        ],
        Series::Q => [
            r(q.clone() - one.clone(), one.clone()),
            r(one.clone() - q.clone(), q.clone()),
            r(q.clone() - one.clone(), one.clone()),
            r(one - q.clone(), q),
        ],
    };
    CuspClass::ALL.into_iter().zip(entries).collect()
}

/// `δ(E_N) = Σ_x e(x) a₀(E_N[x]) [x]`.
pub fn divisor_of_eisenstein<I: Int>(series: Series, level: &Level) -> CuspDivisor<Ratio<I>> {
    CuspDivisor::from_pairs(
        a0_table::<I>(series, level)
            .into_iter()
            .map(|(x, a)| (x, a * Ratio::from_integer(I::of(ramification(x, level) as i64)))),
    )
}

/// Class of the cusp `u/v` for a P¹ coordinate `v` (only `gcd(v, pq)` matters).
fn class_of_denominator(v: u64, level: &Level) -> CuspClass {
    CuspClass::from_gcd(v.gcd(&level.n()), level)
}

/// `δ(ξ(g)) = [g·0] - [g·∞]`: the classes of `b/d` and `a/c` for any lift of `g = (c : d)`.
pub fn boundary_of_point<K: Clone + Zero + PartialEq + One + Neg<Output = K>>(
    g: &P1Point,
    level: &Level,
) -> CuspDivisor<K> {
    CuspDivisor::edge(class_of_denominator(g.d, level), class_of_denominator(g.c, level))
}

/// Boundary of `Σ a_g ξ(g)`.
pub fn boundary_symbol_sum<K>(x: &SymbolSum<K>) -> CuspDivisor<K>
where
    K: Clone + Zero + PartialEq + One + Neg<Output = K> + Mul<Output = K>,
{
    let mut out = CuspDivisor::new();
    for (g, k) in x.iter() {
        for (cls, e) in boundary_of_point::<K>(g, x.level()).iter() {
            out.add_term(*cls, e.clone() * k.clone());
        }
    }
    out
}

/// `(A, B, C)` of the closed boundary formula:
/// `A = Σ_{k<q} [F(β_k) - F(β_k S)]`, `B = Σ_{i<p} [F(γ_i) - F(γ_i S)]`, `C = F(0,1) - F(1,0)`.
pub fn boundary_coefficients(x: &SymbolSum<Rational>) -> Result<(Rational, Rational, Rational)> {
    let level = x.level();
    let (p, q) = (level.p() as i64, level.q() as i64);
    let f = |c: i64, d: i64| -> Result<Rational> { Ok(x.get(&normalize(c, d, level)?)) };
    let mut a = Rational::zero();
    for k in 0..q {
        // β_k = (-1, -k; p, kp - 1); β_k S has bottom row (kp - 1, -p).
        a += f(p, k * p - 1)? - f(k * p - 1, -p)?;
    }
    let mut b = Rational::zero();
    for i in 0..p {
        b += f(q, i * q - 1)? - f(i * q - 1, -q)?;
    }
    let c = f(0, 1)? - f(1, 0)?;
    Ok((a, b, c))
}

/// `A[1/p] + B[1/q] + C[∞] - (A + B + C)[0]`; equals `-boundary_symbol_sum(x)`.
pub fn boundary_abc(x: &SymbolSum<Rational>) -> Result<CuspDivisor<Rational>> {
    let (a, b, c) = boundary_coefficients(x)?;
    Ok(abc_divisor(a, b, c))
}

fn abc_divisor(a: Rational, b: Rational, c: Rational) -> CuspDivisor<Rational> {
    let total = a.clone() + b.clone() + c.clone();
    CuspDivisor::from_pairs([
        (CuspClass::OneOverP, a),
        (CuspClass::OneOverQ, b),
        (CuspClass::Infinity, c),
        (CuspClass::Zero, -total),
    ])
}

/// The `Δ` representative whose bottom row lies in the class `g`.
pub fn delta_representative(g: &P1Point, level: &Level) -> Mat2<BigInt> {
    coset_reps_gamma2cap::<BigInt>(level)
        .into_iter()
        .find(|m| bottom_row(m, level) == *g)
        .expect("Δ maps bijectively onto P¹(Z/pqZ)")
}

/// Boundary of `Σ F(g) ξ⁰(g)` over `Γ0(pq) ∩ Γ(2)`, pushed to the cusps of `X0(pq)`:
/// each term contributes `[M·0] - [M·∞]` for its `Δ` representative `M`.
pub fn boundary_even(x: &SymbolSum<Rational>) -> Result<CuspDivisor<Rational>> {
    let level = x.level();
    let reps = coset_reps_gamma2cap::<BigInt>(level);
    let by_class: BTreeMap<P1Point, &Mat2<BigInt>> = reps.iter().map(|m| (bottom_row(m, level), m)).collect();
    let mut out = CuspDivisor::new();
    for (g, k) in x.iter() {
        let m = by_class[g];
        out.add_term(cusp_class(&m.b, &m.d, level)?, k.clone());
        out.add_term(cusp_class(&m.a, &m.c, level)?, -k.clone());
    }
    Ok(out)
}

/// `(A', B', C')` of the closed even-boundary formula:
/// `A' = Σ_{r<q} F(β'_r) - Σ_{k=1}^{q-1} F(α'_{kp}) - F(γ'_l)`,
/// `B' = Σ_{s<p} F(γ'_s) - Σ_{k=1}^{p-1} F(α'_{kq}) - F(β'_m)`,
/// `C' = F(0,1) - F(α'_{pq})`, where `lq + mp ≡ 1 (mod pq)`.
pub fn even_boundary_coefficients(x: &SymbolSum<Rational>) -> (Rational, Rational, Rational) {
    let level = x.level();
    let (p, q) = (level.p() as i64, level.q() as i64);
    let (l, m) = bezout_lm(level);
    let f = |g: Mat2<BigInt>| x.get(&bottom_row(&g, level));
    let gamma_prime = |s: i64| crate::p1::gamma_prime::<BigInt>(s, level);
    let mut a = (0..q).map(|r| f(beta_prime(r, level))).fold(Rational::zero(), |s, v| s + v);
    a -= (1..q).map(|k| f(alpha_prime(k * p, level))).fold(Rational::zero(), |s, v| s + v);
    a -= f(gamma_prime(l));
    let mut b = (0..p).map(|s| f(gamma_prime(s))).fold(Rational::zero(), |s, v| s + v);
    b -= (1..p).map(|k| f(alpha_prime(k * q, level))).fold(Rational::zero(), |s, v| s + v);
    b -= f(beta_prime(m, level));
    let c = f(Mat2::identity()) - f(alpha_prime_pq(level));
    (a, b, c)
}

/// `A'[1/p] + B'[1/q] + C'[∞] - (A' + B' + C')[0]`; equals `-boundary_even(x)`.
pub fn boundary_even_abc(x: &SymbolSum<Rational>) -> CuspDivisor<Rational> {
    let (a, b, c) = even_boundary_coefficients(x);
    abc_divisor(a, b, c)
}

/// The sign `σ` with `boundary_symbol_sum(E) = σ δ(E_pq)`, read off at `pq = 15`.
pub fn pinned_sigma() -> Result<i64> {
    let level = Level::new(3, 5)?;
    let b = boundary_symbol_sum(&eisenstein_element(Series::PQ, &level)?);
    let d = divisor_of_eisenstein::<BigInt>(Series::PQ, &level);
    if b == d {
        Ok(1)
    } else if b == -d {
        Ok(-1)
    } else {
        Err(Error::DegenerateInput("boundary of the Eisenstein element is not ±δ(E)"))
    }
}

/// Value of `σ` used throughout; checked against [`pinned_sigma`] in the tests.
pub const SIGMA: i64 = 1;
