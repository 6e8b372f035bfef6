//! Unimodular 2×2 integer matrices, congruence-subgroup membership,
//! conjugation by `h = (1 1; 0 2)` and the exceptional pairs `γ₁, γ₂`.

use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use num_rational::Ratio;

use rand::Rng;

use crate::arith::inverse_mod;
use crate::p1::Level;
use crate::{Error, Int, Result};

/// A point of `P¹(Q)`: `None` is the cusp at infinity.
pub type Cusp<I> = Option<Ratio<I>>;

/// The matrix `(a b; c d)` with `ad - bc = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2<I> {
    pub a: I,
    pub b: I,
    pub c: I,
    pub d: I,
}

/// Congruence subgroups understood by [`membership`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Gamma0(u64),
    Gamma2,
    /// `Γ0(N) ∩ Γ(2)`.
    GammaIntersection(u64),
}

impl<I: Int> Mat2<I> {
    /// Checked constructor.
    pub fn new(a: I, b: I, c: I, d: I) -> Result<Self> {
        let m = Mat2 { a, b, c, d };
        if m.det().is_one() {
            Ok(m)
        } else {
            Err(Error::NotUnimodular(m.to_string()))
        }
    }

    /// Checked constructor from machine integers.
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(I::of(a), I::of(b), I::of(c), I::of(d))
    }

    pub(crate) fn raw(a: I, b: I, c: I, d: I) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::raw(I::one(), I::zero(), I::zero(), I::one())
    }

    /// `T = (1 1; 0 1)`.
    pub fn t() -> Self {
        Self::raw(I::one(), I::one(), I::zero(), I::one())
    }

    /// `S = (0 -1; 1 0)`.
    pub fn s() -> Self {
        Self::raw(I::zero(), -I::one(), I::one(), I::zero())
    }

    /// `R = (0 -1; 1 1)`, of order 3 in `PSL₂(Z)`.
    pub fn r() -> Self {
        Self::raw(I::zero(), -I::one(), I::one(), I::one())
    }

    pub fn det(&self) -> I {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn inverse(&self) -> Self {
        Self::raw(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Self::identity(), |acc, _| &acc * &base)
    }

    pub fn trace(&self) -> I {
        self.a.clone() + self.d.clone()
    }

    /// Möbius action on `P¹(Q)`.
    pub fn apply(&self, x: &Cusp<I>) -> Cusp<I> {
        let (num, den) = match x {
            None => (self.a.clone(), self.c.clone()),
            Some(r) => (
                self.a.clone() * r.numer().clone() + self.b.clone() * r.denom().clone(),
                self.c.clone() * r.numer().clone() + self.d.clone() * r.denom().clone(),
            ),
        };
        (!den.is_zero()).then(|| Ratio::new(num, den))
    }

    /// `s(γ) = a + c`.
    pub fn s_invariant(&self) -> I {
        self.a.clone() + self.c.clone()
    }

    /// `t(γ) = b + d - a - c`.
    pub fn t_invariant(&self) -> I {
        self.b.clone() + self.d.clone() - self.a.clone() - self.c.clone()
    }

    /// Convert entries to another integer type.
    pub fn cast<J: Int>(&self) -> Mat2<J> {
        let f = |x: &I| J::from_i128(x.to_i128().expect("entry fits i128")).expect("entry fits target");
        Mat2::raw(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }
}

impl<I: Int> Mul for &Mat2<I> {
    type Output = Mat2<I>;
    fn mul(self, o: &Mat2<I>) -> Mat2<I> {
        Mat2::raw(
            self.a.clone() * o.a.clone() + self.b.clone() * o.c.clone(),
            self.a.clone() * o.b.clone() + self.b.clone() * o.d.clone(),
            self.c.clone() * o.a.clone() + self.d.clone() * o.c.clone(),
            self.c.clone() * o.b.clone() + self.d.clone() * o.d.clone(),
        )
    }
}

impl<I: Int> Mul for Mat2<I> {
    type Output = Mat2<I>;
    fn mul(self, o: Mat2<I>) -> Mat2<I> {
        &self * &o
    }
}

impl<I: fmt::Display> fmt::Display for Mat2<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// Membership test for `Γ0(N)`, `Γ(2)` and their intersection.
pub fn membership<I: Int>(m: &Mat2<I>, group: Group) -> bool {
    let even = |x: &I| x.is_even();
    let gamma0 = |n: u64| m.c.is_multiple_of(&I::of(n as i64));
    let gamma2 = || even(&m.b) && even(&m.c) && m.a.is_odd() && m.d.is_odd();
    match group {
        Group::Gamma0(n) => gamma0(n),
        Group::Gamma2 => gamma2(),
        Group::GammaIntersection(n) => gamma0(n) && gamma2(),
    }
}

/// `hγh⁻¹ = (a+c, (b+d-a-c)/2; 2c, d-c)`.
pub fn h_conjugate<I: Int>(g: &Mat2<I>) -> Result<Mat2<I>> {
    let t = g.t_invariant();
    if t.is_odd() {
        return Err(Error::NotConjugable(g.to_string()));
    }
    Ok(Mat2::raw(
        g.a.clone() + g.c.clone(),
        t / I::of(2),
        I::of(2) * g.c.clone(),
        g.d.clone() - g.c.clone(),
    ))
}

/// `s_k = k` for odd `k`, `k - pq` for even `k`.
pub fn s_k(k: i64, level: &Level) -> i64 {
    if k.rem_euclid(2) == 1 {
        k
    } else {
        k - level.n() as i64
    }
}

/// The two matrices attached to an exceptional class, with their Bezout witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalPair<I> {
    pub gamma1: Mat2<I>,
    pub gamma2: Mat2<I>,
    pub x: u64,
    pub k: i64,
    pub s_k: i64,
    /// `l(s_k x + 2) - 2 s pq = 1`.
    pub s: I,
    pub l: I,
    /// `l' s_k x - 2 s' (pq/x) = 1`.
    pub s_prime: I,
    pub l_prime: I,
}

/// Builds `γ₁^{x,k}, γ₂^{x,k}` with the minimal non-negative witnesses.
pub fn build_exceptional_pair<I: Int>(x: u64, k: i64, level: &Level) -> Result<ExceptionalPair<I>> {
    build_exceptional_pair_shifted(x, k, level, 0, 0)
}

/// As [`build_exceptional_pair`], moving each witness pair along its solution line
/// `(s, l) ↦ (s + m t, l + 2pq t)` and `(s', l') ↦ (s' + s_k x t', l' + 2(pq/x) t')`.
pub fn build_exceptional_pair_shifted<I: Int>(
    x: u64,
    k: i64,
    level: &Level,
    shift1: i64,
    shift2: i64,
) -> Result<ExceptionalPair<I>> {
    if x != level.p() && x != level.q() {
        return Err(Error::InvalidLevel(format!("{x} is not a prime factor of {}", level.n())));
    }
    let n = level.n() as i64;
    let y = n / x as i64;
    let sk = s_k(k, level);
    let m = sk * x as i64 + 2;
    let sx = sk * x as i64;
    let g1 = m.gcd(&(2 * n));
    if g1 != 1 {
        return Err(Error::NotInstantiable { x, k, gcd: g1 });
    }
    let g2 = sx.gcd(&(2 * y));
    if g2 != 1 {
        return Err(Error::NotInstantiable { x, k, gcd: g2 });
    }
    // 2 s pq ≡ -1 (mod m) and 2 s' y ≡ -1 (mod s_k x)
    let s0 = minimal_witness(2 * n, m);
    let s0p = minimal_witness(2 * y, sx);
    let s = I::of(s0) + I::of(m) * I::of(shift1);
    let l = (I::one() + I::of(2 * n) * s.clone()) / I::of(m);
    let sp = I::of(s0p) + I::of(sx) * I::of(shift2);
    let lp = (I::one() + I::of(2 * y) * sp.clone()) / I::of(sx);

    let nn = I::of(n);
    let diag1 = I::one() + I::of(4) * s.clone() * nn.clone();
    let gamma1 = Mat2::raw(
        diag1.clone(),
        -I::of(2) * l.clone(),
        -I::of(4) * s.clone() * I::of(m) * nn.clone(),
        diag1,
    );
    let diag2 = I::one() + I::of(4) * sp.clone() * I::of(y);
    let gamma2 = Mat2::raw(
        diag2.clone(),
        -I::of(2) * lp.clone(),
        -I::of(4) * sp.clone() * I::of(sk) * nn,
        diag2,
    );
    debug_assert!(gamma1.det().is_one() && gamma2.det().is_one());
    Ok(ExceptionalPair { gamma1, gamma2, x, k, s_k: sk, s, l, s_prime: sp, l_prime: lp })
}

/// Least `s ≥ 0` with `a s ≡ -1 (mod |m|)`.
fn minimal_witness(a: i64, m: i64) -> i64 {
    let m = m.abs();
    if m == 1 {
        return 0;
    }
    let inv = inverse_mod(a, m).expect("coprimality checked by caller");
    (-inv).rem_euclid(m)
}

/// Random element of `Γ0(pq)` as a word in `(1 1; 0 1)`, `(1 0; pq 1)` and inverses.
pub fn random_gamma0_element<I: Int, R: Rng + ?Sized>(level: &Level, word_length: usize, rng: &mut R) -> Mat2<I> {
    let n = I::of(level.n() as i64);
    let gens = [
        Mat2::t(),
        Mat2::raw(I::one(), I::zero(), n, I::one()),
    ];
    random_word(&gens, word_length, rng)
}

/// Random element of `Γ0(pq) ∩ Γ(2)` as a word in `T²`, `(1 0; 2pq 1)`,
/// the instantiable exceptional matrices, and inverses.
pub fn random_gamma_element<I: Int, R: Rng + ?Sized>(level: &Level, word_length: usize, rng: &mut R) -> Mat2<I> {
    let n = I::of(level.n() as i64);
    let mut gens = vec![
        Mat2::t().pow(2),
        Mat2::raw(I::one(), I::zero(), I::of(2) * n, I::one()),
    ];
    for x in [level.p(), level.q()] {
        let y = level.n() / x;
        for k in 1..y.min(4) as i64 {
            if let Ok(pair) = build_exceptional_pair::<I>(x, k, level) {
                gens.push(pair.gamma1);
                gens.push(pair.gamma2);
            }
        }
    }
    random_word(&gens, word_length, rng)
}

fn random_word<I: Int, R: Rng + ?Sized>(gens: &[Mat2<I>], len: usize, rng: &mut R) -> Mat2<I> {
    let mut m = Mat2::identity();
    for _ in 0..len {
        let g = &gens[rng.gen_range(0..gens.len())];
        let e: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        m = &m * &g.pow(e);
    }
    m
}
