//! Exact integer and rational kernels: extended gcd, CRT, the periodic
//! Bernoulli function and Dedekind sums.

use num_rational::Ratio;
use num_traits::Zero;

use crate::{Error, Int, Result};

/// Extended gcd: returns `(g, u, v)` with `a*u + b*v = g = gcd(a, b) > 0`.
pub fn egcd<I: Int>(a: I, b: I) -> Result<(I, I, I)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::DegenerateInput("egcd(0, 0)"));
    }
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (I::one(), I::zero());
    let (mut t0, mut t1) = (I::zero(), I::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = r0 - q.clone() * r1.clone();
        let s2 = s0 - q.clone() * s1.clone();
        let t2 = t0 - q * t1.clone();
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        Ok((-r0, -s0, -t0))
    } else {
        Ok((r0, s0, t0))
    }
}

/// Inverse of `a` modulo `m > 1`, in `[0, m)`.
pub fn inverse_mod<I: Int>(a: I, m: I) -> Option<I> {
    let (g, u, _) = egcd(a, m.clone()).ok()?;
    g.is_one().then(|| u.mod_floor(&m))
}

/// Chinese remainder: the unique `x mod m1*m2` with `x ≡ r1 (m1)`, `x ≡ r2 (m2)`.
pub fn crt<I: Int>(r1: I, m1: I, r2: I, m2: I) -> Result<I> {
    let (g, u, _) = egcd(m1.clone(), m2.clone())?;
    if !g.is_one() {
        return Err(Error::NotCoprime(m1.to_string(), m2.to_string()));
    }
    // x = r1 + m1 * ((r2 - r1) * u mod m2)
    let k = ((r2 - r1.clone()) * u).mod_floor(&m2);
    Ok((r1 + m1.clone() * k).mod_floor(&(m1 * m2)))
}

/// Periodic first Bernoulli function: 0 on integers, `x - floor(x) - 1/2` otherwise.
pub fn bernoulli1<I: Int>(x: &Ratio<I>) -> Ratio<I> {
    if x.is_integer() {
        return Ratio::zero();
    }
    x - x.floor() - Ratio::new(I::one(), I::of(2))
}

/// Dedekind sum `S(u, v) = Σ_{t=1}^{v-1} B1(t/v) B1(tu/v)` by direct summation.
///
/// Every term is `(2t - v)(2(tu mod v) - v) / (4v²)`, so the sum is
/// accumulated in `I` and divided once.
pub fn dedekind_sum<I: Int>(u: I, v: I) -> Result<Ratio<I>> {
    if v.is_zero() || v.is_negative() {
        return Err(Error::DegenerateInput("dedekind_sum needs v >= 1"));
    }
    let two = I::of(2);
    let mut acc = I::zero();
    let mut t = I::one();
    let step = u.mod_floor(&v);
    let mut tu = step.clone();
    while t < v {
        if !tu.is_zero() {
            acc = acc + (two.clone() * t.clone() - v.clone()) * (two.clone() * tu.clone() - v.clone());
        }
        t = t + I::one();
        tu = (tu + step.clone()).mod_floor(&v);
    }
    Ok(Ratio::new(acc, I::of(4) * v.clone() * v))
}

/// Dedekind sum for coprime `(u, v)` via reciprocity,
/// `S(u,v) + S(v,u) = -1/4 + (u² + v² + 1)/(12uv)`, in `O(log v)` steps.
pub fn dedekind_sum_fast<I: Int>(u: I, v: I) -> Result<Ratio<I>> {
    if v.is_zero() || v.is_negative() {
        return Err(Error::DegenerateInput("dedekind_sum_fast needs v >= 1"));
    }
    if !u.gcd(&v).is_one() {
        return Err(Error::NotCoprime(u.to_string(), v.to_string()));
    }
    let quarter = Ratio::new(I::one(), I::of(4));
    let mut acc = Ratio::zero();
    let mut positive = true;
    let (mut a, mut b) = (u.mod_floor(&v), v);
    while b > I::one() {
        let term = Ratio::new(
            a.clone() * a.clone() + b.clone() * b.clone() + I::one(),
            I::of(12) * a.clone() * b.clone(),
        ) - quarter.clone();
        acc = if positive { acc + term } else { acc - term };
        positive = !positive;
        let next = b.mod_floor(&a);
        b = std::mem::replace(&mut a, next);
    }
    Ok(acc)
}

/// Dedekind sum for arbitrary `u`, reducing by `gcd(u, v)` and using reciprocity.
pub fn dedekind<I: Int>(u: I, v: I) -> Result<Ratio<I>> {
    if v.is_zero() || v.is_negative() {
        return Err(Error::DegenerateInput("dedekind needs v >= 1"));
    }
    let g = u.gcd(&v);
    dedekind_sum_fast(u / g.clone(), v / g)
}

/// Sign of an integer as -1, 0 or 1.
pub fn sgn<I: Int>(x: &I) -> I {
    x.signum()
}

/// Deterministic primality test by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
