//! The period homomorphism `π_{E_N}` on `Γ0(pq)` and the invariant
//! `P_N(γ) = (2π(γ) - π(hγh⁻¹)) / 12` on `Γ0(pq) ∩ Γ(2)`.

use std::fmt;

use num_rational::Ratio;


use crate::arith::{dedekind, sgn};
use crate::mat2::{h_conjugate, membership, Group, Mat2};
use crate::p1::Level;
use crate::{Error, Int, Result};

/// The basis series `E_p`, `E_q`, `E_pq` of weight-two Eisenstein series on `Γ0(pq)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    P,
    Q,
    PQ,
}

impl Series {
    pub const ALL: [Series; 3] = [Series::P, Series::Q, Series::PQ];

    /// The index `N` of `E_N`.
    pub fn modulus(self, level: &Level) -> u64 {
        match self {
            Series::P => level.p(),
            Series::Q => level.q(),
            Series::PQ => level.n(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Series::P => "p",
            Series::Q => "q",
            Series::PQ => "pq",
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `π_{E_N}(γ)`: `(b/d)(N-1)` if `c = 0`, otherwise
/// `(a+d)/c (N-1) + 12 sgn(c) (S(d,|c|) - S(d,|c|/N))`.
pub fn period<I: Int>(g: &Mat2<I>, series: Series, level: &Level) -> Result<I> {
    if !membership(g, Group::Gamma0(level.n())) {
        return Err(Error::NotInSubgroup(g.to_string(), format!("Gamma0({})", level.n())));
    }
    let value = period_rational(g, series.modulus(level));
    assert!(value.is_integer(), "period of {g} for E_{series} is not integral: {value}");
    Ok(value.to_integer())
}

/// The period formula evaluated exactly, for any `γ ∈ Γ0(N)`.
pub fn period_rational<I: Int>(g: &Mat2<I>, n: u64) -> Ratio<I> {
    let nm1 = I::of(n as i64 - 1);
    if g.c.is_zero() {
        return Ratio::new(g.b.clone() * nm1, g.d.clone());
    }
    let abs_c = g.c.abs();
    let ded = dedekind(g.d.clone(), abs_c.clone()).expect("|c| >= 1")
        - dedekind(g.d.clone(), abs_c / I::of(n as i64)).expect("N | c");
    Ratio::new(g.trace() * nm1, g.c.clone()) + ded * Ratio::from_integer(I::of(12) * sgn(&g.c))
}

fn check_gamma<I: Int>(g: &Mat2<I>, level: &Level) -> Result<()> {
    if membership(g, Group::GammaIntersection(level.n())) {
        Ok(())
    } else {
        Err(Error::NotInSubgroup(g.to_string(), format!("Gamma0({}) ∩ Gamma(2)", level.n())))
    }
}

/// `P_N(γ) = (2π_{E_N}(γ) - π_{E_N}(hγh⁻¹)) / 12`, exactly.
pub fn p_value<I: Int>(g: &Mat2<I>, series: Series, level: &Level) -> Result<Ratio<I>> {
    check_gamma(g, level)?;
    let conj = h_conjugate(g)?;
    let n = series.modulus(level);
    // hγh⁻¹ has lower-left entry 2c, so it lies in Γ0(N).
    let two = Ratio::from_integer(I::of(2));
    Ok((two * period_rational(g, n) - period_rational(&conj, n)) / Ratio::from_integer(I::of(12)))
}

/// Closed form `sgn(t)[2(S(s,|t|N) - S(s,|t|)) - S(s,|t|N/2) + S(s,|t|/2)]`
/// with `s = a + c`, `t = b + d - a - c`.
pub fn p_value_closed<I: Int>(g: &Mat2<I>, series: Series, level: &Level) -> Result<Ratio<I>> {
    check_gamma(g, level)?;
    let t = g.t_invariant();
    if t.is_zero() {
        return Err(Error::DegenerateTrace(g.to_string()));
    }
    let s = g.s_invariant();
    let n = I::of(series.modulus(level) as i64);
    let at = t.abs();
    let half = at.clone() / I::of(2);
    let ded = |v: I| dedekind(s.clone(), v).expect("v >= 1");
    let two = Ratio::from_integer(I::of(2));
    let body = two * (ded(at.clone() * n.clone()) - ded(at)) - ded(half.clone() * n) + ded(half);
    Ok(body * Ratio::from_integer(sgn(&t)))
}
