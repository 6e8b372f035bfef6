//! Floating-point oracle: q-expansions, evaluation of `E₂` and `E_N` through
//! reduction to the fundamental domain, adaptive Gauss–Kronrod path
//! integrals, numeric periods and coefficients, and cusp-form pairings.
//!
//! Everything is generic over `F: Float`; error bounds are the quadrature
//! estimates `|K15 - G7|` summed over subintervals plus explicit truncation
//! bounds, not rigorous enclosures.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{Float, FloatConst, ToPrimitive, Zero};

use crate::arith::egcd;
use crate::eisenstein::SymbolSum;
use crate::mat2::Mat2;
use crate::p1::{lift, lift_gamma2, Level, P1Point};
use crate::periods::Series;
use crate::{BigInt, Error, Result};

/// Float types accepted by the oracle.
pub trait Real: Float + FloatConst + std::fmt::Debug + Send + Sync + 'static {}
impl<T: Float + FloatConst + std::fmt::Debug + Send + Sync + 'static> Real for T {}

fn cst<F: Real>(x: f64) -> F {
    F::from(x).expect("representable constant")
}

fn cplx<F: Real>(re: F, im: F) -> Complex<F> {
    Complex::new(re, im)
}

/// A value with an error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate<F> {
    pub value: Complex<F>,
    pub error: F,
}

impl<F: Real> Estimate<F> {
    fn zero() -> Self {
        Estimate { value: Complex::zero(), error: F::zero() }
    }

    fn add(self, o: Self) -> Self {
        Estimate { value: self.value + o.value, error: self.error + o.error }
    }

    fn scale(self, k: F) -> Self {
        Estimate { value: self.value * k, error: self.error * k.abs() }
    }

    /// Fails with `PrecisionFailure` when the estimate exceeds `tol`.
    pub fn within(self, tol: F) -> Result<Self> {
        if self.error <= tol {
            Ok(self)
        } else {
            Err(Error::PrecisionFailure {
                bound: self.error.to_f64().unwrap_or(f64::INFINITY),
                tol: tol.to_f64().unwrap_or(0.0),
            })
        }
    }
}

/// Truncated q-expansion `Σ_{n < order} a_n qⁿ`, `q = e^{2πiz}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    pub coefficients: Vec<i64>,
}

impl QExpansion {
    /// Number of stored coefficients.
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// Horner evaluation at `z`; fails if the truncation error may exceed `eps`.
    pub fn eval<F: Real>(&self, z: Complex<F>, eps: F) -> Result<Complex<F>> {
        let two_pi = F::TAU();
        let y = z.im;
        let needed = terms_needed(y, eps);
        if needed > self.order() {
            return Err(Error::PrecisionFailure {
                bound: (-two_pi * y * cst(self.order() as f64)).exp().to_f64().unwrap_or(1.0),
                tol: eps.to_f64().unwrap_or(0.0),
            });
        }
        let q = (cplx(F::zero(), two_pi) * z).exp();
        let mut acc = Complex::zero();
        for &a in self.coefficients[..needed].iter().rev() {
            acc = acc * q + cplx(cst(a as f64), F::zero());
        }
        Ok(acc)
    }
}

/// Terms needed so that `e^{-2π M y}·M^2 < eps`.
fn terms_needed<F: Real>(y: F, eps: F) -> usize {
    let l = -eps.ln();
    let m = ((l + cst::<F>(8.0)) / (F::TAU() * y)).ceil();
    m.to_usize().unwrap_or(usize::MAX).saturating_add(2)
}

/// `σ₁(n)` for `n < order`, by a divisor sieve.
fn sigma1_table(order: usize) -> Vec<i64> {
    let mut s = vec![0i64; order];
    for d in 1..order {
        for m in (d..order).step_by(d) {
            s[m] += d as i64;
        }
    }
    s
}

/// `E₂ = 1 - 24 Σ σ₁(n) qⁿ`, truncated to `order` coefficients.
pub fn e2_expansion(order: usize) -> QExpansion {
    assert!(order >= 1, "order must be positive");
    let mut c: Vec<i64> = sigma1_table(order).into_iter().map(|s| -24 * s).collect();
    c[0] = 1;
    QExpansion { coefficients: c }
}

/// `q Π (1-qⁿ)(1-q³ⁿ)(1-q⁵ⁿ)(1-q¹⁵ⁿ)`, the weight-two newform of level 15.
pub fn eta_newform_level15(order: usize) -> QExpansion {
    assert!(order >= 1, "order must be positive");
    let mut c = vec![0i64; order];
    if order > 1 {
        c[1] = 1;
    }
    for step in [1usize, 3, 5, 15] {
        for m in (step..order).step_by(step) {
            for i in (m..order).rev() {
                c[i] -= c[i - m];
            }
        }
    }
    QExpansion { coefficients: c }
}

const E2_TERMS: usize = 24;

fn e2_small() -> &'static [i64] {
    static TABLE: OnceLock<Vec<i64>> = OnceLock::new();
    TABLE.get_or_init(|| e2_expansion(E2_TERMS).coefficients)
}

/// Reduce `z` into the standard fundamental domain: returns `(w, g)` with `z = g·w`.
pub fn reduce<F: Real>(z: Complex<F>) -> Result<(Complex<F>, [i128; 4])> {
    if z.im.is_nan() || z.im <= F::zero() {
        return Err(Error::PrecisionFailure { bound: f64::INFINITY, tol: 0.0 });
    }
    let mut w = z;
    let mut g: [i128; 4] = [1, 0, 0, 1];
    for _ in 0..100_000 {
        let n = w.re.round();
        if n != F::zero() {
            let k = n.to_i128().ok_or(Error::PrecisionFailure { bound: f64::INFINITY, tol: 0.0 })?;
            w = w - cplx(n, F::zero());
            // z = g T^k w
            g = [g[0], g[0] * k + g[1], g[2], g[2] * k + g[3]];
        }
        if w.norm_sqr() < F::one() - cst(1e-14) {
            w = -w.inv();
            // z = g S w
            g = [g[1], -g[0], g[3], -g[2]];
        } else {
            return Ok((w, g));
        }
    }
    Err(Error::PrecisionFailure { bound: f64::INFINITY, tol: 0.0 })
}

fn series_small<F: Real>(w: Complex<F>) -> Complex<F> {
    let q = (cplx(F::zero(), F::TAU()) * w).exp();
    let mut acc = Complex::zero();
    for &a in e2_small().iter().rev() {
        acc = acc * q + cplx(cst(a as f64), F::zero());
    }
    acc
}

/// `E₂(z)` through the quasi-modular law
/// `E₂(gw) = (cw+d)² E₂(w) + (6/(πi)) c (cw+d)`.
pub fn eval_e2<F: Real>(z: Complex<F>) -> Result<Complex<F>> {
    let (w, g) = reduce(z)?;
    let c: F = cst(g[2] as f64);
    let d: F = cst(g[3] as f64);
    let j = w * c + d;
    let corr = cplx(F::zero(), -cst::<F>(6.0) / F::PI()) * c * j;
    Ok(j * j * series_small(w) + corr)
}

/// `E_N(z) = N E₂(Nz) - E₂(z)`, constant term `N - 1`.
pub fn eval_en<F: Real>(z: Complex<F>, n: u64) -> Result<Complex<F>> {
    let nf: F = cst(n as f64);
    Ok(eval_e2(z * nf)? * nf - eval_e2(z)?)
}

/// Adaptive Gauss–Kronrod (7, 15) quadrature of a complex integrand on `[a, b]`.
pub fn integrate<F: Real, G: FnMut(F) -> Result<Complex<F>>>(
    mut f: G,
    a: F,
    b: F,
    tol: F,
    max_intervals: usize,
) -> Result<Estimate<F>> {
    let mut parts = vec![gk15(&mut f, a, b)?];
    loop {
        let total = parts.iter().fold(Estimate::zero(), |s, p| s.add(p.2));
        if total.error <= tol || parts.len() >= max_intervals {
            return Ok(total);
        }
        let worst = (0..parts.len())
            .max_by(|&i, &j| parts[i].2.error.partial_cmp(&parts[j].2.error).expect("finite errors"))
            .expect("non-empty");
        let (lo, hi, _) = parts.swap_remove(worst);
        let mid = (lo + hi) / cst(2.0);
        parts.push(gk15(&mut f, lo, mid)?);
        parts.push(gk15(&mut f, mid, hi)?);
    }
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Real, G: FnMut(F) -> Result<Complex<F>>>(f: &mut G, a: F, b: F) -> Result<(F, F, Estimate<F>)> {
    let half = (b - a) / cst(2.0);
    let mid = (a + b) / cst(2.0);
    let mut kron = Complex::zero();
    let mut gauss = Complex::zero();
    for i in 0..8 {
        let x: F = cst(XGK[i]);
        let vals = if i == 7 { vec![f(mid)?] } else { vec![f(mid - half * x)?, f(mid + half * x)?] };
        let sum = vals.iter().fold(Complex::zero(), |s, v| s + v);
        kron = kron + sum * cst::<F>(WGK[i]);
        if i % 2 == 1 {
            gauss = gauss + sum * cst::<F>(WG[i / 2]);
        }
    }
    let value = kron * half;
    let error = ((kron - gauss) * half).norm();
    Ok((a, b, Estimate { value, error }))
}

/// Integral of `f` along the vertical segment from `x + i y0` to `x + i y1`,
/// using `y = eᵘ` to spread nodes near the real line.
fn vertical<F: Real, G: FnMut(Complex<F>) -> Result<Complex<F>>>(
    mut f: G,
    x: F,
    y0: F,
    y1: F,
    tol: F,
) -> Result<Estimate<F>> {
    integrate(
        |u: F| {
            let y = u.exp();
            Ok(f(cplx(x, y))? * cplx(F::zero(), y))
        },
        y0.ln(),
        y1.ln(),
        tol,
        4000,
    )
}

fn horizontal<F: Real, G: FnMut(Complex<F>) -> Result<Complex<F>>>(
    mut f: G,
    x0: F,
    x1: F,
    y: F,
    tol: F,
) -> Result<Estimate<F>> {
    integrate(|x: F| f(cplx(x, y)), x0, x1, tol, 4000)
}

/// `∫_{z₀}^{γz₀} f(z) dz` along `z₀ = -d/c + i/|c|` → up to height `max(1, 1/|c|)`
/// → across to `a/c` → down to `γz₀ = a/c + i/|c|`. For `c = 0` the path is
/// horizontal at height 2.
fn period_path<F: Real, G: FnMut(Complex<F>) -> Result<Complex<F>>>(
    mut f: G,
    g: &Mat2<BigInt>,
    tol: F,
) -> Result<Estimate<F>> {
    let to_f = |x: &BigInt| -> F { cst(x.to_f64().expect("finite entry")) };
    let (a, b, c, d) = (to_f(&g.a), to_f(&g.b), to_f(&g.c), to_f(&g.d));
    if c == F::zero() {
        return horizontal(&mut f, F::zero(), b / d, cst(2.0), tol);
    }
    let h0 = F::one() / c.abs();
    let top = h0.max(F::one());
    let (x0, x1) = (-d / c, a / c);
    let third = tol / cst(3.0);
    let up = vertical(&mut f, x0, h0, top, third)?;
    let across = horizontal(&mut f, x0, x1, top, third)?;
    let down = vertical(&mut f, x1, h0, top, third)?.scale(-F::one());
    Ok(up.add(across).add(down))
}

/// `π_{E_N}(γ)` by numeric integration of `E_N(z) dz` from `z₀` to `γz₀`.
pub fn numeric_period<F: Real>(g: &Mat2<BigInt>, series: Series, level: &Level, tol: F) -> Result<Estimate<F>> {
    let n = series.modulus(level);
    period_path(|z| eval_en(z, n), g, tol / cst(4.0))?.within(tol)
}

/// Integrand `2E_N(z) - ½E_N((z+1)/2)` of the coefficient integral.
fn coefficient_integrand<F: Real>(z: Complex<F>, n: u64) -> Result<Complex<F>> {
    let two: F = cst(2.0);
    Ok(eval_en(z, n)? * two - eval_en((z + F::one()) / two, n)? / two)
}

/// Numeric `F_{E_N}(g) = ∫_{g(1)}^{g(-1)} [2E_N(z) - ½E_N((z+1)/2)] dz` over a
/// `Γ(2)` lift of `g`, along the geodesic split at `g(i)`.
///
/// Each half is pulled back to a vertical ray `Re w = ±½`, `Im w ≥ ½` by
/// `A₁ = g·(-1 1; -1 0)` and `A₂ = g·(1 1; -1 0)`. The integer coefficient is the
/// real part; the imaginary part collects logarithmic boundary terms.
pub fn numeric_f<F: Real>(g: &P1Point, series: Series, level: &Level, tol: F) -> Result<Estimate<F>> {
    let n = series.modulus(level);
    let m: Mat2<BigInt> = lift_gamma2(g, level);
    let a1 = &m * &Mat2::from_i64(-1, 1, -1, 0).expect("unimodular");
    let a2 = &m * &Mat2::from_i64(1, 1, -1, 0).expect("unimodular");
    let y_max: F = cst(24.0 * level.n() as f64);
    let half: F = cst(0.5);
    let ray = |a: &Mat2<BigInt>, x: F| -> Result<Estimate<F>> {
        let to_f = |v: &BigInt| -> F { cst(v.to_f64().expect("finite entry")) };
        let (aa, bb, cc, dd) = (to_f(&a.a), to_f(&a.b), to_f(&a.c), to_f(&a.d));
        let pulled = |w: Complex<F>| -> Result<Complex<F>> {
            let j = w * cc + dd;
            let z = (w * aa + bb) / j;
            Ok(coefficient_integrand(z, n)? / (j * j))
        };
        let body = vertical(pulled, x, half, y_max, tol / cst(4.0))?;
        // Tail beyond y_max: bounded by the integrand size there times the decay length.
        let tail = pulled(cplx(x, y_max))?.norm() * y_max;
        Ok(Estimate { value: body.value, error: body.error + tail })
    };
    let first = ray(&a1, half)?.scale(-F::one());
    let second = ray(&a2, -half)?;
    first.add(second).within(tol)
}

/// Constant term of `E_N|σ` at a cusp `σ∞`, read off from `(E_N|σ)(iY)` at large `Y`.
pub fn cusp_constant_term<F: Real>(sigma: &Mat2<BigInt>, series: Series, level: &Level) -> Result<Complex<F>> {
    let to_f = |v: &BigInt| -> F { cst(v.to_f64().expect("finite entry")) };
    let (a, b, c, d) = (to_f(&sigma.a), to_f(&sigma.b), to_f(&sigma.c), to_f(&sigma.d));
    let w = cplx(F::zero(), cst(8.0 * level.n() as f64));
    let j = w * c + d;
    let z = (w * a + b) / j;
    Ok(eval_en(z, series.modulus(level))? / (j * j))
}

/// Cusp `a/c` as a pair of coprime integers, `(1, 0)` for infinity.
type CuspPair = (i64, i64);

fn canonical_cusp(a: i64, c: i64) -> CuspPair {
    if c == 0 {
        return (1, 0);
    }
    let g = num_integer::gcd(a, c);
    let (a, c) = (a / g, c / g);
    if c < 0 {
        (-a, -c)
    } else {
        (a, c)
    }
}

/// `∫_x^{i∞} f(z) dz` for cusp forms of level `pq`, computed by moving `x`
/// to one of the representatives `0, 1/p, 1/q, ∞` with an element of `Γ0(pq)`.
struct CuspIntegrals<'a, F> {
    f: &'a QExpansion,
    level: &'a Level,
    tol: F,
    reps: BTreeMap<i64, Estimate<F>>,
}

impl<'a, F: Real> CuspIntegrals<'a, F> {
    fn new(f: &'a QExpansion, level: &'a Level, tol: F) -> Self {
        CuspIntegrals { f, level, tol, reps: BTreeMap::new() }
    }

    fn eps(&self) -> F {
        cst(1e-15)
    }

    /// Termwise vertical integral from `1/δ` (or `0` when `δ = 1`) to `i∞`.
    fn representative(&mut self, delta: i64) -> Result<Estimate<F>> {
        if let Some(e) = self.reps.get(&delta) {
            return Ok(*e);
        }
        let n = self.level.n() as f64;
        // Near the cusp 1/δ the form decays like exp(-2π / (δ N y)).
        let decay = 45.0;
        let y_min: F = cst(std::f64::consts::TAU / (decay * delta as f64 * n));
        let x: F = if delta == 1 { F::zero() } else { cst(1.0 / delta as f64) };
        let needed = terms_needed(y_min, self.eps());
        if needed > self.f.order() {
            return Err(Error::PrecisionFailure { bound: 1.0, tol: self.tol.to_f64().unwrap_or(0.0) });
        }
        let mut acc: Complex<F> = Complex::zero();
        for (k, &a) in self.f.coefficients.iter().enumerate().take(needed).skip(1) {
            let kf: F = cst(k as f64);
            let phase = (cplx(F::zero(), F::TAU() * kf) * x).exp();
            let weight = (-F::TAU() * kf * y_min).exp() / (F::TAU() * kf);
            acc = acc + phase * (weight * cst(a as f64));
        }
        let value = acc * cplx(F::zero(), F::one());
        let est = Estimate { value, error: cst(1e-12) };
        self.reps.insert(delta, est);
        Ok(est)
    }

    fn cusp_integral(&mut self, cusp: CuspPair) -> Result<Estimate<F>> {
        let (a, c) = cusp;
        let n = self.level.n() as i64;
        if c == 0 || c % n == 0 {
            // Γ0(pq)-equivalent to ∞ via σ2 T^j; shift to the representative ∞.
            if c == 0 {
                return Ok(Estimate::zero());
            }
        }
        let delta = num_integer::gcd(c, n);
        let sigma1: Mat2<BigInt> = if delta == 1 {
            Mat2::s()
        } else if delta == n {
            Mat2::identity()
        } else {
            Mat2::from_i64(1, 0, delta, 1).expect("unimodular")
        };
        let base = if delta == n { Estimate::zero() } else { self.representative(delta)? };
        let (_, u, v) = egcd(BigInt::from(a), BigInt::from(c)).expect("coprime cusp");
        // u a + v c = 1 ⇒ σ2 = (a, -v; c, u) sends ∞ to a/c.
        let sigma2 = Mat2::new(BigInt::from(a), -v, BigInt::from(c), u).expect("unimodular");
        let inv1 = sigma1.inverse();
        let mut best: Option<Mat2<BigInt>> = None;
        for j in -3 * n..=3 * n {
            let g = &(&sigma2 * &Mat2::t().pow(j)) * &inv1;
            if (g.c.clone() % BigInt::from(n)) != BigInt::from(0) {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => g.c.magnitude() < b.c.magnitude(),
            };
            if better {
                best = Some(g);
            }
        }
        let gamma = best.expect("cusps of the same width class are Γ0(pq)-equivalent");
        // x = γ·rep ⇒ ∫_x^{i∞} = ∫_rep^{i∞} - ∫_{z₀}^{γz₀}
        let f = self.f;
        let eps = self.eps();
        let shift = period_path(|z| f.eval(z, eps), &gamma, self.tol)?;
        Ok(base.add(shift.scale(-F::one())))
    }
}

/// `Σ_g X(g) ∫_{g·0}^{g·∞} f(z) dz` for a cusp form `f` of level `pq`.
pub fn pair_with_cusp_form<F: Real>(x: &SymbolSum<crate::Rational>, f: &QExpansion, tol: F) -> Result<Estimate<F>> {
    let level = x.level();
    let mut ints = CuspIntegrals::new(f, level, tol / cst(4.0 * (x.len().max(1)) as f64));
    let mut cache: BTreeMap<CuspPair, Estimate<F>> = BTreeMap::new();
    let mut total = Estimate::zero();
    for (g, coeff) in x.iter() {
        let m: Mat2<BigInt> = lift(g, level);
        let to_i = |v: &BigInt| v.to_i64().expect("small lift");
        let at_zero = canonical_cusp(to_i(&m.b), to_i(&m.d));
        let at_inf = canonical_cusp(to_i(&m.a), to_i(&m.c));
        let mut get = |cusp: CuspPair| -> Result<Estimate<F>> {
            if let Some(e) = cache.get(&cusp) {
                return Ok(*e);
            }
            let e = ints.cusp_integral(cusp)?;
            cache.insert(cusp, e);
            Ok(e)
        };
        let path = get(at_zero)?.add(get(at_inf)?.scale(-F::one()));
        let k: F = cst(ratio_to_f64(coeff));
        total = total.add(path.scale(k));
    }
    total.within(tol)
}

/// `∫_0^{i∞} f(z) dz`.
pub fn integral_zero_to_infinity<F: Real>(f: &QExpansion, level: &Level, tol: F) -> Result<Estimate<F>> {
    CuspIntegrals::new(f, level, tol).cusp_integral((0, 1))?.within(tol)
}

pub(crate) fn ratio_to_f64(r: &Ratio<BigInt>) -> f64 {
    r.numer().to_f64().expect("finite") / r.denom().to_f64().expect("finite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periods::period;
    use crate::Level;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn e2_coefficients() {
        let e = e2_expansion(10);
        assert_eq!(e.coefficients[0], 1);
        assert_eq!(e.coefficients[1], -24);
        assert_eq!(e.coefficients[2], -72);
        assert_eq!(e.coefficients[6], -24 * 12);
    }

    #[test]
    fn eta_newform_coefficients() {
        let f = eta_newform_level15(40);
        let a = &f.coefficients;
        assert_eq!(&a[..13], &[0, 1, -1, -1, -1, 1, 1, 0, 3, 1, -1, -4, 1]);
        assert_eq!(a[6], a[2] * a[3]);
        assert_eq!(a[10], a[2] * a[5]);
        assert_eq!(a[14], a[2] * a[7]);
        // a(p²) = a(p)² - p for good primes
        assert_eq!(a[4], a[2] * a[2] - 2);
        assert_eq!(a[1], 1);
    }

    #[test]
    fn e_n_limits_and_periodicity() {
        let big = eval_en(c(0.1, 40.0), 15).unwrap();
        assert!((big - c(14.0, 0.0)).norm() < 1e-9);
        let z = c(0.3, 0.07);
        let (a, b) = (eval_en(z, 15).unwrap(), eval_en(z + 1.0, 15).unwrap());
        assert!((a - b).norm() < 1e-8 * a.norm().max(1.0));
    }

    #[test]
    fn two_routes_agree() {
        let direct = |z: Complex<f64>, n: u64| {
            let e2 = e2_expansion(400);
            e2.eval(z * n as f64, 1e-16).unwrap() * n as f64 - e2.eval(z, 1e-16).unwrap()
        };
        for z in [c(0.0, 1.0), c(0.1, 0.3), c(-0.4, 0.12)] {
            let reduced = eval_en(z, 15).unwrap();
            let series = direct(z, 15);
            assert!((reduced - series).norm() < 1e-9 * series.norm().max(1.0), "{z}: {reduced} vs {series}");
        }
    }

    #[test]
    fn e2_transformation_under_s() {
        let z = c(0.2, 1.3);
        let lhs = eval_e2(-z.inv()).unwrap();
        let direct = e2_expansion(60).eval(z, 1e-16).unwrap();
        let rhs = z * z * direct + z * c(0.0, -6.0 / std::f64::consts::PI);
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn quadrature_sanity() {
        let est = integrate(|x: f64| Ok(c(x.sin(), x * x)), 0.0, 3.0, 1e-12, 200).unwrap();
        assert!((est.value - c(1.0 - 3f64.cos(), 9.0)).norm() < 1e-11);
    }

    #[test]
    fn numeric_periods_match_exact_values() {
        let l = Level::new(3, 5).unwrap();
        let t = Mat2::<BigInt>::t();
        for s in Series::ALL {
            let e = numeric_period::<f64>(&t, s, &l, 1e-8).unwrap();
            assert!((e.value.re - (s.modulus(&l) as f64 - 1.0)).abs() < 1e-8);
        }
        let g = Mat2::<BigInt>::from_i64(1, 0, 15, 1).unwrap();
        let e = numeric_period::<f64>(&g, Series::PQ, &l, 1e-7).unwrap();
        assert!((e.value.re - 14.0).abs() < 1e-6, "{e:?}");
        let g2 = Mat2::<BigInt>::from_i64(4, 1, 15, 4).unwrap();
        let exact = period(&g2, Series::P, &l).unwrap().to_f64().unwrap();
        let e2 = numeric_period::<f64>(&g2, Series::P, &l, 1e-7).unwrap();
        assert!((e2.value.re - exact).abs() < 1e-6 && e2.value.im.abs() < 1e-6);
    }

    #[test]
    fn generic_numeric_f_value() {
        // F_{E_15}((0:1)) = 12(S(r,15) - 2S(r,30)) with the odd representative r = 1.
        let l = Level::new(3, 5).unwrap();
        let s = |u: i64, v: i64| crate::arith::dedekind_sum(u, v).unwrap();
        let exact = (s(1, 15) - s(1, 30) * 2) * 12;
        let exact = *exact.numer() as f64 / *exact.denom() as f64;
        let e = numeric_f::<f64>(&P1Point { c: 0, d: 1 }, Series::PQ, &l, 1e-3).unwrap();
        assert!((e.value.re - exact).abs() < 0.1, "{e:?} vs {exact}");
        let unit = numeric_f::<f64>(&P1Point { c: 1, d: 1 }, Series::PQ, &l, 1e-3).unwrap();
        assert!(unit.value.re.abs() < 0.1, "{unit:?}");
    }

    #[test]
    fn works_in_single_precision() {
        let v = eval_en(Complex::new(0.25f32, 0.8), 3).unwrap();
        let w = eval_en(Complex::new(0.25f64, 0.8), 3).unwrap();
        assert!(((v.re as f64) - w.re).abs() < 1e-3);
    }

    #[test]
    fn cusp_form_pairings() {
        use crate::eisenstein::eisenstein_element;
        use crate::p1::{act, enumerate};
        let l = Level::new(3, 5).unwrap();
        let f = eta_newform_level15(6000);
        let tol = 1e-6;
        let empty = SymbolSum::new(&l);
        assert_eq!(pair_with_cusp_form::<f64>(&empty, &f, tol).unwrap().value, Complex::new(0.0, 0.0));
        let one = crate::Rational::from_integer(BigInt::from(1));
        let s: Mat2<BigInt> = Mat2::s();
        for g in enumerate(&l).into_iter().step_by(5) {
            let mut x = SymbolSum::symbol(&l, g, one.clone());
            x.add_term(act(&g, &s, &l), one.clone());
            let v = pair_with_cusp_form::<f64>(&x, &f, tol).unwrap();
            assert!(v.value.norm() < 1e-6, "{g}: {v:?}");
        }
        // The Eisenstein element is orthogonal to cusp forms.
        let e = eisenstein_element(Series::PQ, &l).unwrap();
        let v = pair_with_cusp_form::<f64>(&e, &f, tol).unwrap();
        assert!(v.value.norm() < 1e-6, "{v:?}");
        let i0 = integral_zero_to_infinity::<f64>(&f, &l, tol).unwrap();
        assert!(i0.value.im > 0.01 && i0.value.re.abs() < 1e-9, "{i0:?}");
        // {0, ∞} = ξ((0 : 1)) pairs to ∫_0^{i∞} f.
        let zero_inf = SymbolSum::symbol(&l, P1Point { c: 0, d: 1 }, one);
        let v = pair_with_cusp_form::<f64>(&zero_inf, &f, tol).unwrap();
        assert!((v.value - i0.value).norm() < 1e-6, "{v:?} {i0:?}");
    }
}
