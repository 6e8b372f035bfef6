//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed on every run.
//! Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use pq_eisenstein::arith::{dedekind_sum, dedekind_sum_fast};
use pq_eisenstein::boundary::{
    a0_table, boundary_even, boundary_symbol_sum, divisor_of_eisenstein, even_boundary_coefficients, ramification,
};
use pq_eisenstein::eisenstein::{
    classify, coefficient_table, eisenstein_element, even_eisenstein_coefficients, exceptional_value, f_value, point,
    CaseTag, FSource, RepresentativeRule, Side, ROUNDING_LIMIT,
};
use pq_eisenstein::homology::{rational_presentation, winding_element};
use pq_eisenstein::mat2::{build_exceptional_pair, random_gamma0_element, random_gamma_element};
use pq_eisenstein::oracle::{eta_newform_level15, integral_zero_to_infinity, numeric_f, numeric_period, pair_with_cusp_form};
use pq_eisenstein::p1::enumerate;
use pq_eisenstein::periods::{p_value, p_value_closed, period, period_rational};
use pq_eisenstein::{BigInt, CuspClass, Error, Level, Mat2, Rational, Series};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const LEVELS: [(u64, u64); 4] = [(3, 5), (3, 7), (3, 11), (5, 7)];

type Q64 = Ratio<i64>;

fn levels() -> Vec<Level> {
    LEVELS.iter().map(|&(p, q)| Level::new(p, q).expect("valid level")).collect()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `((x))`: sawtooth, zero at integers.
fn sawtooth(x: Q64) -> Q64 {
    if x.is_integer() {
        Q64::zero()
    } else {
        x - x.floor() - Q64::new(1, 2)
    }
}

/// Dedekind sum by its defining sum over `t mod v`, accumulated as
/// `Σ (2t - v)(2(tu mod v) - v) / 4v²` in integers.
fn dedekind_brute(u: i64, v: i64) -> Q64 {
    let total: i64 = (1..v)
        .map(|t| {
            let s = (t * u).rem_euclid(v);
            if s == 0 {
                0
            } else {
                (2 * t - v) * (2 * s - v)
            }
        })
        .sum();
    Q64::new(total, 4 * v * v)
}

fn legendre(a: i64, p: i64) -> i64 {
    let mut r = 1i64;
    let (mut base, mut e) = (a.rem_euclid(p), (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if r == p - 1 {
        -1
    } else {
        r
    }
}

/// `2g + c - 1` from the Riemann-Hurwitz genus of `X0(pq)` with `c = 4` cusps.
fn expected_dimension(p: i64, q: i64) -> usize {
    let index = (p + 1) * (q + 1);
    let nu2 = (1 + legendre(-1, p)) * (1 + legendre(-1, q));
    let nu3 = (1 + legendre(-3, p)) * (1 + legendre(-3, q));
    let twelve_g = 12 + index - 3 * nu2 - 4 * nu3 - 24;
    assert_eq!(twelve_g % 12, 0);
    (2 * twelve_g / 12 + 3) as usize
}

/// `2 Σ_{h<pq} ((hr/2pq))`, the Bernoulli form of the generic coefficient.
fn bernoulli_f(r: i64, n: i64) -> Q64 {
    (0..n).map(|h| sawtooth(Q64::new(h * r, 2 * n))).sum::<Q64>() * 2
}

fn to_q64(r: &Rational) -> Q64 {
    Q64::new(r.numer().to_i64().expect("small"), r.denom().to_i64().expect("small"))
}

struct Outcome {
    ok: bool,
    detail: String,
    info: Vec<String>,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Outcome { ok, detail: detail.into(), info: Vec::new() }
    }
}

type Criterion = fn() -> Result<Outcome, Error>;

fn dedekind() -> Result<Outcome, Error> {
    let start = Instant::now();
    let (mut pairs, mut agree, mut recip) = (0, true, true);
    for v in 2..=300i64 {
        for u in 1..v {
            if u.gcd(&v) != 1 {
                continue;
            }
            pairs += 1;
            let brute = dedekind_brute(u, v);
            agree &= dedekind_sum_fast(u, v)? == brute && dedekind_sum(u, v)? == brute;
            let lhs = dedekind_sum_fast(u, v)? + dedekind_sum_fast(v, u)?;
            recip &= lhs == (Q64::new(u, v) + Q64::new(v, u) + Q64::new(1, u * v)) / 12 - Q64::new(1, 4);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(Outcome::new(
        agree && recip && secs < 5.0,
        format!("{pairs} pairs, agreement {agree}, reciprocity {recip}, {secs:.2}s"),
    ))
}

fn homomorphism() -> Result<Outcome, Error> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut additive, mut divisible, mut conjugate, mut count) = (true, true, true, 0);
    for l in levels() {
        for series in Series::ALL {
            let n = series.modulus(&l) as i64;
            let mu = BigInt::from((n - 1).gcd(&12));
            for _ in 0..200 {
                let g1: Mat2<BigInt> = random_gamma0_element(&l, 6, &mut rng);
                let g2: Mat2<BigInt> = random_gamma0_element(&l, 6, &mut rng);
                let (a, b) = (period(&g1, series, &l)?, period(&g2, series, &l)?);
                additive &= period(&(&g1 * &g2), series, &l)? == &a + &b;
                divisible &= (&a % &mu).is_zero();
                let nn = BigInt::from(n);
                let conj = Mat2::new(g1.d.clone(), &g1.c / &nn, &g1.b * &nn, g1.a.clone())?;
                conjugate &= period_rational(&conj, n as u64) == Rational::from_integer(a);
                count += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(Outcome::new(
        additive && divisible && conjugate && secs < 30.0,
        format!("{count} pairs; additive {additive}, μ-divisible {divisible}, conjugation {conjugate}, {secs:.2}s"),
    ))
}

fn p_integrality() -> Result<Outcome, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut agree, mut integral, mut compared) = (true, true, 0);
    let mut witness = None;
    for l in levels() {
        for series in Series::ALL {
            let mut samples: Vec<Mat2<BigInt>> = vec![Mat2::t().pow(2)];
            samples.extend((0..100).map(|_| random_gamma_element(&l, 4, &mut rng)));
            for g in samples {
                let def = p_value(&g, series, &l)?;
                match p_value_closed(&g, series, &l) {
                    Ok(closed) => {
                        agree &= closed == def;
                        compared += 1;
                    }
                    Err(Error::DegenerateTrace(_)) => {}
                    Err(e) => return Err(e),
                }
                if !def.is_integer() {
                    integral = false;
                    witness.get_or_insert_with(|| format!("P_N({g}) = {def} for N = {} at pq = {}", series.modulus(&l), l.n()));
                }
            }
        }
    }
    let mut out = Outcome::new(agree && integral, format!("closed form agrees on {compared} elements: {agree}; all integral: {integral}"));
    if let Some(w) = witness {
        out.info.push(format!("non-integral value: {w}"));
    }
    Ok(out)
}

fn exceptional_construction() -> Result<Outcome, Error> {
    let l = Level::new(3, 5)?;
    let pair = build_exceptional_pair::<BigInt>(5, 1, &l)?;
    let g1 = Mat2::<BigInt>::from_i64(181, -26, -1260, 181)?;
    let g2 = Mat2::<BigInt>::from_i64(49, -10, -240, 49)?;
    let fixed = |m: &Mat2<BigInt>, x: i64| {
        let pt = Some(Ratio::new(BigInt::from(1), BigInt::from(x)));
        m.apply(&pt) == Some(Ratio::new(BigInt::from(-1), BigInt::from(x)))
    };
    let matches = pair.gamma1 == g1 && pair.gamma2 == g2;
    let negations = fixed(&pair.gamma1, 7) && fixed(&pair.gamma2, 5);
    let gap = matches!(build_exceptional_pair::<BigInt>(3, 1, &l), Err(Error::NotInstantiable { gcd: 5, .. }));
    Ok(Outcome::new(
        matches && negations && gap,
        format!("γ₁ = {}, γ₂ = {}; negations {negations}; x = 3, k = 1 not instantiable: {gap}", pair.gamma1, pair.gamma2),
    ))
}

fn table_consistency() -> Result<Outcome, Error> {
    let rule = RepresentativeRule::Odd;
    let (mut generic, mut generic_ok, mut instantiable, mut symmetric) = (0, true, 0, true);
    for l in levels() {
        let n = l.n() as i64;
        for g in enumerate(&l) {
            if let CaseTag::Generic { r } = classify(&g, &l) {
                generic += 1;
                let v = f_value(&g, Series::PQ, &l, rule)?.value;
                generic_ok &= to_q64(&v) == bernoulli_f(rule.lift(r, &l) as i64, n);
            }
        }
        for x in [l.p(), l.q()] {
            for k in 1..n / x as i64 {
                let tag = CaseTag::Exceptional { x, k, side: Side::LeftOfOne, negated: false };
                let e = 1 + k * x as i64;
                for series in Series::ALL {
                    let Ok(v) = exceptional_value::<BigInt>(&tag, series, &l, 0, 0) else { continue };
                    instantiable += 1;
                    symmetric &= f_value(&point(-e, 1, &l)?, series, &l, rule)?.value == v;
                    symmetric &= f_value(&point(1, e, &l)?, series, &l, rule)?.value == -v.clone();
                    symmetric &= f_value(&point(e, 1, &l)?, series, &l, rule)?.value == v;
                }
            }
        }
    }
    Ok(Outcome::new(
        generic_ok && symmetric,
        format!("{generic} generic classes match the Bernoulli sum: {generic_ok}; {instantiable} exceptional cases symmetric: {symmetric}"),
    ))
}

fn boundary_identity() -> Result<Outcome, Error> {
    let start = Instant::now();
    let (mut signs, mut concentrated, mut info) = (Vec::new(), true, Vec::new());
    for l in levels() {
        for series in Series::ALL {
            let b = boundary_symbol_sum(&eisenstein_element(series, &l)?);
            let d = divisor_of_eisenstein::<BigInt>(series, &l);
            signs.push(if b == d {
                1
            } else if b == -d.clone() {
                -1
            } else {
                0
            });
            if series == Series::PQ {
                let m = q(l.n() as i64 - 1);
                let ok = b.support().iter().all(|x| matches!(x, CuspClass::Infinity | CuspClass::Zero))
                    && b.coefficient(CuspClass::Infinity).abs() == m
                    && b.coefficient(CuspClass::Zero).abs() == m;
                if !ok {
                    info.push(format!("pq = {}: boundary {}", l.n(), b.render(&l)));
                }
                concentrated &= ok;
            }
        }
    }
    let sigma = signs[0];
    let one_sign = sigma != 0 && signs.iter().all(|&s| s == sigma);
    let secs = start.elapsed().as_secs_f64();
    let mut out = Outcome::new(
        one_sign && concentrated && secs < 30.0,
        format!("single sign σ = {sigma} for all N and levels: {one_sign}; N = pq concentrated on ∞, 0: {concentrated}; {secs:.2}s"),
    );
    out.info = info;
    Ok(out)
}

fn even_boundary() -> Result<Outcome, Error> {
    let (mut even_ok, mut a_ok, mut a_ramified) = (true, true, true);
    let mut info = Vec::new();
    for (p, qq) in [(3, 5), (3, 7)] {
        let l = Level::new(p, qq)?;
        for series in Series::ALL {
            let six = even_eisenstein_coefficients(series, &l)?;
            let d = divisor_of_eisenstein::<BigInt>(series, &l);
            even_ok &= boundary_even(&six)? == d.scale(&q(6));
            let (a_prime, _, _) = even_boundary_coefficients(&six);
            let a0 = a0_table::<BigInt>(series, &l)[&CuspClass::OneOverP].clone();
            let e = q(ramification(CuspClass::OneOverP, &l) as i64);
            if a_prime != -q(6) * a0.clone() {
                a_ok = false;
                info.push(format!("pq = {}, N = {}: A' = {a_prime}, -6 a0(1/p) = {}", l.n(), series.modulus(&l), -q(6) * a0.clone()));
            }
            a_ramified &= a_prime == -q(6) * e * a0;
        }
    }
    let mut out = Outcome::new(even_ok && a_ok, format!("even boundary = 6σδ: {even_ok}; A' = -6 a0(1/p): {a_ok}"));
    out.info = info;
    out.info.push(format!("A' = -6 e(1/p) a0(1/p) with ramification e(1/p) = q: {a_ramified}"));
    Ok(out)
}

fn homology_dimensions() -> Result<Outcome, Error> {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut slowest = 0.0f64;
    for (l, want) in levels().into_iter().zip([Some(5), Some(5), None, Some(9)]) {
        let start = Instant::now();
        let dim = rational_presentation(&l).dimension();
        slowest = slowest.max(start.elapsed().as_secs_f64());
        let oracle = expected_dimension(l.p() as i64, l.q() as i64);
        ok &= dim == oracle && want.is_none_or(|w| w == dim);
        parts.push(format!("pq = {}: {dim} (oracle {oracle})", l.n()));
    }
    ok &= slowest < 60.0;
    Ok(Outcome::new(ok, format!("{}; slowest build {slowest:.2}s", parts.join(", "))))
}

fn oracle_concordance() -> Result<Outcome, Error> {
    let l = Level::new(3, 5)?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut worst_period, mut taken) = (0.0f64, 0);
    while taken < 20 {
        let g: Mat2<BigInt> = random_gamma0_element(&l, 4, &mut rng);
        if [&g.a, &g.b, &g.c, &g.d].iter().any(|x| x.abs() > BigInt::from(10_000)) {
            continue;
        }
        taken += 1;
        let exact = period(&g, Series::PQ, &l)?.to_f64().expect("finite");
        worst_period = worst_period.max((numeric_period::<f64>(&g, Series::PQ, &l, 1e-9)?.value.re - exact).abs());
    }
    let (mut worst_f, mut fallback_ok, mut classes, mut fallbacks) = (0.0f64, true, 0, 0);
    for series in Series::ALL {
        for row in coefficient_table(series, &l, RepresentativeRule::Odd)? {
            let est = numeric_f::<f64>(&row.point, series, &l, 0.01)?;
            match row.source {
                FSource::Formula => {
                    classes += 1;
                    worst_f = worst_f.max((est.value.re - 6.0 * row.value.to_f64().expect("finite")).abs());
                }
                FSource::Oracle { .. } => {
                    fallbacks += 1;
                    let v = est.value.re;
                    fallback_ok &= (v - v.round()).abs() + est.error < ROUNDING_LIMIT;
                }
            }
        }
    }
    Ok(Outcome::new(
        worst_period < 1e-6 && worst_f < 0.1 && fallback_ok,
        format!(
            "periods max error {worst_period:.2e}; {classes} formula classes max |numeric - 6F| {worst_f:.2e}; \
             {fallbacks} fallback classes within {ROUNDING_LIMIT} of an integer: {fallback_ok}"
        ),
    ))
}

fn winding() -> Result<Outcome, Error> {
    let mut zero = true;
    for l in levels() {
        zero &= boundary_symbol_sum(&winding_element(&l)?).is_zero();
    }
    let l = Level::new(3, 5)?;
    let f = eta_newform_level15(6000);
    let i0 = integral_zero_to_infinity::<f64>(&f, &l, 1e-10)?.value;
    let w = winding_element(&l)?;
    let lhs = pair_with_cusp_form::<f64>(&w, &f, 1e-10)?.value;
    let rhs = i0 * (l.n() as f64 - 1.0);
    let close = (lhs - rhs).norm() < 1e-4;
    let mut out = Outcome::new(
        zero && close,
        format!("boundary zero at all levels: {zero}; pairing {lhs:.6} vs (1-pq)(-∫f) = {rhs:.6}: {close}"),
    );
    let e = eisenstein_element(Series::PQ, &l)?;
    let mut complement = e.clone();
    for g in [point(0, 1, &l)?, point(1, 0, &l)?] {
        complement.add_term(g, -e.get(&g));
    }
    let comp = pair_with_cusp_form::<f64>(&complement, &f, 1e-10)?.value;
    out.info.push(format!(
        "Σ F(g)ξ(g) over g other than (0:1), (1:0) pairs to {comp:.6}; matches (1-pq)(-∫f): {}",
        (comp - rhs).norm() < 1e-4
    ));
    Ok(out)
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("dedekind sums", dedekind),
        ("period homomorphism", homomorphism),
        ("P_N integrality and closed form", p_integrality),
        ("exceptional construction", exceptional_construction),
        ("coefficient table consistency", table_consistency),
        ("boundary identity", boundary_identity),
        ("even boundary identity", even_boundary),
        ("homology dimensions", homology_dimensions),
        ("oracle concordance", oracle_concordance),
        ("winding element", winding),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let tag = if outcome.ok { "PASS" } else { "FAIL" };
        println!("{tag} criterion {}: {name}: {}", i + 1, outcome.detail);
        for line in &outcome.info {
            println!("     info: {line}");
        }
        failed += usize::from(!outcome.ok);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
