//! Verification suites behind `pqeis verify`.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use pq_eisenstein::arith::{dedekind_sum, dedekind_sum_fast};
use pq_eisenstein::boundary::{
    a0_table, boundary_abc, boundary_even, boundary_even_abc, boundary_symbol_sum, divisor_of_eisenstein,
    even_boundary_coefficients, pinned_sigma, ramification, SIGMA,
};
use pq_eisenstein::eisenstein::{
    classify, coefficient_table, eisenstein_element, even_eisenstein_coefficients, exceptional_value, f_value,
    f_value_bernoulli, point, CaseTag, FSource, RepresentativeRule, Side, ROUNDING_LIMIT,
};
use pq_eisenstein::homology::{expected_dimension, is_zero_vector, rational_presentation, reduce, winding_element};
use pq_eisenstein::mat2::{random_gamma0_element, random_gamma_element};
use pq_eisenstein::oracle::{eta_newform_level15, integral_zero_to_infinity, numeric_f, numeric_period, pair_with_cusp_form};
use pq_eisenstein::p1::{act, beta_prime, bottom_row, enumerate};
use pq_eisenstein::periods::{p_value, p_value_closed, period, period_rational};
use pq_eisenstein::{BigInt, CuspClass, Error, Level, Mat2, Rational, Series, SymbolSum};
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Suites selectable with `--suite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Dedekind,
    Periods,
    Fvalues,
    Boundary,
    Homology,
    Winding,
    All,
}

impl Suite {
    pub fn expand(self) -> Vec<Suite> {
        use Suite::*;
        match self {
            All => vec![Dedekind, Periods, Fvalues, Boundary, Homology, Winding],
            s => vec![s],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Suite::Dedekind => "dedekind",
            Suite::Periods => "periods",
            Suite::Fvalues => "fvalues",
            Suite::Boundary => "boundary",
            Suite::Homology => "homology",
            Suite::Winding => "winding",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

/// One reported check.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        };
        write!(f, "{tag} [{}] {}: {}", self.suite, self.name, self.detail)
    }
}

/// Parameters shared by the suites.
#[derive(Clone, Debug)]
pub struct Settings {
    pub level: Level,
    pub seed: u64,
    /// Quadrature tolerance for numeric periods and pairings.
    pub tol: f64,
}

struct Collector {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Collector {
    fn new(suite: Suite) -> Self {
        Collector { suite: suite.label(), checks: Vec::new() }
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check { suite: self.suite, name: name.to_string(), status, detail: detail.into() });
    }

    fn info(&mut self, name: &str, detail: impl Into<String>) {
        self.checks.push(Check { suite: self.suite, name: name.to_string(), status: Status::Info, detail: detail.into() });
    }

    fn error(&mut self, name: &str, e: &Error) {
        self.check(name, false, format!("error: {e}"));
    }
}

/// Runs one suite; errors become failing checks.
pub fn run(suite: Suite, settings: &Settings) -> Vec<Check> {
    suite.expand().into_iter().flat_map(|s| run_one(s, settings)).collect()
}

fn run_one(suite: Suite, settings: &Settings) -> Vec<Check> {
    let mut c = Collector::new(suite);
    let outcome = match suite {
        Suite::Dedekind => dedekind(&mut c),
        Suite::Periods => periods(&mut c, settings),
        Suite::Fvalues => fvalues(&mut c, settings),
        Suite::Boundary => boundaries(&mut c, settings),
        Suite::Homology => homology(&mut c, settings),
        Suite::Winding => winding(&mut c, settings),
        Suite::All => unreachable!("expanded by run"),
    };
    if let Err(e) = outcome {
        c.error("suite aborted", &e);
    }
    c.checks
}

type Q = Rational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn dedekind(c: &mut Collector) -> Result<(), Error> {
    const BOUND: i64 = 300;
    let (mut pairs, mut fast_ok, mut recip_ok) = (0u64, true, true);
    for v in 2..=BOUND {
        for u in 1..v {
            if num_integer::gcd(u, v) != 1 {
                continue;
            }
            pairs += 1;
            let slow = dedekind_sum(u, v)?;
            let fast = dedekind_sum_fast(u, v)?;
            fast_ok &= slow == fast;
            let lhs = slow + dedekind_sum(v, u)?;
            let rhs = (Ratio::new(u, v) + Ratio::new(v, u) + Ratio::new(1, u * v))
                / 12
                - Ratio::new(1, 4);
            recip_ok &= lhs == rhs;
        }
    }
    c.check("fast equals summation", fast_ok, format!("{pairs} coprime pairs with v <= {BOUND}"));
    c.check("reciprocity", recip_ok, format!("{pairs} coprime pairs with v <= {BOUND}"));
    Ok(())
}

fn periods(c: &mut Collector, s: &Settings) -> Result<(), Error> {
    let l = &s.level;
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    for series in Series::ALL {
        let n = series.modulus(l);
        let mu = BigInt::from(num_integer::gcd(n as i64 - 1, 12));
        let (mut additive, mut divisible, mut conjugate) = (true, true, true);
        for _ in 0..200 {
            let g1: Mat2<BigInt> = random_gamma0_element(l, 6, &mut rng);
            let g2: Mat2<BigInt> = random_gamma0_element(l, 6, &mut rng);
            let (a, b) = (period(&g1, series, l)?, period(&g2, series, l)?);
            additive &= period(&(&g1 * &g2), series, l)? == a.clone() + b;
            divisible &= (a.clone() % mu.clone()).is_zero();
            let nn = BigInt::from(n);
            let conj = Mat2::new(g1.d.clone(), g1.c.clone() / nn.clone(), g1.b.clone() * nn, g1.a.clone())?;
            conjugate &= period_rational(&conj, n) == Q::from_integer(a);
        }
        c.check(&format!("homomorphism E_{series}"), additive, "200 random pairs");
        c.check(&format!("gcd(N-1,12) divides periods E_{series}"), divisible, format!("mu = {mu}"));
        c.check(&format!("conjugation identity E_{series}"), conjugate, "pi(a,b;c,d) = pi(d,c/N;Nb,a)");

        let (mut agree, mut integral, mut degenerate, mut first_fraction) = (true, true, 0, None);
        for _ in 0..100 {
            let g: Mat2<BigInt> = random_gamma_element(l, 4, &mut rng);
            let def = p_value(&g, series, l)?;
            match p_value_closed(&g, series, l) {
                Ok(closed) => agree &= closed == def,
                Err(Error::DegenerateTrace(_)) => degenerate += 1,
                Err(e) => return Err(e),
            }
            if !def.is_integer() {
                integral = false;
                first_fraction.get_or_insert_with(|| format!("P_N({g}) = {def}"));
            }
        }
        c.check(
            &format!("P_N closed form E_{series}"),
            agree,
            format!("100 random elements of Gamma0(pq) ∩ Gamma(2), {degenerate} with t = 0 skipped"),
        );
        let t2 = Mat2::<BigInt>::t().pow(2);
        let t2_value = p_value(&t2, series, l)?;
        c.check(
            &format!("P_N integral E_{series}"),
            integral && t2_value.is_integer(),
            match first_fraction {
                Some(ex) => ex,
                None => format!("all sampled values integral; P_N(T^2) = {t2_value}"),
            },
        );
    }

    // Numeric periods on matrices with entries bounded by 10^4.
    let mut worst = 0.0f64;
    let mut count = 0;
    while count < 20 {
        let g: Mat2<BigInt> = random_gamma0_element(l, 4, &mut rng);
        let big = [&g.a, &g.b, &g.c, &g.d].iter().any(|x| x.abs() > BigInt::from(10_000));
        if big {
            continue;
        }
        count += 1;
        let exact = period(&g, Series::PQ, l)?.to_f64().expect("finite");
        let est = numeric_period::<f64>(&g, Series::PQ, l, s.tol)?;
        worst = worst.max((est.value.re - exact).abs());
    }
    c.check("numeric periods", worst < 1e-6, format!("20 matrices, max deviation {worst:.3e}"));
    Ok(())
}

fn fvalues(c: &mut Collector, s: &Settings) -> Result<(), Error> {
    let l = &s.level;
    let rule = RepresentativeRule::Odd;
    let mut bernoulli_ok = true;
    for g in enumerate(l) {
        if let CaseTag::Generic { r } = classify(&g, l) {
            let v = f_value(&g, Series::PQ, l, rule)?.value;
            bernoulli_ok &= v == f_value_bernoulli(BigInt::from(rule.lift(r, l)), l) && v.is_integer();
        }
    }
    c.check("generic values equal Bernoulli sums", bernoulli_ok, "N = pq, odd representatives");

    let (mut symmetric, mut flipped, mut witnesses, mut instantiable) = (true, true, true, 0);
    let n = l.n() as i64;
    for x in [l.p(), l.q()] {
        for k in 1..n / x as i64 {
            let tag = CaseTag::Exceptional { x, k, side: Side::LeftOfOne, negated: false };
            let e = 1 + k * x as i64;
            for series in Series::ALL {
                let Ok(v) = exceptional_value::<BigInt>(&tag, series, l, 0, 0) else { continue };
                instantiable += 1;
                symmetric &= f_value(&point(-e, 1, l)?, series, l, rule)?.value == v;
                flipped &= f_value(&point(1, e, l)?, series, l, rule)?.value == -v.clone();
                for (a, b) in [(1, 0), (0, 1), (3, -2)] {
                    witnesses &= exceptional_value::<BigInt>(&tag, series, l, a, b)? == v;
                }
            }
        }
    }
    c.check("(1+kx,1) equals (-1-kx,1)", symmetric, format!("{instantiable} instantiable (x, k, N)"));
    c.check("(1,1+kx) equals -(1+kx,1)", flipped, format!("{instantiable} instantiable (x, k, N)"));
    c.check("witness independence", witnesses, "three witness shifts");

    for series in Series::ALL {
        let table = coefficient_table(series, l, rule)?;
        let (mut worst, mut fallback_ok, mut fallback) = (0.0f64, true, 0);
        let mut residue_rejects = 0;
        for row in &table {
            let est = numeric_f::<f64>(&row.point, series, l, 0.01)?;
            let six = est.value.re;
            match row.source {
                FSource::Formula => {
                    let exact = 6.0 * row.value.to_f64().expect("finite");
                    worst = worst.max((six - exact).abs());
                    if let CaseTag::Generic { .. } = row.tag {
                        let alt = f_value(&row.point, series, l, RepresentativeRule::Residue)?.value;
                        if (six - 6.0 * alt.to_f64().expect("finite")).abs() >= 0.1 {
                            residue_rejects += 1;
                        }
                    }
                }
                FSource::Oracle { .. } => {
                    fallback += 1;
                    fallback_ok &= (six - six.round()).abs() + est.error < ROUNDING_LIMIT;
                }
            }
        }
        c.check(
            &format!("oracle concordance E_{series}"),
            worst < 0.1,
            format!("{} classes, max |numeric - 6F| = {worst:.3e}", table.len() - fallback),
        );
        c.check(&format!("fallback classes near integers E_{series}"), fallback_ok, format!("{fallback} oracle-derived classes"));
        c.info(
            &format!("representative rule E_{series}"),
            format!("odd rule chosen; the residue rule disagrees with the oracle on {residue_rejects} classes"),
        );
    }
    Ok(())
}

fn boundaries(c: &mut Collector, s: &Settings) -> Result<(), Error> {
    let l = &s.level;
    let sigma = pinned_sigma()?;
    c.check("sigma pinned at pq = 15", sigma == SIGMA, format!("sigma = {sigma}"));
    let sig = q(sigma);
    for series in Series::ALL {
        let e = eisenstein_element(series, l)?;
        let b = boundary_symbol_sum(&e);
        let d = divisor_of_eisenstein::<BigInt>(series, l);
        c.check(
            &format!("boundary = sigma δ(E_{series})"),
            b == d.scale(&sig),
            format!("boundary {}; δ(E) {}", b.render(l), d.render(l)),
        );
        c.check(&format!("closed formula is the reversed boundary E_{series}"), boundary_abc(&e)? == -b.clone(), "A[1/p] + B[1/q] + C[inf] - (A+B+C)[0]");
        if series == Series::PQ {
            let m = q(l.n() as i64 - 1);
            let concentrated = b.support().iter().all(|x| matches!(x, CuspClass::Infinity | CuspClass::Zero))
                && b.coefficient(CuspClass::Infinity).abs() == m
                && b.coefficient(CuspClass::Zero).abs() == m;
            c.check("N = pq boundary concentrated on inf and 0", concentrated, b.render(l));
        }

        let six = even_eisenstein_coefficients(series, l)?;
        let be = boundary_even(&six)?;
        c.check(
            &format!("even boundary = 6 sigma δ(E_{series})"),
            be == d.scale(&(q(6) * sig.clone())),
            be.render(l),
        );
        c.check(
            &format!("even closed formula is the reversed even boundary E_{series}"),
            boundary_even_abc(&six) == -be,
            "A'[1/p] + B'[1/q] + C'[inf] - (A'+B'+C')[0]",
        );
        let (a_prime, b_prime, c_prime) = even_boundary_coefficients(&six);
        let twice_beta = (0..l.q() as i64)
            .map(|r| six.get(&bottom_row(&beta_prime::<BigInt>(r, l), l)))
            .fold(Q::zero(), |acc, v| acc + v)
            * q(2);
        c.check(&format!("A' two ways E_{series}"), a_prime == twice_beta, format!("A' = {a_prime}, B' = {b_prime}, C' = {c_prime}"));
        let a0 = a0_table::<BigInt>(series, l)[&CuspClass::OneOverP].clone();
        c.check(&format!("A' = -6 a0(E[1/p]) E_{series}"), a_prime == -q(6) * a0.clone(), format!("A' = {a_prime}, a0 = {a0}"));
        let e_p = q(ramification(CuspClass::OneOverP, l) as i64);
        c.info(
            &format!("A' = -6 e(1/p) a0(E[1/p]) E_{series}"),
            format!("{} (e = {e_p})", a_prime == -q(6) * e_p.clone() * a0),
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let pts = enumerate(l);
    let (sm, rm): (Mat2<BigInt>, Mat2<BigInt>) = (Mat2::s(), Mat2::r());
    let mut killed = true;
    for _ in 0..50 {
        let g = pts[rand::Rng::gen_range(&mut rng, 0..pts.len())];
        let mut two = SymbolSum::symbol(l, g, q(1));
        two.add_term(act(&g, &sm, l), q(1));
        let mut three = SymbolSum::symbol(l, g, q(1));
        three.add_term(act(&g, &rm, l), q(1));
        three.add_term(act(&g, &(&rm * &rm), l), q(1));
        killed &= boundary_symbol_sum(&two).is_zero() && boundary_symbol_sum(&three).is_zero();
    }
    c.check("Manin relations have zero boundary", killed, "50 random points");
    Ok(())
}

fn homology(c: &mut Collector, s: &Settings) -> Result<(), Error> {
    let l = &s.level;
    let pres = rational_presentation(l);
    c.check(
        "dimension matches genus formula",
        pres.dimension() == expected_dimension(l),
        format!("dimension {}, expected {}", pres.dimension(), expected_dimension(l)),
    );
    let (sm, rm): (Mat2<BigInt>, Mat2<BigInt>) = (Mat2::s(), Mat2::r());
    let mut relations = true;
    for g in pres.points() {
        let mut two = SymbolSum::symbol(l, *g, q(1));
        two.add_term(act(g, &sm, l), q(1));
        let mut three = SymbolSum::symbol(l, *g, q(1));
        three.add_term(act(g, &rm, l), q(1));
        three.add_term(act(g, &(&rm * &rm), l), q(1));
        relations &= is_zero_vector(&reduce(&two, &pres)?) && is_zero_vector(&reduce(&three, &pres)?);
    }
    c.check("relations reduce to zero", relations, format!("{} points", pres.points().len()));
    for series in Series::ALL {
        let e = eisenstein_element(series, l)?;
        let v = reduce(&e, &pres)?;
        c.check(&format!("reduction commutes with boundary E_{series}"), pres.boundary(&v) == boundary_symbol_sum(&e), "exact");
    }
    let w = reduce(&winding_element(l)?, &pres)?;
    c.check("winding class has zero boundary", pres.boundary(&w).is_zero(), "exact");
    Ok(())
}

fn winding(c: &mut Collector, s: &Settings) -> Result<(), Error> {
    let l = &s.level;
    let w = winding_element(l)?;
    let b = boundary_symbol_sum(&w);
    c.check("winding boundary is zero", b.is_zero(), b.render(l));
    if l.n() != 15 {
        c.info("numeric pairing", "the level-15 cusp form is only used at pq = 15");
        return Ok(());
    }
    let f = eta_newform_level15(6000);
    let i0 = integral_zero_to_infinity::<f64>(&f, l, s.tol)?.value;
    let lhs = pair_with_cusp_form::<f64>(&w, &f, s.tol)?.value;
    let rhs = i0 * -(1.0 - l.n() as f64);
    c.check(
        "pairing with the level-15 newform",
        (lhs - rhs).norm() < 1e-4,
        format!("winding {lhs:.8}, (1-pq)(-∫f) {rhs:.8}"),
    );
    let e = eisenstein_element(Series::PQ, l)?;
    let full = pair_with_cusp_form::<f64>(&e, &f, s.tol)?.value;
    c.info("Eisenstein element pairing", format!("{full:.3e}"));
    let mut complement = e.clone();
    for g in [point(0, 1, l)?, point(1, 0, l)?] {
        complement.add_term(g, -e.get(&g));
    }
    let comp = pair_with_cusp_form::<f64>(&complement, &f, s.tol)?.value;
    c.info(
        "sum of F(g)ξ(g) over g other than (0:1), (1:0)",
        format!("pairs to {comp:.8}; (1-pq)(-∫f) = {rhs:.8}; match {}", (comp - rhs).norm() < 1e-4),
    );
    Ok(())
}
