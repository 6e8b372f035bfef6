//! Relative homology of `X0(pq)` modulo the cusps, presented by Manin symbols:
//! generators `ξ(g)` for `g ∈ P¹(Z/pqZ)` subject to `ξ(g) + ξ(gS) = 0` and
//! `ξ(g) + ξ(gR) + ξ(gR²) = 0`, reduced by sparse exact elimination.

use std::collections::BTreeMap;
use std::ops::{Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::boundary::{boundary_of_point, CuspDivisor};
use crate::eisenstein::{f_value, RepresentativeRule, SymbolSum};
use crate::mat2::Mat2;
use crate::p1::{act, enumerate, normalize, Level, P1Point};
use crate::periods::Series;
use crate::{BigInt, Error, Rational, Result};

/// Scalars accepted by the elimination.
pub trait Field:
    Clone
    + Zero
    + One
    + PartialEq
    + std::fmt::Debug
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + Zero
        + One
        + PartialEq
        + std::fmt::Debug
        + Neg<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
{
}

/// Sparse vector indexed by generator position.
type Row<K> = BTreeMap<usize, K>;

/// Quotient of `Q^{P¹}` by the Manin relations.
#[derive(Clone, Debug)]
pub struct ManinPresentation<K> {
    level: Level,
    points: Vec<P1Point>,
    /// Free generators, in point order.
    basis: Vec<P1Point>,
    /// Coordinates of every `ξ(g)` in the basis.
    table: BTreeMap<P1Point, Vec<K>>,
}

impl<K: Field> ManinPresentation<K> {
    pub fn level(&self) -> &Level {
        &self.level
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[P1Point] {
        &self.basis
    }

    /// Coordinates of `ξ(g)`.
    pub fn coordinates_of(&self, g: &P1Point) -> &[K] {
        &self.table[g]
    }

    /// Boundary of a coordinate vector.
    pub fn boundary(&self, v: &[K]) -> CuspDivisor<K> {
        let mut out = CuspDivisor::new();
        for (b, k) in self.basis.iter().zip(v) {
            if k.is_zero() {
                continue;
            }
            for (cls, e) in boundary_of_point::<K>(b, &self.level).iter() {
                out.add_term(*cls, e.clone() * k.clone());
            }
        }
        out
    }

    /// All symbols, in point order.
    pub fn points(&self) -> &[P1Point] {
        &self.points
    }
}

fn add_scaled<K: Field>(target: &mut Row<K>, source: &Row<K>, factor: &K) {
    for (&j, v) in source {
        let entry = target.entry(j).or_insert_with(K::zero);
        *entry = entry.clone() + factor.clone() * v.clone();
        if entry.is_zero() {
            target.remove(&j);
        }
    }
}

/// Builds the presentation: relation rows are reduced to echelon form with the
/// pivot on each row's largest index, so the free generators are the smallest
/// points not forced by the relations.
pub fn build_presentation<K: Field>(level: &Level) -> ManinPresentation<K> {
    let points = enumerate(level);
    let index: BTreeMap<P1Point, usize> = points.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let s: Mat2<BigInt> = Mat2::s();
    let r: Mat2<BigInt> = Mat2::r();
    let r2 = &r * &r;
    let mut relations: Vec<Row<K>> = Vec::new();
    for g in &points {
        for word in [vec![g.to_owned(), act(g, &s, level)], vec![*g, act(g, &r, level), act(g, &r2, level)]] {
            let mut row = Row::new();
            for h in word {
                let entry = row.entry(index[&h]).or_insert_with(K::zero);
                *entry = entry.clone() + K::one();
            }
            row.retain(|_, v| !v.is_zero());
            relations.push(row);
        }
    }

    // Echelon form keyed by pivot column; each stored row is normalized to pivot 1.
    let mut pivots: BTreeMap<usize, Row<K>> = BTreeMap::new();
    for mut row in relations {
        while let Some((&col, lead)) = row.iter().next_back() {
            match pivots.get(&col) {
                Some(prow) => {
                    let factor = -lead.clone();
                    add_scaled(&mut row, &prow.clone(), &factor);
                }
                None => {
                    let inv = K::one() / lead.clone();
                    let normalized: Row<K> = row.iter().map(|(&j, v)| (j, v.clone() * inv.clone())).collect();
                    pivots.insert(col, normalized);
                    break;
                }
            }
        }
    }

    let free: Vec<usize> = (0..points.len()).filter(|j| !pivots.contains_key(j)).collect();
    let position: BTreeMap<usize, usize> = free.iter().enumerate().map(|(i, &j)| (j, i)).collect();
    // Resolve pivots in increasing order: a pivot row only involves smaller columns.
    let mut coords: Vec<Vec<K>> = vec![Vec::new(); points.len()];
    for j in 0..points.len() {
        let mut v = vec![K::zero(); free.len()];
        if let Some(&i) = position.get(&j) {
            v[i] = K::one();
        } else {
            for (&col, coeff) in &pivots[&j] {
                if col == j {
                    continue;
                }
                for (slot, c) in v.iter_mut().zip(&coords[col]) {
                    *slot = slot.clone() - coeff.clone() * c.clone();
                }
            }
        }
        coords[j] = v;
    }
    let table = points.iter().cloned().zip(coords).collect();
    let basis = free.iter().map(|&j| points[j]).collect();
    ManinPresentation { level: level.clone(), points, basis, table }
}

/// Coordinates of `Σ a_g ξ(g)`.
pub fn reduce<K: Field>(x: &SymbolSum<K>, pres: &ManinPresentation<K>) -> Result<Vec<K>> {
    if x.level() != pres.level() {
        return Err(Error::LevelMismatch(x.level().n(), pres.level().n()));
    }
    let mut out = vec![K::zero(); pres.dimension()];
    for (g, a) in x.iter() {
        for (slot, c) in out.iter_mut().zip(pres.coordinates_of(g)) {
            *slot = slot.clone() + a.clone() * c.clone();
        }
    }
    Ok(out)
}

/// Kronecker symbol `(d | p)` for an odd prime `p`.
fn legendre(d: i64, p: u64) -> i64 {
    let p = p as i64;
    let a = d.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let mut r = 1i64;
    let (mut base, mut e) = (a, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// Index, elliptic-point and cusp counts `(μ, ν₂, ν₃, ν∞)` of `Γ0(pq)`.
pub fn gamma0_invariants(level: &Level) -> (u64, u64, u64, u64) {
    let primes = [level.p(), level.q()];
    let mu = primes.iter().map(|&p| p + 1).product();
    let nu2 = primes.iter().map(|&p| (1 + legendre(-1, p)) as u64).product();
    let nu3 = primes.iter().map(|&p| (1 + legendre(-3, p)) as u64).product();
    (mu, nu2, nu3, 4)
}

/// Genus `1 + μ/12 - ν₂/4 - ν₃/3 - ν∞/2` of `X0(pq)`.
pub fn genus(level: &Level) -> u64 {
    let (mu, nu2, nu3, nu_inf) = gamma0_invariants(level);
    let twelve_g = 12 + mu as i64 - 3 * nu2 as i64 - 4 * nu3 as i64 - 6 * nu_inf as i64;
    debug_assert_eq!(twelve_g % 12, 0);
    (twelve_g / 12) as u64
}

/// Expected dimension `2g + ν∞ - 1` of the presentation.
pub fn expected_dimension(level: &Level) -> usize {
    (2 * genus(level) + gamma0_invariants(level).3 - 1) as usize
}

/// `Σ_{x ∈ (Z/pqZ)*} F_pq((1, x)) ξ((x : 1))`, the path `{0, 1/x}` being `ξ` of `(1 0; x 1)`.
pub fn winding_element(level: &Level) -> Result<SymbolSum<Rational>> {
    let mut out = SymbolSum::new(level);
    for &x in level.units() {
        let coeff = f_value(&normalize(1, x as i64, level)?, Series::PQ, level, RepresentativeRule::default())?;
        out.add_term(normalize(x as i64, 1, level)?, coeff.value);
    }
    Ok(out)
}

/// `ν = gcd(pq - 1, 12)` and `n = (pq - 1)/ν`.
pub fn winding_multiple(level: &Level) -> (u64, u64) {
    let m = level.n() - 1;
    let nu = m.gcd(&12);
    (nu, m / nu)
}

/// Exact rational presentation, the default.
pub fn rational_presentation(level: &Level) -> ManinPresentation<Rational> {
    build_presentation(level)
}

/// `true` when every coordinate vanishes.
pub fn is_zero_vector<K: Field>(v: &[K]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::boundary_symbol_sum;
    use crate::eisenstein::eisenstein_element;
    use proptest::prelude::*;

    fn lv(p: u64, q: u64) -> Level {
        Level::new(p, q).unwrap()
    }

    fn levels() -> Vec<Level> {
        vec![lv(3, 5), lv(3, 7), lv(3, 11), lv(5, 7)]
    }

    fn unit() -> Rational {
        Rational::from_integer(BigInt::from(1))
    }

    #[test]
    fn genus_oracle() {
        assert_eq!(genus(&lv(3, 5)), 1);
        assert_eq!(genus(&lv(3, 7)), 1);
        assert_eq!(genus(&lv(3, 11)), 3);
        assert_eq!(genus(&lv(5, 7)), 3);
        assert_eq!(legendre(-1, 5), 1);
        assert_eq!(legendre(-1, 7), -1);
        assert_eq!(legendre(-3, 7), 1);
        assert_eq!(legendre(-3, 3), 0);
    }

    #[test]
    fn dimensions() {
        let expected = [5, 5, 9, 9];
        for (l, d) in levels().iter().zip(expected) {
            let pres = rational_presentation(l);
            assert_eq!(pres.dimension(), d, "{l}");
            assert_eq!(pres.dimension(), expected_dimension(l));
        }
    }

    #[test]
    fn floating_point_scalars_agree_in_dimension() {
        let pres = build_presentation::<f64>(&lv(3, 5));
        assert_eq!(pres.dimension(), 5);
    }

    #[test]
    fn eisenstein_reduction_commutes_with_boundary() {
        for l in levels() {
            let pres = rational_presentation(&l);
            for s in Series::ALL {
                let e = eisenstein_element(s, &l).unwrap();
                let v = reduce(&e, &pres).unwrap();
                assert_eq!(pres.boundary(&v), boundary_symbol_sum(&e));
            }
        }
    }

    #[test]
    fn winding_element_is_a_cycle() {
        for l in levels() {
            let w = winding_element(&l).unwrap();
            assert!(boundary_symbol_sum(&w).is_zero());
            let pres = rational_presentation(&l);
            let v = reduce(&w, &pres).unwrap();
            assert!(pres.boundary(&v).is_zero());
        }
        assert_eq!(winding_multiple(&lv(3, 5)), (2, 7));
        assert_eq!(winding_multiple(&lv(5, 7)), (2, 17));
    }

    #[test]
    fn level_mismatch() {
        let pres = rational_presentation(&lv(3, 5));
        let x = SymbolSum::symbol(&lv(3, 7), P1Point { c: 0, d: 1 }, unit());
        assert!(matches!(reduce(&x, &pres), Err(Error::LevelMismatch(21, 15))));
    }

    proptest! {
        #[test]
        fn relations_reduce_to_zero(li in 0usize..4, idx in 0usize..1000, a in -5i64..5, b in -5i64..5) {
            let l = levels()[li].clone();
            let pres = rational_presentation(&l);
            let g = pres.points()[idx % pres.points().len()];
            let s: Mat2<BigInt> = Mat2::s();
            let r: Mat2<BigInt> = Mat2::r();
            let mut two = SymbolSum::symbol(&l, g, unit());
            two.add_term(act(&g, &s, &l), unit());
            prop_assert!(is_zero_vector(&reduce(&two, &pres).unwrap()));
            let mut three = SymbolSum::symbol(&l, g, unit());
            three.add_term(act(&g, &r, &l), unit());
            three.add_term(act(&g, &(&r * &r), &l), unit());
            prop_assert!(is_zero_vector(&reduce(&three, &pres).unwrap()));
            // linearity
            let h = pres.points()[(idx * 7 + 3) % pres.points().len()];
            let qa = Rational::from_integer(BigInt::from(a));
            let qb = Rational::from_integer(BigInt::from(b));
            let x = SymbolSum::symbol(&l, g, unit());
            let y = SymbolSum::symbol(&l, h, unit());
            let combo = x.scale(&qa).plus(&y.scale(&qb)).unwrap();
            let lhs = reduce(&combo, &pres).unwrap();
            let (vx, vy) = (reduce(&x, &pres).unwrap(), reduce(&y, &pres).unwrap());
            let rhs: Vec<Rational> = vx.iter().zip(&vy).map(|(u, v)| qa.clone() * u + qb.clone() * v).collect();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
