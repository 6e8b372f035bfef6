//! The projective line `P¹(Z/pqZ)`: canonical points, enumeration, the right
//! action of `SL₂(Z)`, and the coset families `Ω` (for `Γ0(pq)`) and `Δ`
//! (for `Γ0(pq) ∩ Γ(2)`).

use std::fmt;

use num_integer::Integer;

use crate::arith::{egcd, is_prime};
use crate::mat2::{s_k, Mat2};
use crate::{Error, Int, Result};

/// A level `pq` with `p`, `q` distinct odd primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Level {
    p: u64,
    q: u64,
    units: Vec<u64>,
}

impl Level {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        for x in [p, q] {
            if x == 2 || !is_prime(x) {
                return Err(Error::InvalidLevel(format!("{x} is not an odd prime")));
            }
        }
        if p == q {
            return Err(Error::InvalidLevel(format!("p = q = {p}")));
        }
        let n = p * q;
        let units = (1..n).filter(|u| u.gcd(&n) == 1).collect();
        Ok(Level { p, q, units })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `pq`.
    pub fn n(&self) -> u64 {
        self.p * self.q
    }

    /// Units of `Z/pqZ` in increasing order.
    pub fn units(&self) -> &[u64] {
        &self.units
    }

    /// Number of points of `P¹(Z/pqZ)`.
    pub fn p1_size(&self) -> usize {
        ((self.p + 1) * (self.q + 1)) as usize
    }

    /// Reduce an integer into `[0, pq)`.
    pub fn residue<I: Int>(&self, x: &I) -> u64 {
        x.mod_floor(&I::of(self.n() as i64)).to_u64().expect("residue fits u64")
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·{}", self.p, self.q)
    }
}

/// Canonical representative of `(c : d)`: the lexicographically least pair
/// in `[0, pq)²` among all unit rescalings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Point {
    pub c: u64,
    pub d: u64,
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.c, self.d)
    }
}

/// Canonical point of the class of `(c, d)`.
pub fn normalize(c: i64, d: i64, level: &Level) -> Result<P1Point> {
    let n = level.n();
    let (c0, d0) = (c.rem_euclid(n as i64) as u64, d.rem_euclid(n as i64) as u64);
    if c0.gcd(&d0).gcd(&n) != 1 {
        return Err(Error::NotProjectivePoint(c, d, n));
    }
    Ok(normalize_residues(c0, d0, level))
}

fn normalize_residues(c: u64, d: u64, level: &Level) -> P1Point {
    let n = level.n();
    level
        .units()
        .iter()
        .map(|&u| P1Point { c: u * c % n, d: u * d % n })
        .min()
        .expect("the unit group is non-empty")
}

/// All `pq + p + q + 1` points, sorted.
pub fn enumerate(level: &Level) -> Vec<P1Point> {
    let n = level.n();
    let mut pts: Vec<P1Point> = (0..n).map(|d| P1Point { c: 1, d }).collect();
    pts.push(P1Point { c: 0, d: 1 });
    for c in (level.p..n).step_by(level.p as usize).chain((level.q..n).step_by(level.q as usize)) {
        for d in 0..n {
            if c.gcd(&d).gcd(&n) == 1 {
                pts.push(normalize_residues(c, d, level));
            }
        }
    }
    pts.sort();
    pts.dedup();
    debug_assert_eq!(pts.len(), level.p1_size());
    pts
}

/// Right action on the bottom row: `(c, d)·m = (c a + d c', c b + d d')`.
pub fn act<I: Int>(g: &P1Point, m: &Mat2<I>, level: &Level) -> P1Point {
    let n = level.n() as u128;
    let r = |x: &I| level.residue(x) as u128;
    let (c, d) = (g.c as u128, g.d as u128);
    let c2 = (c * r(&m.a) + d * r(&m.c)) % n;
    let d2 = (c * r(&m.b) + d * r(&m.d)) % n;
    normalize_residues(c2 as u64, d2 as u64, level)
}

/// Class of the bottom row of `m`.
pub fn bottom_row<I: Int>(m: &Mat2<I>, level: &Level) -> P1Point {
    normalize_residues(level.residue(&m.c), level.residue(&m.d), level)
}

/// A matrix of `SL₂(Z)` whose bottom row lies in the class `g`.
pub fn lift<I: Int>(g: &P1Point, level: &Level) -> Mat2<I> {
    let n = level.n() as i64;
    let c = if g.c == 0 { n } else { g.c as i64 };
    let mut d = g.d as i64;
    while c.gcd(&d) != 1 {
        d += n;
    }
    complete(I::of(c), I::of(d))
}

/// A matrix of `Γ(2)` whose bottom row lies in the class `g`.
pub fn lift_gamma2<I: Int>(g: &P1Point, level: &Level) -> Mat2<I> {
    let n = level.n() as i64;
    let mut c = g.c as i64;
    if c % 2 != 0 {
        c += n;
    }
    if c == 0 {
        c = 2 * n;
    }
    let mut d = g.d as i64;
    if d % 2 == 0 {
        d += n;
    }
    while c.gcd(&d) != 1 {
        d += 2 * n;
    }
    let mut m = complete(I::of(c), I::of(d));
    if m.b.is_odd() {
        m = Mat2::raw(m.a + m.c.clone(), m.b + m.d.clone(), m.c, m.d);
    }
    m
}

/// Completes a coprime bottom row `(c, d)` to a unimodular matrix.
fn complete<I: Int>(c: I, d: I) -> Mat2<I> {
    let (_, u, v) = egcd(c.clone(), d.clone()).expect("non-zero row");
    // u c + v d = 1  ⇒  (v, -u; c, d) has determinant 1
    Mat2::raw(v, -u, c, d)
}

/// The family `Ω`: `I`, `α_k = (0 -1; 1 k)` for `0 ≤ k < pq`,
/// `β_r = (-1 -r; p rp-1)` for `0 ≤ r < q`, `γ_s = (-1 -s; q sq-1)` for `0 ≤ s < p`.
pub fn coset_reps_gamma0<I: Int>(level: &Level) -> Vec<Mat2<I>> {
    let (p, q, n) = (level.p() as i64, level.q() as i64, level.n() as i64);
    let mut out = vec![Mat2::identity()];
    out.extend((0..n).map(|k| alpha(k)));
    out.extend((0..q).map(|r| Mat2::raw(I::of(-1), I::of(-r), I::of(p), I::of(r * p - 1))));
    out.extend((0..p).map(|s| Mat2::raw(I::of(-1), I::of(-s), I::of(q), I::of(s * q - 1))));
    out
}

/// `α_k = (0 -1; 1 k)`.
pub fn alpha<I: Int>(k: i64) -> Mat2<I> {
    Mat2::raw(I::zero(), I::of(-1), I::one(), I::of(k))
}

/// `α'_k = (s_k (pq)², s_k pq - 1; s_k pq + 1, s_k)` for `0 ≤ k < pq`.
pub fn alpha_prime<I: Int>(k: i64, level: &Level) -> Mat2<I> {
    let n = I::of(level.n() as i64);
    let sk = I::of(s_k(k, level));
    Mat2::raw(
        sk.clone() * n.clone() * n.clone(),
        sk.clone() * n.clone() - I::one(),
        sk.clone() * n + I::one(),
        sk,
    )
}

/// `α'_{pq} = (pq, pq - 1; pq + 1, pq)`.
pub fn alpha_prime_pq<I: Int>(level: &Level) -> Mat2<I> {
    let n = I::of(level.n() as i64);
    Mat2::raw(n.clone(), n.clone() - I::one(), n.clone() + I::one(), n)
}

/// `β'_r = (-1, -e; p + pq, -1 + e(p + pq))` with `e = r + δ_r q`.
pub fn beta_prime<I: Int>(r: i64, level: &Level) -> Mat2<I> {
    let (p, q) = (level.p() as i64, level.q() as i64);
    let e = r + (r.rem_euclid(2)) * q;
    let c = p + p * q;
    Mat2::raw(I::of(-1), I::of(-e), I::of(c), I::of(-1 + e * c))
}

/// `γ'_s = (-1, -e; q + pq, -1 + e(q + pq))` with `e = s + δ_s pq`.
pub fn gamma_prime<I: Int>(s: i64, level: &Level) -> Mat2<I> {
    let (q, n) = (level.q() as i64, level.n() as i64);
    let e = s + (s.rem_euclid(2)) * n;
    let c = q + n;
    Mat2::raw(I::of(-1), I::of(-e), I::of(c), I::of(-1 + e * c))
}

/// The family `Δ ⊂ Γ(2)`: `I`, `α'_k`, `β'_r` (`0 ≤ r < q`), `γ'_s` (`0 ≤ s < p`).
pub fn coset_reps_gamma2cap<I: Int>(level: &Level) -> Vec<Mat2<I>> {
    let (p, q, n) = (level.p() as i64, level.q() as i64, level.n() as i64);
    let mut out = vec![Mat2::identity()];
    out.extend((0..n).map(|k| alpha_prime(k, level)));
    out.extend((0..q).map(|r| beta_prime(r, level)));
    out.extend((0..p).map(|s| gamma_prime(s, level)));
    out
}

/// The integers `1 ≤ l < p`, `1 ≤ m < q` with `lq + mp ≡ 1 (mod pq)`.
pub fn bezout_lm(level: &Level) -> (i64, i64) {
    let (p, q, n) = (level.p() as i64, level.q() as i64, level.n() as i64);
    for l in 1..p {
        for m in 1..q {
            if (l * q + m * p).rem_euclid(n) == 1 {
                return (l, m);
            }
        }
    }
    unreachable!("lq + mp ≡ 1 is solvable for coprime p, q")
}

/// The twist `s(k) ∈ Z/qZ` with `(kp, -1) = (p, s(k)p - 1)` in `P¹(Z/pqZ)`.
pub fn twist_s(k: i64, level: &Level) -> Result<i64> {
    let (p, q) = (level.p() as i64, level.q() as i64);
    if k.rem_euclid(q) == 0 {
        return Err(Error::NotAUnit(k, level.q()));
    }
    let target = normalize(k * p, -1, level)?;
    (0..q)
        .find(|&s| normalize(p, s * p - 1, level).ok() == Some(target))
        .ok_or(Error::NotAUnit(k, level.q()))
}
