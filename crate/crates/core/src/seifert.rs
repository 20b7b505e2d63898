//! Seifert invariants, the spherical catalog and canonical plumbings.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::numtheory::{cf_projective, hj_cf, mod_inverse};
use crate::{int, Error, Integer, Rational};

/// `(b; (α1,β1), ..., (αr,βr))`, the oriented manifold of the standard
/// surgery diagram. Equality and hashing ignore leg order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeifertInvariant {
    pub b: Integer,
    pub legs: Vec<(Integer, Integer)>,
}

impl PartialEq for SeifertInvariant {
    fn eq(&self, other: &Self) -> bool {
        self.b == other.b && self.sorted_legs() == other.sorted_legs()
    }
}

impl Eq for SeifertInvariant {}

impl Hash for SeifertInvariant {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.b.hash(state);
        self.sorted_legs().hash(state);
    }
}

impl SeifertInvariant {
    pub fn new(b: Integer, legs: Vec<(Integer, Integer)>) -> Result<Self, Error> {
        for (a, beta) in &legs {
            if !a.is_positive() {
                return Err(Error::domain(format!("leg ({a},{beta}) needs alpha > 0")));
            }
            if !a.gcd(beta).is_one() {
                return Err(Error::domain(format!("leg ({a},{beta}) is not coprime")));
            }
        }
        Ok(Self { b, legs })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(b: i64, legs: &[(i64, i64)]) -> Result<Self, Error> {
        Self::new(int(b), legs.iter().map(|&(a, c)| (int(a), int(c))).collect())
    }

    pub fn sorted_legs(&self) -> Vec<(Integer, Integer)> {
        let mut legs = self.legs.clone();
        legs.sort();
        legs
    }

    pub fn is_normalized(&self) -> bool {
        self.legs
            .iter()
            .all(|(a, beta)| beta.is_positive() && beta < a)
    }

    /// Rolfsen twist on one leg: `Y(b; ..., (α,β)) = Y(b-n; ..., (α, β-nα))`.
    pub fn twist(&self, leg: usize, n: &Integer) -> Result<Self, Error> {
        let mut out = self.clone();
        let (a, beta) = out
            .legs
            .get_mut(leg)
            .ok_or_else(|| Error::domain(format!("no leg {leg}")))?;
        *beta -= n * &*a;
        out.b -= n;
        Ok(out)
    }

    /// Twists every β into `[0, α)` and blows down the resulting `(1, 0)` legs.
    pub fn normalize(&self) -> Result<Self, Error> {
        let checked = Self::new(self.b.clone(), self.legs.clone())?;
        let mut b = checked.b;
        let mut legs = Vec::with_capacity(checked.legs.len());
        for (a, beta) in checked.legs {
            let n = beta.div_floor(&a);
            b -= &n;
            let beta = beta - n * &a;
            if !a.is_one() {
                legs.push((a, beta));
            }
        }
        legs.sort();
        Ok(Self { b, legs })
    }

    /// Normalized invariant of `-Y`.
    pub fn reverse_orientation(&self) -> Result<Self, Error> {
        Self {
            b: -self.b.clone(),
            legs: self.legs.iter().map(|(a, c)| (a.clone(), -c.clone())).collect(),
        }
        .normalize()
    }

    pub fn euler_number(&self) -> Rational {
        self.legs.iter().fold(Rational::from_integer(self.b.clone()), |e, (a, c)| {
            e - Rational::new(c.clone(), a.clone())
        })
    }

    pub fn is_rational_homology_sphere(&self) -> bool {
        !self.euler_number().is_zero()
    }

    /// `α1⋯αr·|e|`; zero flags a manifold with infinite first homology.
    pub fn h1_order(&self) -> Integer {
        let prod: Integer = self.legs.iter().map(|(a, _)| a.clone()).product();
        let h = Rational::from_integer(prod) * self.euler_number().abs();
        debug_assert!(h.is_integer());
        h.to_integer()
    }

    /// Plumbing graph: center `-b`, one chain `-HJ(α, β)` per leg in sorted
    /// leg order, each listed from the center outward.
    pub fn canonical_plumbing(&self) -> Result<PlumbingGraph, Error> {
        let n = self.normalize()?;
        let e = n.euler_number();
        if e.is_zero() {
            return Err(Error::NotQhs(format!("{n} has Euler number 0")));
        }
        if e.is_negative() {
            return Err(Error::domain(format!(
                "{n} has negative Euler number; reverse the orientation first"
            )));
        }
        let mut g = PlumbingGraph {
            weights: vec![-n.b.clone()],
            edges: Vec::new(),
            center: Some(0),
        };
        for (a, beta) in &n.legs {
            let mut prev = 0;
            for t in hj_cf(a, beta)?.terms {
                g.weights.push(-t);
                let v = g.weights.len() - 1;
                g.edges.push((prev, v));
                prev = v;
            }
        }
        Ok(g)
    }

    /// Framings of the linear plumbing of a manifold with at most two legs.
    fn chain_framings(&self) -> Result<Vec<Integer>, Error> {
        let n = self.normalize()?;
        let chain = |leg: &(Integer, Integer)| -> Result<Vec<Integer>, Error> {
            Ok(hj_cf(&leg.0, &leg.1)?.terms.into_iter().map(|t| -t).collect())
        };
        let mut out = Vec::new();
        match n.legs.as_slice() {
            [] => out.push(-n.b.clone()),
            [l] => {
                out.push(-n.b.clone());
                out.extend(chain(l)?);
            }
            [l1, l2] => {
                out.extend(chain(l1)?.into_iter().rev());
                out.push(-n.b.clone());
                out.extend(chain(l2)?);
            }
            _ => return Err(Error::domain(format!("{n} has more than two legs"))),
        }
        Ok(out)
    }

    /// The lens space of an invariant with at most two legs.
    pub fn lens_space(&self) -> Result<OrientedLens, Error> {
        OrientedLens::from_chain(&self.chain_framings()?)
    }

    /// When two legs are complementary (`β_i/α_i + β_j/α_j = 1`), the lens
    /// space of `(b-1; (α_k, β_k))` that the manifold is cobordant to.
    pub fn complementary_reduction(&self) -> Result<Option<OrientedLens>, Error> {
        let n = self.normalize()?;
        if n.legs.len() != 3 {
            return Ok(None);
        }
        let frac = |l: &(Integer, Integer)| Rational::new(l.1.clone(), l.0.clone());
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            if frac(&n.legs[i]) + frac(&n.legs[j]) == Rational::one() {
                let rest = Self::new(&n.b - 1, vec![n.legs[k].clone()])?;
                return Ok(Some(rest.lens_space()?));
            }
        }
        Ok(None)
    }
}

impl fmt::Display for SeifertInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.b)?;
        for (i, (a, c)) in self.legs.iter().enumerate() {
            write!(f, "{}{a}/{c}", if i == 0 { " " } else { ", " })?;
        }
        write!(f, ")")
    }
}

/// `L(p, q)`, the `p/q` surgery on the unknot, stored with `0 <= q < p`.
/// `L(1, 0)` is the 3-sphere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lens {
    pub p: Integer,
    pub q: Integer,
}

impl Lens {
    pub fn new(p: Integer, q: Integer) -> Result<Self, Error> {
        if !p.is_positive() {
            return Err(Error::domain(format!("lens space needs p > 0, got {p}")));
        }
        let q = q.mod_floor(&p);
        if !p.gcd(&q).is_one() {
            return Err(Error::domain(format!("L({p},{q}) needs coprime parameters")));
        }
        Ok(Self { p, q })
    }

    pub fn from_i64(p: i64, q: i64) -> Result<Self, Error> {
        Self::new(int(p), int(q))
    }

    pub fn is_s3(&self) -> bool {
        self.p.is_one()
    }

    /// `-L(p, q) = L(p, p - q)`.
    pub fn mirror(&self) -> Self {
        Self {
            p: self.p.clone(),
            q: (&self.p - &self.q).mod_floor(&self.p),
        }
    }

    /// Orientation-preserving homeomorphism: same `p`, `q ≡ q'^{±1}`.
    pub fn homeomorphic(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        if self.is_s3() {
            return true;
        }
        self.q == other.q
            || mod_inverse(&other.q, &other.p).map_or(false, |inv| inv == self.q)
    }

    /// Representative with the smaller of `q` and `q^{-1}`.
    pub fn canonical(&self) -> Self {
        if self.is_s3() {
            return self.clone();
        }
        let inv = mod_inverse(&self.q, &self.p).expect("coprime by construction");
        Self {
            p: self.p.clone(),
            q: inv.min(self.q.clone()),
        }
    }

    /// `L(p, q) ≅ Y(-1; (q, p - q))`.
    pub fn seifert(&self) -> SeifertInvariant {
        if self.is_s3() {
            return SeifertInvariant {
                b: int(1),
                legs: vec![],
            };
        }
        SeifertInvariant {
            b: int(-1),
            legs: vec![(self.q.clone(), &self.p - &self.q)],
        }
        .normalize()
        .expect("valid lens data")
    }

    /// Framings of the chain `Γ_{p,q}`: weights `-a_i` of `HJ(p/q)`. Its
    /// boundary is `-L(p, q)`.
    pub fn chain(&self) -> Vec<Integer> {
        if self.is_s3() {
            return Vec::new();
        }
        hj_cf(&self.p, &self.q)
            .expect("0 < q < p coprime")
            .terms
            .into_iter()
            .map(|t| -t)
            .collect()
    }
}

impl fmt::Display for Lens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

/// `±L(p, q)` kept in the form a reduction naturally produces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientedLens {
    pub negated: bool,
    pub lens: Lens,
}

impl OrientedLens {
    /// Boundary of a linear plumbing with the given framings: the surgery on
    /// the unknot with coefficient `[e1, ..., en]`.
    pub fn from_chain(framings: &[Integer]) -> Result<Self, Error> {
        let (num, den) = cf_projective(framings);
        if num.is_zero() {
            return Err(Error::NotQhs("linear plumbing with vanishing boundary slope".into()));
        }
        let negated = num.is_negative() != den.is_negative() && !den.is_zero();
        let lens = Lens::new(num.abs(), den.abs())?;
        Ok(Self { negated, lens })
    }

    /// The oriented manifold as a single `L(p, q)`.
    pub fn manifold(&self) -> Lens {
        if self.negated {
            self.lens.mirror()
        } else {
            self.lens.clone()
        }
    }
}

impl fmt::Display for OrientedLens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "-")?;
        }
        write!(f, "{}", self.lens)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    C,
    D,
    T,
    O,
    I,
}

impl Family {
    /// Allowed residues `k` and the period of the subscript `period·(b-2)+k`.
    pub fn residues(self) -> (&'static [i64], i64) {
        match self {
            Family::T => (&[1, 3, 5], 6),
            Family::O => (&[1, 5, 7, 11], 12),
            Family::I => (&[1, 7, 11, 13, 17, 19, 23, 29], 30),
            Family::C | Family::D => (&[], 0),
        }
    }

    /// `|H1|` divided by the subscript.
    pub fn h1_factor(self) -> i64 {
        match self {
            Family::T => 3,
            Family::O => 2,
            _ => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Family::C => 'L',
            Family::D => 'D',
            Family::T => 'T',
            Family::O => 'O',
            Family::I => 'I',
        }
    }

    /// The legs `(3, β2), (α3, β3)` for residue `k`, next to the fixed `(2, 1)`.
    fn legs_for(self, k: i64) -> Option<[(i64, i64); 2]> {
        let legs = match (self, k) {
            (Family::T, 1) => [(3, 2), (3, 2)],
            (Family::T, 3) => [(3, 1), (3, 2)],
            (Family::T, 5) => [(3, 1), (3, 1)],
            (Family::O, 1) => [(3, 2), (4, 3)],
            (Family::O, 5) => [(3, 1), (4, 3)],
            (Family::O, 7) => [(3, 2), (4, 1)],
            (Family::O, 11) => [(3, 1), (4, 1)],
            (Family::I, 1) => [(3, 2), (5, 4)],
            (Family::I, 7) => [(3, 2), (5, 3)],
            (Family::I, 11) => [(3, 1), (5, 4)],
            (Family::I, 13) => [(3, 2), (5, 2)],
            (Family::I, 17) => [(3, 1), (5, 3)],
            (Family::I, 19) => [(3, 2), (5, 1)],
            (Family::I, 23) => [(3, 1), (5, 2)],
            (Family::I, 29) => [(3, 1), (5, 1)],
            _ => return None,
        };
        Some(legs)
    }
}

/// A catalog name. For `C` and `D` the parameters are `(p, q)`; for
/// `T`, `O`, `I` they are `(b, k)`. `mirror` selects the reversed orientation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SphericalName {
    pub family: Family,
    pub first: Integer,
    pub second: Integer,
    pub mirror: bool,
}

impl SphericalName {
    pub fn lens(p: i64, q: i64) -> Self {
        Self::raw(Family::C, int(p), int(q))
    }

    pub fn prism(p: i64, q: i64) -> Self {
        Self::raw(Family::D, int(p), int(q))
    }

    pub fn catalog(family: Family, b: i64, k: i64) -> Self {
        Self::raw(family, int(b), int(k))
    }

    fn raw(family: Family, first: Integer, second: Integer) -> Self {
        Self {
            family,
            first,
            second,
            mirror: false,
        }
    }

    /// `T_n`, `O_n`, `I_n` by subscript.
    pub fn from_subscript(family: Family, n: &Integer) -> Result<Self, Error> {
        let (ks, period) = family.residues();
        if period == 0 {
            return Err(Error::domain("subscripts only name T, O and I manifolds"));
        }
        let k = n.mod_floor(&int(period));
        if !ks.iter().any(|&r| int(r) == k) || n < &k {
            return Err(Error::domain(format!(
                "{}_{n} is not in the catalog",
                family.letter()
            )));
        }
        let b = (n - &k) / int(period) + 2;
        Ok(Self::raw(family, b, k))
    }

    pub fn mirrored(mut self) -> Self {
        self.mirror = !self.mirror;
        self
    }

    pub fn b(&self) -> Option<&Integer> {
        matches!(self.family, Family::T | Family::O | Family::I).then_some(&self.first)
    }

    pub fn k(&self) -> Option<i64> {
        matches!(self.family, Family::T | Family::O | Family::I)
            .then(|| self.second.to_i64())
            .flatten()
    }

    pub fn subscript(&self) -> Option<Integer> {
        let (_, period) = self.family.residues();
        (period != 0).then(|| int(period) * (&self.first - 2) + &self.second)
    }

    /// Normalized invariant of the named oriented manifold.
    pub fn seifert(&self) -> Result<SeifertInvariant, Error> {
        let base = match self.family {
            Family::C => Lens::new(self.first.clone(), self.second.clone())?.seifert(),
            Family::D => {
                let (p, q) = (&self.first, &self.second);
                if *q < int(2) || p <= q || !p.gcd(q).is_one() {
                    return Err(Error::domain(format!(
                        "D({p},{q}) needs p > q >= 2 coprime"
                    )));
                }
                let b0 = p.div_ceil(q);
                let beta = &b0 * q - p;
                SeifertInvariant::new(
                    b0,
                    vec![(int(2), int(1)), (int(2), int(1)), (q.clone(), beta)],
                )?
            }
            fam => {
                let k = self
                    .k()
                    .ok_or_else(|| Error::domain("residue out of range"))?;
                let legs = fam.legs_for(k).ok_or_else(|| {
                    Error::domain(format!("k = {k} is not a residue of family {fam:?}"))
                })?;
                if self.first < int(2) {
                    return Err(Error::domain(format!("catalog needs b >= 2, got {}", self.first)));
                }
                let mut all = vec![(int(2), int(1))];
                all.extend(legs.iter().map(|&(a, c)| (int(a), int(c))));
                SeifertInvariant::new(self.first.clone(), all)?
            }
        };
        let base = base.normalize()?;
        if self.mirror {
            base.reverse_orientation()
        } else {
            Ok(base)
        }
    }
}

impl fmt::Display for SphericalName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mirror {
            write!(f, "-")?;
        }
        match self.family {
            Family::C | Family::D => {
                write!(f, "{}_{}_{}", self.family.letter(), self.first, self.second)
            }
            _ => write!(
                f,
                "{}_{}",
                self.family.letter(),
                self.subscript().expect("catalog family")
            ),
        }
    }
}

/// Identifies the spherical manifold an invariant describes.
pub fn spherical_name(inv: &SeifertInvariant) -> Result<SphericalName, Error> {
    let n = inv.normalize()?;
    let e = n.euler_number();
    if e.is_zero() {
        return Err(Error::NotQhs(format!("{n}")));
    }
    if n.legs.len() <= 2 {
        let lens = n.lens_space()?.manifold().canonical();
        return Ok(SphericalName::raw(Family::C, lens.p, lens.q));
    }
    if n.legs.len() > 3 {
        return Err(Error::NotSpherical(format!("{n} has {} legs", n.legs.len())));
    }
    let (pos, mirror) = if e.is_positive() {
        (n, false)
    } else {
        (n.reverse_orientation()?, true)
    };
    let alphas: Vec<i64> = pos
        .legs
        .iter()
        .map(|(a, _)| a.to_i64().unwrap_or(i64::MAX))
        .collect();
    let betas: Vec<i64> = pos
        .legs
        .iter()
        .map(|(_, c)| c.to_i64().unwrap_or(i64::MAX))
        .collect();
    let named = match alphas.as_slice() {
        [2, 2, _] => {
            let q = pos.legs[2].0.clone();
            let p = &pos.b * &q - &pos.legs[2].1;
            SphericalName::raw(Family::D, p, q)
        }
        [2, 3, a3 @ (3 | 4 | 5)] => {
            let fam = match a3 {
                3 => Family::T,
                4 => Family::O,
                _ => Family::I,
            };
            let (ks, _) = fam.residues();
            let k = ks
                .iter()
                .copied()
                .find(|&k| {
                    fam.legs_for(k).map_or(false, |l| {
                        l == [(3, betas[1]), (*a3, betas[2])]
                    })
                })
                .ok_or_else(|| Error::NotSpherical(format!("{pos}")))?;
            SphericalName::raw(fam, pos.b.clone(), int(k))
        }
        _ => return Err(Error::NotSpherical(format!("{pos}"))),
    };
    Ok(if mirror { named.mirrored() } else { named })
}

/// Weighted tree; for canonical plumbings the center is vertex 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingGraph {
    pub weights: Vec<Integer>,
    pub edges: Vec<(usize, usize)>,
    pub center: Option<usize>,
}

impl PlumbingGraph {
    pub fn new(weights: Vec<Integer>, edges: Vec<(usize, usize)>) -> Result<Self, Error> {
        let g = Self {
            weights,
            edges,
            center: None,
        };
        g.check_tree()?;
        Ok(g)
    }

    /// Linear chain with the given weights.
    pub fn chain(weights: Vec<Integer>) -> Self {
        let edges = (1..weights.len()).map(|i| (i - 1, i)).collect();
        Self {
            weights,
            edges,
            center: None,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn check_tree(&self) -> Result<(), Error> {
        let n = self.weights.len();
        if n == 0 {
            return Ok(());
        }
        if self.edges.len() != n - 1 {
            return Err(Error::domain("a tree on n vertices has n - 1 edges"));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            if a >= n || b >= n || a == b {
                return Err(Error::domain(format!("bad edge ({a},{b})")));
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(Error::domain("plumbing graph has a cycle"));
            }
            parent[ra] = rb;
        }
        Ok(())
    }

    /// Sum of `|w| - 3` over the vertices of a linear graph.
    pub fn i_value(&self) -> Integer {
        self.weights.iter().map(|w| w.abs() - 3).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn inv(b: i64, legs: &[(i64, i64)]) -> SeifertInvariant {
        SeifertInvariant::from_i64(b, legs).unwrap()
    }

    #[test]
    fn blow_down() {
        let y = inv(5, &[(2, 1), (3, 1), (1, 1)]).normalize().unwrap();
        assert_eq!(y, inv(4, &[(2, 1), (3, 1)]));
    }

    #[test]
    fn single_twist() {
        let raw = inv(2, &[(2, 3)]);
        let y = raw.normalize().unwrap();
        assert_eq!(y, inv(1, &[(2, 1)]));
        assert_eq!(y.euler_number(), raw.euler_number());
    }

    #[test]
    fn octahedral_example_twist() {
        for b in 2..10 {
            let y = inv(-b + 3, &[(2, 1), (3, 2), (4, 3)]);
            let twisted = y.twist(2, &int(-(b - 1))).unwrap();
            assert_eq!(twisted, inv(2, &[(2, 1), (3, 2), (4, 3 + 4 * (b - 1))]));
            assert_eq!(twisted.normalize().unwrap(), y);
            let o11 = inv(b, &[(2, 1), (3, 1), (4, 1)]);
            assert_eq!(o11.reverse_orientation().unwrap(), y);
        }
    }

    #[test]
    fn reversal_is_involution() {
        let y = inv(3, &[(2, 1), (3, 2), (5, 1)]);
        let r = y.reverse_orientation().unwrap();
        assert_eq!(r.euler_number(), -y.euler_number());
        assert_eq!(r.reverse_orientation().unwrap(), y);
    }

    #[test]
    fn rejects_bad_legs() {
        assert!(SeifertInvariant::from_i64(1, &[(0, 1)]).is_err());
        assert!(SeifertInvariant::from_i64(1, &[(4, 2)]).is_err());
        assert!(SeifertInvariant::from_i64(1, &[(-3, 1)]).is_err());
    }

    #[test]
    fn euler_and_h1() {
        let i49 = inv(3, &[(2, 1), (3, 2), (5, 1)]);
        assert_eq!(i49.euler_number(), rat(49, 30));
        assert_eq!(i49.h1_order(), int(49));
        assert_eq!(inv(7, &[]).euler_number(), rat(7, 1));
        for b in 2..12 {
            for (b2, b3) in [(1, 1), (1, 2), (2, 2)] {
                let t = inv(b, &[(2, 1), (3, b2), (3, b3)]);
                assert_eq!(t.h1_order(), int(3 * (6 * b - 3 - 2 * (b2 + b3)).abs()));
            }
            for (b2, b3) in [(1, 1), (1, 3), (2, 1), (2, 3)] {
                let o = inv(b, &[(2, 1), (3, b2), (4, b3)]);
                assert_eq!(o.h1_order(), int(2 * (12 * b - 6 - 4 * b2 - 3 * b3).abs()));
            }
        }
        assert!(!inv(1, &[(2, 1), (2, 1)]).is_rational_homology_sphere());
    }

    #[test]
    fn catalog_names_roundtrip() {
        for fam in [Family::T, Family::O, Family::I] {
            let (ks, period) = fam.residues();
            for b in 2..15 {
                for &k in ks {
                    let name = SphericalName::catalog(fam, b, k);
                    let y = name.seifert().unwrap();
                    assert_eq!(spherical_name(&y).unwrap(), name);
                    let n = name.subscript().unwrap();
                    assert_eq!(n, int(period * (b - 2) + k));
                    assert_eq!(y.h1_order(), n.clone() * fam.h1_factor());
                    assert_eq!(SphericalName::from_subscript(fam, &n).unwrap(), name);
                    let m = name.clone().mirrored();
                    assert_eq!(spherical_name(&m.seifert().unwrap()).unwrap(), m);
                }
            }
        }
    }

    #[test]
    fn named_rows() {
        let o = inv(6, &[(2, 1), (3, 1), (4, 1)]);
        assert_eq!(spherical_name(&o).unwrap().to_string(), "O_59");
        let i = inv(3, &[(2, 1), (3, 2), (5, 1)]);
        assert_eq!(spherical_name(&i).unwrap().to_string(), "I_49");
        let t = SphericalName::from_subscript(Family::T, &int(27)).unwrap();
        assert_eq!(t.b(), Some(&int(6)));
        let o35 = SphericalName::from_subscript(Family::O, &int(35)).unwrap();
        assert_eq!((o35.b(), o35.k()), (Some(&int(4)), Some(11)));
        assert!(SphericalName::from_subscript(Family::I, &int(9)).is_err());
        assert!(SphericalName::from_subscript(Family::T, &int(-1)).is_err());
    }

    #[test]
    fn not_spherical() {
        let y = inv(2, &[(2, 1), (3, 1), (7, 1)]);
        assert!(matches!(spherical_name(&y), Err(Error::NotSpherical(_))));
        let y = inv(4, &[(2, 1), (2, 1), (2, 1), (2, 1)]);
        assert!(matches!(spherical_name(&y), Err(Error::NotSpherical(_))));
    }

    #[test]
    fn lens_seifert_identification() {
        for p in 2..30i64 {
            for q in 1..p {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let l = Lens::from_i64(p, q).unwrap();
                let y = l.seifert();
                assert_eq!(y.h1_order(), int(p));
                assert!(y.lens_space().unwrap().manifold().homeomorphic(&l));
                let name = spherical_name(&y).unwrap();
                assert_eq!(name.family, Family::C);
                assert!(Lens::new(name.first, name.second).unwrap().homeomorphic(&l));
                let back = y.reverse_orientation().unwrap().lens_space().unwrap().manifold();
                assert!(back.homeomorphic(&l.mirror()));
            }
        }
        // L(9,2) and L(9,5) are the same oriented manifold
        assert!(Lens::from_i64(9, 2).unwrap().homeomorphic(&Lens::from_i64(9, 5).unwrap()));
        assert!(!Lens::from_i64(9, 2).unwrap().homeomorphic(&Lens::from_i64(9, 4).unwrap()));
    }

    #[test]
    fn prism_names() {
        for p in 3..20i64 {
            for q in 2..p {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let d = SphericalName::prism(p, q);
                let y = d.seifert().unwrap();
                assert_eq!(y.h1_order(), int(4 * (p - q)));
                assert_eq!(spherical_name(&y).unwrap(), d);
                let red = y.complementary_reduction().unwrap().unwrap();
                assert!(red.negated);
                assert_eq!(red.lens, Lens::from_i64(p - q, q).unwrap());
                assert_eq!(red.lens.p, int(p - q));
            }
        }
        assert!(SphericalName::prism(5, 1).seifert().is_err());
    }

    #[test]
    fn tetrahedral_reduction() {
        for b in 2..20 {
            let y = SphericalName::catalog(Family::T, b, 3).seifert().unwrap();
            let red = y.complementary_reduction().unwrap().unwrap();
            assert_eq!(red.to_string(), Lens::from_i64(2 * b - 3, 2).map(|l| format!("-{l}")).unwrap());
        }
        assert_eq!(inv(2, &[(2, 1), (3, 1), (5, 1)]).complementary_reduction().unwrap(), None);
    }

    #[test]
    fn canonical_plumbings() {
        let g = SphericalName::catalog(Family::I, 4, 19).seifert().unwrap().canonical_plumbing().unwrap();
        let w: Vec<i64> = g.weights.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(w, vec![-4, -2, -2, -2, -5]);
        assert_eq!(g.edges, vec![(0, 1), (0, 2), (2, 3), (0, 4)]);
        let g = SphericalName::catalog(Family::I, 2, 1).seifert().unwrap().canonical_plumbing().unwrap();
        let w: Vec<i64> = g.weights.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(w, vec![-2, -2, -2, -2, -2, -2, -2, -2]);
        assert!(inv(-3, &[(2, 1)]).canonical_plumbing().is_err());
        assert!(matches!(
            inv(1, &[(2, 1), (2, 1)]).canonical_plumbing(),
            Err(Error::NotQhs(_))
        ));
    }

    #[test]
    fn i_values() {
        let chain = |p, q| PlumbingGraph::chain(Lens::from_i64(p, q).unwrap().chain());
        assert_eq!(chain(22, 3).i_value(), int(3));
        assert_eq!(chain(9, 7).i_value(), int(-3));
        assert_eq!(chain(9, 2).i_value() + chain(9, 7).i_value(), int(-2));
    }

    #[test]
    fn trees() {
        assert!(PlumbingGraph::new(vec![int(-2); 3], vec![(0, 1), (1, 2)]).is_ok());
        assert!(PlumbingGraph::new(vec![int(-2); 3], vec![(0, 1), (1, 0)]).is_err());
        assert!(PlumbingGraph::new(vec![int(-2); 3], vec![(0, 1)]).is_err());
    }
}
