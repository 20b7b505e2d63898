//! Dehn surgery on torus knots and spin^c label arithmetic.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::numtheory::{is_perfect_square, mod_inverse};
use crate::seifert::{spherical_name, SeifertInvariant, SphericalName};
use crate::{int, Error, Family, Integer, Rational};

/// The `(p, q)` torus knot; `mirror` selects the left-handed one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusKnot {
    pub p: Integer,
    pub q: Integer,
    pub mirror: bool,
}

impl TorusKnot {
    pub fn new(p: Integer, q: Integer, mirror: bool) -> Result<Self, Error> {
        if p < int(2) || q < int(2) || !p.gcd(&q).is_one() {
            return Err(Error::domain(format!(
                "torus knot T({p},{q}) needs coprime parameters >= 2"
            )));
        }
        let (p, q) = if p <= q { (p, q) } else { (q, p) };
        Ok(Self { p, q, mirror })
    }

    /// The right-handed trefoil.
    pub fn trefoil() -> Self {
        Self {
            p: int(2),
            q: int(3),
            mirror: false,
        }
    }

    pub fn is_trefoil(&self) -> bool {
        self.p == int(2) && self.q == int(3)
    }

    pub fn mirrored(&self) -> Self {
        Self {
            mirror: !self.mirror,
            ..self.clone()
        }
    }
}

impl fmt::Display for TorusKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.p, self.q)?;
        if self.mirror {
            write!(f, "^m")?;
        }
        Ok(())
    }
}

/// `±S^3_r(K)`: the manifold is `S^3_r(K)`, or its reverse when `negated`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurgeryDescription {
    pub knot: TorusKnot,
    pub coefficient: Rational,
    pub negated: bool,
}

impl SurgeryDescription {
    pub fn new(knot: TorusKnot, coefficient: Rational) -> Self {
        Self {
            knot,
            coefficient,
            negated: false,
        }
    }

    pub fn trefoil(coefficient: Rational) -> Self {
        Self::new(TorusKnot::trefoil(), coefficient)
    }

    /// `|H1|`, the absolute numerator of the coefficient.
    pub fn h1_order(&self) -> Integer {
        self.coefficient.numer().abs()
    }

    /// The same manifold as `sign · S^3_r(T)` over the right-handed knot.
    /// Returns `(negated, r)`.
    pub fn right_handed(&self) -> (bool, Rational) {
        if self.knot.mirror {
            (!self.negated, -self.coefficient.clone())
        } else {
            (self.negated, self.coefficient.clone())
        }
    }

    /// `-S^3_r(K) = S^3_{-r}(mirror K)`, written the second way.
    pub fn reversed(&self) -> Self {
        Self {
            knot: self.knot.clone(),
            coefficient: self.coefficient.clone(),
            negated: !self.negated,
        }
    }

    /// Unnormalized Seifert invariant of the described oriented manifold.
    pub fn seifert(&self) -> Result<SeifertInvariant, Error> {
        let (neg, r) = self.right_handed();
        let y = moser(&self.knot.p, &self.knot.q, &r)?;
        if neg {
            Ok(SeifertInvariant {
                b: -y.b,
                legs: y.legs.into_iter().map(|(a, c)| (a, -c)).collect(),
            })
        } else {
            Ok(y)
        }
    }

    pub fn spherical_name(&self) -> Result<SphericalName, Error> {
        spherical_name(&self.seifert()?)
    }
}

impl fmt::Display for SurgeryDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "-")?;
        }
        write!(
            f,
            "surgery({}, {})",
            self.knot,
            crate::numtheory::fraction_string(&self.coefficient)
        )
    }
}

/// `S^3_r(T_{p,q}) = -Y(2; (p, q*), (q, p*), (m, n))` with
/// `m/n = (pq - r)/(pq - r - 1)`, returned as the invariant
/// `(-2; (p, -q*), (q, -p*), (m, -n))` of the surgered manifold itself.
pub fn moser(p: &Integer, q: &Integer, r: &Rational) -> Result<SeifertInvariant, Error> {
    let k = TorusKnot::new(p.clone(), q.clone(), false)?;
    let pq = &k.p * &k.q;
    if *r == Rational::from_integer(pq.clone()) {
        return Err(Error::Reducible(format!("slope {r} on T({p},{q})")));
    }
    let (a, c) = (r.numer().clone(), r.denom().clone());
    let mut m = &pq * &c - a;
    let mut n = &m - &c;
    if m.is_negative() {
        m = -m;
        n = -n;
    }
    let q_star = mod_inverse(&k.q, &k.p)?;
    let p_star = mod_inverse(&k.p, &k.q)?;
    SeifertInvariant::new(
        int(-2),
        vec![(k.p.clone(), -q_star), (k.q.clone(), -p_star), (m, -n)],
    )
}

/// A trefoil surgery describing a `T`, `O` or `I` catalog manifold, preferring
/// positive surgery on the right-handed trefoil.
pub fn surgery_of_spherical(name: &SphericalName) -> Result<SurgeryDescription, Error> {
    if matches!(name.family, Family::C | Family::D) {
        return Err(Error::domain(format!("{name}: no trefoil description in scope")));
    }
    let z = name.seifert()?;
    let desc = surgery_of_seifert(&z)?;
    debug_assert_eq!(desc.seifert()?.normalize()?, z);
    Ok(desc)
}

/// Reads off a trefoil surgery from a normalized invariant containing the
/// legs `(2,1), (3,2)` in either orientation.
pub fn surgery_of_seifert(z: &SeifertInvariant) -> Result<SurgeryDescription, Error> {
    let z = z.normalize()?;
    let rz = z.reverse_orientation()?;
    if let Some(r) = trefoil_slope(&rz) {
        // -Z = Y(2; (2,1),(3,2),(m,n)), so Z = S^3_r(T)
        return Ok(SurgeryDescription::trefoil(r));
    }
    if let Some(r) = trefoil_slope(&z) {
        // Z = -S^3_r(T) = S^3_{-r}(-T)
        return Ok(SurgeryDescription::new(TorusKnot::trefoil().mirrored(), -r));
    }
    Err(Error::domain(format!("{z} has no trefoil surgery description")))
}

fn trefoil_slope(y: &SeifertInvariant) -> Option<Rational> {
    let mut legs = y.legs.clone();
    for want in [(int(2), int(1)), (int(3), int(2))] {
        let pos = legs.iter().position(|l| *l == want)?;
        legs.remove(pos);
    }
    let [(alpha, beta)] = legs.as_slice() else {
        return None;
    };
    let m = alpha.clone();
    let n = beta - (&y.b - 2) * alpha;
    if m == n {
        return None;
    }
    Some(Rational::new(int(5) * &m - int(6) * &n, m - n))
}

/// Conjugation on surgery labels: `i ↦ p + q - 1 - i (mod p)`.
pub fn conjugate_label(p: &Integer, q: &Integer, i: &Integer) -> Integer {
    (p + q - int(1) - i).mod_floor(p)
}

/// The label fixed by conjugation, for odd `p`.
pub fn spin_label(p: &Integer, q: &Integer) -> Result<Integer, Error> {
    if !p.is_positive() || p.is_even() {
        return Err(Error::domain(format!(
            "spin label needs odd |H1|, got {p}"
        )));
    }
    if p.is_one() {
        return Ok(Integer::zero());
    }
    let half = mod_inverse(&int(2), p)?;
    Ok(((p + q - int(1)) * half).mod_floor(p))
}

/// Extendable labels on `S^3_{m^2/q}(K)`: one set `{i0 + m·k}` for odd `m`,
/// both candidate sets for even `m`.
pub fn extendable_spinc(m: &Integer, q: &Integer) -> Result<Vec<Vec<Integer>>, Error> {
    if !m.is_positive() || !q.is_positive() {
        return Err(Error::domain("extendable labels need m, q >= 1"));
    }
    let p = m * m;
    if !p.gcd(q).is_one() {
        return Err(Error::domain(format!("gcd({p}, {q}) != 1")));
    }
    let starts: Vec<Integer> = if m.is_odd() {
        if q.is_odd() {
            vec![(q - 1) / 2]
        } else {
            vec![(m + q - 1) / 2]
        }
    } else {
        vec![(q - 1) / 2, (m + q - 1) / 2]
    };
    let mut out = Vec::new();
    for i0 in starts {
        let mut set = Vec::new();
        let mut k = Integer::zero();
        while &k < m {
            set.push((&i0 + m * &k).mod_floor(&p));
            k += 1;
        }
        out.push(set);
    }
    Ok(out)
}

/// `m` when the surgery has square `|H1| = m^2`.
pub fn square_root_order(desc: &SurgeryDescription) -> Option<Integer> {
    is_perfect_square(&desc.h1_order())
}
