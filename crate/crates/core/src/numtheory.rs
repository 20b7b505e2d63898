//! Exact arithmetic substrate.
//!
//! Everything here is generic over an integer type implementing [`ExactInt`]
//! (`BigInt`, `i64`, `i128`, ...). The rest of the crate instantiates it at
//! [`crate::Integer`], so nothing downstream can overflow or round.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::Error;

/// Integer types the exact routines can run over.
pub trait ExactInt:
    num_integer::Integer
    + Signed
    + Roots
    + Clone
    + FromPrimitive
    + ToPrimitive
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> ExactInt for T where
    T: num_integer::Integer
        + Signed
        + Roots
        + Clone
        + FromPrimitive
        + ToPrimitive
        + Hash
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

pub(crate) fn int<T: ExactInt>(v: i64) -> T {
    T::from_i64(v).expect("every ExactInt holds small constants")
}

/// Hirzebruch–Jung continued fraction `[a1, ..., as]` with
/// `a1 - 1/(a2 - 1/(... - 1/as))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContinuedFraction<T> {
    pub terms: Vec<T>,
}

impl<T: ExactInt> ContinuedFraction<T> {
    pub fn new(terms: Vec<T>) -> Self {
        Self { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every term is at least 2, as for normalized expansions.
    pub fn is_normalized(&self) -> bool {
        let two = int::<T>(2);
        self.terms.iter().all(|a| *a >= two)
    }
}

impl<T: Display> Display for ContinuedFraction<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Expands `p/q > 1` (coprime) with every term `>= 2`.
pub fn hj_cf<T: ExactInt>(p: &T, q: &T) -> Result<ContinuedFraction<T>, Error> {
    if !q.is_positive() || p <= q {
        return Err(Error::domain(format!(
            "Hirzebruch-Jung expansion needs p > q > 0, got {p}/{q}"
        )));
    }
    if !p.gcd(q).is_one() {
        return Err(Error::domain(format!("{p}/{q} is not in lowest terms")));
    }
    let mut terms = Vec::new();
    let (mut p, mut q) = (p.clone(), q.clone());
    while !q.is_zero() {
        // a = ceil(p/q); the remainder a*q - p lies in [0, q).
        let a = p.div_ceil(&q);
        let next = a.clone() * q.clone() - p;
        terms.push(a);
        p = q;
        q = next;
    }
    Ok(ContinuedFraction { terms })
}

/// Exact value of a descending continued fraction with arbitrary integer terms.
pub fn cf_eval<T: ExactInt>(cf: &ContinuedFraction<T>) -> Result<Ratio<T>, Error> {
    let mut it = cf.terms.iter().rev();
    let last = it
        .next()
        .ok_or_else(|| Error::domain("empty continued fraction"))?;
    let mut acc = Ratio::from_integer(last.clone());
    for a in it {
        if acc.is_zero() {
            return Err(Error::domain(format!(
                "continued fraction {cf} has a vanishing tail"
            )));
        }
        acc = Ratio::from_integer(a.clone()) - acc.recip();
    }
    Ok(acc)
}

/// Projective value `(num, den)` of `[e1, ..., en]`, computed as the first
/// column of `M(e1)...M(en)` with `M(e) = [[e, -1], [1, 0]]`. Never divides,
/// so zero tails are harmless; `den == 0` signals the value infinity.
pub fn cf_projective<T: ExactInt>(terms: &[T]) -> (T, T) {
    let (mut a, mut b, mut c, mut d) = (T::one(), T::zero(), T::zero(), T::one());
    for e in terms {
        let na = a.clone() * e.clone() + b.clone();
        let nb = -a;
        let nc = c.clone() * e.clone() + d.clone();
        let nd = -c;
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    (a, c)
}

/// `x` in `[1, n)` with `a * x = 1 (mod n)`.
pub fn mod_inverse<T: ExactInt>(a: &T, n: &T) -> Result<T, Error> {
    if *n < int::<T>(2) {
        return Err(Error::domain(format!("modulus {n} must be at least 2")));
    }
    let ext = a.mod_floor(n).extended_gcd(n);
    if !ext.gcd.is_one() {
        return Err(Error::domain(format!("{a} is not invertible modulo {n}")));
    }
    Ok(ext.x.mod_floor(n))
}

/// Integer points convention for the first Bernoulli sawtooth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sawtooth {
    /// `x - floor(x) - 1/2` everywhere, so the value at integers is `-1/2`.
    Shifted,
    /// Classical `((x))`, which is `0` at integers.
    Classical,
}

/// Convention under which the closed lens-space formula agrees with the
/// recursive one; the exhaustive sweep in the dinv tests pins this.
pub const PINNED_SAWTOOTH: Sawtooth = Sawtooth::Shifted;

/// `2p * B1(a/p)` as an integer, for `p > 0`.
fn twice_sawtooth_scaled<T: ExactInt>(a: &T, p: &T, conv: Sawtooth) -> T {
    let r = a.mod_floor(p);
    if conv == Sawtooth::Classical && r.is_zero() {
        return T::zero();
    }
    r.clone() + r - p.clone()
}

/// Dedekind–Rademacher sum `s(q, p; i)` under an explicit sawtooth convention.
pub fn dedekind_rademacher_with<T: ExactInt>(
    q: &T,
    p: &T,
    i: &T,
    conv: Sawtooth,
) -> Result<Ratio<T>, Error> {
    if p.is_zero() {
        return Err(Error::domain("Dedekind-Rademacher sum with p = 0"));
    }
    // B1(x/p) with p < 0 is B1((-x)/|p|).
    let (sign, n) = if p.is_negative() {
        (-T::one(), -p.clone())
    } else {
        (T::one(), p.clone())
    };
    let mut num = T::zero();
    let mut k = T::zero();
    while k < n {
        let top = sign.clone() * (k.clone() * q.clone() + i.clone());
        let bottom = sign.clone() * k.clone();
        num = num
            + twice_sawtooth_scaled(&top, &n, conv) * twice_sawtooth_scaled(&bottom, &n, conv);
        k = k + T::one();
    }
    let den = int::<T>(4) * n.clone() * n;
    Ok(Ratio::new(num, den))
}

/// `s(q, p; i)` under [`PINNED_SAWTOOTH`].
pub fn dedekind_rademacher<T: ExactInt>(q: &T, p: &T, i: &T) -> Result<Ratio<T>, Error> {
    dedekind_rademacher_with(q, p, i, PINNED_SAWTOOTH)
}

/// `s(q, p) = s(q, p; 0) - 1/4`.
pub fn dedekind_sum_with<T: ExactInt>(q: &T, p: &T, conv: Sawtooth) -> Result<Ratio<T>, Error> {
    Ok(dedekind_rademacher_with(q, p, &T::zero(), conv)? - Ratio::new(T::one(), int(4)))
}

pub fn dedekind_sum<T: ExactInt>(q: &T, p: &T) -> Result<Ratio<T>, Error> {
    dedekind_sum_with(q, p, PINNED_SAWTOOTH)
}

/// Exact square root when `n` is a perfect square.
pub fn is_perfect_square<T: ExactInt>(n: &T) -> Option<T> {
    if n.is_negative() {
        return None;
    }
    let m = n.sqrt();
    (m.clone() * m.clone() == *n).then_some(m)
}

/// Prime factorization of `|n|` by trial division, as `(prime, exponent)`.
pub fn factorize<T: ExactInt>(n: &T) -> Vec<(T, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = int::<T>(2);
    while d.clone() * d.clone() <= n {
        let mut e = 0;
        while (n.clone() % d.clone()).is_zero() {
            n = n / d.clone();
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d = d + T::one();
    }
    if n > T::one() {
        out.push((n, 1));
    }
    out
}

pub fn is_square_free<T: ExactInt>(n: &T) -> bool {
    !n.is_zero() && factorize(n).iter().all(|(_, e)| *e == 1)
}

pub fn is_prime<T: ExactInt>(n: &T) -> bool {
    *n > T::one() && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

/// True when the rational is stored in lowest terms with positive denominator.
pub fn is_reduced<T: ExactInt>(r: &Ratio<T>) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

/// `a/b` with no spaces; integers print without a denominator.
pub fn fraction_string<T: ExactInt>(r: &Ratio<T>) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
