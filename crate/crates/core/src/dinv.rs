//! Correction terms of lens spaces and of trefoil surgeries.

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::numtheory::{dedekind_rademacher, dedekind_sum};
use crate::surgery::{conjugate_label, spin_label, SurgeryDescription};
use crate::{int, Error, Integer, Rational};

fn check_lens(p: &Integer, q: &Integer) -> Result<Integer, Error> {
    if !p.is_positive() {
        return Err(Error::domain(format!("lens space needs p > 0, got {p}")));
    }
    let q = q.mod_floor(p);
    if !p.gcd(&q).is_one() {
        return Err(Error::domain(format!("gcd({p}, {q}) != 1")));
    }
    Ok(q)
}

fn check_label(p: &Integer, i: &Integer) -> Result<(), Error> {
    if i.is_negative() || i >= p {
        return Err(Error::domain(format!("label {i} outside [0, {p})")));
    }
    Ok(())
}

fn step_term(p: &Integer, q: &Integer, i: &Integer) -> Rational {
    let pq = p * q;
    let t: Integer = int(2) * i + 1 - p - q;
    Rational::new(&pq - &t * &t, int(4) * pq)
}

/// `d(-L(p, q), i)` by the reciprocity recursion down the Euclidean algorithm.
pub fn d_neg_lens_recursive(p: &Integer, q: &Integer, i: &Integer) -> Result<Rational, Error> {
    let q = check_lens(p, q)?;
    check_label(p, i)?;
    let (mut p, mut q, mut i) = (p.clone(), q, i.clone());
    let mut acc = Rational::zero();
    let mut positive = true;
    while !p.is_one() {
        let t = step_term(&p, &q, &i);
        if positive {
            acc += t;
        } else {
            acc -= t;
        }
        positive = !positive;
        let r = p.mod_floor(&q);
        i = i.mod_floor(&q);
        p = q;
        q = r;
    }
    Ok(acc)
}

/// `d(L(p, q), i)`, the lens space being `p/q` surgery on the unknot.
pub fn d_lens(p: &Integer, q: &Integer, i: &Integer) -> Result<Rational, Error> {
    Ok(-d_neg_lens_recursive(p, q, i)?)
}

/// `d(L(p, q), i) = 2 s(q, p; i) + s(q, p) - 1/(2p)`.
pub fn d_lens_closed(p: &Integer, q: &Integer, i: &Integer) -> Result<Rational, Error> {
    let q = check_lens(p, q)?;
    check_label(p, i)?;
    let s_i = dedekind_rademacher(&q, p, i)?;
    let s = dedekind_sum(&q, p)?;
    Ok(s_i * int(2) + s - Rational::new(int(1), int(2) * p))
}

fn usize_of(n: &Integer) -> Result<usize, Error> {
    n.to_usize()
        .ok_or_else(|| Error::domain(format!("{n} labels do not fit in memory")))
}

/// Every `d(L(p, q), i)`, `0 <= i < p`. Each level of the recursion is
/// tabulated once, so the cost is linear in `p + q + ...`.
pub fn lens_table(p: &Integer, q: &Integer) -> Result<Vec<Rational>, Error> {
    let q = check_lens(p, q)?;
    let mut chain = vec![(p.clone(), q)];
    while !chain.last().expect("nonempty").0.is_one() {
        let (a, b) = chain.last().expect("nonempty").clone();
        chain.push((b.clone(), a.mod_floor(&b)));
    }
    // tables of d(-L(a, b), ·), built from S^3 upward
    let mut below = vec![Rational::zero()];
    for (a, b) in chain.iter().rev().skip(1) {
        let n = usize_of(a)?;
        let m = below.len();
        let mut table = Vec::with_capacity(n);
        for i in 0..n {
            let t = step_term(a, b, &Integer::from(i));
            table.push(t - &below[i % m]);
        }
        below = table;
    }
    Ok(below.into_iter().map(|x| -x).collect())
}

/// `V_s` of a knot; zero beyond the stored prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VSequence {
    pub knot: String,
    pub values: Vec<u64>,
}

impl VSequence {
    pub fn get(&self, s: &Integer) -> u64 {
        if s.is_negative() {
            return self.values.first().copied().unwrap_or(0);
        }
        s.to_usize()
            .and_then(|s| self.values.get(s).copied())
            .unwrap_or(0)
    }

    pub fn is_valid(&self) -> bool {
        self.values
            .windows(2)
            .all(|w| w[1] <= w[0] && w[0] - w[1] <= 1)
            && self.values.last().map_or(true, |&v| v <= 1)
    }
}

/// Either trefoil: `V_0 = 1`, `V_s = 0` for `s > 0`.
pub fn v_sequence_trefoil() -> VSequence {
    VSequence {
        knot: "T(2,3)".into(),
        values: vec![1],
    }
}

/// Ni–Wu data for a description: `(negated, p, q)` with the manifold equal to
/// `±S^3_{p/q}(T)`, `p, q > 0`, over the right-handed trefoil.
fn ni_wu_frame(desc: &SurgeryDescription) -> Result<(bool, Integer, Integer), Error> {
    if !desc.knot.is_trefoil() {
        return Err(Error::VSequenceUnavailable(format!("{}", desc.knot)));
    }
    let (neg, r) = desc.right_handed();
    if !r.is_positive() {
        return Err(Error::VSequenceUnavailable(format!(
            "{desc}: only positive surgery on the right-handed trefoil, or negative on the left-handed one"
        )));
    }
    Ok((neg, r.numer().clone(), r.denom().clone()))
}

fn ni_wu_correction(v: &VSequence, p: &Integer, q: &Integer, i: &Integer) -> Rational {
    let a = v.get(&i.div_floor(q));
    let b = v.get(&(p + q - int(1) - i).div_floor(q));
    Rational::from_integer(int(2 * a.max(b) as i64))
}

/// Correction term at surgery label `i`.
pub fn d_surgery(desc: &SurgeryDescription, i: &Integer) -> Result<Rational, Error> {
    let (neg, p, q) = ni_wu_frame(desc)?;
    check_label(&p, i)?;
    let d = d_lens_closed(&p, &q, i)? - ni_wu_correction(&v_sequence_trefoil(), &p, &q, i);
    Ok(if neg { -d } else { d })
}

/// All correction terms of a manifold, indexed by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DInvariantTable {
    pub manifold: String,
    pub p: Integer,
    pub q: Integer,
    pub values: Vec<Rational>,
}

impl DInvariantTable {
    pub fn get(&self, i: &Integer) -> Option<&Rational> {
        i.to_usize().and_then(|i| self.values.get(i))
    }

    pub fn sum(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |a, b| a + b)
    }

    /// Labels carrying integral values, in increasing order.
    pub fn integral_labels(&self) -> Vec<Integer> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_integer())
            .map(|(i, _)| Integer::from(i))
            .collect()
    }

    pub fn conjugate(&self, i: &Integer) -> Integer {
        conjugate_label(&self.p, &self.q, i)
    }
}

pub fn d_table(desc: &SurgeryDescription) -> Result<DInvariantTable, Error> {
    let (neg, p, q) = ni_wu_frame(desc)?;
    let v = v_sequence_trefoil();
    let lens = lens_table(&p, &q)?;
    let values = lens
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            let d = d - ni_wu_correction(&v, &p, &q, &Integer::from(i));
            if neg {
                -d
            } else {
                d
            }
        })
        .collect();
    Ok(DInvariantTable {
        manifold: desc.to_string(),
        p,
        q,
        values,
    })
}

/// Table of a lens space in its own labeling.
pub fn d_lens_table(p: &Integer, q: &Integer) -> Result<DInvariantTable, Error> {
    let values = lens_table(p, q)?;
    Ok(DInvariantTable {
        manifold: format!("L({p},{})", q.mod_floor(p)),
        p: p.clone(),
        q: q.mod_floor(p),
        values,
    })
}

pub fn d_sum_all(desc: &SurgeryDescription) -> Result<Rational, Error> {
    Ok(d_table(desc)?.sum())
}

/// Correction term of the spin structure, for odd `|H1|`.
pub fn d_spin(desc: &SurgeryDescription) -> Result<Rational, Error> {
    let (_, p, q) = ni_wu_frame(desc)?;
    d_surgery(desc, &spin_label(&p, &q)?)
}
