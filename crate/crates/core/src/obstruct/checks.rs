//! The individual obstructions.

use std::collections::BTreeSet;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Claim, ObstructionId, ObstructionReport, Verdict, Witness};
use crate::dinv::{d_spin, d_table};
use crate::lattice::{
    all_embeddings, find_embedding, i_value, matrix_determinant, CosetReducer, EmbeddingOutcome,
    GramLattice, SearchBudget,
};
use crate::numtheory::{factorize, fraction_string, hj_cf, is_perfect_square, is_square_free};
use crate::seifert::{PlumbingGraph, SeifertInvariant};
use crate::surgery::{extendable_spinc, spin_label, SurgeryDescription};
use crate::{int, Error, Integer, Rational};

use ObstructionId as Id;

/// The mod 2 characteristic vector: `w·v ≡ v·v` for every vertex `v`.
pub fn wu_surface(g: &PlumbingGraph) -> Result<Vec<u8>, Error> {
    let n = g.len();
    let mut a: Vec<Vec<u8>> = vec![vec![0; n + 1]; n];
    for (i, w) in g.weights.iter().enumerate() {
        let odd = u8::from(w.is_odd());
        a[i][i] = odd;
        a[i][n] = odd;
    }
    for &(u, v) in &g.edges {
        a[u][v] ^= 1;
        a[v][u] ^= 1;
    }
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c] == 1) else {
            return Err(Error::domain(
                "Wu surface needs an odd determinant; the mod 2 system is singular",
            ));
        };
        a.swap(c, p);
        for r in 0..n {
            if r != c && a[r][c] == 1 {
                for k in c..=n {
                    a[r][k] ^= a[c][k];
                }
            }
        }
    }
    Ok((0..n).map(|i| a[i][n]).collect())
}

/// `σ(X) - [Σ]²` for the negative definite plumbing `X` and its Wu surface.
pub fn mu_bar(g: &PlumbingGraph) -> Result<Integer, Error> {
    if g.is_empty() {
        return Ok(Integer::zero());
    }
    let l = GramLattice::from_plumbing(g)?;
    if !l.is_negative_definite() {
        return Err(Error::domain("mu-bar needs a negative definite plumbing"));
    }
    let w = wu_surface(g)?;
    let mut sq = 0i64;
    for i in 0..l.rank {
        for j in 0..l.rank {
            sq += i64::from(w[i]) * i64::from(w[j]) * l.matrix[i][j];
        }
    }
    Ok(-int(l.rank as i64) - int(sq))
}

/// `d = -μ̄/4` of the spin structure on the boundary.
pub fn d_spin_plumbing(g: &PlumbingGraph) -> Result<Rational, Error> {
    Ok(Rational::new(-mu_bar(g)?, int(4)))
}

/// Plumbing of the positively oriented manifold and whether that is the
/// reverse of `inv`.
fn oriented_plumbing(inv: &SeifertInvariant) -> Result<(PlumbingGraph, bool), Error> {
    let n = inv.normalize()?;
    if n.euler_number().is_negative() {
        Ok((n.reverse_orientation()?.canonical_plumbing()?, true))
    } else {
        Ok((n.canonical_plumbing()?, false))
    }
}

pub fn obstruct_square_h1(inv: &SeifertInvariant) -> ObstructionReport {
    let h = inv.h1_order();
    let r = ObstructionReport::new(Id::SquareH1, Verdict::Passes).param("h1", &h);
    match is_perfect_square(&h) {
        Some(m) => r.param("sqrt", m),
        None => r
            .witness(Witness::H1 { order: h })
            .claim(Claim::NoRationalBall)
            .verdict_to(Verdict::Obstructs),
    }
}

impl ObstructionReport {
    fn verdict_to(mut self, v: Verdict) -> Self {
        self.verdict = v;
        self
    }
}

fn inconclusive(id: Id, budget: &SearchBudget) -> ObstructionReport {
    ObstructionReport::new(id, Verdict::Inconclusive).param("budget", budget.nodes)
}

/// Equal-rank embedding of the canonical plumbing lattice.
pub fn obstruct_donaldson_embed(
    inv: &SeifertInvariant,
    budget: SearchBudget,
) -> Result<ObstructionReport, Error> {
    let (g, _) = oriented_plumbing(inv)?;
    let l = GramLattice::from_plumbing(&g)?;
    let base = |v| {
        ObstructionReport::new(Id::DonaldsonEmbed, v)
            .param("rank", l.rank)
            .param("det", l.determinant().abs())
    };
    Ok(match find_embedding(&l, l.rank, budget)? {
        EmbeddingOutcome::Found(e) => base(Verdict::Passes).witness(Witness::Embedding(e.certificate(&l))),
        EmbeddingOutcome::None => base(Verdict::Obstructs)
            .witness(Witness::NoEmbedding {
                lattice_rank: l.rank,
                target_rank: l.rank,
                copies: 1,
            })
            .claim(Claim::NoRationalBall),
        EmbeddingOutcome::Inconclusive { .. } => inconclusive(Id::DonaldsonEmbed, &budget).param("rank", l.rank),
    })
}

/// Embeds `⊕ⁿ l` at rank `n·rank(l)` for `n = 1..=n_max`. Failure for every
/// `n` rules out orders up to `n_max`; with `theorem` it rules out all.
pub fn obstruct_donaldson_order(
    l: &GramLattice,
    source: &str,
    n_max: u32,
    budget: SearchBudget,
    theorem: Option<&str>,
) -> Result<ObstructionReport, Error> {
    let base = |v| {
        ObstructionReport::new(Id::DonaldsonOrder, v)
            .param("source", source)
            .param("rank", l.rank)
            .param("n_max", n_max)
    };
    for n in 1..=n_max as usize {
        let sum = l.direct_sum(n);
        match find_embedding(&sum, sum.rank, budget)? {
            EmbeddingOutcome::Found(e) => {
                return Ok(base(Verdict::Passes)
                    .param("embeds_at", n)
                    .witness(Witness::Embedding(e.certificate(&sum))))
            }
            EmbeddingOutcome::None => {}
            EmbeddingOutcome::Inconclusive { .. } => {
                return Ok(inconclusive(Id::DonaldsonOrder, &budget)
                    .param("source", source)
                    .param("copies", n))
            }
        }
    }
    let r = base(Verdict::Obstructs).witness(Witness::NoEmbedding {
        lattice_rank: l.rank,
        target_rank: l.rank * n_max as usize,
        copies: n_max as usize,
    });
    Ok(match theorem {
        Some(t) => r.claim(Claim::InfiniteOrder).external(t),
        None => r.claim(Claim::OrderAbove(n_max)),
    })
}

const LISCA_TRICHOTOMY: &str =
    "order of S^3_{p/q}(K) is at least that of L(p,q) when I < 0; lens space orders are 1, 2 or infinite (Lisca)";

/// Donaldson order bound from the linear plumbing of a positive surgery
/// coefficient `p/q` with `I(Γ_{p,q}) < 0`.
pub fn obstruct_donaldson_chain(
    desc: &SurgeryDescription,
    n_max: u32,
    budget: SearchBudget,
) -> Result<ObstructionReport, Error> {
    let r = desc.coefficient.abs();
    let (p, q) = (r.numer().clone(), r.denom().clone());
    let skip = |why: &str| {
        ObstructionReport::new(Id::DonaldsonOrder, Verdict::Inapplicable)
            .param("source", "surgery")
            .param("slope", fraction_string(&r))
            .param("reason", why)
    };
    if p <= q {
        return Ok(skip("slope must exceed 1"));
    }
    let chain: Vec<Integer> = hj_cf(&p, &q)?.terms.into_iter().map(|t| -t).collect();
    let iv = i_value(&chain);
    if !iv.is_negative() {
        return Ok(skip("I >= 0").param("i_value", iv));
    }
    let w: Option<Vec<i64>> = chain.iter().map(|x| x.to_i64()).collect();
    let l = GramLattice::chain(&w.ok_or_else(|| Error::domain("chain weight too large"))?);
    let theorem = (n_max >= 2).then_some(LISCA_TRICHOTOMY);
    let mut rep = obstruct_donaldson_order(&l, "surgery", n_max, budget, theorem)?
        .param("slope", fraction_string(&r))
        .param("i_value", iv);
    if rep.obstructs() && theorem.is_none() {
        rep = rep.external(LISCA_TRICHOTOMY);
    }
    Ok(rep)
}

/// Integral correction terms on the extendable labels of a square-order
/// surgery; every candidate label set must carry a nonzero one.
pub fn obstruct_integral_d(desc: &SurgeryDescription) -> Result<ObstructionReport, Error> {
    let h = desc.h1_order();
    let Some(m) = is_perfect_square(&h) else {
        return Ok(ObstructionReport::new(Id::IntegralD, Verdict::Inapplicable)
            .param("h1", h)
            .param("reason", "|H1| is not a square"));
    };
    let table = d_table(desc)?;
    let sets = extendable_spinc(&m, &table.q)?;
    let mut first = None;
    let mut all_hit = true;
    for set in &sets {
        let hit = set.iter().find_map(|i| {
            let d = table.get(i).expect("label in range");
            (d.is_integer() && !d.is_zero()).then(|| (i.clone(), d.clone()))
        });
        match hit {
            Some(h) => {
                first.get_or_insert(h);
            }
            None => all_hit = false,
        }
    }
    let base = |v| {
        ObstructionReport::new(Id::IntegralD, v)
            .param("manifold", &table.manifold)
            .param("h1", &h)
            .param("candidate_sets", sets.len())
    };
    Ok(match (all_hit, first) {
        (true, Some((label, value))) => base(Verdict::Obstructs)
            .witness(Witness::D {
                label: Some(label),
                value,
            })
            .claim(Claim::NoRationalBall),
        _ => base(Verdict::Passes),
    })
}

/// Spin correction term from the Wu surface, cross-checked against the
/// surgery formula when a description is given.
pub fn obstruct_spin_d(
    inv: &SeifertInvariant,
    desc: Option<&SurgeryDescription>,
) -> Result<ObstructionReport, Error> {
    let h = inv.h1_order();
    if h.is_even() {
        return Ok(ObstructionReport::new(Id::SpinDMubar, Verdict::Inapplicable)
            .param("h1", h)
            .param("reason", "|H1| is even"));
    }
    let (g, reversed) = oriented_plumbing(inv)?;
    let mb = mu_bar(&g)?;
    let mut d = d_spin_plumbing(&g)?;
    if reversed {
        d = -d;
    }
    let mut rep = ObstructionReport::new(Id::SpinDMubar, Verdict::Passes)
        .param("h1", &h)
        .param("mu_bar", if reversed { -mb } else { mb });
    let mut label = None;
    if let Some(desc) = desc {
        let via = d_spin(desc)?;
        if via != d {
            return Err(Error::domain(format!(
                "spin correction terms disagree: {} from the plumbing, {} from surgery",
                fraction_string(&d),
                fraction_string(&via)
            )));
        }
        let table = d_table(desc)?;
        label = Some(spin_label(&table.p, &table.q)?);
        rep = rep.param("cross_check", "surgery agrees");
    }
    if !d.is_zero() {
        rep = rep
            .verdict_to(Verdict::Obstructs)
            .witness(Witness::D { label, value: d })
            .claim(Claim::InfiniteOrder);
    }
    Ok(rep)
}

pub fn obstruct_d_sum(desc: &SurgeryDescription) -> Result<ObstructionReport, Error> {
    let h = desc.h1_order();
    if !is_square_free(&h) {
        return Ok(ObstructionReport::new(Id::DSum, Verdict::Inapplicable)
            .param("h1", h)
            .param("reason", "|H1| is not square-free"));
    }
    let sum = d_table(desc)?.sum();
    let rep = ObstructionReport::new(Id::DSum, Verdict::Passes)
        .param("h1", h)
        .param("sum", fraction_string(&sum));
    Ok(if sum.is_zero() {
        rep
    } else {
        rep.verdict_to(Verdict::Obstructs)
            .witness(Witness::Sum { value: sum })
            .claim(Claim::InfiniteOrder)
    })
}

/// Max plus min of `d` over `{s0 + n·q}` for `|H1| = p·q`.
pub fn obstruct_max_min_at(
    desc: &SurgeryDescription,
    p: &Integer,
    q: &Integer,
) -> Result<ObstructionReport, Error> {
    let h = desc.h1_order();
    let ok = h == p * q && crate::numtheory::is_prime(p) && p.gcd(q).is_one() && h.is_odd();
    let base = |v| {
        ObstructionReport::new(Id::MaxMin, v)
            .param("p", p)
            .param("q", q)
    };
    if !ok {
        return Ok(base(Verdict::Inapplicable).param("reason", "needs |H1| = p·q, p prime, coprime, odd"));
    }
    let table = d_table(desc)?;
    let s0 = spin_label(&table.p, &table.q)?;
    let labels: Vec<Integer> = (0..p.to_u64().expect("small prime"))
        .map(|n| (&s0 + q * int(n as i64)).mod_floor(&h))
        .collect();
    let values: Vec<Rational> = labels
        .iter()
        .map(|i| table.get(i).expect("label in range").clone())
        .collect();
    let max = values.iter().max().expect("p >= 2").clone();
    let min = values.iter().min().expect("p >= 2").clone();
    let total = &max + &min;
    let rep = base(Verdict::Passes)
        .param("max", fraction_string(&max))
        .param("min", fraction_string(&min));
    Ok(if total.is_zero() {
        rep
    } else {
        rep.verdict_to(Verdict::Obstructs)
            .witness(Witness::DList { labels, values })
            .claim(Claim::InfiniteOrder)
    })
}

/// Tries every prime `p` exactly dividing `|H1|`; obstructs if any does.
pub fn obstruct_max_min(desc: &SurgeryDescription) -> Result<ObstructionReport, Error> {
    let h = desc.h1_order();
    let mut last = None;
    if h.is_odd() {
        for (p, e) in factorize(&h) {
            if e != 1 {
                continue;
            }
            let q = &h / &p;
            let rep = obstruct_max_min_at(desc, &p, &q)?;
            if rep.obstructs() {
                return Ok(rep);
            }
            last = Some(rep);
        }
    }
    Ok(last.unwrap_or_else(|| {
        ObstructionReport::new(Id::MaxMin, Verdict::Inapplicable)
            .param("h1", h)
            .param("reason", "no prime p with |H1| = p·q, gcd(p, q) = 1, odd")
    }))
}

fn sign_vectors(dim: usize) -> impl Iterator<Item = Vec<i64>> {
    (0u64..1 << dim).map(move |mask| {
        (0..dim)
            .map(|t| if mask >> t & 1 == 1 { -1 } else { 1 })
            .collect()
    })
}

/// `|{±1}^dim / ∼|` where `v ∼ w` iff `v - w` is an integer combination of
/// the given columns.
pub fn greene_jabuka_count(columns: &[Vec<i64>], dim: usize) -> u64 {
    let red = CosetReducer::new(columns);
    let classes: BTreeSet<Vec<Integer>> = sign_vectors(dim).map(|v| red.reduce(&v)).collect();
    classes.len() as u64
}

/// Primitive integer functional vanishing on `dim - 1` independent columns
/// in `Z^dim`, by signed maximal minors.
pub fn l_functional(columns: &[Vec<i64>]) -> Option<Vec<i64>> {
    let dim = columns.len() + 1;
    if columns.iter().any(|c| c.len() != dim) {
        return None;
    }
    let mut l = Vec::with_capacity(dim);
    for skip in 0..dim {
        let minor: Vec<Vec<i64>> = (0..dim)
            .filter(|&t| t != skip)
            .map(|t| columns.iter().map(|c| c[t]).collect())
            .collect();
        let d = matrix_determinant(&minor).to_i64()?;
        l.push(if skip % 2 == 0 { d } else { -d });
    }
    let g = l.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return None;
    }
    Some(l.into_iter().map(|x| x / g).collect())
}

/// Values of `l` on `{±1}^dim`.
pub fn l_image(l: &[i64]) -> BTreeSet<i64> {
    sign_vectors(l.len())
        .map(|v| v.iter().zip(l).map(|(a, b)| a * b).sum())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GjBound {
    /// Finite order forces `|H1| <= count²`.
    pub max_h1: Integer,
    pub finite_order_possible: bool,
}

/// Order `n` needs `√|H1|ⁿ` vanishing structures among at most `countⁿ`.
pub fn gj_bound(h1: &Integer, count: u64) -> GjBound {
    let max_h1 = int(count as i64) * int(count as i64);
    GjBound {
        finite_order_possible: *h1 <= max_h1,
        max_h1,
    }
}

const GJ_THEOREM: &str = "Greene-Jabuka: vanishing extendable structures are bounded by the quotient count";

/// The leg lattice of a star-shaped plumbing: everything but the center.
fn leg_lattice(g: &PlumbingGraph) -> Result<GramLattice, Error> {
    let l = GramLattice::from_plumbing(g)?;
    let c = g.center.unwrap_or(0);
    let keep: Vec<usize> = (0..l.rank).filter(|&i| i != c).collect();
    GramLattice::new(
        keep.iter()
            .map(|&i| keep.iter().map(|&j| l.matrix[i][j]).collect())
            .collect(),
    )
}

/// Greene–Jabuka bound through the leg lattice: every embedding of `n`
/// copies into `⟨-1⟩^{n·rank}` is enumerated and its sign vector quotient
/// counted, for `n = 1..=n_max`.
pub fn obstruct_greene_jabuka(
    inv: &SeifertInvariant,
    n_max: u32,
    budget: SearchBudget,
) -> Result<ObstructionReport, Error> {
    let h = inv.h1_order();
    if h.is_even() {
        return Ok(ObstructionReport::new(Id::GreeneJabuka, Verdict::Inapplicable)
            .param("h1", h)
            .param("reason", "|H1| is even"));
    }
    let (g, _) = oriented_plumbing(inv)?;
    let rank = g.len();
    let legs = leg_lattice(&g)?;
    let mut per_block = None;
    let mut rigid = true;
    for n in 1..=n_max.max(1) as usize {
        let l = legs.direct_sum(n);
        let dim = rank * n;
        let embs = match all_embeddings(&l, dim, budget.without_filter()) {
            Ok(e) => e,
            Err(Error::Inconclusive { .. }) => {
                return Ok(inconclusive(Id::GreeneJabuka, &budget).param("copies", n))
            }
            Err(e) => return Err(e),
        };
        if embs.is_empty() {
            return Ok(ObstructionReport::new(Id::GreeneJabuka, Verdict::Inapplicable)
                .param("h1", h)
                .param("copies", n)
                .param("reason", "leg lattice does not embed"));
        }
        let count = embs
            .iter()
            .map(|e| greene_jabuka_count(&e.columns, dim))
            .max()
            .expect("nonempty");
        match per_block {
            None => per_block = Some(count),
            Some(c) => rigid &= count == c.pow(n as u32),
        }
    }
    let count = per_block.expect("n_max >= 1");
    let bound = gj_bound(&h, count);
    let rep = ObstructionReport::new(Id::GreeneJabuka, Verdict::Passes)
        .param("h1", &h)
        .param("count", count)
        .param("max_h1", &bound.max_h1)
        .param("checked_copies", n_max.max(1))
        .param("block_rigid", rigid);
    Ok(if !bound.finite_order_possible && rigid {
        rep.verdict_to(Verdict::Obstructs)
            .witness(Witness::Count { count, h1: h })
            .claim(Claim::InfiniteOrder)
            .external(GJ_THEOREM)
    } else {
        rep
    })
}
