//! Order classification.

use serde::{Deserialize, Serialize};

use super::checks::*;
use super::{sort_reports, Caps, Claim, ObstructionId, ObstructionReport, OrderVerdict, Verdict, Witness};
use crate::lattice::{find_embedding, lens_small_side, EmbeddingOutcome, GramLattice};
use crate::numtheory::is_perfect_square;
use crate::seifert::{Family, Lens, SphericalName};
use crate::surgery::surgery_of_spherical;
use crate::{int, Error};

use ObstructionId as Id;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub manifold: String,
    pub seifert: String,
    pub verdict: OrderVerdict,
    /// Reports sorted by id; the decisive ones are flagged.
    pub reports: Vec<ObstructionReport>,
}

impl Classification {
    /// Provenance of the verdict, e.g. `spin_d_mubar`.
    pub fn proved_in(&self) -> String {
        let tags: Vec<String> = self
            .reports
            .iter()
            .filter(|r| r.decisive)
            .map(|r| match (&r.id, &r.external) {
                (Id::LiscaLens, _) => r.id.to_string(),
                (_, Some(e)) if e.starts_with("external:") => e.clone(),
                _ => r.provenance(),
            })
            .collect();
        let mut out: Vec<String> = Vec::new();
        for t in tags {
            if !out.contains(&t) {
                out.push(t);
            }
        }
        if out.is_empty() {
            "-".into()
        } else {
            out.join("+")
        }
    }

    pub fn is_inconclusive(&self) -> bool {
        self.verdict == OrderVerdict::Unknown
            && self.reports.iter().any(|r| r.verdict == Verdict::Inconclusive)
    }
}

const LISCA_BALL: &str = "Lisca: L(p,q) bounds a rational ball iff the I < 0 chain embeds at equal rank";
const LISCA_SUMS: &str = "Lisca: a lens space whose I < 0 chain embeds twice at double rank has order at most 2";
const LISCA_ORDERS: &str = "Lisca: lens space orders are 1, 2 or infinite";
const RIBBON: &str = "external: ribbon band";
const DONALDSON_ALL_N: &str =
    "n copies of the canonical lattice never embed at equal rank, for every n (octahedral k = 1, 5, 7)";

/// Order of a lens space by the Lisca embedding criteria on the `I < 0`
/// chain: equal rank decides order 1, double rank order 2.
pub fn lens_order(lens: &Lens, caps: &Caps) -> Result<(OrderVerdict, Vec<ObstructionReport>), Error> {
    if lens.is_s3() {
        let r = ObstructionReport::new(Id::LiscaLens, Verdict::Passes)
            .param("lens", lens)
            .param("copies", 1)
            .claim(Claim::OrderAtMost(1))
            .witness(Witness::External { note: "S^3".into() });
        return Ok((OrderVerdict::One, vec![decisive(r)]));
    }
    let side = lens_small_side(lens)?;
    let l = GramLattice::lens_chain(&side)?;
    let base = |v, n: usize| {
        ObstructionReport::new(Id::LiscaLens, v)
            .param("lens", lens)
            .param("chain_of", &side)
            .param("i_value", l.i_value())
            .param("copies", n)
    };
    let mut reports = Vec::new();
    for n in 1..=caps.n_max.clamp(1, 2) as usize {
        let sum = l.direct_sum(n);
        match find_embedding(&sum, sum.rank, caps.budget)? {
            EmbeddingOutcome::Found(e) => {
                let (claim, ext, verdict) = if n == 1 {
                    (Claim::OrderAtMost(1), LISCA_BALL, OrderVerdict::One)
                } else {
                    (Claim::OrderAtMost(2), LISCA_SUMS, OrderVerdict::Two)
                };
                reports.push(decisive(
                    base(Verdict::Passes, n)
                        .claim(claim)
                        .external(ext)
                        .witness(Witness::Embedding(e.certificate(&sum))),
                ));
                if n == 2 {
                    if let Some(first) = reports.first_mut() {
                        first.decisive = true;
                    }
                }
                return Ok((verdict, reports));
            }
            EmbeddingOutcome::None => {
                let (claim, ext) = if n == 1 {
                    (Claim::OrderAbove(1), LISCA_BALL)
                } else {
                    (Claim::InfiniteOrder, LISCA_ORDERS)
                };
                reports.push(
                    base(Verdict::Obstructs, n)
                        .claim(claim)
                        .external(ext)
                        .witness(Witness::NoEmbedding {
                            lattice_rank: l.rank,
                            target_rank: sum.rank,
                            copies: n,
                        }),
                );
            }
            EmbeddingOutcome::Inconclusive { .. } => {
                reports.push(
                    ObstructionReport::new(Id::LiscaLens, Verdict::Inconclusive)
                        .param("lens", lens)
                        .param("copies", n)
                        .param("budget", caps.budget.nodes),
                );
                return Ok((OrderVerdict::Unknown, reports));
            }
        }
    }
    for r in reports.iter_mut() {
        r.decisive = true;
    }
    let verdict = if caps.n_max >= 2 {
        OrderVerdict::Infinite
    } else {
        OrderVerdict::ExcludedUpTo(1)
    };
    Ok((verdict, reports))
}

fn decisive(mut r: ObstructionReport) -> ObstructionReport {
    r.decisive = true;
    r
}

/// Classifies the order of a catalog manifold, attaching every report that
/// was computed.
pub fn classify_order(name: &SphericalName, caps: &Caps) -> Result<Classification, Error> {
    let mut base = name.clone();
    base.mirror = false;
    let inv = base.seifert()?;
    let done = |verdict, mut reports: Vec<ObstructionReport>| {
        sort_reports(&mut reports);
        Ok(Classification {
            manifold: name.to_string(),
            seifert: name.seifert().map(|s| s.to_string()).unwrap_or_default(),
            verdict,
            reports,
        })
    };

    if base.family == Family::C {
        let lens = Lens::new(base.first.clone(), base.second.clone())?;
        let (v, reports) = lens_order(&lens, caps)?;
        return done(v, reports);
    }

    if let Some(target) = inv.complementary_reduction()? {
        let red = decisive(
            ObstructionReport::new(Id::ComplementaryReduction, Verdict::Passes)
                .param("seifert", &inv)
                .witness(Witness::Reduction {
                    target: target.to_string(),
                }),
        );
        let (v, mut reports) = lens_order(&target.lens, caps)?;
        reports.push(red);
        let v = if base.family == Family::D {
            OrderVerdict::SameAs {
                target: target.lens.to_string(),
                order: Box::new(v),
            }
        } else {
            v
        };
        return done(v, reports);
    }

    let desc = surgery_of_spherical(&base)?;
    let square = is_perfect_square(&inv.h1_order()).is_some();

    let ((square_rep, integral), (spin, (dsum, maxmin))) = rayon::join(
        || {
            (
                obstruct_square_h1(&inv),
                if square { Some(obstruct_integral_d(&desc)) } else { None },
            )
        },
        || {
            (
                obstruct_spin_d(&inv, Some(&desc)),
                rayon::join(|| obstruct_d_sum(&desc), || obstruct_max_min(&desc)),
            )
        },
    );
    let spin = spin?;
    let mut order_level: Vec<ObstructionReport> = vec![spin];
    let settled = |v: &[ObstructionReport]| v.iter().any(|r| r.claim == Some(Claim::InfiniteOrder));

    let octa_all_n = base.family == Family::O && matches!(base.k(), Some(1 | 5 | 7));
    if !settled(&order_level) {
        let l = GramLattice::from_plumbing(&inv.canonical_plumbing()?)?;
        let theorem = octa_all_n.then_some(DONALDSON_ALL_N);
        order_level.push(obstruct_donaldson_order(&l, "plumbing", caps.n_max, caps.budget, theorem)?);
    }
    if !settled(&order_level) {
        order_level.push(obstruct_donaldson_chain(&desc, caps.n_max, caps.budget)?);
    }
    if !settled(&order_level) {
        order_level.push(obstruct_greene_jabuka(&inv, caps.n_max, caps.budget)?);
    }
    order_level.push(dsum?);
    order_level.push(maxmin?);

    let mut qhb = vec![square_rep];
    if square {
        qhb.push(obstruct_donaldson_embed(&inv, caps.budget)?);
    }
    if let Some(r) = integral {
        qhb.push(r?);
    }

    let is_i49 = base.family == Family::I && base.k() == Some(19) && base.first == int(3);
    if is_i49 {
        if let Some(bad) = order_level.iter().chain(&qhb).find(|r| r.obstructs()) {
            return Err(Error::domain(format!(
                "{name}: {} obstructs a manifold known to bound",
                bad.id
            )));
        }
        for r in qhb.iter_mut().filter(|r| r.id == Id::IntegralD) {
            r.decisive = true;
            r.claim = Some(Claim::OrderAtMost(1));
            r.external = Some(RIBBON.into());
        }
        return done(OrderVerdict::One, qhb.into_iter().chain(order_level).collect());
    }

    let infinite = order_level
        .iter()
        .position(|r| r.claim == Some(Claim::InfiniteOrder));
    let excluded = order_level
        .iter()
        .enumerate()
        .filter_map(|(i, r)| match r.claim {
            Some(Claim::OrderAbove(n)) => Some((n, i)),
            _ => None,
        })
        .max_by_key(|&(n, i)| (n, std::cmp::Reverse(i)));
    let verdict = match (infinite, excluded) {
        (Some(i), _) => {
            order_level[i].decisive = true;
            OrderVerdict::Infinite
        }
        (None, Some((n, i))) => {
            order_level[i].decisive = true;
            OrderVerdict::ExcludedUpTo(n)
        }
        (None, None) => OrderVerdict::Unknown,
    };
    let reports = qhb.into_iter().chain(order_level).collect();
    done(verdict, reports)
}
