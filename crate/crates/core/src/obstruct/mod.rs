//! Obstructions to bounding rational homology balls and to finite order,
//! and the classification that combines them.

mod checks;
mod classify;
mod table;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lattice::{Certificate, SearchBudget};
use crate::{Integer, Rational};

pub use checks::{
    d_spin_plumbing, greene_jabuka_count, gj_bound, l_functional, l_image, mu_bar,
    obstruct_d_sum, obstruct_donaldson_chain, obstruct_donaldson_embed, obstruct_donaldson_order,
    obstruct_greene_jabuka, obstruct_integral_d, obstruct_max_min, obstruct_max_min_at,
    obstruct_spin_d, obstruct_square_h1, wu_surface, GjBound,
};
pub use classify::{classify_order, lens_order, Classification};
pub use table::{table_rows, TableRow};

/// Identifiers, declared in pipeline order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionId {
    ComplementaryReduction,
    LiscaLens,
    SquareH1,
    DonaldsonEmbed,
    IntegralD,
    SpinDMubar,
    DonaldsonOrder,
    GreeneJabuka,
    DSum,
    MaxMin,
}

impl ObstructionId {
    pub fn as_str(self) -> &'static str {
        match self {
            ObstructionId::ComplementaryReduction => "complementary_reduction",
            ObstructionId::LiscaLens => "lisca_lens",
            ObstructionId::SquareH1 => "square_h1",
            ObstructionId::DonaldsonEmbed => "donaldson_embed",
            ObstructionId::IntegralD => "integral_d",
            ObstructionId::SpinDMubar => "spin_d_mubar",
            ObstructionId::DonaldsonOrder => "donaldson_order",
            ObstructionId::GreeneJabuka => "greene_jabuka",
            ObstructionId::DSum => "d_sum",
            ObstructionId::MaxMin => "max_min",
        }
    }
}

impl fmt::Display for ObstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Obstructs,
    Passes,
    Inapplicable,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Obstructs => "obstructs",
            Verdict::Passes => "passes",
            Verdict::Inapplicable => "inapplicable",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// What a report establishes about the manifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// Does not bound a rational homology ball.
    NoRationalBall,
    /// No multiple up to `n` copies bounds.
    OrderAbove(u32),
    InfiniteOrder,
    /// Some multiple of at most `n` copies bounds.
    OrderAtMost(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    /// A correction term, at a label when one applies.
    D { label: Option<Integer>, value: Rational },
    DList { labels: Vec<Integer>, values: Vec<Rational> },
    Sum { value: Rational },
    H1 { order: Integer },
    Embedding(Certificate),
    /// Exhaustive search found nothing.
    NoEmbedding { lattice_rank: usize, target_rank: usize, copies: usize },
    Reduction { target: String },
    Count { count: u64, h1: Integer },
    External { note: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub id: ObstructionId,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub params: BTreeMap<String, String>,
    pub claim: Option<Claim>,
    /// Theorem the claim rests on beyond what is computed here.
    pub external: Option<String>,
    pub decisive: bool,
}

impl ObstructionReport {
    pub(crate) fn new(id: ObstructionId, verdict: Verdict) -> Self {
        Self {
            id,
            verdict,
            witness: None,
            params: BTreeMap::new(),
            claim: None,
            external: None,
            decisive: false,
        }
    }

    pub(crate) fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub(crate) fn witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub(crate) fn claim(mut self, c: Claim) -> Self {
        self.claim = Some(c);
        self
    }

    pub(crate) fn external(mut self, note: &str) -> Self {
        self.external = Some(note.to_string());
        self
    }

    pub fn obstructs(&self) -> bool {
        self.verdict == Verdict::Obstructs
    }

    /// Short tag for "proved in" columns, e.g. `donaldson_order:surgery`.
    pub fn provenance(&self) -> String {
        match self.params.get("source") {
            Some(s) => format!("{}:{s}", self.id),
            None => self.id.to_string(),
        }
    }

    fn sort_key(&self) -> (ObstructionId, Vec<(String, String)>) {
        (
            self.id,
            self.params
                .iter()
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        )
    }
}

/// Deterministic order for merged reports.
pub(crate) fn sort_reports(reports: &mut [ObstructionReport]) {
    reports.sort_by_key(|r| r.sort_key());
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderVerdict {
    One,
    Two,
    Infinite,
    /// Same order as the lens space the manifold reduces to.
    SameAs { target: String, order: Box<OrderVerdict> },
    /// No multiple up to this many copies bounds.
    ExcludedUpTo(u32),
    Unknown,
}

impl OrderVerdict {
    /// The order itself, looking through reductions.
    pub fn resolved(&self) -> &OrderVerdict {
        match self {
            OrderVerdict::SameAs { order, .. } => order.resolved(),
            v => v,
        }
    }
}

impl fmt::Display for OrderVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderVerdict::One => write!(f, "1"),
            OrderVerdict::Two => write!(f, "2"),
            OrderVerdict::Infinite => write!(f, "inf"),
            OrderVerdict::SameAs { target, order } => write!(f, "same as {target} = {order}"),
            OrderVerdict::ExcludedUpTo(n) => write!(f, "> {n}"),
            OrderVerdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// Limits for classification: copies tried in the order searches, and the
/// node budget of each search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub n_max: u32,
    pub budget: SearchBudget,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            n_max: 2,
            budget: SearchBudget::default(),
        }
    }
}
