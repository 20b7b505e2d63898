//! Integer Gram lattices and their embeddings into `⟨-1⟩^n`.
//!
//! Lattice entries are machine integers: Gram matrices of plumbings and
//! embedding coordinates stay tiny, while determinants and normal forms are
//! computed over [`crate::Integer`].

mod hnf;
mod search;

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::numtheory::is_perfect_square;
use crate::seifert::{Lens, PlumbingGraph};
use crate::{Error, Integer};

pub use hnf::{hermite_rows, lattice_member, CosetReducer};
pub use search::brute_force_embeddings;
pub(crate) use hnf::determinant as matrix_determinant;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramLattice {
    pub rank: usize,
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GramLattice {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self, Error> {
        let rank = matrix.len();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::domain(format!("row {i} has {} entries, want {rank}", row.len())));
            }
            for (j, &x) in row.iter().enumerate() {
                if matrix[j][i] != x {
                    return Err(Error::domain(format!("matrix not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self {
            rank,
            matrix,
            labels: None,
        })
    }

    /// Diagonal from the weights, `1` for each edge.
    pub fn from_plumbing(g: &PlumbingGraph) -> Result<Self, Error> {
        g.check_tree()?;
        let n = g.len();
        let mut m = vec![vec![0i64; n]; n];
        for (i, w) in g.weights.iter().enumerate() {
            m[i][i] = w
                .to_i64()
                .ok_or_else(|| Error::domain(format!("weight {w} too large")))?;
        }
        for &(a, b) in &g.edges {
            m[a][b] = 1;
            m[b][a] = 1;
        }
        let mut l = Self::new(m)?;
        l.labels = Some((0..n).map(|i| format!("v{i}")).collect());
        Ok(l)
    }

    pub fn chain(weights: &[i64]) -> Self {
        let n = weights.len();
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            m[i][i] = weights[i];
            if i + 1 < n {
                m[i][i + 1] = 1;
                m[i + 1][i] = 1;
            }
        }
        Self {
            rank: n,
            matrix: m,
            labels: None,
        }
    }

    /// `Γ_{p,q}`, the chain of `-HJ(p/q)`.
    pub fn lens_chain(lens: &Lens) -> Result<Self, Error> {
        let w: Option<Vec<i64>> = lens.chain().iter().map(|x| x.to_i64()).collect();
        Ok(Self::chain(
            &w.ok_or_else(|| Error::domain("chain weight too large"))?,
        ))
    }

    /// Block sum of `k` copies.
    pub fn direct_sum(&self, k: usize) -> Self {
        let n = self.rank * k;
        let mut m = vec![vec![0i64; n]; n];
        for c in 0..k {
            for i in 0..self.rank {
                for j in 0..self.rank {
                    m[c * self.rank + i][c * self.rank + j] = self.matrix[i][j];
                }
            }
        }
        let labels = self.labels.as_ref().map(|ls| {
            (0..k)
                .flat_map(|c| ls.iter().map(move |l| format!("{l}^{}", c + 1)))
                .collect()
        });
        Self {
            rank: n,
            matrix: m,
            labels,
        }
    }

    /// Leading principal minors `det(G[..k, ..k])` for `k = 1..=rank`,
    /// by fraction-free elimination.
    pub fn leading_minors(&self) -> Vec<Integer> {
        let n = self.rank;
        let mut a: Vec<Vec<Integer>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&x| Integer::from(x)).collect())
            .collect();
        let mut minors = Vec::with_capacity(n);
        let mut prev = Integer::from(1);
        for k in 0..n {
            if a[k][k].is_zero() {
                // a zero leading minor; the remaining ones need pivoting,
                // which definiteness checks never want
                minors.push(Integer::zero());
                for _ in k + 1..n {
                    minors.push(Integer::zero());
                }
                return minors;
            }
            minors.push(a[k][k].clone());
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        minors
    }

    pub fn determinant(&self) -> Integer {
        if self.rank == 0 {
            return Integer::from(1);
        }
        let minors = self.leading_minors();
        if minors.iter().all(|m| !m.is_zero()) {
            return minors.last().cloned().expect("rank > 0");
        }
        hnf::determinant(&self.matrix)
    }

    /// Sylvester: the `k`-th leading minor has sign `(-1)^k`.
    pub fn is_negative_definite(&self) -> bool {
        self.leading_minors().iter().enumerate().all(|(k, m)| {
            if k % 2 == 0 {
                m.is_negative()
            } else {
                m.is_positive()
            }
        })
    }

    /// Sum of `|w| - 3` over the diagonal; meaningful for linear graphs.
    pub fn i_value(&self) -> i64 {
        (0..self.rank).map(|i| self.matrix[i][i].abs() - 3).sum()
    }
}

/// Sum of `|a_i| - 3` over a linear chain.
pub fn i_value(weights: &[Integer]) -> Integer {
    weights.iter().map(|w| w.abs() - 3).sum()
}

/// `n × rank` integer matrix whose column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagonalEmbedding {
    pub n: usize,
    pub columns: Vec<Vec<i64>>,
}

impl DiagonalEmbedding {
    /// Checks `-AᵀA = G` before accepting the matrix.
    pub fn new(lattice: &GramLattice, n: usize, columns: Vec<Vec<i64>>) -> Result<Self, Error> {
        let e = Self { n, columns };
        if !e.realizes(lattice) {
            return Err(Error::domain("columns do not realize the Gram matrix"));
        }
        Ok(e)
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    /// Pairings `-a_i·a_j` of the images, which must reproduce the Gram matrix.
    pub fn pairings(&self) -> Vec<Vec<i64>> {
        let r = self.columns.len();
        let mut out = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                out[i][j] = -dot(&self.columns[i], &self.columns[j]);
            }
        }
        out
    }

    pub fn realizes(&self, lattice: &GramLattice) -> bool {
        self.columns.len() == lattice.rank
            && self.columns.iter().all(|c| c.len() == self.n)
            && self.pairings() == lattice.matrix
    }

    /// Rows of the matrix, one per target coordinate.
    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|t| self.columns.iter().map(|c| c[t]).collect())
            .collect()
    }

    pub fn from_rows(rows: &[Vec<i64>], rank: usize) -> Self {
        let columns = (0..rank).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        Self {
            n: rows.len(),
            columns,
        }
    }

    /// Representative of the orbit under signed permutations of the target
    /// basis: every row made first-nonzero-positive, then rows sorted in
    /// decreasing order.
    pub fn canonical(&self) -> Self {
        let mut rows = self.rows();
        for r in rows.iter_mut() {
            if r.iter().find(|&&x| x != 0).map_or(false, |&x| x < 0) {
                r.iter_mut().for_each(|x| *x = -*x);
            }
        }
        rows.sort_by(|a, b| b.cmp(a));
        Self::from_rows(&rows, self.columns.len())
    }

    /// Number of target coordinates actually used.
    pub fn support(&self) -> usize {
        self.rows().iter().filter(|r| r.iter().any(|&x| x != 0)).count()
    }

    pub fn certificate(&self, lattice: &GramLattice) -> Certificate {
        Certificate {
            target_rank: self.n,
            matrix: self.rows(),
            gram: lattice.matrix.clone(),
            pairings: self.pairings(),
            verified: self.realizes(lattice),
        }
    }
}

impl fmt::Display for DiagonalEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.columns.iter().enumerate() {
            let terms: Vec<String> = c
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(t, &x)| match x {
                    1 => format!("+e{}", t + 1),
                    -1 => format!("-e{}", t + 1),
                    _ => format!("{x:+}e{}", t + 1),
                })
                .collect();
            let s = terms.concat();
            writeln!(f, "v{j} -> {}", s.strip_prefix('+').unwrap_or(&s))?;
        }
        Ok(())
    }
}

/// Machine-checkable record of an embedding: recompute `-AᵀA` from `matrix`
/// and compare with `gram`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub target_rank: usize,
    pub matrix: Vec<Vec<i64>>,
    pub gram: Vec<Vec<i64>>,
    pub pairings: Vec<Vec<i64>>,
    pub verified: bool,
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Node budget for the exhaustive search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub nodes: u64,
    /// Skip the square-determinant shortcut at equal rank.
    pub determinant_filter: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            nodes: 100_000_000,
            determinant_filter: true,
        }
    }
}

impl SearchBudget {
    pub fn nodes(nodes: u64) -> Self {
        Self {
            nodes,
            ..Self::default()
        }
    }

    pub fn without_filter(mut self) -> Self {
        self.determinant_filter = false;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmbeddingOutcome {
    Found(DiagonalEmbedding),
    /// Proved absent by exhaustive search (or the determinant law).
    None,
    Inconclusive { nodes: u64 },
}

impl EmbeddingOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, EmbeddingOutcome::Found(_))
    }

    pub fn is_none(&self) -> bool {
        matches!(self, EmbeddingOutcome::None)
    }
}

fn check_searchable(l: &GramLattice) -> Result<(), Error> {
    if !l.is_negative_definite() {
        return Err(Error::domain("embedding search needs a negative definite lattice"));
    }
    Ok(())
}

/// Exhaustive search for an embedding of `l` into `⟨-1⟩^n`.
pub fn find_embedding(
    l: &GramLattice,
    n: usize,
    budget: SearchBudget,
) -> Result<EmbeddingOutcome, Error> {
    check_searchable(l)?;
    if n < l.rank {
        return Ok(EmbeddingOutcome::None);
    }
    if budget.determinant_filter
        && n == l.rank
        && is_perfect_square(&l.determinant().abs()).is_none()
    {
        return Ok(EmbeddingOutcome::None);
    }
    let mut found = None;
    let res = search::Search::new(l, n, budget.nodes).run(&mut |cols| {
        found = Some(cols.to_vec());
        false
    });
    match (found, res) {
        (Some(cols), _) => Ok(EmbeddingOutcome::Found(DiagonalEmbedding::new(l, n, cols)?)),
        (None, search::Finished::Complete) => Ok(EmbeddingOutcome::None),
        (None, search::Finished::OutOfBudget(nodes)) => Ok(EmbeddingOutcome::Inconclusive { nodes }),
    }
}

/// Every embedding of `l` into `⟨-1⟩^n` up to signed permutations of the
/// target basis, as sorted canonical representatives. Source basis signs
/// are never changed.
pub fn all_embeddings(
    l: &GramLattice,
    n: usize,
    budget: SearchBudget,
) -> Result<Vec<DiagonalEmbedding>, Error> {
    check_searchable(l)?;
    if n < l.rank {
        return Ok(Vec::new());
    }
    let mut reps = std::collections::BTreeSet::new();
    let res = search::Search::new(l, n, budget.nodes).run(&mut |cols| {
        let e = DiagonalEmbedding {
            n,
            columns: cols.to_vec(),
        };
        debug_assert!(e.realizes(l));
        reps.insert(e.canonical());
        true
    });
    if let search::Finished::OutOfBudget(_) = res {
        return Err(Error::Inconclusive {
            budget: budget.nodes,
        });
    }
    Ok(reps.into_iter().collect())
}

/// Whether the chain with negative `I` embeds at equal rank, which for
/// lens spaces decides bounding a rational ball.
pub fn lens_bounds_qhb(lens: &Lens, budget: SearchBudget) -> Result<bool, Error> {
    if lens.is_s3() {
        return Ok(true);
    }
    let side = lens_small_side(lens)?;
    let l = GramLattice::lens_chain(&side)?;
    match find_embedding(&l, l.rank, budget)? {
        EmbeddingOutcome::Found(_) => Ok(true),
        EmbeddingOutcome::None => Ok(false),
        EmbeddingOutcome::Inconclusive { .. } => Err(Error::Inconclusive {
            budget: budget.nodes,
        }),
    }
}

/// The one of `L(p,q)` and `L(p,p-q)` whose chain has `I < 0`; the first when
/// both do.
pub fn lens_small_side(lens: &Lens) -> Result<Lens, Error> {
    if lens.is_s3() {
        return Ok(lens.clone());
    }
    for cand in [lens.clone(), lens.mirror()] {
        if i_value(&cand.chain()).is_negative() {
            return Ok(cand);
        }
    }
    Err(Error::domain(format!("neither chain of {lens} has I < 0")))
}
