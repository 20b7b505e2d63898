//! Backtracking over images of basis vectors.
//!
//! Images are placed one vertex at a time. Coordinates already touched by a
//! placed image are enumerated exhaustively under Cauchy–Schwarz pruning;
//! the rest of the norm goes to untouched coordinates as a non-increasing
//! run of positive entries. Coordinates whose rows agree up to sign are
//! interchangeable, so their signed values are kept non-increasing.

use super::{dot, GramLattice};

pub(super) enum Finished {
    Complete,
    OutOfBudget(u64),
}

pub(super) struct Search {
    /// `-G`, positive definite.
    m: Vec<Vec<i64>>,
    n: usize,
    order: Vec<usize>,
    budget: u64,
    nodes: u64,
    cols: Vec<Vec<i64>>,
    used: usize,
    stopped: bool,
    exhausted: bool,
}

/// Vertex order: start from the largest `|weight|`, then keep to vertices
/// adjacent to those placed, largest `|weight|` first.
fn vertex_order(m: &[Vec<i64>]) -> Vec<usize> {
    let r = m.len();
    let mut placed = vec![false; r];
    let mut order = Vec::with_capacity(r);
    for _ in 0..r {
        let adjacent = |v: usize| order.iter().any(|&u: &usize| m[v][u] != 0);
        let pick = (0..r)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (adjacent(v), m[v][v], std::cmp::Reverse(v)))
            .expect("unplaced vertex");
        placed[pick] = true;
        order.push(pick);
    }
    order
}

fn isqrt(x: i64) -> i64 {
    let mut r = (x as f64).sqrt() as i64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

struct Level {
    target: Vec<i64>,
    prev: Vec<usize>,
    /// `tail[k][t]`: squared norm of placed image `k` on coordinates `t..used`.
    tail: Vec<Vec<i64>>,
    /// Earlier coordinate in the same signed class and the relative sign.
    link: Vec<Option<(usize, i64)>>,
}

impl Search {
    pub(super) fn new(l: &GramLattice, n: usize, budget: u64) -> Self {
        let m: Vec<Vec<i64>> = l
            .matrix
            .iter()
            .map(|r| r.iter().map(|x| -x).collect())
            .collect();
        let order = vertex_order(&m);
        Self {
            cols: vec![vec![0; n]; m.len()],
            m,
            n,
            order,
            budget,
            nodes: 0,
            used: 0,
            stopped: false,
            exhausted: false,
        }
    }

    /// Calls `visit` on each embedding found; `visit` returns whether to go on.
    pub(super) fn run(mut self, visit: &mut dyn FnMut(&[Vec<i64>]) -> bool) -> Finished {
        self.place(0, visit);
        if self.exhausted {
            Finished::OutOfBudget(self.nodes)
        } else {
            Finished::Complete
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            self.stopped = true;
        }
        !self.stopped
    }

    fn place(&mut self, depth: usize, visit: &mut dyn FnMut(&[Vec<i64>]) -> bool) {
        if self.stopped {
            return;
        }
        if depth == self.order.len() {
            if !visit(&self.cols) {
                self.stopped = true;
            }
            return;
        }
        let v = self.order[depth];
        let prev: Vec<usize> = self.order[..depth].to_vec();
        let used = self.used;
        let target: Vec<i64> = prev.iter().map(|&u| self.m[v][u]).collect();
        let tail = prev
            .iter()
            .map(|&u| {
                let mut t = vec![0i64; used + 1];
                for s in (0..used).rev() {
                    t[s] = t[s + 1] + self.cols[u][s] * self.cols[u][s];
                }
                t
            })
            .collect();
        let rows: Vec<Vec<i64>> = (0..used)
            .map(|t| prev.iter().map(|&u| self.cols[u][t]).collect())
            .collect();
        let mut link = vec![None; used];
        for t in 0..used {
            for s in (0..t).rev() {
                if rows[s] == rows[t] {
                    link[t] = Some((s, 1));
                    break;
                }
                if rows[s].iter().zip(&rows[t]).all(|(a, b)| *a == -*b) {
                    link[t] = Some((s, -1));
                    break;
                }
            }
        }
        let level = Level {
            target,
            prev,
            tail,
            link,
        };
        let norm = self.m[v][v];
        let mut x = vec![0i64; self.n];
        let mut partial = vec![0i64; level.prev.len()];
        self.used_coords(depth, v, &level, 0, norm, &mut x, &mut partial, visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn used_coords(
        &mut self,
        depth: usize,
        v: usize,
        level: &Level,
        t: usize,
        rem: i64,
        x: &mut Vec<i64>,
        partial: &mut Vec<i64>,
        visit: &mut dyn FnMut(&[Vec<i64>]) -> bool,
    ) {
        if self.stopped {
            return;
        }
        if t == self.used {
            if partial != &level.target {
                return;
            }
            let free = self.n - self.used;
            let mut parts = Vec::new();
            self.fresh(depth, v, rem, rem, free, &mut parts, x, visit);
            return;
        }
        let bound = isqrt(rem);
        let mut val = bound;
        while val >= -bound {
            let xv = val;
            val -= 1;
            if let Some((s, sign)) = level.link[t] {
                // signed value may not exceed that of the earlier class member
                if sign * xv > x[s] {
                    continue;
                }
            }
            let r2 = rem - xv * xv;
            let mut ok = true;
            for (k, &u) in level.prev.iter().enumerate() {
                let d = partial[k] + xv * self.cols[u][t];
                let gap = level.target[k] - d;
                let room = level.tail[k][t + 1];
                if gap * gap > r2 * room {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            if !self.tick() {
                return;
            }
            for (k, &u) in level.prev.iter().enumerate() {
                partial[k] += xv * self.cols[u][t];
            }
            x[t] = xv;
            self.used_coords(depth, v, level, t + 1, r2, x, partial, visit);
            x[t] = 0;
            for (k, &u) in level.prev.iter().enumerate() {
                partial[k] -= xv * self.cols[u][t];
            }
            if self.stopped {
                return;
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn fresh(
        &mut self,
        depth: usize,
        v: usize,
        rem: i64,
        cap: i64,
        free: usize,
        parts: &mut Vec<i64>,
        x: &mut Vec<i64>,
        visit: &mut dyn FnMut(&[Vec<i64>]) -> bool,
    ) {
        if self.stopped {
            return;
        }
        if rem == 0 {
            if !self.tick() {
                return;
            }
            let start = self.used;
            for (j, &a) in parts.iter().enumerate() {
                x[start + j] = a;
            }
            self.cols[v] = x.clone();
            debug_assert!(self.order[..depth]
                .iter()
                .all(|&u| dot(&self.cols[u], &self.cols[v]) == self.m[v][u]));
            self.used = start + parts.len();
            self.place(depth + 1, visit);
            self.used = start;
            self.cols[v] = vec![0; self.n];
            for j in 0..parts.len() {
                x[start + j] = 0;
            }
            return;
        }
        if free == 0 {
            return;
        }
        let mut a = isqrt(rem).min(cap);
        while a >= 1 {
            parts.push(a);
            self.fresh(depth, v, rem - a * a, a, free - 1, parts, x, visit);
            parts.pop();
            if self.stopped {
                return;
            }
            a -= 1;
        }
    }
}

/// Every embedding of a tiny lattice into `⟨-1⟩^n` by plain enumeration of
/// all vectors of the right norms; an independent check on the search.
pub fn brute_force_embeddings(l: &GramLattice, n: usize) -> Vec<Vec<Vec<i64>>> {
    let r = l.rank;
    let mut by_norm: std::collections::BTreeMap<i64, Vec<Vec<i64>>> = Default::default();
    for i in 0..r {
        let norm = -l.matrix[i][i];
        by_norm.entry(norm).or_insert_with(|| vectors_of_norm(norm, n));
    }
    let mut out = Vec::new();
    let mut cols: Vec<Vec<i64>> = Vec::new();
    fn go(
        l: &GramLattice,
        by_norm: &std::collections::BTreeMap<i64, Vec<Vec<i64>>>,
        cols: &mut Vec<Vec<i64>>,
        out: &mut Vec<Vec<Vec<i64>>>,
    ) {
        let j = cols.len();
        if j == l.rank {
            out.push(cols.clone());
            return;
        }
        for cand in &by_norm[&(-l.matrix[j][j])] {
            if (0..j).all(|k| dot(&cols[k], cand) == -l.matrix[j][k]) {
                cols.push(cand.clone());
                go(l, by_norm, cols, out);
                cols.pop();
            }
        }
    }
    go(l, &by_norm, &mut cols, &mut out);
    out
}

fn vectors_of_norm(norm: i64, n: usize) -> Vec<Vec<i64>> {
    let b = isqrt(norm);
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn go(t: usize, rem: i64, b: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if t == cur.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in -b..=b {
            if v * v <= rem {
                cur[t] = v;
                go(t + 1, rem - v * v, b, cur, out);
            }
        }
        cur[t] = 0;
    }
    go(0, norm, b, &mut cur, &mut out);
    out
}
