//! Proximity graphs under the Q-distance: minimum spanning tree,
//! relative neighborhood graph, and Gabriel graph.
//!
//! Every pairwise comparison reduces to an exact comparison of squared
//! lengths (the square root is monotone), so the greedy tree is exact.
//! Only the exhaustive oracle compares sums of square roots of distinct
//! values; there we use rational interval arithmetic with refinement and
//! escalate unresolved ties to an error.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::qball::{Containment, QBall};
use crate::qform::{require_spacelike, PointSet, QuadraticForm};
use crate::rat::{rat, sqrt_interval, Rat};

/// Undirected graph on a point set with exact squared edge lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub points: PointSet,
    /// Sorted index pairs, lexicographic order.
    pub edges: Vec<(usize, usize)>,
    /// `Q(x - y)` per edge, parallel to `edges`.
    pub sq_lengths: Vec<Rat>,
}

impl Graph {
    fn from_edge_set(
        q: &QuadraticForm,
        xs: &PointSet,
        edges: BTreeSet<(usize, usize)>,
    ) -> Result<Self, Error> {
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        let mut sq_lengths = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            sq_lengths.push(q.evaluate(&crate::linalg::sub(xs.coords(a), xs.coords(b)))?);
        }
        Ok(Graph { points: xs.clone(), edges, sq_lengths })
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).is_ok()
    }

    /// True when every edge of `self` is an edge of `other`.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.edges.iter().all(|&(a, b)| other.has_edge(a, b))
    }
}

/// Q-minimum spanning tree by a greedy pass over edges sorted by exact
/// squared length, lexicographic tie-break on the index pair.
pub fn mst(q: &QuadraticForm, xs: &PointSet) -> Result<Graph, Error> {
    require_spacelike(q, xs)?;
    let mut pairs = Vec::new();
    for a in 0..xs.len() {
        for b in a + 1..xs.len() {
            let d = q.evaluate(&crate::linalg::sub(xs.coords(a), xs.coords(b)))?;
            pairs.push(((a, b), d));
        }
    }
    pairs.sort_by(|(ea, da), (eb, db)| da.cmp(db).then(ea.cmp(eb)));
    let mut parent: Vec<usize> = (0..xs.len()).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut edges = BTreeSet::new();
    for ((a, b), _) in pairs {
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        if ra != rb {
            parent[ra] = rb;
            edges.insert((a, b));
        }
    }
    Graph::from_edge_set(q, xs, edges)
}

/// Relative neighborhood graph: edge `(x, y)` iff
/// `Q(x-y) < max(Q(z-x), Q(z-y))` for every other `z`.
pub fn rng(q: &QuadraticForm, xs: &PointSet) -> Result<Graph, Error> {
    require_spacelike(q, xs)?;
    let mut edges = BTreeSet::new();
    for a in 0..xs.len() {
        for b in a + 1..xs.len() {
            let dab = q.evaluate(&crate::linalg::sub(xs.coords(a), xs.coords(b)))?;
            let blocked = (0..xs.len()).filter(|&z| z != a && z != b).any(|z| {
                let dza = q.evaluate(&crate::linalg::sub(xs.coords(z), xs.coords(a))).unwrap();
                let dzb = q.evaluate(&crate::linalg::sub(xs.coords(z), xs.coords(b))).unwrap();
                dab >= dza.max(dzb)
            });
            if !blocked {
                edges.insert((a, b));
            }
        }
    }
    Graph::from_edge_set(q, xs, edges)
}

/// Gabriel graph for non-degenerate `Q`: edge `(x, y)` iff the open ball
/// whose diameter is the segment `[x, y]` is empty of other points.
pub fn gabriel(q: &QuadraticForm, xs: &PointSet) -> Result<Graph, Error> {
    if q.is_degenerate() {
        return Err(Error::DegenerateForm { op: "gabriel" });
    }
    require_spacelike(q, xs)?;
    let half = Rat::new(1.into(), 2.into());
    let quarter = Rat::new(1.into(), 4.into());
    let mut edges = BTreeSet::new();
    for a in 0..xs.len() {
        for b in a + 1..xs.len() {
            let center: Vec<Rat> = xs
                .coords(a)
                .iter()
                .zip(xs.coords(b))
                .map(|(u, v)| (u + v) * &half)
                .collect();
            let radius_sq =
                q.evaluate(&crate::linalg::sub(xs.coords(a), xs.coords(b)))? * &quarter;
            let ball = QBall::from_center_form(
                q.clone(),
                &crate::qball::CenterForm { center, radius_sq },
            )?;
            let blocked = (0..xs.len())
                .filter(|&z| z != a && z != b)
                .any(|z| ball.contains(xs.coords(z)).unwrap() == Containment::Inside);
            if !blocked {
                edges.insert((a, b));
            }
        }
    }
    Graph::from_edge_set(q, xs, edges)
}

/// Exhaustive minimum-spanning-tree oracle: enumerates all spanning
/// trees via Pruefer sequences and compares total lengths with interval
/// arithmetic, refining until the comparison resolves. Ties narrower
/// than 10^-30 escalate to an error. Returns the edge sets of all trees
/// tied for minimum total length.
pub fn mst_oracle(q: &QuadraticForm, xs: &PointSet) -> Result<Vec<Vec<(usize, usize)>>, Error> {
    const ORACLE_CAP: usize = 7;
    let n = xs.len();
    if n > ORACLE_CAP {
        return Err(Error::CapExceeded { cap: ORACLE_CAP, got: n });
    }
    require_spacelike(q, xs)?;
    if n == 1 {
        return Ok(vec![vec![]]);
    }
    let sq = |a: usize, b: usize| -> Rat {
        q.evaluate(&crate::linalg::sub(xs.coords(a), xs.coords(b))).unwrap()
    };
    let trees = all_spanning_trees(n);
    let totals: Vec<Vec<Rat>> = trees
        .iter()
        .map(|t| t.iter().map(|&(a, b)| sq(a, b)).collect())
        .collect();
    let mut best: Vec<usize> = vec![0];
    for i in 1..trees.len() {
        match cmp_sqrt_sums(&totals[i], &totals[best[0]])? {
            std::cmp::Ordering::Less => best = vec![i],
            std::cmp::Ordering::Equal => best.push(i),
            std::cmp::Ordering::Greater => {}
        }
    }
    Ok(best.into_iter().map(|i| trees[i].clone()).collect())
}

/// Compares two sums of square roots. Identical multisets are equal
/// without refinement; otherwise interval widths are refined down to
/// 10^-40 and a still-unresolved comparison errs on the side of honesty.
fn cmp_sqrt_sums(a: &[Rat], b: &[Rat]) -> Result<std::cmp::Ordering, Error> {
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort();
    sb.sort();
    if sa == sb {
        return Ok(std::cmp::Ordering::Equal);
    }
    for digits in [20u32, 30, 40] {
        let sum = |vals: &[Rat]| -> (Rat, Rat) {
            let mut lo = rat(0);
            let mut hi = rat(0);
            for v in vals {
                let (l, h) = sqrt_interval(v, digits);
                lo += l;
                hi += h;
            }
            (lo, hi)
        };
        let (alo, ahi) = sum(a);
        let (blo, bhi) = sum(b);
        if ahi < blo {
            return Ok(std::cmp::Ordering::Less);
        }
        if bhi < alo {
            return Ok(std::cmp::Ordering::Greater);
        }
    }
    Err(Error::UnresolvedTie)
}

/// All spanning trees of the complete graph on `n` labeled vertices,
/// decoded from Pruefer sequences; each tree is a sorted edge list.
fn all_spanning_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    let mut out = Vec::new();
    loop {
        out.push(prufer_decode(&seq, n));
        let mut i = 0;
        loop {
            if i == len {
                return out;
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = 0usize;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &s in seq {
        edges.push((leaf.min(s), leaf.max(s)));
        degree[s] -= 1;
        if degree[s] == 1 && s < ptr {
            leaf = s;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    // The remaining two vertices of degree one; `leaf` is one of them.
    let other = (0..n).rev().find(|&i| degree[i] == 1 && i != leaf).unwrap();
    edges.push((leaf.min(other), leaf.max(other)));
    edges.sort_unstable();
    edges
}
