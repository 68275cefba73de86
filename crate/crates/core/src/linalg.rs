//! Small exact linear algebra over rationals.
//!
//! Everything here is dense Gaussian elimination at fixed tiny sizes
//! (matrices up to 6x6); there is no pivot-growth concern because the
//! arithmetic is exact.

use num_traits::Zero;

use crate::error::Error;
use crate::rat::Rat;

pub fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rat], s: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * s).collect()
}

pub fn neg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -x).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).fold(Rat::zero(), |s, t| s + t)
}

/// Matrix-vector product.
pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Matrix-matrix product.
pub fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Rat::zero(); cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                let t = &a[i][k] * &b[k][j];
                out[i][j] = &out[i][j] + &t;
            }
        }
    }
    out
}

pub fn transpose(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if m.is_empty() {
        return Vec::new();
    }
    let rows = m.len();
    let cols = m[0].len();
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect()
}

pub fn identity(n: usize) -> Vec<Vec<Rat>> {
    let mut m = vec![vec![Rat::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rat::from_integer(1.into());
    }
    m
}

/// Exact determinant by fraction-free-enough plain elimination.
pub fn det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut result = Rat::from_integer(1.into());
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !a[r][col].is_zero()) {
            Some(p) => p,
            None => return Rat::zero(),
        };
        if pivot != col {
            a.swap(pivot, col);
            result = -result;
        }
        let p = a[col][col].clone();
        result *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            for c in col..n {
                let t = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    result
}

/// Solves `m x = rhs` exactly. Errors on a singular system.
pub fn solve(m: &[Vec<Rat>], rhs: &[Rat]) -> Result<Vec<Rat>, Error> {
    let n = m.len();
    debug_assert_eq!(rhs.len(), n);
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        a.swap(pivot, col);
        let p = a[col][col].clone();
        for c in col..=n {
            a[col][c] = &a[col][c] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=n {
                let t = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    Ok(a.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Exact inverse. Errors on a singular matrix.
pub fn invert(m: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>, Error> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::from_integer(1.into());
        cols.push(solve(m, &e)?);
    }
    // cols[j] is the j-th column of the inverse.
    Ok((0..n)
        .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
        .collect())
}

/// Rank of the affine span of `points` (dimension of the flat they span).
pub fn affine_rank(points: &[Vec<Rat>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let vectors: Vec<Vec<Rat>> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    rank(&vectors)
}

/// Row rank by elimination.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = a[0].len();
    let mut r = 0;
    for col in 0..ncols {
        let pivot = match (r..a.len()).find(|&i| !a[i][col].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        a.swap(pivot, r);
        let p = a[r][col].clone();
        for i in r + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let factor = &a[i][col] / &p;
            for c in col..ncols {
                let t = &factor * &a[r][c];
                a[i][c] = &a[i][c] - &t;
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Vector orthogonal (in the Euclidean sense) to the `n-1` given vectors
/// in R^n: the generalized cross product, computed from cofactors of the
/// matrix whose rows are the inputs. Zero vector when they are dependent.
pub fn generalized_cross(vectors: &[Vec<Rat>]) -> Vec<Rat> {
    let n = vectors.len() + 1;
    debug_assert!(vectors.iter().all(|v| v.len() == n));
    let mut normal = Vec::with_capacity(n);
    for j in 0..n {
        let minor: Vec<Vec<Rat>> = vectors
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let mut cof = det(&minor);
        if j % 2 == 1 {
            cof = -cof;
        }
        normal.push(cof);
    }
    normal
}

/// All k-element index subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
