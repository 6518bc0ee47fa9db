//! Small exact linear algebra over machine integers.
//!
//! Everything here works in checked i128 arithmetic: desk-scale inputs never
//! overflow, and anything larger fails loudly instead of wrapping.

use crate::error::{Error, Result};

fn overflow() -> Error {
    Error::precondition("integer overflow in exact linear algebra; coordinates too large")
}

pub fn checked_dot(a: &[i128], b: &[i128]) -> Result<i128> {
    debug_assert_eq!(a.len(), b.len());
    let mut acc: i128 = 0;
    for (x, y) in a.iter().zip(b) {
        let p = x.checked_mul(*y).ok_or_else(overflow)?;
        acc = acc.checked_add(p).ok_or_else(overflow)?;
    }
    Ok(acc)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(mat: &[Vec<i128>]) -> Result<i128> {
    let n = mat.len();
    if n == 0 {
        return Ok(1);
    }
    debug_assert!(mat.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<i128>> = mat.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| m[i][k] != 0);
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k]).ok_or_else(overflow)?;
                let b = m[i][k].checked_mul(m[k][j]).ok_or_else(overflow)?;
                m[i][j] = a.checked_sub(b).ok_or_else(overflow)? / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}

/// Row rank by fraction-free elimination.
pub fn rank(rows: &[Vec<i128>]) -> Result<usize> {
    if rows.is_empty() {
        return Ok(0);
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let mut r = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let pivot = (r..m.len()).find(|&i| m[i][c] != 0);
        let Some(p) = pivot else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            for j in c + 1..cols {
                let a = m[i][j].checked_mul(m[r][c]).ok_or_else(overflow)?;
                let b = m[i][c].checked_mul(m[r][j]).ok_or_else(overflow)?;
                m[i][j] = a.checked_sub(b).ok_or_else(overflow)? / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
    }
    Ok(r)
}

/// Greedily selects a maximal linearly independent subset of `rows`,
/// returning their indices.
pub fn independent_rows(rows: &[Vec<i128>]) -> Result<Vec<usize>> {
    let mut picked: Vec<Vec<i128>> = Vec::new();
    let mut idx = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        picked.push(row.clone());
        if rank(&picked)? == picked.len() {
            idx.push(i);
        } else {
            picked.pop();
        }
    }
    Ok(idx)
}

/// Normal vector to the span of `d - 1` independent rows in dimension `d`:
/// the generalized cross product via signed cofactor minors.
///
/// Returns the zero vector when the rows are dependent.
pub fn generalized_cross(rows: &[Vec<i128>], dim: usize) -> Result<Vec<i128>> {
    debug_assert_eq!(rows.len() + 1, dim);
    let mut normal = vec![0i128; dim];
    for (j, slot) in normal.iter_mut().enumerate() {
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| *v)
                    .collect()
            })
            .collect();
        let d = det(&minor)?;
        *slot = if j % 2 == 0 { d } else { -d };
    }
    Ok(normal)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Divides out the content of `normal` (gcd of the entries, applied to the
/// offset as well) and flips the sign so the first nonzero entry is positive.
/// Returns None for the zero vector.
pub fn reduce_hyperplane(normal: &mut [i128], offset: &mut i128) -> Option<()> {
    let mut g = 0i128;
    for &x in normal.iter() {
        g = gcd_i128(g, x);
    }
    if g == 0 {
        return None;
    }
    // offset is divisible by g whenever the hyperplane passes through a
    // lattice point, which is the only way we ever build one
    debug_assert_eq!(*offset % g, 0);
    for x in normal.iter_mut() {
        *x /= g;
    }
    *offset /= g;
    let lead = normal.iter().find(|&&x| x != 0).copied().unwrap_or(0);
    if lead < 0 {
        for x in normal.iter_mut() {
            *x = -*x;
        }
        *offset = -*offset;
    }
    Some(())
}
