//! Dense exact linear algebra over ℚ.

use num_traits::{One, Zero};

use crate::poly::Q;

pub type QMat = Vec<Vec<Q>>;

/// Serde adapter writing a `QMat` as rows of `"p/q"` strings.
pub mod qmat_serde {
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    use super::QMat;
    use crate::poly::{q_parse, q_to_string};

    pub fn serialize<S: Serializer>(m: &QMat, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(q_to_string).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<QMat, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        rows.into_iter()
            .map(|r| {
                r.iter()
                    .map(|v| q_parse(v).ok_or_else(|| D::Error::custom(format!("bad rational `{v}`"))))
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Unique(Vec<Q>),
    Underdetermined,
    Inconsistent,
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(a: &mut QMat, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][c].recip();
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        for i in 0..a.len() {
            if i != row && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..a[i].len() {
                    if !a[row][j].is_zero() {
                        let d = &f * &a[row][j];
                        a[i][j] -= d;
                    }
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    pivots
}

pub fn rank(a: &QMat, cols: usize) -> usize {
    rref(&mut a.clone(), cols).len()
}

/// Solves `a·x = b` for `cols` unknowns.
pub fn solve(a: &QMat, b: &[Q], cols: usize) -> Solution {
    let mut aug: QMat = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return Solution::Inconsistent;
    }
    if pivots.len() < cols {
        return Solution::Underdetermined;
    }
    Solution::Unique(aug[..cols].iter().map(|r| r[cols].clone()).collect())
}

/// Basis of `{x : a·x = 0}`.
pub fn nullspace(a: &QMat, cols: usize) -> Vec<Vec<Q>> {
    let mut m = a.clone();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

pub fn inverse(a: &QMat) -> Option<QMat> {
    let n = a.len();
    let mut aug: QMat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn matmul(a: &QMat, b: &QMat) -> QMat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Q::zero(), |acc, t| acc + &row[t] * &b[t][j]))
                .collect()
        })
        .collect()
}

/// Appends standard basis rows until the rows span `cols` dimensions;
/// returns the indices of the appended unit vectors.
pub fn complete_rows(a: &QMat, cols: usize) -> Option<Vec<usize>> {
    let mut cur = a.clone();
    if rank(&cur, cols) < cur.len() {
        return None;
    }
    let mut added = Vec::new();
    for j in 0..cols {
        if cur.len() == cols {
            break;
        }
        let mut e = vec![Q::zero(); cols];
        e[j] = Q::one();
        cur.push(e);
        if rank(&cur, cols) == cur.len() {
            added.push(j);
        } else {
            cur.pop();
        }
    }
    (cur.len() == cols).then_some(added)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn m(rows: &[&[i64]]) -> QMat {
        rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(solve(&a, &[q(3), q(2)], 2), Solution::Unique(vec![q(1), q(1)]));
        let inv = inverse(&a).unwrap();
        assert_eq!(matmul(&a, &inv), m(&[&[1, 0], &[0, 1]]));
        let s = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&s, &[q(1), q(3)], 2), Solution::Inconsistent);
        assert_eq!(solve(&s, &[q(1), q(2)], 2), Solution::Underdetermined);
    }

    #[test]
    fn nullspace_basis() {
        let a = m(&[&[1, 1, 0]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!(matmul(&a, &v.iter().map(|x| vec![x.clone()]).collect()), m(&[&[0]]));
        }
    }

    #[test]
    fn completion() {
        let a = m(&[&[0, 1, 1]]);
        let added = complete_rows(&a, 3).unwrap();
        assert_eq!(added.len(), 2);
        assert!(complete_rows(&m(&[&[1, 1], &[2, 2]]), 2).is_none());
    }
}
