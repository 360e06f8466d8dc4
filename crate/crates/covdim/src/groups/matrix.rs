//! Square matrices over F_p as group elements. Equality is exact entrywise
//! equality; the prime travels with the matrix.

use crate::polymap::fp;
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Mat {
    pub p: u64,
    pub n: usize,
    /// Row-major entries, reduced mod p.
    pub entries: Vec<u64>,
}

impl Mat {
    pub fn new(p: u64, n: usize, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), n * n);
        let entries = entries.into_iter().map(|x| x % p).collect();
        Mat { p, n, entries }
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n);
            entries.extend(row.iter().map(|&x| x % p));
        }
        Mat { p, n, entries }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1 % p;
        }
        Mat { p, n, entries }
    }

    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.p, other.p);
        assert_eq!(self.n, other.n);
        let n = self.n;
        let p = self.p;
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] =
                        fp::addm(entries[i * n + j], fp::mulm(a, other.at(k, j), p), p);
                }
            }
        }
        Mat { p, n, entries }
    }

    pub fn scale(&self, c: u64) -> Mat {
        Mat {
            p: self.p,
            n: self.n,
            entries: self.entries.iter().map(|&x| fp::mulm(x, c, self.p)).collect(),
        }
    }

    /// Inverse by Gauss-Jordan; None for singular matrices.
    pub fn inverse(&self) -> Option<Mat> {
        let n = self.n;
        let p = self.p;
        let mut a: Vec<Vec<u64>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j)).collect())
            .collect();
        let mut inv: Vec<Vec<u64>> = (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect();
        for c in 0..n {
            let pr = (c..n).find(|&i| a[i][c] != 0)?;
            a.swap(c, pr);
            inv.swap(c, pr);
            let piv_inv = fp::invm(a[c][c], p).ok()?;
            for j in 0..n {
                a[c][j] = fp::mulm(a[c][j], piv_inv, p);
                inv[c][j] = fp::mulm(inv[c][j], piv_inv, p);
            }
            for i in 0..n {
                if i != c && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..n {
                        let t = fp::mulm(f, a[c][j], p);
                        a[i][j] = fp::subm(a[i][j], t, p);
                        let t = fp::mulm(f, inv[c][j], p);
                        inv[i][j] = fp::subm(inv[i][j], t, p);
                    }
                }
            }
        }
        let entries = inv.into_iter().flatten().collect();
        Some(Mat { p, n, entries })
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.p, self.n)
    }

    /// Some(c) when the matrix is c·Id.
    pub fn scalar_value(&self) -> Option<u64> {
        let c = self.at(0, 0);
        for i in 0..self.n {
            for j in 0..self.n {
                let want = if i == j { c } else { 0 };
                if self.at(i, j) != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j)).collect())
            .collect()
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(w, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(w, ",")?;
            }
            write!(w, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(w, ",")?;
                }
                write!(w, "{}", self.at(i, j))?;
            }
            write!(w, "]")?;
        }
        write!(w, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let p = 101;
        let m = Mat::from_rows(p, &[vec![2, 3], vec![1, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let singular = Mat::from_rows(p, &[vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn scalar_detection() {
        let p = 101;
        assert_eq!(Mat::identity(p, 3).scale(7).scalar_value(), Some(7));
        let m = Mat::from_rows(p, &[vec![7, 1], vec![0, 7]]);
        assert_eq!(m.scalar_value(), None);
    }
}
