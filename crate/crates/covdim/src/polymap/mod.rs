//! Sparse polynomial arithmetic and polynomial-map evaluation over prime
//! fields: the certificate engine's substrate.
//!
//! Everything here is exact. A [`PrimeFieldCtx`] fixes a 64-bit prime
//! together with a table of primitive roots of unity; the ring map
//! `Z[ζ_m] → F_p` it induces is recorded in every certificate so that a
//! nonzero value computed here lifts to a nonzero value in characteristic 0.

pub mod dag;
pub mod fp;
pub mod poly;

pub use dag::{ActionMeta, Dag, GenAction, Scalar};
pub use fp::FieldError;
pub use poly::{PolyError, PolyMode, SparsePoly};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// A prime field F_p with registered primitive roots of unity.
///
/// Invariants: `p` is prime; for every registered order m, m | p-1 and the
/// stored value is a primitive m-th root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFieldCtx {
    p: u64,
    roots: BTreeMap<u64, u64>,
}

impl PrimeFieldCtx {
    /// Context over the `index`-th prime > 2^60 congruent to 1 mod
    /// lcm(root_orders), with all requested roots registered.
    pub fn with_roots(root_orders: &[u64], index: usize) -> Result<Self, FieldError> {
        let l = root_orders.iter().copied().fold(1u64, fp::lcm).max(1);
        let p = fp::nth_prime_above_2_60(l, index)?;
        let mut ctx = Self::from_prime(p)?;
        for &m in root_orders {
            ctx.register_root(m)?;
        }
        Ok(ctx)
    }

    pub fn from_prime(p: u64) -> Result<Self, FieldError> {
        if !fp::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeFieldCtx {
            p,
            roots: BTreeMap::new(),
        })
    }

    /// Rebuild a context from certificate fields, validating every root.
    pub fn from_parts(p: u64, roots: &BTreeMap<u64, u64>) -> Result<Self, FieldError> {
        let mut ctx = Self::from_prime(p)?;
        for (&order, &value) in roots {
            if !fp::is_primitive_root(p, order, value) {
                return Err(FieldError::BadRoot { p, order, value });
            }
            ctx.roots.insert(order, value);
        }
        Ok(ctx)
    }

    pub fn register_root(&mut self, order: u64) -> Result<u64, FieldError> {
        if let Some(&z) = self.roots.get(&order) {
            return Ok(z);
        }
        let z = fp::primitive_root_of_unity(self.p, order)?;
        self.roots.insert(order, z);
        Ok(z)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn roots(&self) -> &BTreeMap<u64, u64> {
        &self.roots
    }

    pub fn root(&self, order: u64) -> Result<u64, FieldError> {
        self.roots
            .get(&order)
            .copied()
            .ok_or(FieldError::RootUnavailable {
                p: self.p,
                order,
            })
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        fp::addm(a, b, self.p)
    }
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        fp::subm(a, b, self.p)
    }
    pub fn neg(&self, a: u64) -> u64 {
        fp::negm(a, self.p)
    }
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        fp::mulm(a, b, self.p)
    }
    pub fn pow(&self, a: u64, e: u64) -> u64 {
        fp::powm(a, e, self.p)
    }
    pub fn inv(&self, a: u64) -> Result<u64, FieldError> {
        fp::invm(a, self.p)
    }
    pub fn from_i64(&self, x: i64) -> u64 {
        fp::from_i64(x, self.p)
    }
    pub fn from_i128(&self, x: i128) -> u64 {
        fp::from_i128(x, self.p)
    }
}

/// Deterministic uniform point in F_p^arity from a 64-bit seed.
///
/// Reproducible given (seed, arity, p); disjoint seeds give independent
/// streams for parallel callers.
pub fn random_point(arity: usize, ctx: &PrimeFieldCtx, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = ctx.prime();
    let mut out = Vec::with_capacity(arity);
    while out.len() < arity {
        // p > 2^60 in the default contexts; rejection-sample 61-bit draws so
        // the distribution is uniform for any p up to 2^61.
        debug_assert!(p < 1 << 61);
        let x = rng.next_u64() >> 3;
        if x < p {
            out.push(x);
        }
    }
    out
}

/// Exact rank over F_p with a certified nonsingular minor.
///
/// Returns (r, pivot row indices, pivot column indices): the r x r submatrix
/// of the *original* matrix on those indices is nonsingular.
pub fn rank(matrix: &[Vec<u64>], ctx: &PrimeFieldCtx) -> (usize, Vec<usize>, Vec<usize>) {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let p = ctx.prime();
    let mut work: Vec<Vec<u64>> = matrix.to_vec();
    // original row index carried along with each working row
    let mut origin: Vec<usize> = (0..rows).collect();
    let mut pivot_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| work[i][c] != 0) else {
            continue;
        };
        work.swap(r, pr);
        origin.swap(r, pr);
        pivot_rows.push(origin[r]);
        pivot_cols.push(c);
        let inv = fp::invm(work[r][c], p).expect("pivot is nonzero");
        for j in c..cols {
            work[r][j] = fp::mulm(work[r][j], inv, p);
        }
        for i in r + 1..rows {
            let f = work[i][c];
            if f != 0 {
                for j in c..cols {
                    let t = fp::mulm(f, work[r][j], p);
                    work[i][j] = fp::subm(work[i][j], t, p);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    (r, pivot_rows, pivot_cols)
}

/// Determinant of the square submatrix on the given rows/columns.
pub fn minor_det(
    matrix: &[Vec<u64>],
    rows: &[usize],
    cols: &[usize],
    ctx: &PrimeFieldCtx,
) -> u64 {
    assert_eq!(rows.len(), cols.len());
    let n = rows.len();
    let p = ctx.prime();
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| matrix[i][j]).collect())
        .collect();
    let mut det = 1u64 % p;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| m[i][c] != 0) else {
            return 0;
        };
        if pr != c {
            m.swap(pr, c);
            det = fp::negm(det, p);
        }
        det = fp::mulm(det, m[c][c], p);
        let inv = fp::invm(m[c][c], p).expect("pivot nonzero");
        for i in c + 1..n {
            let f = fp::mulm(m[i][c], inv, p);
            if f != 0 {
                for j in c..n {
                    let t = fp::mulm(f, m[c][j], p);
                    m[i][j] = fp::subm(m[i][j], t, p);
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx101() -> PrimeFieldCtx {
        PrimeFieldCtx::from_prime(101).unwrap()
    }

    #[test]
    fn rank_identity_and_zero() {
        let ctx = ctx101();
        let id: Vec<Vec<u64>> = (0..3)
            .map(|i| (0..3).map(|j| u64::from(i == j)).collect())
            .collect();
        let (r, rows, cols) = rank(&id, &ctx);
        assert_eq!(r, 3);
        assert_eq!(rows, vec![0, 1, 2]);
        assert_eq!(cols, vec![0, 1, 2]);
        let zero = vec![vec![0u64; 4]; 2];
        assert_eq!(rank(&zero, &ctx).0, 0);
        assert_eq!(rank(&[], &ctx).0, 0);
    }

    #[test]
    fn rank_eta_matrix_is_two() {
        // rows (1,-1,0),(1,0,-1),(0,1,-1) — rows are sum-dependent
        let ctx = ctx101();
        let m = vec![
            vec![1u64, 100, 0],
            vec![1, 0, 100],
            vec![0, 1, 100],
        ];
        let (r, rows, cols) = rank(&m, &ctx);
        assert_eq!(r, 2);
        assert_ne!(minor_det(&m, &rows, &cols, &ctx), 0);
    }

    #[test]
    fn certified_minor_is_nonsingular() {
        let ctx = ctx101();
        let m = vec![
            vec![2u64, 4, 6, 1],
            vec![1, 2, 3, 0],
            vec![0, 0, 0, 5],
        ];
        let (r, rows, cols) = rank(&m, &ctx);
        assert_eq!(r, 2);
        assert_ne!(minor_det(&m, &rows, &cols, &ctx), 0);
    }

    #[test]
    fn random_point_determinism() {
        let ctx = PrimeFieldCtx::with_roots(&[], 0).unwrap();
        let a = random_point(5, &ctx, 7);
        let b = random_point(5, &ctx, 7);
        assert_eq!(a, b);
        assert!(a.iter().all(|&x| x < ctx.prime()));
        assert_eq!(random_point(0, &ctx, 1), Vec::<u64>::new());
        // distinct seeds give distinct points, overwhelmingly
        let distinct = (0..100)
            .filter(|&s| random_point(4, &ctx, s) != random_point(4, &ctx, s + 1))
            .count();
        assert_eq!(distinct, 100);
    }

    #[test]
    fn context_roundtrip_from_parts() {
        let ctx = PrimeFieldCtx::with_roots(&[4, 6], 0).unwrap();
        let rebuilt = PrimeFieldCtx::from_parts(ctx.prime(), ctx.roots()).unwrap();
        assert_eq!(ctx, rebuilt);
        // tampered root is rejected
        let mut bad = ctx.roots().clone();
        let v = bad.get_mut(&4).unwrap();
        *v = ctx.add(*v, 1);
        assert!(PrimeFieldCtx::from_parts(ctx.prime(), &bad).is_err());
    }
}
