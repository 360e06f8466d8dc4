//! Self-covariants of diagonal abelian representations and their full-rank
//! Jacobian certificates.
//!
//! For an abelian group with invariant factors d_1 | … | d_n acting
//! diagonally on n coordinates, every self-covariant has components of the
//! shape x_i · f_i(x_1^p, …, x_n^p) for any prime p dividing d_1. Maps of
//! that shape have nonzero Jacobian determinant, and the determinant is
//! diagonal mod p — which is the cheap certification route.

use super::CovariantError;
use crate::dimension::{image_dim_lower_bound, DagSource, DimensionCertificate};
use crate::polymap::fp;
use crate::polymap::{Dag, PolyMode, PrimeFieldCtx, SparsePoly};

/// A candidate self-covariant of a diagonal abelian representation.
#[derive(Debug, Clone)]
pub struct AbelianCovariantSpec {
    /// Invariant factors d_1 | d_2 | … | d_n.
    pub factors: Vec<u64>,
    /// A prime divisor of d_1.
    pub p: u64,
    /// Component i is a polynomial in x_1, …, x_n (symbolic mode).
    pub components: Vec<SparsePoly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Check the component shape: each component i must be x_i times a nonzero
/// polynomial in p-th powers. A zero component fails (its cofactor would be
/// a polynomial in p-th powers alone, which the rank argument excludes).
pub fn abelian_shape_check(spec: &AbelianCovariantSpec) -> ShapeReport {
    let mut violations = Vec::new();
    let n = spec.factors.len();
    if !fp::is_prime(spec.p) {
        violations.push(format!("p = {} is not prime", spec.p));
    }
    if spec.factors.is_empty() {
        violations.push("no invariant factors".into());
    } else {
        if spec.factors[0] % spec.p != 0 {
            violations.push(format!("p = {} does not divide d_1 = {}", spec.p, spec.factors[0]));
        }
        for w in spec.factors.windows(2) {
            if w[1] % w[0] != 0 {
                violations.push(format!("factors are not a divisibility chain: {} ∤ {}", w[0], w[1]));
            }
        }
    }
    if spec.components.len() != n {
        violations.push(format!(
            "expected {n} components, got {}",
            spec.components.len()
        ));
    }
    for (i, c) in spec.components.iter().enumerate() {
        if c.mode() != PolyMode::Symbolic {
            violations.push(format!("component {} is not in symbolic mode", i + 1));
            continue;
        }
        if c.nvars() != n {
            violations.push(format!("component {} has arity {}, want {n}", i + 1, c.nvars()));
            continue;
        }
        if c.is_zero() {
            violations.push(format!(
                "component {} is zero; its cofactor lies in the p-th power ring",
                i + 1
            ));
            continue;
        }
        for (e, _) in c.terms() {
            for (j, &exp) in e.iter().enumerate() {
                let want = if i == j { 1 } else { 0 };
                if exp as u64 % spec.p != want {
                    violations.push(format!(
                        "component {}: term with x_{}^{} breaks the x_i · f(x^p) shape",
                        i + 1,
                        j + 1,
                        exp
                    ));
                }
            }
        }
    }
    ShapeReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// Outcome when no full-rank point was found within the trial budget.
/// This is not a claim that the rank is smaller.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("no full-rank Jacobian point found within {trials} trials (best rank {best_rank} of {want})")]
pub struct Inconclusive {
    pub best_rank: usize,
    pub want: usize,
    pub trials: usize,
}

/// Produce a rank-n Jacobian certificate for a shape-conforming covariant.
///
/// Preferred route: reduce mod q = p itself, where the Jacobian matrix is
/// diagonal, provided no component vanishes mod p. Fallback: random
/// evaluation over the ambient context; either way a nonzero minor lifts to
/// characteristic 0. Never claims rank < n.
pub fn abelian_jacobian_certificate(
    spec: &AbelianCovariantSpec,
    ctx: &PrimeFieldCtx,
    trials: usize,
    seed: u64,
) -> Result<DimensionCertificate, Inconclusive> {
    let n = spec.factors.len();
    let dag = spec_dag(spec);
    let source = Some(spec_source(spec));
    let mut best = 0usize;

    // char-p shortcut: valid when every component survives reduction mod p
    if let Ok(small_ctx) = PrimeFieldCtx::from_prime(spec.p) {
        let survives = spec.components.iter().all(|c| {
            c.terms()
                .any(|(_, &coef)| coef.rem_euclid(spec.p as i128) != 0)
        });
        if survives {
            let cert = image_dim_lower_bound(&dag, &small_ctx, trials.max(8), seed, source.clone());
            if cert.rank == n {
                return Ok(cert);
            }
            best = best.max(cert.rank);
        }
    }

    // characteristic-0-lifted random evaluation over the big field
    let cert = image_dim_lower_bound(&dag, ctx, trials.max(1), seed, source);
    if cert.rank == n {
        return Ok(cert);
    }
    Err(Inconclusive {
        best_rank: best.max(cert.rank),
        want: n,
        trials,
    })
}

pub fn spec_dag(spec: &AbelianCovariantSpec) -> Dag {
    Dag::from_sparse_polys(&spec.components)
}

pub fn spec_source(spec: &AbelianCovariantSpec) -> DagSource {
    DagSource::Abelian {
        factors: spec.factors.clone(),
        p: spec.p,
        components: spec
            .components
            .iter()
            .map(|c| {
                c.terms()
                    .map(|(e, &coef)| (i64::try_from(coef).expect("small coefficient"), e.clone()))
                    .collect()
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: usize, terms: &[(i128, &[u32])]) -> SparsePoly {
        let mut f = SparsePoly::zero(n);
        for &(c, e) in terms {
            f.add_term(e, c).unwrap();
        }
        f
    }

    fn big_ctx() -> PrimeFieldCtx {
        PrimeFieldCtx::with_roots(&[], 0).unwrap()
    }

    #[test]
    fn identity_map_is_shaped_and_certified() {
        for p in [2u64, 3, 5] {
            let spec = AbelianCovariantSpec {
                factors: vec![p, p],
                p,
                components: vec![poly(2, &[(1, &[1, 0])]), poly(2, &[(1, &[0, 1])])],
            };
            assert!(abelian_shape_check(&spec).ok);
            let cert = abelian_jacobian_certificate(&spec, &big_ctx(), 8, 1).unwrap();
            assert_eq!(cert.rank, 2);
        }
    }

    #[test]
    fn cubic_example_is_certified() {
        // p = 3, φ = (x(x^3 + y^3), y(x^3 - y^3))
        let spec = AbelianCovariantSpec {
            factors: vec![3, 3],
            p: 3,
            components: vec![
                poly(2, &[(1, &[4, 0]), (1, &[1, 3])]),
                poly(2, &[(1, &[3, 1]), (-1, &[0, 4])]),
            ],
        };
        assert!(abelian_shape_check(&spec).ok);
        let cert = abelian_jacobian_certificate(&spec, &big_ctx(), 8, 7).unwrap();
        assert_eq!(cert.rank, 2);
        // the shortcut should have worked in characteristic 3
        assert_eq!(cert.p, 3);
    }

    #[test]
    fn shape_violations_are_reported() {
        // p = 2, φ = (x·y, y·x): cofactors are not squares
        let spec = AbelianCovariantSpec {
            factors: vec![2, 2],
            p: 2,
            components: vec![poly(2, &[(1, &[1, 1])]), poly(2, &[(1, &[1, 1])])],
        };
        let report = abelian_shape_check(&spec);
        assert!(!report.ok);
        assert!(!report.violations.is_empty());

        // zero component fails the shape
        let spec2 = AbelianCovariantSpec {
            factors: vec![2, 2],
            p: 2,
            components: vec![poly(2, &[(1, &[1, 2])]), SparsePoly::zero(2)],
        };
        assert!(!abelian_shape_check(&spec2).ok);

        // non-prime p, broken chain
        let spec3 = AbelianCovariantSpec {
            factors: vec![4, 6],
            p: 4,
            components: vec![poly(2, &[(1, &[1, 0])]), poly(2, &[(1, &[0, 1])])],
        };
        let rep3 = abelian_shape_check(&spec3);
        assert!(!rep3.ok);
        assert!(rep3.violations.len() >= 2);
    }

    #[test]
    fn rank_deficient_map_is_never_certified() {
        // (x·y^2, 0): rank <= 1 everywhere
        let spec = AbelianCovariantSpec {
            factors: vec![2, 2],
            p: 2,
            components: vec![poly(2, &[(1, &[1, 2])]), SparsePoly::zero(2)],
        };
        let err = abelian_jacobian_certificate(&spec, &big_ctx(), 6, 3).unwrap_err();
        assert!(err.best_rank <= 1);
        assert_eq!(err.want, 2);
    }
}
