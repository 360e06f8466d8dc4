//! The Σ_f covariants of S_n and the pairwise-difference map η.
//!
//! For a balanced, non-invariant difference monomial f on n points, Σ_f
//! sends a ∈ C^n to the vector of translates ((σf)(a))_{σ ∈ S_n} in the
//! group algebra C[S_n]. Coordinates are indexed by the group's
//! breadth-first element order, and S_n acts on them by left translation.

use super::monomial::{balanced_check, is_sn_invariant, DifferenceMonomial};
use super::CovariantError;
use crate::groups::{symmetric, FiniteGroup};
use crate::polymap::{ActionMeta, Dag, GenAction};

/// Output-size cap for Σ_f: n! coordinates, so n ≤ 8.
pub const SIGMA_MAX_N: usize = 8;

/// Build Σ_f together with the S_n it is indexed by.
///
/// Coordinates are generated by acting on the exponent map and tracking the
/// sign of reversed edges, never by expanding f symbolically; the difference
/// nodes (x_i - x_j) are shared across all n! outputs.
pub fn build_sigma_f(m: &DifferenceMonomial) -> Result<(Dag, FiniteGroup), CovariantError> {
    let n = m.n();
    if !(2..=SIGMA_MAX_N).contains(&n) {
        return Err(CovariantError::CapExceeded(format!(
            "sigma_f supports 2 <= n <= {SIGMA_MAX_N}, got {n}"
        )));
    }
    let t = balanced_check(m)?;
    if is_sn_invariant(m) {
        return Err(CovariantError::Invariant);
    }
    let sn = symmetric(n);
    let mut dag = Dag::new(n);
    let inputs: Vec<_> = (0..n).map(|i| dag.input(i)).collect();
    // shared difference nodes d[a][b] = x_a - x_b for a < b
    let mut diff = vec![vec![usize::MAX; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            diff[a][b] = dag.diff(inputs[a], inputs[b]);
        }
    }
    let degree = (n as u64) * (t as u64) / 2;
    let mut outs = Vec::with_capacity(sn.order());
    for elem in &sn.elements {
        let crate::groups::Element::Perm(sigma) = elem else {
            unreachable!("symmetric group is a permutation group")
        };
        let (image, sign) = m.act(sigma);
        let mut factors = Vec::new();
        if sign < 0 {
            factors.push(dag.int(-1));
        }
        for (&(a, b), &e) in image.edges() {
            factors.push(if e == 1 {
                diff[a][b]
            } else {
                dag.pow(diff[a][b], e as u64)
            });
        }
        outs.push(dag.prod(factors));
    }
    let count = outs.len();
    dag.set_outputs(outs, vec![Some(degree); count]);
    dag.action = Some(sigma_action_meta(&sn));
    Ok((dag, sn))
}

/// Domain action: generators permute the n inputs. Codomain action: left
/// translation on the group-algebra coordinates.
fn sigma_action_meta(sn: &FiniteGroup) -> ActionMeta {
    let domain_gens = sn
        .generators
        .iter()
        .map(|g| {
            let crate::groups::Element::Perm(p) = g else {
                unreachable!()
            };
            domain_perm_action(p.images())
        })
        .collect();
    let codomain_gens = sn
        .generators
        .iter()
        .filter_map(|g| sn.index_of(g))
        .map(|g| left_translation_action(sn, g))
        .collect();
    ActionMeta {
        domain_gens,
        codomain_gens,
    }
}

/// The coordinate action of σ on points of C^n: (σ·x)_i = x_{σ^{-1}(i)}.
pub fn domain_perm_action(sigma_images: &[usize]) -> GenAction {
    // (σ·x)_k = x_{σ^{-1}(k)}: table[k] = σ^{-1}(k)
    let n = sigma_images.len();
    let mut table = vec![0usize; n];
    for (i, &si) in sigma_images.iter().enumerate() {
        table[si] = i;
    }
    GenAction::Perm(table)
}

/// Left translation by group element `g` on C[G] coordinates:
/// (g·y)_k = y_{index(g^{-1} · elem_k)}.
pub fn left_translation_action(group: &FiniteGroup, g: usize) -> GenAction {
    let ginv = group.inv_idx(g);
    let table: Vec<usize> = (0..group.order())
        .map(|k| group.mul_idx(ginv, k))
        .collect();
    GenAction::Perm(table)
}

/// The linear map a ↦ (a_i - a_j)_{i<j}, outputs in lexicographic order.
/// Its kernel is the diagonal (the constants), so the Jacobian has rank n-1.
pub fn wedge_eta(n: usize) -> Result<Dag, CovariantError> {
    if n < 2 {
        return Err(CovariantError::CapExceeded(format!(
            "eta needs n >= 2, got {n}"
        )));
    }
    let mut dag = Dag::new(n);
    let inputs: Vec<_> = (0..n).map(|i| dag.input(i)).collect();
    let mut outs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            outs.push(dag.diff(inputs[a], inputs[b]));
        }
    }
    let count = outs.len();
    dag.set_outputs(outs, vec![Some(1); count]);
    dag.action = Some(ActionMeta {
        domain_gens: vec![],
        codomain_gens: vec![],
    });
    Ok(dag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymap::{random_point, rank, PrimeFieldCtx};

    fn ctx() -> PrimeFieldCtx {
        PrimeFieldCtx::from_prime(101).unwrap()
    }

    #[test]
    fn sigma_pairing_values() {
        let m = DifferenceMonomial::pairing(4).unwrap();
        let (dag, sn) = build_sigma_f(&m).unwrap();
        assert_eq!(dag.num_outputs(), 24);
        assert_eq!(dag.homogeneous_degree(), Some(2));
        let vals = dag.evaluate(&[0, 1, 2, 3], &ctx()).unwrap();
        // coordinate at the identity: (0-1)(2-3) = 1
        assert_eq!(vals[0], 1);
        // coordinate at (0 2)(1 3): (x2-x3)(x0-x1) evaluated = (2-3)(0-1) = 1
        let sigma = crate::groups::Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        let idx = sn
            .index_of(&crate::groups::Element::Perm(sigma))
            .unwrap();
        assert_eq!(vals[idx], 1);
    }

    #[test]
    fn sigma_degrees() {
        // even-n pairing has degree n/2; the cycle monomial has degree n
        let (dag6, _) = build_sigma_f(&DifferenceMonomial::pairing(6).unwrap()).unwrap();
        assert_eq!(dag6.homogeneous_degree(), Some(3));
        let (dag5, _) = build_sigma_f(&DifferenceMonomial::cycle(5).unwrap()).unwrap();
        assert_eq!(dag5.homogeneous_degree(), Some(5));
    }

    #[test]
    fn sigma_rejects_bad_inputs() {
        let inv = DifferenceMonomial::new(2, &[((0, 1), 2)]).unwrap();
        assert!(matches!(
            build_sigma_f(&inv),
            Err(CovariantError::Invariant)
        ));
        let unbal = DifferenceMonomial::new(3, &[((0, 1), 1)]).unwrap();
        assert!(matches!(
            build_sigma_f(&unbal),
            Err(CovariantError::Unbalanced { .. })
        ));
    }

    #[test]
    fn sigma_equivariance_all_of_s4() {
        // Σ_f(σ·v) = σ·Σ_f(v) with left translation on coordinates
        let m = DifferenceMonomial::pairing(4).unwrap();
        let (dag, sn) = build_sigma_f(&m).unwrap();
        let cx = ctx();
        for seed in 0..3 {
            let v = random_point(4, &cx, seed);
            let y = dag.evaluate(&v, &cx).unwrap();
            for s in 0..sn.order() {
                let act_dom = {
                    let crate::groups::Element::Perm(p) = &sn.elements[s] else {
                        unreachable!()
                    };
                    domain_perm_action(p.images())
                };
                let act_cod = left_translation_action(&sn, s);
                let sv = act_dom.apply(&v, &cx).unwrap();
                let lhs = dag.evaluate(&sv, &cx).unwrap();
                let rhs = act_cod.apply(&y, &cx).unwrap();
                assert_eq!(lhs, rhs, "element {s}");
            }
        }
    }

    #[test]
    fn sigma_homogeneity() {
        let m = DifferenceMonomial::cycle(5).unwrap();
        let (dag, _) = build_sigma_f(&m).unwrap();
        let cx = ctx();
        let d = dag.homogeneous_degree().unwrap();
        for seed in 0..3 {
            let v = random_point(5, &cx, seed);
            let t = 1 + seed % 97;
            let tv: Vec<u64> = v.iter().map(|&x| cx.mul(t, x)).collect();
            let lhs = dag.evaluate(&tv, &cx).unwrap();
            let td = cx.pow(t, d);
            let rhs: Vec<u64> = dag
                .evaluate(&v, &cx)
                .unwrap()
                .iter()
                .map(|&y| cx.mul(td, y))
                .collect();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sigma_coordinates_stay_balanced() {
        // every coordinate's edge map is balanced with the same t
        let m = DifferenceMonomial::cycle(5).unwrap();
        let t = balanced_check(&m).unwrap();
        let sn = symmetric(5);
        for e in &sn.elements {
            let crate::groups::Element::Perm(p) = e else {
                unreachable!()
            };
            let (img, _) = m.act(p);
            assert_eq!(balanced_check(&img).unwrap(), t);
        }
    }

    #[test]
    fn eta_examples() {
        let cx = ctx();
        let dag = wedge_eta(3).unwrap();
        // (5,2,9) -> (3, -4, -7)
        let vals = dag.evaluate(&[5, 2, 9], &cx).unwrap();
        assert_eq!(vals, vec![3, 101 - 4, 101 - 7]);
        assert_eq!(dag.evaluate(&[1, 1, 1], &cx).unwrap(), vec![0, 0, 0]);
        let two = wedge_eta(2).unwrap();
        assert_eq!(two.evaluate(&[3, 1], &cx).unwrap(), vec![2]);
        // Jacobian rank is n-1 for all n (kernel = constants)
        for n in 2..=6usize {
            let dag = wedge_eta(n).unwrap();
            let pt = random_point(n, &cx, 1);
            let jac = dag.jacobian_at(&pt, &cx).unwrap();
            assert_eq!(rank(&jac, &cx).0, n - 1);
        }
        // the constant Jacobian for n=3
        let jac = wedge_eta(3).unwrap().jacobian_at(&[7, 8, 9], &cx).unwrap();
        let m1 = 101 - 1;
        assert_eq!(jac, vec![vec![1, m1, 0], vec![1, 0, m1], vec![0, 1, m1]]);
    }
}
