//! Degree bookkeeping: the two-sided degree equation, maximal homogeneous
//! components, and scaling a covariant by an invariant.

use super::CovariantError;
use crate::polymap::fp::{factorize, gcd};
use crate::polymap::{Dag, GenAction, PrimeFieldCtx, SparsePoly};

/// Solve (1 + a1·d)(1 + x·d1) = (1 + a2·d)(1 + y·d2) for the minimal
/// nonnegative x, y.
///
/// Hypotheses: d | d1 | d2 and every prime divisor of d2 divides d.
/// Solvable iff a1 ≡ a2 (mod d1/d).
pub fn solve_degree_equation(
    d: u64,
    d1: u64,
    d2: u64,
    a1: u64,
    a2: u64,
) -> Result<(u64, u64), CovariantError> {
    solve_degree_equation_floor(d, d1, d2, a1, a2, 0)
}

/// The "arbitrarily large" variant: minimal solution with x >= floor and
/// y >= floor.
pub fn solve_degree_equation_floor(
    d: u64,
    d1: u64,
    d2: u64,
    a1: u64,
    a2: u64,
    floor: u64,
) -> Result<(u64, u64), CovariantError> {
    if d == 0 || d1 % d != 0 || d2 % d1 != 0 {
        return Err(CovariantError::BadChain(format!(
            "need d | d1 | d2, got {d} | {d1} | {d2}"
        )));
    }
    if factorize(d2).iter().any(|&(q, _)| d % q != 0) {
        return Err(CovariantError::BadChain(format!(
            "every prime divisor of d2 = {d2} must divide d = {d}"
        )));
    }
    if (a1 % (d1 / d)) != (a2 % (d1 / d)) {
        return Err(CovariantError::Unsolvable {
            a1,
            a2,
            modulus: d1 / d,
        });
    }
    let lhs = 1 + a1 * d; // coefficient of (1 + x d1)
    let rhs = 1 + a2 * d; // coefficient of (1 + y d2)
    // solutions form an arithmetic progression; the minimal x lies within
    // one period
    let g = gcd(lhs * d1, rhs * d2);
    let x_period = rhs * d2 / g;
    let y_period = lhs * d1 / g;
    let mut x = 0u64;
    loop {
        let left = lhs as u128 * (1 + x * d1) as u128;
        if left >= rhs as u128 && (left - rhs as u128) % (rhs as u128 * d2 as u128) == 0 {
            let y = ((left - rhs as u128) / (rhs as u128 * d2 as u128)) as u64;
            let mut k = 0u64;
            while x + k * x_period < floor || y + k * y_period < floor {
                k += 1;
            }
            return Ok((x + k * x_period, y + k * y_period));
        }
        x += 1;
        assert!(
            x <= x_period + 1,
            "degree equation scan exceeded its period; congruence test is wrong"
        );
    }
}

/// The top-degree homogeneous part of a polynomial map, componentwise.
/// Components below the maximal degree become zero.
pub fn max_homogeneous_component(
    components: &[SparsePoly],
) -> Result<Vec<SparsePoly>, CovariantError> {
    let top = components
        .iter()
        .filter_map(|c| if c.is_zero() { None } else { c.total_degree() })
        .max()
        .ok_or(CovariantError::ZeroMap)?;
    Ok(components
        .iter()
        .map(|c| {
            let mut out = SparsePoly::zero(c.nvars());
            for (e, &coef) in c.terms() {
                if e.iter().map(|&x| x as u64).sum::<u64>() == top {
                    out.add_term(e, coef).expect("same arity");
                }
            }
            out
        })
        .collect())
}

/// Componentwise product f·φ of a covariant with an invariant polynomial;
/// degrees add.
///
/// Invariance of `f` under the map's recorded domain action is verified
/// symbolically on the generators (exactly for permutation actions, in the
/// field for matrix actions).
pub fn scale_by_invariant(
    dag: &Dag,
    invariant: &SparsePoly,
    ctx: &PrimeFieldCtx,
) -> Result<Dag, CovariantError> {
    let meta = dag
        .action
        .as_ref()
        .ok_or_else(|| CovariantError::RepShape("map carries no action metadata".into()))?;
    for gen in &meta.domain_gens {
        if !invariant_under(invariant, gen, ctx)? {
            return Err(CovariantError::NotInvariant);
        }
    }
    let inv_dag = Dag::from_sparse_polys(std::slice::from_ref(invariant));
    let mut out = dag.clone();
    let inv_nodes = out.append_over_same_inputs(&inv_dag)?;
    let inv_node = inv_nodes[0];
    let new_outs: Vec<usize> = out
        .outputs()
        .to_vec()
        .into_iter()
        .map(|o| out.prod(vec![o, inv_node]))
        .collect();
    let fdeg = invariant.total_degree().unwrap_or(0);
    let new_degs: Vec<Option<u64>> = dag.degrees.iter().map(|d| d.map(|x| x + fdeg)).collect();
    out.set_outputs(new_outs, new_degs);
    out.action = dag.action.clone();
    Ok(out)
}

/// Whether g·f = f for one generator action g on the domain.
pub fn invariant_under(
    f: &SparsePoly,
    gen: &GenAction,
    ctx: &PrimeFieldCtx,
) -> Result<bool, CovariantError> {
    match gen {
        GenAction::Perm(table) => {
            // the stored table has table[k] = σ^{-1}(k); σf substitutes
            // x_i ↦ x_{σ(i)}, so invert the table
            let mut sigma = vec![0usize; table.len()];
            for (k, &src) in table.iter().enumerate() {
                sigma[src] = k;
            }
            Ok(f.permute_vars(&sigma) == *f)
        }
        GenAction::Mat { rows, .. } => {
            // (g·f)(x) = f(g^{-1}·x)
            let m = crate::groups::Mat::from_rows(ctx.prime(), rows);
            let inv = m
                .inverse()
                .ok_or_else(|| CovariantError::RepShape("singular action matrix".into()))?;
            let f_field = f.to_field(ctx)?;
            Ok(f_field.substitute_linear(&inv.rows(), ctx)? == f_field)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariants::monomial::DifferenceMonomial;
    use crate::covariants::sigma::build_sigma_f;
    use crate::polymap::{random_point, rank, PrimeFieldCtx};

    #[test]
    fn degree_equation_examples() {
        // identical sides
        assert_eq!(solve_degree_equation(3, 3, 3, 5, 5).unwrap(), (0, 0));
        // 3*(1+2x) = 5*(1+4y): minimal (7,2), both sides 45
        assert_eq!(solve_degree_equation(2, 2, 4, 1, 2).unwrap(), (7, 2));
        // congruence violation: 1 ≢ 2 mod 2
        assert!(matches!(
            solve_degree_equation(2, 4, 4, 1, 2),
            Err(CovariantError::Unsolvable { modulus: 2, .. })
        ));
        // bad chains
        assert!(matches!(
            solve_degree_equation(2, 3, 6, 0, 0),
            Err(CovariantError::BadChain(_))
        ));
        assert!(matches!(
            solve_degree_equation(2, 2, 6, 0, 0), // 3 divides d2 but not d
            Err(CovariantError::BadChain(_))
        ));
    }

    #[test]
    fn degree_equation_floor_variant() {
        let (x, y) = solve_degree_equation_floor(2, 2, 4, 1, 2, 50).unwrap();
        assert!(x >= 50 && y >= 50);
        let lhs = (1 + 2) * (1 + 2 * x);
        let rhs = (1 + 4) * (1 + 4 * y);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn max_homogeneous_examples() {
        let n = 1;
        // x^2 + x -> x^2
        let f = SparsePoly::var(n, 0)
            .pow(2)
            .unwrap()
            .add(&SparsePoly::var(n, 0))
            .unwrap();
        let top = max_homogeneous_component(&[f]).unwrap();
        assert_eq!(top[0].total_degree(), Some(2));
        assert_eq!(top[0].num_terms(), 1);

        // already homogeneous: unchanged
        let g = SparsePoly::var(2, 0).mul(&SparsePoly::var(2, 1)).unwrap();
        let top = max_homogeneous_component(std::slice::from_ref(&g)).unwrap();
        assert_eq!(top[0], g);

        // (x+y, xy+1) -> (0, xy)
        let c1 = SparsePoly::var(2, 0).add(&SparsePoly::var(2, 1)).unwrap();
        let c2 = g.add(&SparsePoly::constant(2, 1)).unwrap();
        let top = max_homogeneous_component(&[c1, c2]).unwrap();
        assert!(top[0].is_zero());
        assert_eq!(top[1], g);

        // all-zero map is an error
        assert!(matches!(
            max_homogeneous_component(&[SparsePoly::zero(2)]),
            Err(CovariantError::ZeroMap)
        ));
    }

    #[test]
    fn scaling_by_one_and_by_e1() {
        let ctx = PrimeFieldCtx::from_prime(101).unwrap();
        let m = DifferenceMonomial::pairing(4).unwrap();
        let (dag, _) = build_sigma_f(&m).unwrap();

        let one = SparsePoly::constant(4, 1);
        let same = scale_by_invariant(&dag, &one, &ctx).unwrap();
        let pt = random_point(4, &ctx, 3);
        assert_eq!(
            same.evaluate(&pt, &ctx).unwrap(),
            dag.evaluate(&pt, &ctx).unwrap()
        );
        assert_eq!(same.homogeneous_degree(), Some(2));

        // e1 = x1 + x2 + x3 + x4 is symmetric; degree goes 2 -> 3
        let e1 = (0..4).fold(SparsePoly::zero(4), |acc, i| {
            acc.add(&SparsePoly::var(4, i)).unwrap()
        });
        let scaled = scale_by_invariant(&dag, &e1, &ctx).unwrap();
        assert_eq!(scaled.homogeneous_degree(), Some(3));
        let y = dag.evaluate(&pt, &ctx).unwrap();
        let s = pt.iter().fold(0u64, |a, &x| ctx.add(a, x));
        let want: Vec<u64> = y.iter().map(|&v| ctx.mul(v, s)).collect();
        assert_eq!(scaled.evaluate(&pt, &ctx).unwrap(), want);

        // rank is unchanged at matched points (image stays in the cone)
        for seed in 0..10 {
            let v = random_point(4, &ctx, 100 + seed);
            let r1 = rank(&dag.jacobian_at(&v, &ctx).unwrap(), &ctx).0;
            let r2 = rank(&scaled.jacobian_at(&v, &ctx).unwrap(), &ctx).0;
            assert_eq!(r1, r2, "seed {seed}");
        }

        // a non-invariant is rejected
        let x1 = SparsePoly::var(4, 0);
        assert!(matches!(
            scale_by_invariant(&dag, &x1, &ctx),
            Err(CovariantError::NotInvariant)
        ));
    }

    #[test]
    fn scaling_degree_stays_congruent() {
        // both deg φ and deg f·φ are ≡ 1 mod z when f has degree ≡ 0 mod z
        let ctx = PrimeFieldCtx::with_roots(&[4], 0).unwrap();
        let g = crate::groups::cyclic(4);
        let rep =
            crate::covariants::rep::MatrixRep::diagonal_rep(g, 4, &[vec![1, 3]], &ctx).unwrap();
        let z = crate::covariants::rep::z_of_rep(&rep); // 2
        let mut dag = Dag::identity(2);
        dag.action = Some(crate::polymap::ActionMeta {
            domain_gens: rep.gen_actions(),
            codomain_gens: rep.gen_actions(),
        });
        // invariant of degree 2: x1*x2 is fixed by diag(z, z^3) since 1+3=4
        let f = SparsePoly::var(2, 0).mul(&SparsePoly::var(2, 1)).unwrap();
        let scaled = scale_by_invariant(&dag, &f, &ctx).unwrap();
        assert_eq!(scaled.homogeneous_degree(), Some(3));
        assert!(crate::covariants::rep::degree_congruence_check(&scaled, &rep).unwrap());
        let _ = z;
    }
}
