//! Matrix representations of enumerated groups over a prime-field context,
//! the scalar-subgroup order z_G(V), and the degree congruence for
//! self-covariants.

use super::CovariantError;
use crate::groups::{Element, FiniteGroup, Mat};
use crate::polymap::{Dag, GenAction, PrimeFieldCtx};

/// A representation ρ: G → GL_dim(F_p) given by generator images.
///
/// The image of every element is computed along the group's BFS words; any
/// collision where the matrix product disagrees with an already-assigned
/// image means the generator images violate the group's relations.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    pub group: FiniteGroup,
    pub dim: usize,
    pub gen_images: Vec<Mat>,
    /// images[i] = ρ(elements[i]).
    pub images: Vec<Mat>,
}

impl MatrixRep {
    pub fn new(
        group: FiniteGroup,
        gen_images: Vec<Mat>,
        ctx: &PrimeFieldCtx,
    ) -> Result<Self, CovariantError> {
        if gen_images.len() != group.generators.len() {
            return Err(CovariantError::RepShape(format!(
                "expected {} generator images, got {}",
                group.generators.len(),
                gen_images.len()
            )));
        }
        let p = ctx.prime();
        let dim = gen_images.first().map_or(1, |m| m.n);
        for m in &gen_images {
            if m.p != p || m.n != dim {
                return Err(CovariantError::RepShape(
                    "generator images must share the context prime and dimension".into(),
                ));
            }
            if m.inverse().is_none() {
                return Err(CovariantError::RepShape(
                    "generator image is singular".into(),
                ));
            }
        }
        let mut images = vec![Mat::identity(p, dim); group.order()];
        for i in 1..group.order() {
            let w = group.word(i);
            let mut acc = Mat::identity(p, dim);
            for &gi in &w {
                acc = acc.mul(&gen_images[gi]);
            }
            images[i] = acc;
        }
        // relation check: images must respect the multiplication table on a
        // generator sweep, which pins down the whole table
        for i in 0..group.order() {
            for (gi, g) in group.generators.iter().enumerate() {
                let j = group
                    .index_of(&group.elements[i].mul(g))
                    .expect("group is closed");
                if images[i].mul(&gen_images[gi]) != images[j] {
                    return Err(CovariantError::RelationViolated);
                }
            }
        }
        Ok(MatrixRep {
            group,
            dim,
            gen_images,
            images,
        })
    }

    /// The identity representation of a matrix group on itself.
    pub fn identity_rep(group: FiniteGroup, ctx: &PrimeFieldCtx) -> Result<Self, CovariantError> {
        let gen_images: Vec<Mat> = group
            .generators
            .iter()
            .map(|e| match e {
                Element::Mat(m) => Ok(m.clone()),
                Element::Perm(_) => Err(CovariantError::RepShape(
                    "identity_rep needs a matrix group".into(),
                )),
            })
            .collect::<Result<_, _>>()?;
        Self::new(group, gen_images, ctx)
    }

    /// The permutation-matrix representation of a permutation group.
    pub fn permutation_rep(
        group: FiniteGroup,
        ctx: &PrimeFieldCtx,
    ) -> Result<Self, CovariantError> {
        let p = ctx.prime();
        let gen_images: Vec<Mat> = group
            .generators
            .iter()
            .map(|e| match e {
                Element::Perm(perm) => {
                    let n = perm.degree();
                    let mut m = Mat::new(p, n, vec![0; n * n]);
                    // x ↦ σ·x with (σ·x)_i = x_{σ^{-1}(i)}: row i has a 1 in
                    // column σ^{-1}(i), i.e. row σ(j) column j
                    for j in 0..n {
                        m.entries[perm.apply(j) * n + j] = 1;
                    }
                    Ok(m)
                }
                Element::Mat(_) => Err(CovariantError::RepShape(
                    "permutation_rep needs a permutation group".into(),
                )),
            })
            .collect::<Result<_, _>>()?;
        Self::new(group, gen_images, ctx)
    }

    /// Diagonal character rep of an abelian group given per-generator root
    /// powers: generator k acts by diag(ζ^{w[k][0]}, …, ζ^{w[k][dim-1]})
    /// where ζ is the registered root of the given order.
    pub fn diagonal_rep(
        group: FiniteGroup,
        order: u64,
        weights: &[Vec<u64>],
        ctx: &PrimeFieldCtx,
    ) -> Result<Self, CovariantError> {
        let z = ctx.root(order).map_err(crate::polymap::dag::DagError::from)?;
        let p = ctx.prime();
        let dim = weights.first().map_or(1, |w| w.len());
        let gen_images: Vec<Mat> = weights
            .iter()
            .map(|w| {
                let mut m = Mat::new(p, dim, vec![0; dim * dim]);
                for (i, &e) in w.iter().enumerate() {
                    m.entries[i * dim + i] = ctx.pow(z, e);
                }
                m
            })
            .collect();
        Self::new(group, gen_images, ctx)
    }

    /// Per-generator domain actions for DAG metadata.
    pub fn gen_actions(&self) -> Vec<GenAction> {
        self.gen_images
            .iter()
            .map(|m| GenAction::Mat {
                p: m.p,
                n: m.n,
                rows: m.rows(),
            })
            .collect()
    }

    /// ρ(elements[i]) as a coordinate action.
    pub fn element_action(&self, i: usize) -> GenAction {
        let m = &self.images[i];
        GenAction::Mat {
            p: m.p,
            n: m.n,
            rows: m.rows(),
        }
    }
}

/// z(V) = |ρ(G) ∩ F_p^* · Id|: the number of distinct scalar matrices in the
/// image of the representation.
pub fn z_of_rep(rep: &MatrixRep) -> u64 {
    let mut scalars: Vec<u64> = rep
        .images
        .iter()
        .filter_map(|m| m.scalar_value())
        .collect();
    scalars.sort_unstable();
    scalars.dedup();
    scalars.len() as u64
}

/// Check deg φ ≡ 1 (mod z(V)) for a homogeneous self-covariant of the
/// representation; a failure certifies that no such covariant exists.
pub fn degree_congruence_check(dag: &Dag, rep: &MatrixRep) -> Result<bool, CovariantError> {
    let Some(degree) = dag.homogeneous_degree() else {
        return Err(CovariantError::NotHomogeneous);
    };
    let z = z_of_rep(rep);
    Ok(degree % z == 1 % z)
}
