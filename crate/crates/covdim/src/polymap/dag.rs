//! Evaluation graphs for polynomial maps.
//!
//! A [`Dag`] is an acyclic node list (inputs, scalars, sums, products,
//! powers) with a designated output vector, a declared total degree per
//! output, and optional group-action metadata on the domain and codomain
//! coordinates. Composition of maps splices node lists, so composed
//! covariants never pay the symbolic-expansion blowup; Jacobians are
//! computed by dual-number forward propagation, one pass per input variable.

use super::poly::{PolyError, SparsePoly};
use super::PrimeFieldCtx;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DagError {
    #[error("arity mismatch: point has {0} coordinates, map expects {1}")]
    ArityMismatch(usize, usize),
    #[error(transparent)]
    Field(#[from] super::FieldError),
    #[error("scalar bound to prime {0} evaluated under prime {1}")]
    ContextMismatch(u64, u64),
    #[error("expansion limit exceeded ({0} nodes)")]
    ExpansionTooLarge(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("composition arity mismatch: inner map has {0} outputs, outer expects {1} inputs")]
    ComposeMismatch(usize, usize),
}

/// Exact scalar constants.
///
/// `Int` and `Root` lift to characteristic 0 through the context's ring map
/// `Z[ζ_m] → F_p`; `Fp` constants are bound to one prime and exist for
/// constructions (equivariant projectors) that are born in the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scalar {
    Int(i64),
    /// ζ_order ^ pow under the context's root table.
    Root { order: u64, pow: u64 },
    Fp { p: u64, value: u64 },
}

impl Scalar {
    fn eval(&self, ctx: &PrimeFieldCtx) -> Result<u64, DagError> {
        match *self {
            Scalar::Int(x) => Ok(ctx.from_i64(x)),
            Scalar::Root { order, pow } => Ok(ctx.pow(ctx.root(order)?, pow)),
            Scalar::Fp { p, value } => {
                if p != ctx.prime() {
                    Err(DagError::ContextMismatch(p, ctx.prime()))
                } else {
                    Ok(value)
                }
            }
        }
    }
}

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Node {
    Input(usize),
    Const(Scalar),
    Sum(Vec<NodeId>),
    Prod(Vec<NodeId>),
    Pow(NodeId, u64),
}

/// One generator's action on a coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum GenAction {
    /// y ↦ y' with y'_k = y_{perm[k]}.
    Perm(Vec<usize>),
    /// y ↦ M·y, row-major entries in F_p.
    Mat { p: u64, n: usize, rows: Vec<Vec<u64>> },
}

impl GenAction {
    pub fn apply(&self, y: &[u64], ctx: &PrimeFieldCtx) -> Result<Vec<u64>, DagError> {
        match self {
            GenAction::Perm(perm) => Ok(perm.iter().map(|&k| y[k]).collect()),
            GenAction::Mat { p, rows, .. } => {
                if *p != ctx.prime() {
                    return Err(DagError::ContextMismatch(*p, ctx.prime()));
                }
                Ok(rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .zip(y)
                            .fold(0u64, |acc, (&a, &v)| ctx.add(acc, ctx.mul(a, v)))
                    })
                    .collect())
            }
        }
    }
}

/// Group-action metadata attached to a map: per-generator actions on the
/// domain and codomain coordinates. Equivariance is validated by tests, not
/// assumed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ActionMeta {
    pub domain_gens: Vec<GenAction>,
    pub codomain_gens: Vec<GenAction>,
}

/// A polynomial map F_p^arity → F_p^(outputs.len()) as an evaluation graph.
#[derive(Debug, Clone, Serialize)]
pub struct Dag {
    arity: usize,
    nodes: Vec<Node>,
    outputs: Vec<NodeId>,
    /// Declared total degree per output, where known.
    pub degrees: Vec<Option<u64>>,
    #[serde(skip)]
    pub action: Option<ActionMeta>,
}

impl Dag {
    pub fn new(arity: usize) -> Self {
        Dag {
            arity,
            nodes: Vec::new(),
            outputs: Vec::new(),
            degrees: Vec::new(),
            action: None,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn outputs(&self) -> &[NodeId] {
        &self.outputs
    }

    fn push(&mut self, node: Node) -> NodeId {
        // children must already exist: ids reference earlier entries only
        match &node {
            Node::Input(i) => assert!(*i < self.arity),
            Node::Sum(xs) | Node::Prod(xs) => {
                assert!(xs.iter().all(|&x| x < self.nodes.len()))
            }
            Node::Pow(x, _) => assert!(*x < self.nodes.len()),
            Node::Const(_) => {}
        }
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn input(&mut self, i: usize) -> NodeId {
        self.push(Node::Input(i))
    }

    pub fn constant(&mut self, s: Scalar) -> NodeId {
        self.push(Node::Const(s))
    }

    pub fn int(&mut self, x: i64) -> NodeId {
        self.constant(Scalar::Int(x))
    }

    pub fn sum(&mut self, xs: Vec<NodeId>) -> NodeId {
        self.push(Node::Sum(xs))
    }

    pub fn prod(&mut self, xs: Vec<NodeId>) -> NodeId {
        self.push(Node::Prod(xs))
    }

    pub fn pow(&mut self, x: NodeId, e: u64) -> NodeId {
        self.push(Node::Pow(x, e))
    }

    /// a - b as Sum(a, (-1)*b).
    pub fn diff(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let m1 = self.int(-1);
        let nb = self.prod(vec![m1, b]);
        self.sum(vec![a, nb])
    }

    pub fn set_outputs(&mut self, outs: Vec<NodeId>, degrees: Vec<Option<u64>>) {
        assert_eq!(outs.len(), degrees.len());
        assert!(outs.iter().all(|&o| o < self.nodes.len()));
        self.outputs = outs;
        self.degrees = degrees;
    }

    /// Degree common to all outputs, if declared and equal.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.degrees.iter();
        let first = (*it.next()?)?;
        for d in it {
            if *d != Some(first) {
                return None;
            }
        }
        Some(first)
    }

    /// True when every constant lifts to characteristic 0 (no raw F_p
    /// scalars), so nonzero evaluations certify characteristic-0 facts.
    pub fn char0_liftable(&self) -> bool {
        self.nodes.iter().all(|n| {
            !matches!(
                n,
                Node::Const(Scalar::Fp { .. })
            )
        })
    }

    /// Root-of-unity orders referenced by the graph.
    pub fn root_orders(&self) -> Vec<u64> {
        let mut orders: Vec<u64> = self
            .nodes
            .iter()
            .filter_map(|n| match n {
                Node::Const(Scalar::Root { order, .. }) => Some(*order),
                _ => None,
            })
            .collect();
        orders.sort_unstable();
        orders.dedup();
        orders
    }

    /// Content hash of the graph structure (nodes, outputs, degrees).
    pub fn content_hash(&self) -> String {
        #[derive(Serialize)]
        struct Content<'a> {
            arity: usize,
            nodes: &'a [Node],
            outputs: &'a [NodeId],
            degrees: &'a [Option<u64>],
        }
        let bytes = serde_json::to_vec(&Content {
            arity: self.arity,
            nodes: &self.nodes,
            outputs: &self.outputs,
            degrees: &self.degrees,
        })
        .expect("dag serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    fn node_values(&self, point: &[u64], ctx: &PrimeFieldCtx) -> Result<Vec<u64>, DagError> {
        if point.len() != self.arity {
            return Err(DagError::ArityMismatch(point.len(), self.arity));
        }
        let mut vals = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match node {
                Node::Input(i) => point[*i],
                Node::Const(s) => s.eval(ctx)?,
                Node::Sum(xs) => xs.iter().fold(0u64, |acc, &x| ctx.add(acc, vals[x])),
                Node::Prod(xs) => xs.iter().fold(1u64, |acc, &x| ctx.mul(acc, vals[x])),
                Node::Pow(x, e) => ctx.pow(vals[*x], *e),
            };
            vals.push(v);
        }
        Ok(vals)
    }

    /// Value of the map at a point, exact in F_p.
    pub fn evaluate(&self, point: &[u64], ctx: &PrimeFieldCtx) -> Result<Vec<u64>, DagError> {
        let vals = self.node_values(point, ctx)?;
        Ok(self.outputs.iter().map(|&o| vals[o]).collect())
    }

    /// One forward dual-number pass: values and d/dx_var at `point`.
    fn dual_pass(
        &self,
        point: &[u64],
        var: usize,
        ctx: &PrimeFieldCtx,
    ) -> Result<Vec<(u64, u64)>, DagError> {
        let mut vals: Vec<(u64, u64)> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match node {
                Node::Input(i) => (point[*i], u64::from(*i == var)),
                Node::Const(s) => (s.eval(ctx)?, 0),
                Node::Sum(xs) => xs.iter().fold((0u64, 0u64), |(a, da), &x| {
                    let (b, db) = vals[x];
                    (ctx.add(a, b), ctx.add(da, db))
                }),
                Node::Prod(xs) => xs.iter().fold((1u64, 0u64), |(a, da), &x| {
                    let (b, db) = vals[x];
                    (ctx.mul(a, b), ctx.add(ctx.mul(da, b), ctx.mul(a, db)))
                }),
                Node::Pow(x, e) => {
                    let (b, db) = vals[*x];
                    match *e {
                        0 => (1 % ctx.prime(), 0),
                        e => {
                            let be1 = ctx.pow(b, e - 1);
                            let em = ctx.from_i64(e as i64);
                            (ctx.mul(be1, b), ctx.mul(ctx.mul(em, be1), db))
                        }
                    }
                }
            };
            vals.push(v);
        }
        Ok(self.outputs.iter().map(|&o| vals[o]).collect())
    }

    /// Exact Jacobian (num_outputs × arity) at `point` by forward-mode
    /// dual-number propagation, one pass per input variable.
    pub fn jacobian_at(
        &self,
        point: &[u64],
        ctx: &PrimeFieldCtx,
    ) -> Result<Vec<Vec<u64>>, DagError> {
        if point.len() != self.arity {
            return Err(DagError::ArityMismatch(point.len(), self.arity));
        }
        let mut jac = vec![vec![0u64; self.arity]; self.outputs.len()];
        for var in 0..self.arity {
            let col = self.dual_pass(point, var, ctx)?;
            for (row, &(_, d)) in jac.iter_mut().zip(col.iter()) {
                row[var] = d;
            }
        }
        Ok(jac)
    }

    /// Expand every output into an explicit polynomial. Only for small
    /// graphs; `max_terms` bounds intermediate size.
    pub fn expand_symbolic(
        &self,
        ctx: Option<&PrimeFieldCtx>,
        max_terms: usize,
    ) -> Result<Vec<SparsePoly>, DagError> {
        let mk_const = |c: i128| -> SparsePoly {
            match ctx {
                None => SparsePoly::constant(self.arity, c),
                Some(cx) => {
                    let mut f = SparsePoly::zero_field(self.arity, cx.prime());
                    f.add_term(&vec![0; self.arity], c).expect("const");
                    f
                }
            }
        };
        let mut polys: Vec<SparsePoly> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let f = match node {
                Node::Input(i) => {
                    let mut e = vec![0u32; self.arity];
                    e[*i] = 1;
                    let mut f = mk_const(0);
                    f.add_term(&e, 1)?;
                    f
                }
                Node::Const(s) => match (s, ctx) {
                    (Scalar::Int(x), _) => mk_const(*x as i128),
                    (_, Some(cx)) => mk_const(s.eval(cx)? as i128),
                    (_, None) => return Err(DagError::ContextMismatch(0, 0)),
                },
                Node::Sum(xs) => {
                    let mut acc = mk_const(0);
                    for &x in xs {
                        acc = acc.add(&polys[x])?;
                    }
                    acc
                }
                Node::Prod(xs) => {
                    let mut acc = mk_const(1);
                    for &x in xs {
                        acc = acc.mul(&polys[x])?;
                    }
                    acc
                }
                Node::Pow(x, e) => polys[*x].pow(u32::try_from(*e).expect("small exponent"))?,
            };
            if f.num_terms() > max_terms {
                return Err(DagError::ExpansionTooLarge(f.num_terms()));
            }
            polys.push(f);
        }
        Ok(self.outputs.iter().map(|&o| polys[o].clone()).collect())
    }

    /// Build a map from explicit polynomials (one node tree per term).
    pub fn from_sparse_polys(polys: &[SparsePoly]) -> Self {
        assert!(!polys.is_empty());
        let arity = polys[0].nvars();
        let mut dag = Dag::new(arity);
        let inputs: Vec<NodeId> = (0..arity).map(|i| dag.input(i)).collect();
        let mut outs = Vec::new();
        let mut degs = Vec::new();
        for poly in polys {
            assert_eq!(poly.nvars(), arity);
            let mut terms = Vec::new();
            for (e, &c) in poly.terms() {
                let mut factors = vec![dag.int(i64::try_from(c).expect("small coefficient"))];
                for (i, &exp) in e.iter().enumerate() {
                    if exp == 1 {
                        factors.push(inputs[i]);
                    } else if exp > 1 {
                        let pw = dag.pow(inputs[i], exp as u64);
                        factors.push(pw);
                    }
                }
                terms.push(dag.prod(factors));
            }
            let out = if terms.is_empty() {
                dag.int(0)
            } else {
                dag.sum(terms)
            };
            outs.push(out);
            degs.push(poly.total_degree());
        }
        dag.set_outputs(outs, degs);
        dag
    }

    /// Append another map's nodes over the same input variables; returns
    /// the node ids of `other`'s outputs inside `self`.
    pub fn append_over_same_inputs(&mut self, other: &Dag) -> Result<Vec<NodeId>, DagError> {
        if other.arity != self.arity {
            return Err(DagError::ArityMismatch(other.arity, self.arity));
        }
        let offset = self.nodes.len();
        for node in &other.nodes {
            let mapped = match node {
                Node::Input(i) => Node::Input(*i),
                Node::Const(s) => Node::Const(*s),
                Node::Sum(xs) => Node::Sum(xs.iter().map(|&x| x + offset).collect()),
                Node::Prod(xs) => Node::Prod(xs.iter().map(|&x| x + offset).collect()),
                Node::Pow(x, e) => Node::Pow(x + offset, *e),
            };
            self.nodes.push(mapped);
        }
        Ok(other.outputs.iter().map(|&o| o + offset).collect())
    }

    /// The composition self ∘ inner: first `inner`, then `self`.
    pub fn compose(&self, inner: &Dag) -> Result<Dag, DagError> {
        if inner.num_outputs() != self.arity {
            return Err(DagError::ComposeMismatch(inner.num_outputs(), self.arity));
        }
        let mut out = Dag::new(inner.arity);
        out.nodes = inner.nodes.clone();
        // splice: rewire outer inputs to inner outputs
        let offset = inner.nodes.len();
        for node in &self.nodes {
            let mapped = match node {
                Node::Input(i) => {
                    // alias to the inner output node: emit a 1-ary sum
                    Node::Sum(vec![inner.outputs[*i]])
                }
                Node::Const(s) => Node::Const(*s),
                Node::Sum(xs) => Node::Sum(xs.iter().map(|&x| x + offset).collect()),
                Node::Prod(xs) => Node::Prod(xs.iter().map(|&x| x + offset).collect()),
                Node::Pow(x, e) => Node::Pow(x + offset, *e),
            };
            out.nodes.push(mapped);
        }
        let outs: Vec<NodeId> = self.outputs.iter().map(|&o| o + offset).collect();
        let degs: Vec<Option<u64>> = self
            .degrees
            .iter()
            .map(|d| match (d, inner.homogeneous_degree()) {
                (Some(a), Some(b)) => Some(a * b),
                _ => None,
            })
            .collect();
        out.set_outputs(outs, degs);
        Ok(out)
    }

    /// The identity map on `n` coordinates.
    pub fn identity(n: usize) -> Self {
        let mut dag = Dag::new(n);
        let outs: Vec<NodeId> = (0..n).map(|i| dag.input(i)).collect();
        dag.set_outputs(outs, vec![Some(1); n]);
        dag
    }
}

/// Compose an element's action from generator actions along a BFS word
/// (generator indices, leftmost factor first): act(g_a1 · g_a2 · …) =
/// act(g_a1) ∘ act(g_a2) ∘ ….
pub fn compose_actions(
    word: &[usize],
    gens: &[GenAction],
    dim: usize,
    ctx: &PrimeFieldCtx,
) -> Result<GenAction, DagError> {
    // start from the identity permutation; upgrade to matrices on demand
    let mut acc = GenAction::Perm((0..dim).collect());
    for &g in word {
        acc = compose_two(&acc, &gens[g], dim, ctx)?;
    }
    Ok(acc)
}

/// The action "first b, then a".
fn compose_two(
    a: &GenAction,
    b: &GenAction,
    dim: usize,
    ctx: &PrimeFieldCtx,
) -> Result<GenAction, DagError> {
    match (a, b) {
        (GenAction::Perm(pa), GenAction::Perm(pb)) => {
            // (a∘b)(y)_k = (b y)_{pa[k]} = y_{pb[pa[k]]}
            Ok(GenAction::Perm(pa.iter().map(|&k| pb[k]).collect()))
        }
        _ => {
            let ma = to_matrix(a, dim, ctx)?;
            let mb = to_matrix(b, dim, ctx)?;
            let rows = (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| {
                            (0..dim).fold(0u64, |acc, k| {
                                ctx.add(acc, ctx.mul(ma[i][k], mb[k][j]))
                            })
                        })
                        .collect()
                })
                .collect();
            Ok(GenAction::Mat {
                p: ctx.prime(),
                n: dim,
                rows,
            })
        }
    }
}

fn to_matrix(a: &GenAction, dim: usize, ctx: &PrimeFieldCtx) -> Result<Vec<Vec<u64>>, DagError> {
    match a {
        GenAction::Mat { p, rows, .. } => {
            if *p != ctx.prime() {
                return Err(DagError::ContextMismatch(*p, ctx.prime()));
            }
            Ok(rows.clone())
        }
        GenAction::Perm(perm) => {
            let mut rows = vec![vec![0u64; dim]; dim];
            for (k, &src) in perm.iter().enumerate() {
                rows[k][src] = 1;
            }
            Ok(rows)
        }
    }
}
