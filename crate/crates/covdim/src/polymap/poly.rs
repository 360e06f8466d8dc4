//! Sparse multivariate polynomials with exact coefficients.
//!
//! A polynomial is either *symbolic* (signed integer coefficients, the
//! characteristic-0 model used for exact kernel and identity tests) or
//! *field mode* (coefficients reduced mod a fixed prime). Mixing modes is an
//! error, not a coercion.

use super::fp;
use super::PrimeFieldCtx;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("mode mismatch: canonical comparison requires symbolic mode on both sides")]
    ModeMismatch,
    #[error("coefficient overflow in symbolic arithmetic")]
    Overflow,
    #[error("field-mode polynomial bound to prime {0}, used with prime {1}")]
    WrongPrime(u64, u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyMode {
    Symbolic,
    Field(u64),
}

/// Exponent-vector → coefficient map; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    nvars: usize,
    mode: PolyMode,
    terms: BTreeMap<Vec<u32>, i128>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            mode: PolyMode::Symbolic,
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_field(nvars: usize, p: u64) -> Self {
        SparsePoly {
            nvars,
            mode: PolyMode::Field(p),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i128) -> Self {
        let mut poly = Self::zero(nvars);
        poly.add_term(&vec![0; nvars], c).expect("constant");
        poly
    }

    /// The monomial x_i.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0u32; nvars];
        e[i] = 1;
        let mut poly = Self::zero(nvars);
        poly.add_term(&e, 1).expect("var");
        poly
    }

    pub fn monomial(nvars: usize, exps: &[u32], coeff: i128) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut poly = Self::zero(nvars);
        poly.add_term(exps, coeff).expect("monomial");
        poly
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn mode(&self) -> PolyMode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &i128)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u64).sum())
            .max()
    }

    fn reduce(&self, c: i128) -> i128 {
        match self.mode {
            PolyMode::Symbolic => c,
            PolyMode::Field(p) => fp::from_i128(c, p) as i128,
        }
    }

    pub fn add_term(&mut self, exps: &[u32], coeff: i128) -> Result<(), PolyError> {
        if exps.len() != self.nvars {
            return Err(PolyError::ArityMismatch(exps.len(), self.nvars));
        }
        let c = self.reduce(coeff);
        if c == 0 {
            return Ok(());
        }
        match self.terms.get_mut(exps) {
            Some(existing) => {
                let sum = existing.checked_add(c).ok_or(PolyError::Overflow)?;
                let sum = self.reduce(sum);
                if sum == 0 {
                    self.terms.remove(exps);
                } else {
                    *self.terms.get_mut(exps).unwrap() = sum;
                }
            }
            None => {
                self.terms.insert(exps.to_vec(), c);
            }
        }
        Ok(())
    }

    fn check_compat(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch(self.nvars, other.nvars));
        }
        if self.mode != other.mode {
            return Err(PolyError::ModeMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e, c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -*c;
        }
        if let PolyMode::Field(p) = out.mode {
            for c in out.terms.values_mut() {
                *c = fp::from_i128(*c, p) as i128;
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compat(other)?;
        let mut out = SparsePoly {
            nvars: self.nvars,
            mode: self.mode,
            terms: BTreeMap::new(),
        };
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = ca.checked_mul(cb).ok_or(PolyError::Overflow)?;
                out.add_term(&e, c)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self, PolyError> {
        let mut out = match self.mode {
            PolyMode::Symbolic => Self::constant(self.nvars, 1),
            PolyMode::Field(p) => {
                let mut one = Self::zero_field(self.nvars, p);
                one.add_term(&vec![0; self.nvars], 1)?;
                one
            }
        };
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Result<Self, PolyError> {
        assert!(i < self.nvars);
        let mut out = SparsePoly {
            nvars: self.nvars,
            mode: self.mode,
            terms: BTreeMap::new(),
        };
        for (e, &c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            let c2 = c.checked_mul(e[i] as i128).ok_or(PolyError::Overflow)?;
            out.add_term(&e2, c2)?;
        }
        Ok(out)
    }

    /// Evaluate at a point in F_p; valid for symbolic polynomials (reduced
    /// mod p) and for field polynomials bound to the same prime.
    pub fn eval(&self, point: &[u64], ctx: &PrimeFieldCtx) -> Result<u64, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::ArityMismatch(point.len(), self.nvars));
        }
        if let PolyMode::Field(p) = self.mode {
            if p != ctx.prime() {
                return Err(PolyError::WrongPrime(p, ctx.prime()));
            }
        }
        let mut acc = 0u64;
        for (e, &c) in &self.terms {
            let mut t = ctx.from_i128(c);
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    t = ctx.mul(t, ctx.pow(point[i], exp as u64));
                }
            }
            acc = ctx.add(acc, t);
        }
        Ok(acc)
    }

    /// Exact symbolic evaluation at an integer point.
    pub fn eval_symbolic(&self, point: &[i128]) -> Result<i128, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::ArityMismatch(point.len(), self.nvars));
        }
        let mut acc: i128 = 0;
        for (e, &c) in &self.terms {
            let mut t = c;
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    t = t.checked_mul(point[i]).ok_or(PolyError::Overflow)?;
                }
            }
            acc = acc.checked_add(t).ok_or(PolyError::Overflow)?;
        }
        Ok(acc)
    }

    /// Apply a permutation of the variables: x_i ↦ x_{sigma[i]}.
    pub fn permute_vars(&self, sigma: &[usize]) -> Self {
        assert_eq!(sigma.len(), self.nvars);
        let mut out = SparsePoly {
            nvars: self.nvars,
            mode: self.mode,
            terms: BTreeMap::new(),
        };
        for (e, &c) in &self.terms {
            let mut e2 = vec![0u32; self.nvars];
            for (i, &exp) in e.iter().enumerate() {
                e2[sigma[i]] = exp;
            }
            out.add_term(&e2, c).expect("permute");
        }
        out
    }

    /// Substitute x_i ↦ Σ_j m[i][j]·x_j (field mode; entries of `m` in F_p).
    pub fn substitute_linear(
        &self,
        m: &[Vec<u64>],
        ctx: &PrimeFieldCtx,
    ) -> Result<Self, PolyError> {
        assert_eq!(m.len(), self.nvars);
        let p = ctx.prime();
        if let PolyMode::Field(q) = self.mode {
            if q != p {
                return Err(PolyError::WrongPrime(q, p));
            }
        }
        let forms: Vec<SparsePoly> = (0..self.nvars)
            .map(|i| {
                let mut f = Self::zero_field(self.nvars, p);
                for (j, &a) in m[i].iter().enumerate() {
                    let mut e = vec![0u32; self.nvars];
                    e[j] = 1;
                    f.add_term(&e, a as i128).expect("form");
                }
                f
            })
            .collect();
        let mut out = Self::zero_field(self.nvars, p);
        for (e, &c) in &self.terms {
            let mut t = Self::zero_field(self.nvars, p);
            t.add_term(&vec![0; self.nvars], fp::from_i128(c, p) as i128)?;
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    t = t.mul(&forms[i].pow(exp)?)?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Reduce a symbolic polynomial mod p into field mode.
    pub fn to_field(&self, ctx: &PrimeFieldCtx) -> Result<Self, PolyError> {
        match self.mode {
            PolyMode::Field(q) if q == ctx.prime() => Ok(self.clone()),
            PolyMode::Field(q) => Err(PolyError::WrongPrime(q, ctx.prime())),
            PolyMode::Symbolic => {
                let mut out = Self::zero_field(self.nvars, ctx.prime());
                for (e, &c) in &self.terms {
                    out.add_term(e, c)?;
                }
                Ok(out)
            }
        }
    }
}

/// True iff `f` and `g` are identical polynomials (symbolic mode only).
pub fn poly_canonical_equal(f: &SparsePoly, g: &SparsePoly) -> Result<bool, PolyError> {
    if f.nvars != g.nvars {
        return Err(PolyError::ArityMismatch(f.nvars, g.nvars));
    }
    if f.mode != PolyMode::Symbolic || g.mode != PolyMode::Symbolic {
        return Err(PolyError::ModeMismatch);
    }
    Ok(f.terms == g.terms)
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(w, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(w, " + ")?;
            }
            first = false;
            write!(w, "{c}")?;
            for (i, &exp) in e.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => write!(w, "*x{}", i + 1)?,
                    _ => write!(w, "*x{}^{}", i + 1, exp)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> SparsePoly {
        SparsePoly::var(n, i)
    }

    #[test]
    fn canonical_equality() {
        let n = 2;
        // (x1 - x2) vs -(x2 - x1)
        let d = x(n, 0).sub(&x(n, 1)).unwrap();
        let d2 = x(n, 1).sub(&x(n, 0)).unwrap().neg();
        assert!(poly_canonical_equal(&d, &d2).unwrap());
        // x1*x2 vs x2*x1
        let a = x(n, 0).mul(&x(n, 1)).unwrap();
        let b = x(n, 1).mul(&x(n, 0)).unwrap();
        assert!(poly_canonical_equal(&a, &b).unwrap());
        // (x1-x2)^2 vs x1^2 - 2 x1 x2 + x2^2
        let sq = d.pow(2).unwrap();
        let mut expanded = SparsePoly::zero(n);
        expanded.add_term(&[2, 0], 1).unwrap();
        expanded.add_term(&[1, 1], -2).unwrap();
        expanded.add_term(&[0, 2], 1).unwrap();
        assert!(poly_canonical_equal(&sq, &expanded).unwrap());
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let ctx = PrimeFieldCtx::from_prime(101).unwrap();
        let f = x(1, 0);
        let g = f.to_field(&ctx).unwrap();
        assert_eq!(
            poly_canonical_equal(&f, &g).unwrap_err(),
            PolyError::ModeMismatch
        );
    }

    #[test]
    fn derivative_and_eval() {
        let ctx = PrimeFieldCtx::from_prime(101).unwrap();
        // f = x^2, f'(3) = 6
        let f = x(1, 0).pow(2).unwrap();
        let df = f.derivative(0).unwrap();
        assert_eq!(df.eval(&[3], &ctx).unwrap(), 6);
        // cancellation removes terms
        let z = f.sub(&f).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn reduction_commutes_with_evaluation() {
        // h(v) mod p = (h mod p)(v mod p): the soundness kernel.
        let ctx = PrimeFieldCtx::from_prime(1009).unwrap();
        let n = 3;
        let h = x(n, 0)
            .mul(&x(n, 1))
            .unwrap()
            .sub(&x(n, 2).pow(3).unwrap())
            .unwrap()
            .add(&SparsePoly::constant(n, -7))
            .unwrap();
        for (a, b, c) in [(0i128, 1, 2), (-5, 9, -3), (8, -8, 1)] {
            let exact = h.eval_symbolic(&[a, b, c]).unwrap();
            let reduced = h
                .eval(
                    &[ctx.from_i128(a), ctx.from_i128(b), ctx.from_i128(c)],
                    &ctx,
                )
                .unwrap();
            assert_eq!(ctx.from_i128(exact), reduced);
        }
    }

    #[test]
    fn permute_and_substitute() {
        let ctx = PrimeFieldCtx::from_prime(101).unwrap();
        let n = 2;
        let f = x(n, 0).pow(2).unwrap(); // x1^2
        let g = f.permute_vars(&[1, 0]); // x2^2
        assert_eq!(g.eval(&[5, 3], &ctx).unwrap(), 9);
        // substitute x1 -> x1 + x2, x2 -> x2 into x1^2
        let m = vec![vec![1u64, 1], vec![0, 1]];
        let s = f.to_field(&ctx).unwrap().substitute_linear(&m, &ctx).unwrap();
        assert_eq!(s.eval(&[2, 3], &ctx).unwrap(), 25);
    }
}
