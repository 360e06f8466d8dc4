//! Monomials in the differences (x_i - x_j), i < j: exponent maps on the
//! edges of K_n, equivalently multigraphs on n labeled vertices.
//!
//! Monomials are taken up to overall sign; edges are always stored with
//! i < j and a permutation acting on one tracks the sign picked up from
//! reversed differences.

use super::CovariantError;
use crate::groups::Permutation;
use crate::polymap::SparsePoly;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// f = ∏_{i<j} (x_i - x_j)^{α_ij} with α_ij ≥ 1 on the stored edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DifferenceMonomial {
    n: usize,
    exponents: BTreeMap<(usize, usize), u32>,
}

impl DifferenceMonomial {
    pub fn new(n: usize, edges: &[((usize, usize), u32)]) -> Result<Self, CovariantError> {
        let mut exponents = BTreeMap::new();
        for &((a, b), e) in edges {
            if a == b || a >= n || b >= n {
                return Err(CovariantError::BadEdge { a, b, n });
            }
            if e == 0 {
                continue;
            }
            let key = (a.min(b), a.max(b));
            *exponents.entry(key).or_insert(0) += e;
        }
        if exponents.is_empty() {
            return Err(CovariantError::EmptyMonomial);
        }
        Ok(DifferenceMonomial { n, exponents })
    }

    /// Parse the CLI literal: 1-based edges, comma separated, repeated edge
    /// raises the exponent. Example: `"1-2,2-3,3-4,4-5,5-1"`.
    pub fn parse(n: usize, literal: &str) -> Result<Self, CovariantError> {
        let mut edges = Vec::new();
        for tok in literal.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let (a, b) = tok
                .split_once('-')
                .ok_or_else(|| CovariantError::BadLiteral(tok.to_string()))?;
            let a: usize = a
                .trim()
                .parse()
                .map_err(|_| CovariantError::BadLiteral(tok.to_string()))?;
            let b: usize = b
                .trim()
                .parse()
                .map_err(|_| CovariantError::BadLiteral(tok.to_string()))?;
            if a == 0 || b == 0 || a > n || b > n {
                return Err(CovariantError::BadLiteral(tok.to_string()));
            }
            edges.push(((a - 1, b - 1), 1));
        }
        Self::new(n, &edges)
    }

    /// The perfect-matching monomial (x_1-x_2)(x_3-x_4)…(x_{n-1}-x_n).
    pub fn pairing(n: usize) -> Result<Self, CovariantError> {
        if n < 2 || n % 2 != 0 {
            return Err(CovariantError::BadLiteral(format!(
                "pairing monomial needs even n, got {n}"
            )));
        }
        let edges: Vec<_> = (0..n / 2).map(|k| ((2 * k, 2 * k + 1), 1)).collect();
        Self::new(n, &edges)
    }

    /// The cycle monomial (x_1-x_2)(x_2-x_3)…(x_n-x_1), up to sign.
    pub fn cycle(n: usize) -> Result<Self, CovariantError> {
        if n < 3 {
            return Err(CovariantError::BadLiteral(format!(
                "cycle monomial needs n >= 3, got {n}"
            )));
        }
        let edges: Vec<_> = (0..n).map(|k| ((k, (k + 1) % n), 1)).collect();
        Self::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (&(usize, usize), &u32)> {
        self.exponents.iter()
    }

    pub fn total_degree(&self) -> u64 {
        self.exponents.values().map(|&e| e as u64).sum()
    }

    /// Number of occurrences of index k across all edges.
    pub fn occurrences(&self, k: usize) -> u64 {
        self.exponents
            .iter()
            .filter(|(&(a, b), _)| a == k || b == k)
            .map(|(_, &e)| e as u64)
            .sum()
    }

    /// Apply a permutation to the vertex labels; returns the relabeled
    /// monomial and the sign (-1)^{Σ exponents of reversed edges}.
    pub fn act(&self, sigma: &Permutation) -> (DifferenceMonomial, i8) {
        assert_eq!(sigma.degree(), self.n);
        let mut exponents = BTreeMap::new();
        let mut sign = 1i8;
        for (&(a, b), &e) in &self.exponents {
            let (sa, sb) = (sigma.apply(a), sigma.apply(b));
            if sa > sb && e % 2 == 1 {
                sign = -sign;
            }
            exponents.insert((sa.min(sb), sa.max(sb)), e);
        }
        (
            DifferenceMonomial {
                n: self.n,
                exponents,
            },
            sign,
        )
    }

    /// Expand into an explicit integer-coefficient polynomial.
    pub fn expand(&self) -> SparsePoly {
        let mut acc = SparsePoly::constant(self.n, 1);
        for (&(a, b), &e) in &self.exponents {
            let d = SparsePoly::var(self.n, a)
                .sub(&SparsePoly::var(self.n, b))
                .expect("same arity");
            acc = acc.mul(&d.pow(e).expect("small")).expect("same arity");
        }
        acc
    }

    /// CLI literal form (1-based, exponents as repeats).
    pub fn literal(&self) -> String {
        let mut parts = Vec::new();
        for (&(a, b), &e) in &self.exponents {
            for _ in 0..e {
                parts.push(format!("{}-{}", a + 1, b + 1));
            }
        }
        parts.join(",")
    }
}

impl fmt::Display for DifferenceMonomial {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(a, b), &e) in &self.exponents {
            write!(w, "(x{}-x{})", a + 1, b + 1)?;
            if e > 1 {
                write!(w, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// The occurrence count t when every index occurs exactly t times
/// (total degree is then n·t/2), or the first offending index pair.
pub fn balanced_check(m: &DifferenceMonomial) -> Result<u32, CovariantError> {
    let t0 = m.occurrences(0);
    for k in 1..m.n() {
        let tk = m.occurrences(k);
        if tk != t0 {
            return Err(CovariantError::Unbalanced {
                index_a: 0,
                count_a: t0,
                index_b: k,
                count_b: tk,
            });
        }
    }
    Ok(u32::try_from(t0).expect("occurrence count fits"))
}

/// True iff σf = f as a polynomial (sign included) for every σ in S_n,
/// checked on the generator set {(0 1), (0 1 … n-1)}.
pub fn is_sn_invariant(m: &DifferenceMonomial) -> bool {
    let n = m.n();
    if n < 2 {
        return true;
    }
    let mut gens = vec![Permutation::from_cycles(n, &[vec![0, 1]]).unwrap()];
    if n > 2 {
        gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
    }
    gens.iter().all(|g| {
        let (image, sign) = m.act(g);
        sign == 1 && image == *m
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymap::poly::poly_canonical_equal;

    #[test]
    fn balanced_examples() {
        let pairing = DifferenceMonomial::pairing(4).unwrap();
        assert_eq!(balanced_check(&pairing).unwrap(), 1);
        assert_eq!(pairing.total_degree(), 2);

        let cycle5 = DifferenceMonomial::cycle(5).unwrap();
        assert_eq!(balanced_check(&cycle5).unwrap(), 2);
        assert_eq!(cycle5.total_degree(), 5);

        let single = DifferenceMonomial::new(3, &[((0, 1), 1)]).unwrap();
        let err = balanced_check(&single).unwrap_err();
        assert!(matches!(
            err,
            CovariantError::Unbalanced { index_b: 2, count_b: 0, .. }
        ));
    }

    #[test]
    fn invariance() {
        // n=2: (x1-x2)^2 is invariant, (x1-x2) is not
        let sq = DifferenceMonomial::new(2, &[((0, 1), 2)]).unwrap();
        assert!(is_sn_invariant(&sq));
        let lin = DifferenceMonomial::new(2, &[((0, 1), 1)]).unwrap();
        assert!(!is_sn_invariant(&lin));
        // n=4 pairing is not invariant: the 4-cycle moves it
        let pairing = DifferenceMonomial::pairing(4).unwrap();
        assert!(!is_sn_invariant(&pairing));
        // Vandermonde squared is invariant
        let n = 4;
        let edges: Vec<_> = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| ((a, b), 2)))
            .collect();
        let delta2 = DifferenceMonomial::new(n, &edges).unwrap();
        assert!(is_sn_invariant(&delta2));
    }

    #[test]
    fn invariance_matches_symbolic_orbit() {
        // cross-check the signed edge-map action against expansion
        let cases = [
            DifferenceMonomial::pairing(4).unwrap(),
            DifferenceMonomial::cycle(4).unwrap(),
            DifferenceMonomial::cycle(5).unwrap(),
            DifferenceMonomial::new(2, &[((0, 1), 2)]).unwrap(),
        ];
        for m in cases {
            let n = m.n();
            let f = m.expand();
            let mut gens = vec![Permutation::from_cycles(n, &[vec![0, 1]]).unwrap()];
            if n > 2 {
                gens.push(Permutation::from_cycles(n, &[(0..n).collect()]).unwrap());
            }
            let symbolic = gens.iter().all(|g| {
                // σf(x) = f(σ^{-1} x): substitute x_i -> x_{σ(i)}
                let sf = f.permute_vars(g.images());
                poly_canonical_equal(&sf, &f).unwrap()
            });
            assert_eq!(is_sn_invariant(&m), symbolic, "monomial {m}");
        }
    }

    #[test]
    fn action_tracks_signs() {
        let m = DifferenceMonomial::new(2, &[((0, 1), 1)]).unwrap();
        let swap = Permutation::from_cycles(2, &[vec![0, 1]]).unwrap();
        let (image, sign) = m.act(&swap);
        assert_eq!(image, m);
        assert_eq!(sign, -1);
        // and the signed action agrees with polynomial substitution
        let f = m.expand();
        let sf = f.permute_vars(swap.images());
        assert!(poly_canonical_equal(&sf, &f.neg()).unwrap());
    }

    #[test]
    fn parse_literals() {
        let m = DifferenceMonomial::parse(5, "1-2,2-3,3-4,4-5,5-1").unwrap();
        assert_eq!(m, DifferenceMonomial::cycle(5).unwrap());
        let doubled = DifferenceMonomial::parse(2, "1-2,1-2").unwrap();
        assert_eq!(doubled, DifferenceMonomial::new(2, &[((0, 1), 2)]).unwrap());
        assert_eq!(DifferenceMonomial::parse(4, doubled.literal().as_str()).is_ok(), true);
        assert!(DifferenceMonomial::parse(4, "0-2").is_err());
        assert!(DifferenceMonomial::parse(4, "1-5").is_err());
        assert!(DifferenceMonomial::parse(4, "1=2").is_err());
        assert!(DifferenceMonomial::parse(4, "1-1").is_err());
    }
}
