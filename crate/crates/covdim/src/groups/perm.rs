//! Permutations on {0, …, n-1} with cycle-notation parsing and printing.

use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Build from the image table; must be a bijection on {0,…,n-1}.
    pub fn new(images: Vec<usize>) -> Result<Self, String> {
        let n = images.len();
        if n == 0 {
            return Err("permutation degree must be at least 1".into());
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(format!("image table {images:?} is not a bijection"));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Build from disjoint-or-not cycles on {0,…,n-1}; later cycles apply first.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, String> {
        let mut perm = Permutation::identity(n);
        for cycle in cycles.iter().rev() {
            let mut images: Vec<usize> = (0..n).collect();
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a >= n || b >= n {
                    return Err(format!("cycle point out of range for degree {n}"));
                }
                images[a] = b;
            }
            perm = Permutation::new(images)?.compose(&perm);
        }
        Ok(perm)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// self ∘ other: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        let mut transpositions = 0;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(w, "()");
        }
        for cycle in cycles {
            write!(w, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(w, " ")?;
                }
                write!(w, "{x}")?;
            }
            write!(w, ")")?;
        }
        Ok(())
    }
}

/// Parse cycle notation like `(0 1)(2 3)` or `()`; points are 0-based.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Permutation, String> {
    let s = s.trim();
    if s == "()" || s.is_empty() {
        return Ok(Permutation::identity(degree));
    }
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| format!("expected '(' in cycle notation: {s:?}"))?;
        if !rest[..open].trim().is_empty() {
            return Err(format!("unexpected text in cycle notation: {s:?}"));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| format!("unbalanced parenthesis in {s:?}"))?;
        let inner = &rest[open + 1..close];
        let points: Vec<usize> = inner
            .split([' ', ','])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|e| format!("bad point {t:?}: {e}")))
            .collect::<Result<_, _>>()?;
        if points.len() >= 2 {
            cycles.push(points);
        } else if points.len() == 1 {
            return Err(format!("singleton cycle in {s:?}"));
        }
        rest = &rest[close + 1..];
    }
    Permutation::from_cycles(degree, &cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_invert() {
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        // a∘b: apply b first: 0 -> 1 -> 0, 1 -> 2 -> 2, 2 -> 0 -> 1
        assert_eq!(a.compose(&b).images(), &[0, 2, 1]);
        assert!(b.compose(&b.inverse()).is_identity());
        assert!(!a.is_even());
        assert!(b.is_even());
    }

    #[test]
    fn parse_and_print() {
        let p = parse_cycles("(0 1)(2 3)", 4).unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 2]);
        assert_eq!(p.to_string(), "(0 1)(2 3)");
        assert!(parse_cycles("()", 4).unwrap().is_identity());
        assert!(parse_cycles("(0 9)", 4).is_err());
        assert!(parse_cycles("(0)", 4).is_err());
        // non-disjoint cycles apply right-to-left
        let q = parse_cycles("(0 1)(1 2)", 3).unwrap();
        assert_eq!(q.images(), &[1, 2, 0]);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![]).is_err());
    }
}
