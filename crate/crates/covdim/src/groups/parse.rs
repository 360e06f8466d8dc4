//! The group-definition text format.
//!
//! One generator per line, `#` starts a comment:
//!
//! ```text
//! # S4
//! perm: (0 1)
//! perm: (0 1 2 3)
//! ```
//!
//! or, for matrix generators over a prime field:
//!
//! ```text
//! mat p=101: [[0,1],[100,0]]
//! mat p=101: [[10,0],[0,91]]
//! ```

use super::{Element, FiniteGroup, GroupError, Mat, Permutation};

pub fn parse_group_text(text: &str, cap: usize) -> Result<FiniteGroup, GroupError> {
    let mut perm_cycles: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut mats: Vec<(u64, Vec<Vec<u64>>)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| GroupError::Parse(format!("line {}: {msg}", lineno + 1));
        if let Some(rest) = line.strip_prefix("perm:") {
            perm_cycles.push(parse_raw_cycles(rest.trim()).map_err(err)?);
        } else if let Some(rest) = line.strip_prefix("mat") {
            let rest = rest.trim();
            let rest = rest
                .strip_prefix("p=")
                .ok_or_else(|| err("expected `mat p=<prime>: ...`".into()))?;
            let colon = rest
                .find(':')
                .ok_or_else(|| err("expected `:` after prime".into()))?;
            let p: u64 = rest[..colon]
                .trim()
                .parse()
                .map_err(|e| err(format!("bad prime: {e}")))?;
            if !crate::polymap::fp::is_prime(p) {
                return Err(err(format!("{p} is not prime")));
            }
            let rows = parse_matrix_literal(rest[colon + 1..].trim(), p).map_err(err)?;
            mats.push((p, rows));
        } else {
            return Err(err(format!("unrecognized generator line: {line:?}")));
        }
    }
    match (perm_cycles.is_empty(), mats.is_empty()) {
        (false, false) => Err(GroupError::MixedGenerators),
        (true, true) => FiniteGroup::from_perm_gens(1, vec![], cap),
        (false, true) => {
            let degree = perm_cycles
                .iter()
                .flatten()
                .flatten()
                .copied()
                .max()
                .map_or(1, |m| m + 1);
            let gens = perm_cycles
                .iter()
                .map(|cycles| {
                    Permutation::from_cycles(degree, cycles).map_err(GroupError::Parse)
                })
                .collect::<Result<Vec<_>, _>>()?;
            FiniteGroup::from_perm_gens(degree, gens, cap)
        }
        (true, false) => {
            let p0 = mats[0].0;
            let n0 = mats[0].1.len();
            if mats.iter().any(|(p, rows)| *p != p0 || rows.len() != n0) {
                return Err(GroupError::MixedGenerators);
            }
            let gens: Vec<Element> = mats
                .into_iter()
                .map(|(p, rows)| Element::Mat(Mat::from_rows(p, &rows)))
                .collect();
            FiniteGroup::generate(gens, None, cap)
        }
    }
}

fn parse_raw_cycles(s: &str) -> Result<Vec<Vec<usize>>, String> {
    if s == "()" || s.is_empty() {
        return Ok(vec![]);
    }
    let mut cycles = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest.find('(').ok_or(format!("expected '(' in {s:?}"))?;
        if !rest[..open].trim().is_empty() {
            return Err(format!("unexpected text in {s:?}"));
        }
        let close = rest.find(')').ok_or(format!("unbalanced parenthesis in {s:?}"))?;
        let points: Vec<usize> = rest[open + 1..close]
            .split([' ', ','])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|e| format!("bad point {t:?}: {e}")))
            .collect::<Result<_, _>>()?;
        if points.len() == 1 {
            return Err(format!("singleton cycle in {s:?}"));
        }
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(cycles)
}

fn parse_matrix_literal(s: &str, p: u64) -> Result<Vec<Vec<u64>>, String> {
    // [[a,b],[c,d]] with integer entries; negatives are reduced mod p
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or(format!("expected [[..],[..]] matrix literal, got {s:?}"))?;
    let mut rows = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let open = rest.find('[').ok_or("expected '[' starting a row")?;
        let close = rest.find(']').ok_or("unbalanced ']' in matrix literal")?;
        let row: Vec<u64> = rest[open + 1..close]
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map(|x| crate::polymap::fp::from_i64(x, p))
                    .map_err(|e| format!("bad entry {t:?}: {e}"))
            })
            .collect::<Result<_, _>>()?;
        rows.push(row);
        rest = rest[close + 1..].trim_start_matches([',', ' ']);
    }
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err("matrix must be square and nonempty".into());
    }
    Ok(rows)
}
