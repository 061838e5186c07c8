//! Positive roots up to a height cutoff, with multiplicities from the
//! Peterson recursion
//!
//! `(β, β − 2ρ) c_β = Σ_{β'+β''=β} (β', β'') c_β' c_β''`, where
//! `c_β = Σ_{k ≥ 1} m_{β/k} / k`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::datum::RootDatum;
use crate::error::{Error, Result};
use crate::gcm::GeneralizedCartanMatrix;

pub fn height(x: &[i64]) -> i64 {
    x.iter().sum()
}

/// An element of the root lattice in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn height(&self) -> i64 {
        height(&self.0)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    pub mult: i64,
    pub real: bool,
}

/// A JSON row of the root table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRow {
    pub coords: Vec<i64>,
    pub height: i64,
    pub mult: i64,
    pub real: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootTable {
    depth: usize,
    rank: usize,
    // keyed by (height, coords) so iteration runs by height then lex
    entries: BTreeMap<(i64, Vec<i64>), RootEntry>,
}

/// All non-zero `x ∈ N^n` with `height(x) = h`, in lexicographic order.
pub fn vectors_of_height(n: usize, h: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for c in 0..=left {
            cur.push(c);
            rec(n, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 || h < 0 {
        return out;
    }
    rec(n, h, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Every `y ∈ N^n` with `0 ≤ y ≤ x` componentwise.
pub fn box_below(x: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(x.len())];
    for &c in x {
        let mut next = Vec::with_capacity(out.len() * (c as usize + 1));
        for v in &out {
            for k in 0..=c {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn enumerate_roots(datum: &RootDatum, depth: usize) -> Result<RootTable> {
    let d = datum.symmetrizer()?;
    let n = datum.n();
    let zero = Rational64::from_integer(0);
    let mut c: HashMap<Vec<i64>, Rational64> = HashMap::new();
    let mut m: HashMap<Vec<i64>, i64> = HashMap::new();
    let mut entries = BTreeMap::new();
    for h in 1..=depth as i64 {
        for beta in vectors_of_height(n, h) {
            // Möbius part: Σ_{k ≥ 2} m_{β/k} / k
            let mut divisor_part = zero;
            for k in 2..=h {
                if beta.iter().all(|&x| x % k == 0) {
                    let q: Vec<i64> = beta.iter().map(|&x| x / k).collect();
                    if let Some(&mq) = m.get(&q) {
                        divisor_part += Rational64::new(mq, k);
                    }
                }
            }
            let mult = if h == 1 {
                c.insert(beta.clone(), Rational64::from_integer(1));
                1
            } else {
                let mut rhs = zero;
                for b1 in box_below(&beta) {
                    let h1 = height(&b1);
                    if h1 == 0 || h1 == h {
                        continue;
                    }
                    let (Some(&c1), b2) = (c.get(&b1), sub(&beta, &b1)) else { continue };
                    let Some(&c2) = c.get(&b2) else { continue };
                    if c1 == zero || c2 == zero {
                        continue;
                    }
                    let f = datum.bilinear_form(&b1, &b2)?;
                    rhs += c1 * c2 * f;
                }
                let rho_part: i64 = (0..n).map(|i| beta[i] * d.get(i)).sum();
                let lhs = datum.bilinear_form(&beta, &beta)? - 2 * rho_part;
                let cb = if lhs == 0 {
                    // happens only off the root set (or at simple roots)
                    if rhs != zero {
                        return Err(Error::Internal(format!(
                            "Peterson recursion: zero coefficient with non-zero sum at {beta:?}"
                        )));
                    }
                    divisor_part
                } else {
                    rhs / lhs
                };
                c.insert(beta.clone(), cb);
                let mb = cb - divisor_part;
                if !mb.is_integer() || mb < zero {
                    return Err(Error::Internal(format!(
                        "Peterson recursion produced multiplicity {mb} at {beta:?}"
                    )));
                }
                mb.to_integer()
            };
            if mult > 0 {
                m.insert(beta.clone(), mult);
                let real = datum.bilinear_form(&beta, &beta)? > 0;
                if real && mult != 1 {
                    return Err(Error::Internal(format!("real root {beta:?} has multiplicity {mult}")));
                }
                entries.insert((h, beta), RootEntry { mult, real });
            }
        }
    }
    Ok(RootTable { depth, rank: n, entries })
}

impl RootTable {
    pub fn depth(&self) -> usize {
        self.depth
    }

    fn lookup(&self, alpha: &[i64]) -> Result<Option<&RootEntry>> {
        if alpha.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: alpha.len() });
        }
        let pos = if alpha.iter().all(|&x| x >= 0) {
            alpha.to_vec()
        } else if alpha.iter().all(|&x| x <= 0) {
            alpha.iter().map(|x| -x).collect()
        } else {
            return Ok(None);
        };
        let h = height(&pos);
        if h as usize > self.depth {
            return Err(Error::OutOfWindow(format!(
                "root {alpha:?} has height {h} beyond the table depth {}",
                self.depth
            )));
        }
        Ok(self.entries.get(&(h, pos)))
    }

    /// `m_α`, zero when `α` is not a root. Negative roots share the
    /// multiplicity of their negatives.
    pub fn multiplicity(&self, alpha: &[i64]) -> Result<i64> {
        Ok(self.lookup(alpha)?.map_or(0, |e| e.mult))
    }

    pub fn is_real(&self, alpha: &[i64]) -> Result<bool> {
        match self.lookup(alpha)? {
            Some(e) => Ok(e.real),
            None => Err(Error::NotARoot(format!("{alpha:?}"))),
        }
    }

    /// Positive roots with their entries, ordered by height then lex.
    pub fn iter(&self) -> impl Iterator<Item = (&[i64], &RootEntry)> {
        self.entries.iter().map(|((_, k), v)| (k.as_slice(), v))
    }

    /// Positive roots of height at most `h`.
    pub fn up_to_height(&self, h: usize) -> impl Iterator<Item = (&[i64], &RootEntry)> {
        self.iter().take_while(move |(k, _)| height(k) as usize <= h)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn rows(&self) -> Vec<RootRow> {
        self.iter()
            .map(|(k, e)| RootRow { coords: k.to_vec(), height: height(k), mult: e.mult, real: e.real })
            .collect()
    }
}

/// Real positive roots of height at most `depth`, obtained as the orbit of
/// the simple roots under simple reflections.
pub fn real_roots_by_orbit(gcm: &GeneralizedCartanMatrix, depth: usize) -> BTreeSet<Vec<i64>> {
    let n = gcm.size();
    let mut seen = BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    while let Some(x) = stack.pop() {
        if !seen.insert(x.clone()) {
            continue;
        }
        for i in 0..n {
            let c = gcm.pair_root_vector(i, &x);
            let mut y = x.clone();
            y[i] -= c;
            if y.iter().all(|&v| v >= 0) && height(&y) as usize <= depth && !seen.contains(&y) {
                stack.push(y);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcm::validate_gcm;

    fn datum(m: &[&[i64]]) -> RootDatum {
        RootDatum::simply_connected(&validate_gcm(m.iter().map(|r| r.to_vec()).collect()).unwrap())
    }

    #[test]
    fn a1_has_one_root() {
        let t = enumerate_roots(&datum(&[&[2]]), 5).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.multiplicity(&[1]).unwrap(), 1);
        assert_eq!(t.multiplicity(&[2]).unwrap(), 0);
        assert!(t.is_real(&[1]).unwrap());
    }

    #[test]
    fn affine_a1_depth_six() {
        let t = enumerate_roots(&datum(&[&[2, -2], &[-2, 2]]), 6).unwrap();
        let real: Vec<Vec<i64>> = t.iter().filter(|(_, e)| e.real).map(|(k, _)| k.to_vec()).collect();
        let imag: Vec<(Vec<i64>, i64)> =
            t.iter().filter(|(_, e)| !e.real).map(|(k, e)| (k.to_vec(), e.mult)).collect();
        assert_eq!(
            real,
            vec![vec![0, 1], vec![1, 0], vec![1, 2], vec![2, 1], vec![2, 3], vec![3, 2]]
        );
        assert_eq!(imag, vec![(vec![1, 1], 1), (vec![2, 2], 1), (vec![3, 3], 1)]);
        assert!(!t.is_real(&[1, 1]).unwrap());
        assert!(t.is_real(&[1, 2]).unwrap());
        assert_eq!(t.multiplicity(&[2, 1]).unwrap(), 1);
        assert_eq!(t.multiplicity(&[-1, -1]).unwrap(), 1);
        assert_eq!(t.multiplicity(&[1, -1]).unwrap(), 0);
        assert!(matches!(t.multiplicity(&[4, 4]), Err(Error::OutOfWindow(_))));
        assert!(matches!(t.is_real(&[2, 0]), Err(Error::NotARoot(_))));
    }

    #[test]
    fn affine_a2_delta_multiplicity() {
        let t = enumerate_roots(&datum(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]), 6).unwrap();
        assert_eq!(t.multiplicity(&[1, 1, 1]).unwrap(), 2);
        assert_eq!(t.multiplicity(&[2, 2, 2]).unwrap(), 2);
    }

    #[test]
    fn real_roots_match_orbit() {
        for m in [
            vec![vec![2, -2], vec![-2, 2]],
            vec![vec![2, -3], vec![-3, 2]],
            vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]],
            vec![vec![2, -4], vec![-1, 2]],
        ] {
            let g = validate_gcm(m).unwrap();
            let t = enumerate_roots(&RootDatum::simply_connected(&g), 7).unwrap();
            let real: BTreeSet<Vec<i64>> =
                t.iter().filter(|(_, e)| e.real).map(|(k, _)| k.to_vec()).collect();
            assert_eq!(real, real_roots_by_orbit(&g, 7));
        }
    }

    #[test]
    fn finite_g2_roots() {
        let t = enumerate_roots(&datum(&[&[2, -1], &[-3, 2]]), 8).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t.iter().all(|(_, e)| e.real));
    }

    #[test]
    fn box_and_height_helpers() {
        assert_eq!(vectors_of_height(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(box_below(&[1, 2]).len(), 6);
    }
}
