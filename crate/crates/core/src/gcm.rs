//! Generalized Cartan matrices, their symmetrizers and the
//! finite / affine / indefinite trichotomy.

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// A validated generalized Cartan matrix `a_ij`, with `a_ii = 2`,
/// `a_ij <= 0` off the diagonal and `a_ij = 0 <=> a_ji = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct GeneralizedCartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for GeneralizedCartanMatrix {
    type Error = Error;
    fn try_from(m: Vec<Vec<i64>>) -> Result<Self> {
        validate_gcm(m)
    }
}

impl From<GeneralizedCartanMatrix> for Vec<Vec<i64>> {
    fn from(g: GeneralizedCartanMatrix) -> Self {
        g.entries
    }
}

/// Checks the three defining conditions of a GCM.
pub fn validate_gcm(m: Vec<Vec<i64>>) -> Result<GeneralizedCartanMatrix> {
    let n = m.len();
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    for (row, r) in m.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare { row, len: r.len(), expected: n });
        }
    }
    for i in 0..n {
        if m[i][i] != 2 {
            return Err(Error::DiagonalNotTwo(i));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && m[i][j] > 0 {
                return Err(Error::PositiveOffDiagonal(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && m[i][j] == 0 && m[j][i] != 0 {
                return Err(Error::AsymmetricZero(i, j));
            }
        }
    }
    Ok(GeneralizedCartanMatrix { entries: m })
}

impl GeneralizedCartanMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn transpose(&self) -> GeneralizedCartanMatrix {
        GeneralizedCartanMatrix { entries: linalg::transpose(&self.entries) }
    }

    pub fn determinant(&self) -> i64 {
        linalg::determinant(&self.entries)
    }

    pub fn corank(&self) -> usize {
        self.size() - linalg::rank(&self.entries)
    }

    /// `(A x)_i`, the pairing of `Σ x_j α_j` with the simple coroot `α̌_i`.
    #[inline]
    pub fn pair_root_vector(&self, i: usize, x: &[i64]) -> i64 {
        self.entries[i].iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Connected components of the Dynkin diagram, each sorted, ordered by
    /// smallest index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for j in 0..n {
                    if !seen[j] && self.entries[i][j] != 0 {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn principal_submatrix(&self, idx: &[usize]) -> Vec<Vec<i64>> {
        idx.iter()
            .map(|&i| idx.iter().map(|&j| self.entries[i][j]).collect())
            .collect()
    }

    /// Sub-GCM on an index subset (e.g. a parabolic or a component).
    pub fn restrict(&self, idx: &[usize]) -> GeneralizedCartanMatrix {
        GeneralizedCartanMatrix { entries: self.principal_submatrix(idx) }
    }
}

/// Positive integers `d_i` with `d_i a_ij = d_j a_ji`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Symmetrizer(pub Vec<i64>);

impl Symmetrizer {
    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// Accepts a user-supplied symmetrizer after checking it.
    pub fn checked(gcm: &GeneralizedCartanMatrix, d: Vec<i64>) -> Result<Symmetrizer> {
        let n = gcm.size();
        if d.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: d.len() });
        }
        if let Some(i) = d.iter().position(|&x| x <= 0) {
            return Err(Error::InvalidSymmetrizer(format!("d_{i} is not positive")));
        }
        for i in 0..n {
            for j in 0..n {
                if d[i] * gcm.get(i, j) != d[j] * gcm.get(j, i) {
                    return Err(Error::InvalidSymmetrizer(format!(
                        "d_{i} a_{i}{j} != d_{j} a_{j}{i}"
                    )));
                }
            }
        }
        Ok(Symmetrizer(d))
    }
}

/// Minimal positive symmetrizer, normalized to coprime integers on each
/// connected component.
pub fn symmetrize(gcm: &GeneralizedCartanMatrix) -> Result<Symmetrizer> {
    let n = gcm.size();
    let zero = Rational64::from_integer(0);
    let mut d = vec![zero; n];
    for comp in gcm.components() {
        d[comp[0]] = Rational64::from_integer(1);
        let mut stack = vec![comp[0]];
        while let Some(i) = stack.pop() {
            for &j in &comp {
                if i == j || gcm.get(i, j) == 0 {
                    continue;
                }
                let want = d[i] * Rational64::from_integer(gcm.get(i, j))
                    / Rational64::from_integer(gcm.get(j, i));
                if d[j] == zero {
                    d[j] = want;
                    stack.push(j);
                } else if d[j] != want {
                    return Err(Error::NotSymmetrizable);
                }
            }
        }
        let lcm = comp.iter().fold(1i64, |acc, &i| acc.lcm(d[i].denom()));
        let scaled: Vec<i64> = comp.iter().map(|&i| (d[i] * lcm).to_integer()).collect();
        let g = scaled.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for (&i, &v) in comp.iter().zip(&scaled) {
            d[i] = Rational64::from_integer(v / g);
        }
    }
    Ok(Symmetrizer(d.into_iter().map(|x| x.to_integer()).collect()))
}

/// Vinberg class of a GCM.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum GcmClass {
    Finite,
    /// `delta` is the primitive strictly positive null vector.
    Affine { delta: Vec<i64> },
    Indefinite,
    /// A product of at least two components that are not all finite.
    Decomposable { components: Vec<(Vec<usize>, GcmClass)> },
}

fn all_principal_minors_positive(m: &GeneralizedCartanMatrix, idx: &[usize], proper: bool) -> bool {
    let k = idx.len();
    let full = (1u32 << k) - 1;
    (1..=full).filter(|&mask| !(proper && mask == full)).all(|mask| {
        let sub: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| idx[b]).collect();
        linalg::determinant(&m.principal_submatrix(&sub)) > 0
    })
}

fn classify_indecomposable(gcm: &GeneralizedCartanMatrix, idx: &[usize]) -> GcmClass {
    let sub = gcm.principal_submatrix(idx);
    let det = linalg::determinant(&sub);
    if det > 0 && all_principal_minors_positive(gcm, idx, false) {
        return GcmClass::Finite;
    }
    if det == 0 && all_principal_minors_positive(gcm, idx, true) {
        let ns = linalg::nullspace(&sub);
        if ns.len() == 1 {
            let v = &ns[0];
            let lcm = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
            let ints: Vec<i64> = v.iter().map(|x| (x * lcm).to_integer()).collect();
            let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            let sign = if ints[0] < 0 { -1 } else { 1 };
            let delta: Vec<i64> = ints.iter().map(|&x| sign * x / g).collect();
            if delta.iter().all(|&x| x > 0) {
                return GcmClass::Affine { delta };
            }
        }
    }
    GcmClass::Indefinite
}

pub fn classify(gcm: &GeneralizedCartanMatrix) -> GcmClass {
    let comps = gcm.components();
    if comps.len() == 1 {
        return classify_indecomposable(gcm, &comps[0]);
    }
    let classes: Vec<(Vec<usize>, GcmClass)> = comps
        .into_iter()
        .map(|c| {
            let k = classify_indecomposable(gcm, &c);
            (c, k)
        })
        .collect();
    if classes.iter().all(|(_, k)| *k == GcmClass::Finite) {
        GcmClass::Finite
    } else {
        GcmClass::Decomposable { components: classes }
    }
}
