//! Simply-connected Kac–Moody root data.
//!
//! Both lattices are `Z^r` with the dot product as pairing. In a datum built
//! from a GCM the simple coroots are the first `n` unit vectors, the simple
//! root `α_j` has coordinates `(a_0j, .., a_{n-1}j, E_j)` and the extra block
//! `E` consists of unit columns chosen to make the roots independent.

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gcm::{symmetrize, validate_gcm, GeneralizedCartanMatrix, Symmetrizer};
use crate::linalg::{self, RatMatrix};

/// On-disk description of a datum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumSpec {
    #[serde(default)]
    pub name: String,
    pub cartan: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetrizer: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    name: String,
    gcm: GeneralizedCartanMatrix,
    symmetrizer: Option<Symmetrizer>,
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    fundamental_weights: Vec<Vec<Rational64>>,
    rho: Vec<Rational64>,
    rho_check: Vec<Rational64>,
    // (M Mᵀ)⁻¹ M for the root and coroot matrices, used to read off
    // simple-root coordinates.
    root_solver: RatMatrix,
    coroot_solver: RatMatrix,
}

fn rat(x: i64) -> Rational64 {
    Rational64::from_integer(x)
}

fn left_solver(m: &[Vec<i64>]) -> RatMatrix {
    let q = linalg::to_rational(m);
    let gram = linalg::mat_mul(&q, &linalg::transpose(&q));
    let inv = linalg::inverse(&gram).expect("simple (co)roots are independent");
    linalg::mat_mul(&inv, &q)
}

fn pseudo_inverse_apply(m: &[Vec<i64>], rhs: &[Rational64]) -> Vec<Rational64> {
    let q = linalg::to_rational(m);
    let pinv = linalg::right_pseudo_inverse(&q).expect("full row rank");
    linalg::mat_vec(&pinv, rhs)
}

fn solve_in_basis(solver: &RatMatrix, basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let vq: Vec<Rational64> = v.iter().map(|&x| rat(x)).collect();
    let x = linalg::mat_vec(solver, &vq);
    if x.iter().any(|c| !c.is_integer()) {
        return None;
    }
    let x: Vec<i64> = x.iter().map(|c| c.to_integer()).collect();
    let back = combine(basis, &x, v.len());
    (back == v).then_some(x)
}

fn combine(basis: &[Vec<i64>], x: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0; r];
    for (b, &c) in basis.iter().zip(x) {
        if c != 0 {
            for (o, &bk) in out.iter_mut().zip(b) {
                *o += c * bk;
            }
        }
    }
    out
}

/// Lexicographically first `k` row indices on which the columns of `u`
/// (a basis of ker Aᵀ) restrict to a nonsingular block.
fn extra_indices(u: &RatMatrix, n: usize) -> Vec<usize> {
    let k = u.len();
    if k == 0 {
        return Vec::new();
    }
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(u: &RatMatrix, n: usize, k: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k {
            let block: RatMatrix = chosen.iter().map(|&i| u.iter().map(|v| v[i]).collect()).collect();
            return linalg::inverse(&block).is_some();
        }
        for i in start..n {
            chosen.push(i);
            if rec(u, n, k, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let ok = rec(u, n, k, 0, &mut chosen);
    debug_assert!(ok);
    chosen
}

impl RootDatum {
    /// Builds the simply-connected datum of `gcm`, using the minimal
    /// symmetrizer when one exists.
    pub fn simply_connected(gcm: &GeneralizedCartanMatrix) -> RootDatum {
        let sym = symmetrize(gcm).ok();
        Self::assemble(String::new(), gcm.clone(), sym)
    }

    pub fn with_symmetrizer(gcm: &GeneralizedCartanMatrix, d: Vec<i64>) -> Result<RootDatum> {
        let sym = Symmetrizer::checked(gcm, d)?;
        for comp in gcm.components() {
            let g = comp.iter().fold(0i64, |acc, &i| acc.gcd(&sym.get(i)));
            if g != 1 {
                return Err(Error::InvalidSymmetrizer(format!(
                    "entries on component {comp:?} are not coprime"
                )));
            }
        }
        Ok(Self::assemble(String::new(), gcm.clone(), Some(sym)))
    }

    pub fn from_spec(spec: &DatumSpec) -> Result<RootDatum> {
        let gcm = validate_gcm(spec.cartan.clone())?;
        let mut d = match &spec.symmetrizer {
            Some(s) => Self::with_symmetrizer(&gcm, s.clone())?,
            None => Self::simply_connected(&gcm),
        };
        d.name = spec.name.clone();
        Ok(d)
    }

    pub fn from_json(text: &str) -> Result<RootDatum> {
        let spec: DatumSpec =
            serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        Self::from_spec(&spec)
    }

    pub fn spec(&self) -> DatumSpec {
        DatumSpec {
            name: self.name.clone(),
            cartan: self.gcm.rows().to_vec(),
            symmetrizer: self.symmetrizer.as_ref().map(|s| s.0.clone()),
        }
    }

    fn assemble(name: String, gcm: GeneralizedCartanMatrix, sym: Option<Symmetrizer>) -> RootDatum {
        let n = gcm.size();
        let u = linalg::nullspace(gcm.transpose().rows());
        let extra = extra_indices(&u, n);
        let rank = n + extra.len();
        let simple_roots: Vec<Vec<i64>> = (0..n)
            .map(|j| {
                let mut v: Vec<i64> = (0..n).map(|i| gcm.get(i, j)).collect();
                v.extend(extra.iter().map(|&e| (e == j) as i64));
                v
            })
            .collect();
        let simple_coroots: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..rank).map(|k| (k == i) as i64).collect())
            .collect();
        Self::from_parts(name, gcm, sym, simple_roots, simple_coroots)
    }

    fn from_parts(
        name: String,
        gcm: GeneralizedCartanMatrix,
        symmetrizer: Option<Symmetrizer>,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> RootDatum {
        let n = gcm.size();
        let rank = simple_roots[0].len();
        let ones = vec![rat(1); n];
        let cq = linalg::to_rational(&simple_coroots);
        let cpinv = linalg::right_pseudo_inverse(&cq).expect("coroots independent");
        let fundamental_weights = (0..n)
            .map(|i| (0..rank).map(|k| cpinv[k][i]).collect())
            .collect();
        let rho = pseudo_inverse_apply(&simple_coroots, &ones);
        let rho_check = pseudo_inverse_apply(&simple_roots, &ones);
        RootDatum {
            name,
            root_solver: left_solver(&simple_roots),
            coroot_solver: left_solver(&simple_coroots),
            gcm,
            symmetrizer,
            rank,
            simple_roots,
            simple_coroots,
            fundamental_weights,
            rho,
            rho_check,
        }
    }

    /// Exchanges roots and coroots. The Cartan matrix becomes its transpose
    /// and the symmetrizer is inverted (then renormalized per component).
    pub fn dual(&self) -> RootDatum {
        let gcm = self.gcm.transpose();
        let symmetrizer = self.symmetrizer.as_ref().map(|s| {
            let mut d = vec![0i64; self.n()];
            for comp in gcm.components() {
                let l = comp.iter().fold(1i64, |acc, &i| acc.lcm(&s.get(i)));
                let g = comp.iter().fold(0i64, |acc, &i| acc.gcd(&(l / s.get(i))));
                for &i in &comp {
                    d[i] = l / s.get(i) / g;
                }
            }
            Symmetrizer(d)
        });
        Self::from_parts(
            self.name.clone(),
            gcm,
            symmetrizer,
            self.simple_coroots.clone(),
            self.simple_roots.clone(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn gcm(&self) -> &GeneralizedCartanMatrix {
        &self.gcm
    }

    /// Number of simple roots.
    pub fn n(&self) -> usize {
        self.gcm.size()
    }

    /// Rank of the weight lattice.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn symmetrizer(&self) -> Result<&Symmetrizer> {
        self.symmetrizer.as_ref().ok_or(Error::NotSymmetrizable)
    }

    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.simple_roots[i]
    }

    pub fn simple_coroot(&self, i: usize) -> &[i64] {
        &self.simple_coroots[i]
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn fundamental_weight(&self, i: usize) -> &[Rational64] {
        &self.fundamental_weights[i]
    }

    pub fn rho(&self) -> &[Rational64] {
        &self.rho
    }

    pub fn rho_check(&self) -> &[Rational64] {
        &self.rho_check
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: v.len() });
        }
        Ok(())
    }

    pub fn pairing(&self, weight: &[i64], coweight: &[i64]) -> Result<i64> {
        self.check_len(weight)?;
        self.check_len(coweight)?;
        Ok(weight.iter().zip(coweight).map(|(a, b)| a * b).sum())
    }

    /// `⟨λ, α̌_i⟩` for every `i`.
    pub fn coroot_pairings(&self, weight: &[i64]) -> Result<Vec<i64>> {
        self.check_len(weight)?;
        Ok(self
            .simple_coroots
            .iter()
            .map(|c| c.iter().zip(weight).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `⟨α_i, μ̌⟩` for every `i`.
    pub fn root_pairings(&self, coweight: &[i64]) -> Result<Vec<i64>> {
        self.check_len(coweight)?;
        Ok(self
            .simple_roots
            .iter()
            .map(|c| c.iter().zip(coweight).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `⟨λ, α̌_i⟩` for a rational weight.
    pub fn coroot_pairings_rational(&self, weight: &[Rational64]) -> Vec<Rational64> {
        self.simple_coroots
            .iter()
            .map(|c| c.iter().zip(weight).map(|(&a, b)| b * a).sum())
            .collect()
    }

    /// The invariant form on the root lattice, `(α_i, α_j) = d_i a_ij`.
    pub fn bilinear_form(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        let d = self.symmetrizer()?;
        let n = self.n();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        let mut s = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            s += x[i] * d.get(i) * self.gcm.pair_root_vector(i, y);
        }
        Ok(s)
    }

    /// `Σ x_i α_i` as a weight.
    pub fn weight_of_root_vector(&self, x: &[i64]) -> Vec<i64> {
        combine(&self.simple_roots, x, self.rank)
    }

    /// `Σ x_i α̌_i` as a coweight.
    pub fn coweight_of_coroot_vector(&self, x: &[i64]) -> Vec<i64> {
        combine(&self.simple_coroots, x, self.rank)
    }

    /// Simple-root coordinates of a weight, if it lies in the root lattice.
    pub fn root_coordinates(&self, weight: &[i64]) -> Option<Vec<i64>> {
        if weight.len() != self.rank {
            return None;
        }
        solve_in_basis(&self.root_solver, &self.simple_roots, weight)
    }

    /// Simple-coroot coordinates of a coweight, if it lies in the coroot lattice.
    pub fn coroot_coordinates(&self, coweight: &[i64]) -> Option<Vec<i64>> {
        if coweight.len() != self.rank {
            return None;
        }
        solve_in_basis(&self.coroot_solver, &self.simple_coroots, coweight)
    }

    /// Rational simple-root coordinates of a rational weight, if it lies in
    /// the span of the simple roots.
    pub fn root_coordinates_rational(&self, weight: &[Rational64]) -> Option<Vec<Rational64>> {
        let x = linalg::mat_vec(&self.root_solver, weight);
        let mut back = vec![rat(0); self.rank];
        for (b, c) in self.simple_roots.iter().zip(&x) {
            for (o, &bk) in back.iter_mut().zip(b) {
                *o += c * bk;
            }
        }
        (back == weight).then_some(x)
    }

    /// Checks every structural invariant of a simply-connected datum.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        let bad = |what: &str| Err(Error::Internal(format!("datum invariant: {what}")));
        let corank = self.gcm.corank();
        if self.rank != n + corank {
            return bad("rank is not n + corank");
        }
        for i in 0..n {
            for j in 0..n {
                let p: i64 = self.simple_roots[j].iter().zip(&self.simple_coroots[i]).map(|(a, b)| a * b).sum();
                if p != self.gcm.get(i, j) {
                    return bad("<alpha_j, coroot_i> != a_ij");
                }
            }
        }
        if linalg::rank(&self.simple_roots) != n || linalg::rank(&self.simple_coroots) != n {
            return bad("simple roots or coroots are dependent");
        }
        for i in 0..n {
            let pw = self.coroot_pairings_rational(&self.fundamental_weights[i]);
            for (j, p) in pw.iter().enumerate() {
                if *p != rat((i == j) as i64) {
                    return bad("fundamental weights are not dual to the coroots");
                }
            }
        }
        if self.coroot_pairings_rational(&self.rho).iter().any(|p| *p != rat(1)) {
            return bad("<rho, coroot_i> != 1");
        }
        for a in &self.simple_roots {
            let p: Rational64 = a.iter().zip(&self.rho_check).map(|(&x, y)| y * x).sum();
            if p != rat(1) {
                return bad("<alpha_i, rho_check> != 1");
            }
        }
        Ok(())
    }
}
