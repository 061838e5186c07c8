//! Truncated series `Σ c_ν(t) e^ν` supported in `β − Q^+`.
//!
//! A term is stored under its offset `x = β − ν` in simple-root
//! coordinates. Only offsets with `ht(x) ≤ depth` and `t`-degrees up to
//! `tdeg` are kept; every coefficient outside that box is unknown, not zero.

use std::collections::{BTreeMap, HashMap};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::datum::RootDatum;
use crate::error::{Error, Result};
use crate::poly::TPoly;
use crate::roots::{height, vectors_of_height};
use crate::weyl::orbit_by_pairing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub base: Vec<Rational64>,
    pub depth: usize,
    pub tdeg: usize,
}

impl Window {
    pub fn new(base: Vec<Rational64>, depth: usize, tdeg: usize) -> Window {
        Window { base, depth, tdeg }
    }

    pub fn integral(base: &[i64], depth: usize, tdeg: usize) -> Window {
        Window::new(base.iter().map(|&x| Rational64::from_integer(x)).collect(), depth, tdeg)
    }

    pub fn at_zero(rank: usize, depth: usize, tdeg: usize) -> Window {
        Window::new(vec![Rational64::from_integer(0); rank], depth, tdeg)
    }
}

/// A JSON row: one weight with its coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub weight: Vec<i64>,
    pub coeffs: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterSeries {
    window: Window,
    n: usize,
    terms: BTreeMap<Vec<i64>, TPoly>,
}

fn add_into(map: &mut BTreeMap<Vec<i64>, TPoly>, key: Vec<i64>, p: &TPoly) {
    if p.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(q) => {
            q.add_assign(p);
            if q.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, p.clone());
        }
    }
}

impl CharacterSeries {
    pub fn zero(window: Window, n: usize) -> CharacterSeries {
        CharacterSeries { window, n, terms: BTreeMap::new() }
    }

    /// `e^0` at base `0`.
    pub fn one(rank: usize, n: usize, depth: usize, tdeg: usize) -> CharacterSeries {
        Self::from_offset(Window::at_zero(rank, depth, tdeg), n, vec![0; n], TPoly::one())
    }

    /// `p · e^{β − x}`; dropped if `x` lies outside the window.
    pub fn from_offset(window: Window, n: usize, offset: Vec<i64>, p: TPoly) -> CharacterSeries {
        let mut s = Self::zero(window, n);
        s.add_term(offset, &p);
        s
    }

    pub fn monomial(datum: &RootDatum, window: Window, weight: &[Rational64], p: TPoly) -> Result<CharacterSeries> {
        let x = offset_of(datum, &window, weight)?;
        Ok(Self::from_offset(window, datum.n(), x, p))
    }

    /// Adds `p` at offset `x`, truncating to the window.
    pub fn add_term(&mut self, x: Vec<i64>, p: &TPoly) {
        debug_assert_eq!(x.len(), self.n);
        if x.iter().any(|&c| c < 0) || height(&x) as usize > self.window.depth {
            return;
        }
        let p = p.clone().truncated(self.window.tdeg);
        add_into(&mut self.terms, x, &p);
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn depth(&self) -> usize {
        self.window.depth
    }

    pub fn tdeg(&self) -> usize {
        self.window.tdeg
    }

    pub fn base(&self) -> &[Rational64] {
        &self.window.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic offset order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &TPoly)> {
        self.terms.iter()
    }

    /// Terms ordered by depth, then offset.
    pub fn terms_by_depth(&self) -> Vec<(&Vec<i64>, &TPoly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| (height(a.0), a.0).cmp(&(height(b.0), b.0)));
        v
    }

    pub fn coeff_at(&self, x: &[i64]) -> TPoly {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn coefficient(&self, datum: &RootDatum, weight: &[Rational64]) -> Result<TPoly> {
        let x = offset_of(datum, &self.window, weight)?;
        Ok(self.coeff_at(&x))
    }

    pub fn weight_at(&self, datum: &RootDatum, x: &[i64]) -> Vec<Rational64> {
        let s = datum.weight_of_root_vector(x);
        self.window.base.iter().zip(&s).map(|(b, &v)| b - v).collect()
    }

    pub fn truncated(&self, depth: usize, tdeg: usize) -> CharacterSeries {
        let depth = depth.min(self.window.depth);
        let tdeg = tdeg.min(self.window.tdeg);
        let mut out = Self::zero(Window::new(self.window.base.clone(), depth, tdeg), self.n);
        for (x, p) in &self.terms {
            out.add_term(x.clone(), p);
        }
        out
    }

    fn check_same_base(&self, other: &CharacterSeries) -> Result<()> {
        if self.window.base != other.window.base || self.n != other.n {
            return Err(Error::WindowMismatch(format!(
                "bases {:?} and {:?} differ",
                self.window.base, other.window.base
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &CharacterSeries) -> Result<CharacterSeries> {
        self.check_same_base(other)?;
        let mut out = self.truncated(other.depth(), other.tdeg());
        for (x, p) in &other.terms {
            out.add_term(x.clone(), p);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CharacterSeries) -> Result<CharacterSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CharacterSeries {
        self.scale(&TPoly::constant(-1))
    }

    /// Multiplies every coefficient by `p(t)`.
    pub fn scale(&self, p: &TPoly) -> CharacterSeries {
        let mut out = Self::zero(self.window.clone(), self.n);
        for (x, q) in &self.terms {
            out.add_term(x.clone(), &q.mul_trunc(p, self.window.tdeg));
        }
        out
    }

    /// Multiplies by `e^{−y}` without moving the base.
    pub fn shifted(&self, y: &[i64]) -> CharacterSeries {
        let mut out = Self::zero(self.window.clone(), self.n);
        for (x, p) in &self.terms {
            let z: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
            out.add_term(z, p);
        }
        out
    }

    /// Same series, base moved to `base − Σ y_i α_i`, which must not lose
    /// any terms (all offsets must stay `≥ y`).
    pub fn rebased(&self, datum: &RootDatum, y: &[i64]) -> Result<CharacterSeries> {
        let s = datum.weight_of_root_vector(y);
        let base: Vec<Rational64> = self.window.base.iter().zip(&s).map(|(b, &v)| b - v).collect();
        let h = height(y);
        if h < 0 || h as usize > self.window.depth {
            return Err(Error::WindowMismatch("rebase beyond the window".into()));
        }
        let mut out = Self::zero(Window::new(base, self.window.depth - h as usize, self.window.tdeg), self.n);
        for (x, p) in &self.terms {
            let z: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
            if z.iter().any(|&c| c < 0) {
                return Err(Error::OutOfWindow(format!("term at offset {x:?} lies above the new base")));
            }
            out.add_term(z, p);
        }
        Ok(out)
    }

    /// Product; the base is the sum of bases and both cutoffs are the
    /// smaller of the two.
    pub fn multiply(&self, other: &CharacterSeries) -> Result<CharacterSeries> {
        if self.n != other.n || self.window.base.len() != other.window.base.len() {
            return Err(Error::WindowMismatch("operands live over different root data".into()));
        }
        let depth = self.depth().min(other.depth());
        let tdeg = self.tdeg().min(other.tdeg());
        let base = self.window.base.iter().zip(&other.window.base).map(|(a, b)| a + b).collect();
        let mut acc: BTreeMap<Vec<i64>, TPoly> = BTreeMap::new();
        let mut key = vec![0i64; self.n];
        for (x, p) in &self.terms {
            let hx = height(x) as usize;
            if hx > depth {
                continue;
            }
            for (y, q) in &other.terms {
                if hx + height(y) as usize > depth {
                    continue;
                }
                for k in 0..self.n {
                    key[k] = x[k] + y[k];
                }
                match acc.get_mut(&key) {
                    Some(r) => r.add_product(p, q, tdeg),
                    None => {
                        let r = p.mul_trunc(q, tdeg);
                        if !r.is_zero() {
                            acc.insert(key.clone(), r);
                        }
                    }
                }
            }
        }
        acc.retain(|_, p| !p.is_zero());
        Ok(CharacterSeries { window: Window::new(base, depth, tdeg), n: self.n, terms: acc })
    }

    /// Inverse of `u(t) e^β (1 + lower terms)` with `u(0) = ±1`; based at `−β`.
    pub fn invert(&self) -> Result<CharacterSeries> {
        let zero = vec![0i64; self.n];
        let lead = self.coeff_at(&zero);
        let tdeg = self.tdeg();
        let u_inv = lead.inverse(tdeg)?;
        let neg_u_inv = u_inv.neg();
        let base = self.window.base.iter().map(|b| -b).collect();
        let mut g: BTreeMap<Vec<i64>, TPoly> = BTreeMap::new();
        g.insert(zero.clone(), u_inv);
        let lower: Vec<(&Vec<i64>, &TPoly)> = self.terms.iter().filter(|(x, _)| **x != zero).collect();
        for h in 1..=self.depth() as i64 {
            for x in vectors_of_height(self.n, h) {
                let mut s = TPoly::zero();
                for (y, fy) in &lower {
                    let d: Vec<i64> = x.iter().zip(y.iter()).map(|(a, b)| a - b).collect();
                    if d.iter().any(|&c| c < 0) {
                        continue;
                    }
                    if let Some(gd) = g.get(&d) {
                        s.add_product(fy, gd, tdeg);
                    }
                }
                if !s.is_zero() {
                    let v = s.mul_trunc(&neg_u_inv, tdeg);
                    if !v.is_zero() {
                        g.insert(x, v);
                    }
                }
            }
        }
        Ok(CharacterSeries { window: Window::new(base, self.depth(), tdeg), n: self.n, terms: g })
    }

    /// Coefficientwise evaluation at `t = 0`.
    pub fn at_t_zero(&self) -> CharacterSeries {
        let mut out = Self::zero(self.window.clone(), self.n);
        for (x, p) in &self.terms {
            out.add_term(x.clone(), &TPoly::constant(p.coeff(0)));
        }
        out
    }

    /// Rows sorted by depth then weight. Fails if some weight is not integral.
    pub fn to_rows(&self, datum: &RootDatum) -> Result<Vec<SeriesRow>> {
        let mut rows = Vec::with_capacity(self.terms.len());
        for (x, p) in &self.terms {
            let w = self.weight_at(datum, x);
            if w.iter().any(|c| !c.is_integer()) {
                return Err(Error::Internal(format!("non-integral weight at offset {x:?}")));
            }
            rows.push((height(x), SeriesRow {
                weight: w.iter().map(|c| c.to_integer()).collect(),
                coeffs: p.coeffs().to_vec(),
            }));
        }
        rows.sort_by(|a, b| (a.0, &a.1.weight).cmp(&(b.0, &b.1.weight)));
        Ok(rows.into_iter().map(|(_, r)| r).collect())
    }

    pub fn from_rows(datum: &RootDatum, window: Window, rows: &[SeriesRow]) -> Result<CharacterSeries> {
        let mut s = Self::zero(window, datum.n());
        for r in rows {
            let w: Vec<Rational64> = r.weight.iter().map(|&c| Rational64::from_integer(c)).collect();
            let x = offset_of(datum, &s.window, &w)?;
            s.add_term(x, &TPoly::from_coeffs(r.coeffs.clone()));
        }
        Ok(s)
    }

    pub fn to_json(&self, datum: &RootDatum) -> Result<String> {
        serde_json::to_string(&self.to_rows(datum)?).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn from_json(datum: &RootDatum, window: Window, text: &str) -> Result<CharacterSeries> {
        let rows: Vec<SeriesRow> = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        Self::from_rows(datum, window, &rows)
    }
}

/// Offset `β − ν` of a weight in the window, or `OutOfWindow`.
pub fn offset_of(datum: &RootDatum, window: &Window, weight: &[Rational64]) -> Result<Vec<i64>> {
    let out = || Error::OutOfWindow(format!("weight {weight:?} is not in the window"));
    if weight.len() != window.base.len() {
        return Err(Error::DimensionMismatch { expected: window.base.len(), found: weight.len() });
    }
    let diff: Vec<Rational64> = window.base.iter().zip(weight).map(|(b, w)| b - w).collect();
    let x = datum.root_coordinates_rational(&diff).ok_or_else(out)?;
    if x.iter().any(|c| !c.is_integer() || *c < Rational64::from_integer(0)) {
        return Err(out());
    }
    let x: Vec<i64> = x.iter().map(|c| c.to_integer()).collect();
    if height(&x) as usize > window.depth {
        return Err(out());
    }
    Ok(x)
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `(1 − t^ε e^{−α})^{±m}` based at `0`, with `ε = 1` iff `with_t`.
pub fn geometric_factor(
    rank: usize,
    alpha: &[i64],
    m: i64,
    with_t: bool,
    inverse: bool,
    depth: usize,
    tdeg: usize,
) -> CharacterSeries {
    let n = alpha.len();
    let mut s = CharacterSeries::zero(Window::at_zero(rank, depth, tdeg), n);
    let h = height(alpha);
    assert!(h >= 1, "geometric factor needs a positive root");
    // (1 − z)^m = Σ (−1)^k C(m, k) z^k and (1 − z)^{−m} = Σ C(m+k−1, k) z^k
    let mut k: i64 = 0;
    while (k * h) as usize <= depth && (!with_t || k as usize <= tdeg) && (inverse || k <= m) {
        let c = if inverse {
            binomial(m + k - 1, k)
        } else if k % 2 == 0 {
            binomial(m, k)
        } else {
            -binomial(m, k)
        };
        let tpow = if with_t { k as usize } else { 0 };
        let x: Vec<i64> = alpha.iter().map(|&a| a * k).collect();
        s.add_term(x, &TPoly::monomial(c, tpow));
        k += 1;
    }
    s
}

/// The alternating sum `Σ_w (−1)^{ℓ(w)} w(f)` of a series whose terms are
/// all given exactly (a finite Laurent polynomial below a strictly dominant
/// base). Output terms are complete up to the window depth.
///
/// Each term `e^μ` is moved to its dominant conjugate `μ⁺` by raising
/// reflections; it vanishes when `μ⁺` has a zero pairing and otherwise
/// contributes `±` the orbit sum of `e^{μ⁺}`.
pub fn apply_j(datum: &RootDatum, tail: &CharacterSeries) -> Result<CharacterSeries> {
    let gcm = datum.gcm();
    let n = datum.n();
    let b: Vec<Rational64> = datum.coroot_pairings_rational(tail.base());
    if b.iter().any(|p| !p.is_integer() || *p < Rational64::from_integer(1)) {
        return Err(Error::NotStrictlyDominant(format!("base pairings {b:?}")));
    }
    let b: Vec<i64> = b.iter().map(|p| p.to_integer()).collect();
    let depth = tail.depth();
    let mut out = CharacterSeries::zero(tail.window().clone(), n);
    let mut cache: HashMap<(Vec<i64>, usize), Vec<crate::weyl::OrbitEntry>> = HashMap::new();
    for (x, p) in tail.terms() {
        let mut x = x.clone();
        let mut sign = 1i64;
        loop {
            let pair: Vec<i64> = (0..n).map(|i| b[i] - gcm.pair_root_vector(i, &x)).collect();
            match (0..n).find(|&i| pair[i] < 0) {
                Some(i) => {
                    x[i] += pair[i];
                    sign = -sign;
                    if x[i] < 0 {
                        return Err(Error::OutOfWindow(format!(
                            "a Weyl conjugate of the term at offset {x:?} lies above the base"
                        )));
                    }
                }
                None => {
                    if pair.contains(&0) {
                        break;
                    }
                    let budget = depth - height(&x) as usize;
                    let key = (pair.clone(), budget);
                    if !cache.contains_key(&key) {
                        cache.insert(key.clone(), orbit_by_pairing(gcm, &pair, budget)?);
                    }
                    for e in &cache[&key] {
                        let z: Vec<i64> = x.iter().zip(&e.offset).map(|(a, c)| a + c).collect();
                        out.add_term(z, &p.scale(sign * e.sign));
                    }
                    break;
                }
            }
        }
    }
    Ok(out)
}
