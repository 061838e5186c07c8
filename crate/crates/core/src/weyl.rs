//! The Weyl group of a GCM.
//!
//! An element `w` is identified by `ρ − wρ ∈ Q^+` (the stabilizer of `ρ` is
//! trivial). For this key `x`, `ℓ(s_i w) > ℓ(w)` iff `1 − (A x)_i > 0`,
//! and `s_i w` has key `x + (1 − (A x)_i) α_i`; this gives descent tests,
//! canonical words and breadth-first enumeration without matrices.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::datum::RootDatum;
use crate::error::{Error, Result};
use crate::gcm::GeneralizedCartanMatrix;
use crate::poly::TPoly;
use crate::roots::height;

fn check_word(n: usize, word: &[usize]) -> Result<()> {
    match word.iter().find(|&&i| i >= n) {
        Some(&index) => Err(Error::IndexOutOfRange { index, rank: n }),
        None => Ok(()),
    }
}

/// `x ↦ x + (b_i − (A x)_i) α_i`: how `λ − wλ` changes under `w ↦ s_i w`,
/// where `b_i = ⟨λ, α̌_i⟩`.
#[inline]
fn left_step(gcm: &GeneralizedCartanMatrix, b: &[i64], x: &mut [i64], i: usize) -> i64 {
    let c = b[i] - gcm.pair_root_vector(i, x);
    x[i] += c;
    c
}

fn rho_key_of_word(gcm: &GeneralizedCartanMatrix, word: &[usize]) -> Vec<i64> {
    let n = gcm.size();
    let ones = vec![1; n];
    let mut x = vec![0; n];
    for &i in word.iter().rev() {
        left_step(gcm, &ones, &mut x, i);
    }
    x
}

fn word_of_rho_key(gcm: &GeneralizedCartanMatrix, mut x: Vec<i64>) -> Vec<usize> {
    let n = gcm.size();
    let ones = vec![1; n];
    let mut word = Vec::new();
    while let Some(i) = (0..n).find(|&i| 1 - gcm.pair_root_vector(i, &x) < 0) {
        word.push(i);
        left_step(gcm, &ones, &mut x, i);
    }
    debug_assert!(x.iter().all(|&c| c == 0));
    word
}

/// A Weyl group element, stored as its ShortLex-minimal reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> WeylElement {
        WeylElement { word: Vec::new() }
    }

    /// Reduces and canonicalizes an arbitrary word `s_{i_1} ⋯ s_{i_k}`.
    pub fn from_word(gcm: &GeneralizedCartanMatrix, word: &[usize]) -> Result<WeylElement> {
        check_word(gcm.size(), word)?;
        let key = rho_key_of_word(gcm, word);
        Ok(WeylElement { word: word_of_rho_key(gcm, key) })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn sign(&self) -> i64 {
        if self.word.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn inverse(&self, gcm: &GeneralizedCartanMatrix) -> WeylElement {
        let rev: Vec<usize> = self.word.iter().rev().copied().collect();
        WeylElement { word: word_of_rho_key(gcm, rho_key_of_word(gcm, &rev)) }
    }

    pub fn compose(&self, gcm: &GeneralizedCartanMatrix, other: &WeylElement) -> WeylElement {
        let mut w = self.word.clone();
        w.extend_from_slice(&other.word);
        WeylElement { word: word_of_rho_key(gcm, rho_key_of_word(gcm, &w)) }
    }

    /// Action on the root lattice (simple-root coordinates).
    pub fn act_root(&self, gcm: &GeneralizedCartanMatrix, x: &[i64]) -> Vec<i64> {
        act_root(gcm, &self.word, x)
    }
}

/// `(ℓ(w), (−1)^ℓ(w))` for any word.
pub fn length_and_sign(gcm: &GeneralizedCartanMatrix, word: &[usize]) -> Result<(usize, i64)> {
    let w = WeylElement::from_word(gcm, word)?;
    Ok((w.length(), w.sign()))
}

pub fn act_root(gcm: &GeneralizedCartanMatrix, word: &[usize], x: &[i64]) -> Vec<i64> {
    let mut y = x.to_vec();
    for &i in word.iter().rev() {
        let c = gcm.pair_root_vector(i, &y);
        y[i] -= c;
    }
    y
}

/// `s_i λ = λ − ⟨λ, α̌_i⟩ α_i`
pub fn reflect(datum: &RootDatum, i: usize, weight: &[i64]) -> Result<Vec<i64>> {
    check_word(datum.n(), &[i])?;
    let c = datum.pairing(weight, datum.simple_coroot(i))?;
    Ok(weight.iter().zip(datum.simple_root(i)).map(|(l, a)| l - c * a).collect())
}

/// `s_i μ̌ = μ̌ − ⟨α_i, μ̌⟩ α̌_i`
pub fn reflect_coweight(datum: &RootDatum, i: usize, coweight: &[i64]) -> Result<Vec<i64>> {
    check_word(datum.n(), &[i])?;
    let c = datum.pairing(datum.simple_root(i), coweight)?;
    Ok(coweight.iter().zip(datum.simple_coroot(i)).map(|(l, a)| l - c * a).collect())
}

pub fn reflect_rational(datum: &RootDatum, i: usize, weight: &[Rational64]) -> Vec<Rational64> {
    let c: Rational64 = weight.iter().zip(datum.simple_coroot(i)).map(|(l, &a)| l * a).sum();
    weight.iter().zip(datum.simple_root(i)).map(|(l, &a)| l - c * a).collect()
}

pub fn act(datum: &RootDatum, word: &[usize], weight: &[i64]) -> Result<Vec<i64>> {
    let mut v = weight.to_vec();
    for &i in word.iter().rev() {
        v = reflect(datum, i, &v)?;
    }
    Ok(v)
}

pub fn act_coweight(datum: &RootDatum, word: &[usize], coweight: &[i64]) -> Result<Vec<i64>> {
    let mut v = coweight.to_vec();
    for &i in word.iter().rev() {
        v = reflect_coweight(datum, i, &v)?;
    }
    Ok(v)
}

/// `{α > 0 : wα < 0}` in simple-root coordinates, sorted by height.
pub fn inversion_set(gcm: &GeneralizedCartanMatrix, w: &WeylElement) -> Vec<Vec<i64>> {
    let n = gcm.size();
    let word = w.word();
    let mut out: Vec<Vec<i64>> = (0..word.len())
        .map(|k| {
            let mut e = vec![0; n];
            e[word[k]] = 1;
            let suffix: Vec<usize> = word[k + 1..].iter().rev().copied().collect();
            act_root(gcm, &suffix, &e)
        })
        .collect();
    out.sort_by(|a, b| (height(a), a).cmp(&(height(b), b)));
    out
}

/// One element found by [`enumerate_elements`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylNode {
    /// ShortLex-minimal reduced word.
    pub word: Vec<usize>,
    /// `λ − wλ` in simple-root coordinates, for the pairing vector supplied.
    pub shift: Vec<i64>,
    /// `N(w⁻¹) = {γ > 0 : w⁻¹γ < 0}`.
    pub inverse_inversions: Vec<Vec<i64>>,
}

impl WeylNode {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn sign(&self) -> i64 {
        if self.word.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// Breadth-first enumeration of the subgroup generated by `gens`,
/// tracking `λ − wλ` for a dominant pairing vector `b`.
///
/// `keep(length, shift)` must be monotone: once it fails for `w` it fails
/// for every `s_i w` with `ℓ(s_i w) > ℓ(w)`, and it must eventually fail
/// along every chain. Both `ℓ` and `ht(λ − wλ)` are non-decreasing on such
/// chains when `λ` is dominant.
pub fn enumerate_elements<F>(
    gcm: &GeneralizedCartanMatrix,
    gens: &[usize],
    b: &[i64],
    keep: F,
) -> Vec<WeylNode>
where
    F: Fn(usize, &[i64]) -> bool,
{
    let n = gcm.size();
    let ones = vec![1; n];
    let zero = vec![0i64; n];
    let mut out = Vec::new();
    if !keep(0, &zero) {
        return out;
    }
    // level entries: rho key -> node
    let mut level: BTreeMap<Vec<i64>, WeylNode> = BTreeMap::new();
    level.insert(
        zero.clone(),
        WeylNode { word: Vec::new(), shift: zero.clone(), inverse_inversions: Vec::new() },
    );
    while !level.is_empty() {
        let mut next: BTreeMap<Vec<i64>, WeylNode> = BTreeMap::new();
        for (key, node) in &level {
            for &i in gens {
                if 1 - gcm.pair_root_vector(i, key) <= 0 {
                    continue;
                }
                let mut shift = node.shift.clone();
                left_step(gcm, b, &mut shift, i);
                if !keep(node.length() + 1, &shift) {
                    continue;
                }
                let mut k2 = key.clone();
                left_step(gcm, &ones, &mut k2, i);
                let mut word = Vec::with_capacity(node.word.len() + 1);
                word.push(i);
                word.extend_from_slice(&node.word);
                match next.get_mut(&k2) {
                    Some(existing) => {
                        if word < existing.word {
                            existing.word = word;
                        }
                    }
                    None => {
                        let mut inv = Vec::with_capacity(node.inverse_inversions.len() + 1);
                        let mut e = vec![0; n];
                        e[i] = 1;
                        inv.push(e);
                        for g in &node.inverse_inversions {
                            inv.push(act_root(gcm, &[i], g));
                        }
                        next.insert(k2, WeylNode { word, shift, inverse_inversions: inv });
                    }
                }
            }
        }
        let mut done: Vec<WeylNode> = std::mem::take(&mut level).into_values().collect();
        done.sort_by(|a, b| a.word.cmp(&b.word));
        out.extend(done);
        level = next;
    }
    out
}

/// Entries `w(β)` of the orbit of a strictly dominant `β` with
/// `ht(β − wβ) ≤ depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSlice {
    pub base: Vec<Rational64>,
    pub depth: usize,
    pub entries: Vec<OrbitEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitEntry {
    /// `β − wβ` in simple-root coordinates
    pub offset: Vec<i64>,
    pub sign: i64,
    pub word: Vec<usize>,
}

impl OrbitSlice {
    pub fn weight(&self, datum: &RootDatum, e: &OrbitEntry) -> Vec<Rational64> {
        let s = datum.weight_of_root_vector(&e.offset);
        self.base.iter().zip(&s).map(|(b, &x)| b - x).collect()
    }
}

/// Orbit entries of depth at most `depth` for a strictly dominant pairing
/// vector `b`.
pub fn orbit_by_pairing(gcm: &GeneralizedCartanMatrix, b: &[i64], depth: usize) -> Result<Vec<OrbitEntry>> {
    if b.iter().any(|&x| x < 1) {
        return Err(Error::NotStrictlyDominant(format!("pairings {b:?}")));
    }
    let gens: Vec<usize> = (0..gcm.size()).collect();
    let nodes = enumerate_elements(gcm, &gens, b, |_, s| height(s) as usize <= depth);
    let mut entries: Vec<OrbitEntry> = nodes
        .into_iter()
        .map(|nd| OrbitEntry { sign: nd.sign(), offset: nd.shift, word: nd.word })
        .collect();
    entries.sort_by(|a, b| (height(&a.offset), &a.offset).cmp(&(height(&b.offset), &b.offset)));
    Ok(entries)
}

fn integral_pairings(datum: &RootDatum, weight: &[Rational64]) -> Result<Vec<i64>> {
    datum
        .coroot_pairings_rational(weight)
        .into_iter()
        .map(|p| {
            if p.is_integer() {
                Ok(p.to_integer())
            } else {
                Err(Error::Input(format!("weight has non-integral pairing {p}")))
            }
        })
        .collect()
}

pub fn orbit_within_depth(datum: &RootDatum, beta: &[Rational64], depth: usize) -> Result<OrbitSlice> {
    let b = integral_pairings(datum, beta)?;
    let entries = orbit_by_pairing(datum.gcm(), &b, depth)?;
    Ok(OrbitSlice { base: beta.to_vec(), depth, entries })
}

/// `Σ_{σ ∈ W_J} t^{ℓ(σ)}` truncated at `tdeg`, for the parabolic subgroup
/// generated by `J = {i : b_i = 0}`.
pub fn stabilizer_poincare_by_pairing(
    gcm: &GeneralizedCartanMatrix,
    b: &[i64],
    tdeg: usize,
) -> Result<TPoly> {
    if b.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(format!("pairings {b:?}")));
    }
    let gens: Vec<usize> = (0..gcm.size()).filter(|&i| b[i] == 0).collect();
    let zero = vec![0; gcm.size()];
    let nodes = enumerate_elements(gcm, &gens, &zero, |l, _| l <= tdeg);
    let mut c = vec![0i64; tdeg + 1];
    for nd in nodes {
        c[nd.length()] += 1;
    }
    Ok(TPoly::from_coeffs(c))
}

pub fn stabilizer_poincare(datum: &RootDatum, weight: &[i64], tdeg: usize) -> Result<TPoly> {
    stabilizer_poincare_by_pairing(datum.gcm(), &datum.coroot_pairings(weight)?, tdeg)
}

pub fn stabilizer_poincare_coweight(datum: &RootDatum, coweight: &[i64], tdeg: usize) -> Result<TPoly> {
    stabilizer_poincare_by_pairing(&datum.gcm().transpose(), &datum.root_pairings(coweight)?, tdeg)
}

/// `μ̌ ≤ λ̌`: the difference is a non-negative combination of simple coroots.
pub fn dominance_leq(datum: &RootDatum, mu: &[i64], lambda: &[i64]) -> bool {
    if mu.len() != lambda.len() {
        return false;
    }
    let diff: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
    datum.coroot_coordinates(&diff).is_some_and(|x| x.iter().all(|&c| c >= 0))
}

/// Weight-lattice twin of [`dominance_leq`].
pub fn dominance_leq_weight(datum: &RootDatum, mu: &[i64], lambda: &[i64]) -> bool {
    if mu.len() != lambda.len() {
        return false;
    }
    let diff: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
    datum.root_coordinates(&diff).is_some_and(|x| x.iter().all(|&c| c >= 0))
}

/// `⟨α_i, λ̌⟩ ≥ 0` for all `i`.
pub fn is_dominant(datum: &RootDatum, coweight: &[i64]) -> Result<bool> {
    Ok(datum.root_pairings(coweight)?.iter().all(|&p| p >= 0))
}

pub fn is_dominant_weight(datum: &RootDatum, weight: &[i64]) -> Result<bool> {
    Ok(datum.coroot_pairings(weight)?.iter().all(|&p| p >= 0))
}
