//! Satake transforms and the numerical invariants of intersections of
//! semi-infinite orbits with spherical orbits in the affine Grassmannian.
//!
//! Coweights of a datum are weights of its dual, so every Hall–Littlewood
//! and character computation here runs on [`RootDatum::dual`] and takes
//! `λ`, `ν` as coweights of the original datum.

use std::collections::BTreeMap;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{dominant_pairings, freudenthal_table, weight_multiplicity, CharacterTable};
use crate::datum::RootDatum;
use crate::error::{Error, Result};
use crate::hall_littlewood::{dominant_offsets, hl_coeff_direct, hl_expansion_direct, hl_function};
use crate::poly::TPoly;
use crate::roots::{box_below, enumerate_roots, height};
use crate::series::{CharacterSeries, Window};
use crate::weyl::{act_coweight, dominance_leq, inversion_set, is_dominant, WeylElement};

/// `q^{⟨ρ,λ⟩} P_λ(q^{−1}) / P_0(q^{−1})` stored as `shift = ⟨ρ,λ⟩` and the
/// series `P_λ(t) P_0(t)^{−1}` in `t = q^{−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatakeTransform {
    pub lambda: Vec<i64>,
    pub shift: i64,
    /// Based at `λ` over the dual datum.
    pub terms: CharacterSeries,
}

impl SatakeTransform {
    pub fn depth(&self) -> usize {
        self.terms.depth()
    }

    pub fn tdeg(&self) -> usize {
        self.terms.tdeg()
    }

    /// `term_ν(t)`; the coefficient of `e^ν` is `q^{shift} term_ν(q^{−1})`.
    pub fn term(&self, datum: &RootDatum, nu: &[i64]) -> Result<TPoly> {
        let nu: Vec<Rational64> = nu.iter().map(|&c| Rational64::from_integer(c)).collect();
        self.terms.coefficient(&datum.dual(), &nu)
    }
}

fn rho_pairing(datum: &RootDatum, coweight: &[i64]) -> Result<i64> {
    if coweight.len() != datum.rank() {
        return Err(Error::DimensionMismatch { expected: datum.rank(), found: coweight.len() });
    }
    let s: Rational64 = datum.rho().iter().zip(coweight).map(|(r, &c)| r * c).sum();
    if !s.is_integer() {
        return Err(Error::Internal(format!("⟨ρ, {coweight:?}⟩ = {s} is not an integer")));
    }
    Ok(s.to_integer())
}

pub fn satake_transform(datum: &RootDatum, lambda: &[i64], depth: usize, tdeg: usize) -> Result<SatakeTransform> {
    let dual = datum.dual();
    dominant_pairings(&dual, lambda)?;
    let shift = rho_pairing(datum, lambda)?;
    let table = enumerate_roots(&dual, depth.max(1))?;
    let p = hl_function(&dual, &table, lambda, depth, tdeg)?;
    let p0 = hl_function(&dual, &table, &vec![0; dual.rank()], depth, tdeg)?;
    let terms = p.multiply(&p0.invert()?)?;
    Ok(SatakeTransform { lambda: lambda.to_vec(), shift, terms })
}

fn coroot_offset(datum: &RootDatum, lambda: &[i64], nu: &[i64]) -> Result<Vec<i64>> {
    if lambda.len() != nu.len() {
        return Err(Error::DimensionMismatch { expected: lambda.len(), found: nu.len() });
    }
    let diff: Vec<i64> = lambda.iter().zip(nu).map(|(a, b)| a - b).collect();
    match datum.coroot_coordinates(&diff) {
        Some(x) if x.iter().all(|&c| c >= 0) => Ok(x),
        _ => Err(Error::NotBelow(format!("{nu:?} is not below {lambda:?}"))),
    }
}

/// `P_0 = Σ_κ c_{0κ} χ_κ` built from the multiset coefficients and
/// Freudenthal characters, based at `0`.
fn p_zero_from_characters(dual: &RootDatum, table: &crate::roots::RootTable, depth: usize, tdeg: usize) -> Result<CharacterSeries> {
    let zero = vec![0; dual.rank()];
    let exp = hl_expansion_direct(dual, table, &zero, depth, tdeg)?;
    let mut p0 = CharacterSeries::zero(Window::integral(&zero, depth, tdeg), dual.n());
    for (x, c) in &exp.coeffs {
        let s = dual.weight_of_root_vector(x);
        let kappa: Vec<i64> = s.iter().map(|v| -v).collect();
        let chi = freudenthal_table(dual, table, &kappa, depth - height(x) as usize)?;
        for (z, &m) in &chi.mults {
            let y: Vec<i64> = x.iter().zip(z).map(|(a, b)| a + b).collect();
            p0.add_term(y, &c.scale(m));
        }
    }
    Ok(p0)
}

/// `N_{λν}(t) = [e^ν] P_0(t)^{−1} Σ_{ν≤μ≤λ} c_{λμ}(t) χ_μ`, assembled from
/// the multiset coefficients and Freudenthal multiplicities rather than
/// from [`satake_transform`].
pub fn mv_count_series(datum: &RootDatum, lambda: &[i64], nu: &[i64], tdeg: usize) -> Result<TPoly> {
    let dual = datum.dual();
    dominant_pairings(&dual, lambda)?;
    let s = coroot_offset(datum, lambda, nu)?;
    let depth = height(&s) as usize;
    let table = enumerate_roots(&dual, depth.max(1))?;
    let p0_inv = p_zero_from_characters(&dual, &table, depth, tdeg)?.invert()?;
    let mus: Vec<Vec<i64>> = dominant_offsets(&dual, lambda, depth)?
        .into_iter()
        .filter(|x| x.iter().zip(&s).all(|(a, b)| a <= b))
        .collect();
    let parts: Vec<Result<(Vec<i64>, TPoly, CharacterTable)>> = mus
        .par_iter()
        .map(|x| {
            let shift = dual.weight_of_root_vector(x);
            let mu: Vec<i64> = lambda.iter().zip(&shift).map(|(a, b)| a - b).collect();
            let c = hl_coeff_direct(&dual, &table, lambda, &mu, tdeg)?;
            let chi = freudenthal_table(&dual, &table, &mu, depth - height(x) as usize)?;
            Ok((x.clone(), c, chi))
        })
        .collect();
    let mut n = TPoly::zero();
    for part in parts {
        let (x, c, chi) = part?;
        if c.is_zero() {
            continue;
        }
        // weight ν + κ sits at offset s − x − κ below μ
        for (kappa, p) in p0_inv.terms() {
            let off: Vec<i64> = s.iter().zip(&x).zip(kappa).map(|((a, b), k)| a - b - k).collect();
            if off.iter().any(|&v| v < 0) {
                continue;
            }
            let m = chi.at(&off)?;
            if m != 0 {
                n.add_product(&c.scale(m), p, tdeg);
            }
        }
    }
    Ok(n)
}

/// Numerical invariants of `Gr_λ ∩ T_ν`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MvPrediction {
    pub lambda: Vec<i64>,
    pub nu: Vec<i64>,
    /// `⟨ρ, λ − ν⟩`
    pub dimension: i64,
    /// `dim L(λ)_ν` for the dual group
    pub top_components: i64,
    /// `N(t)` with `N(q^{−1}) = ♯(Gr_λ ∩ T_ν)(F_q) q^{⟨ρ,ν−λ⟩}`
    pub count_series: TPoly,
    pub tdeg: usize,
    /// Degree of `N` when at least two coefficients above it vanish inside
    /// the window, so the truncation looks like a polynomial. `None`
    /// otherwise.
    pub stable_degree: Option<usize>,
}

fn apparent_degree(p: &TPoly, tdeg: usize) -> Option<usize> {
    let d = p.degree().unwrap_or(0);
    (d + 2 <= tdeg).then_some(d)
}

pub fn mv_prediction(datum: &RootDatum, lambda: &[i64], nu: &[i64], tdeg: usize) -> Result<MvPrediction> {
    let s = coroot_offset(datum, lambda, nu)?;
    let dual = datum.dual();
    let top = weight_multiplicity(&dual, lambda, nu)?;
    let count = mv_count_series(datum, lambda, nu, tdeg)?;
    if count.coeff(0) != top {
        return Err(Error::InconsistentLimit { series: count.coeff(0), expected: top });
    }
    Ok(MvPrediction {
        lambda: lambda.to_vec(),
        nu: nu.to_vec(),
        dimension: height(&s),
        top_components: top,
        stable_degree: apparent_degree(&count, tdeg),
        count_series: count,
        tdeg,
    })
}

/// Whether `S_μ ∩ T_ν` is nonempty, i.e. `ν ≤ μ`.
pub fn st_nonempty(datum: &RootDatum, mu: &[i64], nu: &[i64]) -> bool {
    dominance_leq(datum, nu, mu)
}

/// Necessary condition `ν ≤ λ` for `Gr_λ ∩ T_ν` to be nonempty.
pub fn grt_vanishing(datum: &RootDatum, lambda: &[i64], nu: &[i64]) -> bool {
    dominance_leq(datum, nu, lambda)
}

fn require_dominant(datum: &RootDatum, coweight: &[i64]) -> Result<()> {
    if !is_dominant(datum, coweight)? {
        return Err(Error::NotDominant(format!("{coweight:?}")));
    }
    Ok(())
}

/// Dominant `ν` with `μ ≤ ν ≤ λ`, ordered by `ht(ν − μ)` then
/// lexicographically.
pub fn strata_interval(datum: &RootDatum, mu: &[i64], lambda: &[i64]) -> Result<Vec<Vec<i64>>> {
    require_dominant(datum, mu)?;
    require_dominant(datum, lambda)?;
    let s = coroot_offset(datum, lambda, mu)?;
    let mut out: Vec<(i64, Vec<i64>)> = Vec::new();
    for y in box_below(&s) {
        let c = datum.coweight_of_coroot_vector(&y);
        let nu: Vec<i64> = lambda.iter().zip(&c).map(|(a, b)| a - b).collect();
        if is_dominant(datum, &nu)? {
            out.push((height(&s) - height(&y), nu));
        }
    }
    out.sort();
    Ok(out.into_iter().map(|(_, nu)| nu).collect())
}

/// A positive coroot `α̌` with `μ ≤ λ − α̌ < λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepWitness {
    /// Simple-coroot coordinates.
    pub coroot: Vec<i64>,
    /// `λ − α̌` is again dominant.
    pub keeps_dominant: bool,
}

/// Searches positive coroots by increasing height, preferring a step that
/// stays dominant.
pub fn coroot_step_witness(datum: &RootDatum, mu: &[i64], lambda: &[i64]) -> Result<StepWitness> {
    datum.symmetrizer()?;
    require_dominant(datum, mu)?;
    require_dominant(datum, lambda)?;
    let s = coroot_offset(datum, lambda, mu)?;
    if s.iter().all(|&c| c == 0) {
        return Err(Error::NotBelow(format!("{mu:?} is not strictly below {lambda:?}")));
    }
    let table = enumerate_roots(&datum.dual(), height(&s) as usize)?;
    let mut fallback = None;
    for (c, _) in table.iter() {
        if c.iter().zip(&s).any(|(a, b)| a > b) {
            continue;
        }
        let v = datum.coweight_of_coroot_vector(c);
        let next: Vec<i64> = lambda.iter().zip(&v).map(|(a, b)| a - b).collect();
        if is_dominant(datum, &next)? {
            return Ok(StepWitness { coroot: c.to_vec(), keeps_dominant: true });
        }
        if fallback.is_none() {
            fallback = Some(c.to_vec());
        }
    }
    match fallback {
        Some(coroot) => Ok(StepWitness { coroot, keeps_dominant: false }),
        None => Err(Error::WindowTooSmall(format!("no positive coroot of height ≤ {} fits", height(&s)))),
    }
}

/// `Γ = {(α, k) : α ∈ N(w), 0 ≤ k < ⟨α, λ⟩}` and its size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaCount {
    /// Canonical reduced word of `w`.
    pub word: Vec<usize>,
    pub pairs: Vec<(Vec<i64>, i64)>,
    pub count: i64,
    /// `⟨ρ, λ − wλ⟩`, which must equal `count`.
    pub rho_pairing: i64,
}

pub fn gamma_count(datum: &RootDatum, lambda: &[i64], word: &[usize]) -> Result<GammaCount> {
    require_dominant(datum, lambda)?;
    let w = WeylElement::from_word(datum.gcm(), word)?;
    let b = datum.root_pairings(lambda)?;
    let mut pairs = Vec::new();
    for alpha in inversion_set(datum.gcm(), &w) {
        let k: i64 = alpha.iter().zip(&b).map(|(a, c)| a * c).sum();
        for j in 0..k {
            pairs.push((alpha.clone(), j));
        }
    }
    let wl = act_coweight(datum, w.word(), lambda)?;
    let diff: Vec<i64> = lambda.iter().zip(&wl).map(|(a, c)| a - c).collect();
    let rho_pairing = rho_pairing(datum, &diff)?;
    let count = pairs.len() as i64;
    if count != rho_pairing {
        return Err(Error::Internal(format!("♯Γ = {count} but ⟨ρ, λ − wλ⟩ = {rho_pairing}")));
    }
    Ok(GammaCount { word: w.word().to_vec(), pairs, count, rho_pairing })
}

/// Necessary condition `μ ≥ wλ` for `Gr°_{wλ} ∩ S_μ ≠ ∅`.
pub fn grs_nonempty_window(datum: &RootDatum, lambda: &[i64], mu: &[i64], word: &[usize]) -> Result<bool> {
    require_dominant(datum, lambda)?;
    let wl = act_coweight(datum, word, lambda)?;
    Ok(dominance_leq(datum, &wl, mu))
}

/// Necessary condition `ν ≤ wλ` for `Gr°_{wλ} ∩ T_ν ≠ ∅`.
pub fn grt_chart_window(datum: &RootDatum, lambda: &[i64], nu: &[i64], word: &[usize]) -> Result<bool> {
    require_dominant(datum, lambda)?;
    let wl = act_coweight(datum, word, lambda)?;
    Ok(dominance_leq(datum, nu, &wl))
}

/// `(ν, term_ν)` rows of a transform sorted by depth then weight.
pub fn transform_rows(datum: &RootDatum, st: &SatakeTransform) -> Result<BTreeMap<(i64, Vec<i64>), TPoly>> {
    let dual = datum.dual();
    let mut out = BTreeMap::new();
    for (x, p) in st.terms.terms() {
        let s = dual.weight_of_root_vector(x);
        let nu: Vec<i64> = st.lambda.iter().zip(&s).map(|(a, b)| a - b).collect();
        out.insert((height(x), nu), p.clone());
    }
    Ok(out)
}
