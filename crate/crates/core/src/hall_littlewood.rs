//! Hall–Littlewood functions `P_λ(t)`, their expansion coefficients
//! `c_{λμ}(t)` in irreducible characters, and the Weyl-symmetrized
//! product `H_λ(t)`.
//!
//! Orbit sums run over `w` with `ht(λ − wλ) ≤ D` and
//! `ℓ(w) + ht(λ − wλ) ≤ D + T`. Every factor attached to an inversion of
//! `w⁻¹` carries either a power of `t` or a root of height at least one, so
//! the remaining `w` only produce terms outside the window.

use std::collections::BTreeMap;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{dominant_pairings, root_product, weyl_kac_character};
use crate::datum::RootDatum;
use crate::error::{Error, Result};
use crate::poly::TPoly;
use crate::roots::{height, RootTable};
use crate::series::{apply_j, geometric_factor, CharacterSeries, Window};
use crate::weyl::{enumerate_elements, stabilizer_poincare, WeylNode};

fn shifted_base(lambda: &[i64], rho: &[Rational64]) -> Vec<Rational64> {
    lambda.iter().zip(rho).map(|(&a, b)| b + a).collect()
}

fn check_table(table: &RootTable, depth: usize) -> Result<()> {
    if table.depth() < depth {
        return Err(Error::WindowTooSmall(format!(
            "root table has depth {} but {depth} is needed",
            table.depth()
        )));
    }
    Ok(())
}

/// Weyl group elements whose summands can reach the window.
fn window_elements(datum: &RootDatum, b: &[i64], depth: usize, tdeg: usize) -> Vec<WeylNode> {
    let gens: Vec<usize> = (0..datum.n()).collect();
    enumerate_elements(datum.gcm(), &gens, b, |len, shift| {
        let h = height(shift) as usize;
        h <= depth && len + h <= depth + tdeg
    })
}

fn stabilizer_inverse(datum: &RootDatum, lambda: &[i64], tdeg: usize) -> Result<TPoly> {
    stabilizer_poincare(datum, lambda, tdeg)?.inverse(tdeg)
}

/// `f_λ = e^{λ+ρ} Π_{α>0} (1 − t e^{−α})^{m_α}`.
pub fn f_lambda(datum: &RootDatum, table: &RootTable, lambda: &[i64], depth: usize, tdeg: usize) -> Result<CharacterSeries> {
    dominant_pairings(datum, lambda)?;
    let prod = root_product(datum, table, depth, tdeg, true, false)?;
    let top = CharacterSeries::from_offset(
        Window::new(shifted_base(lambda, datum.rho()), depth, tdeg),
        datum.n(),
        vec![0; datum.n()],
        TPoly::one(),
    );
    top.multiply(&prod)
}

/// `J(f_λ)`, summed one Weyl element at a time:
/// `w(f_λ) = (−1)^{ℓ(w)} e^{wλ+ρ} Π_{γ∈N(w⁻¹)} (e^{−γ} − t) Π_{β>0, β∉N(w⁻¹)} (1 − t e^{−β})^{m_β}`.
pub fn j_f_lambda(datum: &RootDatum, table: &RootTable, lambda: &[i64], depth: usize, tdeg: usize) -> Result<CharacterSeries> {
    let b = dominant_pairings(datum, lambda)?;
    check_table(table, depth)?;
    let rank = datum.rank();
    let n = datum.n();
    let full = root_product(datum, table, depth, tdeg, true, false)?;
    let nodes = window_elements(datum, &b, depth, tdeg);
    let parts: Vec<Result<CharacterSeries>> = nodes
        .par_iter()
        .map(|node| {
            let budget = depth - height(&node.shift) as usize;
            let mut f = full.truncated(budget, tdeg);
            for gamma in &node.inverse_inversions {
                let h = height(gamma) as usize;
                if h > budget {
                    f = f.scale(&TPoly::monomial(-1, 1));
                    continue;
                }
                // divide out the factor at γ, then put in e^{−γ} − t
                let inv = geometric_factor(rank, gamma, 1, true, true, budget, tdeg);
                f = f.multiply(&inv)?.multiply(&{
                    let mut g = CharacterSeries::zero(Window::at_zero(rank, budget, tdeg), n);
                    g.add_term(vec![0; n], &TPoly::monomial(-1, 1));
                    g.add_term(gamma.clone(), &TPoly::one());
                    g
                })?;
            }
            Ok(f)
        })
        .collect();
    let mut out = CharacterSeries::zero(Window::new(shifted_base(lambda, datum.rho()), depth, tdeg), n);
    for (node, part) in nodes.iter().zip(parts) {
        let sign = TPoly::constant(node.sign());
        for (x, p) in part?.terms() {
            let z: Vec<i64> = x.iter().zip(&node.shift).map(|(a, c)| a + c).collect();
            out.add_term(z, &p.mul_trunc(&sign, tdeg));
        }
    }
    Ok(out)
}

/// `P_λ(t) = W_λ(t)^{−1} J(e^ρ)^{−1} J(f_λ)`, based at `λ`.
pub fn hl_function(datum: &RootDatum, table: &RootTable, lambda: &[i64], depth: usize, tdeg: usize) -> Result<CharacterSeries> {
    let jf = j_f_lambda(datum, table, lambda, depth, tdeg)?;
    let n = datum.n();
    let e_rho = CharacterSeries::from_offset(Window::new(datum.rho().to_vec(), depth, tdeg), n, vec![0; n], TPoly::one());
    let den = apply_j(datum, &e_rho)?.invert()?;
    let w_inv = stabilizer_inverse(datum, lambda, tdeg)?;
    Ok(jf.multiply(&den)?.scale(&w_inv))
}

/// One summand `w(Δ) e^{wλ}` of `H_λ`, based at `0`, for an element with
/// the given inversion set `N(w⁻¹)`. An inverted factor
/// `(1 − t e^{γ})/(1 − e^{γ})` is rewritten as `(t − e^{−γ})/(1 − e^{−γ})`.
pub(crate) fn macdonald_summand(
    datum: &RootDatum,
    table: &RootTable,
    inversions: &[Vec<i64>],
    budget: usize,
    tdeg: usize,
) -> Result<CharacterSeries> {
    let rank = datum.rank();
    let n = datum.n();
    let mut f = CharacterSeries::one(rank, n, budget, tdeg);
    for gamma in inversions {
        // t + (t − 1)(e^{−γ} + e^{−2γ} + ...)
        let mut g = CharacterSeries::zero(Window::at_zero(rank, budget, tdeg), n);
        g.add_term(vec![0; n], &TPoly::monomial(1, 1));
        let h = height(gamma) as usize;
        let mut k = 1;
        while k * h <= budget {
            let x: Vec<i64> = gamma.iter().map(|&a| a * k as i64).collect();
            g.add_term(x, &TPoly::from_coeffs(vec![-1, 1]));
            k += 1;
        }
        f = f.multiply(&g)?;
    }
    for (beta, e) in table.up_to_height(budget) {
        if e.real && inversions.iter().any(|g| g.as_slice() == beta) {
            continue;
        }
        let num = geometric_factor(rank, beta, e.mult, true, false, budget, tdeg);
        let den = geometric_factor(rank, beta, e.mult, false, true, budget, tdeg);
        f = f.multiply(&num)?.multiply(&den)?;
    }
    Ok(f)
}

/// `H_λ(t) = W_λ(t)^{−1} Σ_w w(Δ) e^{wλ}` with
/// `Δ = Π_{α>0} ((1 − t e^{−α})/(1 − e^{−α}))^{m_α}`, based at `λ`.
pub fn macdonald_h(datum: &RootDatum, table: &RootTable, lambda: &[i64], depth: usize, tdeg: usize) -> Result<CharacterSeries> {
    let b = dominant_pairings(datum, lambda)?;
    check_table(table, depth)?;
    let nodes = window_elements(datum, &b, depth, tdeg);
    let parts: Vec<Result<CharacterSeries>> = nodes
        .par_iter()
        .map(|node| macdonald_summand(datum, table, &node.inverse_inversions, depth - height(&node.shift) as usize, tdeg))
        .collect();
    let n = datum.n();
    let mut out = CharacterSeries::zero(Window::integral(lambda, depth, tdeg), n);
    for (node, part) in nodes.iter().zip(parts) {
        for (x, p) in part?.terms() {
            let z: Vec<i64> = x.iter().zip(&node.shift).map(|(a, c)| a + c).collect();
            out.add_term(z, p);
        }
    }
    Ok(out.scale(&stabilizer_inverse(datum, lambda, tdeg)?))
}

/// Coefficients `c_{λμ}(t)` of `P_λ = Σ_μ c_{λμ} χ_μ`, keyed by the offset
/// `λ − μ` in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HlExpansion {
    pub lambda: Vec<i64>,
    pub depth: usize,
    pub tdeg: usize,
    pub coeffs: BTreeMap<Vec<i64>, TPoly>,
}

impl HlExpansion {
    pub fn coeff(&self, offset: &[i64]) -> TPoly {
        self.coeffs.get(offset).cloned().unwrap_or_default()
    }

    /// `(μ, c_{λμ})` sorted by depth then weight.
    pub fn rows(&self, datum: &RootDatum) -> Vec<(Vec<i64>, TPoly)> {
        let mut rows: Vec<(i64, Vec<i64>, TPoly)> = self
            .coeffs
            .iter()
            .map(|(x, p)| {
                let s = datum.weight_of_root_vector(x);
                (height(x), self.lambda.iter().zip(&s).map(|(a, b)| a - b).collect(), p.clone())
            })
            .collect();
        rows.sort();
        rows.into_iter().map(|(_, w, p)| (w, p)).collect()
    }

    /// `Σ_μ c_{λμ} χ_μ` in the monomial basis.
    pub fn to_series(&self, datum: &RootDatum, table: &RootTable) -> Result<CharacterSeries> {
        let mut out = CharacterSeries::zero(Window::integral(&self.lambda, self.depth, self.tdeg), datum.n());
        for (x, c) in &self.coeffs {
            let s = datum.weight_of_root_vector(x);
            let mu: Vec<i64> = self.lambda.iter().zip(&s).map(|(a, b)| a - b).collect();
            let chi = weyl_kac_character(datum, table, &mu, self.depth - height(x) as usize)?;
            for (z, m) in chi.terms() {
                let y: Vec<i64> = x.iter().zip(z).map(|(a, b)| a + b).collect();
                out.add_term(y, &c.mul_trunc(m, self.tdeg));
            }
        }
        Ok(out)
    }
}

/// Offsets `x ≥ 0` with `ht(x) ≤ depth` for which `λ − x` is dominant,
/// by height then lexicographically.
pub fn dominant_offsets(datum: &RootDatum, lambda: &[i64], depth: usize) -> Result<Vec<Vec<i64>>> {
    let b = dominant_pairings(datum, lambda)?;
    let gcm = datum.gcm();
    let n = datum.n();
    let mut out = Vec::new();
    for h in 0..=depth as i64 {
        for x in crate::roots::vectors_of_height(n, h) {
            if (0..n).all(|i| b[i] >= gcm.pair_root_vector(i, &x)) {
                out.push(x);
            }
        }
    }
    Ok(out)
}

/// Reads off `χ`-coefficients of a `W`-invariant series top-down: the
/// coefficient at the highest unprocessed dominant weight is recorded and
/// its multiple of `χ_μ` subtracted. The residual must vanish.
pub fn chi_expansion(datum: &RootDatum, table: &RootTable, lambda: &[i64], series: &CharacterSeries) -> Result<HlExpansion> {
    let depth = series.depth();
    let tdeg = series.tdeg();
    check_table(table, depth)?;
    let mut residual = series.clone();
    let mut coeffs = BTreeMap::new();
    for x in dominant_offsets(datum, lambda, depth)? {
        let c = residual.coeff_at(&x);
        if c.is_zero() {
            continue;
        }
        let s = datum.weight_of_root_vector(&x);
        let mu: Vec<i64> = lambda.iter().zip(&s).map(|(a, b)| a - b).collect();
        let chi = weyl_kac_character(datum, table, &mu, depth - height(&x) as usize)?;
        let neg = c.neg();
        for (z, m) in chi.terms() {
            let y: Vec<i64> = x.iter().zip(z).map(|(a, b)| a + b).collect();
            residual.add_term(y, &neg.mul_trunc(m, tdeg));
        }
        coeffs.insert(x, c);
    }
    if let Some((x, p)) = residual.terms().next() {
        return Err(Error::Internal(format!("series is not a combination of characters: {p} left at offset {x:?}")));
    }
    Ok(HlExpansion { lambda: lambda.to_vec(), depth, tdeg, coeffs })
}

/// `c_{λμ}` for every dominant `μ` in the window, by subtracting characters
/// from `P_λ`.
pub fn hl_coeff_triangular(datum: &RootDatum, table: &RootTable, lambda: &[i64], depth: usize, tdeg: usize) -> Result<HlExpansion> {
    let p = hl_function(datum, table, lambda, depth, tdeg)?;
    chi_expansion(datum, table, lambda, &p)
}

/// Dense table of polynomials in `x` over the box `0 ≤ y ≤ top`.
struct BoxTable {
    dims: Vec<usize>,
    strides: Vec<usize>,
    cells: Vec<TPoly>,
    tdeg: usize,
}

impl BoxTable {
    fn new(top: &[i64], tdeg: usize) -> BoxTable {
        let dims: Vec<usize> = top.iter().map(|&c| c as usize + 1).collect();
        let mut strides = vec![1; dims.len()];
        for k in (0..dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        let size = dims.iter().product();
        let mut cells = vec![TPoly::zero(); size];
        cells[0] = TPoly::one();
        BoxTable { dims, strides, cells, tdeg }
    }

    fn offset(&self, v: &[i64]) -> Option<usize> {
        let mut o = 0;
        for (k, &c) in v.iter().enumerate() {
            if c < 0 || c as usize >= self.dims[k] {
                return None;
            }
            o += c as usize * self.strides[k];
        }
        Some(o)
    }

    fn coords(&self, mut o: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|&s| {
                let c = o / s;
                o %= s;
                c
            })
            .collect()
    }

    /// Multiplies by `x + e^{−v}` when `base_x`, else by `1 + x e^{−v}`.
    fn mul_binomial(&mut self, v: &[i64], base_x: bool) {
        let step = match self.offset(v) {
            Some(s) => s,
            None => {
                if base_x {
                    self.mul_x();
                }
                return;
            }
        };
        let x = TPoly::monomial(1, 1);
        for o in (0..self.cells.len()).rev() {
            let c = self.coords(o);
            let below = c.iter().zip(v).all(|(&a, &b)| a as i64 >= b);
            let lower = if below { Some(self.cells[o - step].clone()) } else { None };
            let cur = &mut self.cells[o];
            if base_x {
                // x·cur + lower
                *cur = cur.mul_trunc(&x, self.tdeg);
                if let Some(l) = lower {
                    cur.add_assign(&l);
                }
            } else if let Some(l) = lower {
                // cur + x·lower
                cur.add_product(&x, &l, self.tdeg);
            }
        }
    }

    fn mul_x(&mut self) {
        let x = TPoly::monomial(1, 1);
        for c in &mut self.cells {
            *c = c.mul_trunc(&x, self.tdeg);
        }
    }

    fn top(&self) -> &TPoly {
        self.cells.last().expect("box is never empty")
    }
}

fn offset_below(datum: &RootDatum, lambda: &[i64], mu: &[i64]) -> Result<Vec<i64>> {
    if lambda.len() != mu.len() {
        return Err(Error::DimensionMismatch { expected: lambda.len(), found: mu.len() });
    }
    let diff: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
    match datum.root_coordinates(&diff) {
        Some(x) if x.iter().all(|&c| c >= 0) => Ok(x),
        _ => Err(Error::NotBelow(format!("{mu:?} is not below {lambda:?}"))),
    }
}

/// `c_{λμ}(t)` directly as a signed count of root multisets.
///
/// `W_λ(t) c_{λμ}(t)` is the coefficient of `e^{μ+ρ}` in `J(f_λ)`:
/// `Σ_w (−1)^{ℓ(w)} [e^{−(wλ−μ)}] Π_{γ∈N(w⁻¹)} (x + e^{−γ}) Π_{β∉N(w⁻¹)} (1 + x e^{−β})^{m_β}`
/// at `x = −t`. Each product is evaluated by a dynamic program over the box
/// below `wλ − μ`, so root multisets use each `β` at most `m_β` times.
pub fn hl_coeff_direct(datum: &RootDatum, table: &RootTable, lambda: &[i64], mu: &[i64], tdeg: usize) -> Result<TPoly> {
    let b = dominant_pairings(datum, lambda)?;
    dominant_pairings(datum, mu)?;
    let s = offset_below(datum, lambda, mu)?;
    let depth = height(&s) as usize;
    check_table(table, depth)?;
    let gens: Vec<usize> = (0..datum.n()).collect();
    let nodes = enumerate_elements(datum.gcm(), &gens, &b, |len, shift| {
        let h = height(shift) as usize;
        h <= depth && len <= depth + tdeg && shift.iter().zip(&s).all(|(a, c)| a <= c)
    });
    let roots: Vec<(Vec<i64>, i64, bool)> = table.up_to_height(depth).map(|(a, e)| (a.to_vec(), e.mult, e.real)).collect();
    let parts: Vec<TPoly> = nodes
        .par_iter()
        .map(|node| {
            let target: Vec<i64> = s.iter().zip(&node.shift).map(|(a, c)| a - c).collect();
            let mut dp = BoxTable::new(&target, tdeg);
            for gamma in &node.inverse_inversions {
                dp.mul_binomial(gamma, true);
            }
            for (beta, m, real) in &roots {
                if *real && node.inverse_inversions.iter().any(|g| g == beta) {
                    continue;
                }
                if beta.iter().zip(&target).any(|(a, c)| a > c) {
                    continue;
                }
                for _ in 0..*m {
                    dp.mul_binomial(beta, false);
                }
            }
            let p = dp.top();
            let signed: Vec<i64> = p.coeffs().iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c } else { -c }).collect();
            TPoly::from_coeffs(signed).scale(node.sign())
        })
        .collect();
    let mut acc = TPoly::zero();
    for p in &parts {
        acc.add_assign(p);
    }
    Ok(acc.mul_trunc(&stabilizer_inverse(datum, lambda, tdeg)?, tdeg))
}

/// [`hl_coeff_direct`] for every dominant `μ` in the window.
pub fn hl_expansion_direct(datum: &RootDatum, table: &RootTable, lambda: &[i64], depth: usize, tdeg: usize) -> Result<HlExpansion> {
    let offsets = dominant_offsets(datum, lambda, depth)?;
    let values: Vec<Result<TPoly>> = offsets
        .par_iter()
        .map(|x| {
            let s = datum.weight_of_root_vector(x);
            let mu: Vec<i64> = lambda.iter().zip(&s).map(|(a, b)| a - b).collect();
            hl_coeff_direct(datum, table, lambda, &mu, tdeg)
        })
        .collect();
    let mut coeffs = BTreeMap::new();
    for (x, v) in offsets.into_iter().zip(values) {
        let v = v?;
        if !v.is_zero() {
            coeffs.insert(x, v);
        }
    }
    Ok(HlExpansion { lambda: lambda.to_vec(), depth, tdeg, coeffs })
}

/// Outcome of the three coefficient checks on an expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CpropReport {
    /// Coefficients lie in `Z[t]` and are supported on dominant `μ ≤ λ`.
    pub integral_support: bool,
    /// `c_{λλ} = 1`
    pub leading_one: bool,
    /// `c_{λμ}(0) = 0` for `μ < λ`
    pub vanish_at_zero: bool,
}

impl CpropReport {
    pub fn passed(&self) -> bool {
        self.integral_support && self.leading_one && self.vanish_at_zero
    }
}

pub fn check_cprop(datum: &RootDatum, expansion: &HlExpansion) -> CpropReport {
    let zero = vec![0; datum.n()];
    let b = datum.coroot_pairings(&expansion.lambda).ok();
    let integral_support = b.is_some_and(|b| {
        expansion.coeffs.iter().all(|(x, p)| {
            x.iter().all(|&c| c >= 0)
                && height(x) as usize <= expansion.depth
                && p.degree().unwrap_or(0) <= expansion.tdeg
                && (0..datum.n()).all(|i| b[i] >= datum.gcm().pair_root_vector(i, x))
        })
    });
    let leading_one = expansion.coeff(&zero) == TPoly::one();
    let vanish_at_zero = expansion.coeffs.iter().all(|(x, p)| *x == zero || p.coeff(0) == 0);
    CpropReport { integral_support, leading_one, vanish_at_zero }
}
