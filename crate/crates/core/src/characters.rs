//! Irreducible highest-weight characters: the Weyl–Kac formula and the
//! Freudenthal recursion.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::Serialize;

use crate::datum::RootDatum;
use crate::error::{Error, Result};
use crate::poly::TPoly;
use crate::roots::{enumerate_roots, height, vectors_of_height, RootTable};
use crate::series::{apply_j, geometric_factor, CharacterSeries, Window};

fn rational(v: &[i64]) -> Vec<Rational64> {
    v.iter().map(|&x| Rational64::from_integer(x)).collect()
}

pub(crate) fn dominant_pairings(datum: &RootDatum, weight: &[i64]) -> Result<Vec<i64>> {
    let b = datum.coroot_pairings(weight)?;
    if b.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(format!("{weight:?}")));
    }
    Ok(b)
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

/// `Π_{α>0} (1 − t^ε e^{−α})^{±m_α}` over roots of height at most `depth`,
/// based at `0`. Factors of larger height cannot reach the window.
pub fn root_product(
    datum: &RootDatum,
    table: &RootTable,
    depth: usize,
    tdeg: usize,
    with_t: bool,
    inverse: bool,
) -> Result<CharacterSeries> {
    check_table(table, depth)?;
    let mut acc = CharacterSeries::one(datum.rank(), datum.n(), depth, tdeg);
    for (alpha, e) in table.up_to_height(depth) {
        let f = geometric_factor(datum.rank(), alpha, e.mult, with_t, inverse, depth, tdeg);
        acc = acc.multiply(&f)?;
    }
    Ok(acc)
}

/// `χ_λ = J(e^{λ+ρ}) e^{−ρ} Π_{α>0} (1 − e^{−α})^{−m_α}`, based at `λ`.
pub fn weyl_kac_character(datum: &RootDatum, table: &RootTable, lambda: &[i64], depth: usize) -> Result<CharacterSeries> {
    dominant_pairings(datum, lambda)?;
    let n = datum.n();
    let lam_rho: Vec<Rational64> = rational(lambda).iter().zip(datum.rho()).map(|(a, b)| a + b).collect();
    let top = CharacterSeries::from_offset(Window::new(lam_rho, depth, 0), n, vec![0; n], TPoly::one());
    let j = apply_j(datum, &top)?;
    let neg_rho: Vec<Rational64> = datum.rho().iter().map(|x| -x).collect();
    let shift = CharacterSeries::from_offset(Window::new(neg_rho, depth, 0), n, vec![0; n], TPoly::one());
    let den = root_product(datum, table, depth, 0, false, true)?;
    j.multiply(&shift)?.multiply(&den)
}

/// `e^{−ρ} J(e^ρ) − Π_{α>0} (1 − e^{−α})^{m_α}` within `depth`; zero
/// exactly when the root multiplicities satisfy the denominator identity.
pub fn denominator_defect(datum: &RootDatum, table: &RootTable, depth: usize) -> Result<CharacterSeries> {
    let n = datum.n();
    let top = CharacterSeries::from_offset(Window::new(datum.rho().to_vec(), depth, 0), n, vec![0; n], TPoly::one());
    let j = apply_j(datum, &top)?;
    // multiplying by e^{−ρ} keeps offsets and moves the base to 0
    let mut lhs = CharacterSeries::zero(Window::at_zero(datum.rank(), depth, 0), n);
    for (x, p) in j.terms() {
        lhs.add_term(x.clone(), p);
    }
    let rhs = root_product(datum, table, depth, 0, false, false)?;
    lhs.sub(&rhs)
}

/// Weight multiplicities of `L(λ)` below `λ`, keyed by offset `λ − ν`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub lambda: Vec<i64>,
    pub depth: usize,
    pub mults: BTreeMap<Vec<i64>, i64>,
}

impl CharacterTable {
    pub fn at(&self, offset: &[i64]) -> Result<i64> {
        if offset.iter().any(|&c| c < 0) {
            return Ok(0);
        }
        if height(offset) as usize > self.depth {
            return Err(Error::OutOfWindow(format!("offset {offset:?} beyond depth {}", self.depth)));
        }
        Ok(self.mults.get(offset).copied().unwrap_or(0))
    }

    pub fn from_series(lambda: &[i64], s: &CharacterSeries) -> Result<CharacterTable> {
        let mut mults = BTreeMap::new();
        for (x, p) in s.terms() {
            if p.degree() != Some(0) || p.coeff(0) < 0 {
                return Err(Error::Internal(format!("character coefficient {p} at {x:?}")));
            }
            mults.insert(x.clone(), p.coeff(0));
        }
        Ok(CharacterTable { lambda: lambda.to_vec(), depth: s.depth(), mults })
    }

    /// `(weight, multiplicity)` rows sorted by depth then weight.
    pub fn rows(&self, datum: &RootDatum) -> Vec<(Vec<i64>, i64)> {
        let mut rows: Vec<(i64, Vec<i64>, i64)> = self
            .mults
            .iter()
            .map(|(x, &m)| {
                let s = datum.weight_of_root_vector(x);
                let w: Vec<i64> = self.lambda.iter().zip(&s).map(|(a, b)| a - b).collect();
                (height(x), w, m)
            })
            .collect();
        rows.sort();
        rows.into_iter().map(|(_, w, m)| (w, m)).collect()
    }
}

/// Freudenthal's recursion
/// `((λ+ρ|λ+ρ) − (ν+ρ|ν+ρ)) m_ν = 2 Σ_{α>0} m_α Σ_{k≥1} (ν+kα|α) m_{ν+kα}`
/// by increasing depth. The form is extended to weights by
/// `(λ|α_i) = d_i ⟨λ, α̌_i⟩`; only differences in the root lattice enter.
pub fn freudenthal_table(datum: &RootDatum, table: &RootTable, lambda: &[i64], depth: usize) -> Result<CharacterTable> {
    let b = dominant_pairings(datum, lambda)?;
    check_table(table, depth)?;
    let d = datum.symmetrizer()?.clone();
    let gcm = datum.gcm();
    let n = datum.n();
    let roots: Vec<(Vec<i64>, i64)> = table.up_to_height(depth).map(|(a, e)| (a.to_vec(), e.mult)).collect();
    // (λ − y | α) for y in the root lattice
    let pair = |y: &[i64], alpha: &[i64]| -> i64 {
        (0..n).map(|i| alpha[i] * d.get(i) * (b[i] - gcm.pair_root_vector(i, y))).sum()
    };
    let mut mults: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    mults.insert(vec![0; n], 1);
    for h in 1..=depth as i64 {
        for x in vectors_of_height(n, h) {
            let lhs: i64 = (0..n).map(|i| x[i] * d.get(i) * (2 * b[i] + 2 - gcm.pair_root_vector(i, &x))).sum();
            let mut rhs = 0i64;
            for (alpha, m) in &roots {
                if height(alpha) > h {
                    break;
                }
                let mut y: Vec<i64> = x.iter().zip(alpha).map(|(a, c)| a - c).collect();
                while y.iter().all(|&c| c >= 0) {
                    if let Some(&my) = mults.get(&y) {
                        rhs += m * pair(&y, alpha) * my;
                    }
                    for (c, a) in y.iter_mut().zip(alpha) {
                        *c -= a;
                    }
                }
            }
            rhs *= 2;
            let mult = if lhs == 0 {
                if rhs != 0 {
                    return Err(Error::Internal(format!("Freudenthal: zero norm gap with sum {rhs} at {x:?}")));
                }
                0
            } else {
                if rhs % lhs != 0 {
                    return Err(Error::Internal(format!("Freudenthal: {rhs}/{lhs} is not integral at {x:?}")));
                }
                rhs / lhs
            };
            if mult < 0 {
                return Err(Error::Internal(format!("Freudenthal: negative multiplicity at {x:?}")));
            }
            if mult > 0 {
                mults.insert(x, mult);
            }
        }
    }
    Ok(CharacterTable { lambda: lambda.to_vec(), depth, mults })
}

fn offset_below(datum: &RootDatum, lambda: &[i64], nu: &[i64]) -> Result<Vec<i64>> {
    if nu.len() != lambda.len() {
        return Err(Error::DimensionMismatch { expected: lambda.len(), found: nu.len() });
    }
    let diff: Vec<i64> = lambda.iter().zip(nu).map(|(a, b)| a - b).collect();
    match datum.root_coordinates(&diff) {
        Some(x) if x.iter().all(|&c| c >= 0) => Ok(x),
        _ => Err(Error::NotBelow(format!("{nu:?} is not below {lambda:?}"))),
    }
}

pub fn freudenthal_multiplicity(datum: &RootDatum, table: &RootTable, lambda: &[i64], nu: &[i64]) -> Result<i64> {
    let x = offset_below(datum, lambda, nu)?;
    let t = freudenthal_table(datum, table, lambda, height(&x) as usize)?;
    t.at(&x)
}

/// `dim L(λ)_ν` from the Weyl–Kac character; debug builds also run
/// Freudenthal and require agreement.
pub fn weight_multiplicity(datum: &RootDatum, lambda: &[i64], nu: &[i64]) -> Result<i64> {
    let x = offset_below(datum, lambda, nu)?;
    let depth = height(&x) as usize;
    let table = enumerate_roots(datum, depth.max(1))?;
    let chi = weyl_kac_character(datum, &table, lambda, depth)?;
    let p = chi.coeff_at(&x);
    if p.degree().unwrap_or(0) != 0 {
        return Err(Error::Internal(format!("character coefficient {p} depends on t")));
    }
    let m = p.coeff(0);
    if cfg!(debug_assertions) {
        let f = freudenthal_multiplicity(datum, &table, lambda, nu)?;
        if f != m {
            return Err(Error::Internal(format!("Weyl–Kac gives {m}, Freudenthal gives {f}")));
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcm::validate_gcm;
    use crate::linalg;
    use crate::weyl::act;

    fn datum(m: &[&[i64]]) -> RootDatum {
        RootDatum::simply_connected(&validate_gcm(m.iter().map(|r| r.to_vec()).collect()).unwrap())
    }

    #[test]
    fn denominator_identity() {
        for (m, d) in [(&[&[2i64, -2][..], &[-2, 2]][..], 8), (&[&[2, -3], &[-3, 2]], 5), (&[&[2, -1], &[-3, 2]], 6)] {
            let g = datum(m);
            let t = enumerate_roots(&g, d).unwrap();
            assert!(denominator_defect(&g, &t, d).unwrap().is_empty());
        }
    }

    #[test]
    fn a1_adjoint() {
        let a1 = datum(&[&[2]]);
        let t = enumerate_roots(&a1, 4).unwrap();
        let chi = weyl_kac_character(&a1, &t, &[2], 4).unwrap();
        let rows = CharacterTable::from_series(&[2], &chi).unwrap().rows(&a1);
        assert_eq!(rows, vec![(vec![2], 1), (vec![0], 1), (vec![-2], 1)]);
        assert_eq!(freudenthal_multiplicity(&a1, &t, &[2], &[0]).unwrap(), 1);
        assert_eq!(weight_multiplicity(&a1, &[2], &[2]).unwrap(), 1);
        assert!(matches!(weight_multiplicity(&a1, &[2], &[1]), Err(Error::NotBelow(_))));
    }

    #[test]
    fn affine_basic_representation() {
        let aff = datum(&[&[2, -2], &[-2, 2]]);
        let t = enumerate_roots(&aff, 8).unwrap();
        let omega0 = [1, 0, 0];
        let chi = weyl_kac_character(&aff, &t, &omega0, 8).unwrap();
        let fr = freudenthal_table(&aff, &t, &omega0, 8).unwrap();
        assert_eq!(CharacterTable::from_series(&omega0, &chi).unwrap().mults, fr.mults);
        // multiplicities of ω_0 − kδ are the partition numbers
        assert_eq!(fr.at(&[0, 0]).unwrap(), 1);
        assert_eq!(fr.at(&[1, 1]).unwrap(), 1);
        assert_eq!(fr.at(&[2, 2]).unwrap(), 2);
        assert_eq!(fr.at(&[3, 3]).unwrap(), 3);
        assert_eq!(fr.at(&[4, 4]).unwrap(), 5);
    }

    #[test]
    fn hyperbolic_agreement() {
        let h = datum(&[&[2, -3], &[-3, 2]]);
        let t = enumerate_roots(&h, 5).unwrap();
        for lam in [[0, 0], [1, 0], [1, 1], [2, 1]] {
            let chi = weyl_kac_character(&h, &t, &lam, 5).unwrap();
            let fr = freudenthal_table(&h, &t, &lam, 5).unwrap();
            assert_eq!(CharacterTable::from_series(&lam, &chi).unwrap().mults, fr.mults, "{lam:?}");
        }
    }

    #[test]
    fn multiplicities_are_w_invariant() {
        let aff = datum(&[&[2, -2], &[-2, 2]]);
        let t = enumerate_roots(&aff, 8).unwrap();
        let lam = [2, 1, 0];
        let fr = freudenthal_table(&aff, &t, &lam, 8).unwrap();
        let words: [&[usize]; 4] = [&[0], &[1], &[0, 1], &[1, 0, 1, 0]];
        for (x, &m) in &fr.mults {
            let s = aff.weight_of_root_vector(x);
            let nu: Vec<i64> = lam.iter().zip(&s).map(|(a, b)| a - b).collect();
            for w in words {
                let wnu = act(&aff, w, &nu).unwrap();
                let diff: Vec<i64> = lam.iter().zip(&wnu).map(|(a, b)| a - b).collect();
                let y = aff.root_coordinates(&diff).unwrap();
                if y.iter().all(|&c| c >= 0) && height(&y) <= 8 {
                    assert_eq!(fr.at(&y).unwrap(), m);
                }
            }
        }
    }

    /// Computes `(λ+ρ|λ+ρ) − (ν+ρ|ν+ρ)` with a full Gram matrix on
    /// `Λ ⊗ Q` whose weight–weight block is `free`.
    fn norm_gap(d: &RootDatum, lam: &[i64], x: &[i64], free: i64) -> Rational64 {
        // basis: simple roots then unit vectors completing them
        let r = d.rank();
        let n = d.n();
        let mut basis: Vec<Vec<i64>> = d.simple_roots().to_vec();
        for k in 0..r {
            let mut e = vec![0; r];
            e[k] = 1;
            let mut trial = basis.clone();
            trial.push(e.clone());
            if linalg::rank(&trial) == trial.len() {
                basis.push(e);
            }
        }
        assert_eq!(basis.len(), r);
        let sym = d.symmetrizer().unwrap();
        // (v|α_i) = d_i ⟨v, α̌_i⟩ fixes every entry involving a root
        let gram = |a: usize, b: usize| -> i64 {
            let (a, b) = if a < n { (a, b) } else { (b, a) };
            if a < n {
                sym.get(a) * d.pairing(&basis[b], d.simple_coroot(a)).unwrap()
            } else if a == b {
                free
            } else {
                1
            }
        };
        let bq = linalg::to_rational(&linalg::transpose(&basis));
        let inv = linalg::inverse(&bq).unwrap();
        let coords = |v: &[Rational64]| linalg::mat_vec(&inv, v);
        let q = |v: &[Rational64]| -> Rational64 {
            let c = coords(v);
            let mut s = Rational64::from_integer(0);
            for a in 0..r {
                for b in 0..r {
                    s += c[a] * c[b] * gram(a, b);
                }
            }
            s
        };
        let lr: Vec<Rational64> = lam.iter().zip(d.rho()).map(|(&a, b)| b + a).collect();
        let xs = d.weight_of_root_vector(x);
        let nr: Vec<Rational64> = lr.iter().zip(&xs).map(|(a, &b)| a - b).collect();
        q(&lr) - q(&nr)
    }

    #[test]
    fn form_extension_cancels() {
        let aff = datum(&[&[2, -2], &[-2, 2]]);
        let lam = [2, 1, 0];
        for x in [[1, 0], [1, 1], [2, 3], [4, 4]] {
            let a = norm_gap(&aff, &lam, &x, 0);
            let b = norm_gap(&aff, &lam, &x, 7);
            assert_eq!(a, b);
            let b_i = aff.coroot_pairings(&lam).unwrap();
            let sym = aff.symmetrizer().unwrap();
            let closed: i64 = (0..2)
                .map(|i| x[i] * sym.get(i) * (2 * b_i[i] + 2 - aff.gcm().pair_root_vector(i, &x)))
                .sum();
            assert_eq!(a, Rational64::from_integer(closed));
        }
    }
}
