//! Built-in consistency suites run by the `selftest` command.

use crate::characters::{denominator_defect, freudenthal_table, weyl_kac_character, CharacterTable};
use crate::datum::RootDatum;
use crate::error::Result;
use crate::gcm::validate_gcm;
use crate::hall_littlewood::{chi_expansion, check_cprop, hl_coeff_direct, hl_expansion_direct, hl_function, macdonald_h};
use crate::poly::TPoly;
use crate::roots::enumerate_roots;
use crate::satake::{gamma_count, mv_prediction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Finite type A1 only.
    Quick,
    /// Adds A2, affine A1 and the hyperbolic matrix `[[2,-3],[-3,2]]`.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn datum(rows: &[&[i64]]) -> RootDatum {
    let gcm = validate_gcm(rows.iter().map(|r| r.to_vec()).collect()).expect("built-in matrix is a GCM");
    RootDatum::simply_connected(&gcm)
}

fn record(out: &mut Vec<Check>, name: &str, res: Result<bool>) {
    let (passed, detail) = match res {
        Ok(true) => (true, String::new()),
        Ok(false) => (false, "mismatch".to_string()),
        Err(e) => (false, e.to_string()),
    };
    out.push(Check { name: name.to_string(), passed, detail });
}

fn denominator(d: &RootDatum, depth: usize) -> Result<bool> {
    let t = enumerate_roots(d, depth)?;
    Ok(denominator_defect(d, &t, depth)?.is_empty())
}

fn characters_agree(d: &RootDatum, lambdas: &[Vec<i64>], depth: usize) -> Result<bool> {
    let t = enumerate_roots(d, depth)?;
    for lam in lambdas {
        let wk = CharacterTable::from_series(lam, &weyl_kac_character(d, &t, lam, depth)?)?;
        if wk.mults != freudenthal_table(d, &t, lam, depth)?.mults {
            return Ok(false);
        }
    }
    Ok(true)
}

fn routes_agree(d: &RootDatum, lambdas: &[Vec<i64>], depth: usize, tdeg: usize) -> Result<bool> {
    let t = enumerate_roots(d, depth)?;
    for lam in lambdas {
        let p = hl_function(d, &t, lam, depth, tdeg)?;
        if p != macdonald_h(d, &t, lam, depth, tdeg)? {
            return Ok(false);
        }
        let tri = chi_expansion(d, &t, lam, &p)?;
        if tri != hl_expansion_direct(d, &t, lam, depth, tdeg)? || !check_cprop(d, &tri).passed() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn run(level: Level) -> Vec<Check> {
    let mut out = Vec::new();
    let a1 = datum(&[&[2]]);
    record(&mut out, "A1 c(2rho,0) = -t", (|| {
        let t = enumerate_roots(&a1, 2)?;
        Ok(hl_coeff_direct(&a1, &t, &[2], &[0], 6)? == TPoly::monomial(-1, 1))
    })());
    record(&mut out, "A1 denominator identity", denominator(&a1, 8));
    let a1_weights: Vec<Vec<i64>> = (0..7).map(|k| vec![k]).collect();
    record(&mut out, "A1 Weyl-Kac = Freudenthal", characters_agree(&a1, &a1_weights, 8));
    record(&mut out, "A1 Macdonald = Hall-Littlewood and direct = triangular", routes_agree(&a1, &a1_weights[..5], 6, 6));
    record(&mut out, "A1 count series for (alpha, 0)", (|| {
        let p = mv_prediction(&a1, &[1], &[0], 6)?;
        Ok(p.dimension == 1 && p.top_components == 1 && p.count_series == TPoly::from_coeffs(vec![1, -1]))
    })());
    record(&mut out, "A1 gamma count", (|| {
        for k in 0..5 {
            let g = gamma_count(&a1, &[k], &[0])?;
            if g.count != 2 * k {
                return Ok(false);
            }
        }
        Ok(true)
    })());
    if level == Level::Quick {
        return out;
    }

    let a2 = datum(&[&[2, -1], &[-1, 2]]);
    let a2_weights = vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 1]];
    record(&mut out, "A2 Macdonald = Hall-Littlewood and direct = triangular", routes_agree(&a2, &a2_weights, 6, 6));
    let aff = datum(&[&[2, -2], &[-2, 2]]);
    record(&mut out, "affine A1 denominator identity", denominator(&aff, 8));
    let aff_weights = vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![2, 0, 0]];
    record(&mut out, "affine A1 Weyl-Kac = Freudenthal", characters_agree(&aff, &aff_weights, 8));
    record(&mut out, "affine A1 Macdonald = Hall-Littlewood and direct = triangular", routes_agree(&aff, &aff_weights[..3], 6, 6));
    record(&mut out, "affine A1 constant term of count series", (|| {
        // (0,0,1) pairs to 1 with α_0 and 0 with α_1
        let lam = [0, 0, 1];
        for nu in [[0, 0, 1], [-1, 0, 1], [-1, -1, 1], [-2, -1, 1]] {
            mv_prediction(&aff, &lam, &nu, 4)?;
        }
        Ok(true)
    })());
    let hyp = datum(&[&[2, -3], &[-3, 2]]);
    record(&mut out, "hyperbolic denominator identity", denominator(&hyp, 5));
    record(&mut out, "hyperbolic Weyl-Kac = Freudenthal", characters_agree(&hyp, &[vec![0, 0], vec![1, 0], vec![1, 1]], 5));
    out
}
