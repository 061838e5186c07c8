//! Shared fixtures and brute-force oracles for integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use km_satake::{validate_gcm, RootDatum, TPoly};

pub fn datum(rows: &[&[i64]]) -> RootDatum {
    RootDatum::simply_connected(&validate_gcm(rows.iter().map(|r| r.to_vec()).collect()).unwrap())
}

pub fn a1() -> RootDatum {
    datum(&[&[2]])
}

pub fn a2() -> RootDatum {
    datum(&[&[2, -1], &[-1, 2]])
}

pub fn b2() -> RootDatum {
    datum(&[&[2, -2], &[-1, 2]])
}

pub fn g2() -> RootDatum {
    datum(&[&[2, -1], &[-3, 2]])
}

pub fn affine_a1() -> RootDatum {
    datum(&[&[2, -2], &[-2, 2]])
}

pub fn hyperbolic() -> RootDatum {
    datum(&[&[2, -3], &[-3, 2]])
}

/// Dominant weights `Σ c_i ω_i` with `c_i ≤ max` (corank-zero data only).
pub fn dominant_weights(d: &RootDatum, max: i64) -> Vec<Vec<i64>> {
    let n = d.n();
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=max).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    // λ = Σ c_i ω_i
    out.into_iter()
        .map(|c| {
            let mut w = vec![num_rational::Rational64::from_integer(0); d.rank()];
            for (i, &ci) in c.iter().enumerate() {
                for (k, x) in d.fundamental_weight(i).iter().enumerate() {
                    w[k] += x * ci;
                }
            }
            w.iter().map(|x| x.to_integer()).collect()
        })
        .collect()
}

pub type Laurent = BTreeMap<Vec<i64>, TPoly>;

fn add_to(map: &mut Laurent, k: Vec<i64>, p: &TPoly) {
    let e = map.entry(k.clone()).or_default();
    e.add_assign(p);
    if e.is_zero() {
        map.remove(&k);
    }
}

fn mul_laurent(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (x, p) in a {
        for (y, q) in b {
            let z: Vec<i64> = x.iter().zip(y).map(|(u, v)| u + v).collect();
            add_to(&mut out, z, &p.mul_trunc(q, 64));
        }
    }
    out
}

/// The full Weyl group of a finite-type datum as matrices acting on
/// weights, with lengths from a breadth-first search.
pub struct FiniteWeyl {
    pub elements: Vec<(Vec<Vec<i64>>, usize)>,
}

fn reflect_weight(d: &RootDatum, i: usize, v: &[i64]) -> Vec<i64> {
    let c: i64 = v.iter().zip(d.simple_coroot(i)).map(|(a, b)| a * b).sum();
    v.iter().zip(d.simple_root(i)).map(|(a, b)| a - c * b).collect()
}

impl FiniteWeyl {
    pub fn new(d: &RootDatum) -> FiniteWeyl {
        let r = d.rank();
        let id: Vec<Vec<i64>> = (0..r).map(|k| (0..r).map(|j| (j == k) as i64).collect()).collect();
        let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
        let mut elements = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back((id, 0usize));
        while let Some((m, len)) = queue.pop_front() {
            for i in 0..d.n() {
                // columns are images of unit vectors
                let next: Vec<Vec<i64>> = m.iter().map(|col| reflect_weight(d, i, col)).collect();
                if seen.insert(next.clone()) {
                    queue.push_back((next, len + 1));
                }
            }
            elements.push((m, len));
            assert!(elements.len() < 100_000, "group is not finite");
        }
        FiniteWeyl { elements }
    }

    pub fn act(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
        let r = v.len();
        (0..r).map(|j| (0..r).map(|k| m[k][j] * v[k]).sum()).collect()
    }

    /// Positive roots in weight coordinates.
    pub fn positive_roots(&self, d: &RootDatum) -> Vec<Vec<i64>> {
        let mut set = BTreeSet::new();
        for (m, _) in &self.elements {
            for i in 0..d.n() {
                let a = Self::act(m, d.simple_root(i));
                if d.root_coordinates(&a).unwrap().iter().all(|&c| c >= 0) {
                    set.insert(a);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn stabilizer_poincare(&self, lambda: &[i64]) -> TPoly {
        let mut p = TPoly::zero();
        for (m, len) in &self.elements {
            if Self::act(m, lambda) == lambda {
                p.add_assign(&TPoly::monomial(1, *len));
            }
        }
        p
    }

    fn alternate(&self, f: &Laurent) -> Laurent {
        let mut out = Laurent::new();
        for (m, len) in &self.elements {
            let sign = if len % 2 == 0 { 1 } else { -1 };
            for (x, p) in f {
                add_to(&mut out, Self::act(m, x), &p.scale(sign));
            }
        }
        out
    }
}

fn height_key(d: &RootDatum, top: &[i64], x: &[i64]) -> (i64, Vec<i64>) {
    let diff: Vec<i64> = top.iter().zip(x).map(|(a, b)| a - b).collect();
    let c = d.root_coordinates(&diff).expect("weight differences lie in the root lattice");
    (c.iter().sum(), x.to_vec())
}

/// `P_λ(t)` as an exact Laurent polynomial, from the full finite Weyl
/// group and exact division by the Weyl denominator.
pub fn brute_force_hl(d: &RootDatum, w: &FiniteWeyl, lambda: &[i64]) -> Laurent {
    let rho: Vec<i64> = d.rho().iter().map(|x| x.to_integer()).collect();
    let top: Vec<i64> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut f = Laurent::new();
    f.insert(top.clone(), TPoly::one());
    for alpha in w.positive_roots(d) {
        let mut g = Laurent::new();
        g.insert(vec![0; d.rank()], TPoly::one());
        g.insert(alpha.iter().map(|c| -c).collect(), TPoly::monomial(-1, 1));
        f = mul_laurent(&f, &g);
    }
    let mut num = w.alternate(&f);
    let mut e_rho = Laurent::new();
    e_rho.insert(rho.clone(), TPoly::one());
    let den = w.alternate(&e_rho);
    // divide by the Weyl denominator; its leading term e^ρ has coefficient 1
    let mut quot = Laurent::new();
    let mut steps = 0;
    while let Some(lead) = num.keys().min_by_key(|x| height_key(d, &top, x)).cloned() {
        let c = num[&lead].clone();
        let q: Vec<i64> = lead.iter().zip(&rho).map(|(a, b)| a - b).collect();
        add_to(&mut quot, q.clone(), &c);
        for (x, p) in &den {
            let z: Vec<i64> = q.iter().zip(x).map(|(a, b)| a + b).collect();
            add_to(&mut num, z, &p.mul_trunc(&c, 64).neg());
        }
        steps += 1;
        assert!(steps < 100_000, "division by the Weyl denominator did not terminate");
    }
    let stab = w.stabilizer_poincare(lambda);
    let inv = stab.inverse(64).unwrap();
    quot.into_iter()
        .map(|(x, p)| {
            let r = p.mul_trunc(&inv, 64);
            assert_eq!(r.mul_trunc(&stab, 64), p, "stabilizer polynomial does not divide");
            (x, r)
        })
        .collect()
}

/// Number-of-multisets polynomial `Σ_A x^{♯A}` over sets `A` of positive
/// roots (root coordinates) summing to `gamma`.
fn subset_sums(roots: &[Vec<i64>], gamma: &[i64]) -> TPoly {
    fn go(roots: &[Vec<i64>], rest: &mut Vec<i64>, k: usize, used: usize, out: &mut Vec<i64>) {
        if rest.iter().all(|&c| c == 0) {
            if out.len() <= used {
                out.resize(used + 1, 0);
            }
            out[used] += 1;
        }
        for j in k..roots.len() {
            if roots[j].iter().zip(rest.iter()).all(|(a, b)| a <= b) {
                for (c, a) in rest.iter_mut().zip(&roots[j]) {
                    *c -= a;
                }
                go(roots, rest, j + 1, used + 1, out);
                for (c, a) in rest.iter_mut().zip(&roots[j]) {
                    *c += a;
                }
            }
        }
    }
    if gamma.iter().any(|&c| c < 0) {
        return TPoly::zero();
    }
    let mut out = Vec::new();
    go(roots, &mut gamma.to_vec(), 0, 0, &mut out);
    TPoly::from_coeffs(out)
}

/// `c_{λμ}(t) = W_λ(t)^{−1} Σ_w (−1)^{ℓ(w)} p_{λ+ρ−w⁻¹(μ+ρ)}(−t)` summed
/// over the whole finite group.
pub fn brute_force_coeff(d: &RootDatum, w: &FiniteWeyl, lambda: &[i64], mu: &[i64], tdeg: usize) -> TPoly {
    let rho: Vec<i64> = d.rho().iter().map(|x| x.to_integer()).collect();
    let lr: Vec<i64> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mr: Vec<i64> = mu.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let roots: Vec<Vec<i64>> = w.positive_roots(d).iter().map(|a| d.root_coordinates(a).unwrap()).collect();
    let mut acc = TPoly::zero();
    for (m, len) in &w.elements {
        // w⁻¹(μ+ρ) runs over the orbit as w does
        let image = FiniteWeyl::act(m, &mr);
        let diff: Vec<i64> = lr.iter().zip(&image).map(|(a, b)| a - b).collect();
        let gamma = d.root_coordinates(&diff).unwrap();
        let p = subset_sums(&roots, &gamma);
        let signed: Vec<i64> = p.coeffs().iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c } else { -c }).collect();
        let sign = if len % 2 == 0 { 1 } else { -1 };
        acc.add_assign(&TPoly::from_coeffs(signed).scale(sign));
    }
    let inv = w.stabilizer_poincare(lambda).inverse(tdeg).unwrap();
    acc.mul_trunc(&inv, tdeg)
}

/// Terms of an exact Laurent polynomial within `depth` below `lambda` and
/// `t`-degree `tdeg`, as sorted `(weight, coeffs)` pairs.
pub fn window_rows(d: &RootDatum, lambda: &[i64], f: &Laurent, depth: usize, tdeg: usize) -> BTreeMap<Vec<i64>, Vec<i64>> {
    let mut out = BTreeMap::new();
    for (x, p) in f {
        let diff: Vec<i64> = lambda.iter().zip(x).map(|(a, b)| a - b).collect();
        let c = d.root_coordinates(&diff).unwrap();
        if c.iter().all(|&v| v >= 0) && c.iter().sum::<i64>() as usize <= depth {
            let p = p.clone().truncated(tdeg);
            if !p.is_zero() {
                out.insert(x.clone(), p.coeffs().to_vec());
            }
        }
    }
    out
}
