//! Independent oracles and random generators shared by the integration tests.
//!
//! The oracles only use term lists and exponent vectors; they never call the
//! Groebner engine they are checking.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use frobcheck::{Monomial, PolyRing, Polynomial, Ring, VariableId};
use rand::Rng;

pub type Exps = Vec<u32>;

pub fn named_ring(p: u64, n: usize) -> Ring {
    let names = ["x", "y", "z", "w", "v", "t"];
    PolyRing::new(p, names[..n].iter().map(|s| VariableId::named(s)).collect()).unwrap()
}

pub fn terms_of(f: &Polynomial) -> Vec<(Exps, u64)> {
    f.terms().iter().map(|(m, c)| (m.exponents(), *c as u64)).collect()
}

pub fn from_exps(ring: &Ring, terms: &[(Exps, u64)]) -> Polynomial {
    Polynomial::from_terms(ring, terms.iter().map(|(e, c)| (Monomial::from_exponents(e), *c as u32)))
}

/// All exponent vectors of total degree d in n variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exps> {
    fn rec(n: usize, left: u32, cur: &mut Exps, out: &mut Vec<Exps>) {
        if cur.len() == n - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

pub fn random_homogeneous<R: Rng>(rng: &mut R, ring: &Ring, d: u32, max_terms: usize) -> Polynomial {
    let p = ring.characteristic() as u64;
    let mons = monomials_of_degree(ring.nvars(), d);
    let k = rng.gen_range(1..=max_terms.min(mons.len()));
    let mut terms = Vec::new();
    for _ in 0..k {
        let m = mons[rng.gen_range(0..mons.len())].clone();
        terms.push((m, rng.gen_range(1..p)));
    }
    let f = from_exps(ring, &terms);
    if f.is_zero() {
        from_exps(ring, &[(mons[0].clone(), 1)])
    } else {
        f
    }
}

fn inv(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn add_exps(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// Membership of f in the ideal generated by homogeneous `gens`, decided by
/// row reduction on the degree-d graded pieces of (gens), d ranging over the
/// degrees of f's homogeneous components. Exact for homogeneous ideals.
pub fn linear_algebra_member(p: u64, nvars: usize, gens: &[Vec<(Exps, u64)>], f: &[(Exps, u64)]) -> bool {
    let mut components: BTreeMap<u32, Vec<(Exps, u64)>> = BTreeMap::new();
    for (e, c) in f {
        components.entry(degree(e)).or_default().push((e.clone(), *c));
    }
    components.into_iter().all(|(d, comp)| graded_member(p, nvars, gens, &comp, d))
}

fn graded_member(p: u64, nvars: usize, gens: &[Vec<(Exps, u64)>], f: &[(Exps, u64)], d: u32) -> bool {
    let basis = monomials_of_degree(nvars, d);
    let index: BTreeMap<Exps, usize> = basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let width = basis.len();
    let vector = |terms: &[(Exps, u64)]| {
        let mut v = vec![0u64; width];
        for (e, c) in terms {
            let i = index[e];
            v[i] = (v[i] + c) % p;
        }
        v
    };
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for g in gens {
        if g.is_empty() {
            continue;
        }
        let dg = degree(&g[0].0);
        if dg > d {
            continue;
        }
        for m in monomials_of_degree(nvars, d - dg) {
            let shifted: Vec<(Exps, u64)> = g.iter().map(|(e, c)| (add_exps(e, &m), *c)).collect();
            rows.push(vector(&shifted));
        }
    }
    // Row echelon form with pivots recorded per column.
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new();
    for mut row in rows {
        for (col, prow) in &pivots {
            let c = row[*col];
            if c != 0 {
                for k in 0..width {
                    row[k] = (row[k] + p - c * prow[k] % p) % p;
                }
            }
        }
        if let Some(col) = row.iter().position(|&c| c != 0) {
            let s = inv(row[col], p);
            for x in row.iter_mut() {
                *x = *x * s % p;
            }
            // Keep earlier pivot rows reduced against the new pivot column.
            for (_, prow) in pivots.iter_mut() {
                let c = prow[col];
                if c != 0 {
                    for k in 0..width {
                        prow[k] = (prow[k] + p - c * row[k] % p) % p;
                    }
                }
            }
            pivots.push((col, row));
        }
    }
    let mut v = vector(f);
    for (col, prow) in &pivots {
        let c = v[*col];
        if c != 0 {
            for k in 0..width {
                v[k] = (v[k] + p - c * prow[k] % p) % p;
            }
        }
    }
    v.iter().all(|&c| c == 0)
}

/// Minimal generators of the monomial ideal generated by `gens`.
pub fn minimalize(gens: &[Exps]) -> BTreeSet<Exps> {
    let divides = |a: &Exps, b: &Exps| a.iter().zip(b).all(|(x, y)| x <= y);
    let uniq: BTreeSet<Exps> = gens.iter().cloned().collect();
    uniq.iter()
        .filter(|g| !uniq.iter().any(|h| h != *g && divides(h, g)))
        .cloned()
        .collect()
}

pub fn monomial_intersect(a: &[Exps], b: &[Exps]) -> BTreeSet<Exps> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            out.push(x.iter().zip(y).map(|(u, v)| *u.max(v)).collect());
        }
    }
    minimalize(&out)
}

/// (a) : (b) = ∩_j (m_i / gcd(m_i, n_j))_i.
pub fn monomial_colon(a: &[Exps], b: &[Exps]) -> BTreeSet<Exps> {
    let mut acc: Option<BTreeSet<Exps>> = None;
    for n in b {
        let part: Vec<Exps> = a
            .iter()
            .map(|m| m.iter().zip(n).map(|(u, v)| u.saturating_sub(*v)).collect())
            .collect();
        let part = minimalize(&part);
        acc = Some(match acc {
            None => part,
            Some(prev) => {
                let prev: Vec<Exps> = prev.into_iter().collect();
                let part: Vec<Exps> = part.into_iter().collect();
                monomial_intersect(&prev, &part)
            }
        });
    }
    acc.expect("nonempty divisor list")
}

pub fn random_monomials<R: Rng>(rng: &mut R, nvars: usize, count: usize, max_exp: u32) -> Vec<Exps> {
    (0..count)
        .map(|_| loop {
            let e: Exps = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
            if degree(&e) > 0 {
                break e;
            }
        })
        .collect()
}

/// Leibniz-formula determinant of a square matrix of polynomials.
pub fn leibniz_det(ring: &Ring, m: &[Vec<Polynomial>]) -> Polynomial {
    let k = m.len();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut total = Polynomial::zero(ring);
    permute(&mut perm, 0, &mut |pi| {
        let inversions = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| pi[i] > pi[j]).count();
        let mut term = Polynomial::one(ring);
        for (row, &col) in pi.iter().enumerate() {
            term = &term * &m[row][col];
        }
        total = if inversions % 2 == 0 { &total + &term } else { &total - &term };
    });
    total
}

fn permute(v: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize])) {
    if start == v.len() {
        f(v);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permute(v, start + 1, f);
        v.swap(start, i);
    }
}

/// Exponents of the named variables, rendered the way the toolkit prints monomials.
pub fn render_monomial(ring: &Ring, exps: &BTreeMap<VariableId, u32>) -> String {
    let mut parts = Vec::new();
    for v in ring.vars() {
        match exps.get(v).copied().unwrap_or(0) {
            0 => {}
            1 => parts.push(v.to_string()),
            e => parts.push(format!("{v}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}
