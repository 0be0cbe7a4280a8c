//! Multivariate division and Buchberger's algorithm.
//!
//! Internally polynomials are plain term vectors sorted in decreasing order
//! under the order being computed with; [`Polynomial`] values are only
//! materialized at the boundary.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{PolyRing, Ring};

pub(crate) type Terms = Vec<(Monomial, u32)>;

/// Limits applied to a Groebner computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroebnerConfig {
    /// Abort when a new basis element exceeds this total degree.
    pub degree_cap: u32,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { degree_cap: 60 }
    }
}

/// A reduced Groebner basis: monic, interreduced, sorted by decreasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    sorted: Vec<Terms>,
    leads: Vec<Monomial>,
    masks: Vec<u64>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.order == other.order && self.generators == other.generators
    }
}

impl GroebnerBasis {
    fn from_sorted(ring: &Ring, order: &MonomialOrder, mut sorted: Vec<Terms>) -> Self {
        sorted.sort_by(|a, b| order.compare(&b[0].0, &a[0].0));
        let generators = sorted
            .iter()
            .map(|t| Polynomial::from_distinct_terms(ring, t.clone()))
            .collect();
        let leads: Vec<Monomial> = sorted.iter().map(|t| t[0].0.clone()).collect();
        let masks = leads.iter().map(|m| m.support_mask()).collect();
        GroebnerBasis {
            ring: ring.clone(),
            order: order.clone(),
            generators,
            sorted,
            leads,
            masks,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// True when the basis is {1}.
    pub fn is_unit(&self) -> bool {
        self.leads.len() == 1 && self.leads[0].is_one()
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        PolyRing::check_same(f.ring(), &self.ring)?;
        let field = *self.ring.field();
        let rem = reduce_full(f.terms_sorted_by(&self.order), &self.sorted, &self.leads, &self.masks, &self.order, &field);
        Ok(Polynomial::from_distinct_terms(&self.ring, rem))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Basis of I^[q] from a basis of I.
    ///
    /// Over F_p the map f -> f^q raises every exponent by q and fixes
    /// coefficients; it preserves leading terms and sends a Groebner basis of
    /// I to one of I^[q]. Reducedness is preserved as well.
    pub fn frobenius(&self, q: u64) -> Result<GroebnerBasis> {
        let k = u32::try_from(q).map_err(|_| Error::usage("Frobenius exponent too large"))?;
        crate::field::log_p(q, self.ring.characteristic() as u64)
            .ok_or_else(|| Error::usage(format!("{q} is not a power of the characteristic")))?;
        let sorted = self
            .sorted
            .iter()
            .map(|t| t.iter().map(|(m, c)| (m.pow(k), *c)).collect())
            .collect();
        Ok(Self::from_sorted(&self.ring, &self.order, sorted))
    }

    /// Checks the Buchberger criterion: all S-polynomials reduce to zero.
    pub fn is_groebner(&self) -> bool {
        let field = *self.ring.field();
        for i in 0..self.sorted.len() {
            for j in (i + 1)..self.sorted.len() {
                if self.leads[i].is_coprime(&self.leads[j]) {
                    continue;
                }
                let s = s_polynomial(&self.sorted[i], &self.sorted[j], &self.order, &field);
                let r = reduce_full(s, &self.sorted, &self.leads, &self.masks, &self.order, &field);
                if !r.is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

#[inline]
fn find_divisor(m: &Monomial, leads: &[Monomial], masks: &[u64], active: Option<&[bool]>) -> Option<usize> {
    let mm = m.support_mask();
    for (i, l) in leads.iter().enumerate() {
        if let Some(a) = active {
            if !a[i] {
                continue;
            }
        }
        if masks[i] & !mm == 0 && l.divides(m) {
            return Some(i);
        }
    }
    None
}

/// p[1..] - c * m * g[1..], assuming the leading terms cancel.
fn sub_shifted(p: &[(Monomial, u32)], c: u32, m: &Monomial, g: &[(Monomial, u32)], ord: &MonomialOrder, field: &PrimeField) -> Terms {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (1, 1);
    let mut gj: Option<Monomial> = g.get(1).map(|t| t.0.mul(m));
    while i < p.len() {
        let Some(gm) = gj.as_ref() else { break };
        match ord.compare(&p[i].0, gm) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let v = field.neg(field.mul(c, g[j].1));
                out.push((gj.take().unwrap(), v));
                j += 1;
                gj = g.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let v = field.sub(p[i].1, field.mul(c, g[j].1));
                if v != 0 {
                    out.push((p[i].0.clone(), v));
                }
                i += 1;
                j += 1;
                gj = g.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out.extend(p[i..].iter().cloned());
    while let Some(gm) = gj.take() {
        let v = field.neg(field.mul(c, g[j].1));
        out.push((gm, v));
        j += 1;
        gj = g.get(j).map(|t| t.0.mul(m));
    }
    out
}

/// Full reduction of `f` by monic `basis` elements.
fn reduce_full(f: Terms, basis: &[Terms], leads: &[Monomial], masks: &[u64], ord: &MonomialOrder, field: &PrimeField) -> Terms {
    reduce_with(f, basis, leads, masks, None, ord, field, true)
}

#[allow(clippy::too_many_arguments)]
fn reduce_with(
    mut p: Terms,
    basis: &[Terms],
    leads: &[Monomial],
    masks: &[u64],
    active: Option<&[bool]>,
    ord: &MonomialOrder,
    field: &PrimeField,
    tail: bool,
) -> Terms {
    let mut rem: Terms = Vec::new();
    let mut s = 0;
    while s < p.len() {
        let (m, c) = (&p[s].0, p[s].1);
        match find_divisor(m, leads, masks, active) {
            Some(i) => {
                let shift = leads[i].quotient_of(m).expect("divisor found");
                p = sub_shifted(&p[s..], c, &shift, &basis[i], ord, field);
                s = 0;
            }
            None => {
                if !tail {
                    rem.extend(p.drain(s..));
                    return rem;
                }
                rem.push(p[s].clone());
                s += 1;
            }
        }
    }
    rem
}

fn make_monic(mut t: Terms, field: &PrimeField) -> Terms {
    if let Some(&(_, c)) = t.first() {
        if c != 1 {
            let inv = field.inv(c);
            for term in t.iter_mut() {
                term.1 = field.mul(term.1, inv);
            }
        }
    }
    t
}

/// S-polynomial of two monic term vectors.
fn s_polynomial(a: &Terms, b: &Terms, ord: &MonomialOrder, field: &PrimeField) -> Terms {
    let l = a[0].0.lcm(&b[0].0);
    let ma = a[0].0.quotient_of(&l).unwrap();
    let mb = b[0].0.quotient_of(&l).unwrap();
    // ma*a - mb*b with both leading terms equal to l.
    let shifted_a: Terms = a.iter().map(|(m, c)| (m.mul(&ma), *c)).collect();
    sub_shifted(&shifted_a, 1, &mb, b, ord, field)
}

/// Multivariate division: `f = sum q_i g_i + r`.
///
/// Ties between several divisors go to the smallest index.
pub fn divide(f: &Polynomial, divisors: &[Polynomial], ord: &MonomialOrder) -> Result<(Vec<Polynomial>, Polynomial)> {
    let ring = f.ring();
    for g in divisors {
        PolyRing::check_same(g.ring(), ring)?;
        if g.is_zero() {
            return Err(Error::usage("zero divisor in division basis"));
        }
    }
    let field = *ring.field();
    let sorted: Vec<Terms> = divisors.iter().map(|g| g.terms_sorted_by(ord)).collect();
    let leads: Vec<Monomial> = sorted.iter().map(|t| t[0].0.clone()).collect();
    let masks: Vec<u64> = leads.iter().map(|m| m.support_mask()).collect();
    let inv_lc: Vec<u32> = sorted.iter().map(|t| field.inv(t[0].1)).collect();
    let mut quotients: Vec<Terms> = vec![Vec::new(); divisors.len()];
    let mut rem: Terms = Vec::new();
    let mut p = f.terms_sorted_by(ord);
    let mut s = 0;
    while s < p.len() {
        let (m, c) = (p[s].0.clone(), p[s].1);
        match find_divisor(&m, &leads, &masks, None) {
            Some(i) => {
                let shift = leads[i].quotient_of(&m).unwrap();
                let coef = field.mul(c, inv_lc[i]);
                quotients[i].push((shift.clone(), coef));
                p = sub_shifted(&p[s..], coef, &shift, &sorted[i], ord, &field);
                s = 0;
            }
            None => {
                rem.push(p[s].clone());
                s += 1;
            }
        }
    }
    let qs = quotients
        .into_iter()
        .map(|q| Polynomial::from_terms(ring, q))
        .collect();
    Ok((qs, Polynomial::from_distinct_terms(ring, rem)))
}

/// Remainder of `f` modulo the list `basis` (not necessarily a Groebner basis).
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], ord: &MonomialOrder) -> Result<Polynomial> {
    divide(f, basis, ord).map(|(_, r)| r)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

impl Pair {
    fn key(&self) -> (u32, u32, usize, usize) {
        (self.sugar, self.lcm.degree(), self.i, self.j)
    }
}

struct Engine {
    polys: Vec<Terms>,
    leads: Vec<Monomial>,
    masks: Vec<u64>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn pair(&self, i: usize, j: usize) -> Pair {
        let lcm = self.leads[i].lcm(&self.leads[j]);
        let si = self.sugar[i] + lcm.degree() - self.leads[i].degree();
        let sj = self.sugar[j] + lcm.degree() - self.leads[j].degree();
        Pair {
            i: i.min(j),
            j: i.max(j),
            lcm,
            sugar: si.max(sj),
        }
    }

    /// Gebauer-Moeller update after appending basis element `h`.
    fn add(&mut self, terms: Terms, sugar: u32) {
        let h = self.polys.len();
        let lead = terms[0].0.clone();
        self.masks.push(lead.support_mask());
        self.leads.push(lead.clone());
        self.polys.push(terms);
        self.sugar.push(sugar);
        self.active.push(true);

        let mut candidates: Vec<Pair> = (0..h).filter(|&g| self.active[g]).map(|g| self.pair(g, h)).collect();
        let companion = |p: &Pair| if p.i == h { p.j } else { p.i };
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(pr) = (!candidates.is_empty()).then(|| candidates.remove(0)) {
            let g1 = companion(&pr);
            let coprime = self.leads[g1].is_coprime(&lead);
            let dominated = candidates.iter().chain(kept.iter()).any(|q| q.lcm.divides(&pr.lcm));
            if coprime || !dominated {
                kept.push(pr);
            }
        }
        kept.retain(|pr| !self.leads[companion(pr)].is_coprime(&lead));

        let leads = &self.leads;
        self.pairs.retain(|pr| {
            if !lead.divides(&pr.lcm) {
                return true;
            }
            let l1 = leads[pr.i].lcm(&lead);
            let l2 = leads[pr.j].lcm(&lead);
            l1 == pr.lcm || l2 == pr.lcm
        });
        self.pairs.extend(kept);

        for g in 0..h {
            if self.active[g] && lead.divides(&self.leads[g]) {
                self.active[g] = false;
            }
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let (idx, _) = self.pairs.iter().enumerate().min_by_key(|(_, p)| p.key())?;
        Some(self.pairs.swap_remove(idx))
    }
}

/// Reduced Groebner basis of the ideal generated by `gens` under `ord`.
pub fn buchberger(gens: &[Polynomial], ord: &MonomialOrder, cfg: &GroebnerConfig) -> Result<GroebnerBasis> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Err(Error::usage("buchberger needs at least one generator to fix the ring; use buchberger_in")),
    };
    buchberger_in(&ring, gens, ord, cfg)
}

/// As [`buchberger`], with the ring given explicitly (so the input may be empty).
pub fn buchberger_in(ring: &Ring, gens: &[Polynomial], ord: &MonomialOrder, cfg: &GroebnerConfig) -> Result<GroebnerBasis> {
    if ord.nvars() != ring.nvars() {
        return Err(Error::usage("order belongs to a different ring"));
    }
    for g in gens {
        PolyRing::check_same(g.ring(), ring)?;
    }
    let field = *ring.field();
    let mut eng = Engine {
        polys: Vec::new(),
        leads: Vec::new(),
        masks: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };

    // Seed: inter-reduce the input one element at a time.
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let active = eng.active.clone();
        let t = reduce_with(g.terms_sorted_by(ord), &eng.polys, &eng.leads, &eng.masks, Some(&active), ord, &field, true);
        if t.is_empty() {
            continue;
        }
        let t = make_monic(t, &field);
        if t[0].0.is_one() {
            return Ok(unit_basis(ring, ord));
        }
        let sugar = g.total_degree().unwrap_or(0);
        check_degree(&t, cfg)?;
        eng.add(t, sugar);
    }

    while let Some(pr) = eng.pop_pair() {
        let s = s_polynomial(&eng.polys[pr.i], &eng.polys[pr.j], ord, &field);
        let active = eng.active.clone();
        let h = reduce_with(s, &eng.polys, &eng.leads, &eng.masks, Some(&active), ord, &field, true);
        if h.is_empty() {
            continue;
        }
        let h = make_monic(h, &field);
        if h[0].0.is_one() {
            return Ok(unit_basis(ring, ord));
        }
        check_degree(&h, cfg)?;
        eng.add(h, pr.sugar);
    }

    // Minimal basis is the active set; interreduce tails.
    let idx: Vec<usize> = (0..eng.polys.len()).filter(|&i| eng.active[i]).collect();
    let polys: Vec<Terms> = idx.iter().map(|&i| eng.polys[i].clone()).collect();
    let leads: Vec<Monomial> = idx.iter().map(|&i| eng.leads[i].clone()).collect();
    let masks: Vec<u64> = idx.iter().map(|&i| eng.masks[i]).collect();
    let mut reduced = Vec::with_capacity(polys.len());
    for k in 0..polys.len() {
        let mut others = vec![true; polys.len()];
        others[k] = false;
        let head = polys[k][0].clone();
        let tail: Terms = polys[k][1..].to_vec();
        let mut r = reduce_with(tail, &polys, &leads, &masks, Some(&others), ord, &field, true);
        let mut t = vec![head];
        t.append(&mut r);
        reduced.push(t);
    }
    Ok(GroebnerBasis::from_sorted(ring, ord, reduced))
}

fn check_degree(t: &Terms, cfg: &GroebnerConfig) -> Result<()> {
    let d = t.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
    if d > cfg.degree_cap {
        Err(Error::DegreeGuard {
            degree: d,
            cap: cfg.degree_cap,
        })
    } else {
        Ok(())
    }
}

fn unit_basis(ring: &Ring, ord: &MonomialOrder) -> GroebnerBasis {
    GroebnerBasis::from_sorted(ring, ord, vec![vec![(Monomial::one(ring.nvars()), 1)]])
}
