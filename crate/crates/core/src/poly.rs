//! Multivariate polynomials over F_p.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::log_p;
use crate::monomial::{Monomial, MonomialOrder};
use crate::ring::{PolyRing, Ring};
use crate::var::VariableId;

/// A polynomial in a [`PolyRing`].
///
/// Terms are kept sorted in decreasing default order with no zero
/// coefficients; the zero polynomial has no terms.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: u32) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial length differs from ring variable count");
        let c = c % ring.characteristic();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining repeats.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let f = ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial length differs from ring variable count");
            let c = f.from_u64(c as u64);
            let slot = acc.entry(m).or_insert(0);
            *slot = f.add(*slot, c);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        let ord = ring.default_order();
        terms.sort_by(|a, b| ord.compare(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms already sorted under the default order with nonzero coefficients.
    pub(crate) fn from_sorted_unchecked(ring: &Ring, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.default_order().compare(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Re-sorts terms that are known to be distinct and nonzero.
    pub(crate) fn from_distinct_terms(ring: &Ring, mut terms: Vec<(Monomial, u32)>) -> Self {
        let ord = ring.default_order();
        terms.sort_by(|a, b| ord.compare(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Terms in decreasing default order.
    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }


    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Nonzero constant (a unit of the ring).
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.is_unit()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    /// Coefficient of `m` (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> u32 {
        let ord = self.ring.default_order();
        self.terms
            .binary_search_by(|(t, _)| ord.compare(m, t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// Ring variables occurring in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                used[i] = true;
            }
        }
        (0..used.len()).filter(|&i| used[i]).collect()
    }

    /// The `ord`-maximal term.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Monomial, u32)> {
        if ord.nvars() != self.ring.nvars() {
            return Err(Error::usage("order belongs to a different ring"));
        }
        let best = self
            .terms
            .iter()
            .max_by(|a, b| ord.compare(&a.0, &b.0))
            .ok_or_else(|| Error::Domain("leading term of the zero polynomial".into()))?;
        Ok(best.clone())
    }

    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Result<Monomial> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        PolyRing::check_same(&self.ring, &other.ring)?;
        Ok(self.add_unchecked(other, 1))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        PolyRing::check_same(&self.ring, &other.ring)?;
        let minus_one = self.ring.characteristic() - 1;
        Ok(self.add_unchecked(other, minus_one))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        PolyRing::check_same(&self.ring, &other.ring)?;
        Ok(self.mul_unchecked(other))
    }

    /// self + c * other, merging the sorted term lists.
    fn add_unchecked(&self, other: &Polynomial, c: u32) -> Polynomial {
        let f = self.ring.field();
        let ord = self.ring.default_order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match ord.compare(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let v = f.mul(b[j].1, c);
                    if v != 0 {
                        out.push((b[j].0.clone(), v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(a[i].1, f.mul(b[j].1, c));
                    if v != 0 {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let v = f.mul(t.1, c);
            if v != 0 {
                out.push((t.0.clone(), v));
            }
        }
        Polynomial::from_sorted_unchecked(&self.ring, out)
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, *c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, *c);
        }
        let f = self.ring.field();
        let p = f.characteristic() as u64;
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let slot = acc.entry(ma.mul(mb)).or_insert(0);
                *slot = (*slot + *ca as u64 * *cb as u64) % p;
            }
        }
        let terms: Vec<(Monomial, u32)> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(m, c)| (m, c as u32))
            .collect();
        Polynomial::from_distinct_terms(&self.ring, terms)
    }

    /// Multiplies by the single term c * m.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        // Multiplication by a monomial preserves any monomial order.
        let terms = self.terms.iter().map(|(t, d)| (t.mul(m), f.mul(*d, c))).collect();
        Polynomial::from_sorted_unchecked(&self.ring, terms)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    /// Power by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// f^q for q a power of the characteristic, computed termwise.
    ///
    /// In characteristic p, (sum c_i m_i)^q = sum c_i m_i^q since c^p = c in F_p.
    pub fn frobenius(&self, q: u64) -> Result<Polynomial> {
        let p = self.ring.characteristic() as u64;
        if log_p(q, p).is_none() {
            return Err(Error::usage(format!("{q} is not a power of the characteristic {p}")));
        }
        let k = u32::try_from(q).map_err(|_| Error::usage("Frobenius exponent too large"))?;
        let terms = self.terms.iter().map(|(m, c)| (m.pow(k), *c)).collect();
        Ok(Polynomial::from_sorted_unchecked(&self.ring, terms))
    }

    /// Makes the `ord`-leading coefficient 1.
    pub fn monic(&self, ord: &MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            Ok((_, c)) => {
                let inv = self.ring.field().inv(c);
                self.scale(inv)
            }
            Err(_) => self.clone(),
        }
    }

    /// Applies the ring homomorphism sending each variable to its image in `target`.
    ///
    /// Every variable occurring in `self` must be mapped.
    pub fn substitute(&self, target: &Ring, map: &HashMap<VariableId, Polynomial>) -> Result<Polynomial> {
        for img in map.values() {
            PolyRing::check_same(img.ring(), target)?;
        }
        let n = self.ring.nvars();
        let mut images: Vec<Option<&Polynomial>> = vec![None; n];
        for i in self.variables() {
            let v = &self.ring.vars()[i];
            images[i] = Some(map.get(v).ok_or_else(|| Error::usage(format!("variable {v} has no image")))?);
        }
        let mut power_cache: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, *c as i64);
            for i in m.support() {
                let e = m.exponent(i);
                let img = images[i].expect("checked above");
                let pw = power_cache.entry((i, e)).or_insert_with(|| img.pow(e as u64));
                term = term.mul_unchecked(pw);
                if term.is_zero() {
                    break;
                }
            }
            out = out.add_unchecked(&term, 1);
        }
        Ok(out)
    }

    /// Moves the polynomial into a ring containing all of its variables.
    pub fn embed(&self, target: &Ring) -> Result<Polynomial> {
        if PolyRing::same(&self.ring, target) {
            return Ok(self.clone());
        }
        if target.characteristic() != self.ring.characteristic() {
            return Err(Error::usage("target ring has a different characteristic"));
        }
        let used = self.variables();
        let mut map = vec![usize::MAX; self.ring.nvars()];
        for i in 0..self.ring.nvars() {
            if let Some(j) = target.index_of(&self.ring.vars()[i]) {
                map[i] = j;
            } else if used.contains(&i) {
                return Err(Error::usage(format!(
                    "variable {} does not exist in the target ring",
                    self.ring.vars()[i]
                )));
            }
        }
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| (m.remap(n, &map), *c)).collect();
        Ok(Polynomial::from_distinct_terms(target, terms))
    }

    /// Terms sorted in decreasing `ord` order.
    pub(crate) fn terms_sorted_by(&self, ord: &MonomialOrder) -> Vec<(Monomial, u32)> {
        let mut t = self.terms.clone();
        if ord != self.ring.default_order() {
            t.sort_by(|a, b| ord.compare(&b.0, &a.0));
        }
        t
    }

    /// Renders one monomial with the ring's variable names.
    pub fn format_monomial(ring: &PolyRing, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for i in m.support() {
            let e = m.exponent(i);
            if e == 1 {
                parts.push(ring.vars()[i].to_string());
            } else {
                parts.push(format!("{}^{}", ring.vars()[i], e));
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.ring.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = field.signed(*c);
            let mag = s.unsigned_abs();
            if k == 0 {
                if s < 0 {
                    f.write_str("-")?;
                }
            } else if s < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                f.write_str(&Polynomial::format_monomial(&self.ring, m))?;
            } else {
                write!(f, "{}*{}", mag, Polynomial::format_monomial(&self.ring, m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

// Operator forms panic on mismatched rings; the `checked_*` methods report it.

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition across rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction across rings")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication across rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let minus_one = self.ring.characteristic() - 1;
        self.scale(minus_one)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

/// Product of a list of polynomials (1 for the empty list).
pub fn product<'a>(ring: &Ring, fs: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
    fs.into_iter().fold(Polynomial::one(ring), |acc, f| &acc * f)
}
