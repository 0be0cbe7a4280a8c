//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Exponents = SmallVec<[u16; 16]>;

/// A monomial as a dense exponent vector, one slot per ring variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let exps: Exponents = exps
            .iter()
            .map(|&e| u16::try_from(e).expect("exponent exceeds u16 range"))
            .collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index] as u32
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.exps.iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[u16] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn max_exponent(&self) -> u32 {
        self.exps.iter().copied().max().unwrap_or(0) as u32
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// Bit i set when variable i (mod 64) occurs; used for quick divisibility rejection.
    #[inline]
    pub(crate) fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << (i % 64);
            }
        }
        mask
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let exps = self
            .exps
            .iter()
            .map(|&a| {
                u16::try_from(a as u32 * k).expect("exponent overflow")
            })
            .collect();
        Monomial {
            exps,
            degree: self.degree * k,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, or `None` if self does not divide other.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other.exps.iter().zip(self.exps.iter()).map(|(&a, &b)| a - b).collect();
        Some(Monomial {
            exps,
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(other.exps.iter()).map(|(&a, &b)| a.max(b)).collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(other.exps.iter()).map(|(&a, &b)| a.min(b)).collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Inserts zero slots so the monomial lives in a ring with more variables.
    pub(crate) fn remap(&self, new_len: usize, map: &[usize]) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, new_len);
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                exps[map[i]] = e;
            }
        }
        Monomial {
            exps,
            degree: self.degree,
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial{:?}", self.exponents())
    }
}

/// The family a [`MonomialOrder`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    GradedReverseLex,
    /// Product order: graded reverse lex on the eliminated block, ties broken
    /// by graded reverse lex on the remaining variables.
    EliminationBlock,
}

/// A monomial order given by a kind and a variable priority (highest first).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Arc<[usize]>,
    eliminate: Arc<[bool]>,
}

impl MonomialOrder {
    fn check_perm(priority: &[usize]) -> Result<()> {
        let mut seen = vec![false; priority.len()];
        for &v in priority {
            if v >= priority.len() || seen[v] {
                return Err(Error::usage("priority is not a permutation of the ring variables"));
            }
            seen[v] = true;
        }
        Ok(())
    }

    pub fn lex(priority: Vec<usize>) -> Result<Self> {
        Self::check_perm(&priority)?;
        let n = priority.len();
        Ok(MonomialOrder {
            kind: OrderKind::Lex,
            priority: priority.into(),
            eliminate: vec![false; n].into(),
        })
    }

    pub fn grevlex(priority: Vec<usize>) -> Result<Self> {
        Self::check_perm(&priority)?;
        let n = priority.len();
        Ok(MonomialOrder {
            kind: OrderKind::GradedReverseLex,
            priority: priority.into(),
            eliminate: vec![false; n].into(),
        })
    }

    /// Lex with the ring's registry order as priority.
    pub fn lex_natural(nvars: usize) -> Self {
        Self::lex((0..nvars).collect()).expect("identity permutation")
    }

    pub fn grevlex_natural(nvars: usize) -> Self {
        Self::grevlex((0..nvars).collect()).expect("identity permutation")
    }

    /// Elimination order for the variables flagged in `eliminate`.
    pub fn elimination(priority: Vec<usize>, eliminate: Vec<bool>) -> Result<Self> {
        Self::check_perm(&priority)?;
        if eliminate.len() != priority.len() {
            return Err(Error::usage("elimination mask length differs from variable count"));
        }
        Ok(MonomialOrder {
            kind: OrderKind::EliminationBlock,
            priority: priority.into(),
            eliminate: eliminate.into(),
        })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn eliminated(&self) -> &[bool] {
        &self.eliminate
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    /// Short name used in file headers and reports.
    pub fn name(&self) -> &'static str {
        match self.kind {
            OrderKind::Lex => "lex",
            OrderKind::GradedReverseLex => "grevlex",
            OrderKind::EliminationBlock => "elim",
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), self.nvars());
        debug_assert_eq!(b.nvars(), self.nvars());
        let (ea, eb) = (a.raw(), b.raw());
        match self.kind {
            OrderKind::Lex => {
                for &v in self.priority.iter() {
                    match ea[v].cmp(&eb[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GradedReverseLex => match a.degree().cmp(&b.degree()) {
                Ordering::Equal => revlex_tail(&self.priority, ea, eb, |_| true),
                o => o,
            },
            OrderKind::EliminationBlock => {
                let elim = &self.eliminate;
                let block_deg = |e: &[u16]| -> u32 {
                    e.iter().zip(elim.iter()).filter(|(_, &f)| f).map(|(&x, _)| x as u32).sum()
                };
                let (da, db) = (block_deg(ea), block_deg(eb));
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    o => return o,
                }
                match revlex_tail(&self.priority, ea, eb, |v| elim[v]) {
                    Ordering::Equal => {}
                    o => return o,
                }
                match (a.degree() - da).cmp(&(b.degree() - db)) {
                    Ordering::Equal => {}
                    o => return o,
                }
                revlex_tail(&self.priority, ea, eb, |v| !elim[v])
            }
        }
    }
}

/// Reverse-lex tie break: scanning from the lowest-priority variable, the
/// monomial with the smaller exponent is the larger one.
#[inline]
fn revlex_tail(priority: &[usize], ea: &[u16], eb: &[u16], keep: impl Fn(usize) -> bool) -> Ordering {
    for &v in priority.iter().rev() {
        if !keep(v) {
            continue;
        }
        match ea[v].cmp(&eb[v]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.name(), self.priority)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn lex_compares_highest_variable_first() {
        let lex = MonomialOrder::lex_natural(2);
        assert_eq!(lex.compare(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(lex.compare(&m(&[2, 3]), &m(&[2, 3])), Ordering::Equal);
    }

    #[test]
    fn lex_on_matrix_entries() {
        // x11 x12 x13 x21 x22 x23; x11*x22 vs x12*x21
        let lex = MonomialOrder::lex_natural(6);
        assert_eq!(lex.compare(&m(&[1, 0, 0, 0, 1, 0]), &m(&[0, 1, 0, 1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn grevlex_breaks_ties_from_the_last_variable() {
        let g = MonomialOrder::grevlex_natural(3);
        // x*z < y^2 in grevlex x>y>z
        assert_eq!(g.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(g.compare(&m(&[1, 0, 0]), &m(&[0, 0, 2])), Ordering::Less);
        assert_eq!(g.compare(&m(&[1, 1, 0]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn custom_priority_changes_lex() {
        let lex = MonomialOrder::lex(vec![1, 0]).unwrap();
        assert_eq!(lex.compare(&m(&[1, 0]), &m(&[0, 1])), Ordering::Less);
    }

    #[test]
    fn elimination_block_dominates() {
        let e = MonomialOrder::elimination(vec![0, 1, 2], vec![false, false, true]).unwrap();
        assert_eq!(e.compare(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        assert_eq!(e.compare(&m(&[2, 0, 1]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn rejects_bad_permutations() {
        assert!(MonomialOrder::lex(vec![0, 0]).is_err());
        assert!(MonomialOrder::grevlex(vec![0, 2]).is_err());
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b).unwrap(), m(&[1, 0, 1]));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 4, 1])));
    }
}
