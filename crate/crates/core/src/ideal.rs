//! Ideals and the ideal-level operations built on Groebner bases.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::log_p;
use crate::groebner::{buchberger_in, divide, GroebnerBasis, GroebnerConfig};
use crate::monomial::{Monomial, MonomialOrder, OrderKind};
use crate::poly::Polynomial;
use crate::ring::{PolyRing, Ring};

type BasisCache = Arc<Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>>;

/// An ideal given by generators, with reduced Groebner bases cached per order.
///
/// Zero generators are dropped on construction. The cache is shared between
/// clones and never changes what the ideal means.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    config: GroebnerConfig,
    cache: BasisCache,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            PolyRing::check_same(g.ring(), ring)?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            config: GroebnerConfig::default(),
            cache: Default::default(),
        })
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new()).expect("empty generator list")
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    /// The ideal generated by the listed ring variables.
    pub fn of_variables(ring: &Ring, vars: &[usize]) -> Ideal {
        Ideal::new(ring, vars.iter().map(|&i| ring.gen(i)).collect()).expect("same ring")
    }

    /// The homogeneous maximal ideal (all variables).
    pub fn maximal(ring: &Ring) -> Ideal {
        let all: Vec<usize> = (0..ring.nvars()).collect();
        Ideal::of_variables(ring, &all)
    }

    pub fn with_config(mut self, config: GroebnerConfig) -> Ideal {
        if config != self.config {
            self.config = config;
            self.cache = Default::default();
        }
        self
    }

    fn derived(&self, gens: Vec<Polynomial>) -> Ideal {
        Ideal::new(&self.ring, gens).expect("same ring").with_config(self.config)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn config(&self) -> GroebnerConfig {
        self.config
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced Groebner basis under `ord`, computed once and cached.
    pub fn groebner(&self, ord: &MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.lock().expect("cache lock").get(ord) {
            return Ok(gb.clone());
        }
        // Computed outside the lock; concurrent callers may race but agree on the result.
        let gb = Arc::new(buchberger_in(&self.ring, &self.gens, ord, &self.config)?);
        self.cache
            .lock()
            .expect("cache lock")
            .entry(ord.clone())
            .or_insert_with(|| gb.clone());
        Ok(gb)
    }

    /// Basis under the ring's default order.
    pub fn gb(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner(self.ring.default_order())
    }

    fn seed(&self, gb: GroebnerBasis) {
        let ord = gb.order().clone();
        self.cache.lock().expect("cache lock").entry(ord).or_insert_with(|| Arc::new(gb));
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        PolyRing::check_same(&self.ring, &other.ring)
    }

    /// Ideal membership via the normal form against the reduced basis.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        PolyRing::check_same(f.ring(), &self.ring)?;
        if f.is_zero() {
            return Ok(true);
        }
        self.gb()?.contains(f)
    }

    /// `other ⊆ self`, generator by generator.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.is_unit())
    }

    /// Equality of ideals: the reduced bases under the default order coincide.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.gb()?.generators() == other.gb()?.generators())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(self.derived(gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ok(self.derived(gens))
    }

    /// I ∩ J by eliminating an auxiliary w from w·I + (1-w)·J.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(self.derived(Vec::new()));
        }
        let w = self.ring.fresh_aux();
        let ext = self.ring.adjoin(vec![w.clone()])?;
        let wp = ext.var(&w)?;
        let one_minus_w = &Polynomial::one(&ext) - &wp;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&g.embed(&ext)? * &wp);
        }
        for g in &other.gens {
            gens.push(&g.embed(&ext)? * &one_minus_w);
        }
        let ord = ext.elimination_order(&[w])?;
        let gb = buchberger_in(&ext, &gens, &ord, &self.config)?;
        let widx = ext.nvars() - 1;
        let mut kept = Vec::new();
        for g in gb.generators() {
            if g.terms().iter().all(|(m, _)| m.exponent(widx) == 0) {
                kept.push(g.embed(&self.ring)?);
            }
        }
        let result = self.derived(kept.clone());
        // The eliminated part of an elimination basis is a reduced basis of the
        // contraction under the order restricted to the old variables.
        if self.ring.default_order().kind() == OrderKind::GradedReverseLex {
            if let Some(gb) = reduced_basis_from(&self.ring, kept) {
                result.seed(gb);
            }
        }
        Ok(result)
    }

    /// I : (g), via (I ∩ (g)) / g.
    pub fn colon_poly(&self, g: &Polynomial) -> Result<Ideal> {
        PolyRing::check_same(g.ring(), &self.ring)?;
        if g.is_zero() {
            return Err(Error::usage("colon by the zero polynomial"));
        }
        if self.contains(g)? {
            return Ok(Ideal::unit(&self.ring).with_config(self.config));
        }
        let principal = self.derived(vec![g.clone()]);
        let inter = self.intersect(&principal)?;
        let ord = self.ring.default_order();
        let mut quotients = Vec::with_capacity(inter.gens.len());
        for k in &inter.gens {
            let (q, r) = divide(k, std::slice::from_ref(g), ord)?;
            debug_assert!(r.is_zero(), "element of (g) not divisible by g");
            quotients.push(q.into_iter().next().expect("one divisor"));
        }
        Ok(self.derived(quotients))
    }

    /// I : J = ∩ over generators g of J of I : (g).
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if other.is_zero_ideal() {
            return Err(Error::usage("colon by the zero ideal"));
        }
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let part = self.colon_poly(g)?;
            if part.is_unit()? {
                continue;
            }
            acc = Some(match acc {
                None => part,
                Some(a) => a.intersect(&part)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring).with_config(self.config)))
    }

    /// Tests f ∈ I : J without computing the colon: f·g ∈ I for every generator g of J.
    pub fn colon_contains(&self, other: &Ideal, f: &Polynomial) -> Result<bool> {
        self.check_ring(other)?;
        for g in &other.gens {
            if !self.contains(&(f * g))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// I^[q] = (g^q : g a generator), q a power of the characteristic.
    ///
    /// The result is seeded with the Frobenius image of this ideal's basis.
    pub fn bracket_power(&self, q: u64) -> Result<Ideal> {
        let p = self.ring.characteristic() as u64;
        let e = log_p(q, p).ok_or_else(|| Error::usage(format!("{q} is not a power of the characteristic {p}")))?;
        if e == 0 {
            return Ok(self.clone());
        }
        let gens = self.gens.iter().map(|g| g.frobenius(q)).collect::<Result<Vec<_>>>()?;
        let result = self.derived(gens);
        if let Ok(gb) = self.gb() {
            result.seed(gb.frobenius(q)?);
        }
        Ok(result)
    }

    /// Krull dimension of R/I; -1 for the unit ideal.
    pub fn dimension(&self) -> Result<i64> {
        let gb = self.gb()?;
        if gb.is_unit() {
            return Ok(-1);
        }
        let n = self.ring.nvars();
        Ok((n - min_hitting_set(gb.leading_monomials(), n)?) as i64)
    }

    /// height(I) = nvars − dim R/I; rejects the zero and unit ideals.
    pub fn height(&self) -> Result<usize> {
        if self.is_zero_ideal() {
            return Err(Error::usage("height of the zero ideal"));
        }
        let d = self.dimension()?;
        if d < 0 {
            return Err(Error::usage("height of the unit ideal"));
        }
        Ok(self.ring.nvars() - d as usize)
    }

    /// f ∈ √I iff 1 ∈ I + (1 − w·f) in R[w].
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        PolyRing::check_same(f.ring(), &self.ring)?;
        if f.is_zero() {
            return Ok(true);
        }
        let w = self.ring.fresh_aux();
        let ext = self.ring.adjoin(vec![w.clone()])?;
        let wp = ext.var(&w)?;
        let mut gens = self.gens.iter().map(|g| g.embed(&ext)).collect::<Result<Vec<_>>>()?;
        gens.push(&Polynomial::one(&ext) - &(&wp * &f.embed(&ext)?));
        let gb = buchberger_in(&ext, &gens, ext.default_order(), &self.config)?;
        Ok(gb.is_unit())
    }

    /// Indices of the variables generating this ideal, if it is generated by variables.
    pub fn variable_indices(&self) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        for g in &self.gens {
            if g.num_terms() != 1 {
                return None;
            }
            let m = &g.terms()[0].0;
            if m.degree() != 1 {
                return None;
            }
            out.push(m.support().next()?);
        }
        out.sort_unstable();
        out.dedup();
        Some(out)
    }
}

fn reduced_basis_from(ring: &Ring, gens: Vec<Polynomial>) -> Option<GroebnerBasis> {
    // Re-running Buchberger on an already reduced basis only checks pairs.
    buchberger_in(ring, &gens, ring.default_order(), &GroebnerConfig { degree_cap: u32::MAX }).ok()
}

/// Size of a smallest variable set meeting the support of every monomial.
///
/// The complement of such a set is a maximal independent set, whose size is
/// the dimension of R/in(I).
fn min_hitting_set(leads: &[Monomial], nvars: usize) -> Result<usize> {
    if nvars > 128 {
        return Err(Error::usage("dimension computation supports at most 128 variables"));
    }
    let mut sets: Vec<u128> = leads
        .iter()
        .map(|m| m.support().fold(0u128, |acc, i| acc | (1u128 << i)))
        .collect();
    sets.sort_by_key(|s| s.count_ones());
    sets.dedup();
    // Drop supersets: hitting the subset hits the superset.
    let mut minimal: Vec<u128> = Vec::new();
    for s in sets {
        if !minimal.iter().any(|&t| t & s == t) {
            minimal.push(s);
        }
    }
    let mut best = nvars;
    cover_search(&minimal, 0, 0, &mut best);
    Ok(best)
}

fn cover_search(sets: &[u128], chosen: u128, size: usize, best: &mut usize) {
    let unhit: Vec<u128> = sets.iter().copied().filter(|&s| s & chosen == 0).collect();
    if unhit.is_empty() {
        *best = (*best).min(size);
        return;
    }
    // Lower bound from greedily picked pairwise disjoint unhit sets.
    let mut used = 0u128;
    let mut disjoint = 0;
    for &s in &unhit {
        if s & used == 0 {
            used |= s;
            disjoint += 1;
        }
    }
    if size + disjoint >= *best {
        return;
    }
    let pivot = *unhit.iter().min_by_key(|s| s.count_ones()).expect("nonempty");
    let mut bits = pivot;
    while bits != 0 {
        let b = bits & bits.wrapping_neg();
        bits &= bits - 1;
        cover_search(sets, chosen | b, size + 1, best);
    }
}

/// Regular-sequence test by the height criterion: height((fs)) = len(fs).
///
/// Valid in the Cohen-Macaulay polynomial ring for homogeneous sequences,
/// which is how the toolkit uses it.
pub fn is_regular_sequence(fs: &[Polynomial]) -> Result<bool> {
    let ring = match fs.first() {
        Some(f) => f.ring().clone(),
        None => return Ok(true),
    };
    for f in fs {
        PolyRing::check_same(f.ring(), &ring)?;
        if f.is_zero() {
            return Err(Error::usage("zero element in a candidate regular sequence"));
        }
        if f.is_unit() {
            return Err(Error::usage("unit element in a candidate regular sequence"));
        }
    }
    let ideal = Ideal::new(&ring, fs.to_vec())?;
    if ideal.is_unit()? {
        return Ok(false);
    }
    Ok(ideal.height()? == fs.len())
}

/// A monomial of `f` whose exponents on `vars` are all at most q − 1.
///
/// Such a monomial exists iff f ∉ (v^q : v ∈ vars), since that ideal is
/// monomial. Among qualifying monomials the `ord`-largest is returned.
pub fn not_in_bracket_max_by(f: &Polynomial, vars: &[usize], q: u64, ord: &MonomialOrder) -> Option<Monomial> {
    let bound = q.saturating_sub(1);
    f.terms()
        .iter()
        .map(|(m, _)| m)
        .filter(|m| vars.iter().all(|&v| m.exponent(v) as u64 <= bound))
        .max_by(|a, b| ord.compare(a, b))
        .cloned()
}

/// [`not_in_bracket_max_by`] under the ring's default order.
pub fn not_in_bracket_max(f: &Polynomial, vars: &[usize], q: u64) -> Option<Monomial> {
    not_in_bracket_max_by(f, vars, q, f.ring().default_order())
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}
