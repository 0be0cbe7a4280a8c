//! Finite certificates for F-purity and the Glassbrenner witness condition.
//!
//! Every positive verdict carries a polynomial known to lie in the relevant
//! colon ideal together with one of its monomials whose exponents are all
//! below q = p^e, which certifies non-membership in m^[q].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::determinantal::{colex_subsets, GenericMatrix};
use crate::error::{Error, Result};
use crate::ideal::{is_regular_sequence, not_in_bracket_max_by, Ideal};
use crate::linkage::{beta_sequence, maximal_presentation, LinkPresentation};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{product, Polynomial};
use crate::ring::Ring;
use crate::var::MatrixSymbol;

pub const DEFAULT_TERM_CAP: usize = 5_000_000;

const NOTE_SINGLE_E: &str = "searched at a single Frobenius exponent; absence of a witness refutes nothing";
const NOTE_CONDITION_ONE: &str =
    "condition (1) of Glassbrenner's criterion (regularity of the localization at s) is not checked; only condition (2) is attested";
const NOTE_FIELD: &str = "computed over F_p; colon and bracket powers commute with extending to an infinite F-finite field";

/// Limits for explicit product expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionConfig {
    pub term_cap: usize,
}

impl Default for ExpansionConfig {
    fn default() -> Self {
        ExpansionConfig { term_cap: DEFAULT_TERM_CAP }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    FedderFpure,
    FedderCi,
    Containment,
    GlassbrennerWitness,
    LemmaCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Established,
    WitnessFound,
    Inconclusive,
    Refuted,
}

impl Verdict {
    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::Established | Verdict::WitnessFound)
    }
}

/// A polynomial and a monomial of it with all exponents on `vars` below `q`.
#[derive(Debug, Clone)]
pub struct Witness {
    pub polynomial: Polynomial,
    pub monomial: Monomial,
    pub vars: Vec<usize>,
    pub q: u64,
}

impl Witness {
    /// The monomial occurs in the polynomial and clears m^[q].
    pub fn is_valid(&self) -> bool {
        self.polynomial.coefficient(&self.monomial) != 0
            && self.vars.iter().all(|&v| (self.monomial.exponent(v) as u64) < self.q)
    }

    pub fn monomial_text(&self) -> String {
        Polynomial::format_monomial(self.polynomial.ring(), &self.monomial)
    }
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub parameters: BTreeMap<String, String>,
    pub notes: Vec<String>,
    pub term_count: Option<usize>,
}

/// Serializable view of a [`Certificate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub kind: CertificateKind,
    pub verdict: Verdict,
    pub parameters: BTreeMap<String, String>,
    pub witness_monomial: Option<String>,
    pub witness_polynomial: Option<String>,
    pub witness_polynomial_terms: Option<usize>,
    pub term_count: Option<usize>,
    pub notes: Vec<String>,
}

/// Witness polynomials longer than this are summarized by their term count.
pub const REPORT_POLYNOMIAL_LIMIT: usize = 400;

impl Certificate {
    fn new(kind: CertificateKind) -> Certificate {
        Certificate {
            kind,
            verdict: Verdict::Inconclusive,
            witness: None,
            parameters: BTreeMap::new(),
            notes: Vec::new(),
            term_count: None,
        }
    }

    fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Recheck the stored witness from scratch. Certificates claiming
    /// non-membership in m^[q] must carry a valid witness.
    pub fn revalidate(&self) -> bool {
        let needs_witness = self.verdict.is_positive() && self.kind != CertificateKind::Containment;
        match &self.witness {
            Some(w) => w.is_valid(),
            None => !needs_witness,
        }
    }

    pub fn report(&self) -> CertificateReport {
        let w = self.witness.as_ref();
        CertificateReport {
            kind: self.kind,
            verdict: self.verdict,
            parameters: self.parameters.clone(),
            witness_monomial: w.map(|w| w.monomial_text()),
            witness_polynomial: w
                .filter(|w| w.polynomial.num_terms() <= REPORT_POLYNOMIAL_LIMIT)
                .map(|w| w.polynomial.to_string()),
            witness_polynomial_terms: w.map(|w| w.polynomial.num_terms()),
            term_count: self.term_count,
            notes: self.notes.clone(),
        }
    }
}

fn frobenius_q(ring: &Ring, e: u32) -> Result<u64> {
    if e == 0 {
        return Err(Error::usage("the Frobenius exponent e must be at least 1"));
    }
    (ring.characteristic() as u64)
        .checked_pow(e)
        .ok_or_else(|| Error::usage("p^e overflows"))
}

fn maximal_vars(m: &Ideal) -> Result<Vec<usize>> {
    m.variable_indices()
        .filter(|v| !v.is_empty())
        .ok_or_else(|| Error::usage("m must be generated by ring variables"))
}

fn witness_in(f: &Polynomial, vars: &[usize], q: u64, ord: &MonomialOrder) -> Option<Witness> {
    not_in_bracket_max_by(f, vars, q, ord).map(|monomial| Witness {
        polynomial: f.clone(),
        monomial,
        vars: vars.to_vec(),
        q,
    })
}

/// I^[q] : I with q = p^e.
pub fn fedder_ideal(i: &Ideal, e: u32) -> Result<Ideal> {
    let q = frobenius_q(i.ring(), e)?;
    i.bracket_power(q)?.colon(i)
}

/// Options for [`fedder_fpure_with`].
#[derive(Debug, Clone)]
pub struct FedderOptions {
    /// Elements tried first; each is verified to lie in I^[q] : I before use.
    pub candidates: Vec<Polynomial>,
    /// Also try (∏ S)^{q-1} for subsets S of the generators of size height(I).
    pub subset_candidates: bool,
    pub max_subsets: usize,
    /// Fall back to the full colon when no candidate succeeds.
    pub full_colon: bool,
    /// Order used to choose among qualifying monomials.
    pub order: Option<MonomialOrder>,
}

impl Default for FedderOptions {
    fn default() -> Self {
        FedderOptions {
            candidates: Vec::new(),
            subset_candidates: true,
            max_subsets: 64,
            full_colon: true,
            order: None,
        }
    }
}

/// Fedder's criterion at a fixed e: established when some element of
/// I^[q] : I is found outside m^[q], inconclusive otherwise.
pub fn fedder_fpure(i: &Ideal, m: &Ideal, e: u32) -> Result<Certificate> {
    fedder_fpure_with(i, m, e, &FedderOptions::default())
}

pub fn fedder_fpure_with(i: &Ideal, m: &Ideal, e: u32, opts: &FedderOptions) -> Result<Certificate> {
    let q = frobenius_q(i.ring(), e)?;
    let vars = maximal_vars(m)?;
    let ord = opts.order.clone().unwrap_or_else(|| i.ring().default_order().clone());
    let mut cert = Certificate::new(CertificateKind::FedderFpure);
    cert.param("p", i.ring().characteristic());
    cert.param("e", e);
    cert.param("q", q);
    cert.param("nvars", i.ring().nvars());
    cert.param("generators", i.generators().len());
    cert.note(NOTE_SINGLE_E);
    if i.is_zero_ideal() || i.is_unit()? {
        return Err(Error::usage("Fedder's criterion needs a proper nonzero ideal"));
    }
    let bracket = i.bracket_power(q)?;

    let try_candidate = |h: &Polynomial| -> Result<Option<Witness>> {
        if h.is_zero() {
            return Ok(None);
        }
        let w = match witness_in(h, &vars, q, &ord) {
            Some(w) => w,
            None => return Ok(None),
        };
        Ok(bracket.colon_contains(i, h)?.then_some(w))
    };

    for h in &opts.candidates {
        if let Some(w) = try_candidate(h)? {
            cert.verdict = Verdict::Established;
            cert.param("route", "candidate");
            cert.witness = Some(w);
            return Ok(cert);
        }
    }
    if opts.subset_candidates {
        let height = i.height()?;
        let gens = i.generators();
        for subset in colex_subsets(gens.len(), height).into_iter().take(opts.max_subsets) {
            let h = product(i.ring(), subset.iter().map(|&k| &gens[k])).pow(q - 1);
            if let Some(w) = try_candidate(&h)? {
                cert.verdict = Verdict::Established;
                cert.param("route", "generator-subset");
                cert.param("subset", format!("{:?}", subset.iter().map(|k| k + 1).collect::<Vec<_>>()));
                cert.witness = Some(w);
                return Ok(cert);
            }
        }
    }
    if opts.full_colon {
        cert.param("route", "full-colon");
        let fed = bracket.colon(i)?;
        cert.param("fedder_generators", fed.generators().len());
        for g in fed.generators() {
            if let Some(w) = witness_in(g, &vars, q, &ord) {
                cert.verdict = Verdict::Established;
                cert.witness = Some(w);
                return Ok(cert);
            }
        }
        cert.note("every generator of I^[q] : I lies in m^[q] at this e");
    }
    Ok(cert)
}

/// Complete intersections: R/(fs) is F-pure iff (∏ fs)^{p-1} ∉ m^[p], so
/// both verdicts are decisive.
pub fn fedder_ci_fast(fs: &[Polynomial], p: u64) -> Result<Certificate> {
    let ring = fs
        .first()
        .ok_or_else(|| Error::usage("empty sequence"))?
        .ring()
        .clone();
    if ring.characteristic() as u64 != p {
        return Err(Error::usage(format!("p = {p} differs from the ring characteristic {}", ring.characteristic())));
    }
    if !is_regular_sequence(fs)? {
        return Err(Error::usage("the sequence is not regular"));
    }
    let mut cert = Certificate::new(CertificateKind::FedderCi);
    cert.param("p", p);
    cert.param("length", fs.len());
    let h = product(&ring, fs.iter()).pow(p - 1);
    cert.term_count = Some(h.num_terms());
    let vars: Vec<usize> = (0..ring.nvars()).collect();
    match witness_in(&h, &vars, p, ring.default_order()) {
        Some(w) => {
            cert.verdict = Verdict::Established;
            cert.witness = Some(w);
        }
        None => {
            cert.verdict = Verdict::Refuted;
            cert.note("(∏ f_i)^{p-1} lies in m^[p], which is decisive for complete intersections");
        }
    }
    Ok(cert)
}

fn check_shortcut_hypotheses(a: &Ideal, i: &Ideal) -> Result<()> {
    if !i.contains_ideal(a)? {
        return Err(Error::usage("a is not contained in I"));
    }
    let h = i.height()?;
    if a.generators().len() != h || !is_regular_sequence(a.generators())? {
        return Err(Error::usage(format!("a is not generated by a regular sequence of length height(I) = {h}")));
    }
    Ok(())
}

/// Certifies a^[p] : a ⊆ I^[p] : I generator by generator.
///
/// With a a complete intersection, a^[p] : a = (∏ a)^{p-1} + a^[p], and
/// a^[p] ⊆ I^[p] is automatic, so only (∏ a)^{p-1} needs testing.
pub fn containment_shortcut(a: &Ideal, i: &Ideal, p: u64) -> Result<Certificate> {
    if i.ring().characteristic() as u64 != p {
        return Err(Error::usage("p differs from the ring characteristic"));
    }
    check_shortcut_hypotheses(a, i)?;
    let mut cert = Certificate::new(CertificateKind::Containment);
    cert.param("p", p);
    cert.param("length", a.generators().len());
    let h = product(a.ring(), a.generators().iter()).pow(p - 1);
    cert.term_count = Some(h.num_terms());
    let bracket = i.bracket_power(p)?;
    if bracket.colon_contains(i, &h)? {
        cert.verdict = Verdict::Established;
        let vars: Vec<usize> = (0..a.ring().nvars()).collect();
        cert.witness = witness_in(&h, &vars, p, a.ring().default_order());
        if cert.witness.is_none() {
            cert.note("the containment holds but (∏ a)^{p-1} lies in m^[p]");
        }
    } else {
        cert.verdict = Verdict::Refuted;
        cert.note("(∏ a)^{p-1} is not in I^[p] : I");
    }
    Ok(cert)
}

/// Options for [`glassbrenner_witness_with`].
#[derive(Debug, Clone)]
pub struct GlassbrennerOptions {
    /// Elements tried first; each is verified to lie in I^[q] : I before use.
    pub hints: Vec<Polynomial>,
    pub full_colon: bool,
    pub order: Option<MonomialOrder>,
}

impl Default for GlassbrennerOptions {
    fn default() -> Self {
        GlassbrennerOptions { hints: Vec::new(), full_colon: true, order: None }
    }
}

fn glassbrenner_prelude(i: &Ideal, s: &Polynomial, m: &Ideal, e: u32) -> Result<(u64, Vec<usize>, Certificate)> {
    let q = frobenius_q(i.ring(), e)?;
    let vars = maximal_vars(m)?;
    if !s.is_homogeneous() {
        return Err(Error::usage("s must be homogeneous"));
    }
    if i.contains(s)? {
        return Err(Error::usage("s lies in I"));
    }
    let mut cert = Certificate::new(CertificateKind::GlassbrennerWitness);
    cert.param("p", i.ring().characteristic());
    cert.param("e", e);
    cert.param("q", q);
    cert.param("s", s);
    cert.param("nvars", i.ring().nvars());
    cert.note(NOTE_CONDITION_ONE);
    cert.note(NOTE_FIELD);
    cert.note(NOTE_SINGLE_E);
    Ok((q, vars, cert))
}

/// Condition (2) of Glassbrenner's criterion: s·(I^[q] : I) ⊄ m^[q].
pub fn glassbrenner_witness(i: &Ideal, s: &Polynomial, m: &Ideal, e: u32) -> Result<Certificate> {
    glassbrenner_witness_with(i, s, m, e, &GlassbrennerOptions::default())
}

pub fn glassbrenner_witness_with(
    i: &Ideal,
    s: &Polynomial,
    m: &Ideal,
    e: u32,
    opts: &GlassbrennerOptions,
) -> Result<Certificate> {
    let (q, vars, mut cert) = glassbrenner_prelude(i, s, m, e)?;
    let ord = opts.order.clone().unwrap_or_else(|| i.ring().default_order().clone());
    let bracket = i.bracket_power(q)?;
    for h in &opts.hints {
        let sh = s * h;
        if let Some(w) = witness_in(&sh, &vars, q, &ord) {
            if bracket.colon_contains(i, h)? {
                cert.verdict = Verdict::WitnessFound;
                cert.param("route", "verified-hint");
                cert.witness = Some(w);
                return Ok(cert);
            }
        }
    }
    if opts.full_colon {
        cert.param("route", "full-colon");
        let fed = bracket.colon(i)?;
        for g in fed.generators() {
            if let Some(w) = witness_in(&(s * g), &vars, q, &ord) {
                cert.verdict = Verdict::WitnessFound;
                cert.witness = Some(w);
                return Ok(cert);
            }
        }
    }
    Ok(cert)
}

/// Glassbrenner condition (2) through a complete intersection a ⊆ I of
/// length height(I): a witness in s·(∏ a)^{p-1} suffices once that element
/// is verified to lie in I^[p] : I.
pub fn glassbrenner_via_shortcut(
    a: &Ideal,
    i: &Ideal,
    s: &Polynomial,
    m: &Ideal,
    order: Option<&MonomialOrder>,
) -> Result<Certificate> {
    let (q, vars, mut cert) = glassbrenner_prelude(i, s, m, 1)?;
    check_shortcut_hypotheses(a, i)?;
    cert.param("route", "a-shortcut");
    let ord = order.cloned().unwrap_or_else(|| i.ring().default_order().clone());
    let h = product(a.ring(), a.generators().iter()).pow(q - 1);
    let sh = s * &h;
    cert.term_count = Some(sh.num_terms());
    if let Some(w) = witness_in(&sh, &vars, q, &ord) {
        if i.bracket_power(q)?.colon_contains(i, &h)? {
            cert.verdict = Verdict::WitnessFound;
            cert.witness = Some(w);
        } else {
            cert.note("(∏ a)^{p-1} is not in I^[p] : I");
        }
    }
    Ok(cert)
}

/// Multiplies the factors, giving up once an intermediate exceeds the cap.
/// Returns the product (if completed) and the largest term count seen.
fn expand_capped(ring: &Ring, factors: &[Polynomial], cap: usize) -> (Option<Polynomial>, usize) {
    let mut acc = Polynomial::one(ring);
    let mut peak = 1;
    for f in factors {
        if acc.num_terms().saturating_mul(f.num_terms()) > cap.saturating_mul(64) {
            return (None, peak.max(acc.num_terms()));
        }
        acc = &acc * f;
        peak = peak.max(acc.num_terms());
        if acc.num_terms() > cap {
            return (None, peak);
        }
    }
    (Some(acc), peak)
}

/// x_{1,n} (∏ staircase minors)^{p-1} and the surrounding data.
#[derive(Debug, Clone)]
pub struct DetLemmaSetup {
    pub matrix: GenericMatrix,
    pub order: MonomialOrder,
    pub factors: Vec<Polynomial>,
    pub closed_form: Monomial,
}

pub fn det_lemma_setup(t: usize, n: usize, p: u64) -> Result<DetLemmaSetup> {
    if t <= 1 {
        return Err(Error::usage("the determinantal check needs t > 1"));
    }
    if n < t {
        return Err(Error::usage("need n ≥ t"));
    }
    let x = GenericMatrix::generic(p, MatrixSymbol::X, t, n)?;
    let order = x.row_major_lex();
    let mut factors = vec![x.entry(0, n - 1)];
    for d in x.staircase_minors() {
        factors.push(d.pow(p - 1));
    }
    let closed_form = staircase_diagonal(&x, p).mul(&Monomial::var(x.ring().nvars(), x.entry_index(0, n - 1)));
    Ok(DetLemmaSetup { matrix: x, order, factors, closed_form })
}

/// ∏_{0 ≤ j-i ≤ n-t} x_{i,j}^{p-1} over the entries of a t×n matrix.
fn staircase_diagonal(x: &GenericMatrix, p: u64) -> Monomial {
    let (t, n) = (x.rows(), x.cols());
    let mut exps = vec![0u32; x.ring().nvars()];
    for i in 0..t {
        for j in i..=i + n - t {
            exps[x.entry_index(i, j)] = (p - 1) as u32;
        }
    }
    Monomial::from_exponents(&exps)
}

/// One expansion-and-search run shared by the lemma checkers.
fn lemma_run(
    cert: &mut Certificate,
    ring: &Ring,
    factors: &[Polynomial],
    closed_form: &Monomial,
    order: &MonomialOrder,
    p: u64,
    cfg: &ExpansionConfig,
) -> Option<Polynomial> {
    let (f, peak) = expand_capped(ring, factors, cfg.term_cap);
    cert.term_count = Some(peak);
    let f = match f {
        Some(f) => f,
        None => {
            cert.verdict = Verdict::Inconclusive;
            cert.note(format!("E_TERM_CAP: expansion exceeded {} terms", cfg.term_cap));
            return None;
        }
    };
    let vars: Vec<usize> = (0..ring.nvars()).collect();
    let closed = Witness { polynomial: f.clone(), monomial: closed_form.clone(), vars: vars.clone(), q: p };
    cert.param("closed_form", Polynomial::format_monomial(ring, closed_form));
    if let Ok(lead) = f.leading_monomial(order) {
        cert.param("initial_monomial", Polynomial::format_monomial(ring, &lead));
        cert.param("initial_equals_closed_form", lead == *closed_form);
    }
    if closed.is_valid() {
        cert.param("closed_form_match", true);
        cert.verdict = Verdict::Established;
        cert.witness = Some(closed);
    } else {
        cert.param("closed_form_match", false);
        cert.witness = witness_in(&f, &vars, p, order);
        cert.verdict = if cert.witness.is_some() { Verdict::Established } else { Verdict::Refuted };
    }
    Some(f)
}

/// x_{1,n} ([1,t][2,t+1]…[n-t+1,n])^{p-1} ∉ m^[p] in K[X_{t×n}].
pub fn lemma_check_det(t: usize, n: usize, p: u64, cfg: &ExpansionConfig) -> Result<Certificate> {
    let setup = det_lemma_setup(t, n, p)?;
    let mut cert = Certificate::new(CertificateKind::LemmaCheck);
    cert.param("lemma", "det");
    cert.param("t", t);
    cert.param("n", n);
    cert.param("p", p);
    let ring = setup.matrix.ring().clone();
    lemma_run(&mut cert, &ring, &setup.factors, &setup.closed_form, &setup.order, p, cfg);
    Ok(cert)
}

/// x_1 (Δ_1…Δ_{s-n+1})^{p-1} ∏_{i<n} (u_{i,1}x_1+…+u_{i,n}x_n)^{p-1} and its data.
#[derive(Debug)]
pub struct ResidualLemmaSetup {
    pub link: LinkPresentation,
    pub order: MonomialOrder,
    pub factors: Vec<Polynomial>,
    pub closed_form: Monomial,
}

/// Lex order: u_{i,j} above u_{l,k} when i > l, or i = l and either j = i+1
/// or j > k with k ≠ i+1; every u above every x; x_1 > … > x_n.
pub fn residual_lemma_order(link: &LinkPresentation) -> MonomialOrder {
    let u = link.matrix();
    let (s, n) = (u.rows(), u.cols());
    let mut priority = Vec::new();
    for i in (0..s).rev() {
        if i + 1 < n {
            priority.push(u.entry_index(i, i + 1));
        }
        for j in (0..n).rev() {
            if j != i + 1 {
                priority.push(u.entry_index(i, j));
            }
        }
    }
    priority.extend(0..n);
    MonomialOrder::lex(priority).expect("permutation")
}

pub fn residual_lemma_setup(n: usize, s: usize, p: u64) -> Result<ResidualLemmaSetup> {
    if n <= 1 {
        return Err(Error::usage("the residual check needs n > 1"));
    }
    let link = maximal_presentation(n, s, p)?;
    let ring = link.ring().clone();
    let mut factors = vec![ring.gen(0)];
    for b in beta_sequence(&link)? {
        factors.push(b.pow(p - 1));
    }
    let u = link.matrix();
    let mut exps = vec![0u32; ring.nvars()];
    exps[0] = 1;
    for e in exps.iter_mut().take(n).skip(1) {
        *e = (p - 1) as u32;
    }
    for i in 0..s {
        for j in 0..n {
            let d = i as i64 - j as i64;
            if -1 <= d && d <= (s - n) as i64 {
                exps[u.entry_index(i, j)] = (p - 1) as u32;
            }
        }
    }
    let order = residual_lemma_order(&link);
    Ok(ResidualLemmaSetup { link, order, factors, closed_form: Monomial::from_exponents(&exps) })
}

/// The s-residual intersection product of m = (x_1..x_n) lies outside n^[p].
pub fn lemma_check_residual(n: usize, s: usize, p: u64, cfg: &ExpansionConfig) -> Result<Certificate> {
    let setup = residual_lemma_setup(n, s, p)?;
    let mut cert = Certificate::new(CertificateKind::LemmaCheck);
    cert.param("lemma", "residual");
    cert.param("n", n);
    cert.param("s", s);
    cert.param("p", p);
    let ring = setup.link.ring().clone();
    lemma_run(&mut cert, &ring, &setup.factors, &setup.closed_form, &setup.order, p, cfg);
    Ok(cert)
}

/// The generic link of I_t(X) over its maximal minors, with the lemma data.
#[derive(Debug)]
pub struct GenlinkLemmaSetup {
    pub x: GenericMatrix,
    pub link: LinkPresentation,
    /// 0-based positions of the staircase minors among the maximal minors.
    pub staircase_indices: Vec<usize>,
    pub order: MonomialOrder,
    pub factors: Vec<Polynomial>,
    pub closed_form: Monomial,
}

/// I_t(X) generated by its maximal minors in colex column order.
pub fn maximal_minor_ideal(t: usize, n: usize, p: u64) -> Result<(GenericMatrix, Ideal)> {
    if t == 0 || n < t {
        return Err(Error::usage("need n ≥ t ≥ 1"));
    }
    let x = GenericMatrix::generic(p, MatrixSymbol::X, t, n)?;
    let i = Ideal::new(x.ring(), x.maximal_minors())?;
    Ok((x, i))
}

pub fn genlink_lemma_setup(t: usize, n: usize, p: u64) -> Result<GenlinkLemmaSetup> {
    let (x0, i) = maximal_minor_ideal(t, n, p)?;
    let link = LinkPresentation::new(&i, n - t + 1)?;
    let ring = link.ring().clone();
    let x = GenericMatrix::in_ring(&ring, MatrixSymbol::X, t, n)?;
    let specs = x0.maximal_minor_specs();
    let staircase_indices: Vec<usize> = x0
        .staircase_specs()
        .iter()
        .map(|st| specs.iter().position(|sp| sp == st).expect("staircase minor is maximal"))
        .collect();
    let u = link.matrix();
    let mut priority: Vec<usize> = staircase_indices
        .iter()
        .enumerate()
        .map(|(row, &k)| u.entry_index(row, k))
        .collect();
    for row in 0..u.rows() {
        for col in 0..u.cols() {
            let v = u.entry_index(row, col);
            if !priority.contains(&v) {
                priority.push(v);
            }
        }
    }
    for row in 0..t {
        for col in 0..n {
            priority.push(x.entry_index(row, col));
        }
    }
    let order = MonomialOrder::lex(priority)?;
    let mut factors = vec![x.entry(0, n - 1)];
    for a in link.a_generators() {
        factors.push(a.pow(p - 1));
    }
    let mut closed_form = staircase_diagonal(&x, p).mul(&Monomial::var(ring.nvars(), x.entry_index(0, n - 1)));
    for (row, &k) in staircase_indices.iter().enumerate() {
        closed_form = closed_form.mul(&Monomial::var(ring.nvars(), u.entry_index(row, k)).pow((p - 1) as u32));
    }
    Ok(GenlinkLemmaSetup { x, link, staircase_indices, order, factors, closed_form })
}

/// x_{1,n} (a^[p] : a) ⊄ m^[p] for the generic link of I_t(X).
///
/// Decided through x_{1,n}(a_1…a_{n-t+1})^{p-1}. When no qualifying monomial
/// exists the verdict is refuted only if a is verified to be a regular
/// sequence, since then a^[p] : a = (∏ a)^{p-1} + a^[p] and x_{1,n}·a^[p]
/// lies in m^[p].
pub fn lemma_check_genlink(t: usize, n: usize, p: u64, cfg: &ExpansionConfig) -> Result<Certificate> {
    let setup = genlink_lemma_setup(t, n, p)?;
    let mut cert = Certificate::new(CertificateKind::LemmaCheck);
    cert.param("lemma", "genlink");
    cert.param("t", t);
    cert.param("n", n);
    cert.param("p", p);
    cert.param(
        "staircase_indices",
        format!("{:?}", setup.staircase_indices.iter().map(|k| k + 1).collect::<Vec<_>>()),
    );
    let ring = setup.link.ring().clone();
    let done = lemma_run(&mut cert, &ring, &setup.factors, &setup.closed_form, &setup.order, p, cfg);
    if done.is_some() && cert.verdict == Verdict::Refuted {
        if setup.link.a_is_regular_sequence()? {
            cert.note("every monomial of x_{1,n}(a_1…a_{n-t+1})^{p-1} lies in m^[p] and a is a regular sequence, so x_{1,n}(a^[p] : a) ⊆ m^[p]");
        } else {
            cert.verdict = Verdict::Inconclusive;
            cert.note("no qualifying monomial, but a was not verified to be a regular sequence");
        }
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;
    use crate::text::parse_polynomial;
    use crate::var::VariableId;

    fn ring(p: u64, names: &[&str]) -> Ring {
        PolyRing::new(p, names.iter().map(|n| VariableId::named(n)).collect()).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn fedder_ideal_of_the_plane() {
        let r = ring(2, &["x", "y"]);
        let f = fedder_ideal(&Ideal::maximal(&r), 1).unwrap();
        assert!(f.equals(&ideal(&r, &["x^2", "y^2", "x*y"])).unwrap());
    }

    #[test]
    fn fedder_ideal_of_a_principal_ideal() {
        let r = ring(3, &["x", "y"]);
        let f = fedder_ideal(&ideal(&r, &["x^2 + y^3"]), 1).unwrap();
        assert!(f.equals(&ideal(&r, &["(x^2 + y^3)^2"])).unwrap());
    }

    #[test]
    fn fpure_node_and_cusp() {
        let r = ring(2, &["x", "y"]);
        let c = fedder_fpure(&ideal(&r, &["x*y"]), &Ideal::maximal(&r), 1).unwrap();
        assert_eq!(c.verdict, Verdict::Established);
        assert_eq!(c.witness.as_ref().unwrap().monomial_text(), "x*y");
        assert!(c.revalidate());
        let r1 = ring(2, &["x"]);
        for e in 1..=2 {
            let c = fedder_fpure(&ideal(&r1, &["x^2"]), &Ideal::maximal(&r1), e).unwrap();
            assert_eq!(c.verdict, Verdict::Inconclusive);
            assert!(c.witness.is_none());
        }
    }

    #[test]
    fn ci_fast_verdicts() {
        let r = ring(2, &["x", "y"]);
        let c = fedder_ci_fast(&[r.gen(0)], 2).unwrap();
        assert_eq!(c.verdict, Verdict::Established);
        let c = fedder_ci_fast(&[parse_polynomial(&r, "x^2").unwrap()], 2).unwrap();
        assert_eq!(c.verdict, Verdict::Refuted);
        assert!(fedder_ci_fast(&[r.gen(0), parse_polynomial(&r, "x*y").unwrap()], 2).is_err());
    }

    #[test]
    fn containment_reflexive_and_rejects_non_subideal() {
        let r = ring(3, &["x", "y", "z"]);
        let a = ideal(&r, &["x*y", "z^2"]);
        let c = containment_shortcut(&a, &a, 3).unwrap();
        assert_eq!(c.verdict, Verdict::Established);
        assert!(c.revalidate());
        assert!(containment_shortcut(&ideal(&r, &["x"]), &ideal(&r, &["y"]), 3).is_err());
    }

    #[test]
    fn glassbrenner_rejects_members() {
        let r = ring(2, &["x", "y"]);
        let i = ideal(&r, &["x*y"]);
        assert!(glassbrenner_witness(&i, &parse_polynomial(&r, "x*y").unwrap(), &Ideal::maximal(&r), 1).is_err());
        let c = glassbrenner_witness(&i, &r.gen(0), &Ideal::maximal(&r), 1).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn glassbrenner_on_a_smooth_hypersurface() {
        let r = ring(2, &["x", "y", "z"]);
        let c = glassbrenner_witness(&ideal(&r, &["x"]), &r.gen(1), &Ideal::maximal(&r), 1).unwrap();
        // (x^2):(x) = (x), and y·x has all exponents below 2.
        assert_eq!(c.verdict, Verdict::WitnessFound);
        assert!(c.revalidate());
        assert!(c.notes.iter().any(|n| n.contains("condition (1)")));
    }

    #[test]
    fn det_check_small() {
        let c = lemma_check_det(2, 3, 2, &ExpansionConfig::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Established);
        assert_eq!(c.parameters["closed_form_match"], "true");
        assert_eq!(c.parameters["initial_equals_closed_form"], "true");
        assert!(c.revalidate());
        assert!(lemma_check_det(1, 3, 2, &ExpansionConfig::default()).is_err());
    }

    #[test]
    fn residual_check_small() {
        let c = lemma_check_residual(2, 2, 2, &ExpansionConfig::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Established);
        assert_eq!(c.witness.unwrap().monomial_text(), "x[1]*x[2]*u[1,1]*u[1,2]*u[2,2]");
        assert!(lemma_check_residual(1, 2, 2, &ExpansionConfig::default()).is_err());
    }

    #[test]
    fn term_cap_gives_inconclusive() {
        let c = lemma_check_det(2, 3, 3, &ExpansionConfig { term_cap: 3 }).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert!(c.notes.iter().any(|n| n.contains("E_TERM_CAP")));
    }

    #[test]
    fn genlink_staircase_indices() {
        let s = genlink_lemma_setup(2, 3, 2).unwrap();
        assert_eq!(s.staircase_indices, vec![0, 2]);
        assert_eq!(s.link.a_generators().len(), 2);
    }
}
