//! Generic links and generic residual intersections.
//!
//! For I = (f_1, ..., f_n) ⊂ R and an s×n matrix U of new indeterminates,
//! a is generated by the entries of U·[f]^T in S = R[U] and J = a : I·S.

use std::sync::{Mutex, OnceLock};

use crate::determinantal::{matrix_variables, GenericMatrix};
use crate::error::{Error, Result};
use crate::ideal::{is_regular_sequence, Ideal};
use crate::poly::Polynomial;
use crate::ring::{PolyRing, Ring};
use crate::var::{MatrixSymbol, VariableId};

/// The data of a ↪ I·S and the (lazily computed) residual J = a : I·S.
///
/// The presentation depends on the generator list of I as given; a different
/// list yields an isomorphic but distinct presentation.
#[derive(Debug)]
pub struct LinkPresentation {
    base: Ring,
    ext: Ring,
    u: GenericMatrix,
    lifted: Ideal,
    a: Ideal,
    full_variable: bool,
    fast_path: bool,
    assertions: Vec<String>,
    j: OnceLock<Ideal>,
    compute_once: Mutex<()>,
}

fn link_symbol(base: &Ring) -> Result<MatrixSymbol> {
    let clashes = |s: MatrixSymbol| base.vars().iter().any(|v| matches!(v, VariableId::Entry { symbol, .. } if *symbol == s));
    [MatrixSymbol::U, MatrixSymbol::W]
        .into_iter()
        .find(|&s| !clashes(s))
        .ok_or_else(|| Error::usage("no free matrix symbol for the link variables"))
}

impl LinkPresentation {
    /// Build a, with U of shape s×n over the generator list of `i`.
    pub fn new(i: &Ideal, s: usize) -> Result<LinkPresentation> {
        let gens = i.generators();
        if gens.is_empty() {
            return Err(Error::usage("generic link of the zero ideal"));
        }
        if i.is_unit()? {
            return Err(Error::usage("generic link of the unit ideal"));
        }
        if s == 0 {
            return Err(Error::usage("the link matrix needs at least one row"));
        }
        let base = i.ring().clone();
        let n = gens.len();
        let symbol = link_symbol(&base)?;
        let ext = base.adjoin(matrix_variables(symbol, s, n))?;
        let u = GenericMatrix::in_ring(&ext, symbol, s, n)?;
        let lifted_gens = gens.iter().map(|g| g.embed(&ext)).collect::<Result<Vec<_>>>()?;
        let mut a_gens = Vec::with_capacity(s);
        for row in 0..s {
            let mut acc = Polynomial::zero(&ext);
            for (col, f) in lifted_gens.iter().enumerate() {
                acc = &acc + &(&u.entry(row, col) * f);
            }
            a_gens.push(acc);
        }
        let full_variable = match i.variable_indices() {
            Some(v) => v.len() == base.nvars() && v.len() == n,
            None => false,
        };
        Ok(LinkPresentation {
            base,
            ext: ext.clone(),
            u,
            lifted: Ideal::new(&ext, lifted_gens)?.with_config(i.config()),
            a: Ideal::new(&ext, a_gens)?.with_config(i.config()),
            full_variable,
            fast_path: true,
            assertions: vec![
                "equidimensionality of I is asserted by the caller, not decided".into(),
                "local generation hypotheses on I are asserted by the caller, not decided".into(),
            ],
            j: OnceLock::new(),
            compute_once: Mutex::new(()),
        })
    }

    /// Disable the closed-form shortcut for J, forcing the colon computation.
    pub fn without_fast_path(mut self) -> Self {
        self.fast_path = false;
        self
    }

    pub fn base_ring(&self) -> &Ring {
        &self.base
    }

    pub fn ring(&self) -> &Ring {
        &self.ext
    }

    pub fn matrix(&self) -> &GenericMatrix {
        &self.u
    }

    /// I·S.
    pub fn lifted(&self) -> &Ideal {
        &self.lifted
    }

    pub fn a(&self) -> &Ideal {
        &self.a
    }

    pub fn a_generators(&self) -> &[Polynomial] {
        self.a.generators()
    }

    pub fn assertions(&self) -> &[String] {
        &self.assertions
    }

    /// Whether I is generated by exactly the ring variables.
    pub fn is_full_variable_ideal(&self) -> bool {
        self.full_variable
    }

    /// J, computed on first access by the closed form (when I is the full
    /// variable ideal and the fast path is on) or by the colon a : I·S.
    pub fn j(&self) -> Result<&Ideal> {
        if let Some(j) = self.j.get() {
            return Ok(j);
        }
        let _guard = self.compute_once.lock().expect("link lock");
        if let Some(j) = self.j.get() {
            return Ok(j);
        }
        let j = if self.full_variable && self.fast_path {
            self.closed_form()?
        } else {
            self.colon_j()?
        };
        Ok(self.j.get_or_init(|| j))
    }

    /// J computed by the colon, bypassing the cache.
    pub fn colon_j(&self) -> Result<Ideal> {
        self.a.colon(&self.lifted)
    }

    /// a + I_n(U), the presentation of J when I is the full variable ideal.
    pub fn closed_form(&self) -> Result<Ideal> {
        let n = self.u.cols();
        if self.u.rows() < n {
            return Ok(self.a.clone());
        }
        let minors = self.u.minors(n)?;
        self.a.sum(&Ideal::new(&self.ext, minors)?)
    }

    /// Compares the colon computation of J with a + I_n(U).
    pub fn check_closed_form(&self) -> Result<bool> {
        if !self.full_variable {
            return Err(Error::usage("the closed form applies only to the full variable ideal"));
        }
        self.colon_j()?.equals(&self.closed_form()?)
    }

    /// Whether the a-generators form a regular sequence.
    pub fn a_is_regular_sequence(&self) -> Result<bool> {
        is_regular_sequence(self.a.generators())
    }
}

/// Generic link: U has height(I) rows.
pub fn generic_link(i: &Ideal) -> Result<LinkPresentation> {
    let g = i.height()?;
    LinkPresentation::new(i, g)
}

/// Generic s-residual intersection: U has s ≥ height(I) rows.
pub fn generic_residual_intersection(i: &Ideal, s: usize) -> Result<LinkPresentation> {
    let g = i.height()?;
    if s < g {
        return Err(Error::usage(format!("s = {s} is below height(I) = {g}")));
    }
    LinkPresentation::new(i, s)
}

/// Whether the a-generators of `link` form a regular sequence.
pub fn link_regular_sequence_a(link: &LinkPresentation) -> Result<bool> {
    link.a_is_regular_sequence()
}

/// The ring F_p[x_1..x_n] and its full variable ideal.
pub fn variable_ideal(n: usize, p: u64) -> Result<Ideal> {
    let ring = PolyRing::new(p, (1..=n as u32).map(VariableId::plain).collect())?;
    Ok(Ideal::maximal(&ring))
}

/// The s-residual intersection of m = (x_1..x_n) in K[x][U].
pub fn maximal_presentation(n: usize, s: usize, p: u64) -> Result<LinkPresentation> {
    if n == 0 {
        return Err(Error::usage("n must be positive"));
    }
    if s < n {
        return Err(Error::usage(format!("s = {s} is below n = {n}")));
    }
    LinkPresentation::new(&variable_ideal(n, p)?, s)
}

/// a + I_n(U) for m = (x_1..x_n), with no colon computation.
pub fn residual_presentation_maximal(n: usize, s: usize, p: u64) -> Result<Ideal> {
    maximal_presentation(n, s, p)?.closed_form()
}

/// The first n−1 entries of U·x followed by the s−n+1 adjacent-row n×n minors of U.
pub fn beta_sequence(link: &LinkPresentation) -> Result<Vec<Polynomial>> {
    let n = link.u.cols();
    let s = link.u.rows();
    if n < 2 {
        return Err(Error::usage("the beta sequence needs n ≥ 2"));
    }
    if s < n {
        return Err(Error::usage("the beta sequence needs s ≥ n"));
    }
    let mut out: Vec<Polynomial> = link.a.generators()[..n - 1].to_vec();
    out.extend(link.u.staircase_minors());
    Ok(out)
}
