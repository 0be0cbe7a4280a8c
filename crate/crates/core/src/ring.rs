use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder, OrderKind};
use crate::poly::Polynomial;
use crate::var::VariableId;

/// Shared handle to a polynomial ring.
pub type Ring = Arc<PolyRing>;

/// F_p[v_1, ..., v_n] with a registry of named variables and a default order.
///
/// Polynomials store their terms sorted under the default order.
#[derive(Debug)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<VariableId>,
    index: HashMap<VariableId, usize>,
    default_order: MonomialOrder,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.vars == other.vars && self.default_order == other.default_order
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    /// Ring with graded reverse lex (registry order as priority) as default order.
    pub fn new(p: u64, vars: Vec<VariableId>) -> Result<Ring> {
        let order = MonomialOrder::grevlex_natural(vars.len());
        Self::with_order(p, vars, order)
    }

    pub fn with_order(p: u64, vars: Vec<VariableId>, default_order: MonomialOrder) -> Result<Ring> {
        let field = PrimeField::new(p)?;
        if default_order.nvars() != vars.len() {
            return Err(Error::usage("default order does not match the variable count"));
        }
        let mut index = HashMap::with_capacity(vars.len());
        for (i, v) in vars.iter().enumerate() {
            if let VariableId::Named(s) = v {
                if !crate::var::is_identifier(s) {
                    return Err(Error::usage(format!("invalid variable name `{s}`")));
                }
            }
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::usage(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(PolyRing {
            field,
            vars,
            index,
            default_order,
        }))
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[VariableId] {
        &self.vars
    }

    pub fn index_of(&self, v: &VariableId) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn default_order(&self) -> &MonomialOrder {
        &self.default_order
    }

    /// Lex order on this ring from an explicit list of variables, highest first.
    pub fn lex_by(&self, priority: &[VariableId]) -> Result<MonomialOrder> {
        let perm = self.perm_of(priority)?;
        MonomialOrder::lex(perm)
    }

    pub fn grevlex_by(&self, priority: &[VariableId]) -> Result<MonomialOrder> {
        let perm = self.perm_of(priority)?;
        MonomialOrder::grevlex(perm)
    }

    fn perm_of(&self, priority: &[VariableId]) -> Result<Vec<usize>> {
        priority
            .iter()
            .map(|v| self.index_of(v).ok_or_else(|| Error::usage(format!("variable {v} not in ring"))))
            .collect()
    }

    /// Elimination order removing `elim`; ties use the default priority.
    pub fn elimination_order(&self, elim: &[VariableId]) -> Result<MonomialOrder> {
        let mut mask = vec![false; self.nvars()];
        for v in elim {
            let i = self.index_of(v).ok_or_else(|| Error::usage(format!("variable {v} not in ring")))?;
            mask[i] = true;
        }
        MonomialOrder::elimination(self.default_order.priority().to_vec(), mask)
    }

    /// Returns `true` if both handles denote the same ring.
    pub fn same(a: &Ring, b: &Ring) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    pub(crate) fn check_same(a: &Ring, b: &Ring) -> Result<()> {
        if Self::same(a, b) {
            Ok(())
        } else {
            Err(Error::usage("operands live in different rings"))
        }
    }

    /// New ring with `extra` appended after the existing variables.
    ///
    /// The default order keeps its kind and ranks the new variables lowest,
    /// so the old ring embeds order-preservingly.
    pub fn adjoin(self: &Ring, extra: Vec<VariableId>) -> Result<Ring> {
        let n = self.nvars();
        let mut vars = self.vars.clone();
        vars.extend(extra);
        let total = vars.len();
        let mut priority = self.default_order.priority().to_vec();
        priority.extend(n..total);
        let order = match self.default_order.kind() {
            OrderKind::Lex => MonomialOrder::lex(priority)?,
            OrderKind::GradedReverseLex => MonomialOrder::grevlex(priority)?,
            OrderKind::EliminationBlock => {
                let mut mask = self.default_order.eliminated().to_vec();
                mask.resize(total, false);
                MonomialOrder::elimination(priority, mask)?
            }
        };
        Self::with_order(self.characteristic() as u64, vars, order)
    }

    /// Same variables and characteristic, different default order.
    pub fn reordered(self: &Ring, order: MonomialOrder) -> Result<Ring> {
        Self::with_order(self.characteristic() as u64, self.vars.clone(), order)
    }

    /// An auxiliary variable name not yet used in this ring.
    pub fn fresh_aux(&self) -> VariableId {
        let k = self
            .vars
            .iter()
            .filter_map(|v| match v {
                VariableId::Aux(k) => Some(*k + 1),
                _ => None,
            })
            .max()
            .unwrap_or(1);
        VariableId::Aux(k)
    }

    pub fn var(self: &Ring, v: &VariableId) -> Result<Polynomial> {
        let i = self.index_of(v).ok_or_else(|| Error::usage(format!("variable {v} not in ring")))?;
        Ok(self.gen(i))
    }

    /// The i-th ring variable as a polynomial.
    pub fn gen(self: &Ring, i: usize) -> Polynomial {
        Polynomial::monomial(self, Monomial::var(self.nvars(), i), 1)
    }

    /// All ring variables, in registry order.
    pub fn gens(self: &Ring) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.gen(i)).collect()
    }
}
