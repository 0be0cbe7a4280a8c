//! Generic matrices of indeterminates, their minors and determinantal ideals.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{PolyRing, Ring};
use crate::var::{MatrixSymbol, VariableId};

/// A rows×cols matrix whose entries are pairwise distinct ring variables.
///
/// Indices in the API are 0-based; variable names are 1-based (`x[1,1]`).
#[derive(Clone, Debug)]
pub struct GenericMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<usize>,
}

/// Row and column index sets (0-based, strictly increasing, same length).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorSpec {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<MinorSpec> {
        if rows.is_empty() || rows.len() != cols.len() {
            return Err(Error::usage("a minor needs equally many (at least one) rows and columns"));
        }
        let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        if !increasing(&rows) || !increasing(&cols) {
            return Err(Error::usage("minor indices must be strictly increasing"));
        }
        Ok(MinorSpec { rows, cols })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }
}

/// The entry names `symbol[i,j]` of a rows×cols matrix in row-major order.
pub fn matrix_variables(symbol: MatrixSymbol, rows: usize, cols: usize) -> Vec<VariableId> {
    let mut out = Vec::with_capacity(rows * cols);
    for i in 1..=rows as u32 {
        for j in 1..=cols as u32 {
            out.push(match symbol {
                MatrixSymbol::X => VariableId::x(i, j),
                MatrixSymbol::U => VariableId::u(i, j),
                MatrixSymbol::W => VariableId::w(i, j),
            });
        }
    }
    out
}

/// All k-subsets of 0..n in colexicographic order.
pub fn colex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Colex successor: bump the lowest position that can move, reset those below it.
        let mut i = 0;
        while i < k {
            let limit = if i + 1 < k { cur[i + 1] } else { n };
            if cur[i] + 1 < limit {
                cur[i] += 1;
                for (j, c) in cur.iter_mut().enumerate().take(i) {
                    *c = j;
                }
                break;
            }
            i += 1;
        }
        if i == k {
            return out;
        }
    }
}

/// Stable reordering that puts the minors using column `col` first.
pub fn containing_column_first(specs: &[MinorSpec], col: usize) -> Vec<MinorSpec> {
    let (mut with, without): (Vec<_>, Vec<_>) = specs.iter().cloned().partition(|s| s.cols.contains(&col));
    with.extend(without);
    with
}

impl GenericMatrix {
    /// A matrix over existing variables of `ring`, given row-major.
    pub fn new(ring: &Ring, rows: usize, cols: usize, entries: &[VariableId]) -> Result<GenericMatrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::usage("matrix dimensions must be positive"));
        }
        if entries.len() != rows * cols {
            return Err(Error::usage(format!("expected {} entries, got {}", rows * cols, entries.len())));
        }
        let mut idx = Vec::with_capacity(entries.len());
        for v in entries {
            let i = ring
                .index_of(v)
                .ok_or_else(|| Error::usage(format!("matrix entry {v} is not a ring variable")))?;
            if idx.contains(&i) {
                return Err(Error::usage(format!("matrix entry {v} repeated")));
            }
            idx.push(i);
        }
        Ok(GenericMatrix { ring: ring.clone(), rows, cols, entries: idx })
    }

    /// The matrix `symbol[i,j]` inside `ring`, which must contain those variables.
    pub fn in_ring(ring: &Ring, symbol: MatrixSymbol, rows: usize, cols: usize) -> Result<GenericMatrix> {
        GenericMatrix::new(ring, rows, cols, &matrix_variables(symbol, rows, cols))
    }

    /// A fresh rows×cols generic matrix over F_p in its own ring (grevlex, row-major).
    pub fn generic(p: u64, symbol: MatrixSymbol, rows: usize, cols: usize) -> Result<GenericMatrix> {
        let ring = PolyRing::new(p, matrix_variables(symbol, rows, cols))?;
        GenericMatrix::in_ring(&ring, symbol, rows, cols)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Ring index of entry (i, j).
    pub fn entry_index(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.cols + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        self.ring.gen(self.entry_index(i, j))
    }

    pub fn entry_var(&self, i: usize, j: usize) -> &VariableId {
        &self.ring.vars()[self.entry_index(i, j)]
    }

    /// Lex order with the entries ranked row-major, then the other ring variables.
    pub fn row_major_lex(&self) -> MonomialOrder {
        let mut priority = self.entries.clone();
        priority.extend((0..self.ring.nvars()).filter(|v| !self.entries.contains(v)));
        MonomialOrder::lex(priority).expect("permutation")
    }

    /// Determinant of the selected submatrix by Laplace expansion along the
    /// first row, memoized over column subsets.
    pub fn minor(&self, spec: &MinorSpec) -> Result<Polynomial> {
        if spec.rows.iter().any(|&r| r >= self.rows) || spec.cols.iter().any(|&c| c >= self.cols) {
            return Err(Error::usage("minor indices out of range"));
        }
        let k = spec.size();
        if k > 63 {
            return Err(Error::usage("minor too large"));
        }
        let mut memo: HashMap<u64, Polynomial> = HashMap::new();
        Ok(self.expand(spec, 0, (1u64 << k) - 1, &mut memo))
    }

    fn expand(&self, spec: &MinorSpec, level: usize, cols: u64, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
        if cols == 0 {
            return Polynomial::one(&self.ring);
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let row = spec.rows[level];
        let mut acc = Polynomial::zero(&self.ring);
        let mut position = 0;
        for (bit, &col) in spec.cols.iter().enumerate() {
            if cols & (1 << bit) == 0 {
                continue;
            }
            let rest = self.expand(spec, level + 1, cols & !(1 << bit), memo);
            let v = self.entry_index(row, col);
            let mono = crate::monomial::Monomial::var(self.ring.nvars(), v);
            let field = self.ring.field();
            let c = if position % 2 == 0 { 1 } else { field.neg(1) };
            acc = &acc + &rest.mul_term(&mono, c);
            position += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    /// Specs of all size×size minors, row sets outer, column sets inner, both colex.
    pub fn minor_specs(&self, size: usize) -> Vec<MinorSpec> {
        let mut out = Vec::new();
        for r in colex_subsets(self.rows, size) {
            for c in colex_subsets(self.cols, size) {
                out.push(MinorSpec { rows: r.clone(), cols: c });
            }
        }
        out
    }

    pub fn minors(&self, size: usize) -> Result<Vec<Polynomial>> {
        if size == 0 || size > self.rows.min(self.cols) {
            return Err(Error::usage(format!("minor size {size} out of range")));
        }
        self.minor_specs(size).iter().map(|s| self.minor(s)).collect()
    }

    /// Specs of the maximal minors in colex order of the varying index set.
    pub fn maximal_minor_specs(&self) -> Vec<MinorSpec> {
        self.minor_specs(self.rows.min(self.cols))
    }

    pub fn maximal_minors(&self) -> Vec<Polynomial> {
        self.maximal_minor_specs()
            .iter()
            .map(|s| self.minor(s).expect("valid spec"))
            .collect()
    }

    /// Adjacent maximal minors: consecutive columns for wide matrices,
    /// consecutive rows for tall ones.
    pub fn staircase_specs(&self) -> Vec<MinorSpec> {
        let k = self.rows.min(self.cols);
        let all = |m: usize| (0..m).collect::<Vec<_>>();
        if self.rows <= self.cols {
            (0..=self.cols - k)
                .map(|i| MinorSpec { rows: all(k), cols: (i..i + k).collect() })
                .collect()
        } else {
            (0..=self.rows - k)
                .map(|i| MinorSpec { rows: (i..i + k).collect(), cols: all(k) })
                .collect()
        }
    }

    pub fn staircase_minors(&self) -> Vec<Polynomial> {
        self.staircase_specs()
            .iter()
            .map(|s| self.minor(s).expect("valid spec"))
            .collect()
    }

    /// I_size of this matrix.
    pub fn det_ideal(&self, size: usize) -> Result<Ideal> {
        Ideal::new(&self.ring, self.minors(size)?)
    }
}
