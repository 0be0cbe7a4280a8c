use std::fmt;

/// Which generic matrix a two-index variable belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixSymbol {
    /// Entries `x[i,j]` of the base matrix X.
    X,
    /// Entries `u[i,j]` of the linking matrix U.
    U,
    /// Entries `w[i,j]`, the residual-intersection auxiliary matrix.
    W,
}

impl MatrixSymbol {
    pub fn letter(self) -> char {
        match self {
            MatrixSymbol::X => 'x',
            MatrixSymbol::U => 'u',
            MatrixSymbol::W => 'w',
        }
    }
}

/// Role tag of a ring variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    MatrixEntry,
    LinkEntry,
    ResidualEntry,
    Plain,
    Auxiliary,
}

/// Name of a ring variable.
///
/// The textual forms are `x[i,j]`, `u[i,j]`, `w[i,j]`, `x[k]`, `aux[k]`,
/// and bare identifiers such as `x` or `y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VariableId {
    Entry {
        symbol: MatrixSymbol,
        row: u32,
        col: u32,
    },
    Indexed(u32),
    Named(String),
    Aux(u32),
}

impl VariableId {
    pub fn x(row: u32, col: u32) -> Self {
        VariableId::Entry {
            symbol: MatrixSymbol::X,
            row,
            col,
        }
    }

    pub fn u(row: u32, col: u32) -> Self {
        VariableId::Entry {
            symbol: MatrixSymbol::U,
            row,
            col,
        }
    }

    pub fn w(row: u32, col: u32) -> Self {
        VariableId::Entry {
            symbol: MatrixSymbol::W,
            row,
            col,
        }
    }

    pub fn plain(k: u32) -> Self {
        VariableId::Indexed(k)
    }

    pub fn named(name: &str) -> Self {
        VariableId::Named(name.to_string())
    }

    pub fn role(&self) -> Role {
        match self {
            VariableId::Entry { symbol, .. } => match symbol {
                MatrixSymbol::X => Role::MatrixEntry,
                MatrixSymbol::U => Role::LinkEntry,
                MatrixSymbol::W => Role::ResidualEntry,
            },
            VariableId::Indexed(_) | VariableId::Named(_) => Role::Plain,
            VariableId::Aux(_) => Role::Auxiliary,
        }
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariableId::Entry { symbol, row, col } => write!(f, "{}[{},{}]", symbol.letter(), row, col),
            VariableId::Indexed(k) => write!(f, "x[{k}]"),
            VariableId::Named(s) => f.write_str(s),
            VariableId::Aux(k) => write!(f, "aux[{k}]"),
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
