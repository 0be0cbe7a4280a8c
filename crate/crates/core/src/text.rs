//! The textual polynomial grammar and the ideal file format.
//!
//! ```text
//! p=2; vars=x[1,1],x[1,2],x[2,1],x[2,2]; order=grevlex
//! x[1,1]*x[2,2] - x[1,2]*x[2,1]
//! ```
//!
//! Coefficients are integers reduced mod p, `^` takes a nonnegative
//! integer exponent, `*` may be omitted between factors, and parentheses
//! group subexpressions. Generators in a file body are comma separated and
//! may span lines; lines starting with `#` are ignored.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{PolyRing, Ring};
use crate::var::{MatrixSymbol, VariableId};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    Semi,
    Eq,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

impl Spanned {
    fn width(&self) -> usize {
        match &self.tok {
            Tok::Int(s) | Tok::Ident(s) => s.len(),
            _ => 1,
        }
    }
}

fn lex(src: &str, line0: usize) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    for (li, line) in src.lines().enumerate() {
        let line_no = line0 + li;
        if line.trim_start().starts_with('#') {
            continue;
        }
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let single = match c {
                '[' => Some(Tok::LBracket),
                ']' => Some(Tok::RBracket),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                ',' => Some(Tok::Comma),
                '+' => Some(Tok::Plus),
                '-' => Some(Tok::Minus),
                '*' => Some(Tok::Star),
                '^' => Some(Tok::Caret),
                ';' => Some(Tok::Semi),
                '=' => Some(Tok::Eq),
                _ => None,
            };
            if let Some(tok) = single {
                out.push(Spanned {
                    tok,
                    line: line_no,
                    column,
                });
                i += 1;
            } else if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Int(chars[start..i].iter().collect()),
                    line: line_no,
                    column,
                });
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line: line_no,
                    column,
                });
            } else {
                return Err(Error::Parse {
                    line: line_no,
                    column,
                    message: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    end_line: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let (line, column) = match self.toks.get(self.pos) {
            Some(s) => (s.line, s.column),
            None => match self.toks.last() {
                Some(s) => (s.line, s.column + s.width()),
                None => (self.end_line, 1),
            },
        };
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn int(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err("expected integer")),
        }
    }

    fn small_int(&mut self) -> Result<u32> {
        let s = self.int()?;
        s.parse::<u32>().map_err(|_| {
            self.pos -= 1;
            self.err(format!("integer `{s}` out of range"))
        })
    }

    /// Parses a variable name; the identifier has already been read.
    fn variable_tail(&mut self, name: String) -> Result<VariableId> {
        if self.peek() != Some(&Tok::LBracket) {
            return Ok(VariableId::Named(name));
        }
        self.pos += 1;
        let a = self.small_int()?;
        let b = if self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            Some(self.small_int()?)
        } else {
            None
        };
        self.expect(Tok::RBracket, "`]`")?;
        let symbol = match name.as_str() {
            "x" => MatrixSymbol::X,
            "u" => MatrixSymbol::U,
            "w" => MatrixSymbol::W,
            "aux" if b.is_none() => return Ok(VariableId::Aux(a)),
            _ => {
                self.pos -= 1;
                return Err(self.err(format!("unknown indexed variable family `{name}`")));
            }
        };
        match (symbol, b) {
            (_, Some(col)) => Ok(VariableId::Entry { symbol, row: a, col }),
            (MatrixSymbol::X, None) => Ok(VariableId::Indexed(a)),
            _ => Err(self.err(format!("`{name}` variables take two indices"))),
        }
    }

    fn poly(&mut self, ring: &Ring) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(ring);
        let mut sign_neg = match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        loop {
            let t = self.term(ring)?;
            acc = if sign_neg { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign_neg = false;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign_neg = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self, ring: &Ring) -> Result<Polynomial> {
        let mut acc = self.factor(ring)?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor(ring)?;
                    acc = &acc * &f;
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.factor(ring)?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self, ring: &Ring) -> Result<Polynomial> {
        let base = self.atom(ring)?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = self.small_int()?;
            Ok(base.pow(e as u64))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self, ring: &Ring) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let p = ring.characteristic() as u64;
                let v = s.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(Polynomial::constant(ring, v as i64))
            }
            Some(Tok::Ident(name)) => {
                let at = self.pos;
                self.pos += 1;
                let v = self.variable_tail(name)?;
                match ring.index_of(&v) {
                    Some(i) => Ok(Polynomial::monomial(ring, Monomial::var(ring.nvars(), i), 1)),
                    None => {
                        self.pos = at;
                        Err(self.err(format!("variable {v} is not declared")))
                    }
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.poly(ring)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.err("expected a coefficient, variable or `(`")),
        }
    }
}

/// Parses a single polynomial in `ring`.
pub fn parse_polynomial(ring: &Ring, src: &str) -> Result<Polynomial> {
    let toks = lex(src, 1)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end_line: src.lines().count().max(1),
    };
    let f = p.poly(ring)?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(f)
}

/// Parses a comma-separated generator list; empty input gives no generators.
pub fn parse_polynomial_list(ring: &Ring, src: &str) -> Result<Vec<Polynomial>> {
    parse_list_at(ring, src, 1)
}

fn parse_list_at(ring: &Ring, src: &str, line0: usize) -> Result<Vec<Polynomial>> {
    let toks = lex(src, line0)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end_line: line0 + src.lines().count(),
    };
    let mut out = Vec::new();
    while p.pos < toks.len() {
        out.push(p.poly(ring)?);
        match p.peek() {
            None => break,
            Some(Tok::Comma) => p.pos += 1,
            Some(_) => return Err(p.err("expected `,` between generators")),
        }
    }
    Ok(out)
}

/// Parses a variable list such as `x[1,1],x[1,2],y`.
pub fn parse_variable_list(src: &str) -> Result<Vec<VariableId>> {
    let toks = lex(src, 1)?;
    parse_vars(&toks, 1)
}

fn parse_vars(toks: &[Spanned], line: usize) -> Result<Vec<VariableId>> {
    let mut p = Parser {
        toks,
        pos: 0,
        end_line: line,
    };
    let mut vars = Vec::new();
    while p.pos < toks.len() {
        let name = match p.peek() {
            Some(Tok::Ident(s)) => s.clone(),
            _ => return Err(p.err("expected variable name")),
        };
        p.pos += 1;
        vars.push(p.variable_tail(name)?);
        match p.peek() {
            None => break,
            Some(Tok::Comma) => p.pos += 1,
            Some(_) => return Err(p.err("expected `,` between variables")),
        }
    }
    Ok(vars)
}

/// Contents of an ideal file: ring, generators and the named order.
#[derive(Debug, Clone)]
pub struct IdealFile {
    pub ring: Ring,
    pub ideal: Ideal,
}

/// Parses `p=<prime>; vars=<list>; order=<name>` followed by generators.
///
/// The header order becomes the ring's default order.
pub fn parse_ideal_text(src: &str) -> Result<IdealFile> {
    let mut lines = src.lines().enumerate().skip_while(|(_, l)| l.trim().is_empty() || l.trim_start().starts_with('#'));
    let (hidx, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing header line".into(),
    })?;
    let line_no = hidx + 1;
    let toks = lex(header, line_no)?;
    let mut p: Option<u64> = None;
    let mut vars: Option<Vec<VariableId>> = None;
    let mut order: Option<String> = None;
    for field in toks.split(|t| t.tok == Tok::Semi) {
        if field.is_empty() {
            continue;
        }
        let key = match &field[0].tok {
            Tok::Ident(k) => k.clone(),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    column: field[0].column,
                    message: "expected header key".into(),
                })
            }
        };
        if field.get(1).map(|t| &t.tok) != Some(&Tok::Eq) {
            return Err(Error::Parse {
                line: line_no,
                column: field[0].column,
                message: format!("expected `=` after `{key}`"),
            });
        }
        let rest = &field[2..];
        let col = field[0].column;
        match key.as_str() {
            "p" => match rest {
                [Spanned { tok: Tok::Int(s), .. }] => {
                    p = Some(s.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        column: col,
                        message: "characteristic out of range".into(),
                    })?)
                }
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        column: col,
                        message: "expected integer characteristic".into(),
                    })
                }
            },
            "vars" => vars = Some(parse_vars(rest, line_no)?),
            "order" => match rest {
                [Spanned { tok: Tok::Ident(s), .. }] => order = Some(s.clone()),
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        column: col,
                        message: "expected order name".into(),
                    })
                }
            },
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    column: col,
                    message: format!("unknown header key `{other}`"),
                })
            }
        }
    }
    let missing = |k: &str| Error::Parse {
        line: line_no,
        column: 1,
        message: format!("header lacks `{k}`"),
    };
    let p = p.ok_or_else(|| missing("p"))?;
    let vars = vars.ok_or_else(|| missing("vars"))?;
    let order_name = order.unwrap_or_else(|| "grevlex".to_string());
    let ord = order_from_name(&order_name, vars.len()).ok_or(Error::Parse {
        line: line_no,
        column: 1,
        message: format!("unknown order `{order_name}`"),
    })?;
    let ring = PolyRing::with_order(p, vars, ord).map_err(|e| Error::Parse {
        line: line_no,
        column: 1,
        message: e.to_string(),
    })?;
    let body: Vec<&str> = src.lines().skip(hidx + 1).collect();
    let gens = parse_list_at(&ring, &body.join("\n"), line_no + 1)?;
    let ideal = Ideal::new(&ring, gens)?;
    Ok(IdealFile { ring, ideal })
}

/// Order with the registry as priority, by header name.
pub fn order_from_name(name: &str, nvars: usize) -> Option<MonomialOrder> {
    match name {
        "lex" => Some(MonomialOrder::lex_natural(nvars)),
        "grevlex" => Some(MonomialOrder::grevlex_natural(nvars)),
        _ => None,
    }
}

/// `p=..; vars=..; order=..` for a ring.
pub fn format_header(ring: &PolyRing) -> String {
    let vars: Vec<String> = ring.vars().iter().map(|v| v.to_string()).collect();
    format!("p={}; vars={}; order={}", ring.characteristic(), vars.join(","), ring.default_order().name())
}

/// Writes an ideal in the file format; `parse_ideal_text` inverts it.
pub fn format_ideal_text(ideal: &Ideal) -> String {
    let mut s = format_header(ideal.ring());
    s.push('\n');
    let gens: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
    s.push_str(&gens.join(",\n"));
    if !gens.is_empty() {
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring23() -> Ring {
        let mut v = Vec::new();
        for i in 1..=2 {
            for j in 1..=3 {
                v.push(VariableId::x(i, j));
            }
        }
        PolyRing::new(2, v).unwrap()
    }

    #[test]
    fn parses_matrix_minor() {
        let r = ring23();
        let f = parse_polynomial(&r, "x[1,1]*x[2,2] - x[1,2]*x[2,1]").unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.to_string(), "x[1,2]*x[2,1] + x[1,1]*x[2,2]");
    }

    #[test]
    fn implicit_multiplication_and_powers() {
        let r = PolyRing::new(5, vec![VariableId::named("x"), VariableId::named("y")]).unwrap();
        let a = parse_polynomial(&r, "3 x y^2 + (x+y)^2").unwrap();
        let b = parse_polynomial(&r, "3*x*y^2 + x^2 + 2*x*y + y^2").unwrap();
        assert_eq!(a, b);
        let c = parse_polynomial(&r, "12*x - 7").unwrap();
        assert_eq!(c.to_string(), "2*x - 2");
    }

    #[test]
    fn reports_position_of_unknown_variable() {
        let r = PolyRing::new(2, vec![VariableId::named("x")]).unwrap();
        match parse_polynomial(&r, "x + z") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn header_and_body() {
        let file = parse_ideal_text("p=2; vars=x,y; order=lex\nx^2, x*y+y^2\n").unwrap();
        assert_eq!(file.ideal.generators().len(), 2);
        assert_eq!(file.ring.default_order().name(), "lex");
    }

    #[test]
    fn empty_body_is_zero_ideal() {
        let file = parse_ideal_text("p=3; vars=x[1],x[2]; order=grevlex\n").unwrap();
        assert!(file.ideal.generators().is_empty());
    }

    #[test]
    fn malformed_header_reports_line() {
        match parse_ideal_text("\np=2; vars=x; order=bogus\nx") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_ideal_text("p=2; vars=x\nx +* x") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 4)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn variable_families_round_trip() {
        let vars = parse_variable_list("x[1,2],u[3,1],w[2,2],x[4],aux[1],t").unwrap();
        let shown: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        assert_eq!(shown.join(","), "x[1,2],u[3,1],w[2,2],x[4],aux[1],t");
        assert!(parse_variable_list("u[1]").is_err());
        assert!(parse_variable_list("q[1,2]").is_err());
    }
}
