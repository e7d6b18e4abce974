//! Concrete syntax for formulas.
//!
//! ```text
//! formula := iff
//! iff     := imp ('<->' imp)*                  (left-associative)
//! imp     := or ('->' imp)?                    (right-associative)
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' unary | primary
//! primary := '(' formula ')' | quant | atom
//! quant   := ('forall' | 'exists' | 'exists1') ivar+ '.' formula
//!          | ('forallP' | 'existsP') PRED ':' NUM '.' formula
//! atom    := PRED '(' ivar (',' ivar)* ')' | ivar '=' ivar
//! ```
//!
//! Individual variables match `[a-z][a-z0-9_]*`, predicate variables match
//! `[A-Z][A-Za-z0-9_]*`. Bound predicate variables declare their arity at the
//! binder (`existsP S:2. ...`); free predicate variables take their arity
//! from the first applied occurrence, and later occurrences must agree.

use super::{Formula, IndivVar, PredVar};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, col {col}: unexpected character {found:?}")]
    UnexpectedChar { line: u32, col: u32, found: char },
    #[error("line {line}, col {col}: expected {expected}, found {found}")]
    Unexpected {
        line: u32,
        col: u32,
        expected: String,
        found: String,
    },
    #[error("line {line}, col {col}: predicate {name} used with arity {found}, earlier arity {expected}")]
    ArityConflict {
        line: u32,
        col: u32,
        name: String,
        expected: u8,
        found: u8,
    },
    #[error("line {line}, col {col}: predicate arity must be between 1 and 255")]
    BadArity { line: u32, col: u32 },
    #[error("unexpected end of input")]
    Eof,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    PredName(String),
    Num(u64),
    LParen,
    RParen,
    Comma,
    Dot,
    Colon,
    Eq,
    Not,
    And,
    Or,
    Imp,
    Iff,
    KwForall,
    KwExists,
    KwExistsOne,
    KwForallPred,
    KwExistsPred,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "variable {s:?}"),
            Tok::PredName(s) => write!(f, "predicate {s:?}"),
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Dot => f.write_str("'.'"),
            Tok::Colon => f.write_str("':'"),
            Tok::Eq => f.write_str("'='"),
            Tok::Not => f.write_str("'!'"),
            Tok::And => f.write_str("'&'"),
            Tok::Or => f.write_str("'|'"),
            Tok::Imp => f.write_str("'->'"),
            Tok::Iff => f.write_str("'<->'"),
            Tok::KwForall => f.write_str("'forall'"),
            Tok::KwExists => f.write_str("'exists'"),
            Tok::KwExistsOne => f.write_str("'exists1'"),
            Tok::KwForallPred => f.write_str("'forallP'"),
            Tok::KwExistsPred => f.write_str("'existsP'"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: u32,
    col: u32,
}

fn lex(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    let mut line = 1u32;
    let mut col = 1u32;
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump(&mut chars);
            }
            '(' => {
                bump(&mut chars);
                out.push(Spanned { tok: Tok::LParen, line: tl, col: tc });
            }
            ')' => {
                bump(&mut chars);
                out.push(Spanned { tok: Tok::RParen, line: tl, col: tc });
            }
            ',' => {
                bump(&mut chars);
                out.push(Spanned { tok: Tok::Comma, line: tl, col: tc });
            }
            '.' => {
                bump(&mut chars);
                out.push(Spanned { tok: Tok::Dot, line: tl, col: tc });
            }
            ':' => {
                bump(&mut chars);
                out.push(Spanned { tok: Tok::Colon, line: tl, col: tc });
            }
            '=' => {
                bump(&mut chars);
                out.push(Spanned { tok: Tok::Eq, line: tl, col: tc });
            }
            '!' => {
                bump(&mut chars);
                out.push(Spanned { tok: Tok::Not, line: tl, col: tc });
            }
            '&' => {
                bump(&mut chars);
                out.push(Spanned { tok: Tok::And, line: tl, col: tc });
            }
            '|' => {
                bump(&mut chars);
                out.push(Spanned { tok: Tok::Or, line: tl, col: tc });
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    out.push(Spanned { tok: Tok::Imp, line: tl, col: tc });
                } else {
                    return Err(ParseError::UnexpectedChar { line: tl, col: tc, found: '-' });
                }
            }
            '<' => {
                bump(&mut chars);
                if chars.peek() == Some(&'-') {
                    bump(&mut chars);
                    if chars.peek() == Some(&'>') {
                        bump(&mut chars);
                        out.push(Spanned { tok: Tok::Iff, line: tl, col: tc });
                        continue;
                    }
                }
                return Err(ParseError::UnexpectedChar { line: tl, col: tc, found: '<' });
            }
            c if c.is_ascii_digit() => {
                let mut n: u64 = 0;
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        n = n.saturating_mul(10).saturating_add((d as u8 - b'0') as u64);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                out.push(Spanned { tok: Tok::Num(n), line: tl, col: tc });
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        word.push(d);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                // Keywords first: forallP/existsP contain an uppercase letter
                // but are not predicate names.
                let tok = match word.as_str() {
                    "forall" => Tok::KwForall,
                    "exists" => Tok::KwExists,
                    "exists1" => Tok::KwExistsOne,
                    "forallP" => Tok::KwForallPred,
                    "existsP" => Tok::KwExistsPred,
                    _ if word.starts_with(|c: char| c.is_ascii_uppercase()) => {
                        Tok::PredName(word)
                    }
                    _ => Tok::Ident(word),
                };
                out.push(Spanned { tok, line: tl, col: tc });
            }
            other => {
                return Err(ParseError::UnexpectedChar { line: tl, col: tc, found: other });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    /// Arity of each predicate name in scope: binder-declared for bound
    /// names, first-use for free names.
    arities: BTreeMap<String, u8>,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<&Spanned, ParseError> {
        let t = self.toks.get(self.pos).ok_or(ParseError::Eof)?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let t = self.toks.get(self.pos).ok_or(ParseError::Eof)?;
        if t.tok == want {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Unexpected {
                line: t.line,
                col: t.col,
                expected: want.to_string(),
                found: t.tok.to_string(),
            })
        }
    }

    fn ident(&mut self) -> Result<IndivVar, ParseError> {
        let t = self.toks.get(self.pos).ok_or(ParseError::Eof)?;
        match &t.tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            other => Err(ParseError::Unexpected {
                line: t.line,
                col: t.col,
                expected: "individual variable".into(),
                found: other.to_string(),
            }),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.imp()?;
        while matches!(self.peek(), Some(Spanned { tok: Tok::Iff, .. })) {
            self.pos += 1;
            let rhs = self.imp()?;
            lhs = lhs.iff(rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if matches!(self.peek(), Some(Spanned { tok: Tok::Imp, .. })) {
            self.pos += 1;
            let rhs = self.imp()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while matches!(self.peek(), Some(Spanned { tok: Tok::Or, .. })) {
            self.pos += 1;
            let rhs = self.and()?;
            lhs = lhs.or(rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while matches!(self.peek(), Some(Spanned { tok: Tok::And, .. })) {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = lhs.and(rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if matches!(self.peek(), Some(Spanned { tok: Tok::Not, .. })) {
            self.pos += 1;
            return Ok(self.unary()?.not());
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let t = self.peek().ok_or(ParseError::Eof)?;
        match &t.tok {
            Tok::LParen => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::KwForall | Tok::KwExists | Tok::KwExistsOne => self.indiv_quant(),
            Tok::KwForallPred | Tok::KwExistsPred => self.pred_quant(),
            Tok::PredName(_) => self.pred_atom(),
            Tok::Ident(_) => {
                let l = self.ident()?;
                self.expect(Tok::Eq)?;
                let r = self.ident()?;
                Ok(Formula::eq(l, r))
            }
            other => Err(ParseError::Unexpected {
                line: t.line,
                col: t.col,
                expected: "formula".into(),
                found: other.to_string(),
            }),
        }
    }

    fn indiv_quant(&mut self) -> Result<Formula, ParseError> {
        let kw = self.next()?.tok.clone();
        let mut vars = vec![self.ident()?];
        while matches!(self.peek(), Some(Spanned { tok: Tok::Ident(_), .. })) {
            vars.push(self.ident()?);
        }
        self.expect(Tok::Dot)?;
        let body = self.formula()?;
        Ok(match kw {
            Tok::KwForall => Formula::forall(&vars, body),
            Tok::KwExists => Formula::exists(&vars, body),
            Tok::KwExistsOne => Formula::exists_one(&vars, body),
            _ => unreachable!(),
        })
    }

    fn pred_quant(&mut self) -> Result<Formula, ParseError> {
        let kw = self.next()?.tok.clone();
        let t = self.next()?;
        let (name, line, col) = match &t.tok {
            Tok::PredName(s) => (s.clone(), t.line, t.col),
            other => {
                return Err(ParseError::Unexpected {
                    line: t.line,
                    col: t.col,
                    expected: "predicate variable".into(),
                    found: other.to_string(),
                })
            }
        };
        self.expect(Tok::Colon)?;
        let t = self.next()?;
        let arity = match t.tok {
            Tok::Num(n) if (1..=255).contains(&n) => n as u8,
            Tok::Num(_) => return Err(ParseError::BadArity { line: t.line, col: t.col }),
            ref other => {
                return Err(ParseError::Unexpected {
                    line: t.line,
                    col: t.col,
                    expected: "arity".into(),
                    found: other.to_string(),
                })
            }
        };
        self.expect(Tok::Dot)?;
        let shadowed = self.arities.insert(name.clone(), arity);
        let body = self.formula();
        match shadowed {
            Some(a) => self.arities.insert(name.clone(), a),
            None => self.arities.remove(&name),
        };
        let body = body?;
        let _ = (line, col);
        let pv = PredVar::new(name, arity);
        Ok(match kw {
            Tok::KwForallPred => Formula::forall_pred(&pv, body),
            Tok::KwExistsPred => Formula::exists_pred(&pv, body),
            _ => unreachable!(),
        })
    }

    fn pred_atom(&mut self) -> Result<Formula, ParseError> {
        let t = self.next()?;
        let (name, line, col) = match &t.tok {
            Tok::PredName(s) => (s.clone(), t.line, t.col),
            _ => unreachable!("pred_atom called on non-predicate token"),
        };
        self.expect(Tok::LParen)?;
        let mut args = vec![self.ident()?];
        while matches!(self.peek(), Some(Spanned { tok: Tok::Comma, .. })) {
            self.pos += 1;
            args.push(self.ident()?);
        }
        self.expect(Tok::RParen)?;
        if args.len() > 255 {
            return Err(ParseError::BadArity { line, col });
        }
        let arity = args.len() as u8;
        match self.arities.get(&name) {
            Some(&a) if a != arity => {
                return Err(ParseError::ArityConflict {
                    line,
                    col,
                    name,
                    expected: a,
                    found: arity,
                })
            }
            Some(_) => {}
            None => {
                self.arities.insert(name.clone(), arity);
            }
        }
        Ok(Formula::Atom(PredVar::new(name, arity), args))
    }
}

/// Parses a complete formula; trailing tokens are an error.
pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0, arities: BTreeMap::new() };
    let f = p.formula()?;
    if let Some(t) = p.peek() {
        return Err(ParseError::Unexpected {
            line: t.line,
            col: t.col,
            expected: "end of input".into(),
            found: t.tok.to_string(),
        });
    }
    Ok(f)
}
