//! Recursive-descent parser for the formula text format.
//!
//! ```text
//! formula := prefix ":" disj ;  prefix := (("E"|"A") IDENT)* ;
//! disj := conj ("|" conj)* ;  conj := unary ("&" unary)* ;
//! unary := "~" unary | "(" disj ")" | atom | "true" | "false" ;
//! atom := IDENT "(" IDENT ("," IDENT)* ")" | IDENT "=" IDENT | IDENT "!=" IDENT ;
//! ```
//!
//! `@` is reserved for generated names and only accepted when the text starts
//! with a `# generated` comment line.

use super::formula::{Formula, Matrix, Quantifier};
use super::LogicError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Colon,
    LParen,
    RParen,
    Comma,
    Amp,
    Bar,
    Tilde,
    EqSign,
    NeqSign,
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_continue(c: char, generated: bool) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '^' || c == '\'' || (generated && c == '@')
}

fn tokenize(text: &str, generated: bool) -> Result<Vec<Spanned>, LogicError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let single = |tok| Spanned { tok, line: line_no, col };
            match c {
                '#' => break,
                c if c.is_whitespace() => i += 1,
                ':' => {
                    out.push(single(Tok::Colon));
                    i += 1
                }
                '(' => {
                    out.push(single(Tok::LParen));
                    i += 1
                }
                ')' => {
                    out.push(single(Tok::RParen));
                    i += 1
                }
                ',' => {
                    out.push(single(Tok::Comma));
                    i += 1
                }
                '&' => {
                    out.push(single(Tok::Amp));
                    i += 1
                }
                '|' => {
                    out.push(single(Tok::Bar));
                    i += 1
                }
                '~' => {
                    out.push(single(Tok::Tilde));
                    i += 1
                }
                '=' => {
                    out.push(single(Tok::EqSign));
                    i += 1
                }
                '!' if chars.get(i + 1) == Some(&'=') => {
                    out.push(single(Tok::NeqSign));
                    i += 2
                }
                c if ident_start(c) || (generated && c == '@') => {
                    let start = i;
                    while i < chars.len() && ident_continue(chars[i], generated) {
                        i += 1;
                    }
                    let name: String = chars[start..i].iter().collect();
                    out.push(single(Tok::Ident(name)));
                }
                other => {
                    return Err(LogicError::Syntax {
                        line: line_no,
                        col,
                        msg: format!("unexpected character {:?}", other),
                    })
                }
            }
        }
    }
    let (line, col) = out.last().map(|s| (s.line, s.col + 1)).unwrap_or((1, 1));
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, LogicError> {
        let s = &self.toks[self.pos];
        Err(LogicError::Syntax { line: s.line, col: s.col, msg: msg.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), LogicError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {}, found {:?}", what, self.peek()))
        }
    }

    fn ident(&mut self) -> Result<String, LogicError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => self.error(format!("expected identifier, found {:?}", other)),
        }
    }

    fn prefix(&mut self) -> Result<Vec<(Quantifier, String)>, LogicError> {
        let mut prefix = Vec::new();
        loop {
            match self.peek() {
                Tok::Ident(k) if k == "E" || k == "A" => {
                    if !matches!(self.peek_at(1), Tok::Ident(_)) {
                        return self.error("expected variable after quantifier");
                    }
                    let q = if k == "E" { Quantifier::Exists } else { Quantifier::Forall };
                    self.bump();
                    let (line, col) = (self.toks[self.pos].line, self.toks[self.pos].col);
                    let v = self.ident()?;
                    if prefix.iter().any(|(_, w)| *w == v) {
                        return Err(LogicError::Syntax {
                            line,
                            col,
                            msg: format!("duplicate quantified variable {}", v),
                        });
                    }
                    prefix.push((q, v));
                }
                Tok::Colon => {
                    self.bump();
                    return Ok(prefix);
                }
                other => return self.error(format!("expected quantifier or ':', found {:?}", other)),
            }
        }
    }

    fn disj(&mut self) -> Result<Matrix, LogicError> {
        let mut parts = vec![self.conj()?];
        while *self.peek() == Tok::Bar {
            self.bump();
            parts.push(self.conj()?);
        }
        Ok(Matrix::any(parts))
    }

    fn conj(&mut self) -> Result<Matrix, LogicError> {
        let mut parts = vec![self.unary()?];
        while *self.peek() == Tok::Amp {
            self.bump();
            parts.push(self.unary()?);
        }
        Ok(Matrix::all(parts))
    }

    fn unary(&mut self) -> Result<Matrix, LogicError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Matrix::not(self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.disj()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                match self.peek() {
                    Tok::LParen => {
                        self.bump();
                        let mut args = vec![self.ident()?];
                        while *self.peek() == Tok::Comma {
                            self.bump();
                            args.push(self.ident()?);
                        }
                        self.expect(Tok::RParen, "')'")?;
                        Ok(Matrix::Rel(name, args))
                    }
                    Tok::EqSign => {
                        self.bump();
                        Ok(Matrix::Eq(name, self.ident()?))
                    }
                    Tok::NeqSign => {
                        self.bump();
                        Ok(Matrix::Neq(name, self.ident()?))
                    }
                    _ if name == "true" => Ok(Matrix::truth()),
                    _ if name == "false" => Ok(Matrix::falsity()),
                    other => self.error(format!("expected '(', '=' or '!=' after {}, found {:?}", name, other)),
                }
            }
            other => self.error(format!("expected formula, found {:?}", other)),
        }
    }
}

fn is_generated(text: &str) -> bool {
    text.lines()
        .next()
        .map(|l| l.trim_start().trim_start_matches('#').trim() == "generated" && l.trim_start().starts_with('#'))
        .unwrap_or(false)
}

/// Parses formula text. Names containing `@` require a leading `# generated` line.
pub fn parse_formula(text: &str) -> Result<Formula, LogicError> {
    parse_with(text, is_generated(text))
}

/// Parses text produced by the toolkit itself; `@` is always accepted.
pub fn parse_generated_formula(text: &str) -> Result<Formula, LogicError> {
    parse_with(text, true)
}

fn parse_with(text: &str, generated: bool) -> Result<Formula, LogicError> {
    let toks = tokenize(text, generated)?;
    let mut p = Parser { toks, pos: 0 };
    let prefix = p.prefix()?;
    let matrix = p.disj()?;
    if *p.peek() != Tok::End {
        return p.error(format!("trailing input {:?}", p.peek()));
    }
    Formula::new(prefix, matrix)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exists_forall_inequality() {
        let f = parse_formula("E x A y : x != y").unwrap();
        assert_eq!(
            f.prefix(),
            &[(Quantifier::Exists, "x".to_string()), (Quantifier::Forall, "y".to_string())]
        );
        assert_eq!(f.matrix(), &Matrix::neq("x", "y"));
    }

    #[test]
    fn relation_atom() {
        let f = parse_formula("E x : EDGE(x,x)").unwrap();
        assert_eq!(f.matrix(), &Matrix::rel("EDGE", &["x", "x"]));
    }

    #[test]
    fn print_drops_redundant_parens() {
        let f = parse_formula("E x A y : (x = y)").unwrap();
        assert_eq!(f.to_string(), "E x A y : x = y");
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn precedence_and_comments() {
        let f = parse_formula("# leading comment\nE x : P(x) | Q(x) & ~R(x) # trailing").unwrap();
        assert_eq!(
            f.matrix(),
            &Matrix::Or(vec![
                Matrix::rel("P", &["x"]),
                Matrix::And(vec![Matrix::rel("Q", &["x"]), Matrix::not(Matrix::rel("R", &["x"]))]),
            ])
        );
    }

    #[test]
    fn syntax_error_has_location() {
        match parse_formula("E x :\n  EDGE(x,") {
            Err(LogicError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {:?}", other),
        }
        assert!(matches!(parse_formula("E x : x ? y"), Err(LogicError::Syntax { col: 9, .. })));
    }

    #[test]
    fn duplicate_variable_rejected() {
        assert!(matches!(parse_formula("E x A x : x = x"), Err(LogicError::Syntax { .. })));
    }

    #[test]
    fn inconsistent_arity_rejected() {
        assert!(matches!(
            parse_formula("E x : R(x) & R(x,x)"),
            Err(LogicError::InconsistentArity { .. })
        ));
    }

    #[test]
    fn generated_names_need_header() {
        assert!(parse_formula("E x@1 : x@1 = x@1").is_err());
        let f = parse_formula("# generated\nE x@1 : x@1 = x@1").unwrap();
        assert_eq!(f.prefix()[0].1, "x@1");
        assert!(parse_generated_formula("E x@1_2 : true").is_ok());
    }

    #[test]
    fn constants() {
        let f = parse_formula(": true & ~false").unwrap();
        assert_eq!(f.matrix(), &Matrix::And(vec![Matrix::truth(), Matrix::not(Matrix::falsity())]));
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }
}
