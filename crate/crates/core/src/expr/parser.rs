//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := primary ('^' exponent)?
//! exponent := '-'? INT | '(' '-'? INT ')'
//! primary  := NUMBER | 'x' INT | FUNC '(' expr ')' | '(' expr ')'
//! ```

use std::fmt;

use thiserror::Error;

use super::{Expr, Func};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: found {found}, expected one of {}", expected.join(", "))]
    Syntax { line: usize, column: usize, found: String, expected: Vec<String> },
    #[error("unknown identifier `{name}` at line {line}, column {column}")]
    UnknownIdentifier { name: String, line: usize, column: usize },
    #[error("{func} takes 1 argument but {found} were given at line {line}, column {column}")]
    Arity { func: String, found: usize, line: usize, column: usize },
}

impl ParseError {
    /// One-based line and column of the error.
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, column, .. }
            | ParseError::UnknownIdentifier { line, column, .. }
            | ParseError::Arity { line, column, .. } => (*line, *column),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64, bool),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(v, _) => write!(f, "number {v}"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let mut integral = true;
            if i < chars.len() && chars[i] == '.' {
                integral = false;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    integral = false;
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s: String = chars[start..i].iter().collect();
            let v = s.parse::<f64>().map_err(|_| ParseError::Syntax {
                line: tl,
                column: tc,
                found: format!("malformed number `{s}`"),
                expected: vec!["number".into()],
            })?;
            Tok::Num(v, integral)
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "+-*/^(),".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError::Syntax {
                line: tl,
                column: tc,
                found: format!("character `{c}`"),
                expected: vec!["number".into(), "identifier".into(), "operator".into()],
            });
        };
        column += i - start;
        out.push(Token { tok, line: tl, column: tc });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError::Syntax {
            line: t.line,
            column: t.column,
            found: t.tok.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("`{c}`")]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = lhs + self.term()?;
            } else if self.eat('-') {
                lhs = lhs - self.term()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = lhs * self.unary()?;
            } else if self.eat('/') {
                lhs = lhs / self.unary()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            // a literal directly after the sign is a negative constant
            if let Tok::Num(v, _) = self.peek().tok {
                let next = self.tokens.get(self.pos + 1).map(|t| &t.tok);
                if next != Some(&Tok::Sym('^')) {
                    self.bump();
                    return Ok(Expr::Const(-v));
                }
            }
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let negative = self.eat('-');
        let p = match self.peek().tok {
            Tok::Num(v, true) if v <= i32::MAX as f64 => {
                self.bump();
                v as i32
            }
            _ => return Err(self.error(&["integer exponent"])),
        };
        if paren {
            self.expect(')')?;
        }
        Ok(base.powi(if negative { -p } else { p }))
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        const START: [&str; 4] = ["number", "identifier", "`(`", "`-`"];
        let t = self.peek().clone();
        match t.tok {
            Tok::Num(v, _) => {
                self.bump();
                Ok(Expr::Const(v))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(func) = Func::from_name(&name) {
                    self.expect('(')?;
                    let mut args = Vec::new();
                    if !self.eat(')') {
                        loop {
                            args.push(self.expr()?);
                            if self.eat(')') {
                                break;
                            }
                            if !self.eat(',') {
                                return Err(self.error(&["`,`", "`)`"]));
                            }
                        }
                    }
                    if args.len() != 1 {
                        return Err(ParseError::Arity { func: name, found: args.len(), line: t.line, column: t.column });
                    }
                    return Ok(Expr::call(func, args.pop().expect("one argument")));
                }
                match name.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                    Some(k) if k >= 1 && !name[1..].starts_with('0') => Ok(Expr::Var(k - 1)),
                    _ => Err(ParseError::UnknownIdentifier { name, line: t.line, column: t.column }),
                }
            }
            _ => Err(self.error(&START)),
        }
    }
}

/// Parses one expression; trailing input is an error.
pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { tokens: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}
