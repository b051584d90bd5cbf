//! Lexer and recursive-descent parser for identity scripts.
//!
//! ```text
//! script     = { statement } ;
//! statement  = space_decl | var_decl | let_decl | constraint | check ;
//! space_decl = "space" IDENT "=" INT ;
//! var_decl   = "var" IDENT ":" IDENT ;
//! let_decl   = "let" IDENT "=" partition ":" IDENT ;
//! constraint = "constrain" IDENT "<=" IDENT ;
//! check      = "check" expr ( "==" | "<=" ) expr ;
//! expr       = meet_e { "|" meet_e } ;
//! meet_e     = prod_e { "^" prod_e } ;
//! prod_e     = atom_e { "*" atom_e } ;
//! atom_e     = IDENT | "discrete" "(" IDENT ")" | "trivial" "(" IDENT ")" | "(" expr ")" ;
//! partition  = "{" block { "," block } "}" ; block = "{" INT { "," INT } "}" ;
//! ```
//!
//! `#` starts a comment running to the end of the line.

use std::fmt;

use super::ast::{Check, Expr, Pos, Relation, Script, Spanned, Statement};
use super::DslError;

const KEYWORDS: &[&str] = &[
    "space",
    "var",
    "let",
    "constrain",
    "check",
    "discrete",
    "trivial",
];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(usize),
    Assign,
    EqEq,
    Le,
    Colon,
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Star,
    Caret,
    Pipe,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) if KEYWORDS.contains(&s.as_str()) => write!(f, "keyword `{s}`"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::Assign => f.write_str("`=`"),
            Tok::EqEq => f.write_str("`==`"),
            Tok::Le => f.write_str("`<=`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Pipe => f.write_str("`|`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

struct Token {
    tok: Tok,
    pos: Pos,
}

fn lex(text: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            let n = s.parse().map_err(|_| DslError::Syntax {
                pos,
                expected: "integer that fits in a machine word".into(),
                found: format!("`{s}`"),
            })?;
            Tok::Int(n)
        } else {
            bump(&mut chars);
            match c {
                '=' if chars.peek() == Some(&'=') => {
                    bump(&mut chars);
                    Tok::EqEq
                }
                '<' if chars.peek() == Some(&'=') => {
                    bump(&mut chars);
                    Tok::Le
                }
                '=' => Tok::Assign,
                ':' => Tok::Colon,
                ',' => Tok::Comma,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '|' => Tok::Pipe,
                other => {
                    return Err(DslError::Syntax {
                        pos,
                        expected: "token".into(),
                        found: format!("character `{other}`"),
                    })
                }
            }
        };
        out.push(Token { tok, pos });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, DslError> {
        Ok(Parser {
            tokens: lex(text)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn advance(&mut self) -> &Token {
        let t = &self.tokens[self.at];
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> DslError {
        let t = self.peek();
        DslError::Syntax {
            pos: t.pos,
            expected: expected.to_string(),
            found: t.tok.to_string(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), DslError> {
        if self.peek().tok == tok {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&tok.to_string()))
        }
    }

    fn ident(&mut self) -> Result<String, DslError> {
        match &self.peek().tok {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.advance();
                Ok(s)
            }
            _ => Err(self.error("identifier")),
        }
    }

    fn int(&mut self) -> Result<usize, DslError> {
        match self.peek().tok {
            Tok::Int(n) => {
                self.advance();
                Ok(n)
            }
            _ => Err(self.error("integer")),
        }
    }

    fn script(&mut self) -> Result<Script, DslError> {
        let mut statements = Vec::new();
        while self.peek().tok != Tok::Eof {
            let pos = self.peek().pos;
            let node = self.statement()?;
            statements.push(Spanned { node, pos });
        }
        Ok(Script { statements })
    }

    fn statement(&mut self) -> Result<Statement, DslError> {
        let kw = match &self.peek().tok {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.error("statement")),
        };
        match kw.as_str() {
            "space" => {
                self.advance();
                let name = self.ident()?;
                self.expect(Tok::Assign)?;
                let size = self.int()?;
                Ok(Statement::Space { name, size })
            }
            "var" => {
                self.advance();
                let name = self.ident()?;
                self.expect(Tok::Colon)?;
                let space = self.ident()?;
                Ok(Statement::Var { name, space })
            }
            "let" => {
                self.advance();
                let name = self.ident()?;
                self.expect(Tok::Assign)?;
                let blocks = self.partition()?;
                self.expect(Tok::Colon)?;
                let space = self.ident()?;
                Ok(Statement::Let {
                    name,
                    blocks,
                    space,
                })
            }
            "constrain" => {
                self.advance();
                let lesser = self.ident()?;
                self.expect(Tok::Le)?;
                let greater = self.ident()?;
                Ok(Statement::Constrain { lesser, greater })
            }
            "check" => {
                self.advance();
                let lhs = self.expr()?;
                let relation = match self.peek().tok {
                    Tok::EqEq => Relation::Equal,
                    Tok::Le => Relation::Sub,
                    _ => return Err(self.error("`==` or `<=`")),
                };
                self.advance();
                let rhs = self.expr()?;
                Ok(Statement::Check(Check { lhs, relation, rhs }))
            }
            _ => Err(self.error("statement")),
        }
    }

    fn partition(&mut self) -> Result<Vec<Vec<usize>>, DslError> {
        self.expect(Tok::LBrace)?;
        let mut blocks = vec![self.block()?];
        while self.peek().tok == Tok::Comma {
            self.advance();
            blocks.push(self.block()?);
        }
        self.expect(Tok::RBrace)?;
        Ok(blocks)
    }

    fn block(&mut self) -> Result<Vec<usize>, DslError> {
        self.expect(Tok::LBrace)?;
        let mut points = vec![self.int()?];
        while self.peek().tok == Tok::Comma {
            self.advance();
            points.push(self.int()?);
        }
        self.expect(Tok::RBrace)?;
        Ok(points)
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut e = self.meet_e()?;
        while self.peek().tok == Tok::Pipe {
            self.advance();
            e = e.join(self.meet_e()?);
        }
        Ok(e)
    }

    fn meet_e(&mut self) -> Result<Expr, DslError> {
        let mut e = self.prod_e()?;
        while self.peek().tok == Tok::Caret {
            self.advance();
            e = e.meet(self.prod_e()?);
        }
        Ok(e)
    }

    fn prod_e(&mut self) -> Result<Expr, DslError> {
        let mut e = self.atom_e()?;
        while self.peek().tok == Tok::Star {
            self.advance();
            e = e.product(self.atom_e()?);
        }
        Ok(e)
    }

    fn atom_e(&mut self) -> Result<Expr, DslError> {
        match &self.peek().tok {
            Tok::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(s) if s == "discrete" || s == "trivial" => {
                let discrete = s == "discrete";
                self.advance();
                self.expect(Tok::LParen)?;
                let space = self.ident()?;
                self.expect(Tok::RParen)?;
                Ok(if discrete {
                    Expr::Discrete(space)
                } else {
                    Expr::Trivial(space)
                })
            }
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let e = Expr::Var(s.clone());
                self.advance();
                Ok(e)
            }
            _ => Err(self.error("expression")),
        }
    }
}

/// Parses a whole script.
pub fn parse(text: &str) -> Result<Script, DslError> {
    Parser::new(text)?.script()
}

/// Parses a single expression.
pub fn parse_expr(text: &str) -> Result<Expr, DslError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error("end of input"));
    }
    Ok(e)
}
