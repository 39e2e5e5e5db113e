//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! formula := imp
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "<" ident ">" unary | "[" ident "]" unary | atom
//! atom    := "T" | "F" | ident | "(" formula ")"
//! ident   := [a-z][a-z0-9_]*
//! ```

use std::fmt;

use super::{Formula, Modality, RESERVED_PREFIX};

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Accept identifiers starting with `_` (fresh letters minted by the
    /// translations). User-facing input leaves this off.
    pub allow_reserved: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at {}:{}: expected {}, found {}",
            self.line,
            self.column,
            self.expected.join(" or "),
            self.found
        )
    }
}

pub fn parse(text: &str) -> Result<Formula, ParseError> {
    parse_with(text, ParseOptions::default())
}

pub fn parse_with(text: &str, options: ParseOptions) -> Result<Formula, ParseError> {
    let tokens = lex(text, options)?;
    let mut parser = Parser { tokens, pos: 0 };
    let f = parser.imp()?;
    parser.expect_end()?;
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Arrow,
    LAngle,
    RAngle,
    LBracket,
    RBracket,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::True => "`T`".into(),
            Tok::False => "`F`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LAngle => "`<`".into(),
            Tok::RAngle => "`>`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, options: ParseOptions) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        let single = match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {
                column += 1;
                i += 1;
                continue;
            }
            '~' => Some(Tok::Not),
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            '<' => Some(Tok::LAngle),
            '>' => Some(Tok::RAngle),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            'T' => Some(Tok::True),
            'F' => Some(Tok::False),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line: start_line, column: start_col });
            i += 1;
            column += 1;
            continue;
        }
        if c == '-' {
            if chars.get(i + 1) == Some(&'>') {
                out.push(Spanned { tok: Tok::Arrow, line: start_line, column: start_col });
                i += 2;
                column += 2;
                continue;
            }
            return Err(ParseError {
                line,
                column,
                expected: vec!["`->`".into()],
                found: "`-`".into(),
            });
        }
        let starts_ident =
            c.is_ascii_lowercase() || (options.allow_reserved && c == RESERVED_PREFIX);
        if starts_ident {
            let mut j = i + 1;
            while j < chars.len()
                && (chars[j].is_ascii_lowercase() || chars[j].is_ascii_digit() || chars[j] == '_')
            {
                j += 1;
            }
            let ident: String = chars[i..j].iter().collect();
            column += j - i;
            i = j;
            out.push(Spanned { tok: Tok::Ident(ident), line: start_line, column: start_col });
            continue;
        }
        let mut expected = vec!["formula".to_string()];
        if c == RESERVED_PREFIX {
            expected = vec!["identifier not starting with `_` (reserved)".to_string()];
        }
        return Err(ParseError { line, column, expected, found: format!("`{c}`") });
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let s = &self.tokens[self.pos];
        ParseError {
            line: s.line,
            column: s.column,
            expected: expected.iter().map(|e| e.to_string()).collect(),
            found: s.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(&["`->`", "`|`", "`&`", "end of input"]))
        }
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.imp()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn modality(&mut self) -> Result<Modality, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) if !name.starts_with(RESERVED_PREFIX) => {
                self.bump();
                Ok(Modality::new(name).expect("lexer only yields valid identifiers"))
            }
            _ => Err(self.error(&["modality name"])),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::LAngle => {
                self.bump();
                let m = self.modality()?;
                self.expect(Tok::RAngle, "`>`")?;
                Ok(Formula::diamond(m, self.unary()?))
            }
            Tok::LBracket => {
                self.bump();
                let m = self.modality()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Formula::boxed(m, self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::True => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::bottom())
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Prop(name))
            }
            Tok::LParen => {
                self.bump();
                let f = self.imp()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            _ => Err(self.error(&["`~`", "`<`", "`[`", "`T`", "`F`", "identifier", "`(`"])),
        }
    }
}
