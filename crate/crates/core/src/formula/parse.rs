use std::fmt;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    /// Rendering of the offending token, or `end of input`.
    pub found: String,
    pub expected: Vec<&'static str>,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at {}:{}: found {}, expected one of {}",
            self.line,
            self.column,
            self.found,
            self.expected.join(", ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Top,
    Bot,
    Bang,
    Tilde,
    Minus,
    BoxOp,
    DiamondOp,
    And,
    Or,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("identifier `{name}`"),
            Token::Top => "`T`".into(),
            Token::Bot => "`F`".into(),
            Token::Bang => "`!`".into(),
            Token::Tilde => "`~`".into(),
            Token::Minus => "`-`".into(),
            Token::BoxOp => "`[]`".into(),
            Token::DiamondOp => "`<>`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::End => "end of input".into(),
        }
    }
}

const FORMULA_START: &[&str] = &["identifier", "`T`", "`F`", "`(`", "`!`", "`~`", "`-`", "`[]`", "`<>`"];

struct Spanned {
    token: Token,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        let mut push = |token: Token, width: usize, i: &mut usize, column: &mut usize| {
            tokens.push(Spanned {
                token,
                line: start_line,
                column: start_col,
            });
            *i += width;
            *column += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                column += 1;
            }
            'a'..='z' => {
                let mut end = i + 1;
                while end < chars.len()
                    && (chars[end].is_ascii_lowercase() || chars[end].is_ascii_digit() || chars[end] == '_')
                {
                    end += 1;
                }
                let name: String = chars[i..end].iter().collect();
                push(Token::Ident(name), end - i, &mut i, &mut column);
            }
            'T' => push(Token::Top, 1, &mut i, &mut column),
            'F' => push(Token::Bot, 1, &mut i, &mut column),
            '!' => push(Token::Bang, 1, &mut i, &mut column),
            '~' => push(Token::Tilde, 1, &mut i, &mut column),
            '-' => push(Token::Minus, 1, &mut i, &mut column),
            '&' => push(Token::And, 1, &mut i, &mut column),
            '|' => push(Token::Or, 1, &mut i, &mut column),
            '(' => push(Token::LParen, 1, &mut i, &mut column),
            ')' => push(Token::RParen, 1, &mut i, &mut column),
            '[' if chars.get(i + 1) == Some(&']') => push(Token::BoxOp, 2, &mut i, &mut column),
            '<' if chars.get(i + 1) == Some(&'>') => push(Token::DiamondOp, 2, &mut i, &mut column),
            other => {
                return Err(SyntaxError {
                    line,
                    column,
                    found: format!("character `{other}`"),
                    expected: FORMULA_START
                        .iter()
                        .chain(["`&`", "`|`", "`)`"].iter())
                        .copied()
                        .collect(),
                })
            }
        }
    }
    tokens.push(Spanned {
        token: Token::End,
        line,
        column,
    });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].token
    }

    fn bump(&mut self) -> Token {
        let token = self.tokens[self.pos].token.clone();
        if token != Token::End {
            self.pos += 1;
        }
        token
    }

    fn error(&self, expected: &[&'static str]) -> SyntaxError {
        let here = &self.tokens[self.pos];
        SyntaxError {
            line: here.line,
            column: here.column,
            found: here.token.describe(),
            expected: expected.to_vec(),
        }
    }

    fn or(&mut self) -> Result<Formula, SyntaxError> {
        let mut left = self.and()?;
        while *self.peek() == Token::Or {
            self.bump();
            let right = self.and()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula, SyntaxError> {
        let mut left = self.unary()?;
        while *self.peek() == Token::And {
            self.bump();
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        let wrap: fn(Formula) -> Formula = match self.peek() {
            Token::Bang => Formula::class_neg,
            Token::Tilde => Formula::para_neg,
            Token::Minus => Formula::comp_neg,
            Token::BoxOp => Formula::boxed,
            Token::DiamondOp => Formula::diamond,
            _ => return self.atom(),
        };
        self.bump();
        Ok(wrap(self.unary()?))
    }

    fn atom(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().clone() {
            Token::Ident(name) => {
                self.bump();
                Ok(Formula::Prop(name))
            }
            Token::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Token::Bot => {
                self.bump();
                Ok(Formula::Bot)
            }
            Token::LParen => {
                self.bump();
                let inner = self.or()?;
                if *self.peek() != Token::RParen {
                    return Err(self.error(&["`&`", "`|`", "`)`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(FORMULA_START)),
        }
    }
}

/// Parses the ASCII surface syntax. Lines and columns in errors are 1-based.
pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let formula = parser.or()?;
    if *parser.peek() != Token::End {
        return Err(parser.error(&["`&`", "`|`", "end of input"]));
    }
    Ok(formula)
}
