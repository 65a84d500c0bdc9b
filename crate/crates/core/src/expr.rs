//! A small integer expression evaluator for user-supplied formulas.
//!
//! Grammar: `+ - * / % ^`, parentheses, unary minus, decimal literals and
//! a single named variable. Division is floor division so `n/4` matches
//! the usual floor convention; `^` is exponentiation. All arithmetic is
//! checked in `i128`.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ExprError {
    #[error("unexpected character {0:?} at position {1}")]
    UnexpectedChar(char, usize),
    #[error("unknown identifier {0:?} (expected variable {1:?})")]
    UnknownIdentifier(String, String),
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("trailing input after expression: {0:?}")]
    TrailingInput(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent out of range")]
    BadExponent,
    #[error("arithmetic overflow")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Number(i128),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Const(i128),
    Var,
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Rem(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
}

/// A parsed expression in one integer variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    root: Node,
    text: String,
    var: String,
}

impl Expr {
    /// Parses `text` with `var` as the permitted variable name.
    pub fn parse(text: &str, var: &str) -> Result<Expr, ExprError> {
        let tokens = tokenize(text, var)?;
        let mut parser = Parser { tokens, pos: 0 };
        let root = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(ExprError::TrailingInput(format!(
                "{:?}",
                &parser.tokens[parser.pos..]
            )));
        }
        Ok(Expr {
            root,
            text: text.trim().to_string(),
            var: var.to_string(),
        })
    }

    pub fn eval(&self, value: i128) -> Result<i128, ExprError> {
        eval_node(&self.root, value)
    }

    pub fn text(&self) -> &str {
        &self.text
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn tokenize(text: &str, var: &str) -> Result<Vec<Token>, ExprError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let value = lit.parse::<i128>().map_err(|_| ExprError::Overflow)?;
                tokens.push(Token::Number(value));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let ident: String = chars[start..i].iter().collect();
                if ident == var {
                    tokens.push(Token::Var);
                } else {
                    return Err(ExprError::UnknownIdentifier(ident, var.to_string()));
                }
            }
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                i += 1;
            }
            '%' => {
                tokens.push(Token::Percent);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '(' => {
                tokens.push(Token::LParen);
                i += 1;
            }
            ')' => {
                tokens.push(Token::RParen);
                i += 1;
            }
            other => return Err(ExprError::UnexpectedChar(other, i)),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Result<Token, ExprError> {
        let t = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or(ExprError::UnexpectedEnd)?;
        self.pos += 1;
        Ok(t)
    }

    fn expr(&mut self) -> Result<Node, ExprError> {
        let mut node = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    node = Node::Add(Box::new(node), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    node = Node::Sub(Box::new(node), Box::new(self.term()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn term(&mut self) -> Result<Node, ExprError> {
        let mut node = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    node = Node::Mul(Box::new(node), Box::new(self.factor()?));
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    node = Node::Div(Box::new(node), Box::new(self.factor()?));
                }
                Some(Token::Percent) => {
                    self.pos += 1;
                    node = Node::Rem(Box::new(node), Box::new(self.factor()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn factor(&mut self) -> Result<Node, ExprError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            // right associative
            let exponent = self.factor()?;
            return Ok(Node::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ExprError> {
        match self.next()? {
            Token::Number(v) => Ok(Node::Const(v)),
            Token::Var => Ok(Node::Var),
            Token::Minus => Ok(Node::Neg(Box::new(self.atom()?))),
            Token::LParen => {
                let inner = self.expr()?;
                match self.next()? {
                    Token::RParen => Ok(inner),
                    t => Err(ExprError::TrailingInput(format!("{:?}", t))),
                }
            }
            t => Err(ExprError::TrailingInput(format!("{:?}", t))),
        }
    }
}

fn eval_node(node: &Node, value: i128) -> Result<i128, ExprError> {
    match node {
        Node::Const(v) => Ok(*v),
        Node::Var => Ok(value),
        Node::Neg(a) => eval_node(a, value)?
            .checked_neg()
            .ok_or(ExprError::Overflow),
        Node::Add(a, b) => eval_node(a, value)?
            .checked_add(eval_node(b, value)?)
            .ok_or(ExprError::Overflow),
        Node::Sub(a, b) => eval_node(a, value)?
            .checked_sub(eval_node(b, value)?)
            .ok_or(ExprError::Overflow),
        Node::Mul(a, b) => eval_node(a, value)?
            .checked_mul(eval_node(b, value)?)
            .ok_or(ExprError::Overflow),
        Node::Div(a, b) => {
            let d = eval_node(b, value)?;
            if d == 0 {
                return Err(ExprError::DivisionByZero);
            }
            eval_node(a, value)?
                .checked_div_euclid(d)
                .ok_or(ExprError::Overflow)
        }
        Node::Rem(a, b) => {
            let d = eval_node(b, value)?;
            if d == 0 {
                return Err(ExprError::DivisionByZero);
            }
            eval_node(a, value)?
                .checked_rem_euclid(d)
                .ok_or(ExprError::Overflow)
        }
        Node::Pow(a, b) => {
            let base = eval_node(a, value)?;
            let exp = eval_node(b, value)?;
            if !(0..=127).contains(&exp) {
                return Err(ExprError::BadExponent);
            }
            base.checked_pow(exp as u32).ok_or(ExprError::Overflow)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let e = Expr::parse("m*m - 4", "m").unwrap();
        assert_eq!(e.eval(5).unwrap(), 21);
        assert_eq!(e.eval(2).unwrap(), 0);
    }

    #[test]
    fn floor_division() {
        let e = Expr::parse("n/4", "n").unwrap();
        assert_eq!(e.eval(23).unwrap(), 5);
        assert_eq!(e.eval(24).unwrap(), 6);
    }

    #[test]
    fn power_and_precedence() {
        let e = Expr::parse("2*m^2 + 1", "m").unwrap();
        assert_eq!(e.eval(3).unwrap(), 19);
        let p = Expr::parse("(m+1)*(m-1)", "m").unwrap();
        assert_eq!(p.eval(4).unwrap(), 15);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Expr::parse("m + x", "m").is_err());
        assert!(Expr::parse("m +", "m").is_err());
        assert!(Expr::parse("m $ 2", "m").is_err());
        assert!(Expr::parse("1/0", "m").unwrap().eval(0).is_err());
    }
}
