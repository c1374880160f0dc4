use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::opalg::{AlgebraError, Coefficient, DiffOperator, ParameterSet};

use super::builtins::builtin_operator;

pub type Span = Range<usize>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("lexical error at position {}: unexpected {found:?}", span.start)]
    Lexical { span: Span, found: String },
    #[error("syntax error at position {}: expected {expected}, found {found}", span.start)]
    Syntax { span: Span, expected: String, found: String },
    #[error("unknown identifier `{name}` at position {}", span.start)]
    UnknownIdentifier { span: Span, name: String },
    #[error("at position {}: {source}", span.start)]
    Algebra { span: Span, source: AlgebraError },
    #[error("empty expression")]
    Empty,
}

impl ParseError {
    pub fn span(&self) -> Option<Span> {
        match self {
            ParseError::Lexical { span, .. }
            | ParseError::Syntax { span, .. }
            | ParseError::UnknownIdentifier { span, .. }
            | ParseError::Algebra { span, .. } => Some(span.clone()),
            ParseError::Empty => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Int(BigInt),
    /// `p/q` written without spaces.
    Ratio(BigInt, BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Int(n) => write!(f, "`{n}`"),
            TokenKind::Ratio(p, q) => write!(f, "`{p}/{q}`"),
            TokenKind::Ident(s) => write!(f, "`{s}`"),
            TokenKind::Plus => f.write_str("`+`"),
            TokenKind::Minus => f.write_str("`-`"),
            TokenKind::Star => f.write_str("`*`"),
            TokenKind::Caret => f.write_str("`^`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Some(TokenKind::Plus),
            b'-' => Some(TokenKind::Minus),
            b'*' => Some(TokenKind::Star),
            b'^' => Some(TokenKind::Caret),
            b'(' => Some(TokenKind::LParen),
            b')' => Some(TokenKind::RParen),
            _ => None,
        };
        if let Some(kind) = single {
            i += 1;
            tokens.push(Token { kind, span: start..i });
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = text[start..i].parse().expect("digits");
            if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                let den_start = i + 1;
                i = den_start;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let den: BigInt = text[den_start..i].parse().expect("digits");
                if den == BigInt::from(0) {
                    return Err(ParseError::Lexical { span: start..i, found: text[start..i].to_string() });
                }
                tokens.push(Token { kind: TokenKind::Ratio(num, den), span: start..i });
            } else {
                tokens.push(Token { kind: TokenKind::Int(num), span: start..i });
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            tokens.push(Token { kind: TokenKind::Ident(text[start..i].to_string()), span: start..i });
            continue;
        }
        let ch = text[start..].chars().next().expect("non-empty remainder");
        return Err(ParseError::Lexical { span: start..start + ch.len_utf8(), found: ch.to_string() });
    }
    tokens.push(Token { kind: TokenKind::Eof, span: text.len()..text.len() });
    Ok(tokens)
}

/// Surface syntax of an operator expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorExpr {
    Number { value: BigRational, span: Span },
    X { span: Span },
    D { span: Span },
    Name { name: String, span: Span },
    Neg { inner: Box<OperatorExpr>, span: Span },
    Add { lhs: Box<OperatorExpr>, rhs: Box<OperatorExpr>, span: Span },
    Sub { lhs: Box<OperatorExpr>, rhs: Box<OperatorExpr>, span: Span },
    /// Composition; factor order is kept.
    Mul { lhs: Box<OperatorExpr>, rhs: Box<OperatorExpr>, span: Span },
    Pow { base: Box<OperatorExpr>, exp: i32, span: Span },
}

impl OperatorExpr {
    pub fn span(&self) -> Span {
        match self {
            OperatorExpr::Number { span, .. }
            | OperatorExpr::X { span }
            | OperatorExpr::D { span }
            | OperatorExpr::Name { span, .. }
            | OperatorExpr::Neg { span, .. }
            | OperatorExpr::Add { span, .. }
            | OperatorExpr::Sub { span, .. }
            | OperatorExpr::Mul { span, .. }
            | OperatorExpr::Pow { span, .. } => span.clone(),
        }
    }
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
        let tok = self.tokens[self.pos].clone();
        if tok.kind != TokenKind::Eof {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &str) -> ParseError {
        let tok = self.peek();
        ParseError::Syntax { span: tok.span.clone(), expected: expected.to_string(), found: tok.kind.to_string() }
    }

    // sum := product (('+' | '-') product)*
    fn sum(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            let is_add = match self.peek().kind {
                TokenKind::Plus => true,
                TokenKind::Minus => false,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.product()?;
            let span = lhs.span().start..rhs.span().end;
            let (lhs_b, rhs_b) = (Box::new(lhs), Box::new(rhs));
            lhs = if is_add {
                OperatorExpr::Add { lhs: lhs_b, rhs: rhs_b, span }
            } else {
                OperatorExpr::Sub { lhs: lhs_b, rhs: rhs_b, span }
            };
        }
    }

    // product := unary ('*' unary)*
    fn product(&mut self) -> Result<OperatorExpr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek().kind == TokenKind::Star {
            self.bump();
            let rhs = self.unary()?;
            let span = lhs.span().start..rhs.span().end;
            lhs = OperatorExpr::Mul { lhs: Box::new(lhs), rhs: Box::new(rhs), span };
        }
        Ok(lhs)
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<OperatorExpr, ParseError> {
        if self.peek().kind == TokenKind::Minus {
            let start = self.bump().span.start;
            let inner = self.unary()?;
            let span = start..inner.span().end;
            return Ok(OperatorExpr::Neg { inner: Box::new(inner), span });
        }
        self.power()
    }

    // power := atom ('^' '-'? INT)?
    fn power(&mut self) -> Result<OperatorExpr, ParseError> {
        let base = self.atom()?;
        if self.peek().kind != TokenKind::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = if self.peek().kind == TokenKind::Minus {
            self.bump();
            true
        } else {
            false
        };
        let tok = self.peek().clone();
        let TokenKind::Int(n) = &tok.kind else {
            return Err(self.error("an integer exponent"));
        };
        let exp: i32 = n
            .try_into()
            .map_err(|_| ParseError::Syntax { span: tok.span.clone(), expected: "a 32-bit exponent".into(), found: tok.kind.to_string() })?;
        self.bump();
        let span = base.span().start..tok.span.end;
        Ok(OperatorExpr::Pow { base: Box::new(base), exp: if negative { -exp } else { exp }, span })
    }

    // atom := INT | RATIO | 'x' | 'D' | IDENT | '(' sum ')'
    fn atom(&mut self) -> Result<OperatorExpr, ParseError> {
        let tok = self.peek().clone();
        let span = tok.span.clone();
        let expr = match tok.kind {
            TokenKind::Int(n) => OperatorExpr::Number { value: BigRational::from_integer(n), span },
            TokenKind::Ratio(p, q) => OperatorExpr::Number { value: BigRational::new(p, q), span },
            TokenKind::Ident(name) if name == "x" => OperatorExpr::X { span },
            TokenKind::Ident(name) if name == "D" => OperatorExpr::D { span },
            TokenKind::Ident(name) => OperatorExpr::Name { name, span },
            TokenKind::LParen => {
                self.bump();
                let inner = self.sum()?;
                if self.peek().kind != TokenKind::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                return Ok(inner);
            }
            _ => return Err(self.error("an operand")),
        };
        self.bump();
        Ok(expr)
    }
}

/// Parse text into the surface syntax tree.
pub fn parse_expression(text: &str) -> Result<OperatorExpr, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let mut parser = Parser { tokens: tokenize(text)?, pos: 0 };
    let expr = parser.sum()?;
    if parser.peek().kind != TokenKind::Eof {
        return Err(parser.error("an operator or end of input"));
    }
    Ok(expr)
}

/// Lower a syntax tree to a canonical operator over `params`.
///
/// Identifiers are parameter symbols first, then built-in operator names.
pub fn lower(expr: &OperatorExpr, params: &Arc<ParameterSet>) -> Result<DiffOperator, ParseError> {
    let algebra = |span: Span| move |source: AlgebraError| ParseError::Algebra { span: span.clone(), source };
    match expr {
        OperatorExpr::Number { value, .. } => Ok(DiffOperator::scalar(params.clone(), Coefficient::constant(value.clone()))),
        OperatorExpr::X { .. } => Ok(DiffOperator::x_pow(params.clone(), 1)),
        OperatorExpr::D { .. } => Ok(DiffOperator::deriv(params.clone(), 1)),
        OperatorExpr::Name { name, span } => {
            if let Some(slot) = params.index_of(name) {
                return Ok(DiffOperator::scalar(params.clone(), Coefficient::symbol(slot)));
            }
            match builtin_operator(name) {
                Some(op) if op.params() == params || **op.params() == **params => {
                    // Rebuild over the caller's Arc so later arithmetic sees one set.
                    DiffOperator::normalize(params.clone(), op.terms()).map_err(algebra(span.clone()))
                }
                Some(_) => Err(ParseError::Algebra { span: span.clone(), source: AlgebraError::ParameterMismatch }),
                None => Err(ParseError::UnknownIdentifier { span: span.clone(), name: name.clone() }),
            }
        }
        OperatorExpr::Neg { inner, .. } => Ok(-lower(inner, params)?),
        OperatorExpr::Add { lhs, rhs, span } => {
            lower(lhs, params)?.try_add(&lower(rhs, params)?).map_err(algebra(span.clone()))
        }
        OperatorExpr::Sub { lhs, rhs, span } => {
            lower(lhs, params)?.try_sub(&lower(rhs, params)?).map_err(algebra(span.clone()))
        }
        OperatorExpr::Mul { lhs, rhs, span } => {
            lower(lhs, params)?.compose(&lower(rhs, params)?).map_err(algebra(span.clone()))
        }
        OperatorExpr::Pow { base, exp, span } => {
            let base = lower(base, params)?;
            power(&base, *exp).map_err(algebra(span.clone()))
        }
    }
}

/// Nonnegative powers compose; negative powers exist for `x` and for
/// scalar monomials only.
fn power(base: &DiffOperator, exp: i32) -> Result<DiffOperator, AlgebraError> {
    if exp < 0 {
        if let Some(c) = base.as_scalar() {
            return Ok(DiffOperator::scalar(base.params().clone(), c.pow(exp)?));
        }
        let terms = base.terms();
        if let [t] = terms.as_slice() {
            if t.dorder == 0 {
                let coeff = t.coeff.pow(exp)?;
                return DiffOperator::normalize(
                    base.params().clone(),
                    [crate::opalg::OperatorTerm::new(coeff, t.xpow * exp, 0)],
                );
            }
        }
        return Err(AlgebraError::NotInvertible);
    }
    let mut out = DiffOperator::identity(base.params().clone());
    for _ in 0..exp {
        out = out.compose(base)?;
    }
    Ok(out)
}

/// Parse and lower in one step.
pub fn parse_operator_expression(text: &str, params: &Arc<ParameterSet>) -> Result<DiffOperator, ParseError> {
    lower(&parse_expression(text)?, params)
}

/// Canonical surface form of an operator: one `coeff*sym^e*x^p*D^m` term per
/// monomial, joined by ` + ` and ` - `. Parsing the result gives the operator back.
pub fn print_operator(op: &DiffOperator) -> String {
    let params = op.params();
    let mut out = String::new();
    for (dorder, xpow, coeff) in op.iter() {
        for (mono, value) in coeff.terms() {
            let negative = value < &BigRational::from_integer(0.into());
            let magnitude = if negative { -value.clone() } else { value.clone() };
            let mut factors: Vec<String> = Vec::new();
            if !num_traits::One::is_one(&magnitude) {
                factors.push(magnitude.to_string());
            }
            for (slot, &e) in mono.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(params.name(slot).to_string()),
                    _ => factors.push(format!("{}^{e}", params.name(slot))),
                }
            }
            match xpow {
                0 => {}
                1 => factors.push("x".into()),
                p => factors.push(format!("x^{p}")),
            }
            match dorder {
                0 => {}
                1 => factors.push("D".into()),
                m => factors.push(format!("D^{m}")),
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            let body = factors.join("*");
            match (out.is_empty(), negative) {
                (true, false) => out.push_str(&body),
                (true, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (false, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (false, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::{build_generators, SystemKind, Variable};

    fn parse(text: &str) -> Result<DiffOperator, ParseError> {
        parse_operator_expression(text, &ParameterSet::standard())
    }

    #[test]
    fn commutator_of_x_and_d() {
        let op = parse("x*D - D*x").unwrap();
        assert_eq!(op, DiffOperator::scalar(ParameterSet::standard(), Coefficient::from_int(-1)));
    }

    #[test]
    fn oscillator_g3_from_text() {
        let op = parse("(1/4)*(-D^2 + x^2 + (k2 - 1/4)*x^-2)").unwrap();
        assert_eq!(op, build_generators(SystemKind::Oscillator, Variable::X).unwrap().g3);
        assert_eq!(parse("D3_osc").unwrap(), op);
    }

    #[test]
    fn precedence() {
        // -x^2 is -(x^2); 2*x^2 is 2*(x^2)
        assert_eq!(parse("-x^2").unwrap(), -parse("x*x").unwrap());
        assert_eq!(parse("2*x^2").unwrap(), parse("x*x + x*x").unwrap());
        assert_eq!(parse("1 - x - x").unwrap(), parse("1 - 2*x").unwrap());
        assert_eq!(parse("(x*D)^2").unwrap(), parse("x^2*D^2 + x*D").unwrap());
        assert_eq!(parse("xi^-2*xi^2").unwrap(), parse("1").unwrap());
    }

    #[test]
    fn error_kinds_and_positions() {
        match parse("x*(") {
            Err(ParseError::Syntax { span, .. }) => assert_eq!(span.start, 3),
            other => panic!("{other:?}"),
        }
        match parse("x + $") {
            Err(ParseError::Lexical { span, found }) => assert_eq!((span.start, found.as_str()), (4, "$")),
            other => panic!("{other:?}"),
        }
        match parse("2*foo") {
            Err(ParseError::UnknownIdentifier { span, name }) => assert_eq!((span, name.as_str()), (2..5, "foo")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("D^-1"), Err(ParseError::Algebra { source: AlgebraError::NotInvertible, .. })));
        assert!(matches!(parse("x^D"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("x )"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("1/0"), Err(ParseError::Lexical { .. })));
        assert_eq!(parse("  "), Err(ParseError::Empty));
    }

    #[test]
    fn printed_forms() {
        assert_eq!(print_operator(&parse("x*D - D*x").unwrap()), "-1");
        assert_eq!(print_operator(&parse("0*x").unwrap()), "0");
        let g3 = parse("D3_osc").unwrap();
        let text = print_operator(&g3);
        assert_eq!(parse(&text).unwrap(), g3, "{text}");
    }

    #[test]
    fn foreign_parameter_sets() {
        let p = ParameterSet::new(["a", "b"]).unwrap();
        let op = parse_operator_expression("a*x - b^-1*D", &p).unwrap();
        assert_eq!(parse_operator_expression(&print_operator(&op), &p).unwrap(), op);
        assert!(matches!(
            parse_operator_expression("D3_osc", &p),
            Err(ParseError::Algebra { source: AlgebraError::ParameterMismatch, .. })
        ));
    }
}
