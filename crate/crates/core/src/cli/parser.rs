//! Recursive-descent parser for Clifford-polynomial expressions.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary ("*" unary)*
//! unary   := ("+" | "-") unary | power
//! power   := atom ("^" INT)?
//! atom    := RATIONAL | "i" | "x" INT | "e" DIGITS | "e{" INT ("," INT)* "}" | "(" expr ")"
//! ```
//!
//! Products are the noncommutative Clifford-polynomial product, taken left to
//! right. Juxtaposition is rejected, as are chained powers and powers of
//! fractions such as `1/2^3`, which would be ambiguous without parentheses.
//! A blade `e135` multiplies its generators in the written order.

use num_bigint::BigInt;

use crate::clifford::Multivector;
use crate::error::{Error, Result};
use crate::poly::CliffPoly;
use crate::scalars::{GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Number(BigInt, Option<BigInt>),
    I,
    Var(usize),
    Blade(Vec<usize>),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut pos, mut line, mut column) = (0, 1, 1);
    let digits = |pos: &mut usize, column: &mut usize| -> String {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
            *column += 1;
        }
        chars[start..*pos].iter().collect()
    };
    while pos < chars.len() {
        let c = chars[pos];
        let (l, col) = (line, column);
        if c == '\n' {
            pos += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            pos += 1;
            column += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            pos += 1;
            column += 1;
            out.push(Token { tok, line: l, column: col });
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let num: BigInt = digits(&mut pos, &mut column).parse().expect("digits");
            let den = if pos < chars.len() && chars[pos] == '/' {
                pos += 1;
                column += 1;
                let d = digits(&mut pos, &mut column);
                if d.is_empty() {
                    return Err(syntax(line, column, "expected denominator after '/'"));
                }
                let d: BigInt = d.parse().expect("digits");
                if d == BigInt::from(0) {
                    return Err(syntax(l, col, "zero denominator"));
                }
                Some(d)
            } else {
                None
            };
            Tok::Number(num, den)
        } else if c == 'i' {
            pos += 1;
            column += 1;
            Tok::I
        } else if c == 'x' {
            pos += 1;
            column += 1;
            let d = digits(&mut pos, &mut column);
            if d.is_empty() {
                return Err(syntax(l, col, "expected variable index after 'x'"));
            }
            Tok::Var(d.parse().map_err(|_| syntax(l, col, "variable index too large"))?)
        } else if c == 'e' {
            pos += 1;
            column += 1;
            if pos < chars.len() && chars[pos] == '{' {
                pos += 1;
                column += 1;
                let mut idx = Vec::new();
                loop {
                    let d = digits(&mut pos, &mut column);
                    if d.is_empty() {
                        return Err(syntax(line, column, "expected blade index"));
                    }
                    idx.push(d.parse().map_err(|_| syntax(l, col, "blade index too large"))?);
                    match chars.get(pos) {
                        Some(',') => {
                            pos += 1;
                            column += 1;
                        }
                        Some('}') => {
                            pos += 1;
                            column += 1;
                            break;
                        }
                        _ => return Err(syntax(line, column, "expected ',' or '}' in blade")),
                    }
                }
                Tok::Blade(idx)
            } else {
                let d = digits(&mut pos, &mut column);
                if d.is_empty() {
                    return Err(syntax(l, col, "expected blade indices after 'e'"));
                }
                Tok::Blade(d.chars().map(|ch| ch.to_digit(10).expect("digit") as usize).collect())
            }
        } else {
            return Err(syntax(l, col, format!("unexpected character {c:?}")));
        };
        if pos < chars.len() && (chars[pos].is_ascii_alphanumeric() || chars[pos] == '/') {
            return Err(syntax(line, column, format!("unexpected character {:?}", chars[pos])));
        }
        out.push(Token { tok, line: l, column: col });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    nvars: usize,
    alg: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<CliffPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CliffPoly> {
        let mut acc = self.unary()?;
        loop {
            let t = self.peek().clone();
            match t.tok {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Number(..) | Tok::I | Tok::Var(_) | Tok::Blade(_) | Tok::LParen => {
                    return Err(syntax(t.line, t.column, "implicit multiplication is not allowed; use '*'"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<CliffPoly> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<CliffPoly> {
        let start = self.peek().clone();
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let caret = self.bump();
        if matches!(start.tok, Tok::Number(_, Some(_))) {
            return Err(syntax(caret.line, caret.column, "exponent on non-atomic base; parenthesize the fraction"));
        }
        let exp = self.bump();
        let n = match exp.tok {
            Tok::Number(n, None) => u32::try_from(n).map_err(|_| syntax(exp.line, exp.column, "exponent too large"))?,
            _ => return Err(syntax(exp.line, exp.column, "expected a natural-number exponent")),
        };
        let next = self.peek();
        if next.tok == Tok::Caret {
            return Err(syntax(next.line, next.column, "exponent on non-atomic base; chained powers need parentheses"));
        }
        Ok(base.pow(n))
    }

    fn atom(&mut self) -> Result<CliffPoly> {
        let t = self.bump();
        let (nvars, alg) = (self.nvars, self.alg);
        match t.tok {
            Tok::Number(n, d) => {
                let r = Rational::new(n, d.unwrap_or_else(|| BigInt::from(1)));
                Ok(CliffPoly::rational(nvars, alg, r))
            }
            Tok::I => Ok(CliffPoly::scalar(nvars, alg, GaussianRational::i())),
            Tok::Var(axis) => {
                if axis == 0 || axis > nvars {
                    return Err(syntax(t.line, t.column, format!("variable x{axis} outside x1..x{nvars}")));
                }
                CliffPoly::var(nvars, alg, axis)
            }
            Tok::Blade(idx) => {
                if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > alg) {
                    return Err(syntax(t.line, t.column, format!("blade index {bad} exceeds algebra dimension {alg}")));
                }
                Ok(CliffPoly::constant(nvars, Multivector::blade(alg, &idx)?))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(syntax(close.line, close.column, "expected ')'"));
                }
                Ok(inner)
            }
            Tok::End => Err(syntax(t.line, t.column, "unexpected end of input")),
            _ => Err(syntax(t.line, t.column, "expected a number, i, variable, blade or '('")),
        }
    }
}

/// Parses `text` as a polynomial in `x1..x{nvars}` with ℂ_alg coefficients.
pub fn parse_poly_in(text: &str, nvars: usize, alg: usize) -> Result<CliffPoly> {
    let mut p = Parser { tokens: lex(text)?, pos: 0, nvars, alg };
    let out = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(syntax(t.line, t.column, "unexpected token"));
    }
    Ok(out)
}

/// Parses `text` as a ℂ_m-valued polynomial on `ℝ^m`.
pub fn parse_poly(text: &str, m: usize) -> Result<CliffPoly> {
    parse_poly_in(text, m, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::x1_minus_e12_x2;
    use crate::scalars::{int, rat};

    fn err_at(text: &str, m: usize) -> (usize, usize, String) {
        match parse_poly(text, m) {
            Err(Error::Syntax { line, column, message }) => (line, column, message),
            other => panic!("expected syntax error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn examples() {
        assert_eq!(parse_poly("x1 - e12*x2", 2).unwrap(), x1_minus_e12_x2(2, 2).unwrap());
        assert!(parse_poly("0", 3).unwrap().is_zero());
        let x1 = CliffPoly::var(2, 2, 1).unwrap();
        let x2 = CliffPoly::var(2, 2, 2).unwrap();
        let expected = &(&x1.pow(2) + &(&x1 * &x2).scale(&GaussianRational::new(int(0), int(2)))) - &x2.pow(2);
        assert_eq!(parse_poly("(x1 + i*x2)^2", 2).unwrap(), expected);
    }

    #[test]
    fn precedence_and_order() {
        assert_eq!(parse_poly("-x1^2", 2).unwrap(), -&CliffPoly::var(2, 2, 1).unwrap().pow(2));
        assert_eq!(parse_poly("e2*e1", 2).unwrap(), parse_poly("-e12", 2).unwrap());
        assert_eq!(parse_poly("e21", 2).unwrap(), parse_poly("-e12", 2).unwrap());
        assert_eq!(parse_poly("e{1,2}", 2).unwrap(), parse_poly("e12", 2).unwrap());
        assert_eq!(parse_poly("3/4 - 1/4", 2).unwrap(), CliffPoly::rational(2, 2, rat(1, 2)));
        assert_eq!(parse_poly("(1/2)^2", 2).unwrap(), CliffPoly::rational(2, 2, rat(1, 4)));
        assert_eq!(parse_poly("2 - 3 - 4", 1).unwrap(), CliffPoly::rational(1, 1, int(-5)));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(err_at("x1 x2", 2).1, 4);
        assert!(err_at("2x1", 2).2.contains("unexpected character"));
        assert!(err_at("x1^2^3", 2).2.contains("non-atomic"));
        assert!(err_at("1/2^3", 2).2.contains("non-atomic"));
        assert!(err_at("e3", 2).2.contains("exceeds"));
        assert!(err_at("x3", 2).2.contains("outside"));
        let (line, column, _) = err_at("x1 +\n  * x2", 2);
        assert_eq!((line, column), (2, 3));
        assert!(err_at("(x1", 2).2.contains("')'"));
        assert!(err_at("", 2).2.contains("end of input"));
        assert!(err_at("x1 & x2", 2).2.contains("unexpected character"));
    }

    #[test]
    fn display_round_trip() {
        let p = parse_poly("(x1 - e12*x2)^3*(1/3 + 2*i*e23) - x3^2*e123", 3).unwrap();
        assert_eq!(parse_poly(&p.to_string(), 3).unwrap(), p);
        let q = parse_poly_in("e{10,11}*x1 + e1", 1, 11).unwrap();
        assert_eq!(parse_poly_in(&q.to_string(), 1, 11).unwrap(), q);
    }
}
