//! Small expression language for chart frame coefficients.
//!
//! Grammar: `+ - * /`, unary minus, parentheses, float literals, coordinate
//! variables, and the functions `sin cos exp sqrt`. Variables are resolved to
//! coordinate indices at parse time so evaluation is allocation-free.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Sqrt,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    /// Coordinate variable, resolved to an index into the evaluation point.
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Fun(Func, Box<Expr>),
}

impl Expr {
    pub fn num(v: f64) -> Expr {
        Expr::Num(v)
    }
    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }
    pub fn neg(e: Expr) -> Expr {
        Expr::Neg(Box::new(e))
    }
    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }
    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }
    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }
    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }
    pub fn fun(f: Func, e: Expr) -> Expr {
        Expr::Fun(f, Box::new(e))
    }

    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        let v = self.eval_raw(point)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite)
        }
    }

    fn eval_raw(&self, point: &[f64]) -> Result<f64> {
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::Var(i) => {
                if *i >= point.len() {
                    return Err(Error::PointDimension { expected: *i + 1, got: point.len() });
                }
                point[*i]
            }
            Expr::Neg(e) => -e.eval_raw(point)?,
            Expr::Add(a, b) => a.eval_raw(point)? + b.eval_raw(point)?,
            Expr::Sub(a, b) => a.eval_raw(point)? - b.eval_raw(point)?,
            Expr::Mul(a, b) => a.eval_raw(point)? * b.eval_raw(point)?,
            Expr::Div(a, b) => {
                let d = b.eval_raw(point)?;
                if d == 0.0 {
                    return Err(Error::DivisionByZero);
                }
                a.eval_raw(point)? / d
            }
            Expr::Fun(f, e) => {
                let v = e.eval_raw(point)?;
                match f {
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Exp => v.exp(),
                    Func::Sqrt => v.sqrt(),
                }
            }
        })
    }

    /// Precedence level used by the printer: additive 1, multiplicative 2,
    /// unary 3, atoms 4.
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Num(_) | Expr::Var(_) | Expr::Fun(..) => 4,
        }
    }

    /// Prints source that reparses to the identical tree. Shortest
    /// round-trip float formatting keeps literal values exact.
    pub fn to_source(&self, coords: &[String]) -> String {
        let mut s = String::new();
        self.write(coords, &mut s);
        s
    }

    fn write(&self, coords: &[String], out: &mut String) {
        match self {
            Expr::Num(v) => {
                if *v < 0.0 || (*v == 0.0 && v.is_sign_negative()) {
                    // negative literals reparse as Neg(Num); print through Neg form
                    out.push_str("(0 - ");
                    out.push_str(&format!("{:?}", -*v));
                    out.push(')');
                } else {
                    out.push_str(&format!("{:?}", v));
                }
            }
            Expr::Var(i) => out.push_str(coords.get(*i).map(|s| s.as_str()).unwrap_or("?")),
            Expr::Neg(e) => {
                out.push('-');
                self.write_child(e, 4, coords, out);
            }
            Expr::Add(a, b) => {
                self.write_child(a, 1, coords, out);
                out.push_str(" + ");
                self.write_child(b, 2, coords, out);
            }
            Expr::Sub(a, b) => {
                self.write_child(a, 1, coords, out);
                out.push_str(" - ");
                self.write_child(b, 2, coords, out);
            }
            Expr::Mul(a, b) => {
                self.write_child(a, 2, coords, out);
                out.push_str(" * ");
                self.write_child(b, 3, coords, out);
            }
            Expr::Div(a, b) => {
                self.write_child(a, 2, coords, out);
                out.push_str(" / ");
                self.write_child(b, 3, coords, out);
            }
            Expr::Fun(f, e) => {
                out.push_str(f.name());
                out.push('(');
                e.write(coords, out);
                out.push(')');
            }
        }
    }

    fn write_child(&self, child: &Expr, min_prec: u8, coords: &[String], out: &mut String) {
        if child.prec() < min_prec {
            out.push('(');
            child.write(coords, out);
            out.push(')');
        } else {
            child.write(coords, out);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Returns the next token and its starting byte offset.
    fn next(&mut self) -> Result<Option<(Tok, usize)>> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.src[self.pos] as char;
        let tok = match c {
            '+' => {
                self.pos += 1;
                Tok::Plus
            }
            '-' => {
                self.pos += 1;
                Tok::Minus
            }
            '*' => {
                self.pos += 1;
                Tok::Star
            }
            '/' => {
                self.pos += 1;
                Tok::Slash
            }
            '(' => {
                self.pos += 1;
                Tok::LParen
            }
            ')' => {
                self.pos += 1;
                Tok::RParen
            }
            c if c.is_ascii_digit() || c == '.' => {
                let mut end = self.pos;
                let mut seen_dot = false;
                let mut seen_exp = false;
                while end < self.src.len() {
                    let d = self.src[end] as char;
                    if d.is_ascii_digit() {
                        end += 1;
                    } else if d == '.' && !seen_dot && !seen_exp {
                        seen_dot = true;
                        end += 1;
                    } else if (d == 'e' || d == 'E') && !seen_exp && end > self.pos {
                        seen_exp = true;
                        end += 1;
                        if end < self.src.len()
                            && (self.src[end] == b'+' || self.src[end] == b'-')
                        {
                            end += 1;
                        }
                    } else {
                        break;
                    }
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                let v: f64 = text.parse().map_err(|_| Error::Syntax {
                    pos: start,
                    msg: format!("malformed number `{text}`"),
                })?;
                self.pos = end;
                Tok::Num(v)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = self.pos;
                while end < self.src.len() {
                    let d = self.src[end] as char;
                    if d.is_ascii_alphanumeric() || d == '_' {
                        end += 1;
                    } else {
                        break;
                    }
                }
                let name = std::str::from_utf8(&self.src[self.pos..end]).unwrap().to_string();
                self.pos = end;
                Tok::Ident(name)
            }
            other => {
                return Err(Error::Syntax { pos: start, msg: format!("unexpected character `{other}`") })
            }
        };
        Ok(Some((tok, start)))
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    idx: usize,
    coords: &'a [String],
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.idx)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.idx).cloned();
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some((tok, _)) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::add(lhs, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::sub(lhs, self.term()?);
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while let Some((tok, _)) = self.peek() {
            match tok {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::mul(lhs, self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::div(lhs, self.factor()?);
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some((Tok::Minus, _)) => {
                self.bump();
                Ok(Expr::neg(self.factor()?))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        let pos = self.here();
        match self.bump() {
            Some((Tok::Num(v), _)) => Ok(Expr::Num(v)),
            Some((Tok::LParen, _)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    _ => Err(Error::Syntax { pos: self.here(), msg: "expected `)`".into() }),
                }
            }
            Some((Tok::Ident(name), ident_pos)) => {
                if matches!(self.peek(), Some((Tok::LParen, _))) {
                    let f = match name.as_str() {
                        "sin" => Func::Sin,
                        "cos" => Func::Cos,
                        "exp" => Func::Exp,
                        "sqrt" => Func::Sqrt,
                        _ => {
                            return Err(Error::UnknownFunction { name, pos: ident_pos });
                        }
                    };
                    self.bump(); // (
                    let arg = self.expr()?;
                    match self.bump() {
                        Some((Tok::RParen, _)) => Ok(Expr::fun(f, arg)),
                        _ => Err(Error::Syntax { pos: self.here(), msg: "expected `)`".into() }),
                    }
                } else if let Some(i) = self.coords.iter().position(|c| c == &name) {
                    Ok(Expr::Var(i))
                } else {
                    Err(Error::UnknownIdentifier { name, pos: ident_pos })
                }
            }
            _ => Err(Error::Syntax { pos, msg: "expected expression".into() }),
        }
    }
}

/// Parses `src` with variables drawn from `coords`.
pub fn parse(src: &str, coords: &[String]) -> Result<Expr> {
    let mut lexer = Lexer::new(src);
    let mut toks = Vec::new();
    while let Some(t) = lexer.next()? {
        toks.push(t);
    }
    let end = src.len();
    let mut p = Parser { toks, idx: 0, coords, end };
    let e = p.expr()?;
    if let Some((_, pos)) = p.peek() {
        return Err(Error::Syntax { pos: *pos, msg: "trailing input".into() });
    }
    Ok(e)
}

pub fn coord_names(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords3() -> Vec<String> {
        coord_names(&["t1", "t2", "t3"])
    }

    #[test]
    fn parses_function_application() {
        let e = parse("cos(t1)", &coords3()).unwrap();
        assert_eq!(e, Expr::fun(Func::Cos, Expr::var(0)));
    }

    #[test]
    fn precedence_binds_product_before_difference() {
        let e = parse("t2 - 0.5*t1", &coords3()).unwrap();
        assert_eq!(
            e,
            Expr::sub(Expr::var(1), Expr::mul(Expr::num(0.5), Expr::var(0)))
        );
    }

    #[test]
    fn unknown_identifier_reports_position() {
        let err = parse("t1 + bogus", &coords3()).unwrap_err();
        match err {
            Error::UnknownIdentifier { name, pos } => {
                assert_eq!(name, "bogus");
                assert_eq!(pos, 5);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unknown_function_is_rejected() {
        let err = parse("tan(t1)", &coords3()).unwrap_err();
        assert!(matches!(err, Error::UnknownFunction { .. }));
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = parse("t1 + ", &coords3()).unwrap_err();
        assert!(matches!(err, Error::Syntax { pos: 5, .. }));
    }

    #[test]
    fn evaluates_arithmetic() {
        let e = parse("2*t1 + t2*t3 - 1", &coords3()).unwrap();
        let v = e.eval(&[1.5, 2.0, 3.0]).unwrap();
        assert_eq!(v, 2.0 * 1.5 + 6.0 - 1.0);
    }

    #[test]
    fn evaluates_cos_at_zero() {
        let e = parse("cos(t1)", &coords3()).unwrap();
        assert_eq!(e.eval(&[0.0, 0.0, 0.0]).unwrap(), 1.0);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let e = parse("1/t1", &coords3()).unwrap();
        assert!(matches!(e.eval(&[0.0, 1.0, 1.0]), Err(Error::DivisionByZero)));
    }

    #[test]
    fn sqrt_of_negative_is_non_finite() {
        let e = parse("sqrt(t1)", &coords3()).unwrap();
        assert!(matches!(e.eval(&[-1.0, 0.0, 0.0]), Err(Error::NonFinite)));
    }

    #[test]
    fn printer_round_trips_fixed_cases() {
        let cases = [
            "t2 - 0.5 * t1",
            "-(t1 + t2) * cos(t3)",
            "1 / (t1 + 2)",
            "sin(t1 * t2) - exp(-t3)",
            "t1 - (t2 - t3)",
        ];
        for src in cases {
            let e = parse(src, &coords3()).unwrap();
            let printed = e.to_source(&coords3());
            let e2 = parse(&printed, &coords3()).unwrap();
            assert_eq!(e, e2, "round trip of `{src}` via `{printed}`");
        }
    }
}
