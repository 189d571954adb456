//! Text format for polynomials and ideal files.
//!
//! Grammar (whitespace ignored, no implicit multiplication):
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor (("*"|"/") factor)*        division only by nonzero constants
//! factor := atom ["^" integer]
//! atom   := integer | name | "(" expr ")" | "-" factor
//! ```
//!
//! An ideal file starts with `ring <p|QQ> [w1,...] name1,...` followed by one
//! generator per line; `#` starts a comment.

use num_bigint::BigInt;

use crate::coeff::{Field, FieldSpec, PrimeField, Rationals};
use crate::error::{Error, ParseError, Result};

use super::{is_identifier, Monomial, Polynomial, Ring, RingRef};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
}

struct Lexer<'a> {
    line: usize,
    col0: usize,
    src: &'a str,
}

impl Lexer<'_> {
    fn err(&self, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.col0 + col, message: msg.into() }
    }

    /// Tokens with their 1-based columns.
    fn tokens(&self) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
        let chars: Vec<char> = self.src.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Int(s.parse().expect("digits")), col));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Name(chars[start..i].iter().collect()), col));
            } else if "+-*/^()".contains(c) {
                out.push((Tok::Sym(c), col));
                i += 1;
            } else {
                return Err(self.err(col, format!("unexpected character `{c}`")));
            }
        }
        Ok(out)
    }
}

struct Parser<'a, F: Field> {
    ring: &'a RingRef<F>,
    lexer: &'a Lexer<'a>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl<'a, F: Field> Parser<'a, F> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        self.lexer.err(self.col(), msg)
    }

    fn peek_sym(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some((Tok::Sym(s), _)) if *s == c)
    }

    fn expr(&mut self) -> std::result::Result<Polynomial<F>, ParseError> {
        let mut acc = if self.peek_sym('-') {
            self.pos += 1;
            self.term()?.neg()
        } else {
            if self.peek_sym('+') {
                self.pos += 1;
            }
            self.term()?
        };
        loop {
            if self.peek_sym('+') {
                self.pos += 1;
                acc = acc.add(&self.term()?);
            } else if self.peek_sym('-') {
                self.pos += 1;
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Polynomial<F>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.peek_sym('*') {
                self.pos += 1;
                acc = acc.mul(&self.factor()?);
            } else if self.peek_sym('/') {
                self.pos += 1;
                let col = self.col();
                let d = self.factor()?;
                let field = self.ring.field();
                let inv = match d.terms() {
                    [(m, c)] if m.is_one() => field.inv(c),
                    _ => None,
                };
                match inv {
                    Some(inv) => acc = acc.scale(&inv),
                    None => {
                        return Err(self.lexer.err(col, "division only by a nonzero constant"))
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> std::result::Result<Polynomial<F>, ParseError> {
        let base = self.atom()?;
        if self.peek_sym('^') {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some((Tok::Int(n), _)) => {
                    let e: u32 = n
                        .try_into()
                        .ok()
                        .filter(|&e: &u32| e <= u16::MAX as u32)
                        .ok_or_else(|| self.err("exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected an integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<Polynomial<F>, ParseError> {
        let Some((tok, col)) = self.toks.get(self.pos).cloned() else {
            return Err(self.err("unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&n))),
            Tok::Name(name) => Polynomial::var_named(self.ring, &name)
                .ok_or_else(|| self.lexer.err(col, format!("unknown variable `{name}`"))),
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if !self.peek_sym(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Sym('-') => Ok(self.factor()?.neg()),
            Tok::Sym(c) => Err(self.lexer.err(col, format!("unexpected `{c}`"))),
        }
    }
}

fn parse_at<F: Field>(
    text: &str,
    ring: &RingRef<F>,
    line: usize,
    col0: usize,
) -> std::result::Result<Polynomial<F>, ParseError> {
    let lexer = Lexer { line, col0, src: text };
    let toks = lexer.tokens()?;
    let end_col = text.chars().count() + 1;
    let mut p = Parser { ring, lexer: &lexer, toks, pos: 0, end_col };
    let poly = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

/// Parses one polynomial in `ring`.
pub fn parse_poly<F: Field>(text: &str, ring: &RingRef<F>) -> Result<Polynomial<F>> {
    Ok(parse_at(text, ring, 1, 0)?)
}

fn print_coeff<F: Field>(field: &F, c: &F::Elem) -> (bool, String) {
    field.signed_repr(c)
}

fn print_monomial<F: Field>(ring: &Ring<F>, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (name, &e) in ring.names().iter().zip(m.exps()) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

/// Canonical text form; `parse_poly(print_poly(p)) == p`.
pub fn print_poly<F: Field>(p: &Polynomial<F>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let field = p.field();
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let (neg, mag) = print_coeff(field, c);
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = print_monomial(p.ring(), m);
        if mono.is_empty() {
            out.push_str(&mag);
        } else if mag == "1" {
            out.push_str(&mono);
        } else {
            out.push_str(&mag);
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

/// The `ring ...` header of an ideal file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHeader {
    pub field: FieldSpec,
    pub weights: Vec<u32>,
    pub names: Vec<String>,
}

impl RingHeader {
    pub fn build<F: Field>(&self, field: F) -> Result<RingRef<F>> {
        if field.spec() != self.field {
            return Err(Error::FieldMismatch);
        }
        Ring::new(field, &self.names, &self.weights)
    }
}

fn header_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse(ParseError { line, column, message: message.into() })
}

/// Parses a header line such as `ring 32003 [1,1,2,5] x1,x2,y,z`.
pub fn parse_ring_header(line: &str, line_no: usize) -> Result<RingHeader> {
    let body = line
        .trim_start()
        .strip_prefix("ring")
        .filter(|rest| rest.starts_with(char::is_whitespace))
        .ok_or_else(|| header_err(line_no, 1, "expected `ring <p|QQ> [weights] names`"))?;
    let body = body.trim();
    let (field_tok, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
    let field: FieldSpec = field_tok
        .parse()
        .map_err(|e: Error| header_err(line_no, 6, e.to_string()))?;
    let rest = rest.trim();
    let wcol = line.find('[').map(|c| c + 1).unwrap_or(1);
    let inner = rest
        .strip_prefix('[')
        .and_then(|r| r.split_once(']'))
        .ok_or_else(|| header_err(line_no, wcol, "expected `[w1,w2,...]`"))?;
    let weights = inner
        .0
        .split(',')
        .map(|w| w.trim().parse::<u32>().ok().filter(|&w| w > 0))
        .collect::<Option<Vec<u32>>>()
        .ok_or_else(|| header_err(line_no, wcol, "weights must be positive integers"))?;
    let ncol = line.find(']').map(|c| c + 2).unwrap_or(1);
    let names: Vec<String> = inner.1.split(',').map(|n| n.trim().to_string()).collect();
    if let Some(bad) = names.iter().find(|n| !is_identifier(n)) {
        return Err(header_err(line_no, ncol, format!("`{bad}` is not a variable name")));
    }
    if names.len() != weights.len() {
        return Err(header_err(
            line_no,
            ncol,
            format!("{} weights but {} variables", weights.len(), names.len()),
        ));
    }
    Ok(RingHeader { field, weights, names })
}

/// A ring together with a list of generators.
#[derive(Clone, Debug)]
pub struct IdealFile<F: Field> {
    pub ring: RingRef<F>,
    pub generators: Vec<Polynomial<F>>,
}

/// An ideal file whose field is only known after reading the header.
#[derive(Clone, Debug)]
pub enum AnyIdealFile {
    Prime(IdealFile<PrimeField>),
    Rational(IdealFile<Rationals>),
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Returns the header and the remaining `(line number, text)` generator lines.
fn split_file(text: &str) -> Result<(RingHeader, Vec<(usize, &str)>)> {
    let mut header = None;
    let mut body = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        if header.is_none() {
            header = Some(parse_ring_header(line, i + 1)?);
        } else {
            body.push((i + 1, line));
        }
    }
    let header = header.ok_or_else(|| header_err(1, 1, "missing `ring` header"))?;
    Ok((header, body))
}

/// Parses an ideal file over a field known in advance.
pub fn parse_ideal_file<F: Field>(text: &str, field: F) -> Result<IdealFile<F>> {
    let (header, body) = split_file(text)?;
    let ring = header.build(field)?;
    let mut generators = Vec::with_capacity(body.len());
    for (line_no, line) in body {
        generators.push(parse_at(line, &ring, line_no, 0)?);
    }
    Ok(IdealFile { ring, generators })
}

/// Parses an ideal file, choosing the field from its header.
pub fn load_ideal_file(text: &str) -> Result<AnyIdealFile> {
    let (header, _) = split_file(text)?;
    Ok(match header.field {
        FieldSpec::Rationals => AnyIdealFile::Rational(parse_ideal_file(text, Rationals)?),
        FieldSpec::Prime(p) => AnyIdealFile::Prime(parse_ideal_file(text, PrimeField::new(p)?)?),
    })
}

/// Canonical ideal-file text: header line, then one generator per line.
pub fn print_ideal_file<F: Field>(ring: &Ring<F>, generators: &[Polynomial<F>]) -> String {
    let mut out = format!("{ring}\n");
    for g in generators {
        out.push_str(&print_poly(g));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring6() -> RingRef<PrimeField> {
        Ring::new(PrimeField::default(), &["x", "y", "w", "v", "z", "u"], &[1, 2, 3, 4, 5, 6])
            .unwrap()
    }

    #[test]
    fn expands_by_hand() {
        let r = ring6();
        let p = parse_poly("z^2 - y*(v - y^2)^2", &r).unwrap();
        // z^2 - y v^2 + 2 y^3 v - y^5
        let expect = parse_poly("z^2 - y*v^2 + 2*y^3*v - y^5", &r).unwrap();
        assert_eq!(p, expect);
        assert_eq!(p.len(), 4);
        assert_eq!(p.homogeneous_degree(), Some(10));
    }

    #[test]
    fn zero_and_errors() {
        let r = ring6();
        assert!(parse_poly("0", &r).unwrap().is_zero());
        match parse_poly("x + q", &r) {
            Err(Error::Parse(e)) => {
                assert_eq!((e.line, e.column), (1, 5));
                assert!(e.message.contains("unknown variable"));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("x y", &r).is_err());
        assert!(parse_poly("x^", &r).is_err());
        assert!(parse_poly("(x", &r).is_err());
        assert!(parse_poly("x/y", &r).is_err());
        assert!(parse_poly("x $ y", &r).is_err());
    }

    #[test]
    fn rationals_print_and_parse() {
        let r = Ring::new(Rationals, &["x", "y"], &[1, 1]).unwrap();
        let p = parse_poly("x/2 - 3/4*y + -(x)", &r).unwrap();
        assert_eq!(print_poly(&p), "-1/2*x - 3/4*y");
        assert_eq!(parse_poly(&print_poly(&p), &r).unwrap(), p);
    }

    #[test]
    fn prime_prints_symmetric() {
        let r = ring6();
        let p = parse_poly("32002*x - 5", &r).unwrap();
        assert_eq!(print_poly(&p), "-x - 5");
    }

    #[test]
    fn ideal_file_round_trip() {
        let text = "# type A\nring 32003 [1,1,2,5] x1,x2,y,z\nz^2 - x1^10   # the relation\n\ny^5 + x1*x2^9\n";
        let file = match load_ideal_file(text).unwrap() {
            AnyIdealFile::Prime(f) => f,
            AnyIdealFile::Rational(_) => panic!("wrong field"),
        };
        assert_eq!(file.generators.len(), 2);
        let printed = print_ideal_file(&file.ring, &file.generators);
        // grevlex breaks the degree-10 tie in favour of x1^10 over z^2
        assert_eq!(printed, "ring 32003 [1,1,2,5] x1,x2,y,z\n-x1^10 + z^2\nx1*x2^9 + y^5\n");
        let again = parse_ideal_file(&printed, PrimeField::default()).unwrap();
        assert_eq!(print_ideal_file(&again.ring, &again.generators), printed);
    }

    #[test]
    fn ideal_file_errors_carry_lines() {
        let text = "ring QQ [1,1] x,y\nx + y\nx +* y\n";
        match load_ideal_file(text) {
            Err(Error::Parse(e)) => assert_eq!((e.line, e.column), (3, 4)),
            other => panic!("{other:?}"),
        }
        assert!(load_ideal_file("ring 10 [1] x\n").is_err());
        assert!(load_ideal_file("ring 7 [1,2] x\n").is_err());
        assert!(load_ideal_file("x + y\n").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial<PrimeField>> {
        proptest::collection::vec((proptest::collection::vec(0u16..4, 6), 0u32..32003), 0..8)
            .prop_map(|ts| {
                let r = ring6();
                let terms = ts.into_iter().map(|(e, c)| (r.monomial(&e), c)).collect();
                Polynomial::from_terms(&r, terms)
            })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in arb_poly()) {
            let text = print_poly(&p);
            prop_assert_eq!(parse_poly(&text, p.ring()).unwrap(), p);
        }
    }
}
