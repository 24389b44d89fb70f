//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Polynomials are read from a small infix grammar:
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [coeff '*'?] factor ('*' factor)* | coeff
//! factor := var ('^' uint)?
//! coeff  := int | int '/' uint
//! var    := 'x' uint | 'x' | 'y' | 'z' | 'w'
//! ```
//!
//! Whitespace is ignored. The two variable styles (`x1..xn` and `x,y,z,w`)
//! may not be mixed in one input.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

const LETTERS: [&str; 4] = ["x", "y", "z", "w"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("polynomial has a nonzero constant term; f(0) = 0 is required")]
    NonzeroConstantTerm,
    #[error("polynomial is identically zero")]
    EmptyPolynomial,
    #[error("face does not support the polynomial's support: {0}")]
    FaceMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

fn syntax(pos: usize, message: impl Into<String>) -> PolyError {
    PolyError::Syntax {
        pos,
        message: message.into(),
    }
}

/// A multi-index with nonnegative entries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Result<Self, PolyError> {
        if entries.iter().any(|&e| e < 0) {
            return Err(PolyError::Dimension(format!(
                "negative exponent in {entries:?}"
            )));
        }
        Ok(ExponentVector(entries))
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn dot(&self, normal: &[i64]) -> i64 {
        self.0.iter().zip(normal).map(|(a, b)| a * b).sum()
    }

    /// True when every coordinate is at least one.
    pub fn is_interior(&self) -> bool {
        self.0.iter().all(|&e| e >= 1)
    }

    /// Index of the single nonzero coordinate, if the vector is a pure power.
    pub fn pure_power_axis(&self) -> Option<usize> {
        let mut axis = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e != 0 {
                if axis.is_some() {
                    return None;
                }
                axis = Some(i);
            }
        }
        axis
    }
}

impl TryFrom<Vec<i64>> for ExponentVector {
    type Error = PolyError;

    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        ExponentVector::new(v)
    }
}

impl From<ExponentVector> for Vec<i64> {
    fn from(v: ExponentVector) -> Self {
        v.0
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A face of a lattice polyhedron together with a supporting functional.
///
/// Every vertex satisfies `<normal, v> = offset` and every point of the
/// ambient support satisfies `<normal, p> >= offset`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Face {
    pub vertices: Vec<ExponentVector>,
    pub dim: usize,
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Face {
    pub fn contains(&self, point: &ExponentVector) -> bool {
        point.dot(&self.normal) == self.offset
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    n: usize,
    terms: BTreeMap<ExponentVector, BigRational>,
}

impl SparsePolynomial {
    /// Builds a polynomial from `(exponent, coefficient)` pairs, combining like
    /// terms and dropping zeros.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (ExponentVector, BigRational)>,
    {
        let mut map: BTreeMap<ExponentVector, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            if e.dim() != n {
                return Err(PolyError::Dimension(format!(
                    "exponent {e} has length {}, expected {n}",
                    e.dim()
                )));
            }
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(SparsePolynomial { n, terms: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Option<&BigRational> {
        self.terms.get(e)
    }

    /// Re-embeds the polynomial in `n` variables by padding exponents with zeros.
    pub fn with_dimension(&self, n: usize) -> Result<Self, PolyError> {
        if n < self.n {
            return Err(PolyError::Dimension(format!(
                "polynomial uses {} variables but n = {n} was declared",
                self.n
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = e.0.clone();
                v.resize(n, 0);
                (ExponentVector(v), c.clone())
            })
            .collect();
        Ok(SparsePolynomial { n, terms })
    }

    /// Renders the polynomial with explicit variable names.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let monomial: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(j, &p)| {
                    if p == 1 {
                        names[j].clone()
                    } else {
                        format!("{}^{p}", names[j])
                    }
                })
                .collect();
            if monomial.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&monomial.join("*"));
            }
        }
        out
    }
}

pub fn default_variable_names(n: usize) -> Vec<String> {
    if n <= LETTERS.len() {
        LETTERS[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_variable_names(self.n)))
    }
}

pub fn support(p: &SparsePolynomial) -> BTreeSet<ExponentVector> {
    p.terms.keys().cloned().collect()
}

/// True iff some monomial has total degree one, i.e. the origin is a smooth
/// point of the zero set.
pub fn has_linear_term(p: &SparsePolynomial) -> bool {
    p.terms.keys().any(|e| e.degree() == 1)
}

/// Keeps exactly the terms whose exponents lie on `face`.
pub fn restrict_to_face(p: &SparsePolynomial, face: &Face) -> Result<SparsePolynomial, PolyError> {
    if face.normal.len() != p.n {
        return Err(PolyError::FaceMismatch(format!(
            "normal has length {}, polynomial has {} variables",
            face.normal.len(),
            p.n
        )));
    }
    let mut touched = false;
    for e in p.terms.keys() {
        let value = e.dot(&face.normal);
        if value < face.offset {
            return Err(PolyError::FaceMismatch(format!(
                "support point {e} lies below the supporting hyperplane"
            )));
        }
        touched |= value == face.offset;
    }
    if !touched {
        return Err(PolyError::FaceMismatch(
            "no support point lies on the face".to_string(),
        ));
    }
    let terms = p
        .terms
        .iter()
        .filter(|(e, _)| face.contains(e))
        .map(|(e, c)| (e.clone(), c.clone()))
        .collect();
    Ok(SparsePolynomial { n: p.n, terms })
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, PolyError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let token = match c {
            '^' => Token::Caret,
            '*' => Token::Star,
            '/' => Token::Slash,
            '+' => Token::Plus,
            '-' => Token::Minus,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..i];
                tokens.push((start, Token::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            other => return Err(syntax(start, format!("unexpected character '{other}'"))),
        };
        tokens.push((start, token));
        i += 1;
    }
    Ok(tokens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarRef {
    Letter(usize),
    Indexed(usize),
    Named(usize),
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    names: Option<&'a [&'a str]>,
}

type RawTerm = (BigRational, Vec<(VarRef, i64)>);

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect_uint(&mut self, what: &str) -> Result<BigInt, PolyError> {
        let at = self.offset();
        match self.bump() {
            Some(Token::Int(v)) => Ok(v),
            _ => Err(syntax(at, format!("expected {what}"))),
        }
    }

    fn parse_poly(&mut self) -> Result<Vec<RawTerm>, PolyError> {
        let mut terms = Vec::new();
        let mut negate = match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                true
            }
            Some(Token::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let (coeff, factors) = self.parse_term()?;
            terms.push((if negate { -coeff } else { coeff }, factors));
            match self.peek() {
                None => break,
                Some(Token::Plus) => negate = false,
                Some(Token::Minus) => negate = true,
                Some(_) => return Err(syntax(self.offset(), "expected '+' or '-'")),
            }
            self.bump();
        }
        Ok(terms)
    }

    fn parse_term(&mut self) -> Result<RawTerm, PolyError> {
        let mut coeff = BigRational::one();
        let mut factors = Vec::new();
        if let Some(Token::Int(_)) = self.peek() {
            let num = self.expect_uint("integer")?;
            let mut value = BigRational::from_integer(num);
            if let Some(Token::Slash) = self.peek() {
                self.bump();
                let at = self.offset();
                let den = self.expect_uint("denominator")?;
                if den.is_zero() {
                    return Err(syntax(at, "zero denominator"));
                }
                value /= BigRational::from_integer(den);
            }
            coeff = value;
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                }
                Some(Token::Ident(_)) => {}
                _ => return Ok((coeff, factors)),
            }
        }
        loop {
            factors.push(self.parse_factor()?);
            if let Some(Token::Star) = self.peek() {
                self.bump();
            } else {
                break;
            }
        }
        Ok((coeff, factors))
    }

    fn parse_factor(&mut self) -> Result<(VarRef, i64), PolyError> {
        let at = self.offset();
        let name = match self.bump() {
            Some(Token::Ident(s)) => s,
            _ => return Err(syntax(at, "expected a variable")),
        };
        let var = self.resolve(&name, at)?;
        let mut exponent = 1i64;
        if let Some(Token::Caret) = self.peek() {
            self.bump();
            let at = self.offset();
            let e = self.expect_uint("exponent")?;
            exponent = i64::try_from(e).map_err(|_| syntax(at, "exponent too large"))?;
        }
        Ok((var, exponent))
    }

    fn resolve(&self, name: &str, at: usize) -> Result<VarRef, PolyError> {
        if let Some(names) = self.names {
            return names
                .iter()
                .position(|n| *n == name)
                .map(VarRef::Named)
                .ok_or_else(|| syntax(at, format!("unknown variable '{name}'")));
        }
        if let Some(i) = LETTERS.iter().position(|l| *l == name) {
            return Ok(VarRef::Letter(i));
        }
        if let Some(rest) = name.strip_prefix('x') {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                let idx: usize = rest
                    .parse()
                    .map_err(|_| syntax(at, "variable index too large"))?;
                if idx == 0 {
                    return Err(syntax(at, "variable indices start at x1"));
                }
                return Ok(VarRef::Indexed(idx - 1));
            }
        }
        Err(syntax(at, format!("unknown variable '{name}'")))
    }
}

/// Parses `text` into a sparse polynomial.
///
/// With `variable_names`, identifiers must come from that list and the
/// dimension is its length; otherwise the dimension is inferred from the
/// highest variable used.
pub fn parse_polynomial(
    text: &str,
    variable_names: Option<&[&str]>,
) -> Result<SparsePolynomial, PolyError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(PolyError::EmptyPolynomial);
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        names: variable_names,
    };
    let raw = parser.parse_poly()?;

    let mut letters = false;
    let mut indexed = false;
    let mut n = variable_names.map_or(0, |v| v.len());
    for (_, factors) in &raw {
        for (var, _) in factors {
            match *var {
                VarRef::Letter(i) => {
                    letters = true;
                    n = n.max(i + 1);
                }
                VarRef::Indexed(i) => {
                    indexed = true;
                    n = n.max(i + 1);
                }
                VarRef::Named(_) => {}
            }
        }
    }
    if letters && indexed {
        return Err(syntax(0, "cannot mix x,y,z,w with indexed variables x1..xn"));
    }

    let mut constant = BigRational::zero();
    let mut terms = Vec::with_capacity(raw.len());
    for (coeff, factors) in raw {
        if factors.is_empty() {
            constant += coeff;
            continue;
        }
        let mut e = vec![0i64; n];
        for (var, p) in factors {
            let i = match var {
                VarRef::Letter(i) | VarRef::Indexed(i) | VarRef::Named(i) => i,
            };
            e[i] += p;
        }
        terms.push((ExponentVector(e), coeff));
    }
    if !constant.is_zero() {
        return Err(PolyError::NonzeroConstantTerm);
    }
    let poly = SparsePolynomial::from_terms(n, terms)?;
    // x^0-only terms collapse to constants after exponent summation
    if let Some(c) = poly.terms.get(&ExponentVector::zero(n)) {
        if !c.is_zero() {
            return Err(PolyError::NonzeroConstantTerm);
        }
    }
    if poly.is_zero() {
        return Err(PolyError::EmptyPolynomial);
    }
    Ok(poly)
}
