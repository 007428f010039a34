//! Sparse multivariate polynomials over the integers.
//!
//! Variables are `x0, x1, ...`, one per vertex, and every [`Polynomial`]
//! carries its ambient variable count. Terms are kept sorted in descending
//! degrevlex order with no zero coefficients, so structural equality is
//! polynomial equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest ambient variable count.
pub const MAX_VARS: usize = 16;
/// Largest square matrix [`determinant`] expands.
pub const MAX_DETERMINANT_DIM: usize = 8;

pub type Coeff = BigInt;
pub type Term = (Monomial, Coeff);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("ambient variable counts differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("variable count {0} exceeds {MAX_VARS}")]
    TooManyVariables(usize),
    #[error("variable x{index} outside ambient count {nvars}")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { got: usize, expected: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix entries: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("determinant expansion supports dimension at most {MAX_DETERMINANT_DIM}, got {0}")]
    DimensionTooLarge(usize),
    #[error("cannot parse polynomial {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// Exponent vector; unused trailing slots stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u8; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::one();
        m.0[i] = 1;
        m
    }

    /// # Panics
    /// If there are more than [`MAX_VARS`] exponents or one exceeds 255.
    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many exponents");
        let mut m = Monomial::one();
        for (slot, &e) in m.0.iter_mut().zip(exps) {
            *slot = u8::try_from(e).expect("exponent exceeds 255");
        }
        m
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> &[u8] {
        &self.0[..nvars]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Highest variable index with a nonzero exponent, plus one.
    pub fn support_len(&self) -> usize {
        self.0.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Monomial::one();
        for i in 0..MAX_VARS {
            out.0[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, &b) in out.0.iter_mut().zip(&other.0) {
            *a = (*a).max(b);
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        let mut out = self;
        for (a, &b) in out.0.iter_mut().zip(&rhs.0) {
            *a = a.checked_add(b).expect("exponent overflow");
        }
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..self.support_len()])
    }
}

/// Term orders with `x0 > x1 > ... `.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for i in (0..MAX_VARS).rev() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// Sorts descending under `order`, merging equal monomials and dropping zeros.
pub(crate) fn canonicalize(mut terms: Vec<Term>, order: MonomialOrder) -> Vec<Term> {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc += c,
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if out.last().is_some_and(|(_, c)| c.is_zero()) {
        out.pop();
    }
    out
}

/// `a - coeff * mono * b` for term lists sorted descending under `order`.
pub(crate) fn sub_scaled(
    a: &[Term],
    coeff: &Coeff,
    mono: &Monomial,
    b: &[Term],
    order: MonomialOrder,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    while i < a.len() || j < b.len() {
        let take = if i == a.len() {
            Ordering::Less
        } else if j == b.len() {
            Ordering::Greater
        } else {
            order.cmp(&a[i].0, &(b[j].0 * *mono))
        };
        match take {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0 * *mono, -(coeff * &b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].1 - coeff * &b[j].1;
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// `coeff * mono * p`.
pub(crate) fn scale_terms(p: &[Term], coeff: &Coeff, mono: &Monomial) -> Vec<Term> {
    if coeff.is_zero() {
        return Vec::new();
    }
    p.iter().map(|(m, c)| (*m * *mono, c * coeff)).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<Coeff>) -> Self {
        Polynomial::from_terms(nvars, [(Monomial::one(), c.into())])
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, 1)
    }

    /// The variable `x_i`.
    ///
    /// # Panics
    /// If `i >= nvars`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable x{i} outside ambient count {nvars}");
        Polynomial::from_terms(nvars, [(Monomial::var(i), Coeff::one())])
    }

    /// # Panics
    /// If a monomial mentions a variable at or beyond `nvars`.
    pub fn from_terms<I: IntoIterator<Item = Term>>(nvars: usize, terms: I) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        let terms: Vec<Term> = terms.into_iter().collect();
        assert!(
            terms.iter().all(|(m, _)| m.support_len() <= nvars),
            "monomial outside the ambient variables"
        );
        Polynomial {
            nvars,
            terms: canonicalize(terms, MonomialOrder::DegRevLex),
        }
    }

    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<Term>) -> Self {
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in descending degrevlex order.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has degree zero (or is zero).
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Whether the polynomial is the constant `1` or `-1`.
    pub fn is_unit(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.abs().is_one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<&Term> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    pub fn terms_in_order(&self, order: MonomialOrder) -> Vec<Term> {
        match order {
            MonomialOrder::DegRevLex => self.terms.clone(),
            _ => canonicalize(self.terms.clone(), order),
        }
    }

    /// Same polynomial in a larger (or equal) ambient ring.
    pub fn with_nvars(&self, nvars: usize) -> Result<Polynomial, PolyError> {
        if nvars > MAX_VARS {
            return Err(PolyError::TooManyVariables(nvars));
        }
        if let Some(idx) = self.terms.iter().map(|(m, _)| m.support_len()).max() {
            if idx > nvars {
                return Err(PolyError::VariableOutOfRange {
                    index: idx - 1,
                    nvars,
                });
            }
        }
        Ok(Polynomial {
            nvars,
            terms: self.terms.clone(),
        })
    }

    fn check_ambient(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::AmbientMismatch(self.nvars, other.nvars))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ambient(other)?;
        let terms = sub_scaled(
            &self.terms,
            &-Coeff::one(),
            &Monomial::one(),
            &other.terms,
            MonomialOrder::DegRevLex,
        );
        Ok(Polynomial::from_sorted_terms(self.nvars, terms))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ambient(other)?;
        let terms = sub_scaled(
            &self.terms,
            &Coeff::one(),
            &Monomial::one(),
            &other.terms,
            MonomialOrder::DegRevLex,
        );
        Ok(Polynomial::from_sorted_terms(self.nvars, terms))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.nvars));
        }
        if let [(m, c)] = self.terms.as_slice() {
            let terms = scale_terms(&other.terms, c, m);
            return Ok(Polynomial::from_sorted_terms(self.nvars, terms));
        }
        if let [(m, c)] = other.terms.as_slice() {
            let terms = scale_terms(&self.terms, c, m);
            return Ok(Polynomial::from_sorted_terms(self.nvars, terms));
        }
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(*ma * *mb).or_default() += ca * cb;
            }
        }
        Ok(Polynomial::from_sorted_terms(
            self.nvars,
            canonicalize(acc.into_iter().collect(), MonomialOrder::DegRevLex),
        ))
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        Polynomial::from_sorted_terms(self.nvars, scale_terms(&self.terms, c, &Monomial::one()))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at an integer point.
    pub fn evaluate(&self, point: &[Coeff]) -> Result<Coeff, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::PointLength {
                got: point.len(),
                expected: self.nvars,
            });
        }
        let mut total = Coeff::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Value modulo `p` at a point whose coordinates are already reduced.
    pub fn evaluate_mod(&self, point: &[u64], p: u64) -> u64 {
        debug_assert_eq!(point.len(), self.nvars);
        let modulus = BigInt::from(p);
        let mut total = 0u64;
        for (m, c) in &self.terms {
            let mut t = c.mod_floor(&modulus).to_u64().expect("residue fits in u64");
            for (i, &x) in point.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    t = t * x % p;
                }
            }
            total = (total + t) % p;
        }
        total
    }

    /// Parses text such as `3*x0^2*x1 - x2 + 1`. Parentheses are not supported.
    pub fn parse(nvars: usize, text: &str) -> Result<Polynomial, PolyError> {
        let err = |reason: &str| PolyError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ if terms.is_empty() => (false, rest),
                _ => return Err(err("expected '+' or '-' between terms")),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let mut coeff = Coeff::one();
            let mut mono = Monomial::one();
            for factor in term.split('*') {
                if let Some(var) = factor.strip_prefix('x') {
                    let (idx, exp) = match var.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                        None => (var, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| err("bad variable index"))?;
                    if idx >= nvars {
                        return Err(PolyError::VariableOutOfRange { index: idx, nvars });
                    }
                    let mut exps = [0u32; MAX_VARS];
                    exps[idx] = exp;
                    mono = mono * Monomial::from_exponents(&exps);
                } else {
                    let c: Coeff = factor.parse().map_err(|_| err("bad coefficient"))?;
                    coeff *= c;
                }
            }
            terms.push((mono, if negative { -coeff } else { coeff }));
            rest = tail;
        }
        Ok(Polynomial::from_terms(nvars, terms))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut first = true;
            if !magnitude.is_one() || m.is_one() {
                write!(f, "{magnitude}")?;
                first = false;
            }
            for i in 0..self.nvars {
                let e = m.exponent(i);
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "x{i}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars, self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;

            /// # Panics
            /// If the ambient variable counts differ.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::from_sorted_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        )
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

/// A rectangular matrix of polynomials over a common ambient ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Polynomial>,
}

impl SymMatrix {
    /// Row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self, PolyError> {
        if entries.len() != rows * cols {
            return Err(PolyError::Shape {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        let nvars = entries.first().map_or(0, Polynomial::nvars);
        if let Some(bad) = entries.iter().find(|p| p.nvars() != nvars) {
            return Err(PolyError::AmbientMismatch(nvars, bad.nvars()));
        }
        Ok(SymMatrix {
            rows,
            cols,
            nvars,
            entries,
        })
    }

    /// Integer matrix viewed as constant polynomials in `nvars` variables.
    pub fn from_constants(nvars: usize, rows: &[Vec<Coeff>]) -> Result<Self, PolyError> {
        let cols = rows.first().map_or(0, Vec::len);
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|c| Polynomial::constant(nvars, c.clone())))
            .collect();
        SymMatrix::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SymMatrix {
        let entries = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone()))
            .collect();
        SymMatrix {
            rows: rows.len(),
            cols: cols.len(),
            nvars: self.nvars,
            entries,
        }
    }

    pub fn determinant(&self) -> Result<Polynomial, PolyError> {
        determinant(self)
    }
}

/// Leibniz expansion: sum over permutations of signed entry products.
pub fn determinant(m: &SymMatrix) -> Result<Polynomial, PolyError> {
    if m.rows != m.cols {
        return Err(PolyError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n > MAX_DETERMINANT_DIM {
        return Err(PolyError::DimensionTooLarge(n));
    }
    if n == 0 {
        return Ok(Polynomial::one(m.nvars));
    }
    let mut total = Polynomial::zero(m.nvars);
    let mut perm: Vec<usize> = (0..n).collect();
    leibniz(m, 0, &mut perm, false, &Polynomial::one(m.nvars), &mut total);
    Ok(total)
}

fn leibniz(
    m: &SymMatrix,
    row: usize,
    perm: &mut Vec<usize>,
    odd: bool,
    partial: &Polynomial,
    total: &mut Polynomial,
) {
    let n = perm.len();
    if row == n {
        *total = if odd { &*total - partial } else { &*total + partial };
        return;
    }
    for k in row..n {
        perm.swap(row, k);
        let entry = m.get(row, perm[row]);
        if !entry.is_zero() {
            let next = partial * entry;
            leibniz(m, row + 1, perm, odd ^ (k != row), &next, total);
        }
        perm.swap(row, k);
    }
}
