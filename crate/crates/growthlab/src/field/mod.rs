//! Exact arithmetic for the four supported fields: F_p, F_q = F_p[x]/(m),
//! ℚ, and the rational function field F_q(t).
//!
//! Every element carries a field tag and a canonical representative:
//! residues in [0, q) for finite fields, reduced fractions with positive
//! denominator for ℚ, and reduced fractions of polynomials with monic
//! denominator for F_q(t). Equality of canonical forms is equality in the
//! field, so elements are hashable and totally ordered.

pub mod fq;
pub mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};
pub use fq::{find_generator as find_generator_raw, irreducible_poly, is_prime, FqCtx};
use poly::Poly;

/// The prime field F_p. Primality is verified at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec::prime(self.p).expect("validated at construction")
    }
}

/// F_q = F_p[x]/(m(x)) with m monic irreducible of degree α.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtField {
    ctx: Arc<FqCtx>,
}

impl ExtField {
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        Ok(ExtField { ctx: Arc::new(FqCtx::extension(p, modulus)?) })
    }

    /// F_{p^α} with the lexicographically smallest irreducible modulus.
    pub fn of_order(p: u64, alpha: usize) -> Result<Self> {
        Self::new(p, irreducible_poly(p, alpha)?)
    }

    pub fn q(&self) -> u64 {
        self.ctx.q()
    }

    pub fn ctx(&self) -> &Arc<FqCtx> {
        &self.ctx
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec::Ext(self.ctx.clone())
    }
}

/// Tag identifying which field a value lives in, together with the
/// arithmetic context needed to compute in it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(Arc<FqCtx>),
    Ext(Arc<FqCtx>),
    Rational,
    /// F_q(t) over the given base field (prime or extension).
    FunctionField(Arc<FqCtx>),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        Ok(FieldSpec::Prime(Arc::new(FqCtx::prime(p)?)))
    }

    pub fn rational() -> Self {
        FieldSpec::Rational
    }

    pub fn function_field(base: Arc<FqCtx>) -> Self {
        FieldSpec::FunctionField(base)
    }

    pub fn function_field_prime(p: u64) -> Result<Self> {
        Ok(FieldSpec::FunctionField(Arc::new(FqCtx::prime(p)?)))
    }

    /// Order of the field if finite.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Prime(c) | FieldSpec::Ext(c) => Some(c.q()),
            _ => None,
        }
    }

    pub fn characteristic(&self) -> Option<u64> {
        match self {
            FieldSpec::Prime(c) | FieldSpec::Ext(c) | FieldSpec::FunctionField(c) => Some(c.p()),
            FieldSpec::Rational => None,
        }
    }

    /// Base-field order q for F_q(t).
    pub fn ff_base_order(&self) -> Option<u64> {
        match self {
            FieldSpec::FunctionField(c) => Some(c.q()),
            _ => None,
        }
    }

    pub fn zero(&self) -> Value {
        match self {
            FieldSpec::Prime(_) | FieldSpec::Ext(_) => Value::Finite(0),
            FieldSpec::Rational => Value::Rational(BigRational::zero()),
            FieldSpec::FunctionField(_) => Value::FuncField(FFRatio::zero()),
        }
    }

    pub fn one(&self) -> Value {
        match self {
            FieldSpec::Prime(_) | FieldSpec::Ext(_) => Value::Finite(1),
            FieldSpec::Rational => Value::Rational(BigRational::one()),
            FieldSpec::FunctionField(_) => Value::FuncField(FFRatio::one()),
        }
    }

    pub fn from_int(&self, n: i128) -> Value {
        match self {
            FieldSpec::Prime(c) | FieldSpec::Ext(c) => Value::Finite(c.from_int(n)),
            FieldSpec::Rational => Value::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::FunctionField(c) => {
                Value::FuncField(FFRatio::from_poly(poly::constant(c.from_int(n))))
            }
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (FieldSpec::Prime(c) | FieldSpec::Ext(c), Value::Finite(x), Value::Finite(y)) => {
                Value::Finite(c.add(*x, *y))
            }
            (FieldSpec::Rational, Value::Rational(x), Value::Rational(y)) => Value::Rational(x + y),
            (FieldSpec::FunctionField(c), Value::FuncField(x), Value::FuncField(y)) => {
                Value::FuncField(x.add(c, y))
            }
            _ => panic!("value does not belong to field"),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match (self, a) {
            (FieldSpec::Prime(c) | FieldSpec::Ext(c), Value::Finite(x)) => Value::Finite(c.neg(*x)),
            (FieldSpec::Rational, Value::Rational(x)) => Value::Rational(-x),
            (FieldSpec::FunctionField(c), Value::FuncField(x)) => Value::FuncField(x.neg(c)),
            _ => panic!("value does not belong to field"),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (FieldSpec::Prime(c) | FieldSpec::Ext(c), Value::Finite(x), Value::Finite(y)) => {
                Value::Finite(c.mul(*x, *y))
            }
            (FieldSpec::Rational, Value::Rational(x), Value::Rational(y)) => Value::Rational(x * y),
            (FieldSpec::FunctionField(c), Value::FuncField(x), Value::FuncField(y)) => {
                Value::FuncField(x.mul(c, y))
            }
            _ => panic!("value does not belong to field"),
        }
    }

    pub fn inv(&self, a: &Value) -> Result<Value> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (FieldSpec::Prime(c) | FieldSpec::Ext(c), Value::Finite(x)) => {
                Value::Finite(c.inv(*x)?)
            }
            (FieldSpec::Rational, Value::Rational(x)) => Value::Rational(x.recip()),
            (FieldSpec::FunctionField(c), Value::FuncField(x)) => Value::FuncField(x.inv(c)?),
            _ => panic!("value does not belong to field"),
        })
    }

    pub fn div(&self, a: &Value, b: &Value) -> Result<Value> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// All field elements, ascending; only for finite fields.
    pub fn enumerate(&self) -> Option<Vec<Value>> {
        self.order().map(|q| (0..q).map(Value::Finite).collect())
    }
}

/// Canonical representative of a field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Finite(u64),
    Rational(BigRational),
    FuncField(FFRatio),
}

impl Value {
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Finite(x) => *x == 0,
            Value::Rational(x) => x.is_zero(),
            Value::FuncField(x) => x.num.is_empty(),
        }
    }

    pub fn as_finite(&self) -> u64 {
        match self {
            Value::Finite(x) => *x,
            _ => panic!("not a finite-field value"),
        }
    }

    pub fn as_rational(&self) -> &BigRational {
        match self {
            Value::Rational(x) => x,
            _ => panic!("not a rational value"),
        }
    }

    pub fn as_ff(&self) -> &FFRatio {
        match self {
            Value::FuncField(x) => x,
            _ => panic!("not a function-field value"),
        }
    }
}

fn poly_order_cmp(f: &Poly, g: &Poly) -> Ordering {
    // degree first, then coefficients from the top
    f.len().cmp(&g.len()).then_with(|| f.iter().rev().cmp(g.iter().rev()))
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => a.cmp(b),
            (Value::Rational(a), Value::Rational(b)) => a.cmp(b),
            (Value::FuncField(a), Value::FuncField(b)) => poly_order_cmp(&a.den, &b.den)
                .then_with(|| poly_order_cmp(&a.num, &b.num)),
            // mixed kinds never occur inside one set; give them a stable order anyway
            (Value::Finite(_), _) => Ordering::Less,
            (_, Value::Finite(_)) => Ordering::Greater,
            (Value::Rational(_), _) => Ordering::Less,
            (_, Value::Rational(_)) => Ordering::Greater,
        }
    }
}

/// Reduced rational function over F_q: gcd(num, den) = 1, den monic,
/// zero stored as 0/1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FFRatio {
    pub num: Poly,
    pub den: Poly,
}

impl FFRatio {
    pub fn zero() -> Self {
        FFRatio { num: vec![], den: vec![1] }
    }

    pub fn one() -> Self {
        FFRatio { num: vec![1], den: vec![1] }
    }

    pub fn from_poly(p: Poly) -> Self {
        FFRatio { num: poly::trim(p), den: vec![1] }
    }

    /// Build and canonicalize num/den.
    pub fn new(ctx: &FqCtx, num: Poly, den: Poly) -> Result<Self> {
        let num = poly::trim(num);
        let den = poly::trim(den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if num.is_empty() {
            return Ok(FFRatio::zero());
        }
        let g = poly::gcd(ctx, &num, &den);
        let (num, _) = poly::divmod(ctx, &num, &g)?;
        let (den, _) = poly::divmod(ctx, &den, &g)?;
        // make denominator monic
        let lead = *den.last().unwrap();
        let inv = ctx.inv(lead)?;
        Ok(FFRatio { num: poly::scale(ctx, &num, inv), den: poly::scale(ctx, &den, inv) })
    }

    pub fn add(&self, ctx: &FqCtx, other: &Self) -> Self {
        let num = poly::add(
            ctx,
            &poly::mul(ctx, &self.num, &other.den),
            &poly::mul(ctx, &other.num, &self.den),
        );
        let den = poly::mul(ctx, &self.den, &other.den);
        FFRatio::new(ctx, num, den).expect("denominator nonzero")
    }

    pub fn neg(&self, ctx: &FqCtx) -> Self {
        FFRatio { num: poly::neg(ctx, &self.num), den: self.den.clone() }
    }

    pub fn mul(&self, ctx: &FqCtx, other: &Self) -> Self {
        let num = poly::mul(ctx, &self.num, &other.num);
        let den = poly::mul(ctx, &self.den, &other.den);
        FFRatio::new(ctx, num, den).expect("denominator nonzero")
    }

    pub fn inv(&self, ctx: &FqCtx) -> Result<Self> {
        if self.num.is_empty() {
            return Err(Error::DivisionByZero);
        }
        FFRatio::new(ctx, self.den.clone(), self.num.clone())
    }

    /// Degree valuation exponent: deg(num) − deg(den); None for zero.
    pub fn val_exponent(&self) -> Option<i64> {
        poly::deg(&self.num).map(|dn| dn as i64 - poly::deg(&self.den).unwrap_or(0) as i64)
    }
}

/// A value in one of the supported exact fields, carrying its field tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldSpec,
    value: Value,
}

/// The four arithmetic operations, as named by `field_ops`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn new(field: FieldSpec, value: Value) -> Self {
        FieldElement { field, value }
    }

    pub fn from_int(field: &FieldSpec, n: i128) -> Self {
        FieldElement { field: field.clone(), value: field.from_int(n) }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(FieldElement::new(self.field.clone(), self.field.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(FieldElement::new(self.field.clone(), self.field.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(FieldElement::new(self.field.clone(), self.field.mul(&self.value, &other.value)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(FieldElement::new(self.field.clone(), self.field.div(&self.value, &other.value)?))
    }
}

/// Apply one of the four field operations; this is the element-level entry
/// point with the precondition checks of the public contract.
pub fn field_ops(x: &FieldElement, y: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    match op {
        FieldOp::Add => x.add(y),
        FieldOp::Sub => x.sub(y),
        FieldOp::Mul => x.mul(y),
        FieldOp::Div => x.div(y),
    }
}

/// Smallest generator of F_p^* as a field element.
pub fn find_generator(field: &PrimeField) -> Result<FieldElement> {
    let g = fq::find_generator(field.modulus())?;
    Ok(FieldElement::new(field.spec(), Value::Finite(g)))
}

// ---------------------------------------------------------------------------
// display and parsing
// ---------------------------------------------------------------------------

fn fmt_poly(f: &Poly, var: char, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if f.is_empty() {
        return write!(out, "0");
    }
    let mut first = true;
    for (k, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !first {
            write!(out, "+")?;
        }
        first = false;
        match (k, c) {
            (0, c) => write!(out, "{c}")?,
            (1, 1) => write!(out, "{var}")?,
            (1, c) => write!(out, "{c}{var}")?,
            (k, 1) => write!(out, "{var}^{k}")?,
            (k, c) => write!(out, "{c}{var}^{k}")?,
        }
    }
    Ok(())
}

struct PolyDisp<'a>(&'a Poly, char);

impl fmt::Display for PolyDisp<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self.0, self.1, f)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(c) => write!(f, "Fp({})", c.p()),
            FieldSpec::Ext(c) => {
                write!(f, "Fq({},{};{})", c.p(), c.alpha(), PolyDisp(&c.modulus().to_vec(), 'x'))
            }
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::FunctionField(c) => {
                if c.is_prime_field() {
                    write!(f, "Fq(t;{})", c.p())
                } else {
                    write!(
                        f,
                        "Fq(t;{},{};{})",
                        c.p(),
                        c.alpha(),
                        PolyDisp(&c.modulus().to_vec(), 'x')
                    )
                }
            }
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_value(&self.value, f)
    }
}

pub(crate) fn fmt_value(v: &Value, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match v {
        Value::Finite(x) => write!(f, "{x}"),
        Value::Rational(x) => {
            if x.denom().is_one() {
                write!(f, "{}", x.numer())
            } else {
                write!(f, "{}/{}", x.numer(), x.denom())
            }
        }
        Value::FuncField(x) => {
            if x.den == vec![1] {
                write!(f, "{}", PolyDisp(&x.num, 't'))
            } else {
                write!(f, "({})/({})", PolyDisp(&x.num, 't'), PolyDisp(&x.den, 't'))
            }
        }
    }
}

pub struct ValueDisplay<'a>(pub &'a Value);

impl fmt::Display for ValueDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_value(self.0, f)
    }
}

/// Parse a field literal: `Fp(101)`, `Fq(2,2;x^2+x+1)`, `Q`, `Fq(t;2)`,
/// `Fq(t;2,2;x^2+x+1)`.
pub fn parse_field(s: &str) -> Result<FieldSpec> {
    let s = s.trim();
    if s == "Q" {
        return Ok(FieldSpec::Rational);
    }
    if let Some(body) = s.strip_prefix("Fp(").and_then(|r| r.strip_suffix(')')) {
        let p: u64 = body.trim().parse().map_err(|_| Error::Parse(format!("bad prime: {body}")))?;
        return FieldSpec::prime(p);
    }
    if let Some(body) = s.strip_prefix("Fq(").and_then(|r| r.strip_suffix(')')) {
        let body = body.trim();
        if let Some(rest) = body.strip_prefix("t;") {
            let ctx = parse_fq_body(rest.trim())?;
            return Ok(FieldSpec::FunctionField(Arc::new(ctx)));
        }
        let ctx = parse_fq_body(body)?;
        if ctx.is_prime_field() {
            // `Fq(2)` is accepted as shorthand for the function-field base
            return Ok(FieldSpec::FunctionField(Arc::new(ctx)));
        }
        return Ok(FieldSpec::Ext(Arc::new(ctx)));
    }
    Err(Error::Parse(format!("unrecognized field literal: {s}")))
}

fn parse_fq_body(body: &str) -> Result<FqCtx> {
    if let Some((params, modstr)) = body.split_once(';') {
        let (pstr, astr) = params
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected p,alpha in {body}")))?;
        let p: u64 =
            pstr.trim().parse().map_err(|_| Error::Parse(format!("bad prime: {pstr}")))?;
        let alpha: usize =
            astr.trim().parse().map_err(|_| Error::Parse(format!("bad degree: {astr}")))?;
        let modulus = parse_poly(modstr.trim(), 'x', p)?;
        if modulus.len() != alpha + 1 {
            return Err(Error::Parse(format!("modulus degree != {alpha}")));
        }
        FqCtx::extension(p, modulus)
    } else {
        let p: u64 =
            body.trim().parse().map_err(|_| Error::Parse(format!("bad prime: {body}")))?;
        FqCtx::prime(p)
    }
}

/// Parse a polynomial in `var` with integer coefficients reduced mod p.
pub fn parse_poly(s: &str, var: char, p: u64) -> Result<Poly> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut coeffs: Vec<i128> = Vec::new();
    let mut term = String::new();
    let mut terms: Vec<String> = Vec::new();
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !s.chars().nth(i - 1).map_or(false, |c| c == '^') {
            terms.push(term.clone());
            term.clear();
            if ch == '-' {
                term.push('-');
            }
        } else if ch == '+' {
            // leading plus
        } else {
            term.push(ch);
        }
    }
    terms.push(term);
    for t in terms {
        if t.is_empty() {
            continue;
        }
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (-1i128, rest),
            None => (1i128, t.as_str()),
        };
        let (coef, pow): (i128, usize) = if let Some(pos) = body.find(var) {
            let cpart = &body[..pos];
            let coef = if cpart.is_empty() {
                1
            } else {
                cpart
                    .trim_end_matches('*')
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient: {cpart}")))?
            };
            let rest = &body[pos + var.len_utf8()..];
            let pow = if rest.is_empty() {
                1
            } else if let Some(e) = rest.strip_prefix('^') {
                e.parse().map_err(|_| Error::Parse(format!("bad exponent: {e}")))?
            } else {
                return Err(Error::Parse(format!("bad term: {body}")));
            };
            (coef, pow)
        } else {
            (body.parse().map_err(|_| Error::Parse(format!("bad constant: {body}")))?, 0)
        };
        if coeffs.len() <= pow {
            coeffs.resize(pow + 1, 0);
        }
        coeffs[pow] += sign * coef;
    }
    let pp = p as i128;
    Ok(poly::trim(coeffs.iter().map(|&c| (((c % pp) + pp) % pp) as u64).collect()))
}

/// Parse an element literal in the given field: decimal residues, `a/b`
/// fractions, polynomial strings like `t^2+1`, and `(num)/(den)` rational
/// functions.
pub fn parse_element(field: &FieldSpec, s: &str) -> Result<FieldElement> {
    let s = s.trim();
    let value = match field {
        FieldSpec::Prime(c) | FieldSpec::Ext(c) => {
            if let Ok(n) = s.parse::<i128>() {
                if matches!(field, FieldSpec::Prime(_)) {
                    Value::Finite(c.from_int(n))
                } else if n >= 0 && (n as u128) < c.q() as u128 {
                    // extension-field elements are written as their index
                    Value::Finite(n as u64)
                } else {
                    Value::Finite(c.from_int(n))
                }
            } else {
                // polynomial in x encoding the residue class
                let coeffs = parse_poly(s, 'x', c.p())?;
                if coeffs.len() > c.alpha() {
                    return Err(Error::Parse(format!("element degree too large: {s}")));
                }
                let mut idx = 0u64;
                for &co in coeffs.iter().rev() {
                    idx = idx * c.p() + co;
                }
                Value::Finite(idx)
            }
        }
        FieldSpec::Rational => {
            if let Some((n, d)) = s.split_once('/') {
                let n: BigInt =
                    n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator: {n}")))?;
                let d: BigInt =
                    d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator: {d}")))?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Value::Rational(BigRational::new(n, d))
            } else {
                let n: BigInt =
                    s.parse().map_err(|_| Error::Parse(format!("bad rational: {s}")))?;
                Value::Rational(BigRational::from_integer(n))
            }
        }
        FieldSpec::FunctionField(c) => {
            let (numstr, denstr) = split_ff_fraction(s);
            let num = parse_poly(numstr, 't', c.p())?;
            let den = match denstr {
                Some(d) => parse_poly(d, 't', c.p())?,
                None => vec![1],
            };
            Value::FuncField(FFRatio::new(c, num, den)?)
        }
    };
    Ok(FieldElement::new(field.clone(), value))
}

fn split_ff_fraction(s: &str) -> (&str, Option<&str>) {
    // accepted shapes: poly | (poly)/(poly) | poly/poly (no nested parens)
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('(') {
        if let Some(close) = rest.find(')') {
            let num = &rest[..close];
            let tail = rest[close + 1..].trim();
            if let Some(d) = tail.strip_prefix('/') {
                let d = d.trim().trim_start_matches('(').trim_end_matches(')');
                return (num, Some(d));
            }
            if tail.is_empty() {
                return (num, None);
            }
        }
    }
    match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    }
}

/// Parse `elem @ field`, the qualified element literal.
pub fn parse_qualified_element(s: &str) -> Result<FieldElement> {
    let (elem, field) =
        s.rsplit_once('@').ok_or_else(|| Error::Parse(format!("expected `elem @ field`: {s}")))?;
    let field = parse_field(field.trim())?;
    parse_element(&field, elem.trim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn field_ops_examples() {
        let f5 = fp(5);
        let a = FieldElement::from_int(&f5, 3);
        let b = FieldElement::from_int(&f5, 4);
        assert_eq!(field_ops(&a, &b, FieldOp::Add).unwrap().value(), &Value::Finite(2));
        let two = FieldElement::from_int(&f5, 2);
        let three = FieldElement::from_int(&f5, 3);
        assert_eq!(field_ops(&two, &three, FieldOp::Div).unwrap().value(), &Value::Finite(4));

        let q = FieldSpec::rational();
        let half = parse_element(&q, "1/2").unwrap();
        let third = parse_element(&q, "1/3").unwrap();
        let sum = field_ops(&half, &third, FieldOp::Add).unwrap();
        assert_eq!(sum.to_string(), "5/6");
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        let f5 = fp(5);
        let a = FieldElement::from_int(&f5, 3);
        let z = FieldElement::from_int(&f5, 0);
        assert_eq!(field_ops(&a, &z, FieldOp::Div), Err(Error::DivisionByZero));
        let f7 = fp(7);
        let b = FieldElement::from_int(&f7, 3);
        assert_eq!(field_ops(&a, &b, FieldOp::Add), Err(Error::FieldMismatch));
    }

    #[test]
    fn generator_wrapper() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(find_generator(&f5).unwrap().value(), &Value::Finite(2));
        assert!(PrimeField::new(4).is_err());
    }

    #[test]
    fn parse_and_display_roundtrip() {
        for lit in ["Fp(101)", "Q", "Fq(t;2)", "Fq(2,2;x^2+x+1)"] {
            let f = parse_field(lit).unwrap();
            assert_eq!(f.to_string(), lit);
        }
        let ff = parse_field("Fq(t;2)").unwrap();
        let e = parse_element(&ff, "(t^2+1)/(t+1)").unwrap();
        // over F_2, t^2+1 = (t+1)^2, so the reduced form is t+1
        assert_eq!(e.to_string(), "t+1");
        let e2 = parse_qualified_element("(t^2+1)/(t+1) @ Fq(2)").unwrap();
        assert_eq!(e, e2);
    }

    #[test]
    fn ff_arithmetic_canonical() {
        let ff = parse_field("Fq(t;2)").unwrap();
        let t = parse_element(&ff, "t").unwrap();
        let t2 = t.mul(&t).unwrap();
        assert_eq!(t2.to_string(), "t^2");
        let s = t.add(&t).unwrap();
        assert!(s.is_zero(), "char 2");
        let inv = FieldElement::new(ff.clone(), ff.inv(t.value()).unwrap());
        assert_eq!(inv.mul(&t).unwrap(), FieldElement::from_int(&ff, 1));
    }

    #[test]
    fn canonical_idempotence_rationals() {
        let q = FieldSpec::rational();
        let a = parse_element(&q, "4/8").unwrap();
        let b = parse_element(&q, "1/2").unwrap();
        assert_eq!(a, b);
        let c = parse_element(&q, "-3/-6").unwrap();
        assert_eq!(c, b);
    }

    #[test]
    fn value_ordering_ff() {
        let ff = parse_field("Fq(t;2)").unwrap();
        let sorted: Vec<String> = {
            let mut v = ["t^2", "1", "t", "t+1", "0"]
                .iter()
                .map(|s| parse_element(&ff, s).unwrap())
                .collect::<Vec<_>>();
            v.sort_by(|a, b| a.value().cmp(b.value()));
            v.iter().map(|e| e.to_string()).collect()
        };
        assert_eq!(sorted, vec!["0", "1", "t", "t+1", "t^2"]);
    }
}
