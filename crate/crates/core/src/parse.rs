//! Text syntax for monomials, elements, signatures and sigpairs.
//!
//! Products are `*`-separated factors: rationals (`3`, `1/2`), variables
//! with optional exponents (`x`, `y^5`) and index tokens `e_i` / `E_i`.
//! In the ring setting a signature carries one index token (its position);
//! in the module setting the part index is written `E_j` and the signature
//! position `e_i`.

use crate::coeff::{parse_rational, Coeff};
use crate::context::Context;
use crate::element::{Element, Term};
use crate::error::{Error, Result};
use crate::monomial::{Exponents, Monomial};
use crate::sig::Signature;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A parse failure at a 1-based column of a single line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Located {
    pub column: usize,
    pub message: String,
}

impl Located {
    fn new(column: usize, message: impl Into<String>) -> Self {
        Located {
            column,
            message: message.into(),
        }
    }

    pub(crate) fn at_line(self, line: usize, offset: usize) -> Error {
        Error::parse(line, self.column + offset, self.message)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum IndexKind {
    Lower,
    Upper,
}

struct Product {
    coeff: BigRational,
    exps: Exponents,
    indices: Vec<(IndexKind, u32, usize)>,
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            s: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> &'a str {
        let start = self.pos;
        while self.pos < self.s.len() && f(self.s[self.pos]) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).expect("ascii slice")
    }

    fn digits(&mut self) -> Option<(u64, usize)> {
        self.skip_ws();
        let col = self.col();
        let d = self.take_while(|c| c.is_ascii_digit());
        if d.is_empty() {
            return None;
        }
        d.parse().ok().map(|v| (v, col))
    }
}

fn parse_product(cur: &mut Cursor<'_>, ctx: &Context) -> Result<Product, Located> {
    let n = ctx.nvars();
    let mut p = Product {
        coeff: BigRational::one(),
        exps: Exponents::from_elem(0, n),
        indices: Vec::new(),
    };
    loop {
        cur.skip_ws();
        let col = cur.col();
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = cur.take_while(|c| c.is_ascii_digit());
                let mut text = num.to_string();
                if cur.peek() == Some(b'/') {
                    cur.pos += 1;
                    cur.skip_ws();
                    let den = cur.take_while(|c| c.is_ascii_digit());
                    if den.is_empty() {
                        return Err(Located::new(cur.col(), "expected a denominator"));
                    }
                    text.push('/');
                    text.push_str(den);
                }
                let q = parse_rational(&text).map_err(|e| Located::new(col, e.to_string()))?;
                p.coeff *= q;
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = cur.take_while(|c| c.is_ascii_alphanumeric());
                if cur.s.get(cur.pos) == Some(&b'_') {
                    let kind = match name {
                        "e" => IndexKind::Lower,
                        "E" => IndexKind::Upper,
                        _ => return Err(Located::new(col, format!("unknown index token `{name}_`"))),
                    };
                    cur.pos += 1;
                    let (v, vcol) = cur
                        .digits()
                        .ok_or_else(|| Located::new(cur.col(), "expected an index"))?;
                    if v == 0 || v > u32::MAX as u64 {
                        return Err(Located::new(vcol, "indices are positive"));
                    }
                    p.indices.push((kind, v as u32, col));
                } else {
                    let i = ctx
                        .var_index(name)
                        .ok_or_else(|| Located::new(col, format!("unknown variable `{name}`")))?;
                    let mut e = 1u64;
                    if cur.peek() == Some(b'^') {
                        cur.pos += 1;
                        let (v, _) = cur
                            .digits()
                            .ok_or_else(|| Located::new(cur.col(), "expected an exponent"))?;
                        e = v;
                    }
                    let total = p.exps[i] as u64 + e;
                    if total > u32::MAX as u64 {
                        return Err(Located::new(col, "exponent overflow"));
                    }
                    p.exps[i] = total as u32;
                }
            }
            Some(c) => return Err(Located::new(col, format!("unexpected `{}`", c as char))),
            None => return Err(Located::new(col, "unexpected end of input")),
        }
        if cur.peek() == Some(b'*') {
            cur.pos += 1;
        } else {
            return Ok(p);
        }
    }
}

fn part_index(p: &Product, ctx: &Context, signature: bool) -> Result<(Option<u32>, Option<u32>), Located> {
    let mut part = None;
    let mut pos = None;
    let module = ctx.module_rank();
    for &(kind, v, col) in &p.indices {
        let slot = match (module, kind, signature) {
            (Some(_), IndexKind::Upper, _) => &mut part,
            (Some(_), IndexKind::Lower, false) => &mut part,
            (Some(_), IndexKind::Lower, true) => &mut pos,
            (None, _, true) => &mut pos,
            (None, _, false) => {
                return Err(Located::new(col, "module index in the ring setting"));
            }
        };
        if slot.replace(v).is_some() {
            return Err(Located::new(col, "repeated index"));
        }
    }
    if let (Some(rank), Some(i)) = (module, part) {
        if i > rank {
            return Err(Located::new(1, format!("index {i} exceeds module rank {rank}")));
        }
    }
    if module.is_some() && part.is_none() {
        return Err(Located::new(1, "module monomial without an index"));
    }
    Ok((part, pos))
}

pub(crate) fn element_located(text: &str, ctx: &Context) -> Result<Element, Located> {
    let mut cur = Cursor::new(text);
    let mut terms = Vec::new();
    if cur.peek().is_none() {
        return Err(Located::new(1, "empty element"));
    }
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            Some(b'-') => {
                negative = true;
                cur.pos += 1;
            }
            Some(b'+') => cur.pos += 1,
            None => break,
            Some(c) if !first => {
                return Err(Located::new(cur.col(), format!("expected `+` or `-`, found `{}`", c as char)));
            }
            _ => {}
        }
        first = false;
        let p = parse_product(&mut cur, ctx)?;
        let (index, _) = part_index(&p, ctx, false)?;
        let q = if negative { -p.coeff } else { p.coeff };
        if q.is_zero() {
            continue;
        }
        let coeff: Coeff = ctx.field.from_rational(&q).map_err(|e| Located::new(1, e.to_string()))?;
        terms.push(Term {
            mono: Monomial::new(p.exps, index),
            coeff,
        });
    }
    Ok(Element::from_terms(terms, &ctx.order))
}

pub(crate) fn monomial_located(text: &str, ctx: &Context) -> Result<Monomial, Located> {
    let t = text.trim();
    if t == "0" {
        return Ok(Monomial::zero());
    }
    let mut cur = Cursor::new(text);
    let p = parse_product(&mut cur, ctx)?;
    if cur.peek().is_some() {
        return Err(Located::new(cur.col(), "trailing input"));
    }
    if !p.coeff.is_one() {
        return Err(Located::new(1, "monomials carry no coefficient"));
    }
    let (index, _) = part_index(&p, ctx, false)?;
    Ok(Monomial::new(p.exps, index))
}

pub(crate) fn signature_located(text: &str, ctx: &Context) -> Result<Signature, Located> {
    let mut cur = Cursor::new(text);
    let p = parse_product(&mut cur, ctx)?;
    if cur.peek().is_some() {
        return Err(Located::new(cur.col(), "trailing input"));
    }
    if !p.coeff.is_one() {
        return Err(Located::new(1, "signatures carry no coefficient"));
    }
    let (index, pos) = part_index(&p, ctx, true)?;
    let pos = pos.ok_or_else(|| Located::new(1, "signature without a position `e_i`"))?;
    Ok(Signature::new(Monomial::new(p.exps, index), pos))
}

fn single_line(r: Result<Element, Located>) -> Result<Element> {
    r.map_err(|l| l.at_line(1, 0))
}

pub fn parse_element(text: &str, ctx: &Context) -> Result<Element> {
    single_line(element_located(text, ctx))
}

pub fn parse_monomial(text: &str, ctx: &Context) -> Result<Monomial> {
    monomial_located(text, ctx).map_err(|l| l.at_line(1, 0))
}

pub fn parse_signature(text: &str, ctx: &Context) -> Result<Signature> {
    signature_located(text, ctx).map_err(|l| l.at_line(1, 0))
}

/// Parses `part @ signature`.
pub fn parse_sigpair(text: &str, ctx: &Context) -> Result<(Element, Signature)> {
    let Some((part, sig)) = text.split_once('@') else {
        return Err(Error::parse(1, 1, "expected `part @ signature`"));
    };
    let e = element_located(part, ctx).map_err(|l| l.at_line(1, 0))?;
    let s = signature_located(sig, ctx).map_err(|l| l.at_line(1, part.len() + 1))?;
    Ok((e, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{Position, ScalarOrder};

    fn ring() -> Context {
        Context::ring(&["x", "y"], ScalarOrder::DegRevLex)
    }

    #[test]
    fn parses_rational_coefficients_and_exponents() {
        let c = Context::ring(&["f", "e", "d", "c", "b", "a"], ScalarOrder::DegRevLex);
        let e = parse_element("b*c + a*d + b*e + c*f - 1/2*d", &c).unwrap();
        assert_eq!(e.len(), 5);
        assert_eq!(e.display(&c.vars).to_string(), "b*c + a*d + b*e + c*f - 1/2*d");
    }

    #[test]
    fn reports_columns() {
        let err = parse_element("x + z", &ring()).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 1,
                column: 5,
                message: "unknown variable `z`".into()
            }
        );
        assert!(parse_element("x + 1/0", &ring()).is_err());
        assert!(parse_element("x y", &ring()).is_err());
        assert!(parse_element("", &ring()).is_err());
    }

    #[test]
    fn monomials_and_signatures() {
        let c = ring();
        assert_eq!(parse_monomial("x^2*y^5", &c).unwrap(), Monomial::from_slice(&[2, 5]));
        assert!(parse_monomial("0", &c).unwrap().is_zero());
        assert!(parse_monomial("1", &c).unwrap().is_one());
        let s = parse_signature("x^2*y^5*e_2", &c).unwrap();
        assert_eq!(s, Signature::new(Monomial::from_slice(&[2, 5]), 2));
        assert_eq!(parse_signature("e_1", &c).unwrap().to_string_with(&c), "e_1");
        assert!(parse_signature("x^2", &c).is_err());
    }

    #[test]
    fn module_setting_indices() {
        let c = ring().with_module(Position::Top, 2);
        let e = parse_element("x*e_1 + y*e_2", &c).unwrap();
        assert_eq!(e.lm().index(), Some(2));
        assert!(parse_element("x", &c).is_err());
        assert!(parse_element("x*e_3", &c).is_err());
        let s = parse_signature("x*E_2*e_1", &c).unwrap();
        assert_eq!(s.pos, 1);
        assert_eq!(s.term.index(), Some(2));
        assert_eq!(s.to_string_with(&c), "x*E_2*e_1");
    }

    #[test]
    fn sigpair_text() {
        let c = ring();
        let (p, s) = parse_sigpair("x^2*y^2 - 1 @ x^2*y^2*e_1", &c).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(s.pos, 1);
    }
}
