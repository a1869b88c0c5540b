//! Recursive-descent parser for the pattern grammar.
//!
//! A piece is read as a sum of terms, each term a product of an optional
//! rational coefficient and atoms (`x`, `y`, `y/x`, parenthesized sums).
//! The resulting polynomial is then classified into a [`PatternPiece`].
//! Products that would raise a variable to degree two are rejected.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{normalize_linear, BilinearPiece, Pattern, PatternError, PatternPiece};
use crate::arith::Rational;

/// Exponents of `x` and `y`. `(-1, 1)` is the ratio monomial `y/x`.
type Monomial = (i8, i8);

const ONE: Monomial = (0, 0);
const X: Monomial = (1, 0);
const Y: Monomial = (0, 1);
const XY: Monomial = (1, 1);
const RATIO: Monomial = (-1, 1);

#[derive(Debug, Clone, Default)]
struct Poly(BTreeMap<Monomial, Rational>);

impl Poly {
    fn constant(q: Rational) -> Self {
        Poly::monomial(ONE, q)
    }

    fn monomial(m: Monomial, q: Rational) -> Self {
        let mut map = BTreeMap::new();
        if !q.is_zero() {
            map.insert(m, q);
        }
        Poly(map)
    }

    fn add(&mut self, other: Poly, sign: bool) {
        for (m, q) in other.0 {
            let entry = self.0.entry(m).or_insert_with(Rational::zero);
            if sign {
                *entry += q;
            } else {
                *entry -= q;
            }
        }
        self.0.retain(|_, q| !q.is_zero());
    }

    fn mul(&self, other: &Poly, pos: usize) -> Result<Poly, PatternError> {
        let mut out = Poly::default();
        for (ma, qa) in &self.0 {
            for (mb, qb) in &other.0 {
                let m = (ma.0 + mb.0, ma.1 + mb.1);
                if ![ONE, X, Y, XY, RATIO].contains(&m) {
                    return Err(PatternError::Unsupported {
                        pos,
                        msg: "only products of one x-factor and one y-factor are supported".into(),
                    });
                }
                out.add(Poly::monomial(m, qa * qb), true);
            }
        }
        Ok(out)
    }

    fn coef(&self, m: Monomial) -> Rational {
        self.0.get(&m).cloned().unwrap_or_else(Rational::zero)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PatternError> {
        Err(PatternError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<(), PatternError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn uint(&mut self) -> Result<BigInt, PatternError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    /// `uint ("/" uint)?`, where the slash is only taken when a number follows.
    fn coefficient(&mut self) -> Result<Rational, PatternError> {
        let num = self.uint()?;
        let save = self.pos;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                let den = self.uint()?;
                if den.is_zero() {
                    return self.err("zero denominator");
                }
                return Ok(Rational::new(num, den));
            }
            self.pos = save;
        }
        Ok(Rational::from_integer(num))
    }

    fn atom(&mut self) -> Result<Option<Poly>, PatternError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Some(Poly::monomial(X, Rational::one())))
            }
            Some(b'y') => {
                self.pos += 1;
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    if self.peek() == Some(b'x') {
                        self.pos += 1;
                        return Ok(Some(Poly::monomial(RATIO, Rational::one())));
                    }
                    self.pos = save;
                    return self.err("only y/x is supported after '/'");
                }
                Ok(Some(Poly::monomial(Y, Rational::one())))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                self.expect(b')')?;
                Ok(Some(inner))
            }
            _ => Ok(None),
        }
    }

    fn term(&mut self) -> Result<Poly, PatternError> {
        let start = self.pos;
        let mut acc = match self.peek() {
            Some(c) if c.is_ascii_digit() => Poly::constant(self.coefficient()?),
            _ => match self.atom()? {
                Some(p) => p,
                None => return self.err("expected a term"),
            },
        };
        while let Some(a) = self.atom()? {
            acc = acc.mul(&a, start)?;
        }
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return self.err("coefficient must come first in a term");
        }
        Ok(acc)
    }

    fn sum(&mut self) -> Result<Poly, PatternError> {
        let mut sign = true;
        match self.peek() {
            Some(b'-') => {
                sign = false;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = Poly::default();
        acc.add(self.term()?, sign);
        loop {
            match self.peek() {
                Some(b'+') => sign = true,
                Some(b'-') => sign = false,
                _ => return Ok(acc),
            }
            self.pos += 1;
            acc.add(self.term()?, sign);
        }
    }
}

fn classify(poly: Poly, pos: usize) -> Result<PatternPiece, PatternError> {
    let unsupported = |msg: &str| {
        Err(PatternError::Unsupported {
            pos,
            msg: msg.to_string(),
        })
    };
    if poly.0.contains_key(&RATIO) {
        if poly.0.len() > 1 {
            return unsupported("a ratio piece cannot be combined with other terms");
        }
        let q = poly.coef(RATIO);
        if !q.is_positive() {
            return unsupported("ratio coefficient must be positive");
        }
        return Ok(PatternPiece::Ratio { q });
    }
    let (c, d, e, f) = (poly.coef(XY), poly.coef(X), poly.coef(Y), poly.coef(ONE));
    if !c.is_zero() {
        if !c.is_positive() {
            return Err(PatternError::NotFactorable {
                pos,
                msg: format!("coefficient of xy must be positive (c > 0), got {c}"),
            });
        }
        if &c * &f != &d * &e {
            return Err(PatternError::NotFactorable {
                pos,
                msg: format!(
                    "c*f = d*e fails: c={c}, d={d}, e={e}, f={f} (constant term must be {})",
                    &d * &e / &c
                ),
            });
        }
        return Ok(PatternPiece::Bilinear(BilinearPiece::new(c, d, e)?));
    }
    if !f.is_zero() {
        return unsupported("pieces with a constant term need an xy term");
    }
    if d.is_zero() && e.is_zero() {
        return unsupported("piece is identically zero");
    }
    let as_i64 = |q: &Rational| q.is_integer().then(|| q.to_integer().to_i64()).flatten();
    match (as_i64(&d), as_i64(&e)) {
        (Some(cx), Some(cy)) => Ok(normalize_linear(cx, cy)),
        _ => unsupported("linear pieces need integer coefficients"),
    }
}

/// Parses and normalizes a comma-separated pattern.
pub fn parse_pattern(text: &str) -> Result<Pattern, PatternError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut pieces = Vec::new();
    loop {
        parser.skip_ws();
        let start = parser.pos;
        let poly = parser.sum()?;
        pieces.push(classify(poly, start)?);
        match parser.peek() {
            Some(b',') => parser.pos += 1,
            None => break,
            Some(c) => return parser.err(format!("unexpected '{}'", c as char)),
        }
    }
    Pattern::from_pieces(pieces, text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn bi(c: Rational, d: Rational, e: Rational) -> PatternPiece {
        PatternPiece::Bilinear(BilinearPiece::new(c, d, e).unwrap())
    }

    #[test]
    fn product_form() {
        let p = parse_pattern("x, y, (x+1)(y+2)").unwrap();
        assert_eq!(p.pieces(), &[PatternPiece::X, PatternPiece::Y, bi(int(1), int(2), int(1))]);
    }

    #[test]
    fn expanded_form() {
        let p = parse_pattern("x, y, 2xy + x").unwrap();
        assert_eq!(p.extra_pieces(), &[bi(int(2), int(1), int(0))]);
    }

    #[test]
    fn linear_and_ratio() {
        let p = parse_pattern("x, y, 3x - 2y, 5 y/x").unwrap();
        assert_eq!(
            p.extra_pieces(),
            &[PatternPiece::Linear { cx: 3, cy: -2 }, PatternPiece::Ratio { q: int(5) }]
        );
    }

    #[test]
    fn assorted_spellings() {
        let cases = [
            ("x,y,x(18y+1)", bi(int(18), int(1), int(0))),
            ("x,y,(4x+1)(y+1)", bi(int(4), int(4), int(1))),
            ("x,y,(x+2)y", bi(int(1), int(0), int(2))),
            ("x,y,y(x+2)", bi(int(1), int(0), int(2))),
            ("x,y,x(3y-2)", bi(int(3), int(-2), int(0))),
            ("x,y,1/2xy", bi(rat(1, 2), int(0), int(0))),
            ("x,y,(1/2)(x+2)(y+2)", bi(rat(1, 2), int(1), int(1))),
            ("x,y,1/3 (x+3)(y+3)", bi(rat(1, 3), int(1), int(1))),
            ("x,y,xy+x+y+1", bi(int(1), int(1), int(1))),
            ("x , y , (x - 1)(y - 1)", bi(int(1), int(-1), int(-1))),
            ("x,y,(3/2)y/x", PatternPiece::Ratio { q: rat(3, 2) }),
            ("x,y,y/x", PatternPiece::Ratio { q: int(1) }),
            ("x,y,x+y", PatternPiece::Linear { cx: 1, cy: 1 }),
            ("x,y,-2y", PatternPiece::Linear { cx: 0, cy: -2 }),
        ];
        for (text, piece) in cases {
            let p = parse_pattern(text).unwrap_or_else(|e| panic!("{text}: {e}"));
            assert_eq!(p.extra_pieces(), &[piece], "{text}");
        }
    }

    #[test]
    fn duplicates_are_removed() {
        let p = parse_pattern("x, y, xy, xy, x, (x)(y)").unwrap();
        assert_eq!(p.pieces().len(), 3);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_pattern("x, y, (x+1(y+2)").unwrap_err();
        assert!(matches!(e, PatternError::Syntax { pos: 15, .. }), "{e:?}");
        let e = parse_pattern("x, y, x*y").unwrap_err();
        assert!(matches!(e, PatternError::Syntax { pos: 7, .. }), "{e:?}");
        let e = parse_pattern("x, y,").unwrap_err();
        assert!(matches!(e, PatternError::Syntax { .. }), "{e:?}");
        let e = parse_pattern("x, y, x/y").unwrap_err();
        assert!(matches!(e, PatternError::Syntax { .. }), "{e:?}");
    }

    #[test]
    fn rank_and_sign_violations() {
        let e = parse_pattern("x, y, xy + x + y").unwrap_err();
        assert!(matches!(e, PatternError::NotFactorable { pos: 6, .. }), "{e:?}");
        assert!(e.to_string().contains("c*f = d*e"));
        let e = parse_pattern("x, y, -xy").unwrap_err();
        assert!(e.to_string().contains("c > 0"), "{e}");
    }

    #[test]
    fn unsupported_shapes() {
        assert!(matches!(parse_pattern("x, y, x(x+1)"), Err(PatternError::Unsupported { .. })));
        assert!(matches!(parse_pattern("x, y, x + 1"), Err(PatternError::Unsupported { .. })));
        assert!(matches!(parse_pattern("x, y, y/x + x"), Err(PatternError::Unsupported { .. })));
        assert!(matches!(parse_pattern("x, y, 1/2 x"), Err(PatternError::Unsupported { .. })));
    }
}
