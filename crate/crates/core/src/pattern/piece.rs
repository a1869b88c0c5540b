use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PatternError;
use crate::arith::Rational;

/// A product piece `q(ax+n)(by+m)` held in expanded coefficients
/// `c xy + d x + e y + f` with `c > 0` and `f = de/c`.
///
/// The five factored parameters are redundant up to rescaling, so two pieces
/// are equal exactly when their `(c, d, e)` agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BilinearPiece {
    c: Rational,
    d: Rational,
    e: Rational,
}

impl BilinearPiece {
    pub fn new(c: Rational, d: Rational, e: Rational) -> Result<Self, PatternError> {
        if !c.is_positive() {
            return Err(PatternError::NotFactorable {
                pos: 0,
                msg: format!("coefficient of xy must be positive, got {c}"),
            });
        }
        Ok(BilinearPiece { c, d, e })
    }

    /// Coefficient of `xy`.
    pub fn c(&self) -> &Rational {
        &self.c
    }

    /// Coefficient of `x`.
    pub fn d(&self) -> &Rational {
        &self.d
    }

    /// Coefficient of `y`.
    pub fn e(&self) -> &Rational {
        &self.e
    }

    /// Constant term, `de/c`.
    pub fn f(&self) -> Rational {
        &self.d * &self.e / &self.c
    }

    /// `true` when the piece is a pure product `c xy`.
    pub fn is_pure(&self) -> bool {
        self.d.is_zero() && self.e.is_zero()
    }

    /// The piece with `x` and `y` exchanged: `(c, d, e) -> (c, e, d)`.
    pub fn swapped(&self) -> Self {
        BilinearPiece {
            c: self.c.clone(),
            d: self.e.clone(),
            e: self.d.clone(),
        }
    }

    /// The same piece divided by a positive rational.
    pub(crate) fn scaled_down(&self, h: &Rational) -> Self {
        BilinearPiece {
            c: &self.c / h,
            d: &self.d / h,
            e: &self.e / h,
        }
    }

    /// Exact value at `(x, y)`.
    pub fn value(&self, x: &Rational, y: &Rational) -> Rational {
        &self.c * x * y + &self.d * x + &self.e * y + self.f()
    }

    /// Renders the piece as a product of two linear factors, choosing the
    /// smallest integer leading coefficient in each factor.
    pub fn factored_display(&self) -> String {
        let x_shift = &self.e / &self.c;
        let y_shift = &self.d / &self.c;
        let a = x_shift.denom().clone();
        let b = y_shift.denom().clone();
        let n = x_shift.numer().clone();
        let m = y_shift.numer().clone();
        let q = &self.c / Rational::from_integer(&a * &b);
        let mut out = String::new();
        if !q.is_one() {
            if q.is_integer() {
                out.push_str(&q.to_string());
            } else {
                out.push_str(&format!("({q})"));
            }
        }
        out.push_str(&linear_factor(&a, "x", &n));
        out.push_str(&linear_factor(&b, "y", &m));
        out
    }
}

fn linear_factor(lead: &BigInt, var: &str, shift: &BigInt) -> String {
    let lead = if lead.is_one() {
        String::new()
    } else {
        lead.to_string()
    };
    if shift.is_zero() {
        if lead.is_empty() {
            var.to_string()
        } else {
            format!("({lead}{var})")
        }
    } else if shift.is_negative() {
        format!("({lead}{var}-{})", -shift)
    } else {
        format!("({lead}{var}+{shift})")
    }
}

impl fmt::Display for BilinearPiece {
    /// Expanded sum-of-monomials form, e.g. `2xy + x` or `xy + 2x + y + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [
            (&self.c, "xy"),
            (&self.d, "x"),
            (&self.e, "y"),
            (&self.f(), ""),
        ];
        write_terms(f, &terms)
    }
}

pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(&Rational, &str)]) -> fmt::Result {
    let mut first = true;
    for (coef, mono) in terms {
        if coef.is_zero() {
            continue;
        }
        let mag = coef.abs();
        if first {
            if coef.is_negative() {
                f.write_str("-")?;
            }
        } else if coef.is_negative() {
            f.write_str(" - ")?;
        } else {
            f.write_str(" + ")?;
        }
        first = false;
        if !mag.is_one() || mono.is_empty() {
            write!(f, "{mag}")?;
            if !mono.is_empty() && !mag.is_integer() {
                f.write_str(" ")?;
            }
        }
        f.write_str(mono)?;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// One representative `q(ax+n)(by+m)` of a bilinear piece, together with the
/// coprime parts `q = k/h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredPiece {
    pub q: Rational,
    pub a: BigInt,
    pub n: BigInt,
    pub b: BigInt,
    pub m: BigInt,
    pub k: BigInt,
    pub h: BigInt,
}

/// Expands `q(ax+n)(by+m)` into `(c, d, e) = (qab, qam, qbn)`.
pub fn to_bilinear(
    q: &Rational,
    a: &BigInt,
    b: &BigInt,
    n: &BigInt,
    m: &BigInt,
) -> Result<BilinearPiece, PatternError> {
    if !q.is_positive() || !a.is_positive() || !b.is_positive() {
        return Err(PatternError::InvalidFactor(format!(
            "need q > 0 and a, b >= 1, got q={q}, a={a}, b={b}"
        )));
    }
    let (a, b, n, m) = (
        Rational::from_integer(a.clone()),
        Rational::from_integer(b.clone()),
        Rational::from_integer(n.clone()),
        Rational::from_integer(m.clone()),
    );
    BilinearPiece::new(q * &a * &b, q * &a * &m, q * &b * &n)
}

/// Recovers a factored representative of a piece.
///
/// The choice is arbitrary, since no preferred representative exists in
/// general. This one puts both shifts over their common denominator `L`:
/// `a = b = L`, `n = L e/c`, `m = L d/c`, `q = c / L^2`.
pub fn factor_bilinear(piece: &BilinearPiece) -> FactoredPiece {
    let x_shift = piece.e() / piece.c();
    let y_shift = piece.d() / piece.c();
    let l = x_shift.denom().lcm(y_shift.denom());
    let lr = Rational::from_integer(l.clone());
    let n = (&x_shift * &lr).to_integer();
    let m = (&y_shift * &lr).to_integer();
    let q = piece.c() / (&lr * &lr);
    FactoredPiece {
        k: q.numer().clone(),
        h: q.denom().clone(),
        q,
        a: l.clone(),
        n,
        b: l,
        m,
    }
}

/// The canonical piece `(x+e)(y+d)`, i.e. `(1, d, e)`.
pub fn canonical_piece(piece: &BilinearPiece) -> BilinearPiece {
    BilinearPiece {
        c: Rational::one(),
        d: piece.d.clone(),
        e: piece.e.clone(),
    }
}

/// One piece of a pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternPiece {
    X,
    Y,
    /// `cx x + cy y` with `(cx, cy) != (0, 0)`.
    Linear { cx: i64, cy: i64 },
    /// `q y/x`, defined when the value is a positive integer.
    Ratio { q: Rational },
    Bilinear(BilinearPiece),
}

impl PatternPiece {
    pub fn swapped(&self) -> Option<PatternPiece> {
        Some(match self {
            PatternPiece::X => PatternPiece::Y,
            PatternPiece::Y => PatternPiece::X,
            PatternPiece::Linear { cx, cy } => PatternPiece::Linear { cx: *cy, cy: *cx },
            PatternPiece::Ratio { .. } => return None,
            PatternPiece::Bilinear(b) => PatternPiece::Bilinear(b.swapped()),
        })
    }

    pub fn as_bilinear(&self) -> Option<&BilinearPiece> {
        match self {
            PatternPiece::Bilinear(b) => Some(b),
            _ => None,
        }
    }
}

impl fmt::Display for PatternPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternPiece::X => f.write_str("x"),
            PatternPiece::Y => f.write_str("y"),
            PatternPiece::Linear { cx, cy } => {
                let (cx, cy) = (Rational::from_integer((*cx).into()), Rational::from_integer((*cy).into()));
                write_terms(f, &[(&cx, "x"), (&cy, "y")])
            }
            PatternPiece::Ratio { q } => write_terms(f, &[(q, "y/x")]),
            PatternPiece::Bilinear(b) => b.fmt(f),
        }
    }
}

/// Value of a piece at `(x, y)` when it is a positive integer.
///
/// Ratio pieces need `x | q y` exactly; non-positive or fractional values give
/// `None`, as does a value that does not fit in a `u64`.
pub fn evaluate_piece(piece: &PatternPiece, x: u64, y: u64) -> Option<u64> {
    let xr = Rational::from_integer(x.into());
    let yr = Rational::from_integer(y.into());
    let v = match piece {
        PatternPiece::X => xr,
        PatternPiece::Y => yr,
        PatternPiece::Linear { cx, cy } => {
            Rational::from_integer(BigInt::from(*cx) * x + BigInt::from(*cy) * y)
        }
        PatternPiece::Ratio { q } => q * yr / xr,
        PatternPiece::Bilinear(b) => b.value(&xr, &yr),
    };
    if !v.is_integer() || !v.is_positive() {
        return None;
    }
    v.to_integer().to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn bi(c: Rational, d: Rational, e: Rational) -> BilinearPiece {
        BilinearPiece::new(c, d, e).unwrap()
    }

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(
            to_bilinear(&rat(1, 2), &z(2), &z(2), &z(0), &z(1)).unwrap(),
            bi(int(2), int(1), int(0))
        );
        assert_eq!(
            to_bilinear(&int(1), &z(4), &z(1), &z(1), &z(1)).unwrap(),
            bi(int(4), int(4), int(1))
        );
        assert_eq!(
            to_bilinear(&int(1), &z(1), &z(1), &z(0), &z(1)).unwrap(),
            bi(int(1), int(1), int(0))
        );
    }

    #[test]
    fn expansion_rejects_bad_factors() {
        assert!(to_bilinear(&int(0), &z(1), &z(1), &z(0), &z(0)).is_err());
        assert!(to_bilinear(&int(1), &z(0), &z(1), &z(0), &z(0)).is_err());
    }

    #[test]
    fn factoring_examples() {
        let f = factor_bilinear(&bi(int(2), int(1), int(0)));
        assert_eq!((f.q.clone(), f.a.clone(), f.n.clone(), f.b.clone(), f.m.clone()), (rat(1, 2), z(2), z(0), z(2), z(1)));
        assert_eq!((f.k, f.h), (z(1), z(2)));

        let f = factor_bilinear(&bi(int(1), int(2), int(1)));
        assert_eq!((f.q, f.a, f.n, f.b, f.m), (int(1), z(1), z(1), z(1), z(2)));

        let f = factor_bilinear(&bi(int(1), int(0), int(0)));
        assert_eq!((f.q, f.a, f.n, f.b, f.m), (int(1), z(1), z(0), z(1), z(0)));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_piece(&bi(int(4), int(4), int(1))), bi(int(1), int(4), int(1)));
        assert_eq!(canonical_piece(&bi(int(1), int(1), int(0))), bi(int(1), int(1), int(0)));
        assert_eq!(canonical_piece(&bi(int(2), int(1), int(0))), bi(int(1), int(1), int(0)));
    }

    #[test]
    fn evaluation_examples() {
        let p = PatternPiece::Bilinear(bi(int(1), int(2), int(1)));
        assert_eq!(evaluate_piece(&p, 3, 4), Some(24));
        assert_eq!(evaluate_piece(&PatternPiece::Ratio { q: int(5) }, 2, 6), Some(15));
        assert_eq!(evaluate_piece(&PatternPiece::Ratio { q: int(1) }, 4, 6), None);
        // (x-3)(y-3) at (2,2) is 1, at (2,4) is -1
        let shifted = PatternPiece::Bilinear(bi(int(1), int(-3), int(-3)));
        assert_eq!(evaluate_piece(&shifted, 2, 2), Some(1));
        assert_eq!(evaluate_piece(&shifted, 2, 4), None);
        // (1/2)xy needs xy even
        let half = PatternPiece::Bilinear(bi(rat(1, 2), int(0), int(0)));
        assert_eq!(evaluate_piece(&half, 3, 3), None);
        assert_eq!(evaluate_piece(&half, 3, 4), Some(6));
    }

    #[test]
    fn display_forms() {
        assert_eq!(bi(int(2), int(1), int(0)).to_string(), "2xy + x");
        assert_eq!(bi(int(1), int(2), int(1)).to_string(), "xy + 2x + y + 2");
        assert_eq!(bi(rat(3, 2), int(-1), int(0)).to_string(), "3/2 xy - x");
        assert_eq!(bi(int(4), int(4), int(1)).factored_display(), "(4x+1)(y+1)");
        assert_eq!(bi(int(2), int(1), int(0)).factored_display(), "x(2y+1)");
        assert_eq!(bi(int(1), int(-1), int(-1)).factored_display(), "(x-1)(y-1)");
        assert_eq!(bi(rat(1, 2), int(1), int(1)).factored_display(), "(1/2)(x+2)(y+2)");
    }
}
