//! Integer evaluation of pattern pieces for the search loops.

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::SearchError;
use crate::arith::Rational;
use crate::pattern::{Pattern, PatternPiece};

/// A piece as `(c xy + d x + e y + f) / l` or `qn y / (qd x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Eval {
    Affine { c: i128, d: i128, e: i128, f: i128, l: i128 },
    Ratio { qn: i128, qd: i128 },
}

impl Eval {
    #[inline]
    pub(crate) fn value(&self, x: u64, y: u64) -> Option<u64> {
        match *self {
            Eval::Affine { c, d, e, f, l } => {
                let num = match affine_i64(c, d, e, f, x, y) {
                    Some(v) => i128::from(v),
                    None => {
                        let (x, y) = (i128::from(x), i128::from(y));
                        c * x * y + d * x + e * y + f
                    }
                };
                if num <= 0 {
                    return None;
                }
                if l == 1 {
                    return u64::try_from(num).ok();
                }
                if num % l != 0 {
                    return None;
                }
                u64::try_from(num / l).ok()
            }
            Eval::Ratio { qn, qd } => {
                let (num, den) = (qn * i128::from(y), qd * i128::from(x));
                if num % den != 0 {
                    return None;
                }
                u64::try_from(num / den).ok()
            }
        }
    }
}

/// `c xy + d x + e y + f` in machine words, `None` on overflow.
#[inline]
fn affine_i64(c: i128, d: i128, e: i128, f: i128, x: u64, y: u64) -> Option<i64> {
    let (c, d, e, f) = (
        i64::try_from(c).ok()?,
        i64::try_from(d).ok()?,
        i64::try_from(e).ok()?,
        i64::try_from(f).ok()?,
    );
    let (x, y) = (i64::try_from(x).ok()?, i64::try_from(y).ok()?);
    c.checked_mul(x)?
        .checked_mul(y)?
        .checked_add(d.checked_mul(x)?)?
        .checked_add(e.checked_mul(y)?)?
        .checked_add(f)
}

#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    pub(crate) pieces: Vec<Eval>,
}

fn small(q: &Rational) -> Result<i128, SearchError> {
    q.to_integer()
        .to_i64()
        .map(i128::from)
        .ok_or(SearchError::CoefficientTooLarge)
}

impl Compiled {
    pub(crate) fn new(pattern: &Pattern) -> Result<Self, SearchError> {
        let pieces = pattern
            .pieces()
            .iter()
            .map(|p| {
                Ok(match p {
                    PatternPiece::X => Eval::Affine { c: 0, d: 1, e: 0, f: 0, l: 1 },
                    PatternPiece::Y => Eval::Affine { c: 0, d: 0, e: 1, f: 0, l: 1 },
                    PatternPiece::Linear { cx, cy } => Eval::Affine {
                        c: 0,
                        d: i128::from(*cx),
                        e: i128::from(*cy),
                        f: 0,
                        l: 1,
                    },
                    PatternPiece::Ratio { q } => Eval::Ratio {
                        qn: small(&Rational::from_integer(q.numer().clone()))?,
                        qd: small(&Rational::from_integer(q.denom().clone()))?,
                    },
                    PatternPiece::Bilinear(b) => {
                        let f = b.f();
                        let l = [b.c(), b.d(), b.e(), &f]
                            .iter()
                            .fold(num_bigint::BigInt::from(1), |acc, q| acc.lcm(q.denom()));
                        let lr = Rational::from_integer(l.clone());
                        Eval::Affine {
                            c: small(&(b.c() * &lr))?,
                            d: small(&(b.d() * &lr))?,
                            e: small(&(b.e() * &lr))?,
                            f: small(&(&f * &lr))?,
                            l: small(&lr)?,
                        }
                    }
                })
            })
            .collect::<Result<Vec<_>, SearchError>>()?;
        Ok(Compiled { pieces })
    }

    pub(crate) fn has_ratio(&self) -> bool {
        self.pieces.iter().any(|p| matches!(p, Eval::Ratio { .. }))
    }

    /// Every admissible `y` for this `x` is a multiple of the returned step.
    pub(crate) fn y_step(&self, x: u64) -> u64 {
        self.pieces.iter().fold(1u64, |acc, p| match *p {
            Eval::Ratio { qn, qd } => {
                let den = qd * i128::from(x);
                let step = den / den.gcd(&qn);
                acc.lcm(&(step as u64))
            }
            Eval::Affine { .. } => acc,
        })
    }

    /// All piece values, if each is a positive integer.
    pub(crate) fn values(&self, x: u64, y: u64) -> Option<Vec<u64>> {
        self.pieces.iter().map(|p| p.value(x, y)).collect()
    }
}
