//! Verdict engine for patterns built from bilinear, linear and ratio pieces.

mod verdict;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use verdict::{DerivationStep, Rule, Status, TCase, Verdict};

use crate::arith::{is_integral, is_perfect_square, to_integer, Rational};
use crate::pattern::{canonical_piece, BilinearPiece, Pattern, PatternPiece};

/// The unique `(case, t)` with `(d, e) = (t^2, (t+1)^2)` (case A) or
/// `(d, e) = (t(t-1), t(t+1))` (case B).
///
/// ```
/// use partreg::analyzer::{find_t, TCase};
/// use partreg::arith::int;
///
/// assert_eq!(find_t(&int(4), &int(1)), Some((TCase::A, (-2).into())));
/// assert_eq!(find_t(&int(2), &int(1)), None);
/// ```
pub fn find_t(d: &Rational, e: &Rational) -> Option<(TCase, BigInt)> {
    let d = to_integer(d)?;
    let e = to_integer(e)?;
    if d.is_negative() || e.is_negative() {
        return None;
    }
    if let Some(s) = is_perfect_square(&d) {
        for t in [s.clone(), -s] {
            let u = &t + 1;
            if &u * &u == e {
                return Some((TCase::A, t));
            }
        }
    }
    if let Some(k) = is_perfect_square(&(4 * &d + 1)) {
        for t in [(1 + &k) / 2, (1 - &k) / 2] {
            if &t * (&t + 1) == e {
                return Some((TCase::B, t));
            }
        }
    }
    None
}

/// The shift `sigma` of the change of variables, and whether it is an integer.
///
/// Case A: `-(d+e-1)/2c`. Case B: `-(d+e)/2c`.
pub fn shift_sigma(case: TCase, c: &Rational, d: &Rational, e: &Rational) -> (Rational, bool) {
    let mut num = d + e;
    if case == TCase::A {
        num -= Rational::one();
    }
    let sigma = -num / (c * Rational::from_integer(2.into()));
    let integral = is_integral(&sigma);
    (sigma, integral)
}

fn step(rule: Rule, detail: impl Into<String>) -> DerivationStep {
    DerivationStep::new(rule, detail)
}

fn piece_label(p: &BilinearPiece) -> String {
    format!("(c,d,e) = ({},{},{})", p.c(), p.d(), p.e())
}

/// Writes `(c, w)` as `(K/H)(B, M)` with `B > 0` and `gcd(B, M) = 1`.
fn coprime_split(c: &Rational, w: &Rational) -> (BigInt, BigInt, BigInt, BigInt) {
    let k = c.numer().gcd(w.numer());
    let h = c.denom().lcm(w.denom());
    let lambda = Rational::new(k.clone(), h.clone());
    let b = (c / &lambda).to_integer();
    let m = (w / &lambda).to_integer();
    (k, h, b, m)
}

/// Decides `x, y, P` for a single bilinear piece `P = cxy + dx + ey + de/c`.
pub fn analyze3(piece: &BilinearPiece) -> Verdict {
    let (c, d, e) = (piece.c(), piece.d(), piece.e());
    let label = piece_label(piece);

    if d.is_zero() && e.is_zero() {
        let rule = if c.is_one() { Rule::HindmanProduct } else { Rule::QxyPure };
        let mut v = Verdict::new(Status::Pr, vec![step(rule, format!("{label}: pure product, q = {c}"))]);
        v.canonical = Some(Pattern::from_bilinear([canonical_piece(piece)]));
        return v;
    }

    let Some((case, t)) = find_t(d, e) else {
        if !d.is_zero() && !e.is_zero() {
            return Verdict::new(
                Status::NotPr,
                vec![step(Rule::ThmBNoT, format!("{label}: no integer t fits (d,e) = ({d},{e})"))],
            );
        }
        let w = if d.is_zero() { e } else { d };
        let (k, h, b, m) = coprime_split(c, w);
        let detail = format!("{label}: (c, {w}) = ({k}/{h})({b}, {m}), K = {k}, H = {h}");
        return if k.is_one() {
            Verdict::new(
                Status::Open,
                vec![
                    step(Rule::Lhdn, format!("{detail}; coprime reduction passes")),
                    step(Rule::OpenQ61, "one-zero piece without a t-match is undecided"),
                ],
            )
        } else {
            Verdict::new(Status::NotPr, vec![step(Rule::Lhdn, format!("{detail}; K != 1"))])
        };
    };

    let (sigma, integral) = shift_sigma(case, c, d, e);
    let t_detail = format!("{label}: case {case}, t = {t}, sigma = {sigma}");
    if !integral {
        let mut v = Verdict::new(
            Status::NotPr,
            vec![step(Rule::ThmCDiv, format!("{t_detail} is not an integer"))],
        );
        v.t = Some(t);
        v.case = Some(case);
        v.shift = Some(sigma);
        return v;
    }

    let canon = canonical_piece(piece);
    let reduce = step(
        Rule::ThmCReduce,
        format!("{t_detail}; reduces to {}", canon.factored_display()),
    );
    let (cd, ce) = (canon.d(), canon.e());
    let is_unit_shift = (cd.is_one() && ce.is_zero()) || (cd.is_zero() && ce.is_one());
    let mut derivation = vec![reduce];
    let status = if is_unit_shift {
        derivation.push(step(
            Rule::GoswamiCanonical,
            format!("canonical piece {} is PR", canon.factored_display()),
        ));
        if !c.is_one() && c.is_integer() {
            derivation.push(step(
                Rule::NldFamily,
                format!("{} with integer b = {c}", piece.factored_display()),
            ));
        }
        Status::Pr
    } else {
        derivation.push(step(
            Rule::OpenQ61,
            format!("canonical piece {} is undecided", canon.factored_display()),
        ));
        Status::Open
    };
    let mut v = Verdict::new(status, derivation);
    v.canonical = Some(Pattern::from_bilinear([canon]));
    v.t = Some(t);
    v.case = Some(case);
    v.shift = Some(sigma);
    v
}

/// Decides `x, y, P1, P2` for two distinct bilinear pieces.
pub fn analyze4(p1: &BilinearPiece, p2: &BilinearPiece) -> Verdict {
    let labels = format!("{} and {}", piece_label(p1), piece_label(p2));
    if p1.c() != p2.c() {
        return Verdict::new(
            Status::NotPr,
            vec![step(Rule::Qabqab, format!("{labels}: c1 = {} != c2 = {}", p1.c(), p2.c()))],
        );
    }
    let c = p1.c();

    if p2.d() == p1.e() && p2.e() == p1.d() {
        let (d, e) = (p1.d(), p1.e());
        let Some((case, t)) = find_t(d, e) else {
            return Verdict::new(
                Status::NotPr,
                vec![step(Rule::ThmFCross, format!("{labels}: cross-symmetric, no integer t fits ({d},{e})"))],
            );
        };
        let (sigma, integral) = shift_sigma(case, c, d, e);
        let detail = format!("{labels}: cross-symmetric, case {case}, t = {t}, sigma = {sigma}");
        let mut v = if integral {
            let canon = [canonical_piece(p1), canonical_piece(p2)];
            let text = format!("{}, {}", canon[0].factored_display(), canon[1].factored_display());
            let mut v = Verdict::new(
                Status::Open,
                vec![
                    step(Rule::ThmFCross, format!("{detail}; reduces to {text}")),
                    step(Rule::OpenQ63, format!("cross pair {text} is undecided")),
                ],
            );
            v.canonical = Some(Pattern::from_bilinear(canon));
            v
        } else {
            Verdict::new(
                Status::NotPr,
                vec![step(Rule::ThmFCross, format!("{detail} is not an integer"))],
            )
        };
        v.t = Some(t);
        v.case = Some(case);
        v.shift = Some(sigma);
        return v;
    }

    let pure_and_other = if p1.is_pure() {
        Some(p2)
    } else if p2.is_pure() {
        Some(p1)
    } else {
        None
    };
    if let Some(other) = pure_and_other {
        let (d, e) = (other.d(), other.e());
        let ok = (d.is_one() && e.is_zero()) || (d.is_zero() && e.is_one());
        let detail = format!("{labels}: pure piece with c = {c}, other shift ({d},{e})");
        let status = if ok { Status::Pr } else { Status::NotPr };
        return Verdict::new(status, vec![step(Rule::CoQxy, detail)]);
    }

    Verdict::new(
        Status::NotPr,
        vec![step(Rule::ThmEShape, format!("{labels}: neither pure nor cross-symmetric"))],
    )
}

/// Decides `x, y` plus three or more distinct bilinear pieces.
pub fn analyze_many(pieces: &[&BilinearPiece]) -> Verdict {
    let n = pieces.len();
    if n >= 4 {
        return Verdict::new(
            Status::NotPr,
            vec![step(Rule::ManyPiece, format!("{n} bilinear pieces"))],
        );
    }
    let c = pieces[0].c();
    let same_c = pieces.iter().all(|p| p.c() == c);
    let shifts = |d: i64, e: i64| {
        pieces
            .iter()
            .any(|p| p.d() == &Rational::from_integer(d.into()) && p.e() == &Rational::from_integer(e.into()))
    };
    if n == 3 && same_c && shifts(0, 0) && shifts(1, 0) && shifts(0, 1) {
        let canon = pieces.iter().map(|p| canonical_piece(p));
        let mut v = Verdict::new(
            Status::Open,
            vec![
                step(Rule::FivePiece, format!("c = {c}; equivalent to x, y, xy, xy+x, xy+y")),
                step(Rule::OpenQ63, "x, y, xy, xy+x, xy+y is undecided"),
            ],
        );
        v.canonical = Some(Pattern::from_bilinear(canon));
        return v;
    }
    Verdict::new(
        Status::NotPr,
        vec![step(Rule::FivePiece, "three pieces not of the form cxy, cxy+x, cxy+y")],
    )
}

/// Decides `x, y, cx x + cy y, q y/x` for nonzero `cx`, `cy`.
pub fn analyze_linear_ratio(cx: i64, cy: i64, q: &Rational) -> Verdict {
    if cx == 0 || cy == 0 || !q.is_positive() {
        return Verdict::unsupported();
    }
    let detail = format!("c = {cx}, d = {cy}, q = {q}");
    if cx == 1 && cy == 1 {
        Verdict::new(Status::Pr, vec![step(Rule::ThmARatio, detail)])
    } else {
        Verdict::new(Status::NotPr, vec![step(Rule::Qcd, detail)])
    }
}

/// Decides `x, y, x+y, x(y+m)`.
pub fn analyze_sum_shift(m: &BigInt) -> Verdict {
    if m.is_one() {
        Verdict::new(Status::Open, vec![step(Rule::OpenQ64, "m = 1")])
    } else if m.is_zero() {
        Verdict::new(Status::Open, vec![step(Rule::OpenSumProduct, "m = 0")])
    } else {
        Verdict::new(Status::NotPr, vec![step(Rule::SumShift, format!("m = {m}"))])
    }
}

/// Routes a pattern to the matching decision procedure.
///
/// ```
/// use partreg::analyzer::{analyze, Rule, Status};
/// use partreg::pattern::parse_pattern;
///
/// let v = analyze(&parse_pattern("x, y, (x+1)(y+2)").unwrap());
/// assert_eq!(v.status, Status::NotPr);
/// assert_eq!(v.decisive_rule(), Some(Rule::ThmBNoT));
/// ```
pub fn analyze(pattern: &Pattern) -> Verdict {
    let extra = pattern.extra_pieces();
    let bilinear: Vec<&BilinearPiece> = extra.iter().filter_map(PatternPiece::as_bilinear).collect();

    if !extra.is_empty() && bilinear.len() == extra.len() {
        return match bilinear.len() {
            1 => analyze3(bilinear[0]),
            2 => analyze4(bilinear[0], bilinear[1]),
            _ => analyze_many(&bilinear),
        };
    }

    let sum = PatternPiece::Linear { cx: 1, cy: 1 };
    match extra {
        [p] if *p == sum => Verdict::new(Status::Pr, vec![step(Rule::Schur, "x, y, x+y")]),
        [PatternPiece::Linear { cx, cy }, PatternPiece::Ratio { q }]
        | [PatternPiece::Ratio { q }, PatternPiece::Linear { cx, cy }] => analyze_linear_ratio(*cx, *cy, q),
        [a, PatternPiece::Bilinear(b)] | [PatternPiece::Bilinear(b), a] if *a == sum => {
            match sum_shift_m(b) {
                Some(m) => analyze_sum_shift(&m),
                None => Verdict::unsupported(),
            }
        }
        _ => Verdict::unsupported(),
    }
}

/// `m` when the piece is `x(y+m)` or `(x+m)y` with integer `m`.
fn sum_shift_m(b: &BilinearPiece) -> Option<BigInt> {
    if !b.c().is_one() {
        return None;
    }
    if b.e().is_zero() {
        to_integer(b.d())
    } else if b.d().is_zero() {
        to_integer(b.e())
    } else {
        None
    }
}
