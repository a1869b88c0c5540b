//! Solution enumeration and monochromatic scans.

use std::collections::HashMap;

use num_integer::Integer;

use super::eval::{Compiled, Eval};
use super::{SearchError, SolutionTuple};
use crate::colouring::Colouring;
use crate::pattern::Pattern;

/// Periodic scans cost `O(T)` per `x`; above this period the direct scan is used.
const PERIODIC_LIMIT: u64 = 1 << 14;

/// All tuples with `x, y` in `1..=n` and every piece defined, in
/// lexicographic `(x, y)` order, truncated at `cap`.
///
/// ```
/// use partreg::pattern::parse_pattern;
/// use partreg::search::enumerate_solutions;
///
/// let p = parse_pattern("x, y, y/x").unwrap();
/// let sols = enumerate_solutions(&p, 4, usize::MAX).unwrap();
/// assert!(sols.iter().all(|s| s.y % s.x == 0));
/// assert_eq!(sols.len(), 8);
/// ```
pub fn enumerate_solutions(pattern: &Pattern, n: u64, cap: usize) -> Result<Vec<SolutionTuple>, SearchError> {
    let compiled = Compiled::new(pattern)?;
    let mut out = Vec::new();
    for x in 1..=n {
        let step = compiled.y_step(x);
        let mut y = step;
        while y <= n {
            if out.len() >= cap {
                return Ok(out);
            }
            if let Some(values) = compiled.values(x, y) {
                out.push(SolutionTuple { x, y, values });
            }
            y += step;
        }
    }
    Ok(out)
}

/// Result of a monochromatic scan over `x, y <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonoScan {
    /// The first `cap` monochromatic tuples in lexicographic order.
    pub tuples: Vec<SolutionTuple>,
    /// Monochromatic tuples with `x, y <= n / 2`.
    pub count_half: u64,
    /// Monochromatic tuples with `x, y <= n`.
    pub count_full: u64,
    /// Tuples skipped because a piece value lies outside an explicit table.
    pub uncoverable: u64,
}

/// The monochromatic solutions among [`enumerate_solutions`], truncated at `cap`.
pub fn find_monochromatic(
    pattern: &Pattern,
    colouring: &Colouring,
    n: u64,
    cap: usize,
) -> Result<Vec<SolutionTuple>, SearchError> {
    Ok(scan_monochromatic(pattern, colouring, n, cap)?.tuples)
}

/// Counts every monochromatic solution with `x, y <= n` and keeps the first `cap`.
pub fn scan_monochromatic(
    pattern: &Pattern,
    colouring: &Colouring,
    n: u64,
    cap: usize,
) -> Result<MonoScan, SearchError> {
    if let Some(limit) = colouring.domain_limit() {
        if limit < n {
            return Err(SearchError::DomainTooSmall { limit, n });
        }
    }
    let compiled = Compiled::new(pattern)?;
    Ok(match periodic_modulus(&compiled, colouring, n) {
        Some(t) => scan_periodic(&compiled, colouring, n, cap, t),
        None => scan_direct(&compiled, colouring, n, cap),
    })
}

/// `T = lcm(l_i) * period` when the periodic scan applies and is cheaper.
fn periodic_modulus(compiled: &Compiled, colouring: &Colouring, n: u64) -> Option<u64> {
    if compiled.has_ratio() {
        return None;
    }
    let period = colouring.period()?;
    let l = compiled.pieces.iter().try_fold(1u64, |acc, p| match *p {
        Eval::Affine { l, .. } => Some(acc.lcm(&u64::try_from(l).ok()?)),
        Eval::Ratio { .. } => None,
    })?;
    let t = l.checked_mul(period)?;
    (t <= PERIODIC_LIMIT && t.saturating_mul(colouring.count()) <= n.max(64)).then_some(t)
}

fn scan_direct(compiled: &Compiled, colouring: &Colouring, n: u64, cap: usize) -> MonoScan {
    let half = n / 2;
    let colours: Vec<u64> = (1..=n)
        .map(|x| colouring.try_colour(x).expect("domain checked"))
        .collect();
    let has_colour = |v: u64, c: u64| {
        if v <= n {
            Some(colours[v as usize - 1] == c)
        } else {
            colouring.has_colour(v, c)
        }
    };
    let mut buckets: HashMap<u64, Vec<u64>> = HashMap::new();
    for (i, &c) in colours.iter().enumerate() {
        buckets.entry(c).or_default().push(i as u64 + 1);
    }

    let mut scan = MonoScan::default();
    let mut lines: Vec<(i64, i64, i64)> = Vec::with_capacity(compiled.pieces.len());
    for x in 1..=n {
        let cx = colours[x as usize - 1];
        let ys = &buckets[&cx];
        let record = |scan: &mut MonoScan, y: u64, uncovered: bool| {
            if uncovered {
                scan.uncoverable += 1;
                return;
            }
            scan.count_full += 1;
            if x <= half && y <= half {
                scan.count_half += 1;
            }
            if scan.tuples.len() < cap {
                let values = compiled.values(x, y).expect("all pieces defined");
                scan.tuples.push(SolutionTuple { x, y, values });
            }
        };

        // x and y share a colour by construction of the bucket.
        if affine_lines(compiled, x, n, &mut lines) {
            'line: for &y in ys {
                let yi = y as i64;
                let mut uncovered = false;
                for &(a, b, l) in &lines {
                    let num = a * yi + b;
                    if num <= 0 || (l != 1 && num % l != 0) {
                        continue 'line;
                    }
                    match has_colour((num / l) as u64, cx) {
                        None => uncovered = true,
                        Some(false) => continue 'line,
                        Some(true) => {}
                    }
                }
                record(&mut scan, y, uncovered);
            }
            continue;
        }

        let step = compiled.y_step(x);
        'y: for &y in ys {
            if step > 1 && y % step != 0 {
                continue;
            }
            let mut uncovered = false;
            for piece in &compiled.pieces[2..] {
                let Some(v) = piece.value(x, y) else {
                    continue 'y;
                };
                match has_colour(v, cx) {
                    None => uncovered = true,
                    Some(false) => continue 'y,
                    Some(true) => {}
                }
            }
            record(&mut scan, y, uncovered);
        }
    }
    scan
}

/// The pieces after `x, y` as `(a y + b) / l` for this `x`, when every
/// value for `y <= n` fits in an `i64`. Returns `false` otherwise.
fn affine_lines(compiled: &Compiled, x: u64, n: u64, out: &mut Vec<(i64, i64, i64)>) -> bool {
    const LIMIT: i128 = 1 << 62;
    out.clear();
    let (xi, ni) = (i128::from(x), i128::from(n));
    for piece in &compiled.pieces[2..] {
        let Eval::Affine { c, d, e, f, l } = *piece else {
            return false;
        };
        let (a, b) = (c * xi + e, d * xi + f);
        if a.abs() * ni + b.abs() >= LIMIT {
            return false;
        }
        out.push((a as i64, b as i64, l as i64));
    }
    true
}

/// Number of `y` in `lo..=hi` with `y = rho (mod t)`.
fn count_congruent(lo: i128, hi: i128, rho: i128, t: i128) -> u64 {
    if hi < lo {
        return 0;
    }
    let first = lo + (rho - lo).rem_euclid(t);
    if first > hi {
        0
    } else {
        ((hi - first) / t + 1) as u64
    }
}

/// For fixed `x` each piece is `(A y + B) / l`, so divisibility and the
/// colour of its value depend only on `y mod t`, and positivity on an
/// interval of `y`.
fn scan_periodic(compiled: &Compiled, colouring: &Colouring, n: u64, cap: usize, t: u64) -> MonoScan {
    let period = colouring.period().expect("periodic colouring");
    let residue_colour: Vec<u64> = (0..period)
        .map(|r| colouring.try_colour(r + period).expect("structured colouring"))
        .collect();
    let p = i128::from(period);
    let ti = i128::from(t);
    let half = i128::from(n / 2);
    let mut scan = MonoScan::default();
    let mut admissible = Vec::with_capacity(t as usize);

    for x in 1..=n {
        let xi = i128::from(x);
        let cx = residue_colour[(x % period) as usize];
        let mut lo = 1i128;
        let mut hi = i128::from(n);
        let lines: Vec<(i128, i128, i128)> = compiled
            .pieces
            .iter()
            .map(|piece| match *piece {
                Eval::Affine { c, d, e, f, l } => (c * xi + e, d * xi + f, l),
                Eval::Ratio { .. } => unreachable!("ratio pieces use the direct scan"),
            })
            .collect();
        for &(a, b, _) in &lines {
            if a > 0 {
                lo = lo.max((-b).div_euclid(a) + 1);
            } else if a < 0 {
                hi = hi.min(b.div_euclid(-a) - i128::from(b.rem_euclid(-a) == 0));
            } else if b <= 0 {
                hi = 0;
            }
        }
        if hi < lo {
            continue;
        }

        admissible.clear();
        'rho: for rho in 0..ti {
            for &(a, b, l) in &lines {
                let w = (a * rho + b).rem_euclid(l * p);
                if w % l != 0 || residue_colour[((w / l) % p) as usize] != cx {
                    continue 'rho;
                }
            }
            admissible.push(rho);
        }

        for &rho in &admissible {
            scan.count_full += count_congruent(lo, hi, rho, ti);
            if xi <= half {
                scan.count_half += count_congruent(lo, hi.min(half), rho, ti);
            }
        }

        let need = cap.saturating_sub(scan.tuples.len());
        if need > 0 && !admissible.is_empty() {
            let mut ys: Vec<u64> = Vec::new();
            for &rho in &admissible {
                let first = lo + (rho - lo).rem_euclid(ti);
                ys.extend((0..need as i128).map(|k| first + k * ti).take_while(|&y| y <= hi).map(|y| y as u64));
            }
            ys.sort_unstable();
            ys.truncate(need);
            for y in ys {
                let values = compiled.values(x, y).expect("periodic scan keeps defined tuples");
                scan.tuples.push(SolutionTuple { x, y, values });
            }
        }
    }
    scan
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::arith::Rational;
    use crate::pattern::{parse_pattern, BilinearPiece, PatternPiece};

    #[test]
    fn enumeration_examples() {
        let p = parse_pattern("x, y, x+y").unwrap();
        let sols = enumerate_solutions(&p, 3, usize::MAX).unwrap();
        assert_eq!(sols.len(), 9);
        assert_eq!(sols[5], SolutionTuple { x: 2, y: 3, values: vec![2, 3, 5] });

        let p = parse_pattern("x, y, (x-3)(y-3)").unwrap();
        let sols = enumerate_solutions(&p, 2, usize::MAX).unwrap();
        assert_eq!(sols.iter().map(|s| (s.x, s.y)).collect::<Vec<_>>(), vec![(1, 1), (1, 2), (2, 1), (2, 2)]);
        let p = parse_pattern("x, y, (x-3)(y+1)").unwrap();
        assert!(enumerate_solutions(&p, 2, usize::MAX).unwrap().is_empty());
    }

    #[test]
    fn monochromatic_examples() {
        let p = parse_pattern("x, y, xy, x(y+1)").unwrap();
        let m = find_monochromatic(&p, &Colouring::residue(2).unwrap(), 10, usize::MAX).unwrap();
        assert!(m.contains(&SolutionTuple { x: 2, y: 2, values: vec![2, 2, 4, 6] }));

        let schur = parse_pattern("x, y, x+y").unwrap();
        let c = Colouring::explicit(vec![0, 1, 1, 0], 2).unwrap();
        let scan = scan_monochromatic(&schur, &c, 4, usize::MAX).unwrap();
        assert!(scan.tuples.is_empty());
        // 1+4, 4+1, 2+3, 3+2 and 4+4 leave the table.
        assert!(scan.uncoverable > 0);

        let p = parse_pattern("x, y, (x+1)(y+2)").unwrap();
        let m = find_monochromatic(&p, &Colouring::residue(7).unwrap(), 100, usize::MAX).unwrap();
        assert!(m.is_empty());
    }

    #[test]
    fn small_explicit_domain_is_rejected() {
        let p = parse_pattern("x, y, x+y").unwrap();
        let c = Colouring::explicit(vec![0, 1, 1, 0], 2).unwrap();
        assert!(matches!(
            scan_monochromatic(&p, &c, 5, 10),
            Err(SearchError::DomainTooSmall { limit: 4, n: 5 })
        ));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    fn bilinear() -> impl Strategy<Value = PatternPiece> {
        ((1i64..=6, 1i64..=3), small_rational(), small_rational()).prop_map(|((cn, cd), d, e)| {
            PatternPiece::Bilinear(BilinearPiece::new(Rational::new(cn.into(), cd.into()), d, e).unwrap())
        })
    }

    fn piece() -> impl Strategy<Value = PatternPiece> {
        prop_oneof![
            bilinear(),
            (-3i64..=3, -3i64..=3)
                .prop_filter("nonzero", |&(a, b)| (a, b) != (0, 0))
                .prop_map(|(cx, cy)| PatternPiece::Linear { cx, cy }),
        ]
    }

    fn pattern() -> impl Strategy<Value = Pattern> {
        proptest::collection::vec(piece(), 1..4).prop_map(|extra| {
            let pieces = [PatternPiece::X, PatternPiece::Y].into_iter().chain(extra).collect();
            Pattern::from_pieces(pieces, "").unwrap()
        })
    }

    fn periodic_colouring() -> impl Strategy<Value = Colouring> {
        prop_oneof![
            (2u64..=9).prop_map(|m| Colouring::residue(m).unwrap()),
            (2u64..=4, 2u64..=5).prop_map(|(a, b)| Colouring::product(
                Colouring::residue(a).unwrap(),
                Colouring::residue(b).unwrap()
            )),
        ]
    }

    proptest! {
        #[test]
        fn periodic_scan_matches_direct_scan(p in pattern(), c in periodic_colouring(), n in 1u64..=60, cap in 0usize..30) {
            let compiled = Compiled::new(&p).unwrap();
            let period = c.period().unwrap();
            let l = compiled.pieces.iter().fold(1u64, |acc, e| match *e {
                Eval::Affine { l, .. } => acc.lcm(&(l as u64)),
                Eval::Ratio { .. } => acc,
            });
            let fast = scan_periodic(&compiled, &c, n, cap, l * period);
            let slow = scan_direct(&compiled, &c, n, cap);
            prop_assert_eq!(fast, slow);
        }

        #[test]
        fn monochromatic_tuples_are_solutions(p in pattern(), c in periodic_colouring(), n in 1u64..=30) {
            let all = enumerate_solutions(&p, n, usize::MAX).unwrap();
            let mono = find_monochromatic(&p, &c, n, usize::MAX).unwrap();
            for t in &mono {
                prop_assert!(all.contains(t));
                let cx = c.colour_of(t.x).unwrap();
                prop_assert!(t.values.iter().all(|&v| c.colour_of(v).unwrap() == cx));
            }
            let expected: Vec<_> = all
                .into_iter()
                .filter(|t| t.values.iter().all(|&v| c.colour_of(v).unwrap() == c.colour_of(t.x).unwrap()))
                .collect();
            prop_assert_eq!(mono, expected);
        }
    }

    proptest! {
        #[test]
        fn integer_route_matches_exact_route(
            p in piece(),
            q in (1i64..=6, 1i64..=6),
            x in 1u64..200,
            y in 1u64..200,
        ) {
            let ratio = PatternPiece::Ratio { q: Rational::new(q.0.into(), q.1.into()) };
            let pattern = Pattern::from_pieces(vec![PatternPiece::X, PatternPiece::Y, p, ratio], "").unwrap();
            let compiled = Compiled::new(&pattern).unwrap();
            for (piece, eval) in pattern.pieces().iter().zip(&compiled.pieces) {
                prop_assert_eq!(eval.value(x, y), crate::pattern::evaluate_piece(piece, x, y));
            }
        }
    }
}
