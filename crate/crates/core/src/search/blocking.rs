//! Blocking certificates: colourings under which monochromatic solutions
//! stop appearing.

use std::collections::BTreeSet;

use num_traits::{ToPrimitive, Zero};

use super::solutions::scan_monochromatic;
use super::{SearchError, SolutionTuple};
use crate::analyzer::{Rule, Status, Verdict};
use crate::arith::{is_prime, primes_up_to, solve_fixedpoint_mod_p, Rational};
use crate::colouring::Colouring;
use crate::pattern::{Pattern, PatternPiece};

/// Number of monochromatic tuples kept in a [`BlockReport`].
pub const EXCEPTIONAL_CAP: usize = 16;

/// Outcome of checking one colouring against a pattern up to `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockReport {
    pub pattern: String,
    pub colouring: Colouring,
    pub n: u64,
    /// Monochromatic solutions with `x, y <= n / 2`.
    pub count_half: u64,
    /// Monochromatic solutions with `x, y <= n`.
    pub count_full: u64,
    /// Tuples whose values leave an explicit colouring's table.
    pub uncoverable: u64,
    /// The first monochromatic tuples found.
    pub exceptional: Vec<SolutionTuple>,
}

impl BlockReport {
    /// No monochromatic solution has `x` or `y` in `(n/2, n]`.
    ///
    /// This is a finite surrogate for "only finitely many monochromatic
    /// solutions", not a proof.
    pub fn passes(&self) -> bool {
        self.count_half == self.count_full
    }
}

/// Counts monochromatic solutions at `n` and `n / 2`.
///
/// ```
/// use partreg::colouring::Colouring;
/// use partreg::pattern::parse_pattern;
/// use partreg::search::verify_blocking;
///
/// let p = parse_pattern("x, y, (4x+1)(y+1)").unwrap();
/// let report = verify_blocking(&p, &Colouring::residue(2).unwrap(), 10_000).unwrap();
/// assert_eq!((report.count_half, report.count_full), (0, 0));
/// assert!(report.passes());
/// ```
pub fn verify_blocking(pattern: &Pattern, colouring: &Colouring, n: u64) -> Result<BlockReport, SearchError> {
    let scan = scan_monochromatic(pattern, colouring, n, EXCEPTIONAL_CAP)?;
    Ok(BlockReport {
        pattern: pattern.to_string(),
        colouring: colouring.clone(),
        n,
        count_half: scan.count_half,
        count_full: scan.count_full,
        uncoverable: scan.uncoverable,
        exceptional: scan.tuples,
    })
}

fn push(out: &mut Vec<Colouring>, c: Colouring) {
    // One colour blocks nothing.
    if c.count() > 1 && !out.contains(&c) {
        out.push(c);
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Small primes together with the primes dividing any coefficient.
fn data_primes(pattern: &Pattern) -> BTreeSet<u64> {
    let mut coefficients: Vec<Rational> = Vec::new();
    for piece in pattern.pieces() {
        match piece {
            PatternPiece::Bilinear(b) => coefficients.extend([b.c().clone(), b.d().clone(), b.e().clone()]),
            PatternPiece::Ratio { q } => coefficients.push(q.clone()),
            PatternPiece::Linear { cx, cy } => {
                coefficients.extend([Rational::from_integer((*cx).into()), Rational::from_integer((*cy).into())])
            }
            PatternPiece::X | PatternPiece::Y => {}
        }
    }
    let mut primes: BTreeSet<u64> = [2, 3, 5, 7].into();
    for q in coefficients.iter().filter(|q| !q.is_zero()) {
        for part in [q.numer(), q.denom()] {
            if let Some(v) = part.magnitude().to_u64() {
                primes.extend(prime_factors(v).into_iter().filter(|&p| p <= 97));
            }
        }
    }
    primes
}

/// Primes `p <= bound` for which no residue class `x = y = r (mod p)` is a
/// fixed point of every bilinear piece.
fn residue_obstructions(pattern: &Pattern, bound: u64) -> Vec<u64> {
    let pieces = pattern.bilinear_pieces();
    if pieces.is_empty() {
        return Vec::new();
    }
    primes_up_to(bound)
        .into_iter()
        .filter(|&p| {
            let mut common: Option<BTreeSet<u64>> = None;
            for b in &pieces {
                let Ok(roots) = solve_fixedpoint_mod_p(b.c(), b.d(), b.e(), &b.f(), p) else {
                    return false;
                };
                let roots: BTreeSet<u64> = roots.into_iter().collect();
                common = Some(match common {
                    None => roots,
                    Some(c) => c.intersection(&roots).copied().collect(),
                });
            }
            common.is_some_and(|c| c.is_empty())
        })
        .collect()
}

/// Ordered candidate blocking colourings for a NOT_PR verdict.
///
/// Candidates come from the obstruction behind the verdict: primes without
/// a fixed-point residue, primes dividing the denominator of the shift,
/// p-adic digit and binary-length observables, and finally residues mod
/// `2..=12`.
pub fn propose_blocking(pattern: &Pattern, verdict: &Verdict, prime_bound: u64) -> Vec<Colouring> {
    let mut out = Vec::new();
    if verdict.status != Status::NotPr {
        return out;
    }
    let rule = verdict.decisive_rule();

    if rule == Some(Rule::ThmBNoT) {
        for p in residue_obstructions(pattern, prime_bound) {
            push(&mut out, Colouring::ResidueMod { m: p });
        }
    }

    if rule == Some(Rule::ThmCDiv) {
        if let Some(sigma) = &verdict.shift {
            let den = sigma.denom().to_u64().unwrap_or(1);
            for p in prime_factors(den) {
                for k in 1..=3u32 {
                    push(&mut out, Colouring::ResidueMod { m: p.pow(k) });
                }
                for k in 1..=3 {
                    push(&mut out, Colouring::SmodVal { p, k });
                }
            }
        }
    }

    if rule == Some(Rule::Qcd) {
        let (cx, cy) = pattern
            .pieces()
            .iter()
            .find_map(|p| match p {
                PatternPiece::Linear { cx, cy } => Some((*cx, *cy)),
                _ => None,
            })
            .unwrap_or((1, 1));
        if cx != 1 {
            for p in data_primes(pattern).into_iter().chain(primes_up_to(13)) {
                push(&mut out, Colouring::SmodVal { p, k: 1 });
            }
        }
        if cy != 1 {
            for k in 2..=4 {
                for s in 0..=2 {
                    push(&mut out, Colouring::BinLen { k, s });
                }
            }
        }
    }

    // Digit and valuation observables at the primes the coefficients mention,
    // finest first: a refinement of a blocking colouring also blocks.
    let primes = data_primes(pattern);
    for &p in primes.iter().filter(|&&p| p >= 3) {
        push(
            &mut out,
            Colouring::product(Colouring::ResidueMod { m: p }, Colouring::SmodVal { p, k: 1 }),
        );
    }
    for &p in &primes {
        for k in 1..=2 {
            push(&mut out, Colouring::SmodVal { p, k });
        }
    }

    for m in 2..=12 {
        push(&mut out, Colouring::ResidueMod { m });
    }
    debug_assert!(out.iter().all(|c| match c {
        Colouring::SmodVal { p, .. } => is_prime(*p),
        _ => true,
    }));
    out
}

/// Outcome of trying proposed colourings in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutoBlock {
    /// Index into `tried` of the first passing report.
    pub found: Option<usize>,
    pub tried: Vec<BlockReport>,
}

impl AutoBlock {
    pub fn certificate(&self) -> Option<&BlockReport> {
        self.found.map(|i| &self.tried[i])
    }
}

/// Verifies proposed colourings in order and stops at the first that passes.
pub fn auto_block(
    pattern: &Pattern,
    verdict: &Verdict,
    n: u64,
    prime_bound: u64,
) -> Result<AutoBlock, SearchError> {
    let mut tried = Vec::new();
    for colouring in propose_blocking(pattern, verdict, prime_bound) {
        let report = verify_blocking(pattern, &colouring, n)?;
        let pass = report.passes();
        tried.push(report);
        if pass {
            return Ok(AutoBlock {
                found: Some(tried.len() - 1),
                tried,
            });
        }
    }
    Ok(AutoBlock { found: None, tried })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzer::analyze;
    use crate::pattern::parse_pattern;

    fn proposals(text: &str) -> Vec<Colouring> {
        let p = parse_pattern(text).unwrap();
        propose_blocking(&p, &analyze(&p), 1000)
    }

    #[test]
    fn fixed_point_primes_come_first() {
        let c = proposals("x, y, (x+1)(y+2)");
        // r^2 + 2r + 2 = 0 has discriminant -4: no root mod 3 or mod 7.
        assert_eq!(c[0], Colouring::ResidueMod { m: 3 });
        assert!(c.contains(&Colouring::ResidueMod { m: 7 }));
        assert!(!c[..5].contains(&Colouring::ResidueMod { m: 5 }));
    }

    #[test]
    fn shift_denominator_gives_parity_first() {
        let c = proposals("x, y, (4x+1)(y+1)");
        assert_eq!(c[0], Colouring::ResidueMod { m: 2 });
        assert_eq!(c[1], Colouring::ResidueMod { m: 4 });
    }

    #[test]
    fn fallback_is_always_present() {
        let c = proposals("x, y, x(y+1), x(y+2)");
        for m in 2..=12 {
            assert!(c.contains(&Colouring::ResidueMod { m }));
        }
        assert!(proposals("x, y, xy").is_empty());
    }

    #[test]
    fn examples_block() {
        let p = parse_pattern("x, y, (x+1)(y+2)").unwrap();
        let r = verify_blocking(&p, &Colouring::residue(7).unwrap(), 10_000).unwrap();
        assert_eq!((r.count_half, r.count_full), (0, 0));

        let p = parse_pattern("x, y, x+y").unwrap();
        let r = verify_blocking(&p, &Colouring::residue(2).unwrap(), 1000).unwrap();
        assert!(!r.passes());
        assert!(r.count_half < r.count_full);
    }
}
