//! The classified-pattern corpus: exact status and settling rule.

mod common;

use partreg::analyzer::{analyze, Rule, Status};
use partreg::arith::int;
use partreg::pattern::{parse_pattern, BilinearPiece, Pattern};

#[test]
fn corpus_statuses_and_rules() {
    let mut mismatches = Vec::new();
    for g in common::golden_corpus() {
        let v = analyze(&parse_pattern(&g.text).unwrap());
        if v.status != g.status || v.decisive_rule() != Some(g.rule) {
            mismatches.push(format!(
                "{}: got {} {:?}, want {} {}",
                g.text,
                v.status,
                v.decisive_rule(),
                g.status,
                g.rule
            ));
        }
    }
    assert!(mismatches.is_empty(), "{mismatches:#?}");
}

#[test]
fn corpus_is_complete() {
    let corpus = common::golden_corpus();
    assert_eq!(corpus.len(), 24 + 9 + 4 + 2 + 3);
    for status in [Status::Pr, Status::NotPr, Status::Open] {
        assert!(corpus.iter().any(|g| g.status == status));
    }
}

#[test]
fn nld_family_passes_through_the_reduction() {
    let v = analyze(&parse_pattern("x, y, x(18y+1)").unwrap());
    assert!(v.cites(Rule::ThmCReduce));
    assert!(v.cites(Rule::GoswamiCanonical));
    let canonical = v.canonical.expect("canonical form");
    let expected = Pattern::from_bilinear([BilinearPiece::new(int(1), int(1), int(0)).unwrap()]);
    assert_eq!(canonical, expected);
}

#[test]
fn five_piece_variants_record_the_unit_reduction() {
    let unit = Pattern::from_bilinear([
        BilinearPiece::new(int(1), int(0), int(0)).unwrap(),
        BilinearPiece::new(int(1), int(1), int(0)).unwrap(),
        BilinearPiece::new(int(1), int(0), int(1)).unwrap(),
    ]);
    for text in [
        "x, y, xy, xy+x, xy+y",
        "x, y, 2xy, 2xy+x, 2xy+y",
        "x, y, 1/3 xy, 1/3 xy + x, 1/3 xy + y",
        "x, y, 5xy, 5xy+x, 5xy+y",
    ] {
        let v = analyze(&parse_pattern(text).unwrap());
        assert_eq!(v.status, Status::Open, "{text}");
        let canonical = v.canonical.unwrap_or_else(|| panic!("{text}: no canonical form"));
        assert!(canonical.same_pieces(&unit), "{text}: {canonical}");
    }
}

#[test]
fn any_four_bilinear_pieces_are_not_pr() {
    for text in [
        "x, y, xy, x(y+1), (x+1)y, (x+1)(y+1)",
        "x, y, 2xy, x(y+5), (x+3)(y+3), 7xy+7x",
        "x, y, (x+1)(y+2), (x+2)(y+1), (x+3)(y+3), xy",
    ] {
        let v = analyze(&parse_pattern(text).unwrap());
        assert_eq!(v.status, Status::NotPr, "{text}");
        assert_eq!(v.decisive_rule(), Some(Rule::ManyPiece), "{text}");
    }
}

#[test]
fn swapped_corpus_keeps_its_verdicts() {
    for g in common::golden_corpus() {
        let p = parse_pattern(&g.text).unwrap();
        let Ok(s) = p.swap_xy() else { continue };
        let (a, b) = (analyze(&p), analyze(&s));
        assert_eq!(a.status, b.status, "{}", g.text);
        assert_eq!(a.decisive_rule(), b.decisive_rule(), "{}", g.text);
    }
}
