#![allow(dead_code)]

use partreg::analyzer::{Rule, Status};

/// A classified pattern: text, expected status and the rule that settles it.
pub struct Golden {
    pub text: String,
    pub status: Status,
    pub rule: Rule,
}

fn g(text: impl Into<String>, status: Status, rule: Rule) -> Golden {
    Golden {
        text: text.into(),
        status,
        rule,
    }
}

pub fn golden_corpus() -> Vec<Golden> {
    use Rule::*;
    use Status::*;
    let mut out = vec![
        g("x, y, x+y", Pr, Schur),
        g("x, y, xy", Pr, HindmanProduct),
        g("x, y, 1/2 xy", Pr, QxyPure),
        g("x, y, 3xy", Pr, QxyPure),
        g("x, y, x+y, y/x", Pr, ThmARatio),
        g("x, y, x+y, (3/2)y/x", Pr, ThmARatio),
        g("x, y, 3x-2y, 5y/x", NotPr, Qcd),
        g("x, y, xy, x(y+1)", Pr, CoQxy),
        g("x, y, x(18y+1)", Pr, NldFamily),
        g("x, y, (x+1)(y+2)", NotPr, ThmBNoT),
        g("x, y, (4x+1)(y+1)", NotPr, ThmCDiv),
        g("x, y, (x+1)(y+4)", Open, OpenQ61),
        g("2x, 2y, 3xy, x(3y+2)", Pr, CoQxy),
        g("2x, 2y, 3xy, x(3y-2)", NotPr, CoQxy),
        g("x, y, x(y+1), x(y+2)", NotPr, ThmEShape),
        g("x, y, x(y+1), (x+2)y", NotPr, ThmEShape),
        g("x, y, xy, xy+x, xy+y", Open, OpenQ63),
        g("x, y, 2xy, 2xy+x, 2xy+y", Open, OpenQ63),
        g("x, y, 1/3 xy, 1/3 xy + x, 1/3 xy + y", Open, OpenQ63),
        g("x, y, 5xy, 5xy+x, 5xy+y", Open, OpenQ63),
        g("x, y, xy, x(y+1), (x+1)y, (x+1)(y+1)", NotPr, ManyPiece),
        g("x, y, xy, x(y+1), x(y+2), x(y+3)", NotPr, ManyPiece),
        g("x, y, x+y, x(y+0)", Open, OpenSumProduct),
        g("x, y, x+y, x(y+1)", Open, OpenQ64),
    ];
    for h in 1..=3 {
        for n in 1..=3 {
            out.push(g(format!("x, y, (1/{h})(x+{n})(y+{n})"), NotPr, ThmBNoT));
        }
    }
    for n in [3, 4, 5, 7] {
        out.push(g(format!("x, y, x(y+{n}), (x+{n})y"), NotPr, ThmFCross));
    }
    for n in [1, 2] {
        out.push(g(format!("x, y, x(y+{n}), (x+{n})y"), Open, OpenQ63));
    }
    for m in [2, -1, 5] {
        out.push(g(format!("x, y, x+y, x(y{m:+})"), NotPr, SumShift));
    }
    out
}
