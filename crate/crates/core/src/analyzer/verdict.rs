use std::fmt;

use num_bigint::BigInt;

use crate::arith::Rational;
use crate::pattern::Pattern;

/// Outcome of the analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pr,
    NotPr,
    Open,
    Unsupported,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pr => "PR",
            Status::NotPr => "NOT_PR",
            Status::Open => "OPEN",
            Status::Unsupported => "UNSUPPORTED",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which family of the t-condition matched.
///
/// `A`: `d = t^2`, `e = (t+1)^2`. `B`: `d = t(t-1)`, `e = t(t+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TCase {
    A,
    B,
}

impl fmt::Display for TCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TCase::A => "A",
            TCase::B => "B",
        })
    }
}

/// Stable rule identifiers used in derivations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Schur,
    HindmanProduct,
    ThmARatio,
    Qcd,
    SumShift,
    QxyPure,
    ThmBNoT,
    ThmCDiv,
    ThmCReduce,
    GoswamiCanonical,
    Lhdn,
    NldFamily,
    Qabqab,
    ThmEShape,
    ThmFCross,
    CoQxy,
    FivePiece,
    ManyPiece,
    OpenQ61,
    OpenQ63,
    OpenQ64,
    OpenSumProduct,
}

impl Rule {
    pub const ALL: [Rule; 22] = [
        Rule::Schur,
        Rule::HindmanProduct,
        Rule::ThmARatio,
        Rule::Qcd,
        Rule::SumShift,
        Rule::QxyPure,
        Rule::ThmBNoT,
        Rule::ThmCDiv,
        Rule::ThmCReduce,
        Rule::GoswamiCanonical,
        Rule::Lhdn,
        Rule::NldFamily,
        Rule::Qabqab,
        Rule::ThmEShape,
        Rule::ThmFCross,
        Rule::CoQxy,
        Rule::FivePiece,
        Rule::ManyPiece,
        Rule::OpenQ61,
        Rule::OpenQ63,
        Rule::OpenQ64,
        Rule::OpenSumProduct,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::Schur => "SCHUR",
            Rule::HindmanProduct => "HINDMAN_PRODUCT",
            Rule::ThmARatio => "THM_A_RATIO",
            Rule::Qcd => "QCD",
            Rule::SumShift => "SUM_SHIFT",
            Rule::QxyPure => "QXY_PURE",
            Rule::ThmBNoT => "THM_B_NO_T",
            Rule::ThmCDiv => "THM_C_DIV",
            Rule::ThmCReduce => "THM_C_REDUCE",
            Rule::GoswamiCanonical => "GOSWAMI_CANONICAL",
            Rule::Lhdn => "LHDN",
            Rule::NldFamily => "NLD_FAMILY",
            Rule::Qabqab => "QABQAB",
            Rule::ThmEShape => "THM_E_SHAPE",
            Rule::ThmFCross => "THM_F_CROSS",
            Rule::CoQxy => "CO_QXY",
            Rule::FivePiece => "FIVE_PIECE",
            Rule::ManyPiece => "MANY_PIECE",
            Rule::OpenQ61 => "OPEN_Q61",
            Rule::OpenQ63 => "OPEN_Q63",
            Rule::OpenQ64 => "OPEN_Q64",
            Rule::OpenSumProduct => "OPEN_SUM_PRODUCT",
        }
    }

    pub fn from_id(id: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.id() == id)
    }

    /// The mathematical statement the rule applies.
    pub fn citation(self) -> &'static str {
        match self {
            Rule::Schur => "Schur's theorem: x, y, x+y is PR",
            Rule::HindmanProduct => "multiplicative Hindman/Schur: x, y, xy is PR",
            Rule::ThmARatio => {
                "ratio theorem: x, y, cx+dy, q y/x (q > 0 rational) is PR iff c = d = 1"
            }
            Rule::Qcd => "ratio theorem: x, y, cx+dy, q y/x is not PR unless c = d = 1",
            Rule::SumShift => "sum-shift obstruction: x, y, x+y, x(y+m) PR forces m = 1 (or m = 0)",
            Rule::QxyPure => "x, y, qxy is PR for every rational q > 0",
            Rule::ThmBNoT => {
                "t-condition: a PR piece cxy+dx+ey+de/c needs an integer t with \
                 (d,e) = (t^2,(t+1)^2) or (t(t-1),t(t+1))"
            }
            Rule::ThmCDiv => {
                "shift divisibility: PR needs sigma = -(d+e-1)/2c (case A) or -(d+e)/2c (case B) integral"
            }
            Rule::ThmCReduce => {
                "shift reduction: when sigma is integral, cxy+dx+ey+de/c is PR iff (x+e)(y+d) is PR"
            }
            Rule::GoswamiCanonical => "x, y, x(y+1) (and by symmetry (x+1)y) is PR",
            Rule::Lhdn => {
                "coprime reduction: x, y, (K/H) x(By+M) with gcd(B,M) = 1 PR forces K = 1"
            }
            Rule::NldFamily => "x, y, x(by+1) is PR for every positive integer b",
            Rule::Qabqab => "two pieces c1 xy+..., c2 xy+... in a PR pattern need c1 = c2",
            Rule::ThmEShape => {
                "two-piece shapes: x, y, P1, P2 with equal c is PR only if one piece is pure \
                 or the pieces are cross-symmetric"
            }
            Rule::ThmFCross => {
                "cross-symmetric pair (c,d,e), (c,e,d): PR needs the t-condition on (d,e) \
                 and an integral shift"
            }
            Rule::CoQxy => "x, y, cxy, P is PR iff P = cxy+x or P = cxy+y",
            Rule::FivePiece => {
                "three bilinear pieces: only {cxy, cxy+x, cxy+y} can be PR, and it is \
                 equivalent to the c = 1 pattern"
            }
            Rule::ManyPiece => "no pattern x, y plus four or more bilinear pieces is PR",
            Rule::OpenQ61 => "open: PR status of single canonical pieces (x+e)(y+d) beyond x(y+1)",
            Rule::OpenQ63 => {
                "open: PR status of x, y, x(y+n), (x+n)y for n in {1,2} and of x, y, xy, xy+x, xy+y"
            }
            Rule::OpenQ64 => "open: is x, y, x+y, x(y+1) PR?",
            Rule::OpenSumProduct => "open: is x, y, x+y, xy PR?",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    pub rule: Rule,
    /// Computed values that justify the step.
    pub detail: String,
}

impl DerivationStep {
    pub fn new(rule: Rule, detail: impl Into<String>) -> Self {
        DerivationStep {
            rule,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub derivation: Vec<DerivationStep>,
    pub canonical: Option<Pattern>,
    pub t: Option<BigInt>,
    pub case: Option<TCase>,
    /// The shift sigma of the change of variables.
    pub shift: Option<Rational>,
}

impl Verdict {
    pub(crate) fn new(status: Status, derivation: Vec<DerivationStep>) -> Self {
        Verdict {
            status,
            derivation,
            canonical: None,
            t: None,
            case: None,
            shift: None,
        }
    }

    pub(crate) fn unsupported() -> Self {
        Verdict::new(Status::Unsupported, Vec::new())
    }

    /// The rule of the final step, which settles the status.
    pub fn decisive_rule(&self) -> Option<Rule> {
        self.derivation.last().map(|s| s.rule)
    }

    pub fn cites(&self, rule: Rule) -> bool {
        self.derivation.iter().any(|s| s.rule == rule)
    }
}
