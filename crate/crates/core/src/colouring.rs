//! Structured and explicit colourings of the positive integers.
//!
//! Colours are dense indices `0..count()`.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::arith::{is_prime, smod_vp_u64};

/// Largest leading-digit window accepted by [`Colouring::BinLen`].
pub const MAX_BINLEN_WINDOW: u32 = 16;

#[derive(Debug, Error)]
pub enum ColouringError {
    #[error("invalid colouring: {0}")]
    Invalid(String),
    #[error("bad colouring spec {spec:?}: {msg}")]
    Spec { spec: String, msg: String },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("{x} is outside the explicit range 1..={n}")]
    OutOfRange { x: u64, n: usize },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Colouring {
    /// `x mod m`.
    ResidueMod { m: u64 },
    /// `(smod_p(x), v_p(x) mod k)`.
    SmodVal { p: u64, k: u32 },
    /// `(L(x) mod k, first s binary digits of x)`, `L` the binary length.
    BinLen { k: u32, s: u32 },
    Product(Box<Colouring>, Box<Colouring>),
    /// A table for `1..=table.len()`.
    Explicit { table: Vec<u32>, r: u32 },
}

impl Colouring {
    pub fn residue(m: u64) -> Result<Self, ColouringError> {
        if m < 2 {
            return Err(ColouringError::Invalid(format!("modulus must be at least 2, got {m}")));
        }
        Ok(Colouring::ResidueMod { m })
    }

    pub fn smod_val(p: u64, k: u32) -> Result<Self, ColouringError> {
        if !is_prime(p) {
            return Err(ColouringError::Invalid(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(ColouringError::Invalid("valuation window must be at least 1".into()));
        }
        Ok(Colouring::SmodVal { p, k })
    }

    pub fn bin_len(k: u32, s: u32) -> Result<Self, ColouringError> {
        if k == 0 {
            return Err(ColouringError::Invalid("length window must be at least 1".into()));
        }
        if s > MAX_BINLEN_WINDOW {
            return Err(ColouringError::Invalid(format!(
                "digit window {s} exceeds {MAX_BINLEN_WINDOW}"
            )));
        }
        Ok(Colouring::BinLen { k, s })
    }

    pub fn product(left: Colouring, right: Colouring) -> Self {
        Colouring::Product(Box::new(left), Box::new(right))
    }

    pub fn explicit(table: Vec<u32>, r: u32) -> Result<Self, ColouringError> {
        if let Some((i, c)) = table.iter().enumerate().find(|(_, &c)| c >= r) {
            return Err(ColouringError::Invalid(format!(
                "colour {c} of {} is not below r = {r}",
                i + 1
            )));
        }
        Ok(Colouring::Explicit { table, r })
    }

    /// Number of colours.
    pub fn count(&self) -> u64 {
        match self {
            Colouring::ResidueMod { m } => *m,
            Colouring::SmodVal { p, k } => (p - 1) * u64::from(*k),
            Colouring::BinLen { k, s } => u64::from(*k) << s,
            Colouring::Product(a, b) => a.count() * b.count(),
            Colouring::Explicit { r, .. } => u64::from(*r),
        }
    }

    /// Largest `x` the colouring covers, if bounded.
    pub fn domain_limit(&self) -> Option<u64> {
        match self {
            Colouring::Explicit { table, .. } => Some(table.len() as u64),
            Colouring::Product(a, b) => match (a.domain_limit(), b.domain_limit()) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            },
            _ => None,
        }
    }

    /// A period `T` with `colour(x + T) = colour(x)` for all `x`, if the
    /// colouring is purely residue-based.
    pub fn period(&self) -> Option<u64> {
        match self {
            Colouring::ResidueMod { m } => Some(*m),
            Colouring::Product(a, b) => Some(a.period()?.lcm(&b.period()?)),
            _ => None,
        }
    }

    /// Colour of `x`, or `None` outside the domain (including `x = 0`).
    #[inline]
    pub fn try_colour(&self, x: u64) -> Option<u64> {
        if x == 0 {
            return None;
        }
        Some(match self {
            Colouring::ResidueMod { m } => match (u32::try_from(x), u32::try_from(*m)) {
                (Ok(x), Ok(m)) => u64::from(x % m),
                _ => x % m,
            },
            Colouring::SmodVal { p: 2, k } => u64::from(x.trailing_zeros() % k),
            Colouring::SmodVal { p, k } => {
                let (s, v) = smod_vp_u64(x, *p);
                (s - 1) * u64::from(*k) + u64::from(v % k)
            }
            Colouring::BinLen { k, s } => {
                let len = 64 - x.leading_zeros();
                let window = if len >= *s { x >> (len - s) } else { x << (s - len) };
                u64::from(len % k) * (1u64 << s) + window % (1u64 << s)
            }
            Colouring::Product(a, b) => a.try_colour(x)? * b.count() + b.try_colour(x)?,
            Colouring::Explicit { table, .. } => u64::from(*table.get(x as usize - 1)?),
        })
    }

    /// Whether `x` has colour `target`; `None` outside the domain.
    ///
    /// Products compare their left component first, which is usually the
    /// cheaper one.
    #[inline]
    pub(crate) fn has_colour(&self, x: u64, target: u64) -> Option<bool> {
        match self {
            Colouring::Product(a, b) => {
                let nb = b.count();
                match a.has_colour(x, target / nb)? {
                    false => Some(false),
                    true => b.has_colour(x, target % nb),
                }
            }
            _ => Some(self.try_colour(x)? == target),
        }
    }

    /// Colour of `x`, with a range error outside the domain.
    pub fn colour_of(&self, x: u64) -> Result<u64, ColouringError> {
        self.try_colour(x).ok_or_else(|| ColouringError::OutOfRange {
            x,
            n: self.domain_limit().unwrap_or(0) as usize,
        })
    }

    /// The explicit table of this colouring on `1..=n`.
    pub fn to_explicit(&self, n: usize) -> Result<Colouring, ColouringError> {
        let table = (1..=n as u64)
            .map(|x| self.colour_of(x).map(|c| c as u32))
            .collect::<Result<Vec<_>, _>>()?;
        let r = u32::try_from(self.count())
            .map_err(|_| ColouringError::Invalid("too many colours for a table".into()))?;
        Colouring::explicit(table, r)
    }
}

impl fmt::Display for Colouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colouring::ResidueMod { m } => write!(f, "mod:{m}"),
            Colouring::SmodVal { p, k } => write!(f, "smodval:{p}:{k}"),
            Colouring::BinLen { k, s } => write!(f, "binlen:{k}:{s}"),
            Colouring::Product(a, b) => write!(f, "prod:({a},{b})"),
            Colouring::Explicit { table, r } => write!(f, "explicit:{}:{r}", table.len()),
        }
    }
}

impl FromStr for Colouring {
    type Err = ColouringError;

    /// Parses `mod:M`, `smodval:p:K`, `binlen:K:s`, `prod:(A,B)` or `file:PATH`.
    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let spec = spec.trim();
        let bad = |msg: &str| ColouringError::Spec {
            spec: spec.to_string(),
            msg: msg.to_string(),
        };
        let (kind, rest) = spec.split_once(':').ok_or_else(|| bad("expected KIND:ARGS"))?;
        let nums = |n: usize| -> Result<Vec<u64>, ColouringError> {
            let parts: Vec<_> = rest.split(':').collect();
            if parts.len() != n {
                return Err(bad(&format!("expected {n} numeric argument(s)")));
            }
            parts
                .iter()
                .map(|s| s.trim().parse::<u64>().map_err(|_| bad("arguments must be nonnegative integers")))
                .collect()
        };
        let small = |v: u64| u32::try_from(v).map_err(|_| bad("argument too large"));
        match kind.trim() {
            "mod" => Colouring::residue(nums(1)?[0]),
            "smodval" => {
                let v = nums(2)?;
                Colouring::smod_val(v[0], small(v[1])?)
            }
            "binlen" => {
                let v = nums(2)?;
                Colouring::bin_len(small(v[0])?, small(v[1])?)
            }
            "prod" => {
                let inner = rest
                    .trim()
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| bad("expected prod:(A,B)"))?;
                let split = top_level_comma(inner).ok_or_else(|| bad("expected two comma-separated specs"))?;
                let left = inner[..split].parse()?;
                let right = inner[split + 1..].parse()?;
                Ok(Colouring::product(left, right))
            }
            "file" => load_colouring(rest),
            other => Err(bad(&format!("unknown kind {other:?}"))),
        }
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// Parses the explicit table format: a header line `N r`, then `N` colours.
pub fn parse_explicit(text: &str) -> Result<Colouring, ColouringError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (header_line, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or(ColouringError::Format {
            line: 1,
            msg: "missing header \"N r\"".into(),
        })?;
    let fields: Vec<_> = header.split_whitespace().collect();
    let header_err = || ColouringError::Format {
        line: header_line,
        msg: format!("malformed header {header:?}, expected \"N r\""),
    };
    if fields.len() != 2 {
        return Err(header_err());
    }
    let n: usize = fields[0].parse().map_err(|_| header_err())?;
    let r: u32 = fields[1].parse().map_err(|_| header_err())?;
    if r == 0 {
        return Err(header_err());
    }

    let mut table = Vec::with_capacity(n);
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        for token in content.split_whitespace() {
            let c: u32 = token.parse().map_err(|_| ColouringError::Format {
                line,
                msg: format!("{token:?} is not a colour index"),
            })?;
            if c >= r {
                return Err(ColouringError::Format {
                    line,
                    msg: format!("colour {c} is not below r = {r}"),
                });
            }
            if table.len() == n {
                return Err(ColouringError::Format {
                    line,
                    msg: format!("more than {n} entries"),
                });
            }
            table.push(c);
        }
    }
    if table.len() != n {
        return Err(ColouringError::Format {
            line: last_line,
            msg: format!("expected {n} entries, found {}", table.len()),
        });
    }
    Colouring::explicit(table, r)
}

/// Reads an explicit colouring file.
pub fn load_colouring(path: impl AsRef<Path>) -> Result<Colouring, ColouringError> {
    parse_explicit(&fs::read_to_string(path)?)
}

/// Renders an explicit colouring in the file format.
pub fn render_explicit(c: &Colouring) -> Result<String, ColouringError> {
    let Colouring::Explicit { table, r } = c else {
        return Err(ColouringError::Invalid(format!("{c} is not an explicit table")));
    };
    let mut out = format!("{} {r}\n", table.len());
    for chunk in table.chunks(32) {
        let row: Vec<String> = chunk.iter().map(u32::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Ok(out)
}

/// Writes an explicit colouring file.
pub fn save_colouring(c: &Colouring, path: impl AsRef<Path>) -> Result<(), ColouringError> {
    fs::write(path, render_explicit(c)?)?;
    Ok(())
}
