//! `d=<novikov>; (alpha,k) (alpha,k) ...`
//!
//! `<novikov>` is `()`, a bare integer, or a parenthesised comma list. An
//! insertion may carry a repeat suffix, `(2,0)x8` or `(2,0) ×8`.

use conelab_core::{Insertion, NovikovDegree, Rational};
use num_bigint::BigInt;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub beta: NovikovDegree,
    pub insertions: Vec<Insertion>,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn parse_rational(s: &str) -> CliResult<Rational> {
    let int = |x: &str| x.trim().parse::<BigInt>().map_err(|_| bad(format!("not a rational: `{s}`")));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int(s)?)),
        Some((n, d)) => {
            let d = int(d)?;
            if d == BigInt::from(0) {
                return Err(bad(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(int(n)?, d))
        }
    }
}

fn parse_novikov(s: &str) -> CliResult<NovikovDegree> {
    let s = s.trim();
    let inner = match s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        Some(inner) => inner,
        None => s,
    };
    if inner.trim().is_empty() {
        return Ok(NovikovDegree(Vec::new()));
    }
    inner
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| bad(format!("bad Novikov degree `{s}`"))))
        .collect::<CliResult<Vec<_>>>()
        .map(NovikovDegree)
}

pub fn parse_query(text: &str) -> CliResult<Query> {
    let (head, body) = text.split_once(';').ok_or_else(|| bad("query needs `d=<novikov>; (alpha,k) ...`"))?;
    let degree = head.trim().strip_prefix("d=").ok_or_else(|| bad(format!("query must start with `d=`, got `{head}`")))?;
    let beta = parse_novikov(degree)?;

    let mut insertions = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let after_open = rest.strip_prefix('(').ok_or_else(|| bad(format!("expected `(` at `{rest}`")))?;
        let close = after_open.find(')').ok_or_else(|| bad("unclosed `(`"))?;
        let (a, k) = after_open[..close].split_once(',').ok_or_else(|| bad("insertion must be `(alpha,k)`"))?;
        let a: usize = a.trim().parse().map_err(|_| bad(format!("bad basis index `{a}`")))?;
        let k: u32 = k.trim().parse().map_err(|_| bad(format!("bad psi power `{k}`")))?;
        rest = after_open[close + 1..].trim_start();
        let mut repeat = 1usize;
        if let Some(r) = rest.strip_prefix('x').or_else(|| rest.strip_prefix('×')) {
            let digits: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
            repeat = digits.parse().map_err(|_| bad("repeat suffix needs a count"))?;
            rest = r[digits.len()..].trim_start();
        }
        insertions.extend(std::iter::repeat_n(Insertion::new(a, k), repeat));
    }
    Ok(Query { beta, insertions })
}
