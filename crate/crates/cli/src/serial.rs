//! JSON form of a `GiventalSeries`: a list of
//! `{z_exp, basis, novikov, eps, num, den}` records in canonical order, with
//! numerator and denominator as decimal strings.

use std::sync::Arc;

use conelab_core::{GiventalSeries, NovikovDegree, Rational, SeriesKey, TargetSpace, Truncation};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub z_exp: i32,
    pub basis: usize,
    pub novikov: Vec<u32>,
    pub eps: u32,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationRecord {
    #[serde(rename = "D")]
    pub novikov_order: u32,
    #[serde(rename = "E")]
    pub epsilon_order: u32,
    pub z_min: i32,
    pub z_max: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDocument {
    pub target: String,
    pub truncation: TruncationRecord,
    pub terms: Vec<TermRecord>,
}

impl SeriesDocument {
    pub fn from_series(s: &GiventalSeries) -> Self {
        let tr = s.truncation();
        SeriesDocument {
            target: s.target().name.clone(),
            truncation: TruncationRecord {
                novikov_order: tr.novikov_order,
                epsilon_order: tr.epsilon_order,
                z_min: tr.z_min,
                z_max: tr.z_max,
            },
            terms: s
                .terms()
                .map(|(k, c)| TermRecord {
                    z_exp: k.z_exp,
                    basis: k.basis,
                    novikov: k.beta.0.clone(),
                    eps: k.eps,
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn to_series(&self) -> CliResult<GiventalSeries> {
        let target = Arc::new(TargetSpace::make(&self.target).map_err(|e| CliError::Usage(e.to_string()))?);
        let t = &self.truncation;
        let trunc = Truncation::new(t.novikov_order, t.epsilon_order, t.z_min, t.z_max)?;
        let mut s = GiventalSeries::zero(target.clone(), trunc);
        for r in &self.terms {
            let bad = |what: &str| CliError::Usage(format!("bad {what} in record {r:?}"));
            if r.basis >= target.rank() {
                return Err(bad("basis index"));
            }
            if r.novikov.len() != target.class_rank {
                return Err(bad("novikov length"));
            }
            let num: BigInt = r.num.parse().map_err(|_| bad("numerator"))?;
            let den: BigInt = r.den.parse().map_err(|_| bad("denominator"))?;
            if den <= BigInt::from(0) {
                return Err(bad("denominator"));
            }
            let key = SeriesKey { z_exp: r.z_exp, basis: r.basis, beta: NovikovDegree(r.novikov.clone()), eps: r.eps };
            s.add_term(key, Rational::new(num, den))?;
        }
        Ok(s)
    }
}

pub fn dump(s: &GiventalSeries) -> String {
    let mut text = serde_json::to_string_pretty(&SeriesDocument::from_series(s)).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn parse(text: &str) -> CliResult<GiventalSeries> {
    let doc: SeriesDocument =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad series document: {e}")))?;
    doc.to_series()
}
