//! Analysis reports and distance-table sweeps.

use serde::Serialize;
use serde_json::{json, Value};

use crate::code::PolycyclicCode;
use crate::distance::{eta_ps_distance, gr_distance_2eta_ps, gr_distance_eta_ps, two_eta_ps_distance, DistanceReport};
use crate::error::{Error, Result};
use crate::oracle::{brute_min_weight, EnumerationBudget};
use crate::p2::classify_p2;

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    /// Cross-check the closed-form distance by exhaustive search.
    pub check_distance: bool,
    pub budget: EnumerationBudget,
}

/// The closed-form distance, `None` for the zero code.
///
/// Local ambients with residue base `x^η + γ` and multiplicity `p^s` use the
/// one-factor formula; two components `x^η ∓ ξ` use the two-factor table.
pub fn closed_form_distance(code: &PolycyclicCode) -> Result<Option<DistanceReport>> {
    if code.is_zero() {
        return Ok(None);
    }
    match code.ambient().components().len() {
        1 => gr_distance_eta_ps(code).map(Some),
        2 => gr_distance_2eta_ps(code).map(Some),
        k => Err(Error::UnsupportedCase(format!(
            "distance not determined for {k} primary components"
        ))),
    }
}

/// Full structural report. Its `ring`, `f` and `generators` fields form a
/// valid code specification for the same code.
pub fn analyze(code: &PolycyclicCode, opts: &AnalyzeOptions) -> Result<Value> {
    let amb = code.ambient();
    let ring = amb.ring();
    let params = ring.params();
    let basis = code.standard_form_basis();
    let structure = amb.structure_report();
    let components: Vec<Value> = amb
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "factor": c.factor().to_json(),
                "base": c.base().to_json(),
                "t": c.t(),
                "beta": c.beta().to_json(),
                "idempotent": c.idempotent.to_json(),
                "chain": amb.component_is_chain(i),
            })
        })
        .collect();
    let distance = match closed_form_distance(code) {
        Ok(None) => Value::Null,
        Ok(Some(mut report)) => {
            if opts.check_distance {
                let brute = brute_min_weight(code, &opts.budget)?;
                report.oracle_checked = Some(brute.map(|d| d as u64) == report.distance);
            }
            report.to_json()
        }
        Err(Error::UnsupportedCase(msg)) => json!({ "unsupported": msg }),
        Err(Error::EvenPrime) => json!({ "unsupported": "two-factor distances need an odd prime" }),
        Err(e) => return Err(e),
    };
    let p2_form = if params.a == 2 && amb.is_local() {
        json!({
            "base": amb.components()[0].base().to_json(),
            "form": classify_p2(code)?.to_json(),
        })
    } else {
        Value::Null
    };
    Ok(json!({
        "ring": { "p": params.p, "a": params.a, "m": params.m, "modulus": params.modulus },
        "f": amb.modulus().to_json(),
        "generators": basis.generators().iter().map(|g| g.to_json()).collect::<Vec<_>>(),
        "length": amb.degree(),
        "log_p_size": code.log_p_size(),
        "components": components,
        "torsional_degrees": code.torsional_degrees().to_json(),
        "standard_form": basis.to_json(),
        "chain": amb.is_chain_ring(),
        "pir": amb.is_principal_ideal_ring(),
        "maximal_ideals": structure.to_json()["maximal_ideals"],
        "jacobson_radical": structure.to_json()["jacobson_radical"],
        "socle": structure.socle.to_json(),
        "p2_form": p2_form,
        "distance": distance,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableMode {
    EtaPs,
    TwoEtaPs,
}

impl std::str::FromStr for TableMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eta_ps" => Ok(TableMode::EtaPs),
            "two_eta_ps" => Ok(TableMode::TwoEtaPs),
            other => Err(Error::Parse(format!("unknown table mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub p: u64,
    pub m: usize,
    pub s: u32,
    pub eta: usize,
    pub i: u64,
    pub j: Option<u64>,
    /// Partition case or table row id.
    pub case: String,
    pub distance: Option<u64>,
}

/// One row per `i ∈ [0, p^s]`, or per pair `(i, j)` in the two-factor mode.
pub fn distance_table(p: u64, m: usize, s: u32, eta: usize, mode: TableMode) -> Result<Vec<TableRow>> {
    let big = p
        .checked_pow(s)
        .ok_or_else(|| Error::InvalidParams("p^s overflows".into()))?;
    let row = |i, j, r: DistanceReport| TableRow {
        p,
        m,
        s,
        eta,
        i,
        j,
        case: r.case.to_string(),
        distance: r.distance,
    };
    match mode {
        TableMode::EtaPs => (0..=big)
            .map(|i| Ok(row(i, None, eta_ps_distance(p, m, s, eta, i)?)))
            .collect(),
        TableMode::TwoEtaPs => {
            if p == 2 {
                return Err(Error::EvenPrime);
            }
            let mut out = Vec::new();
            for i in 0..=big {
                for j in 0..=big {
                    out.push(row(i, Some(j), two_eta_ps_distance(p, m, s, eta, i, j)?));
                }
            }
            Ok(out)
        }
    }
}
