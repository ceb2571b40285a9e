//! Closed-form Hamming distances of repeated-root constacyclic codes and
//! the binomial weight machinery behind them.

use serde::Serialize;
use serde_json::Value;

use crate::code::PolycyclicCode;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::{is_prime, GaloisRing, GrElem};

/// Where `i ∈ [0, p^s]` falls in the index partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "variant")]
pub enum PartitionCase {
    Zero,
    /// `1 ≤ i ≤ p^{s-1}`.
    LowRange,
    /// `βp^{s-1} + 1 ≤ i ≤ (β+1)p^{s-1}`, `1 ≤ β ≤ p-2`.
    Beta { beta: u64 },
    /// `p^s - p^{s-k} + (τ-1)p^{s-k-1} + 1 ≤ i ≤ p^s - p^{s-k} + τp^{s-k-1}`.
    TauK { tau: u64, k: u32 },
    Full,
}

impl std::fmt::Display for PartitionCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PartitionCase::Zero => write!(f, "zero"),
            PartitionCase::LowRange => write!(f, "low"),
            PartitionCase::Beta { beta } => write!(f, "beta({beta})"),
            PartitionCase::TauK { tau, k } => write!(f, "tau-k({tau},{k})"),
            PartitionCase::Full => write!(f, "full"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum CaseTag {
    Partition { case: PartitionCase },
    /// Row 1–11 of the two-factor distance table.
    TableRow { row: u8 },
    /// Whole space (`(0,0)`) or zero space (`(p^s,p^s)`).
    Trivial,
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CaseTag::Partition { case } => write!(f, "{case}"),
            CaseTag::TableRow { row } => write!(f, "row {row}"),
            CaseTag::Trivial => write!(f, "trivial"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub case: CaseTag,
    /// The exponent(s) the formula was evaluated at.
    pub exponents: Vec<u64>,
    /// `None` for the zero code.
    pub distance: Option<u64>,
    pub theorem: &'static str,
    pub oracle_checked: Option<bool>,
}

impl DistanceReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// `Π (b_d + 1)` over the base-`p` digits `b_d` of `n`.
pub fn weight_of_binomial_power(mut n: u64, p: u64) -> u64 {
    let mut w = 1;
    while n > 0 {
        w *= n % p + 1;
        n /= p;
    }
    w
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn check_s(s: u32) -> Result<()> {
    if s == 0 {
        Err(Error::InvalidParams("s must be at least 1".into()))
    } else {
        Ok(())
    }
}

pub fn partition_index(i: u64, p: u64, s: u32) -> Result<PartitionCase> {
    check_prime(p)?;
    check_s(s)?;
    let big = p.pow(s);
    let low = p.pow(s - 1);
    if i > big {
        return Err(Error::OutOfRange(i));
    }
    if i == 0 {
        return Ok(PartitionCase::Zero);
    }
    if i == big {
        return Ok(PartitionCase::Full);
    }
    if i <= low {
        return Ok(PartitionCase::LowRange);
    }
    if i <= (p - 1) * low {
        return Ok(PartitionCase::Beta {
            beta: (i - 1) / low,
        });
    }
    for k in 1..s {
        let step = p.pow(s - k - 1);
        let start = big - p.pow(s - k);
        for tau in 1..p {
            if i > start + (tau - 1) * step && i <= start + tau * step {
                return Ok(PartitionCase::TauK { tau, k });
            }
        }
    }
    unreachable!("partition covers [0, p^s]")
}

fn partition_distance(case: PartitionCase, p: u64) -> Option<u64> {
    match case {
        PartitionCase::Zero => Some(1),
        PartitionCase::LowRange => Some(2),
        PartitionCase::Beta { beta } => Some(beta + 2),
        PartitionCase::TauK { tau, k } => Some((tau + 1) * p.pow(k)),
        PartitionCase::Full => None,
    }
}

/// `d_H(⟨(x^η + γ)^i⟩)` in `F_{p^m}[x]/⟨(x^η + γ)^{p^s}⟩`.
///
/// For `p = 2` there is no β range and `τ = 1`, so the τ-k branch reads
/// `2^{k+1}`.
pub fn eta_ps_distance(p: u64, _m: usize, s: u32, _eta: usize, i: u64) -> Result<DistanceReport> {
    let case = partition_index(i, p, s)?;
    Ok(DistanceReport {
        case: CaseTag::Partition { case },
        exponents: vec![i],
        distance: partition_distance(case, p),
        theorem: "eta_ps",
        oracle_checked: None,
    })
}

/// `d_H(⟨(x^η - ξ)^i (x^η + ξ)^j⟩)` for length `2ηp^s`, odd `p`.
pub fn two_eta_ps_distance(
    p: u64,
    _m: usize,
    s: u32,
    _eta: usize,
    i: u64,
    j: u64,
) -> Result<DistanceReport> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    check_s(s)?;
    let big = p.pow(s);
    if i > big {
        return Err(Error::OutOfRange(i));
    }
    if j > big {
        return Err(Error::OutOfRange(j));
    }
    let report = |case, distance| DistanceReport {
        case,
        exponents: vec![i, j],
        distance,
        theorem: "two_eta_ps",
        oracle_checked: None,
    };
    if i == 0 && j == 0 {
        return Ok(report(CaseTag::Trivial, Some(1)));
    }
    if i == big && j == big {
        return Ok(report(CaseTag::Trivial, None));
    }
    let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
    let low = p.pow(s - 1);
    let (row, d) = table_row(p, s, hi, lo, low)?;
    Ok(report(CaseTag::TableRow { row }, Some(d)))
}

fn table_row(p: u64, s: u32, i: u64, j: u64, low: u64) -> Result<(u8, u64)> {
    use PartitionCase::*;
    if j == 0 {
        return Ok((1, 2));
    }
    if i <= low {
        return Ok((2, 2));
    }
    let ci = partition_index(i, p, s)?;
    let cj = partition_index(j, p, s)?;
    Ok(match (ci, cj) {
        (_, LowRange) if i <= 2 * low => (3, 3),
        (_, LowRange) => (4, 4),
        (Full, Beta { beta }) => (10, 2 * (beta + 2)),
        (Full, TauK { tau, k }) => (11, 2 * (tau + 1) * p.pow(k)),
        (Beta { beta }, Beta { beta: b2 }) => (5, (beta + 2).min(2 * (b2 + 2))),
        (TauK { .. }, Beta { beta }) => (6, 2 * (beta + 2)),
        (TauK { tau: t1, k: k1 }, TauK { tau: t2, k: k2 }) if k1 == k2 => {
            if t1 == t2 {
                (7, (t1 + 1) * p.pow(k1))
            } else {
                (8, (2 * (t2 + 1) * p.pow(k1)).min((t1 + 1) * p.pow(k1)))
            }
        }
        (TauK { .. }, TauK { tau: t2, k: k2 }) => (9, 2 * (t2 + 1) * p.pow(k2)),
        _ => unreachable!("i ≥ j covers every remaining pair"),
    })
}

/// `x² + 1` is irreducible over `F_{p^m}` iff `p ≡ 3 (mod 4)` and `m` is odd.
pub fn x2_plus_1_irreducible(p: u64, m: usize) -> bool {
    p % 4 == 3 && m % 2 == 1
}

/// Negacyclic codes `⟨(x² + 1)^i⟩` of length `2p^s`.
pub fn negacyclic_2ps_distance(p: u64, m: usize, s: u32, i: u64) -> Result<DistanceReport> {
    check_prime(p)?;
    if !x2_plus_1_irreducible(p, m) {
        return Err(Error::ReducibleModulus { p, m });
    }
    let mut r = eta_ps_distance(p, m, s, 2, i)?;
    r.theorem = "negacyclic_2ps";
    Ok(r)
}

/// `(x^η + γ)^n` expanded over `field`.
pub fn binomial_power(field: &GaloisRing, eta: usize, gamma: &GrElem, n: u64) -> Poly {
    let b = &Poly::monomial(field, field.one(), eta) + &Poly::constant(field, gamma.clone());
    b.pow(n)
}

/// Both sides of `w(g (x^η+γ)^N) ≥ w(g mod (x^η+γ)) · w((x^η+γ)^N)`.
pub fn weight_retaining_sides(g: &Poly, eta: usize, gamma: &GrElem, n: u64) -> (usize, usize) {
    let field = g.ring();
    let power = binomial_power(field, eta, gamma, n);
    let base = binomial_power(field, eta, gamma, 1);
    let lhs = (g * &power).weight();
    let rhs = g.rem(&base).weight() * power.weight();
    (lhs, rhs)
}

pub fn weight_retaining_check(g: &Poly, eta: usize, gamma: &GrElem, n: u64) -> bool {
    let (l, r) = weight_retaining_sides(g, eta, gamma, n);
    l >= r
}

/// `w((x^η+γ1)^{p^s} (x^η+γ2)^i) = 2 w((x^η+γ2)^i)` for `0 < i < p^s`.
pub fn product_weight_identity_check(
    field: &GaloisRing,
    eta: usize,
    g1: &GrElem,
    g2: &GrElem,
    i: u64,
    s: u32,
) -> bool {
    let ps = field.p().pow(s);
    let lhs = &binomial_power(field, eta, g1, ps) * &binomial_power(field, eta, g2, i);
    lhs.weight() == 2 * weight_of_binomial_power(i, field.p()) as usize
}

/// `(η, γ̄)` if the residue of `h` is `x^η + γ̄` with `γ̄ ≠ 0`.
fn binomial_shape(h: &Poly) -> Option<(usize, GrElem)> {
    let hb = h.project();
    let eta = hb.deg()?;
    let field = hb.ring();
    if eta == 0 || !hb.is_monic() {
        return None;
    }
    let c0 = hb.coeff(0);
    let middle_zero = (1..eta).all(|k| field.is_zero(&hb.coeff(k)));
    (middle_zero && !field.is_zero(&c0)).then_some((eta, c0))
}

fn log_p(t: usize, p: u64) -> Option<u32> {
    let mut s = 0;
    let mut x = t as u64;
    while x > 1 {
        if !x.is_multiple_of(p) {
            return None;
        }
        x /= p;
        s += 1;
    }
    (s >= 1).then_some(s)
}

/// Least `i` whose `h`-adic digit of `g` is not divisible by `p`.
pub fn residue_exponent(g: &Poly, h: &Poly) -> usize {
    g.h_adic_digits(h)
        .iter()
        .position(|d| !d.project().is_zero())
        .unwrap_or(usize::MAX)
}

fn last_generator(code: &PolycyclicCode) -> Result<Poly> {
    code.standard_form_basis()
        .merged
        .last()
        .map(|m| m.g.clone())
        .ok_or(Error::ZeroCode)
}

/// Distance of a code whose ambient has one primary component with residue
/// base `x^η + γ` and multiplicity `p^s`, read off its last standard-form
/// generator.
pub fn gr_distance_eta_ps(code: &PolycyclicCode) -> Result<DistanceReport> {
    let amb = code.ambient();
    if !amb.is_local() {
        return Err(Error::UnsupportedCase("ambient has several primary components".into()));
    }
    let comp = &amb.components()[0];
    let p = amb.ring().p();
    let (eta, _) = binomial_shape(comp.base())
        .ok_or_else(|| Error::UnsupportedCase("primary base is not of the form x^η + γ".into()))?;
    let s = log_p(comp.t(), p)
        .ok_or_else(|| Error::UnsupportedCase("multiplicity is not a power of p".into()))?;
    let g = last_generator(code)?;
    let e0 = residue_exponent(&g, comp.base()).min(comp.t());
    let mut r = eta_ps_distance(p, amb.ring().m(), s, eta, e0 as u64)?;
    r.theorem = "gr_eta_ps";
    Ok(r)
}

/// Distance for ambients with two primary components with residue bases
/// `x^η ∓ ξ`, both of multiplicity `p^s` (odd `p`).
pub fn gr_distance_2eta_ps(code: &PolycyclicCode) -> Result<DistanceReport> {
    let amb = code.ambient();
    let p = amb.ring().p();
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    let comps = amb.components();
    if comps.len() != 2 {
        return Err(Error::UnsupportedCase(format!(
            "expected two primary components, found {}",
            comps.len()
        )));
    }
    let shapes: Vec<(usize, GrElem)> = comps
        .iter()
        .map(|c| binomial_shape(c.base()))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::UnsupportedCase("primary base is not of the form x^η + c".into()))?;
    let field = amb.ring().residue_field();
    let (eta, c0) = shapes[0].clone();
    if shapes[1].0 != eta || shapes[1].1 != field.neg(&c0) {
        return Err(Error::UnsupportedCase("bases are not x^η - ξ and x^η + ξ".into()));
    }
    if comps[0].t() != comps[1].t() {
        return Err(Error::UnsupportedCase("multiplicities differ".into()));
    }
    let s = log_p(comps[0].t(), p)
        .ok_or_else(|| Error::UnsupportedCase("multiplicity is not a power of p".into()))?;
    let g = last_generator(code)?;
    let mut exps: Vec<u64> = comps
        .iter()
        .map(|c| residue_exponent(&g, c.base()).min(c.t()) as u64)
        .collect();
    // label the base with the smaller residue index as x^η - ξ
    let idx0 = field.index(&c0);
    let idx1 = field.index(&shapes[1].1);
    if idx1 < idx0 {
        exps.swap(0, 1);
    }
    let mut r = two_eta_ps_distance(p, amb.ring().m(), s, eta, exps[0], exps[1])?;
    r.theorem = "gr_two_eta_ps";
    Ok(r)
}
