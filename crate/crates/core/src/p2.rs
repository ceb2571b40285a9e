//! Characteristic `p²`: the seven-form ideal classification, closed-form
//! torsional degrees, and cyclic codes of length `p^s`.

use serde_json::{json, Value};

use crate::code::PolycyclicCode;
use crate::distance::{eta_ps_distance, DistanceReport};
use crate::error::{Error, Result};
use crate::factor::inverse_mod;
use crate::poly::Poly;
use crate::ring::GaloisRing;

/// One of the seven ideal shapes. Tail digits `η_j` are residue polynomials
/// of degree `< deg h` (their Teichmüller lifts are the actual digits), and
/// `η_0 ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum P2CanonicalForm {
    Zero,
    Whole,
    /// `⟨p h^n⟩`.
    PH { n: usize },
    /// `⟨h^k⟩`.
    H { k: usize },
    /// `⟨h^k + p h^l δ⟩`.
    HTail { k: usize, l: usize, delta: Vec<Poly> },
    /// `⟨h^k, p h^n⟩`.
    HAndPH { k: usize, n: usize },
    /// `⟨h^k + p h^l δ, p h^n⟩`.
    HTailAndPH {
        k: usize,
        l: usize,
        delta: Vec<Poly>,
        n: usize,
    },
}

impl P2CanonicalForm {
    pub fn variant_name(&self) -> &'static str {
        match self {
            P2CanonicalForm::Zero => "Zero",
            P2CanonicalForm::Whole => "Whole",
            P2CanonicalForm::PH { .. } => "PH_n",
            P2CanonicalForm::H { .. } => "H_k",
            P2CanonicalForm::HTail { .. } => "H_k_tail",
            P2CanonicalForm::HAndPH { .. } => "H_k_and_PH_n",
            P2CanonicalForm::HTailAndPH { .. } => "H_k_tail_and_PH_n",
        }
    }

    pub fn k(&self) -> Option<usize> {
        match self {
            P2CanonicalForm::H { k }
            | P2CanonicalForm::HTail { k, .. }
            | P2CanonicalForm::HAndPH { k, .. }
            | P2CanonicalForm::HTailAndPH { k, .. } => Some(*k),
            _ => None,
        }
    }

    pub fn n(&self) -> Option<usize> {
        match self {
            P2CanonicalForm::PH { n }
            | P2CanonicalForm::HAndPH { n, .. }
            | P2CanonicalForm::HTailAndPH { n, .. } => Some(*n),
            _ => None,
        }
    }

    fn tail(&self) -> Option<(usize, &[Poly])> {
        match self {
            P2CanonicalForm::HTail { l, delta, .. } | P2CanonicalForm::HTailAndPH { l, delta, .. } => {
                Some((*l, delta))
            }
            _ => None,
        }
    }

    /// Explicit generators over the ring of `h`.
    pub fn generators(&self, h: &Poly) -> Vec<Poly> {
        let ring = h.ring();
        let mut out = Vec::new();
        match self {
            P2CanonicalForm::Zero => {}
            P2CanonicalForm::Whole => out.push(Poly::one(ring)),
            _ => {
                if let Some(k) = self.k() {
                    let mut g = h.pow(k as u64);
                    if let Some((l, delta)) = self.tail() {
                        let d = recompose_digits(delta, h);
                        g = &g + &(&h.pow(l as u64) * &d).mul_p_pow(1);
                    }
                    out.push(g);
                }
                if let Some(n) = self.n() {
                    out.push(h.pow(n as u64).mul_p_pow(1));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "variant": self.variant_name() });
        if let Some(k) = self.k() {
            v["k"] = json!(k);
        }
        if let Some(n) = self.n() {
            v["n"] = json!(n);
        }
        if let Some((l, delta)) = self.tail() {
            v["l"] = json!(l);
            v["delta_digits"] = Value::Array(delta.iter().map(|d| d.to_json()).collect());
        }
        v
    }
}

/// `Σ lift(d_j) h^j` over the ring of `h`.
fn recompose_digits(digits: &[Poly], h: &Poly) -> Poly {
    let ring = h.ring();
    digits.iter().rev().fold(Poly::zero(ring), |acc, d| {
        &(&acc * h) + &d.teichmuller_lift_to(ring)
    })
}

/// Parameters of `f = h^t + p h^v β'` with `β' = Σ γ_j h^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FParams2 {
    pub base: Poly,
    pub t: usize,
    /// `None` when `β = 0`.
    pub v: Option<usize>,
    /// Residue digits `γ_j` (empty when `β = 0`); `γ_0 ≠ 0`.
    pub gamma: Vec<Poly>,
}

impl FParams2 {
    /// Extracts the parameters of a primary `f` relative to `base`.
    pub fn of(f: &Poly, base: &Poly) -> Result<Self> {
        let ring = f.ring();
        if ring.a() != 2 {
            return Err(Error::WrongCharacteristic(ring.a()));
        }
        let d = base.deg().filter(|&d| d > 0).ok_or(Error::NotMonic)?;
        let deg = f.deg().ok_or(Error::NotRegular)?;
        if !base.is_monic() || !f.is_monic() || deg % d != 0 {
            return Err(Error::InvalidParams("modulus is not a power of the base mod p".into()));
        }
        let t = deg / d;
        let diff = f - &base.pow(t as u64);
        if !diff.project().is_zero() {
            return Err(Error::InvalidParams("modulus is not a power of the base mod p".into()));
        }
        let digits = diff.div_p_pow(1).project().h_adic_digits(&base.project());
        let v = digits.iter().position(|q| !q.is_zero());
        let gamma = v.map_or(Vec::new(), |v| trim(digits[v..].to_vec()));
        Ok(FParams2 {
            base: base.clone(),
            t,
            v,
            gamma,
        })
    }

    /// `h^t + p h^v Σ lift(γ_j) h^j`.
    pub fn recompose(&self) -> Poly {
        let h = &self.base;
        let mut f = h.pow(self.t as u64);
        if let Some(v) = self.v {
            let beta = &h.pow(v as u64) * &recompose_digits(&self.gamma, h);
            f = &f + &beta.mul_p_pow(1);
        }
        f
    }
}

fn trim(mut digits: Vec<Poly>) -> Vec<Poly> {
    while digits.last().is_some_and(|d| d.is_zero()) {
        digits.pop();
    }
    digits
}

/// Residue `h̄`-adic digits of `g` reduced modulo `h̄^t`.
fn residue_digits(g: &Poly, hb: &Poly, t: usize) -> Vec<Poly> {
    let mut d = g.project().h_adic_digits(hb);
    d.truncate(t);
    d
}

/// Classifies a code over `GR(p², m)[x]/(f)`, `f` primary, relative to the
/// ambient's own base.
pub fn classify_p2(code: &PolycyclicCode) -> Result<P2CanonicalForm> {
    let amb = code.ambient();
    if amb.ring().a() != 2 {
        return Err(Error::WrongCharacteristic(amb.ring().a()));
    }
    if !amb.is_local() {
        return Err(Error::NotPrimaryComponent);
    }
    classify_p2_with_base(code, &amb.components()[0].base().clone())
}

/// Classifies relative to any monic `h` with `f ≡ h^t (mod p)`.
pub fn classify_p2_with_base(code: &PolycyclicCode, h: &Poly) -> Result<P2CanonicalForm> {
    let amb = code.ambient();
    let ring = amb.ring();
    if ring.a() != 2 {
        return Err(Error::WrongCharacteristic(ring.a()));
    }
    if !amb.is_local() {
        return Err(Error::NotPrimaryComponent);
    }
    let f = amb.modulus();
    let fp = FParams2::of(f, h)?;
    let t = fp.t;
    let hb = h.project();

    // (k, residue tail digits) of the normalized monic generators, and the
    // h-exponents of the p-multiples
    let mut monic: Vec<(usize, Vec<Poly>)> = Vec::new();
    let mut pmults: Vec<usize> = Vec::new();
    for g in code.generators() {
        let gd = residue_digits(g, &hb, t);
        if let Some(k) = gd.iter().position(|q| !q.is_zero()) {
            let digits = g.h_adic_digits(h);
            let unit = digits
                .iter()
                .enumerate()
                .skip(k)
                .fold(Poly::zero(ring), |acc, (i, q)| &acc + &(&h.pow((i - k) as u64) * q));
            let normalized = g.mulmod(&inverse_mod(&unit, f)?, f);
            let head = h.pow(k as u64);
            let mut tail = residue_digits(&(&normalized - &head).div_p_pow(1), &hb, t);
            tail.truncate(k);
            monic.push((k, tail));
        } else {
            let w = residue_digits(&g.div_p_pow(1), &hb, t);
            if let Some(n) = w.iter().position(|q| !q.is_zero()) {
                pmults.push(n);
            }
        }
    }

    let Some(jmin) = (0..monic.len()).min_by_key(|&i| monic[i].0) else {
        return Ok(match pmults.iter().min() {
            Some(&n) => P2CanonicalForm::PH { n },
            None => P2CanonicalForm::Zero,
        });
    };
    let (k, tail_j) = monic[jmin].clone();
    if k == 0 {
        return Ok(P2CanonicalForm::Whole);
    }
    let field = hb.ring().clone();
    let as_poly = |digits: &[Poly]| {
        digits
            .iter()
            .rev()
            .fold(Poly::zero(&field), |acc, d| &(&acc * &hb) + d)
    };
    let tj = as_poly(&tail_j);
    for (i, (ki, tail_i)) in monic.iter().enumerate() {
        if i == jmin {
            continue;
        }
        let r = &as_poly(tail_i) - &(&hb.pow((ki - k) as u64) * &tj);
        let rd = r.h_adic_digits(&hb);
        if let Some(n) = rd.iter().take(t).position(|q| !q.is_zero()) {
            pmults.push(n);
        }
    }
    let n = pmults.iter().copied().min().filter(|&n| n < k);
    let mut tail = tail_j;
    if let Some(n) = n {
        tail.truncate(n);
    }
    let tail = trim(tail);
    let lead = tail.iter().position(|q| !q.is_zero());
    Ok(match (lead, n) {
        (None, None) => P2CanonicalForm::H { k },
        (None, Some(n)) => P2CanonicalForm::HAndPH { k, n },
        (Some(l), None) => P2CanonicalForm::HTail {
            k,
            l,
            delta: tail[l..].to_vec(),
        },
        (Some(l), Some(n)) => P2CanonicalForm::HTailAndPH {
            k,
            l,
            delta: tail[l..].to_vec(),
            n,
        },
    })
}

/// `z = min({j : γ_j ≠ η_j} ∪ {t})`, missing digits read as zero.
fn first_difference(gamma: &[Poly], eta: &[Poly], t: usize) -> usize {
    let len = gamma.len().max(eta.len());
    (0..len)
        .find(|&j| {
            let a = gamma.get(j).filter(|q| !q.is_zero());
            let b = eta.get(j).filter(|q| !q.is_zero());
            a != b
        })
        .unwrap_or(t)
}

/// `(T_0, T_1)` of a classified code from the closed-form rules.
pub fn torsion_p2(form: &P2CanonicalForm, fp: &FParams2) -> (usize, usize) {
    let t = fp.t;
    let k = match form {
        P2CanonicalForm::Zero => return (t, t),
        P2CanonicalForm::Whole => return (0, 0),
        P2CanonicalForm::PH { n } => return (t, *n),
        other => other.k().expect("monic forms carry k"),
    };
    let mut t1 = k;
    if let Some(v) = fp.v {
        t1 = t1.min(v);
    }
    if let Some((l, delta)) = form.tail() {
        let e = t + l - k;
        match fp.v {
            Some(v) if v == e => {
                let z = first_difference(&fp.gamma, delta, t);
                t1 = k.min(v + z);
            }
            _ => t1 = t1.min(e),
        }
    }
    if let Some(n) = form.n() {
        t1 = t1.min(n);
    }
    (k, t1)
}

/// `C(n, k) = p^v · u`, returned as `(v, u mod p^e)`.
fn binomial_p_adic(n: u64, k: u64, p: u64, e: u32) -> (u32, u64) {
    let q = p.pow(e);
    let strip = |mut x: u64| {
        let mut v = 0;
        while x.is_multiple_of(p) {
            x /= p;
            v += 1;
        }
        (v, x % q)
    };
    let inv = |x: u64| {
        // x is a unit mod q; q is tiny
        (1..q).find(|&y| x * y % q == 1).expect("unit")
    };
    let (mut v, mut u) = (0i64, 1u64);
    for i in 1..=k {
        let (vn, un) = strip(n - k + i);
        let (vd, ud) = strip(i);
        v += vn as i64 - vd as i64;
        u = u * un % q * inv(ud) % q;
    }
    (v as u32, u)
}

/// `x^{p^s} - 1 = (x-1)^{p^s} + p (x-1)^{p^{s-1}} Σ γ_j (x-1)^j` over
/// `GR(p², m)`.
pub fn cyclic_ps_fparams(p: u64, m: usize, s: u32) -> Result<FParams2> {
    if s == 0 {
        return Err(Error::InvalidParams("s must be at least 1".into()));
    }
    let ring = GaloisRing::new(p, 2, m, None)?;
    let field = ring.residue_field();
    let big = p.pow(s);
    let low = p.pow(s - 1);
    let mut gamma = vec![Poly::zero(&field); ((p - 2) * low + 1) as usize];
    for i in 0..p - 1 {
        let (v, u) = binomial_p_adic(big, (i + 1) * low, p, 2);
        let digit = if v == 1 { u % p } else { 0 };
        gamma[(i * low) as usize] = Poly::constant(&field, field.from_int(digit as i64));
    }
    Ok(FParams2 {
        base: Poly::from_ints(&ring, &[-1, 1]),
        t: big as usize,
        v: Some(low as usize),
        gamma: trim(gamma),
    })
}

/// Distance of a cyclic code of length `p^s` over `GR(p², m)` given by a
/// canonical form relative to `x - 1`.
pub fn cyclic_ps_distance_p2(p: u64, m: usize, s: u32, form: &P2CanonicalForm) -> Result<DistanceReport> {
    let fp = cyclic_ps_fparams(p, m, s)?;
    let (_, t1) = torsion_p2(form, &fp);
    let mut r = eta_ps_distance(p, m, s, 1, t1 as u64)?;
    r.theorem = "cyclic_ps_p2";
    Ok(r)
}
