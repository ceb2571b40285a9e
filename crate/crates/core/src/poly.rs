//! Dense univariate polynomials over a Galois ring (or its residue field).

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::{GaloisRing, GrElem};

/// A polynomial with coefficients in a [`GaloisRing`], trailing zeros trimmed.
#[derive(Clone)]
pub struct Poly {
    ring: GaloisRing,
    coeffs: Vec<GrElem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.ring == other.ring
    }
}
impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.ring.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = self.ring.format(c);
            let one = self.ring.is_one(c);
            match i {
                0 => write!(f, "{cs}")?,
                1 if one => write!(f, "x")?,
                1 => write!(f, "{cs}x")?,
                _ if one => write!(f, "x^{i}")?,
                _ => write!(f, "{cs}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn from_coeffs(ring: &GaloisRing, coeffs: Vec<GrElem>) -> Self {
        let mut p = Poly {
            ring: ring.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn from_ints(ring: &GaloisRing, c: &[i64]) -> Self {
        Self::from_coeffs(ring, c.iter().map(|&v| ring.from_int(v)).collect())
    }

    pub fn zero(ring: &GaloisRing) -> Self {
        Poly {
            ring: ring.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(ring: &GaloisRing) -> Self {
        Self::constant(ring, ring.one())
    }

    pub fn constant(ring: &GaloisRing, c: GrElem) -> Self {
        Self::from_coeffs(ring, vec![c])
    }

    pub fn x(ring: &GaloisRing) -> Self {
        Self::monomial(ring, ring.one(), 1)
    }

    /// `c x^d`.
    pub fn monomial(ring: &GaloisRing, c: GrElem, d: usize) -> Self {
        let mut coeffs = vec![ring.zero(); d + 1];
        coeffs[d] = c;
        Self::from_coeffs(ring, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.ring.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &GaloisRing {
        &self.ring
    }
    pub fn coeffs(&self) -> &[GrElem] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    /// Number of stored coefficients (`deg + 1`, or 0 for the zero polynomial).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn coeff(&self, i: usize) -> GrElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }
    pub fn leading(&self) -> Option<&GrElem> {
        self.coeffs.last()
    }
    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.ring.is_one(c))
    }
    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.ring.is_one(&self.coeffs[0])
    }

    /// Coefficient vector padded with zeros to length `n`.
    pub fn to_vec(&self, n: usize) -> Vec<GrElem> {
        (0..n).map(|i| self.coeff(i)).collect()
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !self.ring.is_zero(c)).count()
    }

    pub fn scale(&self, c: &GrElem) -> Poly {
        let r = &self.ring;
        Self::from_coeffs(r, self.coeffs.iter().map(|a| r.mul(a, c)).collect())
    }

    pub fn scale_int(&self, k: i64) -> Poly {
        self.scale(&self.ring.from_int(k))
    }

    pub fn mul_p_pow(&self, v: u32) -> Poly {
        let r = &self.ring;
        Self::from_coeffs(r, self.coeffs.iter().map(|a| r.mul_p_pow(a, v)).collect())
    }

    /// Coefficientwise exact division by `p^v`.
    pub fn div_p_pow(&self, v: u32) -> Poly {
        let r = &self.ring;
        Self::from_coeffs(r, self.coeffs.iter().map(|a| r.div_p_pow(a, v)).collect())
    }

    /// Minimum coefficient valuation (`a` for zero).
    pub fn valuation(&self) -> u32 {
        self.coeffs
            .iter()
            .map(|c| self.ring.valuation(c))
            .min()
            .unwrap_or(self.ring.a())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.ring.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Projection onto the residue field.
    pub fn project(&self) -> Poly {
        let r = &self.ring;
        Self::from_coeffs(
            &r.residue_field(),
            self.coeffs.iter().map(|c| r.project(c)).collect(),
        )
    }

    /// Verbatim lift of a residue-field polynomial into `ring`.
    pub fn lift_to(&self, ring: &GaloisRing) -> Poly {
        Self::from_coeffs(ring, self.coeffs.iter().map(|c| ring.lift(c)).collect())
    }

    /// Lift into `ring` with Teichmüller coefficients.
    pub fn teichmuller_lift_to(&self, ring: &GaloisRing) -> Poly {
        Self::from_coeffs(
            ring,
            self.coeffs
                .iter()
                .map(|c| ring.teichmuller(&ring.lift(c)))
                .collect(),
        )
    }

    /// Reinterpret the coefficients in another ring of the same `(p, m)`.
    pub fn change_ring(&self, ring: &GaloisRing) -> Poly {
        Self::from_coeffs(
            ring,
            self.coeffs.iter().map(|c| ring.from_coeffs(c.coeffs())).collect(),
        )
    }

    pub fn is_regular(&self) -> bool {
        self.coeffs.iter().any(|c| self.ring.is_unit(c))
    }

    pub fn derivative(&self) -> Poly {
        let r = &self.ring;
        Self::from_coeffs(
            r,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| r.mul_int(c, i as u64))
                .collect(),
        )
    }

    /// Scales so the leading coefficient is 1. Requires a unit leading coefficient.
    pub fn monic(&self) -> Result<Poly> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(c) => Ok(self.scale(&self.ring.invert(c)?)),
        }
    }

    /// Division by a polynomial whose leading coefficient is a unit.
    pub fn divrem_unit_lead(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let r = &self.ring;
        let lead = d.leading().ok_or(Error::DivisorNotRegular)?;
        let inv = r.invert(lead).map_err(|_| Error::DivisorNotRegular)?;
        let dd = d.deg().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(r), self.clone()));
        }
        let mut quot = vec![r.zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = r.mul(&rem[k], &inv);
            if r.is_zero(&c) {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = r.sub(&rem[idx], &r.mul(&c, dc));
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(r, quot), Self::from_coeffs(r, rem)))
    }

    /// Remainder modulo a monic (or unit-leading) polynomial.
    pub fn rem(&self, d: &Poly) -> Poly {
        if self.len() < d.len() {
            return self.clone();
        }
        self.divrem_unit_lead(d)
            .expect("modulus must have a unit leading coefficient")
            .1
    }

    /// Division by a regular divisor. When the leading coefficient is not a
    /// unit, the divisor is first split as `unit * monic`.
    pub fn divide(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if !d.is_regular() {
            return Err(Error::DivisorNotRegular);
        }
        if d.ring.is_unit(d.leading().unwrap()) {
            return self.divrem_unit_lead(d);
        }
        let (u, dstar) = crate::factor::monic_associate(d)?;
        let (q, r) = self.divrem_unit_lead(&dstar)?;
        let uinv = crate::factor::invert_unit_poly(&u)?;
        Ok((&q * &uinv, r))
    }

    pub fn mulmod(&self, b: &Poly, f: &Poly) -> Poly {
        (self * b).rem(f)
    }

    pub fn powmod(&self, mut e: u128, f: &Poly) -> Poly {
        let mut acc = Poly::one(&self.ring).rem(f);
        let mut b = self.rem(f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&b, f);
            }
            e >>= 1;
            if e > 0 {
                b = b.mulmod(&b, f);
            }
        }
        acc
    }

    /// Digits `q_i` (each of degree `< deg h`) with `self = Σ q_i h^i`.
    pub fn h_adic_digits(&self, h: &Poly) -> Vec<Poly> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        while !cur.is_zero() {
            let (q, r) = cur
                .divrem_unit_lead(h)
                .expect("h-adic base must be monic");
            out.push(r);
            cur = q;
        }
        out
    }

    /// Layers `L_j` with Teichmüller coefficients and `self = Σ p^j L_j`.
    pub fn padic_layers(&self) -> Vec<Poly> {
        let r = &self.ring;
        let a = r.a() as usize;
        let mut layers = vec![Vec::with_capacity(self.len()); a];
        for c in &self.coeffs {
            for (j, d) in r.padic_expand(c).digits.into_iter().enumerate() {
                layers[j].push(d);
            }
        }
        layers
            .into_iter()
            .map(|c| Self::from_coeffs(r, c))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|c| self.ring.to_json(c)).collect())
    }

    pub fn parse_json(ring: &GaloisRing, v: &Value) -> Result<Poly> {
        match v {
            Value::Array(items) => Ok(Self::from_coeffs(
                ring,
                items
                    .iter()
                    .map(|c| ring.parse_json(c))
                    .collect::<Result<_>>()?,
            )),
            other => Err(Error::Parse(format!(
                "expected a coefficient array, got {other}"
            ))),
        }
    }

    // --- field-only helpers (a = 1) ---

    /// Monic gcd over a field.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (g, _, _) = self.ext_gcd(other);
        g
    }

    /// `(g, s, t)` with `g = s*self + t*other` monic (zero if both zero).
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        debug_assert!(self.ring.is_field());
        let r = &self.ring;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(r), Poly::zero(r));
        let (mut t0, mut t1) = (Poly::zero(r), Poly::one(r));
        while !r1.is_zero() {
            let (q, rr) = r0.divrem_unit_lead(&r1).unwrap();
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, rr);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(c) => {
                let inv = r.invert(c).unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let r = &self.ring;
        let n = self.len().max(o.len());
        Poly::from_coeffs(
            r,
            (0..n).map(|i| r.add(&self.coeff(i), &o.coeff(i))).collect(),
        )
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let r = &self.ring;
        let n = self.len().max(o.len());
        Poly::from_coeffs(
            r,
            (0..n).map(|i| r.sub(&self.coeff(i), &o.coeff(i))).collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let r = &self.ring;
        Poly::from_coeffs(r, self.coeffs.iter().map(|c| r.neg(c)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let r = &self.ring;
        if self.is_zero() || o.is_zero() {
            return Poly::zero(r);
        }
        let mut out = vec![r.zero(); self.len() + o.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = r.add(&out[i + j], &r.mul(a, b));
            }
        }
        Poly::from_coeffs(r, out)
    }
}

/// One term `p^j h^i α` of an h-adic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HAdicTerm {
    pub j: u32,
    pub i: usize,
    pub alpha: Poly,
}

/// `g = Σ p^{j_r} h^{i_r} α_r` with `j` strictly increasing, `i` strictly
/// decreasing and every `α_r ∉ ⟨p, h⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HAdicForm {
    pub base: Poly,
    pub terms: Vec<HAdicTerm>,
}

impl HAdicForm {
    pub fn recompose(&self) -> Poly {
        let r = self.base.ring();
        self.terms.iter().fold(Poly::zero(r), |acc, t| {
            &acc + &(&self.base.pow(t.i as u64) * &t.alpha).mul_p_pow(t.j)
        })
    }

    /// Leading h-exponent of the unit (`j = 0`) layer, if present.
    pub fn unit_exponent(&self) -> Option<usize> {
        self.terms.iter().find(|t| t.j == 0).map(|t| t.i)
    }
}

/// The h-adic form of `g` for a monic `h`.
pub fn h_adic_decompose(g: &Poly, h: &Poly) -> HAdicForm {
    let r = g.ring();
    let digits: Vec<Vec<Poly>> = g
        .h_adic_digits(h)
        .iter()
        .map(|q| q.padic_layers())
        .collect();
    // remaining (i, j) pairs with a nonzero digit
    let mut remaining: Vec<(usize, u32)> = Vec::new();
    for (i, layers) in digits.iter().enumerate() {
        for (j, d) in layers.iter().enumerate() {
            if !d.is_zero() {
                remaining.push((i, j as u32));
            }
        }
    }
    let mut terms = Vec::new();
    while let Some(&(_, j0)) = remaining.iter().min_by_key(|&&(_, j)| j) {
        let i0 = remaining
            .iter()
            .filter(|&&(_, j)| j == j0)
            .map(|&(i, _)| i)
            .min()
            .unwrap();
        let mut alpha = Poly::zero(r);
        remaining.retain(|&(i, j)| {
            if i >= i0 {
                let term = (&h.pow((i - i0) as u64) * &digits[i][j as usize]).mul_p_pow(j - j0);
                alpha = &alpha + &term;
                false
            } else {
                true
            }
        });
        terms.push(HAdicTerm { j: j0, i: i0, alpha });
    }
    HAdicForm {
        base: h.clone(),
        terms,
    }
}
