//! Galois rings `GR(p^a, m) = Z_{p^a}[y] / (g(y))` and their residue fields.
//!
//! Elements are plain coefficient vectors ([`GrElem`]); all arithmetic goes
//! through a [`GaloisRing`] handle, which is cheap to clone and shareable
//! across threads.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

pub(crate) type Coeffs = SmallVec<[u64; 2]>;

/// An element of a Galois ring: `m` coefficients in `[0, p^a)`, little-endian
/// in the power basis of the modulus root.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GrElem(pub(crate) Coeffs);

impl GrElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }
}

/// Validated parameters of `GR(p^a, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingParams {
    pub p: u64,
    pub a: u32,
    pub m: usize,
    /// Monic modulus, little-endian, `m + 1` coefficients.
    pub modulus: Vec<u64>,
}

/// The p-adic expansion `z = z_0 + p z_1 + ... + p^{a-1} z_{a-1}` with
/// Teichmüller digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicExpansion {
    pub digits: Vec<GrElem>,
}

struct Inner {
    params: RingParams,
    q: u64,
    residue: Option<GaloisRing>,
}

/// Handle to a Galois ring. Clones share the same parameters.
#[derive(Clone)]
pub struct GaloisRing(Arc<Inner>);

impl PartialEq for GaloisRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.params == other.0.params
    }
}
impl Eq for GaloisRing {}

impl fmt::Debug for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.0.params;
        write!(f, "GR({}^{}, {})", p.p, p.a, p.m)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// --- small dense polynomial helpers over F_p, used only for modulus checks ---

fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let df = f.len() - 1;
    let inv_lead = fp_inv(f[df], p);
    while r.len() > df {
        let k = r.len() - 1;
        let c = r[k] * inv_lead % p;
        for i in 0..=df {
            let idx = k - df + i;
            r[idx] = (r[idx] + p - c * f[i] % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut t = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            t[i + j] = (t[i + j] + x * y) % p;
        }
    }
    fp_rem(&t, f, p)
}

fn fp_inv(x: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^k) mod f` over F_p.
fn fp_frobenius_x(k: usize, f: &[u64], p: u64) -> Vec<u64> {
    let mut cur = fp_rem(&[0, 1], f, p);
    for _ in 0..k {
        // cur <- cur^p
        let mut acc = vec![1u64];
        let mut base = cur.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_mulmod(&acc, &base, f, p);
            }
            base = fp_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        cur = acc;
    }
    cur
}

/// Rabin's irreducibility test for a monic polynomial over F_p.
pub(crate) fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let x = fp_rem(&[0, 1], f, p);
    if fp_frobenius_x(m, f, p) != x {
        return false;
    }
    for r in prime_factors(m) {
        let mut d = fp_frobenius_x(m / r, f, p);
        d.resize(d.len().max(2), 0);
        d[1] = (d[1] + p - 1) % p;
        let g = fp_gcd(&d, f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl GaloisRing {
    /// Builds `GR(p^a, m)`. Without a modulus, the first monic irreducible of
    /// degree `m` over F_p (counting coefficients as base-p digits, constant
    /// term least significant) is lifted verbatim.
    pub fn new(p: u64, a: u32, m: usize, modulus: Option<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if a == 0 || m == 0 {
            return Err(Error::InvalidParams("a and m must be at least 1".into()));
        }
        let q = p
            .checked_pow(a)
            .filter(|&q| q < (1u64 << 31))
            .ok_or_else(|| Error::InvalidParams("p^a must be below 2^31".into()))?;
        let modulus = match modulus {
            Some(mut g) => {
                if g.len() != m + 1 {
                    return Err(Error::InvalidParams(format!(
                        "modulus must have degree {m}"
                    )));
                }
                for c in g.iter_mut() {
                    *c %= q;
                }
                if g[m] != 1 {
                    return Err(Error::NotMonic);
                }
                let residue: Vec<u64> = g.iter().map(|c| c % p).collect();
                if !fp_is_irreducible(&residue, p) {
                    return Err(Error::NotIrreducible);
                }
                g
            }
            None => find_irreducible(p, m)?,
        };
        Ok(Self::build(RingParams { p, a, m, modulus }, q))
    }

    fn build(params: RingParams, q: u64) -> Self {
        let residue = if params.a == 1 {
            None
        } else {
            let rp = RingParams {
                p: params.p,
                a: 1,
                m: params.m,
                modulus: params.modulus.iter().map(|c| c % params.p).collect(),
            };
            Some(Self::build(rp, params.p))
        };
        GaloisRing(Arc::new(Inner { params, q, residue }))
    }

    pub fn from_params(params: &RingParams) -> Result<Self> {
        Self::new(params.p, params.a, params.m, Some(params.modulus.clone()))
    }

    /// `Z_{p^a}`.
    pub fn integers(p: u64, a: u32) -> Result<Self> {
        Self::new(p, a, 1, None)
    }

    /// The finite field `F_{p^m}`.
    pub fn field(p: u64, m: usize) -> Result<Self> {
        Self::new(p, 1, m, None)
    }

    pub fn params(&self) -> &RingParams {
        &self.0.params
    }
    pub fn p(&self) -> u64 {
        self.0.params.p
    }
    pub fn a(&self) -> u32 {
        self.0.params.a
    }
    pub fn m(&self) -> usize {
        self.0.params.m
    }
    /// The characteristic `p^a`.
    pub fn q(&self) -> u64 {
        self.0.q
    }
    /// Number of elements, `p^(a m)`.
    pub fn order(&self) -> u128 {
        (self.q() as u128).pow(self.m() as u32)
    }
    /// Size of the residue field, `p^m`.
    pub fn residue_order(&self) -> u128 {
        (self.p() as u128).pow(self.m() as u32)
    }
    pub fn is_field(&self) -> bool {
        self.a() == 1
    }

    /// The residue field `F_{p^m}` (the ring itself when `a = 1`).
    pub fn residue_field(&self) -> GaloisRing {
        self.0.residue.clone().unwrap_or_else(|| self.clone())
    }

    pub fn zero(&self) -> GrElem {
        GrElem(smallvec![0; self.m()])
    }
    pub fn one(&self) -> GrElem {
        self.from_int(1)
    }
    pub fn from_int(&self, v: i64) -> GrElem {
        let mut e = self.zero();
        e.0[0] = v.rem_euclid(self.q() as i64) as u64;
        e
    }
    /// Coefficients are reduced into `[0, p^a)`; missing ones are zero.
    pub fn from_coeffs(&self, c: &[u64]) -> GrElem {
        let q = self.q();
        let m = self.m();
        let mut e = self.zero();
        for (i, &v) in c.iter().enumerate() {
            if i < m {
                e.0[i] = v % q;
            } else if v % q != 0 {
                // reduce the overflow through the modulus
                let mut y = self.one();
                for _ in 0..i {
                    y = self.mul(&y, &self.generator());
                }
                e = self.add(&e, &self.mul_int(&y, v % q));
            }
        }
        e
    }

    /// The root `ζ` of the modulus (the class of `y`).
    pub fn generator(&self) -> GrElem {
        if self.m() == 1 {
            self.from_int(-(self.params().modulus[0] as i64))
        } else {
            let mut e = self.zero();
            e.0[1] = 1;
            e
        }
    }

    /// Element with the given index in `[0, order)`, digits base `p^a`.
    pub fn from_index(&self, mut idx: u128) -> GrElem {
        let q = self.q() as u128;
        let mut e = self.zero();
        for c in e.0.iter_mut() {
            *c = (idx % q) as u64;
            idx /= q;
        }
        e
    }

    pub fn index(&self, e: &GrElem) -> u128 {
        let q = self.q() as u128;
        e.0.iter().rev().fold(0u128, |acc, &c| acc * q + c as u128)
    }

    /// All elements, in index order. Only sensible for small rings.
    pub fn elements(&self) -> impl Iterator<Item = GrElem> + '_ {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    pub fn is_zero(&self, e: &GrElem) -> bool {
        e.0.iter().all(|&c| c == 0)
    }
    pub fn is_one(&self, e: &GrElem) -> bool {
        e.0[0] == 1 % self.q() && e.0[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &GrElem, y: &GrElem) -> GrElem {
        let q = self.q();
        GrElem(x.0.iter().zip(&y.0).map(|(&a, &b)| (a + b) % q).collect())
    }
    pub fn sub(&self, x: &GrElem, y: &GrElem) -> GrElem {
        let q = self.q();
        GrElem(x.0.iter().zip(&y.0).map(|(&a, &b)| (a + q - b) % q).collect())
    }
    pub fn neg(&self, x: &GrElem) -> GrElem {
        let q = self.q();
        GrElem(x.0.iter().map(|&a| (q - a) % q).collect())
    }
    pub fn mul_int(&self, x: &GrElem, k: u64) -> GrElem {
        let q = self.q();
        let k = k % q;
        GrElem(x.0.iter().map(|&a| a * k % q).collect())
    }

    pub fn mul(&self, x: &GrElem, y: &GrElem) -> GrElem {
        let q = self.q();
        let m = self.m();
        if m == 1 {
            return GrElem(smallvec![x.0[0] * y.0[0] % q]);
        }
        let mut t: SmallVec<[u64; 8]> = smallvec![0; 2 * m - 1];
        for (i, &a) in x.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.0.iter().enumerate() {
                t[i + j] = (t[i + j] + a * b) % q;
            }
        }
        let g = &self.params().modulus;
        for k in (m..2 * m - 1).rev() {
            let c = t[k];
            if c == 0 {
                continue;
            }
            for i in 0..m {
                let idx = k - m + i;
                t[idx] = (t[idx] + q - c * g[i] % q) % q;
            }
            t[k] = 0;
        }
        GrElem(t[..m].iter().copied().collect())
    }

    pub fn pow(&self, x: &GrElem, mut e: u128) -> GrElem {
        let mut acc = self.one();
        let mut b = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// `p`-adic valuation; `a` for zero.
    pub fn valuation(&self, x: &GrElem) -> u32 {
        let p = self.p();
        let a = self.a();
        x.0.iter()
            .filter(|&&c| c != 0)
            .map(|&c| {
                let mut v = 0;
                let mut c = c;
                while c % p == 0 {
                    c /= p;
                    v += 1;
                }
                v
            })
            .min()
            .unwrap_or(a)
    }

    /// Coefficientwise exact division by `p^v`; caller guarantees divisibility.
    pub fn div_p_pow(&self, x: &GrElem, v: u32) -> GrElem {
        let d = self.p().pow(v);
        debug_assert!(x.0.iter().all(|c| c % d == 0));
        GrElem(x.0.iter().map(|&c| c / d).collect())
    }

    pub fn mul_p_pow(&self, x: &GrElem, v: u32) -> GrElem {
        if v >= self.a() {
            return self.zero();
        }
        self.mul_int(x, self.p().pow(v))
    }

    /// Canonical representative of `x` modulo `p^v` (coefficients in `[0, p^v)`).
    pub fn rem_p_pow(&self, x: &GrElem, v: u32) -> GrElem {
        if v >= self.a() {
            return x.clone();
        }
        let d = self.p().pow(v);
        GrElem(x.0.iter().map(|&c| c % d).collect())
    }

    pub fn is_unit(&self, x: &GrElem) -> bool {
        let p = self.p();
        x.0.iter().any(|&c| c % p != 0)
    }

    pub fn invert(&self, x: &GrElem) -> Result<GrElem> {
        if !self.is_unit(x) {
            return Err(Error::NotAUnit);
        }
        // residue inverse by Fermat, then Newton iteration w <- w(2 - xw)
        let field = self.residue_field();
        let xr = self.project(x);
        let wr = field.pow(&xr, field.order() - 2);
        let mut w = self.lift(&wr);
        let two = self.from_int(2);
        for _ in 0..=self.a() {
            let xw = self.mul(x, &w);
            if self.is_one(&xw) {
                return Ok(w);
            }
            w = self.mul(&w, &self.sub(&two, &xw));
        }
        debug_assert!(self.is_one(&self.mul(x, &w)));
        Ok(w)
    }

    /// The canonical projection `μ` onto the residue field.
    pub fn project(&self, x: &GrElem) -> GrElem {
        let p = self.p();
        GrElem(x.0.iter().map(|&c| c % p).collect())
    }

    /// Lifts a residue-field element by copying its coefficients.
    pub fn lift(&self, x: &GrElem) -> GrElem {
        GrElem(x.0.clone())
    }

    /// The Teichmüller representative sharing the residue of `x`.
    pub fn teichmuller(&self, x: &GrElem) -> GrElem {
        let qm = self.residue_order();
        let mut z = self.lift(&self.project(x));
        for _ in 0..=self.a() {
            let next = self.pow(&z, qm);
            if next == z {
                return z;
            }
            z = next;
        }
        z
    }

    pub fn is_teichmuller(&self, x: &GrElem) -> bool {
        self.pow(x, self.residue_order()) == *x
    }

    /// The `p^m` Teichmüller representatives, ordered like the residue field.
    pub fn teichmuller_set(&self) -> Vec<GrElem> {
        let field = self.residue_field();
        field
            .elements()
            .map(|r| self.teichmuller(&self.lift(&r)))
            .collect()
    }

    pub fn padic_expand(&self, x: &GrElem) -> PAdicExpansion {
        let mut digits = Vec::with_capacity(self.a() as usize);
        let mut rem = x.clone();
        for i in 0..self.a() {
            let d = self.teichmuller(&rem);
            if i + 1 < self.a() {
                rem = self.div_p_pow(&self.sub(&rem, &d), 1);
            }
            digits.push(d);
        }
        PAdicExpansion { digits }
    }

    pub fn recompose(&self, e: &PAdicExpansion) -> GrElem {
        e.digits
            .iter()
            .enumerate()
            .fold(self.zero(), |acc, (i, d)| {
                self.add(&acc, &self.mul_p_pow(d, i as u32))
            })
    }

    /// JSON form: array of base-10 coefficient strings.
    pub fn to_json(&self, x: &GrElem) -> Value {
        Value::Array(x.0.iter().map(|c| Value::String(c.to_string())).collect())
    }

    /// Accepts an integer, a decimal string, or an array of either.
    pub fn parse_json(&self, v: &Value) -> Result<GrElem> {
        fn scalar(v: &Value) -> Result<i64> {
            match v {
                Value::Number(n) => n
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("bad coefficient {n}"))),
                Value::String(s) => s
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {s:?}"))),
                other => Err(Error::Parse(format!("bad coefficient {other}"))),
            }
        }
        match v {
            Value::Array(items) => {
                let q = self.q() as i64;
                let cs = items
                    .iter()
                    .map(|c| scalar(c).map(|c| c.rem_euclid(q) as u64))
                    .collect::<Result<Vec<_>>>()?;
                Ok(self.from_coeffs(&cs))
            }
            other => Ok(self.from_int(scalar(other)?)),
        }
    }

    /// Human-readable form, e.g. `3` or `(1+2y)`.
    pub fn format(&self, x: &GrElem) -> String {
        if self.m() == 1 {
            return x.0[0].to_string();
        }
        let terms: Vec<String> = x
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "y".into(),
                (1, c) => format!("{c}y"),
                (i, 1) => format!("y^{i}"),
                (i, c) => format!("{c}y^{i}"),
            })
            .collect();
        match terms.len() {
            0 => "0".into(),
            1 => terms[0].clone(),
            _ => format!("({})", terms.join("+")),
        }
    }
}

fn find_irreducible(p: u64, m: usize) -> Result<Vec<u64>> {
    let total = (p as u128).pow(m as u32);
    for n in 0..total {
        let mut g = Vec::with_capacity(m + 1);
        let mut k = n;
        for _ in 0..m {
            g.push((k % p as u128) as u64);
            k /= p as u128;
        }
        g.push(1);
        if fp_is_irreducible(&g, p) {
            return Ok(g);
        }
    }
    Err(Error::NotIrreducible)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> GaloisRing {
        GaloisRing::integers(2, 2).unwrap()
    }

    #[test]
    fn default_moduli() {
        assert_eq!(z4().params().modulus, vec![0, 1]);
        let gr42 = GaloisRing::new(2, 2, 2, None).unwrap();
        assert_eq!(gr42.params().modulus, vec![1, 1, 1]);
        let f9 = GaloisRing::field(3, 2).unwrap();
        // y^2 + 1 is the first irreducible quadratic over F_3
        assert_eq!(f9.params().modulus, vec![1, 0, 1]);
    }

    #[test]
    fn rejects_bad_params() {
        assert_eq!(GaloisRing::new(4, 1, 1, None), Err(Error::NotPrime(4)));
        // y^2 + 1 = (y + 1)^2 over F_2
        assert_eq!(
            GaloisRing::new(2, 2, 2, Some(vec![1, 0, 1])),
            Err(Error::NotIrreducible)
        );
    }

    #[test]
    fn teichmuller_sets() {
        let z9 = GaloisRing::integers(3, 2).unwrap();
        let mut t = z9.teichmuller_set();
        t.sort();
        assert_eq!(t, vec![z9.from_int(0), z9.from_int(1), z9.from_int(8)]);
        let z4 = z4();
        assert_eq!(z4.teichmuller_set(), vec![z4.from_int(0), z4.from_int(1)]);

        let gr = GaloisRing::new(2, 2, 2, Some(vec![1, 1, 1])).unwrap();
        let t = gr.teichmuller_set();
        // exhaust z^4 = z over all 16 elements
        let mut brute: Vec<GrElem> = gr.elements().filter(|z| gr.pow(z, 4) == *z).collect();
        let mut sorted = t.clone();
        sorted.sort();
        brute.sort();
        assert_eq!(sorted, brute);
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn padic_examples() {
        let r = z4();
        let digits = |v| r.padic_expand(&r.from_int(v)).digits;
        assert_eq!(digits(0), vec![r.from_int(0), r.from_int(0)]);
        assert_eq!(digits(3), vec![r.from_int(1), r.from_int(1)]);
        assert_eq!(digits(2), vec![r.from_int(0), r.from_int(1)]);
    }

    #[test]
    fn units_and_inverses() {
        let r = z4();
        assert!(!r.is_unit(&r.from_int(2)));
        assert_eq!(r.invert(&r.from_int(3)).unwrap(), r.from_int(3));
        assert_eq!(r.invert(&r.from_int(2)), Err(Error::NotAUnit));
        assert_eq!(r.project(&r.from_int(3)), r.residue_field().from_int(1));
    }

    #[test]
    fn json_round_trip() {
        let gr = GaloisRing::new(3, 2, 2, None).unwrap();
        let x = gr.from_coeffs(&[5, 7]);
        let v = gr.to_json(&x);
        assert_eq!(v, serde_json::json!(["5", "7"]));
        assert_eq!(gr.parse_json(&v).unwrap(), x);
        assert_eq!(gr.parse_json(&serde_json::json!(-1)).unwrap(), gr.from_int(8));
    }
}
