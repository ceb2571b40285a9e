//! Factorization: finite-field factoring, Hensel lifting to the Galois ring,
//! primary coprime factorization and CRT idempotents.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::GaloisRing;

const SPLIT_SEED: u64 = 0x5eed_f00d;

fn exact_div(a: &Poly, b: &Poly) -> Poly {
    let (q, r) = a.divrem_unit_lead(b).expect("nonzero divisor over a field");
    debug_assert!(r.is_zero());
    q
}

/// Inverse Frobenius on polynomial coefficients: `c(x^p) -> c^{1/p}(x)`.
fn pth_root(f: &Poly) -> Poly {
    let r = f.ring();
    let p = r.p() as usize;
    let e = r.residue_order() / r.p() as u128; // a^{1/p} = a^{p^{m-1}}
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| r.pow(c, e))
        .collect();
    Poly::from_coeffs(r, coeffs)
}

fn squarefree(f: &Poly) -> Vec<(Poly, usize)> {
    let p = f.ring().p() as usize;
    let mut out = Vec::new();
    let mut c = f.gcd(&f.derivative());
    let mut w = exact_div(f, &c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = exact_div(&w, &y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        c = exact_div(&c, &y);
        w = y;
        i += 1;
    }
    if !c.is_one() {
        for (g, e) in squarefree(&pth_root(&c)) {
            out.push((g, e * p));
        }
    }
    out
}

fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let r = f.ring();
    let q = r.order();
    let x = Poly::x(r);
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = x.rem(&f);
    let mut d = 1;
    while f.deg().unwrap_or(0) >= 2 * d {
        h = h.powmod(q, &f);
        let g = f.gcd(&(&h - &x));
        if !g.is_one() {
            f = exact_div(&f, &g);
            h = h.rem(&f);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(df) = f.deg().filter(|&df| df > 0) {
        out.push((f, df));
    }
    out
}

fn equal_degree(g: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let r = g.ring();
    let n = g.deg().unwrap();
    if n == d {
        out.push(g.clone());
        return;
    }
    let q = r.order();
    loop {
        let a = Poly::from_coeffs(
            r,
            (0..n).map(|_| r.from_index(rng.gen_range(0..q))).collect(),
        );
        if a.deg().unwrap_or(0) == 0 {
            continue;
        }
        let b = if r.p() == 2 {
            // trace map a + a^2 + ... + a^{2^{md-1}}
            let mut t = Poly::zero(r);
            let mut cur = a.rem(g);
            for _ in 0..r.m() * d {
                t = &t + &cur;
                cur = cur.mulmod(&cur, g);
            }
            t
        } else {
            // a^{(q^d-1)/2} = Π_i (a^{q^i})^{(q-1)/2}
            let mut acc = Poly::one(r);
            let mut ai = a.rem(g);
            for _ in 0..d {
                acc = acc.mulmod(&ai.powmod((q - 1) / 2, g), g);
                ai = ai.powmod(q, g);
            }
            &acc - &Poly::one(r)
        };
        let u = g.gcd(&b);
        let du = u.deg().unwrap_or(0);
        if du > 0 && du < n {
            equal_degree(&u, d, rng, out);
            equal_degree(&exact_div(g, &u), d, rng, out);
            return;
        }
    }
}

fn sort_key(f: &Poly) -> (usize, Vec<u128>) {
    let r = f.ring();
    (
        f.len(),
        f.coeffs().iter().rev().map(|c| r.index(c)).collect(),
    )
}

/// Monic irreducible factors with multiplicities of a nonzero polynomial over
/// a finite field, sorted by degree then coefficients.
pub fn field_factorize(f: &Poly) -> Vec<(Poly, usize)> {
    assert!(f.ring().is_field(), "field_factorize needs a = 1");
    let f = f.monic().expect("nonzero polynomial over a field");
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (sq, e) in squarefree(&f) {
        for (g, d) in distinct_degree(&sq) {
            let mut irr = Vec::new();
            equal_degree(&g, d, &mut rng, &mut irr);
            for h in irr {
                match out.iter_mut().find(|(x, _)| *x == h) {
                    Some(entry) => entry.1 += e,
                    None => out.push((h, e)),
                }
            }
        }
    }
    out.sort_by_key(|(g, _)| sort_key(g));
    out
}

/// Lifts `f ≡ a0 * b0 (mod p)` with `b0` monic and coprime to `a0` to an exact
/// factorization `f = A * B` over the Galois ring with `B` monic.
pub fn hensel_lift(f: &Poly, a0: &Poly, b0: &Poly) -> Result<(Poly, Poly)> {
    let r = f.ring();
    let (g, s0, _) = a0.ext_gcd(b0);
    if !g.is_one() {
        return Err(Error::FactorsNotCoprime);
    }
    let mut b = b0.lift_to(r);
    let mut a = f.divrem_unit_lead(&b)?.0;
    let mut s = s0.lift_to(r).rem(&b);
    let two = Poly::constant(r, r.from_int(2));
    for _ in 0..(2 * r.a() + 4) {
        let e = f - &(&a * &b);
        if e.is_zero() {
            return Ok((a, b));
        }
        let db = (&s * &e).rem(&b);
        b = &b + &db;
        a = f.divrem_unit_lead(&b)?.0;
        s = (&s * &(&two - &(&s * &a))).rem(&b);
    }
    if (f - &(&a * &b)).is_zero() {
        Ok((a, b))
    } else {
        Err(Error::FactorsNotCoprime)
    }
}

/// Splits a regular polynomial as `unit * monic`.
pub fn monic_associate(g: &Poly) -> Result<(Poly, Poly)> {
    let r = g.ring();
    let gbar = g.project();
    let lead = gbar.leading().ok_or(Error::NotRegular)?.clone();
    let field = gbar.ring().clone();
    let b0 = gbar.monic()?;
    let a0 = Poly::constant(&field, lead);
    if b0.deg() == Some(0) {
        return Ok((g.clone(), Poly::one(r)));
    }
    let (u, m) = hensel_lift(g, &a0, &b0)?;
    Ok((u, m))
}

/// Inverse of a polynomial that is a unit of `GR[x]` (a unit constant plus a
/// nilpotent part).
pub fn invert_unit_poly(u: &Poly) -> Result<Poly> {
    let r = u.ring();
    let ub = u.project();
    if ub.deg() != Some(0) {
        return Err(Error::NotAUnit);
    }
    let mut w = Poly::constant(r, r.invert(&u.coeff(0))?);
    let two = Poly::constant(r, r.from_int(2));
    for _ in 0..(r.a() + 3) {
        let uw = u * &w;
        if uw.is_one() {
            return Ok(w);
        }
        w = &w * &(&two - &uw);
    }
    Err(Error::NotAUnit)
}

/// Inverse of `u` in `GR[x]/(f)` for monic `f`.
pub fn inverse_mod(u: &Poly, f: &Poly) -> Result<Poly> {
    let r = u.ring();
    let fbar = f.project();
    let (g, s, _) = u.project().rem(&fbar).ext_gcd(&fbar);
    if !g.is_one() {
        return Err(Error::NotAUnit);
    }
    let mut w = s.lift_to(r).rem(f);
    let two = Poly::constant(r, r.from_int(2));
    for _ in 0..(r.a() + 3) {
        let uw = u.mulmod(&w, f);
        if uw.is_one() {
            return Ok(w);
        }
        w = w.mulmod(&(&two - &uw), f);
    }
    Err(Error::NotAUnit)
}

/// A monic primary factor `h^t + p β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryFactor {
    pub factor: Poly,
    /// Monic base with Teichmüller coefficients.
    pub base: Poly,
    pub t: usize,
    /// `(factor - base^t) / p`, only meaningful modulo `p^{a-1}`.
    pub beta: Poly,
}

impl PrimaryFactor {
    pub fn from_parts(factor: Poly, base: Poly, t: usize) -> Self {
        let beta = (&factor - &base.pow(t as u64)).div_p_pow(1);
        PrimaryFactor {
            factor,
            base,
            t,
            beta,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryFactorization {
    pub factors: Vec<PrimaryFactor>,
}

impl PrimaryFactorization {
    pub fn product(&self, ring: &GaloisRing) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(ring), |acc, f| &acc * &f.factor)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.factors
                .iter()
                .map(|f| {
                    json!({
                        "factor": f.factor.to_json(),
                        "base": f.base.to_json(),
                        "multiplicity": f.t,
                    })
                })
                .collect(),
        )
    }
}

/// Factors a monic polynomial into pairwise coprime monic primary factors.
pub fn primary_factorize(f: &Poly) -> Result<PrimaryFactorization> {
    if !f.is_regular() {
        return Err(Error::NotRegular);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let r = f.ring();
    let parts = field_factorize(&f.project());
    let residues: Vec<Poly> = parts.iter().map(|(h, t)| h.pow(*t as u64)).collect();
    let mut factors = Vec::with_capacity(parts.len());
    let mut rest = f.clone();
    for (idx, (h, t)) in parts.iter().enumerate() {
        let factor = if idx + 1 == parts.len() {
            rest.clone()
        } else {
            let others = residues[idx + 1..]
                .iter()
                .fold(Poly::one(h.ring()), |acc, u| &acc * u);
            let (other, mine) = hensel_lift(&rest, &others, &residues[idx])?;
            rest = other;
            mine
        };
        let base = h.teichmuller_lift_to(r);
        factors.push(PrimaryFactor::from_parts(factor, base, *t));
    }
    Ok(PrimaryFactorization { factors })
}

/// CRT idempotents `ê_i` (≡ 1 mod the i-th factor, ≡ 0 mod the others),
/// reduced modulo `f`.
pub fn crt_idempotents(fact: &PrimaryFactorization, f: &Poly) -> Result<Vec<Poly>> {
    let r = f.ring();
    let k = fact.factors.len();
    if k <= 1 {
        return Ok(vec![Poly::one(r)]);
    }
    for i in 0..k {
        for j in i + 1..k {
            let g = fact.factors[i]
                .factor
                .project()
                .gcd(&fact.factors[j].factor.project());
            if !g.is_one() {
                return Err(Error::FactorsNotCoprime);
            }
        }
    }
    (0..k)
        .map(|i| {
            let cof = fact
                .factors
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Poly::one(r), |acc, (_, g)| &acc * &g.factor);
            let fi = &fact.factors[i].factor;
            let w = inverse_mod(&cof.rem(fi), fi)?;
            Ok(cof.mulmod(&w, f))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(r: &GaloisRing, c: &[i64]) -> Poly {
        Poly::from_ints(r, c)
    }

    #[test]
    fn field_examples() {
        let f3 = GaloisRing::field(3, 1).unwrap();
        assert_eq!(
            field_factorize(&ints(&f3, &[1, 0, 1])),
            vec![(ints(&f3, &[1, 0, 1]), 1)]
        );
        assert_eq!(
            field_factorize(&ints(&f3, &[-1, 0, 1])),
            vec![(ints(&f3, &[1, 1]), 1), (ints(&f3, &[2, 1]), 1)]
        );
        let f2 = GaloisRing::field(2, 1).unwrap();
        let mut x8 = vec![0i64; 9];
        x8[0] = -1;
        x8[8] = 1;
        assert_eq!(field_factorize(&ints(&f2, &x8)), vec![(ints(&f2, &[1, 1]), 8)]);
    }

    #[test]
    fn primary_examples() {
        let z9 = GaloisRing::integers(3, 2).unwrap();
        let f = ints(&z9, &[-1, 0, 1]);
        let fact = primary_factorize(&f).unwrap();
        assert_eq!(fact.product(&z9), f);
        let got: Vec<Poly> = fact.factors.iter().map(|p| p.factor.clone()).collect();
        assert_eq!(got, vec![ints(&z9, &[1, 1]), ints(&z9, &[-1, 1])]);

        let z4 = GaloisRing::integers(2, 2).unwrap();
        let f = ints(&z4, &[-1, 0, 0, 0, 1]);
        let fact = primary_factorize(&f).unwrap();
        assert_eq!(fact.factors.len(), 1);
        assert_eq!(fact.factors[0].base, ints(&z4, &[1, 1]));
        assert_eq!(fact.factors[0].t, 4);

        let f = ints(&z4, &[-1, 0, 0, 1]);
        let fact = primary_factorize(&f).unwrap();
        let got: Vec<Poly> = fact.factors.iter().map(|p| p.factor.clone()).collect();
        assert_eq!(got, vec![ints(&z4, &[-1, 1]), ints(&z4, &[1, 1, 1])]);
    }

    #[test]
    fn idempotents_z9() {
        let z9 = GaloisRing::integers(3, 2).unwrap();
        let f = ints(&z9, &[-1, 0, 1]);
        let fact = primary_factorize(&f).unwrap();
        let e = crt_idempotents(&fact, &f).unwrap();
        // factor order is (x+1), (x-1)
        assert_eq!(e[0], ints(&z9, &[-4, 4]));
        assert_eq!(e[1], ints(&z9, &[5, 5]));
        assert!((&e[0] + &e[1]).is_one());
        assert!(e[0].mulmod(&e[1], &f).is_zero());
    }
}
