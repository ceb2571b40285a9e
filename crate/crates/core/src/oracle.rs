//! Brute-force ground truth: codeword enumeration, minimum weight, torsional
//! degrees straight from the definition, and ideal enumeration.
//!
//! Nothing here uses the structure theory; every answer comes from spans,
//! Howell membership and exhaustive search.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::ambient::AmbientRing;
use crate::code::{ComponentTorsion, PolycyclicCode, TorsionProfile};
use crate::error::{Error, Result};
use crate::howell::HowellForm;
use crate::poly::Poly;
use crate::ring::{GaloisRing, GrElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_codewords: u128,
    pub max_ambient_size: u128,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_codewords: 100_000_000,
            max_ambient_size: 1 << 24,
        }
    }
}

impl EnumerationBudget {
    pub fn new(max_codewords: u128) -> Self {
        EnumerationBudget {
            max_codewords,
            ..Default::default()
        }
    }

    fn check(&self, needed: u128) -> Result<()> {
        if needed > self.max_codewords {
            Err(Error::BudgetExceeded {
                needed,
                allowed: self.max_codewords,
            })
        } else {
            Ok(())
        }
    }

    fn check_ambient(&self, needed: u128) -> Result<()> {
        if needed > self.max_ambient_size {
            Err(Error::BudgetExceeded {
                needed,
                allowed: self.max_ambient_size,
            })
        } else {
            Ok(())
        }
    }
}

/// Integer generators of a code's additive group: `ζ^k · row` for each
/// Howell row, flattened position-major, with their additive orders.
struct Expanded {
    q: u64,
    m: usize,
    rows: Vec<Vec<u64>>,
    radix: Vec<u64>,
    /// `radix_i * rows_i`, subtracted when digit `i` wraps.
    wrap: Vec<Vec<u64>>,
}

impl Expanded {
    fn new(form: &HowellForm) -> Self {
        let ring = form.ring();
        let (q, m, a) = (ring.q(), ring.m(), ring.a());
        let zeta = ring.generator();
        let mut rows = Vec::new();
        let mut radix = Vec::new();
        for (row, &(_, v)) in form.rows().iter().zip(form.pivots()) {
            let mut mult = ring.one();
            for _ in 0..m {
                rows.push(flatten(ring, row[..form.width()].iter().map(|e| ring.mul(e, &mult))));
                radix.push(ring.p().pow(a - v));
                mult = ring.mul(&mult, &zeta);
            }
        }
        let wrap = rows
            .iter()
            .zip(&radix)
            .map(|(r, &k)| r.iter().map(|&x| x * k % q).collect())
            .collect();
        Expanded {
            q,
            m,
            rows,
            radix,
            wrap,
        }
    }

    fn total(&self) -> u128 {
        self.radix
            .iter()
            .fold(1u128, |acc, &r| acc.saturating_mul(r as u128))
    }

    fn len(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    fn weight(&self, v: &[u64]) -> usize {
        v.chunks(self.m).filter(|c| c.iter().any(|&x| x != 0)).count()
    }

    /// Digits and running sum at linear index `idx` (digit 0 fastest).
    fn seek(&self, mut idx: u128, len: usize) -> (Vec<u64>, Vec<u64>) {
        let mut digits = vec![0u64; self.rows.len()];
        let mut acc = vec![0u64; len];
        for (i, &r) in self.radix.iter().enumerate() {
            let d = (idx % r as u128) as u64;
            idx /= r as u128;
            digits[i] = d;
            if d != 0 {
                for (x, y) in acc.iter_mut().zip(&self.rows[i]) {
                    *x = (*x + d * y) % self.q;
                }
            }
        }
        (digits, acc)
    }

    fn step(&self, digits: &mut [u64], acc: &mut [u64]) {
        let q = self.q;
        for i in 0..digits.len() {
            digits[i] += 1;
            for (x, y) in acc.iter_mut().zip(&self.rows[i]) {
                *x = (*x + y) % q;
            }
            if digits[i] < self.radix[i] {
                return;
            }
            digits[i] = 0;
            for (x, y) in acc.iter_mut().zip(&self.wrap[i]) {
                *x = (*x + q - y) % q;
            }
        }
    }
}

fn flatten(ring: &GaloisRing, it: impl Iterator<Item = GrElem>) -> Vec<u64> {
    let m = ring.m();
    let mut out = Vec::new();
    for e in it {
        let c = e.coeffs();
        for k in 0..m {
            out.push(c.get(k).copied().unwrap_or(0));
        }
    }
    out
}

fn unflatten(ring: &GaloisRing, v: &[u64]) -> Poly {
    Poly::from_coeffs(
        ring,
        v.chunks(ring.m()).map(|c| ring.from_coeffs(c)).collect(),
    )
}

/// Every codeword of `C` exactly once, including zero.
pub fn enumerate_codewords(code: &PolycyclicCode, budget: &EnumerationBudget) -> Result<Vec<Poly>> {
    let ring = code.ambient().ring();
    let n = code.ambient().degree();
    let ex = Expanded::new(code.howell());
    let total = ex.total();
    budget.check(total)?;
    let len = n * ring.m();
    let (mut digits, mut acc) = ex.seek(0, len);
    let mut out = Vec::with_capacity(total as usize);
    for i in 0..total {
        out.push(unflatten(ring, &acc));
        if i + 1 < total {
            ex.step(&mut digits, &mut acc);
        }
    }
    Ok(out)
}

/// Outcome of an exhaustive minimum-weight search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchStats {
    pub distance: Option<usize>,
    pub enumerated: u64,
}

const CHUNK: u128 = 1 << 14;

/// Minimum Hamming weight over the nonzero elements of the span.
fn min_weight_span(form: &HowellForm, budget: &EnumerationBudget) -> Result<SearchStats> {
    if form.is_zero() {
        return Ok(SearchStats {
            distance: None,
            enumerated: 1,
        });
    }
    let ex = Expanded::new(form);
    let total = ex.total();
    budget.check(total)?;
    let len = ex.len();
    let best = AtomicUsize::new(usize::MAX);
    let count = AtomicU64::new(0);
    let chunks = total.div_ceil(CHUNK);
    (0..chunks as u64).into_par_iter().for_each(|c| {
        let start = c as u128 * CHUNK;
        let end = (start + CHUNK).min(total);
        if best.load(Ordering::Relaxed) <= 1 {
            return;
        }
        let (mut digits, mut acc) = ex.seek(start, len);
        let mut local = usize::MAX;
        let mut seen = 0u64;
        for idx in start..end {
            if idx != 0 {
                let w = ex.weight(&acc);
                if w != 0 && w < local {
                    local = w;
                    best.fetch_min(w, Ordering::Relaxed);
                    if w <= 1 {
                        seen += 1;
                        break;
                    }
                }
            }
            seen += 1;
            if idx + 1 < end {
                ex.step(&mut digits, &mut acc);
            }
        }
        count.fetch_add(seen, Ordering::Relaxed);
    });
    let d = best.into_inner();
    Ok(SearchStats {
        distance: (d != usize::MAX).then_some(d),
        enumerated: count.into_inner(),
    })
}

/// `d_H(C)`, or `None` for the zero code.
pub fn brute_min_weight(code: &PolycyclicCode, budget: &EnumerationBudget) -> Result<Option<usize>> {
    Ok(min_weight_span(code.howell(), budget)?.distance)
}

pub fn brute_min_weight_stats(code: &PolycyclicCode, budget: &EnumerationBudget) -> Result<SearchStats> {
    min_weight_span(code.howell(), budget)
}

/// Minimum weight of the ideal `⟨gens⟩` of `amb`.
pub fn brute_min_weight_of(amb: &AmbientRing, gens: &[Poly], budget: &EnumerationBudget) -> Result<Option<usize>> {
    brute_min_weight(&PolycyclicCode::new(amb, gens), budget)
}

pub fn ideals_equal(a: &PolycyclicCode, b: &PolycyclicCode) -> bool {
    a.ambient() == b.ambient() && a.howell() == b.howell()
}

/// All residue polynomials of degree `< n` over the residue field.
fn residue_candidates(amb: &AmbientRing, budget: &EnumerationBudget) -> Result<Vec<Poly>> {
    let field = amb.ring().residue_field();
    let n = amb.degree();
    let q = field.order();
    let total = q.checked_pow(n as u32).unwrap_or(u128::MAX);
    budget.check_ambient(total)?;
    Ok((0..total)
        .map(|mut idx| {
            let coeffs = (0..n)
                .map(|_| {
                    let e = field.from_index(idx % q);
                    idx /= q;
                    e
                })
                .collect();
            Poly::from_coeffs(&field, coeffs)
        })
        .collect())
}

/// Members of `Tor_i(C) = {μ(v) : p^i v ∈ C}`, found by testing every
/// residue candidate `r` for `p^i r + p^{i+1} R ∩ C ≠ ∅`.
fn torsion_members(code: &PolycyclicCode, i: u32, candidates: &[Poly]) -> Vec<Poly> {
    let amb = code.ambient();
    let ring = amb.ring();
    let n = amb.degree();
    let mut rows: Vec<Vec<GrElem>> = code.howell().rows().to_vec();
    if i + 1 < ring.a() {
        let pe = ring.mul_p_pow(&ring.one(), i + 1);
        for c in 0..n {
            let mut r = vec![ring.zero(); n];
            r[c] = pe.clone();
            rows.push(r);
        }
    }
    let form = HowellForm::new(ring, n, rows);
    candidates
        .par_iter()
        .filter(|r| form.contains(&amb.to_vec(&r.lift_to(ring).mul_p_pow(i))))
        .cloned()
        .collect()
}

/// Number of times `h` divides `g` (both over a field, `g ≠ 0`).
fn multiplicity(g: &Poly, h: &Poly) -> usize {
    let mut k = 0;
    let mut cur = g.clone();
    loop {
        let (q, r) = cur.divrem_unit_lead(h).expect("monic base");
        if !r.is_zero() {
            return k;
        }
        cur = q;
        k += 1;
    }
}

/// Torsional degrees from the definition: the torsion code's generator is
/// its minimal-degree monic member, and `T_i` per component is the
/// multiplicity of `h̄_c` in it.
pub fn brute_torsion_degrees(code: &PolycyclicCode, budget: &EnumerationBudget) -> Result<TorsionProfile> {
    let amb = code.ambient();
    let a = amb.ring().a();
    let candidates = residue_candidates(amb, budget)?;
    let comps = amb.components();
    let mut degrees = vec![Vec::with_capacity(a as usize); comps.len()];
    for i in 0..a {
        let members = torsion_members(code, i, &candidates);
        let gen = members
            .iter()
            .filter(|r| !r.is_zero() && r.is_monic())
            .min_by_key(|r| r.deg());
        for (c, comp) in comps.iter().enumerate() {
            let t = comp.t();
            let te = match gen {
                None => t,
                Some(g) => multiplicity(g, &comp.base().project()).min(t),
            };
            degrees[c].push(te);
        }
    }
    Ok(TorsionProfile {
        components: comps
            .iter()
            .zip(degrees)
            .map(|(comp, d)| ComponentTorsion {
                base: comp.base().clone(),
                t: comp.t(),
                degrees: d,
            })
            .collect(),
    })
}

/// `d_H` of `Tor_{a-1}(C)` over the residue field, by enumerating every
/// residue candidate.
pub fn brute_top_torsion_distance(code: &PolycyclicCode, budget: &EnumerationBudget) -> Result<Option<usize>> {
    let amb = code.ambient();
    let candidates = residue_candidates(amb, budget)?;
    let members = torsion_members(code, amb.ring().a() - 1, &candidates);
    Ok(members.iter().filter(|r| !r.is_zero()).map(|r| r.weight()).min())
}

fn howell_key(form: &HowellForm) -> Vec<Vec<u64>> {
    form.rows()
        .iter()
        .map(|r| flatten(form.ring(), r.iter().cloned()))
        .collect()
}

/// Every ideal of `amb`: principal ideals of all elements, closed under sums.
pub fn all_ideals(amb: &AmbientRing, budget: &EnumerationBudget) -> Result<Vec<PolycyclicCode>> {
    let ring = amb.ring();
    let n = amb.degree();
    budget.check_ambient(amb.size())?;
    let elems: Vec<Poly> = (0..amb.size())
        .map(|mut idx| {
            let coeffs = (0..n)
                .map(|_| {
                    let e = ring.from_index(idx % ring.order());
                    idx /= ring.order();
                    e
                })
                .collect();
            Poly::from_coeffs(ring, coeffs)
        })
        .collect();
    let principal: Vec<(Vec<Vec<u64>>, PolycyclicCode)> = elems
        .par_iter()
        .map(|g| {
            let c = PolycyclicCode::new(amb, std::slice::from_ref(g));
            (howell_key(c.howell()), c)
        })
        .collect();
    let mut seen: HashMap<Vec<Vec<u64>>, PolycyclicCode> = HashMap::new();
    for (k, c) in principal {
        seen.entry(k).or_insert(c);
    }
    let mut frontier: Vec<PolycyclicCode> = seen.values().cloned().collect();
    let base: Vec<PolycyclicCode> = frontier.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for b in &base {
                let gens: Vec<Poly> = a.generators().iter().chain(b.generators()).cloned().collect();
                let s = PolycyclicCode::new(amb, &gens);
                let key = howell_key(s.howell());
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                    e.insert(s.clone());
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<PolycyclicCode> = seen.into_values().collect();
    out.sort_by_key(|c| c.log_p_size());
    Ok(out)
}

/// Whether the ideals of `amb` are totally ordered by inclusion.
pub fn brute_is_chain(amb: &AmbientRing, budget: &EnumerationBudget) -> Result<bool> {
    let ideals = all_ideals(amb, budget)?;
    for (i, a) in ideals.iter().enumerate() {
        for b in &ideals[i + 1..] {
            if !a.is_subcode_of(b) && !b.is_subcode_of(a) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn amb(p: u64, a: u32, f: &[i64]) -> AmbientRing {
        let r = GaloisRing::integers(p, a).unwrap();
        AmbientRing::new(&r, Poly::from_ints(&r, f)).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let am = amb(2, 2, &[-1, 0, 1]);
        let r = am.ring().clone();
        let b = EnumerationBudget::default();
        let c = PolycyclicCode::new(&am, &[Poly::from_ints(&r, &[1, 1])]);
        let words: HashSet<Poly> = enumerate_codewords(&c, &b).unwrap().into_iter().collect();
        let expect: HashSet<Poly> = (0..4).map(|k| Poly::from_ints(&r, &[k, k])).collect();
        assert_eq!(words, expect);
        assert_eq!(enumerate_codewords(&PolycyclicCode::zero(&am), &b).unwrap().len(), 1);
        let whole: HashSet<Poly> = enumerate_codewords(&PolycyclicCode::whole(&am), &b)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(whole.len(), 16);
        assert_eq!(brute_min_weight(&c, &b).unwrap(), Some(2));
        assert_eq!(brute_min_weight(&PolycyclicCode::zero(&am), &b).unwrap(), None);
        let small = EnumerationBudget::new(3);
        assert!(matches!(
            brute_min_weight(&c, &small),
            Err(Error::BudgetExceeded { needed: 4, allowed: 3 })
        ));
    }

    #[test]
    fn enumeration_over_extension_ring_is_injective() {
        let r = GaloisRing::new(2, 2, 2, None).unwrap();
        let am = AmbientRing::cyclic(&r, 2).unwrap();
        let c = PolycyclicCode::new(&am, &[Poly::from_ints(&r, &[2, 2])]);
        let words = enumerate_codewords(&c, &EnumerationBudget::default()).unwrap();
        let set: HashSet<Poly> = words.iter().cloned().collect();
        assert_eq!(set.len(), words.len());
        assert_eq!(words.len() as u128, c.size());
        assert!(words.iter().all(|w| c.contains(w)));
    }

    #[test]
    fn min_weight_cyclic_length4() {
        let am = amb(2, 2, &[-1, 0, 0, 0, 1]);
        let r = am.ring().clone();
        let g = Poly::from_ints(&r, &[1, 1]).pow(3);
        let b = EnumerationBudget::default();
        assert_eq!(brute_min_weight_of(&am, &[g], &b).unwrap(), Some(2));
    }

    #[test]
    fn torsion_by_definition() {
        let b = EnumerationBudget::default();
        let am = amb(2, 2, &[-1, 0, 1]);
        let r = am.ring().clone();
        let c = PolycyclicCode::new(&am, &[Poly::from_ints(&r, &[2]), Poly::from_ints(&r, &[1, 1])]);
        assert_eq!(brute_torsion_degrees(&c, &b).unwrap().degrees(), vec![vec![1, 0]]);
        let z = PolycyclicCode::zero(&am);
        assert_eq!(brute_torsion_degrees(&z, &b).unwrap().degrees(), vec![vec![2, 2]]);
        let am = amb(2, 2, &[-1, 0, 0, 0, 1]);
        let x1 = Poly::from_ints(&r, &[1, 1]);
        let c = PolycyclicCode::new(&am, &[x1.pow(3), x1.scale_int(2)]);
        assert_eq!(brute_torsion_degrees(&c, &b).unwrap().degrees(), vec![vec![3, 1]]);
    }

    #[test]
    fn equality_examples() {
        let am = amb(2, 2, &[-1, 0, 1]);
        let r = am.ring().clone();
        let a = PolycyclicCode::new(&am, &[Poly::from_ints(&r, &[1, 1])]);
        let b = PolycyclicCode::new(&am, &[Poly::from_ints(&r, &[3, 3])]);
        let two = PolycyclicCode::new(&am, &[Poly::from_ints(&r, &[2])]);
        assert!(ideals_equal(&a, &b));
        assert!(!ideals_equal(&two, &a));
        assert!(ideals_equal(&a, &a));
    }

    #[test]
    fn chain_by_enumeration() {
        let b = EnumerationBudget::default();
        assert!(brute_is_chain(&amb(2, 1, &[-1, 0, 0, 0, 1]), &b).unwrap());
        assert!(!brute_is_chain(&amb(2, 2, &[-1, 0, 1]), &b).unwrap());
        assert!(brute_is_chain(&amb(2, 2, &[1, 0, 1]), &b).unwrap());
        assert_eq!(all_ideals(&amb(2, 1, &[-1, 0, 0, 0, 1]), &b).unwrap().len(), 5);
    }
}
