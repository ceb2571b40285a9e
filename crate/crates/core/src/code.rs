//! Polycyclic codes: ideals of an ambient ring, their torsion codes and
//! canonical generating sets.

use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::ambient::AmbientRing;
use crate::error::{Error, Result};
use crate::howell::HowellForm;
use crate::poly::Poly;
use crate::ring::GrElem;

/// Torsional degrees of one primary component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentTorsion {
    pub base: Poly,
    pub t: usize,
    /// `T_0 ≥ T_1 ≥ … ≥ T_{a-1}`.
    pub degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionProfile {
    pub components: Vec<ComponentTorsion>,
}

impl TorsionProfile {
    pub fn degrees(&self) -> Vec<Vec<usize>> {
        self.components.iter().map(|c| c.degrees.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.components
                .iter()
                .map(|c| json!({ "base": c.base.to_json(), "t": c.t, "degrees": c.degrees }))
                .collect(),
        )
    }
}

/// `p^j f` with `f = h^k + (tail)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub j: u32,
    pub k: usize,
    pub f: Poly,
}

/// A generating set in standard form for one primary component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalBasis {
    pub base: Poly,
    pub t: usize,
    pub elements: Vec<BasisElement>,
}

/// `p^j g` in the full ambient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergedGenerator {
    pub j: u32,
    pub g: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardFormBasis {
    pub components: Vec<LocalBasis>,
    /// Monic generators with strictly increasing `j` and strictly
    /// decreasing degree, generating the whole code.
    pub merged: Vec<MergedGenerator>,
}

impl StandardFormBasis {
    pub fn is_empty(&self) -> bool {
        self.merged.is_empty()
    }

    /// The polynomials `p^j g` themselves.
    pub fn generators(&self) -> Vec<Poly> {
        self.merged.iter().map(|m| m.g.mul_p_pow(m.j)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "components": self.components.iter().map(|c| json!({
                "base": c.base.to_json(),
                "t": c.t,
                "elements": c.elements.iter().map(|e| json!({
                    "j": e.j, "k": e.k, "f": e.f.to_json()
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "merged": self.merged.iter().map(|m| json!({
                "j": m.j, "g": m.g.to_json()
            })).collect::<Vec<_>>(),
        })
    }
}

/// `T_e = t` for `e < j_0`, `k_{j_i}` on `[j_i, j_{i+1})`.
pub fn basis_to_torsion(basis: &LocalBasis, a: u32) -> Vec<usize> {
    (0..a)
        .map(|e| {
            basis
                .elements
                .iter()
                .rev()
                .find(|el| el.j <= e)
                .map_or(basis.t, |el| el.k)
        })
        .collect()
}

/// Digits `D[j][k]`: `g = Σ_j p^j Σ_k h^k D[j][k]` with `deg D < deg h` and
/// Teichmüller coefficients.
pub fn layered_digits(g: &Poly, h: &Poly) -> Vec<Vec<Poly>> {
    let a = g.ring().a() as usize;
    let digits = g.h_adic_digits(h);
    let mut out = vec![Vec::with_capacity(digits.len()); a];
    for q in &digits {
        for (j, layer) in q.padic_layers().into_iter().enumerate() {
            out[j].push(layer);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct PolycyclicCode {
    ambient: AmbientRing,
    generators: Vec<Poly>,
    howell: OnceLock<HowellForm>,
    components: OnceLock<Vec<PolycyclicCode>>,
    local: OnceLock<LocalData>,
    profile: OnceLock<TorsionProfile>,
    basis: OnceLock<StandardFormBasis>,
}

#[derive(Clone, Debug)]
struct LocalData {
    degrees: Vec<usize>,
    /// `F_e` with `p^e F_e ∈ C`, `F_e ≡ h^{T_e} mod p`; `None` when `T_e = t`.
    lifts: Vec<Option<Poly>>,
    unique: Vec<Poly>,
}

impl PartialEq for PolycyclicCode {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.howell() == other.howell()
    }
}

impl PolycyclicCode {
    pub fn new(ambient: &AmbientRing, generators: &[Poly]) -> Self {
        let generators = generators
            .iter()
            .map(|g| ambient.reduce(&g.change_ring(ambient.ring())))
            .filter(|g| !g.is_zero())
            .collect();
        PolycyclicCode {
            ambient: ambient.clone(),
            generators,
            howell: OnceLock::new(),
            components: OnceLock::new(),
            local: OnceLock::new(),
            profile: OnceLock::new(),
            basis: OnceLock::new(),
        }
    }

    pub fn zero(ambient: &AmbientRing) -> Self {
        Self::new(ambient, &[])
    }

    pub fn whole(ambient: &AmbientRing) -> Self {
        Self::new(ambient, &[Poly::one(ambient.ring())])
    }

    pub fn ambient(&self) -> &AmbientRing {
        &self.ambient
    }
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn howell(&self) -> &HowellForm {
        self.howell
            .get_or_init(|| self.ambient.howell(&self.generators))
    }

    /// `log_p |C|`.
    pub fn log_p_size(&self) -> u64 {
        self.howell().log_p_size()
    }

    /// `|C|`, saturating.
    pub fn size(&self) -> u128 {
        (self.ambient.ring().p() as u128).saturating_pow(self.log_p_size() as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.howell().is_zero()
    }

    pub fn is_whole(&self) -> bool {
        self.contains(&Poly::one(self.ambient.ring()))
    }

    pub fn contains(&self, g: &Poly) -> bool {
        self.howell().contains(&self.ambient.to_vec(g))
    }

    pub fn is_subcode_of(&self, other: &PolycyclicCode) -> bool {
        self.howell().is_subset_of(other.howell())
    }

    /// The images of `C` in each local ambient `GR[x]/(f_i)`.
    pub fn component_split(&self) -> &[PolycyclicCode] {
        self.components.get_or_init(|| {
            if self.ambient.is_local() {
                return vec![self.clone()];
            }
            (0..self.ambient.components().len())
                .map(|i| {
                    let local = self.ambient.local_ambient(i);
                    let gens: Vec<Poly> = self.generators.iter().map(|g| local.reduce(g)).collect();
                    PolycyclicCode::new(&local, &gens)
                })
                .collect()
        })
    }

    fn require_local(&self) -> Result<()> {
        if self.ambient.is_local() {
            Ok(())
        } else {
            Err(Error::NotPrimaryComponent)
        }
    }

    fn local_data(&self) -> &LocalData {
        self.local.get_or_init(|| {
            let (degrees, lifts) = self.compute_torsion();
            let unique = self.compute_unique(&degrees, &lifts);
            LocalData {
                degrees,
                lifts,
                unique,
            }
        })
    }

    /// `T_e = min k` with `p^e h^k ∈ C + p^{e+1} R`, plus the witnesses.
    fn compute_torsion(&self) -> (Vec<usize>, Vec<Option<Poly>>) {
        let amb = &self.ambient;
        let ring = amb.ring();
        let comp = &amb.components()[0];
        let (h, t) = (comp.base(), comp.t());
        let n = amb.degree();
        let a = ring.a();
        let code_rows: Vec<Vec<GrElem>> = self
            .howell()
            .rows()
            .iter()
            .map(|r| r.iter().chain(r.iter()).cloned().collect())
            .collect();
        let mut degrees = Vec::with_capacity(a as usize);
        let mut lifts = Vec::with_capacity(a as usize);
        let mut hi = t;
        for e in 0..a {
            let mut rows = code_rows.clone();
            if e + 1 < a {
                let pe1 = ring.mul_p_pow(&ring.one(), e + 1);
                for col in 0..n {
                    let mut r = vec![ring.zero(); 2 * n];
                    r[col] = pe1.clone();
                    rows.push(r);
                }
            }
            let form = HowellForm::with_tags(ring, n, rows);
            let target = |k: usize| amb.to_vec(&h.pow(k as u64).mul_p_pow(e));
            // predicate is monotone in k and holds at `hi`
            let (mut lo, mut top) = (0usize, hi);
            while lo < top {
                let mid = (lo + top) / 2;
                if form.contains(&target(mid)) {
                    top = mid;
                } else {
                    lo = mid + 1;
                }
            }
            let te = lo;
            hi = te;
            degrees.push(te);
            if te == t {
                lifts.push(None);
            } else {
                let tags = form.express(&target(te)).expect("torsion witness");
                let c = amb.from_vec(&tags);
                lifts.push(Some(c.div_p_pow(e)));
            }
        }
        (degrees, lifts)
    }

    fn compute_unique(&self, degrees: &[usize], lifts: &[Option<Poly>]) -> Vec<Poly> {
        let amb = &self.ambient;
        let ring = amb.ring();
        let comp = &amb.components()[0];
        let (h, t) = (comp.base(), comp.t());
        let a = ring.a() as usize;
        let mut out = vec![Poly::zero(ring); a];
        for i in (0..a).rev() {
            let Some(lift) = &lifts[i] else { continue };
            let head = h.pow(degrees[i] as u64);
            let mut g = amb.reduce(lift);
            for j in 1..a - i {
                let tj = degrees[i + j];
                if tj == t {
                    continue;
                }
                let d = layered_digits(&(&g - &head), h);
                let e = d[j]
                    .iter()
                    .enumerate()
                    .skip(tj)
                    .fold(Poly::zero(ring), |acc, (k, q)| {
                        &acc + &(&h.pow((k - tj) as u64) * q)
                    });
                if e.is_zero() {
                    continue;
                }
                let sub = (&e * &out[i + j]).mul_p_pow(j as u32);
                g = amb.reduce(&(&g - &sub));
            }
            let d = layered_digits(&(&g - &head), h);
            let mut f = head;
            for j in 1..a - i {
                let tj = degrees[i + j];
                for (k, q) in d[j].iter().enumerate().take(tj) {
                    if !q.is_zero() {
                        f = &f + &(&h.pow(k as u64) * q).mul_p_pow(j as u32);
                    }
                }
            }
            out[i] = f;
        }
        out
    }

    /// `(T_i, h̄^{T_i})`: the torsion code `Tor_i(C)` of a local code.
    pub fn torsion_code(&self, i: u32) -> Result<(usize, Poly)> {
        self.require_local()?;
        if i >= self.ambient.ring().a() {
            return Err(Error::OutOfRange(i as u64));
        }
        let te = self.local_data().degrees[i as usize];
        let hb = self.ambient.components()[0].base().project();
        Ok((te, hb.pow(te as u64)))
    }

    /// Per-component torsional degrees.
    pub fn torsional_degrees(&self) -> &TorsionProfile {
        self.profile.get_or_init(|| TorsionProfile {
            components: self
                .component_split()
                .iter()
                .map(|c| {
                    let comp = &c.ambient.components()[0];
                    ComponentTorsion {
                        base: comp.base().clone(),
                        t: comp.t(),
                        degrees: c.local_data().degrees.clone(),
                    }
                })
                .collect(),
        })
    }

    /// `f_0, …, f_{a-1}` with `C = ⟨f_0, p f_1, …, p^{a-1} f_{a-1}⟩`,
    /// `f_i = 0` when `T_i = t`.
    pub fn unique_generating_set(&self) -> Result<Vec<Poly>> {
        self.require_local()?;
        Ok(self.local_data().unique.clone())
    }

    /// `F_e` witnesses (local codes only).
    pub fn torsion_lifts(&self) -> Result<Vec<Option<Poly>>> {
        self.require_local()?;
        Ok(self.local_data().lifts.clone())
    }

    fn local_basis(&self) -> LocalBasis {
        let data = self.local_data();
        let comp = &self.ambient.components()[0];
        let t = comp.t();
        let mut elements: Vec<BasisElement> = Vec::new();
        for (i, f) in data.unique.iter().enumerate() {
            let k = data.degrees[i];
            if k == t {
                continue;
            }
            if elements.last().is_some_and(|last| last.k == k) {
                continue;
            }
            elements.push(BasisElement {
                j: i as u32,
                k,
                f: f.clone(),
            });
        }
        LocalBasis {
            base: comp.base().clone(),
            t,
            elements,
        }
    }

    pub fn standard_form_basis(&self) -> &StandardFormBasis {
        self.basis.get_or_init(|| {
            let components: Vec<LocalBasis> =
                self.component_split().iter().map(|c| c.local_basis()).collect();
            let merged = merge_bases(&self.ambient, &components);
            StandardFormBasis { components, merged }
        })
    }

    /// Residue `ḡ_{j_r}` of the last standard-form generator; the code
    /// and `⟨ḡ_{j_r}⟩` over the residue field have the same distance.
    pub fn distance_via_basis(&self) -> Result<Poly> {
        let basis = self.standard_form_basis();
        let last = basis.merged.last().ok_or(Error::ZeroCode)?;
        Ok(last.g.project())
    }
}

/// `g_j = Π_c G_{c,j}` where `G_{c,j}` is component `c`'s latest element at
/// layer `≤ j` (or `f_c` itself if none), over the union of layers.
fn merge_bases(amb: &AmbientRing, comps: &[LocalBasis]) -> Vec<MergedGenerator> {
    let ring = amb.ring();
    let mut layers: Vec<u32> = comps
        .iter()
        .flat_map(|c| c.elements.iter().map(|e| e.j))
        .collect();
    layers.sort_unstable();
    layers.dedup();
    layers
        .into_iter()
        .map(|j| {
            let g = comps
                .iter()
                .zip(amb.components())
                .fold(Poly::one(ring), |acc, (lb, comp)| {
                    let part = lb
                        .elements
                        .iter()
                        .rev()
                        .find(|e| e.j <= j)
                        .map_or_else(|| comp.factor().clone(), |e| e.f.clone());
                    &acc * &part
                });
            MergedGenerator { j, g }
        })
        .collect()
}

/// Strong-Gröbner style reduction of `g` in `GR[x]` by `p^{j_i} f_i`
/// (each `f_i` monic, degrees strictly decreasing along the list).
fn reduces_to_zero(g: &Poly, gens: &[(u32, Poly)]) -> bool {
    let ring = g.ring();
    let mut cur = g.clone();
    while let Some(d) = cur.deg() {
        let lead = cur.leading().unwrap().clone();
        let v = ring.valuation(&lead);
        let Some((j, f)) = gens
            .iter()
            .filter(|(j, f)| *j <= v && f.deg().unwrap() <= d)
            .min_by_key(|(_, f)| f.deg())
        else {
            return false;
        };
        let coef = ring.div_p_pow(&lead, *j);
        let sub = f.shift(d - f.deg().unwrap()).scale(&coef).mul_p_pow(*j);
        cur = &cur - &sub;
    }
    true
}

/// Violations of the standard-form conditions for a local basis over
/// `amb` (empty when valid).
pub fn standard_form_violations(amb: &AmbientRing, basis: &LocalBasis) -> Vec<String> {
    let ring = amb.ring();
    let a = ring.a();
    let h = &basis.base;
    let d = h.deg().unwrap();
    let mut out = Vec::new();
    let els = &basis.elements;
    if els.len() > a.min(basis.t as u32) as usize {
        out.push(format!("{} generators exceed min(a, t)", els.len()));
    }
    for w in els.windows(2) {
        if w[0].j >= w[1].j {
            out.push(format!("p-exponents not increasing at j={}", w[1].j));
        }
        if w[0].k <= w[1].k {
            out.push(format!("h-exponents not decreasing at j={}", w[1].j));
        }
    }
    if let Some(last) = els.last() {
        if last.j >= a {
            out.push("p-exponent out of range".into());
        }
    }
    if let Some(first) = els.first() {
        if first.k >= basis.t {
            out.push("leading h-exponent not below t".into());
        }
    }
    for el in els {
        let head = h.pow(el.k as u64);
        let tail = &el.f - &head;
        if tail.deg().is_some_and(|td| td >= el.k * d) {
            out.push(format!("tail of layer {} too large", el.j));
        }
        let digits = layered_digits(&tail, h);
        for (l, layer) in digits.iter().enumerate() {
            let used = layer.iter().any(|q| !q.is_zero());
            if used && (l == 0 || l as u32 >= a - el.j) {
                out.push(format!("tail of layer {} uses p^{l}", el.j));
            }
        }
    }
    for i in 0..els.len().saturating_sub(1) {
        let jn = els[i + 1].j;
        let rest: Vec<Poly> = els[i + 1..].iter().map(|e| e.f.mul_p_pow(e.j)).collect();
        let form = amb.howell(&rest);
        if !form.contains(&amb.to_vec(&els[i].f.mul_p_pow(jn))) {
            out.push(format!("p^{jn} f_{} not in later generators", els[i].j));
        }
    }
    if let Some(first) = els.first() {
        let gens: Vec<(u32, Poly)> = els.iter().map(|e| (e.j, e.f.clone())).collect();
        if !reduces_to_zero(&amb.modulus().mul_p_pow(first.j), &gens) {
            out.push("p^{j_0} f not in the polynomial-ring ideal".into());
        }
    }
    out
}
