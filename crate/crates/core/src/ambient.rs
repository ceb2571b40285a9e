//! The ambient ring `R = GR(p^a, m)[x] / (f)` and its primary decomposition.

use std::sync::{Arc, OnceLock};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factor::{crt_idempotents, primary_factorize, PrimaryFactor, PrimaryFactorization};
use crate::howell::HowellForm;
use crate::poly::Poly;
use crate::ring::{GaloisRing, GrElem};

/// One primary component `GR[x]/(h^t + p β)` of the ambient.
#[derive(Clone, Debug)]
pub struct Component {
    pub primary: PrimaryFactor,
    /// Product of the other factors (`f̂_i`).
    pub cofactor: Poly,
    pub idempotent: Poly,
}

impl Component {
    pub fn factor(&self) -> &Poly {
        &self.primary.factor
    }
    pub fn base(&self) -> &Poly {
        &self.primary.base
    }
    pub fn t(&self) -> usize {
        self.primary.t
    }
    pub fn beta(&self) -> &Poly {
        &self.primary.beta
    }
}

struct Inner {
    ring: GaloisRing,
    f: Poly,
    factorization: PrimaryFactorization,
    components: Vec<Component>,
    locals: OnceLock<Vec<AmbientRing>>,
    residue: OnceLock<AmbientRing>,
}

/// Handle to an ambient ring; clones share state.
#[derive(Clone)]
pub struct AmbientRing(Arc<Inner>);

impl PartialEq for AmbientRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.f == other.0.f
    }
}

impl std::fmt::Debug for AmbientRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}[x]/({})", self.0.ring, self.0.f)
    }
}

/// Maximal ideals, Jacobson radical and socle generators.
#[derive(Clone, Debug)]
pub struct StructureReport {
    /// Generators `[p, h_i]` per component.
    pub maximal_ideals: Vec<Vec<Poly>>,
    /// `[p, Π h_i]`.
    pub jacobson: Vec<Poly>,
    /// `p^{a-1} Π h_i^{t_i - 1}`.
    pub socle: Poly,
}

impl StructureReport {
    pub fn to_json(&self) -> Value {
        let list = |v: &[Poly]| Value::Array(v.iter().map(|p| p.to_json()).collect());
        json!({
            "maximal_ideals": self.maximal_ideals.iter().map(|m| list(m)).collect::<Vec<_>>(),
            "jacobson_radical": list(&self.jacobson),
            "socle": self.socle.to_json(),
        })
    }
}

impl AmbientRing {
    /// `f` must be regular; a unit leading coefficient is normalized away.
    pub fn new(ring: &GaloisRing, f: Poly) -> Result<Self> {
        if !f.is_regular() {
            return Err(Error::NotRegular);
        }
        let f = f.monic().map_err(|_| Error::NotMonic)?;
        if f.deg().unwrap_or(0) == 0 {
            return Err(Error::InvalidParams("modulus must have positive degree".into()));
        }
        let factorization = primary_factorize(&f)?;
        let idempotents = crt_idempotents(&factorization, &f)?;
        Ok(Self::assemble(ring, f, factorization, idempotents))
    }

    fn assemble(
        ring: &GaloisRing,
        f: Poly,
        factorization: PrimaryFactorization,
        idempotents: Vec<Poly>,
    ) -> Self {
        let k = factorization.factors.len();
        let components = factorization
            .factors
            .iter()
            .enumerate()
            .map(|(i, pf)| {
                let cofactor = factorization
                    .factors
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(Poly::one(ring), |acc, (_, g)| &acc * &g.factor);
                Component {
                    primary: pf.clone(),
                    cofactor,
                    idempotent: if k == 1 { Poly::one(ring) } else { idempotents[i].clone() },
                }
            })
            .collect();
        AmbientRing(Arc::new(Inner {
            ring: ring.clone(),
            f,
            factorization,
            components,
            locals: OnceLock::new(),
            residue: OnceLock::new(),
        }))
    }

    /// `x^n - λ`.
    pub fn constacyclic(ring: &GaloisRing, n: usize, lambda: &GrElem) -> Result<Self> {
        let f = &Poly::monomial(ring, ring.one(), n) - &Poly::constant(ring, lambda.clone());
        Self::new(ring, f)
    }
    pub fn cyclic(ring: &GaloisRing, n: usize) -> Result<Self> {
        Self::constacyclic(ring, n, &ring.one())
    }
    pub fn negacyclic(ring: &GaloisRing, n: usize) -> Result<Self> {
        Self::constacyclic(ring, n, &ring.from_int(-1))
    }

    pub fn ring(&self) -> &GaloisRing {
        &self.0.ring
    }
    pub fn modulus(&self) -> &Poly {
        &self.0.f
    }
    /// `n = deg f`, the code length.
    pub fn degree(&self) -> usize {
        self.0.f.deg().unwrap()
    }
    pub fn factorization(&self) -> &PrimaryFactorization {
        &self.0.factorization
    }
    pub fn components(&self) -> &[Component] {
        &self.0.components
    }
    pub fn idempotents(&self) -> Vec<Poly> {
        self.0.components.iter().map(|c| c.idempotent.clone()).collect()
    }
    pub fn is_local(&self) -> bool {
        self.0.components.len() == 1
    }

    /// `|R| = p^{a m n}`.
    pub fn size(&self) -> u128 {
        self.ring().order().saturating_pow(self.degree() as u32)
    }

    /// The local ambient `GR[x]/(f_i)` of component `i`.
    pub fn local_ambient(&self, i: usize) -> AmbientRing {
        let locals = self.0.locals.get_or_init(|| {
            if self.is_local() {
                return vec![self.clone()];
            }
            let ring = self.ring();
            self.0
                .components
                .iter()
                .map(|c| {
                    let fact = PrimaryFactorization {
                        factors: vec![c.primary.clone()],
                    };
                    Self::assemble(ring, c.factor().clone(), fact, vec![Poly::one(ring)])
                })
                .collect()
        });
        locals[i].clone()
    }

    /// `F_{p^m}[x]/(f̄)`.
    pub fn residue_ambient(&self) -> AmbientRing {
        self.0
            .residue
            .get_or_init(|| {
                if self.ring().is_field() {
                    return self.clone();
                }
                let field = self.ring().residue_field();
                Self::new(&field, self.0.f.project()).expect("residue of a monic modulus")
            })
            .clone()
    }

    pub fn reduce(&self, g: &Poly) -> Poly {
        g.rem(&self.0.f)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mulmod(b, &self.0.f)
    }

    pub fn to_vec(&self, g: &Poly) -> Vec<GrElem> {
        self.reduce(g).to_vec(self.degree())
    }

    pub fn from_vec(&self, v: &[GrElem]) -> Poly {
        Poly::from_coeffs(self.ring(), v.to_vec())
    }

    /// Rows `x^k g mod f` spanning the ideal generated by `gens`.
    pub fn ideal_rows(&self, gens: &[Poly]) -> Vec<Vec<GrElem>> {
        let n = self.degree();
        let mut rows = Vec::with_capacity(gens.len() * n);
        for g in gens {
            let mut cur = self.reduce(g);
            if cur.is_zero() {
                continue;
            }
            for _ in 0..n {
                rows.push(cur.to_vec(n));
                cur = cur.shift(1).rem(&self.0.f);
            }
        }
        rows
    }

    pub fn howell(&self, gens: &[Poly]) -> HowellForm {
        HowellForm::new(self.ring(), self.degree(), self.ideal_rows(gens))
    }

    /// Whether component `i` is a chain ring: `a = 1`, `t = 1`, or
    /// `β ∉ ⟨p, h⟩`.
    pub fn component_is_chain(&self, i: usize) -> bool {
        let c = &self.0.components[i];
        if self.ring().a() == 1 || c.t() == 1 {
            return true;
        }
        !beta_in_maximal(c)
    }

    /// Chain ring iff local and its only component is chain.
    pub fn is_chain_ring(&self) -> bool {
        self.is_local() && self.component_is_chain(0)
    }

    pub fn is_principal_ideal_ring(&self) -> bool {
        self.ring().a() == 1
            || !self
                .0
                .components
                .iter()
                .any(|c| c.t() > 1 && beta_in_maximal(c))
    }

    pub fn structure_report(&self) -> StructureReport {
        let ring = self.ring();
        let p = Poly::constant(ring, ring.from_int(ring.p() as i64));
        let maximal_ideals = self
            .0
            .components
            .iter()
            .map(|c| vec![p.clone(), c.base().clone()])
            .collect();
        let rad = self
            .0
            .components
            .iter()
            .fold(Poly::one(ring), |acc, c| &acc * c.base());
        let socle = self
            .0
            .components
            .iter()
            .fold(Poly::one(ring), |acc, c| &acc * &c.base().pow(c.t() as u64 - 1))
            .mul_p_pow(ring.a() - 1);
        StructureReport {
            maximal_ideals,
            jacobson: vec![p, self.reduce(&rad)],
            socle: self.reduce(&socle),
        }
    }
}

fn beta_in_maximal(c: &Component) -> bool {
    let hb = c.base().project();
    c.beta().project().rem(&hb).is_zero()
}
