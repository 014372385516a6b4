use crate::error::{Error, Result};
use crate::rep::{characters, Character, PseudoRep};
use crate::ring::{Ring, RingAut, RingElem};

/// A pair `(sigma, eta)` of a ring automorphism and a character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistPair {
    pub sigma: RingAut,
    pub eta: Character,
    /// Set when `sigma` does not preserve the declared coefficient subring or
    /// `eta` leaves its units.
    pub generalized: bool,
}

impl TwistPair {
    pub fn identity(ring: &Ring, len: usize) -> TwistPair {
        TwistPair { sigma: RingAut::identity(ring), eta: Character::trivial(len, ring), generalized: false }
    }

    pub fn is_identity(&self) -> bool {
        let r = self.sigma.ring();
        self.sigma.is_identity() && self.eta.is_trivial(r)
    }

    /// Whether `sigma(t) = eta t` and `sigma(d) = eta^2 d` pointwise.
    pub fn satisfies(&self, pr: &PseudoRep) -> bool {
        first_violation(&self.sigma, &self.eta, pr).is_none()
    }

    /// `(sigma, eta)(tau, chi) = (sigma tau, sigma(chi) eta)`.
    pub fn compose(&self, other: &TwistPair) -> TwistPair {
        let r = self.sigma.ring();
        TwistPair {
            sigma: self.sigma.compose(&other.sigma),
            eta: other.eta.apply_aut(&self.sigma).mul(r, &self.eta),
            generalized: self.generalized || other.generalized,
        }
    }

    pub fn inverse(&self) -> TwistPair {
        let r = self.sigma.ring();
        let si = self.sigma.inverse();
        TwistPair { eta: self.eta.inv(r).apply_aut(&si), sigma: si, generalized: self.generalized }
    }

    /// `{sigma: generator images, eta: value table, generalized}`.
    pub fn to_json(&self) -> serde_json::Value {
        let r = self.sigma.ring();
        let mut sigma = serde_json::json!({ "x": r.coeffs(self.sigma.x_image()) });
        if let Some(u) = self.sigma.u_image() {
            sigma["u"] = serde_json::json!(r.coeffs(u));
        }
        serde_json::json!({
            "sigma": sigma,
            "eta": self.eta.values().iter().map(|v| r.coeffs(*v)).collect::<Vec<_>>(),
            "generalized": self.generalized,
        })
    }

    fn same(&self, other: &TwistPair) -> bool {
        self.sigma == other.sigma && self.eta == other.eta
    }
}

/// First group element where the twist equations fail.
pub(crate) fn first_violation(sigma: &RingAut, eta: &Character, pr: &PseudoRep) -> Option<u32> {
    let r = pr.ring();
    (0..pr.group().len() as u32).find(|x| {
        let e = eta.value(*x);
        sigma.apply(pr.t(*x)) != r.mul(e, pr.t(*x)) || sigma.apply(pr.d(*x)) != r.mul(r.mul(e, e), pr.d(*x))
    })
}

/// A finite group of twist pairs under the law
/// `(sigma, eta)(tau, chi) = (sigma tau, sigma(chi) eta)`.
#[derive(Clone, Debug)]
pub struct TwistGroup {
    ring: Ring,
    pairs: Vec<TwistPair>,
}

impl TwistGroup {
    pub fn from_pairs(ring: &Ring, pairs: Vec<TwistPair>) -> TwistGroup {
        TwistGroup { ring: ring.clone(), pairs }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn pairs(&self) -> &[TwistPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn position(&self, p: &TwistPair) -> Option<usize> {
        self.pairs.iter().position(|q| q.same(p))
    }

    /// Product of two members by index.
    pub fn mul(&self, i: usize, j: usize) -> Option<usize> {
        self.position(&self.pairs[i].compose(&self.pairs[j]))
    }

    /// Checks identity, closure and inverses; returns a description of the
    /// first failure.
    pub fn verify_group_law(&self) -> std::result::Result<(), String> {
        if !self.pairs.iter().any(|p| p.is_identity()) {
            return Err("identity pair missing".into());
        }
        for (i, a) in self.pairs.iter().enumerate() {
            for (j, b) in self.pairs.iter().enumerate() {
                if self.position(&a.compose(b)).is_none() {
                    return Err(format!("product of pairs {i} and {j} is missing"));
                }
            }
            if self.position(&a.inverse()).is_none() {
                return Err(format!("inverse of pair {i} is missing"));
            }
        }
        Ok(())
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.pairs.len();
        (0..n).all(|i| (0..n).all(|j| self.pairs[i].compose(&self.pairs[j]).same(&self.pairs[j].compose(&self.pairs[i]))))
    }

    /// Whether no two pairs share `eta` with different `sigma`.
    pub fn sigma_determined_by_eta(&self) -> bool {
        self.pairs.iter().all(|a| self.pairs.iter().all(|b| a.eta != b.eta || a.sigma == b.sigma))
    }

    /// The distinct automorphisms occurring, identity first.
    pub fn sigmas(&self) -> Vec<RingAut> {
        let mut out: Vec<RingAut> = Vec::new();
        for p in &self.pairs {
            if !out.contains(&p.sigma) {
                out.push(p.sigma.clone());
            }
        }
        out.sort_by_key(|s| !s.is_identity());
        out
    }

    /// Indices of the pairs with `sigma = id`.
    pub fn dihedral_part(&self) -> Vec<usize> {
        (0..self.pairs.len()).filter(|i| self.pairs[*i].sigma.is_identity()).collect()
    }

    /// Intersection of the kernels of all `eta`, as sorted element indices.
    pub fn common_kernel(&self, group_len: usize) -> Vec<u32> {
        let r = &self.ring;
        (0..group_len as u32).filter(|x| self.pairs.iter().all(|p| p.eta.value(*x) == r.one())).collect()
    }
}

/// Options for the exhaustive twist search.
#[derive(Clone, Debug, Default)]
pub struct TwistSearch {
    /// Elements of the declared coefficient subring, sorted; the whole ring
    /// when absent.
    pub coefficient_subring: Option<Vec<RingElem>>,
}

fn is_generalized(sigma: &RingAut, eta: &Character, sub: &Option<Vec<RingElem>>) -> bool {
    match sub {
        None => false,
        Some(s) => {
            let r = sigma.ring();
            let inside = |x: RingElem| s.binary_search(&x).is_ok();
            s.iter().any(|a| !inside(sigma.apply(*a)))
                || eta.values().iter().any(|v| !inside(*v) || !inside(r.inv(*v).unwrap_or(r.zero())))
        }
    }
}

/// All `(sigma, eta)` with `sigma` in `auts` and `eta` a character of the
/// group into the units of the coefficient ring, satisfying the twist
/// equations.  The result is checked against the group law.
pub fn twist_group(pr: &PseudoRep, auts: &[RingAut]) -> Result<TwistGroup> {
    twist_group_with(pr, auts, &TwistSearch::default())
}

pub fn twist_group_with(pr: &PseudoRep, auts: &[RingAut], opts: &TwistSearch) -> Result<TwistGroup> {
    let r = pr.ring();
    if auts.iter().any(|a| a.ring().spec() != r.spec()) {
        return Err(Error::Precondition("automorphisms of a different ring".into()));
    }
    let chars = characters(pr.group(), r)?;
    let mut pairs = Vec::new();
    for sigma in auts {
        for eta in &chars {
            if first_violation(sigma, eta, pr).is_none() {
                let generalized = is_generalized(sigma, eta, &opts.coefficient_subring);
                pairs.push(TwistPair { sigma: sigma.clone(), eta: eta.clone(), generalized });
            }
        }
    }
    let tg = TwistGroup::from_pairs(r, pairs);
    tg.verify_group_law().map_err(Error::Inconsistent)?;
    Ok(tg)
}

/// `a . b` under the twist group law.
pub fn compose_twists(a: &TwistPair, b: &TwistPair) -> TwistPair {
    a.compose(b)
}
