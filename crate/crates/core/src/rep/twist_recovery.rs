use super::{ad0_matrix, characters, Character, MatrixRep, RepError};
use crate::ring::{quadratic_extension, LocalRing, Ring, RingElem};

/// Result of searching for `eta` with `rho1 = eta (x) rho2`.
#[derive(Clone, Debug)]
pub struct TwistRecovery {
    /// The character, when one exists.
    pub eta: Option<Character>,
    /// The field in which `eta` takes values.
    pub field: Ring,
    /// Whether the search had to pass to the quadratic extension.
    pub enlarged: bool,
    /// Whether the adjoint traces agree.
    pub ad_traces_agree: bool,
}

fn common_eigenlines(r: &LocalRing, mats: &[[RingElem; 4]]) -> usize {
    // lines spanned by (1, t) and (0, 1)
    let mut count = 0;
    let is_eigen = |v: (RingElem, RingElem)| {
        mats.iter().all(|m| {
            let w0 = r.add(r.mul(m[0], v.0), r.mul(m[1], v.1));
            let w1 = r.add(r.mul(m[2], v.0), r.mul(m[3], v.1));
            // w parallel to v
            r.sub(r.mul(w0, v.1), r.mul(w1, v.0)) == r.zero()
        })
    };
    if is_eigen((r.zero(), r.one())) {
        count += 1;
    }
    for t in r.elements() {
        if is_eigen((r.one(), t)) {
            count += 1;
        }
    }
    count
}

/// Semisimplicity of a representation over a finite field: irreducible over
/// the quadratic extension (no common eigenline) or with at least two
/// common eigenlines.
pub fn is_semisimple(rho: &MatrixRep) -> Result<bool, RepError> {
    Ok(common_eigenline_count(rho)? != 1)
}

/// Number of lines in `F_{q^2}^2` stable under every generator.
pub fn common_eigenline_count(rho: &MatrixRep) -> Result<usize, RepError> {
    let k = rho.ring();
    if !k.is_field() {
        return Err(RepError::Precondition("eigenlines are only counted over fields".into()));
    }
    let emb = quadratic_extension(k)?;
    let mats: Vec<[RingElem; 4]> = rho
        .group()
        .generator_indices()
        .iter()
        .map(|i| rho.value(*i).0.map(|x| emb.apply(x)))
        .collect();
    Ok(common_eigenlines(emb.dst(), &mats))
}

fn ad_traces(rho: &MatrixRep) -> Vec<RingElem> {
    rho.values().iter().map(|g| ad0_matrix(rho.ring(), g).trace(rho.ring())).collect()
}

fn search(
    chars: &[Character],
    r: &LocalRing,
    t1: &[RingElem],
    d1: &[RingElem],
    t2: &[RingElem],
    d2: &[RingElem],
) -> Option<Character> {
    chars
        .iter()
        .find(|eta| {
            (0..t1.len()).all(|x| {
                let e = eta.values()[x];
                t1[x] == r.mul(e, t2[x]) && d1[x] == r.mul(r.mul(e, e), d2[x])
            })
        })
        .cloned()
}

/// Finds a character `eta` with `tr rho1 = eta tr rho2` and
/// `det rho1 = eta^2 det rho2`, searching the base field first and then its
/// quadratic extension.  Returns no character when the adjoint traces
/// already differ.
pub fn recover_twist(rho1: &MatrixRep, rho2: &MatrixRep) -> Result<TwistRecovery, RepError> {
    if rho1.group().len() != rho2.group().len() || rho1.ring().spec() != rho2.ring().spec() {
        return Err(RepError::Precondition("representations of different groups or fields".into()));
    }
    for rho in [rho1, rho2] {
        if !is_semisimple(rho)? {
            return Err(RepError::Precondition("input is not semisimple".into()));
        }
    }
    let k = rho1.ring().clone();
    let agree = ad_traces(rho1) == ad_traces(rho2);
    if !agree {
        return Ok(TwistRecovery { eta: None, field: k, enlarged: false, ad_traces_agree: false });
    }
    let (p1, p2) = (rho1.pseudo(), rho2.pseudo());
    let chars = characters(rho1.group(), &k)?;
    if let Some(eta) = search(&chars, &k, p1.traces(), p1.dets(), p2.traces(), p2.dets()) {
        return Ok(TwistRecovery { eta: Some(eta), field: k, enlarged: false, ad_traces_agree: true });
    }
    let emb = quadratic_extension(&k)?;
    let k2 = emb.dst().clone();
    let lift = |v: &[RingElem]| -> Vec<RingElem> { v.iter().map(|x| emb.apply(*x)).collect() };
    let chars2 = characters(rho1.group(), &k2)?;
    let eta = search(&chars2, &k2, &lift(p1.traces()), &lift(p1.dets()), &lift(p2.traces()), &lift(p2.dets()));
    Ok(TwistRecovery { eta, field: k2, enlarged: true, ad_traces_agree: true })
}
