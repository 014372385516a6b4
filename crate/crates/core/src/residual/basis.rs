use crate::error::{Error, Result};
use crate::rep::{Mat2, MatrixRep};
use crate::ring::{LocalRing, RingElem};

use super::regularity::EigenTable;
use super::{compute_e, projective_class, regularity_status, residual_twists, ProjectiveTag, Subfield};

/// A conjugate of `rho` in the normal form of the basis choice.
#[derive(Clone, Debug)]
pub struct NormalizedBasis {
    /// `x^{-1} rho x`.
    pub rho: MatrixRep,
    pub conjugator: Mat2,
    /// The regular element, diagonal in the new basis.
    pub g0: u32,
    pub lambda0: RingElem,
    pub mu0: RingElem,
    /// Smallest `n >= 1` with `g0^n in Pi_0` and `rho(g0^n)` not scalar.
    pub power: u64,
}

/// Whether `m` is a scalar multiple of a matrix over the subfield `e`.
fn in_z_gl2(f: &LocalRing, m: &Mat2, e: &Subfield) -> bool {
    let Some(pivot) = m.0.iter().copied().find(|x| *x != f.zero()) else { return false };
    let inv = f.inv(pivot).expect("nonzero field element");
    m.0.iter().all(|x| e.contains(f, f.mul(*x, inv)))
}

/// An eigenvector of `m` for the eigenvalue `l`, normalised so that its
/// first nonzero coordinate is 1.
fn eigenvector(f: &LocalRing, m: &Mat2, l: RingElem) -> (RingElem, RingElem) {
    let a = f.sub(m.a(), l);
    let b = m.b();
    if a == f.zero() && b == f.zero() {
        // first row vanishes: (1, 0) unless the second row forces otherwise
        let c = m.c();
        let d = f.sub(m.d(), l);
        if c == f.zero() && d == f.zero() {
            return (f.one(), f.zero());
        }
        if d == f.zero() {
            return (f.zero(), f.one());
        }
        return (f.one(), f.neg(f.div(c, d)));
    }
    if b == f.zero() {
        (f.zero(), f.one())
    } else {
        (f.one(), f.neg(f.div(a, b)))
    }
}

/// Conjugates `rho` so that its image lies in `Z GL_2(E)` and a regular
/// element is diagonal.  For exceptional or large image the regular element
/// also has a non-scalar power in `Pi_0`, and for large image with `p >= 7`
/// its eigenvalues lie in `F_p`.
///
/// The conjugator is found by scanning regular elements with eigenvalues in
/// `F`; every matrix diagonalising such an element is, up to scalars, its
/// eigenvector matrix times `diag(1, c)`.
pub fn normalize_basis(rho: &MatrixRep) -> Result<NormalizedBasis> {
    let f = rho.ring().clone();
    let report = regularity_status(rho)?;
    if !report.regular {
        return Err(Error::Precondition("representation is not regular".into()));
    }
    if let Some(None) = report.good {
        return Err(Error::Precondition("octahedral representation is not good".into()));
    }
    let det_order = rho.det_character().order(&f);
    if !det_order.is_power_of_two() {
        return Err(Error::Precondition(format!("determinant has order {det_order}, not a power of 2")));
    }
    let class = projective_class(rho)?;
    let big = class.is_exceptional() || class.is_large();
    let need_prime_field = matches!(class.tag, ProjectiveTag::Psl2(_) | ProjectiveTag::Pgl2(_)) && f.p() >= 7;
    let e = compute_e(&rho.pseudo())?;
    let table = EigenTable::new(rho)?;
    let pi0_mask = residual_twists(rho)?.pi0_mask();
    let g = rho.group();
    let mut units = f.units();
    units.sort_by_key(|c| *c != f.one());
    let gens: Vec<u32> = g.generator_indices();
    // already diagonal elements first, so a normal input keeps its basis
    let mut order: Vec<u32> = (0..g.len() as u32).collect();
    order.sort_by_key(|x| !rho.value(*x).is_diagonal(&f));

    for g0 in order {
        if !table.is_regular(g0, &e) {
            continue;
        }
        let (lk, mk) = table.eigen[g0 as usize];
        let (Some(l), Some(m)) = (table.solver.descend(lk), table.solver.descend(mk)) else { continue };
        if need_prime_field && !(table.solver.in_prime_field(lk) && table.solver.in_prime_field(mk)) {
            continue;
        }
        let power = if big {
            let ord = g.order_of(g0);
            let mut pw = g0;
            let mut found = None;
            for n in 1..=ord {
                if pi0_mask[pw as usize] && !rho.value(pw).is_scalar(&f) {
                    found = Some(n);
                    break;
                }
                pw = g.mul(pw, g0);
            }
            match found {
                Some(n) => n,
                None => continue,
            }
        } else {
            1
        };
        let m0 = rho.value(g0);
        let p = if m0.is_diagonal(&f) {
            Mat2::identity(&f)
        } else {
            let v1 = eigenvector(&f, m0, l);
            let v2 = eigenvector(&f, m0, m);
            Mat2::new(v1.0, v2.0, v1.1, v2.1)
        };
        for c in &units {
            let x = p.mul(&f, &Mat2::diag(&f, f.one(), *c));
            let Some(xi) = x.inv(&f) else { continue };
            let ok = gens.iter().all(|i| in_z_gl2(&f, &xi.mul(&f, rho.value(*i)).mul(&f, &x), &e));
            if ok {
                let conj = rho.conjugate(&x)?;
                debug_assert!(conj.value(g0).is_diagonal(&f));
                let d = conj.value(g0);
                return Ok(NormalizedBasis { rho: conj.clone(), conjugator: x, g0, lambda0: d.a(), mu0: d.d(), power });
            }
        }
    }
    Err(Error::NoConjugator("no eigenvector basis of a regular element puts the image in Z GL2(E)".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::GroupTable;
    use crate::ring::{LocalRing, RingSpec};
    use std::sync::Arc;

    #[test]
    fn already_normal() {
        let f7 = LocalRing::new(RingSpec::new(7, 1, 1)).unwrap();
        let g = GroupTable::close(&f7, &[Mat2::from_ints(&f7, [6, 0, 0, 1]), Mat2::from_ints(&f7, [1, 1, 0, 1]), Mat2::from_ints(&f7, [1, 0, 1, 1])]).unwrap();
        let rho = MatrixRep::identity(Arc::new(g));
        let nb = normalize_basis(&rho).unwrap();
        assert!(nb.rho.value(nb.g0).is_diagonal(&f7));
        // F_7 eigenvalues for the large case
        assert!(nb.lambda0 != f7.zero() && nb.mu0 != f7.zero());
        let x = nb.conjugator;
        assert!(x.b() == f7.zero() && x.c() == f7.zero());
    }

    #[test]
    fn non_regular_is_rejected() {
        let f7 = LocalRing::new(RingSpec::new(7, 1, 1)).unwrap();
        let g = GroupTable::close(&f7, &[Mat2::scalar(&f7, f7.from_int(6))]).unwrap();
        assert!(matches!(normalize_basis(&MatrixRep::identity(Arc::new(g))), Err(Error::Precondition(_))));
    }
}
