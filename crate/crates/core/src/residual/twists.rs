use crate::cst::{twist_group, TwistGroup};
use crate::error::{Error, Result};
use crate::rep::MatrixRep;
use crate::ring::{ring_automorphisms, RingAut};

use super::Subfield;

/// The conjugate self-twists of a residual representation.
#[derive(Clone, Debug)]
pub struct ResidualTwistGroup {
    pub twists: TwistGroup,
    /// Indices of the pairs with trivial automorphism.
    pub sigma_di: Vec<usize>,
    /// `Pi_0`: the common kernel of all characters, as sorted indices.
    pub pi0: Vec<u32>,
    group_len: usize,
}

impl ResidualTwistGroup {
    pub fn pi0_index(&self) -> usize {
        self.group_len / self.pi0.len()
    }

    pub fn pi0_mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.group_len];
        for x in &self.pi0 {
            m[*x as usize] = true;
        }
        m
    }

    /// The distinct automorphisms occurring.
    pub fn sigmas(&self) -> Vec<RingAut> {
        self.twists.sigmas()
    }

    /// The subfield of `F` fixed by every automorphism that occurs.
    pub fn fixed_field(&self) -> Subfield {
        let f = self.twists.ring();
        let mut d = f.f();
        for s in self.sigmas() {
            d = gcd(d, s.frobenius_exponent());
        }
        Subfield::of_degree(f, d)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All `(sigma, eta)` with `sigma in Aut(F)` and `eta: Pi -> F^x` such that
/// `sigma(t) = eta t` and `sigma(d) = eta^2 d`.
pub fn residual_twists(rho: &MatrixRep) -> Result<ResidualTwistGroup> {
    let f = rho.ring();
    if !f.is_field() {
        return Err(Error::Precondition("residual twists need a representation over a field".into()));
    }
    let auts = ring_automorphisms(f)?;
    let twists = twist_group(&rho.pseudo(), &auts)?;
    let sigma_di = twists.dihedral_part();
    let n = rho.group().len();
    let pi0 = twists.common_kernel(n);
    Ok(ResidualTwistGroup { twists, sigma_di, pi0, group_len: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{GroupTable, Mat2};
    use crate::residual::compute_e;
    use crate::ring::{LocalRing, RingSpec};
    use std::sync::Arc;

    #[test]
    fn sigma_di_sizes() {
        let f7 = LocalRing::new(RingSpec::new(7, 1, 1)).unwrap();
        let rep = |gens: &[Mat2]| MatrixRep::identity(Arc::new(GroupTable::close(&f7, gens).unwrap()));
        // nonabelian dihedral projective image
        let d = residual_twists(&rep(&[Mat2::from_ints(&f7, [3, 0, 0, 1]), Mat2::from_ints(&f7, [0, 1, 1, 0])])).unwrap();
        assert_eq!(d.sigma_di.len(), 2);
        // Klein four projective image
        let k = residual_twists(&rep(&[Mat2::from_ints(&f7, [-1, 0, 0, 1]), Mat2::from_ints(&f7, [0, 1, 1, 0])])).unwrap();
        assert_eq!(k.sigma_di.len(), 4);
        // SL2(F7): large
        let l = residual_twists(&rep(&[Mat2::from_ints(&f7, [1, 1, 0, 1]), Mat2::from_ints(&f7, [1, 0, 1, 1])])).unwrap();
        assert_eq!(l.sigma_di.len(), 1);
        assert_eq!(l.pi0_index(), 1);
    }

    #[test]
    fn e_is_fixed_field() {
        let f9 = LocalRing::new(RingSpec::new(3, 1, 2)).unwrap();
        let x = f9.x();
        let rho = MatrixRep::identity(Arc::new(
            GroupTable::close(&f9, &[Mat2::diag(&f9, x, f9.one()), Mat2::new(f9.zero(), f9.one(), f9.one(), f9.zero())])
                .unwrap(),
        ));
        let tw = residual_twists(&rho).unwrap();
        let e = compute_e(&rho.pseudo()).unwrap();
        assert_eq!(tw.fixed_field().degree, e.degree);
    }
}
