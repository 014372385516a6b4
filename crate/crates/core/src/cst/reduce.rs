use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::pink::Subring;
use crate::rep::PseudoRep;
use crate::ring::{Ring, RingAut};

use super::twist::first_violation;
use super::{TwistGroup, TwistPair};

/// `A^Sigma`, the elements fixed by every automorphism in `sigmas`.
pub fn fixed_subring(r: &Ring, sigmas: &[RingAut]) -> Subring {
    let members: Vec<_> = r.elements().filter(|a| sigmas.iter().all(|s| s.fixes(*a))).collect();
    Subring::from_elements(r, &members)
}

/// The reduction `beta_t` of a twist group to the residue field.
#[derive(Clone, Debug)]
pub struct ReducedTwists {
    /// `(sigma mod m, eta mod m)` for each pair, in order.
    pub reduced: Vec<TwistPair>,
    /// Distinct reduced pairs.
    pub image: Vec<TwistPair>,
    /// Indices of pairs reducing to `(id, 1)`.
    pub raw_kernel: Vec<usize>,
    /// Distinct automorphisms of `A` that are the identity on the residue
    /// field: the kernel of `Sigma_t -> Sigma_rhobar`.
    pub kernel: Vec<RingAut>,
}

impl ReducedTwists {
    pub fn kernel_size(&self) -> usize {
        self.kernel.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "image_size": self.image.len(),
            "raw_kernel_size": self.raw_kernel.len(),
            "kernel_size": self.kernel.len(),
        })
    }
}

/// Reduces every pair modulo the maximal ideal and checks that the result
/// is a conjugate self-twist of the residual pseudorepresentation.
pub fn reduce_twists(tg: &TwistGroup, pr: &PseudoRep) -> Result<ReducedTwists> {
    let r = pr.ring();
    let residual = pr.residual();
    let f = residual.ring().clone();
    let mut reduced = Vec::with_capacity(tg.len());
    for (i, p) in tg.pairs().iter().enumerate() {
        let sigma = RingAut::frobenius(&f, p.sigma.frobenius_exponent())?;
        let eta = p.eta.map(|v| r.residue(v));
        if let Some(x) = first_violation(&sigma, &eta, &residual) {
            return Err(Error::Inconsistent(format!("pair {i} does not reduce to a residual twist (element {x})")));
        }
        reduced.push(TwistPair { sigma, eta, generalized: p.generalized });
    }
    let mut image: Vec<TwistPair> = Vec::new();
    for p in &reduced {
        if !image.contains(p) {
            image.push(p.clone());
        }
    }
    let raw_kernel = (0..reduced.len()).filter(|i| reduced[*i].is_identity()).collect();
    let kernel = tg.sigmas().into_iter().filter(|s| s.frobenius_exponent() == 0).collect();
    Ok(ReducedTwists { reduced, image, raw_kernel, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ring_automorphisms, LocalRing, RingSpec};

    #[test]
    fn fixed_fields() {
        let f9 = LocalRing::new(RingSpec::new(3, 1, 2)).unwrap();
        assert_eq!(fixed_subring(&f9, &[RingAut::identity(&f9)]).cardinality(), 9);
        let auts = ring_automorphisms(&f9).unwrap();
        let fixed = fixed_subring(&f9, &auts);
        assert_eq!(fixed.cardinality(), 3);
        let brute: Vec<_> = f9.elements().filter(|a| f9.pow(*a, 3) == *a).collect();
        assert_eq!(fixed.elements(), brute);
    }
}
