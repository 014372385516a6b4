use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{RingElem, Span, ZnModule};

use super::subring::{extend_scalars, Base};

/// Kernels up to this size are scanned for the least witness.
const KERNEL_SCAN_CAP: u128 = 1 << 16;

/// Whether `W(L1) (x)_{W(L2)} W(L2)J -> W(L1)J` is injective.
#[derive(Clone, Debug)]
pub struct JSmallness {
    pub small: bool,
    /// Degrees of `L1` and `L2` over `F_p`.
    pub l1: usize,
    pub l2: usize,
    /// For a big `J`: elements `m_0, ..., m_{k-1}` of `W(L2)J`, not all
    /// zero, with `sum omega^i m_i = 0` where `omega` is the Teichmuller lift
    /// of the chosen generator of `L1`.  For `k = 2` this is `x + s(alpha) y`.
    pub witness: Option<Vec<RingElem>>,
    pub omega: RingElem,
}

impl JSmallness {
    pub fn to_json(&self, r: &crate::ring::LocalRing) -> Value {
        json!({
            "small": self.small,
            "l1_degree": self.l1,
            "l2_degree": self.l2,
            "omega": r.coeffs(self.omega),
            "witness": self.witness.as_ref().map(|w| w.iter().map(|x| r.coeffs(*x)).collect::<Vec<_>>()),
        })
    }
}

/// Decides smallness of `J` with respect to `F_{p^l1} / F_{p^l2}`.  The
/// tensor product is realised as `k = l1/l2` formal copies of `W(L2)J`
/// indexed by the `W(L2)`-basis `1, omega, ..., omega^{k-1}` of `W(L1)`.
pub fn j_smallness(j: &Span, l1: usize, l2: usize) -> Result<JSmallness> {
    let r = j.ring().clone();
    if l2 == 0 || !l1.is_multiple_of(l2) || !r.f().is_multiple_of(l1) {
        return Err(Error::Precondition(format!("F_(p^{l2}) is not contained in F_(p^{l1}) inside the residue field")));
    }
    let m = extend_scalars(j, Base::Witt(l2))?;
    let k = l1 / l2;
    let omega = r.teichmuller(r.residue_field().subfield_generator(l1));
    let powers: Vec<RingElem> = (0..k).map(|i| r.pow(omega, i as u64)).collect();
    let gens: Vec<RingElem> = m.basis().iter().map(|v| v[0]).collect();

    let mut image = Span::new(&r, 1);
    for w in &powers {
        for g in &gens {
            image.insert(&[r.mul(*w, *g)]);
        }
    }
    let small = image.log_card() == k as u32 * m.log_card();
    let witness = if small {
        None
    } else {
        let images: Vec<Vec<u64>> =
            powers.iter().flat_map(|w| gens.iter().map(move |g| (*w, *g))).map(|(w, g)| r.coeffs(r.mul(w, g))).collect();
        let ker = ZnModule::kernel_of(r.p(), r.n(), &images);
        let candidates = if ker.cardinality() <= KERNEL_SCAN_CAP {
            ker.elements()
        } else {
            ker.rows().into_iter().map(|(_, _, row)| row).collect()
        };
        let mut best: Option<Vec<RingElem>> = None;
        for c in candidates {
            let parts: Vec<RingElem> = (0..k)
                .map(|i| {
                    gens.iter().enumerate().fold(r.zero(), |acc, (jj, g)| r.add(acc, r.scale(*g, c[i * gens.len() + jj] as i64)))
                })
                .collect();
            if parts.iter().any(|x| *x != r.zero()) && best.as_ref().is_none_or(|b| parts < *b) {
                best = Some(parts);
            }
        }
        Some(best.ok_or_else(|| Error::Inconsistent("injectivity failed but no kernel element found".into()))?)
    };
    Ok(JSmallness { small, l1, l2, witness, omega })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{LocalRing, RingSpec};

    #[test]
    fn zero_and_equal_fields() {
        let w9 = LocalRing::new(RingSpec::new(3, 2, 2)).unwrap();
        assert!(j_smallness(&Span::new(&w9, 1), 2, 1).unwrap().small);
        let mut j = Span::new(&w9, 1);
        j.insert(&[w9.from_int(3)]);
        assert!(j_smallness(&j, 2, 2).unwrap().small);
        assert!(j_smallness(&j, 1, 2).is_err());
    }

    #[test]
    fn big_example() {
        let w9 = LocalRing::new(RingSpec::new(3, 2, 2)).unwrap();
        let mut j = Span::new(&w9, 1);
        j.insert(&[w9.from_int(3)]);
        let js = j_smallness(&j, 2, 1).unwrap();
        assert!(js.small);
        j.insert(&[w9.mul(w9.from_int(3), w9.x())]);
        let js = j_smallness(&j, 2, 1).unwrap();
        assert!(!js.small);
        let w = js.witness.unwrap();
        assert!(w.iter().all(|x| *x != w9.zero()));
        assert_eq!(w9.add(w[0], w9.mul(js.omega, w[1])), w9.zero());
    }
}
