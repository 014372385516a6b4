use super::{LocalRing, Ring, RingElem, RingError, RingSpec};

/// An embedding of finite fields `F_{p^a} -> F_{p^b}`.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    src: Ring,
    dst: Ring,
    table: Vec<RingElem>,
}

impl FieldEmbedding {
    /// The embedding sending the generator of `src` to the least root (in
    /// element order) of its modulus inside `dst`.
    pub fn new(src: &Ring, dst: &Ring) -> Result<FieldEmbedding, RingError> {
        if !src.is_field() || !dst.is_field() || src.p() != dst.p() || !dst.f().is_multiple_of(src.f()) {
            return Err(RingError::Precondition(format!(
                "no field embedding {} -> {}",
                src.spec(),
                dst.spec()
            )));
        }
        let modulus: Vec<RingElem> =
            src.unramified_modulus().iter().map(|c| dst.from_int(*c as i64)).collect();
        let root = if src.f() == 1 {
            dst.from_int(-(src.unramified_modulus()[0] as i64))
        } else {
            dst.elements()
                .find(|y| {
                    modulus.iter().rev().fold(dst.zero(), |acc, c| dst.add(dst.mul(acc, *y), *c)) == dst.zero()
                })
                .expect("finite fields of the right degree contain every root")
        };
        let powers: Vec<RingElem> = (0..src.f()).map(|i| dst.pow(root, i as u64)).collect();
        let table = src
            .elements()
            .map(|a| {
                let c = src.coeffs(a);
                let mut acc = dst.zero();
                for (i, ci) in c.iter().enumerate() {
                    acc = dst.add(acc, dst.scale(powers[i], *ci as i64));
                }
                acc
            })
            .collect();
        Ok(FieldEmbedding { src: src.clone(), dst: dst.clone(), table })
    }

    pub fn src(&self) -> &Ring {
        &self.src
    }

    pub fn dst(&self) -> &Ring {
        &self.dst
    }

    pub fn apply(&self, a: RingElem) -> RingElem {
        self.table[a.index()]
    }

    /// Preimage of an element of the image, if any.
    pub fn preimage(&self, b: RingElem) -> Option<RingElem> {
        self.table.iter().position(|x| *x == b).map(|i| RingElem(i as u32))
    }
}

/// The quadratic extension of a finite field together with its embedding.
pub fn quadratic_extension(k: &Ring) -> Result<FieldEmbedding, RingError> {
    let k2 = LocalRing::new(RingSpec::new(k.p() as u32, 1, 2 * k.f() as u32))?;
    FieldEmbedding::new(k, &k2)
}

/// The subfield `F_{p^d}` of a finite field, with its embedding.
pub fn subfield(k: &Ring, d: usize) -> Result<FieldEmbedding, RingError> {
    let sub = LocalRing::new(RingSpec::new(k.p() as u32, 1, d as u32))?;
    FieldEmbedding::new(&sub, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_a_ring_map() {
        let f3 = LocalRing::new(RingSpec::new(3, 1, 1)).unwrap();
        let f9 = LocalRing::new(RingSpec::new(3, 1, 2)).unwrap();
        let f81 = LocalRing::new(RingSpec::new(3, 1, 4)).unwrap();
        for (a, b) in [(&f3, &f9), (&f9, &f81)] {
            let e = FieldEmbedding::new(a, b).unwrap();
            for x in a.elements() {
                for y in a.elements() {
                    assert_eq!(e.apply(a.mul(x, y)), b.mul(e.apply(x), e.apply(y)));
                    assert_eq!(e.apply(a.add(x, y)), b.add(e.apply(x), e.apply(y)));
                }
            }
        }
        assert!(FieldEmbedding::new(&f9, &f3).is_err());
    }
}
