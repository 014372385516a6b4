use serde::Serialize;

use crate::error::{Error, Result};
use crate::rep::{Mat2, PseudoRep};
use crate::ring::{quadratic_extension, FieldEmbedding, LocalRing, Ring, RingElem};

/// A subfield `F_{p^degree}` of a finite field, with a primitive element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subfield {
    pub degree: usize,
    pub generator: RingElem,
}

#[derive(Serialize)]
struct SubfieldOut {
    degree: usize,
    generator: Vec<u64>,
}

impl Subfield {
    pub fn of_degree(f: &LocalRing, degree: usize) -> Subfield {
        Subfield { degree, generator: f.subfield_generator(degree) }
    }

    /// Whether `a` lies in the subfield.
    pub fn contains(&self, f: &LocalRing, a: RingElem) -> bool {
        f.pow(a, f.p().pow(self.degree as u32)) == a
    }

    pub fn order(&self, p: u64) -> u64 {
        p.pow(self.degree as u32)
    }

    pub fn to_json(&self, f: &LocalRing) -> serde_json::Value {
        serde_json::to_value(SubfieldOut { degree: self.degree, generator: f.coeffs(self.generator) })
            .expect("plain data")
    }
}

/// The subfield generated by all `t(g)^2 / d(g)`.
pub fn compute_e(pr: &PseudoRep) -> Result<Subfield> {
    let f = pr.ring();
    if !f.is_field() {
        return Err(Error::Precondition("E is defined for representations over a field".into()));
    }
    let mut degree = 1;
    for x in 0..pr.group().len() as u32 {
        let d = pr.d(x);
        let di = f.inv(d).ok_or_else(|| Error::Precondition("determinant is not a unit".into()))?;
        let t = pr.t(x);
        let v = f.mul(f.mul(t, t), di);
        let k = f.field_degree_of(v);
        degree = degree / gcd(degree, k) * k;
    }
    Ok(Subfield::of_degree(f, degree))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Eigenvalues of 2x2 matrices over `F`, computed in the quadratic
/// extension `K` of `F`.
pub struct EigenSolver {
    field: Ring,
    emb: FieldEmbedding,
    roots: Vec<RingElem>,
}

impl EigenSolver {
    pub fn new(field: &Ring) -> Result<EigenSolver> {
        let emb = quadratic_extension(field)?;
        let k = emb.dst().clone();
        // least square root of each square
        let mut roots = vec![RingElem(u32::MAX); k.size() as usize];
        for y in k.elements() {
            let s = k.mul(y, y).index();
            if roots[s].0 == u32::MAX {
                roots[s] = y;
            }
        }
        Ok(EigenSolver { field: field.clone(), emb, roots })
    }

    pub fn field(&self) -> &Ring {
        &self.field
    }

    pub fn extension(&self) -> &Ring {
        self.emb.dst()
    }

    pub fn embed(&self, a: RingElem) -> RingElem {
        self.emb.apply(a)
    }

    /// The element of `F` corresponding to `a` in `K`, if any.
    pub fn descend(&self, a: RingElem) -> Option<RingElem> {
        self.emb.preimage(a)
    }

    /// The roots `(t + s)/2`, `(t - s)/2` of `X^2 - tX + d`, where `s` is the
    /// least square root of the discriminant.
    pub fn eigenvalues(&self, m: &Mat2) -> (RingElem, RingElem) {
        let f = &self.field;
        let k = self.emb.dst();
        let t = self.emb.apply(m.trace(f));
        let d = self.emb.apply(m.det(f));
        let disc = k.sub(k.mul(t, t), k.scale(d, 4));
        let s = self.roots[disc.index()];
        debug_assert!(s.0 != u32::MAX, "every element of F is a square in K");
        let h = k.half();
        (k.mul(k.add(t, s), h), k.mul(k.sub(t, s), h))
    }

    /// Whether an element of `K` lies in the subfield `sub` of `F`.
    pub fn in_subfield(&self, a: RingElem, sub: &Subfield) -> bool {
        let k = self.emb.dst();
        k.pow(a, k.p().pow(sub.degree as u32)) == a
    }

    /// Whether an element of `K` lies in the prime field.
    pub fn in_prime_field(&self, a: RingElem) -> bool {
        let k = self.emb.dst();
        k.pow(a, k.p()) == a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{GroupTable, MatrixRep};
    use crate::ring::RingSpec;
    use std::sync::Arc;

    #[test]
    fn eigenvalues_are_roots() {
        let f5 = LocalRing::new(RingSpec::new(5, 1, 1)).unwrap();
        let es = EigenSolver::new(&f5).unwrap();
        let k = es.extension().clone();
        for m in [[1, 2, 3, 2], [0, 1, 2, 0], [2, 0, 0, 3], [1, 1, 0, 1]] {
            let m = Mat2::from_ints(&f5, m);
            let (l, u) = es.eigenvalues(&m);
            assert_eq!(k.add(l, u), es.embed(m.trace(&f5)));
            assert_eq!(k.mul(l, u), es.embed(m.det(&f5)));
        }
    }

    #[test]
    fn e_of_scalars_is_prime_field() {
        let f25 = LocalRing::new(RingSpec::new(5, 1, 2)).unwrap();
        let g = Arc::new(GroupTable::close(&f25, &[Mat2::scalar(&f25, f25.x())]).unwrap());
        let e = compute_e(&MatrixRep::identity(g).pseudo()).unwrap();
        assert_eq!(e.degree, 1);
    }

    #[test]
    fn e_of_sl2_f5_in_f25() {
        let f25 = LocalRing::new(RingSpec::new(5, 1, 2)).unwrap();
        let gens = [Mat2::from_ints(&f25, [1, 1, 0, 1]), Mat2::from_ints(&f25, [1, 0, 1, 1]), Mat2::scalar(&f25, f25.x())];
        let g = Arc::new(GroupTable::close(&f25, &gens).unwrap());
        let e = compute_e(&MatrixRep::identity(g).pseudo()).unwrap();
        assert_eq!(e.degree, 1);
    }
}
