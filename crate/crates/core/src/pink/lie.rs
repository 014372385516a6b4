use crate::error::{Error, Result};
use crate::rep::Mat2;
use crate::ring::{LocalRing, Ring, RingElem, Span};

use super::Subring;

/// `Theta(x) = x - tr(x)/2`.
pub fn theta(r: &LocalRing, x: &Mat2) -> Mat2 {
    let h = r.mul(x.trace(r), r.half());
    Mat2::new(r.sub(x.a(), h), x.b(), x.c(), r.sub(x.d(), h))
}

/// `[x, y] = xy - yx`.
pub fn bracket(r: &LocalRing, x: &Mat2, y: &Mat2) -> Mat2 {
    x.mul(r, y).sub(r, &y.mul(r, x))
}

fn coords(m: &Mat2) -> [RingElem; 3] {
    [m.a(), m.b(), m.c()]
}

fn from_coords(r: &LocalRing, v: &[RingElem]) -> Mat2 {
    Mat2::new(v[0], v[1], v[2], r.neg(v[0]))
}

/// An additive subgroup of the trace-zero matrices `(a b; c -a)`.
#[derive(Clone, Debug)]
pub struct LieSubmodule {
    span: Span,
}

impl LieSubmodule {
    pub fn zero(ring: &Ring) -> Self {
        LieSubmodule { span: Span::new(ring, 3) }
    }

    /// The additive closure of `gens`, which must have trace zero.
    pub fn generated_by(ring: &Ring, gens: &[Mat2]) -> Result<Self> {
        let mut l = Self::zero(ring);
        for g in gens {
            l.insert(g)?;
        }
        Ok(l)
    }

    /// `sl_2(a)` for an additive subgroup `a` of the ring.
    pub fn sl2(ideal: &Span) -> Self {
        Self::from_parts(ideal, ideal, ideal)
    }

    /// `{(a b; c -a) : a in i, b in b, c in c}`.
    pub fn from_parts(i: &Span, b: &Span, c: &Span) -> Self {
        let r = i.ring();
        let z = r.zero();
        let mut l = Self::zero(r);
        for v in i.basis() {
            l.span.insert(&[v[0], z, z]);
        }
        for v in b.basis() {
            l.span.insert(&[z, v[0], z]);
        }
        for v in c.basis() {
            l.span.insert(&[z, z, v[0]]);
        }
        l
    }

    pub fn ring(&self) -> &Ring {
        self.span.ring()
    }

    pub fn span(&self) -> &Span {
        &self.span
    }

    pub fn insert(&mut self, m: &Mat2) -> Result<bool> {
        let r = self.ring().clone();
        if m.trace(&r) != r.zero() {
            return Err(Error::Precondition(format!("{} does not have trace zero", m.format(&r))));
        }
        Ok(self.span.insert(&coords(m)))
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        let r = self.ring();
        m.trace(r) == r.zero() && self.span.contains(&coords(m))
    }

    pub fn cardinality(&self) -> u128 {
        self.span.cardinality()
    }

    pub fn is_zero(&self) -> bool {
        self.span.is_zero()
    }

    /// A generating set (the rows of the echelon form).
    pub fn basis(&self) -> Vec<Mat2> {
        let r = self.ring();
        self.span.basis().iter().map(|v| from_coords(r, v)).collect()
    }

    pub fn elements(&self) -> Vec<Mat2> {
        let r = self.ring();
        let mut out: Vec<Mat2> = self.span.elements().iter().map(|v| from_coords(r, v)).collect();
        out.sort();
        out
    }

    pub fn is_subset_of(&self, other: &LieSubmodule) -> bool {
        self.span.is_subspan_of(&other.span)
    }

    pub fn same_as(&self, other: &LieSubmodule) -> bool {
        self.span.same_as(&other.span)
    }

    pub fn sum(&self, other: &LieSubmodule) -> LieSubmodule {
        LieSubmodule { span: self.span.sum(&other.span) }
    }

    /// The additive group generated by `[x, y]`, `x` in `self`, `y` in
    /// `other`.  Bilinearity reduces this to brackets of generators.
    pub fn bracket_with(&self, other: &LieSubmodule) -> LieSubmodule {
        let r = self.ring().clone();
        let mut out = Self::zero(&r);
        let ys = other.basis();
        for x in self.basis() {
            for y in &ys {
                out.span.insert(&coords(&bracket(&r, &x, y)));
            }
        }
        out
    }

    pub fn is_bracket_closed(&self) -> bool {
        self.bracket_with(self).is_subset_of(self)
    }

    /// `x L x^{-1}`.
    pub fn conjugate(&self, x: &Mat2) -> Result<LieSubmodule> {
        let r = self.ring().clone();
        let xi = x.inv(&r).ok_or_else(|| Error::Precondition("conjugator is not invertible".into()))?;
        let mut out = Self::zero(&r);
        for b in self.basis() {
            out.span.insert(&coords(&x.mul(&r, &b).mul(&r, &xi)));
        }
        Ok(out)
    }

    /// `{a x : x in L}` summed over `a` in `scalars`.
    pub fn scaled(&self, scalars: &[RingElem]) -> LieSubmodule {
        let mut out = Self::zero(self.ring());
        for b in self.span.basis() {
            out.span.insert_scaled(&b, scalars);
        }
        out
    }

    /// Whether `a L` is contained in `L`.
    pub fn is_stable_under(&self, a: RingElem) -> bool {
        let r = self.ring();
        self.span.basis().iter().all(|v| {
            let w: Vec<RingElem> = v.iter().map(|x| r.mul(a, *x)).collect();
            self.span.contains(&w)
        })
    }

    /// Projection to one coordinate (`0 = a`, `1 = b`, `2 = c`).
    fn projection(&self, k: usize) -> Span {
        let mut s = Span::new(self.ring(), 1);
        for v in self.span.basis() {
            s.insert(&[v[k]]);
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let r = self.ring();
        let basis: Vec<Vec<Vec<u64>>> = self.span.basis().iter().map(|v| v.iter().map(|x| r.coeffs(*x)).collect()).collect();
        serde_json::json!({ "cardinality": self.cardinality() as u64, "basis": basis })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decomposability {
    None,
    Decomposable,
    Strong,
}

/// The entry-wise pieces of a decomposable Lie algebra.
#[derive(Clone, Debug)]
pub struct LieDecomposition {
    pub kind: Decomposability,
    /// `I = {a : diag(a, -a) in L}`; present when decomposable.
    pub i: Option<Span>,
    pub b: Option<Span>,
    pub c: Option<Span>,
    /// The anti-diagonal part of `L`.
    pub nabla: Option<LieSubmodule>,
}

impl LieDecomposition {
    pub fn is_decomposable(&self) -> bool {
        self.kind != Decomposability::None
    }
}

/// Decides decomposability.  Both conditions are additive in the element,
/// so they are checked on generators.
pub fn decompose_lie(l: &LieSubmodule) -> LieDecomposition {
    let r = l.ring().clone();
    let z = r.zero();
    let gens = l.span.basis();
    let decomposable = gens.iter().all(|v| l.span.contains(&[v[0], z, z]) && l.span.contains(&[z, v[1], v[2]]));
    if !decomposable {
        return LieDecomposition { kind: Decomposability::None, i: None, b: None, c: None, nabla: None };
    }
    let strong = gens.iter().all(|v| l.span.contains(&[z, v[1], z]) && l.span.contains(&[z, z, v[2]]));
    let mut nabla = LieSubmodule::zero(&r);
    for v in &gens {
        nabla.span.insert(&[z, v[1], v[2]]);
    }
    LieDecomposition {
        kind: if strong { Decomposability::Strong } else { Decomposability::Decomposable },
        i: Some(l.projection(0)),
        b: Some(l.projection(1)),
        c: Some(l.projection(2)),
        nabla: Some(nabla),
    }
}

/// `{a in A : a L in L}`.
pub fn multiplier_ring(l: &LieSubmodule) -> Subring {
    let r = l.ring();
    let members: Vec<RingElem> = r.elements().filter(|a| l.is_stable_under(*a)).collect();
    Subring::from_elements(r, &members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{LocalRing, RingSpec};

    #[test]
    fn theta_examples() {
        let z9 = LocalRing::new(RingSpec::new(3, 2, 1)).unwrap();
        assert_eq!(theta(&z9, &Mat2::identity(&z9)), Mat2::zero(&z9));
        assert_eq!(theta(&z9, &Mat2::from_ints(&z9, [1, 1, 0, 1])), Mat2::from_ints(&z9, [0, 1, 0, 0]));
        let x = Mat2::from_ints(&z9, [2, 5, 3, 4]);
        let g = Mat2::from_ints(&z9, [1, 1, 1, 2]);
        let gi = g.inv(&z9).unwrap();
        let lhs = theta(&z9, &gi.mul(&z9, &x).mul(&z9, &g));
        let rhs = gi.mul(&z9, &theta(&z9, &x)).mul(&z9, &g);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn decomposability() {
        let f3 = LocalRing::new(RingSpec::new(3, 1, 1)).unwrap();
        let l = LieSubmodule::generated_by(&f3, &[Mat2::from_ints(&f3, [1, 1, 0, -1])]).unwrap();
        assert_eq!(l.cardinality(), 3);
        assert_eq!(decompose_lie(&l).kind, Decomposability::None);

        let z9 = LocalRing::new(RingSpec::new(3, 2, 1)).unwrap();
        let mut a = Span::new(&z9, 1);
        a.insert(&[z9.from_int(3)]);
        let l = LieSubmodule::sl2(&a);
        let d = decompose_lie(&l);
        assert_eq!(d.kind, Decomposability::Strong);
        for part in [d.i.unwrap(), d.b.unwrap(), d.c.unwrap()] {
            assert!(part.same_as(&a));
        }
    }

    #[test]
    fn multipliers_of_ideals() {
        let z27 = LocalRing::new(RingSpec::new(3, 3, 1)).unwrap();
        assert_eq!(multiplier_ring(&LieSubmodule::zero(&z27)).cardinality(), 27);
        let mut a = Span::new(&z27, 1);
        a.insert(&[z27.from_int(9)]);
        assert_eq!(multiplier_ring(&LieSubmodule::sl2(&a)).cardinality(), 27);
        // F_3 (0 1; 0 0) inside sl_2(F_9) only absorbs F_3
        let f9 = LocalRing::new(RingSpec::new(3, 1, 2)).unwrap();
        let l = LieSubmodule::generated_by(&f9, &[Mat2::from_ints(&f9, [0, 1, 0, 0])]).unwrap();
        assert_eq!(multiplier_ring(&l).cardinality(), 3);
    }
}
