use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{witt_basis, Ring, RingElem, Span};

/// Bound on the number of ideals enumerated for a subring.
pub const IDEAL_CAP: usize = 1 << 12;

/// Scalars over which a subring or span is generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    /// `Z/p^n`.
    Prime,
    /// `W(F_{p^d})` for a subfield of the residue field.
    Witt(usize),
    /// `W(F)` for the full residue field.
    WittFull,
}

/// `Z/p^n`-basis of `W(F_{p^d})` inside `A`: powers of the Teichmuller lift
/// of a primitive element.
pub fn witt_subfield_basis(ring: &Ring, d: usize) -> Result<Vec<RingElem>> {
    if d == 0 || !ring.f().is_multiple_of(d) {
        return Err(Error::Precondition(format!("F_(p^{d}) is not a subfield of the residue field")));
    }
    let k = ring.residue_field();
    let omega = ring.teichmuller(k.subfield_generator(d));
    Ok((0..d).map(|i| ring.pow(omega, i as u64)).collect())
}

impl Base {
    pub fn scalars(self, ring: &Ring) -> Result<Vec<RingElem>> {
        match self {
            Base::Prime => Ok(vec![ring.one()]),
            Base::Witt(d) => witt_subfield_basis(ring, d),
            Base::WittFull => Ok(witt_basis(ring)),
        }
    }
}

/// The `base`-module generated by `gens` (no unit adjoined).
pub fn module_span(ring: &Ring, gens: &[RingElem], base: Base) -> Result<Span> {
    let scalars = base.scalars(ring)?;
    let mut s = Span::new(ring, 1);
    for g in gens {
        s.insert_scaled(&[*g], &scalars);
    }
    Ok(s)
}

/// `W S` for a span `S`.
pub fn extend_scalars(span: &Span, base: Base) -> Result<Span> {
    let gens: Vec<RingElem> = span.basis().iter().map(|v| v[0]).collect();
    module_span(span.ring(), &gens, base)
}

/// The additive group generated by products `a b`, `a` in `x`, `b` in `y`.
pub fn span_product(x: &Span, y: &Span) -> Span {
    let r = x.ring();
    let mut out = Span::new(r, 1);
    let ys = y.basis();
    for a in x.basis() {
        for b in &ys {
            out.insert(&[r.mul(a[0], b[0])]);
        }
    }
    out
}

/// A subring of a finite local ring, stored as a `Z/p^n`-span.
#[derive(Clone, Debug)]
pub struct Subring {
    span: Span,
    gens: Vec<RingElem>,
}

impl Subring {
    /// The span of `members`, which the caller guarantees is a subring.
    pub fn from_elements(ring: &Ring, members: &[RingElem]) -> Subring {
        let mut span = Span::new(ring, 1);
        for m in members {
            span.insert(&[*m]);
        }
        Subring { span, gens: members.to_vec() }
    }

    pub fn whole(ring: &Ring) -> Subring {
        let gens = crate::ring::monomial_basis(ring);
        generated_subring(ring, &gens, Base::Prime).expect("prime base never fails")
    }

    pub fn ring(&self) -> &Ring {
        self.span.ring()
    }

    pub fn span(&self) -> &Span {
        &self.span
    }

    pub fn generators(&self) -> &[RingElem] {
        &self.gens
    }

    pub fn basis(&self) -> Vec<RingElem> {
        self.span.basis().iter().map(|v| v[0]).collect()
    }

    pub fn elements(&self) -> Vec<RingElem> {
        let mut out: Vec<RingElem> = self.span.elements().iter().map(|v| v[0]).collect();
        out.sort();
        out
    }

    pub fn contains(&self, a: RingElem) -> bool {
        self.span.contains(&[a])
    }

    pub fn cardinality(&self) -> u128 {
        self.span.cardinality()
    }

    pub fn same_as(&self, other: &Subring) -> bool {
        self.span.same_as(&other.span)
    }

    pub fn is_subset_of(&self, other: &Subring) -> bool {
        self.span.is_subspan_of(&other.span)
    }

    /// Whether the span contains 1 and is closed under products.
    pub fn is_ring(&self) -> bool {
        let r = self.ring();
        let b = self.basis();
        self.contains(r.one()) && b.iter().all(|x| b.iter().all(|y| self.contains(r.mul(*x, *y))))
    }

    /// `S cap m`, the maximal ideal of the subring.
    pub fn maximal_ideal(&self) -> Span {
        let r = self.ring();
        let mut s = Span::new(r, 1);
        for a in self.elements() {
            if r.in_max_ideal(a) {
                s.insert(&[a]);
            }
        }
        s
    }

    /// The ideal of the subring generated by `gens`.
    pub fn ideal(&self, gens: &[RingElem]) -> Span {
        let r = self.ring();
        let mut s = Span::new(r, 1);
        let b = self.basis();
        for g in gens {
            for x in &b {
                s.insert(&[r.mul(*g, *x)]);
            }
        }
        s
    }

    /// Whether `a` is an ideal of the subring.
    pub fn is_ideal(&self, a: &Span) -> bool {
        a.is_subspan_of(&self.span) && span_product(&self.span, a).is_subspan_of(a)
    }

    /// All ideals: principal ones first, then closed under sums.  Sorted by
    /// decreasing cardinality.
    pub fn ideals(&self) -> Result<Vec<Span>> {
        let mut out: Vec<Span> = Vec::new();
        let push = |out: &mut Vec<Span>, s: Span| -> Result<bool> {
            if out.iter().any(|t| t.same_as(&s)) {
                return Ok(false);
            }
            if out.len() >= IDEAL_CAP {
                return Err(Error::CapExceeded { what: "ideal count", cap: IDEAL_CAP as u64 });
            }
            out.push(s);
            Ok(true)
        };
        for a in self.elements() {
            push(&mut out, self.ideal(&[a]))?;
        }
        let mut frontier = 0;
        loop {
            let n = out.len();
            let mut grew = false;
            for i in 0..n {
                for j in frontier.max(i + 1)..n {
                    let s = out[i].sum(&out[j]);
                    grew |= push(&mut out, s)?;
                }
            }
            if !grew {
                break;
            }
            frontier = n;
        }
        out.sort_by(|a, b| b.log_card().cmp(&a.log_card()));
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let r = self.ring();
        json!({
            "cardinality": self.cardinality() as u64,
            "basis": self.basis().iter().map(|a| r.coeffs(*a)).collect::<Vec<_>>(),
        })
    }
}

/// The smallest subring over `base` containing `gens`.
pub fn generated_subring(ring: &Ring, gens: &[RingElem], base: Base) -> Result<Subring> {
    let mut span = Span::new(ring, 1);
    for s in base.scalars(ring)? {
        span.insert(&[s]);
    }
    span.insert(&[ring.one()]);
    for g in gens {
        span.insert(&[*g]);
    }
    loop {
        let b: Vec<RingElem> = span.basis().iter().map(|v| v[0]).collect();
        let mut grew = false;
        for (i, x) in b.iter().enumerate() {
            for y in &b[i..] {
                grew |= span.insert(&[ring.mul(*x, *y)]);
            }
        }
        if !grew {
            break;
        }
    }
    Ok(Subring { span, gens: gens.to_vec() })
}

/// Span of a list of ring elements as a JSON coefficient list.
pub fn span_to_json(s: &Span) -> Value {
    let r = s.ring();
    json!(s.basis().iter().map(|v| r.coeffs(v[0])).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{LocalRing, RingSpec};

    #[test]
    fn prime_subring_and_whole() {
        let r = LocalRing::new(RingSpec::new(3, 2, 2)).unwrap();
        let s = generated_subring(&r, &[], Base::Prime).unwrap();
        assert_eq!(s.cardinality(), 9);
        assert!(s.is_ring());
        assert_eq!(Subring::whole(&r).cardinality(), 81);
        assert_eq!(generated_subring(&r, &[], Base::WittFull).unwrap().cardinality(), 81);
        assert_eq!(generated_subring(&r, &[], Base::Witt(1)).unwrap().cardinality(), 9);
    }

    #[test]
    fn generated_by_u() {
        let r = LocalRing::new(RingSpec::new(3, 2, 1).with_ext("u", &[-3, 0, 0, 1])).unwrap();
        let u = r.u().unwrap();
        let s = generated_subring(&r, &[r.mul(u, u)], Base::Prime).unwrap();
        // Z/9 + Z/9 u^2 + Z/9 u^4 with u^4 = 3u and u^6 = 9 = 0: closes to
        // Z/9 + Z/9 u^2 + 3Z/9 u, of order 9 * 9 * 3
        assert!(s.is_ring());
        assert_eq!(s.cardinality(), 243);
    }

    #[test]
    fn ideals_of_z27() {
        let r = LocalRing::new(RingSpec::new(3, 3, 1)).unwrap();
        let s = Subring::whole(&r);
        let ids = s.ideals().unwrap();
        let cards: Vec<u128> = ids.iter().map(|i| i.cardinality()).collect();
        assert_eq!(cards, vec![27, 9, 3, 1]);
        assert!(ids.iter().all(|i| s.is_ideal(i)));
        assert_eq!(s.maximal_ideal().cardinality(), 9);
    }
}
