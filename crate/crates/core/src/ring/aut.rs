use std::fmt;
use std::sync::Arc;

use super::{Ring, RingElem, RingError, AUT_CANDIDATE_CAP};

const PERMUTATION_CACHE_LIMIT: u32 = 1 << 16;

/// A ring automorphism, determined by the images of `x` and `u`.
#[derive(Clone)]
pub struct RingAut {
    ring: Ring,
    frob: usize,
    x_img: RingElem,
    u_img: Option<RingElem>,
    basis_img: Vec<RingElem>,
    table: Option<Arc<Vec<u32>>>,
}

impl fmt::Debug for RingAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingAut(frob^{}", self.frob)?;
        if let Some(u) = self.u_img {
            write!(f, ", u -> {}", self.ring.format_elem(u))?;
        }
        write!(f, ")")
    }
}

impl PartialEq for RingAut {
    fn eq(&self, other: &Self) -> bool {
        self.frob == other.frob && self.u_img == other.u_img
    }
}
impl Eq for RingAut {}

impl std::hash::Hash for RingAut {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.frob.hash(state);
        self.u_img.hash(state);
    }
}

fn eval_poly_in(ring: &Ring, coeffs: &[RingElem], at: RingElem) -> RingElem {
    coeffs.iter().rev().fold(ring.zero(), |acc, c| ring.add(ring.mul(acc, at), *c))
}

/// Determinant mod p of a square matrix over Z/p^n (given row-major).
fn det_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let k = m.len();
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x %= p;
        }
    }
    let mut det = 1u64;
    for c in 0..k {
        let Some(piv) = (c..k).find(|r| m[*r][c] != 0) else { return 0 };
        if piv != c {
            m.swap(piv, c);
            det = (p - det) % p;
        }
        det = det * m[c][c] % p;
        let inv = super::modinv(m[c][c], p).unwrap();
        for r in c + 1..k {
            let factor = m[r][c] * inv % p;
            if factor == 0 {
                continue;
            }
            for j in c..k {
                m[r][j] = (m[r][j] + p * p - factor * m[c][j] % p) % p;
            }
        }
    }
    det
}

impl RingAut {
    pub fn identity(ring: &Ring) -> RingAut {
        Self::from_images_unchecked(ring, 0, ring.x(), ring.u())
    }

    /// The automorphism acting as `Frob^k` on the unramified part and fixing
    /// `u`.  Fails when that assignment is not an automorphism.
    pub fn frobenius(ring: &Ring, k: usize) -> Result<RingAut, RingError> {
        let x_img = ring.pow(ring.x(), ring.p().pow((k % ring.f()) as u32));
        Self::from_images(ring, x_img, ring.u())
    }

    fn from_images_unchecked(ring: &Ring, frob: usize, x_img: RingElem, u_img: Option<RingElem>) -> RingAut {
        let f = ring.f();
        let e = ring.e();
        let mut basis_img = Vec::with_capacity(ring.dim());
        let u = u_img.unwrap_or(ring.one());
        for j in 0..e {
            for i in 0..f {
                let xi = if f == 1 { ring.one() } else { ring.pow(x_img, i as u64) };
                let uj = if e == 1 { ring.one() } else { ring.pow(u, j as u64) };
                basis_img.push(ring.mul(xi, uj));
            }
        }
        let mut aut = RingAut { ring: ring.clone(), frob, x_img, u_img, basis_img, table: None };
        if ring.size() <= PERMUTATION_CACHE_LIMIT {
            let table: Vec<u32> = ring.elements().map(|a| aut.apply_slow(a).0).collect();
            aut.table = Some(Arc::new(table));
        }
        aut
    }

    /// Validates and builds the ring endomorphism `x -> x_img, u -> u_img`.
    pub fn from_images(ring: &Ring, x_img: RingElem, u_img: Option<RingElem>) -> Result<RingAut, RingError> {
        let f = ring.f();
        let fcoeffs: Vec<RingElem> =
            ring.unramified_modulus().iter().map(|c| ring.from_int(*c as i64)).collect();
        let frob = if f == 1 {
            if x_img != ring.x() {
                return Err(RingError::NotAutomorphism("Z/p^n is rigid".into()));
            }
            0
        } else {
            if eval_poly_in(ring, &fcoeffs, x_img) != ring.zero() {
                return Err(RingError::NotAutomorphism("image of x is not a root of its modulus".into()));
            }
            let x = ring.x();
            (0..f)
                .find(|k| ring.pow(x, ring.p().pow(*k as u32)) == x_img)
                .ok_or_else(|| RingError::NotAutomorphism("image of x is not a Galois conjugate".into()))?
        };
        match (ring.u(), u_img) {
            (None, None) => {}
            (Some(_), Some(v)) => {
                let g: Vec<RingElem> =
                    ring.extension_modulus().iter().map(|c| ring.from_int(*c as i64)).collect();
                if eval_poly_in(ring, &g, v) != ring.zero() {
                    return Err(RingError::NotAutomorphism(format!(
                        "{} is not a root of the extension polynomial",
                        ring.format_elem(v)
                    )));
                }
            }
            _ => return Err(RingError::NotAutomorphism("generator images do not match the ring".into())),
        }
        let aut = Self::from_images_unchecked(ring, frob, x_img, u_img);
        let matrix: Vec<Vec<u64>> = aut.basis_img.iter().map(|b| ring.coeffs(*b)).collect();
        if det_mod_p(matrix, ring.p()) == 0 {
            return Err(RingError::NotAutomorphism("map is not bijective".into()));
        }
        Ok(aut)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Exponent `k` such that the induced map on the residue field is `Frob^k`.
    pub fn frobenius_exponent(&self) -> usize {
        self.frob
    }

    pub fn x_image(&self) -> RingElem {
        self.x_img
    }

    pub fn u_image(&self) -> Option<RingElem> {
        self.u_img
    }

    fn apply_slow(&self, a: RingElem) -> RingElem {
        let r = &self.ring;
        let c = r.coeffs(a);
        let mut acc = r.zero();
        for (k, ck) in c.iter().enumerate() {
            if *ck != 0 {
                acc = r.add(acc, r.scale(self.basis_img[k], *ck as i64));
            }
        }
        acc
    }

    pub fn apply(&self, a: RingElem) -> RingElem {
        match &self.table {
            Some(t) => RingElem(t[a.index()]),
            None => self.apply_slow(a),
        }
    }

    /// The induced automorphism of the residue field, as a Frobenius power
    /// applied to a residue element.
    pub fn apply_residue(&self, a: RingElem) -> RingElem {
        let k = self.ring.residue_field();
        k.pow(a, self.ring.p().pow(self.frob as u32))
    }

    pub fn compose(&self, other: &RingAut) -> RingAut {
        // (self . other)(x) = self(other(x))
        let x_img = self.apply(other.x_img);
        let u_img = other.u_img.map(|u| self.apply(u));
        let frob = (self.frob + other.frob) % self.ring.f();
        Self::from_images_unchecked(&self.ring, frob, x_img, u_img)
    }

    pub fn is_identity(&self) -> bool {
        self.frob == 0 && self.u_img == self.ring.u()
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = cur.compose(self);
            k += 1;
        }
        k
    }

    pub fn inverse(&self) -> RingAut {
        let mut cur = self.clone();
        let mut prev = RingAut::identity(&self.ring);
        while !cur.is_identity() {
            prev = cur.clone();
            cur = cur.compose(self);
        }
        prev
    }

    /// Whether the map fixes `a`.
    pub fn fixes(&self, a: RingElem) -> bool {
        self.apply(a) == a
    }
}

/// Every automorphism of the ring, identity first.
pub fn ring_automorphisms(ring: &Ring) -> Result<Vec<RingAut>, RingError> {
    let f = ring.f();
    let x = ring.x();
    let xs: Vec<RingElem> = (0..f).map(|k| ring.pow(x, ring.p().pow(k as u32))).collect();
    let u_candidates: Vec<Option<RingElem>> = match ring.u() {
        None => vec![None],
        Some(_) => {
            let a = ring.extension_residue();
            let k = ring.residue_field();
            let target = k.from_int(a as i64);
            ring.elements().filter(|v| ring.residue(*v) == target).map(Some).collect()
        }
    };
    let total = (xs.len() * u_candidates.len()) as u64;
    if total > AUT_CANDIDATE_CAP {
        return Err(RingError::CapExceeded { what: "automorphism candidates", size: total, cap: AUT_CANDIDATE_CAP });
    }
    let mut out = Vec::new();
    for u in &u_candidates {
        for xi in &xs {
            if let Ok(a) = RingAut::from_images(ring, *xi, *u) {
                out.push(a);
            }
        }
    }
    out.sort_by_key(|a| (!a.is_identity(), a.frob, a.u_img));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{LocalRing, RingSpec};

    #[test]
    fn automorphism_counts() {
        let z9 = LocalRing::new(RingSpec::new(3, 2, 1)).unwrap();
        assert_eq!(ring_automorphisms(&z9).unwrap().len(), 1);
        let f9 = LocalRing::new(RingSpec::new(3, 1, 2)).unwrap();
        let auts = ring_automorphisms(&f9).unwrap();
        assert_eq!(auts.len(), 2);
        let x = f9.x();
        assert_eq!(auts[1].apply(x), f9.pow(x, 3));
    }

    #[test]
    fn cube_root_extension() {
        let r = LocalRing::new(RingSpec::new(3, 2, 1).with_ext("u", &[-3, 0, 0, 1])).unwrap();
        let u = r.u().unwrap();
        let four_u = r.scale(u, 4);
        let auts = ring_automorphisms(&r).unwrap();
        assert!(auts.iter().any(|a| a.u_image() == Some(four_u)));
        assert!(RingAut::from_images(&r, r.x(), Some(r.neg(u))).is_err());
        for a in &auts {
            for b in r.elements().step_by(37) {
                for c in r.elements().step_by(41) {
                    assert_eq!(a.apply(r.mul(b, c)), r.mul(a.apply(b), a.apply(c)));
                    assert_eq!(a.apply(r.add(b, c)), r.add(a.apply(b), a.apply(c)));
                }
            }
        }
    }

    #[test]
    fn exhaustive_oracle_on_f9() {
        let f9 = LocalRing::new(RingSpec::new(3, 1, 2)).unwrap();
        // any additive and multiplicative bijection is determined by the image
        // of x; test every candidate image directly
        let mut count = 0;
        for img in f9.elements() {
            let ok = f9.elements().all(|a| {
                let c = f9.coeffs(a);
                let phi = f9.add(f9.from_int(c[0] as i64), f9.scale(img, c[1] as i64));
                f9.elements().all(|b| {
                    let cb = f9.coeffs(b);
                    let phib = f9.add(f9.from_int(cb[0] as i64), f9.scale(img, cb[1] as i64));
                    let ab = f9.mul(a, b);
                    let cab = f9.coeffs(ab);
                    let phiab = f9.add(f9.from_int(cab[0] as i64), f9.scale(img, cab[1] as i64));
                    phiab == f9.mul(phi, phib)
                })
            });
            if ok && f9.coeffs(img)[1] != 0 {
                count += 1;
            }
        }
        assert_eq!(count, ring_automorphisms(&f9).unwrap().len());
    }

    #[test]
    fn inverse_and_order() {
        let r = LocalRing::new(RingSpec::new(3, 1, 2).with_ext("t", &[0, 0, 1])).unwrap();
        let auts = ring_automorphisms(&r).unwrap();
        for a in &auts {
            assert!(a.compose(&a.inverse()).is_identity());
            let o = a.order();
            let mut c = RingAut::identity(&r);
            for _ in 0..o {
                c = c.compose(a);
            }
            assert!(c.is_identity());
        }
    }
}
