use crate::ring::{LocalRing, RingAut, RingElem};

/// A 2x2 matrix `(a b; c d)` stored row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mat2(pub [RingElem; 4]);

impl Mat2 {
    pub fn new(a: RingElem, b: RingElem, c: RingElem, d: RingElem) -> Self {
        Mat2([a, b, c, d])
    }

    pub fn identity(r: &LocalRing) -> Self {
        Mat2([r.one(), r.zero(), r.zero(), r.one()])
    }

    pub fn zero(r: &LocalRing) -> Self {
        Mat2([r.zero(); 4])
    }

    pub fn scalar(r: &LocalRing, s: RingElem) -> Self {
        Mat2([s, r.zero(), r.zero(), s])
    }

    pub fn diag(r: &LocalRing, a: RingElem, d: RingElem) -> Self {
        Mat2([a, r.zero(), r.zero(), d])
    }

    pub fn from_ints(r: &LocalRing, v: [i64; 4]) -> Self {
        Mat2(v.map(|x| r.from_int(x)))
    }

    pub fn a(&self) -> RingElem {
        self.0[0]
    }
    pub fn b(&self) -> RingElem {
        self.0[1]
    }
    pub fn c(&self) -> RingElem {
        self.0[2]
    }
    pub fn d(&self) -> RingElem {
        self.0[3]
    }

    pub fn mul(&self, r: &LocalRing, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        Mat2([
            r.add(r.mul(a, e), r.mul(b, g)),
            r.add(r.mul(a, f), r.mul(b, h)),
            r.add(r.mul(c, e), r.mul(d, g)),
            r.add(r.mul(c, f), r.mul(d, h)),
        ])
    }

    pub fn add(&self, r: &LocalRing, o: &Mat2) -> Mat2 {
        Mat2([0, 1, 2, 3].map(|i| r.add(self.0[i], o.0[i])))
    }

    pub fn sub(&self, r: &LocalRing, o: &Mat2) -> Mat2 {
        Mat2([0, 1, 2, 3].map(|i| r.sub(self.0[i], o.0[i])))
    }

    pub fn scale(&self, r: &LocalRing, s: RingElem) -> Mat2 {
        Mat2(self.0.map(|x| r.mul(s, x)))
    }

    pub fn trace(&self, r: &LocalRing) -> RingElem {
        r.add(self.0[0], self.0[3])
    }

    pub fn det(&self, r: &LocalRing) -> RingElem {
        r.sub(r.mul(self.0[0], self.0[3]), r.mul(self.0[1], self.0[2]))
    }

    pub fn is_invertible(&self, r: &LocalRing) -> bool {
        r.is_unit(self.det(r))
    }

    pub fn inv(&self, r: &LocalRing) -> Option<Mat2> {
        let di = r.inv(self.det(r))?;
        let [a, b, c, d] = self.0;
        Some(Mat2([r.mul(d, di), r.neg(r.mul(b, di)), r.neg(r.mul(c, di)), r.mul(a, di)]))
    }

    /// Inverse of a determinant-one matrix, without a field inversion.
    pub fn inv_sl(&self, r: &LocalRing) -> Mat2 {
        let [a, b, c, d] = self.0;
        Mat2([d, r.neg(b), r.neg(c), a])
    }

    /// `x^{-1} self x`.
    pub fn conj_by(&self, r: &LocalRing, x: &Mat2) -> Option<Mat2> {
        Some(x.inv(r)?.mul(r, self).mul(r, x))
    }

    pub fn commutator(&self, r: &LocalRing, o: &Mat2) -> Option<Mat2> {
        Some(self.mul(r, o).mul(r, &self.inv(r)?).mul(r, &o.inv(r)?))
    }

    pub fn pow(&self, r: &LocalRing, mut k: u64) -> Mat2 {
        let mut base = *self;
        let mut acc = Mat2::identity(r);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(r, &base);
            }
            base = base.mul(r, &base);
            k >>= 1;
        }
        acc
    }

    pub fn is_scalar(&self, r: &LocalRing) -> bool {
        self.0[1] == r.zero() && self.0[2] == r.zero() && self.0[0] == self.0[3]
    }

    pub fn is_diagonal(&self, r: &LocalRing) -> bool {
        self.0[1] == r.zero() && self.0[2] == r.zero()
    }

    pub fn map(&self, f: impl Fn(RingElem) -> RingElem) -> Mat2 {
        Mat2(self.0.map(f))
    }

    pub fn apply_aut(&self, sigma: &RingAut) -> Mat2 {
        self.map(|x| sigma.apply(x))
    }

    /// Entrywise reduction to the residue field.
    pub fn residue(&self, r: &LocalRing) -> Mat2 {
        self.map(|x| r.residue(x))
    }

    /// Entries as integer coefficient vectors (row-major).
    pub fn to_coeffs(&self, r: &LocalRing) -> Vec<Vec<u64>> {
        self.0.iter().map(|x| r.coeffs(*x)).collect()
    }

    pub fn format(&self, r: &LocalRing) -> String {
        format!(
            "({} {}; {} {})",
            r.format_elem(self.0[0]),
            r.format_elem(self.0[1]),
            r.format_elem(self.0[2]),
            r.format_elem(self.0[3])
        )
    }
}

/// A 3x3 matrix, used for the adjoint representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat3(pub [[RingElem; 3]; 3]);

impl Mat3 {
    pub fn identity(r: &LocalRing) -> Self {
        let mut m = [[r.zero(); 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = r.one();
        }
        Mat3(m)
    }

    pub fn mul(&self, r: &LocalRing, o: &Mat3) -> Mat3 {
        let mut m = [[r.zero(); 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                let mut acc = r.zero();
                for k in 0..3 {
                    acc = r.add(acc, r.mul(self.0[i][k], o.0[k][j]));
                }
                *out = acc;
            }
        }
        Mat3(m)
    }

    pub fn trace(&self, r: &LocalRing) -> RingElem {
        r.add(r.add(self.0[0][0], self.0[1][1]), self.0[2][2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{LocalRing, RingSpec};

    #[test]
    fn inverse_and_det() {
        let r = LocalRing::new(RingSpec::new(3, 2, 1)).unwrap();
        let m = Mat2::from_ints(&r, [1, 3, 2, 4]);
        assert_eq!(m.det(&r), r.from_int(-2));
        let inv = m.inv(&r).unwrap();
        assert_eq!(m.mul(&r, &inv), Mat2::identity(&r));
        assert!(Mat2::from_ints(&r, [3, 0, 0, 1]).inv(&r).is_none());
    }

    #[test]
    fn commutator_of_commuting_is_identity() {
        let r = LocalRing::new(RingSpec::new(5, 1, 1)).unwrap();
        let a = Mat2::from_ints(&r, [2, 0, 0, 3]);
        let b = Mat2::from_ints(&r, [4, 0, 0, 1]);
        assert_eq!(a.commutator(&r, &b).unwrap(), Mat2::identity(&r));
    }
}
