use super::{Mat2, Mat3, MatrixRep};
use crate::ring::LocalRing;

/// The action `x -> g x g^{-1}` on trace-zero matrices, in the basis
/// `diag(1,-1), E12, E21`.  `g` must be invertible.
pub fn ad0_matrix(r: &LocalRing, g: &Mat2) -> Mat3 {
    let gi = g.inv(r).expect("ad0 of a non-invertible matrix");
    let basis = [
        Mat2::diag(r, r.one(), r.from_int(-1)),
        Mat2::new(r.zero(), r.one(), r.zero(), r.zero()),
        Mat2::new(r.zero(), r.zero(), r.one(), r.zero()),
    ];
    let mut m = [[r.zero(); 3]; 3];
    for (j, e) in basis.iter().enumerate() {
        let y = g.mul(r, e).mul(r, &gi);
        let coords = [y.a(), y.b(), y.c()];
        for i in 0..3 {
            m[i][j] = coords[i];
        }
    }
    Mat3(m)
}

/// `ad^0 rho`, as a table of 3x3 matrices indexed like the group.
pub fn ad0(rho: &MatrixRep) -> Vec<Mat3> {
    rho.values().iter().map(|g| ad0_matrix(rho.ring(), g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{RingSpec, LocalRing};

    #[test]
    fn scalar_gives_identity() {
        let f5 = LocalRing::new(RingSpec::new(5, 1, 1)).unwrap();
        assert_eq!(ad0_matrix(&f5, &Mat2::scalar(&f5, f5.from_int(3))), Mat3::identity(&f5));
    }

    #[test]
    fn diag_example() {
        let f5 = LocalRing::new(RingSpec::new(5, 1, 1)).unwrap();
        let g = Mat2::from_ints(&f5, [1, 0, 0, 2]);
        assert_eq!(ad0_matrix(&f5, &g).trace(&f5), f5.one());
    }

    #[test]
    fn is_multiplicative() {
        let f5 = LocalRing::new(RingSpec::new(5, 1, 1)).unwrap();
        let a = Mat2::from_ints(&f5, [1, 2, 3, 2]);
        let b = Mat2::from_ints(&f5, [0, 1, 4, 2]);
        assert_eq!(
            ad0_matrix(&f5, &a.mul(&f5, &b)),
            ad0_matrix(&f5, &a).mul(&f5, &ad0_matrix(&f5, &b))
        );
    }
}
