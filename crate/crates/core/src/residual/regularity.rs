use crate::error::Result;
use crate::rep::MatrixRep;
use crate::ring::RingElem;

use super::{compute_e, projective_class, residual_twists, EigenSolver, ProjectiveTag, Subfield};

/// An element whose eigenvalue ratio lies in `E^x` and is not `+-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularWitness {
    /// Index of the group element.
    pub element: u32,
    /// Eigenvalues, as elements of the quadratic extension of `F`.
    pub lambda: RingElem,
    pub mu: RingElem,
    /// `lambda / mu`.
    pub ratio: RingElem,
}

/// Which clause of the goodness condition holds first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoodClause {
    /// `p = 1 mod 3`.
    PrimeCongruence,
    StronglyRegular,
    /// A regular element whose square lies in `Pi_0`.
    SquareInPi0,
}

impl GoodClause {
    pub fn number(self) -> u8 {
        match self {
            GoodClause::PrimeCongruence => 1,
            GoodClause::StronglyRegular => 2,
            GoodClause::SquareInPi0 => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub e: Subfield,
    pub regular: bool,
    pub witness: Option<RegularWitness>,
    pub strongly_regular: bool,
    pub strong_witness: Option<RegularWitness>,
    /// Only evaluated for octahedral projective image: `Some(None)` means
    /// not good.
    pub good: Option<Option<GoodClause>>,
}

/// Eigenvalue data of each group element, with the regularity flags.
pub(crate) struct EigenTable {
    pub solver: EigenSolver,
    pub eigen: Vec<(RingElem, RingElem)>,
}

impl EigenTable {
    pub fn new(rho: &MatrixRep) -> Result<EigenTable> {
        let solver = EigenSolver::new(rho.ring())?;
        let eigen = rho.values().iter().map(|m| solver.eigenvalues(m)).collect();
        Ok(EigenTable { solver, eigen })
    }

    pub fn ratio(&self, x: u32) -> RingElem {
        let k = self.solver.extension();
        let (l, m) = self.eigen[x as usize];
        k.div(l, m)
    }

    pub fn is_regular(&self, x: u32, e: &Subfield) -> bool {
        let k = self.solver.extension();
        let r = self.ratio(x);
        k.mul(r, r) != k.one() && self.solver.in_subfield(r, e)
    }

    pub fn is_strongly_regular(&self, x: u32, e: &Subfield) -> bool {
        let (l, m) = self.eigen[x as usize];
        self.is_regular(x, e) && self.solver.in_subfield(l, e) && self.solver.in_subfield(m, e)
    }

    pub fn witness(&self, x: u32) -> RegularWitness {
        let (lambda, mu) = self.eigen[x as usize];
        RegularWitness { element: x, lambda, mu, ratio: self.ratio(x) }
    }
}

/// Regularity, strong regularity and (for octahedral image) goodness.
pub fn regularity_status(rho: &MatrixRep) -> Result<RegularityReport> {
    let e = compute_e(&rho.pseudo())?;
    let table = EigenTable::new(rho)?;
    let n = rho.group().len() as u32;
    let witness = (0..n).find(|x| table.is_regular(*x, &e)).map(|x| table.witness(x));
    let strong_witness = (0..n).find(|x| table.is_strongly_regular(*x, &e)).map(|x| table.witness(x));
    let regular = witness.is_some();
    let strongly_regular = strong_witness.is_some();
    let class = projective_class(rho)?;
    let good = if class.tag == ProjectiveTag::S4 && regular {
        let clause = if rho.ring().p() % 3 == 1 {
            Some(GoodClause::PrimeCongruence)
        } else if strongly_regular {
            Some(GoodClause::StronglyRegular)
        } else {
            let tw = residual_twists(rho)?;
            let mask = tw.pi0_mask();
            let g = rho.group();
            (0..n)
                .any(|x| table.is_regular(x, &e) && mask[g.mul(x, x) as usize])
                .then_some(GoodClause::SquareInPi0)
        };
        Some(clause)
    } else if class.tag == ProjectiveTag::S4 {
        Some(None)
    } else {
        None
    };
    Ok(RegularityReport { e, regular, witness, strongly_regular, strong_witness, good })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{characters, GroupTable, Mat2};
    use crate::ring::{LocalRing, Ring, RingSpec};
    use std::sync::Arc;

    fn sl2(r: &Ring) -> MatrixRep {
        let g = GroupTable::close(r, &[Mat2::from_ints(r, [1, 1, 0, 1]), Mat2::from_ints(r, [1, 0, 1, 1])]).unwrap();
        MatrixRep::identity(Arc::new(g))
    }

    #[test]
    fn scalars_are_not_regular() {
        let f7 = LocalRing::new(RingSpec::new(7, 1, 1)).unwrap();
        let g = GroupTable::close(&f7, &[Mat2::scalar(&f7, f7.from_int(3))]).unwrap();
        assert!(!regularity_status(&MatrixRep::identity(Arc::new(g))).unwrap().regular);
    }

    #[test]
    fn diagonal_witness() {
        let f7 = LocalRing::new(RingSpec::new(7, 1, 1)).unwrap();
        let g = GroupTable::close(&f7, &[Mat2::from_ints(&f7, [2, 0, 0, 1])]).unwrap();
        let rep = regularity_status(&MatrixRep::identity(Arc::new(g))).unwrap();
        assert!(rep.regular && rep.strongly_regular);
        let w = rep.witness.unwrap();
        let k = LocalRing::new(RingSpec::new(7, 1, 2)).unwrap();
        let r = w.ratio;
        assert!(r == k.from_int(2) || r == k.from_int(4));
    }

    #[test]
    fn tetrahedral_regularity_depends_on_p_mod_3() {
        // the binary tetrahedral group: SL2(F3) lifted to characteristic 7 and 5
        // via the standard generators i, (1+i+j+k)/2 in SL2
        for (p, expect) in [(7u32, true), (5, false)] {
            let f = LocalRing::new(RingSpec::new(p, 1, 1)).unwrap();
            let rep = tetrahedral(&f);
            assert_eq!(projective_class(&rep).unwrap().tag, ProjectiveTag::A4);
            assert_eq!(regularity_status(&rep).unwrap().regular, expect, "p = {p}");
        }
    }

    /// A copy of SL2(F3) inside SL2(F_p) for p = 5, 7.
    pub(crate) fn tetrahedral(f: &Ring) -> MatrixRep {
        // i = (0 -1; 1 0); w = order-3 element (a b; c d) with trace -1
        // and w i w^{-1} = j, found by search
        let i = Mat2::from_ints(f, [0, -1, 1, 0]);
        let cands: Vec<Mat2> = f
            .elements()
            .flat_map(|a| f.elements().map(move |b| (a, b)))
            .flat_map(|(a, b)| f.elements().flat_map(move |c| f.elements().map(move |d| Mat2::new(a, b, c, d))))
            .filter(|m| m.det(f) == f.one() && m.trace(f) == f.from_int(-1))
            .collect();
        for w in cands {
            let g = GroupTable::close(f, &[i, w]).unwrap();
            if g.len() == 24 {
                return MatrixRep::identity(Arc::new(g));
            }
        }
        unreachable!("SL2(F3) embeds in SL2(F_p)")
    }

    #[test]
    fn regularity_is_twist_invariant() {
        let f7 = LocalRing::new(RingSpec::new(7, 1, 1)).unwrap();
        let rho = sl2(&f7);
        let base = regularity_status(&rho).unwrap();
        for chi in characters(rho.group(), &f7).unwrap() {
            assert_eq!(regularity_status(&rho.twist(&chi)).unwrap().regular, base.regular);
        }
    }
}
