use crate::error::{Error, Result};
use crate::rep::{classify_pseudorep, common_eigenline_count, Character, Index2Subgroup, MatrixRep};
use crate::ring::{quadratic_extension, Ring};

/// A realisation `rho = Ind_H chi`.
#[derive(Clone, Debug)]
pub struct DihedralStructure {
    pub subgroup: Index2Subgroup,
    /// Constituent of `rho|_H`, valued in the quadratic extension of `F`
    /// and indexed by the subgroup's own table.
    pub chi: Character,
    /// The other constituent `chi^c`.
    pub chi_c: Character,
    /// Ring in which the characters take values.
    pub field: Ring,
}

/// All index-2 subgroups `H` with `rho|_H` reducible over the quadratic
/// extension, each with its constituents.
pub fn dihedral_structures(rho: &MatrixRep) -> Result<Vec<DihedralStructure>> {
    if common_eigenline_count(rho)? != 0 {
        return Err(Error::Precondition("representation is not absolutely irreducible".into()));
    }
    let emb = quadratic_extension(rho.ring())?;
    let k2 = emb.dst().clone();
    let lifted = rho.embed(&emb);
    let mut out = Vec::new();
    for h in Index2Subgroup::all(rho.group())? {
        let restricted = h.restrict_rep(&lifted);
        let class = classify_pseudorep(&restricted.pseudo())?;
        if let Some((a, b)) = class.constituents {
            out.push(DihedralStructure { subgroup: h, chi: a, chi_c: b, field: k2.clone() });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{GroupTable, Mat2};
    use crate::ring::{LocalRing, RingSpec};
    use std::sync::Arc;

    fn rep(r: &Ring, gens: &[Mat2]) -> MatrixRep {
        MatrixRep::identity(Arc::new(GroupTable::close(r, gens).unwrap()))
    }

    #[test]
    fn counts() {
        let f7 = LocalRing::new(RingSpec::new(7, 1, 1)).unwrap();
        let w = Mat2::from_ints(&f7, [0, 1, 1, 0]);
        // chi^2 != (chi^c)^2
        let generic = rep(&f7, &[Mat2::from_ints(&f7, [3, 0, 0, 1]), w]);
        assert_eq!(dihedral_structures(&generic).unwrap().len(), 1);
        // projective image (Z/2)^2: chi^2 = (chi^c)^2
        let klein = rep(&f7, &[Mat2::from_ints(&f7, [-1, 0, 0, 1]), w]);
        assert_eq!(dihedral_structures(&klein).unwrap().len(), 3);
        // SL2(F7) is not dihedral
        let big = rep(&f7, &[Mat2::from_ints(&f7, [1, 1, 0, 1]), Mat2::from_ints(&f7, [1, 0, 1, 1])]);
        assert!(dihedral_structures(&big).unwrap().is_empty());
        // reducible input is rejected
        let red = rep(&f7, &[Mat2::from_ints(&f7, [3, 0, 0, 1])]);
        assert!(dihedral_structures(&red).is_err());
    }
}
