use std::sync::Arc;

use super::{Character, GroupTable, Mat2, MatrixRep, RepError};
use crate::ring::{LocalRing, Ring};

/// An index-2 subgroup `H` of a group `G`, with its own group table.
#[derive(Clone, Debug)]
pub struct Index2Subgroup {
    parent: Arc<GroupTable>,
    mask: Vec<bool>,
    table: Arc<GroupTable>,
    to_parent: Vec<u32>,
    from_parent: Vec<Option<u32>>,
}

impl Index2Subgroup {
    pub fn new(parent: Arc<GroupTable>, mask: Vec<bool>) -> Result<Self, RepError> {
        let members: Vec<u32> = (0..parent.len() as u32).filter(|i| mask[*i as usize]).collect();
        if members.len() * 2 != parent.len() {
            return Err(RepError::Precondition("H does not have index 2".into()));
        }
        let table = Arc::new(parent.subgroup_table(&members)?);
        let to_parent: Vec<u32> =
            table.elements().iter().map(|m| parent.index_of(m).expect("subgroup element")).collect();
        let mut from_parent = vec![None; parent.len()];
        for (i, p) in to_parent.iter().enumerate() {
            from_parent[*p as usize] = Some(i as u32);
        }
        Ok(Index2Subgroup { parent, mask, table, to_parent, from_parent })
    }

    /// All index-2 subgroups of `parent`.
    pub fn all(parent: &Arc<GroupTable>) -> Result<Vec<Self>, RepError> {
        parent.index2_subgroups().into_iter().map(|m| Self::new(parent.clone(), m)).collect()
    }

    pub fn parent(&self) -> &Arc<GroupTable> {
        &self.parent
    }

    pub fn table(&self) -> &Arc<GroupTable> {
        &self.table
    }

    pub fn contains(&self, g: u32) -> bool {
        self.mask[g as usize]
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn to_parent(&self, h: u32) -> u32 {
        self.to_parent[h as usize]
    }

    pub fn from_parent(&self, g: u32) -> Option<u32> {
        self.from_parent[g as usize]
    }

    /// The first element of `G` outside `H`.
    pub fn coset_representative(&self) -> u32 {
        (0..self.parent.len() as u32).find(|g| !self.mask[*g as usize]).expect("H is proper")
    }

    /// The quadratic character `eta_H` with kernel `H`, valued in `r`.
    pub fn eta(&self, r: &LocalRing) -> Character {
        Character::from_values(self.mask.iter().map(|m| if *m { r.one() } else { r.from_int(-1) }).collect())
    }

    /// `chi^c(h) = chi(c^{-1} h c)` for a character of `H`.
    pub fn conjugate_character(&self, chi: &Character, c: u32) -> Character {
        let g = &self.parent;
        let ci = g.inv(c);
        Character::from_values(
            (0..self.table.len() as u32)
                .map(|h| {
                    let x = g.mul(g.mul(ci, self.to_parent(h)), c);
                    chi.value(self.from_parent(x).expect("H is normal"))
                })
                .collect(),
        )
    }

    /// Restriction of a character of `G` to `H`.
    pub fn restrict(&self, chi: &Character) -> Character {
        Character::from_values(self.to_parent.iter().map(|g| chi.value(*g)).collect())
    }

    /// Restriction of a representation of `G` to `H`.
    pub fn restrict_rep(&self, rho: &MatrixRep) -> MatrixRep {
        let values = self.to_parent.iter().map(|g| *rho.value(*g)).collect();
        MatrixRep::from_values(self.table.clone(), rho.ring(), values)
    }
}

/// `Ind_H^G chi`, realised as `g -> diag(chi(g), chi^c(g))` on `H` and
/// `g -> (0, chi(gc); chi^c(gc^{-1}), 0)` off `H`.
pub fn induce_index2(h: &Index2Subgroup, chi: &Character, c: u32, ring: &Ring) -> Result<MatrixRep, RepError> {
    if h.contains(c) {
        return Err(RepError::Precondition("coset representative lies in H".into()));
    }
    let g = h.parent();
    let r = ring.as_ref();
    let chic = h.conjugate_character(chi, c);
    let ci = g.inv(c);
    let values = (0..g.len() as u32)
        .map(|x| {
            if let Some(hx) = h.from_parent(x) {
                Mat2::diag(r, chi.value(hx), chic.value(hx))
            } else {
                let gc = h.from_parent(g.mul(x, c)).expect("gc in H");
                let gci = h.from_parent(g.mul(x, ci)).expect("gc^-1 in H");
                Mat2::new(r.zero(), chi.value(gc), chic.value(gci), r.zero())
            }
        })
        .collect();
    Ok(MatrixRep::from_values(g.clone(), ring, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{characters, classify_pseudorep};
    use crate::ring::{LocalRing, RingSpec};

    fn s3_over_f7() -> (Ring, Arc<GroupTable>) {
        let f7 = LocalRing::new(RingSpec::new(7, 1, 1)).unwrap();
        let g = GroupTable::close(&f7, &[Mat2::from_ints(&f7, [2, 0, 0, 4]), Mat2::from_ints(&f7, [0, 1, 1, 0])]).unwrap();
        (f7, Arc::new(g))
    }

    #[test]
    fn induced_is_a_homomorphism_with_expected_trace() {
        let (f7, g) = s3_over_f7();
        assert_eq!(g.len(), 6);
        let hs = Index2Subgroup::all(&g).unwrap();
        assert_eq!(hs.len(), 1);
        let h = &hs[0];
        let c = h.coset_representative();
        for chi in characters(h.table(), &f7).unwrap() {
            let rho = induce_index2(h, &chi, c, &f7).unwrap();
            for x in 0..g.len() as u32 {
                for y in 0..g.len() as u32 {
                    assert_eq!(rho.value(g.mul(x, y)), &rho.value(x).mul(&f7, rho.value(y)));
                }
            }
            let chic = h.conjugate_character(&chi, c);
            for x in 0..g.len() as u32 {
                let t = rho.value(x).trace(&f7);
                match h.from_parent(x) {
                    Some(hx) => assert_eq!(t, f7.add(chi.value(hx), chic.value(hx))),
                    None => assert_eq!(t, f7.zero()),
                }
            }
            let class = classify_pseudorep(&rho.pseudo()).unwrap();
            if chi == chic {
                assert!(class.reducible);
                // chi extends to G
                let ext = characters(&g, &f7).unwrap().into_iter().any(|e| h.restrict(&e) == chi);
                assert!(ext);
            } else {
                assert!(!class.reducible);
                assert!(class.dihedral);
                assert!(class.dihedral_witnesses.contains(&h.eta(&f7)));
            }
        }
    }

    #[test]
    fn coset_representative_in_h_is_rejected() {
        let (f7, g) = s3_over_f7();
        let h = &Index2Subgroup::all(&g).unwrap()[0];
        let chi = Character::trivial(h.table().len(), &f7);
        assert!(induce_index2(h, &chi, 0, &f7).is_err());
    }
}
