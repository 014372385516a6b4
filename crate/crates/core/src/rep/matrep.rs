use std::sync::Arc;

use super::{Character, GroupTable, Mat2, PseudoRep, RepError};
use crate::ring::{FieldEmbedding, Ring, RingAut};

/// A homomorphism from a finite matrix group to `GL_2` of a ring, stored as
/// a value table indexed like the source group.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    group: Arc<GroupTable>,
    ring: Ring,
    values: Vec<Mat2>,
}

impl MatrixRep {
    /// The tautological representation of a matrix group.
    pub fn identity(group: Arc<GroupTable>) -> MatrixRep {
        let values = group.elements().to_vec();
        let ring = group.ring().clone();
        MatrixRep { group, ring, values }
    }

    /// Extends generator images to a homomorphism, checking every edge of
    /// the Cayley graph.
    pub fn from_generator_images(group: Arc<GroupTable>, ring: &Ring, images: &[Mat2]) -> Result<MatrixRep, RepError> {
        let ngens = group.generators().len();
        if images.len() != ngens {
            return Err(RepError::NotHomomorphism(format!("expected {ngens} images, got {}", images.len())));
        }
        let r = ring.as_ref();
        let mut values: Vec<Option<Mat2>> = vec![None; group.len()];
        values[0] = Some(Mat2::identity(r));
        for x in 0..group.len() as u32 {
            let vx = values[x as usize].expect("breadth-first order");
            for (gi, img) in images.iter().enumerate() {
                let y = group.right_mul_gen(x, gi);
                let v = vx.mul(r, img);
                match values[y as usize] {
                    None => values[y as usize] = Some(v),
                    Some(w) if w != v => {
                        return Err(RepError::NotHomomorphism(format!("relation violated at element {y}")))
                    }
                    _ => {}
                }
            }
        }
        Ok(MatrixRep { group, ring: ring.clone(), values: values.into_iter().map(|v| v.unwrap()).collect() })
    }

    pub fn from_values(group: Arc<GroupTable>, ring: &Ring, values: Vec<Mat2>) -> MatrixRep {
        MatrixRep { group, ring: ring.clone(), values }
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self, i: u32) -> &Mat2 {
        &self.values[i as usize]
    }

    pub fn values(&self) -> &[Mat2] {
        &self.values
    }

    /// `(tr rho, det rho)`.
    pub fn pseudo(&self) -> PseudoRep {
        let r = self.ring.as_ref();
        PseudoRep::new(
            self.group.clone(),
            self.ring.clone(),
            self.values.iter().map(|m| m.trace(r)).collect(),
            self.values.iter().map(|m| m.det(r)).collect(),
        )
        .expect("tables have the group's length")
    }

    pub fn det_character(&self) -> Character {
        Character::from_values(self.values.iter().map(|m| m.det(&self.ring)).collect())
    }

    /// The image `rho(G)` as a group.
    pub fn image(&self) -> Result<GroupTable, RepError> {
        let gens: Vec<Mat2> = self.group.generator_indices().iter().map(|i| self.values[*i as usize]).collect();
        GroupTable::close(&self.ring, &gens)
    }

    /// `chi (x) rho`.
    pub fn twist(&self, chi: &Character) -> MatrixRep {
        let r = self.ring.as_ref();
        let values = self.values.iter().zip(chi.values()).map(|(m, c)| m.scale(r, *c)).collect();
        MatrixRep { group: self.group.clone(), ring: self.ring.clone(), values }
    }

    /// `x^{-1} rho x`.
    pub fn conjugate(&self, x: &Mat2) -> Result<MatrixRep, RepError> {
        let r = self.ring.as_ref();
        let xi = x.inv(r).ok_or_else(|| RepError::NotInvertible(x.format(r)))?;
        let values = self.values.iter().map(|m| xi.mul(r, m).mul(r, x)).collect();
        Ok(MatrixRep { group: self.group.clone(), ring: self.ring.clone(), values })
    }

    /// Reduction modulo the maximal ideal.
    pub fn residual(&self) -> MatrixRep {
        let r = self.ring.as_ref();
        let k = r.residue_field().clone();
        let values = self.values.iter().map(|m| m.residue(r)).collect();
        MatrixRep { group: self.group.clone(), ring: k, values }
    }

    /// Entrywise image under a field embedding.
    pub fn embed(&self, e: &FieldEmbedding) -> MatrixRep {
        let values = self.values.iter().map(|m| m.map(|x| e.apply(x))).collect();
        MatrixRep { group: self.group.clone(), ring: e.dst().clone(), values }
    }

    pub fn apply_aut(&self, sigma: &RingAut) -> MatrixRep {
        let values = self.values.iter().map(|m| m.apply_aut(sigma)).collect();
        MatrixRep { group: self.group.clone(), ring: self.ring.clone(), values }
    }

    /// Restriction to a subgroup given by its element indices; the result is
    /// a representation of the subgroup's own table.
    pub fn restrict(&self, members: &[u32]) -> Result<MatrixRep, RepError> {
        let sub = Arc::new(self.group.subgroup_table(members)?);
        let values = sub
            .elements()
            .iter()
            .map(|m| self.values[self.group.index_of(m).expect("subgroup element") as usize])
            .collect();
        Ok(MatrixRep { group: sub, ring: self.ring.clone(), values })
    }
}
