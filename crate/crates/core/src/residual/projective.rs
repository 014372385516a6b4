use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rep::{GroupTable, MatrixRep};

/// Isomorphism type of a finite subgroup of `PGL_2(F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectiveTag {
    Cyclic(usize),
    /// Dihedral of the given order (`(Z/2)^2` is `Dihedral(4)`).
    Dihedral(usize),
    A4,
    S4,
    A5,
    Psl2(u64),
    Pgl2(u64),
    /// A `p`-group extended by a cyclic group, i.e. a reducible image.
    Borel(usize),
}

impl fmt::Display for ProjectiveTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectiveTag::Cyclic(m) => write!(f, "cyclic({m})"),
            ProjectiveTag::Dihedral(m) => write!(f, "dihedral({m})"),
            ProjectiveTag::A4 => write!(f, "A4"),
            ProjectiveTag::S4 => write!(f, "S4"),
            ProjectiveTag::A5 => write!(f, "A5"),
            ProjectiveTag::Psl2(q) => write!(f, "PSL2({q})"),
            ProjectiveTag::Pgl2(q) => write!(f, "PGL2({q})"),
            ProjectiveTag::Borel(m) => write!(f, "borel({m})"),
        }
    }
}

/// The projective image of a representation over a finite field.
#[derive(Clone, Debug)]
pub struct ProjectiveClass {
    pub tag: ProjectiveTag,
    /// Order of the projective image.
    pub order: usize,
    /// Exceptional isomorphism name (`PSL2(3)`, `PGL2(3)`, `PSL2(5)`).
    pub alias: Option<String>,
    /// Projective element orders with multiplicities.
    pub element_orders: BTreeMap<u64, usize>,
    /// For the dihedral tag: an element of the image generating the
    /// index-2 cyclic subgroup modulo scalars.
    pub witness: Option<u32>,
    /// Index list of the scalar subgroup of the image.
    pub scalars: Vec<u32>,
    /// Projective order of each element of the image.
    pub proj_orders: Vec<u64>,
}

impl ProjectiveClass {
    pub fn is_exceptional(&self) -> bool {
        matches!(self.tag, ProjectiveTag::A4 | ProjectiveTag::S4 | ProjectiveTag::A5)
    }

    pub fn is_large(&self) -> bool {
        matches!(self.tag, ProjectiveTag::Psl2(_) | ProjectiveTag::Pgl2(_))
    }

    pub fn is_dihedral(&self) -> bool {
        matches!(self.tag, ProjectiveTag::Dihedral(_))
    }

    /// Dihedral of order at least 6.
    pub fn is_nonabelian_dihedral(&self) -> bool {
        matches!(self.tag, ProjectiveTag::Dihedral(m) if m > 4)
    }

    /// Largest projective element order.
    pub fn max_element_order(&self) -> u64 {
        *self.element_orders.keys().last().unwrap_or(&1)
    }

    pub fn name(&self) -> String {
        self.tag.to_string()
    }
}

fn signature(pairs: &[(u64, usize)]) -> BTreeMap<u64, usize> {
    pairs.iter().copied().collect()
}

/// Classifies `P rho(G)` through its order and element-order statistics.
pub fn projective_class(rho: &MatrixRep) -> Result<ProjectiveClass> {
    let image = rho.image()?;
    classify_image(&image)
}

/// Classifies the image of a matrix group in `PGL_2`.
pub fn classify_image(g: &GroupTable) -> Result<ProjectiveClass> {
    let r = g.ring().as_ref();
    if !r.is_field() {
        return Err(Error::Precondition("projective classification needs a field".into()));
    }
    let n = g.len();
    let scalars: Vec<u32> = (0..n as u32).filter(|x| g.element(*x).is_scalar(r)).collect();
    let is_scalar: Vec<bool> = (0..n).map(|x| g.element(x as u32).is_scalar(r)).collect();
    let proj_orders: Vec<u64> = (0..n as u32)
        .map(|x| {
            let mut y = x;
            let mut k = 1;
            while !is_scalar[y as usize] {
                y = g.mul(y, x);
                k += 1;
            }
            k
        })
        .collect();
    let z = scalars.len();
    let m = n / z;
    let mut element_orders = BTreeMap::new();
    for k in &proj_orders {
        *element_orders.entry(*k).or_insert(0usize) += 1;
    }
    for v in element_orders.values_mut() {
        *v /= z;
    }
    let p = r.p();
    let alias_for = |tag: &ProjectiveTag| match (tag, p) {
        (ProjectiveTag::A4, 3) => Some("PSL2(3)".to_string()),
        (ProjectiveTag::S4, 3) => Some("PGL2(3)".to_string()),
        (ProjectiveTag::A5, 5) => Some("PSL2(5)".to_string()),
        _ => None,
    };
    let build = |tag: ProjectiveTag, witness: Option<u32>| {
        let alias = alias_for(&tag);
        ProjectiveClass {
            tag,
            order: m,
            alias,
            element_orders: element_orders.clone(),
            witness,
            scalars: scalars.clone(),
            proj_orders: proj_orders.clone(),
        }
    };

    if element_orders.contains_key(&(m as u64)) {
        let w = (0..n as u32).find(|x| proj_orders[*x as usize] == m as u64);
        return Ok(build(ProjectiveTag::Cyclic(m), w));
    }
    if m.is_multiple_of(2) && m >= 4 {
        let half = (m / 2) as u64;
        for c in (0..n as u32).filter(|x| proj_orders[*x as usize] == half) {
            let mut in_cyclic = vec![false; n];
            let mut pw = 0u32;
            for _ in 0..half {
                for s in &scalars {
                    in_cyclic[g.mul(pw, *s) as usize] = true;
                }
                pw = g.mul(pw, c);
            }
            if (0..n).all(|x| in_cyclic[x] || proj_orders[x] == 2) {
                return Ok(build(ProjectiveTag::Dihedral(m), Some(c)));
            }
        }
    }
    let exceptional = [
        (12, ProjectiveTag::A4, signature(&[(1, 1), (2, 3), (3, 8)])),
        (24, ProjectiveTag::S4, signature(&[(1, 1), (2, 9), (3, 8), (4, 6)])),
        (60, ProjectiveTag::A5, signature(&[(1, 1), (2, 15), (3, 20), (5, 24)])),
    ];
    for (order, tag, sig) in exceptional {
        if m == order && element_orders == sig {
            return Ok(build(tag, None));
        }
    }
    // normal Sylow p-subgroup: the reducible (Borel) case
    let p_part = {
        let mut k = 1usize;
        while m.is_multiple_of(k * p as usize) {
            k *= p as usize;
        }
        k
    };
    if p_part > 1 {
        let p_elements: usize = element_orders
            .iter()
            .filter(|(k, _)| {
                let mut v = **k;
                while v % p == 0 {
                    v /= p;
                }
                v == 1
            })
            .map(|(_, c)| *c)
            .sum();
        if p_elements == p_part {
            return Ok(build(ProjectiveTag::Borel(m), None));
        }
    }
    let mut q = p;
    while q <= (m as u64) {
        let psl = q * (q * q - 1) / 2;
        if psl == m as u64 {
            return Ok(build(ProjectiveTag::Psl2(q), None));
        }
        if 2 * psl == m as u64 {
            return Ok(build(ProjectiveTag::Pgl2(q), None));
        }
        q *= p;
    }
    Err(Error::Unclassifiable(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::Mat2;
    use crate::ring::{LocalRing, Ring, RingSpec};
    use std::sync::Arc;

    fn class_of(r: &Ring, gens: &[Mat2]) -> ProjectiveClass {
        let g = Arc::new(GroupTable::close(r, gens).unwrap());
        projective_class(&MatrixRep::identity(g)).unwrap()
    }

    #[test]
    fn standard_examples() {
        let f3 = LocalRing::new(RingSpec::new(3, 1, 1)).unwrap();
        let sl2 = [Mat2::from_ints(&f3, [1, 1, 0, 1]), Mat2::from_ints(&f3, [1, 0, 1, 1])];
        let c = class_of(&f3, &sl2);
        assert_eq!(c.tag, ProjectiveTag::A4);
        assert_eq!(c.alias.as_deref(), Some("PSL2(3)"));

        let f5 = LocalRing::new(RingSpec::new(5, 1, 1)).unwrap();
        let gl2 = [Mat2::from_ints(&f5, [2, 0, 0, 1]), Mat2::from_ints(&f5, [1, 1, 0, 1]), Mat2::from_ints(&f5, [1, 0, 1, 1])];
        let c = class_of(&f5, &gl2);
        assert_eq!(c.order, 120);
        assert_eq!(c.tag, ProjectiveTag::Pgl2(5));

        let f7 = LocalRing::new(RingSpec::new(7, 1, 1)).unwrap();
        let c = class_of(&f7, &[Mat2::from_ints(&f7, [3, 0, 0, 5]), Mat2::scalar(&f7, f7.from_int(2))]);
        assert_eq!(c.tag, ProjectiveTag::Cyclic(3));
        let c = class_of(&f7, &[Mat2::from_ints(&f7, [3, 0, 0, 1]), Mat2::from_ints(&f7, [0, 1, 1, 0])]);
        assert_eq!(c.tag, ProjectiveTag::Dihedral(12));
        let c = class_of(&f7, &[Mat2::from_ints(&f7, [-1, 0, 0, 1]), Mat2::from_ints(&f7, [0, 1, 1, 0])]);
        assert_eq!(c.tag, ProjectiveTag::Dihedral(4));
        let c = class_of(&f7, &[Mat2::from_ints(&f7, [1, 1, 0, 1]), Mat2::from_ints(&f7, [3, 0, 0, 1])]);
        assert_eq!(c.tag, ProjectiveTag::Borel(42));
        let c = class_of(&f7, &[]);
        assert_eq!(c.tag, ProjectiveTag::Cyclic(1));
    }

    #[test]
    fn sl2_f5_is_icosahedral() {
        let f5 = LocalRing::new(RingSpec::new(5, 1, 1)).unwrap();
        let c = class_of(&f5, &[Mat2::from_ints(&f5, [1, 1, 0, 1]), Mat2::from_ints(&f5, [1, 0, 1, 1])]);
        assert_eq!(c.tag, ProjectiveTag::A5);
        assert!(c.is_exceptional());
        let f7 = LocalRing::new(RingSpec::new(7, 1, 1)).unwrap();
        let c = class_of(&f7, &[Mat2::from_ints(&f7, [1, 1, 0, 1]), Mat2::from_ints(&f7, [1, 0, 1, 1])]);
        assert_eq!(c.tag, ProjectiveTag::Psl2(7));
        assert!(c.is_large());
    }
}
