use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use super::{Mat2, RepError};
use crate::ring::Ring;

/// Default bound on the order of an enumerated group.
pub const GROUP_CAP: usize = 1 << 22;

/// A finite subgroup of `GL_2(A)`, enumerated breadth-first from the identity.
pub struct GroupTable {
    ring: Ring,
    elements: Vec<Mat2>,
    index: FxHashMap<Mat2, u32>,
    generators: Vec<Mat2>,
    right_mul: Vec<Vec<u32>>,
    inverse: Vec<u32>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupTable(order {}, over {})", self.elements.len(), self.ring.spec())
    }
}

impl GroupTable {
    pub fn close(ring: &Ring, gens: &[Mat2]) -> Result<GroupTable, RepError> {
        Self::close_capped(ring, gens, GROUP_CAP)
    }

    pub fn close_capped(ring: &Ring, gens: &[Mat2], cap: usize) -> Result<GroupTable, RepError> {
        let r = ring.as_ref();
        for g in gens {
            if !g.is_invertible(r) {
                return Err(RepError::NotInvertible(g.format(r)));
            }
        }
        let generators: Vec<Mat2> = gens.to_vec();
        let id = Mat2::identity(r);
        let mut elements = vec![id];
        let mut index = FxHashMap::default();
        index.insert(id, 0u32);
        let mut right_mul: Vec<Vec<u32>> = vec![Vec::new(); generators.len()];
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head];
            for (gi, g) in generators.iter().enumerate() {
                let y = x.mul(r, g);
                let j = match index.get(&y) {
                    Some(j) => *j,
                    None => {
                        if elements.len() >= cap {
                            return Err(RepError::CapExceeded { what: "group order", cap: cap as u64 });
                        }
                        let j = elements.len() as u32;
                        elements.push(y);
                        index.insert(y, j);
                        j
                    }
                };
                right_mul[gi].push(j);
            }
            head += 1;
        }
        let inverse = elements
            .iter()
            .map(|x| index[&x.inv(r).expect("group elements are invertible")])
            .collect();
        Ok(GroupTable { ring: ring.clone(), elements, index, generators, right_mul, inverse })
    }

    /// Builds the group table of a set of matrices, failing unless the set is
    /// closed under multiplication.
    pub fn from_set(ring: &Ring, set: &[Mat2]) -> Result<GroupTable, RepError> {
        let members: FxHashMap<Mat2, ()> = set.iter().map(|m| (*m, ())).collect();
        let mut gens: Vec<Mat2> = Vec::new();
        let mut current = GroupTable::close(ring, &[])?;
        let mut sorted: Vec<Mat2> = members.keys().copied().collect();
        sorted.sort();
        for m in &sorted {
            if current.contains(m) {
                continue;
            }
            gens.push(*m);
            current = GroupTable::close_capped(ring, &gens, members.len().max(1))
                .map_err(|_| RepError::NotAGroup("set is not closed under multiplication".into()))?;
            if current.elements.iter().any(|x| !members.contains_key(x)) {
                return Err(RepError::NotAGroup("set is not closed under multiplication".into()));
            }
        }
        if current.len() != members.len() {
            return Err(RepError::NotAGroup("set is not closed under multiplication".into()));
        }
        Ok(current)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Mat2 {
        &self.elements[i as usize]
    }

    pub fn generators(&self) -> &[Mat2] {
        &self.generators
    }

    /// Indices of the generators.
    pub fn generator_indices(&self) -> Vec<u32> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn index_of(&self, m: &Mat2) -> Option<u32> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        self.index.contains_key(m)
    }

    /// `x * g_i` for the `i`-th generator.
    pub fn right_mul_gen(&self, x: u32, gen: usize) -> u32 {
        self.right_mul[gen][x as usize]
    }

    pub fn mul(&self, i: u32, j: u32) -> u32 {
        let m = self.elements[i as usize].mul(&self.ring, &self.elements[j as usize]);
        self.index[&m]
    }

    pub fn inv(&self, i: u32) -> u32 {
        self.inverse[i as usize]
    }

    pub fn commutator(&self, i: u32, j: u32) -> u32 {
        self.mul(self.mul(i, j), self.mul(self.inv(i), self.inv(j)))
    }

    pub fn order_of(&self, i: u32) -> u64 {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// Subgroup generated by the given elements, as a sorted index list.
    pub fn subgroup_closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.mul(x, *g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Normal closure of `seeds` inside the subgroup generated by `ambient`.
    pub fn normal_closure_in(&self, seeds: &[u32], ambient: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let mut gens: Vec<u32> = Vec::new();
        for s in seeds {
            if *s != 0 && !gens.contains(s) {
                gens.push(*s);
            }
        }
        let mut members = self.subgroup_closure(&gens);
        loop {
            let mut added = None;
            'scan: for h in &gens {
                for s in ambient {
                    let c = self.mul(self.mul(self.inv(*s), *h), *s);
                    if members.binary_search(&c).is_err() {
                        added = Some(c);
                        break 'scan;
                    }
                }
            }
            match added {
                Some(c) => {
                    gens.push(c);
                    members = self.subgroup_closure(&gens);
                }
                None => return (members, gens),
            }
        }
    }

    /// `[X, Y]` where `X` is generated by `xs` and `Y` is the normal closure
    /// of `ys` in the group generated by `xs`.
    pub fn commutator_subgroup(&self, xs: &[u32], ys: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let mut seeds = Vec::new();
        for x in xs {
            for y in ys {
                seeds.push(self.commutator(*x, *y));
            }
        }
        self.normal_closure_in(&seeds, xs)
    }

    /// The derived subgroup `[G, G]`.
    pub fn derived_subgroup(&self) -> Vec<u32> {
        let g = self.generator_indices();
        self.commutator_subgroup(&g, &g).0
    }

    /// Lower central series `G_1 = G`, `G_{k+1} = [G, G_k]`, up to `depth`.
    pub fn lower_central_series(&self, depth: usize) -> Vec<Vec<u32>> {
        let g = self.generator_indices();
        let mut out = vec![(0..self.len() as u32).collect::<Vec<u32>>()];
        let mut gens_k = g.clone();
        for _ in 1..depth {
            let (members, gens) = self.commutator_subgroup(&g, &gens_k);
            out.push(members);
            gens_k = gens;
        }
        out
    }

    /// Homomorphisms to `Z/2`, as membership masks of their kernels, for the
    /// nontrivial ones (the index-2 subgroups).
    pub fn index2_subgroups(&self) -> Vec<Vec<bool>> {
        let k = self.generators.len();
        let mut out = Vec::new();
        for mask in 1u64..(1u64 << k) {
            if let Some(parity) = self.parity_hom(mask) {
                out.push(parity.into_iter().map(|b| !b).collect());
            }
        }
        out
    }

    fn parity_hom(&self, mask: u64) -> Option<Vec<bool>> {
        let mut val: Vec<Option<bool>> = vec![None; self.len()];
        val[0] = Some(false);
        for x in 0..self.len() {
            let vx = val[x].expect("breadth-first order reaches x from a parent");
            for gi in 0..self.generators.len() {
                let y = self.right_mul[gi][x] as usize;
                let vy = vx ^ (mask >> gi & 1 == 1);
                match val[y] {
                    None => val[y] = Some(vy),
                    Some(v) if v != vy => return None,
                    _ => {}
                }
            }
        }
        Some(val.into_iter().map(|v| v.unwrap()).collect())
    }

    /// The subgroup given by an index list, as its own table.
    pub fn subgroup_table(&self, members: &[u32]) -> Result<GroupTable, RepError> {
        let mats: Vec<Mat2> = members.iter().map(|i| self.elements[*i as usize]).collect();
        GroupTable::from_set(&self.ring, &mats)
    }
}
