use super::{GroupTable, RepError};
use crate::ring::{LocalRing, RingAut, RingElem};

/// Bound on the number of generator-value assignments tried while
/// enumerating characters.
pub const CHARACTER_SEARCH_CAP: u64 = 1 << 20;

/// A homomorphism from a group to the units of a ring, stored as a value
/// table indexed like the group's elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    values: Vec<RingElem>,
}

impl Character {
    pub fn from_values(values: Vec<RingElem>) -> Self {
        Character { values }
    }

    pub fn trivial(len: usize, r: &LocalRing) -> Self {
        Character { values: vec![r.one(); len] }
    }

    pub fn value(&self, i: u32) -> RingElem {
        self.values[i as usize]
    }

    pub fn values(&self) -> &[RingElem] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_trivial(&self, r: &LocalRing) -> bool {
        self.values.iter().all(|v| *v == r.one())
    }

    pub fn mul(&self, r: &LocalRing, o: &Character) -> Character {
        Character { values: self.values.iter().zip(&o.values).map(|(a, b)| r.mul(*a, *b)).collect() }
    }

    pub fn inv(&self, r: &LocalRing) -> Character {
        Character { values: self.values.iter().map(|a| r.inv(*a).expect("character values are units")).collect() }
    }

    pub fn pow(&self, r: &LocalRing, k: u64) -> Character {
        Character { values: self.values.iter().map(|a| r.pow(*a, k)).collect() }
    }

    pub fn map(&self, f: impl Fn(RingElem) -> RingElem) -> Character {
        Character { values: self.values.iter().map(|a| f(*a)).collect() }
    }

    /// `sigma(chi)`.
    pub fn apply_aut(&self, sigma: &RingAut) -> Character {
        self.map(|a| sigma.apply(a))
    }

    pub fn kernel(&self, r: &LocalRing) -> Vec<u32> {
        (0..self.values.len() as u32).filter(|i| self.values[*i as usize] == r.one()).collect()
    }

    pub fn order(&self, r: &LocalRing) -> u64 {
        let mut acc = 1u64;
        for v in &self.values {
            let o = r.order(*v).expect("character values are units");
            acc = lcm(acc, o);
        }
        acc
    }

    /// Whether the table is multiplicative on `group`.
    pub fn is_homomorphism(&self, group: &GroupTable, r: &LocalRing) -> bool {
        if self.values[0] != r.one() {
            return false;
        }
        (0..group.len() as u32).all(|x| {
            (0..group.generators().len()).all(|gi| {
                let y = group.right_mul_gen(x, gi);
                let g = group.generator_indices()[gi];
                self.value(y) == r.mul(self.value(x), self.value(g))
            })
        })
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// The quotient `G / [G, G]` with its induced Cayley graph.
#[derive(Clone, Debug)]
pub struct Abelianization {
    derived: Vec<u32>,
    labels: Vec<u32>,
    size: usize,
    qmul: Vec<Vec<u32>>,
    gen_orders: Vec<u64>,
}

impl Abelianization {
    pub fn new(group: &GroupTable) -> Self {
        let derived = group.derived_subgroup();
        let mut labels = vec![u32::MAX; group.len()];
        let mut size = 0u32;
        for x in 0..group.len() as u32 {
            if labels[x as usize] != u32::MAX {
                continue;
            }
            for d in &derived {
                labels[group.mul(x, *d) as usize] = size;
            }
            size += 1;
        }
        let ngens = group.generators().len();
        let mut reps = vec![u32::MAX; size as usize];
        for x in 0..group.len() as u32 {
            let l = labels[x as usize] as usize;
            if reps[l] == u32::MAX {
                reps[l] = x;
            }
        }
        let qmul: Vec<Vec<u32>> = (0..ngens)
            .map(|gi| reps.iter().map(|x| labels[group.right_mul_gen(*x, gi) as usize]).collect())
            .collect();
        let gen_orders = (0..ngens)
            .map(|gi| {
                let mut k = 1u64;
                let mut l = qmul[gi][0];
                while l != 0 {
                    l = qmul[gi][l as usize];
                    k += 1;
                }
                k
            })
            .collect();
        Abelianization { derived, labels, size: size as usize, qmul, gen_orders }
    }

    pub fn derived(&self) -> &[u32] {
        &self.derived
    }

    pub fn order(&self) -> usize {
        self.size
    }

    pub fn label(&self, i: u32) -> u32 {
        self.labels[i as usize]
    }

    /// Orders of the generators' images in the quotient.
    pub fn generator_orders(&self) -> &[u64] {
        &self.gen_orders
    }

    /// Extends generator values to a character of the quotient, if
    /// consistent.
    fn extend(&self, r: &LocalRing, gen_vals: &[RingElem]) -> Option<Vec<RingElem>> {
        let mut vals: Vec<Option<RingElem>> = vec![None; self.size];
        vals[0] = Some(r.one());
        let mut stack = vec![0u32];
        while let Some(l) = stack.pop() {
            let v = vals[l as usize].unwrap();
            for (gi, gv) in gen_vals.iter().enumerate() {
                let m = self.qmul[gi][l as usize];
                let w = r.mul(v, *gv);
                match vals[m as usize] {
                    None => {
                        vals[m as usize] = Some(w);
                        stack.push(m);
                    }
                    Some(old) if old != w => return None,
                    _ => {}
                }
            }
        }
        Some(vals.into_iter().map(|v| v.unwrap()).collect())
    }
}

/// Units `u` with `u^k = 1`, in element order.
pub(crate) fn units_of_order_dividing(r: &LocalRing, k: u64) -> Vec<RingElem> {
    if !k.is_multiple_of(r.p()) {
        return r.roots_of_unity(k).expect("p does not divide k");
    }
    r.elements().filter(|u| r.is_unit(*u) && r.pow(*u, k) == r.one()).collect()
}

/// All characters `G -> A^x`, trivial first.
pub fn characters(group: &GroupTable, target: &LocalRing) -> Result<Vec<Character>, RepError> {
    let ab = Abelianization::new(group);
    characters_of(group, &ab, target)
}

pub(crate) fn characters_of(
    group: &GroupTable,
    ab: &Abelianization,
    target: &LocalRing,
) -> Result<Vec<Character>, RepError> {
    let cands: Vec<Vec<RingElem>> =
        ab.gen_orders.iter().map(|o| units_of_order_dividing(target, *o)).collect();
    let total: u64 = cands.iter().map(|c| c.len() as u64).product();
    if total > CHARACTER_SEARCH_CAP {
        return Err(RepError::CapExceeded { what: "character assignments", cap: CHARACTER_SEARCH_CAP });
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; cands.len()];
    loop {
        let gen_vals: Vec<RingElem> = choice.iter().enumerate().map(|(i, c)| cands[i][*c]).collect();
        if let Some(qvals) = ab.extend(target, &gen_vals) {
            let values = (0..group.len() as u32).map(|x| qvals[ab.label(x) as usize]).collect();
            out.push(Character { values });
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                out.sort_by_key(|c: &Character| !c.is_trivial(target));
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < cands[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// A character `chi` such that `d * chi^2` has 2-power order.
///
/// Writes `d = d0 * d1 * d2` with `d0` valued in `1 + m`, `d1` of odd order
/// prime to `p` and `d2` of 2-power order, and returns
/// `chi = (d1^{(a+1)/2} * sqrt(d0))^{-1}` where `a` is the order of `d1`.
pub fn two_power_determinant_twist(r: &LocalRing, d: &Character) -> Result<Character, RepError> {
    let q1 = r.residue_size() - 1;
    let two_part = 1u64 << q1.trailing_zeros();
    let odd_part = q1 / two_part;
    // exponent projecting the Teichmuller part onto its odd-order component
    let e1 = {
        // e1 = 1 mod odd_part, 0 mod two_part
        let inv = crate::ring::modinv(two_part % odd_part.max(1), odd_part.max(1)).unwrap_or(0);
        (two_part * inv) % q1.max(1)
    };
    let mut d0 = Vec::with_capacity(d.len());
    let mut d1 = Vec::with_capacity(d.len());
    for v in d.values() {
        let w = r.teichmuller(r.residue(*v));
        d0.push(r.mul(*v, r.inv(w).ok_or_else(|| RepError::Precondition("determinant must be unit valued".into()))?));
        d1.push(if odd_part == 1 { r.one() } else { r.pow(w, e1) });
    }
    let a = d1.iter().map(|x| r.order(*x).unwrap()).fold(1, lcm);
    debug_assert!(a % 2 == 1);
    let mut values = Vec::with_capacity(d.len());
    for (x0, x1) in d0.iter().zip(&d1) {
        let s = r.sqrt_unit(*x0)?;
        let c = r.mul(r.pow(*x1, a.div_ceil(2)), s);
        values.push(r.inv(c).unwrap());
    }
    Ok(Character { values })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::Mat2;
    use crate::ring::{LocalRing, RingSpec};

    #[test]
    fn characters_of_cyclic_group() {
        let f7 = LocalRing::new(RingSpec::new(7, 1, 1)).unwrap();
        let g = GroupTable::close(&f7, &[Mat2::from_ints(&f7, [3, 0, 0, 1])]).unwrap();
        assert_eq!(g.len(), 6);
        let chars = characters(&g, &f7).unwrap();
        assert_eq!(chars.len(), 6);
        assert!(chars[0].is_trivial(&f7));
        for c in &chars {
            assert!(c.is_homomorphism(&g, &f7));
        }
    }

    #[test]
    fn characters_brute_force_sl2_f3() {
        // SL2(F3) has abelianization Z/3; into F7 there are three characters
        let f3 = LocalRing::new(RingSpec::new(3, 1, 1)).unwrap();
        let g = GroupTable::close(&f3, &[Mat2::from_ints(&f3, [1, 1, 0, 1]), Mat2::from_ints(&f3, [1, 0, 1, 1])]).unwrap();
        let f7 = LocalRing::new(RingSpec::new(7, 1, 1)).unwrap();
        let chars = characters(&g, &f7).unwrap();
        assert_eq!(chars.len(), 3);
        // brute force: every assignment of values to the two generators
        let mut count = 0;
        for a in f7.units() {
            for b in f7.units() {
                let mut vals = vec![None; g.len()];
                vals[0] = Some(f7.one());
                let mut ok = true;
                for x in 0..g.len() as u32 {
                    let vx = vals[x as usize].unwrap();
                    for (gi, gv) in [a, b].iter().enumerate() {
                        let y = g.right_mul_gen(x, gi) as usize;
                        let w = f7.mul(vx, *gv);
                        match vals[y] {
                            None => vals[y] = Some(w),
                            Some(v) if v != w => ok = false,
                            _ => {}
                        }
                    }
                }
                if ok {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 3);
    }

    #[test]
    fn detorder2_examples() {
        let z9 = LocalRing::new(RingSpec::new(3, 2, 1)).unwrap();
        let g = GroupTable::close(&z9, &[Mat2::from_ints(&z9, [4, 0, 0, 1])]).unwrap();
        let d = Character::from_values(g.elements().iter().map(|m| m.det(&z9)).collect());
        assert_eq!(d.order(&z9), 3);
        let chi = two_power_determinant_twist(&z9, &d).unwrap();
        assert_eq!(chi, d.pow(&z9, 2).inv(&z9));
        assert_eq!(d.mul(&z9, &chi.pow(&z9, 2)).order(&z9), 1);

        let trivial = Character::trivial(g.len(), &z9);
        assert!(two_power_determinant_twist(&z9, &trivial).unwrap().is_trivial(&z9));

        let f7 = LocalRing::new(RingSpec::new(7, 1, 1)).unwrap();
        let g = GroupTable::close(&f7, &[Mat2::from_ints(&f7, [3, 0, 0, 1])]).unwrap();
        let d = Character::from_values(g.elements().iter().map(|m| m.det(&f7)).collect());
        let chi = two_power_determinant_twist(&f7, &d).unwrap();
        assert!(d.mul(&f7, &chi.pow(&f7, 2)).order(&f7).is_power_of_two());
    }
}
