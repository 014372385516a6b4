use super::module::monomial_basis;
use super::{Ring, RingAut, RingElem, RingError, Span};

/// Decomposition of `A` into eigenspaces of a finite abelian group of
/// automorphisms.
#[derive(Clone, Debug)]
pub struct Grading {
    ring: Ring,
    group: Vec<RingAut>,
    inverses: Vec<usize>,
    characters: Vec<Vec<RingElem>>,
    components: Vec<Span>,
    inv_order: RingElem,
}

fn index_of(group: &[RingAut], a: &RingAut) -> Option<usize> {
    group.iter().position(|b| b == a)
}

impl Grading {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn group(&self) -> &[RingAut] {
        &self.group
    }

    /// Character values, indexed like `group()`.
    pub fn characters(&self) -> &[Vec<RingElem>] {
        &self.characters
    }

    pub fn components(&self) -> &[Span] {
        &self.components
    }

    /// `e_phi(a) = (1/#X) sum_sigma phi(sigma) sigma^{-1}(a)`.
    pub fn project(&self, phi: usize, a: RingElem) -> RingElem {
        let r = &self.ring;
        let mut acc = r.zero();
        for (i, _) in self.group.iter().enumerate() {
            let sinv = &self.group[self.inverses[i]];
            acc = r.add(acc, r.mul(self.characters[phi][i], sinv.apply(a)));
        }
        r.mul(acc, self.inv_order)
    }

    /// The unique decomposition `a = sum_phi e_phi(a)`.
    pub fn decompose(&self, a: RingElem) -> Vec<RingElem> {
        (0..self.characters.len()).map(|phi| self.project(phi, a)).collect()
    }

    /// Index of the pointwise product of two characters.
    pub fn product_character(&self, phi: usize, psi: usize) -> usize {
        let r = &self.ring;
        let prod: Vec<RingElem> =
            self.characters[phi].iter().zip(&self.characters[psi]).map(|(a, b)| r.mul(*a, *b)).collect();
        self.characters.iter().position(|c| *c == prod).expect("characters form a group")
    }

    /// Index of the trivial character.
    pub fn trivial_character(&self) -> usize {
        0
    }
}

/// Characters of a finite abelian group with values in `A^x`, trivial first.
fn abelian_characters(ring: &Ring, group: &[RingAut], table: &[Vec<usize>]) -> Result<Vec<Vec<RingElem>>, RingError> {
    let id = 0;
    // greedy generating set
    let mut gens: Vec<usize> = Vec::new();
    let mut generated = vec![id];
    while generated.len() < group.len() {
        let g = (0..group.len()).find(|x| !generated.contains(x)).unwrap();
        gens.push(g);
        let mut frontier = generated.clone();
        while let Some(a) = frontier.pop() {
            for h in &gens {
                let b = table[a][*h];
                if !generated.contains(&b) {
                    generated.push(b);
                    frontier.push(b);
                }
            }
        }
    }
    let orders: Vec<usize> = gens.iter().map(|g| group[*g].order()).collect();
    let root_sets: Vec<Vec<RingElem>> = orders
        .iter()
        .map(|o| ring.roots_of_unity(*o as u64))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        // BFS extend generator values to the whole group
        let mut vals: Vec<Option<RingElem>> = vec![None; group.len()];
        vals[id] = Some(ring.one());
        let mut frontier = vec![id];
        let mut consistent = true;
        while let Some(a) = frontier.pop() {
            for (gi, g) in gens.iter().enumerate() {
                let b = table[a][*g];
                let v = ring.mul(vals[a].unwrap(), root_sets[gi][choice[gi]]);
                match vals[b] {
                    None => {
                        vals[b] = Some(v);
                        frontier.push(b);
                    }
                    Some(w) if w != v => consistent = false,
                    _ => {}
                }
            }
        }
        if consistent {
            let vals: Vec<RingElem> = vals.into_iter().map(|v| v.unwrap()).collect();
            let hom = (0..group.len())
                .all(|a| (0..group.len()).all(|b| vals[table[a][b]] == ring.mul(vals[a], vals[b])));
            if hom {
                out.push(vals);
            }
        }
        for i in 0..choice.len() {
            choice[i] += 1;
            if choice[i] < root_sets[i].len() {
                continue 'outer;
            }
            choice[i] = 0;
        }
        break;
    }
    out.sort_by_key(|c| c.iter().any(|v| *v != ring.one()));
    Ok(out)
}

/// Grading of `A` by the characters of a finite abelian group `X` of
/// automorphisms.
pub fn grading_from_automorphisms(ring: &Ring, group: &[RingAut]) -> Result<Grading, RingError> {
    let mut group: Vec<RingAut> = group.to_vec();
    if group.is_empty() {
        group.push(RingAut::identity(ring));
    }
    if let Some(pos) = group.iter().position(|a| a.is_identity()) {
        group.swap(0, pos);
    } else {
        return Err(RingError::Precondition("X must contain the identity".into()));
    }
    let n = group.len();
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = group[i].compose(&group[j]);
            table[i][j] = index_of(&group, &c)
                .ok_or_else(|| RingError::Precondition("X is not closed under composition".into()))?;
        }
    }
    for i in 0..n {
        for j in 0..n {
            if table[i][j] != table[j][i] {
                return Err(RingError::Precondition("X is not abelian".into()));
            }
        }
    }
    if (n as u64).is_multiple_of(ring.p()) {
        return Err(RingError::Precondition(format!("#X = {n} is not invertible")));
    }
    for a in &group {
        let k = a.order() as u64;
        let mu = ring.roots_of_unity(k)?;
        if mu.len() as u64 != k {
            return Err(RingError::Precondition(format!(
                "A has only {} roots of unity of order dividing {k}",
                mu.len()
            )));
        }
    }
    let inverses: Vec<usize> = (0..n).map(|i| (0..n).find(|j| table[i][*j] == 0).unwrap()).collect();
    let characters = abelian_characters(ring, &group, &table)?;
    let inv_order = ring.inv(ring.from_int(n as i64)).expect("order is a unit");
    let mut grading =
        Grading { ring: ring.clone(), group, inverses, characters, components: Vec::new(), inv_order };
    let basis = monomial_basis(ring);
    let mut components = Vec::new();
    for phi in 0..grading.characters.len() {
        let mut s = Span::new(ring, 1);
        for b in &basis {
            s.insert(&[grading.project(phi, *b)]);
        }
        components.push(s);
    }
    grading.components = components;
    Ok(grading)
}

/// The eigenspaces `A^+` and `A^-` of an involution.
#[derive(Clone, Debug)]
pub struct InvolutionSplit {
    pub plus: Span,
    pub minus: Span,
}

pub fn involution_split(ring: &Ring, star: &RingAut) -> Result<InvolutionSplit, RingError> {
    if !star.compose(star).is_identity() {
        return Err(RingError::Precondition("map is not an involution".into()));
    }
    let half = ring.half();
    let mut plus = Span::new(ring, 1);
    let mut minus = Span::new(ring, 1);
    for b in monomial_basis(ring) {
        let s = star.apply(b);
        plus.insert(&[ring.mul(half, ring.add(b, s))]);
        minus.insert(&[ring.mul(half, ring.sub(b, s))]);
    }
    Ok(InvolutionSplit { plus, minus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ring_automorphisms, LocalRing, RingSpec};

    #[test]
    fn galois_grading_on_f9() {
        let f9 = LocalRing::new(RingSpec::new(3, 1, 2)).unwrap();
        let auts = ring_automorphisms(&f9).unwrap();
        let g = grading_from_automorphisms(&f9, &auts).unwrap();
        assert_eq!(g.components().len(), 2);
        // oracle: (1 +- sigma)/2 elementwise
        let sigma = &auts[1];
        let half = f9.half();
        for a in f9.elements() {
            let plus = f9.mul(half, f9.add(a, sigma.apply(a)));
            let minus = f9.mul(half, f9.sub(a, sigma.apply(a)));
            assert_eq!(g.decompose(a), vec![plus, minus]);
        }
        assert_eq!(g.components()[0].cardinality(), 3);
        let i = f9.elements().find(|x| f9.mul(*x, *x) == f9.from_int(-1)).unwrap();
        assert!(g.components()[1].contains(&[i]));
    }

    #[test]
    fn identity_grading() {
        let z9 = LocalRing::new(RingSpec::new(3, 2, 1)).unwrap();
        let g = grading_from_automorphisms(&z9, &[]).unwrap();
        assert_eq!(g.components().len(), 1);
        assert_eq!(g.components()[0].cardinality(), 9);
    }

    #[test]
    fn condition_star_rejected() {
        // u -> 4u has order 3 = p: not invertible
        let r = LocalRing::new(RingSpec::new(3, 2, 1).with_ext("u", &[-3, 0, 0, 1])).unwrap();
        let u = r.u().unwrap();
        let a = RingAut::from_images(&r, r.x(), Some(r.scale(u, 4))).unwrap();
        let group = vec![RingAut::identity(&r), a.clone(), a.compose(&a)];
        assert!(grading_from_automorphisms(&r, &group).is_err());
    }

    #[test]
    fn involution_split_examples() {
        let f9 = LocalRing::new(RingSpec::new(3, 1, 2)).unwrap();
        let id = RingAut::identity(&f9);
        let s = involution_split(&f9, &id).unwrap();
        assert_eq!(s.plus.cardinality(), 9);
        assert!(s.minus.is_zero());
        let frob = RingAut::frobenius(&f9, 1).unwrap();
        let s = involution_split(&f9, &frob).unwrap();
        assert_eq!(s.plus.cardinality(), 3);
        assert_eq!(s.minus.cardinality(), 3);
        for a in s.minus.elements() {
            for b in s.minus.elements() {
                assert!(s.plus.contains(&[f9.mul(a[0], b[0])]));
            }
        }
    }
}
