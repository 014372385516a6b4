//! Submodules of `(Z/p^n)^k` in Howell form, and spans of ring-valued
//! vectors built on top of them.

use super::{modinv, valuation, Ring, RingElem};

/// A submodule of `(Z/p^n)^k`.
///
/// Rows are indexed by their pivot column.  Every pivot is normalised to a
/// power `p^v`, and the row set is closed under the saturation step
/// (`p^{n-v} * row` is always inserted too), so every element whose first
/// `c` coordinates vanish is a combination of rows with pivot `>= c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZnModule {
    p: u64,
    n: u32,
    modulus: u64,
    width: usize,
    rows: Vec<Option<Vec<u64>>>,
}

impl ZnModule {
    pub fn new(p: u64, n: u32, width: usize) -> Self {
        ZnModule { p, n, modulus: p.pow(n), width, rows: vec![None; width] }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn pivot(&self, v: &[u64]) -> Option<usize> {
        v.iter().position(|x| *x != 0)
    }

    fn axpy(&self, dst: &mut [u64], k: u64, src: &[u64]) {
        // dst -= k * src
        let m = self.modulus;
        for (d, s) in dst.iter_mut().zip(src) {
            *d = (*d + m - (k % m) * s % m) % m;
        }
    }

    fn scaled(&self, k: u64, src: &[u64]) -> Vec<u64> {
        src.iter().map(|s| s * (k % self.modulus) % self.modulus).collect()
    }

    /// Inserts a vector; returns whether the module grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        let before = self.log_card();
        let mut stack: Vec<Vec<u64>> = vec![v.iter().map(|x| x % self.modulus).collect()];
        while let Some(mut r) = stack.pop() {
            let Some(c) = self.pivot(&r) else { continue };
            let v = valuation(r[c], self.p, self.n);
            let unit = r[c] / self.p.pow(v);
            let uinv = modinv(unit, self.modulus).expect("unit part is invertible");
            r = self.scaled(uinv, &r);
            match self.rows[c].take() {
                None => {
                    if v > 0 {
                        stack.push(self.scaled(self.p.pow(self.n - v), &r));
                    }
                    self.rows[c] = Some(r);
                }
                Some(existing) => {
                    let w = valuation(existing[c], self.p, self.n);
                    if v >= w {
                        self.axpy(&mut r, self.p.pow(v - w), &existing);
                        self.rows[c] = Some(existing);
                        stack.push(r);
                    } else {
                        let mut old = existing;
                        self.axpy(&mut old, self.p.pow(w - v), &r);
                        stack.push(old);
                        stack.push(self.scaled(self.p.pow(self.n - v), &r));
                        self.rows[c] = Some(r);
                    }
                }
            }
        }
        self.log_card() > before
    }

    /// Reduces entries above pivots so that equal modules have equal rows.
    pub fn canonicalize(&mut self) {
        let m = self.modulus;
        for r in (0..self.width).rev() {
            let Some(mut row) = self.rows[r].take() else { continue };
            for c in r + 1..self.width {
                if let Some(row_c) = &self.rows[c] {
                    let k = row[c] / row_c[c];
                    if k != 0 {
                        for (d, s) in row.iter_mut().zip(row_c) {
                            *d = (*d + m - k * s % m) % m;
                        }
                    }
                }
            }
            self.rows[r] = Some(row);
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut r: Vec<u64> = v.iter().map(|x| x % self.modulus).collect();
        for c in 0..self.width {
            if r[c] == 0 {
                continue;
            }
            let Some(row) = &self.rows[c] else { return false };
            let pw = row[c];
            if !r[c].is_multiple_of(pw) {
                return false;
            }
            let k = r[c] / pw;
            self.axpy(&mut r, k, row);
        }
        true
    }

    /// `log_p` of the number of elements.
    pub fn log_card(&self) -> u32 {
        self.rows
            .iter()
            .flatten()
            
            .map(|r| {
                let c = self.pivot(r).unwrap();
                self.n - valuation(r[c], self.p, self.n)
            })
            .sum()
    }

    pub fn cardinality(&self) -> u128 {
        (self.p as u128).pow(self.log_card())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_none())
    }

    /// Howell rows, each with its pivot column and the additive order of the
    /// row (`p^{n-v}`).
    pub fn rows(&self) -> Vec<(usize, u64, Vec<u64>)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(c, r)| {
                r.as_ref().map(|r| (c, self.p.pow(self.n - valuation(r[c], self.p, self.n)), r.clone()))
            })
            .collect()
    }

    /// Every element exactly once.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let rows = self.rows();
        let mut out = vec![vec![0u64; self.width]];
        for (_, order, row) in rows {
            let mut next = Vec::with_capacity(out.len() * order as usize);
            for base in &out {
                for k in 0..order {
                    next.push(
                        base.iter().zip(&row).map(|(b, r)| (b + k * r) % self.modulus).collect(),
                    );
                }
            }
            out = next;
        }
        out
    }

    pub fn is_submodule_of(&self, other: &ZnModule) -> bool {
        self.rows.iter().flatten().all(|r| other.contains(r))
    }

    pub fn same_as(&self, other: &ZnModule) -> bool {
        self.log_card() == other.log_card() && self.is_submodule_of(other)
    }

    pub fn sum(&self, other: &ZnModule) -> ZnModule {
        let mut out = self.clone();
        for r in other.rows.iter().flatten() {
            out.insert(r);
        }
        out
    }

    /// Kernel of the linear map sending the `i`-th standard basis vector of
    /// `(Z/p^n)^k` to `images[i]`.
    pub fn kernel_of(p: u64, n: u32, images: &[Vec<u64>]) -> ZnModule {
        let k = images.len();
        let w = images.first().map(|v| v.len()).unwrap_or(0);
        let mut aug = ZnModule::new(p, n, w + k);
        for (i, img) in images.iter().enumerate() {
            let mut row = img.clone();
            row.resize(w + k, 0);
            row[w + i] = 1;
            aug.insert(&row);
        }
        let mut ker = ZnModule::new(p, n, k);
        for (c, _, row) in aug.rows() {
            if c >= w {
                ker.insert(&row[w..]);
            }
        }
        ker
    }
}

/// A `Z/p^n`-submodule of `A^k` for a local ring `A`.
#[derive(Clone, Debug)]
pub struct Span {
    ring: Ring,
    width: usize,
    module: ZnModule,
}

impl Span {
    pub fn new(ring: &Ring, width: usize) -> Self {
        let module = ZnModule::new(ring.p(), ring.n(), width * ring.dim());
        Span { ring: ring.clone(), width, module }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn module(&self) -> &ZnModule {
        &self.module
    }

    fn flatten(&self, v: &[RingElem]) -> Vec<u64> {
        assert_eq!(v.len(), self.width, "span width mismatch");
        v.iter().flat_map(|a| self.ring.coeffs(*a)).collect()
    }

    fn unflatten(&self, v: &[u64]) -> Vec<RingElem> {
        v.chunks(self.ring.dim()).map(|c| self.ring.from_coeffs_u64(c)).collect()
    }

    pub fn insert(&mut self, v: &[RingElem]) -> bool {
        let flat = self.flatten(v);
        self.module.insert(&flat)
    }

    /// Inserts `a * v` for every `a` in `scalars`.
    pub fn insert_scaled(&mut self, v: &[RingElem], scalars: &[RingElem]) -> bool {
        let mut grew = false;
        for s in scalars {
            let w: Vec<RingElem> = v.iter().map(|x| self.ring.mul(*s, *x)).collect();
            grew |= self.insert(&w);
        }
        grew
    }

    pub fn contains(&self, v: &[RingElem]) -> bool {
        self.module.contains(&self.flatten(v))
    }

    pub fn log_card(&self) -> u32 {
        self.module.log_card()
    }

    pub fn cardinality(&self) -> u128 {
        self.module.cardinality()
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }

    pub fn basis(&self) -> Vec<Vec<RingElem>> {
        self.module.rows().iter().map(|(_, _, r)| self.unflatten(r)).collect()
    }

    pub fn elements(&self) -> Vec<Vec<RingElem>> {
        self.module.elements().iter().map(|r| self.unflatten(r)).collect()
    }

    pub fn is_subspan_of(&self, other: &Span) -> bool {
        self.module.is_submodule_of(&other.module)
    }

    pub fn same_as(&self, other: &Span) -> bool {
        self.module.same_as(&other.module)
    }

    pub fn sum(&self, other: &Span) -> Span {
        Span { ring: self.ring.clone(), width: self.width, module: self.module.sum(&other.module) }
    }

    /// Closes the span under multiplication by every element of `scalars`
    /// (a generating set of the scalar ring as a `Z/p^n`-module).
    pub fn close_under(&mut self, scalars: &[RingElem]) {
        loop {
            let mut grew = false;
            for b in self.basis() {
                grew |= self.insert_scaled(&b, scalars);
            }
            if !grew {
                break;
            }
        }
    }
}

/// The `Z/p^n`-module basis of `A` given by the monomials `x^i u^j`.
pub fn monomial_basis(ring: &Ring) -> Vec<RingElem> {
    (0..ring.dim())
        .map(|k| {
            let mut c = vec![0u64; ring.dim()];
            c[k] = 1;
            ring.from_coeffs_u64(&c)
        })
        .collect()
}

/// A `Z/p^n`-module basis of `W(F_q)/p^n` inside `A`: powers of `x`.
pub fn witt_basis(ring: &Ring) -> Vec<RingElem> {
    let x = ring.x();
    (0..ring.f()).map(|i| ring.pow(x, i as u64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{LocalRing, RingSpec};
    use std::collections::HashSet;

    fn brute_span(p: u64, n: u32, gens: &[Vec<u64>]) -> HashSet<Vec<u64>> {
        let m = p.pow(n);
        let w = gens[0].len();
        let mut set: HashSet<Vec<u64>> = HashSet::new();
        set.insert(vec![0; w]);
        loop {
            let mut added = Vec::new();
            for a in &set {
                for g in gens {
                    let s: Vec<u64> = a.iter().zip(g).map(|(x, y)| (x + y) % m).collect();
                    if !set.contains(&s) {
                        added.push(s);
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            set.extend(added);
        }
        set
    }

    #[test]
    fn howell_matches_brute_force() {
        let cases: Vec<Vec<Vec<u64>>> = vec![
            vec![vec![3, 1, 0], vec![0, 3, 6]],
            vec![vec![9, 3, 0], vec![0, 0, 9], vec![3, 1, 1]],
            vec![vec![0, 3], vec![3, 0]],
            vec![vec![6, 3, 3]],
        ];
        for gens in cases {
            let mut m = ZnModule::new(3, 3, gens[0].len());
            for g in &gens {
                m.insert(g);
            }
            let brute = brute_span(3, 3, &gens);
            assert_eq!(m.cardinality(), brute.len() as u128);
            let elems: HashSet<Vec<u64>> = m.elements().into_iter().collect();
            assert_eq!(elems, brute);
            for v in &brute {
                assert!(m.contains(v));
            }
        }
    }

    #[test]
    fn kernel_matches_brute_force() {
        // (x, y, z) -> 3x + y, 9z  over Z/27
        let images = vec![vec![3, 0], vec![1, 0], vec![0, 9]];
        let ker = ZnModule::kernel_of(3, 3, &images);
        let mut count = 0;
        for x in 0..27u64 {
            for y in 0..27u64 {
                for z in 0..27u64 {
                    if (3 * x + y) % 27 == 0 && (9 * z) % 27 == 0 {
                        count += 1;
                        assert!(ker.contains(&[x, y, z]));
                    }
                }
            }
        }
        assert_eq!(ker.cardinality(), count);
    }

    #[test]
    fn canonical_rows_are_unique() {
        let mut a = ZnModule::new(5, 2, 2);
        a.insert(&[1, 3]);
        a.insert(&[0, 5]);
        let mut b = ZnModule::new(5, 2, 2);
        b.insert(&[2, 11]);
        b.insert(&[0, 10]);
        a.canonicalize();
        b.canonicalize();
        assert_eq!(a, b);
    }

    #[test]
    fn ideal_span_in_extension() {
        let r = LocalRing::new(RingSpec::new(3, 2, 1).with_ext("u", &[-3, 0, 1])).unwrap();
        let mut s = Span::new(&r, 1);
        s.insert(&[r.u().unwrap()]);
        s.close_under(&monomial_basis(&r));
        // (u) in Z/9[u]/(u^2 - 3) has index 3
        assert_eq!(s.cardinality(), 27);
    }
}
