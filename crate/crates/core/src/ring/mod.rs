//! Finite commutative local rings of the shape `W(F_q)/p^n [u]/(g)`.
//!
//! Elements are stored as a single `u32` index: the mixed-radix encoding of
//! the coefficient vector in the monomial basis `x^i u^j` (with `i` varying
//! fastest).  All arithmetic goes through the owning [`LocalRing`].

mod aut;
mod embed;
mod grading;
mod module;
mod poly;

pub use aut::{ring_automorphisms, RingAut};
pub use embed::{quadratic_extension, subfield, FieldEmbedding};
pub use grading::{grading_from_automorphisms, involution_split, Grading, InvolutionSplit};
pub use module::{monomial_basis, witt_basis, Span, ZnModule};

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Upper bound on the number of ring elements.
pub const RING_SIZE_CAP: u64 = 1 << 20;
/// Upper bound on the number of candidate generator images tried when
/// enumerating automorphisms.
pub const AUT_CANDIDATE_CAP: u64 = 1 << 16;

const MAXD: usize = 16;
const TABLE_LIMIT: u32 = 1024;

pub type Ring = Arc<LocalRing>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("p = 2 is not supported")]
    EvenPrime,
    #[error("invalid ring parameter: {0}")]
    InvalidParameter(String),
    #[error("extension polynomial does not define a local ring: {0}")]
    NotLocal(String),
    #[error("unsupported extension: {0}")]
    UnsupportedExtension(String),
    #[error("{what} exceeds cap ({size} > {cap})")]
    CapExceeded { what: &'static str, size: u64, cap: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("map is not a ring automorphism: {0}")]
    NotAutomorphism(String),
}

/// Monogenic extension data: variable name and monic minimal polynomial with
/// integer coefficients, least degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtSpec {
    pub var: String,
    pub minpoly: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    pub p: u32,
    pub n: u32,
    pub f: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ext: Option<ExtSpec>,
}

impl RingSpec {
    pub fn new(p: u32, n: u32, f: u32) -> Self {
        RingSpec { p, n, f, ext: None }
    }

    pub fn with_ext(mut self, var: &str, minpoly: &[i64]) -> Self {
        self.ext = Some(ExtSpec { var: var.to_string(), minpoly: minpoly.to_vec() });
        self
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = (self.p as u64).pow(self.f);
        if self.n == 1 {
            write!(f, "F{q}")?;
        } else if self.f == 1 {
            write!(f, "Z/{}", (self.p as u64).pow(self.n))?;
        } else {
            write!(f, "W(F{q})/{}", (self.p as u64).pow(self.n))?;
        }
        if let Some(ext) = &self.ext {
            write!(f, "[{}]/({})", ext.var, poly::format_poly(&ext.minpoly, &ext.var))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RingElem(pub u32);

impl RingElem {
    pub const ZERO: RingElem = RingElem(0);
    pub const ONE: RingElem = RingElem(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub struct LocalRing {
    spec: RingSpec,
    p: u64,
    n: u32,
    f: usize,
    e: usize,
    modulus: u64,
    dim: usize,
    size: u32,
    fpoly: Vec<u64>,
    gpoly: Vec<u64>,
    ext_root: u64,
    structure: Vec<[u64; MAXD]>,
    add_tab: Option<Vec<u32>>,
    mul_tab: Option<Vec<u32>>,
    residue: OnceLock<Ring>,
    teich: OnceLock<Vec<RingElem>>,
    nilpotency: OnceLock<u32>,
    mutated: bool,
}

impl fmt::Debug for LocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalRing({})", self.spec)
    }
}

impl PartialEq for LocalRing {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.mutated == other.mutated
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub fn modinv(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// The p-adic valuation of `x` viewed in Z/p^n; `n` for zero.
pub(crate) fn valuation(x: u64, p: u64, n: u32) -> u32 {
    if x == 0 {
        return n;
    }
    let mut v = 0;
    let mut y = x;
    while y.is_multiple_of(p) {
        y /= p;
        v += 1;
    }
    v
}

impl LocalRing {
    /// Builds the ring described by `spec`.
    pub fn new(spec: RingSpec) -> Result<Ring, RingError> {
        Self::build(spec, None)
    }

    /// Builds the ring with one entry of its multiplication table replaced.
    /// Used as a negative control by the verification suite.
    pub fn with_mutated_product(spec: RingSpec, a: u32, b: u32, value: u32) -> Result<Ring, RingError> {
        Self::build(spec, Some((a, b, value)))
    }

    fn build(spec: RingSpec, mutation: Option<(u32, u32, u32)>) -> Result<Ring, RingError> {
        if spec.p == 2 {
            return Err(RingError::EvenPrime);
        }
        if !is_prime(spec.p as u64) {
            return Err(RingError::NotPrime(spec.p));
        }
        if spec.n == 0 || spec.f == 0 {
            return Err(RingError::InvalidParameter("n and f must be at least 1".into()));
        }
        let p = spec.p as u64;
        let n = spec.n;
        let f = spec.f as usize;
        let modulus = p
            .checked_pow(n)
            .filter(|m| *m <= RING_SIZE_CAP)
            .ok_or(RingError::CapExceeded { what: "ring size", size: u64::MAX, cap: RING_SIZE_CAP })?;

        let (gpoly, e, ext_root) = match &spec.ext {
            None => (vec![0, 1], 1usize, 0u64),
            Some(ext) => {
                let (g, root) = poly::check_extension(&ext.minpoly, p, modulus)?;
                let e = g.len() - 1;
                (g, e, root)
            }
        };
        let dim = f * e;
        let size = (modulus as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        if size > RING_SIZE_CAP as u128 {
            return Err(RingError::CapExceeded {
                what: "ring size",
                size: size.min(u64::MAX as u128) as u64,
                cap: RING_SIZE_CAP,
            });
        }
        if dim > MAXD {
            return Err(RingError::InvalidParameter("too many basis monomials".into()));
        }

        let fbar = poly::canonical_primitive_poly(p, f);
        let fpoly = if n == 1 {
            fbar
        } else {
            // Build the ring on a naive lift first, then replace the modulus
            // by the minimal polynomial of the Teichmuller lift of x.
            let raw = Self::assemble(spec.clone(), p, n, f, 1, modulus, fbar, vec![0, 1], 0, None);
            raw.teichmuller_minpoly()
        };
        let ring = Self::assemble(spec, p, n, f, e, modulus, fpoly, gpoly, ext_root, mutation);
        Ok(Arc::new(ring))
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        spec: RingSpec,
        p: u64,
        n: u32,
        f: usize,
        e: usize,
        modulus: u64,
        fpoly: Vec<u64>,
        gpoly: Vec<u64>,
        ext_root: u64,
        mutation: Option<(u32, u32, u32)>,
    ) -> LocalRing {
        let dim = f * e;
        let size = modulus.pow(dim as u32) as u32;
        let xpow = poly::reduced_powers(&fpoly, 2 * f - 1, modulus);
        let upow = poly::reduced_powers(&gpoly, 2 * e - 1, modulus);
        let mut structure = vec![[0u64; MAXD]; dim * dim];
        for k1 in 0..dim {
            let (i1, j1) = (k1 % f, k1 / f);
            for k2 in 0..dim {
                let (i2, j2) = (k2 % f, k2 / f);
                let xs = &xpow[i1 + i2];
                let us = &upow[j1 + j2];
                let entry = &mut structure[k1 * dim + k2];
                for (j, uc) in us.iter().enumerate() {
                    for (i, xc) in xs.iter().enumerate() {
                        entry[j * f + i] = (xc * uc) % modulus;
                    }
                }
            }
        }
        let mut ring = LocalRing {
            spec,
            p,
            n,
            f,
            e,
            modulus,
            dim,
            size,
            fpoly,
            gpoly,
            ext_root,
            structure,
            add_tab: None,
            mul_tab: None,
            residue: OnceLock::new(),
            teich: OnceLock::new(),
            nilpotency: OnceLock::new(),
            mutated: mutation.is_some(),
        };
        if size <= TABLE_LIMIT {
            let s = size as usize;
            let mut add = vec![0u32; s * s];
            let mut mul = vec![0u32; s * s];
            for a in 0..s {
                for b in 0..s {
                    add[a * s + b] = ring.add_slow(RingElem(a as u32), RingElem(b as u32)).0;
                    mul[a * s + b] = ring.mul_slow(RingElem(a as u32), RingElem(b as u32)).0;
                }
            }
            if let Some((a, b, v)) = mutation {
                let (a, b) = (a as usize % s, b as usize % s);
                mul[a * s + b] = v % size;
                mul[b * s + a] = v % size;
            }
            ring.add_tab = Some(add);
            ring.mul_tab = Some(mul);
        }
        ring
    }

    /// Minimal polynomial over Z/p^n of the Teichmuller lift of `x`.
    fn teichmuller_minpoly(&self) -> Vec<u64> {
        let x = self.x();
        let omega = self.iterate_to_teichmuller(x);
        // prod_{k < f} (Y - omega^{p^k}), coefficients computed in the ring
        let mut coeffs = vec![self.one()];
        let mut root = omega;
        for _ in 0..self.f {
            let mut next = vec![self.zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], *c);
                next[i] = self.sub(next[i], self.mul(*c, root));
            }
            coeffs = next;
            root = self.pow(root, self.p);
        }
        coeffs
            .iter()
            .map(|c| {
                let v = self.coeffs(*c);
                debug_assert!(v[1..].iter().all(|x| *x == 0));
                v[0]
            })
            .collect()
    }

    fn iterate_to_teichmuller(&self, mut y: RingElem) -> RingElem {
        let q = self.residue_size();
        loop {
            let z = self.pow(y, q);
            if z == y {
                return y;
            }
            y = z;
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    /// Residue degree f.
    pub fn f(&self) -> usize {
        self.f
    }
    /// Degree of the monogenic extension (1 when absent).
    pub fn e(&self) -> usize {
        self.e
    }
    /// Characteristic p^n of the base ring.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn size(&self) -> u32 {
        self.size
    }
    pub fn residue_size(&self) -> u64 {
        self.p.pow(self.f as u32)
    }
    pub fn is_field(&self) -> bool {
        self.n == 1 && self.e == 1
    }
    pub fn is_mutated(&self) -> bool {
        self.mutated
    }
    pub fn has_extension(&self) -> bool {
        self.spec.ext.is_some()
    }
    /// The monic modulus of the unramified part, least degree first.
    pub fn unramified_modulus(&self) -> &[u64] {
        &self.fpoly
    }
    pub fn extension_modulus(&self) -> &[u64] {
        &self.gpoly
    }
    /// Residue of the extension variable: `u` reduces to this element of F_p.
    pub fn extension_residue(&self) -> u64 {
        self.ext_root
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElem> {
        (0..self.size).map(RingElem)
    }

    pub fn units(&self) -> Vec<RingElem> {
        self.elements().filter(|a| self.is_unit(*a)).collect()
    }

    pub fn unit_count(&self) -> u64 {
        self.size as u64 - self.size as u64 / self.residue_size()
    }

    pub fn zero(&self) -> RingElem {
        RingElem(0)
    }
    pub fn one(&self) -> RingElem {
        RingElem(1)
    }

    /// The generator `x` of the unramified part (the Teichmuller lift of a
    /// primitive element of the residue field).
    pub fn x(&self) -> RingElem {
        if self.f == 1 {
            self.from_int(-(self.fpoly[0] as i64))
        } else {
            let mut c = [0u64; MAXD];
            c[1] = 1;
            self.encode(&c)
        }
    }

    /// The extension variable `u`.
    pub fn u(&self) -> Option<RingElem> {
        self.spec.ext.as_ref()?;
        let mut c = [0u64; MAXD];
        c[self.f] = 1;
        if self.e == 1 {
            // degree-one extension: u is the integer root
            return Some(self.from_int(-(self.gpoly[0] as i64)));
        }
        Some(self.encode(&c))
    }

    pub fn from_int(&self, v: i64) -> RingElem {
        let m = self.modulus as i64;
        RingElem(v.rem_euclid(m) as u32)
    }

    pub(crate) fn decode(&self, a: RingElem) -> [u64; MAXD] {
        let mut out = [0u64; MAXD];
        let mut x = a.0 as u64;
        for c in out.iter_mut().take(self.dim) {
            *c = x % self.modulus;
            x /= self.modulus;
        }
        out
    }

    pub(crate) fn encode(&self, c: &[u64]) -> RingElem {
        let mut x = 0u64;
        for k in (0..self.dim).rev() {
            x = x * self.modulus + c[k] % self.modulus;
        }
        RingElem(x as u32)
    }

    /// Coefficient vector in the monomial basis, least degree first.
    pub fn coeffs(&self, a: RingElem) -> Vec<u64> {
        self.decode(a)[..self.dim].to_vec()
    }

    pub fn from_coeffs(&self, c: &[i64]) -> Result<RingElem, RingError> {
        if c.len() > self.dim {
            return Err(RingError::InvalidParameter(format!(
                "element has {} coefficients but the ring has dimension {}",
                c.len(),
                self.dim
            )));
        }
        let mut buf = [0u64; MAXD];
        for (k, v) in c.iter().enumerate() {
            buf[k] = v.rem_euclid(self.modulus as i64) as u64;
        }
        Ok(self.encode(&buf))
    }

    pub fn from_coeffs_u64(&self, c: &[u64]) -> RingElem {
        let mut buf = [0u64; MAXD];
        buf[..c.len()].copy_from_slice(c);
        self.encode(&buf)
    }

    fn add_slow(&self, a: RingElem, b: RingElem) -> RingElem {
        let (x, y) = (self.decode(a), self.decode(b));
        let mut z = [0u64; MAXD];
        for k in 0..self.dim {
            z[k] = (x[k] + y[k]) % self.modulus;
        }
        self.encode(&z)
    }

    fn mul_slow(&self, a: RingElem, b: RingElem) -> RingElem {
        let (x, y) = (self.decode(a), self.decode(b));
        let mut z = [0u64; MAXD];
        let m = self.modulus;
        for i in 0..self.dim {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.dim {
                if y[j] == 0 {
                    continue;
                }
                let c = x[i] * y[j] % m;
                let s = &self.structure[i * self.dim + j];
                for k in 0..self.dim {
                    z[k] = (z[k] + c * s[k]) % m;
                }
            }
        }
        self.encode(&z)
    }

    #[inline]
    pub fn add(&self, a: RingElem, b: RingElem) -> RingElem {
        match &self.add_tab {
            Some(t) => RingElem(t[a.index() * self.size as usize + b.index()]),
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: RingElem, b: RingElem) -> RingElem {
        match &self.mul_tab {
            Some(t) => RingElem(t[a.index() * self.size as usize + b.index()]),
            None => self.mul_slow(a, b),
        }
    }

    pub fn neg(&self, a: RingElem) -> RingElem {
        let x = self.decode(a);
        let mut z = [0u64; MAXD];
        for k in 0..self.dim {
            z[k] = (self.modulus - x[k]) % self.modulus;
        }
        self.encode(&z)
    }

    pub fn sub(&self, a: RingElem, b: RingElem) -> RingElem {
        self.add(a, self.neg(b))
    }

    /// Multiplication by an integer.
    pub fn scale(&self, a: RingElem, k: i64) -> RingElem {
        let k = k.rem_euclid(self.modulus as i64) as u64;
        let x = self.decode(a);
        let mut z = [0u64; MAXD];
        for i in 0..self.dim {
            z[i] = x[i] * k % self.modulus;
        }
        self.encode(&z)
    }

    pub fn pow(&self, a: RingElem, mut k: u64) -> RingElem {
        let mut base = a;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: RingElem) -> bool {
        self.residue_raw(a).iter().any(|c| *c != 0)
    }

    pub fn in_max_ideal(&self, a: RingElem) -> bool {
        !self.is_unit(a)
    }

    pub fn inv(&self, a: RingElem) -> Option<RingElem> {
        if !self.is_unit(a) {
            return None;
        }
        Some(self.pow(a, self.unit_count() - 1))
    }

    /// Division by a unit.  Panics if `b` is not a unit.
    pub fn div(&self, a: RingElem, b: RingElem) -> RingElem {
        self.mul(a, self.inv(b).expect("division by a non-unit"))
    }

    pub fn half(&self) -> RingElem {
        self.from_int(self.modulus.div_ceil(2) as i64)
    }

    /// Multiplicative order of a unit.
    pub fn order(&self, a: RingElem) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        let mut m = self.unit_count();
        for r in prime_factors(m) {
            while m.is_multiple_of(r) && self.pow(a, m / r) == self.one() {
                m /= r;
            }
        }
        Some(m)
    }

    fn residue_raw(&self, a: RingElem) -> Vec<u64> {
        let c = self.decode(a);
        let mut out = vec![0u64; self.f];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            let mut apow = 1u64;
            for j in 0..self.e {
                acc = (acc + (c[j * self.f + i] % self.p) * apow) % self.p;
                apow = apow * self.ext_root % self.p;
            }
            *o = acc;
        }
        out
    }

    /// The residue field `A/m`.
    pub fn residue_field(&self) -> &Ring {
        self.residue.get_or_init(|| {
            LocalRing::new(RingSpec::new(self.spec.p, 1, self.spec.f)).expect("residue field of a valid ring")
        })
    }

    /// Reduction modulo the maximal ideal.
    pub fn residue(&self, a: RingElem) -> RingElem {
        let r = self.residue_raw(a);
        let k = self.residue_field();
        k.from_coeffs_u64(&r)
    }

    /// Naive lift of a residue-field element (coefficients in `[0, p)`).
    pub fn lift_residue(&self, a: RingElem) -> RingElem {
        let k = self.residue_field();
        let c = k.decode(a);
        let mut buf = [0u64; MAXD];
        buf[..self.f].copy_from_slice(&c[..self.f]);
        self.encode(&buf)
    }

    /// The Teichmuller lift `s(a)` of a residue-field element.
    pub fn teichmuller(&self, a: RingElem) -> RingElem {
        self.teich.get_or_init(|| self.teichmuller_table())[a.index()]
    }

    fn teichmuller_table(&self) -> Vec<RingElem> {
        let k = self.residue_field();
        let q = k.size() as usize;
        let mut table = vec![RingElem(0); q];
        let g = k.x();
        let omega = self.iterate_to_teichmuller(self.lift_residue(g));
        let mut gk = k.one();
        let mut wk = self.one();
        for _ in 0..q - 1 {
            table[gk.index()] = wk;
            gk = k.mul(gk, g);
            wk = self.mul(wk, omega);
        }
        table
    }

    /// Whether `a` is a Teichmuller representative.
    pub fn is_teichmuller(&self, a: RingElem) -> bool {
        self.teichmuller(self.residue(a)) == a
    }

    /// Smallest `k` with `m^k = 0`.
    pub fn nilpotency_index(&self) -> u32 {
        *self.nilpotency.get_or_init(|| {
            if self.is_field() {
                return 1;
            }
            // m is generated by p and (u - a); its k-th power vanishes iff all
            // products of k generators vanish.
            let gens = self.max_ideal_generators();
            let mut level: Vec<RingElem> = vec![self.one()];
            let mut k = 0;
            while level.iter().any(|x| *x != self.zero()) {
                let mut next = Vec::new();
                for a in &level {
                    for g in &gens {
                        let v = self.mul(*a, *g);
                        if !next.contains(&v) {
                            next.push(v);
                        }
                    }
                }
                level = next;
                k += 1;
            }
            k
        })
    }

    pub fn max_ideal_generators(&self) -> Vec<RingElem> {
        let mut gens = Vec::new();
        if self.n > 1 {
            gens.push(self.from_int(self.p as i64));
        }
        if let Some(u) = self.u() {
            if self.e > 1 {
                gens.push(self.sub(u, self.from_int(self.ext_root as i64)));
            }
        }
        gens
    }

    /// Square root of an element of `1 + m` congruent to 1, computed with the
    /// binomial series `sum C(1/2, k) (x - 1)^k`.
    pub fn sqrt_unit(&self, x: RingElem) -> Result<RingElem, RingError> {
        let k = self.residue_field();
        if self.residue(x) != k.one() {
            return Err(RingError::Precondition("sqrt_unit needs an element of 1 + m".into()));
        }
        let m = self.modulus;
        let z = self.sub(x, self.one());
        let inv4 = modinv(4 % m, m).expect("4 is invertible for odd p");
        // C(1/2, k) = (-1)^{k+1} * 2 * Catalan(k-1) / 4^k
        let mut catalan: Vec<u64> = vec![1];
        let mut sum = self.one();
        let mut zp = self.one();
        let mut inv4k = 1u64;
        let mut k = 1usize;
        loop {
            zp = self.mul(zp, z);
            if zp == self.zero() {
                break;
            }
            inv4k = inv4k * inv4 % m;
            while catalan.len() < k {
                let j = catalan.len();
                let mut c = 0u64;
                for i in 0..j {
                    c = (c + catalan[i] * catalan[j - 1 - i]) % m;
                }
                catalan.push(c);
            }
            let mut coef = 2 * catalan[k - 1] % m * inv4k % m;
            if k.is_multiple_of(2) {
                coef = (m - coef) % m;
            }
            sum = self.add(sum, self.scale(zp, coef as i64));
            k += 1;
        }
        Ok(sum)
    }

    /// `mu_k(A)`, computed as the Teichmuller image of `mu_k(F)`.
    pub fn roots_of_unity(&self, k: u64) -> Result<Vec<RingElem>, RingError> {
        if k == 0 {
            return Err(RingError::Precondition("k must be positive".into()));
        }
        if k.is_multiple_of(self.p) {
            return Err(RingError::Precondition(format!("p = {} divides k = {}", self.p, k)));
        }
        let field = self.residue_field();
        let mut out: Vec<RingElem> = field
            .elements()
            .filter(|a| *a != field.zero() && field.pow(*a, k) == field.one())
            .map(|a| self.teichmuller(a))
            .collect();
        out.sort();
        Ok(out)
    }

    /// A primitive element of the subfield `F_{p^d}` of a finite field.
    pub fn subfield_generator(&self, d: usize) -> RingElem {
        debug_assert!(self.is_field() && self.f.is_multiple_of(d));
        let q = self.residue_size();
        let sub = self.p.pow(d as u32);
        self.pow(self.x(), (q - 1) / (sub - 1))
    }

    /// Smallest `d | f` such that `a` lies in `F_{p^d}` (for a field).
    pub fn field_degree_of(&self, a: RingElem) -> usize {
        debug_assert!(self.is_field());
        (1..=self.f)
            .filter(|d| self.f.is_multiple_of(*d))
            .find(|d| self.pow(a, self.p.pow(*d as u32)) == a)
            .unwrap_or(self.f)
    }

    pub fn format_elem(&self, a: RingElem) -> String {
        if self.dim == 1 {
            return format!("{}", a.0);
        }
        format!("{:?}", self.coeffs(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, n: u32, f: u32) -> Ring {
        LocalRing::new(RingSpec::new(p, n, f)).unwrap()
    }

    #[test]
    fn basic_sizes() {
        assert_eq!(ring(3, 2, 1).size(), 9);
        assert_eq!(ring(3, 1, 2).size(), 9);
        let a = LocalRing::new(RingSpec::new(3, 2, 1).with_ext("u", &[-3, 0, 0, 1])).unwrap();
        assert_eq!(a.size(), 729);
        let u = a.u().unwrap();
        assert_eq!(a.pow(u, 3), a.from_int(3));
        assert_eq!(a.pow(u, 6), a.zero());
        assert_eq!(a.max_ideal_generators().len(), 2);
    }

    #[test]
    fn rejects_bad_primes() {
        assert_eq!(LocalRing::new(RingSpec::new(2, 1, 1)).unwrap_err(), RingError::EvenPrime);
        assert_eq!(LocalRing::new(RingSpec::new(9, 1, 1)).unwrap_err(), RingError::NotPrime(9));
        let nonlocal = LocalRing::new(RingSpec::new(5, 1, 1).with_ext("u", &[-1, 0, 1]));
        assert!(matches!(nonlocal, Err(RingError::NotLocal(_))));
    }

    #[test]
    fn canonical_field_modulus() {
        let f9 = ring(3, 1, 2);
        assert_eq!(f9.unramified_modulus(), &[2, 1, 1]);
    }

    #[test]
    fn teichmuller_examples() {
        let z9 = ring(3, 2, 1);
        let k = z9.residue_field().clone();
        assert_eq!(z9.teichmuller(k.from_int(2)), z9.from_int(8));
        assert_eq!(z9.teichmuller(k.zero()), z9.zero());
        assert_eq!(z9.teichmuller(k.one()), z9.one());
    }

    #[test]
    fn teichmuller_modulus_divides_cyclotomic() {
        let w = ring(3, 3, 2);
        let x = w.x();
        assert_eq!(w.pow(x, 8), w.one());
        assert!(w.is_teichmuller(x));
    }

    #[test]
    fn sqrt_examples() {
        let z81 = ring(3, 4, 1);
        assert_eq!(z81.sqrt_unit(z81.from_int(4)).unwrap(), z81.from_int(79));
        assert_eq!(z81.sqrt_unit(z81.one()).unwrap(), z81.one());
        let z9 = ring(3, 2, 1);
        assert!(z9.sqrt_unit(z9.from_int(2)).is_err());
    }

    #[test]
    fn roots_examples() {
        let z9 = ring(3, 2, 1);
        assert_eq!(z9.roots_of_unity(2).unwrap(), vec![z9.from_int(1), z9.from_int(8)]);
        assert!(z9.roots_of_unity(3).is_err());
        let f9 = ring(3, 1, 2);
        assert_eq!(f9.roots_of_unity(8).unwrap().len(), 8);
    }

    #[test]
    fn inverse_and_order() {
        let w = ring(5, 2, 1);
        for a in w.units() {
            assert_eq!(w.mul(a, w.inv(a).unwrap()), w.one());
        }
        assert_eq!(w.order(w.from_int(-1)), Some(2));
        assert_eq!(w.inv(w.from_int(5)), None);
    }

    #[test]
    fn nilpotency() {
        assert_eq!(ring(3, 3, 1).nilpotency_index(), 3);
        let a = LocalRing::new(RingSpec::new(3, 1, 2).with_ext("t", &[0, 0, 0, 1])).unwrap();
        assert_eq!(a.nilpotency_index(), 3);
        assert_eq!(ring(7, 1, 1).nilpotency_index(), 1);
    }
}
