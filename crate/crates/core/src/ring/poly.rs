//! Small dense-polynomial helpers over `Z/m`, coefficients least degree first.

use super::{is_prime, prime_factors, RingError};

pub(crate) fn format_poly(c: &[i64], var: &str) -> String {
    let mut terms = Vec::new();
    for (k, v) in c.iter().enumerate().rev() {
        if *v == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let t = if k == 0 {
            format!("{v}")
        } else if *v == 1 {
            mono
        } else if *v == -1 {
            format!("-{mono}")
        } else {
            format!("{v}{mono}")
        };
        terms.push(t);
    }
    if terms.is_empty() {
        return "0".into();
    }
    terms.join(" + ").replace("+ -", "- ")
}

/// `x^k mod poly` for `k = 0..=maxdeg`, each as a vector of length `deg poly`.
pub(crate) fn reduced_powers(poly: &[u64], maxdeg: usize, m: u64) -> Vec<Vec<u64>> {
    let d = poly.len() - 1;
    let mut out = Vec::with_capacity(maxdeg + 1);
    let mut cur = vec![0u64; d];
    if d == 0 {
        return vec![Vec::new(); maxdeg + 1];
    }
    cur[0] = 1 % m;
    if d == 1 {
        // x = -poly[0]
        let r = (m - poly[0] % m) % m;
        let mut v = 1 % m;
        for _ in 0..=maxdeg {
            out.push(vec![v]);
            v = v * r % m;
        }
        return out;
    }
    for _ in 0..=maxdeg {
        out.push(cur.clone());
        let top = cur[d - 1];
        let mut next = vec![0u64; d];
        for i in (1..d).rev() {
            next[i] = cur[i - 1];
        }
        for i in 0..d {
            next[i] = (next[i] + m - top * poly[i] % m) % m;
        }
        cur = next;
    }
    out
}

fn mulmod_poly(a: &[u64], b: &[u64], modp: &[u64], p: u64) -> Vec<u64> {
    let d = modp.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (d..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for i in 0..=d {
            prod[k - d + i] = (prod[k - d + i] + p - c * modp[i] % p) % p;
        }
    }
    prod.truncate(d);
    prod.resize(d, 0);
    prod
}

fn powmod_x(k: u64, modp: &[u64], p: u64) -> Vec<u64> {
    let d = modp.len() - 1;
    let mut acc = vec![0u64; d];
    acc[0] = 1;
    let mut base = vec![0u64; d];
    if d == 1 {
        base[0] = (p - modp[0]) % p;
    } else {
        base[1] = 1;
    }
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_poly(&acc, &base, modp, p);
        }
        base = mulmod_poly(&base, &base, modp, p);
        e >>= 1;
    }
    acc
}

fn is_primitive(poly: &[u64], p: u64) -> bool {
    let f = poly.len() - 1;
    let order = p.pow(f as u32) - 1;
    if poly[0] == 0 {
        return false;
    }
    let one = {
        let mut v = vec![0u64; f];
        v[0] = 1;
        v
    };
    if powmod_x(order, poly, p) != one {
        return false;
    }
    prime_factors(order).iter().all(|r| powmod_x(order / r, poly, p) != one)
}

/// The monic primitive polynomial of degree `f` over `F_p` that is least in
/// lexicographic order on `(c_{f-1}, ..., c_0)`.  For `f = 1` this is
/// `Y - g` with `g` the least primitive root mod `p`.
pub(crate) fn canonical_primitive_poly(p: u64, f: usize) -> Vec<u64> {
    debug_assert!(is_prime(p));
    if f == 1 {
        let g = (1..p).find(|g| is_primitive(&[(p - g) % p, 1], p)).unwrap_or(1);
        return vec![(p - g) % p, 1];
    }
    let total = p.pow(f as u32);
    for code in 0..total {
        // code enumerates (c_{f-1}, ..., c_0) with c_{f-1} most significant
        let mut poly = vec![0u64; f + 1];
        poly[f] = 1;
        let mut x = code;
        for slot in poly.iter_mut().take(f) {
            *slot = x % p;
            x /= p;
        }
        if is_primitive(&poly, p) {
            return poly;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

fn eval_mod(c: &[u64], a: u64, p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, x| (acc * a + x) % p)
}

/// Validates the extension polynomial: monic, and reducing to `(u - a)^e`
/// modulo `p` for some `a` in `F_p`.  Returns the polynomial reduced mod
/// `p^n` and the residue `a`.
pub(crate) fn check_extension(minpoly: &[i64], p: u64, m: u64) -> Result<(Vec<u64>, u64), RingError> {
    let mut g: Vec<i64> = minpoly.to_vec();
    while g.len() > 1 && *g.last().unwrap() == 0 {
        g.pop();
    }
    if g.len() < 2 {
        return Err(RingError::InvalidParameter("extension polynomial must have degree at least 1".into()));
    }
    if *g.last().unwrap() != 1 {
        return Err(RingError::InvalidParameter("extension polynomial must be monic".into()));
    }
    let e = g.len() - 1;
    let gm: Vec<u64> = g.iter().map(|c| c.rem_euclid(m as i64) as u64).collect();
    let gp: Vec<u64> = g.iter().map(|c| c.rem_euclid(p as i64) as u64).collect();
    let roots: Vec<u64> = (0..p).filter(|a| eval_mod(&gp, *a, p) == 0).collect();
    match roots.len() {
        0 => Err(RingError::UnsupportedExtension(
            "the extension polynomial has no root modulo p; only totally ramified extensions are supported".into(),
        )),
        1 => {
            let a = roots[0];
            // expand (u - a)^e mod p
            let mut expected = vec![1u64];
            for _ in 0..e {
                let mut next = vec![0u64; expected.len() + 1];
                for (i, c) in expected.iter().enumerate() {
                    next[i + 1] = (next[i + 1] + c) % p;
                    next[i] = (next[i] + p - a * c % p) % p;
                }
                expected = next;
            }
            if expected != gp {
                return Err(RingError::NotLocal(format!(
                    "reduction mod {p} has a factor coprime to (u - {a})"
                )));
            }
            Ok((gm, a))
        }
        _ => Err(RingError::NotLocal(format!("reduction mod {p} has distinct roots {roots:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_polys() {
        assert_eq!(canonical_primitive_poly(3, 2), vec![2, 1, 1]);
        assert_eq!(canonical_primitive_poly(7, 1), vec![4, 1]);
        assert_eq!(canonical_primitive_poly(5, 1), vec![3, 1]);
        assert!(is_primitive(&canonical_primitive_poly(5, 2), 5));
    }

    #[test]
    fn extension_checks() {
        assert_eq!(check_extension(&[-3, 0, 0, 1], 3, 9).unwrap(), (vec![6, 0, 0, 1], 0));
        assert!(matches!(check_extension(&[2, 0, 1], 3, 3), Err(RingError::NotLocal(_)) | Err(RingError::UnsupportedExtension(_))));
        assert!(matches!(check_extension(&[1, 0, 1], 3, 3), Err(RingError::UnsupportedExtension(_))));
        assert_eq!(check_extension(&[1, 2, 1], 3, 3).unwrap().1, 2);
    }

    #[test]
    fn format() {
        assert_eq!(format_poly(&[-3, 0, 0, 1], "u"), "u^3 - 3");
    }
}
