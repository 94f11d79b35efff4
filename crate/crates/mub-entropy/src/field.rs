//! Table-driven arithmetic for the small finite fields GF(p^n) behind the
//! basis constructions, plus the Galois ring GR(4, n) that supplies the
//! fourth-root-of-unity phases needed in characteristic 2.
//!
//! Elements are indexed 0..order; the index digits in base p are the
//! coefficients of the residue polynomial (little-endian).

use crate::{Error, Result};

/// GF(p^n) with dense add/mul tables and the trace to the prime subfield.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    n: u32,
    order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    trace: Vec<u32>,
    irreducible: Vec<u32>,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

impl FiniteField {
    /// Builds GF(p^n) from a monic irreducible polynomial of degree n over
    /// GF(p), given as coefficients [c₀, c₁, …, cₙ] with cₙ = 1. For n = 1
    /// pass [0, 1] (plain mod-p arithmetic).
    pub fn new(p: u32, n: u32, irreducible: &[u32]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::ParameterOutOfRange {
                name: "p",
                value: p as f64,
                expected: "a prime",
            });
        }
        if n == 0 || irreducible.len() != n as usize + 1 || irreducible[n as usize] % p != 1 {
            return Err(Error::ParameterOutOfRange {
                name: "irreducible",
                value: irreducible.len() as f64,
                expected: "a monic polynomial of degree n",
            });
        }
        let order = (p as usize).pow(n);
        let pu = p as usize;
        let nu = n as usize;

        let digits = |mut x: usize| -> Vec<u32> {
            let mut out = vec![0u32; nu];
            for digit in out.iter_mut() {
                *digit = (x % pu) as u32;
                x /= pu;
            }
            out
        };
        let index = |coeffs: &[u32]| -> usize {
            coeffs
                .iter()
                .rev()
                .fold(0usize, |acc, &c| acc * pu + c as usize)
        };

        let mut add = vec![0u16; order * order];
        for a in 0..order {
            for b in 0..order {
                let da = digits(a);
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[a * order + b] = index(&sum) as u16;
            }
        }

        // Multiply residue polynomials, then reduce by the monic modulus.
        let mut mul = vec![0u16; order * order];
        for a in 0..order {
            let da = digits(a);
            for b in a..order {
                let db = digits(b);
                let mut prod = vec![0u32; 2 * nu];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (nu..2 * nu).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        prod[deg] = 0;
                        for (i, &fc) in irreducible.iter().enumerate().take(nu) {
                            let idx = deg - nu + i;
                            prod[idx] = (prod[idx] + c * (p - fc % p)) % p;
                        }
                    }
                }
                let v = index(&prod[..nu]) as u16;
                mul[a * order + b] = v;
                mul[b * order + a] = v;
            }
        }

        // Every nonzero element must have an inverse, otherwise the modulus
        // was reducible.
        for a in 1..order {
            let has_inverse = (1..order).any(|b| mul[a * order + b] == 1);
            if !has_inverse {
                return Err(Error::ReduciblePolynomial { p, element: a });
            }
        }

        // tr(x) = x + x^p + … + x^(p^(n−1)), landing in the prime subfield.
        let mut trace = Vec::with_capacity(order);
        for a in 0..order {
            let mut conj = a;
            let mut total = a;
            for _ in 1..nu {
                // conj ← conj^p via repeated multiplication
                let mut acc = conj;
                for _ in 1..p {
                    acc = mul[acc * order + conj] as usize;
                }
                conj = acc;
                total = add[total * order + conj] as usize;
            }
            if total >= pu {
                return Err(Error::ReduciblePolynomial { p, element: total });
            }
            trace.push(total as u32);
        }

        Ok(Self {
            p,
            n,
            order,
            add,
            mul,
            trace,
            irreducible: irreducible.to_vec(),
        })
    }

    /// GF(order) with a fixed published modulus: x²+x+1 for GF(4), x³+x+1
    /// for GF(8), x²+1 for GF(9); degree-1 moduli for primes.
    pub fn gf(order: usize) -> Result<Self> {
        match order {
            4 => Self::new(2, 2, &[1, 1, 1]),
            8 => Self::new(2, 3, &[1, 1, 0, 1]),
            9 => Self::new(3, 2, &[1, 0, 1]),
            p if p >= 2 && is_prime(p as u32) => Self::new(p as u32, 1, &[0, 1]),
            _ => Err(Error::UnsupportedDimension {
                d: order,
                reason: "not a supported field order",
            }),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn irreducible(&self) -> &[u32] {
        &self.irreducible
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    /// Trace to GF(p), as an integer in 0..p.
    #[inline]
    pub fn trace(&self, a: usize) -> u32 {
        self.trace[a]
    }
}

/// The Galois ring GR(4, n) = Z₄[t]/(f) on the Hensel lift of the GF(2^n)
/// modulus, with its Teichmüller set and the Z₄-valued trace. Characteristic
/// 2 needs these i-power phases: additive characters of GF(2^n) alone only
/// reach ±1.
#[derive(Debug, Clone)]
pub(crate) struct GaloisRing {
    n: usize,
    q: usize,
    f: Vec<u8>,
    /// Teichmüller element for each GF(2^n) residue index.
    teich: Vec<Vec<u8>>,
}

impl GaloisRing {
    /// n = 2 uses t²+t+1 (its own lift); n = 3 uses t³+2t²+t+3, the lift of
    /// t³+t+1.
    pub(crate) fn new(n: usize) -> Result<Self> {
        let f: Vec<u8> = match n {
            1 => vec![0, 1],
            2 => vec![1, 1, 1],
            3 => vec![3, 1, 2, 1],
            _ => {
                return Err(Error::UnsupportedDimension {
                    d: 1 << n,
                    reason: "no lifted modulus on file for this degree",
                })
            }
        };
        let q = 1usize << n;
        let mut ring = Self {
            n,
            q,
            f,
            teich: Vec::new(),
        };

        // Teichmüller set: 0 and the powers of t; t has order 2^n − 1.
        let mut teich = vec![Vec::new(); q];
        let mut t = vec![0u8; n];
        if n == 1 {
            t[0] = 1;
        } else {
            t[1] = 1;
        }
        let mut cur = {
            let mut one = vec![0u8; n];
            one[0] = 1;
            one
        };
        for _ in 0..q - 1 {
            let res = Self::residue_index(&cur);
            if res == 0 || !teich[res].is_empty() {
                return Err(Error::ReduciblePolynomial {
                    p: 2,
                    element: res,
                });
            }
            teich[res] = cur.clone();
            cur = ring.mul_raw(&cur, &t);
        }
        teich[0] = vec![0u8; n];
        // Closure: t^(q−1) must return to 1.
        let one_again = Self::residue_index(&cur) == 1 && cur[0] == 1 && cur[1..].iter().all(|&c| c == 0);
        if !one_again {
            return Err(Error::ReduciblePolynomial { p: 2, element: 1 });
        }
        ring.teich = teich;
        Ok(ring)
    }

    pub(crate) fn size(&self) -> usize {
        self.q
    }

    /// GF(2^n) residue of an element: its coefficients mod 2, bit-packed.
    fn residue_index(c: &[u8]) -> usize {
        c.iter()
            .enumerate()
            .fold(0usize, |acc, (i, &v)| acc | (((v & 1) as usize) << i))
    }

    pub(crate) fn teichmuller(&self, residue: usize) -> &[u8] {
        &self.teich[residue]
    }

    pub(crate) fn add(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) & 3).collect()
    }

    fn mul_raw(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let n = self.n;
        let mut prod = vec![0u32; 2 * n];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u32 * y as u32) & 3;
            }
        }
        for deg in (n..2 * n).rev() {
            let c = prod[deg];
            if c != 0 {
                prod[deg] = 0;
                for i in 0..n {
                    let sub = (4 - self.f[i] as u32 % 4) % 4;
                    prod[deg - n + i] = (prod[deg - n + i] + c * sub) & 3;
                }
            }
        }
        prod[..n].iter().map(|&v| v as u8).collect()
    }

    pub(crate) fn mul(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        self.mul_raw(a, b)
    }

    pub(crate) fn double(&self, a: &[u8]) -> Vec<u8> {
        a.iter().map(|&x| (2 * x) & 3).collect()
    }

    /// Frobenius φ(u + 2v) = u² + 2v² on the 2-adic decomposition.
    fn frobenius(&self, c: &[u8]) -> Vec<u8> {
        let u = self.teich[Self::residue_index(c)].clone();
        let diff: Vec<u8> = c.iter().zip(&u).map(|(&x, &y)| (4 + x - y) & 3).collect();
        debug_assert!(diff.iter().all(|&x| x % 2 == 0));
        let half: Vec<u8> = diff.iter().map(|&x| x / 2).collect();
        let v = self.teich[Self::residue_index(&half)].clone();
        let u2 = self.mul_raw(&u, &u);
        let v2 = self.mul_raw(&v, &v);
        self.add(&u2, &self.double(&v2))
    }

    /// Ring trace Tr(c) = Σ φʲ(c) ∈ Z₄.
    pub(crate) fn trace_z4(&self, c: &[u8]) -> u8 {
        let mut conj = c.to_vec();
        let mut total = c.to_vec();
        for _ in 1..self.n {
            conj = self.frobenius(&conj);
            total = self.add(&total, &conj);
        }
        debug_assert!(
            total[1..].iter().all(|&x| x == 0),
            "trace did not land in Z4"
        );
        total[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_supported_fields() -> Vec<FiniteField> {
        [2, 3, 4, 5, 7, 8, 9]
            .iter()
            .map(|&q| FiniteField::gf(q).unwrap())
            .collect()
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in all_supported_fields() {
            let q = f.order();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.mul(a, 0), 0);
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "distributivity fails in GF({q})"
                        );
                    }
                }
            }
            // multiplicative inverses
            for a in 1..q {
                assert!((1..q).any(|b| f.mul(a, b) == 1), "no inverse in GF({q})");
            }
        }
    }

    #[test]
    fn trace_is_additive_and_linear() {
        for f in all_supported_fields() {
            let q = f.order();
            let p = f.characteristic();
            for a in 0..q {
                assert!(f.trace(a) < p);
                for b in 0..q {
                    assert_eq!(
                        f.trace(f.add(a, b)),
                        (f.trace(a) + f.trace(b)) % p,
                        "trace not additive in GF({q})"
                    );
                }
                for c in 0..p as usize {
                    assert_eq!(
                        f.trace(f.mul(c, a)),
                        (c as u32 * f.trace(a)) % p,
                        "trace not GF(p)-linear in GF({q})"
                    );
                }
            }
        }
    }

    #[test]
    fn trace_is_onto_prime_subfield() {
        // A nondegenerate trace takes every value in GF(p).
        for f in all_supported_fields() {
            let p = f.characteristic();
            for target in 0..p {
                assert!(
                    (0..f.order()).any(|a| f.trace(a) == target),
                    "trace misses {target} in GF({})",
                    f.order()
                );
            }
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x² + 1 is reducible over GF(2).
        assert!(matches!(
            FiniteField::new(2, 2, &[1, 0, 1]),
            Err(Error::ReduciblePolynomial { .. })
        ));
    }

    #[test]
    fn galois_ring_teichmuller_covers_residues() {
        for n in [1usize, 2, 3] {
            let r = GaloisRing::new(n).unwrap();
            for res in 0..r.size() {
                let t = r.teichmuller(res);
                assert_eq!(GaloisRing::residue_index(t), res);
            }
        }
    }

    #[test]
    fn galois_ring_trace_fixed_by_frobenius() {
        for n in [2usize, 3] {
            let r = GaloisRing::new(n).unwrap();
            // Tr(c) = Tr(φ(c)) for every element; enumerate all 4^n.
            let q4 = 4usize.pow(n as u32);
            for idx in 0..q4 {
                let mut c = vec![0u8; n];
                let mut x = idx;
                for digit in c.iter_mut() {
                    *digit = (x % 4) as u8;
                    x /= 4;
                }
                let tr = r.trace_z4(&c);
                let tr_frob = r.trace_z4(&r.frobenius(&c));
                assert_eq!(tr, tr_frob, "n={n} idx={idx}");
            }
        }
    }

    #[test]
    fn galois_ring_trace_additive() {
        let r = GaloisRing::new(2).unwrap();
        for a_idx in 0..16usize {
            for b_idx in 0..16usize {
                let a = vec![(a_idx % 4) as u8, (a_idx / 4) as u8];
                let b = vec![(b_idx % 4) as u8, (b_idx / 4) as u8];
                let lhs = r.trace_z4(&r.add(&a, &b));
                let rhs = (r.trace_z4(&a) + r.trace_z4(&b)) & 3;
                assert_eq!(lhs, rhs);
            }
        }
    }
}
