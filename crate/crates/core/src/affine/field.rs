//! Arithmetic in the finite field `F_{p^k}` for tiny `p^k`, with elements
//! labeled `0..p^k-1` by their little-endian coefficient vectors over the
//! polynomial basis. The labeling agrees with the vector-space labeling of
//! the ambient module, so field maps act on the same point set.

/// A small finite field with a deterministically chosen irreducible modulus
/// (the one with the smallest coefficient label).
#[derive(Debug, Clone)]
pub struct SmallField {
    p: u64,
    k: u32,
    size: usize,
    /// Coefficients `c_0..c_{k-1}` of the monic modulus `x^k + sum c_i x^i`.
    modulus: Vec<u64>,
}

impl SmallField {
    pub fn new(p: u64, k: u32) -> Self {
        let size = (p as usize).pow(k);
        let modulus = smallest_irreducible(p, k);
        SmallField {
            p,
            k,
            size,
            modulus,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn digits(&self, x: usize) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut x = x as u64;
        for _ in 0..self.k {
            v.push(x % self.p);
            x /= self.p;
        }
        v
    }

    fn label(&self, v: &[u64]) -> usize {
        let mut x = 0u64;
        for &c in v.iter().rev() {
            x = x * self.p + c;
        }
        x as usize
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (va, vb) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = va.iter().zip(&vb).map(|(&x, &y)| (x + y) % self.p).collect();
        self.label(&sum)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (va, vb) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        // Convolution, then reduction by the monic modulus.
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in va.iter().enumerate() {
            for (j, &y) in vb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c != 0 {
                prod[i] = 0;
                for (j, &m) in self.modulus.iter().enumerate() {
                    let idx = i - k + j;
                    prod[idx] = (prod[idx] + (self.p - m) * c) % self.p;
                }
            }
        }
        self.label(&prod[..k])
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut out = 1usize;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = self.mul(out, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        out
    }

    fn multiplicative_order(&self, a: usize) -> usize {
        assert!(a != 0);
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Smallest label generating the multiplicative group.
    pub fn primitive_element(&self) -> usize {
        (1..self.size)
            .find(|&g| self.multiplicative_order(g) == self.size - 1)
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

/// Coefficients of the lexicographically smallest monic irreducible
/// polynomial of degree `k` over `F_p`.
fn smallest_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let count = (p as usize).pow(k as u32);
    'candidate: for m in 0..count {
        let mut coeffs = Vec::with_capacity(k);
        let mut x = m as u64;
        for _ in 0..k {
            coeffs.push(x % p);
            x /= p;
        }
        let mut poly = coeffs.clone();
        poly.push(1); // monic of degree k
        for deg in 1..=k / 2 {
            for d in monic_of_degree(p, deg) {
                if divides(&d, &poly, p) {
                    continue 'candidate;
                }
            }
        }
        if k >= 1 && poly_is_constant_multiple(&poly) {
            continue;
        }
        return coeffs;
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

fn poly_is_constant_multiple(poly: &[u64]) -> bool {
    // Degree-k monic with k >= 1 is never constant; kept for clarity.
    poly.len() <= 1
}

fn monic_of_degree(p: u64, deg: usize) -> Vec<Vec<u64>> {
    let count = (p as usize).pow(deg as u32);
    (0..count)
        .map(|m| {
            let mut c = Vec::with_capacity(deg + 1);
            let mut x = m as u64;
            for _ in 0..deg {
                c.push(x % p);
                x /= p;
            }
            c.push(1);
            c
        })
        .collect()
}

/// Whether `d` divides `poly` over `F_p` (both with leading coefficient 1).
fn divides(d: &[u64], poly: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = poly.to_vec();
    while rem.len() >= d.len() {
        let lead = *rem.last().expect("nonempty");
        if lead != 0 {
            let shift = rem.len() - d.len();
            for (i, &c) in d.iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + (p - c % p) * lead) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f8_arithmetic() {
        let f = SmallField::new(2, 3);
        assert_eq!(f.size(), 8);
        // x * x = x^2, labels 2 * 2 = 4.
        assert_eq!(f.mul(2, 2), 4);
        assert_eq!(f.add(3, 5), 6);
        // Every nonzero element has order dividing 7 (prime), so all are
        // primitive.
        assert_eq!(f.primitive_element(), 2);
        for a in 1..8 {
            assert_eq!(f.pow(a, 7), 1);
        }
    }

    #[test]
    fn f9_multiplicative_group_is_cyclic_of_order_eight() {
        let f = SmallField::new(3, 2);
        let g = f.primitive_element();
        let mut seen = std::collections::BTreeSet::new();
        let mut x = 1;
        for _ in 0..8 {
            x = f.mul(x, g);
            seen.insert(x);
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn f16_frobenius_is_an_automorphism() {
        let f = SmallField::new(2, 4);
        for a in 0..16 {
            for b in 0..16 {
                assert_eq!(
                    f.pow(f.mul(a, b), 2),
                    f.mul(f.pow(a, 2), f.pow(b, 2))
                );
                assert_eq!(
                    f.pow(f.add(a, b), 2),
                    f.add(f.pow(a, 2), f.pow(b, 2))
                );
            }
        }
    }

    #[test]
    fn prime_field_is_integers_mod_p() {
        let f = SmallField::new(7, 1);
        for a in 0..7usize {
            for b in 0..7usize {
                assert_eq!(f.add(a, b), (a + b) % 7);
                assert_eq!(f.mul(a, b), (a * b) % 7);
            }
        }
    }
}
