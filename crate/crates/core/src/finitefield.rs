//! Exact arithmetic in finite fields GF(p^e) at desk scale (q <= 32 in
//! practice, nothing here assumes more than u64 headroom).
//!
//! Elements are polynomial residues modulo a fixed monic irreducible
//! polynomial. The modulus for a given q is deterministic: the
//! lexicographically smallest monic irreducible of degree e over GF(p),
//! comparing coefficient sequences low degree first.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero in GF({0})")]
    DivisionByZero(u64),
}

/// Decomposes `n` as `p^e` with `p` prime, by trial division.
/// Returns `None` for `n = 1` and for numbers with more than one prime factor.
pub fn is_prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut m = n;
            let mut e = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            return if m == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((n, 1)) // n itself is prime
}

/// Least prime power `q >= k`, returned together with `ell = q - k`.
pub fn smallest_prime_power_at_least(k: u64) -> (u64, u64) {
    assert!(k >= 2, "k must be at least 2");
    let mut q = k;
    loop {
        if is_prime_power(q).is_some() {
            return (q, q - k);
        }
        q += 1;
    }
}

/// A finite field GF(q) = GF(p^e), with its reduction modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    e: u32,
    q: u64,
    /// Monic modulus of degree e, coefficients low degree first (length e+1).
    /// For prime fields this is the polynomial x and is never used.
    modulus: Vec<u64>,
}

/// An element of GF(p^e): e coefficients in [0, p), low degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl FieldSpec {
    /// Builds GF(q), selecting the deterministic modulus.
    pub fn new(q: u64) -> Result<FieldSpec, FieldError> {
        let (p, e) = is_prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, e)
        };
        Ok(FieldSpec { p, e, q, modulus })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.e as usize] }
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// The i-th element in the canonical enumeration, 0 <= i < q.
    /// Coefficients are the base-p digits of i, low digit = low degree.
    pub fn element(&self, index: u64) -> FieldElement {
        assert!(index < self.q, "element index {index} out of range for GF({})", self.q);
        let mut coeffs = vec![0; self.e as usize];
        let mut rem = index;
        for c in coeffs.iter_mut() {
            *c = rem % self.p;
            rem /= self.p;
        }
        FieldElement { coeffs }
    }

    /// Inverse of `element`: the canonical index of `a`.
    pub fn index_of(&self, a: &FieldElement) -> u64 {
        let mut idx = 0u64;
        for &c in a.coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    /// Iterates all q elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|i| self.element(i))
    }

    fn check(&self, a: &FieldElement) {
        debug_assert_eq!(a.coeffs.len(), self.e as usize);
        debug_assert!(a.coeffs.iter().all(|&c| c < self.p));
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.check(a);
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let e = self.e as usize;
        // schoolbook product then reduction by the monic modulus
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        for d in (e..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (k, &m) in self.modulus.iter().enumerate().take(self.e as usize) {
                let idx = d - e + k;
                prod[idx] = (prod[idx] + c * (self.p - m)) % self.p;
            }
        }
        prod.truncate(e);
        FieldElement { coeffs: prod }
    }

    /// Multiplicative inverse via Fermat: a^(q-2). Errors on zero.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a);
        if a.is_zero() {
            return Err(FieldError::DivisionByZero(self.q));
        }
        let mut result = self.one();
        let mut base = a.clone();
        let mut exp = self.q - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        Ok(result)
    }
}

/// Lexicographically smallest monic irreducible of degree e over GF(p),
/// coefficient sequences compared low degree first.
fn smallest_irreducible(p: u64, e: u32) -> Vec<u64> {
    let e = e as usize;
    let count = p.pow(e as u32);
    for idx in 0..count {
        // low-degree coefficient is the most significant comparison key
        let mut coeffs = vec![0u64; e + 1];
        coeffs[e] = 1;
        let mut rem = idx;
        for d in (0..e).rev() {
            coeffs[d] = rem % p;
            rem /= p;
        }
        if is_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of degree {e} exists over GF({p})")
}

/// Irreducibility by exhaustive trial division: no monic divisor of
/// degree 1..=e/2.
fn is_irreducible(p: u64, poly: &[u64]) -> bool {
    let e = poly.len() - 1;
    if e == 1 {
        return true;
    }
    for d in 1..=e / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut div = vec![0u64; d + 1];
            div[d] = 1;
            let mut rem = idx;
            for c in div.iter_mut().take(d) {
                *c = rem % p;
                rem /= p;
            }
            if poly_rem_is_zero(p, poly, &div) {
                return false;
            }
        }
    }
    true
}

/// True if `divisor` (monic) divides `poly` over GF(p).
fn poly_rem_is_zero(p: u64, poly: &[u64], divisor: &[u64]) -> bool {
    let mut rem: Vec<u64> = poly.to_vec();
    let dd = divisor.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        let deg = rem.len() - 1;
        if lead != 0 {
            for (k, &m) in divisor.iter().enumerate().take(dd) {
                let idx = deg - dd + k;
                rem[idx] = (rem[idx] + lead * (p - m)) % p;
            }
        }
        rem.pop();
        while rem.len() > dd && *rem.last().unwrap() == 0 {
            rem.pop();
        }
    }
    rem.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(is_prime_power(8), Some((2, 3)));
        assert_eq!(is_prime_power(12), None);
        assert_eq!(is_prime_power(49), Some((7, 2)));
        assert_eq!(is_prime_power(1), None);
        assert_eq!(is_prime_power(2), Some((2, 1)));
    }

    #[test]
    fn prime_power_matches_full_factorization() {
        // independent oracle: full trial-division factorization
        fn factor(mut n: u64) -> Vec<(u64, u32)> {
            let mut out = vec![];
            let mut p = 2;
            while p * p <= n {
                if n.is_multiple_of(p) {
                    let mut e = 0;
                    while n.is_multiple_of(p) {
                        n /= p;
                        e += 1;
                    }
                    out.push((p, e));
                }
                p += 1;
            }
            if n > 1 {
                out.push((n, 1));
            }
            out
        }
        for n in 2..2000u64 {
            let f = factor(n);
            let expect = if f.len() == 1 { Some(f[0]) } else { None };
            assert_eq!(is_prime_power(n), expect, "n = {n}");
        }
    }

    #[test]
    fn smallest_prime_power_search() {
        assert_eq!(smallest_prime_power_at_least(7), (7, 0));
        assert_eq!(smallest_prime_power_at_least(6), (7, 1));
        assert_eq!(smallest_prime_power_at_least(22), (23, 1));
        // ell = 0 exactly when k is a prime power
        for k in 2..200 {
            let (_, ell) = smallest_prime_power_at_least(k);
            assert_eq!(ell == 0, is_prime_power(k).is_some(), "k = {k}");
        }
    }

    #[test]
    fn gf4_modulus_and_arithmetic() {
        let f = FieldSpec::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]); // x^2 + x + 1
        let x = f.element(2); // coeffs [0, 1]
        let xx = f.mul(&x, &x);
        assert_eq!(xx, f.element(3)); // x^2 = x + 1
        for a in f.elements() {
            assert!(f.add(&a, &a).is_zero()); // characteristic 2
        }
    }

    #[test]
    fn gf7_inverse() {
        let f = FieldSpec::new(7).unwrap();
        let three = f.element(3);
        assert_eq!(f.inv(&three).unwrap(), f.element(5));
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn not_prime_power_rejected() {
        assert_eq!(FieldSpec::new(6).unwrap_err(), FieldError::NotPrimePower(6));
        assert_eq!(
            FieldSpec::new(7).unwrap().inv(&FieldSpec::new(7).unwrap().zero()),
            Err(FieldError::DivisionByZero(7))
        );
    }

    #[test]
    fn deterministic_moduli() {
        assert_eq!(FieldSpec::new(8).unwrap().modulus(), &[1, 0, 1, 1]); // x^3 + x^2 + 1
        assert_eq!(FieldSpec::new(9).unwrap().modulus(), &[1, 0, 1]); // x^2 + 1
        assert_eq!(FieldSpec::new(16).unwrap().modulus().len(), 5);
        assert_eq!(FieldSpec::new(27).unwrap().modulus().len(), 4);
    }

    #[test]
    fn field_axioms_exhaustive_small_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FieldSpec::new(q).unwrap();
            let all: Vec<_> = f.elements().collect();
            for a in &all {
                // inverses
                assert_eq!(f.add(a, &f.neg(a)), f.zero());
                if !a.is_zero() {
                    let ai = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, &ai), f.one(), "inv failed in GF({q})");
                }
                for b in &all {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in &all {
                        assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
                        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, &f.add(b, c)),
                            f.add(&f.mul(a, b), &f.mul(a, c)),
                            "distributivity failed in GF({q})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn element_index_round_trip() {
        for q in [4u64, 9, 16, 25] {
            let f = FieldSpec::new(q).unwrap();
            for i in 0..q {
                assert_eq!(f.index_of(&f.element(i)), i);
            }
        }
    }
}
