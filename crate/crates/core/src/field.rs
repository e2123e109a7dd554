//! Arithmetic in GF(p^n) with a dense coefficient-vector representation.
//!
//! Elements are residues of polynomials over Z_p modulo a fixed monic
//! irreducible polynomial. The modulus is the lexicographically smallest
//! monic irreducible of the requested degree (coefficients compared
//! constant-term first), so every table derived from a field is reproducible.

use thiserror::Error;

/// Largest field order accepted by [`FieldSpec::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{n} exceeds {MAX_FIELD_ORDER}")]
    TooLarge { p: u32, n: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field")]
    ForeignElement,
}

/// Trial-division primality test; field characteristics are tiny.
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

/// Splits `q` as `p^e` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

/// An element of GF(p^n): `coeffs[i]` is the coefficient of `x^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }
}

/// The field GF(p^n) together with its defining modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    /// Monic, constant term first, length `n + 1`.
    modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn new(p: u32, n: u32) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NonPrime(p));
        }
        if n == 0 {
            return Err(FieldError::ZeroDegree);
        }
        match (p as u64).checked_pow(n) {
            Some(q) if q <= MAX_FIELD_ORDER => {}
            _ => return Err(FieldError::TooLarge { p, n }),
        }
        let modulus = smallest_irreducible(p, n as usize);
        Ok(Self { p, n, modulus })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.n)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.n as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = 1;
        e
    }

    /// The residue class of `x`; for `n = 1` this is the integer `x mod p`
    /// reduced through the modulus.
    pub fn generator(&self) -> FieldElement {
        let mut poly = vec![0, 1];
        self.reduce(&mut poly);
        poly.resize(self.n as usize, 0);
        FieldElement { coeffs: poly }
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::ForeignElement);
        }
        Ok(FieldElement {
            coeffs: coeffs.to_vec(),
        })
    }

    /// Base-p digits of `index`, least significant first.
    pub fn from_index(&self, mut index: usize) -> FieldElement {
        let mut coeffs = Vec::with_capacity(self.n as usize);
        for _ in 0..self.n {
            coeffs.push((index % self.p as usize) as u32);
            index /= self.p as usize;
        }
        FieldElement { coeffs }
    }

    pub fn index_of(&self, e: &FieldElement) -> usize {
        e.coeffs
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(|i| self.from_index(i))
    }

    pub fn contains(&self, e: &FieldElement) -> bool {
        e.coeffs.len() == self.n as usize && e.coeffs.iter().all(|&c| c < self.p)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let n = self.n as usize;
        let p = self.p as u64;
        let mut prod = vec![0u32; 2 * n - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        self.reduce(&mut prod);
        prod.resize(n, 0);
        FieldElement { coeffs: prod }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if a.coeffs.iter().all(|&c| c == 0) {
            return Err(FieldError::DivisionByZero);
        }
        // a^(q-2) = a^(-1) in the multiplicative group of order q-1.
        Ok(self.pow(a, self.order() as u64 - 2))
    }

    /// The Frobenius map x -> x^p.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    /// Reduces a coefficient vector in place modulo the (monic) modulus.
    fn reduce(&self, poly: &mut Vec<u32>) {
        let n = self.n as usize;
        let p = self.p as u64;
        while poly.len() > n {
            let lead = poly.pop().unwrap_or(0) as u64;
            if lead == 0 {
                continue;
            }
            let shift = poly.len() - n;
            for (k, &m) in self.modulus[..n].iter().enumerate() {
                let sub = lead * m as u64 % p;
                poly[shift + k] = ((poly[shift + k] as u64 + p - sub) % p) as u32;
            }
        }
    }
}

/// Index-addressed operation tables for a field of order `q`.
///
/// Matrix-group constructions do millions of field operations; table lookups
/// keep those loops cheap while [`FieldSpec`] stays the source of truth.
#[derive(Debug, Clone)]
pub struct FieldTables {
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    frob: Vec<u32>,
}

impl FieldTables {
    pub fn new(spec: &FieldSpec) -> Self {
        let q = spec.order();
        let elems: Vec<FieldElement> = spec.elements().collect();
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                add[i * q + j] = spec.index_of(&spec.add(a, b)) as u32;
                mul[i * q + j] = spec.index_of(&spec.mul(a, b)) as u32;
            }
        }
        let neg = elems
            .iter()
            .map(|a| spec.index_of(&spec.neg(a)) as u32)
            .collect();
        let frob = elems
            .iter()
            .map(|a| spec.index_of(&spec.frobenius(a)) as u32)
            .collect();
        Self {
            q,
            add,
            mul,
            neg,
            frob,
        }
    }

    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn frobenius(&self, a: usize) -> usize {
        self.frob[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }
}

fn poly_degree(poly: &[u32]) -> Option<usize> {
    poly.iter().rposition(|&c| c != 0)
}

/// Remainder of `num` divided by the monic polynomial `den` over Z_p.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut r = num.to_vec();
    let dd = poly_degree(den).expect("divisor is nonzero");
    while let Some(dr) = poly_degree(&r) {
        if dr < dd {
            break;
        }
        let lead = r[dr] as u64;
        let shift = dr - dd;
        for (k, &c) in den[..=dd].iter().enumerate() {
            let sub = lead * c as u64 % p;
            r[shift + k] = ((r[shift + k] as u64 + p - sub) % p) as u32;
        }
    }
    r
}

/// Monic polynomials of `degree` in lexicographic order, constant term
/// compared first.
fn monics(p: u32, degree: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as usize).pow(degree as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = vec![0u32; degree + 1];
        // The constant term is the most significant digit of `idx`.
        for k in (0..degree).rev() {
            coeffs[k] = (idx % p as usize) as u32;
            idx /= p as usize;
        }
        coeffs[degree] = 1;
        coeffs
    })
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let degree = poly.len() - 1;
    (1..=degree / 2)
        .all(|d| monics(p, d).all(|divisor| poly_degree(&poly_rem(poly, &divisor, p)).is_some()))
}

fn smallest_irreducible(p: u32, n: usize) -> Vec<u32> {
    monics(p, n)
        .find(|poly| is_irreducible(poly, p))
        .expect("an irreducible polynomial of every degree exists")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_field_is_prime_field() {
        let f = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 2);
    }

    #[test]
    fn gf4_modulus_matches_brute_force() {
        // Monic quadratics over Z_2 without a root in {0, 1} are irreducible.
        let mut irreducible: Vec<Vec<u32>> = Vec::new();
        for c0 in 0..2u32 {
            for c1 in 0..2u32 {
                let has_root = (0..2u32).any(|x| (c0 + c1 * x + x * x) % 2 == 0);
                if !has_root {
                    irreducible.push(vec![c0, c1, 1]);
                }
            }
        }
        irreducible.sort();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
        assert_eq!(FieldSpec::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert_eq!(FieldSpec::new(4, 1), Err(FieldError::NonPrime(4)));
        assert_eq!(FieldSpec::new(1, 3), Err(FieldError::NonPrime(1)));
    }

    #[test]
    fn oversized_field_rejected() {
        assert!(matches!(
            FieldSpec::new(2, 17),
            Err(FieldError::TooLarge { .. })
        ));
        assert!(FieldSpec::new(2, 16).is_ok());
    }

    #[test]
    fn gf4_x_squared() {
        let f = FieldSpec::new(2, 2).unwrap();
        let x = f.generator();
        assert_eq!(f.mul(&x, &x), f.element(&[1, 1]).unwrap());
        assert_eq!(f.frobenius(&x), f.element(&[1, 1]).unwrap());
    }

    #[test]
    fn multiplicative_identity() {
        for (p, n) in [(2, 3), (3, 2), (5, 1), (7, 2)] {
            let f = FieldSpec::new(p, n).unwrap();
            for a in f.elements() {
                assert_eq!(f.mul(&a, &f.one()), a);
            }
        }
    }

    #[test]
    fn inverse_of_zero() {
        let f = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f.inv(&f.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn inverses_and_group_order() {
        for (p, n) in [(2, 4), (3, 3), (5, 2), (13, 1)] {
            let f = FieldSpec::new(p, n).unwrap();
            let q = f.order() as u64;
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                assert_eq!(f.pow(&a, q - 1), f.one());
            }
        }
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let f = FieldSpec::new(2, 1).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius(&a), a);
        }
        let g = FieldSpec::new(3, 2).unwrap();
        assert_eq!(g.frobenius(&g.zero()), g.zero());
        assert_eq!(g.frobenius(&g.one()), g.one());
    }

    #[test]
    fn frobenius_is_a_ring_homomorphism() {
        for (p, n) in [(2, 2), (2, 3), (2, 4), (3, 2), (2, 8), (5, 2), (3, 5)] {
            let f = FieldSpec::new(p, n).unwrap();
            if f.order() > 256 {
                continue;
            }
            let elems: Vec<_> = f.elements().collect();
            for a in &elems {
                for b in &elems {
                    assert_eq!(
                        f.frobenius(&f.add(a, b)),
                        f.add(&f.frobenius(a), &f.frobenius(b))
                    );
                    assert_eq!(
                        f.frobenius(&f.mul(a, b)),
                        f.mul(&f.frobenius(a), &f.frobenius(b))
                    );
                }
            }
        }
    }

    #[test]
    fn construction_is_deterministic() {
        for (p, n) in [(2, 5), (3, 4), (7, 3)] {
            assert_eq!(FieldSpec::new(p, n), FieldSpec::new(p, n));
        }
    }

    #[test]
    fn index_round_trip_and_tables() {
        let f = FieldSpec::new(3, 2).unwrap();
        let t = FieldTables::new(&f);
        for i in 0..f.order() {
            assert_eq!(f.index_of(&f.from_index(i)), i);
            assert_eq!(t.add(i, t.neg(i)), 0);
        }
        let x = f.index_of(&f.generator());
        assert_eq!(t.mul(x, 1), x);
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
