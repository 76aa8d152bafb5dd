//! Finite fields GF(p^n) for small odd (and even) characteristic, with
//! discrete-log tables, traces, and a built-in table of standard moduli.

use crate::error::{Error, Result};
use crate::MAX_DOMAIN;

/// A validated prime characteristic in the supported range `2..=13`.
///
/// The upper bound matches the truth-table digit alphabet (`0`-`9`, `a`-`c`),
/// which can encode residues modulo primes up to 13.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeModulus {
    p: u8,
}

impl PrimeModulus {
    pub fn new(p: u32) -> Result<Self> {
        let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !prime {
            return Err(Error::NotPrime(p));
        }
        if p > 13 {
            return Err(Error::UnsupportedPrime(p));
        }
        Ok(PrimeModulus { p: p as u8 })
    }

    pub fn get(self) -> u8 {
        self.p
    }
}

/// Standard (Conway) modulus polynomials, little-endian with the leading
/// coefficient of `x^n` included. Every entry is order-verified at field
/// construction time, so a non-primitive entry cannot slip through silently.
static STANDARD_MODULI: &[((u8, usize), &[u8])] = &[
    ((2, 1), &[1, 1]),
    ((2, 2), &[1, 1, 1]),
    ((2, 3), &[1, 1, 0, 1]),
    ((2, 4), &[1, 1, 0, 0, 1]),
    ((2, 5), &[1, 0, 1, 0, 0, 1]),
    ((2, 6), &[1, 1, 0, 1, 1, 0, 1]),
    ((2, 7), &[1, 1, 0, 0, 0, 0, 0, 1]),
    ((2, 8), &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    ((2, 9), &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    ((2, 10), &[1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1]),
    ((3, 1), &[1, 1]),
    ((3, 2), &[2, 2, 1]),
    ((3, 3), &[1, 2, 0, 1]),
    ((3, 4), &[2, 0, 0, 2, 1]),
    ((3, 5), &[1, 2, 0, 0, 0, 1]),
    ((3, 6), &[2, 2, 1, 0, 2, 0, 1]),
    ((3, 7), &[1, 0, 2, 0, 0, 0, 0, 1]),
    ((3, 8), &[2, 2, 2, 0, 1, 2, 0, 0, 1]),
    ((3, 9), &[1, 1, 2, 2, 0, 0, 0, 0, 0, 1]),
    ((3, 10), &[2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1]),
    ((5, 1), &[3, 1]),
    ((5, 2), &[2, 4, 1]),
    ((5, 3), &[3, 3, 0, 1]),
    ((5, 4), &[2, 4, 4, 0, 1]),
    ((7, 1), &[4, 1]),
    ((7, 2), &[3, 6, 1]),
    ((11, 1), &[9, 1]),
    ((11, 2), &[2, 7, 1]),
    ((13, 1), &[11, 1]),
    ((13, 2), &[2, 12, 1]),
];

/// Looks up the built-in modulus for GF(p^n), little-endian including the
/// leading 1, or `None` when no entry is available for this pair.
pub fn conway_polynomial(p: u32, n: usize) -> Option<&'static [u8]> {
    STANDARD_MODULI
        .iter()
        .find(|((pp, nn), _)| u32::from(*pp) == p && *nn == n)
        .map(|(_, m)| *m)
}

/// An element of GF(p^n): its coefficient vector over F_p with respect to the
/// polynomial basis `1, g, ..., g^(n-1)`, where `g` is the residue of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    coeffs: Vec<u8>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }
}

const DLOG_NONE: u32 = u32::MAX;

/// GF(p^n) realized as F_p[x] modulo a primitive polynomial, with full
/// power/discrete-log tables and a precomputed trace table.
///
/// Elements are indexed by `Σ c_j p^j` for coefficient vector `(c_0..c_{n-1})`,
/// so field indices coincide with the little-endian point encoding of F_p^n.
#[derive(Debug, Clone)]
pub struct ExtField {
    p: u8,
    n: usize,
    modulus: Vec<u8>,
    size: u32,
    /// powers[e] = index of g^e for e in 0..p^n-1
    powers: Vec<u32>,
    /// dlog[idx] = e with g^e = idx, DLOG_NONE for idx = 0
    dlog: Vec<u32>,
    /// trace of each basis element g^j
    trace_basis: Vec<u8>,
    /// trace of every element, by index
    trace_table: Vec<u8>,
}

impl ExtField {
    /// Builds GF(p^n) with the built-in standard modulus.
    pub fn new(p: u32, n: usize) -> Result<ExtField> {
        let pm = PrimeModulus::new(p)?;
        if n == 0 {
            return Err(Error::BadDimension { what: "extension degree", value: 0, limit: 1 });
        }
        let m = conway_polynomial(p, n).ok_or(Error::UnsupportedField { p, n })?;
        Self::build(pm, n, m)
    }

    /// Builds GF(p^n) with a caller-supplied monic modulus polynomial,
    /// little-endian including the leading 1. The modulus must be primitive;
    /// irreducibility is implied by (and checked through) primitivity.
    pub fn with_modulus(p: u32, n: usize, modulus: &[u8]) -> Result<ExtField> {
        let pm = PrimeModulus::new(p)?;
        Self::build(pm, n, modulus)
    }

    fn build(pm: PrimeModulus, n: usize, modulus: &[u8]) -> Result<ExtField> {
        let p = pm.get();
        if n == 0 {
            return Err(Error::BadDimension { what: "extension degree", value: 0, limit: 1 });
        }
        let mut size: u64 = 1;
        for _ in 0..n {
            size *= u64::from(p);
            if size > u64::from(MAX_DOMAIN) {
                return Err(Error::DomainTooLarge { p: u32::from(p), n });
            }
        }
        let size = size as u32;

        if modulus.len() != n + 1 {
            return Err(Error::BadModulus(format!(
                "expected {} coefficients for degree {}, got {}",
                n + 1,
                n,
                modulus.len()
            )));
        }
        if modulus[n] != 1 {
            return Err(Error::BadModulus("leading coefficient must be 1".into()));
        }
        if let Some(&d) = modulus.iter().find(|&&d| d >= p) {
            return Err(Error::BadModulus(format!("coefficient {d} is not a residue modulo {p}")));
        }
        if modulus[0] == 0 {
            // x divides the modulus
            return Err(Error::ReducibleModulus);
        }

        let mut field = ExtField {
            p,
            n,
            modulus: modulus.to_vec(),
            size,
            powers: Vec::new(),
            dlog: Vec::new(),
            trace_basis: Vec::new(),
            trace_table: Vec::new(),
        };

        // Walk g^0, g^1, ... by repeated multiplication with x. The residue of
        // x is a unit because modulus[0] != 0, so the walk is purely periodic.
        // Hitting index 1 before step p^n - 1 means the order of x is too
        // small: the modulus is either reducible or irreducible-but-imprimitive.
        // Completing all p^n - 1 steps certifies in one pass that the quotient
        // ring is a field (every nonzero element is a power of x, hence a unit)
        // and that x generates its multiplicative group.
        let r = (size - 1) as usize;
        let mut powers = vec![0u32; r];
        let mut dlog = vec![DLOG_NONE; size as usize];
        let mut cur = vec![0u8; n];
        cur[0] = 1;
        powers[0] = 1;
        dlog[1] = 0;
        for (e, slot) in powers.iter_mut().enumerate().skip(1) {
            field.mul_by_x(&mut cur);
            let idx = field.encode(&cur);
            if idx == 1 || dlog[idx as usize] != DLOG_NONE {
                return Err(Error::NotPrimitive);
            }
            *slot = idx;
            dlog[idx as usize] = e as u32;
        }
        field.mul_by_x(&mut cur);
        if field.encode(&cur) != 1 {
            return Err(Error::NotPrimitive);
        }
        field.powers = powers;
        field.dlog = dlog;

        // Trace of g^j as the sum of its n conjugates g^(j p^i). The result is
        // guaranteed to lie in the prime field now that the ring is certified
        // to be one.
        let mut trace_basis = vec![0u8; n];
        for (j, tb) in trace_basis.iter_mut().enumerate() {
            let mut acc = vec![0u32; n];
            let mut e = j as u64;
            for _ in 0..n {
                let idx = field.powers[(e % r as u64) as usize];
                let mut rem = idx;
                for a in acc.iter_mut() {
                    *a += rem % u32::from(p);
                    rem /= u32::from(p);
                }
                e = (e * u64::from(p)) % r as u64;
            }
            for (k, a) in acc.iter().enumerate() {
                let digit = (a % u32::from(p)) as u8;
                if k == 0 {
                    *tb = digit;
                } else {
                    assert_eq!(digit, 0, "trace left the prime field");
                }
            }
        }
        field.trace_basis = trace_basis;

        let mut trace_table = vec![0u8; size as usize];
        for (idx, t) in trace_table.iter_mut().enumerate() {
            let mut rem = idx as u32;
            let mut acc = 0u32;
            for &tb in &field.trace_basis {
                acc += (rem % u32::from(p)) * u32::from(tb);
                rem /= u32::from(p);
            }
            *t = (acc % u32::from(p)) as u8;
        }
        field.trace_table = trace_table;

        Ok(field)
    }

    pub fn p(&self) -> u32 {
        u32::from(self.p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of elements, p^n.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { coeffs: vec![0; self.n] }
    }

    pub fn one(&self) -> FieldElem {
        let mut coeffs = vec![0; self.n];
        coeffs[0] = 1;
        FieldElem { coeffs }
    }

    /// The fixed primitive element g (the residue of x for n >= 2).
    pub fn generator(&self) -> FieldElem {
        self.elem_from_index(self.powers[1 % self.powers.len()])
    }

    /// g^e, with the exponent reduced modulo p^n - 1.
    pub fn generator_power(&self, e: u64) -> FieldElem {
        self.elem_from_index(self.power_index(e))
    }

    /// Multiplies the coefficient vector by the residue of x, in place.
    fn mul_by_x(&self, c: &mut [u8]) {
        let p = u32::from(self.p);
        let top = u32::from(c[self.n - 1]);
        for j in (1..self.n).rev() {
            c[j] = c[j - 1];
        }
        c[0] = 0;
        if top != 0 {
            let factor = p - top;
            for (j, cj) in c.iter_mut().enumerate() {
                let m = u32::from(self.modulus[j]);
                if m != 0 {
                    *cj = ((u32::from(*cj) + factor * m) % p) as u8;
                }
            }
        }
    }

    fn encode(&self, coeffs: &[u8]) -> u32 {
        let mut idx = 0u32;
        for &c in coeffs.iter().rev() {
            idx = idx * u32::from(self.p) + u32::from(c);
        }
        idx
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        assert_eq!(a.coeffs.len(), self.n);
        assert_eq!(b.coeffs.len(), self.n);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElem { coeffs }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        assert_eq!(a.coeffs.len(), self.n);
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElem { coeffs }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        assert_eq!(a.coeffs.len(), self.n);
        assert_eq!(b.coeffs.len(), self.n);
        let n = self.n;
        let p = u32::from(self.p);
        let mut prod = vec![0u32; 2 * n - 1];
        for i in 0..n {
            for j in 0..n {
                prod[i + j] += u32::from(a.coeffs[i]) * u32::from(b.coeffs[j]);
            }
        }
        // Fold x^(n+t) = -sum_j m_j x^(j+t) from the top down.
        for t in (n..2 * n - 1).rev() {
            let c = prod[t] % p;
            if c != 0 {
                let factor = p - c;
                for j in 0..n {
                    let m = u32::from(self.modulus[j]);
                    if m != 0 {
                        prod[t - n + j] = (prod[t - n + j] + factor * m) % p;
                    }
                }
            }
        }
        let coeffs = prod[..n].iter().map(|&c| (c % p) as u8).collect();
        FieldElem { coeffs }
    }

    /// a^e with 0^0 = 1. Nonzero bases go through the discrete-log tables.
    pub fn pow(&self, a: &FieldElem, e: u64) -> FieldElem {
        let idx = self.index_of(a);
        if idx == 0 {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let r = u64::from(self.size - 1);
        let d = u64::from(self.dlog[idx as usize]);
        self.elem_from_index(self.powers[((d * (e % r)) % r) as usize])
    }

    /// Absolute trace down to F_p, as a residue.
    pub fn trace(&self, a: &FieldElem) -> u8 {
        self.trace_table[self.index_of(a) as usize]
    }

    pub fn from_vector(&self, coeffs: &[u8]) -> Result<FieldElem> {
        if coeffs.len() != self.n {
            return Err(Error::WrongLength { expected: self.n, got: coeffs.len() });
        }
        if let Some(&d) = coeffs.iter().find(|&&d| d >= self.p) {
            return Err(Error::DigitOutOfRange { digit: u32::from(d), p: u32::from(self.p) });
        }
        Ok(FieldElem { coeffs: coeffs.to_vec() })
    }

    pub fn to_vector(&self, a: &FieldElem) -> Vec<u8> {
        a.coeffs.clone()
    }

    pub fn index_of(&self, a: &FieldElem) -> u32 {
        assert_eq!(a.coeffs.len(), self.n);
        self.encode(&a.coeffs)
    }

    pub fn elem_from_index(&self, idx: u32) -> FieldElem {
        assert!(idx < self.size, "index {idx} outside field of size {}", self.size);
        let mut coeffs = vec![0u8; self.n];
        let mut rem = idx;
        for c in coeffs.iter_mut() {
            *c = (rem % u32::from(self.p)) as u8;
            rem /= u32::from(self.p);
        }
        FieldElem { coeffs }
    }

    /// Index of g^e (exponent reduced modulo p^n - 1).
    pub(crate) fn power_index(&self, e: u64) -> u32 {
        self.powers[(e % self.powers.len() as u64) as usize]
    }

    /// Trace of the element with the given index.
    pub(crate) fn trace_of_index(&self, idx: u32) -> u8 {
        self.trace_table[idx as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(PrimeModulus::new(2).is_ok());
        assert!(PrimeModulus::new(13).is_ok());
        assert_eq!(PrimeModulus::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeModulus::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeModulus::new(17), Err(Error::UnsupportedPrime(17)));
    }

    #[test]
    fn every_builtin_modulus_is_primitive() {
        for &((p, n), _) in STANDARD_MODULI {
            let f = ExtField::new(u32::from(p), n);
            assert!(f.is_ok(), "GF({p}^{n}) failed: {:?}", f.err());
        }
    }

    #[test]
    fn gf9_structure() {
        let f = ExtField::new(3, 2).unwrap();
        assert_eq!(f.size(), 9);
        let g = f.generator();
        assert_eq!(f.index_of(&g), 3); // the residue of x
        // g^8 = 1 and no earlier power is 1
        let mut cur = f.one();
        for e in 1..8 {
            cur = f.mul(&cur, &g);
            assert_ne!(f.index_of(&cur), 1, "order of g divides {e}");
        }
        cur = f.mul(&cur, &g);
        assert_eq!(cur, f.one());
    }

    #[test]
    fn gf9_trace_values() {
        // With modulus x^2 + 2x + 2: Tr(1) = 2 and Tr(x) = x + x^3 = 1.
        let f = ExtField::new(3, 2).unwrap();
        assert_eq!(f.trace(&f.one()), 2);
        assert_eq!(f.trace(&f.generator()), 1);
        // Trace is balanced: each residue is hit p^(n-1) = 3 times.
        let mut hits = [0u32; 3];
        for idx in 0..9 {
            hits[f.trace_of_index(idx) as usize] += 1;
        }
        assert_eq!(hits, [3, 3, 3]);
    }

    #[test]
    fn trace_is_additive_and_frobenius_invariant() {
        let f = ExtField::new(3, 4).unwrap();
        for i in (0..f.size()).step_by(7) {
            let a = f.elem_from_index(i);
            assert_eq!(f.trace(&a), f.trace(&f.pow(&a, 3)), "Tr(a) != Tr(a^p) at {i}");
            for j in (0..f.size()).step_by(11) {
                let b = f.elem_from_index(j);
                let lhs = f.trace(&f.add(&a, &b));
                let rhs = (f.trace(&a) + f.trace(&b)) % 3;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn pow_edge_cases() {
        let f = ExtField::new(5, 2).unwrap();
        let zero = f.zero();
        assert_eq!(f.pow(&zero, 0), f.one());
        assert_eq!(f.pow(&zero, 7), zero);
        let g = f.generator();
        assert_eq!(f.pow(&g, 24), f.one());
        assert_eq!(f.pow(&g, 25), g);
        assert_eq!(f.generator_power(24), f.one());
    }

    #[test]
    fn mul_matches_power_tables() {
        let f = ExtField::new(3, 3).unwrap();
        // Invert the power table: dlog[index] = e with generator^e at index.
        let mut dlog = vec![None; f.size() as usize];
        for e in 0..u64::from(f.size()) - 1 {
            dlog[f.power_index(e) as usize] = Some(e);
        }
        for a in 0..f.size() {
            for b in 0..f.size() {
                let ea = f.elem_from_index(a);
                let eb = f.elem_from_index(b);
                let prod = f.mul(&ea, &eb);
                let expect = match (dlog[a as usize], dlog[b as usize]) {
                    (Some(da), Some(db)) => f.power_index(da + db),
                    _ => 0,
                };
                assert_eq!(f.index_of(&prod), expect, "{a} * {b}");
            }
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        // x^2 + 1 over F_3 is irreducible but x has order 4, not 8.
        assert_eq!(ExtField::with_modulus(3, 2, &[1, 0, 1]).err(), Some(Error::NotPrimitive));
        // x^2 + x + 1 = (x + 2)^2 over F_3.
        assert_eq!(ExtField::with_modulus(3, 2, &[1, 1, 1]).err(), Some(Error::NotPrimitive));
        // x divides x^2 + x.
        assert_eq!(ExtField::with_modulus(3, 2, &[0, 1, 1]).err(), Some(Error::ReducibleModulus));
        assert!(matches!(
            ExtField::with_modulus(3, 2, &[2, 2, 2]),
            Err(Error::BadModulus(_))
        ));
        assert_eq!(
            ExtField::new(3, 11).err(),
            Some(Error::UnsupportedField { p: 3, n: 11 })
        );
        assert_eq!(
            ExtField::new(3, 0).err(),
            Some(Error::BadDimension { what: "extension degree", value: 0, limit: 1 })
        );
    }

    #[test]
    fn alternate_primitive_modulus_builds() {
        // x^2 + x + 2 over F_3 is primitive but differs from the built-in one.
        let f = ExtField::with_modulus(3, 2, &[2, 1, 1]).unwrap();
        assert_eq!(f.size(), 9);
        assert_eq!(f.pow(&f.generator(), 4), f.from_vector(&[2, 0]).unwrap());
    }

    #[test]
    fn vector_roundtrip() {
        let f = ExtField::new(5, 3).unwrap();
        for idx in [0u32, 1, 7, 42, 124] {
            let e = f.elem_from_index(idx);
            assert_eq!(f.index_of(&e), idx);
            let v = f.to_vector(&e);
            assert_eq!(f.from_vector(&v).unwrap(), e);
        }
        assert_eq!(
            f.from_vector(&[1, 2]),
            Err(Error::WrongLength { expected: 3, got: 2 })
        );
        assert_eq!(
            f.from_vector(&[1, 2, 5]),
            Err(Error::DigitOutOfRange { digit: 5, p: 5 })
        );
    }
}
