//! The ambient vector space F_p^n with points packed as base-p integers and
//! constant-time componentwise arithmetic through split lookup tables.

use crate::error::{Error, Result};
use crate::gf::PrimeModulus;
use crate::MAX_DOMAIN;

/// Decodes a packed point into its base-p digit vector, least significant
/// coordinate first.
pub fn decode_digits(p: u32, n: usize, x: u32) -> Vec<u8> {
    let mut digits = vec![0u8; n];
    let mut rem = x;
    for d in digits.iter_mut() {
        *d = (rem % p) as u8;
        rem /= p;
    }
    digits
}

/// Packs a base-p digit vector (least significant coordinate first) into a
/// point index.
pub fn encode_digits(p: u32, digits: &[u8]) -> u32 {
    let mut x = 0u32;
    for &d in digits.iter().rev() {
        x = x * p + u32::from(d);
    }
    x
}

/// Componentwise base-p sum of two packed points (no carries, no tables).
pub(crate) fn add_points(p: u32, mut x: u32, mut y: u32) -> u32 {
    let mut out = 0u32;
    let mut scale = 1u32;
    while x > 0 || y > 0 {
        out += scale * ((x % p + y % p) % p);
        x /= p;
        y /= p;
        scale *= p;
    }
    out
}

/// Componentwise difference x - y of two packed points.
pub(crate) fn sub_points(p: u32, mut x: u32, mut y: u32) -> u32 {
    let mut out = 0u32;
    let mut scale = 1u32;
    while x > 0 || y > 0 {
        out += scale * ((x % p + p - y % p) % p);
        x /= p;
        y /= p;
        scale *= p;
    }
    out
}

/// Componentwise scalar multiple c * x of a packed point.
pub(crate) fn smul_points(p: u32, c: u32, mut x: u32) -> u32 {
    let mut out = 0u32;
    let mut scale = 1u32;
    let c = c % p;
    while x > 0 {
        out += scale * (c * (x % p) % p);
        x /= p;
        scale *= p;
    }
    out
}

/// The standard inner product of two packed points, as a residue.
pub(crate) fn dot_points(p: u32, mut u: u32, mut x: u32) -> u32 {
    let mut acc = 0u32;
    while u > 0 && x > 0 {
        acc += (u % p) * (x % p);
        u /= p;
        x /= p;
    }
    acc % p
}

/// F_p^n with points encoded as integers in `0..p^n` (little-endian base p).
///
/// Vector addition has no carries, so it factors through the low and high
/// halves of the encoding independently; two precomputed half-tables make
/// `add` two lookups regardless of n.
#[derive(Debug, Clone)]
pub struct VecSpace {
    p: u8,
    n: usize,
    size: u32,
    /// p^h for the split position h = ceil(n/2)
    ph: u32,
    /// p^(n-h), the number of distinct high halves
    qh: u32,
    /// componentwise sums of low halves: lo[a * ph + b]
    lo: Vec<u32>,
    /// componentwise sums of high halves, premultiplied by ph: hi[a * qh + b]
    hi: Vec<u32>,
    /// componentwise negation of every point
    neg: Vec<u32>,
    /// pows[j] = p^j for j in 0..=n
    pows: Vec<u32>,
}

impl VecSpace {
    pub fn new(p: u32, n: usize) -> Result<VecSpace> {
        let pm = PrimeModulus::new(p)?;
        if n == 0 {
            return Err(Error::BadDimension { what: "dimension", value: 0, limit: 1 });
        }
        let mut size: u64 = 1;
        for _ in 0..n {
            size *= u64::from(pm.get());
            if size > u64::from(MAX_DOMAIN) {
                return Err(Error::DomainTooLarge { p, n });
            }
        }
        let size = size as u32;
        let p = pm.get();

        let mut pows = Vec::with_capacity(n + 1);
        let mut acc = 1u32;
        for _ in 0..=n {
            pows.push(acc);
            acc = acc.saturating_mul(u32::from(p));
        }

        let h = n.div_ceil(2);
        let ph = pows[h];
        let qh = size / ph;

        let half_sum = |a: u32, b: u32, width: usize| -> u32 {
            let mut out = 0u32;
            let mut x = a;
            let mut y = b;
            let mut scale = 1u32;
            for _ in 0..width {
                out += scale * ((x + y) % u32::from(p));
                x /= u32::from(p);
                y /= u32::from(p);
                scale *= u32::from(p);
            }
            out
        };

        let mut lo = vec![0u32; (ph as usize) * (ph as usize)];
        for a in 0..ph {
            for b in 0..ph {
                lo[(a * ph + b) as usize] = half_sum(a, b, h);
            }
        }
        let mut hi = vec![0u32; (qh as usize) * (qh as usize)];
        for a in 0..qh {
            for b in 0..qh {
                hi[(a * qh + b) as usize] = half_sum(a, b, n - h) * ph;
            }
        }
        let mut neg = vec![0u32; size as usize];
        for (x, slot) in neg.iter_mut().enumerate() {
            let mut out = 0u32;
            let mut rem = x as u32;
            let mut scale = 1u32;
            for _ in 0..n {
                out += scale * ((u32::from(p) - rem % u32::from(p)) % u32::from(p));
                rem /= u32::from(p);
                scale *= u32::from(p);
            }
            *slot = out;
        }

        Ok(VecSpace { p, n, size, ph, qh, lo, hi, neg, pows })
    }

    pub fn p(&self) -> u32 {
        u32::from(self.p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of points, p^n.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Componentwise sum of two points.
    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        debug_assert!(x < self.size && y < self.size);
        let lo = self.lo[((x % self.ph) * self.ph + y % self.ph) as usize];
        let hi = self.hi[((x / self.ph) * self.qh + y / self.ph) as usize];
        lo + hi
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg[y as usize])
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        self.neg[x as usize]
    }

    /// Scalar multiple c * x for a residue c.
    #[inline]
    pub fn smul(&self, c: u8, x: u32) -> u32 {
        let mut acc = 0u32;
        for _ in 0..c {
            acc = self.add(acc, x);
        }
        acc
    }

    /// The j-th coordinate of a point.
    #[inline]
    pub fn digit(&self, x: u32, j: usize) -> u32 {
        (x / self.pows[j]) % u32::from(self.p)
    }

    /// Standard basis vector e_j.
    pub fn unit(&self, j: usize) -> u32 {
        self.pows[j]
    }

    pub fn decode(&self, x: u32) -> Vec<u8> {
        decode_digits(u32::from(self.p), self.n, x)
    }

    pub fn encode(&self, digits: &[u8]) -> Result<u32> {
        if digits.len() != self.n {
            return Err(Error::WrongLength { expected: self.n, got: digits.len() });
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= self.p) {
            return Err(Error::DigitOutOfRange { digit: u32::from(d), p: u32::from(self.p) });
        }
        Ok(encode_digits(u32::from(self.p), digits))
    }

    /// The standard inner product <u, x> as a residue.
    pub fn dot(&self, u: u32, x: u32) -> u8 {
        let p = u32::from(self.p);
        let mut acc = 0u32;
        let mut uu = u;
        let mut xx = x;
        for _ in 0..self.n {
            acc += (uu % p) * (xx % p);
            uu /= p;
            xx /= p;
        }
        (acc % p) as u8
    }

    /// Writes <u, x> for every point x into `out` (length p^n), by extending
    /// one coordinate at a time over the blocks of the little-endian encoding.
    pub fn fill_linear_form(&self, u: u32, out: &mut [u8]) {
        let p = u32::from(self.p);
        assert_eq!(out.len(), self.size as usize);
        out[0] = 0;
        let mut block = 1usize;
        for j in 0..self.n {
            let uj = self.digit(u, j);
            for t in 1..p {
                let shift = ((t * uj) % p) as u8;
                for i in 0..block {
                    out[t as usize * block + i] = (out[i] + shift) % self.p;
                }
            }
            block *= p as usize;
        }
    }
}
