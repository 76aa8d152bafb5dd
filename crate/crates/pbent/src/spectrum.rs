//! Exact Walsh spectra over the cyclotomic integers Z[w], w = e^(2 pi i / p),
//! with bentness tests and regularity classification.
//!
//! Every Walsh value is carried as an integer combination of the p-th roots of
//! unity, so spectral equalities are decided exactly — no floating point.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;

use crate::error::{Error, Result};
use crate::func::PAryFunction;

/// An element of Z[w] for a prime p, stored as integer multiples of
/// w^0, ..., w^(p-1).
///
/// The representation is redundant (the powers sum to zero), so equality and
/// hashing go through the canonical form with the w^(p-1) slot cleared —
/// coordinates with respect to the integral basis 1, w, ..., w^(p-2).
#[derive(Debug, Clone)]
pub struct CyclotomicInt {
    p: u8,
    counts: Vec<i64>,
}

impl CyclotomicInt {
    fn check_prime(p: u32) -> u8 {
        crate::gf::PrimeModulus::new(p).expect("cyclotomic order must be a supported prime").get()
    }

    pub fn zero(p: u32) -> CyclotomicInt {
        let p = Self::check_prime(p);
        CyclotomicInt { p, counts: vec![0; p as usize] }
    }

    /// The rational integer v.
    pub fn integer(p: u32, v: i64) -> CyclotomicInt {
        let mut z = Self::zero(p);
        z.counts[0] = v;
        z
    }

    /// The root of unity w^j.
    pub fn root_power(p: u32, j: u32) -> CyclotomicInt {
        let mut z = Self::zero(p);
        z.counts[(j % p) as usize] = 1;
        z
    }

    pub fn from_counts(p: u32, counts: Vec<i64>) -> Result<CyclotomicInt> {
        let p = Self::check_prime(p);
        if counts.len() != p as usize {
            return Err(Error::WrongLength { expected: p as usize, got: counts.len() });
        }
        Ok(CyclotomicInt { p, counts })
    }

    pub fn p(&self) -> u32 {
        u32::from(self.p)
    }

    /// Multiples of w^0, ..., w^(p-1) as stored (not canonicalized).
    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    pub fn add(&self, other: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p, other.p, "mixed cyclotomic orders");
        let counts = self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect();
        CyclotomicInt { p: self.p, counts }
    }

    pub fn sub(&self, other: &CyclotomicInt) -> CyclotomicInt {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CyclotomicInt {
        CyclotomicInt { p: self.p, counts: self.counts.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, other: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.p, other.p, "mixed cyclotomic orders");
        let p = self.p as usize;
        let mut counts = vec![0i64; p];
        for (i, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.counts.iter().enumerate() {
                if b != 0 {
                    counts[(i + j) % p] += a * b;
                }
            }
        }
        CyclotomicInt { p: self.p, counts }
    }

    /// Multiplication by w^j.
    pub fn rotate(&self, j: u32) -> CyclotomicInt {
        let p = self.p as usize;
        let j = (j % u32::from(self.p)) as usize;
        let mut counts = vec![0i64; p];
        for (i, &a) in self.counts.iter().enumerate() {
            counts[(i + j) % p] = a;
        }
        CyclotomicInt { p: self.p, counts }
    }

    /// Complex conjugation, w -> w^(-1).
    pub fn conj(&self) -> CyclotomicInt {
        let p = self.p as usize;
        let mut counts = vec![0i64; p];
        for (i, &a) in self.counts.iter().enumerate() {
            counts[(p - i) % p] = a;
        }
        CyclotomicInt { p: self.p, counts }
    }

    /// The squared complex absolute value z * conj(z), an element of the real
    /// subfield of Q(w). For p = 2 and p = 3 it is always a rational integer.
    pub fn norm_sq(&self) -> CyclotomicInt {
        self.mul(&self.conj())
    }

    /// The unique representative with the w^(p-1) slot equal to zero, using
    /// 1 + w + ... + w^(p-1) = 0. Two values are equal in Z[w] (equivalently,
    /// as complex numbers) exactly when their canonical counts agree.
    pub fn canonical(&self) -> CyclotomicInt {
        let t = self.counts[self.p as usize - 1];
        let counts = self.counts.iter().map(|a| a - t).collect();
        CyclotomicInt { p: self.p, counts }
    }

    pub fn is_zero(&self) -> bool {
        let c = self.canonical();
        c.counts.iter().all(|&a| a == 0)
    }

    pub fn is_integer(&self) -> bool {
        self.as_integer().is_some()
    }

    /// `Some(v)` when the value is the rational integer v.
    pub fn as_integer(&self) -> Option<i64> {
        let c = self.canonical();
        c.counts[1..].iter().all(|&a| a == 0).then_some(c.counts[0])
    }
}

impl PartialEq for CyclotomicInt {
    fn eq(&self, other: &CyclotomicInt) -> bool {
        self.p == other.p && self.canonical().counts == other.canonical().counts
    }
}

impl Eq for CyclotomicInt {}

impl std::hash::Hash for CyclotomicInt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.canonical().counts.hash(state);
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        let mut wrote = false;
        for (j, &a) in c.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if wrote {
                write!(f, " {} ", if a < 0 { '-' } else { '+' })?;
            } else if a < 0 {
                write!(f, "-")?;
            }
            let mag = a.unsigned_abs();
            match j {
                0 => write!(f, "{mag}")?,
                _ if mag == 1 => {}
                _ => write!(f, "{mag}*")?,
            }
            match j {
                0 => {}
                1 => write!(f, "w")?,
                _ => write!(f, "w^{j}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The quadratic Gauss sum over F_p: the sum of w^(t^2) for t in F_p.
/// Its square is p for p = 1 mod 4 and -p for p = 3 mod 4.
pub fn gauss_sum(p: u32) -> CyclotomicInt {
    let mut z = CyclotomicInt::zero(p);
    for t in 0..p {
        z.counts[(t * t % p) as usize] += 1;
    }
    z
}

/// The full Walsh spectrum of a function: one exact cyclotomic value per
/// point u, flat-packed as p integer multiplicities per cell.
#[derive(Debug, Clone)]
pub struct WalshSpectrum {
    p: u8,
    n: usize,
    counts: Vec<i64>,
}

impl WalshSpectrum {
    pub fn p(&self) -> u32 {
        u32::from(self.p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of spectral cells, p^n.
    pub fn len(&self) -> usize {
        self.counts.len() / self.p as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Raw root-of-unity multiplicities of the value at u.
    pub fn counts_at(&self, u: u32) -> &[i64] {
        let p = self.p as usize;
        &self.counts[u as usize * p..][..p]
    }

    /// The exact Walsh value at u.
    pub fn value(&self, u: u32) -> CyclotomicInt {
        CyclotomicInt { p: self.p, counts: self.counts_at(u).to_vec() }
    }

    /// |W_f(u)|^2 as an exact element of the real subfield.
    pub fn norm_sq(&self, u: u32) -> CyclotomicInt {
        self.value(u).norm_sq()
    }

    /// Whether every |W_f(u)|^2 equals p^n exactly.
    pub fn is_bent(&self) -> bool {
        let target = CyclotomicInt::integer(self.p(), (i64::from(self.p)).pow(self.n as u32));
        (0..self.len() as u32).all(|u| self.norm_sq(u) == target)
    }
}

/// One radix-p pass along the axis with stride s: cell c of `out` becomes the
/// DFT output with kernel w^(-k t), reading its p-point line from `inp`.
#[inline]
fn dft_cell(p: usize, s: usize, c: usize, cell: &mut [i64], inp: &[i64]) {
    let k = c / s % p;
    let base = c - k * s;
    cell.fill(0);
    for t in 0..p {
        let src = &inp[(base + t * s) * p..][..p];
        let m = (p - k * t % p) % p;
        for (i, &v) in src.iter().enumerate() {
            let mut idx = i + m;
            if idx >= p {
                idx -= p;
            }
            cell[idx] += v;
        }
    }
}

fn axis_pass(p: usize, s: usize, inp: &[i64], out: &mut [i64], parallel: bool) {
    #[cfg(feature = "parallel")]
    {
        if parallel {
            use rayon::prelude::*;
            out.par_chunks_mut(p)
                .enumerate()
                .for_each(|(c, cell)| dft_cell(p, s, c, cell, inp));
            return;
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = parallel;
    for (c, cell) in out.chunks_mut(p).enumerate() {
        dft_cell(p, s, c, cell, inp);
    }
}

fn walsh_core(f: &PAryFunction, parallel: bool) -> WalshSpectrum {
    let p = f.p() as usize;
    let n = f.n();
    let size = f.size() as usize;
    let mut cur = vec![0i64; size * p];
    for (x, &v) in f.table().iter().enumerate() {
        cur[x * p + v as usize] = 1;
    }
    let mut nxt = vec![0i64; size * p];
    let mut s = 1usize;
    for _ in 0..n {
        axis_pass(p, s, &cur, &mut nxt, parallel);
        std::mem::swap(&mut cur, &mut nxt);
        s *= p;
    }
    WalshSpectrum { p: p as u8, n, counts: cur }
}

/// Computes all p^n Walsh values W_f(u) = sum_x w^(f(x) - <u,x>) exactly, by
/// a radix-p butterfly over the n coordinate axes. Runs on the rayon pool
/// when the `parallel` feature is enabled.
pub fn walsh_spectrum(f: &PAryFunction) -> WalshSpectrum {
    walsh_core(f, true)
}

/// Sequential variant of [`walsh_spectrum`], for comparison and for strict
/// single-thread contexts.
pub fn walsh_spectrum_seq(f: &PAryFunction) -> WalshSpectrum {
    walsh_core(f, false)
}

/// Computes the single Walsh value W_f(u) by direct summation — an
/// independent route used to cross-check the butterfly.
pub fn walsh_at(f: &PAryFunction, u: u32) -> CyclotomicInt {
    let p = f.p();
    let mut z = CyclotomicInt::zero(p);
    for x in 0..f.size() {
        let mut acc = u32::from(f.value(x));
        let (mut uu, mut xx) = (u, x);
        while uu > 0 && xx > 0 {
            acc += p - (uu % p) * (xx % p) % p;
            uu /= p;
            xx /= p;
        }
        z.counts[(acc % p) as usize] += 1;
    }
    z
}

/// Whether f is bent: |W_f(u)|^2 = p^n exactly for every u.
pub fn is_bent(f: &PAryFunction) -> bool {
    walsh_spectrum(f).is_bent()
}

/// How a bent function's spectrum distributes over the admissible patterns
/// zeta * w^(f*(u)) * p^(n/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularityKind {
    /// zeta = +1 at every point.
    Regular,
    /// zeta is the same at every point but not +1.
    WeaklyRegular,
    /// zeta varies from point to point.
    NonWeaklyRegular,
    NotBent,
}

impl fmt::Display for RegularityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegularityKind::Regular => "regular",
            RegularityKind::WeaklyRegular => "weakly-regular",
            RegularityKind::NonWeaklyRegular => "non-weakly-regular",
            RegularityKind::NotBent => "not-bent",
        };
        write!(f, "{s}")
    }
}

/// The constant zeta of a (weakly) regular bent function. For even n and for
/// odd n with p = 1 mod 4 it is real; for odd n with p = 3 mod 4 it is
/// imaginary and regularity is impossible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Zeta {
    PlusOne,
    MinusOne,
    PlusI,
    MinusI,
}

impl fmt::Display for Zeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Zeta::PlusOne => "+1",
            Zeta::MinusOne => "-1",
            Zeta::PlusI => "+i",
            Zeta::MinusI => "-i",
        };
        write!(f, "{s}")
    }
}

/// Outcome of classifying a bent function's spectrum.
#[derive(Debug, Clone)]
pub struct RegularityVerdict {
    pub kind: RegularityKind,
    /// The constant zeta, present exactly when the function is (weakly)
    /// regular.
    pub zeta: Option<Zeta>,
    /// The dual bent function, present exactly when the function is (weakly)
    /// regular.
    pub dual: Option<PAryFunction>,
    /// The pointwise dual f*, defined for every bent function whether or not
    /// the sign is constant.
    pub pointwise_dual: Option<PAryFunction>,
    /// The per-point sign of zeta (+1 or -1), for every bent function.
    pub signs: Option<Vec<i8>>,
}

impl RegularityVerdict {
    fn not_bent() -> RegularityVerdict {
        RegularityVerdict {
            kind: RegularityKind::NotBent,
            zeta: None,
            dual: None,
            pointwise_dual: None,
            signs: None,
        }
    }
}

/// Classifies a function as regular / weakly regular / non-weakly regular
/// bent (or not bent), extracting the dual where one exists.
///
/// Every Walsh value of a bent function equals sign * w^j * mu with
/// mu = p^(n/2) for even n and mu = p^((n-1)/2) * G for odd n, G the
/// quadratic Gauss sum. The match is unique for odd p, which pins down both
/// the pointwise dual value j and the sign.
pub fn classify_regularity(f: &PAryFunction) -> Result<RegularityVerdict> {
    let spectrum = walsh_spectrum(f);
    classify_spectrum(f, &spectrum)
}

/// Same as [`classify_regularity`] but reuses an already computed spectrum.
pub fn classify_spectrum(f: &PAryFunction, spectrum: &WalshSpectrum) -> Result<RegularityVerdict> {
    let p = f.p();
    let n = f.n();
    if !spectrum.is_bent() {
        return Ok(RegularityVerdict::not_bent());
    }
    let size = f.size();

    if p == 2 {
        // w = -1: the value at u is the integer +-2^(n/2), and the sign *is*
        // w^(f*(u)). Bent binary functions are regular by construction.
        let half = 1i64 << (n / 2);
        let mut dual = vec![0u8; size as usize];
        for u in 0..size {
            let v = spectrum.value(u).as_integer().ok_or(Error::SpectrumInconsistency(u))?;
            dual[u as usize] = match v {
                _ if v == half => 0,
                _ if v == -half => 1,
                _ => return Err(Error::SpectrumInconsistency(u)),
            };
        }
        let dual = PAryFunction::new(p, n, dual).map_err(|e| Error::Internal(e.to_string()))?;
        return Ok(RegularityVerdict {
            kind: RegularityKind::Regular,
            zeta: Some(Zeta::PlusOne),
            dual: Some(dual.clone()),
            pointwise_dual: Some(dual),
            signs: Some(vec![1; size as usize]),
        });
    }

    // mu: the common magnitude factor of every spectral value.
    let mu = if n.is_multiple_of(2) {
        CyclotomicInt::integer(p, i64::from(p as i32).pow((n / 2) as u32))
    } else {
        gauss_sum(p).mul(&CyclotomicInt::integer(p, i64::from(p as i32).pow(((n - 1) / 2) as u32)))
    };

    let mut patterns: HashMap<Vec<i64>, (i8, u8)> = HashMap::new();
    for j in 0..p {
        let pos = mu.rotate(j);
        patterns.insert(pos.canonical().counts, (1, j as u8));
        patterns.insert(pos.neg().canonical().counts, (-1, j as u8));
    }

    let mut signs = vec![0i8; size as usize];
    let mut dual = vec![0u8; size as usize];
    for u in 0..size {
        let key = spectrum.value(u).canonical().counts;
        let (sign, j) = patterns.get(&key).ok_or(Error::SpectrumInconsistency(u))?;
        signs[u as usize] = *sign;
        dual[u as usize] = *j;
    }

    let pointwise_dual =
        PAryFunction::new(p, n, dual).map_err(|e| Error::Internal(e.to_string()))?;
    let constant_sign = signs.iter().all(|&s| s == signs[0]);
    let imaginary = n % 2 == 1 && p % 4 == 3;
    let kind = if !constant_sign {
        RegularityKind::NonWeaklyRegular
    } else if signs[0] == 1 && !imaginary {
        RegularityKind::Regular
    } else {
        RegularityKind::WeaklyRegular
    };
    let zeta = if constant_sign {
        Some(match (signs[0] == 1, imaginary) {
            (true, false) => Zeta::PlusOne,
            (false, false) => Zeta::MinusOne,
            (true, true) => Zeta::PlusI,
            (false, true) => Zeta::MinusI,
        })
    } else {
        None
    };

    Ok(RegularityVerdict {
        kind,
        zeta,
        dual: constant_sign.then(|| pointwise_dual.clone()),
        pointwise_dual: Some(pointwise_dual),
        signs: Some(signs),
    })
}

/// The dual of a weakly regular bent function.
pub fn dual(f: &PAryFunction) -> Result<PAryFunction> {
    let verdict = classify_regularity(f)?;
    match verdict.kind {
        RegularityKind::NotBent => Err(Error::NotBent),
        RegularityKind::NonWeaklyRegular => Err(Error::NoBentDual),
        _ => Ok(verdict.dual.expect("weakly regular verdicts carry a dual")),
    }
}

/// Writes one line per point u: the point, the canonical root-of-unity
/// multiplicities of W_f(u), and |W_f(u)|^2 (an integer where it is one, a
/// bracketed multiplicity list otherwise).
pub fn write_spectrum<W: Write>(f: &PAryFunction, out: &mut W) -> Result<()> {
    let spectrum = walsh_spectrum(f);
    for u in 0..spectrum.len() as u32 {
        let value = spectrum.value(u).canonical();
        let norm = value.norm_sq();
        write!(out, "{u}")?;
        for c in value.counts() {
            write!(out, " {c}")?;
        }
        match norm.as_integer() {
            Some(v) => writeln!(out, " {v}")?,
            None => {
                let canonical = norm.canonical();
                let inner: Vec<String> =
                    canonical.counts().iter().map(|c| c.to_string()).collect();
                writeln!(out, " [{}]", inner.join(","))?;
            }
        }
    }
    Ok(())
}
