//! Functions f: F_p^n -> F_p as dense truth tables, with construction from
//! trace expressions, text serialization, derivatives and algebraic degree.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gf::{ExtField, PrimeModulus};
use crate::MAX_DOMAIN;

/// One summand `Tr(g^coeff_exp * x^monomial_exp)` of a trace expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceTerm {
    pub coeff_exp: u64,
    pub monomial_exp: u64,
}

/// A sum of trace monomials over a fixed field, ready to be tabulated.
#[derive(Debug, Clone)]
pub struct TraceSpec<'a> {
    field: &'a ExtField,
    terms: Vec<TraceTerm>,
}

impl<'a> TraceSpec<'a> {
    /// Validates that every coefficient exponent is a canonical discrete log,
    /// i.e. strictly below p^n - 1.
    pub fn new(field: &'a ExtField, terms: Vec<TraceTerm>) -> Result<TraceSpec<'a>> {
        let r = u64::from(field.size() - 1);
        for t in &terms {
            if t.coeff_exp >= r.max(1) {
                return Err(Error::BadExponent { exp: t.coeff_exp, limit: r.max(1) });
            }
        }
        Ok(TraceSpec { field, terms })
    }

    pub fn field(&self) -> &'a ExtField {
        self.field
    }

    pub fn terms(&self) -> &[TraceTerm] {
        &self.terms
    }
}

use crate::vecspace::{add_points, dot_points};

fn digit_to_char(d: u8) -> char {
    if d < 10 {
        (b'0' + d) as char
    } else {
        (b'a' + d - 10) as char
    }
}

fn char_to_digit(c: char) -> Option<u8> {
    match c {
        '0'..='9' => Some(c as u8 - b'0'),
        'a'..='c' => Some(c as u8 - b'a' + 10),
        _ => None,
    }
}

/// A p-ary function on F_p^n, stored as its full value table indexed by the
/// little-endian base-p point encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAryFunction {
    p: u8,
    n: usize,
    table: Vec<u8>,
}

impl PAryFunction {
    pub fn new(p: u32, n: usize, table: Vec<u8>) -> Result<PAryFunction> {
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
        if table.len() as u64 != size {
            return Err(Error::WrongLength { expected: size as usize, got: table.len() });
        }
        if let Some(&d) = table.iter().find(|&&d| d >= pm.get()) {
            return Err(Error::DigitOutOfRange { digit: u32::from(d), p });
        }
        Ok(PAryFunction { p: pm.get(), n, table })
    }

    pub fn zero(p: u32, n: usize) -> Result<PAryFunction> {
        Self::constant(p, n, 0)
    }

    pub fn constant(p: u32, n: usize, c: u8) -> Result<PAryFunction> {
        let pm = PrimeModulus::new(p)?;
        let size = (u64::from(pm.get())).pow(n as u32);
        if c >= pm.get() {
            return Err(Error::DigitOutOfRange { digit: u32::from(c), p });
        }
        Self::new(p, n, vec![c; size as usize])
    }

    pub fn from_fn<F: FnMut(u32) -> u8>(p: u32, n: usize, mut f: F) -> Result<PAryFunction> {
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
        let table: Vec<u8> = (0..size as u32).map(&mut f).collect();
        Self::new(p, n, table)
    }

    /// Tabulates a trace expression through the field's discrete-log tables:
    /// for x = g^m each term reads off Tr(g^(a + e m mod (p^n - 1))), so no
    /// field multiplication happens per point. x = 0 uses the convention
    /// 0^0 = 1, so terms with monomial exponent 0 are the constant Tr(g^a).
    pub fn from_trace_spec(spec: &TraceSpec<'_>) -> PAryFunction {
        let field = spec.field();
        let p = field.p();
        let size = field.size();
        let r = u64::from(size - 1);
        let mut table = vec![0u8; size as usize];

        let mut v0 = 0u32;
        for t in spec.terms() {
            if t.monomial_exp == 0 {
                v0 += u32::from(field.trace_of_index(field.power_index(t.coeff_exp)));
            }
        }
        table[0] = (v0 % p) as u8;

        for m in 0..r {
            let mut v = 0u32;
            for t in spec.terms() {
                let e = (t.coeff_exp + (t.monomial_exp % r) * m) % r;
                v += u32::from(field.trace_of_index(field.power_index(e)));
            }
            table[field.power_index(m) as usize] = (v % p) as u8;
        }

        PAryFunction { p: p as u8, n: field.n(), table }
    }

    pub fn p(&self) -> u32 {
        u32::from(self.p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of points in the domain, p^n.
    pub fn size(&self) -> u32 {
        self.table.len() as u32
    }

    #[inline]
    pub fn value(&self, x: u32) -> u8 {
        self.table[x as usize]
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    /// The directional difference x -> f(x + b) - f(x).
    pub fn derivative(&self, b: u32) -> PAryFunction {
        assert!(b < self.size());
        let p = u32::from(self.p);
        let table: Vec<u8> = (0..self.size())
            .map(|x| {
                let xb = add_points(p, x, b);
                (self.table[xb as usize] + self.p - self.table[x as usize]) % self.p
            })
            .collect();
        PAryFunction { p: self.p, n: self.n, table }
    }

    /// x -> f(x) + <v, x> + c.
    pub fn add_linear(&self, v: u32, c: u8) -> PAryFunction {
        assert!(v < self.size());
        assert!(c < self.p);
        let p = u32::from(self.p);
        let table: Vec<u8> = (0..self.size())
            .map(|x| ((u32::from(self.table[x as usize]) + dot_points(p, v, x) + u32::from(c)) % p) as u8)
            .collect();
        PAryFunction { p: self.p, n: self.n, table }
    }

    /// Serializes as a header line `p n` followed by the p^n values in point
    /// order, one character per value (digits, then `a`..`c` for 10..12).
    pub fn to_table_string(&self) -> String {
        let mut s = format!("{} {}\n", self.p, self.n);
        s.reserve(self.table.len() + 1);
        for &d in &self.table {
            s.push(digit_to_char(d));
        }
        s.push('\n');
        s
    }

    /// Parses the format written by [`to_table_string`]; whitespace between
    /// value characters is ignored.
    ///
    /// [`to_table_string`]: PAryFunction::to_table_string
    pub fn from_table_string(s: &str) -> Result<PAryFunction> {
        let mut lines = s.lines();
        let header = lines.next().ok_or_else(|| Error::Format("empty input".into()))?;
        let mut it = header.split_whitespace();
        let p: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Format("header must be `p n`".into()))?;
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Format("header must be `p n`".into()))?;
        if it.next().is_some() {
            return Err(Error::Format("header must be exactly `p n`".into()));
        }
        let mut table = Vec::new();
        for line in lines {
            for c in line.chars() {
                if c.is_ascii_whitespace() {
                    continue;
                }
                let d = char_to_digit(c)
                    .ok_or_else(|| Error::Format(format!("invalid value character {c:?}")))?;
                table.push(d);
            }
        }
        Self::new(p, n, table)
    }

    pub fn to_table_file<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        fs::write(path, self.to_table_string())?;
        Ok(())
    }

    pub fn from_table_file<P: AsRef<Path>>(path: P) -> Result<PAryFunction> {
        let s = fs::read_to_string(path)?;
        Self::from_table_string(&s)
    }

    /// Coefficients of the algebraic normal form: entry `a` (in point
    /// encoding) is the coefficient of the monomial prod_j x_j^(a_j).
    pub fn anf(&self) -> Vec<u8> {
        let (_, vinv) = vandermonde(self.p);
        let mut coeffs = self.table.clone();
        axis_transform(u32::from(self.p), self.n, &mut coeffs, &vinv);
        coeffs
    }

    /// Rebuilds the value table from ANF coefficients.
    pub fn from_anf(p: u32, n: usize, coeffs: &[u8]) -> Result<PAryFunction> {
        let f = Self::new(p, n, coeffs.to_vec())?;
        let (v, _) = vandermonde(f.p);
        let mut table = f.table;
        axis_transform(p, n, &mut table, &v);
        Self::new(p, n, table)
    }

    /// Total degree of the ANF; constants (including zero) have degree 0.
    pub fn algebraic_degree(&self) -> usize {
        let p = u32::from(self.p);
        let mut best = 0usize;
        for (a, &c) in self.anf().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut rem = a as u32;
            let mut wt = 0usize;
            while rem > 0 {
                wt += (rem % p) as usize;
                rem /= p;
            }
            best = best.max(wt);
        }
        best
    }
}

/// The p x p evaluation matrix V[t][k] = t^k (with 0^0 = 1) and its inverse
/// modulo p.
fn vandermonde(p: u8) -> (Vec<Vec<u8>>, Vec<Vec<u8>>) {
    let pu = u32::from(p);
    let mut v = vec![vec![0u8; p as usize]; p as usize];
    for t in 0..pu {
        let mut pow = 1u32;
        for k in 0..pu {
            v[t as usize][k as usize] = (pow % pu) as u8;
            pow = pow * t % pu;
        }
    }
    // Gauss-Jordan over F_p on [V | I].
    let m = p as usize;
    let mut aug: Vec<Vec<u32>> = (0..m)
        .map(|i| {
            let mut row: Vec<u32> = v[i].iter().map(|&x| u32::from(x)).collect();
            row.extend((0..m).map(|j| u32::from(i == j)));
            row
        })
        .collect();
    for col in 0..m {
        let piv = (col..m).find(|&r| !aug[r][col].is_multiple_of(pu)).expect("matrix is invertible");
        aug.swap(col, piv);
        let inv = mod_inverse(aug[col][col] % pu, pu);
        for x in aug[col].iter_mut() {
            *x = *x * inv % pu;
        }
        for r in 0..m {
            if r != col && !aug[r][col].is_multiple_of(pu) {
                let f = aug[r][col] % pu;
                let pivot_row = aug[col].clone();
                for (x, &pv) in aug[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + (pu - f) * pv) % pu;
                }
            }
        }
    }
    let vinv: Vec<Vec<u8>> = aug.iter().map(|row| row[m..].iter().map(|&x| x as u8).collect()).collect();
    (v, vinv)
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2) mod p for prime p.
    let mut result = 1u32;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Applies a p x p matrix along every coordinate axis of a dense tensor over
/// F_p^n: out[k] = sum_t m[k][t] in[t] within each axis-aligned line.
fn axis_transform(p: u32, n: usize, data: &mut [u8], m: &[Vec<u8>]) {
    let pu = p as usize;
    let mut vals = vec![0u8; pu];
    let mut stride = 1usize;
    for _ in 0..n {
        let block = stride * pu;
        for base in (0..data.len()).step_by(block) {
            for off in 0..stride {
                for (t, v) in vals.iter_mut().enumerate() {
                    *v = data[base + off + t * stride];
                }
                for (k, row) in m.iter().enumerate() {
                    let mut acc = 0u32;
                    for (t, &v) in vals.iter().enumerate() {
                        acc += u32::from(row[t]) * u32::from(v);
                    }
                    data[base + off + k * stride] = (acc % p) as u8;
                }
            }
        }
        stride *= pu;
    }
}
