//! Linear subspaces and affine flats of F_p^n in canonical (reduced row
//! echelon) form, with exhaustive enumeration and flat counting.

use crate::error::{Error, Result};
use crate::gf::PrimeModulus;
use crate::vecspace::{add_points, decode_digits, encode_digits, smul_points, sub_points};
use crate::MAX_DOMAIN;

fn validate_ambient(p: u32, n: usize) -> Result<u8> {
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
    Ok(pm.get())
}

/// A linear subspace of F_p^n held in reduced row echelon form: one packed
/// basis row per dimension, each with a leading 1 at its pivot coordinate,
/// zeros below earlier pivots and at every other pivot coordinate.
///
/// The representation is unique per subspace, so derived equality, ordering
/// and hashing coincide with subspace identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    p: u8,
    n: u8,
    basis: Vec<u32>,
    pivots: Vec<u8>,
}

impl Subspace {
    /// The zero subspace {0}.
    pub fn zero(p: u32, n: usize) -> Result<Subspace> {
        let p = validate_ambient(p, n)?;
        Ok(Subspace { p, n: n as u8, basis: Vec::new(), pivots: Vec::new() })
    }

    /// The full space F_p^n.
    pub fn full(p: u32, n: usize) -> Result<Subspace> {
        let pu = validate_ambient(p, n)?;
        let mut s = Subspace { p: pu, n: n as u8, basis: Vec::new(), pivots: Vec::new() };
        for j in 0..n {
            s.basis.push(p.pow(j as u32));
            s.pivots.push(j as u8);
        }
        Ok(s)
    }

    /// The row space of the given packed vectors, brought to canonical form.
    pub fn from_spanning(p: u32, n: usize, vectors: &[u32]) -> Result<Subspace> {
        let mut s = Subspace::zero(p, n)?;
        for &v in vectors {
            if v >= u32::from(s.p).pow(n as u32) {
                return Err(Error::BadDimension {
                    what: "point index",
                    value: v as usize,
                    limit: s.p_pow_n() as usize,
                });
            }
            match s.extend(v) {
                Ok(bigger) => s = bigger,
                Err(Error::VectorInSubspace) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(s)
    }

    fn p_pow_n(&self) -> u32 {
        u32::from(self.p).pow(u32::from(self.n))
    }

    pub fn p(&self) -> u32 {
        u32::from(self.p)
    }

    pub fn n(&self) -> usize {
        usize::from(self.n)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical basis rows, packed, ordered by pivot coordinate.
    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    /// The pivot coordinate of each basis row, strictly increasing.
    pub fn pivots(&self) -> &[u8] {
        &self.pivots
    }

    /// Subtracts the unique subspace element sharing x's pivot coordinates,
    /// leaving the canonical representative of the coset x + U: the one point
    /// of the coset whose pivot coordinates are all zero.
    pub fn reduce(&self, x: u32) -> u32 {
        let p = u32::from(self.p);
        let mut out = x;
        for (row, &piv) in self.basis.iter().zip(&self.pivots) {
            let d = out / p.pow(u32::from(piv)) % p;
            if d != 0 {
                out = sub_points(p, out, smul_points(p, d, *row));
            }
        }
        out
    }

    pub fn contains(&self, x: u32) -> bool {
        self.reduce(x) == 0
    }

    /// Extends the subspace by one vector, keeping canonical form.
    pub fn extend(&self, v: u32) -> Result<Subspace> {
        let p = u32::from(self.p);
        let rem = self.reduce(v);
        if rem == 0 {
            return Err(Error::VectorInSubspace);
        }
        let digits = decode_digits(p, usize::from(self.n), rem);
        let piv = digits.iter().position(|&d| d != 0).expect("nonzero remainder");
        // Normalize the leading digit to 1: multiply by its inverse mod p.
        let lead = u32::from(digits[piv]);
        let inv = (1..p).find(|&t| t * lead % p == 1).expect("p is prime");
        let new_row = smul_points(p, inv, rem);

        let mut basis = Vec::with_capacity(self.basis.len() + 1);
        let mut pivots = Vec::with_capacity(self.pivots.len() + 1);
        let mut inserted = false;
        for (row, &pv) in self.basis.iter().zip(&self.pivots) {
            if !inserted && usize::from(pv) > piv {
                basis.push(new_row);
                pivots.push(piv as u8);
                inserted = true;
            }
            // Clear the new pivot coordinate from the existing row.
            let d = *row / p.pow(piv as u32) % p;
            let cleared =
                if d != 0 { sub_points(p, *row, smul_points(p, d, new_row)) } else { *row };
            basis.push(cleared);
            pivots.push(pv);
        }
        if !inserted {
            basis.push(new_row);
            pivots.push(piv as u8);
        }
        Ok(Subspace { p: self.p, n: self.n, basis, pivots })
    }

    /// All p^dim points of the subspace, in odometer order over the basis
    /// rows (first row fastest). The first point is always 0.
    pub fn points(&self) -> Vec<u32> {
        let p = u32::from(self.p);
        let mut pts = vec![0u32];
        for &b in &self.basis {
            let mut next = Vec::with_capacity(pts.len() * p as usize);
            let mut shift = 0u32;
            for _ in 0..p {
                for &q in &pts {
                    next.push(add_points(p, q, shift));
                }
                shift = add_points(p, shift, b);
            }
            pts = next;
        }
        pts
    }

    /// The points with zeros at every pivot coordinate — exactly one
    /// representative per coset of the subspace, in increasing order.
    pub fn standard_complement(&self) -> Vec<u32> {
        let p = u32::from(self.p);
        let free: Vec<u32> = (0..u32::from(self.n))
            .filter(|j| !self.pivots.contains(&(*j as u8)))
            .map(|j| p.pow(j))
            .collect();
        let mut out = Vec::with_capacity(p.pow(free.len() as u32) as usize);
        let mut digits = vec![0u8; free.len()];
        let mut val = 0u32;
        'outer: loop {
            out.push(val);
            let mut i = 0;
            loop {
                if i == digits.len() {
                    break 'outer;
                }
                if u32::from(digits[i]) + 1 < p {
                    digits[i] += 1;
                    val += free[i];
                    break;
                }
                digits[i] = 0;
                val -= (p - 1) * free[i];
                i += 1;
            }
        }
        out
    }

    /// The orthogonal complement with respect to the standard inner product.
    pub fn orthogonal_complement(&self) -> Subspace {
        let p = u32::from(self.p);
        let n = usize::from(self.n);
        let rows: Vec<Vec<u8>> =
            self.basis.iter().map(|&b| decode_digits(p, n, b)).collect();
        // One nullspace vector per free coordinate jf: put 1 at jf and cancel
        // each row's contribution through its pivot coordinate. The vectors
        // are independent (each owns a distinct free coordinate) but not in
        // echelon form, so canonicalize at the end.
        let mut vectors = Vec::new();
        for jf in 0..n {
            if self.pivots.contains(&(jf as u8)) {
                continue;
            }
            let mut v = vec![0u8; n];
            v[jf] = 1;
            for (row, &piv) in rows.iter().zip(&self.pivots) {
                v[usize::from(piv)] = ((p - u32::from(row[jf])) % p) as u8;
            }
            vectors.push(encode_digits(p, &v));
        }
        Subspace::from_spanning(self.p(), n, &vectors).expect("same validated ambient space")
    }
}

/// An affine flat rep + U, held with the canonical representative (the one
/// with zeros at the subspace's pivot coordinates).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineFlat {
    space: Subspace,
    rep: u32,
}

impl AffineFlat {
    /// The flat through x with direction space U.
    pub fn new(space: Subspace, x: u32) -> AffineFlat {
        let rep = space.reduce(x);
        AffineFlat { space, rep }
    }

    pub fn rep(&self) -> u32 {
        self.rep
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.space.reduce(x) == self.rep
    }

    /// All points of the flat, in the same odometer order as
    /// [`Subspace::points`], shifted by the representative.
    pub fn points(&self) -> Vec<u32> {
        let p = self.space.p();
        self.space.points().iter().map(|&q| add_points(p, q, self.rep)).collect()
    }
}

/// The coset x + U as a canonical affine flat.
pub fn coset_of(x: u32, space: &Subspace) -> AffineFlat {
    AffineFlat::new(space.clone(), x)
}

/// The p points of the affine line through two distinct points:
/// a + t(b - a) for t = 0..p.
pub fn one_flat_completion(p: u32, n: usize, a: u32, b: u32) -> Result<Vec<u32>> {
    let pm = validate_ambient(p, n)?;
    if a == b {
        return Err(Error::EqualPoints);
    }
    let delta = sub_points(p, b, a);
    let mut pts = Vec::with_capacity(usize::from(pm));
    let mut cur = a;
    for _ in 0..pm {
        pts.push(cur);
        cur = add_points(p, cur, delta);
    }
    Ok(pts)
}

/// Lazily enumerates every s-dimensional subspace of F_p^n exactly once, in
/// a deterministic order: pivot-column combinations lexicographically, free
/// entries in odometer order.
pub fn enumerate_subspaces(p: u32, n: usize, s: usize) -> Result<SubspaceIter> {
    let pm = validate_ambient(p, n)?;
    if s > n {
        return Err(Error::BadDimension { what: "subspace dimension", value: s, limit: n });
    }
    let pivots: Vec<u8> = (0..s as u8).collect();
    let cells = free_cells(&pivots, n as u8);
    Ok(SubspaceIter {
        p: pm,
        n: n as u8,
        entries: vec![0; cells.len()],
        cells,
        pivots,
        done: false,
    })
}

/// Row/column positions of the freely choosable entries for a given pivot
/// set: row i may hold arbitrary values at non-pivot columns right of its
/// own pivot.
fn free_cells(pivots: &[u8], n: u8) -> Vec<(u8, u8)> {
    let mut cells = Vec::new();
    for (i, &pi) in pivots.iter().enumerate() {
        for c in pi + 1..n {
            if !pivots.contains(&c) {
                cells.push((i as u8, c));
            }
        }
    }
    cells
}

fn next_combination(c: &mut [u8], n: u8) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - (k - i) as u8 {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub struct SubspaceIter {
    p: u8,
    n: u8,
    pivots: Vec<u8>,
    cells: Vec<(u8, u8)>,
    entries: Vec<u8>,
    done: bool,
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let p = u32::from(self.p);
        let n = usize::from(self.n);
        let s = self.pivots.len();

        let mut rows = vec![vec![0u8; n]; s];
        for (i, &pi) in self.pivots.iter().enumerate() {
            rows[i][usize::from(pi)] = 1;
        }
        for (&(r, c), &e) in self.cells.iter().zip(&self.entries) {
            rows[usize::from(r)][usize::from(c)] = e;
        }
        let item = Subspace {
            p: self.p,
            n: self.n,
            basis: rows.iter().map(|r| encode_digits(p, r)).collect(),
            pivots: self.pivots.clone(),
        };

        // Advance: free-entry odometer first, then the pivot combination.
        let mut i = 0;
        loop {
            if i == self.entries.len() {
                if next_combination(&mut self.pivots, self.n) {
                    self.cells = free_cells(&self.pivots, self.n);
                    self.entries = vec![0; self.cells.len()];
                } else {
                    self.done = true;
                }
                break;
            }
            if u32::from(self.entries[i]) + 1 < p {
                self.entries[i] += 1;
                break;
            }
            self.entries[i] = 0;
            i += 1;
        }
        Some(item)
    }
}

/// Lazily enumerates every s-dimensional affine flat of F_p^n exactly once:
/// each subspace paired with each of its canonical coset representatives.
pub fn enumerate_affine_flats(
    p: u32,
    n: usize,
    s: usize,
) -> Result<impl Iterator<Item = AffineFlat>> {
    let subs = enumerate_subspaces(p, n, s)?;
    Ok(subs.flat_map(|u| {
        let reps = u.standard_complement();
        reps.into_iter().map(move |r| AffineFlat { space: u.clone(), rep: r })
    }))
}

/// The Gaussian binomial coefficient: the number of k-dimensional subspaces
/// of F_p^n. Exact; every partial product is itself a Gaussian binomial, so
/// the running value stays integral.
pub fn gaussian_binomial(p: u32, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let p = u128::from(p);
    let mut r: u128 = 1;
    for i in 0..k {
        r *= p.pow((n - i) as u32) - 1;
        let d = p.pow((i + 1) as u32) - 1;
        debug_assert_eq!(r % d, 0);
        r /= d;
    }
    r
}

/// The number of k-dimensional affine flats of F_p^n:
/// p^(n-k) times the subspace count.
pub fn flat_count(p: u32, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    u128::from(p).pow((n - k) as u32) * gaussian_binomial(p, n, k)
}
