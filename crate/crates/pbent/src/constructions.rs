//! Named bent-function families, the direct-sum extension, counting bounds
//! for the existence of non-normal functions, and a fixture registry for the
//! command-line tool and the test suite.

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::func::{PAryFunction, TraceSpec, TraceTerm};
use crate::gf::{ExtField, PrimeModulus};
use crate::spectrum::is_bent;
use crate::subspace::Subspace;
use crate::vecspace::dot_points;

/// f(x) = Tr_n(xi^coeff_exp * x^((3^k+1)/2)) over the canonical GF(3, n).
pub fn coulter_matthews(n: usize, k: u32, coeff_exp: u64) -> Result<PAryFunction> {
    let field = ExtField::new(3, n)?;
    let power = 3u64
        .checked_pow(k)
        .and_then(|t| t.checked_add(1))
        .ok_or(Error::BadExponent { exp: u64::from(k), limit: 40 })?;
    let spec = TraceSpec::new(&field, vec![TraceTerm {
        coeff_exp,
        monomial_exp: power / 2,
    }])?;
    Ok(PAryFunction::from_trace_spec(&spec))
}

/// Builds the trace form and optionally insists that the result is bent.
pub fn trace_bent(spec: &TraceSpec<'_>, assert_bent: bool) -> Result<PAryFunction> {
    let f = PAryFunction::from_trace_spec(spec);
    if assert_bent && !is_bent(&f) {
        return Err(Error::BentAssertionFailed);
    }
    Ok(f)
}

/// F(x, y1, y2) = Tr_n(x^2) + (y1 + Tr_n(alpha x^2))(y2 + Tr_n(beta x^2))
/// on F_p^(n+2), with alpha = xi^alpha_exp and beta = xi^beta_exp; requires
/// {1, alpha, beta} linearly independent over F_p (checked by rank).
pub fn product_construction(
    field: &ExtField,
    alpha_exp: u64,
    beta_exp: u64,
) -> Result<PAryFunction> {
    let p = field.p();
    let n = field.n();
    let alpha = field.generator_power(alpha_exp);
    let beta = field.generator_power(beta_exp);
    let spanning = [
        field.index_of(&field.one()),
        field.index_of(&alpha),
        field.index_of(&beta),
    ];
    let rank = Subspace::from_spanning(p, n, &spanning)?.dim();
    if rank != 3 {
        return Err(Error::DependentCoefficients);
    }

    let pn = field.size();
    let mut table = vec![0u8; (pn * p * p) as usize];
    for x_idx in 0..pn {
        let x = field.elem_from_index(x_idx);
        let x2 = field.mul(&x, &x);
        let fx = u32::from(field.trace(&x2));
        let h1 = u32::from(field.trace(&field.mul(&alpha, &x2)));
        let h2 = u32::from(field.trace(&field.mul(&beta, &x2)));
        for y2 in 0..p {
            for y1 in 0..p {
                let idx = x_idx + pn * (y1 + p * y2);
                table[idx as usize] = ((fx + (y1 + h1) % p * ((y2 + h2) % p)) % p) as u8;
            }
        }
    }
    PAryFunction::new(p, n + 2, table)
}

/// g(x, y, z) = f(x) + y*z on F_p^(n+2). Preserves bentness, and shifts
/// (weak) k-normality of f to (weak) (k+1)-normality of g in both directions.
pub fn direct_sum_extend(f: &PAryFunction) -> Result<PAryFunction> {
    let p = f.p();
    let pn = f.size();
    let mut table = vec![0u8; (pn as usize) * (p as usize) * (p as usize)];
    for z in 0..p {
        for y in 0..p {
            let yz = (y * z % p) as u8;
            for x in 0..pn {
                table[(x + pn * (y + p * z)) as usize] = (f.value(x) + yz) % p as u8;
            }
        }
    }
    PAryFunction::new(p, f.n() + 2, table)
}

/// f(x, y) = <x, pi(y)> + g(y) on F_p^(2m) for a permutation pi of F_p^m
/// given as a table, and an arbitrary g: F_p^m -> F_p given as a table.
pub fn maiorana_mcfarland(p: u32, m: usize, pi: &[u32], g: &[u8]) -> Result<PAryFunction> {
    PrimeModulus::new(p)?;
    if m == 0 {
        return Err(Error::BadDimension { what: "half dimension", value: 0, limit: 1 });
    }
    let pm = p
        .checked_pow(m as u32)
        .filter(|&s| s <= crate::MAX_DOMAIN)
        .ok_or(Error::DomainTooLarge { p, n: m })?;
    if pi.len() != pm as usize {
        return Err(Error::WrongLength { expected: pm as usize, got: pi.len() });
    }
    if g.len() != pm as usize {
        return Err(Error::WrongLength { expected: pm as usize, got: g.len() });
    }
    let mut seen = vec![false; pm as usize];
    for &image in pi {
        if image >= pm || seen[image as usize] {
            return Err(Error::NotPermutation);
        }
        seen[image as usize] = true;
    }
    for &digit in g {
        if u32::from(digit) >= p {
            return Err(Error::DigitOutOfRange { digit: digit.into(), p });
        }
    }
    let mut table = vec![0u8; (pm as usize) * (pm as usize)];
    for y in 0..pm {
        let image = pi[y as usize];
        let gy = u32::from(g[y as usize]);
        for x in 0..pm {
            table[(x + pm * y) as usize] = ((dot_points(p, x, image) + gy) % p) as u8;
        }
    }
    PAryFunction::new(p, 2 * m, table)
}

/// Which regularity class a bent function falls in, for cap purposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapKind {
    Regular,
    WeaklyRegularNotRegular,
    NonWeaklyRegular,
    Unknown,
}

impl std::str::FromStr for CapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<CapKind> {
        match s {
            "regular" => Ok(CapKind::Regular),
            "weakly-regular-not-regular" | "wrnr" => Ok(CapKind::WeaklyRegularNotRegular),
            "non-weakly-regular" => Ok(CapKind::NonWeaklyRegular),
            "unknown" => Ok(CapKind::Unknown),
            _ => Err(Error::Format(format!("unknown regularity kind {s:?}"))),
        }
    }
}

/// Largest k for which a bent function of the given class can be k-normal:
/// floor(n/2) in general, n/2 - 1 for weakly regular but not regular bent
/// functions in even dimension.
pub fn normality_cap(p: u32, n: usize, kind: CapKind) -> Result<usize> {
    PrimeModulus::new(p)?;
    if n == 0 {
        return Err(Error::BadDimension { what: "dimension", value: 0, limit: 1 });
    }
    if n.is_multiple_of(2) && kind == CapKind::WeaklyRegularNotRegular {
        Ok(n / 2 - 1)
    } else {
        Ok(n / 2)
    }
}

/// Counting data behind the existence bound for not weakly k-normal
/// functions, all exact: the number of k-flats, the count of functions
/// affine on a fixed k-flat, and the resulting density comparison.
#[derive(Debug, Clone)]
pub struct BoundQuery {
    p: u32,
    n: u64,
    k: u64,
}

impl BoundQuery {
    pub fn new(p: u32, n: u64, k: u64) -> Result<BoundQuery> {
        PrimeModulus::new(p)?;
        if k == 0 || k > n {
            return Err(Error::BadDimension {
                what: "flat dimension",
                value: k as usize,
                limit: n as usize,
            });
        }
        Ok(BoundQuery { p, n, k })
    }

    /// Number of k-dimensional affine flats of F_p^n:
    /// p^(n-k) * prod_i (p^n - p^i) / (p^k - p^i).
    pub fn flats(&self) -> BigUint {
        let p = BigUint::from(self.p);
        let mut count = p.pow((self.n - self.k) as u32);
        for i in 0..self.k {
            count *= p.pow(self.n as u32) - p.pow(i as u32);
            count /= p.pow(self.k as u32) - p.pow(i as u32);
        }
        count
    }

    /// Base-p logarithm of the number of functions affine on one fixed
    /// k-flat: p^n - p^k + k + 1.
    pub fn affine_on_flat_log(&self) -> BigInt {
        let p = BigInt::from(self.p);
        p.pow(self.n as u32) - p.pow(self.k as u32) + self.k + 1u32
    }

    /// Exact upper bound on the number of weakly k-normal functions:
    /// flats() * p^affine_on_flat_log(). Fails when the logarithm is too
    /// large to materialize the integer.
    pub fn weakly_normal_upper(&self) -> Result<BigUint> {
        let log = materializable_exponent(&self.affine_on_flat_log())?;
        Ok(self.flats() * BigUint::from(self.p).pow(log))
    }

    /// E = n(k+1) - k^2 + k + 1 - p^k, the base-p logarithm of the density
    /// bound's numerator.
    pub fn existence_exponent(&self) -> BigInt {
        let (n, k) = (BigInt::from(self.n), BigInt::from(self.k));
        let pk = BigInt::from(self.p).pow(self.k as u32);
        &n * (&k + 1) - &k * &k + &k + 1 - pk
    }

    /// Whether p^E < (p-1)^k holds, compared in exact integer arithmetic.
    pub fn nonnormal_exists(&self) -> bool {
        let e = self.existence_exponent();
        if e < BigInt::from(0) {
            // p^E < 1 <= (p-1)^k always holds for a negative exponent.
            return true;
        }
        let q = BigUint::from(self.p - 1).pow(self.k as u32);
        match materializable_exponent(&e) {
            Ok(mag) => BigUint::from(self.p).pow(mag) < q,
            // p^E dwarfs (p-1)^k long before the exponent cap is reached.
            Err(_) => false,
        }
    }
}

/// The existence test for not weakly k-normal functions, with the exact
/// rational bound value p^E / (p-1)^k it is based on.
#[derive(Debug, Clone)]
pub struct ExistenceBound {
    pub p: u32,
    pub n: u64,
    pub k: u64,
    /// E = n(k+1) - k^2 + k + 1 - p^k.
    pub exponent: BigInt,
    /// p^max(E,0): numerator of the bound value.
    pub numerator: BigUint,
    /// (p-1)^k * p^max(-E,0): denominator of the bound value.
    pub denominator: BigUint,
    /// True when the bound value is < 1, guaranteeing existence.
    pub exists: bool,
}

/// Caps exponents so the bound rationals stay physically representable.
fn materializable_exponent(e: &BigInt) -> Result<u32> {
    const LIMIT: u32 = 1 << 22;
    let magnitude = e.magnitude();
    let digits = magnitude.to_u32_digits();
    match digits.as_slice() {
        [] => Ok(0),
        [single] if *single <= LIMIT => Ok(*single),
        _ => Err(Error::BadExponent {
            exp: digits.first().copied().unwrap_or(u32::MAX).into(),
            limit: u64::from(LIMIT),
        }),
    }
}

/// Evaluates the density bound p^(n(k+1)-k^2+k+1-p^k) / (p-1)^k exactly;
/// a value below 1 proves that not weakly k-normal functions exist.
pub fn nonnormal_existence(p: u32, n: u64, k: u64) -> Result<ExistenceBound> {
    let query = BoundQuery::new(p, n, k)?;
    let exponent = query.existence_exponent();
    let magnitude = materializable_exponent(&exponent)?;
    let base = BigUint::from(p);
    let (numerator, mut denominator) = if exponent >= BigInt::from(0) {
        (base.pow(magnitude), BigUint::from(1u32))
    } else {
        (BigUint::from(1u32), base.pow(magnitude))
    };
    denominator *= BigUint::from(p - 1).pow(k as u32);
    let exists = numerator < denominator;
    Ok(ExistenceBound { p, n, k, exponent, numerator, denominator, exists })
}

/// Base-p exponent n(l+1) - l^2 - C(l,2) - C(l,3) of the density upper bound
/// for weakly l-normal functions of algebraic degree at most 3.
pub fn cubic_density_bound(p: u32, n: u64, l: u64) -> Result<i128> {
    PrimeModulus::new(p)?;
    if l > n {
        return Err(Error::BadDimension {
            what: "flat dimension",
            value: l as usize,
            limit: n as usize,
        });
    }
    let (n, l) = (n as i128, l as i128);
    let choose2 = l * (l - 1) / 2;
    let choose3 = l * (l - 1) * (l - 2) / 6;
    Ok(n * (l + 1) - l * l - choose2 - choose3)
}

/// Named functions used throughout the suite, resolvable by the CLI.
pub fn fixture(name: &str) -> Result<PAryFunction> {
    match name {
        // Ternary monomial with exponent (3^7+1)/2 = 1094 over GF(3,6):
        // weakly regular, not regular, 2-normal.
        "example-I" => coulter_matthews(6, 7, 3),
        // Regular bent function over GF(5,4), 2-normal.
        "example-II" => {
            let field = ExtField::new(5, 4)?;
            let spec = TraceSpec::new(&field, vec![
                TraceTerm { coeff_exp: 138, monomial_exp: 24 },
                TraceTerm { coeff_exp: 184, monomial_exp: 336 },
            ])?;
            Ok(PAryFunction::from_trace_spec(&spec))
        }
        // Odd-dimension monomials with exponents (3^9+1)/2 and (3^11+1)/2.
        "example-III" => coulter_matthews(7, 9, 6),
        "example-IV" => coulter_matthews(9, 11, 5),
        // Sporadic non-weakly regular bent functions over GF(3,6).
        "example-V" => {
            let field = ExtField::new(3, 6)?;
            let spec = TraceSpec::new(&field, vec![TraceTerm {
                coeff_exp: 7,
                monomial_exp: 98,
            }])?;
            Ok(PAryFunction::from_trace_spec(&spec))
        }
        "example-VI" => {
            let field = ExtField::new(3, 6)?;
            let spec = TraceSpec::new(&field, vec![
                TraceTerm { coeff_exp: 7, monomial_exp: 14 },
                TraceTerm { coeff_exp: 35, monomial_exp: 70 },
            ])?;
            Ok(PAryFunction::from_trace_spec(&spec))
        }
        // Non-weakly regular product bent function on F_3^6, and the variant
        // with the alternative reading of its two exponents.
        "example-VII" => product_construction(&ExtField::new(3, 4)?, 73, 76),
        "example-VII-alt" => product_construction(&ExtField::new(3, 4)?, 21, 42),
        // Quadratic bent functions over GF(3,4): Tr(c x^2) is regular when c
        // is a non-square and weakly regular non-regular when c is a square.
        "quad-regular-3-4" => {
            let field = ExtField::new(3, 4)?;
            let spec = TraceSpec::new(&field, vec![TraceTerm {
                coeff_exp: 1,
                monomial_exp: 2,
            }])?;
            Ok(PAryFunction::from_trace_spec(&spec))
        }
        "quad-wrnr-3-4" => {
            let field = ExtField::new(3, 4)?;
            let spec = TraceSpec::new(&field, vec![TraceTerm {
                coeff_exp: 0,
                monomial_exp: 2,
            }])?;
            Ok(PAryFunction::from_trace_spec(&spec))
        }
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

pub fn fixture_names() -> &'static [&'static str] {
    &[
        "example-I",
        "example-II",
        "example-III",
        "example-IV",
        "example-V",
        "example-VI",
        "example-VII",
        "example-VII-alt",
        "quad-regular-3-4",
        "quad-wrnr-3-4",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{classify_regularity, RegularityKind};

    #[test]
    fn coulter_matthews_exponent_is_halved_power() {
        // (3^7+1)/2 = 1094; check against a directly built trace table.
        let f = coulter_matthews(6, 7, 3).unwrap();
        let field = ExtField::new(3, 6).unwrap();
        let spec = TraceSpec::new(&field, vec![TraceTerm {
            coeff_exp: 3,
            monomial_exp: 1094,
        }])
        .unwrap();
        assert_eq!(f, PAryFunction::from_trace_spec(&spec));
    }

    #[test]
    fn quadratic_fixtures_have_expected_regularity() {
        let regular = fixture("quad-regular-3-4").unwrap();
        let verdict = classify_regularity(&regular).unwrap();
        assert_eq!(verdict.kind, RegularityKind::Regular);
        let wrnr = fixture("quad-wrnr-3-4").unwrap();
        let verdict = classify_regularity(&wrnr).unwrap();
        assert_eq!(verdict.kind, RegularityKind::WeaklyRegular);
    }

    #[test]
    fn product_construction_requires_independence() {
        let field = ExtField::new(3, 4).unwrap();
        // alpha = 1 makes {1, alpha, beta} dependent.
        assert_eq!(
            product_construction(&field, 0, 76).err(),
            Some(Error::DependentCoefficients)
        );
        // beta = 2 * alpha (2 = xi^40 since xi^40 has order 2) is dependent.
        let two = field.generator_power(40);
        assert_eq!(field.to_vector(&two), vec![2, 0, 0, 0]);
        assert_eq!(
            product_construction(&field, 7, 47).err(),
            Some(Error::DependentCoefficients)
        );
        // The published pair is independent and bent.
        let f = product_construction(&field, 73, 76).unwrap();
        assert_eq!(f.n(), 6);
        assert!(is_bent(&f));
    }

    #[test]
    fn product_construction_value_formula() {
        let field = ExtField::new(3, 4).unwrap();
        let f = product_construction(&field, 73, 76).unwrap();
        let alpha = field.generator_power(73);
        let beta = field.generator_power(76);
        let pn = field.size();
        for z in [0u32, 17, 200, 599, 728] {
            let x_idx = z % pn;
            let y1 = z / pn % 3;
            let y2 = z / (pn * 3);
            let x = field.elem_from_index(x_idx);
            let x2 = field.mul(&x, &x);
            let expect = (u32::from(field.trace(&x2))
                + (y1 + u32::from(field.trace(&field.mul(&alpha, &x2))))
                    * (y2 + u32::from(field.trace(&field.mul(&beta, &x2)))))
                % 3;
            assert_eq!(u32::from(f.value(z)), expect, "point {z}");
        }
    }

    #[test]
    fn direct_sum_extension_adds_product_term() {
        let f = fixture("quad-wrnr-3-4").unwrap();
        let g = direct_sum_extend(&f).unwrap();
        assert_eq!(g.n(), 6);
        let pn = f.size();
        for z in [0u32, 81, 200, 400, 728] {
            let x = z % pn;
            let y = z / pn % 3;
            let w = z / (pn * 3);
            assert_eq!(g.value(z), (f.value(x) + (y * w % 3) as u8) % 3);
        }
        assert!(is_bent(&g));
    }

    #[test]
    fn direct_sum_preserves_one_normality_of_zero() {
        use crate::normality::{test_normality, Mode, SearchOptions, Verdict};
        let f = PAryFunction::zero(3, 1).unwrap();
        let g = direct_sum_extend(&f).unwrap();
        let report = test_normality(&g, 2, Mode::Constant, &SearchOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Normal);
    }

    #[test]
    fn maiorana_mcfarland_is_bent_for_identity_permutation() {
        let pi: Vec<u32> = (0..9).collect();
        let g = vec![0u8; 9];
        let f = maiorana_mcfarland(3, 2, &pi, &g).unwrap();
        assert_eq!(f.n(), 4);
        assert!(is_bent(&f));
        // A non-permutation is rejected.
        let bad = vec![0u32; 9];
        assert_eq!(maiorana_mcfarland(3, 2, &bad, &g).err(), Some(Error::NotPermutation));
    }

    #[test]
    fn normality_caps() {
        assert_eq!(normality_cap(3, 6, CapKind::Regular).unwrap(), 3);
        assert_eq!(normality_cap(3, 6, CapKind::Unknown).unwrap(), 3);
        assert_eq!(
            normality_cap(3, 6, CapKind::WeaklyRegularNotRegular).unwrap(),
            2
        );
        assert_eq!(normality_cap(3, 7, CapKind::Regular).unwrap(), 3);
        assert_eq!(
            normality_cap(3, 7, CapKind::WeaklyRegularNotRegular).unwrap(),
            3
        );
    }

    #[test]
    fn existence_bound_matches_hand_computation() {
        let b = nonnormal_existence(3, 6, 3).unwrap();
        assert_eq!(b.exponent, BigInt::from(-8));
        assert!(b.exists);
        assert_eq!(b.numerator, BigUint::from(1u32));
        // 3^8 * 2^3 = 6561 * 8.
        assert_eq!(b.denominator, BigUint::from(6561u32 * 8));

        let b = nonnormal_existence(5, 4, 2).unwrap();
        assert_eq!(b.exponent, BigInt::from(-14));
        assert!(b.exists);

        let b = nonnormal_existence(3, 2, 1).unwrap();
        assert_eq!(b.exponent, BigInt::from(2));
        assert!(!b.exists);
        assert_eq!(b.numerator, BigUint::from(9u32));
        assert_eq!(b.denominator, BigUint::from(2u32));
    }

    #[test]
    fn bound_query_intermediates() {
        let q = BoundQuery::new(3, 3, 1).unwrap();
        assert_eq!(q.flats(), BigUint::from(crate::subspace::flat_count(3, 3, 1)));
        // p^n - p^k + k + 1 = 27 - 3 + 2 = 26.
        assert_eq!(q.affine_on_flat_log(), BigInt::from(26));
        assert_eq!(
            q.weakly_normal_upper().unwrap(),
            q.flats() * BigUint::from(3u32).pow(26)
        );
    }

    #[test]
    fn cubic_bound_exponents() {
        assert_eq!(cubic_density_bound(3, 6, 0).unwrap(), 6);
        assert_eq!(cubic_density_bound(3, 6, 3).unwrap(), 11);
        // Strictly decreasing in l once l is past sqrt(n).
        let values: Vec<i128> = (4..=8)
            .map(|l| cubic_density_bound(3, 16, l).unwrap())
            .collect();
        for pair in values.windows(2) {
            assert!(pair[0] > pair[1], "{values:?}");
        }
    }

    #[test]
    fn fixture_registry_is_complete() {
        for name in fixture_names() {
            // Skip the two large odd-dimension fixtures here; they are
            // exercised by the extended suite.
            if *name == "example-III" || *name == "example-IV" {
                continue;
            }
            let f = fixture(name).unwrap();
            assert!(f.size() >= 9, "{name}");
        }
        assert!(matches!(fixture("nope"), Err(Error::UnknownFixture(_))));
    }
}
