//! Exact arithmetic in the field tower F_p ⊂ F_q ⊂ F_{q^{2m}}.
//!
//! The subfield F_q = F_p\[y\]/(base_modulus) is realized through lookup
//! tables (log/antilog for multiplication, digit vectors for addition), and
//! the top field K = F_{q^{2m}} = F_q\[z\]/(top_modulus) as coefficient
//! vectors over F_q. Elements of F_q are identified with their canonical
//! integer codes c = Σ d_j p^j; elements of K with N = Σ c_i q^i.
//!
//! All operations are pure and `FieldTower` is immutable after
//! construction, so values can be shared freely across threads.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Reject desk-scale searches beyond this subfield size.
pub const MAX_Q_FOR_SEARCH: u64 = 1 << 12;

// ---------------------------------------------------------------------------
// F_q tables
// ---------------------------------------------------------------------------

/// Table-driven arithmetic for the subfield F_q = F_{p^e}.
///
/// Codes are integers in `0..q`, the base-p digit expansion giving the
/// coefficients of the polynomial representative over F_p.
#[derive(Debug)]
pub(crate) struct FqTable {
    p: u64,
    e: u32,
    q: u64,
    base_modulus: Option<Vec<u64>>,
    digits: Vec<Vec<u64>>,
    log: Vec<u64>,
    exp: Vec<u64>,
    neg: Vec<u64>,
    inv: Vec<u64>,
}

impl FqTable {
    fn new(p: u64, e: u32, base_modulus: Option<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeP(p));
        }
        if e == 0 {
            return Err(Error::InvalidParameters("e must be >= 1".into()));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_Q_FOR_SEARCH)
            .ok_or_else(|| {
                Error::InvalidParameters(format!("q = {p}^{e} exceeds the supported cap"))
            })?;

        let base = match (&base_modulus, e) {
            (None, 1) => None,
            (None, _) => {
                return Err(Error::InvalidParameters(
                    "base_modulus required when e > 1".into(),
                ))
            }
            (Some(_), 1) => {
                return Err(Error::InvalidParameters(
                    "base_modulus must be absent when e = 1".into(),
                ))
            }
            (Some(f), _) => {
                validate_modulus(f, e as usize, p, "base_modulus")?;
                let fp = PrimeCoeffs { p };
                if !is_irreducible(&fp, f) {
                    return Err(Error::ReducibleModulus(poly_string(f)));
                }
                Some(f.clone())
            }
        };

        let mut digits = Vec::with_capacity(q as usize);
        for c in 0..q {
            let mut d = vec![0u64; e as usize];
            let mut n = c;
            for slot in d.iter_mut() {
                *slot = n % p;
                n /= p;
            }
            digits.push(d);
        }

        let mut table = FqTable {
            p,
            e,
            q,
            base_modulus: base,
            digits,
            log: vec![0; q as usize],
            exp: Vec::new(),
            neg: vec![0; q as usize],
            inv: vec![0; q as usize],
        };

        for c in 0..q {
            let d: Vec<u64> = table.digits[c as usize]
                .iter()
                .map(|&x| (p - x) % p)
                .collect();
            table.neg[c as usize] = table.encode_digits(&d);
        }

        let g = table.find_generator();
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut acc = 1u64;
        for i in 0..q - 1 {
            exp.push(acc);
            table.log[acc as usize] = i;
            acc = table.raw_mul(acc, g);
        }
        debug_assert_eq!(acc, 1);
        table.exp = exp;
        for c in 1..q {
            let l = table.log[c as usize];
            table.inv[c as usize] = table.exp[((q - 1 - l) % (q - 1)) as usize];
        }
        Ok(table)
    }

    fn encode_digits(&self, d: &[u64]) -> u64 {
        let mut n = 0;
        for &x in d.iter().rev() {
            n = n * self.p + x;
        }
        n
    }

    /// Multiplication straight from the polynomial representation; only used
    /// while the log/antilog tables are under construction.
    fn raw_mul(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            return (a * b) % self.p;
        }
        let da = &self.digits[a as usize];
        let db = &self.digits[b as usize];
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let f = self.base_modulus.as_ref().unwrap();
        for t in (e..2 * e - 1).rev() {
            let c = prod[t];
            if c == 0 {
                continue;
            }
            prod[t] = 0;
            // z^t = z^{t-e} * (-(f - z^e))
            for (i, &fi) in f.iter().enumerate().take(e) {
                let idx = t - e + i;
                let sub = (c * fi) % self.p;
                prod[idx] = (prod[idx] + self.p - sub) % self.p;
            }
        }
        self.encode_digits(&prod[..e])
    }

    fn raw_pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.raw_mul(acc, base);
            }
            base = self.raw_mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> u64 {
        let order = self.q - 1;
        if order == 1 {
            return 1;
        }
        let primes = prime_factors(order);
        'cand: for g in 2..self.q {
            for &r in &primes {
                if self.raw_pow(g, order / r) == 1 {
                    continue 'cand;
                }
            }
            return g;
        }
        unreachable!("F_q* is cyclic and has a generator");
    }

    pub(crate) fn q(&self) -> u64 {
        self.q
    }

    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let da = &self.digits[a as usize];
        let db = &self.digits[b as usize];
        let mut n = 0;
        for i in (0..self.e as usize).rev() {
            n = n * self.p + (da[i] + db[i]) % self.p;
        }
        n
    }

    pub(crate) fn neg(&self, a: u64) -> u64 {
        self.neg[a as usize]
    }

    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let l = self.log[a as usize] + self.log[b as usize];
        self.exp[(l % (self.q - 1)) as usize]
    }

    pub(crate) fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "division by zero in F_q");
        self.inv[a as usize]
    }

    pub(crate) fn pow(&self, a: u64, mut exp: u64) -> u64 {
        if a == 0 {
            return if exp == 0 { 1 } else { 0 };
        }
        exp %= self.q - 1;
        self.exp[((self.log[a as usize] as u128 * exp as u128) % (self.q - 1) as u128) as usize]
    }
}

// ---------------------------------------------------------------------------
// Polynomial helpers over an abstract coefficient field
// ---------------------------------------------------------------------------

/// Minimal field interface for the polynomial routines shared between the
/// F_p and F_q levels of the tower.
pub(crate) trait Coeffs {
    fn size(&self) -> u64;
    fn add(&self, a: u64, b: u64) -> u64;
    fn sub(&self, a: u64, b: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;
    fn inv(&self, a: u64) -> u64;
}

struct PrimeCoeffs {
    p: u64,
}

impl Coeffs for PrimeCoeffs {
    fn size(&self) -> u64 {
        self.p
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }
    fn inv(&self, a: u64) -> u64 {
        // Fermat; p is prime and small.
        let mut acc = 1u64;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Coeffs for FqTable {
    fn size(&self) -> u64 {
        self.q
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        FqTable::add(self, a, b)
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        FqTable::sub(self, a, b)
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        FqTable::mul(self, a, b)
    }
    fn inv(&self, a: u64) -> u64 {
        FqTable::inv(self, a)
    }
}

fn poly_deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul<F: Coeffs + ?Sized>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    poly_trim(out)
}

/// Remainder of `a` modulo `b` (b nonzero).
fn poly_rem<F: Coeffs + ?Sized>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    let db = poly_deg(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]);
    let mut r: Vec<u64> = a.to_vec();
    while let Some(dr) = poly_deg(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        for (i, &bi) in b.iter().enumerate().take(db + 1) {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
        }
    }
    poly_trim(r)
}

fn poly_gcd<F: Coeffs + ?Sized>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// x^(q^steps) mod g, computed by iterating the q-power map.
fn poly_frobenius_iterate<F: Coeffs + ?Sized>(f: &F, g: &[u64], steps: u32) -> Vec<u64> {
    let q = f.size();
    let mut h = vec![0u64, 1]; // x
    for _ in 0..steps {
        // h <- h^q mod g by square-and-multiply on the exponent q.
        let mut acc = vec![1u64];
        let mut base = h.clone();
        let mut e = q;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_rem(f, &poly_mul(f, &acc, &base), g);
            }
            base = poly_rem(f, &poly_mul(f, &base, &base), g);
            e >>= 1;
        }
        h = acc;
    }
    h
}

/// Rabin irreducibility test for a monic polynomial over the field `f`.
fn is_irreducible<F: Coeffs + ?Sized>(f: &F, g: &[u64]) -> bool {
    let n = match poly_deg(g) {
        Some(0) | None => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let x = vec![0u64, 1];
    for r in prime_factors(n as u64) {
        let h = poly_frobenius_iterate(f, g, (n as u64 / r) as u32);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = f.sub(diff[1], 1);
        let diff = poly_trim(diff);
        let gcd = poly_gcd(f, &diff, g);
        if poly_deg(&gcd) != Some(0) {
            return false;
        }
    }
    poly_frobenius_iterate(f, g, n as u32) == x
}

fn validate_modulus(poly: &[u64], degree: usize, coeff_bound: u64, what: &str) -> Result<()> {
    if poly.len() != degree + 1 {
        return Err(Error::InvalidParameters(format!(
            "{what} must have degree {degree} (got {} coefficients)",
            poly.len()
        )));
    }
    if poly[degree] != 1 {
        return Err(Error::InvalidParameters(format!("{what} must be monic")));
    }
    if poly.iter().any(|&c| c >= coeff_bound) {
        return Err(Error::InvalidParameters(format!(
            "{what} has a coefficient outside the coefficient field"
        )));
    }
    Ok(())
}

fn poly_string(poly: &[u64]) -> String {
    let terms: Vec<String> = poly
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "z".into(),
            (1, c) => format!("{c}*z"),
            (i, 1) => format!("z^{i}"),
            (i, c) => format!("{c}*z^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// The tower
// ---------------------------------------------------------------------------

/// Parameters and tables for F_p ⊂ F_q ⊂ K = F_{q^{2m}}.
///
/// The intermediate field F = F_{q^m} is not stored: it is exactly the fixed
/// field of the involution σ and is recovered through `FieldElement::sigma`.
#[derive(Debug)]
pub struct FieldTower {
    fq: FqTable,
    m: u32,
    top_modulus: Vec<u64>,
    /// z^{2m+t} mod top_modulus for t = 0..2m-2, as F_q coefficient rows.
    reduction_rows: Vec<Vec<u64>>,
    /// (z^j)^q mod top_modulus for j = 0..2m-1.
    frobenius_rows: Vec<Vec<u64>>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.fq.p == other.fq.p
            && self.fq.e == other.fq.e
            && self.m == other.m
            && self.fq.base_modulus == other.fq.base_modulus
            && self.top_modulus == other.top_modulus
    }
}

impl Eq for FieldTower {}

/// Builds and validates the tower: p must be prime, both moduli irreducible
/// over their coefficient fields, and degrees must match (e, 2m).
///
/// Modulus coefficients are listed from the constant term upward and must be
/// monic; top-modulus coefficients are canonical F_q codes.
pub fn build_field(
    p: u64,
    e: u32,
    m: u32,
    base_modulus: Option<&[u64]>,
    top_modulus: &[u64],
) -> Result<Arc<FieldTower>> {
    if m == 0 {
        return Err(Error::InvalidParameters("m must be >= 1".into()));
    }
    let fq = FqTable::new(p, e, base_modulus.map(|f| f.to_vec()))?;
    let two_m = 2 * m as usize;
    validate_modulus(top_modulus, two_m, fq.q(), "top_modulus")?;
    if !is_irreducible(&fq, top_modulus) {
        return Err(Error::ReducibleModulus(poly_string(top_modulus)));
    }

    // z^{2m} = -(f - z^{2m}); extend one degree at a time.
    let mut reduction_rows: Vec<Vec<u64>> = Vec::with_capacity(two_m - 1);
    let first: Vec<u64> = top_modulus[..two_m].iter().map(|&c| fq.neg(c)).collect();
    reduction_rows.push(first);
    for _ in 1..two_m - 1 {
        let prev = reduction_rows.last().unwrap();
        let mut next = vec![0u64; two_m];
        let top = prev[two_m - 1];
        next[1..two_m].copy_from_slice(&prev[..two_m - 1]);
        if top != 0 {
            let head = &reduction_rows[0];
            for i in 0..two_m {
                next[i] = fq.add(next[i], fq.mul(top, head[i]));
            }
        }
        reduction_rows.push(next);
    }

    let mut tower = FieldTower {
        fq,
        m,
        top_modulus: top_modulus.to_vec(),
        reduction_rows,
        frobenius_rows: Vec::new(),
    };

    // (z)^q by square-and-multiply, then (z^j)^q = (z^q)^j.
    let mut z = vec![0u64; two_m];
    z[1] = 1;
    let zq = tower.coeff_pow(&z, tower.fq.q());
    let mut rows = Vec::with_capacity(two_m);
    let mut acc = vec![0u64; two_m];
    acc[0] = 1;
    for _ in 0..two_m {
        rows.push(acc.clone());
        acc = tower.coeff_mul(&acc, &zq);
    }
    tower.frobenius_rows = rows;

    Ok(Arc::new(tower))
}

impl FieldTower {
    pub fn p(&self) -> u64 {
        self.fq.p
    }
    pub fn e(&self) -> u32 {
        self.fq.e
    }
    /// The subfield size q = p^e.
    pub fn q(&self) -> u64 {
        self.fq.q
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    /// Extension degree [K : F_q] = 2m.
    pub fn ext_degree(&self) -> usize {
        2 * self.m as usize
    }
    /// |K| = q^{2m}.
    pub fn field_size(&self) -> u128 {
        (self.fq.q as u128).pow(2 * self.m)
    }
    pub fn base_modulus(&self) -> Option<&[u64]> {
        self.fq.base_modulus.as_deref()
    }
    pub fn top_modulus(&self) -> &[u64] {
        &self.top_modulus
    }

    pub fn fq_add(&self, a: u64, b: u64) -> u64 {
        self.fq.add(a, b)
    }
    pub fn fq_sub(&self, a: u64, b: u64) -> u64 {
        self.fq.sub(a, b)
    }
    pub fn fq_neg(&self, a: u64) -> u64 {
        self.fq.neg(a)
    }
    pub fn fq_mul(&self, a: u64, b: u64) -> u64 {
        self.fq.mul(a, b)
    }
    pub fn fq_inv(&self, a: u64) -> u64 {
        self.fq.inv(a)
    }
    pub fn fq_pow(&self, a: u64, exp: u64) -> u64 {
        self.fq.pow(a, exp)
    }

    fn coeff_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.ext_degree();
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = self.fq.add(prod[i + j], self.fq.mul(x, y));
            }
        }
        for t in (n..2 * n - 1).rev() {
            let c = prod[t];
            if c == 0 {
                continue;
            }
            prod[t] = 0;
            let row = &self.reduction_rows[t - n];
            for i in 0..n {
                prod[i] = self.fq.add(prod[i], self.fq.mul(c, row[i]));
            }
        }
        prod.truncate(n);
        prod
    }

    fn coeff_pow(&self, base: &[u64], mut exp: u64) -> Vec<u64> {
        let n = self.ext_degree();
        let mut acc = vec![0u64; n];
        acc[0] = 1;
        let mut base = base.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.coeff_mul(&acc, &base);
            }
            base = self.coeff_mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    fn coeff_frobenius(&self, a: &[u64]) -> Vec<u64> {
        // x -> x^q is F_q-linear: apply it on the power basis.
        let n = self.ext_degree();
        let mut out = vec![0u64; n];
        for (j, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let row = &self.frobenius_rows[j];
            for i in 0..n {
                out[i] = self.fq.add(out[i], self.fq.mul(c, row[i]));
            }
        }
        out
    }

    /// Inverse by extended Euclid against the top modulus.
    fn coeff_inv(&self, a: &[u64]) -> Option<Vec<u64>> {
        if a.iter().all(|&c| c == 0) {
            return None;
        }
        // Invariant: r0 = s0 * a (mod f), r1 = s1 * a (mod f).
        let f = &self.top_modulus;
        let mut r0 = poly_trim(f.clone());
        let mut r1 = poly_trim(a.to_vec());
        let mut s0: Vec<u64> = Vec::new();
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (quot, rem) = {
                let db = poly_deg(&r1).unwrap();
                let lead_inv = self.fq.inv(r1[db]);
                let mut r = r0.clone();
                let mut qpoly = vec![0u64; r.len().saturating_sub(db) + 1];
                while let Some(dr) = poly_deg(&r) {
                    if dr < db {
                        break;
                    }
                    let c = self.fq.mul(r[dr], lead_inv);
                    qpoly[dr - db] = c;
                    for (i, &bi) in r1.iter().enumerate().take(db + 1) {
                        r[dr - db + i] = self.fq.sub(r[dr - db + i], self.fq.mul(c, bi));
                    }
                }
                (poly_trim(qpoly), poly_trim(r))
            };
            let qs = poly_mul(&self.fq, &quot, &s1);
            let mut snew = s0.clone();
            snew.resize(snew.len().max(qs.len()), 0);
            for (i, &c) in qs.iter().enumerate() {
                snew[i] = self.fq.sub(snew[i], c);
            }
            s0 = s1;
            s1 = poly_trim(snew);
            r0 = r1;
            r1 = rem;
        }
        // r0 = gcd(a, f), a unit since f is irreducible and a != 0.
        let unit = self.fq.inv(r0[0]);
        debug_assert_eq!(poly_deg(&r0), Some(0));
        let mut out = vec![0u64; self.ext_degree()];
        for (i, &c) in s0.iter().enumerate() {
            out[i] = self.fq.mul(c, unit);
        }
        Some(out)
    }
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// One element of K = F_{q^{2m}}, as F_q coefficients relative to the power
/// basis of the top modulus.
#[derive(Clone)]
pub struct FieldElement {
    coeffs: Vec<u64>,
    tower: Arc<FieldTower>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_tower(&self.tower, &other.tower)
    }
}
impl Eq for FieldElement {}

pub(crate) fn same_tower(a: &Arc<FieldTower>, b: &Arc<FieldTower>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self.canonical())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical())
    }
}

/// Constructors living on the tower, so every element carries its context.
#[allow(clippy::wrong_self_convention)]
pub trait TowerExt {
    fn zero(&self) -> FieldElement;
    fn one(&self) -> FieldElement;
    /// The power-basis generator z (written ω in the demos).
    fn omega(&self) -> FieldElement;
    /// Embed an F_q code as a constant of K.
    fn from_fq(&self, code: u64) -> FieldElement;
    fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement>;
    /// Decode the canonical integer N = Σ c_i q^i.
    fn from_canonical(&self, n: u128) -> Result<FieldElement>;
    /// The power basis (1, z, ..., z^{2m-1}).
    fn power_basis(&self) -> Vec<FieldElement>;
    fn random_element<R: rand::Rng>(&self, rng: &mut R) -> FieldElement;
    /// Square root of a subfield element; `None` when no root exists
    /// (odd characteristic non-squares).
    fn square_root(&self, x: &FieldElement) -> Result<Option<FieldElement>>;
}

impl TowerExt for Arc<FieldTower> {
    fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.ext_degree()],
            tower: Arc::clone(self),
        }
    }

    fn one(&self) -> FieldElement {
        self.from_fq(1)
    }

    fn omega(&self) -> FieldElement {
        let mut coeffs = vec![0; self.ext_degree()];
        coeffs[1] = 1;
        FieldElement {
            coeffs,
            tower: Arc::clone(self),
        }
    }

    fn from_fq(&self, code: u64) -> FieldElement {
        assert!(code < self.q(), "F_q code out of range");
        let mut coeffs = vec![0; self.ext_degree()];
        coeffs[0] = code;
        FieldElement {
            coeffs,
            tower: Arc::clone(self),
        }
    }

    fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.ext_degree() {
            return Err(Error::InvalidParameters(format!(
                "element needs {} coefficients, got {}",
                self.ext_degree(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|&c| c >= self.q()) {
            return Err(Error::InvalidParameters(
                "coefficient outside F_q".into(),
            ));
        }
        Ok(FieldElement {
            coeffs: coeffs.to_vec(),
            tower: Arc::clone(self),
        })
    }

    fn from_canonical(&self, mut n: u128) -> Result<FieldElement> {
        let q = self.q() as u128;
        let mut coeffs = vec![0u64; self.ext_degree()];
        for c in coeffs.iter_mut() {
            *c = (n % q) as u64;
            n /= q;
        }
        if n != 0 {
            return Err(Error::InvalidParameters(
                "canonical encoding out of range for this field".into(),
            ));
        }
        Ok(FieldElement {
            coeffs,
            tower: Arc::clone(self),
        })
    }

    fn power_basis(&self) -> Vec<FieldElement> {
        (0..self.ext_degree())
            .map(|j| {
                let mut coeffs = vec![0; self.ext_degree()];
                coeffs[j] = 1;
                FieldElement {
                    coeffs,
                    tower: Arc::clone(self),
                }
            })
            .collect()
    }

    fn random_element<R: rand::Rng>(&self, rng: &mut R) -> FieldElement {
        let q = self.q();
        let coeffs = (0..self.ext_degree()).map(|_| rng.gen_range(0..q)).collect();
        FieldElement {
            coeffs,
            tower: Arc::clone(self),
        }
    }

    fn square_root(&self, x: &FieldElement) -> Result<Option<FieldElement>> {
        let code = x.as_fq_code().ok_or(Error::NotInBaseField)?;
        let q = self.q();
        if self.p() == 2 {
            // Squaring is bijective; invert it with one more Frobenius round.
            return Ok(Some(self.from_fq(self.fq_pow(code, q / 2))));
        }
        for y in 0..q {
            if self.fq_mul(y, y) == code {
                return Ok(Some(self.from_fq(y)));
            }
        }
        Ok(None)
    }
}

impl FieldElement {
    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Canonical integer encoding N = Σ c_i q^i.
    pub fn canonical(&self) -> u128 {
        let q = self.tower.q() as u128;
        let mut n = 0u128;
        for &c in self.coeffs.iter().rev() {
            n = n * q + c as u128;
        }
        n
    }

    /// The F_q code when the element is a constant, i.e. lies in F_q.
    pub fn as_fq_code(&self) -> Option<u64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Option<FieldElement> {
        self.tower.coeff_inv(&self.coeffs).map(|coeffs| FieldElement {
            coeffs,
            tower: Arc::clone(&self.tower),
        })
    }

    pub fn pow(&self, exp: u64) -> FieldElement {
        FieldElement {
            coeffs: self.tower.coeff_pow(&self.coeffs, exp),
            tower: Arc::clone(&self.tower),
        }
    }

    /// x^{q^i}; any integer i is reduced modulo 2m.
    pub fn frobenius_power(&self, i: i64) -> FieldElement {
        let n = self.tower.ext_degree() as i64;
        let steps = i.rem_euclid(n) as usize;
        let mut coeffs = self.coeffs.clone();
        for _ in 0..steps {
            coeffs = self.tower.coeff_frobenius(&coeffs);
        }
        FieldElement {
            coeffs,
            tower: Arc::clone(&self.tower),
        }
    }

    /// The Hermitian involution σ(x) = x^{q^m}.
    pub fn sigma(&self) -> FieldElement {
        self.frobenius_power(self.tower.m() as i64)
    }

    /// Tr_{K/F_q}(x) = Σ_{i=0}^{2m-1} x^{q^i}; the result is a constant.
    pub fn trace(&self) -> FieldElement {
        let mut acc = self.clone();
        let mut sum = self.clone();
        for _ in 1..self.tower.ext_degree() {
            acc = acc.frobenius_power(1);
            sum = &sum + &acc;
        }
        debug_assert!(sum.as_fq_code().is_some());
        sum
    }

    /// The trace as an F_q code.
    pub fn trace_code(&self) -> u64 {
        self.trace().as_fq_code().expect("trace lies in F_q")
    }

    /// N_{K/F_q}(x) = Π_{i=0}^{2m-1} x^{q^i}; the result is a constant.
    pub fn norm(&self) -> FieldElement {
        let mut acc = self.clone();
        let mut prod = self.clone();
        for _ in 1..self.tower.ext_degree() {
            acc = acc.frobenius_power(1);
            prod = &prod * &acc;
        }
        debug_assert!(prod.as_fq_code().is_some());
        prod
    }

    pub fn norm_code(&self) -> u64 {
        self.norm().as_fq_code().expect("norm lies in F_q")
    }

    /// Scale by an F_q code.
    pub fn scale_fq(&self, c: u64) -> FieldElement {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&x| self.tower.fq_mul(x, c))
            .collect();
        FieldElement {
            coeffs,
            tower: Arc::clone(&self.tower),
        }
    }
}

macro_rules! check_towers {
    ($a:expr, $b:expr) => {
        assert!(
            same_tower(&$a.tower, &$b.tower),
            "elements from different field towers"
        );
    };
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        check_towers!(self, rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| self.tower.fq_add(a, b))
            .collect();
        FieldElement {
            coeffs,
            tower: Arc::clone(&self.tower),
        }
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        check_towers!(self, rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| self.tower.fq_sub(a, b))
            .collect();
        FieldElement {
            coeffs,
            tower: Arc::clone(&self.tower),
        }
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        check_towers!(self, rhs);
        FieldElement {
            coeffs: self.tower.coeff_mul(&self.coeffs, &rhs.coeffs),
            tower: Arc::clone(&self.tower),
        }
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let coeffs = self.coeffs.iter().map(|&a| self.tower.fq_neg(a)).collect();
        FieldElement {
            coeffs,
            tower: Arc::clone(&self.tower),
        }
    }
}
