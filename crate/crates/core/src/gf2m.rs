//! Arithmetic in GF(2^m) for 2 <= m <= 32.
//!
//! Elements are packed into a `u32`: bit `k` is the coefficient of `α^k`
//! in the polynomial basis, where `α` is the class of `X` modulo the
//! primitive polynomial. Multiplication is a carry-less product followed by
//! reduction. Log/antilog tables are built lazily for `m <= 24` and back
//! the discrete logarithm and the fast power paths of the verifier.

use std::fmt;
use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gflinalg;

/// Largest degree for which log/antilog tables are built.
pub const MAX_TABLE_DEGREE: u32 = 24;

/// Default primitive polynomials indexed by degree. The entries for
/// m = 8..=16 are the ones the published log-support tables were computed
/// with; everything else is a standard low-weight primitive polynomial.
const DEFAULT_POLYS: [u64; 33] = [
    0,
    0,
    0x7,           // 2: x^2+x+1
    0xB,           // 3: x^3+x+1
    0x13,          // 4: x^4+x+1
    0x25,          // 5: x^5+x^2+1
    0x43,          // 6: x^6+x+1
    0x83,          // 7: x^7+x+1
    0x11D,         // 8: x^8+x^4+x^3+x^2+1
    0x211,         // 9: x^9+x^4+1
    0x409,         // 10: x^10+x^3+1
    0x805,         // 11: x^11+x^2+1
    0x1053,        // 12: x^12+x^6+x^4+x+1
    0x201B,        // 13: x^13+x^4+x^3+x+1
    0x4443,        // 14: x^14+x^10+x^6+x+1
    0x8003,        // 15: x^15+x+1
    0x1100B,       // 16: x^16+x^12+x^3+x+1
    0x20009,       // 17: x^17+x^3+1
    0x40081,       // 18: x^18+x^7+1
    0x80027,       // 19: x^19+x^5+x^2+x+1
    0x100009,      // 20: x^20+x^3+1
    0x200005,      // 21: x^21+x^2+1
    0x400003,      // 22: x^22+x+1
    0x800021,      // 23: x^23+x^5+1
    0x1000087,     // 24: x^24+x^7+x^2+x+1
    0x2000009,     // 25: x^25+x^3+1
    0x4000047,     // 26: x^26+x^6+x^2+x+1
    0x8000027,     // 27: x^27+x^5+x^2+x+1
    0x10000009,    // 28: x^28+x^3+1
    0x20000005,    // 29: x^29+x^2+1
    0x40000053,    // 30: x^30+x^6+x^4+x+1
    0x80000009,    // 31: x^31+x^3+1
    0x1_0040_0007, // 32: x^32+x^22+x^2+x+1
];

/// The default primitive polynomial for degree `m`, if `2 <= m <= 32`.
pub fn default_poly(m: u32) -> Option<u64> {
    DEFAULT_POLYS.get(m as usize).copied().filter(|&p| p != 0)
}

/// Parses a polynomial given either as a hex bit-string (`0x11D`) or as a
/// comma-separated exponent list (`8,4,3,2,0`).
pub fn parse_poly(text: &str) -> Result<u64> {
    let t = text.trim();
    let bad = || Error::BadPolynomial(text.to_string());
    if let Some(hex) = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        return u64::from_str_radix(hex, 16).map_err(|_| bad());
    }
    let mut poly = 0u64;
    for part in t.split(',') {
        let e: u32 = part.trim().parse().map_err(|_| bad())?;
        if e > 63 || poly & (1 << e) != 0 {
            return Err(bad());
        }
        poly |= 1 << e;
    }
    Ok(poly)
}

/// An element of GF(2^m), packed as polynomial-basis coordinates.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl std::ops::Add for Elem {
    type Output = Elem;
    // characteristic 2: addition is XOR
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for Elem {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

#[inline]
fn clmul(a: u32, b: u32) -> u64 {
    let a = a as u64;
    let mut b = b;
    let mut acc = 0u64;
    while b != 0 {
        let k = b.trailing_zeros();
        acc ^= a << k;
        b &= b - 1;
    }
    acc
}

#[inline]
fn reduce(mut x: u64, poly: u64, m: u32) -> u32 {
    while x >> m != 0 {
        let top = 63 - x.leading_zeros();
        x ^= poly << (top - m);
    }
    x as u32
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        while a != 0 && (63 - a.leading_zeros()) >= (63 - b.leading_zeros()) {
            let shift = (63 - a.leading_zeros()) - (63 - b.leading_zeros());
            a ^= b << shift;
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a degree-`m` polynomial over GF(2).
fn is_irreducible(poly: u64, m: u32) -> bool {
    let sqr = |x: u32| reduce(clmul(x, x), poly, m);
    // frob[k] = X^(2^k) mod poly
    let x = reduce(2, poly, m);
    let mut frob = Vec::with_capacity(m as usize + 1);
    frob.push(x);
    for k in 1..=m as usize {
        let prev = frob[k - 1];
        frob.push(sqr(prev));
    }
    if frob[m as usize] != x {
        return false;
    }
    prime_factors(m as u64).into_iter().all(|q| {
        let h = (frob[(m as u64 / q) as usize] ^ x) as u64;
        h != 0 && poly_gcd(poly, h) == 1
    })
}

struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A concrete representation of GF(2^m) with a designated primitive element.
pub struct Field {
    m: u32,
    poly: u64,
    mask: u32,
    order: u64,
    trace_mask: u32,
    order_factors: Vec<u64>,
    tables: OnceLock<Option<LogTables>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("m", &self.m)
            .field("poly", &format_args!("{:#x}", self.poly))
            .finish()
    }
}

impl Clone for Field {
    fn clone(&self) -> Self {
        Field {
            m: self.m,
            poly: self.poly,
            mask: self.mask,
            order: self.order,
            trace_mask: self.trace_mask,
            order_factors: self.order_factors.clone(),
            tables: OnceLock::new(),
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.poly == other.poly
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(2^m) = GF(2)[X]/(poly) and checks that `X` is primitive.
    pub fn new(m: u32, poly: u64) -> Result<Field> {
        if !(2..=32).contains(&m) {
            return Err(Error::UnsupportedDegree(m));
        }
        if poly >> m != 1 {
            return Err(Error::BadPolynomial(format!(
                "{poly:#x} does not have degree {m}"
            )));
        }
        if !is_irreducible(poly, m) {
            return Err(Error::ReduciblePolynomial(poly));
        }
        let order = (1u64 << m) - 1;
        let mut field = Field {
            m,
            poly,
            mask: order as u32,
            order,
            trace_mask: 0,
            order_factors: prime_factors(order),
            tables: OnceLock::new(),
        };
        let alpha = field.alpha();
        for &p in &field.order_factors {
            if field.pow_u64(alpha, order / p) == Elem::ONE {
                return Err(Error::NonPrimitiveAlpha(poly));
            }
        }
        let mut tm = 0u32;
        for k in 0..m {
            if field.trace_slow(Elem(1 << k)) {
                tm |= 1 << k;
            }
        }
        field.trace_mask = tm;
        Ok(field)
    }

    /// GF(2^m) with the built-in default polynomial.
    pub fn with_default(m: u32) -> Result<Field> {
        let poly = default_poly(m).ok_or(Error::UnsupportedDegree(m))?;
        Field::new(m, poly)
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn poly(&self) -> u64 {
        self.poly
    }

    /// Multiplicative group order 2^m - 1.
    #[inline]
    pub fn order(&self) -> u64 {
        self.order
    }

    #[inline]
    pub fn size(&self) -> u64 {
        self.order + 1
    }

    #[inline]
    pub fn alpha(&self) -> Elem {
        Elem(reduce(2, self.poly, self.m))
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        x.0 & !self.mask == 0
    }

    /// Wraps raw coordinates, panicking if they exceed m bits.
    pub fn elem(&self, bits: u32) -> Elem {
        assert!(
            bits & !self.mask == 0,
            "{bits:#x} is not an element of GF(2^{})",
            self.m
        );
        Elem(bits)
    }

    /// Iterates over all 2^m elements in coordinate order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..=self.order).map(|v| Elem(v as u32))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(reduce(clmul(a.0, b.0), self.poly, self.m))
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    fn pow_u64(&self, x: Elem, mut e: u64) -> Elem {
        let mut base = x;
        let mut acc = Elem::ONE;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// `x^e` for any integer `e`; the exponent is reduced mod 2^m - 1 for
    /// nonzero `x`.
    pub fn pow(&self, x: Elem, e: i64) -> Result<Elem> {
        if x.is_zero() {
            return match e {
                0 => Ok(Elem::ONE),
                e if e > 0 => Ok(Elem::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let r = e.rem_euclid(self.order as i64) as u64;
        Ok(self.pow_u64(x, r))
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_u64(x, self.order - 1))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `α^e`.
    pub fn exp(&self, e: u64) -> Elem {
        match self.tables() {
            Some(t) => Elem(t.exp[(e % self.order) as usize]),
            None => self.pow_u64(self.alpha(), e % self.order),
        }
    }

    /// σ^k(x) = x^(2^(k mod m)); negative `k` applies the inverse Frobenius.
    pub fn frobenius(&self, x: Elem, k: i64) -> Elem {
        let k = k.rem_euclid(self.m as i64);
        (0..k).fold(x, |y, _| self.square(y))
    }

    /// The unique square root.
    pub fn sqrt(&self, x: Elem) -> Elem {
        self.frobenius(x, -1)
    }

    fn trace_slow(&self, x: Elem) -> bool {
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..self.m {
            acc += y;
            y = self.square(y);
        }
        debug_assert!(acc.0 <= 1);
        acc == Elem::ONE
    }

    /// Absolute trace GF(2^m) -> GF(2).
    #[inline]
    pub fn trace(&self, x: Elem) -> bool {
        (x.0 & self.trace_mask).count_ones() & 1 == 1
    }

    /// True iff `x` lies in the subfield GF(2^ell).
    pub fn in_subfield(&self, x: Elem, ell: u32) -> bool {
        self.m.is_multiple_of(ell) && self.frobenius(x, ell as i64) == x
    }

    fn check_tower(&self, a: u32, b: u32, x: Elem) -> Result<()> {
        if a == 0 || b == 0 || !b.is_multiple_of(a) || !self.m.is_multiple_of(b) {
            return Err(Error::BadTowerDegrees(vec![a, b, self.m]));
        }
        if !self.in_subfield(x, b) {
            return Err(Error::NotInSubfield(b));
        }
        Ok(())
    }

    /// Relative trace GF(2^b) -> GF(2^a) for a | b | m.
    pub fn trace_rel(&self, x: Elem, a: u32, b: u32) -> Result<Elem> {
        self.check_tower(a, b, x)?;
        let mut acc = Elem::ZERO;
        let mut y = x;
        for _ in 0..b / a {
            acc += y;
            y = self.frobenius(y, a as i64);
        }
        Ok(acc)
    }

    /// Relative norm GF(2^b) -> GF(2^a) for a | b | m.
    pub fn norm_rel(&self, x: Elem, a: u32, b: u32) -> Result<Elem> {
        self.check_tower(a, b, x)?;
        let mut acc = Elem::ONE;
        let mut y = x;
        for _ in 0..b / a {
            acc = self.mul(acc, y);
            y = self.frobenius(y, a as i64);
        }
        Ok(acc)
    }

    /// All cube roots of `z`, ascending.
    ///
    /// For odd m cubing is a bijection and the root is `z^(1/3)`. For even m
    /// the nonzero roots are the nonzero kernel of the GF(2)-linear map
    /// `x -> x^4 + z x`, so the set has 0 or 3 elements when `z != 0`.
    pub fn cube_roots(&self, z: Elem) -> Vec<Elem> {
        if z.is_zero() {
            return vec![Elem::ZERO];
        }
        if self.m % 2 == 1 {
            let inv3 = mod_inverse(3, self.order).expect("3 is invertible mod 2^m-1 for odd m");
            return vec![self.pow_u64(z, inv3)];
        }
        let mut roots: Vec<Elem> = gflinalg::span(&gflinalg::map_kernel(self, |x| {
            self.square(self.square(x)) + self.mul(z, x)
        }))
        .into_iter()
        .filter(|x| !x.is_zero())
        .collect();
        roots.sort();
        roots
    }

    /// Solutions of `x^2 + x = w`: empty when Tr(w) = 1, otherwise `{x0, x0+1}`.
    pub fn artin_schreier(&self, w: Elem) -> Vec<Elem> {
        match gflinalg::map_solve(self, |x| self.square(x) + x, w) {
            Some(x0) => {
                let mut v = vec![x0, x0 + Elem::ONE];
                v.sort();
                v
            }
            None => Vec::new(),
        }
    }

    /// A GF(2)-basis of the subfield GF(2^ell), as the kernel of
    /// `x -> x^(2^ell) + x`.
    pub fn subfield_basis(&self, ell: u32) -> Result<Vec<Elem>> {
        if ell == 0 || !self.m.is_multiple_of(ell) {
            return Err(Error::BadTowerDegrees(vec![ell, self.m]));
        }
        Ok(gflinalg::map_kernel(self, |x| {
            self.frobenius(x, ell as i64) + x
        }))
    }

    /// All 2^ell elements of GF(2^ell) together with a generator `g` with
    /// GF(2)(g) = GF(2^ell). Enumerates the whole subfield, so only sensible
    /// for small `ell`.
    pub fn subfield(&self, ell: u32) -> Result<Subfield> {
        let basis = self.subfield_basis(ell)?;
        let elements = gflinalg::span(&basis);
        let generator = elements
            .iter()
            .copied()
            .find(|&x| !x.is_zero() && self.generates_subfield(x, ell))
            .expect("every finite field has a generator");
        Ok(Subfield {
            ell,
            elements,
            generator,
        })
    }

    /// True iff `x` lies in GF(2^ell) but in no proper subfield of it.
    pub fn generates_subfield(&self, x: Elem, ell: u32) -> bool {
        if !self.in_subfield(x, ell) {
            return false;
        }
        if ell == 1 {
            return true;
        }
        prime_factors(ell as u64)
            .into_iter()
            .all(|q| !self.in_subfield(x, ell / q as u32))
    }

    fn tables(&self) -> Option<&LogTables> {
        self.tables
            .get_or_init(|| {
                if self.m > MAX_TABLE_DEGREE {
                    return None;
                }
                let n = self.order as usize;
                let mut exp = Vec::with_capacity(n);
                let mut log = vec![u32::MAX; n + 1];
                let alpha = self.alpha();
                let mut x = Elem::ONE;
                for e in 0..n {
                    exp.push(x.0);
                    log[x.0 as usize] = e as u32;
                    x = self.mul(x, alpha);
                }
                Some(LogTables { exp, log })
            })
            .as_ref()
    }

    /// True when the log tables are (or can be) available.
    pub fn has_log_tables(&self) -> bool {
        self.m <= MAX_TABLE_DEGREE
    }

    /// The unique `e` in `0..2^m-1` with `α^e = x`.
    pub fn discrete_log(&self, x: Elem) -> Result<u32> {
        if x.is_zero() {
            return Err(Error::ZeroHasNoLog);
        }
        let t = self
            .tables()
            .ok_or(Error::Unsupported("discrete log needs m <= 24"))?;
        Ok(t.log[x.0 as usize])
    }

    /// Log and antilog tables, when m <= 24. `log[0]` is `u32::MAX`.
    pub fn log_exp_tables(&self) -> Option<(&[u32], &[u32])> {
        self.tables().map(|t| (t.log.as_slice(), t.exp.as_slice()))
    }

    /// Uniform element drawn from m random bits.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        Elem(rng.random::<u32>() & self.mask)
    }

    /// Uniform nonzero element, by rejection.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: Elem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.order;
        for &p in &self.order_factors {
            while ord.is_multiple_of(p) && self.pow_u64(x, ord / p) == Elem::ONE {
                ord /= p;
            }
        }
        Ok(ord)
    }
}

/// A subfield GF(2^ell) listed in full.
#[derive(Debug, Clone)]
pub struct Subfield {
    pub ell: u32,
    pub elements: Vec<Elem>,
    pub generator: Elem,
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(n as i128) as u64)
}
