//! Exact arithmetic in F_p and F_{q^2}.
//!
//! F_{q^2} is presented as F_p[z]/(h(z)) where h is the monic irreducible
//! polynomial of degree 2r whose coefficient tuple (c_{2r-1}, ..., c_0),
//! read as a base-p integer, is smallest. This is not the Conway
//! presentation, so raw element encodings may differ from other systems;
//! ranks, dimensions and code parameters do not depend on the choice.
//!
//! An element is encoded as the integer `sum c_i p^i` of its coefficient
//! vector. Multiplication and inversion go through log/antilog tables built
//! at construction time.

use crate::error::{Error, Result};

pub(crate) fn is_prime(n: u64) -> bool {
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

/// A prime power `q = p^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u32,
    r: u32,
    q: u32,
}

impl PrimePower {
    pub fn new(p: u64, r: i64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r <= 0 {
            return Err(Error::InvalidExponent(r));
        }
        let q = (p as u128)
            .checked_pow(r as u32)
            .filter(|&q| q <= u32::MAX as u128 / 2)
            .ok_or_else(|| Error::InvalidArgument(format!("{p}^{r} is too large")))?;
        Ok(Self {
            p: p as u32,
            r: r as u32,
            q: q as u32,
        })
    }

    /// Factors `q` as a prime power.
    pub fn from_q(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
        }
        let p = (2..=q)
            .find(|d| q.is_multiple_of(*d))
            .expect("q >= 2 has a prime factor");
        let mut rest = q;
        let mut r = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            r += 1;
        }
        if rest != 1 {
            return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
        }
        Self::new(p, r)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_prime(&self) -> bool {
        self.r == 1
    }
}

/// The prime field F_p, used for the coefficients of reduced polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
    inverses: Vec<u32>,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let mut inverses = vec![0; p as usize];
        for a in 1..p {
            inverses[a as usize] = pow_mod(a as u64, p as u64 - 2, p as u64) as u32;
        }
        Ok(Self { p, inverses })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inverses[(a % self.p) as usize])
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// An element of F_{q^2}, encoded as `sum c_i p^i` over its coefficient vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Field operations exposed through [`FieldCtx::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp<'a> {
    Add(&'a [FieldElem]),
    Mul(&'a [FieldElem]),
    Inv(FieldElem),
    Pow(FieldElem, u64),
}

/// The field F_{q^2} with its Frobenius involution `x -> x^q`.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    pp: PrimePower,
    degree: usize,
    size: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
    neg_table: Vec<u32>,
}

/// Polynomials over F_p in this module are little-endian coefficient vectors.
fn poly_rem(mut num: Vec<u32>, den: &[u32], p: u32) -> Vec<u32> {
    let dd = den.len() - 1;
    let lead_inv = pow_mod(den[dd] as u64, p as u64 - 2, p as u64) as u32;
    while num.len() > dd {
        let top = *num.last().unwrap();
        if top != 0 {
            let factor = (top as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = num.len() - 1 - dd;
            for (i, &c) in den.iter().enumerate() {
                let sub = (factor as u64 * c as u64 % p as u64) as u32;
                let slot = &mut num[shift + i];
                *slot = (*slot + p - sub) % p;
            }
        }
        num.pop();
    }
    num
}

fn digits(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((v % p as u64) as u32);
        v /= p as u64;
    }
    out
}

/// Monic irreducibility by trial division against every monic polynomial of
/// degree `1..=deg/2`.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut divisor = digits(low, p, d);
            divisor.push(1);
            if poly_rem(poly.to_vec(), &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible polynomial of the given degree with the smallest
/// base-p reading of `(c_{deg-1}, ..., c_0)`.
pub fn minimal_irreducible(p: u32, degree: usize) -> Vec<u32> {
    let count = (p as u64).pow(degree as u32);
    for low in 0..count {
        let mut poly = digits(low, p, degree);
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldCtx {
    /// Builds F_{q^2} for `q = p^r`.
    pub fn new(p: u64, r: i64) -> Result<Self> {
        Self::from_prime_power(PrimePower::new(p, r)?)
    }

    pub fn from_prime_power(pp: PrimePower) -> Result<Self> {
        let p = pp.p;
        let degree = 2 * pp.r as usize;
        let size =
            pp.q.checked_mul(pp.q)
                .ok_or_else(|| Error::InvalidArgument(format!("q = {} is too large", pp.q)))?;
        let modulus = minimal_irreducible(p, degree);

        let neg_table = (0..size)
            .map(|v| {
                let d = digits(v as u64, p, degree);
                encode(d.iter().map(|&c| (p - c) % p), p)
            })
            .collect::<Vec<_>>();
        let add_table = if p != 2 && size <= 256 {
            let mut t = vec![0; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    t[(a * size + b) as usize] = add_digits(a, b, p, degree);
                }
            }
            Some(t)
        } else {
            None
        };

        let mut ctx = FieldCtx {
            pp,
            degree,
            size,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_table,
            neg_table,
        };
        ctx.build_log_tables();
        Ok(ctx)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.pp.p;
        let da = digits(a as u64, p, self.degree);
        let db = digits(b as u64, p, self.degree);
        let mut prod = vec![0u32; 2 * self.degree - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        let rem = poly_rem(prod, &self.modulus, p);
        encode(rem.into_iter(), p)
    }

    fn build_log_tables(&mut self) {
        let order = self.size - 1;
        // q^2 >= 4, so a generator exists among the non-identity elements.
        let g = (2..self.size)
            .find(|&g| {
                let mut acc = 1u32;
                for k in 1..=order {
                    acc = self.mul_slow(acc, g);
                    if acc == 1 {
                        return k == order;
                    }
                }
                false
            })
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; self.size as usize];
        let mut acc = 1u32;
        for k in 0..order {
            exp[k as usize] = acc;
            log[acc as usize] = k;
            acc = self.mul_slow(acc, g);
        }
        for k in order..2 * order {
            exp[k as usize] = exp[(k - order) as usize];
        }
        self.exp = exp;
        self.log = log;
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn q(&self) -> u32 {
        self.pp.q
    }

    /// Number of elements, `q^2`.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Monic modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.size).map(FieldElem)
    }

    pub fn elem(&self, index: u32) -> Result<FieldElem> {
        if index >= self.size {
            return Err(Error::InvalidArgument(format!(
                "element index {index} is outside a field with {} elements",
                self.size
            )));
        }
        Ok(FieldElem(index))
    }

    /// Embeds an F_p value as a constant.
    pub fn from_prime(&self, c: u32) -> FieldElem {
        FieldElem(c % self.pp.p)
    }

    /// Coefficients of `x` in the basis `1, z, ..., z^{2r-1}`.
    pub fn coeffs(&self, x: FieldElem) -> Vec<u32> {
        digits(x.0 as u64, self.pp.p, self.degree)
    }

    /// A fixed generator of the multiplicative group.
    pub fn generator(&self) -> FieldElem {
        FieldElem(self.exp[1])
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.pp.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        match &self.add_table {
            Some(t) => FieldElem(t[(a.0 * self.size + b.0) as usize]),
            None => FieldElem(add_digits(a.0, b.0, self.pp.p, self.degree)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg_table[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        FieldElem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.size - 1;
        Ok(FieldElem(
            self.exp[((order - self.log[a.0 as usize]) % order) as usize],
        ))
    }

    /// `a^e` by square-and-multiply.
    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut acc = FieldElem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius involution `x -> x^q`.
    pub fn frobenius(&self, x: FieldElem) -> FieldElem {
        self.pow(x, self.pp.q as u64)
    }

    pub fn arith(&self, op: ArithOp<'_>) -> Result<FieldElem> {
        match op {
            ArithOp::Add(xs) => Ok(xs.iter().fold(FieldElem::ZERO, |acc, &x| self.add(acc, x))),
            ArithOp::Mul(xs) => Ok(xs.iter().fold(FieldElem::ONE, |acc, &x| self.mul(acc, x))),
            ArithOp::Inv(x) => self.inv(x),
            ArithOp::Pow(x, e) => Ok(self.pow(x, e)),
        }
    }
}

fn encode(coeffs: impl Iterator<Item = u32>, p: u32) -> u32 {
    let mut v = 0u32;
    let mut scale = 1u32;
    for c in coeffs {
        v += c * scale;
        scale = scale.wrapping_mul(p);
    }
    v
}

fn add_digits(a: u32, b: u32, p: u32, degree: usize) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0u32;
    let mut scale = 1u32;
    for _ in 0..degree {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale = scale.wrapping_mul(p);
    }
    out
}
