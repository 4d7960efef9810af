//! Normal forms modulo `(x^{q+1} - y^q - y, x^{q^2} - x)` and closed forms
//! for reduced q-th powers of monomials.
//!
//! Every polynomial the algorithm touches has coefficients in F_p, so
//! coefficients here are plain residues in `[0, p)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::curve::{fmt_monomial, CurveCtx, Monomial};
use crate::error::{Error, Result};
use crate::field::PrimeField;

/// A polynomial in `x, y` with arbitrary nonnegative exponents over F_p.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<(u64, u64), u32>,
}

impl Poly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monomial(a: u64, b: u64, coeff: u32) -> Self {
        let mut p = Self::new();
        if coeff != 0 {
            p.terms.insert((a, b), coeff);
        }
        p
    }

    /// Adds `coeff * x^a y^b`.
    pub fn add_term(&mut self, fp: &PrimeField, a: u64, b: u64, coeff: u32) {
        add_into(&mut self.terms, fp, (a, b), coeff % fp.p());
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u64, u64), u32)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, fp: &PrimeField, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            add_into(&mut out.terms, fp, k, c);
        }
        out
    }

    pub fn mul(&self, fp: &PrimeField, other: &Poly) -> Poly {
        let mut out = Poly::new();
        for ((a1, b1), c1) in self.terms() {
            for ((a2, b2), c2) in other.terms() {
                add_into(&mut out.terms, fp, (a1 + a2, b1 + b2), fp.mul(c1, c2));
            }
        }
        out
    }
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, u32>, fp: &PrimeField, key: K, coeff: u32) {
    if coeff == 0 {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(coeff);
        }
        Entry::Occupied(mut e) => {
            let s = fp.add(*e.get(), coeff);
            if s == 0 {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// A reduced polynomial: every monomial has `a < q^2` and `b < q`.
///
/// Terms are keyed by pole order, which is injective on reduced monomials,
/// so the leading term is the last entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedPoly {
    q: u64,
    terms: BTreeMap<u64, u32>,
}

impl ReducedPoly {
    pub fn zero(ctx: &CurveCtx) -> Self {
        Self {
            q: ctx.q(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(ctx: &CurveCtx, f: Monomial, coeff: u32) -> Self {
        let mut out = Self::zero(ctx);
        let c = coeff % ctx.p();
        if c != 0 {
            out.terms.insert(f.order, c);
        }
        out
    }

    /// Builds from `(order, coefficient)` pairs. Orders must be orders of
    /// reduced monomials.
    pub fn from_orders(
        ctx: &CurveCtx,
        terms: impl IntoIterator<Item = (u64, u32)>,
    ) -> Result<Self> {
        let mut out = Self::zero(ctx);
        for (order, c) in terms {
            if ctx.position_of_order(order).is_none() {
                return Err(Error::InvalidArgument(format!(
                    "order {order} is not the order of a reduced monomial"
                )));
            }
            add_into(&mut out.terms, ctx.prime_field(), order, c % ctx.p());
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn decode(&self, order: u64) -> Monomial {
        let q = self.q;
        let b = order % q;
        Monomial {
            a: ((order - b * (q + 1)) / q) as u32,
            b: b as u32,
            order,
        }
    }

    /// Terms in increasing pole order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, u32)> + '_ {
        self.terms.iter().map(|(&o, &c)| (self.decode(o), c))
    }

    pub fn coeff(&self, f: &Monomial) -> u32 {
        self.terms.get(&f.order).copied().unwrap_or(0)
    }

    /// The `nu`-leading term.
    pub fn leading(&self) -> Option<(Monomial, u32)> {
        self.terms().next_back()
    }

    /// Pole order of the leading term; `None` for the zero polynomial.
    pub fn order(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, fp: &PrimeField, lambda: u32) -> Self {
        let lambda = lambda % fp.p();
        Self {
            q: self.q,
            terms: if lambda == 0 {
                BTreeMap::new()
            } else {
                self.terms
                    .iter()
                    .map(|(&o, &c)| (o, fp.mul(c, lambda)))
                    .collect()
            },
        }
    }

    pub fn add(&self, fp: &PrimeField, other: &Self) -> Self {
        let mut out = self.clone();
        for (&o, &c) in &other.terms {
            add_into(&mut out.terms, fp, o, c);
        }
        out
    }

    pub fn sub(&self, fp: &PrimeField, other: &Self) -> Self {
        let mut out = self.clone();
        for (&o, &c) in &other.terms {
            add_into(&mut out.terms, fp, o, fp.neg(c));
        }
        out
    }

    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::new();
        for (m, c) in self.terms() {
            p.terms.insert((m.a as u64, m.b as u64), c);
        }
        p
    }
}

/// Descending pole order, coefficient omitted when it is 1, e.g. `x^6y+2x^2`.
impl fmt::Display for ReducedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().rev().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if c != 1 {
                write!(f, "{c}")?;
                if m.is_one() {
                    continue;
                }
            }
            fmt_monomial(f, m.a, m.b)?;
        }
        Ok(())
    }
}

/// `m(delta)`: the residue of `delta` modulo `q^2 - 1` taken in
/// `[1, q^2 - 1]`, with `m(0) = 0`.
pub fn m_hat(q: u64, delta: u64) -> u64 {
    let w = q * q - 1;
    if delta == 0 {
        0
    } else {
        (delta - 1) % w + 1
    }
}

/// Exponent of `x` after exhaustive use of `x^{q^2} -> x`.
#[inline]
fn reduce_x_exponent(q: u64, a: u64) -> u64 {
    if a >= q * q {
        m_hat(q, a)
    } else {
        a
    }
}

fn check_binom_args(t: i64, j: i64) -> Result<()> {
    if t < 0 || j < 0 || j > t {
        return Err(Error::InvalidArgument(format!(
            "binomial arguments need 0 <= j <= t, got t = {t}, j = {j}"
        )));
    }
    Ok(())
}

/// `C(t, j) mod p` by Lucas's theorem.
pub fn binom_mod_p(t: i64, j: i64, p: u32) -> Result<u32> {
    check_binom_args(t, j)?;
    let p64 = p as u64;
    let (mut t, mut j) = (t as u64, j as u64);
    let mut acc = 1u64;
    while t > 0 || j > 0 {
        let (td, jd) = (t % p64, j % p64);
        if jd > td {
            return Ok(0);
        }
        acc = acc * small_binom_mod(td, jd, p64) % p64;
        t /= p64;
        j /= p64;
    }
    Ok(acc as u32)
}

fn small_binom_mod(n: u64, k: u64, p: u64) -> u64 {
    // n < p, so the multiplicative formula never divides by p.
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * crate::field::pow_mod(den, p - 2, p) % p
}

/// The p-illumination `rho_t(j)`: for the highest p-ary digit where `j`
/// exceeds `t`, the value of the digit-wise difference `j - t` truncated to
/// that position. `j - rho_t(j)` is the largest `j' <= j` with
/// `C(t, j') != 0 mod p`.
pub fn p_illumination(t: i64, j: i64, p: u32, r: u32) -> Result<u64> {
    check_binom_args(t, j)?;
    let q = (p as u64).pow(r);
    if t as u64 >= q {
        return Err(Error::InvalidArgument(format!(
            "t = {t} must be below p^r = {q}"
        )));
    }
    let p64 = p as i64;
    let (mut tt, mut jj) = (t, j);
    let mut digits = Vec::with_capacity(r as usize);
    for _ in 0..r {
        digits.push((jj % p64, tt % p64));
        jj /= p64;
        tt /= p64;
    }
    let Some(top) = digits.iter().rposition(|&(jd, td)| jd > td) else {
        return Ok(0);
    };
    let mut rho = 0i64;
    let mut scale = 1i64;
    for &(jd, td) in &digits[..=top] {
        rho += (jd - td) * scale;
        scale *= p64;
    }
    Ok(rho as u64)
}

/// Normal form by exhaustive use of (R1) `y^q -> x^{q+1} - y` and
/// (R2) `x^{q^2} -> x`.
///
/// Terms are processed from the highest y-degree down; each R1 step only
/// creates terms of lower y-degree, and x-exponents are folded by R2 as
/// they appear.
pub fn reduce_poly(ctx: &CurveCtx, poly: &Poly) -> ReducedPoly {
    let q = ctx.q();
    let fp = ctx.prime_field();
    let mut work: BTreeMap<(u64, u64), u32> = BTreeMap::new();
    for ((a, b), c) in poly.terms() {
        add_into(&mut work, fp, (b, reduce_x_exponent(q, a)), c);
    }
    while let Some((&(b, a), _)) = work.iter().next_back() {
        if b < q {
            break;
        }
        let c = work.remove(&(b, a)).expect("key just observed");
        add_into(&mut work, fp, (b - q, reduce_x_exponent(q, a + q + 1)), c);
        add_into(&mut work, fp, (b - q + 1, a), fp.neg(c));
    }
    let mut out = ReducedPoly::zero(ctx);
    for ((b, a), c) in work {
        out.terms.insert(ctx.nu(a, b), c);
    }
    out
}

/// Scales so that the leading coefficient is 1; zero stays zero.
pub fn normalize(ctx: &CurveCtx, poly: &ReducedPoly) -> ReducedPoly {
    match poly.leading() {
        None => poly.clone(),
        Some((_, lc)) => {
            let fp = ctx.prime_field();
            poly.scale(fp, fp.inv(lc).expect("stored coefficients are nonzero"))
        }
    }
}

/// The normal form of `f^q` (not normalized), from the closed form
/// `sum_j (-1)^j C(b, j) x^{m(nu(f) - j(q+1))} y^j`.
pub fn qth_power_reduced(ctx: &CurveCtx, f: Monomial) -> ReducedPoly {
    let q = ctx.q();
    let fp = ctx.prime_field();
    let mut out = ReducedPoly::zero(ctx);
    for j in 0..=f.b as u64 {
        let binom = binom_mod_p(f.b as i64, j as i64, fp.p()).expect("0 <= j <= b");
        if binom == 0 {
            continue;
        }
        let coeff = if j % 2 == 1 { fp.neg(binom) } else { binom };
        let a = m_hat(q, f.order - j * (q + 1));
        out.terms.insert(ctx.nu(a, j), coeff);
    }
    out
}

/// `nu(f) = u q^2 + s q + t` with `0 <= s, t < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UstDecomposition {
    pub u: u64,
    pub s: u64,
    pub t: u64,
}

pub fn ust_decompose(q: u64, v: u64) -> UstDecomposition {
    let t = v % q;
    let s = ((v - t) / q) % q;
    let u = (v - t - s * q) / (q * q);
    UstDecomposition { u, s, t }
}

/// `nu(r(f^q))` for `f` in `M_*` without building the polynomial.
///
/// Four cases on `(u, s, t)`; for non-prime `q` the index of the dominant
/// summand is shifted past the binomials that vanish mod p, which costs
/// `(q^2 - 1) rho_t(.)` in order.
pub fn qth_order(ctx: &CurveCtx, f: Monomial) -> Result<u64> {
    if f.order > ctx.m_star() {
        return Err(Error::OutOfProvenRange {
            order: f.order,
            m_star: ctx.m_star(),
        });
    }
    let pp = ctx.prime_power();
    let q = ctx.q() as i64;
    let w = q * q - 1;
    let UstDecomposition { u, s, t } = ust_decompose(q as u64, f.order);
    let (u, s, t) = (u as i64, s as i64, t as i64);
    let rho = |j: i64| -> Result<i64> {
        if j < 0 {
            return Err(Error::OutOfProvenRange {
                order: f.order,
                m_star: ctx.m_star(),
            });
        }
        Ok(p_illumination(t, j, pp.p(), pp.r())? as i64)
    };
    let q2 = q * q;
    let q3 = q2 * q;
    let v = if s >= t {
        if u + t < q2 - s * q {
            s * q2 + (u + t) * q
        } else {
            q3 - 2 * q2 + (u + t) * q + 1 - w * rho(t - 1)?
        }
    } else if u + t <= q + s + 1 {
        q3 - q2 + (u + t - 1) * q + s + 1 - w * rho(t - s - 1)?
    } else {
        q3 - 2 * q2 + (u + t - 1) * q + s + 2 - w * rho(t - s - 2)?
    };
    Ok(v as u64)
}
