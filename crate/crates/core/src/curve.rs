//! The Hermitian curve `x^{q+1} = y^q + y` over F_{q^2}: pole orders at the
//! point at infinity, the reduced-monomial basis and the rational points.

use crate::error::{check_range, Error, Result};
use crate::field::{FieldCtx, FieldElem, PrimeField, PrimePower};

/// A monomial `x^a y^b` with its pole order `a q + b (q + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub order: u64,
}

impl Monomial {
    pub fn is_one(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt_monomial(f, self.a, self.b)
    }
}

pub(crate) fn fmt_monomial(f: &mut impl std::fmt::Write, a: u32, b: u32) -> std::fmt::Result {
    if a == 0 && b == 0 {
        return f.write_str("1");
    }
    match a {
        0 => {}
        1 => f.write_str("x")?,
        _ => write!(f, "x^{a}")?,
    }
    match b {
        0 => {}
        1 => f.write_str("y")?,
        _ => write!(f, "y^{b}")?,
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffinePoint {
    pub x: FieldElem,
    pub y: FieldElem,
}

/// Derived constants of the Hermitian curve for a prime power `q`.
#[derive(Debug, Clone)]
pub struct CurveCtx {
    pp: PrimePower,
    field: FieldCtx,
    fp: PrimeField,
    n: u64,
    genus: u64,
    m_star: u64,
    basis: Vec<Monomial>,
    /// basis position of each order in `0..=n + 2g - 1`, or `NONE`.
    position: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl CurveCtx {
    pub fn new(p: u64, r: i64) -> Result<Self> {
        Self::from_prime_power(PrimePower::new(p, r)?)
    }

    pub fn from_q(q: u64) -> Result<Self> {
        Self::from_prime_power(PrimePower::from_q(q)?)
    }

    pub fn from_prime_power(pp: PrimePower) -> Result<Self> {
        let field = FieldCtx::from_prime_power(pp)?;
        let fp = PrimeField::new(pp.p())?;
        let q = pp.q() as u64;
        let n = q * q * q;
        let genus = q * (q - 1) / 2;
        let m_star = (n + 2 * genus - 2) / 2;

        let mut basis = Vec::with_capacity(n as usize);
        for a in 0..(q * q) as u32 {
            for b in 0..q as u32 {
                basis.push(Monomial {
                    a,
                    b,
                    order: a as u64 * q + b as u64 * (q + 1),
                });
            }
        }
        basis.sort_by_key(|m| m.order);

        let mut position = vec![NONE; (n + 2 * genus) as usize];
        for (i, m) in basis.iter().enumerate() {
            position[m.order as usize] = i as u32;
        }

        Ok(Self {
            pp,
            field,
            fp,
            n,
            genus,
            m_star,
            basis,
            position,
        })
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn q(&self) -> u64 {
        self.pp.q() as u64
    }

    pub fn p(&self) -> u32 {
        self.pp.p()
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn prime_field(&self) -> &PrimeField {
        &self.fp
    }

    /// Code length `q^3`.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// `floor(n/2 + g - 1)`, the largest `m` with `m <= m_perp(m)`.
    pub fn m_star(&self) -> u64 {
        self.m_star
    }

    /// `n + 2g - 2`, the top of the standard code range.
    pub fn max_m(&self) -> u64 {
        self.n + 2 * self.genus - 2
    }

    /// Largest pole order of a reduced monomial, `n + 2g - 1`.
    pub fn max_order(&self) -> u64 {
        self.n + 2 * self.genus - 1
    }

    /// All `q^3` reduced monomials, strictly increasing in pole order.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn nu(&self, a: u64, b: u64) -> u64 {
        let q = self.q();
        a * q + b * (q + 1)
    }

    pub fn monomial(&self, a: u32, b: u32) -> Result<Monomial> {
        let q = self.q();
        if a as u64 >= q * q || b as u64 >= q {
            return Err(Error::InvalidArgument(format!("x^{a}y^{b} is not reduced")));
        }
        Ok(Monomial {
            a,
            b,
            order: self.nu(a as u64, b as u64),
        })
    }

    /// Position of the reduced monomial of order `v` in [`Self::basis`].
    pub fn position_of_order(&self, v: u64) -> Option<usize> {
        self.position
            .get(v as usize)
            .copied()
            .filter(|&i| i != NONE)
            .map(|i| i as usize)
    }

    /// The reduced monomial of pole order `v`.
    ///
    /// Gaps of `<q, q+1>` are rejected, as are orders above `n + 2g - 1` and
    /// the few semigroup elements below it that need `a >= q^2`.
    pub fn monomial_of_order(&self, v: u64) -> Result<Monomial> {
        if v > self.max_order() {
            return Err(Error::OutOfRange {
                what: "order",
                value: v as i64,
                min: 0,
                max: self.max_order() as i64,
            });
        }
        let q = self.q();
        let b = v % q;
        if v < b * (q + 1) {
            return Err(Error::Gap(v));
        }
        let a = (v - b * (q + 1)) / q;
        if a >= q * q {
            return Err(Error::InvalidArgument(format!(
                "order {v} is only attained by the non-reduced monomial x^{a}y^{b}"
            )));
        }
        Ok(Monomial {
            a: a as u32,
            b: b as u32,
            order: v,
        })
    }

    pub fn in_semigroup(&self, v: u64) -> bool {
        let q = self.q();
        v >= (v % q) * (q + 1)
    }

    /// `l(m) = dim L(mQ)`: the number of elements of `<q, q+1>` up to `m`.
    pub fn ell(&self, m: i64) -> u64 {
        if m < 0 {
            return 0;
        }
        let q = self.q();
        let m = m as u64;
        // For each y-degree b < q, count a >= 0 with a q <= m - b (q+1).
        (0..q)
            .filter(|b| b * (q + 1) <= m)
            .map(|b| (m - b * (q + 1)) / q + 1)
            .sum()
    }

    /// The reduced monomials of order at most `m`, in increasing order.
    pub fn monomial_basis(&self, m: i64) -> Result<&[Monomial]> {
        check_range("m", m, 0, self.max_order() as i64)?;
        let len = self.basis.partition_point(|f| f.order <= m as u64);
        Ok(&self.basis[..len])
    }

    /// Exponents `(a, b)`, `b < q`, spanning `L(mQ)`; `a` is unbounded here,
    /// so the count is exactly `l(m)`.
    pub fn riemann_roch_basis(&self, m: i64) -> Vec<(u64, u64)> {
        if m < 0 {
            return Vec::new();
        }
        let q = self.q();
        let m = m as u64;
        let mut out = Vec::new();
        for b in 0..q {
            if b * (q + 1) > m {
                break;
            }
            for a in 0..=(m - b * (q + 1)) / q {
                out.push((a, b));
            }
        }
        out.sort_by_key(|&(a, b)| self.nu(a, b));
        out
    }

    pub fn m_perp(&self, m: i64) -> Result<i64> {
        check_range("m", m, 0, self.max_m() as i64)?;
        Ok(self.max_m() as i64 - m)
    }

    /// The `q^3` affine rational points, ordered by the encoding of `x`, then `y`.
    pub fn affine_points(&self) -> Vec<AffinePoint> {
        let f = &self.field;
        let q = self.q();
        let mut out = Vec::with_capacity(self.n as usize);
        for x in f.elements() {
            let lhs = f.pow(x, q + 1);
            for y in f.elements() {
                if f.add(f.frobenius(y), y) == lhs {
                    out.push(AffinePoint { x, y });
                }
            }
        }
        out
    }

    pub fn is_on_curve(&self, pt: &AffinePoint) -> bool {
        let f = &self.field;
        f.pow(pt.x, self.q() + 1) == f.add(f.frobenius(pt.y), pt.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_constants() {
        let c3 = CurveCtx::new(3, 1).unwrap();
        assert_eq!((c3.n(), c3.genus(), c3.m_star()), (27, 3, 15));
        let c2 = CurveCtx::new(2, 1).unwrap();
        assert_eq!((c2.n(), c2.genus(), c2.m_star()), (8, 1, 4));
        let c5 = CurveCtx::new(5, 1).unwrap();
        assert_eq!((c5.n(), c5.genus(), c5.m_star()), (125, 10, 71));
    }

    #[test]
    fn errors_propagate_from_field() {
        assert_eq!(CurveCtx::new(6, 1).unwrap_err(), Error::NotPrime(6));
        assert_eq!(CurveCtx::new(3, 0).unwrap_err(), Error::InvalidExponent(0));
    }

    #[test]
    fn pole_orders() {
        let c = CurveCtx::new(3, 1).unwrap();
        assert_eq!(c.nu(0, 0), 0);
        assert_eq!(c.nu(1, 0), 3);
        assert_eq!(c.nu(0, 1), 4);
        assert_eq!(c.nu(3, 1), 13);
    }

    #[test]
    fn monomial_lookup() {
        let c = CurveCtx::new(3, 1).unwrap();
        let m = c.monomial_of_order(13).unwrap();
        assert_eq!((m.a, m.b), (3, 1));
        assert!(c.monomial_of_order(0).unwrap().is_one());
        assert_eq!(c.monomial_of_order(5).unwrap_err(), Error::Gap(5));
        assert!(c
            .monomial_of_order(5)
            .unwrap_err()
            .to_string()
            .contains("gap"));
        assert!(matches!(
            c.monomial_of_order(36),
            Err(Error::OutOfRange { .. })
        ));
        // 27 = nu(x^9) is in the semigroup but has no reduced representative.
        assert!(matches!(
            c.monomial_of_order(27),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn ell_values() {
        let c = CurveCtx::new(3, 1).unwrap();
        assert_eq!(c.ell(22), 20);
        assert_eq!(c.ell(8), 6);
        assert_eq!(c.ell(10), 8);
        assert_eq!(c.ell(-1), 0);
        assert_eq!(c.ell(0), 1);
        for m in 2 * 3 - 1..=c.max_order() as i64 {
            assert_eq!(c.ell(m), (m + 1 - 3) as u64);
        }
    }

    #[test]
    fn monomial_bases() {
        let c3 = CurveCtx::new(3, 1).unwrap();
        let names: Vec<String> = c3
            .monomial_basis(15)
            .unwrap()
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(
            names,
            [
                "1", "x", "y", "x^2", "xy", "y^2", "x^3", "x^2y", "xy^2", "x^4", "x^3y", "x^2y^2",
                "x^5"
            ]
        );
        assert_eq!(c3.monomial_basis(0).unwrap().len(), 1);
        assert!(c3.monomial_basis(36).is_err());
        assert!(c3.monomial_basis(-1).is_err());

        let c2 = CurveCtx::new(2, 1).unwrap();
        let b: Vec<(u32, u32, u64)> = c2
            .monomial_basis(4)
            .unwrap()
            .iter()
            .map(|m| (m.a, m.b, m.order))
            .collect();
        assert_eq!(b, [(0, 0, 0), (1, 0, 2), (0, 1, 3), (2, 0, 4)]);
    }

    #[test]
    fn riemann_roch_basis_has_ell_elements() {
        let c = CurveCtx::new(2, 1).unwrap();
        for m in 0..=c.max_m() as i64 {
            assert_eq!(c.riemann_roch_basis(m).len() as u64, c.ell(m));
        }
    }

    #[test]
    fn dual_order() {
        let c = CurveCtx::new(3, 1).unwrap();
        assert_eq!(c.m_perp(10).unwrap(), 21);
        assert_eq!(c.m_perp(14).unwrap(), 17);
        assert_eq!(c.m_perp(15).unwrap(), 16);
        assert_eq!(c.m_perp(31).unwrap(), 0);
        assert!(c.m_perp(32).is_err());
        for m in 0..=31 {
            assert_eq!(c.m_perp(c.m_perp(m).unwrap()).unwrap(), m);
        }
    }

    #[test]
    fn point_counts() {
        for (p, r) in [(2, 1), (3, 1), (2, 2)] {
            let c = CurveCtx::new(p, r).unwrap();
            let pts = c.affine_points();
            assert_eq!(pts.len() as u64, c.n());
            assert!(pts.iter().all(|pt| c.is_on_curve(pt)));
            for x in c.field().elements() {
                assert_eq!(pts.iter().filter(|pt| pt.x == x).count() as u64, c.q());
            }
        }
    }
}
