//! EAQECC parameters `[[n, K, d; c]]_q` of the code built from `C(m)`, the
//! entanglement-assisted Singleton defect, and the Gilbert–Varshamov test.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::curve::CurveCtx;
use crate::delta::{delta, DeltaTable};
use crate::error::{check_range, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    /// `m <= q^2 - 2`: the quantum code encodes nothing.
    pub zero_dimension: bool,
    /// `m >= q^3 - q`: a standard (entanglement-free) quantum code.
    pub zero_entanglement: bool,
    /// `d_lb` is a proven lower bound, not the exact minimum distance.
    pub distance_is_exact_unknown: bool,
    /// `c > (n - k)/2` for the GV query, outside the theorem's hypothesis.
    pub gv_hypothesis_violated: bool,
}

impl Flags {
    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.zero_dimension {
            out.push("zero_dimension");
        }
        if self.zero_entanglement {
            out.push("zero_entanglement");
        }
        if self.distance_is_exact_unknown {
            out.push("distance_is_exact_unknown");
        }
        if self.gv_hypothesis_violated {
            out.push("gv_hypothesis_violated");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EaqeccParams {
    pub q: u64,
    pub m: i64,
    pub n: u64,
    /// Dimension of the classical code `C(m)`.
    pub k_classical: u64,
    /// Logical dimension `2k - n + c`.
    pub k_logical: u64,
    pub d_lb: u64,
    pub c: u64,
    pub delta: u64,
    pub singleton_defect: i64,
    pub exceeds_gv: bool,
    pub flags: Flags,
}

impl fmt::Display for EaqeccParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}, {}; {}]]_{}",
            self.n, self.k_logical, self.d_lb, self.c, self.q
        )
    }
}

/// The order (Feng–Rao) bound on the minimum distance of `C(m)`, seen as the
/// Euclidean dual of `C(m^perp)`.
///
/// Counts, for each reduced monomial order `t`, the pairs of reduced monomials
/// whose product reduces to leading order exactly `t`; the bound at `m` is the
/// least count over orders above `m^perp`.
#[derive(Debug, Clone)]
pub struct OrderBound {
    /// `suffix_min[i]`: least pair count over basis positions `>= i`.
    suffix_min: Vec<u64>,
    orders: Vec<u64>,
    max_m: i64,
}

impl OrderBound {
    pub fn new(ctx: &CurveCtx) -> Self {
        let q = ctx.q() as u32;
        let basis = ctx.basis();
        let mut count = vec![0u64; 2 * ctx.max_order() as usize + 1];
        for u in basis {
            for v in basis {
                let a = u.a + v.a;
                // y^{b} with b >= q becomes x^{q+1} y^{b-q}; the order survives
                // unless the x-degree then wraps under x^{q^2} -> x.
                let keeps_order = if u.b + v.b >= q {
                    a + q + 1 < q * q
                } else {
                    a < q * q
                };
                if keeps_order {
                    count[(u.order + v.order) as usize] += 1;
                }
            }
        }
        let orders: Vec<u64> = basis.iter().map(|f| f.order).collect();
        let mut suffix_min = vec![u64::MAX; orders.len() + 1];
        for i in (0..orders.len()).rev() {
            suffix_min[i] = suffix_min[i + 1].min(count[orders[i] as usize]);
        }
        Self {
            suffix_min,
            orders,
            max_m: ctx.max_m() as i64,
        }
    }

    pub fn bound(&self, m: i64) -> Result<u64> {
        check_range("m", m, 0, self.max_m)?;
        let s = (self.max_m - m) as u64;
        let i = self.orders.partition_point(|&o| o <= s);
        Ok(self.suffix_min[i])
    }
}

/// Dimension `l(m) - l(m - n)` of `C(m)` and a lower bound on its minimum
/// distance: the larger of the designed distance and the order bound.
pub fn classical_dims(ctx: &CurveCtx, m: i64) -> Result<(u64, u64)> {
    check_range("m", m, 0, ctx.max_m() as i64)?;
    classical_dims_with(ctx, &OrderBound::new(ctx), m)
}

fn classical_dims_with(ctx: &CurveCtx, ob: &OrderBound, m: i64) -> Result<(u64, u64)> {
    check_range("m", m, 0, ctx.max_m() as i64)?;
    let n = ctx.n() as i64;
    let k = ctx.ell(m) - ctx.ell(m - n);
    Ok((k, designed_distance(n, m).max(ob.bound(m)?)))
}

/// `n - m` for `m < n`, else 1.
pub fn designed_distance(n: i64, m: i64) -> u64 {
    if m < n {
        (n - m) as u64
    } else {
        1
    }
}

/// `n + 2 - K + c - 2d`, evaluated at `d = d_lb`.
pub fn singleton_defect(p: &EaqeccParams) -> i64 {
    p.n as i64 + 2 - p.k_logical as i64 + p.c as i64 - 2 * p.d_lb as i64
}

/// Inputs of the GV existence inequality. `k` is the classical dimension in
/// the theorem, which yields an `[[n, k - c, d; c]]` code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GvQuery {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub c: u64,
}

impl GvQuery {
    fn validate(&self) -> Result<()> {
        if self.d < 1 {
            return Err(Error::InvalidArgument("GV query needs d >= 1".into()));
        }
        if self.k > self.n {
            return Err(Error::InvalidArgument(format!(
                "GV query needs k <= n, got k = {} and n = {}",
                self.k, self.n
            )));
        }
        Ok(())
    }

    /// The theorem assumes `c <= (n - k)/2`; it is not enforced here.
    pub fn within_hypothesis(&self) -> bool {
        2 * self.c <= self.n - self.k
    }
}

/// `sum_{i=1}^{d-1} C(n, i) (q^2 - 1)^i`, for every `d` in `1..=d_max`.
fn volume_prefix(q: u64, n: u64, d_max: u64) -> Vec<BigUint> {
    let w = BigUint::from(q * q - 1);
    let mut out = Vec::with_capacity(d_max as usize + 1);
    out.push(BigUint::zero()); // unused d = 0
    let mut sum = BigUint::zero();
    let mut term = BigUint::one();
    for d in 1..=d_max {
        out.push(sum.clone());
        let i = d;
        if i > n {
            continue;
        }
        // term becomes C(n, i) (q^2 - 1)^i
        term = term * BigUint::from(n - i + 1) * &w / BigUint::from(i);
        sum += &term;
    }
    out
}

/// Exact test of `(q^{n+k} - q^{n-k-2c}) S < q^{2n} - 1`, cross-multiplied
/// by `q^{2c+k-n}` when that exponent is positive.
fn gv_compare(q: u64, query: &GvQuery, volume: &BigUint) -> bool {
    let qb = BigUint::from(q);
    let n = query.n as i64;
    let k = query.k as i64;
    let c = query.c as i64;
    let e = n - k - 2 * c;
    let (lhs_factor, rhs) = if e >= 0 {
        (
            qb.pow((n + k) as u32) - qb.pow(e as u32),
            qb.pow(2 * n as u32) - BigUint::one(),
        )
    } else {
        (
            qb.pow((n + k - e) as u32) - BigUint::one(),
            (qb.pow(2 * n as u32) - BigUint::one()) * qb.pow((-e) as u32),
        )
    };
    lhs_factor * volume < rhs
}

/// Whether the GV inequality guarantees an EAQECC for `query` over `q`.
pub fn gv_holds(query: &GvQuery, q: u64) -> Result<bool> {
    query.validate()?;
    let volume = volume_prefix(q, query.n, query.d)
        .pop()
        .expect("prefix has d + 1 entries");
    Ok(gv_compare(q, query, &volume))
}

/// GV tests for a fixed `(q, n)` with the sphere volumes cached.
#[derive(Debug, Clone)]
pub struct GvEvaluator {
    q: u64,
    n: u64,
    prefix: Vec<BigUint>,
}

impl GvEvaluator {
    pub fn new(q: u64, n: u64) -> Self {
        Self {
            q,
            n,
            prefix: volume_prefix(q, n, n),
        }
    }

    pub fn holds(&self, query: &GvQuery) -> Result<bool> {
        query.validate()?;
        if query.n != self.n || query.d > self.n {
            return gv_holds(query, self.q);
        }
        Ok(gv_compare(self.q, query, &self.prefix[query.d as usize]))
    }

    /// True iff the GV argument does not guarantee `[[n, K, d; c]]`.
    pub fn exceeds(&self, p: &EaqeccParams) -> bool {
        !self
            .holds(&gv_query(p))
            .expect("parameters form a valid query")
    }
}

fn gv_query(p: &EaqeccParams) -> GvQuery {
    GvQuery {
        n: p.n,
        k: p.k_logical + p.c,
        d: p.d_lb,
        c: p.c,
    }
}

/// Whether the parameters are beyond what the GV inequality guarantees.
pub fn exceeds_gv(p: &EaqeccParams) -> bool {
    !gv_holds(&gv_query(p), p.q).expect("parameters form a valid query")
}

fn assemble(
    ctx: &CurveCtx,
    ob: &OrderBound,
    m: i64,
    delta: u64,
    gv: Option<&GvEvaluator>,
) -> Result<EaqeccParams> {
    let (k, d_lb) = classical_dims_with(ctx, ob, m)?;
    let n = ctx.n();
    let q = ctx.q();
    assert!(k + delta <= n, "k + Delta exceeds n at m = {m}");
    let c = n - k - delta;
    let k_logical = k - delta;
    assert_eq!(2 * k + c - n, k_logical);
    let mut p = EaqeccParams {
        q,
        m,
        n,
        k_classical: k,
        k_logical,
        d_lb,
        c,
        delta,
        singleton_defect: 0,
        exceeds_gv: false,
        flags: Flags {
            zero_dimension: m <= (q * q) as i64 - 2,
            zero_entanglement: m >= (q * q * q - q) as i64,
            distance_is_exact_unknown: true,
            gv_hypothesis_violated: false,
        },
    };
    p.singleton_defect = singleton_defect(&p);
    p.flags.gv_hypothesis_violated = !gv_query(&p).within_hypothesis();
    p.exceeds_gv = match gv {
        Some(eval) => eval.exceeds(&p),
        None => exceeds_gv(&p),
    };
    Ok(p)
}

pub fn eaqecc_params(ctx: &CurveCtx, m: i64) -> Result<EaqeccParams> {
    ctx.m_perp(m)?;
    let d = delta(ctx, m)?;
    assemble(ctx, &OrderBound::new(ctx), m, d.delta, None)
}

/// Parameters for every `m` in `[min_m, max_m]`, sharing one `Phi(m*)` run
/// and one table of GV volumes.
pub fn params_sweep(ctx: &CurveCtx, min_m: i64, max_m: i64) -> Result<Vec<EaqeccParams>> {
    check_range("min_m", min_m, 0, ctx.max_m() as i64)?;
    check_range("max_m", max_m, min_m, ctx.max_m() as i64)?;
    let table = DeltaTable::new(ctx)?;
    let gv = GvEvaluator::new(ctx.q(), ctx.n());
    let ob = OrderBound::new(ctx);
    (min_m..=max_m)
        .map(|m| {
            let d = table.delta(ctx, m)?;
            assemble(ctx, &ob, m, d.delta, Some(&gv))
        })
        .collect()
}

/// The widest range `[c_min, c_max]`, ending at the largest entanglement any
/// code of positive dimension uses, on which every such code exceeds GV.
pub fn gv_exceeding_range(codes: &[EaqeccParams]) -> Option<(u64, u64)> {
    let produced: Vec<&EaqeccParams> = codes.iter().filter(|p| p.k_logical > 0).collect();
    let c_max = produced.iter().map(|p| p.c).max()?;
    let failing_below = produced.iter().filter(|p| !p.exceeds_gv).map(|p| p.c).max();
    let c_min_floor = match failing_below {
        Some(c) if c >= c_max => return None,
        Some(c) => c + 1,
        None => 0,
    };
    let c_min = produced
        .iter()
        .map(|p| p.c)
        .filter(|&c| c >= c_min_floor)
        .min()?;
    Some((c_min, c_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_dimensions() {
        let ctx = CurveCtx::new(3, 1).unwrap();
        assert_eq!(classical_dims(&ctx, 8).unwrap(), (6, 19));
        assert_eq!(classical_dims(&ctx, 11).unwrap(), (9, 16));
        assert_eq!(classical_dims(&ctx, 0).unwrap(), (1, 27));
        assert_eq!(classical_dims(&ctx, 30).unwrap(), (26, 2));
        assert_eq!(classical_dims(&ctx, 22).unwrap(), (20, 6));
        assert!(classical_dims(&ctx, 32).is_err());
    }

    #[test]
    fn order_bound_beats_designed_distance() {
        let c4 = CurveCtx::new(2, 2).unwrap();
        assert_eq!(classical_dims(&c4, 53).unwrap().1, 12);
        let c5 = CurveCtx::new(5, 1).unwrap();
        assert_eq!(classical_dims(&c5, 116).unwrap().1, 10);
        assert_eq!(classical_dims(&c5, 115).unwrap().1, 10);
    }

    #[test]
    fn example_codes() {
        let ctx = CurveCtx::new(3, 1).unwrap();
        assert_eq!(
            eaqecc_params(&ctx, 8).unwrap().to_string(),
            "[[27, 1, 19; 16]]_3"
        );
        assert_eq!(
            eaqecc_params(&ctx, 14).unwrap().to_string(),
            "[[27, 6, 13; 9]]_3"
        );
        let ctx5 = CurveCtx::new(5, 1).unwrap();
        assert_eq!(
            eaqecc_params(&ctx5, 34).unwrap().to_string(),
            "[[125, 9, 91; 84]]_5"
        );
    }

    fn code(n: u64, k: u64, d: u64, c: u64, q: u64) -> EaqeccParams {
        EaqeccParams {
            q,
            m: 0,
            n,
            k_classical: 0,
            k_logical: k,
            d_lb: d,
            c,
            delta: 0,
            singleton_defect: 0,
            exceeds_gv: false,
            flags: Flags::default(),
        }
    }

    #[test]
    fn singleton_defects() {
        assert_eq!(singleton_defect(&code(27, 1, 19, 16, 3)), 6);
        assert_eq!(singleton_defect(&code(64, 35, 12, 3, 4)), 10);
        assert_eq!(singleton_defect(&code(125, 90, 10, 1, 5)), 18);
    }

    #[test]
    fn gv_examples() {
        let q = GvQuery {
            n: 27,
            k: 4,
            d: 1,
            c: 2,
        };
        assert!(gv_holds(&q, 3).unwrap());
        let q = GvQuery {
            n: 27,
            k: 17,
            d: 16,
            c: 13,
        };
        assert!(!gv_holds(&q, 3).unwrap());
        assert!(gv_holds(
            &GvQuery {
                n: 27,
                k: 4,
                d: 0,
                c: 2
            },
            3
        )
        .is_err());
        assert!(exceeds_gv(&code(27, 13, 7, 4, 3)));
        assert!(exceeds_gv(&code(64, 39, 8, 1, 4)));
    }

    #[test]
    fn evaluator_agrees_with_direct_test() {
        let eval = GvEvaluator::new(3, 27);
        for d in 1..=27 {
            for c in [0, 3, 9] {
                let query = GvQuery { n: 27, k: 10, d, c };
                assert_eq!(eval.holds(&query).unwrap(), gv_holds(&query, 3).unwrap());
            }
        }
    }
}
