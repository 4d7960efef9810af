//! `Delta(m) = dim(C(m) ∩ C(m)^{⊥H})` through a triangular basis `Phi(m)` of
//! the reduced q-th powers.
//!
//! `Phi(m)` is built entry by entry, and entry `i` only depends on earlier
//! entries, so `Phi(m)` is a prefix of `Phi(m*)`. [`DeltaTable`] uses that to
//! answer a full sweep from one run.

use std::collections::HashMap;

use crate::curve::{CurveCtx, Monomial};
use crate::error::{check_range, Result};
use crate::reduction::{normalize, qth_order, qth_power_reduced, reduce_poly, Poly, ReducedPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Shortcut,
    Baseline,
    Optimized,
    Duality,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Shortcut => "shortcut",
            Method::Baseline => "baseline",
            Method::Optimized => "optimized",
            Method::Duality => "duality",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Baseline,
    Optimized,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiEntry {
    /// Position of `f_i` in the ordered monomial basis.
    pub index: usize,
    pub monomial: Monomial,
    /// `nu(r(f_i^q))`.
    pub power_order: u64,
    /// `r(f_i^q)`, normalized; only present once materialized.
    pub power: Option<ReducedPoly>,
    /// `nu(phi_i)`.
    pub order: u64,
    /// `phi_i`, monic; only present once materialized.
    pub body: Option<ReducedPoly>,
    /// Subtractions spent on this entry.
    pub reductions: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiBasis {
    pub m: i64,
    pub entries: Vec<PhiEntry>,
    pub reduction_count: usize,
    pub materialized_count: usize,
}

impl PhiBasis {
    pub fn orders(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.order).collect()
    }

    /// `#Phi(m, bound)`.
    pub fn count_at_most(&self, bound: i64) -> u64 {
        self.entries
            .iter()
            .filter(|e| (e.order as i64) <= bound)
            .count() as u64
    }

    /// One tab-separated line per entry: `f`, `nu(f)`, `r(f^q)`,
    /// `nu(r(f^q))`, `phi`, `nu(phi)`, after a header line. Bodies that were
    /// never materialized print as `-`.
    pub fn render_table(&self) -> String {
        let show = |p: &Option<ReducedPoly>| p.as_ref().map_or("-".to_string(), |p| p.to_string());
        let mut out = String::from("f\tnu(f)\tr(f^q)\tnu(r(f^q))\tphi\tnu(phi)\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                e.monomial,
                e.monomial.order,
                show(&e.power),
                e.power_order,
                show(&e.body),
                e.order
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaResult {
    pub m: i64,
    pub delta: u64,
    pub method: Method,
    pub reduction_count: usize,
}

/// Upper bound `q(q+1)(q^2-1)/2` on subtractions in a full run.
pub fn reduction_bound(q: u64) -> usize {
    (q * (q + 1) * (q * q - 1) / 2) as usize
}

fn check_algorithm_range(ctx: &CurveCtx, m: i64) -> Result<()> {
    let q = ctx.q() as i64;
    check_range("m", m, q * q - 1, ctx.m_star() as i64)
}

fn residue(ctx: &CurveCtx, f: &Monomial) -> u64 {
    let q = ctx.q();
    f.order % (q * q - 1)
}

fn assert_confined(ctx: &CurveCtx, a: &Monomial, b: &Monomial) {
    assert_eq!(
        residue(ctx, a),
        residue(ctx, b),
        "reduction between {a} and {b} crosses residue classes mod q^2 - 1"
    );
}

/// Baseline scan: reduce every `f_i^q` with R1/R2, normalize, then
/// triangularize, restarting the scan at `i = 1` after each subtraction.
pub fn phi_basis_baseline(ctx: &CurveCtx, m: i64) -> Result<PhiBasis> {
    check_algorithm_range(ctx, m)?;
    let q = ctx.q();
    let fp = ctx.prime_field();
    let monomials = ctx.monomial_basis(m)?;

    let powers: Vec<ReducedPoly> = monomials
        .iter()
        .map(|f| {
            let power = Poly::monomial(f.a as u64 * q, f.b as u64 * q, 1);
            normalize(ctx, &reduce_poly(ctx, &power))
        })
        .collect();

    let mut phis = powers.clone();
    let mut reductions = vec![0usize; phis.len()];
    let mut reduction_count = 0;
    for j in 1..phis.len() {
        let mut i = 0;
        while i < j {
            if phis[j].order() == phis[i].order() {
                assert_confined(ctx, &monomials[i], &monomials[j]);
                let diff = phis[j].sub(fp, &phis[i]);
                phis[j] = normalize(ctx, &diff);
                reductions[j] += 1;
                reduction_count += 1;
                i = 0;
            } else {
                i += 1;
            }
        }
    }

    let entries = monomials
        .iter()
        .zip(powers)
        .zip(phis)
        .zip(reductions)
        .enumerate()
        .map(|(index, (((f, power), phi), reductions))| PhiEntry {
            index,
            monomial: *f,
            power_order: power.order().expect("q-th powers are nonzero"),
            power: Some(power),
            order: phi.order().expect("Phi entries are nonzero"),
            body: Some(phi),
            reductions,
        })
        .collect::<Vec<_>>();
    let materialized_count = entries.len();
    Ok(PhiBasis {
        m,
        entries,
        reduction_count,
        materialized_count,
    })
}

/// The lazy variant: orders come from the closed form, and a polynomial is
/// only built when its order collides with an earlier entry. On the first
/// collision in a residue class mod `q^2 - 1`, every entry of that class is
/// materialized.
pub fn phi_basis_optimized(ctx: &CurveCtx, m: i64) -> Result<PhiBasis> {
    check_algorithm_range(ctx, m)?;
    let fp = ctx.prime_field();
    let monomials = ctx.monomial_basis(m)?;

    let mut entries: Vec<PhiEntry> = Vec::with_capacity(monomials.len());
    let mut by_order: HashMap<u64, usize> = HashMap::with_capacity(monomials.len());
    let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut reduction_count = 0;
    let mut materialized_count = 0;

    let materialize = |entry: &mut PhiEntry, count: &mut usize| {
        if entry.body.is_none() {
            // An unmaterialized entry has never been reduced, so phi_i = r(f_i^q).
            let power = normalize(ctx, &qth_power_reduced(ctx, entry.monomial));
            debug_assert_eq!(power.order(), Some(entry.power_order));
            entry.body = Some(power.clone());
            entry.power = Some(power);
            *count += 1;
        }
    };

    for (index, f) in monomials.iter().enumerate() {
        let power_order = qth_order(ctx, *f)?;
        let mut entry = PhiEntry {
            index,
            monomial: *f,
            power_order,
            power: None,
            order: power_order,
            body: None,
            reductions: 0,
        };
        let class = residue(ctx, f);
        while let Some(&hit) = by_order.get(&entry.order) {
            assert_confined(ctx, &entries[hit].monomial, f);
            for &k in buckets.get(&class).into_iter().flatten() {
                materialize(&mut entries[k], &mut materialized_count);
            }
            materialize(&mut entries[hit], &mut materialized_count);
            materialize(&mut entry, &mut materialized_count);

            let current = entry.body.as_ref().expect("materialized above");
            let other = entries[hit].body.as_ref().expect("materialized above");
            let next = normalize(ctx, &current.sub(fp, other));
            entry.order = next.order().expect("reduced q-th powers are independent");
            entry.body = Some(next);
            entry.reductions += 1;
            reduction_count += 1;
        }
        by_order.insert(entry.order, index);
        buckets.entry(class).or_default().push(index);
        entries.push(entry);
    }

    Ok(PhiBasis {
        m,
        entries,
        reduction_count,
        materialized_count,
    })
}

pub fn phi_basis(ctx: &CurveCtx, m: i64, algo: Algorithm) -> Result<PhiBasis> {
    match algo {
        Algorithm::Baseline => phi_basis_baseline(ctx, m),
        Algorithm::Optimized => phi_basis_optimized(ctx, m),
    }
}

/// `Delta(m)` for `0 <= m <= n + 2g - 2`.
///
/// Small `m` use `Delta(m) = l(m)`, large `m` use `Delta(m) = Delta(m^⊥)`,
/// and the rest count `Phi(m)` orders up to `m^⊥`.
pub fn delta(ctx: &CurveCtx, m: i64) -> Result<DeltaResult> {
    delta_with(ctx, m, Algorithm::Optimized)
}

pub fn delta_with(ctx: &CurveCtx, m: i64, algo: Algorithm) -> Result<DeltaResult> {
    let m_perp = ctx.m_perp(m)?;
    let q = ctx.q() as i64;
    if m <= q * q - 2 {
        return Ok(DeltaResult {
            m,
            delta: ctx.ell(m),
            method: Method::Shortcut,
            reduction_count: 0,
        });
    }
    if m > ctx.m_star() as i64 {
        let dual = delta_with(ctx, m_perp, algo)?;
        return Ok(DeltaResult {
            m,
            method: Method::Duality,
            ..dual
        });
    }
    let basis = phi_basis(ctx, m, algo)?;
    Ok(DeltaResult {
        m,
        delta: basis.count_at_most(m_perp),
        method: match algo {
            Algorithm::Baseline => Method::Baseline,
            Algorithm::Optimized => Method::Optimized,
        },
        reduction_count: basis.reduction_count,
    })
}

/// `Phi(m*)` computed once, answering `Delta(m)` for the whole standard range.
#[derive(Debug, Clone)]
pub struct DeltaTable {
    basis: PhiBasis,
    /// Subtractions spent on entries `0..=i`.
    cumulative: Vec<usize>,
    algo: Algorithm,
}

impl DeltaTable {
    pub fn new(ctx: &CurveCtx) -> Result<Self> {
        Self::with_algorithm(ctx, Algorithm::Optimized)
    }

    pub fn with_algorithm(ctx: &CurveCtx, algo: Algorithm) -> Result<Self> {
        let basis = phi_basis(ctx, ctx.m_star() as i64, algo)?;
        let cumulative = basis
            .entries
            .iter()
            .scan(0, |acc, e| {
                *acc += e.reductions;
                Some(*acc)
            })
            .collect();
        Ok(Self {
            basis,
            cumulative,
            algo,
        })
    }

    pub fn basis(&self) -> &PhiBasis {
        &self.basis
    }

    /// Entries of `Phi(m)`, for `q^2 - 1 <= m <= m*`.
    pub fn prefix(&self, ctx: &CurveCtx, m: i64) -> Result<&[PhiEntry]> {
        check_algorithm_range(ctx, m)?;
        Ok(&self.basis.entries[..ctx.ell(m) as usize])
    }

    /// What `phi_basis(m).reduction_count` would report.
    pub fn reduction_count(&self, ctx: &CurveCtx, m: i64) -> Result<usize> {
        check_algorithm_range(ctx, m)?;
        Ok(self.cumulative[ctx.ell(m) as usize - 1])
    }

    pub fn delta(&self, ctx: &CurveCtx, m: i64) -> Result<DeltaResult> {
        let m_perp = ctx.m_perp(m)?;
        let q = ctx.q() as i64;
        if m <= q * q - 2 {
            return Ok(DeltaResult {
                m,
                delta: ctx.ell(m),
                method: Method::Shortcut,
                reduction_count: 0,
            });
        }
        if m > ctx.m_star() as i64 {
            let dual = self.delta(ctx, m_perp)?;
            return Ok(DeltaResult {
                m,
                method: Method::Duality,
                ..dual
            });
        }
        let delta = self
            .prefix(ctx, m)?
            .iter()
            .filter(|e| (e.order as i64) <= m_perp)
            .count() as u64;
        Ok(DeltaResult {
            m,
            delta,
            method: match self.algo {
                Algorithm::Baseline => Method::Baseline,
                Algorithm::Optimized => Method::Optimized,
            },
            reduction_count: self.reduction_count(ctx, m)?,
        })
    }
}

/// Number of reduced monomials in each residue class of `nu` mod `q^2 - 1`.
pub fn residue_class_census(ctx: &CurveCtx) -> Vec<u64> {
    let q = ctx.q();
    let mut counts = vec![0u64; (q * q - 1) as usize];
    for f in ctx.basis() {
        counts[residue(ctx, f) as usize] += 1;
    }
    counts
}

/// Class sizes predicted for the census: `q+2` at 0, `q+1` on nonzero
/// multiples of `q+1`, `q` elsewhere.
pub fn expected_class_size(q: u64, k: u64) -> u64 {
    if k == 0 {
        q + 2
    } else if k.is_multiple_of(q + 1) {
        q + 1
    } else {
        q
    }
}
