//! Slow reference computations by explicit linear algebra over F_{q^2}: the
//! evaluation generator matrix, ranks, `c`, `Delta` and a brute-force `d'`.

use crate::curve::{AffinePoint, CurveCtx};
use crate::error::{check_range, Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::reduction::Poly;

/// Upper limit on the number of codewords `dprime_bruteforce` enumerates.
pub const BRUTE_FORCE_BUDGET: u128 = 1 << 26;

/// A dense row-major matrix over F_{q^2}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl EvalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![FieldElem::ZERO; rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<FieldElem>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Entrywise `x -> x^q`.
    pub fn frobenius(&self, field: &FieldCtx) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| field.frobenius(x)).collect(),
        }
    }

    /// `self` on top of `other`.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column counts differ");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// `self * other^*`, where `other^*` is the transpose with every entry
    /// raised to the `q`-th power.
    pub fn mul_adjoint(&self, field: &FieldCtx, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "column counts differ");
        let conj = other.frobenius(field);
        let mut out = Self::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            let a = self.row(i);
            for l in 0..other.rows {
                let b = conj.row(l);
                let mut acc = FieldElem::ZERO;
                for (&x, &y) in a.iter().zip(b) {
                    acc = field.add(acc, field.mul(x, y));
                }
                out.set(i, l, acc);
            }
        }
        out
    }
}

pub fn eval_monomial(field: &FieldCtx, a: u64, b: u64, pt: &AffinePoint) -> FieldElem {
    field.mul(field.pow(pt.x, a), field.pow(pt.y, b))
}

pub fn eval_poly(field: &FieldCtx, poly: &Poly, pt: &AffinePoint) -> FieldElem {
    poly.terms().fold(FieldElem::ZERO, |acc, ((a, b), c)| {
        field.add(
            acc,
            field.mul(field.from_prime(c), eval_monomial(field, a, b, pt)),
        )
    })
}

/// Rows are `ev(x^a y^b)` for the Riemann–Roch basis of `L(mQ)`, columns the
/// affine points in canonical order.
pub fn generator_matrix(ctx: &CurveCtx, m: i64) -> Result<EvalMatrix> {
    check_range("m", m, 0, ctx.max_order() as i64)?;
    let field = ctx.field();
    let points = ctx.affine_points();
    let rows = ctx
        .riemann_roch_basis(m)
        .into_iter()
        .map(|(a, b)| {
            points
                .iter()
                .map(|pt| eval_monomial(field, a, b, pt))
                .collect()
        })
        .collect();
    Ok(EvalMatrix::from_rows(rows))
}

/// Row rank by Gaussian elimination.
pub fn rank_gf(field: &FieldCtx, mat: &EvalMatrix) -> usize {
    let mut m = mat.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        if pivot != rank {
            for j in col..cols {
                m.data.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let inv = field.inv(m.get(rank, col)).expect("pivot is nonzero");
        for j in col..cols {
            let v = m.get(rank, j);
            m.set(rank, j, field.mul(v, inv));
        }
        for r in rank + 1..rows {
            let factor = m.get(r, col);
            if factor.is_zero() {
                continue;
            }
            for j in col..cols {
                let v = field.sub(m.get(r, j), field.mul(factor, m.get(rank, j)));
                m.set(r, j, v);
            }
        }
        rank += 1;
    }
    rank
}

/// `c = rank(H H^*)` for `H` a generator matrix of the Euclidean dual
/// `C(m^perp)`, whose Frobenius image is the Hermitian dual of `C(m)`.
pub fn c_oracle(ctx: &CurveCtx, m: i64) -> Result<usize> {
    let mp = ctx.m_perp(m)?;
    let h = generator_matrix(ctx, mp)?;
    Ok(rank_gf(ctx.field(), &h.mul_adjoint(ctx.field(), &h)))
}

/// `rank(G G^*) = k - Delta` for `G` a generator matrix of `C(m)`.
pub fn hull_complement_oracle(ctx: &CurveCtx, m: i64) -> Result<usize> {
    ctx.m_perp(m)?;
    let g = generator_matrix(ctx, m)?;
    Ok(rank_gf(ctx.field(), &g.mul_adjoint(ctx.field(), &g)))
}

/// `dim(C(m)^q ∩ C(m^perp))` from the rank identity
/// `dim(A ∩ B) = rank A + rank B - rank [A; B]`.
pub fn delta_oracle(ctx: &CurveCtx, m: i64) -> Result<usize> {
    let mp = ctx.m_perp(m)?;
    let field = ctx.field();
    let a = generator_matrix(ctx, m)?.frobenius(field);
    let b = generator_matrix(ctx, mp)?;
    Ok(rank_gf(field, &a) + rank_gf(field, &b) - rank_gf(field, &a.stack(&b)))
}

/// Whether `C(m^perp)^q` is exactly the Hermitian dual of `C(m)`: every
/// Hermitian product vanishes and the dimensions add up to `n`.
pub fn hermitian_dual_check(ctx: &CurveCtx, m: i64) -> Result<bool> {
    let mp = ctx.m_perp(m)?;
    let field = ctx.field();
    let g = generator_matrix(ctx, m)?;
    let h = generator_matrix(ctx, mp)?.frobenius(field);
    let orthogonal = h.mul_adjoint(field, &g).data.iter().all(|x| x.is_zero());
    let dims = rank_gf(field, &g) + rank_gf(field, &h) == ctx.n() as usize;
    Ok(orthogonal && dims)
}

/// A maximal linearly independent subset of the rows.
fn row_basis(field: &FieldCtx, mat: &EvalMatrix) -> Vec<Vec<FieldElem>> {
    let mut basis: Vec<Vec<FieldElem>> = Vec::new();
    for i in 0..mat.rows {
        let mut extended = basis.clone();
        extended.push(mat.row(i).to_vec());
        if rank_gf(field, &EvalMatrix::from_rows(extended)) > basis.len() {
            basis.push(mat.row(i).to_vec());
        }
    }
    basis
}

fn check_budget(ctx: &CurveCtx, m: i64) -> Result<()> {
    let size = ctx.field().size() as u128;
    let codewords = size.checked_pow(ctx.ell(m) as u32).unwrap_or(u128::MAX);
    if codewords > BRUTE_FORCE_BUDGET {
        return Err(Error::TooLargeForBruteForce {
            codewords,
            budget: BRUTE_FORCE_BUDGET,
        });
    }
    Ok(())
}

/// Calls `visit` on every linear combination of `rows`, depth-first; level
/// `i + 1` of the scratch space caches the combination of the first `i + 1`.
fn for_each_combination(
    field: &FieldCtx,
    rows: &[Vec<FieldElem>],
    mut visit: impl FnMut(&[FieldElem]),
) {
    let k = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let scalars: Vec<FieldElem> = field.elements().collect();
    let mut level = vec![vec![FieldElem::ZERO; width]; k + 1];
    let mut choice = vec![0usize; k];
    let mut depth = 0usize;
    loop {
        if depth == k {
            visit(&level[k]);
            loop {
                if depth == 0 {
                    return;
                }
                depth -= 1;
                choice[depth] += 1;
                if choice[depth] < scalars.len() {
                    break;
                }
                choice[depth] = 0;
            }
        }
        let lambda = scalars[choice[depth]];
        let (lo, hi) = level.split_at_mut(depth + 1);
        for ((dst, &src), &b) in hi[0].iter_mut().zip(&lo[depth]).zip(&rows[depth]) {
            *dst = field.add(src, field.mul(lambda, b));
        }
        depth += 1;
    }
}

fn weight(word: &[FieldElem]) -> u64 {
    word.iter().filter(|x| !x.is_zero()).count() as u64
}

/// Minimum distance of `C(m)` by enumerating every codeword.
pub fn min_distance_bruteforce(ctx: &CurveCtx, m: i64) -> Result<u64> {
    ctx.m_perp(m)?;
    check_budget(ctx, m)?;
    let basis = row_basis(ctx.field(), &generator_matrix(ctx, m)?);
    let mut best = u64::MAX;
    for_each_combination(ctx.field(), &basis, |w| {
        let wt = weight(w);
        if wt > 0 {
            best = best.min(wt);
        }
    });
    Ok(best)
}

/// Minimum distance of `C(m)` if it is at most `max_weight`, found as the
/// smallest set of linearly dependent columns of a parity-check matrix.
pub fn min_distance_dual_search(ctx: &CurveCtx, m: i64, max_weight: usize) -> Result<Option<u64>> {
    let mp = ctx.m_perp(m)?;
    let field = ctx.field();
    let h = generator_matrix(ctx, mp)?;
    let n = h.cols();
    for w in 1..=max_weight.min(n) {
        let mut cols: Vec<usize> = (0..w).collect();
        loop {
            let sub = EvalMatrix::from_rows(
                cols.iter()
                    .map(|&j| (0..h.rows()).map(|i| h.get(i, j)).collect())
                    .collect(),
            );
            if rank_gf(field, &sub) < w {
                return Ok(Some(w as u64));
            }
            // next w-subset in lexicographic order
            let Some(i) = (0..w).rev().find(|&i| cols[i] < n - w + i) else {
                break;
            };
            cols[i] += 1;
            for t in i + 1..w {
                cols[t] = cols[t - 1] + 1;
            }
        }
    }
    Ok(None)
}

/// Minimum weight over `C(m) \ (C(m) ∩ C(m)^{perp_H})` by enumeration, or
/// `None` when `C(m)` is contained in its Hermitian dual.
pub fn dprime_bruteforce(ctx: &CurveCtx, m: i64) -> Result<Option<u64>> {
    ctx.m_perp(m)?;
    check_budget(ctx, m)?;
    let field = ctx.field();
    let g = generator_matrix(ctx, m)?;
    let basis = row_basis(field, &g);
    let n = ctx.n() as usize;
    // Each row is extended by its Hermitian products <g_i, b> = sum_j g_ij^q b_j,
    // which are linear in b, so a combination lies in the Hermitian dual
    // exactly when its tail vanishes.
    let conj = g.frobenius(field);
    let rows: Vec<Vec<FieldElem>> = basis
        .into_iter()
        .map(|mut b| {
            let products: Vec<FieldElem> = (0..conj.rows)
                .map(|i| {
                    conj.row(i)
                        .iter()
                        .zip(&b)
                        .fold(FieldElem::ZERO, |acc, (&x, &y)| {
                            field.add(acc, field.mul(x, y))
                        })
                })
                .collect();
            b.extend(products);
            b
        })
        .collect();
    let mut best: Option<u64> = None;
    for_each_combination(field, &rows, |w| {
        let (word, tail) = w.split_at(n);
        if tail.iter().any(|x| !x.is_zero()) {
            let wt = weight(word);
            best = Some(best.map_or(wt, |b| b.min(wt)));
        }
    });
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::delta;
    use crate::params::classical_dims;

    #[test]
    fn generator_matrix_shapes() {
        let c2 = CurveCtx::new(2, 1).unwrap();
        let g = generator_matrix(&c2, 2).unwrap();
        assert_eq!((g.rows(), g.cols()), (2, 8));
        assert_eq!(rank_gf(c2.field(), &g), 2);
        let g0 = generator_matrix(&c2, 0).unwrap();
        assert_eq!(g0.rows(), 1);
        assert!(g0.row(0).iter().all(|&x| x == FieldElem::ONE));

        let c3 = CurveCtx::new(3, 1).unwrap();
        let g = generator_matrix(&c3, 15).unwrap();
        assert_eq!((g.rows(), g.cols()), (13, 27));
        assert_eq!(rank_gf(c3.field(), &g), 13);
        assert!(generator_matrix(&c3, 33).is_err());
    }

    #[test]
    fn rank_basics() {
        let c = CurveCtx::new(3, 1).unwrap();
        let f = c.field();
        assert_eq!(rank_gf(f, &EvalMatrix::identity(5)), 5);
        assert_eq!(rank_gf(f, &EvalMatrix::zeros(4, 6)), 0);
        let g = generator_matrix(&c, 6).unwrap();
        let dup = g.stack(&EvalMatrix::from_rows(vec![g.row(2).to_vec()]));
        assert_eq!(rank_gf(f, &dup), rank_gf(f, &g));
    }

    #[test]
    fn oracle_examples() {
        let c = CurveCtx::new(3, 1).unwrap();
        assert_eq!(c_oracle(&c, 8).unwrap(), 16);
        assert_eq!(c_oracle(&c, 24).unwrap(), 0);
        assert_eq!(delta_oracle(&c, 10).unwrap(), 6);
        assert_eq!(delta_oracle(&c, 14).unwrap(), 6);
        for m in 0..=31 {
            assert_eq!(
                delta_oracle(&c, m).unwrap(),
                delta_oracle(&c, 31 - m).unwrap()
            );
        }
        assert!(c_oracle(&c, 32).is_err());
    }

    #[test]
    fn exhaustive_agreement_small() {
        for q in [2u64, 3] {
            let ctx = CurveCtx::from_q(q).unwrap();
            for m in 0..=ctx.max_m() as i64 {
                let d = delta(&ctx, m).unwrap().delta as usize;
                let (k, _) = classical_dims(&ctx, m).unwrap();
                assert_eq!(delta_oracle(&ctx, m).unwrap(), d, "q={q} m={m}");
                assert_eq!(
                    c_oracle(&ctx, m).unwrap(),
                    ctx.n() as usize - k as usize - d
                );
                assert_eq!(hull_complement_oracle(&ctx, m).unwrap(), k as usize - d);
            }
        }
    }

    #[test]
    fn hermitian_dual() {
        for q in [2u64, 3] {
            let ctx = CurveCtx::from_q(q).unwrap();
            for m in 0..=ctx.max_m() as i64 {
                assert!(hermitian_dual_check(&ctx, m).unwrap());
            }
        }
    }

    #[test]
    fn distance_bound_is_exact_where_checkable() {
        let c2 = CurveCtx::new(2, 1).unwrap();
        for m in 0..=c2.max_m() as i64 {
            let exact = min_distance_bruteforce(&c2, m).unwrap();
            assert_eq!(classical_dims(&c2, m).unwrap().1, exact, "q=2 m={m}");
        }
        let c3 = CurveCtx::new(3, 1).unwrap();
        for m in 0..=6 {
            let exact = min_distance_bruteforce(&c3, m).unwrap();
            assert_eq!(classical_dims(&c3, m).unwrap().1, exact, "q=3 m={m}");
        }
        for m in 22..=31 {
            let exact = min_distance_dual_search(&c3, m, 6).unwrap().unwrap();
            assert_eq!(classical_dims(&c3, m).unwrap().1, exact, "q=3 m={m}");
        }
    }

    #[test]
    fn dprime_small() {
        let c = CurveCtx::new(2, 1).unwrap();
        assert_eq!(dprime_bruteforce(&c, 0).unwrap(), None);
        assert!(dprime_bruteforce(&c, 4).unwrap().unwrap() >= 4);
        assert!(dprime_bruteforce(&c, 3).unwrap().unwrap() >= 5);
        let c3 = CurveCtx::new(3, 1).unwrap();
        assert!(matches!(
            dprime_bruteforce(&c3, 20),
            Err(Error::TooLargeForBruteForce { .. })
        ));
    }
}
