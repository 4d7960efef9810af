#![cfg(feature = "oracle")]
//! Fast path against explicit linear algebra over F_{q^2}.

use hermitian_eaqecc::oracle::{c_oracle, delta_oracle};
use hermitian_eaqecc::{classical_dims, delta, CurveCtx};

fn check_q(q: u64) {
    let ctx = CurveCtx::from_q(q).unwrap();
    let mut mismatches = Vec::new();
    for m in 0..=ctx.max_m() as i64 {
        let d = delta(&ctx, m).unwrap().delta;
        let (k, _) = classical_dims(&ctx, m).unwrap();
        let c = ctx.n() - k - d;
        if delta_oracle(&ctx, m).unwrap() as u64 != d || c_oracle(&ctx, m).unwrap() as u64 != c {
            mismatches.push(m);
        }
    }
    assert!(
        mismatches.is_empty(),
        "q={q}: mismatches at m = {mismatches:?}"
    );
}

#[test]
fn fast_path_matches_oracle_q2_to_q5() {
    for q in [2, 3, 4, 5] {
        check_q(q);
    }
}

#[test]
#[ignore = "slow: run with --ignored"]
fn fast_path_matches_oracle_q7_q8() {
    for q in [7, 8] {
        check_q(q);
    }
}

mod linear_algebra {
    use hermitian_eaqecc::oracle::{
        eval_poly, generator_matrix, hermitian_dual_check, rank_gf, EvalMatrix,
    };
    use hermitian_eaqecc::{phi_basis, reduce_poly, Algorithm, CurveCtx, Poly};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn evaluation_survives_reduction(
            q in 2u64..=4,
            terms in prop::collection::vec((0u64..60, 0u64..20, 1u32..4), 1..5),
        ) {
            let ctx = CurveCtx::from_q(q).unwrap();
            let fp = ctx.prime_field();
            let mut f = Poly::new();
            for (a, b, c) in terms {
                f.add_term(fp, a, b, c % fp.p());
            }
            let r = reduce_poly(&ctx, &f).to_poly();
            for pt in ctx.affine_points() {
                prop_assert_eq!(eval_poly(ctx.field(), &f, &pt), eval_poly(ctx.field(), &r, &pt));
            }
        }
    }

    #[test]
    fn top_code_is_the_whole_space() {
        for q in [2, 3, 4] {
            let ctx = CurveCtx::from_q(q).unwrap();
            let g = generator_matrix(&ctx, ctx.max_order() as i64).unwrap();
            assert_eq!(rank_gf(ctx.field(), &g), ctx.n() as usize);
        }
    }

    #[test]
    fn hermitian_dual_is_the_frobenius_of_the_dual() {
        for q in [2, 3] {
            let ctx = CurveCtx::from_q(q).unwrap();
            for m in 0..=ctx.max_m() as i64 {
                assert!(hermitian_dual_check(&ctx, m).unwrap(), "q={q} m={m}");
            }
        }
    }

    #[test]
    fn triangularization_preserves_the_span() {
        for q in [2, 3] {
            let ctx = CurveCtx::from_q(q).unwrap();
            let field = ctx.field();
            let points = ctx.affine_points();
            let eval = |polys: Vec<Poly>| {
                EvalMatrix::from_rows(
                    polys
                        .iter()
                        .map(|f| points.iter().map(|pt| eval_poly(field, f, pt)).collect())
                        .collect(),
                )
            };
            for m in (q * q - 1) as i64..=ctx.m_star() as i64 {
                let basis = phi_basis(&ctx, m, Algorithm::Baseline).unwrap();
                let phis = eval(
                    basis
                        .entries
                        .iter()
                        .map(|e| e.body.as_ref().unwrap().to_poly())
                        .collect(),
                );
                let powers = eval(
                    basis
                        .entries
                        .iter()
                        .map(|e| e.power.as_ref().unwrap().to_poly())
                        .collect(),
                );
                let r = rank_gf(field, &phis);
                assert_eq!(r, rank_gf(field, &powers));
                assert_eq!(r, rank_gf(field, &phis.stack(&powers)), "q={q} m={m}");
            }
        }
    }
}
