//! The orbifolded Nekrasov factor and single partition-pair contributions
//! to a Shiraishi function.

use crate::error::{Error, Result};
use crate::exact::tower::Params;
use crate::exact::Scalar;
use crate::partitions::{p_degree, Partition};

/// One summand of the Shiraishi sum: the scalar coefficient together with the
/// exponent data of its (X1, X2) monomial (the global X1^j prefactor is kept
/// out) and the power of p it carries.
#[derive(Clone, Debug)]
pub struct PairContribution {
    pub lambda: Partition,
    pub mu: Partition,
    pub p_degree: u64,
    pub coefficient: Scalar,
    pub exponent1: i64,
    pub exponent2: i64,
}

/// Orbifolded Nekrasov factor N^{(k)}_{P,R}(u).
///
/// Both product lines run over band-restricted index pairs with a parity
/// condition evaluated as mathematical evenness of the integer, which is
/// robust for negative values. Parts beyond a partition's length are zero
/// and empty products are 1.
pub fn nekrasov_factor(
    p: &Partition,
    r: &Partition,
    k: i32,
    u: &Scalar,
    params: &Params,
) -> Scalar {
    let mut acc = Scalar::one();
    // Line 1: b = 1..len(P), a = 1..b with b - a - k even,
    //         m = 0..P_b - P_{b+1} - 1, factor 1 - u q^(m - R_a + P_{b+1}) S^(b-a).
    for b in 1..=p.len() {
        let pb = p.part(b) as i64;
        let pb1 = p.part(b + 1) as i64;
        for a in 1..=b {
            if (b as i64 - a as i64 - k as i64) % 2 != 0 {
                continue;
            }
            let ra = r.part(a) as i64;
            let s_part = params.s_half(b as i64 - a as i64);
            for m in 0..(pb - pb1) {
                let mono = params.q_pow(m - ra + pb1).mul(&s_part);
                acc = acc.mul(&Scalar::one().sub(&u.mul(&mono)));
                if acc.is_zero() {
                    return acc;
                }
            }
        }
    }
    // Line 2: b = 1..len(R), a = 1..b with b - a + k + 1 even,
    //         m = 0..R_b - R_{b+1} - 1, factor 1 - u q^(m + P_a - R_b) S^(a-b-1).
    for b in 1..=r.len() {
        let rb = r.part(b) as i64;
        let rb1 = r.part(b + 1) as i64;
        for a in 1..=b {
            if (b as i64 - a as i64 + k as i64 + 1) % 2 != 0 {
                continue;
            }
            let pa = p.part(a) as i64;
            let s_part = params.s_half(a as i64 - b as i64 - 1);
            for m in 0..(rb - rb1) {
                let mono = params.q_pow(m + pa - rb).mul(&s_part);
                acc = acc.mul(&Scalar::one().sub(&u.mul(&mono)));
                if acc.is_zero() {
                    return acc;
                }
            }
        }
    }
    acc
}

/// Assemble the contribution of one pair (lambda, mu) to the Shiraishi
/// function of index j: the four-factor Nekrasov ratio with the monomial
/// prefactors' t- and q-powers folded into the coefficient.
///
/// A vanishing numerator means the pair contributes zero. A vanishing
/// denominator with nonzero numerator signals an invalid parameter binding
/// and is reported as `ZeroDenominator`.
pub fn pair_contribution(
    lambda: &Partition,
    mu: &Partition,
    j: usize,
    params: &Params,
) -> Result<PairContribution> {
    let degree = p_degree(lambda, mu);
    let weight = (lambda.weight() + mu.weight()) as i64;
    // Exponent of (x2/x1) from the X_a monomials.
    let w = (lambda.odd_index_sum() as i64 - lambda.even_index_sum() as i64)
        + (mu.even_index_sum() as i64 - mu.odd_index_sum() as i64);

    let y = params
        .s_half(-1)
        .mul(&params.t_pow(-1))
        .mul(&params.q_pow(-(j as i64)));
    let q_over_t = params.q_pow(1).mul(&params.t_pow(-1));
    let qy_over_t = q_over_t.mul(&y);
    let q_over_ty = params.q_pow(1 + j as i64).mul(&params.s_half(1));

    let num = nekrasov_factor(lambda, lambda, 0, &q_over_t, params)
        .mul(&nekrasov_factor(lambda, mu, 1, &qy_over_t, params))
        .mul(&nekrasov_factor(mu, lambda, -1, &q_over_ty, params))
        .mul(&nekrasov_factor(mu, mu, 0, &q_over_t, params));
    if num.is_zero() {
        return Ok(PairContribution {
            lambda: lambda.clone(),
            mu: mu.clone(),
            p_degree: degree,
            coefficient: Scalar::zero(),
            exponent1: -w,
            exponent2: w,
        });
    }

    let y_inv = y.inv().expect("y is a monomial");
    let den = nekrasov_factor(lambda, lambda, 0, &Scalar::one(), params)
        .mul(&nekrasov_factor(lambda, mu, 1, &y, params))
        .mul(&nekrasov_factor(mu, lambda, -1, &y_inv, params))
        .mul(&nekrasov_factor(mu, mu, 0, &Scalar::one(), params));
    if den.is_zero() {
        return Err(Error::ZeroDenominator {
            lambda: lambda.to_string(),
            mu: mu.to_string(),
            j,
        });
    }

    let prefactor = params.t_pow(weight).mul(&params.q_pow(-weight));
    let coefficient = num.div(&den)?.mul(&prefactor);
    Ok(PairContribution {
        lambda: lambda.clone(),
        mu: mu.clone(),
        p_degree: degree,
        coefficient,
        exponent1: -w,
        exponent2: w,
    })
}
