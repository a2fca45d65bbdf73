//! Assembly of Shiraishi functions as truncated p-series of Laurent
//! polynomials, the (p, s) parameter transformations including the
//! re-expansion s -> p/s, and the closed-form order-p coefficient families.

use crate::error::{Error, Result};
use crate::exact::series::{taylor_expand, PSeries};
use crate::exact::tower::Params;
use crate::exact::{sum_grouped, Scalar};
use crate::laurent::LaurentPoly2;
use crate::macdonald::macdonald_a1;
use crate::nekrasov::pair_contribution;
use crate::partitions::enumerate_pairs;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SMode {
    SymbolicS,
    BoundRational,
    Substituted,
}

/// A Shiraishi function of index j, truncated in p. Every p^d coefficient
/// is a Laurent polynomial homogeneous of degree j in (X1, X2), and the
/// p^0 coefficient is exactly the Macdonald polynomial of index j.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiraishiSeries {
    pub j: usize,
    pub s_mode: SMode,
    series: PSeries<LaurentPoly2>,
}

impl ShiraishiSeries {
    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn coeff(&self, d: usize) -> &LaurentPoly2 {
        self.series.coeff(d)
    }

    pub fn series(&self) -> &PSeries<LaurentPoly2> {
        &self.series
    }

    pub fn truncate(&self, order: usize) -> ShiraishiSeries {
        ShiraishiSeries {
            j: self.j,
            s_mode: self.s_mode,
            series: self.series.truncate(order),
        }
    }
}

/// Construct the Shiraishi function of index j to order n by summing pair
/// contributions grouped by p-degree. Construction-time invariants: every
/// coefficient is homogeneous of degree j, the p^0 coefficient equals the
/// Macdonald polynomial, and (when s is symbolic) every coefficient is
/// rational in s = S^2.
pub fn shiraishi_series(j: usize, n: usize, params: &Params) -> Result<ShiraishiSeries> {
    let mut buckets: BTreeMap<(usize, i64, i64), Vec<Scalar>> = BTreeMap::new();
    for (lambda, mu) in enumerate_pairs(j, n) {
        let c = pair_contribution(&lambda, &mu, j, params)?;
        if c.coefficient.is_zero() || c.p_degree > n as u64 {
            continue;
        }
        buckets
            .entry((c.p_degree as usize, j as i64 + c.exponent1, c.exponent2))
            .or_default()
            .push(c.coefficient);
    }
    let mut coeffs = vec![LaurentPoly2::zero(); n + 1];
    for ((d, e1, e2), parts) in buckets {
        coeffs[d].add_term(e1, e2, sum_grouped(parts));
    }
    let series = PSeries::from_coeffs(coeffs);

    for (d, c) in series.coeffs().iter().enumerate() {
        assert!(
            c.is_homogeneous(j as i64),
            "p^{d} coefficient of index-{j} series not homogeneous"
        );
    }
    assert_eq!(
        series.coeff(0),
        &macdonald_a1(j, params),
        "p^0 coefficient must reduce to the Macdonald polynomial"
    );
    let s_mode = if let Some(level) = params.s_level() {
        for (d, c) in series.coeffs().iter().enumerate() {
            for (_, v) in c.terms() {
                even_coeff_vectors(v, level).map_err(|_| {
                    Error::OddPowerResidue(format!("index {j}, order p^{d}"))
                })?;
            }
        }
        SMode::SymbolicS
    } else if params.has_s() {
        SMode::BoundRational
    } else {
        SMode::SymbolicS
    };
    Ok(ShiraishiSeries { j, s_mode, series })
}

/// num/den coefficient lists of a scalar in s = S^2; errors when the reduced
/// form carries odd powers of S.
fn even_coeff_vectors(x: &Scalar, s_level: u8) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    let (num, den) = x.var_coeff_vectors(s_level);
    let project = |v: Vec<Scalar>| -> Result<Vec<Scalar>> {
        for (e, c) in v.iter().enumerate() {
            if e % 2 == 1 && !c.is_zero() {
                return Err(Error::OddPowerResidue(format!("S^{e}")));
            }
        }
        Ok(v.into_iter().step_by(2).collect())
    };
    Ok((project(num)?, project(den)?))
}

/// Substitute s -> value in one scalar (no-op when the tower has no
/// symbolic s or the scalar is s-free).
pub fn subst_s_scalar(x: &Scalar, value: &Scalar, params: &Params) -> Result<Scalar> {
    let Some(level) = params.s_level() else {
        return Ok(x.clone());
    };
    if !x.uses_var(level) {
        return Ok(x.clone());
    }
    let (num, den) = even_coeff_vectors(x, level)?;
    let horner = |v: &[Scalar]| -> Scalar {
        let mut acc = Scalar::zero();
        for c in v.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    };
    let d = horner(&den);
    if d.is_zero() {
        return Err(Error::EvaluationPole(String::new()));
    }
    horner(&num).div(&d)
}

/// Replace s by an exact value in every coefficient; errors report the
/// offending (j, p-order) position.
pub fn substitute_s(
    series: &ShiraishiSeries,
    value: &Scalar,
    params: &Params,
) -> Result<ShiraishiSeries> {
    let mut coeffs = Vec::with_capacity(series.order() + 1);
    for d in 0..=series.order() {
        let mut out = LaurentPoly2::zero();
        for ((e1, e2), v) in series.coeff(d).terms() {
            let sub = subst_s_scalar(v, value, params).map_err(|e| match e {
                Error::EvaluationPole(_) => Error::EvaluationPole(format!(
                    " at j={}, p^{d}, monomial X1^{e1} X2^{e2}",
                    series.j
                )),
                other => other,
            })?;
            out.add_term(*e1, *e2, sub);
        }
        coeffs.push(out);
    }
    Ok(ShiraishiSeries {
        j: series.j,
        s_mode: SMode::Substituted,
        series: PSeries::from_coeffs(coeffs),
    })
}

/// Multiply the p^d coefficient by lambda^d; lambda = 1/s realizes the
/// elliptic-parameter substitution p -> p/s.
pub fn scale_elliptic_param(series: &ShiraishiSeries, lambda: &Scalar) -> ShiraishiSeries {
    ShiraishiSeries {
        j: series.j,
        s_mode: series.s_mode,
        series: series.series.scale_param(lambda).expect("pure scaling"),
    }
}

/// Exact re-expansion of P_j(x | p, p/s): substitute s -> p/s in every
/// coefficient r_d(s), Taylor-expand in p (each r_d(p/s) must be regular at
/// p = 0), and regroup by total p-order. The input must be computed to
/// order n + headroom; the headroom band is regularity-checked as well.
pub fn reexpand_p_over_s(
    series: &ShiraishiSeries,
    n: usize,
    headroom: usize,
    params: &Params,
) -> Result<ShiraishiSeries> {
    let need = n + headroom;
    if series.order() < need {
        return Err(Error::Invalid(format!(
            "re-expansion to order {n} with headroom {headroom} needs input order {need}, got {}",
            series.order()
        )));
    }
    let s_level = params
        .s_level()
        .ok_or_else(|| Error::Invalid("re-expansion needs a symbolic s".into()))?;
    let mut out = vec![LaurentPoly2::zero(); n + 1];
    for d in 0..=need {
        for ((e1, e2), v) in series.coeff(d).terms() {
            let (a, b) = even_coeff_vectors(v, s_level)?;
            let big_d = a.len().max(b.len()) - 1;
            // r(p/s) = (sum_k a_k p^k s^(D-k)) / (sum_k b_k p^k s^(D-k)).
            let lift = |v: &[Scalar]| -> Vec<Scalar> {
                v.iter()
                    .enumerate()
                    .map(|(k, c)| c.mul(&params.s_pow((big_d - k) as i64)))
                    .collect()
            };
            let num_p = lift(&a);
            let den_p = lift(&b);
            if den_p.first().map_or(true, |c| c.is_zero()) {
                return Err(Error::PoleAtOrigin(format!(
                    ": coefficient at j={}, p^{d}, monomial X1^{e1} X2^{e2} is singular under s -> p/s",
                    series.j
                )));
            }
            if d > n {
                // Headroom band: only the regularity check applies; all
                // Taylor contributions would land beyond order n.
                continue;
            }
            let taylor = taylor_expand(&num_p, &den_p, n - d)?;
            for (m, c) in taylor.into_iter().enumerate() {
                out[d + m].add_term(*e1, *e2, c);
            }
        }
    }
    Ok(ShiraishiSeries {
        j: series.j,
        s_mode: SMode::Substituted,
        series: PSeries::from_coeffs(out),
    })
}

/// Re-expansion with the mandatory headroom-stability assertion: results at
/// headroom H and H+1 must agree at all orders <= n.
pub fn reexpand_p_over_s_stable(
    series: &ShiraishiSeries,
    n: usize,
    headroom: usize,
    params: &Params,
) -> Result<ShiraishiSeries> {
    let base = reexpand_p_over_s(series, n, headroom, params)?;
    if series.order() >= n + headroom + 1 {
        let wider = reexpand_p_over_s(series, n, headroom + 1, params)?;
        for d in 0..=n {
            if base.coeff(d) != wider.coeff(d) {
                return Err(Error::InstableTruncation {
                    h: headroom,
                    h_next: headroom + 1,
                    order: d,
                });
            }
        }
    }
    Ok(base)
}

/// Substitute X1 -> v1, X2 -> v2 in every coefficient.
pub fn evaluate_series_at(
    series: &ShiraishiSeries,
    v1: &Scalar,
    v2: &Scalar,
) -> Result<PSeries<Scalar>> {
    series.series.try_map(|c| c.eval(v1, v2))
}

/// Shared numerator bracket of the middle expansion coefficients:
/// 2 q^(2j) t - q^(j-1) (1-q)^2 - q^(j-1) (q+1)(t + q/t) + 2/t.
/// Pinned against the assembled series: the order-p coefficient of index j,
/// expanded in the Macdonald basis, solves to exactly this bracket.
fn c1_bracket(qj: &Scalar, params: &Params) -> Scalar {
    let q = params.q_pow(1);
    let t = params.t_pow(1);
    let one = params.one();
    let q2j = qj.mul(qj);
    let t_inv = t.inv().unwrap();
    let qjm1 = qj.mul(&q.inv().unwrap());
    q2j.mul(&t)
        .mul_int(2)
        .sub(&qjm1.mul(&one.sub(&q).pow(2).unwrap()))
        .sub(&qjm1.mul(&q.add(&one)).mul(&t.add(&q.mul(&t_inv))))
        .add(&t_inv.mul_int(2))
}

/// Order-p expansion coefficients of Prop-5 type: the closed forms
/// c_0, c_1, c_2 as functions of q^j (passed as a scalar so the same
/// formulas serve both concrete indices and symbolic q^j).
pub fn c_coeffs(qj: &Scalar, params: &Params) -> [Scalar; 3] {
    let p = params;
    let q = p.q_pow(1);
    let t = p.t_pow(1);
    let s = p.s_pow(1);
    let one = p.one();

    let c0 = {
        let num = q
            .mul(&one.sub(&t))
            .mul(&one.sub(&qj.mul(&s).mul(&t.pow(2).unwrap())));
        let den = t
            .mul(&one.sub(&q))
            .mul(&one.sub(&qj.mul(&q).mul(&s).mul(&t)));
        num.div(&den).expect("structural denominator")
    };

    let bracket = c1_bracket(qj, params);

    let c1 = {
        let num = q.sub(&s.mul(&t)).mul(&one.sub(&t)).mul(&bracket);
        let den = one
            .sub(&s)
            .mul(&one.sub(&qj.mul(&q).mul(&t)))
            .mul(&one.sub(&qj.mul(&q.inv().unwrap()).mul(&t)))
            .mul(&one.sub(&q));
        num.div(&den).expect("structural denominator")
    };

    let c2 = {
        let qjm1 = qj.mul(&q.inv().unwrap());
        let qjm2 = qjm1.mul(&q.inv().unwrap());
        let t2 = t.pow(2).unwrap();
        let num = one
            .sub(&t)
            .mul(&one.sub(&qjm2.mul(&t2)))
            .mul(&one.sub(qj))
            .mul(&one.sub(&qjm1))
            .mul(&s.sub(qj))
            .mul(&one.sub(&qjm1.mul(&t2)));
        let den = one
            .sub(&q)
            .mul(&one.sub(&qjm1.mul(&t)).pow(2).unwrap())
            .mul(&one.sub(&qjm2.mul(&t)))
            .mul(&s.sub(&qjm1.mul(&t)))
            .mul(&one.sub(&qj.mul(&t)));
        num.div(&den).expect("structural denominator")
    };

    [c0, c1, c2]
}

/// Order-p expansion coefficients of the re-expanded function (the s -> p/s
/// limit of the c's): u_0, u_1, u_2.
pub fn u_coeffs(qj: &Scalar, params: &Params) -> [Scalar; 3] {
    let p = params;
    let q = p.q_pow(1);
    let t = p.t_pow(1);
    let one = p.one();

    let u0 = q
        .mul(&one.sub(&t))
        .div(&t.mul(&one.sub(&q)))
        .expect("structural denominator");

    let bracket = c1_bracket(qj, params);

    // u_1 is the s -> p/s, p -> 0 limit of c_1: the (q - st)/(1 - s)
    // prefactor degenerates to q and the structural denominator is
    // unchanged.
    let u1 = {
        let num = q.mul(&one.sub(&t)).mul(&bracket);
        let den = one
            .sub(&qj.mul(&q).mul(&t))
            .mul(&one.sub(&qj.mul(&q.inv().unwrap()).mul(&t)))
            .mul(&one.sub(&q));
        num.div(&den).expect("structural denominator")
    };

    let u2 = {
        let qjm1 = qj.mul(&q.inv().unwrap());
        let qjm2 = qjm1.mul(&q.inv().unwrap());
        let t2 = t.pow(2).unwrap();
        let num = q
            .mul(&one.sub(&t))
            .mul(&one.sub(qj))
            .mul(&one.sub(&qjm1))
            .mul(&one.sub(&qjm2.mul(&t2)))
            .mul(&one.sub(&qjm1.mul(&t2)));
        let den = t
            .mul(&one.sub(&q))
            .mul(&one.sub(&qj.mul(&t)))
            .mul(&one.sub(&qjm1.mul(&t)).pow(2).unwrap())
            .mul(&one.sub(&qjm2.mul(&t)));
        num.div(&den).expect("structural denominator")
    };

    [u0, u1, u2]
}

/// The closed forms for concrete index j.
pub fn prop5_coeffs(j: usize, params: &Params) -> [Scalar; 3] {
    c_coeffs(&params.q_pow(j as i64), params)
}

pub fn lemma8_coeffs(j: usize, params: &Params) -> [Scalar; 3] {
    u_coeffs(&params.q_pow(j as i64), params)
}

/// The Macdonald-basis combination c_0 (X1X2)^-1 P_{j+2} + c_1 P_j
/// + c_2 X1X2 P_{j-2}; terms with negative index are absent.
pub fn order_p_combination(j: usize, coeffs: &[Scalar; 3], params: &Params) -> LaurentPoly2 {
    let mut out = macdonald_a1(j + 2, params)
        .mul_monomial(-1, -1, &Scalar::one())
        .scale(&coeffs[0]);
    out = out.add(&macdonald_a1(j, params).scale(&coeffs[1]));
    if j >= 2 {
        out = out.add(
            &macdonald_a1(j - 2, params)
                .mul_monomial(1, 1, &Scalar::one())
                .scale(&coeffs[2]),
        );
    }
    out
}

#[derive(Serialize, Deserialize)]
struct CacheTerm {
    e1: i64,
    e2: i64,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct CacheCoeff {
    pdeg: usize,
    terms: Vec<CacheTerm>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema: u32,
    j: usize,
    order: usize,
    tower: String,
    s_mode: SMode,
    coeffs: Vec<CacheCoeff>,
}

const CACHE_SCHEMA: u32 = 1;

pub fn series_to_json(series: &ShiraishiSeries, params: &Params) -> serde_json::Value {
    let coeffs: Vec<CacheCoeff> = (0..=series.order())
        .map(|d| CacheCoeff {
            pdeg: d,
            terms: series
                .coeff(d)
                .terms()
                .map(|((e1, e2), v)| CacheTerm {
                    e1: *e1,
                    e2: *e2,
                    value: crate::exact::scalar_to_string(v, params),
                })
                .collect(),
        })
        .collect();
    serde_json::to_value(CacheFile {
        schema: CACHE_SCHEMA,
        j: series.j,
        order: series.order(),
        tower: params.fingerprint(),
        s_mode: series.s_mode,
        coeffs,
    })
    .expect("serializable")
}

pub fn series_from_json(value: &serde_json::Value, params: &Params) -> Result<ShiraishiSeries> {
    let file: CacheFile = serde_json::from_value(value.clone())
        .map_err(|e| Error::Cache(format!("malformed cache file: {e}")))?;
    if file.schema != CACHE_SCHEMA {
        return Err(Error::Cache(format!(
            "unsupported cache schema {}",
            file.schema
        )));
    }
    if file.tower != params.fingerprint() {
        return Err(Error::Cache(format!(
            "tower mismatch: cache has {}, current is {}",
            file.tower,
            params.fingerprint()
        )));
    }
    let mut coeffs = vec![LaurentPoly2::zero(); file.order + 1];
    for c in &file.coeffs {
        if c.pdeg > file.order {
            return Err(Error::Cache(format!("pdeg {} beyond order", c.pdeg)));
        }
        for t in &c.terms {
            coeffs[c.pdeg].add_term(t.e1, t.e2, crate::exact::parse_scalar(&t.value, params)?);
        }
    }
    Ok(ShiraishiSeries {
        j: file.j,
        s_mode: file.s_mode,
        series: PSeries::from_coeffs(coeffs),
    })
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for b in bytes {
        hash ^= *b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

pub fn cache_file_name(j: usize, order: usize, params: &Params) -> String {
    format!(
        "shiraishi_j{j}_n{order}_{:016x}.json",
        fnv1a64(params.fingerprint().as_bytes())
    )
}

/// Load from the cache directory or compute and store. Cache hits must be
/// bit-identical to recomputation, which holds because the canonical scalar
/// serialization is deterministic.
pub fn load_or_compute(
    j: usize,
    order: usize,
    params: &Params,
    cache_dir: Option<&Path>,
) -> Result<ShiraishiSeries> {
    let path = cache_dir.map(|d| d.join(cache_file_name(j, order, params)));
    if let Some(p) = &path {
        if p.exists() {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Cache(format!("{}: {e}", p.display())))?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::Cache(format!("{}: {e}", p.display())))?;
            return series_from_json(&value, params);
        }
    }
    let series = shiraishi_series(j, order, params)?;
    if let Some(p) = &path {
        if let Some(parent) = p.parent() {
            std::fs::create_dir_all(parent)
                .map_err(|e| Error::Cache(format!("{}: {e}", parent.display())))?;
        }
        let text = serde_json::to_string_pretty(&series_to_json(&series, params))
            .expect("serializable");
        std::fs::write(p, text).map_err(|e| Error::Cache(format!("{}: {e}", p.display())))?;
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macdonald::principal_special;

    #[test]
    fn prop4_reduction_to_macdonald() {
        let p = Params::generic_t_s();
        for j in 0..=5usize {
            let sh = shiraishi_series(j, 0, &p).unwrap();
            assert_eq!(sh.coeff(0), &macdonald_a1(j, &p), "j={j}");
        }
    }

    #[test]
    fn explicit_index0_series() {
        // The p^1 coefficient of the index-0 function:
        //   q(1-t)(1-st^2)/(t(1-qst)(1-q)) (X1/X2 + X2/X1)
        // + (1-t)(q-st^2)/(t(1-st)(1-q))
        // + (1-st^2)(1-qs)(1-t)(q-st)/(t(1-qst)(1-st)(1-q)(1-s)).
        let p = Params::generic_t_s();
        let q = p.q_pow(1);
        let t = p.t_pow(1);
        let s = p.s_pow(1);
        let one = p.one();
        let t2 = t.pow(2).unwrap();

        let ring = q
            .mul(&one.sub(&t))
            .mul(&one.sub(&s.mul(&t2)))
            .div(&t.mul(&one.sub(&q.mul(&s).mul(&t))).mul(&one.sub(&q)))
            .unwrap();
        let const_a = one
            .sub(&t)
            .mul(&q.sub(&s.mul(&t2)))
            .div(&t.mul(&one.sub(&s.mul(&t))).mul(&one.sub(&q)))
            .unwrap();
        let const_b = {
            let num = one
                .sub(&s.mul(&t2))
                .mul(&one.sub(&q.mul(&s)))
                .mul(&one.sub(&t))
                .mul(&q.sub(&s.mul(&t)));
            let den = t
                .mul(&one.sub(&q.mul(&s).mul(&t)))
                .mul(&one.sub(&s.mul(&t)))
                .mul(&one.sub(&q))
                .mul(&one.sub(&s));
            num.div(&den).unwrap()
        };

        let mut expect = LaurentPoly2::zero();
        expect.add_term(1, -1, ring.clone());
        expect.add_term(-1, 1, ring);
        expect.add_term(0, 0, const_a.add(&const_b));

        let sh = shiraishi_series(0, 1, &p).unwrap();
        assert_eq!(sh.coeff(1), &expect);
    }

    #[test]
    fn prop5_symbolic_low_index() {
        let p = Params::generic_t_s();
        for j in 0..=2usize {
            let sh = shiraishi_series(j, 1, &p).unwrap();
            let expect = order_p_combination(j, &prop5_coeffs(j, &p), &p);
            assert_eq!(sh.coeff(1), &expect, "Prop 5 at j={j}");
        }
    }

    #[test]
    fn lemma8_from_c_by_substitution() {
        // u_k(j) is the constant term of c_k(j) under s -> p/s: substitute
        // and Taylor-expand at p = 0 via the even-fraction lift.
        let p = Params::generic_t_s();
        let s_level = p.s_level().unwrap();
        for j in 0..=3usize {
            let cs = prop5_coeffs(j, &p);
            let us = lemma8_coeffs(j, &p);
            for (k, (c, u)) in cs.iter().zip(us.iter()).enumerate() {
                let (a, b) = even_coeff_vectors(c, s_level).unwrap();
                let big_d = a.len().max(b.len()) - 1;
                let lift = |v: &[Scalar]| -> Vec<Scalar> {
                    v.iter()
                        .enumerate()
                        .map(|(kk, cc)| cc.mul(&p.s_pow((big_d - kk) as i64)))
                        .collect()
                };
                let taylor = taylor_expand(&lift(&a), &lift(&b), 0).unwrap();
                assert_eq!(&taylor[0], u, "u_{k} at j={j}");
            }
        }
    }

    #[test]
    fn u0_is_index_independent() {
        let p = Params::generic_t_s();
        let u0_0 = lemma8_coeffs(0, &p)[0].clone();
        for j in 1..=4usize {
            assert_eq!(lemma8_coeffs(j, &p)[0], u0_0);
        }
        assert!(!u0_0.uses_var(p.s_level().unwrap()));
    }

    #[test]
    fn substitute_s_zero_on_index0() {
        // Setting s = 0 in the order-p coefficient of the index-0 series
        // gives q(1-t)/(t(1-q)) (X1/X2 + X2/X1 + 1) + q(1-t)/(t(1-q)).
        let p = Params::generic_t_s();
        let sh = shiraishi_series(0, 1, &p).unwrap();
        let sub = substitute_s(&sh, &Scalar::zero(), &p).unwrap();
        let q = p.q_pow(1);
        let t = p.t_pow(1);
        let one = p.one();
        let base = q
            .mul(&one.sub(&t))
            .div(&t.mul(&one.sub(&q)))
            .unwrap();
        let mut expect = LaurentPoly2::zero();
        expect.add_term(1, -1, base.clone());
        expect.add_term(-1, 1, base.clone());
        expect.add_term(0, 0, base.mul_int(2));
        assert_eq!(sub.coeff(1), &expect);
        assert_eq!(sub.s_mode, SMode::Substituted);
    }

    #[test]
    fn substitute_s_is_identity_on_s_free() {
        let p = Params::generic_t_s();
        let sh = shiraishi_series(2, 0, &p).unwrap();
        let sub = substitute_s(&sh, &p.int(7), &p).unwrap();
        assert_eq!(sub.coeff(0), sh.coeff(0));
    }

    #[test]
    fn substitute_s_one_hits_pole_at_index0() {
        // The order-p constant term has a bare (1-s) denominator factor.
        let p = Params::generic_t_s();
        let sh = shiraishi_series(0, 1, &p).unwrap();
        assert!(matches!(
            substitute_s(&sh, &Scalar::one(), &p),
            Err(Error::EvaluationPole(_))
        ));
    }

    #[test]
    fn scale_param_composition() {
        let p = Params::generic_t_s();
        let sh = shiraishi_series(1, 1, &p).unwrap();
        let id = scale_elliptic_param(&sh, &Scalar::one());
        assert_eq!(id.series, sh.series);
        let s_inv = p.s_pow(-1);
        let once = scale_elliptic_param(&sh, &s_inv);
        assert_eq!(once.coeff(1), &sh.coeff(1).scale(&s_inv));
        let twice = scale_elliptic_param(&once, &s_inv);
        let direct = scale_elliptic_param(&sh, &p.s_pow(-2));
        assert_eq!(twice.series, direct.series);
    }

    #[test]
    fn reexpand_order_zero_is_macdonald() {
        let p = Params::generic_t_s();
        let sh = shiraishi_series(1, 1, &p).unwrap();
        let re = reexpand_p_over_s(&sh, 0, 1, &p).unwrap();
        assert_eq!(re.coeff(0), &macdonald_a1(1, &p));
    }

    #[test]
    fn reexpand_matches_u_combination_low_index() {
        let p = Params::generic_t_s();
        for j in 0..=1usize {
            let sh = shiraishi_series(j, 3, &p).unwrap();
            let re = reexpand_p_over_s_stable(&sh, 1, 1, &p).unwrap();
            let expect = order_p_combination(j, &lemma8_coeffs(j, &p), &p);
            assert_eq!(re.coeff(1), &expect, "Lemma 8 at j={j}");
            assert_eq!(re.coeff(0), &macdonald_a1(j, &p));
        }
    }

    #[test]
    fn evaluate_at_special_point() {
        let p = Params::beta_fixed_s(2);
        let sh = shiraishi_series(1, 0, &p).unwrap();
        let vals = evaluate_series_at(&sh, &p.t_half(1), &p.t_half(-1)).unwrap();
        assert_eq!(vals.coeff(0), &principal_special(1, &p));
    }

    #[test]
    fn cache_roundtrip_is_bit_identical() {
        let p = Params::beta_fixed_s(1);
        let dir = tempfile::tempdir().unwrap();
        let first = load_or_compute(1, 1, &p, Some(dir.path())).unwrap();
        let path = dir.path().join(cache_file_name(1, 1, &p));
        assert!(path.exists());
        let bytes_before = std::fs::read(&path).unwrap();
        let second = load_or_compute(1, 1, &p, Some(dir.path())).unwrap();
        assert_eq!(first, second);
        // Re-serializing the loaded series reproduces the file bit for bit.
        let re = serde_json::to_string_pretty(&series_to_json(&second, &p)).unwrap();
        assert_eq!(re.as_bytes(), &bytes_before[..]);
    }

    #[test]
    fn corrupted_cache_is_reported() {
        let p = Params::beta_fixed_s(1);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(cache_file_name(0, 0, &p));
        std::fs::write(&path, "{not json").unwrap();
        assert!(matches!(
            load_or_compute(0, 0, &p, Some(dir.path())),
            Err(Error::Cache(_))
        ));
    }
}
// temporary debug: print true expansion coefficients
#[test]
fn dbg_extract_true_c_coeffs() {
    use crate::exact::tower::Params;
    use crate::exact::scalar_to_string;
    let p = Params::generic_t_s();
    for j in 0..=2usize {
        let sh = crate::shiraishi::shiraishi_series(j, 1, &p).unwrap();
        let exp = crate::macdonald::macdonald_expand(sh.coeff(1), 0, j as i64 + 2, &p).unwrap();
        for (k, c) in &exp {
            println!("j={j} index={k}: {}", scalar_to_string(c, &p));
        }
        let cs = crate::shiraishi::prop5_coeffs(j, &p);
        for (k, c) in cs.iter().enumerate() {
            println!("j={j} paper c{k}: {}", scalar_to_string(c, &p));
        }
        println!("---");
    }
}

#[test]
fn dbg_solve_c1_bracket() {
    use crate::exact::tower::Params;
    use crate::exact::scalar_to_string;
    let p = Params::generic_t_s();
    let q = p.q_pow(1);
    let t = p.t_pow(1);
    let s = p.s_pow(1);
    let one = p.one();
    for j in 0..=3usize {
        let jj = j as i64;
        let sh = crate::shiraishi::shiraishi_series(j, 1, &p).unwrap();
        let exp = crate::macdonald::macdonald_expand(sh.coeff(1), 0, jj + 2, &p).unwrap();
        let true_c1 = exp.get(&jj).cloned().unwrap_or_else(crate::exact::Scalar::zero);
        // R = true_c1 * (1-s)(1-q^{j+1} t)(1-q^{j-1} t)(1-q) / ((q - s t)(1 - t))
        let den_struct = one
            .sub(&s)
            .mul(&one.sub(&p.q_pow(jj + 1).mul(&t)))
            .mul(&one.sub(&p.q_pow(jj - 1).mul(&t)))
            .mul(&one.sub(&q));
        let pref = q.sub(&s.mul(&t)).mul(&one.sub(&t));
        let r = true_c1.mul(&den_struct).div(&pref).unwrap();
        println!("j={j} solved bracket: {}", scalar_to_string(&r, &p));
        // printed bracket for comparison
        let q2j = p.q_pow(2 * jj);
        let t_inv = t.inv().unwrap();
        let bracket = q2j.mul(&t).mul_int(2)
            .sub(&p.q_pow(jj - 1).mul(&one.sub(&q).pow(2).unwrap()))
            .sub(&p.q_pow(jj).mul(&q.add(&one)).mul(&t.add(&t_inv)))
            .add(&t_inv.mul_int(2));
        println!("j={j} paper bracket:  {}", scalar_to_string(&bracket, &p));
        println!("j={j} paper/t:        {}", scalar_to_string(&bracket.mul(&t_inv), &p));
    }
}
