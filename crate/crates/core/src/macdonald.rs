//! Type-A1 Macdonald polynomials, the trigonometric Ruijsenaars Hamiltonian,
//! special-point evaluations, expansion of symmetric Laurent polynomials in
//! the Macdonald basis, and the operator algebra O_A, O_B, O_C acting on
//! symmetric Laurent polynomials of the special point z.

use crate::error::{Error, Result};
use crate::exact::tower::Params;
use crate::exact::Scalar;
use crate::laurent::{Laurent1, LaurentPoly2};
use std::collections::BTreeMap;

/// The coefficient of (X2/X1)^n in P_j / X1^j.
pub fn macdonald_coeff(j: i64, n: i64, params: &Params) -> Scalar {
    let mut acc = Scalar::one();
    for i in 0..n {
        let num = params
            .one()
            .sub(&params.q_pow(j - i))
            .mul(&params.one().sub(&params.t_pow(1).mul(&params.q_pow(i))));
        let den = params
            .one()
            .sub(&params.t_pow(1).mul(&params.q_pow(j - i - 1)))
            .mul(&params.one().sub(&params.q_pow(i + 1)));
        acc = acc.mul(&num.div(&den).expect("structural denominator"));
    }
    acc
}

/// Macdonald polynomial of type A1 with index j: homogeneous of degree j,
/// symmetric under X1 <-> X2, with leading term X1^j.
pub fn macdonald_a1(j: usize, params: &Params) -> LaurentPoly2 {
    let j = j as i64;
    let mut out = LaurentPoly2::zero();
    for n in 0..=j {
        out.add_term(j - n, n, macdonald_coeff(j, n, params));
    }
    out
}

/// First trigonometric Ruijsenaars Hamiltonian:
/// ((X2 - t X1) f(q X1, X2) - (X1 - t X2) f(X1, q X2)) / (X2 - X1),
/// computed by exact division. A nonzero remainder (asymmetric input)
/// is an error.
pub fn trig_hamiltonian_apply(f: &LaurentPoly2, params: &Params) -> Result<LaurentPoly2> {
    let q = params.q_pow(1);
    let one = Scalar::one();
    let t = params.t_pow(1);
    let f_q1 = f.dilate(&q, &one)?;
    let f_q2 = f.dilate(&one, &q)?;
    // (X2 - t X1) f(qX1, X2)
    let mut a = f_q1.mul_monomial(0, 1, &one);
    a = a.add(&f_q1.mul_monomial(1, 0, &t.neg()));
    // (X1 - t X2) f(X1, qX2)
    let mut b = f_q2.mul_monomial(1, 0, &one);
    b = b.add(&f_q2.mul_monomial(0, 1, &t.neg()));
    a.sub(&b).div_exact_x2_minus_x1()
}

/// Second Hamiltonian: f(q X1, q X2); for homogeneous f of degree j this is
/// q^j f.
pub fn trig_hamiltonian2_apply(f: &LaurentPoly2, params: &Params) -> Result<LaurentPoly2> {
    let q = params.q_pow(1);
    f.dilate(&q, &q)
}

/// Principal specialization: P_i(t^(1/2), t^(-1/2)) via the product formula
/// t^(-i/2) (1 - t q^i)/(1 - t) prod_{m=0}^{i-1} (1 - t^2 q^m)/(1 - t q^(m+1)).
pub fn principal_special(i: usize, params: &Params) -> Scalar {
    let i = i as i64;
    let t = params.t_pow(1);
    let mut acc = params
        .t_half(-i)
        .mul(&params.one().sub(&t.mul(&params.q_pow(i))))
        .div(&params.one().sub(&t))
        .expect("structural denominator");
    for m in 0..i {
        let num = params.one().sub(&params.t_pow(2).mul(&params.q_pow(m)));
        let den = params.one().sub(&t.mul(&params.q_pow(m + 1)));
        acc = acc.mul(&num.div(&den).expect("structural denominator"));
    }
    acc
}

/// Expand a homogeneous symmetric Laurent polynomial in the Macdonald basis:
/// f = sum_k a_k (X1 X2)^((deg - k)/2) P_k with j_min <= k <= j_max.
/// Works by repeatedly eliminating the leading (highest X1-power) term;
/// errors with `NotInSpan` if a residual survives.
pub fn macdonald_expand(
    f: &LaurentPoly2,
    j_min: i64,
    j_max: i64,
    params: &Params,
) -> Result<BTreeMap<i64, Scalar>> {
    let mut out = BTreeMap::new();
    if f.is_zero() {
        return Ok(out);
    }
    let degree = {
        let (&(e1, e2), _) = f.terms().next().expect("nonzero");
        e1 + e2
    };
    if !f.is_homogeneous(degree) {
        return Err(Error::NotInSpan("input not homogeneous".into()));
    }
    let mut rest = f.clone();
    while !rest.is_zero() {
        let e1 = rest.max_e1().unwrap();
        let k = 2 * e1 - degree;
        if k < j_min || k > j_max || k < 0 || (degree - k) % 2 != 0 {
            return Err(Error::NotInSpan(format!(
                "leading X1-power {e1} needs index {k} outside [{j_min}, {j_max}]"
            )));
        }
        let c = rest.coeff(e1, degree - e1);
        let shift = (degree - k) / 2;
        let basis = macdonald_a1(k as usize, params).mul_monomial(shift, shift, &Scalar::one());
        rest = rest.sub(&basis.scale(&c));
        out.insert(k, c);
    }
    Ok(out)
}

/// O_A f = ((1 - t z^2) f(q^(1/2) z) - z^2 (1 - t z^-2) f(q^(-1/2) z)) / (1 - z^2)
/// on Laurent polynomials of z, by exact division.
pub fn o_a_apply(f: &Laurent1, params: &Params) -> Result<Laurent1> {
    let t = params.t_pow(1);
    let f_up = f.dilate(&params.q_half(1))?;
    let f_dn = f.dilate(&params.q_half(-1))?;
    // (1 - t z^2) f_up
    let a = f_up.add(&f_up.shift(2).scale(&t.neg()));
    // z^2 (1 - t z^-2) f_dn = (z^2 - t) f_dn
    let b = f_dn.shift(2).add(&f_dn.scale(&t.neg()));
    let num = a.sub(&b);
    let one_minus_z2 = Laurent1::from_terms([(0, Scalar::one()), (2, Scalar::from_int(-1))]);
    num.div_exact(&one_minus_z2)
        .map_err(|_| Error::NonExactDivision("O_A input not symmetric".into()))
}

/// O_B f = (z + 1/z) f.
pub fn o_b_apply(f: &Laurent1) -> Laurent1 {
    f.shift(1).add(&f.shift(-1))
}

/// O_C = O_A O_B - q^(-1/2) O_B O_A.
pub fn o_c_apply(f: &Laurent1, params: &Params) -> Result<Laurent1> {
    let ab = o_a_apply(&o_b_apply(f), params)?;
    let ba = o_b_apply(&o_a_apply(f, params)?);
    Ok(ab.sub(&ba.scale(&params.q_half(-1))))
}

/// P_j(z, z^-1) as a Laurent polynomial of z.
pub fn macdonald_z(j: usize, params: &Params) -> Laurent1 {
    let j = j as i64;
    let mut out = Laurent1::zero();
    for n in 0..=j {
        out.add_term(j - 2 * n, macdonald_coeff(j, n, params));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_low_indices() {
        let p = Params::generic_t();
        let q = p.q_pow(1);
        let t = p.t_pow(1);
        // P_0 = 1, P_1 = X1 + X2.
        assert_eq!(macdonald_a1(0, &p), LaurentPoly2::one());
        let mut p1 = LaurentPoly2::zero();
        p1.add_term(1, 0, Scalar::one());
        p1.add_term(0, 1, Scalar::one());
        assert_eq!(macdonald_a1(1, &p), p1);
        // P_2 middle coefficient (1-t)(1+q)/(1-qt).
        let c2 = p
            .one()
            .sub(&t)
            .mul(&p.one().add(&q))
            .div(&p.one().sub(&q.mul(&t)))
            .unwrap();
        assert_eq!(macdonald_a1(2, &p).coeff(1, 1), c2);
        // P_3 middle coefficients (1-t)(1+q+q^2)/(1-q^2 t).
        let c3 = p
            .one()
            .sub(&t)
            .mul(&p.one().add(&q).add(&p.q_pow(2)))
            .div(&p.one().sub(&p.q_pow(2).mul(&t)))
            .unwrap();
        let m3 = macdonald_a1(3, &p);
        assert_eq!(m3.coeff(2, 1), c3);
        assert_eq!(m3.coeff(1, 2), c3);
    }

    #[test]
    fn palindromic_coefficients() {
        let p = Params::generic_t();
        for j in 0..=8usize {
            let m = macdonald_a1(j, &p);
            assert!(m.is_symmetric(), "j={j}");
            assert!(m.is_homogeneous(j as i64));
        }
    }

    #[test]
    fn hamiltonian_eigenrelations() {
        let p = Params::generic_t();
        for j in 0..=6usize {
            let m = macdonald_a1(j, &p);
            let h1 = trig_hamiltonian_apply(&m, &p).unwrap();
            let eig = p
                .one()
                .add(&p.t_pow(1).mul(&p.q_pow(j as i64)));
            assert_eq!(h1, m.scale(&eig), "H1 eigenrelation j={j}");
            let h2 = trig_hamiltonian2_apply(&m, &p).unwrap();
            assert_eq!(h2, m.scale(&p.q_pow(j as i64)), "H2 eigenrelation j={j}");
        }
    }

    #[test]
    fn hamiltonian_rejects_asymmetric_input() {
        let p = Params::generic_t();
        let mut f = LaurentPoly2::zero();
        f.add_term(2, 0, Scalar::one());
        assert!(matches!(
            trig_hamiltonian_apply(&f, &p),
            Err(Error::NonExactDivision(_))
        ));
    }

    #[test]
    fn principal_specialization_matches_evaluation() {
        for beta in 1..=3u32 {
            let p = Params::beta_fixed(beta);
            for i in 0..=6usize {
                let direct = macdonald_a1(i, &p)
                    .eval(&p.t_half(1), &p.t_half(-1))
                    .unwrap();
                assert_eq!(principal_special(i, &p), direct, "beta={beta} i={i}");
            }
        }
    }

    #[test]
    fn principal_ratio_formula() {
        // P_{i+2}/P_i at the special point.
        let p = Params::beta_fixed(2);
        let t = p.t_pow(1);
        for i in 0..=4usize {
            let lhs = principal_special(i + 2, &p)
                .div(&principal_special(i, &p))
                .unwrap();
            let ii = i as i64;
            let num = p
                .one()
                .sub(&p.t_pow(2).mul(&p.q_pow(ii)))
                .mul(&p.one().sub(&p.t_pow(2).mul(&p.q_pow(ii + 1))));
            let den = t
                .mul(&p.one().sub(&t.mul(&p.q_pow(ii))))
                .mul(&p.one().sub(&t.mul(&p.q_pow(ii + 1))));
            assert_eq!(lhs, num.div(&den).unwrap(), "i={i}");
        }
    }

    #[test]
    fn expand_recovers_basis_elements() {
        let p = Params::generic_t();
        let m4 = macdonald_a1(4, &p);
        let e = macdonald_expand(&m4, 0, 6, &p).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[&4], Scalar::one());
        // X1X2 * P_2 expands as {2: 1} at degree 4.
        let shifted = macdonald_a1(2, &p).mul_monomial(1, 1, &Scalar::one());
        let e2 = macdonald_expand(&shifted, 0, 6, &p).unwrap();
        assert_eq!(e2.len(), 1);
        assert_eq!(e2[&2], Scalar::one());
    }

    #[test]
    fn expand_rejects_off_span() {
        let p = Params::generic_t();
        // X1^3 alone is not symmetric, so elimination leaves a residual.
        let mut f = LaurentPoly2::zero();
        f.add_term(3, 0, Scalar::one());
        assert!(macdonald_expand(&f, 0, 3, &p).is_err());
    }

    #[test]
    fn o_operators_low_cases() {
        let p = Params::generic_t();
        let t = p.t_pow(1);
        // O_A(1) = 1 + t.
        let one = Laurent1::one();
        assert_eq!(
            o_a_apply(&one, &p).unwrap(),
            Laurent1::term(0, p.one().add(&t))
        );
        // O_B(1) = z + 1/z.
        assert_eq!(
            o_b_apply(&one),
            Laurent1::from_terms([(1, Scalar::one()), (-1, Scalar::one())])
        );
    }

    #[test]
    fn o_a_eigenvalue_is_scalar() {
        // O_A P_j(z, z^-1) = E_j P_j with E_j free of z; E_j is determined
        // from the top term and asserted constant across the polynomial.
        let p = Params::generic_t();
        for j in 0..=6usize {
            let f = macdonald_z(j, &p);
            let g = o_a_apply(&f, &p).unwrap();
            let top = f.max_exp().unwrap();
            let e_j = g.coeff(top).div(&f.coeff(top)).unwrap();
            assert_eq!(g, f.scale(&e_j), "O_A eigenrelation j={j}");
        }
    }

    #[test]
    fn o_c_pieri_rule() {
        // O_C P_j = q^((j-1)/2) t (q-1) P_{j+1}
        //         - q^(-(j+1)/2) (1-q)(1-q^j)(1-t^2 q^(j-1)) /
        //           ((1-t q^j)(1-t q^(j-1))) P_{j-1}, for j <= 6.
        let p = Params::generic_t();
        let t = p.t_pow(1);
        let q = p.q_pow(1);
        for j in 0..=6usize {
            let jj = j as i64;
            let lhs = o_c_apply(&macdonald_z(j, &p), &p).unwrap();
            let up = macdonald_z(j + 1, &p).scale(
                &p.q_half(jj - 1)
                    .mul(&t)
                    .mul(&q.sub(&p.one())),
            );
            let mut rhs = up;
            if j >= 1 {
                let num = p
                    .q_half(-(jj + 1))
                    .mul(&p.one().sub(&q))
                    .mul(&p.one().sub(&p.q_pow(jj)))
                    .mul(&p.one().sub(&p.t_pow(2).mul(&p.q_pow(jj - 1))));
                let den = p
                    .one()
                    .sub(&t.mul(&p.q_pow(jj)))
                    .mul(&p.one().sub(&t.mul(&p.q_pow(jj - 1))));
                let coeff = num.div(&den).unwrap();
                rhs = rhs.sub(&macdonald_z(j - 1, &p).scale(&coeff));
            }
            assert_eq!(lhs, rhs, "O_C Pieri j={j}");
        }
    }
}
