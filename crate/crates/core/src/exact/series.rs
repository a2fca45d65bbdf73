//! Truncated formal power series in the elliptic parameter p.
//!
//! A `PSeries` of order n carries coefficients c_0..c_n and is understood
//! modulo p^(n+1). Arithmetic never reads beyond the common truncation
//! order.

use super::Scalar;
use crate::error::{Error, Result};

/// Coefficient ring interface for truncated series arithmetic.
pub trait CoeffRing: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
}

impl CoeffRing for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Scalar::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Scalar::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Scalar::mul(self, other)
    }
    fn scale(&self, s: &Scalar) -> Self {
        Scalar::mul(self, s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PSeries<C: CoeffRing> {
    coeffs: Vec<C>,
}

impl<C: CoeffRing> PSeries<C> {
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the p^0 term");
        PSeries { coeffs }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        coeffs[0] = c;
        PSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PSeries {
            coeffs: vec![C::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> &C {
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff_mut(&mut self, d: usize) -> &mut C {
        &mut self.coeffs[d]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        PSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|d| self.coeffs[d].add(&other.coeffs[d]))
            .collect();
        PSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|d| self.coeffs[d].sub(&other.coeffs[d]))
            .collect();
        PSeries { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (k, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + k] = coeffs[i + k].add(&a.mul(b));
            }
        }
        PSeries { coeffs }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        PSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// Multiply the p^d coefficient by lambda^d (the substitution p -> lambda*p).
    pub fn scale_param(&self, lambda: &Scalar) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut power = Scalar::one();
        for (d, c) in self.coeffs.iter().enumerate() {
            if d > 0 {
                power = power.mul(lambda);
            }
            coeffs.push(c.scale(&power));
        }
        Ok(PSeries { coeffs })
    }

    pub fn map<D: CoeffRing>(&self, f: impl Fn(&C) -> D) -> PSeries<D> {
        PSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<D: CoeffRing>(&self, f: impl Fn(&C) -> Result<D>) -> Result<PSeries<D>> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(f(c)?);
        }
        Ok(PSeries { coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl PSeries<Scalar> {
    /// Series division; requires the divisor's p^0 term to be nonzero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.coeffs[0].is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.order().min(other.order());
        let b0_inv = other.coeffs[0].inv()?;
        let mut out: Vec<Scalar> = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let mut acc = self.coeffs[d].clone();
            for m in 0..d {
                acc = acc.sub(&out[m].mul(&other.coeffs[d - m]));
            }
            out.push(acc.mul(&b0_inv));
        }
        Ok(PSeries { coeffs: out })
    }
}

/// Taylor-expand the rational function num(p)/den(p) (coefficient lists in
/// ascending powers of the auxiliary variable p) to order n by exact long
/// division. Errors with `PoleAtOrigin` when den(0) = 0.
pub fn taylor_expand(num: &[Scalar], den: &[Scalar], n: usize) -> Result<Vec<Scalar>> {
    let b0 = den.first().cloned().unwrap_or_else(Scalar::zero);
    if b0.is_zero() {
        return Err(Error::PoleAtOrigin(String::new()));
    }
    let b0_inv = b0.inv()?;
    let mut out: Vec<Scalar> = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let mut acc = num.get(d).cloned().unwrap_or_else(Scalar::zero);
        for m in 0..d {
            if let Some(b) = den.get(d - m) {
                acc = acc.sub(&out[m].mul(b));
            }
        }
        out.push(acc.mul(&b0_inv));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::tower::Params;

    #[test]
    fn geometric_series() {
        // 1/(1-p), n=2 -> [1, 1, 1]
        let num = vec![Scalar::one()];
        let den = vec![Scalar::one(), Scalar::from_int(-1)];
        let c = taylor_expand(&num, &den, 2).unwrap();
        assert_eq!(c, vec![Scalar::one(), Scalar::one(), Scalar::one()]);
    }

    #[test]
    fn pole_at_origin() {
        // 1/p
        let num = vec![Scalar::one()];
        let den = vec![Scalar::zero(), Scalar::one()];
        assert!(matches!(
            taylor_expand(&num, &den, 1),
            Err(Error::PoleAtOrigin(_))
        ));
    }

    #[test]
    fn long_division_example() {
        // (q - (t/s) p)/(1 - p/s), n=1 -> [q, (q-t)/s]
        let p = Params::generic_t_s();
        let q = p.q_pow(1);
        let t = p.t_pow(1);
        let s_inv = p.s_pow(-1);
        let num = vec![q.clone(), t.mul(&s_inv).neg()];
        let den = vec![Scalar::one(), s_inv.clone().neg()];
        let c = taylor_expand(&num, &den, 1).unwrap();
        assert_eq!(c[0], q);
        assert_eq!(c[1], q.sub(&t).mul(&s_inv));
    }

    #[test]
    fn taylor_recomposition_matches() {
        // Recompose sum c_d p^d and compare against num/den mod p^(n+1)
        // by exact polynomial subtraction: num - den * (sum) has valuation > n.
        let p = Params::generic_t();
        let q = p.q_pow(1);
        let num = vec![Scalar::one(), q.clone()];
        let den = vec![
            Scalar::one().sub(&q),
            Scalar::from_int(2),
            q.clone(),
        ];
        let n = 4;
        let c = taylor_expand(&num, &den, n).unwrap();
        // den * c, truncated to order n, must equal num there.
        let mut conv = vec![Scalar::zero(); n + 1];
        for (i, ci) in c.iter().enumerate() {
            for (k, dk) in den.iter().enumerate() {
                if i + k <= n {
                    conv[i + k] = conv[i + k].add(&ci.mul(dk));
                }
            }
        }
        for (d, item) in conv.iter().enumerate() {
            let expect = num.get(d).cloned().unwrap_or_else(Scalar::zero);
            assert_eq!(*item, expect, "order {d}");
        }
    }

    #[test]
    fn series_div_roundtrip() {
        let p = Params::beta_fixed(1);
        let a = PSeries::from_coeffs(vec![p.q_pow(1), p.int(3), p.q_pow(-2)]);
        let b = PSeries::from_coeffs(vec![p.int(2), p.q_pow(1), p.int(-1)]);
        let r = a.div(&b).unwrap();
        assert_eq!(r.mul(&b), a);
    }
}
