//! Laurent polynomials with tower-scalar coefficients.
//!
//! `Laurent1` is a Laurent polynomial in one formal variable (the ratio
//! variable r = x1/x2, or the special point z, depending on context).
//! `LaurentPoly2` is a Laurent polynomial in the two formal exponential
//! variables X1, X2. Zero coefficients are never stored, so structural
//! equality is exact equality.

use crate::error::{Error, Result};
use crate::exact::series::CoeffRing;
use crate::exact::Scalar;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Laurent1 {
    terms: BTreeMap<i64, Scalar>,
}

impl Laurent1 {
    pub fn zero() -> Self {
        Laurent1::default()
    }

    pub fn one() -> Self {
        Laurent1::term(0, Scalar::one())
    }

    pub fn term(e: i64, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Laurent1 { terms }
    }

    pub fn from_terms(list: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut out = Laurent1::zero();
        for (e, c) in list {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, e: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get().add(&c);
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn coeff(&self, e: i64) -> Scalar {
        self.terms.get(&e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Laurent1 {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Laurent1::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Laurent1::zero();
        }
        Laurent1 {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.mul(s)))
                .collect(),
        }
    }

    /// Shift the variable's exponent: multiply by var^k.
    pub fn shift(&self, k: i64) -> Self {
        Laurent1 {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitute var -> c*var: the coefficient at exponent e picks up c^e.
    pub fn dilate(&self, c: &Scalar) -> Result<Self> {
        let mut out = Laurent1::zero();
        for (e, coeff) in &self.terms {
            out.add_term(*e, coeff.mul(&c.pow(*e)?));
        }
        Ok(out)
    }

    /// Substitute an invertible scalar for the variable.
    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            acc = acc.add(&c.mul(&x.pow(*e)?));
        }
        Ok(acc)
    }

    /// Exact division by another Laurent polynomial; errors with
    /// `NonExactDivision` when a remainder survives.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Laurent1::zero());
        }
        // Reduce to ordinary polynomial division by shifting both to
        // nonnegative exponents.
        let smin = self.min_exp().unwrap();
        let dmin = divisor.min_exp().unwrap();
        let dmax = divisor.max_exp().unwrap();
        let ddeg = (dmax - dmin) as usize;
        let sdeg = (self.max_exp().unwrap() - smin) as usize;
        if sdeg < ddeg {
            return Err(Error::NonExactDivision(
                "degree of dividend below divisor".into(),
            ));
        }
        let mut rem: Vec<Scalar> = vec![Scalar::zero(); sdeg + 1];
        for (e, c) in &self.terms {
            rem[(e - smin) as usize] = c.clone();
        }
        let mut div: Vec<Scalar> = vec![Scalar::zero(); ddeg + 1];
        for (e, c) in &divisor.terms {
            div[(e - dmin) as usize] = c.clone();
        }
        let lead_inv = div[ddeg].inv()?;
        let mut quot: Vec<Scalar> = vec![Scalar::zero(); sdeg - ddeg + 1];
        for k in (ddeg..=sdeg).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = rem[k].mul(&lead_inv);
            let shift = k - ddeg;
            for (i, d) in div.iter().enumerate() {
                if !d.is_zero() {
                    rem[shift + i] = rem[shift + i].sub(&c.mul(d));
                }
            }
            quot[shift] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonExactDivision("nonzero remainder".into()));
        }
        let offset = smin - dmin;
        Ok(Laurent1::from_terms(
            quot.into_iter()
                .enumerate()
                .map(|(k, c)| (k as i64 + offset, c)),
        ))
    }

    /// Whether coefficients are symmetric under e -> -e.
    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| self.coeff(-e) == *c)
    }

    /// Fold the single ratio variable r into (X1, X2) exponents (e, -e).
    pub fn into_poly2(&self) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, -*e, c.clone());
        }
        out
    }
}

impl CoeffRing for Laurent1 {
    fn zero() -> Self {
        Laurent1::zero()
    }
    fn is_zero(&self) -> bool {
        Laurent1::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Laurent1::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Laurent1::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Laurent1::mul(self, other)
    }
    fn scale(&self, s: &Scalar) -> Self {
        Laurent1::scale(self, s)
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i64, i64), Scalar>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        LaurentPoly2::default()
    }

    pub fn one() -> Self {
        LaurentPoly2::monomial(0, 0, Scalar::one())
    }

    pub fn monomial(e1: i64, e2: i64, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e1, e2), c);
        }
        LaurentPoly2 { terms }
    }

    pub fn add_term(&mut self, e1: i64, e2: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((e1, e2)) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get().add(&c);
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn coeff(&self, e1: i64, e2: i64) -> Scalar {
        self.terms
            .get(&(e1, e2))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((e1, e2), c) in &other.terms {
            out.add_term(*e1, *e2, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly2 {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly2::zero();
        for ((a1, a2), c1) in &self.terms {
            for ((b1, b2), c2) in &other.terms {
                out.add_term(a1 + b1, a2 + b2, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return LaurentPoly2::zero();
        }
        LaurentPoly2 {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.mul(s)))
                .collect(),
        }
    }

    /// Multiply by c * X1^e1 * X2^e2.
    pub fn mul_monomial(&self, e1: i64, e2: i64, c: &Scalar) -> Self {
        if c.is_zero() {
            return LaurentPoly2::zero();
        }
        LaurentPoly2 {
            terms: self
                .terms
                .iter()
                .map(|((a1, a2), v)| ((a1 + e1, a2 + e2), v.mul(c)))
                .collect(),
        }
    }

    /// Substitute X1 -> v1, X2 -> v2.
    pub fn eval(&self, v1: &Scalar, v2: &Scalar) -> Result<Scalar> {
        let mut parts = Vec::with_capacity(self.terms.len());
        for ((e1, e2), c) in &self.terms {
            parts.push(c.mul(&v1.pow(*e1)?).mul(&v2.pow(*e2)?));
        }
        Ok(crate::exact::sum_grouped(parts))
    }

    /// Substitute X1 -> c1*X1, X2 -> c2*X2 (used by difference operators).
    pub fn dilate(&self, c1: &Scalar, c2: &Scalar) -> Result<Self> {
        let mut out = LaurentPoly2::zero();
        for ((e1, e2), c) in &self.terms {
            out.add_term(*e1, *e2, c.mul(&c1.pow(*e1)?).mul(&c2.pow(*e2)?));
        }
        Ok(out)
    }

    pub fn swapped(&self) -> Self {
        LaurentPoly2 {
            terms: self
                .terms
                .iter()
                .map(|((e1, e2), c)| ((*e2, *e1), c.clone()))
                .collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|((e1, e2), c)| self.coeff(*e2, *e1) == *c)
    }

    /// All terms homogeneous of the given total degree?
    pub fn is_homogeneous(&self, degree: i64) -> bool {
        self.terms.keys().all(|(e1, e2)| e1 + e2 == degree)
    }

    /// Largest X1 exponent present.
    pub fn max_e1(&self) -> Option<i64> {
        self.terms.keys().map(|(e1, _)| *e1).max()
    }

    /// Exact division by (X2 - X1), done per homogeneous component via the
    /// substitution u = X1/X2.
    pub fn div_exact_x2_minus_x1(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(LaurentPoly2::zero());
        }
        let mut by_degree: BTreeMap<i64, Laurent1> = BTreeMap::new();
        for ((e1, e2), c) in &self.terms {
            by_degree
                .entry(e1 + e2)
                .or_default()
                .add_term(*e1, c.clone());
        }
        // X2 - X1 = X2 * (1 - u) in each component X2^m * f(u).
        let one_minus_u =
            Laurent1::from_terms([(0, Scalar::one()), (1, Scalar::from_int(-1))]);
        let mut out = LaurentPoly2::zero();
        for (m, f) in by_degree {
            let g = f.div_exact(&one_minus_u).map_err(|_| {
                Error::NonExactDivision(format!(
                    "component of degree {m} not divisible by X2 - X1"
                ))
            })?;
            for (e1, c) in g.terms {
                out.add_term(e1, m - 1 - e1, c);
            }
        }
        Ok(out)
    }
}

impl CoeffRing for LaurentPoly2 {
    fn zero() -> Self {
        LaurentPoly2::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly2::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        LaurentPoly2::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        LaurentPoly2::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentPoly2::mul(self, other)
    }
    fn scale(&self, s: &Scalar) -> Self {
        LaurentPoly2::scale(self, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent1_exact_division() {
        // (z^-1 - z^3) / (1 - z^2) = z^-1 + z
        let num = Laurent1::from_terms([(-1, Scalar::one()), (3, Scalar::from_int(-1))]);
        let den = Laurent1::from_terms([(0, Scalar::one()), (2, Scalar::from_int(-1))]);
        let q = num.div_exact(&den).unwrap();
        assert_eq!(
            q,
            Laurent1::from_terms([(-1, Scalar::one()), (1, Scalar::one())])
        );
        // remainder detection
        let bad = Laurent1::from_terms([(0, Scalar::one()), (1, Scalar::one())]);
        assert!(bad.div_exact(&den).is_err());
    }

    #[test]
    fn poly2_division_by_vandermonde_factor() {
        // (X2^2 - X1^2) / (X2 - X1) = X2 + X1
        let mut num = LaurentPoly2::zero();
        num.add_term(0, 2, Scalar::one());
        num.add_term(2, 0, Scalar::from_int(-1));
        let q = num.div_exact_x2_minus_x1().unwrap();
        let mut expect = LaurentPoly2::zero();
        expect.add_term(0, 1, Scalar::one());
        expect.add_term(1, 0, Scalar::one());
        assert_eq!(q, expect);
    }

    #[test]
    fn dilation_and_eval() {
        let p = crate::exact::tower::Params::beta_fixed(1);
        let mut f = LaurentPoly2::zero();
        f.add_term(1, 0, Scalar::one());
        f.add_term(0, 1, Scalar::one());
        let g = f.dilate(&p.q_pow(1), &Scalar::one()).unwrap();
        assert_eq!(g.coeff(1, 0), p.q_pow(1));
        assert_eq!(g.coeff(0, 1), Scalar::one());
        let v = f
            .eval(&p.q_half(1), &p.q_half(-1))
            .unwrap();
        assert_eq!(v, p.q_half(1).add(&p.q_half(-1)));
    }
}
