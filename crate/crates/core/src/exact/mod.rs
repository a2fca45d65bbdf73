//! Exact arithmetic foundation: arbitrary-precision rationals, dense
//! polynomials over scalar-field towers, reduced rational functions and
//! truncated power-series utilities.

pub mod poly;
pub mod series;
pub mod text;
pub mod tower;

use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use poly::{gcd, MPoly};
use std::collections::BTreeMap;

/// An element of a scalar-field tower, kept as a reduced fraction of
/// recursive dense polynomials. Canonical form: gcd(num, den) = 1 and den
/// has leading rational 1, so structural equality decides field equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Scalar {
    num: MPoly,
    den: MPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: MPoly::one(),
            den: MPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            num: MPoly::from_int(n),
            den: MPoly::one(),
        }
    }

    pub fn from_rat(r: BigRational) -> Self {
        Scalar {
            num: MPoly::from_rat(r),
            den: MPoly::one(),
        }
    }

    pub fn from_poly(p: MPoly) -> Self {
        Scalar {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn var(level: u8) -> Self {
        Scalar::from_poly(MPoly::var(level))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Build a reduced fraction. Errors when `den` is zero.
    pub fn fraction(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_one() {
            return Scalar { num, den };
        }
        let g = gcd(&num, &den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides num"),
                den.exact_div(&g).expect("gcd divides den"),
            )
        };
        let lead = d.leading_rat();
        if !lead.is_one() {
            let inv = lead.recip();
            n = n.mul_rat(&inv);
            d = d.mul_rat(&inv);
        }
        Scalar { num: n, den: d }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Scalar::reduced(self.num.add(&other.num), self.den.clone());
        }
        // Classic reduced-fraction addition: the final gcd divides gcd(d1, d2).
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            let num = self
                .num
                .mul(&other.den)
                .add(&other.num.mul(&self.den));
            if num.is_zero() {
                return Scalar::zero();
            }
            let den = self.den.mul(&other.den);
            return Scalar { num, den };
        }
        let d1g = self.den.exact_div(&g).expect("gcd divides");
        let d2g = other.den.exact_div(&g).expect("gcd divides");
        let num = self.num.mul(&d2g).add(&other.num.mul(&d1g));
        if num.is_zero() {
            return Scalar::zero();
        }
        let h = gcd(&num, &g);
        if h.is_one() {
            Scalar {
                num,
                den: d1g.mul(&other.den),
            }
        } else {
            let num = num.exact_div(&h).expect("gcd divides");
            let den = d1g.mul(&other.den.exact_div(&h).expect("gcd divides"));
            let lead = den.leading_rat();
            if lead.is_one() {
                Scalar { num, den }
            } else {
                let inv = lead.recip();
                Scalar {
                    num: num.mul_rat(&inv),
                    den: den.mul_rat(&inv),
                }
            }
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        // Cross-cancel before multiplying to keep intermediates reduced.
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = if g1.is_one() {
            self.num.clone()
        } else {
            self.num.exact_div(&g1).expect("gcd divides")
        };
        let d2 = if g1.is_one() {
            other.den.clone()
        } else {
            other.den.exact_div(&g1).expect("gcd divides")
        };
        let n2 = if g2.is_one() {
            other.num.clone()
        } else {
            other.num.exact_div(&g2).expect("gcd divides")
        };
        let d1 = if g2.is_one() {
            self.den.clone()
        } else {
            self.den.exact_div(&g2).expect("gcd divides")
        };
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lead = den.leading_rat();
        if lead.is_one() {
            Scalar { num, den }
        } else {
            let inv = lead.recip();
            Scalar {
                num: num.mul_rat(&inv),
                den: den.mul_rat(&inv),
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Scalar> {
        if e == 0 {
            return Ok(Scalar::one());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    pub fn mul_int(&self, n: i64) -> Scalar {
        self.mul(&Scalar::from_int(n))
    }

    /// Evaluate at rational values indexed by tower level - 1.
    pub fn eval_rat(&self, values: &[BigRational]) -> Result<BigRational> {
        let d = self.den.eval_rat(values);
        if d.is_zero() {
            return Err(Error::EvaluationPole(String::new()));
        }
        Ok(self.num.eval_rat(values) / d)
    }

    /// Substitute a scalar value for tower variable `level` (Horner).
    pub fn subst_var(&self, level: u8, value: &Scalar) -> Result<Scalar> {
        let num = subst_poly(&self.num, level, value);
        let den = subst_poly(&self.den, level, value);
        if den.is_zero() {
            return Err(Error::EvaluationPole(String::new()));
        }
        num.div(&den)
    }

    /// Coefficients of `self.num`/`self.den` in variable `level`, as scalars
    /// free of that variable.
    pub fn var_coeff_vectors(&self, level: u8) -> (Vec<Scalar>, Vec<Scalar>) {
        let extract = |p: &MPoly| -> Vec<Scalar> {
            (0..=p.degree_in(level))
                .map(|e| Scalar::from_poly(p.coeff_of(level, e)))
                .collect()
        };
        (extract(&self.num), extract(&self.den))
    }

    pub fn uses_var(&self, level: u8) -> bool {
        self.num.uses_var(level) || self.den.uses_var(level)
    }
}

fn subst_poly(p: &MPoly, level: u8, value: &Scalar) -> Scalar {
    match p {
        MPoly::Const(c) => Scalar::from_rat(c.clone()),
        MPoly::Poly { level: l, coeffs } if *l == level => {
            let mut acc = Scalar::zero();
            for c in coeffs.iter().rev() {
                acc = acc.mul(value).add(&Scalar::from_poly(c.clone()));
            }
            acc
        }
        MPoly::Poly { level: l, coeffs } if *l > level => {
            let v = Scalar::var(*l);
            let mut acc = Scalar::zero();
            for c in coeffs.iter().rev() {
                acc = acc.mul(&v).add(&subst_poly(c, level, value));
            }
            acc
        }
        other => Scalar::from_poly(other.clone()),
    }
}

/// Sum many scalars, grouping by denominator first so that structurally
/// shared denominators cost one reduction instead of many.
pub fn sum_grouped<I: IntoIterator<Item = Scalar>>(items: I) -> Scalar {
    let mut groups: BTreeMap<MPoly, MPoly> = BTreeMap::new();
    for s in items {
        if s.is_zero() {
            continue;
        }
        let Scalar { num, den } = s;
        groups
            .entry(den)
            .and_modify(|acc| *acc = acc.add(&num))
            .or_insert(num);
    }
    let mut total = Scalar::zero();
    for (den, num) in groups {
        total = total.add(&Scalar::reduced(num, den));
    }
    total
}

/// Reinterpret a value rational in `v^2` as rational in the squared
/// generator: exponents of tower variable `level` are halved. Errors with
/// `OddPowerResidue` when the reduced form contains odd powers.
pub fn even_power_project(a: &Scalar, level: u8) -> Result<Scalar> {
    let project = |p: &MPoly| -> Result<MPoly> {
        let deg = p.degree_in(level);
        let mut out = Vec::with_capacity(deg / 2 + 1);
        for e in 0..=deg {
            let c = p.coeff_of(level, e);
            if e % 2 == 1 {
                if !c.is_zero() {
                    return Err(Error::OddPowerResidue(format!(
                        "exponent {e} of tower variable {level}"
                    )));
                }
                continue;
            }
            out.push(c);
        }
        // Reassemble with halved exponents.
        let mut acc = MPoly::zero();
        let v = MPoly::var(level);
        for (k, c) in out.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul(&v.pow(k as u32)));
        }
        Ok(acc)
    };
    let num = project(&a.num)?;
    let den = project(&a.den)?;
    Scalar::fraction(num, den)
}

/// Canonical-form helper used by tests: reduce-and-normalize an arbitrary
/// num/den pair the same way `Scalar` arithmetic does.
pub fn reduce_pair(num: MPoly, den: MPoly) -> Result<Scalar> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Scalar::reduced(num, den))
}

pub use poly::rat_pow;
pub use text::{parse_scalar, scalar_to_string};

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::var(1)
    }
    fn t() -> Scalar {
        Scalar::var(2)
    }

    #[test]
    fn gcd_cancellation_in_fraction() {
        // (x^2 - 1)/(x - 1) normalizes to x + 1
        let num = q().mul(&q()).sub(&Scalar::one());
        let den = q().sub(&Scalar::one());
        let f = num.div(&den).unwrap();
        assert_eq!(f, q().add(&Scalar::one()));
    }

    #[test]
    fn additive_inverse() {
        let a = q().add(&t().mul(&q())).div(&q().sub(&Scalar::from_int(3))).unwrap();
        assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn coprime_fraction_is_stable() {
        // ((1-t)(1+q)) / (1-qt) stays as constructed.
        let num = Scalar::one().sub(&t()).mul(&Scalar::one().add(&q()));
        let den = Scalar::one().sub(&q().mul(&t()));
        let f = num.div(&den).unwrap();
        let back = f.mul(&den);
        assert_eq!(back, num);
    }

    #[test]
    fn even_projection() {
        // S^4/(1-S^2) -> s^2/(1-s) with S at level 1
        let s_var = Scalar::var(1);
        let f = s_var
            .pow(4)
            .unwrap()
            .div(&Scalar::one().sub(&s_var.pow(2).unwrap()))
            .unwrap();
        let p = even_power_project(&f, 1).unwrap();
        let expect = s_var
            .pow(2)
            .unwrap()
            .div(&Scalar::one().sub(&s_var))
            .unwrap();
        assert_eq!(p, expect);
        // S^3 has an odd residue
        let odd = s_var.pow(3).unwrap();
        assert!(matches!(
            even_power_project(&odd, 1),
            Err(Error::OddPowerResidue(_))
        ));
    }

    #[test]
    fn grouped_sum_matches_sequential() {
        let terms: Vec<Scalar> = (1..8)
            .map(|k| {
                Scalar::from_int(k)
                    .div(&q().add(&Scalar::from_int(k % 3)))
                    .unwrap()
            })
            .collect();
        let seq = terms
            .iter()
            .fold(Scalar::zero(), |acc, x| acc.add(x));
        let grp = sum_grouped(terms);
        assert_eq!(seq, grp);
    }
}
