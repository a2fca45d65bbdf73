//! Recursive dense polynomials over arbitrary-precision rationals.
//!
//! A tower of univariate extensions is represented by nesting: a node at
//! level `L` is a dense coefficient vector in tower variable `L` (1-based),
//! with every coefficient living strictly below level `L`. Level 0 is a
//! rational constant. Normal form: no trailing zero coefficient, and a
//! vector of length one collapses to the coefficient itself, so a value
//! that does not involve a variable is stored at its natural level.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MPoly {
    Const(BigRational),
    Poly { level: u8, coeffs: Vec<MPoly> },
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::Const(BigRational::zero())
    }

    pub fn one() -> Self {
        MPoly::Const(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        MPoly::Const(BigRational::from_integer(n.into()))
    }

    pub fn from_rat(r: BigRational) -> Self {
        MPoly::Const(r)
    }

    /// The generator of tower level `level` (1-based).
    pub fn var(level: u8) -> Self {
        assert!(level >= 1);
        MPoly::Poly {
            level,
            coeffs: vec![MPoly::zero(), MPoly::one()],
        }
    }

    pub fn level(&self) -> u8 {
        match self {
            MPoly::Const(_) => 0,
            MPoly::Poly { level, .. } => *level,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MPoly::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, MPoly::Const(c) if c.is_one())
    }

    /// Re-establish normal form for a coefficient vector at `level`.
    pub fn make(level: u8, mut coeffs: Vec<MPoly>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => MPoly::zero(),
            1 => coeffs.pop().unwrap(),
            _ => MPoly::Poly { level, coeffs },
        }
    }

    /// Coefficient view of `self` as a polynomial in variable `level`.
    fn coeff_slice(&self, level: u8) -> &[MPoly] {
        match self {
            MPoly::Poly { level: l, coeffs } if *l == level => coeffs,
            _ => std::slice::from_ref(self),
        }
    }

    /// Degree as a polynomial in variable `level`; zero polynomial has degree 0 here.
    pub fn degree_in(&self, level: u8) -> usize {
        match self {
            MPoly::Poly { level: l, coeffs } if *l == level => coeffs.len() - 1,
            MPoly::Poly { level: l, coeffs } if *l > level => coeffs
                .iter()
                .map(|c| c.degree_in(level))
                .max()
                .unwrap_or(0),
            _ => 0,
        }
    }

    /// Coefficient of `var(level)^e`, collecting across nesting.
    pub fn coeff_of(&self, level: u8, e: usize) -> MPoly {
        match self {
            MPoly::Poly { level: l, coeffs } if *l == level => {
                coeffs.get(e).cloned().unwrap_or_else(MPoly::zero)
            }
            MPoly::Poly { level: l, coeffs } if *l > level => MPoly::make(
                *l,
                coeffs.iter().map(|c| c.coeff_of(level, e)).collect(),
            ),
            other => {
                if e == 0 {
                    other.clone()
                } else {
                    MPoly::zero()
                }
            }
        }
    }

    pub fn uses_var(&self, level: u8) -> bool {
        match self {
            MPoly::Const(_) => false,
            MPoly::Poly { level: l, coeffs } => {
                *l == level || (*l > level && coeffs.iter().any(|c| c.uses_var(level)))
            }
        }
    }

    pub fn max_level(&self) -> u8 {
        self.level()
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        match (self, other) {
            (MPoly::Const(a), MPoly::Const(b)) => MPoly::Const(a + b),
            _ => {
                let level = self.level().max(other.level());
                let a = self.coeff_slice(level);
                let b = other.coeff_slice(level);
                let n = a.len().max(b.len());
                let mut out = Vec::with_capacity(n);
                for k in 0..n {
                    let mut c = a.get(k).cloned().unwrap_or_else(MPoly::zero);
                    if let Some(bk) = b.get(k) {
                        c = c.add(bk);
                    }
                    out.push(c);
                }
                MPoly::make(level, out)
            }
        }
    }

    pub fn neg(&self) -> MPoly {
        match self {
            MPoly::Const(c) => MPoly::Const(-c),
            MPoly::Poly { level, coeffs } => MPoly::Poly {
                level: *level,
                coeffs: coeffs.iter().map(|c| c.neg()).collect(),
            },
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        match (self, other) {
            (MPoly::Const(a), MPoly::Const(b)) => MPoly::Const(a * b),
            _ => {
                let la = self.level();
                let lb = other.level();
                if la == lb {
                    let a = self.coeff_slice(la);
                    let b = other.coeff_slice(la);
                    let mut out = vec![MPoly::zero(); a.len() + b.len() - 1];
                    for (i, ai) in a.iter().enumerate() {
                        if ai.is_zero() {
                            continue;
                        }
                        for (k, bk) in b.iter().enumerate() {
                            if bk.is_zero() {
                                continue;
                            }
                            out[i + k] = out[i + k].add(&ai.mul(bk));
                        }
                    }
                    MPoly::make(la, out)
                } else if la < lb {
                    let MPoly::Poly { coeffs, .. } = other else {
                        unreachable!()
                    };
                    MPoly::make(lb, coeffs.iter().map(|c| self.mul(c)).collect())
                } else {
                    other.mul(self)
                }
            }
        }
    }

    pub fn mul_rat(&self, r: &BigRational) -> MPoly {
        if r.is_zero() {
            return MPoly::zero();
        }
        match self {
            MPoly::Const(c) => MPoly::Const(c * r),
            MPoly::Poly { level, coeffs } => MPoly::Poly {
                level: *level,
                coeffs: coeffs.iter().map(|c| c.mul_rat(r)).collect(),
            },
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Leading rational constant, descending through leading coefficients.
    pub fn leading_rat(&self) -> BigRational {
        match self {
            MPoly::Const(c) => c.clone(),
            MPoly::Poly { coeffs, .. } => coeffs.last().unwrap().leading_rat(),
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &MPoly) -> Option<MPoly> {
        assert!(!divisor.is_zero(), "exact_div by zero");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let MPoly::Const(d) = divisor {
            return Some(self.mul_rat(&d.recip()));
        }
        let la = self.level();
        let lb = divisor.level();
        if la < lb {
            return None;
        }
        if la > lb {
            let MPoly::Poly { level, coeffs } = self else {
                unreachable!()
            };
            let mut out = Vec::with_capacity(coeffs.len());
            for c in coeffs {
                out.push(c.exact_div(divisor)?);
            }
            return Some(MPoly::make(*level, out));
        }
        // Same top level: long division, exact at every step.
        let level = la;
        let b = divisor.coeff_slice(level);
        let db = b.len() - 1;
        let mut rem: Vec<MPoly> = self.coeff_slice(level).to_vec();
        let mut quot = vec![MPoly::zero(); rem.len().saturating_sub(db)];
        loop {
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            if rem.is_empty() {
                break;
            }
            let dr = rem.len() - 1;
            if dr < db {
                return None;
            }
            let c = rem[dr].exact_div(&b[db])?;
            let shift = dr - db;
            for (k, bk) in b.iter().enumerate() {
                rem[shift + k] = rem[shift + k].sub(&c.mul(bk));
            }
            quot[shift] = c;
        }
        Some(MPoly::make(level, quot))
    }

    /// Pseudo-remainder of `self` by `divisor` in variable `level`
    /// (result is an associate of the true remainder up to powers of the
    /// divisor's leading coefficient, which is all the primitive PRS needs).
    fn pseudo_rem(&self, divisor: &MPoly, level: u8) -> MPoly {
        let b = divisor.coeff_slice(level).to_vec();
        let db = b.len() - 1;
        let lcb = b[db].clone();
        let mut rem: Vec<MPoly> = self.coeff_slice(level).to_vec();
        loop {
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= db {
                break;
            }
            let dr = rem.len() - 1;
            let lr = rem[dr].clone();
            let shift = dr - db;
            for item in rem.iter_mut() {
                *item = item.mul(&lcb);
            }
            for (k, bk) in b.iter().enumerate() {
                rem[shift + k] = rem[shift + k].sub(&lr.mul(bk));
            }
        }
        MPoly::make(level, rem)
    }

    /// Content of `self` seen as a polynomial in variable `level`: the gcd
    /// of its coefficients, including the rational content, so primitive
    /// parts have coprime integer coefficients and the PRS cannot suffer
    /// the rational-coefficient digit explosion.
    fn content_in(&self, level: u8) -> MPoly {
        let coeffs = self.coeff_slice(level);
        let mut c = MPoly::zero();
        for k in coeffs {
            if k.is_zero() {
                continue;
            }
            c = gcd_raw(&c, k);
        }
        c
    }

    /// Smallest exponent of `level` with a nonzero coefficient.
    fn trailing_exp_in(&self, level: u8) -> usize {
        match self {
            MPoly::Poly { level: l, coeffs } if *l == level => coeffs
                .iter()
                .position(|c| !c.is_zero())
                .expect("normal form has a nonzero coefficient"),
            MPoly::Poly { level: l, coeffs } if *l > level => coeffs
                .iter()
                .filter(|c| !c.is_zero())
                .map(|c| c.trailing_exp_in(level))
                .min()
                .unwrap_or(0),
            _ => 0,
        }
    }

    /// Monomial view: Some((rational, exponent per level 1..=max)) when the
    /// polynomial has a single term.
    fn as_monomial(&self) -> Option<(BigRational, Vec<(u8, usize)>)> {
        match self {
            MPoly::Const(c) => Some((c.clone(), Vec::new())),
            MPoly::Poly { level, coeffs } => {
                let nonzero: Vec<(usize, &MPoly)> = coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                if nonzero.len() != 1 {
                    return None;
                }
                let (e, inner) = nonzero[0];
                let (r, mut exps) = inner.as_monomial()?;
                if e > 0 {
                    exps.push((*level, e));
                }
                Some((r, exps))
            }
        }
    }

    /// Evaluate at rational values, indexed by level-1.
    pub fn eval_rat(&self, values: &[BigRational]) -> BigRational {
        match self {
            MPoly::Const(c) => c.clone(),
            MPoly::Poly { level, coeffs } => {
                let x = &values[(*level - 1) as usize];
                let mut acc = BigRational::zero();
                for c in coeffs.iter().rev() {
                    acc = acc * x + c.eval_rat(values);
                }
                acc
            }
        }
    }
}

/// Scale so the leading rational constant is 1 (unit normalization).
pub fn normalize_unit(p: &MPoly) -> MPoly {
    if p.is_zero() {
        return MPoly::zero();
    }
    let lead = p.leading_rat();
    if lead.is_one() {
        p.clone()
    } else {
        p.mul_rat(&lead.recip())
    }
}

/// Positive gcd of two nonzero rationals: gcd of numerators over lcm of
/// denominators, so that an integer-coefficient polynomial divided by its
/// rational content has coprime integer coefficients.
fn rat_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    let num = num_integer::gcd(a.numer().clone(), b.numer().clone());
    let den = num_integer::lcm(a.denom().clone(), b.denom().clone());
    BigRational::new(num, den).abs()
}

/// Gcd of a monomial and an arbitrary polynomial: the shared monomial part.
fn monomial_gcd(r: &BigRational, exps: &[(u8, usize)], other: &MPoly) -> MPoly {
    let mut acc = MPoly::Const(rat_gcd(r, &rational_content(other)));
    for (level, e) in exps {
        let shared = (*e).min(other.trailing_exp_in(*level));
        if shared > 0 {
            acc = acc.mul(&MPoly::var(*level).pow(shared as u32));
        }
    }
    acc
}

/// Gcd of all rational coefficients of the polynomial.
fn rational_content(p: &MPoly) -> BigRational {
    match p {
        MPoly::Const(c) => c.abs(),
        MPoly::Poly { coeffs, .. } => {
            let mut acc = BigRational::zero();
            for c in coeffs {
                if c.is_zero() {
                    continue;
                }
                let rc = rational_content(c);
                acc = if acc.is_zero() { rc } else { rat_gcd(&acc, &rc) };
            }
            acc
        }
    }
}

/// Gcd (up to sign) preserving rational content; used internally where the
/// content scale matters for growth control.
fn gcd_raw(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if let MPoly::Const(ca) = a {
        if let MPoly::Const(cb) = b {
            return MPoly::Const(rat_gcd(ca, cb));
        }
    }
    if let Some((r, exps)) = a.as_monomial() {
        return monomial_gcd(&r, &exps, b);
    }
    if let Some((r, exps)) = b.as_monomial() {
        return monomial_gcd(&r, &exps, a);
    }
    let level = a.level().max(b.level());
    if a.level() < level {
        return gcd_raw(a, &b.content_in(level));
    }
    if b.level() < level {
        return gcd_raw(&a.content_in(level), b);
    }
    let ca = a.content_in(level);
    let cb = b.content_in(level);
    let c = gcd_raw(&ca, &cb);
    let mut p = a.exact_div(&ca).expect("content divides");
    let mut q = b.exact_div(&cb).expect("content divides");
    if p.degree_in(level) < q.degree_in(level) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.is_zero() {
            break;
        }
        if q.level() < level {
            // Degree dropped to zero: primitive inputs are coprime in this variable.
            p = MPoly::one();
            break;
        }
        let r = p.pseudo_rem(&q, level);
        let rp = if r.is_zero() {
            r
        } else {
            let cr = r.content_in(level);
            r.exact_div(&cr).expect("content divides")
        };
        p = q;
        q = rp;
    }
    c.mul(&p)
}

/// Gcd via the primitive pseudo-remainder sequence, recursing through the
/// tower. The result is unit-normalized (leading rational 1), so reduced
/// fractions have a canonical representative.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    normalize_unit(&gcd_raw(a, b))
}

/// Power with `u32` exponent of a rational constant.
pub fn rat_pow(base: &BigRational, e: i64) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    let p = base.pow(e.unsigned_abs() as i32);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Sign-stable absolute height bound used by the evaluation-point sampler.
pub fn rat_is_unit_magnitude(r: &BigRational) -> bool {
    r.abs() == BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> MPoly {
        MPoly::var(1)
    }
    fn s() -> MPoly {
        MPoly::var(2)
    }

    #[test]
    fn normal_form_collapses() {
        let p = MPoly::make(1, vec![MPoly::from_int(3), MPoly::zero()]);
        assert_eq!(p, MPoly::from_int(3));
        let z = MPoly::make(2, vec![]);
        assert!(z.is_zero());
    }

    #[test]
    fn mul_across_levels() {
        // (1 + q) * s = s + q*s
        let a = MPoly::one().add(&q());
        let p = a.mul(&s());
        assert_eq!(p.degree_in(2), 1);
        assert_eq!(p.coeff_of(2, 1), a);
        assert_eq!(p.coeff_of(2, 0), MPoly::zero());
    }

    #[test]
    fn exact_div_detects_remainder() {
        // (q^2 - 1) / (q - 1) = q + 1
        let num = q().mul(&q()).sub(&MPoly::one());
        let den = q().sub(&MPoly::one());
        let quot = num.exact_div(&den).unwrap();
        assert_eq!(quot, q().add(&MPoly::one()));
        assert!(num.exact_div(&q().add(&MPoly::from_int(2))).is_none());
    }

    #[test]
    fn gcd_bivariate() {
        // gcd((q-1)*s + (q-1), (q-1)*(q+1)) = q - 1
        let f = q().sub(&MPoly::one()).mul(&s().add(&MPoly::one()));
        let g = q().sub(&MPoly::one()).mul(&q().add(&MPoly::one()));
        let d = gcd(&f, &g);
        assert_eq!(d, q().sub(&MPoly::one()));
    }

    #[test]
    fn gcd_coprime_is_one() {
        let f = q().add(&MPoly::one());
        let g = s().add(&MPoly::from_int(2));
        assert!(gcd(&f, &g).is_one());
    }
}
