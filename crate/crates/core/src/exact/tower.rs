//! Scalar-field towers and the semantic bindings of the canonical symbols.
//!
//! The engine works over nested rational-function fields
//! Q ⊂ Q(v1) ⊂ Q(v1)(v2) ⊂ …  The canonical variables are `Q` (a square
//! root of q), `S` (a square root of s), `T` (t kept generic) and `z`
//! (the special evaluation point); extra symbols may be appended for
//! ad-hoc identities. q is always `Q^2` and s is always `S^2`; when the
//! coupling is fixed to an integer `beta`, t is bound to `Q^(2*beta)` and
//! the tower carries no `T`.

use super::poly::rat_pow;
use super::Scalar;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::collections::BTreeMap;

/// How t is realized in a tower.
#[derive(Clone, Debug, PartialEq)]
pub enum TBinding {
    /// t = Q^(2*beta) for a fixed positive integer beta.
    Beta(u32),
    /// t is the generic tower variable `T`.
    Generic,
    /// t bound to an exact rational (evaluated backend for generic-t claims).
    Bound(BigRational),
}

#[derive(Clone, Debug)]
pub struct Tower {
    vars: Vec<String>,
}

impl Tower {
    pub fn new(vars: Vec<String>) -> Self {
        Tower { vars }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn level_of(&self, name: &str) -> Option<u8> {
        self.vars
            .iter()
            .position(|v| v == name)
            .map(|i| (i + 1) as u8)
    }
}

/// A tower together with the semantic bindings of q, t and s.
#[derive(Clone, Debug)]
pub struct Params {
    tower: Tower,
    q_level: Option<u8>,
    q_value: Option<BigRational>,
    s_level: Option<u8>,
    s_value: Option<BigRational>,
    t_binding: TBinding,
}

impl Params {
    /// Symbolic tower Q(Q) with t = Q^(2*beta).
    pub fn beta_fixed(beta: u32) -> Self {
        Params {
            tower: Tower::new(vec!["Q".into()]),
            q_level: Some(1),
            q_value: None,
            s_level: None,
            s_value: None,
            t_binding: TBinding::Beta(beta),
        }
    }

    /// Symbolic tower Q(Q)(S) with t = Q^(2*beta).
    pub fn beta_fixed_s(beta: u32) -> Self {
        Params {
            tower: Tower::new(vec!["Q".into(), "S".into()]),
            q_level: Some(1),
            q_value: None,
            s_level: Some(2),
            s_value: None,
            t_binding: TBinding::Beta(beta),
        }
    }

    /// Symbolic tower Q(Q)(T): generic t, no s.
    pub fn generic_t() -> Self {
        Params {
            tower: Tower::new(vec!["Q".into(), "T".into()]),
            q_level: Some(1),
            q_value: None,
            s_level: None,
            s_value: None,
            t_binding: TBinding::Generic,
        }
    }

    /// Symbolic tower Q(Q)(T)(S): generic t with symbolic s.
    pub fn generic_t_s() -> Self {
        Params {
            tower: Tower::new(vec!["Q".into(), "T".into(), "S".into()]),
            q_level: Some(1),
            q_value: None,
            s_level: Some(3),
            s_value: None,
            t_binding: TBinding::Generic,
        }
    }

    /// Evaluated backend: Q bound to a rational, t = Q^(2*beta), S symbolic.
    pub fn evaluated_beta_s(beta: u32, q_value: BigRational) -> Self {
        Params {
            tower: Tower::new(vec!["S".into()]),
            q_level: None,
            q_value: Some(q_value),
            s_level: Some(1),
            s_value: None,
            t_binding: TBinding::Beta(beta),
        }
    }

    /// Evaluated backend for generic-t claims: Q and t bound, S symbolic.
    pub fn evaluated_generic_s(q_value: BigRational, t_value: BigRational) -> Self {
        Params {
            tower: Tower::new(vec!["S".into()]),
            q_level: None,
            q_value: Some(q_value),
            s_level: Some(1),
            s_value: None,
            t_binding: TBinding::Bound(t_value),
        }
    }

    /// Evaluated backend without s.
    pub fn evaluated_generic(q_value: BigRational, t_value: BigRational) -> Self {
        Params {
            tower: Tower::new(vec![]),
            q_level: None,
            q_value: Some(q_value),
            s_level: None,
            s_value: None,
            t_binding: TBinding::Bound(t_value),
        }
    }

    /// Append an extra symbolic variable on top of the tower. Scalars built
    /// before the extension stay valid since existing levels are unchanged.
    pub fn with_extra_var(&self, name: &str) -> Params {
        let mut p = self.clone();
        assert!(
            p.tower.level_of(name).is_none(),
            "variable {name} already present"
        );
        p.tower.vars.push(name.to_string());
        p
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn var(&self, name: &str) -> Scalar {
        let level = self
            .tower
            .level_of(name)
            .unwrap_or_else(|| panic!("variable {name} not in tower"));
        Scalar::var(level)
    }

    pub fn level(&self, name: &str) -> Option<u8> {
        self.tower.level_of(name)
    }

    pub fn s_level(&self) -> Option<u8> {
        self.s_level
    }

    pub fn t_binding(&self) -> &TBinding {
        &self.t_binding
    }

    pub fn beta(&self) -> Option<u32> {
        match self.t_binding {
            TBinding::Beta(b) => Some(b),
            _ => None,
        }
    }

    /// Q^k, i.e. q^(k/2).
    pub fn q_half(&self, k: i64) -> Scalar {
        match (&self.q_level, &self.q_value) {
            (Some(level), _) => Scalar::var(*level).pow(k).expect("generator is nonzero"),
            (None, Some(v)) => Scalar::from_rat(rat_pow(v, k)),
            _ => unreachable!("q is either a variable or bound"),
        }
    }

    /// q^k.
    pub fn q_pow(&self, k: i64) -> Scalar {
        self.q_half(2 * k)
    }

    /// t^k.
    pub fn t_pow(&self, k: i64) -> Scalar {
        match &self.t_binding {
            TBinding::Beta(b) => self.q_half(2 * k * (*b as i64)),
            TBinding::Generic => self
                .var("T")
                .pow(k)
                .expect("generator is nonzero"),
            TBinding::Bound(v) => Scalar::from_rat(rat_pow(v, k)),
        }
    }

    /// t^(k/2); requires a beta-fixed tower for odd k.
    pub fn t_half(&self, k: i64) -> Scalar {
        if k % 2 == 0 {
            return self.t_pow(k / 2);
        }
        match &self.t_binding {
            TBinding::Beta(b) => self.q_half(k * (*b as i64)),
            _ => panic!("half-integer power of generic t requested"),
        }
    }

    /// S^k, i.e. s^(k/2).
    pub fn s_half(&self, k: i64) -> Scalar {
        match (&self.s_level, &self.s_value) {
            (Some(level), _) => Scalar::var(*level).pow(k).expect("generator is nonzero"),
            (None, Some(v)) => Scalar::from_rat(rat_pow(v, k)),
            _ => panic!("tower carries no s"),
        }
    }

    /// s^k.
    pub fn s_pow(&self, k: i64) -> Scalar {
        self.s_half(2 * k)
    }

    pub fn has_s(&self) -> bool {
        self.s_level.is_some() || self.s_value.is_some()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    /// Deterministic description of the tower and its bindings; cache keys
    /// and reports embed this string.
    pub fn fingerprint(&self) -> String {
        let mut parts = vec![format!("vars={}", self.tower.vars.join(","))];
        match &self.t_binding {
            TBinding::Beta(b) => parts.push(format!("t=q^{b}")),
            TBinding::Generic => parts.push("t=T".into()),
            TBinding::Bound(v) => parts.push(format!("t={v}")),
        }
        if let Some(v) = &self.q_value {
            parts.push(format!("Q={v}"));
        }
        if let Some(v) = &self.s_value {
            parts.push(format!("S={v}"));
        }
        parts.join(";")
    }

    /// Named assignment (variable name -> value) resolved to level order.
    pub fn eval_scalar(
        &self,
        a: &Scalar,
        assignment: &BTreeMap<String, BigRational>,
    ) -> Result<BigRational> {
        let mut values = Vec::with_capacity(self.tower.vars.len());
        for name in &self.tower.vars {
            let v = assignment.get(name).ok_or_else(|| {
                Error::EvaluationPole(format!(": assignment misses variable {name}"))
            })?;
            values.push(v.clone());
        }
        a.eval_rat(&values)
    }
}

/// Small-height rational sampler for the evaluated backend: numerators and
/// denominators bounded by 10^4, never 0 or of unit magnitude.
pub fn random_point<R: Rng>(rng: &mut R) -> BigRational {
    loop {
        let num: i64 = rng.random_range(2..=10_000);
        let den: i64 = rng.random_range(1..=10_000);
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        if r.is_zero() || r.abs() == BigRational::one() {
            continue;
        }
        return r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_binding_realizes_t_as_q_power() {
        let p = Params::beta_fixed(2);
        assert_eq!(p.t_pow(1), p.q_half(4));
        assert_eq!(p.t_half(1), p.q_half(2));
        assert_eq!(p.t_pow(-1), p.q_half(-4));
    }

    #[test]
    fn eval_tower_examples() {
        // Q -> 2 evaluates q = Q^2 to 4.
        let p = Params::beta_fixed(1);
        let mut asg = BTreeMap::new();
        asg.insert("Q".to_string(), BigRational::from_integer(2.into()));
        let q = p.q_pow(1);
        assert_eq!(
            p.eval_scalar(&q, &asg).unwrap(),
            BigRational::from_integer(4.into())
        );
        // (1-t)/(1-q) with beta=1 (t=q) -> 1.
        let f = p
            .one()
            .sub(&p.t_pow(1))
            .div(&p.one().sub(&p.q_pow(1)))
            .unwrap();
        assert_eq!(
            p.eval_scalar(&f, &asg).unwrap(),
            BigRational::from_integer(1.into())
        );
        // (1-s) at S -> 1 vanishes, so 1/(1-s) pole.
        let ps = Params::beta_fixed_s(1);
        let mut asg2 = asg.clone();
        asg2.insert("S".to_string(), BigRational::from_integer(1.into()));
        let inv = ps.one().div(&ps.one().sub(&ps.s_pow(1))).unwrap();
        assert!(ps.eval_scalar(&inv, &asg2).is_err());
    }

    #[test]
    fn extra_var_preserves_existing_levels() {
        let p = Params::generic_t();
        let q_before = p.q_pow(3);
        let p2 = p.with_extra_var("z");
        assert_eq!(p2.q_pow(3), q_before);
        assert_eq!(p2.level("z"), Some(3));
    }
}
