//! Exact arithmetic substrate: big rationals, half-integer powers of p and q
//! via square-root bases, and the five named deformed-number families.
//!
//! Callers may supply the base either as square roots (s, t) with p = s²,
//! q = t² — which keeps every half-integer power p^{k/2} = s^k inside the
//! rationals — or directly as (p, q) when only integer exponents are needed.

use crate::error::{CoreError, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

/// The sole coefficient field: arbitrary-precision rationals.
pub type Scalar = BigRational;

/// Scalar from an integer.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Scalar n/d.
pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// x^e for integer e; errors on 0^negative.
pub fn pow_i(x: &Scalar, e: i64) -> Result<Scalar> {
    if x.is_zero() && e < 0 {
        return Err(CoreError::Domain("zero base with negative exponent".into()));
    }
    if e == 0 {
        return Ok(Scalar::one());
    }
    let e32 = i32::try_from(e).map_err(|_| CoreError::Domain(format!("exponent {e} too large")))?;
    Ok(x.pow(e32))
}

/// Exact rational square root, if one exists.
pub fn sqrt_exact(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Scalar::new(n, d))
    } else {
        None
    }
}

/// A half-integer, stored as twice its value.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Half(i64);

impl Half {
    /// From an integer value.
    pub const fn int(n: i64) -> Self {
        Half(n * 2)
    }
    /// From twice the intended value (`halves(3)` is 3/2).
    pub const fn halves(twice: i64) -> Self {
        Half(twice)
    }
    /// Twice the value (always an integer).
    pub const fn twice(self) -> i64 {
        self.0
    }
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
    /// The value as an integer, if it is one.
    pub const fn as_int(self) -> Option<i64> {
        if self.0 % 2 == 0 {
            Some(self.0 / 2)
        } else {
            None
        }
    }
    /// The value as an exact Scalar.
    pub fn to_scalar(self) -> Scalar {
        rat(self.0, 2)
    }
}

impl std::ops::Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}
impl std::ops::Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}
impl std::ops::Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}
impl std::ops::Mul<i64> for Half {
    type Output = Half;
    fn mul(self, rhs: i64) -> Half {
        Half(self.0 * rhs)
    }
}
impl From<i64> for Half {
    fn from(n: i64) -> Half {
        Half::int(n)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// The five builtin deformed-number families.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    /// Jagannathan–Srinivasa: [x]_{p,q}.
    Js,
    /// Chakrabarti–Jagannathan: [x]_{p⁻¹,q}.
    Cj,
    /// Quesne: [x]^Q_{p,q}.
    Quesne,
    /// Hounkonnou–Ngompe: g·(q^ν/p^μ)^x·[x]^Q.
    Hn,
    /// Hounkonnou–Bukweli: numerically identical to Hn.
    Hb,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Js, Family::Cj, Family::Quesne, Family::Hn, Family::Hb];

    pub fn name(self) -> &'static str {
        match self {
            Family::Js => "JS",
            Family::Cj => "CJ",
            Family::Quesne => "Quesne",
            Family::Hn => "HN",
            Family::Hb => "HB",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        match name {
            "JS" | "js" => Some(Family::Js),
            "CJ" | "cj" => Some(Family::Cj),
            "Quesne" | "quesne" | "Q" => Some(Family::Quesne),
            "HN" | "hn" => Some(Family::Hn),
            "HB" | "hb" => Some(Family::Hb),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which base a power is taken of.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum PowBase {
    P,
    Q,
    PQ,
}

/// Deformation base parameters.
///
/// `sqrt` holds (s, t) with p = s², q = t² when the base was given in
/// square-root form; half-integer exponents require it.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseParams {
    p: Scalar,
    q: Scalar,
    sqrt: Option<(Scalar, Scalar)>,
    pub mu: Scalar,
    pub nu: Scalar,
    pub g: Scalar,
}

impl BaseParams {
    /// Base from square roots: p = s², q = t².
    pub fn from_sqrt(s: Scalar, t: Scalar, mu: Scalar, nu: Scalar, g: Scalar) -> Result<Self> {
        if s.is_zero() || t.is_zero() {
            return Err(CoreError::DegenerateBase("s and t must be nonzero".into()));
        }
        let p = &s * &s;
        let q = &t * &t;
        if p == q {
            return Err(CoreError::DegenerateBase("p = q (s² = t²)".into()));
        }
        Ok(BaseParams { p, q, sqrt: Some((s, t)), mu, nu, g })
    }

    /// Base given directly as (p, q); half-integer powers are unavailable.
    pub fn from_pq(p: Scalar, q: Scalar, mu: Scalar, nu: Scalar, g: Scalar) -> Result<Self> {
        if p.is_zero() || q.is_zero() {
            return Err(CoreError::DegenerateBase("p and q must be nonzero".into()));
        }
        if p == q {
            return Err(CoreError::DegenerateBase("p = q".into()));
        }
        Ok(BaseParams { p, q, sqrt: None, mu, nu, g })
    }

    /// Square-root base with μ = ν = 0, g = 1.
    pub fn sqrt_base(s: Scalar, t: Scalar) -> Result<Self> {
        Self::from_sqrt(s, t, Scalar::zero(), Scalar::zero(), Scalar::one())
    }

    /// Direct (p, q) base with μ = ν = 0, g = 1.
    pub fn pq_base(p: Scalar, q: Scalar) -> Result<Self> {
        Self::from_pq(p, q, Scalar::zero(), Scalar::zero(), Scalar::one())
    }

    pub fn p(&self) -> &Scalar {
        &self.p
    }
    pub fn q(&self) -> &Scalar {
        &self.q
    }
    /// (s, t) if the base was given in square-root form.
    pub fn sqrt_pair(&self) -> Option<(&Scalar, &Scalar)> {
        self.sqrt.as_ref().map(|(s, t)| (s, t))
    }

    /// The same base with p and q (and s, t) exchanged.
    pub fn swapped(&self) -> BaseParams {
        BaseParams {
            p: self.q.clone(),
            q: self.p.clone(),
            sqrt: self.sqrt.as_ref().map(|(s, t)| (t.clone(), s.clone())),
            mu: self.mu.clone(),
            nu: self.nu.clone(),
            g: self.g.clone(),
        }
    }

    /// p^e, q^e, or (pq)^e for a half-integer exponent e.
    pub fn half_power(&self, which: PowBase, e: Half) -> Result<Scalar> {
        if let Some(k) = e.as_int() {
            return match which {
                PowBase::P => pow_i(&self.p, k),
                PowBase::Q => pow_i(&self.q, k),
                PowBase::PQ => pow_i(&(&self.p * &self.q), k),
            };
        }
        match &self.sqrt {
            Some((s, t)) => match which {
                PowBase::P => pow_i(s, e.twice()),
                PowBase::Q => pow_i(t, e.twice()),
                PowBase::PQ => pow_i(&(s * t), e.twice()),
            },
            None => Err(CoreError::Domain(format!(
                "half-integer exponent {}/2 requires a square-root base",
                e.twice()
            ))),
        }
    }

    pub fn p_pow(&self, e: Half) -> Result<Scalar> {
        self.half_power(PowBase::P, e)
    }
    pub fn q_pow(&self, e: Half) -> Result<Scalar> {
        self.half_power(PowBase::Q, e)
    }
    pub fn pq_pow(&self, e: Half) -> Result<Scalar> {
        self.half_power(PowBase::PQ, e)
    }

    /// base^e for a Scalar exponent; e must land in the half-integer tower.
    pub fn scalar_power(&self, which: PowBase, e: &Scalar) -> Result<Scalar> {
        let twice = e * int(2);
        if !twice.is_integer() {
            return Err(CoreError::Domain(format!(
                "exponent {e} is outside the half-integer tower"
            )));
        }
        let twice: i64 = half_exponent_to_i64(&twice)?;
        self.half_power(which, Half::halves(twice))
    }

    /// The (p,q)-number [x] = (p^x − q^x)/(p − q).
    pub fn pq_number(&self, x: Half) -> Result<Scalar> {
        let num = self.p_pow(x)? - self.q_pow(x)?;
        Ok(num / (&self.p - &self.q))
    }

    /// [x]_{p⁻¹,q} = (p^{−x} − q^{x})/(p^{−1} − q).
    pub fn cj_number(&self, x: Half) -> Result<Scalar> {
        let denom = self.p.recip() - &self.q;
        if denom.is_zero() {
            return Err(CoreError::Domain("CJ family requires p⁻¹ ≠ q".into()));
        }
        Ok((self.p_pow(-x)? - self.q_pow(x)?) / denom)
    }

    /// [x]^Q = (p^{x} − q^{−x})/(q − p^{−1}).
    pub fn quesne_number(&self, x: Half) -> Result<Scalar> {
        let denom = &self.q - self.p.recip();
        if denom.is_zero() {
            return Err(CoreError::Domain("Quesne family requires q ≠ p⁻¹".into()));
        }
        Ok((self.p_pow(x)? - self.q_pow(-x)?) / denom)
    }

    /// g·(q^ν/p^μ)^x, the Hounkonnou–Ngompe weight.
    pub fn hn_weight(&self, x: Half) -> Result<Scalar> {
        let xs = x.to_scalar();
        let qn = self.scalar_power(PowBase::Q, &(&self.nu * &xs))?;
        let pm = self.scalar_power(PowBase::P, &(&self.mu * &xs))?;
        if pm.is_zero() {
            return Err(CoreError::Domain("HN weight: p^{μx} = 0".into()));
        }
        Ok(&self.g * qn / pm)
    }

    /// Closed-form family number [x] for the selected family.
    pub fn family_number(&self, family: Family, x: Half) -> Result<Scalar> {
        match family {
            Family::Js => self.pq_number(x),
            Family::Cj => self.cj_number(x),
            Family::Quesne => self.quesne_number(x),
            Family::Hn | Family::Hb => Ok(self.hn_weight(x)? * self.quesne_number(x)?),
        }
    }

    /// [n]! for the selected family; 1 for n = 0.
    pub fn family_factorial(&self, family: Family, n: u32) -> Result<Scalar> {
        let mut acc = Scalar::one();
        for i in 1..=n {
            acc *= self.family_number(family, Half::int(i as i64))?;
        }
        Ok(acc)
    }
}

fn half_exponent_to_i64(twice: &Scalar) -> Result<i64> {
    use num::ToPrimitive;
    twice
        .to_integer()
        .to_i64()
        .ok_or_else(|| CoreError::Domain("exponent magnitude too large".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn js_21() -> BaseParams {
        BaseParams::pq_base(int(2), int(1)).unwrap()
    }

    fn sqrt_half_third() -> BaseParams {
        BaseParams::sqrt_base(rat(1, 2), rat(1, 3)).unwrap()
    }

    #[test]
    fn pq_number_basics() {
        let p = js_21();
        assert_eq!(p.pq_number(Half::int(4)).unwrap(), int(15));
        assert_eq!(p.pq_number(Half::int(0)).unwrap(), int(0));
        assert_eq!(p.pq_number(Half::int(1)).unwrap(), int(1));
        let p23 = BaseParams::pq_base(int(2), int(3)).unwrap();
        assert_eq!(p23.pq_number(Half::int(2)).unwrap(), int(5));
    }

    #[test]
    fn pq_number_negative_index_identity() {
        // [−x] = −(pq)^{−x}·[x]
        for params in [js_21(), BaseParams::pq_base(rat(1, 4), rat(1, 9)).unwrap()] {
            for x in -6..=6i64 {
                let lhs = params.pq_number(Half::int(-x)).unwrap();
                let rhs = -params.pq_pow(Half::int(-x)).unwrap()
                    * params.pq_number(Half::int(x)).unwrap();
                assert_eq!(lhs, rhs, "x = {x}");
            }
        }
    }

    #[test]
    fn sqrt_base_half_powers() {
        let params = sqrt_half_third();
        assert_eq!(params.p(), &rat(1, 4));
        assert_eq!(params.q(), &rat(1, 9));
        assert_eq!(params.p_pow(Half::halves(1)).unwrap(), rat(1, 2));
        assert_eq!(params.q_pow(Half::halves(3)).unwrap(), rat(1, 27));
        assert_eq!(params.pq_pow(Half::halves(-1)).unwrap(), int(6));
        assert_eq!(params.pq_pow(Half::int(1)).unwrap(), rat(1, 36));
    }

    #[test]
    fn direct_base_rejects_half_powers() {
        let params = js_21();
        assert_eq!(params.p_pow(Half::int(3)).unwrap(), int(8));
        assert!(matches!(params.p_pow(Half::halves(1)), Err(CoreError::Domain(_))));
    }

    #[test]
    fn degenerate_bases_rejected() {
        assert!(BaseParams::pq_base(int(2), int(2)).is_err());
        assert!(BaseParams::pq_base(int(0), int(2)).is_err());
        // s = −t still gives p = q
        assert!(BaseParams::sqrt_base(rat(1, 2), rat(-1, 2)).is_err());
        assert!(BaseParams::sqrt_base(int(0), int(1)).is_err());
    }

    #[test]
    fn pow_and_sqrt_helpers() {
        assert_eq!(pow_i(&int(3), 4).unwrap(), int(81));
        assert_eq!(pow_i(&rat(2, 3), -2).unwrap(), rat(9, 4));
        assert_eq!(pow_i(&int(0), 0).unwrap(), int(1));
        assert!(pow_i(&int(0), -1).is_err());
        assert_eq!(sqrt_exact(&rat(4, 9)), Some(rat(2, 3)));
        assert_eq!(sqrt_exact(&int(2)), None);
        assert_eq!(sqrt_exact(&int(-4)), None);
    }

    #[test]
    fn half_arithmetic_and_display() {
        let h = Half::halves(3);
        assert_eq!(h + Half::int(1), Half::halves(5));
        assert_eq!(h - Half::halves(1), Half::int(1));
        assert_eq!(-h, Half::halves(-3));
        assert_eq!(h * 2, Half::int(3));
        assert!(Half::int(0).is_zero());
        assert!(Half::int(5).is_integer());
        assert!(!h.is_integer());
        assert_eq!(Half::int(5).as_int(), Some(5));
        assert_eq!(h.as_int(), None);
        assert_eq!(h.to_scalar(), rat(3, 2));
        assert_eq!(format!("{}", Half::int(2)), "2");
        assert_eq!(format!("{h}"), "3/2");
    }

    #[test]
    fn cj_number_matches_literal() {
        let params = BaseParams::pq_base(rat(1, 2), rat(1, 3)).unwrap();
        let p = params.p().clone();
        let q = params.q().clone();
        for x in -6..=6i64 {
            let lit = (pow_i(&p, -x).unwrap() - pow_i(&q, x).unwrap())
                / (p.recip() - &q);
            assert_eq!(params.cj_number(Half::int(x)).unwrap(), lit);
        }
    }

    #[test]
    fn cj_pole_guarded() {
        // p⁻¹ = q
        let params = BaseParams::pq_base(rat(1, 2), int(2)).unwrap();
        assert!(params.cj_number(Half::int(1)).is_err());
        assert!(params.quesne_number(Half::int(1)).is_err());
    }

    #[test]
    fn quesne_number_matches_literal() {
        let params = BaseParams::pq_base(rat(1, 2), rat(1, 3)).unwrap();
        let p = params.p().clone();
        let q = params.q().clone();
        for x in -6..=6i64 {
            let lit = (pow_i(&p, x).unwrap() - pow_i(&q, -x).unwrap())
                / (&q - p.recip());
            assert_eq!(params.quesne_number(Half::int(x)).unwrap(), lit);
        }
    }

    #[test]
    fn hn_weight_and_family_number() {
        let params =
            BaseParams::from_sqrt(rat(1, 2), rat(1, 3), int(2), int(1), rat(3, 5)).unwrap();
        // g·(q^ν/p^μ)^x at x = 2: (3/5)·((1/9)/( (1/4)^2 ))^2
        let expected = rat(3, 5) * pow_i(&(rat(1, 9) / rat(1, 16)), 2).unwrap();
        assert_eq!(params.hn_weight(Half::int(2)).unwrap(), expected);
        let hn = params.family_number(Family::Hn, Half::int(3)).unwrap();
        let manual =
            params.hn_weight(Half::int(3)).unwrap() * params.quesne_number(Half::int(3)).unwrap();
        assert_eq!(hn, manual);
        // HB is numerically identical to HN
        assert_eq!(params.family_number(Family::Hb, Half::int(3)).unwrap(), hn);
    }

    #[test]
    fn hn_weight_half_exponent_uses_sqrt_tower() {
        let params =
            BaseParams::from_sqrt(rat(1, 2), rat(1, 3), int(2), int(1), rat(3, 5)).unwrap();
        // x = 1/2 → exponents ν/2, μ/2 remain in the half tower
        let expected = rat(3, 5) * rat(1, 3) / rat(1, 4);
        assert_eq!(params.hn_weight(Half::halves(1)).unwrap(), expected);
    }

    #[test]
    fn family_factorial_js() {
        let params = js_21();
        // [1][2][3] with [x] = 2^x − 1: 1·3·7
        assert_eq!(params.family_factorial(Family::Js, 3).unwrap(), int(21));
        assert_eq!(params.family_factorial(Family::Js, 0).unwrap(), int(1));
    }

    #[test]
    fn swapped_exchanges_bases() {
        let params = sqrt_half_third();
        let sw = params.swapped();
        assert_eq!(sw.p(), &rat(1, 9));
        assert_eq!(sw.q(), &rat(1, 4));
        assert_eq!(sw.p_pow(Half::halves(1)).unwrap(), rat(1, 3));
    }

    #[test]
    fn scalar_power_tower_guard() {
        let params = sqrt_half_third();
        assert_eq!(params.scalar_power(PowBase::P, &rat(1, 2)).unwrap(), rat(1, 2));
        assert!(params.scalar_power(PowBase::P, &rat(1, 3)).is_err());
    }
}
