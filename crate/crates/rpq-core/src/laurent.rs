//! Laurent polynomials in z and the ladder-operator calculus on which every
//! generator and identity check is built.
//!
//! Every operator in scope maps a monomial z^k to a scalar multiple of a
//! single monomial z^{k+d}; the `LadderOp` representation (shift d plus
//! coefficient function k ↦ c(k)) therefore loses nothing, and all identity
//! checks reduce to exact scalar equalities per degree.

use crate::error::{CoreError, Result};
use crate::rexpr::{r_at, RFunction};
use crate::scalar::{pow_i, BaseParams, Half, Scalar};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A Laurent polynomial: finite map degree → nonzero coefficient.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// c·z^k (the zero polynomial when c = 0).
    pub fn monomial(k: i64, c: Scalar) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at degree k (zero when absent).
    pub fn coeff(&self, k: i64) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.coeffs.clone();
        for (k, c) in &other.coeffs {
            let entry = out.entry(*k).or_insert_with(Scalar::zero);
            *entry += c;
            if entry.is_zero() {
                out.remove(k);
            }
        }
        LaurentPoly { coeffs: out }
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { coeffs: self.coeffs.iter().map(|(k, x)| (*k, x * c)).collect() }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.scale(&-Scalar::one()))
    }
}

type CoeffFn = Arc<dyn Fn(i64) -> Result<Scalar> + Send + Sync>;

/// A ladder operator: O(z^k) = coeff(k)·z^{k+shift}, extended linearly.
#[derive(Clone)]
pub struct LadderOp {
    pub shift: i64,
    coeff: CoeffFn,
}

impl std::fmt::Debug for LadderOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LadderOp").field("shift", &self.shift).finish_non_exhaustive()
    }
}

impl LadderOp {
    pub fn new<F>(shift: i64, coeff: F) -> Self
    where
        F: Fn(i64) -> Result<Scalar> + Send + Sync + 'static,
    {
        LadderOp { shift, coeff: Arc::new(coeff) }
    }

    /// The scalar c(k) applied to z^k.
    pub fn coeff(&self, k: i64) -> Result<Scalar> {
        (self.coeff)(k)
    }

    /// The identity operator.
    pub fn identity() -> Self {
        LadderOp::new(0, |_| Ok(Scalar::one()))
    }

    /// Shift-0 operator with an arbitrary diagonal coefficient.
    pub fn diagonal<F>(coeff: F) -> Self
    where
        F: Fn(i64) -> Result<Scalar> + Send + Sync + 'static,
    {
        LadderOp::new(0, coeff)
    }

    /// Apply to a polynomial by linear extension.
    pub fn apply(&self, poly: &LaurentPoly) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (k, c) in poly.iter() {
            let val = self.coeff(*k)? * c;
            out = out.add(&LaurentPoly::monomial(k + self.shift, val));
        }
        Ok(out)
    }

    /// outer ∘ inner: shift sums; coeff(k) = inner(k)·outer(k + inner.shift).
    pub fn compose(outer: &LadderOp, inner: &LadderOp) -> LadderOp {
        let o = outer.clone();
        let i = inner.clone();
        LadderOp::new(o.shift + i.shift, move |k| {
            let ic = i.coeff(k)?;
            let oc = o.coeff(k + i.shift)?;
            Ok(ic * oc)
        })
    }

    /// Pointwise linear combination a·A + b·B of two operators with the same
    /// shift.
    pub fn linear(a: Scalar, lhs: &LadderOp, b: Scalar, rhs: &LadderOp) -> Result<LadderOp> {
        if lhs.shift != rhs.shift {
            return Err(CoreError::Domain("linear combination of mismatched shifts".into()));
        }
        let (la, lb) = (lhs.clone(), rhs.clone());
        Ok(LadderOp::new(la.shift, move |k| Ok(&a * la.coeff(k)? + &b * lb.coeff(k)?)))
    }
}

/// Which dilation operator to build.
#[derive(Clone, PartialEq, Debug)]
pub enum Dilation {
    /// φ(z) ↦ φ(pz).
    P,
    /// φ(z) ↦ φ(qz).
    Q,
    /// φ(z) ↦ φ((p/q)z).
    PoverQ,
    /// φ(z) ↦ φ(cz) for an arbitrary nonzero scale.
    Custom(Scalar),
}

/// Scale-substitution operator: shift 0, coeff(k) = c^k.
pub fn dilation(params: &BaseParams, which: Dilation) -> Result<LadderOp> {
    let c = match which {
        Dilation::P => params.p().clone(),
        Dilation::Q => params.q().clone(),
        Dilation::PoverQ => params.p() / params.q(),
        Dilation::Custom(c) => c,
    };
    if c.is_zero() {
        return Err(CoreError::Domain("dilation scale must be nonzero".into()));
    }
    Ok(LadderOp::diagonal(move |k| pow_i(&c, k)))
}

/// The (p,q)-derivative: shift −1, coeff(k) = [k]_{p,q}.
pub fn pq_derivative(params: &BaseParams) -> LadderOp {
    let params = params.clone();
    LadderOp::new(-1, move |k| params.pq_number(Half::int(k)))
}

/// Coefficient convention for the R(p,q)-derivative.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum RDerivMode {
    /// coeff(k) = −(pq)^k·R(p^k, q^k); coeff(0) = 0. The convention every
    /// downstream generator formula is consistent with.
    Canonical,
    /// coeff(k) = R(p^k, q^k); coeff(0) = 0. Reproduces D_R z^n = [n]_R
    /// z^{n−1}; cross-check only, not used downstream.
    Clean,
}

/// The R(p,q)-derivative: shift −1.
pub fn r_derivative(r: &RFunction, params: &BaseParams, mode: RDerivMode) -> LadderOp {
    let r = r.clone();
    let params = params.clone();
    LadderOp::new(-1, move |k| {
        if k == 0 {
            return Ok(Scalar::zero());
        }
        let rv = r_at(&r, &params, Half::int(k))?;
        match mode {
            RDerivMode::Canonical => Ok(-params.pq_pow(Half::int(k))? * rv),
            RDerivMode::Clean => Ok(rv),
        }
    })
}

/// The three inequivalent monomial actions the derivative-intertwining
/// relation admits, reported side by side on z^n:
/// (left-factor reading, right-factor reading when defined, canonical).
pub fn r5_discrepancy_report(
    r: &RFunction,
    params: &BaseParams,
    n: i64,
) -> Result<(Scalar, Option<Scalar>, Scalar)> {
    let left = r_at(r, params, Half::int(n))?;
    let right = if n != 1 && !params.pq_number(Half::int(n - 1))?.is_zero() {
        Some(
            params.pq_number(Half::int(n))? * r_at(r, params, Half::int(n - 1))?
                / params.pq_number(Half::int(n - 1))?,
        )
    } else {
        None
    };
    let canonical = if n == 0 {
        Scalar::zero()
    } else {
        -params.pq_pow(Half::int(n))? * r_at(r, params, Half::int(n))?
    };
    Ok((left, right, canonical))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rexpr::{deformed_number, BuiltinR, RFunction};
    use crate::scalar::{int, rat, BaseParams, Half};

    fn js_21() -> BaseParams {
        BaseParams::pq_base(int(2), int(1)).unwrap()
    }

    #[test]
    fn poly_normalization() {
        let a = LaurentPoly::monomial(2, int(3));
        let b = LaurentPoly::monomial(2, int(-3));
        assert!(a.add(&b).is_zero());
        assert_eq!(a.scale(&int(0)), LaurentPoly::zero());
        let c = a.add(&LaurentPoly::monomial(-1, rat(1, 2)));
        assert_eq!(c.coeff(2), int(3));
        assert_eq!(c.coeff(-1), rat(1, 2));
        assert_eq!(c.coeff(0), int(0));
        assert_eq!(c.sub(&c), LaurentPoly::zero());
    }

    #[test]
    fn dilation_scales_monomials() {
        let params = js_21();
        let d = dilation(&params, Dilation::P).unwrap();
        let poly = LaurentPoly::monomial(3, int(1));
        assert_eq!(d.apply(&poly).unwrap().coeff(3), int(8));
        let d = dilation(&params, Dilation::Custom(rat(1, 2))).unwrap();
        assert_eq!(d.apply(&poly).unwrap().coeff(3), rat(1, 8));
    }

    #[test]
    fn compose_shifts_and_coefficients() {
        // A = z-shift 2 with coeff k, B = shift −1 with coeff 1
        let a = LadderOp::new(2, |k| Ok(int(k)));
        let b = LadderOp::new(-1, |_| Ok(int(1)));
        let ab = LadderOp::compose(&a, &b);
        assert_eq!(ab.shift, 1);
        // on z^5: B gives z^4, then A gives 4·z^6
        assert_eq!(ab.coeff(5).unwrap(), int(4));
        let ident = LadderOp::identity();
        assert_eq!(LadderOp::compose(&a, &ident).coeff(5).unwrap(), a.coeff(5).unwrap());
    }

    #[test]
    fn linear_combination_requires_matching_shift() {
        let a = LadderOp::new(1, |_| Ok(int(2)));
        let b = LadderOp::new(1, |_| Ok(int(3)));
        let c = LadderOp::linear(int(2), &a, int(-1), &b).unwrap();
        assert_eq!(c.coeff(0).unwrap(), int(1));
        let d = LadderOp::new(2, |_| Ok(int(1)));
        assert!(LadderOp::linear(int(1), &a, int(1), &d).is_err());
    }

    #[test]
    fn pq_derivative_on_monomials() {
        let params = js_21();
        let d = pq_derivative(&params);
        assert_eq!(d.shift, -1);
        assert_eq!(d.coeff(4).unwrap(), int(15));
        assert_eq!(d.coeff(0).unwrap(), int(0));
    }

    #[test]
    fn r_derivative_modes() {
        let params = js_21();
        let r = RFunction::Builtin(BuiltinR::Js);
        let canon = r_derivative(&r, &params, RDerivMode::Canonical);
        // −(pq)^4·[4] at k = 4 with p = 2, q = 1
        assert_eq!(canon.coeff(4).unwrap(), int(-240));
        assert_eq!(canon.coeff(0).unwrap(), int(0));
        let clean = r_derivative(&r, &params, RDerivMode::Clean);
        assert_eq!(clean.coeff(4).unwrap(), int(15));
        assert_eq!(clean.coeff(0).unwrap(), int(0));
    }

    #[test]
    fn clean_mode_matches_difference_quotient_form() {
        // K·h form: (p−q)^{−1}·(p^j − q^j)·h(j) with h(j) = R(p^j,q^j)/[j],
        // evaluated independently of the operator machinery.
        let params = BaseParams::sqrt_base(rat(1, 2), rat(1, 3)).unwrap();
        for b in [BuiltinR::Js, BuiltinR::Cj, BuiltinR::Quesne, BuiltinR::CjAlt] {
            let r = RFunction::Builtin(b);
            let clean = r_derivative(&r, &params, RDerivMode::Clean);
            let canon = r_derivative(&r, &params, RDerivMode::Canonical);
            for a in -3..=3i64 {
                for bb in -3..=3i64 {
                    let j = a + bb;
                    if j == 0 {
                        continue;
                    }
                    let brace = (params.p_pow(Half::int(j)).unwrap()
                        - params.q_pow(Half::int(j)).unwrap())
                        / (params.p() - params.q());
                    let h = deformed_number(&r, &params, Half::int(j)).unwrap()
                        / params.pq_number(Half::int(j)).unwrap();
                    assert_eq!(clean.coeff(j).unwrap(), brace * h, "{b:?} at j = {j}");
                    // canonical mode differs by the diagonal −(pq)^j
                    assert_eq!(
                        canon.coeff(j).unwrap(),
                        -params.pq_pow(Half::int(j)).unwrap() * clean.coeff(j).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn apply_is_linear() {
        let params = js_21();
        let d = pq_derivative(&params);
        let poly = LaurentPoly::monomial(3, int(2)).add(&LaurentPoly::monomial(1, int(-1)));
        let out = d.apply(&poly).unwrap();
        assert_eq!(out.coeff(2), int(2) * int(7));
        assert_eq!(out.coeff(0), int(-1));
    }

    #[test]
    fn discrepancy_report_values() {
        let params = js_21();
        let r = RFunction::Builtin(BuiltinR::Js);
        let (left, right, canonical) = r5_discrepancy_report(&r, &params, 4).unwrap();
        assert_eq!(left, int(15));
        assert_eq!(canonical, int(-240));
        assert!(right.is_some());
        // at n = 1 the right factor needs [n−1] = [0] ≠ 0 and is absent
        let (_, right, _) = r5_discrepancy_report(&r, &params, 1).unwrap();
        assert!(right.is_none());
    }

    #[test]
    fn zero_coefficient_annihilates() {
        let params = js_21();
        let d = pq_derivative(&params);
        let poly = LaurentPoly::monomial(0, int(5));
        assert!(d.apply(&poly).unwrap().is_zero());
    }
}
