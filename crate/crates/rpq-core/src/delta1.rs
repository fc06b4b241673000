//! The Δ = 1 sector: generator variants, their bracket identities, the
//! su(1,1) specializations, the λ/θ-scaled algebra, the KdV α constants,
//! and the truncated deformed current.

use crate::error::{CoreError, Result};
use crate::laurent::LadderOp;
use crate::rexpr::{deformed_number, BuiltinR, RFunction};
use crate::scalar::{int, rat, BaseParams, Family, Half, Scalar};
use crate::virasoro::{lambda_theta, omega};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Which dressing of the Δ = 1 generator.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Delta1Variant {
    /// coeff(k) = ω¹_n·[k+n+1]
    Plain,
    /// q^{−(k+n+1)} × plain
    Tilde,
    /// (q/p)^{k+n+1} × tilde
    TGen,
    /// λ⁻¹ × tilde (square-root base required)
    Scaled,
}

/// ω¹_n, the Δ = 1 weight.
pub fn w1(r: &RFunction, params: &BaseParams, n: i64) -> Result<Scalar> {
    omega(r, params, Half::int(1), n)
}

/// The Δ = 1 generator coefficient at z^k for the requested variant.
pub fn delta1_coeff(
    r: &RFunction,
    params: &BaseParams,
    n: i64,
    k: i64,
    variant: Delta1Variant,
) -> Result<Scalar> {
    let nn = k + n + 1;
    let plain = w1(r, params, n)? * params.pq_number(Half::int(nn))?;
    Ok(match variant {
        Delta1Variant::Plain => plain,
        Delta1Variant::Tilde => params.q_pow(Half::int(-nn))? * plain,
        Delta1Variant::TGen => {
            let qop = params.q_pow(Half::int(nn))? / params.p_pow(Half::int(nn))?;
            qop * params.q_pow(Half::int(-nn))? * plain
        }
        Delta1Variant::Scaled => {
            let (lambda, _) = lambda_theta(params)?;
            params.q_pow(Half::int(-nn))? * plain / lambda
        }
    })
}

/// The Δ = 1 generator as a ladder operator.
pub fn delta1_generator(
    r: &RFunction,
    params: &BaseParams,
    n: i64,
    variant: Delta1Variant,
) -> Result<LadderOp> {
    // materialize the weight now so index degeneracies surface eagerly
    w1(r, params, n)?;
    let r = r.clone();
    let params = params.clone();
    Ok(LadderOp::new(n, move |k| delta1_coeff(&r, &params, n, k, variant)))
}

/// χ̂_{nm} = R(p^{n−m},q^{n−m})/[m−n] · ω¹_{n+m}/(ω¹_n·ω¹_m).
pub fn chihat(r: &RFunction, params: &BaseParams, n: i64, m: i64) -> Result<Scalar> {
    if n == m {
        return Err(CoreError::Degenerate("χ̂ needs n ≠ m ([m−n] denominator)".into()));
    }
    let rv = deformed_number(r, params, Half::int(n - m))?;
    let ratio = w1(r, params, n + m)? / (w1(r, params, n)? * w1(r, params, m)?);
    Ok(rv / params.pq_number(Half::int(m - n))? * ratio)
}

/// Residual of the plain-generator bracket: x̂·L¹_n∘L¹_m − ŷ·L¹_m∘L¹_n −
/// R(p^{n−m},q^{n−m})·q^{(k+n+m+1)−m}·L¹_{n+m} on z^k, with x̂ = χ̂_{nm},
/// ŷ = p^{m−n}·χ̂_{nm}.
pub fn delta1_bracket_check(
    r: &RFunction,
    params: &BaseParams,
    n: i64,
    m: i64,
    k: i64,
) -> Result<Scalar> {
    let ch = chihat(r, params, n, m)?;
    let xh = ch.clone();
    let yh = params.p_pow(Half::int(m - n))? * &ch;
    let l = |i: i64, kk: i64| delta1_coeff(r, params, i, kk, Delta1Variant::Plain);
    let lhs = xh * l(m, k)? * l(n, k + m)? - yh * l(n, k)? * l(m, k + n)?;
    let rv = deformed_number(r, params, Half::int(n - m))?;
    let rhs = rv * params.q_pow(Half::int((k + n + m + 1) - m))? * l(n + m, k)?;
    Ok(lhs - rhs)
}

/// Which dressing of the tilde bracket to evaluate.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum TildeForm {
    /// x = q^{m−n}χ̂_{nm}, y = p^{m−n}χ̂_{nm}; RHS R(p^{n−m},q^{n−m})·L̃¹_{n+m}
    XyForm,
    /// plain commutator; RHS [m−n]·p^{N₁−m}q^{−N₁+n}·K¹_{nm}·L̃¹_{n+m}
    PlainCommutator,
}

/// Residual of the tilde-generator bracket in the selected form on z^k.
pub fn tilde_bracket_check(
    r: &RFunction,
    params: &BaseParams,
    n: i64,
    m: i64,
    k: i64,
    form: TildeForm,
) -> Result<Scalar> {
    if n == m {
        return Err(CoreError::Degenerate("tilde bracket needs n ≠ m".into()));
    }
    let t = |i: i64, kk: i64| delta1_coeff(r, params, i, kk, Delta1Variant::Tilde);
    match form {
        TildeForm::XyForm => {
            let ch = chihat(r, params, n, m)?;
            let x = params.q_pow(Half::int(m - n))? * &ch;
            let y = params.p_pow(Half::int(m - n))? * &ch;
            let lhs = x * t(m, k)? * t(n, k + m)? - y * t(n, k)? * t(m, k + n)?;
            let rhs = deformed_number(r, params, Half::int(n - m))? * t(n + m, k)?;
            Ok(lhs - rhs)
        }
        TildeForm::PlainCommutator => {
            let lhs = t(m, k)? * t(n, k + m)? - t(n, k)? * t(m, k + n)?;
            let n1 = k + n + m + 1;
            let k1 = w1(r, params, n)? * w1(r, params, m)? / w1(r, params, n + m)?;
            let rhs = params.pq_number(Half::int(m - n))?
                * params.p_pow(Half::int(n1 - m))?
                * params.q_pow(Half::int(-n1 + n))?
                * k1
                * t(n + m, k)?;
            Ok(lhs - rhs)
        }
    }
}

/// The three su(1,1)-related specializations of the tilde bracket.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Su11Relation {
    /// (n,m) = (0,1): x = q·χ̂₀₁, y = p·χ̂₀₁; RHS R(p^{−1},q^{−1})·L̃¹₁
    D23,
    /// (n,m) = (−1,0): x = q·χ̂₋₁₀, y = p·χ̂₋₁₀; RHS R(p^{−1},q^{−1})·L̃¹₋₁
    D25,
    /// commutator [L̃¹₁, L̃¹₋₁] against [2]·p^{N₁−1}q^{−N₁−1}·K¹₋₁,₁·L̃¹₀
    D27,
}

/// Residual of the selected su(1,1) relation on z^k.
pub fn su11_check(
    r: &RFunction,
    params: &BaseParams,
    relation: Su11Relation,
    k: i64,
) -> Result<Scalar> {
    let t = |i: i64, kk: i64| delta1_coeff(r, params, i, kk, Delta1Variant::Tilde);
    let rv = deformed_number(r, params, Half::int(-1))?;
    match relation {
        Su11Relation::D23 => {
            let ch = chihat(r, params, 0, 1)?;
            let x = params.q() * &ch;
            let y = params.p() * &ch;
            let lhs = x * t(1, k)? * t(0, k + 1)? - y * t(0, k)? * t(1, k)?;
            Ok(lhs - rv * t(1, k)?)
        }
        Su11Relation::D25 => {
            let ch = chihat(r, params, -1, 0)?;
            let x = params.q() * &ch;
            let y = params.p() * &ch;
            let lhs = x * t(0, k)? * t(-1, k)? - y * t(-1, k)? * t(0, k - 1)?;
            Ok(lhs - rv * t(-1, k)?)
        }
        Su11Relation::D27 => {
            let lhs = t(1, k)? * t(-1, k + 1)? - t(-1, k)? * t(1, k - 1)?;
            let n1 = k + 1;
            let k1 = w1(r, params, -1)? * w1(r, params, 1)? / w1(r, params, 0)?;
            let rhs = params.pq_number(Half::int(2))?
                * params.p_pow(Half::int(n1 - 1))?
                * params.q_pow(Half::int(-n1 - 1))?
                * k1
                * t(0, k)?;
            Ok(lhs - rhs)
        }
    }
}

/// Residual of the λ/θ-scaled bracket: x·𝓛̃_n∘𝓛̃_m − y·𝓛̃_m∘𝓛̃_n −
/// R(θ^{m−n},θ^{n−m})·𝓛̃_{n+m} on z^k, with x = λ^{m−n}θ^{n−m}·χ̂_{nm}(θ,θ⁻¹)
/// and y = λ^{m−n}θ^{m−n}·χ̂_{nm}(θ,θ⁻¹). This residual is recorded, not
/// asserted zero.
pub fn scaled_bracket_check(
    r: &RFunction,
    params: &BaseParams,
    n: i64,
    m: i64,
    k: i64,
) -> Result<Scalar> {
    let (lambda, theta) = lambda_theta(params)?;
    if theta == Scalar::one() {
        return Err(CoreError::Degenerate("θ = 1".into()));
    }
    let theta_params = BaseParams::from_pq(
        theta.clone(),
        theta.recip(),
        params.mu.clone(),
        params.nu.clone(),
        params.g.clone(),
    )?;
    let ch = chihat(r, &theta_params, n, m)?;
    let lpow = crate::scalar::pow_i(&lambda, m - n)?;
    let x = &lpow * crate::scalar::pow_i(&theta, n - m)? * &ch;
    let y = &lpow * crate::scalar::pow_i(&theta, m - n)? * &ch;
    let s = |i: i64, kk: i64| delta1_coeff(r, params, i, kk, Delta1Variant::Scaled);
    let lhs = x * s(m, k)? * s(n, k + m)? - y * s(n, k)? * s(m, k + n)?;
    let rhs = deformed_number(r, &theta_params, Half::int(m - n))? * s(n + m, k)?;
    Ok(lhs - rhs)
}

/// Three-way comparison of the difference-operator form of the tilde
/// generator: returns (the tilde coefficient, the variant with difference
/// exponent k+1, the variant with exponent k+n+1), all at z^k.
pub fn d14_equivalence_report(
    r: &RFunction,
    params: &BaseParams,
    n: i64,
    k: i64,
) -> Result<(Scalar, Scalar, Scalar)> {
    let lhs = delta1_coeff(r, params, n, k, Delta1Variant::Tilde)?;
    let w = w1(r, params, n)?;
    let pmq = params.p() - params.q();
    let var = |e: i64| -> Result<Scalar> {
        let ratio = params.p_pow(Half::int(e))? / params.q_pow(Half::int(e))?;
        Ok((ratio - Scalar::one()) / &pmq * &w)
    };
    Ok((lhs, var(k + 1)?, var(k + n + 1)?))
}

/// The KdV α constant: partial sums of Σ_{n≥0} ω¹_n against the closed
/// form, both exact.
pub struct AlphaConstant {
    pub family: Family,
    pub closed_form: Scalar,
    pub partial_sums: Vec<Scalar>,
}

fn builtin_for(family: Family) -> BuiltinR {
    match family {
        Family::Js => BuiltinR::Js,
        Family::Cj => BuiltinR::Cj,
        Family::Quesne => BuiltinR::Quesne,
        Family::Hn => BuiltinR::Hn,
        Family::Hb => BuiltinR::Hb,
    }
}

fn require_lt_one(label: &str, value: &Scalar) -> Result<()> {
    if value.abs() < Scalar::one() {
        Ok(())
    } else {
        Err(CoreError::Domain(format!("series divergence: |{label}| = |{value}| ≥ 1")))
    }
}

/// Effective convergence preconditions for the ℤ₊ sum of ω¹_n, expressed
/// as term-ratio bounds. These are the regions in which the summand
/// actually decays; see the README discussion of the closed forms.
fn check_convergence(family: Family, params: &BaseParams) -> Result<()> {
    let p = params.p().clone();
    let q = params.q().clone();
    match family {
        Family::Js => require_lt_one("pq", &(&p * &q)),
        Family::Cj => {
            require_lt_one("q/p", &(&q / &p))?;
            require_lt_one("q^2", &(&q * &q))
        }
        Family::Quesne => {
            require_lt_one("p/q", &(&p / &q))?;
            require_lt_one("p^2", &(&p * &p))
        }
        Family::Hn | Family::Hb => {
            let w = params.hn_weight(Half::int(1))?; // g cancels in the ratio; use q^ν/p^μ via g-normalized weight
            let base = &w / &params.g;
            require_lt_one("(q^ν/p^μ)·p/q", &(&base * &p / &q))?;
            require_lt_one("(q^ν/p^μ)·p^2", &(&base * &p * &p))
        }
    }
}

/// The closed forms printed in the source material for each family.
fn alpha_closed_form(family: Family, params: &BaseParams) -> Result<Scalar> {
    let p = params.p().clone();
    let q = params.q().clone();
    let one = Scalar::one();
    let pq = &p * &q;
    match family {
        Family::Js => Ok(&pq / (&pq - &one)),
        Family::Cj => {
            let pre = (&p - &q) / (p.recip() - &q);
            Ok(pre
                * (&q / (&q - &p) - &pq / (&one - &pq) - &p * &p / (&one - &p * &p)))
        }
        Family::Quesne => {
            let pre = (&p - &q) / (&q - p.recip());
            Ok(pre
                * (-(&q * &q) / (&one - &q * &q) + &p / (&p - &q) - &pq / (&one - &pq)))
        }
        Family::Hn | Family::Hb => {
            let pre = &params.g * (&p - &q) / (&q - p.recip());
            let qp = |a: i64, b: i64| -> Result<Scalar> {
                // q^{ν+b}/(p^{μ+a} − q^{ν+b})
                let pa = params.scalar_power(crate::scalar::PowBase::P, &(&params.mu + int(a)))?;
                let qb = params.scalar_power(crate::scalar::PowBase::Q, &(&params.nu + int(b)))?;
                let denom = &pa - &qb;
                if denom.is_zero() {
                    return Err(CoreError::Pole(format!("p^(μ+{a}) − q^(ν+{b})")));
                }
                Ok(qb / denom)
            };
            Ok(pre * (qp(0, 0)? + qp(1, 1)? - qp(-1, 2)? + qp(0, 2)?))
        }
    }
}

/// Partial sums of α = Σ_{n∈ℤ₊} ω¹_n together with the family's closed
/// form. Errors outside the effective convergence region.
pub fn kdv_alpha(family: Family, params: &BaseParams, terms: usize) -> Result<AlphaConstant> {
    check_convergence(family, params)?;
    let closed_form = alpha_closed_form(family, params)?;
    let r = RFunction::Builtin(builtin_for(family));
    let mut partial_sums = Vec::with_capacity(terms + 1);
    let mut acc = Scalar::zero();
    for n in 0..=terms as i64 {
        acc += w1(&r, params, n)?;
        partial_sums.push(acc.clone());
    }
    Ok(AlphaConstant { family, closed_form, partial_sums })
}

/// cos approximant: Σ_{i<terms} (−1)^i x^{2i}/(2i)!, exact rational.
pub fn cos_approx(x: &Scalar, terms: usize) -> Scalar {
    let mut acc = Scalar::zero();
    let mut term = Scalar::one();
    for i in 0..terms {
        acc += &term;
        let d = int(((2 * i + 1) * (2 * i + 2)) as i64);
        term = -(term * x * x) / d;
    }
    acc
}

/// sin approximant: Σ_{i<terms} (−1)^i x^{2i+1}/(2i+1)!, exact rational.
pub fn sin_approx(x: &Scalar, terms: usize) -> Scalar {
    let mut acc = Scalar::zero();
    let mut term = x.clone();
    for i in 0..terms {
        acc += &term;
        let d = int(((2 * i + 2) * (2 * i + 3)) as i64);
        term = -(term * x * x) / d;
    }
    acc
}

/// Truncated deformed current v(x) = Σ_n t_n·e^{−inx} evaluated at sample
/// points through rational trigonometric approximants. Returns (re, im)
/// pairs; report-only, never used in identity checks.
pub fn current_partial(
    mode_coeffs: &BTreeMap<i64, Scalar>,
    x_samples: &[Scalar],
    approx_terms: usize,
) -> Vec<(Scalar, Scalar)> {
    x_samples
        .iter()
        .map(|x| {
            let mut re = Scalar::zero();
            let mut im = Scalar::zero();
            for (n, t) in mode_coeffs {
                if t.is_zero() {
                    continue;
                }
                let nx = int(*n) * x;
                re += t * cos_approx(&nx, approx_terms);
                im -= t * sin_approx(&nx, approx_terms);
            }
            (re, im)
        })
        .collect()
}

/// Geometric remainder bound for the JS α series: (pq)^{N+2}/(1−pq).
pub fn js_alpha_remainder_bound(params: &BaseParams, n: usize) -> Result<Scalar> {
    let pq = params.p() * params.q();
    Ok(crate::scalar::pow_i(&pq, n as i64 + 2)?.abs() / (Scalar::one() - pq).abs())
}

/// Convenience rational helper used by tests.
pub fn half_rat(n: i64, d: i64) -> Scalar {
    rat(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt_base() -> BaseParams {
        BaseParams::sqrt_base(rat(1, 2), rat(1, 3)).unwrap()
    }

    fn base_23() -> BaseParams {
        BaseParams::pq_base(int(2), int(3)).unwrap()
    }

    fn base_grid() -> BaseParams {
        BaseParams::pq_base(rat(1, 4), rat(1, 9)).unwrap()
    }

    fn js() -> RFunction {
        RFunction::Builtin(BuiltinR::Js)
    }

    #[test]
    fn bracket_pin_at_23() {
        // (n, m, k) = (1, 0, 0) at (p, q) = (2, 3): the two composition
        // products are 1080 and 5400 and the right-hand side is −1620
        let params = base_23();
        let l = |i: i64, kk: i64| delta1_coeff(&js(), &params, i, kk, Delta1Variant::Plain).unwrap();
        assert_eq!(l(0, 0) * l(1, 0), int(1080));
        assert_eq!(l(1, 0) * l(0, 1), int(5400));
        let rhs = deformed_number(&js(), &params, Half::int(1)).unwrap()
            * params.q_pow(Half::int(2)).unwrap()
            * l(1, 0);
        assert_eq!(rhs, int(-1620));
        assert!(delta1_bracket_check(&js(), &params, 1, 0, 0).unwrap().is_zero());
    }

    #[test]
    fn bracket_grids() {
        for params in [base_23(), base_grid()] {
            for b in [BuiltinR::Js, BuiltinR::Quesne] {
                let r = RFunction::Builtin(b);
                for n in -2..=3i64 {
                    for m in -2..=3i64 {
                        for k in -2..=2i64 {
                            match delta1_bracket_check(&r, &params, n, m, k) {
                                Ok(res) => {
                                    assert!(res.is_zero(), "{b:?} d4 at ({n},{m},{k})")
                                }
                                Err(CoreError::Degenerate(_)) => continue,
                                Err(e) => panic!("unexpected error: {e}"),
                            }
                            if n == m {
                                continue;
                            }
                            for form in [TildeForm::XyForm, TildeForm::PlainCommutator] {
                                match tilde_bracket_check(&r, &params, n, m, k, form) {
                                    Ok(res) => assert!(
                                        res.is_zero(),
                                        "{b:?} {form:?} at ({n},{m},{k})"
                                    ),
                                    Err(CoreError::Degenerate(_)) => {}
                                    Err(e) => panic!("unexpected error: {e}"),
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn su11_relations() {
        for params in [base_23(), base_grid()] {
            for relation in [Su11Relation::D23, Su11Relation::D25, Su11Relation::D27] {
                for k in -2..=2i64 {
                    let res = su11_check(&js(), &params, relation, k).unwrap();
                    assert!(res.is_zero(), "{relation:?} at k = {k}");
                }
            }
        }
    }

    #[test]
    fn variant_dressings() {
        let params = sqrt_base();
        let r = js();
        for n in [-2, 0, 2] {
            for k in -2..=2i64 {
                let nn = k + n + 1;
                let plain = delta1_coeff(&r, &params, n, k, Delta1Variant::Plain).unwrap();
                let tilde = delta1_coeff(&r, &params, n, k, Delta1Variant::Tilde).unwrap();
                assert_eq!(tilde, params.q_pow(Half::int(-nn)).unwrap() * &plain);
                let tgen = delta1_coeff(&r, &params, n, k, Delta1Variant::TGen).unwrap();
                let qop = params.q_pow(Half::int(nn)).unwrap()
                    / params.p_pow(Half::int(nn)).unwrap();
                assert_eq!(tgen, qop * &tilde);
                let scaled = delta1_coeff(&r, &params, n, k, Delta1Variant::Scaled).unwrap();
                let (lambda, _) = lambda_theta(&params).unwrap();
                assert_eq!(scaled, tilde / lambda);
            }
        }
        // Scaled needs a square-root base
        assert!(delta1_coeff(&r, &base_23(), 1, 0, Delta1Variant::Scaled).is_err());
    }

    #[test]
    fn scaled_bracket_recorded_values() {
        // frozen regression values: the λ/θ-scaled relation does not close
        // and its residuals are recorded, not asserted zero
        let params = sqrt_base();
        let pins = [
            ((1i64, 0i64, 0i64), rat(-2821, 746_496)),
            ((2, 1, 0), rat(-273_637, 15_479_341_056)),
            ((1, -2, 1), rat(-1_034_341, 186_624)),
        ];
        for ((n, m, k), expect) in pins {
            assert_eq!(scaled_bracket_check(&js(), &params, n, m, k).unwrap(), expect);
        }
    }

    #[test]
    fn d14_three_way() {
        let params = sqrt_base();
        for n in -2..=2i64 {
            for k in -2..=2i64 {
                let (lhs, a, b) = d14_equivalence_report(&js(), &params, n, k).unwrap();
                assert_eq!(b, lhs, "exponent k+n+1 at ({n},{k})");
                if n != 0 {
                    assert_ne!(a, lhs, "exponent k+1 at ({n},{k})");
                } else {
                    assert_eq!(a, lhs);
                }
            }
        }
    }

    #[test]
    fn kdv_alpha_js() {
        let params = sqrt_base();
        // pq = 1/36: closed form pq/(pq−1) = −1/35
        let alpha = kdv_alpha(Family::Js, &params, 20).unwrap();
        assert_eq!(alpha.closed_form, rat(-1, 35));
        for n in [5usize, 10, 20] {
            let err = (&alpha.closed_form - &alpha.partial_sums[n]).abs();
            let bound = js_alpha_remainder_bound(&params, n).unwrap();
            assert!(err <= bound, "N = {n}");
        }
        // divergent base rejected
        assert!(kdv_alpha(Family::Js, &base_23(), 5).is_err());
    }

    #[test]
    fn kdv_alpha_cj_disagrees() {
        // the printed CJ closed form does not match the convergent series
        let params = sqrt_base();
        let alpha = kdv_alpha(Family::Cj, &params, 40).unwrap();
        let diff = (&alpha.closed_form - alpha.partial_sums.last().unwrap()).abs();
        assert!(diff > rat(1, 1_000_000_000_000));
    }

    #[test]
    fn trig_approximants() {
        assert_eq!(cos_approx(&Scalar::zero(), 8), Scalar::one());
        assert!(sin_approx(&Scalar::zero(), 8).is_zero());
        // cos(1/2) ≈ 0.877582, sin(1/2) ≈ 0.479426
        let c = cos_approx(&rat(1, 2), 8);
        assert!((c - rat(877_582, 1_000_000)).abs() < rat(1, 100_000));
        let s = sin_approx(&rat(1, 2), 8);
        assert!((s - rat(479_426, 1_000_000)).abs() < rat(1, 100_000));
    }

    #[test]
    fn current_partial_smoke() {
        let mut modes = BTreeMap::new();
        modes.insert(0i64, int(2));
        modes.insert(1i64, int(0));
        let out = current_partial(&modes, &[Scalar::zero(), rat(1, 2)], 6);
        // only the constant mode contributes: v(x) = 2 everywhere
        assert_eq!(out[0], (int(2), Scalar::zero()));
        assert_eq!(out[1], (int(2), Scalar::zero()));
    }
}
