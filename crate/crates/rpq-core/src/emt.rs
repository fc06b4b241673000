//! Energy-momentum sector (Δ = 2): the (p,q) and R(p,q) bracket
//! specializations, the central-term recursion machinery, and the
//! two-term recursion solver.

use crate::error::{CoreError, Result};
use crate::laurent::LadderOp;
use crate::rexpr::RFunction;
use crate::scalar::{BaseParams, Half, Scalar};
use crate::virasoro::{generator, omega};
use num::{One, Zero};
use std::collections::BTreeMap;

/// The plain Δ = 2 generator: shift n, coeff(k) = [k + 2(n+1)].
pub fn l2_plain(params: &BaseParams, n: i64) -> LadderOp {
    let params = params.clone();
    LadderOp::new(n, move |k| params.pq_number(Half::int(k + 2 * (n + 1))))
}

/// Residual of the (p,q) energy-momentum bracket on z^k:
/// x₂·L²_n∘L²_m − y₂·L²_m∘L²_n − (pq)^n[m−n](p^{N₂}+q^{N₂})·L²_{n+m},
/// with x₂ = (pq)^n(p^m+q^m), y₂ = (pq)^m(p^n+q^n), N₂ = k+n+m+2.
pub fn emt_bracket_check(params: &BaseParams, n: i64, m: i64, k: i64) -> Result<Scalar> {
    let x2 = params.pq_pow(Half::int(n))?
        * (params.p_pow(Half::int(m))? + params.q_pow(Half::int(m))?);
    let y2 = params.pq_pow(Half::int(m))?
        * (params.p_pow(Half::int(n))? + params.q_pow(Half::int(n))?);
    let l = |i: i64, kk: i64| l2_plain(params, i).coeff(kk);
    let lhs = x2 * l(m, k)? * l(n, k + m)? - y2 * l(n, k)? * l(m, k + n)?;
    let n2 = Half::int(k + n + m + 2);
    let rhs = params.pq_pow(Half::int(n))?
        * params.pq_number(Half::int(m - n))?
        * (params.p_pow(n2)? + params.q_pow(n2)?)
        * l(n + m, k)?;
    Ok(lhs - rhs)
}

/// ω²_n, the Δ = 2 weight of the R(p,q) generators.
pub fn w2(r: &RFunction, params: &BaseParams, n: i64) -> Result<Scalar> {
    omega(r, params, Half::int(2), n)
}

/// K_{nm} = ω²_{n+m}/(ω²_n·ω²_m).
pub fn k_weight(r: &RFunction, params: &BaseParams, n: i64, m: i64) -> Result<Scalar> {
    Ok(w2(r, params, n + m)? / (w2(r, params, n)? * w2(r, params, m)?))
}

/// Residual of the R(p,q) energy-momentum bracket on z^k: the K_{nm}
/// weight dresses the left-hand coefficients (x₂K, y₂K) and the right-hand
/// side keeps the (t2) scalar with the script generator L²_{n+m}.
pub fn emt_rpq_bracket_check(
    r: &RFunction,
    params: &BaseParams,
    n: i64,
    m: i64,
    k: i64,
) -> Result<Scalar> {
    let kw = k_weight(r, params, n, m)?;
    let x2 = params.pq_pow(Half::int(n))?
        * (params.p_pow(Half::int(m))? + params.q_pow(Half::int(m))?)
        * &kw;
    let y2 = params.pq_pow(Half::int(m))?
        * (params.p_pow(Half::int(n))? + params.q_pow(Half::int(n))?)
        * &kw;
    let l = |i: i64, kk: i64| -> Result<Scalar> {
        generator(r, params, Half::int(2), i)?.coeff(kk)
    };
    let lhs = x2 * l(m, k)? * l(n, k + m)? - y2 * l(n, k)? * l(m, k + n)?;
    let n2 = Half::int(k + n + m + 2);
    let rhs = params.pq_pow(Half::int(n))?
        * params.pq_number(Half::int(m - n))?
        * (params.p_pow(n2)? + params.q_pow(n2)?)
        * l(n + m, k)?;
    Ok(lhs - rhs)
}

/// Which recursion-coefficient variant.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum EmtVariant {
    /// ν = (pq)^n(p^m+q^m)[2n+m], μ = (pq)^{m−n}(p^n+q^n)[2m+n],
    /// α = [m−n](p^{m+n}+q^{m+n})
    Pq,
    /// ν^R = (pq)^n(p^m+q^m)[2n+m]ω²_n, μ^R = (pq)^m(p^n+q^n)[2m+n]ω²_m,
    /// α^R = (pq)^n[m−n](p^{m+n}+q^{m+n})
    Rpq,
}

/// Coefficients (ν, μ, α) of the central-term recursion at (n, m).
#[derive(Clone, Debug, PartialEq)]
pub struct EmtCoefficients {
    pub nu: Scalar,
    pub mu: Scalar,
    pub alpha: Scalar,
    pub variant: EmtVariant,
}

pub fn emt_coefficients(
    variant: EmtVariant,
    r: &RFunction,
    params: &BaseParams,
    n: i64,
    m: i64,
) -> Result<EmtCoefficients> {
    let psum = |i: i64| -> Result<Scalar> {
        Ok(params.p_pow(Half::int(i))? + params.q_pow(Half::int(i))?)
    };
    match variant {
        EmtVariant::Pq => Ok(EmtCoefficients {
            nu: params.pq_pow(Half::int(n))? * psum(m)? * params.pq_number(Half::int(2 * n + m))?,
            mu: params.pq_pow(Half::int(m - n))?
                * psum(n)?
                * params.pq_number(Half::int(2 * m + n))?,
            alpha: params.pq_number(Half::int(m - n))? * psum(m + n)?,
            variant,
        }),
        EmtVariant::Rpq => Ok(EmtCoefficients {
            nu: params.pq_pow(Half::int(n))?
                * psum(m)?
                * params.pq_number(Half::int(2 * n + m))?
                * w2(r, params, n)?,
            mu: params.pq_pow(Half::int(m))?
                * psum(n)?
                * params.pq_number(Half::int(2 * m + n))?
                * w2(r, params, m)?,
            alpha: params.pq_pow(Half::int(n))?
                * params.pq_number(Half::int(m - n))?
                * psum(m + n)?,
            variant,
        }),
    }
}

/// A candidate central sequence: explicit values, free parameters, and the
/// shift β = −c₁ used to normalize ĉ₁ = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralSequence {
    pub values: BTreeMap<i64, Scalar>,
    pub c1: Scalar,
    pub c2_hat: Scalar,
    pub beta: Scalar,
}

impl CentralSequence {
    pub fn value(&self, n: i64) -> Result<Scalar> {
        self.values
            .get(&n)
            .cloned()
            .ok_or_else(|| CoreError::Domain(format!("central sequence has no value at n = {n}")))
    }
}

/// ν·c_m − μ·c_n − α·c_{n+m} for the given candidate sequence.
pub fn recursion_residual(
    coeffs: &EmtCoefficients,
    candidate: &CentralSequence,
    n: i64,
    m: i64,
) -> Result<Scalar> {
    Ok(&coeffs.nu * candidate.value(m)?
        - &coeffs.mu * candidate.value(n)?
        - &coeffs.alpha * candidate.value(n + m)?)
}

/// Both sides of the two-term recursion
/// (p^m+q^m)[m−2]·ĉ_m = (pq)^{−2}(p^{m−1}+q^{m−1})[m+1]·ĉ_{m−1}.
pub fn two_term_sides(
    params: &BaseParams,
    cm: &Scalar,
    cm_prev: &Scalar,
    m: i64,
) -> Result<(Scalar, Scalar)> {
    let lhs = (params.p_pow(Half::int(m))? + params.q_pow(Half::int(m))?)
        * params.pq_number(Half::int(m - 2))?
        * cm;
    let rhs = params.pq_pow(Half::int(-2))?
        * (params.p_pow(Half::int(m - 1))? + params.q_pow(Half::int(m - 1))?)
        * params.pq_number(Half::int(m + 1))?
        * cm_prev;
    Ok((lhs, rhs))
}

/// Solve the two-term recursion forward from ĉ₁ = 0, ĉ₂ = c2_hat, filling
/// m ∈ [3, n_max]; ĉ₀ = 0 and the even extension ĉ_{−m} = ĉ_m are included.
pub fn solve_two_term(params: &BaseParams, c2_hat: &Scalar, n_max: i64) -> Result<CentralSequence> {
    let mut values = BTreeMap::new();
    values.insert(0, Scalar::zero());
    values.insert(1, Scalar::zero());
    values.insert(2, c2_hat.clone());
    for m in 3..=n_max {
        let lhs_factor = (params.p_pow(Half::int(m))? + params.q_pow(Half::int(m))?)
            * params.pq_number(Half::int(m - 2))?;
        if lhs_factor.is_zero() {
            return Err(CoreError::Degenerate(format!("[{}] = 0 in two-term recursion", m - 2)));
        }
        let prev = values[&(m - 1)].clone();
        let rhs = params.pq_pow(Half::int(-2))?
            * (params.p_pow(Half::int(m - 1))? + params.q_pow(Half::int(m - 1))?)
            * params.pq_number(Half::int(m + 1))?
            * prev;
        values.insert(m, rhs / lhs_factor);
    }
    for m in 1..=n_max {
        let v = values[&m].clone();
        values.insert(-m, v);
    }
    Ok(CentralSequence {
        values,
        c1: Scalar::zero(),
        c2_hat: c2_hat.clone(),
        beta: Scalar::zero(),
    })
}

/// A candidate sequence built from explicit (index, value) pairs, with all
/// free parameters zeroed; used to probe individual recursion instances.
pub fn seq_from_pairs(pairs: &[(i64, Scalar)]) -> CentralSequence {
    CentralSequence {
        values: pairs.iter().cloned().collect(),
        c1: Scalar::zero(),
        c2_hat: Scalar::zero(),
        beta: Scalar::zero(),
    }
}

/// The comparison candidate ĉ_m = (pq)^{am}[m−1][m][m+1]/(p^m+q^m).
pub fn candidate_chat(params: &BaseParams, a: i64, m: i64) -> Result<Scalar> {
    let denom = params.p_pow(Half::int(m))? + params.q_pow(Half::int(m))?;
    if denom.is_zero() {
        return Err(CoreError::Degenerate(format!("p^{m} + q^{m} = 0")));
    }
    Ok(params.pq_pow(Half::int(a * m))?
        * params.pq_number(Half::int(m - 1))?
        * params.pq_number(Half::int(m))?
        * params.pq_number(Half::int(m + 1))?
        / denom)
}

/// Report comparing the literal recursion coefficients with the triple
/// induced by expanding the infinitesimal transformation of a generic
/// Laurent tensor: ν_d = x-weight·[2n+m], μ_d = y-weight·[2m+n],
/// α_d = (pq)^n[m−n](p^{n+m}+q^{n+m}).
#[derive(Clone, Debug, PartialEq)]
pub struct EmtConsistencyReport {
    pub literal: EmtCoefficients,
    pub derived: EmtCoefficients,
}

pub fn emt_infinitesimal_consistency(
    variant: EmtVariant,
    r: &RFunction,
    params: &BaseParams,
    n: i64,
    m: i64,
) -> Result<EmtConsistencyReport> {
    let literal = emt_coefficients(variant, r, params, n, m)?;
    let psum = |i: i64| -> Result<Scalar> {
        Ok(params.p_pow(Half::int(i))? + params.q_pow(Half::int(i))?)
    };
    let x2 = params.pq_pow(Half::int(n))? * psum(m)?;
    let y2 = params.pq_pow(Half::int(m))? * psum(n)?;
    let (wn, wm) = match variant {
        EmtVariant::Pq => (Scalar::one(), Scalar::one()),
        EmtVariant::Rpq => (w2(r, params, n)?, w2(r, params, m)?),
    };
    let derived = EmtCoefficients {
        nu: x2 * params.pq_number(Half::int(2 * n + m))? * wn,
        mu: y2 * params.pq_number(Half::int(2 * m + n))? * wm,
        alpha: params.pq_pow(Half::int(n))? * params.pq_number(Half::int(m - n))? * psum(n + m)?,
        variant,
    };
    Ok(EmtConsistencyReport { literal, derived })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rexpr::BuiltinR;
    use crate::scalar::{int, rat};

    fn sqrt_base() -> BaseParams {
        BaseParams::sqrt_base(rat(1, 2), rat(1, 3)).unwrap()
    }

    fn base_21() -> BaseParams {
        BaseParams::pq_base(int(2), int(1)).unwrap()
    }

    fn js() -> RFunction {
        RFunction::Builtin(BuiltinR::Js)
    }

    #[test]
    fn bracket_pin_at_21() {
        // (n, m, k) = (2, 1, 0) at (p, q) = (2, 1): LHS = 12·1905 − 10·3969,
        // RHS = 4·(−1/2)·33·255 = −16830
        let params = base_21();
        let l = |i: i64, kk: i64| l2_plain(&params, i).coeff(kk).unwrap();
        assert_eq!(l(1, 0) * l(2, 1), int(1905));
        assert_eq!(l(2, 0) * l(1, 2), int(3969));
        assert_eq!(int(12 * 1905 - 10 * 3969), int(-16830));
        let n2 = Half::int(5);
        let rhs = params.pq_pow(Half::int(2)).unwrap()
            * params.pq_number(Half::int(-1)).unwrap()
            * (params.p_pow(n2).unwrap() + params.q_pow(n2).unwrap())
            * l(3, 0);
        assert_eq!(rhs, int(-16830));
        assert!(emt_bracket_check(&params, 2, 1, 0).unwrap().is_zero());
    }

    #[test]
    fn bracket_grids() {
        let params = sqrt_base();
        for n in -3..=3i64 {
            for m in -3..=3i64 {
                for k in -2..=2i64 {
                    assert!(
                        emt_bracket_check(&params, n, m, k).unwrap().is_zero(),
                        "pq at ({n},{m},{k})"
                    );
                }
            }
        }
        for b in [BuiltinR::Js, BuiltinR::Quesne, BuiltinR::Hn] {
            let r = RFunction::Builtin(b);
            for (n, m) in [(2, 1), (-3, 2), (3, -2), (1, -3)] {
                for k in [-2, 0, 1] {
                    match emt_rpq_bracket_check(&r, &params, n, m, k) {
                        Ok(res) => assert!(res.is_zero(), "{b:?} at ({n},{m},{k})"),
                        Err(CoreError::Degenerate(_)) => {}
                        Err(e) => panic!("unexpected error: {e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn equal_indices_commute() {
        let params = sqrt_base();
        assert!(emt_bracket_check(&params, 2, 2, 1).unwrap().is_zero());
    }

    #[test]
    fn central_zero_mode_is_forced() {
        // at (n, m) = (0, 1) the recursion reads (ν − α)c₁ = μ·c₀ with
        // ν = α and μ ≠ 0, so any candidate with c₀ ≠ 0 fails
        for params in [sqrt_base(), BaseParams::pq_base(int(2), int(3)).unwrap()] {
            let co = emt_coefficients(EmtVariant::Pq, &js(), &params, 0, 1).unwrap();
            assert_eq!(co.nu, co.alpha);
            assert!(!co.mu.is_zero());
            let bad = seq_from_pairs(&[(0, int(1)), (1, int(7))]);
            assert!(!recursion_residual(&co, &bad, 0, 1).unwrap().is_zero());
            let good = seq_from_pairs(&[(0, int(0)), (1, int(7))]);
            assert!(recursion_residual(&co, &good, 0, 1).unwrap().is_zero());
        }
    }

    #[test]
    fn even_symmetry_not_forced() {
        // at (n, m) = (2, −2) the coefficients satisfy ν ≠ μ, so the even
        // candidate c₂ = c₋₂ leaves a nonzero residual: the recursion does
        // not itself impose the symmetry
        let params = sqrt_base();
        let co = emt_coefficients(EmtVariant::Pq, &js(), &params, 2, -2).unwrap();
        assert_ne!(co.nu, co.mu);
        let even = seq_from_pairs(&[(-2, int(1)), (0, int(0)), (2, int(1))]);
        assert!(!recursion_residual(&co, &even, 2, -2).unwrap().is_zero());
        // the residual vanishes only on the ray c₋₂ = (μ/ν)·c₂
        let tuned = seq_from_pairs(&[(-2, &co.mu / &co.nu), (0, int(0)), (2, int(1))]);
        assert!(recursion_residual(&co, &tuned, 2, -2).unwrap().is_zero());
    }

    #[test]
    fn two_term_solver_satisfies_recursion() {
        let params = sqrt_base();
        let seq = solve_two_term(&params, &rat(3, 7), 10).unwrap();
        assert!(seq.value(0).unwrap().is_zero());
        assert!(seq.value(1).unwrap().is_zero());
        assert_eq!(seq.value(2).unwrap(), rat(3, 7));
        for m in 3..=10i64 {
            let (lhs, rhs) =
                two_term_sides(&params, &seq.value(m).unwrap(), &seq.value(m - 1).unwrap(), m)
                    .unwrap();
            assert_eq!(lhs, rhs, "m = {m}");
            assert_eq!(seq.value(-m).unwrap(), seq.value(m).unwrap());
        }
    }

    #[test]
    fn closed_candidate_passes_iff_a_is_minus_two() {
        let params = sqrt_base();
        let check = |a: i64| -> bool {
            (3..=10i64).all(|m| {
                let cm = candidate_chat(&params, a, m).unwrap();
                let cp = candidate_chat(&params, a, m - 1).unwrap();
                let (lhs, rhs) = two_term_sides(&params, &cm, &cp, m).unwrap();
                lhs == rhs
            })
        };
        assert!(check(-2));
        assert!(!check(1));
    }

    #[test]
    fn infinitesimal_consistency_report() {
        let params = sqrt_base();
        // the R(p,q) triple is self-consistent; the (p,q) triple disagrees
        // in μ and α whenever n ≠ 0
        let rep = emt_infinitesimal_consistency(EmtVariant::Rpq, &js(), &params, 2, 1).unwrap();
        assert_eq!(rep.literal, rep.derived);
        let rep = emt_infinitesimal_consistency(EmtVariant::Pq, &js(), &params, 2, 1).unwrap();
        assert_ne!(rep.literal.mu, rep.derived.mu);
        assert_ne!(rep.literal.alpha, rep.derived.alpha);
        let rep = emt_infinitesimal_consistency(EmtVariant::Pq, &js(), &params, 0, 1).unwrap();
        assert_eq!(rep.literal, rep.derived);
    }
}
