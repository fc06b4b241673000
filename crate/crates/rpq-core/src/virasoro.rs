//! Deformed conformal generators for arbitrary Δ, their bracket structure,
//! special-case closed forms, and classical-limit probes.
//!
//! Conventions (all pre-verified exactly):
//! * generators are the script form: coeff(k) = ω_n^Δ·[k + Δ(n+1)], shift n;
//! * diagonal factors p^{N_Δ}, q^{N_Δ} take their eigenvalue at the OUTPUT
//!   degree (k + n + m) + Δ by default — the `DegreeConvention::Input`
//!   toggle exists to demonstrate that the other reading fails;
//! * the brace on the bracket's right-hand side is evaluated with the
//!   ω-ratio-free coefficients (the ω factors of the generators collapse
//!   against the ratio carried by X̃, Ỹ).

use crate::error::{CoreError, Result};
use crate::laurent::{r_derivative, LadderOp, RDerivMode};
use crate::rexpr::{deformed_number, BuiltinR, RFunction};
use crate::scalar::{int, BaseParams, Family, Half, Scalar};
use num::{One, Zero};

/// Where diagonal operators take their eigenvalue.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum DegreeConvention {
    /// After both ladder shifts: N_Δ = (k + n + m) + Δ. The verified reading.
    Output,
    /// At the input monomial: N_Δ = k + Δ. Fails the pinned regressions.
    Input,
}

impl DegreeConvention {
    pub fn eigenvalue(self, k: i64, total_shift: i64, delta: Half) -> Half {
        match self {
            DegreeConvention::Output => Half::int(k + total_shift) + delta,
            DegreeConvention::Input => Half::int(k) + delta,
        }
    }
}

/// ω_n^Δ = −(pq)^x·R(p^x, q^x)/[x] with x = Δ(n+1); at x = 0 only the JS
/// builtin has a rational limit (−1).
pub fn omega(r: &RFunction, params: &BaseParams, delta: Half, n: i64) -> Result<Scalar> {
    let x = delta * (n + 1);
    if x.is_zero() {
        return match r {
            RFunction::Builtin(BuiltinR::Js) => Ok(-Scalar::one()),
            RFunction::Builtin(b) => Err(CoreError::Degenerate(format!(
                "omega limit at Δ(n+1)=0 is not rational for family {}",
                b.name()
            ))),
            RFunction::Custom(_) => {
                Err(CoreError::Degenerate("omega at Δ(n+1)=0 for custom R".into()))
            }
        };
    }
    let num = params.pq_number(x)?;
    if num.is_zero() {
        return Err(CoreError::Degenerate(format!("[{x}] = 0 in omega denominator")));
    }
    Ok(-params.pq_pow(x)? * deformed_number(r, params, x)? / num)
}

/// The plain generator: shift n, coeff(k) = [k + Δ(n+1)].
pub fn plain_generator(params: &BaseParams, delta: Half, n: i64) -> LadderOp {
    let params = params.clone();
    LadderOp::new(n, move |k| params.pq_number(Half::int(k) + delta * (n + 1)))
}

/// The script generator: shift n, coeff(k) = ω_n^Δ·[k + Δ(n+1)].
pub fn generator(r: &RFunction, params: &BaseParams, delta: Half, n: i64) -> Result<LadderOp> {
    let w = omega(r, params, delta, n)?;
    let params = params.clone();
    Ok(LadderOp::new(n, move |k| {
        Ok(&w * params.pq_number(Half::int(k) + delta * (n + 1))?)
    }))
}

/// Coefficient of the literal composition pipeline
/// z^{(1+n)(1−Δ)}·D_R(z^{Δ(1+n)}·) on z^k, for comparison against the
/// closed-form generator. The two constructions do not coincide on
/// monomials (they are compared, not asserted equal).
pub fn composition_pipeline_coeff(
    r: &RFunction,
    params: &BaseParams,
    delta: Half,
    n: i64,
    k: i64,
    mode: RDerivMode,
) -> Result<Scalar> {
    let x = delta * (n + 1);
    let inner = Half::int(k) + x;
    let m = inner.as_int().ok_or_else(|| {
        CoreError::Domain("pipeline needs an integer inner degree (Δ(n+1) half-integer)".into())
    })?;
    r_derivative(r, params, mode).coeff(m)
}

/// The ω-ratio-free bracket coefficients
/// x₀ = (pq)^n·[n(Δ−1)]·[Δm]/([n][m]) and the (n ↔ m) partner.
pub fn xy_free(params: &BaseParams, delta: Half, n: i64, m: i64) -> Result<(Scalar, Scalar)> {
    let dn = params.pq_number(Half::int(n))?;
    let dm = params.pq_number(Half::int(m))?;
    if dn.is_zero() || dm.is_zero() {
        return Err(CoreError::Degenerate(format!("[n]·[m] = 0 at (n,m)=({n},{m})")));
    }
    let dm1 = delta - Half::int(1);
    let x = params.pq_pow(Half::int(n))? * params.pq_number(dm1 * n)?
        * params.pq_number(delta * m)?
        / (&dn * &dm);
    let y = params.pq_pow(Half::int(m))? * params.pq_number(dm1 * m)?
        * params.pq_number(delta * n)?
        / (&dn * &dm);
    Ok((x, y))
}

/// The brace (p−q)^{−1}{p^N(Xp^{−n} − Yp^{−m}) − q^N(Xq^{−n} − Yq^{−m})}.
pub fn brace(
    params: &BaseParams,
    x: &Scalar,
    y: &Scalar,
    n: i64,
    m: i64,
    nn: Half,
) -> Result<Scalar> {
    let pn = params.p_pow(nn)?;
    let qn = params.q_pow(nn)?;
    let a = x * params.p_pow(Half::int(-n))? - y * params.p_pow(Half::int(-m))?;
    let b = x * params.q_pow(Half::int(-n))? - y * params.q_pow(Half::int(-m))?;
    Ok((pn * a - qn * b) / (params.p() - params.q()))
}

/// Bracket coefficients and right-hand operator for the Δ ≠ 1 bracket.
pub struct BracketCoeffs {
    pub x_tilde: Scalar,
    pub y_tilde: Scalar,
    pub rhs: LadderOp,
}

/// Build X̃, Ỹ (ω-ratio dressed) and the right-hand-side operator.
pub fn bracket_coeffs(
    r: &RFunction,
    params: &BaseParams,
    delta: Half,
    n: i64,
    m: i64,
    convention: DegreeConvention,
) -> Result<BracketCoeffs> {
    if n == 0 || m == 0 {
        return Err(CoreError::Degenerate("bracket needs n ≠ 0 and m ≠ 0 ([n][m] denominators)".into()));
    }
    if delta == Half::int(1) {
        return Err(CoreError::Degenerate("Δ = 1 bracket has its own coefficient structure".into()));
    }
    let (x0, y0) = xy_free(params, delta, n, m)?;
    let ratio = omega(r, params, delta, n + m)?
        / (omega(r, params, delta, n)? * omega(r, params, delta, m)?);
    let x_tilde = &x0 * &ratio;
    let y_tilde = &y0 * &ratio;
    let lnm = generator(r, params, delta, n + m)?;
    let params2 = params.clone();
    let rhs = LadderOp::new(n + m, move |k| {
        let nn = convention.eigenvalue(k, n + m, delta);
        let b = brace(&params2, &x0, &y0, n, m, nn)?;
        Ok(b * lnm.coeff(k)?)
    });
    Ok(BracketCoeffs { x_tilde, y_tilde, rhs })
}

/// Residual of X̃·L_n∘L_m − Ỹ·L_m∘L_n − RHS on z^k.
pub fn check_bracket_p1(
    r: &RFunction,
    params: &BaseParams,
    delta: Half,
    n: i64,
    m: i64,
    k: i64,
    convention: DegreeConvention,
) -> Result<Scalar> {
    let bc = bracket_coeffs(r, params, delta, n, m, convention)?;
    let ln = generator(r, params, delta, n)?;
    let lm = generator(r, params, delta, m)?;
    let lhs = bc.x_tilde * lm.coeff(k)? * ln.coeff(k + m)?
        - bc.y_tilde * ln.coeff(k)? * lm.coeff(k + n)?;
    Ok(lhs - bc.rhs.coeff(k)?)
}

/// χ_{nm}(p,q) evaluated at the eigenvalue N: the reciprocal of the brace
/// with (X, Y) replaced by (1, ρ), ρ = y₀/x₀ (times p−q, which the brace
/// divides out).
pub fn chi(params: &BaseParams, delta: Half, n: i64, m: i64, nn: Half) -> Result<Scalar> {
    let (x0, y0) = xy_free(params, delta, n, m)?;
    if x0.is_zero() {
        return Err(CoreError::Degenerate("χ needs x₀ ≠ 0".into()));
    }
    let rho = y0 / x0;
    let denom = params.p_pow(nn)?
        * (params.p_pow(Half::int(-n))? - &rho * params.p_pow(Half::int(-m))?)
        - params.q_pow(nn)?
            * (params.q_pow(Half::int(-n))? - &rho * params.q_pow(Half::int(-m))?);
    if denom.is_zero() {
        return Err(CoreError::Degenerate(format!("χ denominator vanishes at N = {nn}")));
    }
    Ok(denom.recip())
}

/// Witt-form bracket coefficients X̂, Ŷ for the index pair (n, m) at the
/// diagonal eigenvalue N: X̂ = (p−q)·R(p^{n−m},q^{n−m})·χ_{nm}(p,q)·(ω ratio)
/// and Ŷ from χ_{mn}(q,p).
pub fn witt_xy(
    r: &RFunction,
    params: &BaseParams,
    delta: Half,
    n: i64,
    m: i64,
    nn: Half,
) -> Result<(Scalar, Scalar)> {
    if n == m {
        return Err(CoreError::Degenerate("Witt form needs n ≠ m".into()));
    }
    let rv = deformed_number(r, params, Half::int(n - m))?;
    let ratio = omega(r, params, delta, n + m)?
        / (omega(r, params, delta, n)? * omega(r, params, delta, m)?);
    let pmq = params.p() - params.q();
    let xh = &pmq * &rv * chi(params, delta, n, m, nn)? * &ratio;
    let yh = &pmq * &rv * chi(&params.swapped(), delta, m, n, nn)? * &ratio;
    Ok((xh, yh))
}

/// The Witt-form bracket [L_n, B]_{X̂,Ŷ} as a ladder operator, where B is
/// any operator playing the role of L_m (shift m). Coefficient at k:
/// X̂(N(k))·B(k)·L_n(k+m) − Ŷ(N(k))·L_n(k)·B(k+n).
pub fn witt_bracket_with(
    r: &RFunction,
    params: &BaseParams,
    delta: Half,
    n: i64,
    m: i64,
    b: LadderOp,
    convention: DegreeConvention,
) -> Result<LadderOp> {
    if b.shift != m {
        return Err(CoreError::Domain("operand shift does not match index m".into()));
    }
    let ln = generator(r, params, delta, n)?;
    let r = r.clone();
    let params = params.clone();
    Ok(LadderOp::new(n + m, move |k| {
        let nn = convention.eigenvalue(k, n + m, delta);
        let (xh, yh) = witt_xy(&r, &params, delta, n, m, nn)?;
        Ok(xh * b.coeff(k)? * ln.coeff(k + m)? - yh * ln.coeff(k)? * b.coeff(k + n)?)
    }))
}

/// The Witt-form bracket [L_n, L_m]_{X̂,Ŷ} as a ladder operator.
pub fn witt_bracket_op(
    r: &RFunction,
    params: &BaseParams,
    delta: Half,
    n: i64,
    m: i64,
    convention: DegreeConvention,
) -> Result<LadderOp> {
    let lm = generator(r, params, delta, m)?;
    witt_bracket_with(r, params, delta, n, m, lm, convention)
}

/// Residual of the Witt-form bracket
/// X̂·L_n∘L_m − Ŷ·L_m∘L_n − R(p^{n−m},q^{n−m})·L_{n+m} on z^k.
pub fn check_witt_form(
    r: &RFunction,
    params: &BaseParams,
    delta: Half,
    n: i64,
    m: i64,
    k: i64,
    convention: DegreeConvention,
) -> Result<Scalar> {
    let bracket = witt_bracket_op(r, params, delta, n, m, convention)?;
    let rv = deformed_number(r, params, Half::int(n - m))?;
    let lnm = generator(r, params, delta, n + m)?;
    Ok(bracket.coeff(k)? - rv * lnm.coeff(k)?)
}

/// λ = (pq)^{−1/2} and θ = √(p/q); requires a square-root base.
pub fn lambda_theta(params: &BaseParams) -> Result<(Scalar, Scalar)> {
    let (s, t) = params
        .sqrt_pair()
        .ok_or_else(|| CoreError::Domain("λ, θ require a square-root base".into()))?;
    let st = s * t;
    if st.is_zero() {
        return Err(CoreError::DegenerateBase("st = 0".into()));
    }
    Ok((st.recip(), s / t))
}

/// [x]_θ = (θ^x − θ^{−x})/(θ − θ^{−1}).
pub fn theta_number(theta: &Scalar, x: i64) -> Result<Scalar> {
    let denom = theta - theta.recip();
    if denom.is_zero() {
        return Err(CoreError::Degenerate("θ = ±1".into()));
    }
    Ok((crate::scalar::pow_i(theta, x)? - crate::scalar::pow_i(theta, -x)?) / denom)
}

/// Deformed structure constant R(p^{n−m}, q^{n−m}) evaluated at p = 1,
/// q = 1 − ε, exactly; the classical value is n − m.
pub fn classical_limit_probe(family: Family, n: i64, m: i64, epsilon: &Scalar) -> Result<Scalar> {
    if epsilon <= &Scalar::zero() || epsilon >= &crate::scalar::rat(1, 2) {
        return Err(CoreError::Domain("need 0 < ε < 1/2".into()));
    }
    let params = BaseParams::from_pq(
        Scalar::one(),
        Scalar::one() - epsilon,
        Scalar::zero(),
        Scalar::zero(),
        Scalar::one(),
    )?;
    params.family_number(family, Half::int(n - m))
}

/// JS closed form ω_n^Δ = −(pq)^{Δ(n+1)}.
pub fn js_omega_closed(params: &BaseParams, delta: Half, n: i64) -> Result<Scalar> {
    Ok(-params.pq_pow(delta * (n + 1))?)
}

/// (e12): [x]_{p,q} = λ^{1−x}·[x]_θ; returns the two sides.
pub fn e12_sides(params: &BaseParams, x: i64) -> Result<(Scalar, Scalar)> {
    let (lambda, theta) = lambda_theta(params)?;
    let lhs = params.pq_number(Half::int(x))?;
    let rhs = crate::scalar::pow_i(&lambda, 1 - x)? * theta_number(&theta, x)?;
    Ok((lhs, rhs))
}

/// Convenience used by degenerate-point accounting: is the bracket grid
/// point skippable rather than checkable?
pub fn bracket_point_status(
    r: &RFunction,
    params: &BaseParams,
    delta: Half,
    n: i64,
    m: i64,
) -> Option<String> {
    if n == 0 || m == 0 {
        return Some("[n]=0 or [m]=0 denominator".into());
    }
    if delta == Half::int(1) {
        return Some("Δ=1 handled by the Δ=1 module".into());
    }
    for idx in [n, m, n + m] {
        if let Err(e) = omega(r, params, delta, idx) {
            return Some(format!("omega undefined at index {idx}: {e}"));
        }
    }
    None
}

/// Check that the Δ ≠ 1 special-case ω prefactors match the generic ω:
/// e.g. the CJ ratio [Δ(n+1)]_{p⁻¹,q}/[Δ(n+1)]_{p,q}.
pub fn omega_special_case_residual(
    family: Family,
    params: &BaseParams,
    delta: Half,
    n: i64,
) -> Result<Scalar> {
    let x = delta * (n + 1);
    let generic = omega(&RFunction::Builtin(builtin_for(family)), params, delta, n)?;
    let dx = params.pq_number(x)?;
    if dx.is_zero() {
        return Err(CoreError::Degenerate("[Δ(n+1)] = 0".into()));
    }
    let closed = -params.pq_pow(x)? * params.family_number(family, x)? / dx;
    Ok(generic - closed)
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

/// Scalar check used in tests: [d]_{p,q} at p=1, q=1−ε minus d, as an exact
/// rational.
pub fn classical_error(d: i64, epsilon: &Scalar) -> Result<Scalar> {
    let probe = classical_limit_probe(Family::Js, d, 0, epsilon)?;
    Ok(probe - int(d))
}
