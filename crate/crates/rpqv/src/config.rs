//! Run configuration: an INI-style sectioned key=value file (TOML syntax)
//! describing the deformation, the exact base, the sweep grid, the check
//! list, and the output target.

use rpq_core::rexpr::{parse_r, BuiltinR, RFunction};
use rpq_core::scalar::{BaseParams, Half, Scalar};
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawConfig {
    pub deformation: DeformationSection,
    pub base: BaseSection,
    pub grid: GridSection,
    pub checks: ChecksSection,
    #[serde(default)]
    pub options: OptionsSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeformationSection {
    #[serde(default)]
    pub builtin: Option<String>,
    #[serde(default)]
    pub expression: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BaseSection {
    pub s: String,
    pub t: String,
    #[serde(default = "one")]
    pub mu: String,
    #[serde(default = "one")]
    pub nu: String,
    #[serde(default = "one")]
    pub g: String,
}

fn one() -> String {
    "1".into()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridSection {
    pub delta: Vec<String>,
    pub n: [i64; 2],
    pub m: [i64; 2],
    pub k: [i64; 2],
    #[serde(default)]
    pub degree: [i64; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChecksSection {
    pub ids: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptionsSection {
    /// "output" (the verified reading) or "input" (demonstrably wrong)
    #[serde(default = "default_convention")]
    pub convention: String,
    /// overall normalization constant for central quantities
    #[serde(default = "one")]
    pub c: String,
}

impl Default for OptionsSection {
    fn default() -> Self {
        OptionsSection { convention: default_convention(), c: one() }
    }
}

fn default_convention() -> String {
    "output".into()
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct OutputSection {
    #[serde(default)]
    pub path: Option<String>,
    #[serde(default)]
    pub format: Option<String>,
}

/// The validated configuration with all rationals parsed exactly.
pub struct RunConfig {
    pub raw: RawConfig,
    pub r: RFunction,
    pub builtin: Option<BuiltinR>,
    pub params: BaseParams,
    pub deltas: Vec<Half>,
    pub c: Scalar,
    pub input_convention: bool,
}

pub fn parse_rational(field: &str, text: &str) -> Result<Scalar, ConfigError> {
    text.trim()
        .parse::<Scalar>()
        .map_err(|_| ConfigError(format!("field `{field}`: invalid rational `{text}`")))
}

pub fn parse_half(field: &str, text: &str) -> Result<Half, ConfigError> {
    let v = parse_rational(field, text)?;
    let twice = v * rpq_core::scalar::int(2);
    if !twice.is_integer() {
        return Err(ConfigError(format!("field `{field}`: `{text}` is not a half-integer")));
    }
    let big = twice.to_integer();
    let small: i64 = i64::try_from(&big)
        .map_err(|_| ConfigError(format!("field `{field}`: `{text}` out of range")))?;
    Ok(Half::halves(small))
}

pub fn load_config(path: &str) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read `{path}`: {e}")))?;
    let raw: RawConfig =
        toml::from_str(&text).map_err(|e| ConfigError(format!("in `{path}`: {e}")))?;
    validate(raw)
}

pub fn validate(raw: RawConfig) -> Result<RunConfig, ConfigError> {
    let (r, builtin) = match (&raw.deformation.builtin, &raw.deformation.expression) {
        (Some(name), None) => {
            let b = BuiltinR::from_name(name).ok_or_else(|| {
                ConfigError(format!("field `deformation.builtin`: unknown builtin `{name}`"))
            })?;
            (RFunction::Builtin(b), Some(b))
        }
        (None, Some(expr)) => {
            let ast = parse_r(expr).map_err(|e| {
                ConfigError(format!("field `deformation.expression`: {e}"))
            })?;
            (RFunction::Custom(ast), None)
        }
        _ => {
            return Err(ConfigError(
                "section `deformation`: exactly one of `builtin` or `expression` required".into(),
            ))
        }
    };
    let s = parse_rational("base.s", &raw.base.s)?;
    let t = parse_rational("base.t", &raw.base.t)?;
    let mu = parse_rational("base.mu", &raw.base.mu)?;
    let nu = parse_rational("base.nu", &raw.base.nu)?;
    let g = parse_rational("base.g", &raw.base.g)?;
    let params = BaseParams::from_sqrt(s, t, mu, nu, g)
        .map_err(|e| ConfigError(format!("section `base`: {e}")))?;
    let mut deltas = Vec::new();
    for d in &raw.grid.delta {
        deltas.push(parse_half("grid.delta", d)?);
    }
    for (field, range) in
        [("grid.n", raw.grid.n), ("grid.m", raw.grid.m), ("grid.k", raw.grid.k), ("grid.degree", raw.grid.degree)]
    {
        if range[0] > range[1] {
            return Err(ConfigError(format!("field `{field}`: empty range {range:?}")));
        }
    }
    let input_convention = match raw.options.convention.as_str() {
        "output" => false,
        "input" => true,
        other => {
            return Err(ConfigError(format!(
                "field `options.convention`: expected `output` or `input`, got `{other}`"
            )))
        }
    };
    let c = parse_rational("options.c", &raw.options.c)?;
    Ok(RunConfig { raw, r, builtin, params, deltas, c, input_convention })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(toml_text: &str) -> RawConfig {
        toml::from_str(toml_text).unwrap()
    }

    fn verr(cfg: RawConfig) -> ConfigError {
        match validate(cfg) {
            Err(e) => e,
            Ok(_) => panic!("expected validation error"),
        }
    }

    const BASE: &str = r#"
[deformation]
builtin = "JS"
[base]
s = "1/2"
t = "1/3"
[grid]
delta = ["2"]
n = [-1, 1]
m = [-1, 1]
k = [0, 0]
[checks]
ids = ["bracket_P1"]
"#;

    #[test]
    fn malformed_rational_names_field() {
        let err = parse_rational("base.s", "2//3").unwrap_err();
        assert!(err.0.contains("base.s") && err.0.contains("2//3"), "{err}");
        let mut cfg = raw(BASE);
        cfg.base.t = "2//3".into();
        let err = verr(cfg);
        assert!(err.0.contains("base.t"), "{err}");
    }

    #[test]
    fn half_integer_deltas() {
        assert_eq!(parse_half("grid.delta", "1/2").unwrap(), Half::halves(1));
        assert_eq!(parse_half("grid.delta", "3").unwrap(), Half::int(3));
        let err = parse_half("grid.delta", "1/3").unwrap_err();
        assert!(err.0.contains("grid.delta"), "{err}");
    }

    #[test]
    fn validate_catches_bad_sections() {
        let mut cfg = raw(BASE);
        cfg.options.convention = "sideways".into();
        assert!(verr(cfg).0.contains("options.convention"));
        let mut cfg = raw(BASE);
        cfg.deformation.builtin = None;
        assert!(verr(cfg).0.contains("deformation"));
        let mut cfg = raw(BASE);
        cfg.deformation = DeformationSection {
            builtin: None,
            expression: Some("(u - v)/(p - q)".into()),
        };
        assert!(validate(cfg).is_ok());
        let mut cfg = raw(BASE);
        cfg.grid.n = [2, -2];
        assert!(verr(cfg).0.contains("grid.n"));
    }

    #[test]
    fn unknown_builtin_rejected() {
        let mut cfg = raw(BASE);
        cfg.deformation.builtin = Some("NOPE".into());
        assert!(verr(cfg).0.contains("NOPE"));
    }
}
