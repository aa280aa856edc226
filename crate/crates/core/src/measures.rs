//! Moment providers for systems of bivariate (and univariate) measures.
//!
//! Built-in families store moments relative to the total mass, so `m_0 = 1` and
//! every moment is rational whenever the family parameters are rational.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational, Scalar, ScalarMode, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub enum UnivariateFamily {
    /// `x^alpha e^{-x}` on `(0, inf)`, normalised: `m_k = prod_{i=1..k} (alpha + i)`.
    Laguerre { alpha: Rational },
    /// `x^a` on `[0, 1]`, normalised: `m_k = (a + 1) / (a + k + 1)`.
    Jacobi { a: Rational },
    /// Raw moments `m_0, m_1, ...`.
    Table(Vec<Rational>),
}

impl UnivariateFamily {
    pub fn laguerre(alpha: Rational) -> Result<Self> {
        if alpha.is_negative() {
            return Err(Error::NegativeAlpha {
                path: "alpha".into(),
                value: alpha.to_string(),
            });
        }
        Ok(UnivariateFamily::Laguerre { alpha })
    }

    pub fn jacobi(a: Rational) -> Result<Self> {
        if a <= -Rational::one() {
            return Err(Error::schema(
                "a",
                format!("Jacobi exponent must exceed -1, got {a}"),
            ));
        }
        Ok(UnivariateFamily::Jacobi { a })
    }

    /// The `k`-th moment, or `None` if a raw table is too short.
    pub fn moment(&self, k: u64) -> Option<Rational> {
        match self {
            UnivariateFamily::Laguerre { alpha } => {
                let mut m = Rational::one();
                for i in 1..=k {
                    m *= alpha + Rational::from_integer(BigInt::from(i));
                }
                Some(m)
            }
            UnivariateFamily::Jacobi { a } => {
                let one = Rational::one();
                Some((a + &one) / (a + Rational::from_integer(BigInt::from(k)) + one))
            }
            UnivariateFamily::Table(m) => m.get(k as usize).cloned(),
        }
    }

    /// Density matching the stored (normalised) moments.
    pub fn weight(&self, x: f64) -> Option<f64> {
        match self {
            UnivariateFamily::Laguerre { alpha } => {
                let alpha = ToPrimitive::to_f64(alpha)?;
                if x < 0.0 {
                    return Some(0.0);
                }
                Some(x.powf(alpha) * (-x).exp() / statrs::function::gamma::gamma(alpha + 1.0))
            }
            UnivariateFamily::Jacobi { a } => {
                let a = ToPrimitive::to_f64(a)?;
                if !(0.0..=1.0).contains(&x) {
                    return Some(0.0);
                }
                Some((a + 1.0) * x.powf(a))
            }
            UnivariateFamily::Table(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BivariateMeasure {
    /// Product measure with `m_(t,s) = m^x_t * m^y_s`.
    Tensor {
        x: UnivariateFamily,
        y: UnivariateFamily,
    },
    /// Raw moments keyed by `(t, s)`.
    Table(BTreeMap<(u64, u64), Rational>),
    /// `factor * inner`.
    Scaled {
        factor: Rational,
        inner: Box<BivariateMeasure>,
    },
}

impl BivariateMeasure {
    pub fn tensor(x: UnivariateFamily, y: UnivariateFamily) -> Self {
        BivariateMeasure::Tensor { x, y }
    }

    pub fn scaled(self, factor: Rational) -> Self {
        BivariateMeasure::Scaled {
            factor,
            inner: Box::new(self),
        }
    }

    pub fn moment(&self, t: u64, s: u64) -> Option<Rational> {
        match self {
            BivariateMeasure::Tensor { x, y } => Some(x.moment(t)? * y.moment(s)?),
            BivariateMeasure::Table(m) => m.get(&(t, s)).cloned(),
            BivariateMeasure::Scaled { factor, inner } => Some(factor * inner.moment(t, s)?),
        }
    }

    pub fn weight(&self, x: f64, y: f64) -> Option<f64> {
        match self {
            BivariateMeasure::Tensor { x: fx, y: fy } => Some(fx.weight(x)? * fy.weight(y)?),
            BivariateMeasure::Table(_) => None,
            BivariateMeasure::Scaled { factor, inner } => {
                Some(ToPrimitive::to_f64(factor)? * inner.weight(x, y)?)
            }
        }
    }
}

/// A system of `r >= 1` bivariate measures evaluated in scalar field `S`.
///
/// Moments are memoised; concurrent readers may race to fill the same entry, but
/// every computation of an entry yields the same value.
#[derive(Debug)]
pub struct MeasureSystem<S> {
    measures: Vec<BivariateMeasure>,
    tol: Tolerance,
    cache: RwLock<HashMap<(usize, u64, u64), S>>,
}

impl<S: Scalar> Clone for MeasureSystem<S> {
    fn clone(&self) -> Self {
        MeasureSystem::with_tolerance(self.measures.clone(), self.tol).expect("already validated")
    }
}

impl<S: Scalar> MeasureSystem<S> {
    pub fn new(measures: Vec<BivariateMeasure>) -> Result<Self> {
        Self::with_tolerance(measures, Tolerance::default())
    }

    pub fn with_tolerance(measures: Vec<BivariateMeasure>, tol: Tolerance) -> Result<Self> {
        if measures.is_empty() {
            return Err(Error::schema(
                "$.measures",
                "at least one measure is required",
            ));
        }
        Ok(MeasureSystem {
            measures,
            tol,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn r(&self) -> usize {
        self.measures.len()
    }

    pub fn mode(&self) -> ScalarMode {
        S::MODE
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    pub fn measures(&self) -> &[BivariateMeasure] {
        &self.measures
    }

    /// `m^{(j)}_{(t,s)}` with `j` counted from 0.
    pub fn moment(&self, j: usize, t: u64, s: u64) -> Result<S> {
        if j >= self.r() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.r(),
            });
        }
        if let Some(v) = self.cache.read().unwrap().get(&(j, t, s)) {
            return Ok(v.clone());
        }
        let exact =
            self.measures[j]
                .moment(t, s)
                .ok_or(Error::TableExhausted { measure: j, t, s })?;
        let v = S::from_rational(&exact);
        self.cache
            .write()
            .unwrap()
            .entry((j, t, s))
            .or_insert_with(|| v.clone());
        Ok(v)
    }

    pub fn moment_at(&self, j: usize, ts: (u64, u64)) -> Result<S> {
        self.moment(j, ts.0, ts.1)
    }

    pub fn weight(&self, j: usize, x: f64, y: f64) -> Result<f64> {
        let m = self.measures.get(j).ok_or(Error::IndexOutOfRange {
            index: j,
            len: self.r(),
        })?;
        m.weight(x, y)
            .ok_or(Error::NoWeightEvaluator { measure: j })
    }

    /// Same measures, another scalar field.
    pub fn convert<T: Scalar>(&self) -> MeasureSystem<T> {
        MeasureSystem::with_tolerance(self.measures.clone(), self.tol).expect("already validated")
    }

    /// Copy of the system with measure `j` multiplied by `factor`.
    pub fn with_scaled_measure(&self, j: usize, factor: Rational) -> Self {
        let mut measures = self.measures.clone();
        measures[j] = measures[j].clone().scaled(factor);
        MeasureSystem::with_tolerance(measures, self.tol).expect("already validated")
    }

    pub fn set_tolerance(&mut self, tol: Tolerance) {
        self.tol = tol;
    }
}

/// A system of `r >= 1` univariate measures.
#[derive(Debug)]
pub struct UniSystem<S> {
    families: Vec<UnivariateFamily>,
    tol: Tolerance,
    cache: RwLock<HashMap<(usize, u64), S>>,
}

impl<S: Scalar> Clone for UniSystem<S> {
    fn clone(&self) -> Self {
        UniSystem::with_tolerance(self.families.clone(), self.tol).expect("already validated")
    }
}

impl<S: Scalar> UniSystem<S> {
    pub fn new(families: Vec<UnivariateFamily>) -> Result<Self> {
        Self::with_tolerance(families, Tolerance::default())
    }

    pub fn with_tolerance(families: Vec<UnivariateFamily>, tol: Tolerance) -> Result<Self> {
        if families.is_empty() {
            return Err(Error::schema(
                "$",
                "at least one univariate measure is required",
            ));
        }
        Ok(UniSystem {
            families,
            tol,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn r(&self) -> usize {
        self.families.len()
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    pub fn families(&self) -> &[UnivariateFamily] {
        &self.families
    }

    pub fn moment(&self, j: usize, k: u64) -> Result<S> {
        if j >= self.r() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.r(),
            });
        }
        if let Some(v) = self.cache.read().unwrap().get(&(j, k)) {
            return Ok(v.clone());
        }
        let exact = self.families[j].moment(k).ok_or(Error::TableExhausted {
            measure: j,
            t: k,
            s: 0,
        })?;
        let v = S::from_rational(&exact);
        self.cache
            .write()
            .unwrap()
            .entry((j, k))
            .or_insert_with(|| v.clone());
        Ok(v)
    }

    pub fn convert<T: Scalar>(&self) -> UniSystem<T> {
        UniSystem::with_tolerance(self.families.clone(), self.tol).expect("already validated")
    }
}

/// A parsed bivariate measure config, not yet bound to a scalar field.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    pub mode: ScalarMode,
    pub measures: Vec<BivariateMeasure>,
}

/// A measure system in whichever scalar mode its config requested.
#[derive(Debug, Clone)]
pub enum AnySystem {
    Exact(MeasureSystem<Rational>),
    Float(MeasureSystem<f64>),
}

impl SystemConfig {
    pub fn build<S: Scalar>(&self) -> Result<MeasureSystem<S>> {
        MeasureSystem::new(self.measures.clone())
    }

    pub fn into_system(self) -> Result<AnySystem> {
        Ok(match self.mode {
            ScalarMode::Exact => AnySystem::Exact(MeasureSystem::new(self.measures)?),
            ScalarMode::Float64 => AnySystem::Float(MeasureSystem::new(self.measures)?),
        })
    }
}

/// Two lists of univariate families, one per axis, for product systems.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductConfig {
    pub mode: ScalarMode,
    pub x: Vec<UnivariateFamily>,
    pub y: Vec<UnivariateFamily>,
}

/// Parses a bivariate measure-system config.
///
/// ```json
/// { "scalar": "exact",
///   "measures": [ { "kind": "tensor",
///                   "x": {"family": "laguerre", "alpha": "1"},
///                   "y": {"family": "jacobi", "a": "1/2"} },
///                 { "kind": "table", "moments": [ {"t": 0, "s": 0, "value": "1"} ] } ] }
/// ```
pub fn parse_config(text: &str) -> Result<SystemConfig> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::schema("$", e.to_string()))?;
    let root = as_object(&doc, "$")?;
    let mode = parse_mode(root.get("scalar"))?;
    let list = root
        .get("measures")
        .ok_or_else(|| Error::schema("$.measures", "missing"))?
        .as_array()
        .ok_or_else(|| Error::schema("$.measures", "expected an array"))?;
    if list.is_empty() {
        return Err(Error::schema(
            "$.measures",
            "at least one measure is required",
        ));
    }
    let measures = list
        .iter()
        .enumerate()
        .map(|(i, m)| parse_bivariate(m, &format!("$.measures[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(SystemConfig { mode, measures })
}

/// Parses a product config: `{"scalar": ..., "x": [family, ...], "y": [family, ...]}`.
pub fn parse_product_config(text: &str) -> Result<ProductConfig> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::schema("$", e.to_string()))?;
    let root = as_object(&doc, "$")?;
    let mode = parse_mode(root.get("scalar"))?;
    let axis = |key: &str| -> Result<Vec<UnivariateFamily>> {
        let path = format!("$.{key}");
        let list = root
            .get(key)
            .ok_or_else(|| Error::schema(&path, "missing"))?
            .as_array()
            .ok_or_else(|| Error::schema(&path, "expected an array"))?;
        if list.is_empty() {
            return Err(Error::schema(&path, "at least one family is required"));
        }
        list.iter()
            .enumerate()
            .map(|(i, f)| parse_family(f, &format!("{path}[{i}]")))
            .collect()
    };
    Ok(ProductConfig {
        mode,
        x: axis("x")?,
        y: axis("y")?,
    })
}

fn parse_mode(v: Option<&Value>) -> Result<ScalarMode> {
    match v {
        None => Ok(ScalarMode::Exact),
        Some(Value::String(s)) if s == "exact" => Ok(ScalarMode::Exact),
        Some(Value::String(s)) if s == "float64" => Ok(ScalarMode::Float64),
        Some(other) => Err(Error::schema(
            "$.scalar",
            format!("expected \"exact\" or \"float64\", got {other}"),
        )),
    }
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a serde_json::Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::schema(path, "expected an object"))
}

fn rational_field(obj: &serde_json::Map<String, Value>, key: &str, path: &str) -> Result<Rational> {
    let path = format!("{path}.{key}");
    match obj.get(key) {
        Some(Value::String(s)) => {
            parse_rational(s).map_err(|_| Error::schema(&path, format!("invalid rational {s:?}")))
        }
        Some(Value::Number(n)) if n.is_i64() || n.is_u64() => {
            parse_rational(&n.to_string()).map_err(|_| Error::schema(&path, "invalid number"))
        }
        Some(Value::Number(_)) => Err(Error::schema(
            &path,
            "non-integer numbers must be given as strings",
        )),
        Some(_) => Err(Error::schema(&path, "expected a rational string")),
        None => Err(Error::schema(&path, "missing")),
    }
}

fn natural_field(obj: &serde_json::Map<String, Value>, key: &str, path: &str) -> Result<u64> {
    obj.get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::schema(format!("{path}.{key}"), "expected a natural number"))
}

fn parse_family(v: &Value, path: &str) -> Result<UnivariateFamily> {
    let obj = as_object(v, path)?;
    let family = obj
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::schema(format!("{path}.family"), "missing family name"))?;
    match family {
        "laguerre" => {
            let alpha = rational_field(obj, "alpha", path)?;
            if alpha.is_negative() {
                return Err(Error::NegativeAlpha {
                    path: format!("{path}.alpha"),
                    value: alpha.to_string(),
                });
            }
            Ok(UnivariateFamily::Laguerre { alpha })
        }
        "jacobi" => {
            let a = rational_field(obj, "a", path)?;
            UnivariateFamily::jacobi(a)
                .map_err(|_| Error::schema(format!("{path}.a"), "must exceed -1"))
        }
        "table" => {
            let list = obj
                .get("moments")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::schema(format!("{path}.moments"), "expected an array"))?;
            let moments = list
                .iter()
                .enumerate()
                .map(|(i, m)| match m {
                    Value::String(s) => parse_rational(s).map_err(|_| {
                        Error::schema(
                            format!("{path}.moments[{i}]"),
                            format!("invalid rational {s:?}"),
                        )
                    }),
                    Value::Number(n) if n.is_i64() || n.is_u64() => Ok(Rational::from_integer(
                        BigInt::from(n.as_i64().unwrap_or(0)),
                    )),
                    _ => Err(Error::schema(
                        format!("{path}.moments[{i}]"),
                        "expected a rational string",
                    )),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(UnivariateFamily::Table(moments))
        }
        other => Err(Error::schema(
            format!("{path}.family"),
            format!("unknown family {other:?}"),
        )),
    }
}

fn parse_bivariate(v: &Value, path: &str) -> Result<BivariateMeasure> {
    let obj = as_object(v, path)?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::schema(format!("{path}.kind"), "missing measure kind"))?;
    match kind {
        "tensor" => {
            let x = parse_family(
                obj.get("x")
                    .ok_or_else(|| Error::schema(format!("{path}.x"), "missing"))?,
                &format!("{path}.x"),
            )?;
            let y = parse_family(
                obj.get("y")
                    .ok_or_else(|| Error::schema(format!("{path}.y"), "missing"))?,
                &format!("{path}.y"),
            )?;
            Ok(BivariateMeasure::Tensor { x, y })
        }
        "table" => {
            let list = obj
                .get("moments")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::schema(format!("{path}.moments"), "expected an array"))?;
            let mut table = BTreeMap::new();
            for (i, entry) in list.iter().enumerate() {
                let epath = format!("{path}.moments[{i}]");
                let e = as_object(entry, &epath)?;
                let t = natural_field(e, "t", &epath)?;
                let s = natural_field(e, "s", &epath)?;
                let value = rational_field(e, "value", &epath)?;
                if table.insert((t, s), value).is_some() {
                    return Err(Error::schema(epath, format!("duplicate moment ({t},{s})")));
                }
            }
            Ok(BivariateMeasure::Table(table))
        }
        other => Err(Error::schema(
            format!("{path}.kind"),
            format!("unknown measure kind {other:?}"),
        )),
    }
}

/// Laguerre family with `alpha` given as a literal such as `"2.2"` or `"11/5"`.
pub fn laguerre(alpha: &str) -> UnivariateFamily {
    UnivariateFamily::laguerre(parse_rational(alpha).expect("valid literal")).expect("alpha >= 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn lag_sys() -> MeasureSystem<Rational> {
        MeasureSystem::new(vec![BivariateMeasure::tensor(
            laguerre("1"),
            laguerre("23/10"),
        )])
        .unwrap()
    }

    #[test]
    fn tensor_moments() {
        let s = lag_sys();
        assert_eq!(s.moment(0, 0, 0).unwrap(), rational(1, 1));
        assert_eq!(s.moment(0, 1, 0).unwrap(), rational(2, 1));
        assert_eq!(s.moment(0, 0, 1).unwrap(), rational(33, 10));
        assert_eq!(s.moment(0, 2, 1).unwrap(), rational(6 * 33, 10));
    }

    #[test]
    fn out_of_range_and_exhausted() {
        let s = lag_sys();
        assert!(matches!(
            s.moment(1, 0, 0),
            Err(Error::IndexOutOfRange { index: 1, len: 1 })
        ));
        let t = MeasureSystem::<Rational>::new(vec![BivariateMeasure::tensor(
            UnivariateFamily::Table(vec![rational(1, 1), rational(2, 1), rational(6, 1)]),
            laguerre("0"),
        )])
        .unwrap();
        assert_eq!(t.moment(0, 2, 3).unwrap(), rational(36, 1));
        assert!(matches!(
            t.moment(0, 3, 0),
            Err(Error::TableExhausted {
                measure: 0,
                t: 3,
                s: 0
            })
        ));
    }

    #[test]
    fn jacobi_moments() {
        let f = UnivariateFamily::jacobi(rational(1, 2)).unwrap();
        assert_eq!(f.moment(0).unwrap(), rational(1, 1));
        assert_eq!(f.moment(1).unwrap(), rational(3, 5));
        assert!(UnivariateFamily::jacobi(rational(-1, 1)).is_err());
    }

    #[test]
    fn laguerre_negative_alpha() {
        assert!(matches!(
            UnivariateFamily::laguerre(rational(-1, 2)),
            Err(Error::NegativeAlpha { .. })
        ));
    }

    #[test]
    fn float_weights() {
        let w = laguerre("1").weight(2.0).unwrap();
        assert!((w - 2.0 * (-2.0f64).exp()).abs() < 1e-15);
        assert_eq!(laguerre("1").weight(-1.0), Some(0.0));
        let j = UnivariateFamily::jacobi(rational(0, 1)).unwrap();
        assert_eq!(j.weight(0.3), Some(1.0));
        assert_eq!(j.weight(1.3), Some(0.0));
        assert_eq!(UnivariateFamily::Table(vec![]).weight(0.5), None);
    }

    #[test]
    fn config_product_laguerre() {
        let text = r#"{"scalar":"exact","measures":[
            {"kind":"tensor","x":{"family":"laguerre","alpha":"1"},"y":{"family":"laguerre","alpha":"2.3"}},
            {"kind":"tensor","x":{"family":"laguerre","alpha":"1"},"y":{"family":"laguerre","alpha":"3.4"}},
            {"kind":"tensor","x":{"family":"laguerre","alpha":"2.2"},"y":{"family":"laguerre","alpha":"2.3"}},
            {"kind":"tensor","x":{"family":"laguerre","alpha":"2.2"},"y":{"family":"laguerre","alpha":"3.4"}}]}"#;
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.measures.len(), 4);
        assert_eq!(cfg.mode, ScalarMode::Exact);
        match &cfg.measures[2] {
            BivariateMeasure::Tensor {
                x: UnivariateFamily::Laguerre { alpha },
                ..
            } => {
                assert_eq!(alpha, &rational(11, 5))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn config_errors_carry_paths() {
        let err = parse_config(r#"{"measures":[]}"#).unwrap_err();
        assert!(matches!(&err, Error::Schema { path, .. } if path == "$.measures"));
        let err = parse_config(
            r#"{"measures":[{"kind":"tensor","x":{"family":"laguerre","alpha":"-1"},"y":{"family":"laguerre","alpha":"1"}}]}"#,
        )
        .unwrap_err();
        assert!(
            matches!(&err, Error::NegativeAlpha { path, .. } if path == "$.measures[0].x.alpha")
        );
        let err =
            parse_config(r#"{"measures":[{"kind":"tensor","x":{"family":"hermite"},"y":{}}]}"#)
                .unwrap_err();
        assert!(matches!(&err, Error::Schema { path, .. } if path == "$.measures[0].x.family"));
        let err = parse_config(r#"{"scalar":"f32","measures":[]}"#).unwrap_err();
        assert!(matches!(&err, Error::Schema { path, .. } if path == "$.scalar"));
        let err =
            parse_config(r#"{"measures":[{"kind":"table","moments":[{"t":0,"value":"1"}]}]}"#)
                .unwrap_err();
        assert!(matches!(&err, Error::Schema { path, .. } if path == "$.measures[0].moments[0].s"));
    }

    #[test]
    fn config_table_measure() {
        let cfg = parse_config(
            r#"{"scalar":"float64","measures":[{"kind":"table","moments":[{"t":0,"s":0,"value":"1"},{"t":1,"s":0,"value":"1/2"}]}]}"#,
        )
        .unwrap();
        assert_eq!(cfg.mode, ScalarMode::Float64);
        let AnySystem::Float(sys) = cfg.into_system().unwrap() else {
            panic!("float")
        };
        assert_eq!(sys.moment(0, 1, 0).unwrap(), 0.5);
        assert!(matches!(
            sys.moment(0, 0, 1),
            Err(Error::TableExhausted { .. })
        ));
        assert!(matches!(
            sys.weight(0, 0.0, 0.0),
            Err(Error::NoWeightEvaluator { measure: 0 })
        ));
    }

    #[test]
    fn product_config() {
        let cfg = parse_product_config(
            r#"{"x":[{"family":"laguerre","alpha":"1"},{"family":"laguerre","alpha":"2.2"}],
                "y":[{"family":"table","moments":["1","2",6]}]}"#,
        )
        .unwrap();
        assert_eq!(cfg.x.len(), 2);
        assert_eq!(
            cfg.y[0],
            UnivariateFamily::Table(vec![rational(1, 1), rational(2, 1), rational(6, 1)])
        );
        assert!(parse_product_config(r#"{"x":[],"y":[]}"#).is_err());
    }
}
