//! Nearest neighbour recurrences for Type II polynomials, Type I functions and
//! Type II vectors.
//!
//! Every coefficient is computed from a pairing `<x P_n, Q_{m_i}>` (or
//! `<x Q_n, P_{m_k}>`), and the expansion is then re-assembled and subtracted
//! from the product coefficient by coefficient. Paths are always extended down
//! to the zero index so the coefficients that the recurrences claim vanish are
//! computed and checked too.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::measures::MeasureSystem;
use crate::mop::{inner, Mops};
use crate::multiindex::{canonical_path, MultiIndex, Path};
use crate::poly::BiPoly;
use crate::relations::vector::chain_degree;
use crate::scalar::{negligible, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn apply<S: Scalar>(self, p: &BiPoly<S>) -> BiPoly<S> {
        match self {
            Axis::X => p.mul_x(),
            Axis::Y => p.mul_y(),
        }
    }

    /// Extra modulus beyond `|n| + d_n` reached by the product.
    fn lift(self) -> u64 {
        match self {
            Axis::X => 1,
            Axis::Y => 2,
        }
    }
}

impl std::str::FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            _ => Err(Error::schema(
                "axis",
                format!("expected \"x\" or \"y\", got {s:?}"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variant {
    #[serde(rename = "xP")]
    XP,
    #[serde(rename = "yP")]
    YP,
    #[serde(rename = "xQ")]
    XQ,
    #[serde(rename = "yQ")]
    YQ,
    #[serde(rename = "vector-x")]
    VectorX,
    #[serde(rename = "vector-y")]
    VectorY,
}

impl Variant {
    fn type2(axis: Axis) -> Self {
        match axis {
            Axis::X => Variant::XP,
            Axis::Y => Variant::YP,
        }
    }

    fn type1(axis: Axis) -> Self {
        match axis {
            Axis::X => Variant::XQ,
            Axis::Y => Variant::YQ,
        }
    }

    fn vector(axis: Axis) -> Self {
        match axis {
            Axis::X => Variant::VectorX,
            Axis::Y => Variant::VectorY,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Coefficient<S> {
    pub modulus: u64,
    pub value: S,
}

/// A coefficient block `A_h` of the vector recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct Block<S> {
    pub degree: u64,
    pub matrix: Matrix<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NnrReport<S> {
    pub variant: Variant,
    pub index: MultiIndex,
    /// Full path from the zero index, as used.
    pub path: Path,
    /// `w` for Type II, the low path entry for Type I.
    pub target: Option<MultiIndex>,
    /// Coefficients over the range the recurrence keeps.
    pub coefficients: Vec<Coefficient<S>>,
    /// Coefficients below that range; each must vanish.
    pub vanishing: Vec<Coefficient<S>>,
    pub vanishing_holds: bool,
    /// Type I only: coefficient of the low path entry and whether it equals 1.
    pub low_coefficient: Option<S>,
    pub low_unit: Option<bool>,
    /// One polynomial per identity (per measure for Type I, per row for vectors).
    pub residual: Vec<BiPoly<S>>,
    pub residual_zero: bool,
    /// Vector variant only.
    pub blocks: Vec<Block<S>>,
    pub leading_is_l: Option<bool>,
    pub rows_consistent: Option<bool>,
    pub holds: bool,
}

impl<S: Scalar> NnrReport<S> {
    fn new(variant: Variant, index: MultiIndex, path: Path) -> Self {
        NnrReport {
            variant,
            index,
            path,
            target: None,
            coefficients: Vec::new(),
            vanishing: Vec::new(),
            vanishing_holds: true,
            low_coefficient: None,
            low_unit: None,
            residual: Vec::new(),
            residual_zero: true,
            blocks: Vec::new(),
            leading_is_l: None,
            rows_consistent: None,
            holds: false,
        }
    }

    pub fn to_json(&self) -> Value {
        let coeffs = |cs: &[Coefficient<S>]| -> Value {
            cs.iter()
                .map(|c| json!({"modulus": c.modulus, "value": c.value.to_literal()}))
                .collect()
        };
        let residual = if self.residual_zero {
            json!("0")
        } else {
            Value::Array(self.residual.iter().map(|p| json!(p.to_json())).collect())
        };
        let mut v = json!({
            "variant": self.variant,
            "holds": self.holds,
            "index": self.index,
            "path": self.path,
            "coefficients": coeffs(&self.coefficients),
            "residual": residual,
        });
        let obj = v.as_object_mut().expect("object literal");
        if let Some(t) = &self.target {
            obj.insert("target".into(), json!(t));
        }
        obj.insert(
            "vanishing".into(),
            json!({"holds": self.vanishing_holds, "coefficients": coeffs(&self.vanishing)}),
        );
        if let Some(c) = &self.low_coefficient {
            obj.insert("low_coefficient".into(), json!(c.to_literal()));
            obj.insert("low_unit".into(), json!(self.low_unit));
        }
        if !self.blocks.is_empty() {
            let blocks: Vec<Value> = self
                .blocks
                .iter()
                .map(|b| json!({"degree": b.degree, "matrix": b.matrix.to_literal_rows()}))
                .collect();
            obj.insert("blocks".into(), Value::Array(blocks));
            obj.insert("leading_is_l".into(), json!(self.leading_is_l));
            obj.insert("rows_consistent".into(), json!(self.rows_consistent));
        }
        v
    }
}

fn max_abs<S: Scalar>(p: &BiPoly<S>) -> f64 {
    p.coeffs()
        .iter()
        .map(|c| c.to_f64().abs())
        .fold(0.0, f64::max)
}

fn poly_negligible<S: Scalar>(p: &BiPoly<S>, scale: f64) -> bool {
    p.coeffs().iter().all(|c| negligible(c, scale))
}

/// Resolves a user path: validates it, checks it visits `must` at their moduli,
/// and extends it down to the zero index.
fn full_path(path: Path, must: &[&MultiIndex]) -> Result<Path> {
    for m in must {
        if path.at_modulus(m.modulus()) != Some(*m) {
            return Err(Error::PathInvalid(format!("path does not visit {m}")));
        }
    }
    Ok(path.extended_from_zero())
}

fn require_reach(path: &Path, modulus: u64) -> Result<&MultiIndex> {
    path.at_modulus(modulus).ok_or_else(|| {
        Error::PathInvalid(format!(
            "path ends at modulus {}, needs {modulus}",
            path.end_modulus()
        ))
    })
}

/// Expansion of `axis * P_n` over `P_{m_0}, ..., P_{m_{|w|}}` along a path from zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion<S> {
    pub w: MultiIndex,
    /// `a_i = <axis * P_n, Q_{m_{i+1}}>` for `i < |w|`.
    pub coefficients: Vec<S>,
    pub residual: BiPoly<S>,
    pub residual_zero: bool,
}

/// Expands `axis * P_n` without any precondition on `n`; the path must start at
/// zero, visit `n` and reach modulus `|n| + d_n + 1` (x) or `+ 2` (y).
pub fn expand_type2<S: Scalar>(
    mops: &Mops<'_, S>,
    n: &MultiIndex,
    axis: Axis,
    path: &Path,
) -> Result<Expansion<S>> {
    if path.start_modulus() != 0 || path.at_modulus(n.modulus()) != Some(n) {
        return Err(Error::PathInvalid(format!(
            "path must start at zero and visit {n}"
        )));
    }
    let top = n.modulus() + n.params().degree + axis.lift();
    let w = require_reach(path, top)?.clone();
    let prod = axis.apply(&mops.type2(n)?);
    let scale = max_abs(&prod);
    let mut coefficients = Vec::with_capacity(top as usize);
    let mut residual = prod.sub(&mops.type2(&w)?);
    for i in 1..=top {
        let mi = &path.steps()[i as usize];
        let a = mops.pairing(&prod, mi)?;
        residual = residual.axpy(&-a.clone(), &mops.type2(&path.steps()[i as usize - 1])?);
        coefficients.push(a);
    }
    let residual_zero = poly_negligible(&residual, scale);
    Ok(Expansion {
        w,
        coefficients,
        residual,
        residual_zero,
    })
}

/// Recurrence for `x P_n` (or `y P_n`) over a neighbour path through `v`, `n` and `w`,
/// where `v = n - (d_n + 1)(1, ..., 1)`.
///
/// Defaults: `w = n + (d_n + 1) e_1` for x and `n + (d_n + 2) e_1` for y, and the
/// canonical path through `v`, `n`, `w`. When only a path is given, `w` is its entry
/// at the target modulus.
pub fn nnr_type2<S: Scalar>(
    sys: &MeasureSystem<S>,
    n: &MultiIndex,
    axis: Axis,
    path: Option<Path>,
    w: Option<MultiIndex>,
) -> Result<NnrReport<S>> {
    nnr_type2_cached(&Mops::new(sys), n, axis, path, w)
}

pub(crate) fn nnr_type2_cached<S: Scalar>(
    mops: &Mops<'_, S>,
    n: &MultiIndex,
    axis: Axis,
    path: Option<Path>,
    w: Option<MultiIndex>,
) -> Result<NnrReport<S>> {
    let d = n.params().degree;
    if let Some(j) = n.components().iter().position(|&c| c <= d) {
        return Err(Error::IndexTooSmall {
            index: n.clone(),
            component: j + 1,
            degree: d,
        });
    }
    let v = n
        .checked_sub_scalar(d + 1)
        .expect("components exceed the degree");
    let top = n.modulus() + d + axis.lift();
    let path = match path {
        Some(p) => {
            let mut must = vec![&v, n];
            if let Some(w) = &w {
                must.push(w);
            }
            full_path(p, &must)?
        }
        None => {
            let w = w.clone().unwrap_or_else(|| n.bump(0, d + axis.lift()));
            canonical_path(&[v.clone(), n.clone(), w])?.extended_from_zero()
        }
    };
    if let Some(w) = &w {
        if w.modulus() != top {
            return Err(Error::PathInvalid(format!(
                "|w| = {} but the recurrence needs {top}",
                w.modulus()
            )));
        }
    }
    let exp = expand_type2(mops, n, axis, &path)?;
    let lo = v.modulus();
    let scale = max_abs(&axis.apply(&mops.type2(n)?));
    let tagged = |range: std::ops::Range<u64>| -> Vec<Coefficient<S>> {
        range
            .map(|i| Coefficient {
                modulus: i,
                value: exp.coefficients[i as usize].clone(),
            })
            .collect()
    };
    let mut rep = NnrReport::new(
        Variant::type2(axis),
        n.clone(),
        path.slice_moduli(0, top).expect("reaches top"),
    );
    rep.target = Some(exp.w.clone());
    rep.coefficients = tagged(lo..top);
    rep.vanishing = tagged(0..lo);
    rep.vanishing_holds = rep.vanishing.iter().all(|c| negligible(&c.value, scale));
    rep.residual_zero = exp.residual_zero;
    rep.residual = vec![exp.residual];
    rep.holds = rep.residual_zero && rep.vanishing_holds;
    Ok(rep)
}

/// Recurrence for `x Q_n` (or `y Q_n`), checked measure by measure:
/// `axis * A_{n,j} = sum_k c_k A_{m_k, j}` for every `j`, with
/// `c_{l+1} = <axis * Q_n, P_{m_l}>`.
///
/// The path must visit `n` and end at `n + (d_n + 1)(1, ..., 1)` for x, or
/// `n + (d_n + 2)(1, ..., 1)` for y. The default is the canonical path through
/// the zero index, `n` and that end point.
pub fn nnr_type1<S: Scalar>(
    sys: &MeasureSystem<S>,
    n: &MultiIndex,
    axis: Axis,
    path: Option<Path>,
) -> Result<NnrReport<S>> {
    if n.modulus() == 0 {
        return Err(Error::EmptyIndex);
    }
    let mops = Mops::new(sys);
    let r = n.len() as u64;
    let d = n.params().degree;
    let lift = d + axis.lift();
    let end = n.plus(&MultiIndex::constant(n.len(), lift));
    let top = n.modulus() + lift * r;
    // modulus of the entry whose coefficient the recurrence fixes to 1
    let low = (n.modulus() + 1).checked_sub(lift);
    let path = match path {
        Some(p) => {
            let start_ok = p.start_modulus() <= low.unwrap_or(0);
            if !start_ok {
                return Err(Error::PathInvalid(format!(
                    "path must start at or below modulus {}",
                    low.unwrap_or(0)
                )));
            }
            full_path(p, &[n, &end])?
        }
        None => canonical_path(&[MultiIndex::zeros(n.len()), n.clone(), end.clone()])?,
    };
    let path = path
        .slice_moduli(0, top)
        .ok_or_else(|| Error::PathInvalid("path too short".into()))?;
    let set = mops.type1(n)?;
    let products: Vec<BiPoly<S>> = set.polys.iter().map(|a| axis.apply(a)).collect();
    let scale = products.iter().map(max_abs).fold(0.0, f64::max);
    // c[k] is the coefficient of Q_{m_k}, k = 1..=top
    let mut c = vec![S::zero(); top as usize + 1];
    for l in 0..top {
        let p = mops.type2(&path.steps()[l as usize])?;
        let mut acc = S::zero();
        for (j, xa) in products.iter().enumerate() {
            acc = acc + inner(mops.system(), j, xa, &p)?;
        }
        c[l as usize + 1] = acc;
    }
    let mut residual = products.clone();
    for k in 1..=top {
        let ak = mops.type1(&path.steps()[k as usize])?;
        for (res, a) in residual.iter_mut().zip(&ak.polys) {
            *res = res.axpy(&-c[k as usize].clone(), a);
        }
    }
    let first_kept = low.unwrap_or(0).max(1);
    let tagged = |range: std::ops::RangeInclusive<u64>| -> Vec<Coefficient<S>> {
        range
            .map(|k| Coefficient {
                modulus: k,
                value: c[k as usize].clone(),
            })
            .collect()
    };
    let mut rep = NnrReport::new(Variant::type1(axis), n.clone(), path.clone());
    rep.target = low.map(|l| path.steps()[l as usize].clone());
    rep.coefficients = tagged(first_kept..=top);
    rep.vanishing = if first_kept > 1 {
        tagged(1..=first_kept - 1)
    } else {
        Vec::new()
    };
    rep.vanishing_holds = rep.vanishing.iter().all(|c| negligible(&c.value, scale));
    // Q at the zero index vanishes identically, so a low entry there carries no coefficient.
    if let Some(l) = low.filter(|&l| l >= 1) {
        let v = c[l as usize].clone();
        rep.low_unit = Some(negligible(&(v.clone() - S::one()), scale));
        rep.low_coefficient = Some(v);
    }
    rep.residual_zero = residual.iter().all(|p| poly_negligible(p, scale));
    rep.residual = residual;
    rep.holds = rep.residual_zero && rep.vanishing_holds && rep.low_unit.unwrap_or(true);
    Ok(rep)
}

/// Expresses `p` in the monic basis `basis[i]` (top position `i`) by peeling off
/// the top coefficient repeatedly. Uses no pairings.
fn peel<S: Scalar>(p: &BiPoly<S>, basis: &[BiPoly<S>]) -> Vec<S> {
    let mut rest = p.clone();
    let mut out = vec![S::zero(); basis.len()];
    while let Some(top) = rest.top() {
        let c = rest.coeff(top as usize);
        rest = rest.axpy(&-c.clone(), &basis[top as usize]);
        out[top as usize] = c;
    }
    out
}

/// Vector recurrence for `x P^(d)` (or `y P^(d)`) along one path from zero that
/// runs through a lower path, the chain `n_0, ..., n_d`, and an upper chain
/// `v_0, ..., v_{d+1}`.
///
/// The coefficient blocks `A_0, ..., A_{d+1}` are obtained by triangular peeling in
/// the monic basis along the path, independently of the pairing formula; each
/// row is then compared with the scalar expansion of `x P_{n_k}`. The report also
/// records whether `A_{d+1}` equals `L = (I | 0)` (x) or `(0 | I)` (y), and checks
/// `A_h = 0` for `h <= K - 2` with
/// `K = max { h <= d - 1 : h(h+1)/2 < |n_0| - (d+1) r }` (0 when the set is empty),
/// provided `n_0 - (d+1)(1, ..., 1)` is a multi-index lying on the path.
///
/// Defaults: `lower` is the canonical path from zero to `n_0` (through that
/// waypoint when it exists), and `v_k = n_d + (k+1) e_1`.
pub fn nnr_vector<S: Scalar>(
    sys: &MeasureSystem<S>,
    chain: &[MultiIndex],
    axis: Axis,
    lower: Option<Vec<MultiIndex>>,
    upper: Option<Vec<MultiIndex>>,
) -> Result<NnrReport<S>> {
    let d = chain_degree(chain)?;
    let r = sys.r() as u64;
    let n0 = &chain[0];
    let nd = &chain[d as usize];
    let waypoint = n0.checked_sub_scalar(d + 1);
    let upper = upper.unwrap_or_else(|| (1..=d + 2).map(|k| nd.bump(0, k)).collect());
    if !crate::multiindex::validate_chain(&upper, d + 1) || !nd.is_neighbour_of(&upper[0]) {
        return Err(Error::ChainInvalid(
            "upper chain must be a degree d+1 chain starting next to n_d".into(),
        ));
    }
    let lower = match lower {
        Some(l) => l,
        None => {
            let mut way = vec![MultiIndex::zeros(n0.len())];
            way.extend(waypoint.clone());
            way.push(n0.clone());
            let mut steps = canonical_path(&way)?.into_steps();
            steps.pop();
            steps
        }
    };
    let mut steps = lower;
    steps.extend(chain.iter().cloned());
    steps.extend(upper.iter().cloned());
    let path = Path::new(steps).map_err(|e| Error::ChainInvalid(e.to_string()))?;
    if path.start_modulus() != 0 {
        return Err(Error::ChainInvalid(
            "lower path must start at the zero index".into(),
        ));
    }
    if let Some(wp) = &waypoint {
        if path.at_modulus(wp.modulus()) != Some(wp) {
            return Err(Error::ChainInvalid(format!(
                "waypoint {wp} is not on the path"
            )));
        }
    }

    let mops = Mops::new(sys);
    let size = (d + 2) * (d + 3) / 2;
    let basis = path.steps()[..size as usize]
        .iter()
        .map(|m| mops.type2(m))
        .collect::<Result<Vec<_>>>()?;
    let products = chain
        .iter()
        .map(|n| Ok(axis.apply(&mops.type2(n)?)))
        .collect::<Result<Vec<_>>>()?;
    let scale = products.iter().map(max_abs).fold(0.0, f64::max);
    let rows: Vec<Vec<S>> = products.iter().map(|p| peel(p, &basis)).collect();

    let blocks: Vec<Block<S>> = (0..=d + 1)
        .map(|h| {
            let base = (h * (h + 1) / 2) as usize;
            Block {
                degree: h,
                matrix: Matrix::from_fn(d as usize + 1, h as usize + 1, |k, c| {
                    rows[k][base + c].clone()
                }),
            }
        })
        .collect();

    // Re-assemble the matrix identity row by row from the blocks.
    let mut residual = Vec::with_capacity(chain.len());
    for (k, p) in products.iter().enumerate() {
        let mut res = p.clone();
        for b in &blocks {
            let base = (b.degree * (b.degree + 1) / 2) as usize;
            for c in 0..b.matrix.cols() {
                res = res.axpy(&-b.matrix.get(k, c).clone(), &basis[base + c]);
            }
        }
        residual.push(res);
    }

    let shift = match axis {
        Axis::X => 0,
        Axis::Y => 1,
    };
    let lead = &blocks[d as usize + 1].matrix;
    let leading_is_l = (0..lead.rows()).all(|k| {
        (0..lead.cols()).all(|c| {
            let e = if c == k + shift { S::one() } else { S::zero() };
            negligible(&(lead.get(k, c).clone() - e), scale)
        })
    });

    let mut rows_consistent = true;
    for (k, n) in chain.iter().enumerate() {
        let w_mod = n.modulus() + d + axis.lift();
        let sub = path
            .slice_moduli(0, w_mod)
            .expect("path covers every row target");
        let exp = expand_type2(&mops, n, axis, &sub)?;
        rows_consistent &= exp.residual_zero;
        for (i, a) in exp.coefficients.iter().enumerate() {
            rows_consistent &= negligible(&(a.clone() - rows[k][i].clone()), scale);
        }
        rows_consistent &= negligible(&(rows[k][w_mod as usize].clone() - S::one()), scale);
        rows_consistent &= rows[k][w_mod as usize + 1..]
            .iter()
            .all(|v| negligible(v, scale));
    }

    let threshold = n0.modulus() as i64 - ((d + 1) * r) as i64;
    let k_max = (0..d)
        .filter(|&h| ((h * (h + 1) / 2) as i64) < threshold)
        .max()
        .unwrap_or(0);
    let mut rep = NnrReport::new(Variant::vector(axis), n0.clone(), path);
    if waypoint.is_some() && k_max >= 2 {
        let vanish_top = (k_max - 1) * k_max / 2;
        rep.vanishing = (0..vanish_top)
            .flat_map(|i| {
                rows.iter().map(move |row| Coefficient {
                    modulus: i,
                    value: row[i as usize].clone(),
                })
            })
            .collect();
    }
    rep.vanishing_holds = rep.vanishing.iter().all(|c| negligible(&c.value, scale));
    rep.target = Some(upper[0].clone());
    rep.residual_zero = residual.iter().all(|p| poly_negligible(p, scale));
    rep.residual = residual;
    rep.blocks = blocks;
    rep.leading_is_l = Some(leading_is_l);
    rep.rows_consistent = Some(rows_consistent);
    rep.holds = rep.residual_zero && rep.vanishing_holds && rows_consistent && leading_is_l;
    Ok(rep)
}
