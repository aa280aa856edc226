//! The `check` battery: independent sweeps run on scoped threads, reported in
//! a fixed order.

use std::thread;

use bimop_core::measures::MeasureSystem;
use bimop_core::mop::{inner, normality, Mops};
use bimop_core::relations::{biorth_with, nnr_type1, nnr_type2, Axis};
use bimop_core::scalar::negligible;
use bimop_core::{unpair, BiPoly, Error, MultiIndex, Result, Scalar};
use serde_json::{json, Value};

const MAX_LISTED: usize = 20;

#[derive(Default)]
struct Section {
    checked: usize,
    skipped: usize,
    failures: Vec<String>,
}

impl Section {
    fn fail(&mut self, what: String) {
        self.failures.push(what);
    }

    fn json(&self) -> Value {
        json!({
            "holds": self.failures.is_empty(),
            "checked": self.checked,
            "skipped": self.skipped,
            "failed": self.failures.len(),
            "failures": self.failures.iter().take(MAX_LISTED).collect::<Vec<_>>(),
        })
    }
}

/// Every index of length `r` with modulus at most `max`, by modulus then lexicographically.
fn indices(r: usize, max: u64) -> Vec<MultiIndex> {
    fn go(r: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<MultiIndex>) {
        if cur.len() == r {
            if left == 0 {
                out.push(MultiIndex::new(cur.clone()));
            }
            return;
        }
        for c in 0..=left {
            cur.push(c);
            go(r, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for modulus in 0..=max {
        go(r, modulus, &mut Vec::new(), &mut out);
    }
    out
}

fn normal<S: Scalar>(sys: &MeasureSystem<S>, n: &MultiIndex) -> Result<bool> {
    Ok(normality(sys, n)?.is_normal())
}

fn orthogonality<S: Scalar>(sys: &MeasureSystem<S>, max: u64) -> Result<Section> {
    let mops = Mops::new(sys);
    let mut sec = Section::default();
    for n in indices(sys.r(), max) {
        if !normal(sys, &n)? {
            sec.skipped += 1;
            continue;
        }
        sec.checked += 1;
        let p = mops.type2(&n)?;
        let scale = p
            .coeffs()
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(1.0, f64::max);
        for (j, &nj) in n.components().iter().enumerate() {
            for z in 0..nj {
                let (t, s) = unpair(z);
                let v = inner(sys, j, &p, &BiPoly::monomial(t, s))?;
                if !negligible(&v, scale) {
                    sec.fail(format!(
                        "<P_{n}, x^{t} y^{s}>_{} = {}",
                        j + 1,
                        v.to_literal()
                    ));
                }
            }
        }
        if n.is_zero() {
            continue;
        }
        let q = mops.type1(&n)?;
        for z in 0..n.modulus() {
            let (t, s) = unpair(z);
            let mono = BiPoly::monomial(t, s);
            let mut v = S::zero();
            for (j, a) in q.polys.iter().enumerate() {
                v = v + inner(sys, j, a, &mono)?;
            }
            let want = if z + 1 == n.modulus() {
                S::one()
            } else {
                S::zero()
            };
            if !negligible(&(v.clone() - want), 1.0) {
                sec.fail(format!("<Q_{n}, x^{t} y^{s}> = {}", v.to_literal()));
            }
        }
    }
    Ok(sec)
}

fn biorthogonality<S: Scalar>(sys: &MeasureSystem<S>, max: u64) -> Result<Section> {
    let mops = Mops::new(sys);
    let mut sec = Section::default();
    let mut normal_indices = Vec::new();
    for n in indices(sys.r(), max) {
        if normal(sys, &n)? {
            normal_indices.push(n);
        } else {
            sec.skipped += 1;
        }
    }
    for n in &normal_indices {
        for m in normal_indices.iter().filter(|m| !m.is_zero()) {
            let b = biorth_with(&mops, n, m)?;
            sec.checked += 1;
            if !b.holds {
                sec.fail(format!(
                    "<P_{n}, Q_{m}> = {} ({})",
                    b.value.to_literal(),
                    b.case.label()
                ));
            }
        }
    }
    Ok(sec)
}

fn recurrence_type2<S: Scalar>(sys: &MeasureSystem<S>, max: u64) -> Result<Section> {
    let mut sec = Section::default();
    for n in indices(sys.r(), max) {
        let d = n.params().degree;
        if n.components().iter().any(|&c| c <= d) {
            continue;
        }
        for axis in [Axis::X, Axis::Y] {
            match nnr_type2(sys, &n, axis, None, None) {
                Ok(r) => {
                    sec.checked += 1;
                    if !r.holds {
                        sec.fail(format!("{axis:?} P_{n}"));
                    }
                }
                Err(Error::NotNormal { .. }) => sec.skipped += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(sec)
}

fn recurrence_type1<S: Scalar>(sys: &MeasureSystem<S>, max: u64) -> Result<Section> {
    let mut sec = Section::default();
    for n in indices(sys.r(), max).into_iter().filter(|n| !n.is_zero()) {
        for axis in [Axis::X, Axis::Y] {
            match nnr_type1(sys, &n, axis, None) {
                Ok(r) => {
                    sec.checked += 1;
                    if !r.residual_zero || !r.vanishing_holds {
                        sec.fail(format!("{axis:?} Q_{n}: expansion"));
                    }
                    if r.low_unit == Some(false) {
                        let low = r
                            .low_coefficient
                            .map(|c| c.to_literal())
                            .unwrap_or_default();
                        sec.fail(format!("{axis:?} Q_{n}: low coefficient {low}, expected 1"));
                    }
                }
                Err(Error::NotNormal { .. }) => sec.skipped += 1,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(sec)
}

pub fn run<S: Scalar>(
    sys: &MeasureSystem<S>,
    max: u64,
    max_nnr: u64,
    max_q: u64,
) -> Result<(Value, bool)> {
    let results = thread::scope(|scope| {
        let handles = [
            scope.spawn(|| orthogonality(sys, max)),
            scope.spawn(|| biorthogonality(sys, max)),
            scope.spawn(|| recurrence_type2(sys, max_nnr)),
            scope.spawn(|| recurrence_type1(sys, max_q)),
        ];
        handles.map(|h| h.join().expect("check worker panicked"))
    });
    let names = ["orthogonality", "biorthogonality", "nnr", "nnr_q"];
    let mut out = serde_json::Map::new();
    let mut holds = true;
    for (name, res) in names.iter().zip(results) {
        let sec = res?;
        holds &= sec.failures.is_empty();
        out.insert((*name).to_string(), sec.json());
    }
    out.insert("holds".into(), json!(holds));
    Ok((Value::Object(out), holds))
}
