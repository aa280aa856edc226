//! Direct moment-summation checks for tensor Laguerre systems.
//!
//! Moments are rebuilt from the rising factorial `(a+1)(a+2)...(a+k)` and
//! monomial positions from an explicit enumeration, so nothing here goes
//! through the solver, the pairing functions or the measure providers.

use std::collections::HashMap;

use bimop_core::scalar::{parse_rational, rational};
use bimop_core::{BiPoly, MultiIndex, Rational};

pub struct Oracle {
    /// `(alpha_x, alpha_y)` per measure.
    alphas: Vec<(Rational, Rational)>,
}

/// `(t, s)` for every monomial position below `count`: 1, x, y, x^2, xy, y^2, ...
pub fn monomials(count: usize) -> Vec<(u64, u64)> {
    let mut out = Vec::with_capacity(count);
    let mut d = 0u64;
    while out.len() < count {
        for s in 0..=d {
            if out.len() == count {
                break;
            }
            out.push((d - s, s));
        }
        d += 1;
    }
    out
}

fn position(t: u64, s: u64) -> usize {
    monomials(((t + s + 1) * (t + s + 2) / 2) as usize)
        .iter()
        .position(|&m| m == (t, s))
        .expect("enumerated")
}

fn rising(a: &Rational, k: u64) -> Rational {
    (1..=k).fold(rational(1, 1), |acc, i| {
        acc * (a.clone() + rational(i as i64, 1))
    })
}

impl Oracle {
    pub fn laguerre(alphas: &[(&str, &str)]) -> Self {
        Oracle {
            alphas: alphas
                .iter()
                .map(|(a, b)| (parse_rational(a).unwrap(), parse_rational(b).unwrap()))
                .collect(),
        }
    }

    pub fn moment(&self, j: usize, t: u64, s: u64) -> Rational {
        let (a, b) = &self.alphas[j];
        rising(a, t) * rising(b, s)
    }

    /// `int p x^t y^s d mu_j`.
    pub fn integrate(&self, j: usize, p: &BiPoly<Rational>, t: u64, s: u64) -> Rational {
        p.terms().fold(rational(0, 1), |acc, (pt, ps, c)| {
            acc + c.clone() * self.moment(j, pt + t, ps + s)
        })
    }

    /// Monic with leading monomial at position `|n|`, and orthogonal to the
    /// first `n_j` monomials in measure `j`.
    pub fn check_type2(&self, p: &BiPoly<Rational>, n: &MultiIndex) -> Result<(), String> {
        let size = n.modulus() as usize;
        let mons = monomials(size + 1);
        let (lt, ls) = mons[size];
        let mut seen: HashMap<(u64, u64), Rational> = HashMap::new();
        for (t, s, c) in p.terms() {
            if position(t, s) > size {
                return Err(format!("term x^{t} y^{s} above the leading position"));
            }
            seen.insert((t, s), c.clone());
        }
        if seen.get(&(lt, ls)) != Some(&rational(1, 1)) {
            return Err(format!("coefficient of x^{lt} y^{ls} is not 1"));
        }
        for (j, &nj) in n.components().iter().enumerate() {
            for &(t, s) in &mons[..nj as usize] {
                let v = self.integrate(j, p, t, s);
                if v != rational(0, 1) {
                    return Err(format!("<P, x^{t} y^{s}>_{} = {v}", j + 1));
                }
            }
        }
        Ok(())
    }

    /// `A_j` uses only the first `n_j` monomials, and the combined functional
    /// vanishes on the first `|n|-1` monomials and is 1 on the next.
    pub fn check_type1(&self, polys: &[BiPoly<Rational>], n: &MultiIndex) -> Result<(), String> {
        let size = n.modulus() as usize;
        let mons = monomials(size);
        for (j, a) in polys.iter().enumerate() {
            let allowed = &mons[..n.components()[j] as usize];
            if let Some((t, s, _)) = a.terms().find(|(t, s, _)| !allowed.contains(&(*t, *s))) {
                return Err(format!("A_{} has a term x^{t} y^{s}", j + 1));
            }
        }
        for (k, &(t, s)) in mons.iter().enumerate() {
            let v = (0..polys.len()).fold(rational(0, 1), |acc, j| {
                acc + self.integrate(j, &polys[j], t, s)
            });
            let want = if k + 1 == size {
                rational(1, 1)
            } else {
                rational(0, 1)
            };
            if v != want {
                return Err(format!("<Q, x^{t} y^{s}> = {v}, expected {want}"));
            }
        }
        Ok(())
    }
}

pub fn two_measure_oracle() -> Oracle {
    Oracle::laguerre(&[("1", "23/10"), ("11/5", "17/5")])
}

pub fn four_measure_oracle() -> Oracle {
    Oracle::laguerre(&[
        ("1", "23/10"),
        ("1", "17/5"),
        ("11/5", "23/10"),
        ("11/5", "17/5"),
    ])
}
