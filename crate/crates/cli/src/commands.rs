use std::fs;

use bimop_core::measures::{parse_config, parse_product_config, MeasureSystem};
use bimop_core::mop::{normality, type1, type2, Normality};
use bimop_core::multiindex::IndexParams;
use bimop_core::product::{
    det_factor_check, find_normal_v, product_poly, tilde_v, verify_product, FactorVerdict,
    ProductSystem, ScalarMoment,
};
use bimop_core::relations::{biorth, biorth_matrix, nnr_type1, nnr_type2, nnr_vector, NnrReport};
use bimop_core::{
    pair, unpair, Error, MultiIndex, Path, Rational, Result, Scalar, ScalarMode, Tolerance,
};
use serde_json::{json, Value};

use crate::output::poly;
use crate::{check, Cli, Command, Global, Outcome};

pub fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Pair { t, s } => Ok(Outcome::Ok(json!({ "pi": pair(*t, *s) }))),
        Command::Unpair { z } => {
            let (t, s) = unpair(*z);
            Ok(Outcome::Ok(json!({ "t": t, "s": s })))
        }
        Command::Params { modulus, index } => {
            let modulus = match (modulus, index) {
                (Some(m), None) => *m,
                (None, Some(i)) => index_arg(i)?.modulus(),
                _ => return Err(Error::schema("params", "give either a modulus or --index")),
            };
            Ok(Outcome::Ok(json!(IndexParams::from_modulus(modulus))))
        }
        Command::Product { .. } | Command::Factor { .. } => {
            let cfg = parse_product_config(&read_config(g)?)?;
            let tol = tolerance(g);
            if float_mode(g, cfg.mode) {
                product_command(
                    &cli.command,
                    &ProductSystem::<f64>::with_tolerance(cfg.x, cfg.y, tol)?,
                    g,
                )
            } else {
                product_command(
                    &cli.command,
                    &ProductSystem::<Rational>::with_tolerance(cfg.x, cfg.y, tol)?,
                    g,
                )
            }
        }
        _ => {
            let cfg = parse_config(&read_config(g)?)?;
            if float_mode(g, cfg.mode) {
                let mut sys = cfg.build::<f64>()?;
                sys.set_tolerance(tolerance(g));
                system_command(&cli.command, &sys, g)
            } else {
                system_command(&cli.command, &cfg.build::<Rational>()?, g)
            }
        }
    }
}

fn float_mode(g: &Global, configured: ScalarMode) -> bool {
    g.float || configured == ScalarMode::Float64
}

fn tolerance(g: &Global) -> Tolerance {
    let mut tol = Tolerance::default();
    if let Some(t) = g.tol {
        tol.singular = t;
        tol.indeterminate = tol.indeterminate.max(t);
    }
    tol
}

fn read_config(g: &Global) -> Result<String> {
    let path = g
        .config
        .as_ref()
        .ok_or_else(|| Error::schema("--config", "required for this command"))?;
    fs::read_to_string(path)
        .map_err(|e| Error::schema("--config", format!("{}: {e}", path.display())))
}

pub fn index_arg(s: &str) -> Result<MultiIndex> {
    s.parse()
}

/// `"0,0;0,1;1,1"` into a list of multi-indices.
pub fn index_list(s: &str) -> Result<Vec<MultiIndex>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse())
        .collect()
}

fn verdict(holds: bool, v: Value) -> Outcome {
    if holds {
        Outcome::Ok(v)
    } else {
        Outcome::Failed(v)
    }
}

fn report<S: Scalar>(r: NnrReport<S>) -> Outcome {
    verdict(r.holds, r.to_json())
}

fn system_command<S: Scalar>(cmd: &Command, sys: &MeasureSystem<S>, g: &Global) -> Result<Outcome> {
    match cmd {
        Command::Normal { index } => {
            let n = index_arg(index)?;
            let rep = normality(sys, &n)?;
            let mut v = json!({ "normal": rep.is_normal(), "det": rep.det.to_literal() });
            if let Some(rc) = rep.rcond {
                v["verdict"] = json!(rep.verdict);
                v["rcond"] = json!(rc);
            }
            Ok(match rep.verdict {
                Normality::Normal => Outcome::Ok(v),
                _ => Outcome::NotNormal(v),
            })
        }
        Command::Type2 { index } => {
            let n = index_arg(index)?;
            let p = type2(sys, &n)?;
            Ok(Outcome::Ok(
                json!({ "index": n, "poly": poly(&p, g.pretty) }),
            ))
        }
        Command::Type1 { index } => {
            let n = index_arg(index)?;
            let set = type1(sys, &n)?;
            let polys: Vec<Value> = set.polys.iter().map(|p| poly(p, g.pretty)).collect();
            Ok(Outcome::Ok(json!({ "index": n, "polys": polys })))
        }
        Command::Biorth {
            index,
            with,
            chain,
            with_chain,
        } => {
            if let (Some(c), Some(w)) = (chain, with_chain) {
                let m = biorth_matrix(sys, &index_list(c)?, &index_list(w)?)?;
                let v = json!({
                    "matrix": m.matrix.to_literal_rows(),
                    "pattern": m.pattern,
                    "cases": m.cases,
                    "holds": m.holds,
                });
                return Ok(verdict(m.holds, v));
            }
            let (n, m) = match (index, with) {
                (Some(n), Some(m)) => (index_arg(n)?, index_arg(m)?),
                _ => {
                    return Err(Error::schema(
                        "biorth",
                        "give --index and --with, or --chain and --with-chain",
                    ))
                }
            };
            let b = biorth(sys, &n, &m)?;
            let v = json!({
                "n": n,
                "m": m,
                "value": b.value.to_literal(),
                "case": b.case,
                "holds": b.holds,
            });
            Ok(verdict(b.holds, v))
        }
        Command::Nnr {
            index,
            axis,
            path,
            w,
        } => {
            let path = path
                .as_deref()
                .map(index_list)
                .transpose()?
                .map(Path::new)
                .transpose()?;
            let w = w.as_deref().map(index_arg).transpose()?;
            Ok(report(nnr_type2(sys, &index_arg(index)?, *axis, path, w)?))
        }
        Command::NnrQ { index, axis, path } => {
            let path = path
                .as_deref()
                .map(index_list)
                .transpose()?
                .map(Path::new)
                .transpose()?;
            Ok(report(nnr_type1(sys, &index_arg(index)?, *axis, path)?))
        }
        Command::Vector {
            chain,
            axis,
            lower,
            upper,
        } => {
            let lower = lower.as_deref().map(index_list).transpose()?;
            let upper = upper.as_deref().map(index_list).transpose()?;
            Ok(report(nnr_vector(
                sys,
                &index_list(chain)?,
                *axis,
                lower,
                upper,
            )?))
        }
        Command::Check {
            max,
            max_nnr,
            max_q,
        } => {
            let (v, holds) = check::run(sys, *max, *max_nnr, *max_q)?;
            Ok(verdict(holds, v))
        }
        _ => unreachable!("handled in run"),
    }
}

fn product_command<S: Scalar>(cmd: &Command, ps: &ProductSystem<S>, g: &Global) -> Result<Outcome> {
    match cmd {
        Command::Product { n, m, v } => {
            let (n, m) = (index_arg(n)?, index_arg(m)?);
            let product = product_poly(ps, &n, &m)?;
            let v = match v {
                Some(v) => index_arg(v)?,
                None => match find_normal_v(ps, &n, &m)? {
                    Some(v) => v,
                    None => {
                        return Ok(Outcome::NotNormal(json!({
                            "n": n,
                            "m": m,
                            "tilde_v": tilde_v(&n, &m),
                            "v": null,
                            "product": poly(&product, g.pretty),
                        })))
                    }
                },
            };
            let holds = verify_product(ps, &n, &m, &v)?;
            let bivariate = type2(ps.tensor(), &v)?;
            Ok(verdict(
                holds,
                json!({
                    "n": n,
                    "m": m,
                    "tilde_v": tilde_v(&n, &m),
                    "v": v,
                    "product": poly(&product, g.pretty),
                    "type2": poly(&bivariate, g.pretty),
                    "holds": holds,
                }),
            ))
        }
        Command::Factor {
            v,
            x_factors,
            y_factors,
            scalars,
        } => {
            let v = index_arg(v)?;
            let scalars = scalars
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<ScalarMoment>())
                .collect::<Result<Vec<_>>>()?;
            let c = det_factor_check(
                ps,
                &v,
                &index_list(x_factors)?,
                &index_list(y_factors)?,
                &scalars,
            )?;
            let lits = |xs: &[S]| xs.iter().map(|x| x.to_literal()).collect::<Vec<_>>();
            let ratio = match &c.ratio {
                Some(r) => json!(r.to_literal()),
                None => json!("0/0"),
            };
            Ok(Outcome::Ok(json!({
                "v": v,
                "det_v": c.det_v.to_literal(),
                "x_dets": lits(&c.x_dets),
                "y_dets": lits(&c.y_dets),
                "scalars": lits(&c.scalars),
                "denominator": c.denominator.to_literal(),
                "ratio": ratio,
                "verdict": c.verdict,
                "proportional": c.verdict == FactorVerdict::Proportional,
            })))
        }
        _ => unreachable!("handled in run"),
    }
}
