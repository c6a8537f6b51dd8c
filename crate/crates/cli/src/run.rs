//! Executes a parsed session over a chosen coefficient field.

use std::collections::HashMap;

use chi_core::arith::format_series;
use chi_core::chi::{chi, chi_series, qcartier_mult};
use chi_core::hilbert::hilbert_series;
use chi_core::homology::{chi_truncated, gulliksen_chi, naive_series, tor_table, TorTable};
use chi_core::parse::parse_poly;
use chi_core::{Field, Fp, GradedRing, MultiPoly, Rational};
use serde_json::Value;

use crate::report::{CommandReport, Report, Status};
use crate::session::{CommandKind, IdealExpr, Item, PolySrc, Session};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub imax: usize,
    pub dmax: usize,
    pub series_terms: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            imax: 8,
            dmax: 16,
            series_terms: 10,
        }
    }
}

/// Coefficient fields selectable at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rationals,
    Prime(u64),
}

/// Primes available for `--field fp:P`.
pub const PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 101, 32003, 65521, 2147483647];

impl std::str::FromStr for FieldChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("qq") {
            return Ok(FieldChoice::Rationals);
        }
        let p = s
            .strip_prefix("fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| format!("expected 'qq' or 'fp:P', got '{s}'"))?;
        if PRIMES.contains(&p) {
            Ok(FieldChoice::Prime(p))
        } else {
            Err(format!("unsupported prime {p}; choose one of {PRIMES:?}"))
        }
    }
}

pub fn run(session: &Session, field: FieldChoice, opts: &Options) -> Report {
    match field {
        FieldChoice::Rationals => run_over::<Rational>(session, opts),
        FieldChoice::Prime(2) => run_over::<Fp<2>>(session, opts),
        FieldChoice::Prime(3) => run_over::<Fp<3>>(session, opts),
        FieldChoice::Prime(5) => run_over::<Fp<5>>(session, opts),
        FieldChoice::Prime(7) => run_over::<Fp<7>>(session, opts),
        FieldChoice::Prime(11) => run_over::<Fp<11>>(session, opts),
        FieldChoice::Prime(13) => run_over::<Fp<13>>(session, opts),
        FieldChoice::Prime(101) => run_over::<Fp<101>>(session, opts),
        FieldChoice::Prime(32003) => run_over::<Fp<32003>>(session, opts),
        FieldChoice::Prime(65521) => run_over::<Fp<65521>>(session, opts),
        FieldChoice::Prime(2147483647) => run_over::<Fp<2147483647>>(session, opts),
        FieldChoice::Prime(p) => panic!("prime {p} is not in the supported list"),
    }
}

struct Env<F: Field> {
    ring: GradedRing<F>,
    ideals: HashMap<String, Vec<MultiPoly<F>>>,
}

fn parse_src<F: Field>(ring: &GradedRing<F>, p: &PolySrc) -> Result<MultiPoly<F>, String> {
    let poly = parse_poly(ring.ambient(), &p.text).map_err(|e| format!("{}: {e}", p.pos))?;
    if !poly.is_homogeneous() {
        return Err(format!("{}: generator is not homogeneous: {poly}", p.pos));
    }
    Ok(poly)
}

fn product<F: Field>(a: &[MultiPoly<F>], b: &[MultiPoly<F>]) -> Vec<MultiPoly<F>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for f in a {
        for g in b {
            let p = f * g;
            if !p.is_zero() && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

impl<F: Field> Env<F> {
    fn eval(&self, e: &IdealExpr) -> Result<Vec<MultiPoly<F>>, String> {
        Ok(match e {
            IdealExpr::Name(n) => self.ideals.get(n).cloned().ok_or_else(|| format!("unknown ideal '{n}'"))?,
            IdealExpr::Literal(ps) => ps.iter().map(|p| parse_src(&self.ring, p)).collect::<Result<_, _>>()?,
            IdealExpr::Sum(a, b) => {
                let mut v = self.eval(a)?;
                v.extend(self.eval(b)?);
                v
            }
            IdealExpr::Product(a, b) => product(&self.eval(a)?, &self.eval(b)?),
            IdealExpr::Power(a, k) => {
                let base = self.eval(a)?;
                let mut acc = base.clone();
                for _ in 1..*k {
                    acc = product(&acc, &base);
                }
                acc
            }
        })
    }
}

fn ring_text<F: Field>(name: &str, ring: &GradedRing<F>) -> String {
    let amb = ring.ambient();
    let vars: Vec<String> = amb
        .names()
        .iter()
        .zip(amb.weights())
        .map(|(n, &w)| if w == 1 { n.clone() } else { format!("{n}:{w}") })
        .collect();
    let mut s = format!("{name} = {}[{}]", F::spec(), vars.join(", "));
    if !ring.relations().is_empty() {
        let rels: Vec<String> = ring.relations().iter().map(ToString::to_string).collect();
        s.push_str(&format!(" / ({})", rels.join(", ")));
    }
    s
}

fn series_text(coeffs: &[Rational]) -> String {
    format_series(coeffs)
}

fn int_series(coeffs: &[num_bigint::BigInt]) -> Vec<Rational> {
    coeffs.iter().cloned().map(Rational::from_integer).collect()
}

fn push_tor_rows(rep: &mut CommandReport, tt: &TorTable) {
    for i in 0..=tt.i_max() {
        rep.push(&format!("Tor_{i}"), tt.row(i).to_vec());
    }
}

pub fn run_over<F: Field>(session: &Session, opts: &Options) -> Report {
    let name = &session.ring.name;
    let mut commands = Vec::new();
    let relations: Result<Vec<MultiPoly<F>>, String> = session
        .ring
        .relations
        .iter()
        .map(|p| parse_poly(&session.ring.ambient, &p.text).map_err(|e| format!("{}: {e}", p.pos)))
        .collect();
    let ring = match relations.and_then(|r| GradedRing::new(session.ring.ambient.clone(), r).map_err(|e| e.to_string())) {
        Ok(r) => r,
        Err(e) => {
            let mut c = CommandReport::new(format!("ring {name}"), 1);
            c.fail_with(e);
            return Report {
                field: F::spec().to_string(),
                ring: name.clone(),
                commands: vec![c],
            };
        }
    };
    let ring_desc = ring_text(name, &ring);
    let mut env = Env {
        ring,
        ideals: HashMap::new(),
    };

    for item in &session.items {
        match item {
            Item::Ideal { name, expr, pos } => match env.eval(expr) {
                Ok(gens) => {
                    env.ideals.insert(name.clone(), gens);
                }
                Err(e) => {
                    let mut c = CommandReport::new(format!("ideal {name} = {expr}"), pos.line);
                    c.fail_with(e);
                    commands.push(c);
                }
            },
            Item::Command(cmd) => {
                let mut rep = CommandReport::new(cmd.text.clone(), cmd.pos.line);
                if let Err(e) = execute(&env, &cmd.kind, opts, &mut rep) {
                    rep.fail_with(e);
                }
                commands.push(rep);
            }
        }
    }
    Report {
        field: F::spec().to_string(),
        ring: ring_desc,
        commands,
    }
}

fn execute<F: Field>(env: &Env<F>, kind: &CommandKind, opts: &Options, rep: &mut CommandReport) -> Result<(), String> {
    let ring = &env.ring;
    let terms = opts.series_terms.max(1);
    let err = |e: chi_core::Error| e.to_string();
    match kind {
        CommandKind::Hilbert(i) => {
            let gens = env.eval(i)?;
            let hs = hilbert_series(ring, &gens).map_err(err)?;
            rep.push("numerator", hs.numerator().to_string());
            rep.push("denominator", hs.denominator().to_string());
            rep.push("hilbert_series", hs.to_ratfun().to_string());
            rep.push("series", series_text(&int_series(&hs.expand(terms - 1))));
            let dm = hs.dim_and_mult().map_err(err)?;
            rep.push("dim", dm.dim);
            rep.push("multiplicity", dm.mult.to_string());
        }
        CommandKind::Chi(i, j) => {
            let cr = chi(ring, &env.eval(i)?, &env.eval(j)?).map_err(err)?;
            rep.push("chi", cr.chi.to_string());
            rep.push("series", series_text(&cr.chi.series_expand(terms - 1)));
            rep.push("value", cr.value.to_string());
            rep.push("class", cr.class.to_string());
            rep.push("defect", cr.defect);
            rep.push("dim_M", cr.module_m.dim);
            rep.push("dim_N", cr.module_n.dim);
            rep.push("dim_R", cr.ring.dim);
            rep.push("e_MN", cr.e_mn.to_string());
            rep.push("e_MN(1)", cr.e_mn_at_1.to_string());
        }
        CommandKind::Tor { i, j, imax, dmax } => {
            let (imax, dmax) = (imax.unwrap_or(opts.imax), dmax.unwrap_or(opts.dmax));
            let tt = tor_table(ring, &env.eval(i)?, &env.eval(j)?, imax, dmax).map_err(err)?;
            rep.push("imax", imax);
            rep.push("dmax", dmax);
            push_tor_rows(rep, &tt);
            rep.push("complete_through", tt.series_complete_through());
            rep.push("chi_truncated", series_text(&int_series(&chi_truncated(&tt))));
            let naive: Vec<Value> = naive_series(&tt, imax)
                .into_iter()
                .map(|c| Value::String(if c.complete { c.value.to_string() } else { format!("{}?", c.value) }))
                .collect();
            rep.push("naive", naive);
        }
        CommandKind::Gulliksen(i, j) => {
            let with_rel = |e: &IdealExpr| -> Result<Vec<MultiPoly<F>>, String> {
                let mut g = ring.relations().to_vec();
                g.extend(env.eval(e)?);
                Ok(g)
            };
            let g = gulliksen_chi(ring.ambient(), &with_rel(i)?, &with_rel(j)?).map_err(err)?;
            rep.push("chi_S", g.value.to_string());
            rep.push("closed_form", g.closed_form.to_string());
            rep.push("dmax", g.table.d_max());
            let lengths: Vec<u64> = (0..=g.table.i_max()).map(|k| g.table.row_total(k)).collect();
            rep.push("lengths", lengths);
        }
        CommandKind::Cartier { f, e, curve } => {
            let fp = parse_src(ring, f)?;
            let q = qcartier_mult(ring, &fp, *e, &env.eval(curve)?).map_err(err)?;
            let length = &q * Rational::from_integer((*e).into());
            rep.push("length", length.to_string());
            rep.push("e", *e);
            rep.push("multiplicity", q.to_string());
            rep.push("unchecked", "curve integral; e*D Cartier and cut out by f");
        }
        CommandKind::Check { i, j, imax, dmax } => {
            let (imax, dmax) = (imax.unwrap_or(opts.imax), dmax.unwrap_or(opts.dmax));
            let (gi, gj) = (env.eval(i)?, env.eval(j)?);
            let closed = chi_series(ring, &gi, &gj).map_err(err)?;
            let tt = tor_table(ring, &gi, &gj, imax, dmax).map_err(err)?;
            let trunc = int_series(&chi_truncated(&tt));
            let expected = closed.series_expand(trunc.len() - 1);
            let agree = trunc == expected;
            rep.push("chi", closed.to_string());
            rep.push("complete_through", tt.series_complete_through());
            rep.push("coefficients", trunc.iter().map(ToString::to_string).collect::<Vec<_>>());
            if !agree {
                let first = trunc.iter().zip(&expected).position(|(a, b)| a != b).unwrap_or(0);
                rep.push("first_mismatch", first);
                rep.push("expected", expected.iter().map(ToString::to_string).collect::<Vec<_>>());
            }
            rep.push("check", if agree { "PASS" } else { "FAIL" });
            if !agree {
                rep.status = Status::Fail;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::parse_session;

    fn run_text(src: &str, field: FieldChoice) -> Report {
        run(&parse_session(src).unwrap(), field, &Options::default())
    }

    #[test]
    fn rational_normal_cone_d4() {
        let r = run_text(
            "ring R { vars x0, x1, x2, x3, x4; relations x0*x2 - x1^2, x0*x3 - x1*x2, x0*x4 - x1*x3, \
             x1*x3 - x2^2, x1*x4 - x2*x3, x2*x4 - x3^2; }\n\
             ideal A = (x0, x1, x2, x3); ideal B = (x1, x2, x3, x4); chi A B;",
            FieldChoice::Rationals,
        );
        let c = &r.commands[0];
        assert_eq!(c.get_text("chi").unwrap(), "1 / (1 + 3t)");
        assert_eq!(c.get_text("value").unwrap(), "1/4");
        assert_eq!(c.get_text("class").unwrap(), "POSITIVE_FINITE");
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn quadric_cone_infinite() {
        let r = run_text(
            "ring R { vars x, y, z, w; relations x*w - y*z; } chi (x, y) (z, w);",
            FieldChoice::Rationals,
        );
        let c = &r.commands[0];
        assert_eq!(c.get_text("value").unwrap(), "infinity");
        assert_eq!(c.get_text("class").unwrap(), "INFINITE");
    }

    #[test]
    fn errors_are_reported_per_command() {
        let r = run_text(
            "ring R { vars x0, x1, x2; relations x0*x2 - x1^2; } cartier x0*x2 4 (x1, x2); hilbert (x0);",
            FieldChoice::Rationals,
        );
        assert_eq!(r.commands[0].status, Status::Error);
        assert_eq!(r.commands[0].error.as_deref(), Some("intersection not proper"));
        assert_eq!(r.commands[1].status, Status::Ok);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn prime_field_run() {
        let r = run_text(
            "ring R { vars x, y, z; relations x^3 + y^3 + z^3; } ideal I = (x + y, z); ideal J = (y, x + z); chi I J;",
            FieldChoice::Prime(101),
        );
        assert_eq!(r.field, "GF(101)");
        assert_eq!(r.commands[0].get_text("chi").unwrap(), "1 / (1 + t + t^2)");
    }

    #[test]
    fn field_choice_parsing() {
        assert_eq!("qq".parse::<FieldChoice>().unwrap(), FieldChoice::Rationals);
        assert_eq!("fp:32003".parse::<FieldChoice>().unwrap(), FieldChoice::Prime(32003));
        assert!("fp:4".parse::<FieldChoice>().is_err());
        assert!("reals".parse::<FieldChoice>().is_err());
    }
}
