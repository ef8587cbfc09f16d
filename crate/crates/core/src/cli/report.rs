//! Report types shared by the subcommands, and their text/CSV renderings.
//! Exact values go out as fraction strings; floats are approximations only.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::charvar::{exceptional_intersections, excluded_traces, ComponentIndex, TorusKnot};
use crate::chebyshev::CurvePoint;
use crate::exactnum::{fraction_string, CyclotomicNumber, Rational};
use crate::torsion::{PowerSum, TorsionValue};
use crate::verlinde::{CheckOutcome, DenominatorObservation, IntegralityRow, MultiIndex};

fn exact_string(x: &CyclotomicNumber) -> String {
    match x.to_rational() {
        Some(r) => fraction_string(&r),
        None => x.to_string(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TorsionJson {
    pub value: f64,
    pub exact: CyclotomicNumber,
    pub rational: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentRow {
    pub a: u32,
    pub b: u32,
    pub trace_alpha: f64,
    pub trace_beta: f64,
    pub excluded_traces: [f64; 2],
    pub torsion: TorsionJson,
}

impl ComponentRow {
    pub fn new(k: &TorusKnot, t: &TorsionValue) -> Self {
        let c = t.component;
        ComponentRow {
            a: c.a(),
            b: c.b(),
            trace_alpha: 2.0 * (PI * c.a() as f64 / k.p() as f64).cos(),
            trace_beta: 2.0 * (PI * c.b() as f64 / k.q() as f64).cos(),
            excluded_traces: excluded_traces(k, c).floats(),
            torsion: TorsionJson {
                value: t.float,
                exact: t.exact.clone(),
                rational: t.exact.to_rational().map(|r| fraction_string(&r)),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerSumRow {
    pub g: u32,
    pub value: String,
    pub integer: bool,
}

impl From<&PowerSum> for PowerSumRow {
    fn from(s: &PowerSum) -> Self {
        PowerSumRow {
            g: s.g,
            value: exact_string(&s.value),
            integer: s.is_integer(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TorsionReport {
    pub p: u32,
    pub q: u32,
    pub components: Vec<ComponentRow>,
    pub power_sums: Vec<PowerSumRow>,
}

impl TorsionReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let n = self.components.len();
        let _ = writeln!(
            s,
            "T({}, {}): {n} irreducible component{}",
            self.p,
            self.q,
            if n == 1 { "" } else { "s" }
        );
        for c in &self.components {
            let exact = c
                .torsion
                .rational
                .clone()
                .unwrap_or_else(|| c.torsion.exact.to_string());
            let _ = writeln!(
                s,
                "  ({}, {})  tau = {}  ~ {:.12}  excluded traces {:.12}, {:.12}",
                c.a, c.b, exact, c.torsion.value, c.excluded_traces[0], c.excluded_traces[1]
            );
        }
        let _ = writeln!(s, "sum of (2 tau)^(g-1) over components:");
        for r in &self.power_sums {
            let _ = writeln!(
                s,
                "  g = {}: {}{}",
                r.g,
                r.value,
                if r.integer { "" } else { "  (not an integer)" }
            );
        }
        s
    }

    pub fn csv(&self) -> String {
        let mut s =
            String::from("a,b,tau,tau_float,trace_alpha,trace_beta,excluded_plus,excluded_minus\n");
        for c in &self.components {
            let exact = c
                .torsion
                .rational
                .clone()
                .unwrap_or_else(|| c.torsion.exact.to_string());
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                c.a,
                c.b,
                exact,
                c.torsion.value,
                c.trace_alpha,
                c.trace_beta,
                c.excluded_traces[0],
                c.excluded_traces[1]
            );
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Routes {
    pub rational: String,
    pub trig: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerlindeReport {
    pub p: u32,
    pub q: u32,
    pub g: u32,
    pub n: Vec<[u32; 3]>,
    pub value: String,
    pub routes: Routes,
    pub agree: bool,
}

impl VerlindeReport {
    pub fn new(n: &MultiIndex, g: u32, rational: &Rational, trig: &CyclotomicNumber) -> Self {
        let k = n.knot();
        let trig_r = trig.to_rational();
        VerlindeReport {
            p: k.p(),
            q: k.q(),
            g,
            n: n.terms().iter().map(|(x, m)| [x.a, x.b, *m]).collect(),
            value: fraction_string(rational),
            routes: Routes {
                rational: fraction_string(rational),
                trig: exact_string(trig),
            },
            agree: trig_r.as_ref() == Some(rational),
        }
    }

    fn n_string(&self) -> String {
        self.n
            .iter()
            .map(|[a, b, m]| format!("{a},{b}x{m}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn text(&self) -> String {
        let n = if self.n.is_empty() {
            "0".to_string()
        } else {
            self.n
                .iter()
                .map(|[a, b, m]| {
                    if *m == 1 {
                        format!("l({a},{b})")
                    } else {
                        format!("{m}l({a},{b})")
                    }
                })
                .collect::<Vec<_>>()
                .join(" + ")
        };
        format!(
            "T({}, {}): d({}, {}) = {}\n  rational route {}\n  trig route     {}\n  {}\n",
            self.p,
            self.q,
            self.g,
            n,
            self.value,
            self.routes.rational,
            self.routes.trig,
            if self.agree {
                "routes agree"
            } else {
                "ROUTES DISAGREE"
            }
        )
    }

    pub fn csv(&self) -> String {
        format!(
            "p,q,g,n,value,rational,trig,agree\n{},{},{},{},{},{},{},{}\n",
            self.p,
            self.q,
            self.g,
            self.n_string(),
            self.value,
            self.routes.rational,
            self.routes.trig,
            self.agree
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupRow {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl From<CheckOutcome> for GroupRow {
    fn from(c: CheckOutcome) -> Self {
        GroupRow {
            passed: c.passed(),
            name: c.name,
            checked: c.checked,
            failed: c.failed,
            failures: c.failures,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegralityJson {
    pub g: u32,
    pub d: String,
    pub scaled: String,
    pub integer: bool,
    pub denominator_ok: bool,
    pub trig: Option<String>,
    pub torsion: Option<String>,
    pub agree: bool,
}

impl From<&IntegralityRow> for IntegralityJson {
    fn from(r: &IntegralityRow) -> Self {
        IntegralityJson {
            g: r.g,
            d: fraction_string(&r.d),
            scaled: fraction_string(&r.scaled),
            integer: r.integer,
            denominator_ok: r.denominator_ok,
            trig: r.trig.as_ref().map(fraction_string),
            torsion: r.torsion.as_ref().map(fraction_string),
            agree: r.agree,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DenominatorJson {
    pub g: u32,
    pub weight: u32,
    pub max_two_power: u32,
    pub odd_factor: bool,
}

impl From<&DenominatorObservation> for DenominatorJson {
    fn from(d: &DenominatorObservation) -> Self {
        DenominatorJson {
            g: d.g,
            weight: d.weight,
            max_two_power: d.max_two_power,
            odd_factor: d.odd_factor,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub p: u32,
    pub q: u32,
    pub g_max: u32,
    pub max_weight: u32,
    pub fault_injected: bool,
    pub groups: Vec<GroupRow>,
    pub integrality: Vec<IntegralityJson>,
    pub observed_denominators: Vec<DenominatorJson>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "T({}, {}), g <= {}, |n| <= {}{}",
            self.p,
            self.q,
            self.g_max,
            self.max_weight,
            if self.fault_injected {
                " [fault injected]"
            } else {
                ""
            }
        );
        for g in &self.groups {
            let _ = writeln!(
                s,
                "{} {} ({} checks, {} failed)",
                if g.passed { "PASS" } else { "FAIL" },
                g.name,
                g.checked,
                g.failed
            );
            for f in &g.failures {
                let _ = writeln!(s, "    {f}");
            }
        }
        let _ = writeln!(s, "2^(g-2) d(g, 0):");
        for r in &self.integrality {
            let _ = writeln!(
                s,
                "  g = {}: {}{}{}",
                r.g,
                r.scaled,
                if r.integer { "" } else { "  not an integer" },
                if r.agree { "" } else { "  routes disagree" }
            );
        }
        let _ = writeln!(
            s,
            "observed denominators of d(g, n), n != 0 (2-power exponent):"
        );
        for d in self.observed_denominators.iter().filter(|d| d.weight > 0) {
            let _ = writeln!(
                s,
                "  g = {}, |n| = {}: 2^{}{}",
                d.g,
                d.weight,
                d.max_two_power,
                if d.odd_factor {
                    " and an odd factor"
                } else {
                    ""
                }
            );
        }
        let _ = writeln!(
            s,
            "{}",
            if self.passed {
                "all checks passed"
            } else {
                "verification FAILED"
            }
        );
        s
    }

    pub fn csv(&self) -> String {
        let mut s = String::from("group,checked,failed,passed\n");
        for g in &self.groups {
            let _ = writeln!(s, "{},{},{},{}", g.name, g.checked, g.failed, g.passed);
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularPointJson {
    pub a: u32,
    pub b: u32,
    pub x: f64,
    pub y: f64,
    pub x_exact: CyclotomicNumber,
    pub y_exact: CyclotomicNumber,
}

impl From<&CurvePoint> for SingularPointJson {
    fn from(pt: &CurvePoint) -> Self {
        let (x, y) = pt.float();
        SingularPointJson {
            a: pt.a,
            b: pt.b,
            x,
            y,
            x_exact: pt.x.clone(),
            y_exact: pt.y.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExceptionalJson {
    pub a: u32,
    pub b: u32,
    /// `[Z0, Z1]` of the two points where the resolved curve meets the exceptional line.
    pub plus: [f64; 2],
    pub minus: [f64; 2],
    /// The traces `2cos((ar/p +- bs/q) pi)` the two points are sent to, in the same order.
    pub excluded_traces: [f64; 2],
}

impl ExceptionalJson {
    pub fn new(k: &TorusKnot, c: ComponentIndex) -> Self {
        let e = exceptional_intersections(k, c);
        let t = excluded_traces(k, c).floats();
        ExceptionalJson {
            a: c.a(),
            b: c.b(),
            plus: [e.plus.z0, e.plus.z1],
            minus: [e.minus.z0, e.minus.z1],
            excluded_traces: t,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveReport {
    pub p: u32,
    pub q: u32,
    pub samples: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub max_residual: f64,
    pub singular_points: Vec<SingularPointJson>,
    pub exceptional: Vec<ExceptionalJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub p: u32,
    pub q: u32,
    pub values: Vec<String>,
    pub integer: bool,
    pub agree: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub p_max: u32,
    pub q_max: u32,
    pub g_max: u32,
    pub rows: Vec<ScanRow>,
    pub passed: bool,
}

impl ScanReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "2^(g-2) d(g, 0) for g = 0..={}, 2 <= p < q, p <= {}, q <= {}",
            self.g_max, self.p_max, self.q_max
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{} T({}, {}): {}",
                if r.passed { "PASS" } else { "FAIL" },
                r.p,
                r.q,
                r.values.join(" ")
            );
        }
        let _ = writeln!(
            s,
            "{} knots, {}",
            self.rows.len(),
            if self.passed {
                "all integral"
            } else {
                "FAILURES present"
            }
        );
        s
    }

    pub fn csv(&self) -> String {
        let mut s = String::from("p,q,values,integer,agree\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                r.p,
                r.q,
                r.values.join(" "),
                r.integer,
                r.agree
            );
        }
        s
    }
}
