//! Golden cases, each compared as text against a fixed expectation.

use galegap_core::excone::{gap_exz, h0_closed, Point3};
use galegap_core::gale::{dual_optimum_status, dual_sup_general, gap_report, Attainment};
use galegap_core::lp_oracle::truncation_sweep;
use galegap_core::numeric::{int, ratio, Ratio};
use galegap_core::vsw::{c1_witness, dspace_fixture_partial_sums, in_c0, in_c1, in_cl_cprime, line_intersections, EtaPoint, Fixture};
use galegap_core::{CostSpec, DualPoint, Rhs, Tail, TailSeq};

use crate::output::{text, Table};

fn spec(u: i64, v: i64, prefix: &[i64], tail: (i64, i64, i64)) -> CostSpec {
    let beta = TailSeq::new(prefix.iter().map(|&p| int(p)).collect(), Tail::new(int(tail.0), int(tail.1), int(tail.2)));
    CostSpec::new(int(u), int(v), beta).expect("fixture costs are nonnegative")
}

fn rhs(b1: i64, b2: i64) -> Rhs {
    Rhs::new(int(b1), int(b2))
}

fn pt(a: Ratio, b: Ratio, c: Ratio) -> EtaPoint {
    EtaPoint::new(a, b, c)
}

fn status(c: &CostSpec, b: &Rhs) -> String {
    match dual_optimum_status(c, b) {
        Ok(Attainment::AttainedWithWitness(y)) => format!("attained ({}, {})", y.y1, y.y2),
        Ok(Attainment::NotAttained) => "not-attained".into(),
        Ok(Attainment::Unknown) => "unknown".into(),
        Err(e) => format!("error: {e}"),
    }
}

fn values(c: &CostSpec, b: &Rhs) -> String {
    let r = gap_report(c, b);
    format!("{} {} {}", r.phi, r.psi, r.gap)
}

type Case = (&'static str, &'static str, fn() -> String);

const CASES: &[Case] = &[
    ("gale gap at (1,0)", "1 0 1", || values(&CostSpec::gale(), &rhs(1, 0))),
    ("gale dual optimum at (1,0)", "attained (0, 0)", || status(&CostSpec::gale(), &rhs(1, 0))),
    ("gale gap at (2,1)", "0 0 0", || values(&CostSpec::gale(), &rhs(2, 1))),
    ("gale gap at (1,1)", "0 0 0", || values(&CostSpec::gale(), &rhs(1, 1))),
    ("gale (0,0) dual feasible", "true", || CostSpec::gale().dual_feasible(&DualPoint::new(int(0), int(0))).to_string()),
    ("gale (1/2,-1) dual feasible", "false", || {
        CostSpec::gale().dual_feasible(&DualPoint::new(ratio(1, 2), int(-1))).to_string()
    }),
    ("axis closed form beta_bar=2", "20 15 5", || values(&spec(1, -2, &[3], (2, 0, 0)), &rhs(5, 0))),
    ("attained below slope", "attained (1, 0)", || status(&spec(0, 0, &[1], (2, 0, 0)), &rhs(1, 0))),
    ("not attained with sqrt tail", "not-attained", || status(&spec(0, 0, &[5], (1, 0, -1)), &rhs(1, 0))),
    ("origin dual sup", "0", || {
        dual_sup_general(&CostSpec::gale(), &rhs(0, 0), &ratio(1, 1000)).map_or_else(|e| e.to_string(), |s| s.lower().to_string())
    }),
    ("gale sweep dual column", "1 1 1", || match truncation_sweep(&CostSpec::gale(), &rhs(1, 0), &[1, 10, 100]) {
        Ok(rows) => rows.iter().map(|r| r.dual.to_string()).collect::<Vec<_>>().join(" "),
        Err(e) => e.to_string(),
    }),
    ("h0 at (7,3,0)", "3", || h0_closed(&Point3::new(int(7), int(3), int(0))).to_string()),
    ("h0 at (0,-5,-1)", "0", || h0_closed(&Point3::new(int(0), int(-5), int(-1))).to_string()),
    ("gap_exz at (0,1,0)", "1 0 1", || match gap_exz(&Point3::new(int(0), int(1), int(0))) {
        Ok((a, b, c)) => format!("{a} {b} {c}"),
        Err(e) => e.to_string(),
    }),
    ("C0 at (1,0,0)", "true", || in_c0(&pt(int(1), int(0), int(0))).to_string()),
    ("C0 at (1/2,0,0)", "false", || in_c0(&pt(ratio(1, 2), int(0), int(0))).to_string()),
    ("C1 at (0,0,-1)", "true", || in_c1(&pt(int(0), int(0), int(-1))).to_string()),
    ("cl C' at (0,0,0)", "true", || in_cl_cprime(&pt(int(0), int(0), int(0))).to_string()),
    ("L cap C' / cl C' at eta=1/2", "false true", || {
        let r = line_intersections(&pt(ratio(1, 2), int(0), int(0)));
        format!("{} {}", r.in_l_cprime, r.in_l_cl_cprime)
    }),
    ("C1 witness at (0,0,-1)", "1:1", || match c1_witness(&pt(int(0), int(0), int(-1))) {
        Ok(w) => w.entries().iter().map(|(n, x)| format!("{n}:{x}")).collect::<Vec<_>>().join(" "),
        Err(e) => e.to_string(),
    }),
    ("geometric weighted sum N=10", "509/256", || {
        dspace_fixture_partial_sums(Fixture::Geometric, 10).map_or_else(|e| e.to_string(), |s| s.weighted.to_string())
    }),
];

/// Runs every case; the table lists `ok`/`MISMATCH` per case.
pub fn run() -> (Table, bool) {
    let mut t = Table::new(&["status", "case", "expected", "actual"]);
    let mut all_ok = true;
    for (name, expected, f) in CASES {
        let actual = f();
        let ok = actual == *expected;
        all_ok &= ok;
        t.row(vec![text(if ok { "ok" } else { "MISMATCH" }), text(name), text(expected), text(actual)]);
    }
    (t, all_ok)
}
