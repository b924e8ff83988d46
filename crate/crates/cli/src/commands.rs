use galegap_core::excone::{gap_exz, Point3};
use galegap_core::gale::{dual_sup_general, gap_report_with_eps, Attainment, DualSup, GapReport};
use galegap_core::lp_oracle::{confirm_report, truncation_sweep};
use galegap_core::numeric::{parse_ratio, Ratio};
use galegap_core::vsw::{
    c1_witness, dspace_fixture_partial_sums, in_c0, in_c1, in_cl_cprime, in_cprime, line_intersections, EtaPoint,
    Fixture,
};
use galegap_core::DualPoint;

use crate::error::{CliError, CliResult};
use crate::instance::Instance;
use crate::output::{text, Cell, Doc, Table};

/// Largest grid the `excone`/`vsw` commands will enumerate.
pub const MAX_GRID_POINTS: usize = 1_000_000;

/// Flat report; fields always appear in this order.
pub fn gap_doc(inst: &Instance, r: &GapReport) -> Doc {
    let (attainment, witness) = match &r.attainment {
        Attainment::AttainedWithWitness(y) => ("attained", Some(y)),
        Attainment::NotAttained => ("not-attained", None),
        Attainment::Unknown => ("unknown", None),
    };
    let (lo, hi) = match &r.psi_enclosure {
        Some((lo, hi)) => (Some(lo), Some(hi)),
        None => (None, None),
    };
    Doc::new()
        .field("rhs_case", text(r.rhs_case.as_str()))
        .field("b1", text(&inst.rhs.b1))
        .field("b2", text(&inst.rhs.b2))
        .field("phi", text(&r.phi))
        .field("psi", text(&r.psi))
        .field("gap", text(&r.gap))
        .field("gap_defined", r.gap_defined)
        .field("beta_bar", text(&r.beta_bar))
        .field("u_bar", text(&r.u_bar))
        .field("attainment", text(attainment))
        .field("witness_y1", witness.map(|y| &y.y1))
        .field("witness_y2", witness.map(|y| &y.y2))
        .field("psi_lo", lo)
        .field("psi_hi", hi)
}

pub fn gap(inst: &Instance, eps: &Ratio, confirm: Option<&[u64]>) -> CliResult<Doc> {
    let report = gap_report_with_eps(&inst.cost, &inst.rhs, eps);
    let mut doc = gap_doc(inst, &report);
    if let Some(ns) = confirm {
        doc.push("confirmed", confirm_report(&report, &inst.cost, &inst.rhs, ns)?);
    }
    Ok(doc)
}

pub fn dual_check(inst: &Instance, y: &DualPoint, eps: &Ratio) -> CliResult<Doc> {
    let (c, b) = (&inst.cost, &inst.rhs);
    let feasible = c.dual_feasible(y);
    let objective = b.objective(y);
    let sup = dual_sup_general(c, b, eps)?;
    // optimal only when ψ is known exactly and reached
    let optimal = feasible && sup.exact().and_then(|v| v.into_finite()).is_some_and(|v| v == objective);
    let psi = match &sup {
        DualSup::Enclosure { lo, hi, .. } => format!("[{lo}, {hi}]"),
        other => other.lower().to_string(),
    };
    Ok(Doc::new()
        .field("y1", text(&y.y1))
        .field("y2", text(&y.y2))
        .field("feasible", feasible)
        .field("hc_conjugate", text(c.hc_conjugate(y)))
        .field("objective", text(objective))
        .field("psi", text(psi))
        .field("optimal", optimal))
}

pub fn sweep(inst: &Instance, ns: &[u64]) -> CliResult<Table> {
    let rows = truncation_sweep(&inst.cost, &inst.rhs, ns)?;
    let mut t = Table::new(&["N", "primal", "dual"]);
    for r in rows {
        t.row(vec![text(r.n), text(r.primal), text(r.dual)]);
    }
    Ok(t)
}

/// `MIN:MAX[:DEN]`: the points `k/DEN` with `MIN ≤ k/DEN ≤ MAX`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub min: i64,
    pub max: i64,
    pub den: i64,
}

impl Grid {
    pub fn parse(s: &str) -> CliResult<Grid> {
        let bad = || CliError::parse("--grid", format!("expected MIN:MAX[:DEN], got {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.trim().parse::<i64>().map_err(|_| bad());
        let grid = match parts.as_slice() {
            [a, b] => Grid { min: num(a)?, max: num(b)?, den: 1 },
            [a, b, d] => Grid { min: num(a)?, max: num(b)?, den: num(d)? },
            _ => return Err(bad()),
        };
        if grid.den < 1 || grid.min > grid.max {
            return Err(bad());
        }
        Ok(grid)
    }

    pub fn values(&self) -> Vec<Ratio> {
        (self.min * self.den..=self.max * self.den)
            .map(|k| Ratio::new(k.into(), self.den.into()))
            .collect()
    }

    fn cube_size(&self) -> usize {
        let n = ((self.max - self.min) * self.den + 1) as usize;
        n.saturating_mul(n).saturating_mul(n)
    }
}

fn check_size(g: &Grid) -> CliResult<()> {
    if g.cube_size() > MAX_GRID_POINTS {
        return Err(CliError::Contract(format!("grid has more than {MAX_GRID_POINTS} points")));
    }
    Ok(())
}

/// Rows for every grid point with `y3 ≤ 0`.
pub fn excone(g: &Grid) -> CliResult<Table> {
    check_size(g)?;
    let vals = g.values();
    let mut t = Table::new(&["y1", "y2", "y3", "phi", "psi", "gap"]);
    for y1 in &vals {
        for y2 in &vals {
            for y3 in vals.iter().filter(|v| **v <= Ratio::from_integer(0.into())) {
                let y = Point3::new(y1.clone(), y2.clone(), y3.clone());
                let (phi, psi, gap) = gap_exz(&y)?;
                t.row(vec![text(y1), text(y2), text(y3), text(phi), text(psi), text(gap)]);
            }
        }
    }
    Ok(t)
}

pub fn vsw_grid(g: &Grid) -> CliResult<Table> {
    check_size(g)?;
    let vals = g.values();
    let mut t = Table::new(&["eta", "y1", "y2", "in_C0", "in_C1", "in_Cprime", "in_clCprime"]);
    for eta in &vals {
        for y1 in &vals {
            for y2 in &vals {
                let p = EtaPoint::new(eta.clone(), y1.clone(), y2.clone());
                t.row(vec![
                    text(eta),
                    text(y1),
                    text(y2),
                    in_c0(&p).into(),
                    in_c1(&p).into(),
                    in_cprime(&p).into(),
                    in_cl_cprime(&p).into(),
                ]);
            }
        }
    }
    Ok(t)
}

pub fn vsw_point(p: &EtaPoint) -> CliResult<Doc> {
    let line = line_intersections(p);
    let witness = if in_c1(p) {
        let w = c1_witness(p)?;
        let entries: Vec<String> = w.entries().iter().map(|(n, x)| format!("{n}:{x}")).collect();
        Cell::Text(entries.join(" "))
    } else {
        Cell::None
    };
    Ok(Doc::new()
        .field("eta", text(&p.eta))
        .field("y1", text(&p.y1))
        .field("y2", text(&p.y2))
        .field("in_C0", in_c0(p))
        .field("in_C1", in_c1(p))
        .field("in_Cprime", in_cprime(p))
        .field("in_clCprime", in_cl_cprime(p))
        .field("on_L", line.on_line)
        .field("in_L_Cprime", line.in_l_cprime)
        .field("in_L_clCprime", line.in_l_cl_cprime)
        .field("witness", witness))
}

pub fn fixture(f: Fixture, n: u64) -> CliResult<Doc> {
    let s = dspace_fixture_partial_sums(f, n)?;
    Ok(Doc::new()
        .field("fixture", text(f.name()))
        .field("classification", text(f.classification()))
        .field("N", text(n))
        .field("sum", text(&s.sum))
        .field("abs_sum", text(&s.abs_sum))
        .field("weighted_sum", text(&s.weighted))
        .field("abs_weighted_sum", text(&s.abs_weighted)))
}

/// Comma-separated rationals, exactly `N` of them.
pub fn parse_tuple<const N: usize>(s: &str, flag: &str) -> CliResult<[Ratio; N]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(CliError::parse(flag, format!("expected {N} comma-separated rationals, got {s:?}")));
    }
    let vals = parts
        .iter()
        .map(|p| parse_ratio(p).map_err(|_| CliError::parse(flag, format!("not a rational: {p:?}"))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(vals.try_into().expect("length checked"))
}

pub fn parse_ns(s: &str) -> CliResult<Vec<u64>> {
    s.split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| CliError::parse("--ns", format!("not a truncation level: {p:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use galegap_core::numeric::{int, ratio};

    #[test]
    fn grid_parsing() {
        assert_eq!(Grid::parse("-3:3").unwrap(), Grid { min: -3, max: 3, den: 1 });
        assert_eq!(Grid::parse("0:1:4").unwrap().values().len(), 5);
        assert_eq!(Grid::parse("0:1:4").unwrap().values()[1], ratio(1, 4));
        for bad in ["3:-3", "1", "0:1:0", "a:b", "0:1:2:3"] {
            assert!(Grid::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn tuple_parsing() {
        assert_eq!(parse_tuple::<2>("1/2, -3", "--point").unwrap(), [ratio(1, 2), int(-3)]);
        assert!(parse_tuple::<2>("1", "--point").is_err());
        assert!(parse_tuple::<3>("1,2,x", "--point").is_err());
        assert_eq!(parse_ns("1,10, 100").unwrap(), vec![1, 10, 100]);
        assert!(parse_ns("1,-2").is_err());
    }

    #[test]
    fn oversized_grid_is_a_contract_violation() {
        let g = Grid::parse("-100:100:1").unwrap();
        assert!(matches!(excone(&g), Err(CliError::Contract(_))));
    }

    #[test]
    fn excone_rows_skip_positive_y3() {
        let t = excone(&Grid::parse("-1:1").unwrap()).unwrap();
        assert_eq!(t.rows().len(), 3 * 3 * 2);
    }
}
