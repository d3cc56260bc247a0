use rayon::prelude::*;

use morse_scatter::bound::{aux_spectrum, delta_e, phys_spectrum};
use morse_scatter::oracle::oracle_phase_shift;
use morse_scatter::potential::{eval_potential, v_scaled, z_of_r, EV};
use morse_scatter::scatter::{
    aux_phase_shift_gamma, aux_phase_shift_series, aux_scattering_params, phys_phase_shift,
    phys_scattering_params, split_mod_pi,
};
use morse_scatter::{Condition, DimensionlessParams, Error, Precision};

use crate::args::{
    build_precision, resolve_params, BoundArgs, CommonArgs, ConditionArg, ObservablesArgs,
    PhaseArgs, PhaseColumn, PotentialArgs, ResolvedParams, SweepSpec,
};
use crate::table::{Cell, Table};

pub enum CmdError {
    Config(String),
    Numerical { row: String, message: String },
}

type CmdResult = Result<Table, CmdError>;

fn config_err(msg: impl Into<String>) -> CmdError {
    CmdError::Config(msg.into())
}

/// Errors that are an expected feature of the parameter landscape: the row
/// is emitted with a flag instead of aborting the sweep.
fn soft_flag(e: &Error) -> Option<&'static str> {
    match e {
        Error::UnitarityPole { .. } => Some("unitarity_pole"),
        Error::ZeroScatteringLength { .. } => Some("zero_scattering_length"),
        Error::FitInstability { .. } => Some("fit_unstable"),
        _ => None,
    }
}

fn thread_pool(common: &CommonArgs) -> Result<rayon::ThreadPool, CmdError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = common.jobs {
        if jobs == 0 {
            return Err(config_err("--jobs must be at least 1"));
        }
        builder = builder.num_threads(jobs);
    }
    builder.build().map_err(|e| config_err(format!("thread pool: {e}")))
}

fn common_config(table: &mut Table, command: &str, common: &CommonArgs, rp: &ResolvedParams) {
    table.config.push(("command".into(), command.into()));
    if let Some(echo) = &rp.preset_echo {
        table.config.push(("preset".into(), echo.clone()));
    }
    if let Some(p) = &rp.physical {
        table.config.push(("depth_mev".into(), format!("{}", p.depth / EV * 1e3)));
        table.config.push(("beta_per_m".into(), format!("{}", p.beta)));
        table.config.push(("r0_m".into(), format!("{}", p.r0)));
        table.config.push(("mu_kg".into(), format!("{}", p.mu)));
    }
    if let Some(d) = rp.d {
        table.config.push(("d".into(), format!("{d}")));
    }
    if let Some(b) = rp.beta_r0 {
        table.config.push(("beta_r0".into(), format!("{b}")));
    }
    if let Some(sweep) = &common.sweep {
        table.config.push(("sweep".into(), sweep.echo()));
    }
    table.config.push(("condition".into(), common.condition.to_string()));
    if let Some(jobs) = common.jobs {
        table.config.push(("jobs".into(), format!("{jobs}")));
    }
}

pub fn cmd_potential(args: &PotentialArgs) -> CmdResult {
    let common = &args.common;
    let rp = resolve_params(common).map_err(config_err)?;
    let (d, beta_r0) = match (rp.d, rp.beta_r0) {
        (Some(d), Some(b)) => (d, b),
        _ => return Err(config_err("potential needs --d and --beta-r0 (or a preset)")),
    };
    let dp = rp.params_at(d, beta_r0).map_err(config_err)?;

    let xs: Vec<f64> = match &common.sweep {
        Some(s) if s.var == "r" => s.points(),
        Some(s) => return Err(config_err(format!("potential sweeps over r, not '{}'", s.var))),
        None => {
            // default grid, with beta*r0 itself inserted so the minimum is a row
            let mut xs: Vec<f64> = SweepSpec {
                var: "r".into(),
                start: 0.0,
                stop: beta_r0 + 10.0,
                n: 501,
                log: false,
            }
            .points();
            if !xs.contains(&beta_r0) {
                xs.push(beta_r0);
                xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            }
            xs
        }
    };

    let mut table = Table::new(vec!["beta_r", "z", "v_scaled", "r_m", "v_mev"]);
    common_config(&mut table, "potential", common, &rp);
    for x in xs {
        let mut row = vec![
            Cell::F(x),
            Cell::F(z_of_r(&dp, x)),
            Cell::F(v_scaled(&dp, x)),
        ];
        if let Some(p) = &rp.physical {
            let r = x / p.beta;
            row.push(Cell::F(r));
            row.push(Cell::F(eval_potential(p, r) / EV * 1e3));
        } else {
            row.push(Cell::Empty);
            row.push(Cell::Empty);
        }
        table.rows.push(row);
    }
    Ok(table)
}

struct BoundPoint {
    d: f64,
    beta_r0: f64,
}

pub fn cmd_bound(args: &BoundArgs) -> CmdResult {
    let common = &args.common;
    let rp = resolve_params(common).map_err(config_err)?;
    let prec = build_precision(common).map_err(config_err)?;
    let pool = thread_pool(common)?;

    let mut points = Vec::new();
    if args.figure2 {
        if args.beta_r0_list.is_empty() {
            return Err(config_err("--figure2 needs a non-empty --beta-r0-list"));
        }
        let sweep = common.sweep.clone().unwrap_or(SweepSpec {
            var: "d".into(),
            start: 0.55,
            stop: 6.0,
            n: 120,
            log: false,
        });
        if sweep.var != "d" {
            return Err(config_err("--figure2 sweeps over d"));
        }
        for &b in &args.beta_r0_list {
            for d in sweep.points() {
                points.push(BoundPoint { d, beta_r0: b });
            }
        }
    } else {
        match &common.sweep {
            Some(s) if s.var == "d" => {
                let b = rp.beta_r0.ok_or_else(|| config_err("d sweep needs --beta-r0"))?;
                points.extend(s.points().into_iter().map(|d| BoundPoint { d, beta_r0: b }));
            }
            Some(s) if s.var == "beta-r0" || s.var == "beta_r0" => {
                let d = rp.d.ok_or_else(|| config_err("beta-r0 sweep needs --d"))?;
                points.extend(s.points().into_iter().map(|b| BoundPoint { d, beta_r0: b }));
            }
            Some(s) => return Err(config_err(format!("bound cannot sweep '{}'", s.var))),
            None => {
                let dp = rp.fixed().map_err(config_err)?;
                points.push(BoundPoint { d: dp.d, beta_r0: dp.beta_r0 });
            }
        }
    }

    let condition = common.condition;
    let results: Vec<Result<Vec<Vec<Cell>>, (String, String)>> = pool.install(|| {
        points
            .par_iter()
            .map(|pt| bound_rows_for_point(pt, condition, &prec))
            .collect()
    });

    let mut table = Table::new(vec![
        "d",
        "beta_r0",
        "count_aux",
        "count_phys",
        "n",
        "b_aux",
        "energy_aux",
        "b_phys",
        "energy_phys",
        "delta_e",
        "flags",
    ]);
    common_config(&mut table, "bound", common, &rp);
    if args.figure2 {
        table.config.push(("figure2".into(), format!("beta_r0_list = {:?}", args.beta_r0_list)));
    }
    for result in results {
        match result {
            Ok(rows) => table.rows.extend(rows),
            Err((row, message)) => return Err(CmdError::Numerical { row, message }),
        }
    }
    Ok(table)
}

fn bound_rows_for_point(
    pt: &BoundPoint,
    condition: ConditionArg,
    prec: &Precision,
) -> Result<Vec<Vec<Cell>>, (String, String)> {
    let tag = || format!("d={}, beta_r0={}", pt.d, pt.beta_r0);
    let dp = DimensionlessParams::new(pt.d, pt.beta_r0).map_err(|e| (tag(), e.to_string()))?;

    let aux = if condition != ConditionArg::Phys { aux_spectrum(&dp) } else { Vec::new() };
    let want_phys = condition != ConditionArg::Aux;
    let (phys, deltas) = if want_phys {
        let phys = phys_spectrum(&dp, prec).map_err(|e| (tag(), e.to_string()))?;
        let deltas = delta_e(&dp, prec).map_err(|e| (tag(), e.to_string()))?;
        (phys, deltas)
    } else {
        (Vec::new(), Vec::new())
    };

    let count_aux = if condition == ConditionArg::Phys {
        aux_spectrum(&dp).len()
    } else {
        aux.len()
    };
    let n_levels = aux.len().max(phys.len());
    let mut rows = Vec::new();
    if n_levels == 0 {
        rows.push(vec![
            Cell::F(pt.d),
            Cell::F(pt.beta_r0),
            Cell::I(count_aux as i64),
            Cell::I(phys.len() as i64),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::S("no_bound_states".into()),
        ]);
        return Ok(rows);
    }

    for n in 0..n_levels {
        let a = aux.iter().find(|s| s.n == n);
        let p = phys.iter().find(|s| s.n == n);
        let de = deltas.iter().find(|r| r.n == n).and_then(|r| r.delta);
        let mut flags = Vec::new();
        if want_phys && a.is_some() && p.is_none() {
            flags.push("missing_physical");
        }
        rows.push(vec![
            Cell::F(pt.d),
            Cell::F(pt.beta_r0),
            Cell::I(count_aux as i64),
            Cell::I(phys.len() as i64),
            Cell::I(n as i64),
            a.map_or(Cell::Empty, |s| Cell::F(s.b)),
            a.map_or(Cell::Empty, |s| Cell::F(s.energy_scaled)),
            p.map_or(Cell::Empty, |s| Cell::F(s.b)),
            p.map_or(Cell::Empty, |s| Cell::F(s.energy_scaled)),
            de.map_or(Cell::Empty, Cell::F),
            if flags.is_empty() { Cell::Empty } else { Cell::S(flags.join(";")) },
        ]);
    }
    Ok(rows)
}

pub fn cmd_phase(args: &PhaseArgs) -> CmdResult {
    let common = &args.common;
    let rp = resolve_params(common).map_err(config_err)?;
    let prec = build_precision(common).map_err(config_err)?;
    let pool = thread_pool(common)?;
    let dp = rp.fixed().map_err(|_| {
        config_err("phase needs fixed --d and --beta-r0 (or a preset); the sweep runs over k")
    })?;

    let sweep = common.sweep.clone().unwrap_or(SweepSpec {
        var: "k".into(),
        start: 0.01,
        stop: 2.0,
        n: 200,
        log: false,
    });
    if sweep.var != "k" {
        return Err(config_err(format!("phase sweeps over k, not '{}'", sweep.var)));
    }
    if !(sweep.start > 0.0) {
        return Err(config_err("phase sweep needs k > 0"));
    }
    let ks = sweep.points();

    let mut columns = vec!["k_over_beta"];
    let selected = &args.columns;
    for col in selected {
        match col {
            PhaseColumn::Series => columns.extend(["delta0_series", "branch_series"]),
            PhaseColumn::Gamma => columns.extend(["delta0_gamma", "branch_gamma"]),
            PhaseColumn::Phys => columns.extend(["delta0_phys", "branch_phys"]),
            PhaseColumn::OracleAux => columns.extend(["delta0_oracle_aux", "branch_oracle_aux"]),
            PhaseColumn::OraclePhys => columns.extend(["delta0_oracle_phys", "branch_oracle_phys"]),
        }
    }

    // raw angles per route, computed in parallel over k
    let raw: Vec<Result<Vec<f64>, (String, String)>> = pool.install(|| {
        ks.par_iter()
            .map(|&k| {
                let tag = || format!("k={k}");
                let mut values = Vec::with_capacity(selected.len());
                for col in selected {
                    let angle = match col {
                        PhaseColumn::Series => aux_phase_shift_series(&dp, k, &prec)
                            .map(|s| s.total()),
                        PhaseColumn::Gamma => aux_phase_shift_gamma(&dp, k).map(|s| s.total()),
                        PhaseColumn::Phys => phys_phase_shift(&dp, k, &prec).map(|s| s.total()),
                        PhaseColumn::OracleAux => {
                            oracle_phase_shift(&dp, Condition::Auxiliary, k, &prec)
                                .map(|s| s.total())
                        }
                        PhaseColumn::OraclePhys => {
                            oracle_phase_shift(&dp, Condition::Physical, k, &prec)
                                .map(|s| s.total())
                        }
                    };
                    values.push(angle.map_err(|e| (tag(), e.to_string()))?);
                }
                Ok(values)
            })
            .collect()
    });

    let mut per_point = Vec::with_capacity(raw.len());
    for r in raw {
        match r {
            Ok(v) => per_point.push(v),
            Err((row, message)) => return Err(CmdError::Numerical { row, message }),
        }
    }

    // sequential branch tracking per column: keep each column continuous in k
    let n_cols = selected.len();
    let mut tracked = vec![Vec::with_capacity(ks.len()); n_cols];
    for (c, track) in tracked.iter_mut().enumerate() {
        let needs_tracking = matches!(
            selected[c],
            PhaseColumn::Phys | PhaseColumn::OracleAux | PhaseColumn::OraclePhys
        );
        let mut prev: Option<f64> = None;
        for point in &per_point {
            let raw_angle = point[c];
            let angle = match (needs_tracking, prev) {
                (true, Some(p)) => {
                    raw_angle + std::f64::consts::PI * ((p - raw_angle) / std::f64::consts::PI).round()
                }
                _ => raw_angle,
            };
            prev = Some(angle);
            track.push(angle);
        }
    }

    let mut table = Table::new(columns);
    common_config(&mut table, "phase", common, &rp);
    if common.sweep.is_none() {
        table.config.push(("sweep".into(), sweep.echo()));
    }
    for (i, &k) in ks.iter().enumerate() {
        let mut row = vec![Cell::F(k)];
        for track in tracked.iter() {
            let (principal, branch) = split_mod_pi(track[i]);
            row.push(Cell::F(principal));
            row.push(Cell::I(branch));
        }
        table.rows.push(row);
    }
    Ok(table)
}

struct ObsPoint {
    d: f64,
    beta_r0: f64,
}

pub fn cmd_observables(args: &ObservablesArgs) -> CmdResult {
    let common = &args.common;
    if args.figure1 && args.figure3 {
        return Err(config_err("choose one of --figure1 and --figure3"));
    }
    let rp = resolve_params(common).map_err(config_err)?;
    let prec = build_precision(common).map_err(config_err)?;
    let pool = thread_pool(common)?;

    let mut condition = common.condition;
    let points: Vec<ObsPoint> = if args.figure1 || args.figure3 {
        let sweep = common.sweep.clone().unwrap_or(SweepSpec {
            var: "d".into(),
            start: 0.05,
            stop: if args.figure1 { 8.0 } else { 4.0 },
            n: if args.figure1 { 2000 } else { 200 },
            log: false,
        });
        if sweep.var != "d" {
            return Err(config_err("figure modes sweep over d"));
        }
        if args.figure1 {
            condition = ConditionArg::Aux;
        }
        let b = rp.beta_r0.unwrap_or(4.15);
        sweep.points().into_iter().map(|d| ObsPoint { d, beta_r0: b }).collect()
    } else {
        match &common.sweep {
            Some(s) if s.var == "d" => {
                let b = rp.beta_r0.ok_or_else(|| config_err("d sweep needs --beta-r0"))?;
                s.points().into_iter().map(|d| ObsPoint { d, beta_r0: b }).collect()
            }
            Some(s) if s.var == "beta-r0" || s.var == "beta_r0" => {
                let d = rp.d.ok_or_else(|| config_err("beta-r0 sweep needs --d"))?;
                s.points().into_iter().map(|b| ObsPoint { d, beta_r0: b }).collect()
            }
            Some(s) => return Err(config_err(format!("observables cannot sweep '{}'", s.var))),
            None => {
                let dp = rp.fixed().map_err(config_err)?;
                vec![ObsPoint { d: dp.d, beta_r0: dp.beta_r0 }]
            }
        }
    };

    let results: Vec<Result<(Vec<Cell>, bool), (String, String)>> = pool.install(|| {
        points
            .par_iter()
            .map(|pt| observables_row(pt, condition, &prec))
            .collect()
    });

    let mut table = Table::new(vec![
        "d",
        "beta_r0",
        "a_aux_beta",
        "re_aux_beta",
        "a_phys_beta",
        "re_phys_beta",
        "re_rel_diff",
        "flags",
    ]);
    common_config(&mut table, "observables", common, &rp);
    if args.figure1 {
        table.config.push(("figure1".into(), "true".into()));
    }
    if args.figure3 {
        table.config.push(("figure3".into(), "true".into()));
    }
    for result in results {
        match result {
            Ok((row, flagged)) => {
                if flagged {
                    table.soft_flagged_rows += 1;
                }
                table.rows.push(row);
            }
            Err((row, message)) => return Err(CmdError::Numerical { row, message }),
        }
    }
    Ok(table)
}

fn observables_row(
    pt: &ObsPoint,
    condition: ConditionArg,
    prec: &Precision,
) -> Result<(Vec<Cell>, bool), (String, String)> {
    let tag = || format!("d={}, beta_r0={}", pt.d, pt.beta_r0);
    let dp = DimensionlessParams::new(pt.d, pt.beta_r0).map_err(|e| (tag(), e.to_string()))?;
    let mut flags: Vec<String> = Vec::new();

    // points within 1e-6 of a half-integer are computed but marked
    let nearest = (pt.d - 0.5).round();
    if nearest >= 0.0 && (pt.d - (nearest + 0.5)).abs() < 1e-6 {
        flags.push("near_unitarity".into());
    }

    let mut a_aux = Cell::Empty;
    let mut re_aux = Cell::Empty;
    let mut a_phys = Cell::Empty;
    let mut re_phys = Cell::Empty;
    let mut re_diff = Cell::Empty;
    let mut re_aux_val = None;
    let mut re_phys_val = None;

    if condition != ConditionArg::Phys {
        match aux_scattering_params(&dp, prec) {
            Ok(obs) => {
                a_aux = Cell::F(obs.a_beta);
                re_aux = Cell::F(obs.re_beta);
                re_aux_val = Some(obs.re_beta);
                if obs.resonant {
                    flags.push("resonant_aux".into());
                }
            }
            Err(e) => match soft_flag(&e) {
                Some(f) => flags.push(format!("aux_{f}")),
                None => return Err((tag(), e.to_string())),
            },
        }
    }
    if condition != ConditionArg::Aux {
        match phys_scattering_params(&dp, prec) {
            Ok(obs) => {
                a_phys = Cell::F(obs.a_beta);
                re_phys = Cell::F(obs.re_beta);
                re_phys_val = Some(obs.re_beta);
                if obs.resonant {
                    flags.push("resonant_phys".into());
                }
            }
            Err(e) => match soft_flag(&e) {
                Some(f) => flags.push(format!("phys_{f}")),
                None => return Err((tag(), e.to_string())),
            },
        }
    }
    if let (Some(ra), Some(rp_)) = (re_aux_val, re_phys_val) {
        if ra != 0.0 {
            re_diff = Cell::F(((rp_ - ra) / ra).abs());
        }
    }

    let flagged = !flags.is_empty();
    let flags_cell = if flags.is_empty() { Cell::Empty } else { Cell::S(flags.join(";")) };
    Ok((
        vec![
            Cell::F(pt.d),
            Cell::F(pt.beta_r0),
            a_aux,
            re_aux,
            a_phys,
            re_phys,
            re_diff,
            flags_cell,
        ],
        flagged,
    ))
}
