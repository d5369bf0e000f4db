use serde::Serialize;
use serde_json::{json, Value};

use symscat_core::noninjective::{
    build_counterexample, verify_same_smatrix, BumpVariant, SameSMatrixReport,
};
use symscat_core::potential::validate;
use symscat_core::smatrix::{
    analytic_delta, analytic_square_well, fundamental_quads, smatrix_via_eq11, smatrix_via_transfer,
};
use symscat_core::spectral::{fredholm_report, jost_forms, phase_shift};
use symscat_core::szego::{szego_limit_check, toeplitz_log_det, ArcSymbol};
use symscat_core::{
    noninjective, propagate, BoundaryData, Complex64, Energy, PotentialSpec, SMatrix,
};

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::io::{csv_table, read_sampled_potential, read_trace};

pub fn execute(command: &Command) -> CliResult<String> {
    match command {
        Command::Smatrix(a) => smatrix(a),
        Command::Counterexample(a) => counterexample(a),
        Command::Fredholm(a) => fredholm(a),
        Command::Szego(a) => szego(a),
        Command::Phaseshift(a) => phaseshift(a),
        Command::Recover(a) => recover(a),
        Command::Trace(a) => trace(a),
    }
}

pub fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::Smatrix(a) => &a.output,
        Command::Counterexample(a) => &a.output,
        Command::Fredholm(a) => &a.output,
        Command::Szego(a) => &a.output,
        Command::Phaseshift(a) => &a.output,
        Command::Recover(a) => &a.output,
        Command::Trace(a) => &a.output,
    }
}

fn report(command: &str, config: &impl Serialize, body: Value) -> CliResult<String> {
    let mut doc = json!({
        "command": command,
        "config": serde_json::to_value(config).map_err(|e| CliError::Io(e.into()))?,
    });
    if let (Value::Object(doc), Value::Object(body)) = (&mut doc, body) {
        doc.extend(body);
    }
    let mut text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.into()))?;
    text.push('\n');
    Ok(text)
}

fn cx(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn smatrix_json(energy: f64, s: &SMatrix) -> Value {
    json!({
        "energy": energy,
        "k": s.k,
        "a": s.half_width,
        "s11": cx(s.s11),
        "s12": cx(s.s12),
        "s21": cx(s.s21),
        "s22": cx(s.s22),
        "abs_s11_sq": s.reflection_probability(),
        "abs_s21_sq": s.transmission_probability(),
        "unitarity_residual": s.unitarity_residual(),
        "parity_residual": s.parity_residual,
    })
}

fn boundary_json(bd: &BoundaryData) -> Value {
    json!({
        "psi_left": cx(bd.psi_left),
        "dpsi_left": cx(bd.dpsi_left),
        "psi_right": cx(bd.psi_right),
        "dpsi_right": cx(bd.dpsi_right),
    })
}

fn potential_spec(args: &PotentialArgs) -> CliResult<PotentialSpec> {
    match (args.well, args.delta, &args.sampled) {
        (Some((depth, half_width)), None, None) => {
            Ok(PotentialSpec::SquareWell { depth, half_width })
        }
        (None, Some(strength), None) => Ok(PotentialSpec::Delta { strength }),
        (None, None, Some(path)) => read_sampled_potential(path),
        _ => Err(CliError::Usage(
            "give exactly one of --well, --delta, --sampled".into(),
        )),
    }
}

fn smatrix(args: &SmatrixArgs) -> CliResult<String> {
    let spec = potential_spec(&args.potential)?;
    let energies = match (args.energy.energy, args.energy.energy_grid) {
        (Some(e), None) => vec![e],
        (None, Some(grid)) => grid.points(),
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --energy, --energy-grid".into(),
            ))
        }
    };
    let is_delta = matches!(spec, PotentialSpec::Delta { .. });
    let route = args.route.unwrap_or(if is_delta {
        Route::Analytic
    } else {
        Route::Transfer
    });
    match (&spec, route) {
        (PotentialSpec::Delta { .. }, Route::Transfer | Route::TwoSolution) => {
            return Err(CliError::Usage(
                "a delta potential only has the analytic route".into(),
            ))
        }
        (PotentialSpec::Sampled { .. }, Route::Analytic) => {
            return Err(CliError::Usage(
                "sampled potentials have no analytic route".into(),
            ))
        }
        _ => {}
    }
    let pot = validate(&spec)?;

    let mut results = Vec::with_capacity(energies.len());
    for &e in &energies {
        let energy = Energy::new(e)?;
        let s = match (route, &spec) {
            (Route::Analytic, &PotentialSpec::SquareWell { depth, half_width }) => {
                analytic_square_well(depth, half_width, energy)?
            }
            (Route::Analytic, &PotentialSpec::Delta { strength }) => {
                analytic_delta(strength, energy)?
            }
            (Route::TwoSolution, _) => {
                let [q1, q2] = fundamental_quads(&pot, energy, args.steps)?;
                smatrix_via_eq11(&q1, &q2, energy.wavenumber(), pot.half_width())?
            }
            _ => smatrix_via_transfer(&pot, energy, args.steps)?,
        };
        results.push((e, s));
    }

    match args.output.format {
        Format::Json => {
            let rows: Vec<Value> = results.iter().map(|(e, s)| smatrix_json(*e, s)).collect();
            report("smatrix", args, json!({ "route": route, "results": rows }))
        }
        Format::Csv => csv_table(
            &[
                "E",
                "k",
                "re_s11",
                "im_s11",
                "re_s12",
                "im_s12",
                "re_s21",
                "im_s21",
                "re_s22",
                "im_s22",
                "abs_s11_sq",
                "abs_s21_sq",
                "unitarity_residual",
                "parity_residual",
            ],
            results.iter().map(|(e, s)| {
                vec![
                    Some(*e),
                    Some(s.k),
                    Some(s.s11.re),
                    Some(s.s11.im),
                    Some(s.s12.re),
                    Some(s.s12.im),
                    Some(s.s21.re),
                    Some(s.s21.im),
                    Some(s.s22.re),
                    Some(s.s22.im),
                    Some(s.reflection_probability()),
                    Some(s.transmission_probability()),
                    Some(s.unitarity_residual()),
                    Some(s.parity_residual),
                ]
            }),
        ),
    }
}

fn comparison_json(r: &SameSMatrixReport) -> Value {
    json!({
        "energy": r.energy.value(),
        "s_baseline": smatrix_json(r.energy.value(), &r.s_baseline),
        "s_perturbed": smatrix_json(r.energy.value(), &r.s_perturbed),
        "max_entry_diff": r.max_entry_diff,
        "even_channel_diff": r.even_channel_diff,
        "odd_channel_diff": r.odd_channel_diff,
    })
}

fn counterexample(args: &CounterexampleArgs) -> CliResult<String> {
    let variant = match args.bump {
        Bump::Smooth => BumpVariant::Smooth,
        Bump::Paper => BumpVariant::PaperLiteral,
    };
    let energy = Energy::new(args.energy)?;
    let pair = build_counterexample(args.q, args.eps, args.a, variant, energy, args.grid_steps)?;

    let xs: Vec<f64> = pair.baseline.trace.grid().collect();
    let masked = |p: &noninjective::RecoveredPotential, i: usize| (!p.mask[i]).then(|| p.values[i]);
    let table = || {
        csv_table(
            &["x", "psi0", "psi", "V0", "V"],
            (0..xs.len()).map(|i| {
                vec![
                    Some(xs[i]),
                    Some(pair.baseline.trace.psi()[i].re),
                    Some(pair.perturbed.trace.psi()[i].re),
                    masked(&pair.baseline.potential, i),
                    masked(&pair.perturbed.potential, i),
                ]
            }),
        )
    };
    if args.output.format == Format::Csv {
        return table();
    }

    let at_construction = verify_same_smatrix(&pair, energy, args.steps)?;
    let shifted = verify_same_smatrix(
        &pair,
        Energy::new(args.energy + args.energy_shift)?,
        args.steps,
    )?;
    if let Some(path) = &args.trace_csv {
        std::fs::write(path, table()?)?;
    }
    let column = |p: &noninjective::RecoveredPotential| -> Vec<Value> {
        (0..xs.len())
            .map(|i| masked(p, i).map_or(Value::Null, Value::from))
            .collect()
    };
    report(
        "counterexample",
        args,
        json!({
            "kink_warning": pair.kink_warning(),
            "separation": pair.separation,
            "boundary_residual": pair.boundary_residual,
            "boundary": {
                "baseline": boundary_json(&pair.baseline.trace.boundary()),
                "perturbed": boundary_json(&pair.perturbed.trace.boundary()),
            },
            "construction_energy": comparison_json(&at_construction),
            "shifted_energy": comparison_json(&shifted),
            "potentials": {
                "x": xs,
                "V0": column(&pair.baseline.potential),
                "V": column(&pair.perturbed.potential),
            },
        }),
    )
}

fn fredholm(args: &FredholmArgs) -> CliResult<String> {
    let r = fredholm_report(&args.t.0, args.quad)?;
    match args.output.format {
        Format::Json => report(
            "fredholm",
            args,
            json!({
                "quad_order": r.quad_order,
                "t_grid": r.t_grid,
                "logF_plus": r.log_f_plus,
                "logF_minus": r.log_f_minus,
                "asym_residual_plus": r.asym_residual_plus,
                "asym_residual_minus": r.asym_residual_minus,
                "W_plus": r.w_plus,
                "W_minus": r.w_minus,
                "delta_identity_plus": r.delta_identity_plus,
                "delta_identity_minus": r.delta_identity_minus,
            }),
        ),
        Format::Csv => csv_table(
            &[
                "t",
                "logF+",
                "logF-",
                "asym_res+",
                "asym_res-",
                "W+",
                "W-",
                "deltaid+",
                "deltaid-",
            ],
            (0..r.t_grid.len()).map(|i| {
                vec![
                    Some(r.t_grid[i]),
                    Some(r.log_f_plus[i]),
                    Some(r.log_f_minus[i]),
                    Some(r.asym_residual_plus[i]),
                    Some(r.asym_residual_minus[i]),
                    r.w_plus[i],
                    r.w_minus[i],
                    r.delta_identity_plus[i],
                    r.delta_identity_minus[i],
                ]
            }),
        ),
    }
}

fn szego(args: &SzegoArgs) -> CliResult<String> {
    match (args.alpha, args.t) {
        (Some(alpha), None) => {
            let symbol = ArcSymbol::new(alpha)?;
            let results = args
                .n
                .iter()
                .map(|&n| toeplitz_log_det(symbol, n))
                .collect::<Result<Vec<_>, _>>()?;
            match args.output.format {
                Format::Json => {
                    let rows: Vec<Value> = results
                        .iter()
                        .map(|r| {
                            json!({
                                "n": r.n,
                                "alpha": r.alpha,
                                "log_det": r.log_det,
                                "asymptotic_eq86": r.asymptotic,
                                "residual": r.residual,
                                "precision_bits": r.precision_bits,
                            })
                        })
                        .collect();
                    report("szego", args, json!({ "results": rows }))
                }
                Format::Csv => csv_table(
                    &["n", "alpha", "log_det", "asymptotic_eq86", "residual"],
                    results.iter().map(|r| {
                        vec![
                            Some(r.n as f64),
                            Some(r.alpha),
                            Some(r.log_det),
                            Some(r.asymptotic),
                            Some(r.residual),
                        ]
                    }),
                ),
            }
        }
        (None, Some(t)) => {
            let results = args
                .n
                .iter()
                .map(|&n| {
                    szego_limit_check(2.0 * std::f64::consts::PI * t / n as f64, n, t, args.quad)
                })
                .collect::<Result<Vec<_>, _>>()?;
            match args.output.format {
                Format::Json => {
                    let rows: Vec<Value> = results
                        .iter()
                        .map(|r| {
                            json!({
                                "n": r.n,
                                "alpha": r.alpha,
                                "t": r.t,
                                "log_det": r.log_det,
                                "log_f": r.log_f,
                                "log_f_asymptotic": r.log_f_asymptotic,
                                "gap_to_fredholm": r.gap_to_fredholm,
                                "gap_to_asymptotic": r.gap_to_asymptotic,
                            })
                        })
                        .collect();
                    report("szego", args, json!({ "limit_checks": rows }))
                }
                Format::Csv => csv_table(
                    &[
                        "n",
                        "alpha",
                        "t",
                        "log_det",
                        "log_f",
                        "log_f_asymptotic",
                        "gap_to_fredholm",
                        "gap_to_asymptotic",
                    ],
                    results.iter().map(|r| {
                        vec![
                            Some(r.n as f64),
                            Some(r.alpha),
                            Some(r.t),
                            Some(r.log_det),
                            Some(r.log_f),
                            Some(r.log_f_asymptotic),
                            Some(r.gap_to_fredholm),
                            Some(r.gap_to_asymptotic),
                        ]
                    }),
                ),
            }
        }
        _ => Err(CliError::Usage("give exactly one of --alpha, --t".into())),
    }
}

fn phaseshift(args: &PhaseshiftArgs) -> CliResult<String> {
    let rows = args
        .k
        .iter()
        .map(|&k| Ok((phase_shift(k)?, jost_forms(k)?)))
        .collect::<CliResult<Vec<_>>>()?;
    match args.output.format {
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(p, j)| {
                    let (re, ro) = p.tan_residuals();
                    json!({
                        "k": p.k,
                        "eta_even": p.eta_even,
                        "eta_odd": p.eta_odd,
                        "tan_residual_even": re,
                        "tan_residual_odd": ro,
                        "a_odd": cx(j.a_odd),
                        "a_odd_modulus": j.a_odd_modulus(),
                        "exp_ieta_even": cx(j.exp_ieta_even),
                        "arg_exp_ieta_even": j.exp_ieta_even.arg(),
                    })
                })
                .collect();
            report("phaseshift", args, json!({ "results": rows }))
        }
        Format::Csv => csv_table(
            &[
                "k",
                "eta_even",
                "eta_odd",
                "tan_res_even",
                "tan_res_odd",
                "re_a_odd",
                "im_a_odd",
                "abs_a_odd",
                "re_exp_ieta_even",
                "im_exp_ieta_even",
            ],
            rows.iter().map(|(p, j)| {
                let (re, ro) = p.tan_residuals();
                vec![
                    Some(p.k),
                    Some(p.eta_even),
                    Some(p.eta_odd),
                    Some(re),
                    Some(ro),
                    Some(j.a_odd.re),
                    Some(j.a_odd.im),
                    Some(j.a_odd_modulus()),
                    Some(j.exp_ieta_even.re),
                    Some(j.exp_ieta_even.im),
                ]
            }),
        ),
    }
}

fn recover(args: &RecoverArgs) -> CliResult<String> {
    let energy = Energy::new(args.energy)?;
    let trace = read_trace(&args.trace, energy)?;
    let rec = noninjective::recover_potential(&trace, energy)?;
    let xs: Vec<f64> = trace.grid().collect();
    let value = |i: usize| (!rec.mask[i]).then(|| rec.values[i]);
    match args.output.format {
        Format::Json => report(
            "recover",
            args,
            json!({
                "masked_count": rec.masked_count(),
                "x": xs,
                "V": (0..xs.len()).map(|i| value(i).map_or(Value::Null, Value::from)).collect::<Vec<_>>(),
                "masked": rec.mask,
            }),
        ),
        Format::Csv => csv_table(
            &["x", "V", "masked"],
            (0..xs.len()).map(|i| {
                vec![
                    Some(xs[i]),
                    value(i),
                    Some(if rec.mask[i] { 1.0 } else { 0.0 }),
                ]
            }),
        ),
    }
}

fn trace(args: &TraceArgs) -> CliResult<String> {
    let pot = validate(&potential_spec(&args.potential)?)?;
    let energy = Energy::new(args.energy)?;
    let psi0 = Complex64::new(args.psi0.0, args.psi0.1);
    let dpsi0 = Complex64::new(args.dpsi0.0, args.dpsi0.1);
    let t = propagate::integrate(&pot, energy, psi0, dpsi0, args.steps)?;
    let xs: Vec<f64> = t.grid().collect();
    match args.output.format {
        Format::Json => report(
            "trace",
            args,
            json!({
                "boundary": boundary_json(&t.boundary()),
                "x": xs,
                "re_psi": t.psi().iter().map(|z| z.re).collect::<Vec<_>>(),
                "im_psi": t.psi().iter().map(|z| z.im).collect::<Vec<_>>(),
            }),
        ),
        Format::Csv => csv_table(
            &["x", "re_psi", "im_psi"],
            xs.iter()
                .zip(t.psi())
                .map(|(x, z)| vec![Some(*x), Some(z.re), Some(z.im)]),
        ),
    }
}
