//! Subcommand implementations.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::Parser;
use kgt_core::params::{conductivity_identity_check, ELECTRON_MASS, ELECTRON_VOLT};
use kgt_core::{
    evolve_grid, green_1d, green_3d, green_3d_from_1d, spectral_green_1d, spectral_green_3d_radial,
    DerivedParams, Error, EvolveOptions, Geometry, GridAxis, KgParams, PhysicalParams,
    QuadratureSpec, Region,
};
use serde_json::{json, Value};

use crate::cli::{Cli, Command, Evolve, Fault, Format, Output, Physical, Range, Wave};
use crate::config::{load_json, InitialDataFile, ParamsFile};
use crate::error::{CliError, CliResult};
use crate::table::Table;
use crate::verify::{self, Faults};

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run_from<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code().clamp(0, 255) as u8;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: Command) -> CliResult<()> {
    match command {
        Command::Params { physical, output } => cmd_params(&physical, &output),
        Command::Green1d {
            wave,
            range,
            t,
            output,
        } => cmd_green1d(&wave, &range, t, &output),
        Command::Green3d {
            wave,
            range,
            t,
            output,
        } => cmd_green3d(&wave, &range, t, &output),
        Command::Evolve1d { evolve, output } => {
            cmd_evolve(&evolve, Geometry::Planar, "evolve1d", &output)
        }
        Command::Evolve3d { evolve, output } => {
            cmd_evolve(&evolve, Geometry::Radial, "evolve3d", &output)
        }
        Command::Oracle {
            wave,
            t,
            dim,
            n,
            output,
        } => cmd_oracle(&wave, t, dim, n, &output),
        Command::Verify {
            list,
            cases,
            inject_fault,
            output,
        } => cmd_verify(list, &cases, inject_fault, &output),
    }
}

fn write_out(path: Option<&Path>, content: &str) -> CliResult<()> {
    match path {
        Some(path) => fs::write(path, content).map_err(|source| CliError::Output {
            path: path.display().to_string(),
            source,
        }),
        None => io::stdout()
            .lock()
            .write_all(content.as_bytes())
            .map_err(|source| CliError::Output {
                path: "<stdout>".to_owned(),
                source,
            }),
    }
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn emit_table(table: &Table, output: &Output) -> CliResult<()> {
    let text = match output.format.unwrap_or(Format::Csv) {
        Format::Csv => table.to_csv(),
        Format::Json => pretty(&table.to_json()),
    };
    write_out(output.out.as_deref(), &text)
}

fn physical(args: &Physical) -> CliResult<PhysicalParams> {
    let mut p = PhysicalParams::default();
    if let Some(path) = &args.params {
        p = load_json::<ParamsFile>(path)?.apply(p);
    }
    if let Some(mass) = args.mass {
        p.mass = mass * ELECTRON_MASS;
    }
    if let Some(v0) = args.v0_ev {
        p.v0 = v0 * ELECTRON_VOLT;
    }
    Ok(p.validated()?)
}

fn warn_if_tachyonic(q_sq: f64) {
    if q_sq < 0.0 {
        eprintln!("warning: q^2 = {q_sq:e} < 0; the interior kernel grows like I0/I1 instead of oscillating");
    }
}

struct WaveSetup {
    params: PhysicalParams,
    derived: DerivedParams,
    kg: KgParams,
}

fn wave(args: &Wave) -> CliResult<WaveSetup> {
    let params = physical(&args.physical)?;
    let derived = DerivedParams::derive(&params)?;
    let kg = KgParams::new(
        args.v.unwrap_or(derived.v),
        args.q_sq.unwrap_or(derived.q_sq),
    )?;
    warn_if_tachyonic(kg.q_sq());
    Ok(WaveSetup {
        params,
        derived,
        kg,
    })
}

fn axis(range: &Range) -> CliResult<GridAxis> {
    GridAxis::spanning(range.min, range.max, range.n).map_err(|e| {
        CliError::Usage(format!(
            "invalid range --min {} --max {} --n {}: {e}",
            range.min, range.max, range.n
        ))
    })
}

fn positive_time(t: f64) -> CliResult<f64> {
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else if t.is_nan() {
        Err(Error::NonFinite { name: "t" }.into())
    } else {
        Err(Error::NonPositive {
            name: "t",
            value: t,
        }
        .into())
    }
}

fn cmd_params(args: &Physical, output: &Output) -> CliResult<()> {
    let p = physical(args)?;
    let d = DerivedParams::derive(&p)?;
    warn_if_tachyonic(d.q_sq);
    let identity = conductivity_identity_check(&p)?;
    match output.format.unwrap_or(Format::Json) {
        Format::Json => {
            let value = json!({
                "params": ParamsFile::record(&p),
                "v": d.v,
                "tau": d.tau,
                "q_sq": d.q_sq,
                "sigma0": d.sigma0,
                "lambda_b": d.lambda_b,
                "conductivity_identity": {
                    "agrees": identity.agrees,
                    "relative_residual": identity.relative_residual,
                },
            });
            write_out(output.out.as_deref(), &pretty(&value))
        }
        Format::Csv => {
            let mut table = Table::new(&["quantity", "value"]);
            for (name, value) in [
                ("v_m_s", d.v),
                ("tau_s", d.tau),
                ("q_sq_per_s2", d.q_sq),
                ("sigma0_per_ohm_m", d.sigma0),
                ("lambda_b_m", d.lambda_b),
                ("identity_relative_residual", identity.relative_residual),
            ] {
                table.push(vec![name.into(), value.into()]);
            }
            emit_table(&table, output)
        }
    }
}

fn cmd_green1d(args: &Wave, range: &Range, t: f64, output: &Output) -> CliResult<()> {
    let setup = wave(args)?;
    let axis = axis(range)?;
    let t = positive_time(t)?;
    let mut table = Table::new(&["x_m", "G"]);
    for x in axis.positions() {
        table.push(vec![x.into(), green_1d(x, t, &setup.kg)?.into()]);
    }
    emit_table(&table, output)
}

fn region_name(region: Region) -> &'static str {
    match region {
        Region::Interior => "interior",
        Region::OnCone => "on_cone",
        Region::Exterior => "exterior",
    }
}

fn cmd_green3d(args: &Wave, range: &Range, t: f64, output: &Output) -> CliResult<()> {
    let setup = wave(args)?;
    let axis = axis(range)?;
    let t = positive_time(t)?;
    let mut table = Table::new(&["r_m", "G_regular", "cone_layer_coefficient", "region"]);
    for r in axis.positions() {
        let g = green_3d(r, t, &setup.kg)?;
        let region =
            kgt_core::classify(r, t, &setup.kg, kgt_core::green::default_cone_eps(t))?.region;
        table.push(vec![
            r.into(),
            g.regular.into(),
            g.cone_layer_coefficient.into(),
            region_name(region).into(),
        ]);
    }
    emit_table(&table, output)
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

fn cmd_evolve(args: &Evolve, geometry: Geometry, name: &str, output: &Output) -> CliResult<()> {
    let setup = wave(&args.wave)?;
    let axis = axis(&args.range)?;
    let file: InitialDataFile = load_json(&args.data)?;
    let data = file.to_data().map_err(|e| CliError::input(&args.data, e))?;
    if !(args.t.is_finite() && args.t >= 0.0) {
        return Err(Error::Negative {
            name: "t",
            value: args.t,
        }
        .into());
    }
    let tau = args.tau.unwrap_or(setup.derived.tau);
    let opts = EvolveOptions {
        quad_tol: args.quad_tol,
        ..EvolveOptions::default()
    };
    let u = evolve_grid(&data, axis, args.t, &setup.kg, tau, geometry, &opts)?;
    let temperature = u.to_temperature()?;
    let mut table = Table::new(&["position_m", "u_K", "temperature_K"]);
    for ((x, &uv), &tv) in axis.positions().zip(u.values()).zip(temperature.values()) {
        table.push(vec![x.into(), uv.into(), tv.into()]);
    }
    let meta = json!({
        "command": name,
        "version": env!("CARGO_PKG_VERSION"),
        "geometry": match geometry { Geometry::Planar => "planar", Geometry::Radial => "radial" },
        "time_s": args.t,
        "v_m_s": setup.kg.v(),
        "q_sq_per_s2": setup.kg.q_sq(),
        "tau_s": if tau.is_finite() { json!(tau) } else { json!("inf") },
        "params": ParamsFile::record(&setup.params),
        "grid": {
            "min_m": args.range.min,
            "max_m": args.range.max,
            "n": args.range.n,
            "spacing_m": axis.spacing(),
        },
        "initial_data": file,
        "quad_tol": opts.quad_tol,
        "sphere": { "n_theta": opts.sphere.n_theta(), "n_phi": opts.sphere.n_phi() },
        "columns": table.columns(),
    });
    match output.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            write_out(output.out.as_deref(), &table.to_csv())?;
            if let Some(out) = &output.out {
                write_out(Some(&sidecar_path(out)), &pretty(&meta))?;
            }
            Ok(())
        }
        Format::Json => {
            let value = json!({ "meta": meta, "rows": table.to_json() });
            write_out(output.out.as_deref(), &pretty(&value))
        }
    }
}

fn cmd_oracle(args: &Wave, t: f64, dim: u8, n: usize, output: &Output) -> CliResult<()> {
    let setup = wave(args)?;
    let kg = setup.kg;
    let t = positive_time(t)?;
    if dim == 2 {
        return Err(CliError::Usage("--dim must be 1 or 3".to_owned()));
    }
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".to_owned()));
    }
    let reach = kg.v() * t;
    let points: Vec<f64> = (0..n)
        .map(|i| {
            let frac = if n == 1 {
                0.5
            } else {
                0.1 + 0.8 * i as f64 / (n - 1) as f64
            };
            frac * reach
        })
        .collect();
    let disagreement = |closed: f64, oracles: &[f64]| {
        oracles
            .iter()
            .map(|o| {
                if closed == 0.0 {
                    o.abs()
                } else {
                    ((o - closed) / closed).abs()
                }
            })
            .fold(0.0, f64::max)
    };
    let table = if dim == 1 {
        let mut table = Table::new(&[
            "point",
            "closed_form",
            "spectral_oracle",
            "max_rel_disagreement",
        ]);
        for x in points {
            let closed = green_1d(x, t, &kg)?;
            let spec = QuadratureSpec::for_point(x, t, &kg)?.with_tol(f64::MAX)?;
            let spectral = spectral_green_1d(x, t, &kg, &spec)?.value;
            table.push(vec![
                x.into(),
                closed.into(),
                spectral.into(),
                disagreement(closed, &[spectral]).into(),
            ]);
        }
        table
    } else {
        let mut table = Table::new(&[
            "point",
            "closed_form",
            "deriv_oracle",
            "spectral_oracle",
            "max_rel_disagreement",
        ]);
        for r in points {
            let closed = green_3d(r, t, &kg)?.regular;
            let deriv = green_3d_from_1d(r, t, &kg, 1e-5 * reach)?;
            let spec = QuadratureSpec::for_point(r, t, &kg)?.with_tol(f64::MAX)?;
            let spectral = spectral_green_3d_radial(r, t, &kg, &spec, 1e-3 * reach)?.value;
            table.push(vec![
                r.into(),
                closed.into(),
                deriv.into(),
                spectral.into(),
                disagreement(closed, &[deriv, spectral]).into(),
            ]);
        }
        table
    };
    emit_table(&table, output)
}

fn cmd_verify(
    list: bool,
    names: &[String],
    fault: Option<Fault>,
    output: &Output,
) -> CliResult<()> {
    if list {
        let mut text = String::new();
        for case in verify::cases() {
            text.push_str(case.name);
            text.push('\n');
        }
        return write_out(output.out.as_deref(), &text);
    }
    if output.format == Some(Format::Csv) {
        return Err(CliError::Usage("verify writes JSON only".to_owned()));
    }
    let selection: Vec<&verify::Case> = if names.is_empty() {
        verify::cases().iter().collect()
    } else {
        names
            .iter()
            .map(|n| {
                verify::find(n)
                    .ok_or_else(|| CliError::Usage(format!("unknown case `{n}`; see --list")))
            })
            .collect::<CliResult<_>>()?
    };
    let faults = Faults {
        prefactor: fault == Some(Fault::Prefactor),
    };
    let report = verify::run(&selection, &faults);
    let value = serde_json::to_value(&report).expect("report serializes");
    write_out(output.out.as_deref(), &pretty(&value))?;
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Verify(report.failing().join(", ")))
    }
}
