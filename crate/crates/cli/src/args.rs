//! Command-line flags. Every argument struct is serializable so that reports
//! can echo the exact configuration that produced them.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "symscat",
    version,
    about = "Scattering and inverse-scattering numerics for symmetric 1D potentials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// S-matrices of a well, a delta or a sampled potential.
    Smatrix(SmatrixArgs),
    /// Two potentials sharing boundary data at one energy.
    Counterexample(CounterexampleArgs),
    /// Sine-kernel Fredholm determinants over a t grid.
    Fredholm(FredholmArgs),
    /// Toeplitz determinants of the arc symbol.
    Szego(SzegoArgs),
    /// Closed-form phase shifts and Jost functions.
    Phaseshift(PhaseshiftArgs),
    /// Potential recovered from a wavefunction trace.
    Recover(RecoverArgs),
    /// Integrated wavefunction across a potential, as a trace.
    Trace(TraceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct PotentialArgs {
    /// Square well of depth V0 and half-width A.
    #[arg(long, value_name = "V0,A", value_parser = parse_pair)]
    pub well: Option<(f64, f64)>,
    /// Attractive delta of strength ALPHA.
    #[arg(long, value_name = "ALPHA", allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// CSV with header `x,V` on a uniform grid from -a to a.
    #[arg(long, value_name = "FILE")]
    pub sampled: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct EnergyArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub energy: Option<f64>,
    /// Linearly spaced energies, endpoints included.
    #[arg(long, value_name = "START,STOP,COUNT", value_parser = parse_energy_grid)]
    pub energy_grid: Option<EnergyGrid>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl EnergyGrid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let h = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + h * i as f64).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Transfer matrix from the integrated fundamental pair.
    Transfer,
    /// Two-solution amplitude solve.
    TwoSolution,
    /// Closed form (well and delta only).
    Analytic,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SmatrixArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub energy: EnergyArgs,
    #[arg(long, default_value_t = 4096)]
    pub steps: usize,
    /// Defaults to `analytic` for a delta and `transfer` otherwise.
    #[arg(long, value_enum)]
    pub route: Option<Route>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bump {
    Smooth,
    /// The kinked `ε(|x| − a)²` form.
    Paper,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CounterexampleArgs {
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub eps: f64,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, value_enum, default_value_t = Bump::Smooth)]
    pub bump: Bump,
    /// Construction energy.
    #[arg(long, default_value_t = 1.0)]
    pub energy: f64,
    /// Grid intervals for the wavefunctions and recovered potentials.
    #[arg(long, default_value_t = 8192)]
    pub grid_steps: usize,
    /// Integration steps for the forward solves.
    #[arg(long, default_value_t = 8192)]
    pub steps: usize,
    /// Offset of the second comparison energy.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub energy_shift: f64,
    /// JSON only: also write the traces and potentials as CSV here.
    #[arg(long, value_name = "PATH")]
    pub trace_csv: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FredholmArgs {
    /// `START:STOP:STEP` or a comma-separated list.
    #[arg(long, value_name = "GRID", value_parser = parse_t_grid)]
    pub t: TGrid,
    #[arg(long, default_value_t = 300)]
    pub quad: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TGrid(pub Vec<f64>);

#[derive(Debug, Clone, Args, Serialize)]
#[command(group = clap::ArgGroup::new("symbol").required(true).multiple(false).args(["alpha", "t"]))]
pub struct SzegoArgs {
    /// Arc half-angle, fixed across all sizes.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Couple `α = 2πt/n` and compare with the Fredholm route.
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Quadrature order for the Fredholm comparison (with `--t`).
    #[arg(long, default_value_t = 300)]
    pub quad: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PhaseshiftArgs {
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    pub k: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RecoverArgs {
    /// CSV with header `x,re_psi,im_psi` on a uniform grid from -a to a.
    #[arg(long, value_name = "FILE")]
    pub trace: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub energy: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TraceArgs {
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub energy: f64,
    #[arg(long, default_value_t = 4096)]
    pub steps: usize,
    /// `ψ(-a)` as `RE,IM`.
    #[arg(long, value_name = "RE,IM", default_value = "1,0", value_parser = parse_pair, allow_negative_numbers = true)]
    pub psi0: (f64, f64),
    /// `ψ'(-a)` as `RE,IM`.
    #[arg(long, value_name = "RE,IM", default_value = "0,0", value_parser = parse_pair, allow_negative_numbers = true)]
    pub dpsi0: (f64, f64),
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim().parse::<f64>().map_err(|e| format!("`{s}`: {e}"))
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    match s.split(',').collect::<Vec<_>>().as_slice() {
        [a, b] => Ok((parse_f64(a)?, parse_f64(b)?)),
        _ => Err(format!("expected two comma-separated numbers, got `{s}`")),
    }
}

fn parse_energy_grid(s: &str) -> Result<EnergyGrid, String> {
    match s.split(',').collect::<Vec<_>>().as_slice() {
        [a, b, n] => {
            let count = n
                .trim()
                .parse::<usize>()
                .map_err(|e| format!("`{n}`: {e}"))?;
            if count == 0 {
                return Err("count must be at least 1".into());
            }
            Ok(EnergyGrid {
                start: parse_f64(a)?,
                stop: parse_f64(b)?,
                count,
            })
        }
        _ => Err(format!("expected START,STOP,COUNT, got `{s}`")),
    }
}

/// `START:STOP:STEP` (inclusive, points computed as `START + i·STEP`) or `A,B,C`.
pub fn parse_t_grid(s: &str) -> Result<TGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (parse_f64(start)?, parse_f64(stop)?, parse_f64(step)?);
            if !(step > 0.0) || !(stop >= start) {
                return Err("need STEP > 0 and STOP >= START".into());
            }
            let intervals = ((stop - start) / step + 1e-9).floor() as usize;
            if intervals > 100_000 {
                return Err("grid has too many points".into());
            }
            Ok(TGrid(
                (0..=intervals).map(|i| start + step * i as f64).collect(),
            ))
        }
        [list] => Ok(TGrid(
            list.split(',').map(parse_f64).collect::<Result<_, _>>()?,
        )),
        _ => Err(format!(
            "expected START:STOP:STEP or a comma list, got `{s}`"
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_grid_forms() {
        assert_eq!(parse_t_grid("0.5:1:0.25").unwrap().0, vec![0.5, 0.75, 1.0]);
        assert_eq!(parse_t_grid("0.5:3:0.05").unwrap().0.len(), 51);
        assert_eq!(parse_t_grid("1,2.5").unwrap().0, vec![1.0, 2.5]);
        assert!(parse_t_grid("1:0:0.1").is_err());
        assert!(parse_t_grid("1:2").is_err());
    }

    #[test]
    fn energy_grid_endpoints() {
        let g = parse_energy_grid("0.5,2,4").unwrap();
        assert_eq!(g.points(), vec![0.5, 1.0, 1.5, 2.0]);
        assert!(parse_energy_grid("1,2,0").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
