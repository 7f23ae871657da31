use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use eelimit::config::{ConfigFile, Form};
use eelimit::{plot, table_io, verify, CliError, ExitStatus};
use eelimit_core::circuit::{
    optimal_operating_point_mimo, optimal_operating_point_siso, rate_at_optimum, CircuitParams, LogRange,
    OperatingPoint,
};
use eelimit_core::link::{ultimate_ee, FreeSpace, MimoConfig, SisoLink, SPEED_OF_LIGHT};
use eelimit_core::quantities::{
    db_to_linear, BandwidthHz, EnergyEfficiency, LinearGain, NoisePsd, PowerWatts,
};
use eelimit_core::sweeps::{
    sweep_fig1, sweep_fig3, sweep_fig4, Fig1Spec, Fig3Spec, Fig4Spec, FigureId, SweepTable,
};

/// Physical limits on the energy efficiency (bit/Joule) of wireless links.
#[derive(Debug, Parser)]
#[command(name = "eelimit", version)]
struct Cli {
    /// Flat `key = value` file supplying defaults for any numeric flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Efficiency limit as P/B -> 0 (SISO, MIMO or the ultimate log2(e)/N0).
    Limit(LimitArgs),
    /// Efficiency-optimal P/B ratio under the varying circuit-power model.
    Optimum(OptimumArgs),
    /// Write figure data as CSV (and optionally a plot script).
    Sweep(SweepArgs),
    /// Run the regression checks against the published numbers.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct ChannelArgs {
    /// Channel gain (linear).
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Channel gain in dB.
    #[arg(long, allow_hyphen_values = true)]
    beta_db: Option<f64>,
    /// Maximum squared singular value of the MIMO channel (linear).
    #[arg(long, allow_hyphen_values = true)]
    sigma_sq: Option<f64>,
    /// Maximum squared singular value in dB.
    #[arg(long, allow_hyphen_values = true)]
    sigma_sq_db: Option<f64>,
    /// Noise PSD in W/Hz.
    #[arg(long)]
    n0: Option<f64>,
    /// Noise PSD in dBm/Hz [default: -174].
    #[arg(long, allow_hyphen_values = true)]
    n0_dbm_hz: Option<f64>,
    /// Accept gains above 0 dB.
    #[arg(long)]
    unchecked: bool,
}

#[derive(Debug, Args)]
struct LimitArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Transmit antennas (MIMO).
    #[arg(long)]
    m: Option<u32>,
    /// Receive antennas (MIMO).
    #[arg(long)]
    n: Option<u32>,
    /// Report log2(e)/N0, the limit with all transmitted power captured.
    #[arg(long)]
    ultimate: bool,
}

#[derive(Debug, Args)]
struct OptimumArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Antennas at each end (MIMO model with M x M antennas).
    #[arg(long)]
    m: Option<u32>,
    /// Processing cost per Hz of bandwidth, W/Hz.
    #[arg(long)]
    nu: Option<f64>,
    /// Encoding/decoding cost, J/bit [default: 0].
    #[arg(long)]
    eta: Option<f64>,
    /// Also report power and rate at this bandwidth (Hz).
    #[arg(long)]
    bandwidth: Option<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_parser = parse_figure)]
    figure: FigureId,
    /// Output CSV path; for fig4 the stem of three CSV files.
    #[arg(long)]
    out: PathBuf,
    /// Samples per axis.
    #[arg(long)]
    samples: Option<usize>,
    /// Write a matplotlib script next to the CSV.
    #[arg(long)]
    plot: bool,
    /// fig1: lowest channel gain, dB.
    #[arg(long, allow_hyphen_values = true)]
    beta_db_min: Option<f64>,
    /// fig1: highest channel gain, dB.
    #[arg(long, allow_hyphen_values = true)]
    beta_db_max: Option<f64>,
    /// fig3: comma-separated channel gains, dB.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    betas_db: Option<Vec<f64>>,
    /// fig3: transmit power, dBm.
    #[arg(long, allow_hyphen_values = true)]
    power_dbm: Option<f64>,
    /// fig3/fig4: bandwidth range start, Hz.
    #[arg(long)]
    b_min: Option<f64>,
    /// fig3/fig4: bandwidth range end, Hz.
    #[arg(long)]
    b_max: Option<f64>,
    /// fig4: power range start, W.
    #[arg(long)]
    p_min: Option<f64>,
    /// fig4: power range end, W.
    #[arg(long)]
    p_max: Option<f64>,
    /// fig4: channel gain, dB.
    #[arg(long, allow_hyphen_values = true)]
    beta_db: Option<f64>,
    /// fig4: processing cost, W/Hz.
    #[arg(long)]
    nu: Option<f64>,
    /// fig4: coding cost, J/bit.
    #[arg(long)]
    eta: Option<f64>,
    /// Noise PSD in dBm/Hz.
    #[arg(long, allow_hyphen_values = true)]
    n0_dbm_hz: Option<f64>,
    /// Speed of light for distance annotations, m/s.
    #[arg(long)]
    speed_of_light: Option<f64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Speed of light for the free-space checks [default: 3e8].
    #[arg(long)]
    speed_of_light: Option<f64>,
}

fn parse_figure(s: &str) -> Result<FigureId, String> {
    s.parse().map_err(|_| format!("unknown figure `{s}` (expected fig1, fig3 or fig4)"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_status() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<ExitStatus, CliError> {
    let config = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let format = config.pick(cli.format, "format")?.unwrap_or(Format::Human);
    match cli.command {
        Command::Limit(args) => cmd_limit(&args, &config, format),
        Command::Optimum(args) => cmd_optimum(&args, &config, format),
        Command::Sweep(args) => cmd_sweep(&args, &config),
        Command::Verify(args) => cmd_verify(&args, &config, format),
    }
}

fn noise(channel: &ChannelArgs, config: &ConfigFile) -> Result<NoisePsd, CliError> {
    Ok(match config.pick_pair(channel.n0, channel.n0_dbm_hz, "n0", "n0-dbm-hz")? {
        Some(Form::Linear(v)) => NoisePsd::new(v)?,
        Some(Form::Db(v)) => NoisePsd::from_dbm_per_hz(v)?,
        None => NoisePsd::room_temperature(),
    })
}

enum Gain {
    Beta(LinearGain),
    Sigma(LinearGain),
}

fn to_gain(form: Form) -> Result<LinearGain, CliError> {
    Ok(match form {
        Form::Linear(v) => LinearGain::new(v)?,
        Form::Db(v) => LinearGain::new(db_to_linear(v)?)?,
    })
}

fn channel_gain(channel: &ChannelArgs, config: &ConfigFile) -> Result<Option<Gain>, CliError> {
    let beta = config.pick_pair(channel.beta, channel.beta_db, "beta", "beta-db")?;
    let sigma = config.pick_pair(channel.sigma_sq, channel.sigma_sq_db, "sigma-sq", "sigma-sq-db")?;
    match (beta, sigma) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give either a channel gain (--beta/--beta-db) or a singular value (--sigma-sq/--sigma-sq-db)".into(),
        )),
        (Some(b), None) => Ok(Some(Gain::Beta(to_gain(b)?))),
        (None, Some(s)) => Ok(Some(Gain::Sigma(to_gain(s)?))),
        (None, None) => Ok(None),
    }
}

fn siso(gain: LinearGain, n0: NoisePsd, unchecked: bool) -> Result<SisoLink, CliError> {
    Ok(if unchecked {
        SisoLink::new_unchecked(gain, n0)
    } else {
        SisoLink::new(gain, n0)?
    })
}

fn mimo(m: u32, n: u32, gain: LinearGain, n0: NoisePsd, unchecked: bool) -> Result<MimoConfig, CliError> {
    Ok(if unchecked {
        MimoConfig::new_unchecked(m, n, gain, n0)?
    } else {
        MimoConfig::new(m, n, gain, n0)?
    })
}

#[derive(Debug, Serialize)]
struct LimitReport {
    kind: &'static str,
    n0_w_per_hz: f64,
    ee_bit_per_joule: f64,
}

fn cmd_limit(args: &LimitArgs, config: &ConfigFile, format: Format) -> Result<ExitStatus, CliError> {
    let n0 = noise(&args.channel, config)?;
    let gain = channel_gain(&args.channel, config)?;
    let m = config.pick(args.m, "m")?;
    let n = config.pick(args.n, "n")?;
    let (kind, ee) = match (args.ultimate, gain) {
        (true, Some(_)) => {
            return Err(CliError::Usage("--ultimate takes no channel gain".into()));
        }
        (true, None) => ("ultimate", ultimate_ee(n0)),
        (false, None) => {
            return Err(CliError::Usage(
                "need --beta/--beta-db, --sigma-sq/--sigma-sq-db or --ultimate".into(),
            ));
        }
        (false, Some(Gain::Beta(beta))) => {
            if m.is_some() || n.is_some() {
                return Err(CliError::Usage("antenna counts go with --sigma-sq, not --beta".into()));
            }
            ("siso", siso(beta, n0, args.channel.unchecked)?.ee_limit())
        }
        (false, Some(Gain::Sigma(sigma))) => {
            let cfg = mimo(m.unwrap_or(1), n.unwrap_or(1), sigma, n0, args.channel.unchecked)?;
            ("mimo", cfg.ee_limit())
        }
    };
    let report = LimitReport {
        kind,
        n0_w_per_hz: n0.value(),
        ee_bit_per_joule: ee.value(),
    };
    match format {
        Format::Human => println!(
            "EE limit ({kind}): {:.4e} bit/J  (≈ {})",
            ee.value(),
            ee.scaled()
        ),
        Format::Json => println!("{}", to_json(&report)?),
        Format::Csv => {
            println!("kind,n0_w_per_hz,ee_bit_per_joule");
            println!(
                "{kind},{},{}",
                table_io::format_value(report.n0_w_per_hz),
                table_io::format_value(report.ee_bit_per_joule)
            );
        }
    }
    Ok(ExitStatus::Success)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::io("<stdout>", e.into()))
}

#[derive(Debug, Serialize)]
struct OptimumReport {
    x: f64,
    ratio_w_per_hz: f64,
    ratio_dbm_per_mhz: f64,
    snr: f64,
    snr_db: f64,
    se_bit_per_s_per_hz: f64,
    ee_bit_per_joule: f64,
    antennas: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    bandwidth_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    power_w: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rate_bit_per_s: Option<f64>,
}

fn cmd_optimum(args: &OptimumArgs, config: &ConfigFile, format: Format) -> Result<ExitStatus, CliError> {
    let n0 = noise(&args.channel, config)?;
    let nu = config
        .pick(args.nu, "nu")?
        .ok_or_else(|| CliError::Usage("--nu is required".into()))?;
    let eta = config.pick(args.eta, "eta")?.unwrap_or(0.0);
    let hw = CircuitParams::new(0.0, nu, eta)?;
    let m = config.pick(args.m, "m")?;
    let point: OperatingPoint = match channel_gain(&args.channel, config)? {
        None => {
            return Err(CliError::Usage("need --beta/--beta-db or --sigma-sq/--sigma-sq-db".into()));
        }
        Some(Gain::Beta(beta)) if m.is_none() => {
            optimal_operating_point_siso(&siso(beta, n0, args.channel.unchecked)?, &hw)?
        }
        Some(Gain::Beta(gain)) | Some(Gain::Sigma(gain)) => {
            let m = m.unwrap_or(1);
            optimal_operating_point_mimo(&mimo(m, m, gain, n0, args.channel.unchecked)?, &hw)?
        }
    };
    let bandwidth = config
        .pick(args.bandwidth, "bandwidth")?
        .map(BandwidthHz::new)
        .transpose()?;
    let report = OptimumReport {
        x: point.x,
        ratio_w_per_hz: point.ratio_p_over_b,
        ratio_dbm_per_mhz: 10.0 * (point.ratio_p_over_b * 1e6 * 1e3).log10(),
        snr: point.snr,
        snr_db: 10.0 * point.snr.log10(),
        se_bit_per_s_per_hz: point.se,
        ee_bit_per_joule: point.ee.value(),
        antennas: point.streams,
        bandwidth_hz: bandwidth.map(|b| b.value()),
        power_w: bandwidth.map(|b| point.power_at(b).value()),
        rate_bit_per_s: bandwidth.map(|b| rate_at_optimum(b, &point).value()),
    };
    match format {
        Format::Human => print_optimum(&report, point.ee),
        Format::Json => println!("{}", to_json(&report)?),
        Format::Csv => {
            let mut header = vec!["x", "ratio_w_per_hz", "snr_db", "se_bit_per_s_per_hz", "ee_bit_per_joule"];
            let mut values = vec![report.x, report.ratio_w_per_hz, report.snr_db, report.se_bit_per_s_per_hz, report.ee_bit_per_joule];
            if let (Some(b), Some(p), Some(r)) = (report.bandwidth_hz, report.power_w, report.rate_bit_per_s) {
                header.extend(["bandwidth_hz", "power_w", "rate_bit_per_s"]);
                values.extend([b, p, r]);
            }
            println!("{}", header.join(","));
            println!(
                "{}",
                values.iter().map(|v| table_io::format_value(*v)).collect::<Vec<_>>().join(",")
            );
        }
    }
    Ok(ExitStatus::Success)
}

fn print_optimum(r: &OptimumReport, ee: EnergyEfficiency) {
    let per = if r.antennas > 1 { "P/(MB)" } else { "P/B" };
    println!("x                 {:.6}", r.x);
    println!("{per:<17} {:.4e} W/Hz ({:.2} dBm/MHz)", r.ratio_w_per_hz, r.ratio_dbm_per_mhz);
    println!("SNR               {:.2} dB", r.snr_db);
    println!("se                {:.4} bit/s/Hz", r.se_bit_per_s_per_hz);
    println!("max EE            {:.4e} bit/J (≈ {})", r.ee_bit_per_joule, ee.scaled());
    if let (Some(b), Some(p), Some(c)) = (r.bandwidth_hz, r.power_w, r.rate_bit_per_s) {
        println!("bandwidth         {b:.4e} Hz");
        println!("power             {p:.4e} W");
        println!("rate              {c:.4e} bit/s");
    }
}

fn log_range(lo: Option<f64>, hi: Option<f64>, default: LogRange) -> Result<LogRange, CliError> {
    Ok(LogRange::new(lo.unwrap_or(default.lo), hi.unwrap_or(default.hi))?)
}

fn cmd_sweep(args: &SweepArgs, config: &ConfigFile) -> Result<ExitStatus, CliError> {
    let samples = config.pick(args.samples, "samples")?;
    let n0 = match config.pick(args.n0_dbm_hz, "n0-dbm-hz")? {
        Some(v) => NoisePsd::from_dbm_per_hz(v)?,
        None => NoisePsd::room_temperature(),
    };
    let c = config.pick(args.speed_of_light, "speed-of-light")?.unwrap_or(SPEED_OF_LIGHT);
    let mut written: Vec<(PathBuf, usize)> = Vec::new();
    match args.figure {
        FigureId::Fig1 => {
            let d = Fig1Spec::default();
            let spec = Fig1Spec {
                beta_db_min: args.beta_db_min.unwrap_or(d.beta_db_min),
                beta_db_max: args.beta_db_max.unwrap_or(d.beta_db_max),
                samples: samples.unwrap_or(d.samples),
                n0,
                free_space: FreeSpace::with_speed_of_light(c)?,
            };
            let table = sweep_fig1(&spec)?;
            written.push(write(&table, &args.out)?);
        }
        FigureId::Fig3 => {
            let d = Fig3Spec::default();
            let spec = Fig3Spec {
                betas_db: args.betas_db.clone().unwrap_or(d.betas_db),
                power: match args.power_dbm {
                    Some(dbm) => PowerWatts::from_dbm(dbm)?,
                    None => d.power,
                },
                n0,
                bandwidth: log_range(args.b_min, args.b_max, d.bandwidth)?,
                samples: samples.unwrap_or(d.samples),
            };
            let table = sweep_fig3(&spec)?;
            written.push(write(&table, &args.out)?);
        }
        FigureId::Fig4 => {
            let d = Fig4Spec::default();
            let beta = match args.beta_db {
                Some(db) => LinearGain::from_db(db)?,
                None => d.link.beta(),
            };
            let spec = Fig4Spec {
                link: SisoLink::new(beta, n0)?,
                circuit: CircuitParams::new(
                    0.0,
                    config.pick(args.nu, "nu")?.unwrap_or(d.circuit.nu),
                    config.pick(args.eta, "eta")?.unwrap_or(d.circuit.eta),
                )?,
                power: log_range(args.p_min, args.p_max, d.power)?,
                bandwidth: log_range(args.b_min, args.b_max, d.bandwidth)?,
                samples: samples.unwrap_or(d.samples),
            };
            let tables = sweep_fig4(&spec)?;
            let stem = stem_of(&args.out);
            for (suffix, table) in [
                ("ee", &tables.ee_surface),
                ("rate", &tables.rate_surface),
                ("locus", &tables.locus),
            ] {
                let path = args.out.with_file_name(format!("{stem}_{suffix}.csv"));
                written.push(write(table, &path)?);
            }
        }
    }
    if args.plot {
        let stem = stem_of(&args.out);
        let path = args.out.with_file_name(format!("{stem}.py"));
        fs::write(&path, plot::script(args.figure, &stem)).map_err(|e| CliError::io(&path, e))?;
        println!("wrote plot script {}", path.display());
    }
    for (path, rows) in written {
        println!("wrote {rows} rows to {}", path.display());
    }
    Ok(ExitStatus::Success)
}

fn stem_of(out: &Path) -> String {
    out.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sweep".to_string())
}

fn write(table: &SweepTable, path: &Path) -> Result<(PathBuf, usize), CliError> {
    table_io::write_table_file(table, path)?;
    Ok((path.to_path_buf(), table.rows().len()))
}

fn cmd_verify(args: &VerifyArgs, config: &ConfigFile, format: Format) -> Result<ExitStatus, CliError> {
    let cfg = verify::VerifyConfig {
        speed_of_light: config.pick(args.speed_of_light, "speed-of-light")?.unwrap_or(3e8),
        ..verify::VerifyConfig::default()
    };
    let report = verify::run(&cfg)?;
    if args.json || format == Format::Json {
        println!("{}", to_json(&report)?);
    } else {
        for c in &report.checks {
            println!(
                "{} {:<22} expected {:<12.6e} actual {:<12.6e} tol {:.2e}  {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.check_id,
                c.expected,
                c.actual,
                c.tolerance,
                c.description
            );
        }
        println!(
            "{} of {} checks passed",
            report.checks.len() - report.failures(),
            report.checks.len()
        );
    }
    if report.pass {
        Ok(ExitStatus::Success)
    } else {
        Err(CliError::VerificationFailed(report.failures()))
    }
}
