//! Command-line front end: capacity tables, fiber link budgets,
//! entanglement-of-formation runs, residual scans and oracle verification.
//!
//! Exit codes: 0 success, 2 usage error, 3 invalid input data, 4 numerical
//! failure (including failed verification suites). All numeric output uses
//! 12 significant digits and is byte-deterministic for identical
//! (flags, seed) on the same build. `GAUSSCHAN_THREADS` caps parallelism.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;

use gausschan::additivity::{
    convexity_scan, moe_additivity_scan, superadditivity_scan, ResidualKind, ResidualRecord,
    ScanSummary,
};
use gausschan::capacities::{
    classical_capacity_lossy, ea_classical_capacity, ea_quantum_capacity,
    holevo_coherent_ensemble, quantum_capacity_lower_bound, quantum_capacity_upper_bound,
    CapacityKind, CapacityReport, EnergyConstraint,
};
use gausschan::channels::{
    amplifier, classical_noise_iso, lossy, thermal_noise, ChannelDescription, GaussianChannel,
};
use gausschan::eof::{gaussian_eof_with, EoFOptions};
use gausschan::fock::{
    apply_lossy_fock, fock_covariance, fock_entropy, gaussian_to_fock,
    lossy_entropy_exchange, same_covariance_non_gaussian, FockStateKind,
};
use gausschan::io::{csv_line, format_sig, parse_covariance};
use gausschan::states::{entropy_of_covariance, g_function, Bipartition};
use gausschan::symplectic::CovarianceMatrix;
use gausschan::GaussError;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
    Numeric(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Numeric(m) => m,
        }
    }
}

fn data_err(e: GaussError) -> CliError {
    match e {
        GaussError::NumericalFailure(_) => CliError::Numeric(e.to_string()),
        _ => CliError::Data(e.to_string()),
    }
}

#[derive(Parser)]
#[command(
    name = "gausschan",
    version,
    about = "Gaussian bosonic channel capacities, entanglement of formation and oracle checks",
    long_about = None
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChannelFamily {
    Lossy,
    Thermal,
    Amplifier,
    Classical,
}

#[derive(Subcommand)]
enum Command {
    /// Capacity table for a named channel family.
    ///
    /// CSV schema: kind,eta,c,N,value_bits,reason. For --channel classical
    /// the c column carries the noise parameter y.
    Capacity(CapacityArgs),
    /// Fiber link budget: computes eta = exp(-length/absorption_length) and
    /// delegates to the capacity table. CSV schema as for `capacity`.
    Fiber(FiberArgs),
    /// Gaussian entanglement of formation of a covariance-matrix file.
    Eof(EofArgs),
    /// Residual scans (superadditivity, convexity, output-entropy
    /// additivity). CSV schema: seed,kind,residual_bits,restarts,flag,params.
    Scan(ScanArgs),
    /// Fock-oracle verification suites; exit 0 iff every check passes.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CapacityArgs {
    #[arg(long, value_enum)]
    channel: ChannelFamily,
    /// Transmittivity (lossy/thermal: [0,1], amplifier: > 1).
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    /// Environment temperature c >= 1 (thermal/amplifier).
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Classical noise parameter y >= 0 (classical channel only).
    #[arg(long, default_value_t = 0.0)]
    y: f64,
    /// Mean photon number constraint N >= 0.
    #[arg(long)]
    photons: f64,
    /// Sweep spec `param:lo:hi:steps` with param in {eta,c,y,photons}.
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Args)]
struct FiberArgs {
    /// Fiber length (same units as the absorption length).
    #[arg(long)]
    length: f64,
    /// Absorption length l_A > 0.
    #[arg(long)]
    absorption_length: f64,
    /// Mean photon number constraint N >= 0.
    #[arg(long)]
    photons: f64,
    /// Environment temperature c >= 1.
    #[arg(long, default_value_t = 1.0, id = "temperature-c")]
    temperature_c: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: OutputFormat,
}

#[derive(Args)]
struct EofArgs {
    /// Covariance-matrix file (`n=<modes>` + rows, or JSON).
    #[arg(long)]
    gamma: String,
    /// Comma-separated A-side mode indices (default: first half).
    #[arg(long)]
    partition: Option<String>,
    /// Optimizer restarts.
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    /// Base seed for the restarts.
    #[arg(long, default_value_t = 0x4745_6f46)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanKind {
    Superadd,
    Convexity,
    Moe,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    kind: ScanKind,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// CSV output file (summary JSON goes to stdout).
    #[arg(long)]
    out: String,
    /// Join samples through 50:50 beam splitters instead of direct sums
    /// (superadditivity scans only).
    #[arg(long, default_value_t = false)]
    mix: bool,
    /// Channel family for moe scans.
    #[arg(long, value_enum, default_value = "lossy")]
    channel: ChannelFamily,
    #[arg(long, default_value_t = 0.6)]
    eta: f64,
    #[arg(long, default_value_t = 1.0)]
    y: f64,
    /// Rényi order for moe scans (> 1).
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    /// EoF restarts per sample (superadd/convexity scans).
    #[arg(long, default_value_t = 8)]
    restarts: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifySuite {
    Entropy,
    Channels,
    Extremality,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: VerifySuite,
    /// Fock cutoff per mode (suite-dependent caps apply).
    #[arg(long, default_value_t = 120)]
    cutoff: usize,
    /// Seeded comparison states for the extremality suite.
    #[arg(long, default_value_t = 50)]
    seeds: usize,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("GAUSSCHAN_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Capacity(args) => cmd_capacity(args),
        Command::Fiber(args) => cmd_fiber(args),
        Command::Eof(args) => cmd_eof(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

// ---------------------------------------------------------------- capacity

struct GridPoint {
    eta: f64,
    c: f64,
    y: f64,
    photons: f64,
}

fn parse_sweep(spec: &str, base: &CapacityArgs) -> Result<Vec<GridPoint>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "sweep spec `{spec}` must be param:lo:hi:steps"
        )));
    }
    let param = parts[0];
    let lo: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::Usage(format!("sweep lo `{}` is not a number", parts[1])))?;
    let hi: f64 = parts[2]
        .parse()
        .map_err(|_| CliError::Usage(format!("sweep hi `{}` is not a number", parts[2])))?;
    let steps: usize = parts[3]
        .parse()
        .map_err(|_| CliError::Usage(format!("sweep steps `{}` is not an integer", parts[3])))?;
    if steps == 0 {
        return Err(CliError::Usage("sweep steps must be at least 1".into()));
    }
    let values: Vec<f64> = (0..steps)
        .map(|i| {
            if steps == 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (steps - 1) as f64
            }
        })
        .collect();
    values
        .into_iter()
        .map(|v| {
            let mut point = GridPoint {
                eta: base.eta,
                c: base.c,
                y: base.y,
                photons: base.photons,
            };
            match param {
                "eta" => point.eta = v,
                "c" => point.c = v,
                "y" => point.y = v,
                "photons" => point.photons = v,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown sweep parameter `{other}` (expected eta, c, y or photons)"
                    )))
                }
            }
            Ok(point)
        })
        .collect()
}

fn check_range(ok: bool, message: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Usage(message.into()))
    }
}

fn family_channel(family: ChannelFamily, p: &GridPoint) -> Result<GaussianChannel, CliError> {
    match family {
        ChannelFamily::Lossy => lossy(p.eta).map_err(data_err),
        ChannelFamily::Thermal => thermal_noise(p.eta, p.c).map_err(data_err),
        ChannelFamily::Amplifier => amplifier(p.eta, p.c).map_err(data_err),
        ChannelFamily::Classical => classical_noise_iso(p.y).map_err(data_err),
    }
}

fn reports_for_point(
    family: ChannelFamily,
    p: &GridPoint,
) -> Result<Vec<CapacityReport>, CliError> {
    match family {
        ChannelFamily::Lossy => {
            check_range((0.0..=1.0).contains(&p.eta), "lossy requires eta in [0, 1]")?
        }
        ChannelFamily::Thermal => {
            check_range((0.0..=1.0).contains(&p.eta), "thermal requires eta in [0, 1]")?;
            check_range(p.c >= 1.0, "thermal requires c >= 1")?;
        }
        ChannelFamily::Amplifier => {
            check_range(p.eta > 1.0, "amplifier requires eta > 1")?;
            check_range(p.c >= 1.0, "amplifier requires c >= 1")?;
        }
        ChannelFamily::Classical => check_range(p.y >= 0.0, "classical requires y >= 0")?,
    }
    check_range(p.photons >= 0.0, "photons must be >= 0")?;
    let constraint = EnergyConstraint::new(p.photons).map_err(data_err)?;
    let channel = ChannelDescription::from_channel(&family_channel(family, p)?);
    let mut out = Vec::with_capacity(5);
    let mut push = |kind: CapacityKind, value: Result<f64, String>| {
        let (value_bits, reason) = match value {
            Ok(v) => (Some(v), None),
            Err(r) => (None, Some(r)),
        };
        out.push(CapacityReport {
            kind,
            value_bits,
            reason,
            channel: channel.clone(),
            constraint: Some(constraint),
        });
    };

    let classical = match family {
        ChannelFamily::Lossy => classical_capacity_lossy(p.eta, constraint)
            .map_err(|e| e.to_string()),
        ChannelFamily::Thermal => holevo_coherent_ensemble(p.eta, p.c, constraint)
            .map_err(|e| e.to_string()),
        ChannelFamily::Classical => {
            // coherent-ensemble bound at unit transmittivity with noise y
            g_function(p.photons + p.y / 2.0)
                .and_then(|a| g_function(p.y / 2.0).map(|b| (a - b).max(0.0)))
                .map_err(|e| e.to_string())
        }
        ChannelFamily::Amplifier => Err("no closed form for amplifier classical capacity".into()),
    };
    push(CapacityKind::Classical, classical);

    let (ql, qu) = match family {
        ChannelFamily::Classical => (
            Err("no closed-form bound at unit gain".to_string()),
            Err("the cb-norm bound diverges at unit gain".to_string()),
        ),
        _ => (
            quantum_capacity_lower_bound(p.eta, p.c, Some(constraint)).map_err(|e| e.to_string()),
            quantum_capacity_upper_bound(p.eta, p.c).map_err(|e| e.to_string()),
        ),
    };
    push(CapacityKind::QuantumLower, ql);
    push(CapacityKind::QuantumUpper, qu);

    let (ea_c, ea_q) = match family {
        ChannelFamily::Lossy | ChannelFamily::Thermal => (
            ea_classical_capacity(p.eta, p.c, constraint).map_err(|e| e.to_string()),
            ea_quantum_capacity(p.eta, p.c, constraint).map_err(|e| e.to_string()),
        ),
        _ => (
            Err("entanglement-assisted formula covers the attenuation family only".to_string()),
            Err("entanglement-assisted formula covers the attenuation family only".to_string()),
        ),
    };
    push(CapacityKind::EaClassical, ea_c);
    push(CapacityKind::EaQuantum, ea_q);
    Ok(out)
}

fn capacity_kind_name(kind: CapacityKind) -> &'static str {
    match kind {
        CapacityKind::Classical => "classical",
        CapacityKind::QuantumLower => "quantum_lower",
        CapacityKind::QuantumUpper => "quantum_upper",
        CapacityKind::EaClassical => "ea_classical",
        CapacityKind::EaQuantum => "ea_quantum",
    }
}

fn emit_capacity_table(
    family: ChannelFamily,
    grid: &[GridPoint],
    format: OutputFormat,
) -> Result<(), CliError> {
    let mut all = Vec::new();
    for p in grid {
        let reports = reports_for_point(family, p)?;
        all.push((p, reports));
    }
    match format {
        OutputFormat::Csv => {
            println!("kind,eta,c,N,value_bits,reason");
            for (p, reports) in &all {
                let c_column = if matches!(family, ChannelFamily::Classical) {
                    p.y
                } else {
                    p.c
                };
                for r in reports {
                    println!(
                        "{}",
                        csv_line(&[
                            capacity_kind_name(r.kind).to_string(),
                            format_sig(p.eta),
                            format_sig(c_column),
                            format_sig(p.photons),
                            r.value_bits.map(format_sig).unwrap_or_default(),
                            r.reason.clone().unwrap_or_default(),
                        ])
                    );
                }
            }
        }
        OutputFormat::Json => {
            let reports: Vec<&CapacityReport> =
                all.iter().flat_map(|(_, rs)| rs.iter()).collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&reports)
                    .map_err(|e| CliError::Numeric(e.to_string()))?
            );
        }
    }
    Ok(())
}

fn cmd_capacity(args: CapacityArgs) -> Result<(), CliError> {
    let grid = match &args.sweep {
        Some(spec) => parse_sweep(spec, &args)?,
        None => vec![GridPoint {
            eta: args.eta,
            c: args.c,
            y: args.y,
            photons: args.photons,
        }],
    };
    emit_capacity_table(args.channel, &grid, args.format)
}

fn cmd_fiber(args: FiberArgs) -> Result<(), CliError> {
    check_range(args.length >= 0.0, "length must be >= 0")?;
    check_range(args.absorption_length > 0.0, "absorption-length must be > 0")?;
    check_range(args.temperature_c >= 1.0, "temperature-c must be >= 1")?;
    check_range(args.photons >= 0.0, "photons must be >= 0")?;
    let eta = (-args.length / args.absorption_length).exp();
    let grid = [GridPoint {
        eta,
        c: args.temperature_c,
        y: 0.0,
        photons: args.photons,
    }];
    emit_capacity_table(ChannelFamily::Thermal, &grid, args.format)
}

// --------------------------------------------------------------------- eof

fn cmd_eof(args: EofArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.gamma)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", args.gamma)))?;
    let gamma = parse_covariance(&text).map_err(data_err)?;
    let modes = gamma.modes();
    let a_side: Vec<usize> = match &args.partition {
        None => (0..modes / 2).collect(),
        Some(spec) => spec
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("partition index `{s}` is not an integer")))
            })
            .collect::<Result<_, _>>()?,
    };
    let partition = Bipartition::new(modes, &a_side).map_err(data_err)?;
    if args.restarts == 0 {
        return Err(CliError::Usage("restarts must be at least 1".into()));
    }
    let opts = EoFOptions {
        restarts: args.restarts,
        seed: args.seed,
        ..Default::default()
    };
    let result = gaussian_eof_with(&gamma, &partition, &opts).map_err(|e| match e {
        GaussError::NumericalFailure(m) => CliError::Numeric(m),
        other => data_err(other),
    })?;
    println!(
        "{}",
        serde_json::to_string_pretty(&result).map_err(|e| CliError::Numeric(e.to_string()))?
    );
    Ok(())
}

// -------------------------------------------------------------------- scan

fn records_to_csv(records: &[ResidualRecord]) -> String {
    let mut out = String::from("seed,kind,residual_bits,restarts,flag,params\n");
    for r in records {
        let kind = match r.kind {
            ResidualKind::Superadditivity => "superadditivity",
            ResidualKind::Convexity => "convexity",
            ResidualKind::MoeAdditivity => "moe_additivity",
        };
        let params: Vec<String> = r.params.iter().map(|&p| format_sig(p)).collect();
        let _ = writeln!(
            out,
            "{}",
            csv_line(&[
                r.seed.to_string(),
                kind.to_string(),
                format_sig(r.residual_bits),
                r.restarts.to_string(),
                (r.tolerance_flag as u8).to_string(),
                params.join(";"),
            ])
        );
    }
    out
}

fn cmd_scan(args: ScanArgs) -> Result<(), CliError> {
    if args.samples == 0 {
        return Err(CliError::Usage("samples must be at least 1".into()));
    }
    let opts = EoFOptions {
        restarts: args.restarts,
        seed: args.seed,
        ..Default::default()
    };
    let (kind, records) = match args.kind {
        ScanKind::Superadd => (
            ResidualKind::Superadditivity,
            superadditivity_scan(args.samples, args.seed, args.mix, &opts).map_err(data_err)?,
        ),
        ScanKind::Convexity => (
            ResidualKind::Convexity,
            convexity_scan(args.samples, args.seed, &opts).map_err(data_err)?,
        ),
        ScanKind::Moe => {
            check_range(args.alpha > 1.0, "moe scans require alpha > 1")?;
            let channel = match args.channel {
                ChannelFamily::Lossy => lossy(args.eta).map_err(data_err)?,
                ChannelFamily::Classical => classical_noise_iso(args.y).map_err(data_err)?,
                _ => {
                    return Err(CliError::Usage(
                        "moe scans support --channel lossy or classical".into(),
                    ))
                }
            };
            let record = moe_additivity_scan(&channel, args.alpha, args.samples, args.seed)
                .map_err(data_err)?;
            (ResidualKind::MoeAdditivity, vec![record])
        }
    };
    std::fs::write(&args.out, records_to_csv(&records))
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", args.out)))?;
    let summary = ScanSummary::from_records(kind, &records);
    println!(
        "{}",
        serde_json::to_string_pretty(&summary).map_err(|e| CliError::Numeric(e.to_string()))?
    );
    Ok(())
}

// ------------------------------------------------------------------ verify

struct Check {
    name: String,
    deviation: f64,
    tolerance: f64,
}

fn run_checks(checks: Vec<Check>) -> Result<(), CliError> {
    let mut failures = 0usize;
    for check in &checks {
        let ok = check.deviation <= check.tolerance;
        println!(
            "{} {} max_deviation={} tolerance={}",
            if ok { "PASS" } else { "FAIL" },
            check.name,
            format_sig(check.deviation),
            format_sig(check.tolerance),
        );
        if !ok {
            failures += 1;
        }
    }
    if failures > 0 {
        return Err(CliError::Numeric(format!(
            "{failures} of {} checks failed",
            checks.len()
        )));
    }
    Ok(())
}

fn entropy_suite(cutoff: usize) -> Result<Vec<Check>, CliError> {
    if !(40..=200).contains(&cutoff) {
        return Err(CliError::Usage("entropy suite requires cutoff in [40, 200]".into()));
    }
    let mut checks = Vec::new();
    for n in [0.5, 1.0, 2.0] {
        let rho = gaussian_to_fock(FockStateKind::Thermal { n }, cutoff).map_err(data_err)?;
        let oracle = fock_entropy(&rho, 1.0).map_err(data_err)?;
        let exact = g_function(n).map_err(data_err)?;
        checks.push(Check {
            name: format!("thermal({n})-entropy"),
            deviation: (oracle - exact).abs(),
            tolerance: 1e-6,
        });
    }
    for r in [0.3, 1.0] {
        let rho = gaussian_to_fock(FockStateKind::SqueezedVacuum { r }, cutoff).map_err(data_err)?;
        let oracle = fock_entropy(&rho, 1.0).map_err(data_err)?;
        checks.push(Check {
            name: format!("squeezed({r})-entropy"),
            deviation: oracle.abs(),
            tolerance: 1e-6,
        });
    }
    for r in [0.5, 1.0] {
        let tms_cutoff = cutoff.min(36);
        let rho =
            gaussian_to_fock(FockStateKind::TwoModeSqueezed { r }, tms_cutoff).map_err(data_err)?;
        let joint = fock_entropy(&rho, 1.0).map_err(data_err)?;
        checks.push(Check {
            name: format!("tms({r})-joint-entropy"),
            deviation: joint.abs(),
            tolerance: 1e-6,
        });
        let reduced = rho.reduce(0).map_err(data_err)?;
        let oracle = fock_entropy(&reduced, 1.0).map_err(data_err)?;
        let exact = g_function(r.sinh().powi(2)).map_err(data_err)?;
        checks.push(Check {
            name: format!("tms({r})-reduced-entropy"),
            deviation: (oracle - exact).abs(),
            tolerance: 1e-6,
        });
    }
    Ok(checks)
}

fn channels_suite(cutoff: usize) -> Result<Vec<Check>, CliError> {
    if !(60..=200).contains(&cutoff) {
        return Err(CliError::Usage("channels suite requires cutoff in [60, 200]".into()));
    }
    let mut checks = Vec::new();
    for eta in [0.3, 0.7, 1.0] {
        let channel = lossy(eta).map_err(data_err)?;
        for (label, kind) in [
            ("thermal(1)", FockStateKind::Thermal { n: 1.0 }),
            ("coherent", FockStateKind::Coherent { d: [0.6, -0.4] }),
        ] {
            let rho = gaussian_to_fock(kind, cutoff).map_err(data_err)?;
            let out = apply_lossy_fock(&rho, eta).map_err(data_err)?;
            let (g_oracle, _) = fock_covariance(&out).map_err(data_err)?;
            let (g_in, _) = fock_covariance(&rho).map_err(data_err)?;
            let g_expect = channel.x().transpose() * g_in * channel.x() + channel.y();
            checks.push(Check {
                name: format!("lossy({eta})-{label}-covariance"),
                deviation: (g_oracle - g_expect).amax(),
                tolerance: 1e-6,
            });
        }
    }
    Ok(checks)
}

fn extremality_suite(cutoff: usize, seeds: usize) -> Result<Vec<Check>, CliError> {
    if !(16..=40).contains(&cutoff.min(40)) || cutoff < 16 {
        return Err(CliError::Usage("extremality suite requires cutoff >= 16".into()));
    }
    use rand::Rng;
    use rand::SeedableRng;
    let mut worst_entropy = f64::NEG_INFINITY;
    let mut worst_mutual = f64::NEG_INFINITY;
    let mut worst_conditional = f64::NEG_INFINITY;
    let two_mode = (seeds / 3).max(1);
    let one_mode = seeds - two_mode;
    for seed in 0..one_mode as u64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed ^ seed);
        let c = 1.3 + 1.2 * rng.gen::<f64>();
        let s = 0.25 * rng.gen::<f64>();
        let phi = std::f64::consts::PI * rng.gen::<f64>();
        let base = gausschan::symplectic::rotation(phi)
            .act(&gausschan::symplectic::single_mode_squeezer(s).act(&(DMatrix::identity(2, 2) * c)));
        let target = CovarianceMatrix::new(base).map_err(data_err)?;
        let mixture =
            same_covariance_non_gaussian(&target, seed, cutoff.min(40)).map_err(data_err)?;
        let rho = mixture.density().map_err(data_err)?;
        let s_gauss = entropy_of_covariance(&target);
        worst_entropy = worst_entropy.max(mixture.entropy() - s_gauss);
        // channel mutual information against the Gaussian of equal moments
        let eta = 0.6;
        let channel = lossy(eta).map_err(data_err)?;
        let input = gausschan::states::GaussianState::centered(target.clone());
        let i_gauss =
            gausschan::capacities::mutual_information(&channel, &input).map_err(data_err)?;
        let out = apply_lossy_fock(&rho, eta).map_err(data_err)?;
        let i_oracle = fock_entropy(&rho, 1.0).map_err(data_err)?
            + fock_entropy(&out, 1.0).map_err(data_err)?
            - lossy_entropy_exchange(&rho, eta).map_err(data_err)?;
        worst_mutual = worst_mutual.max(i_oracle - i_gauss);
    }
    for seed in 0..two_mode as u64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x2b0de ^ seed);
        let r = 0.25 + 0.3 * rng.gen::<f64>();
        let y = 0.3 + 0.5 * rng.gen::<f64>();
        let tms = gausschan::states::two_mode_squeezed_state(r).map_err(data_err)?;
        let target = CovarianceMatrix::new(
            tms.covariance().matrix() + DMatrix::identity(4, 4) * y,
        )
        .map_err(data_err)?;
        let mixture = same_covariance_non_gaussian(&target, seed, cutoff.min(20))
            .map_err(data_err)?;
        let s_joint = mixture.entropy();
        let reduced = mixture.reduce(0).map_err(data_err)?;
        let s_a = fock_entropy(&reduced, 1.0).map_err(data_err)?;
        let part = Bipartition::new(2, &[0]).map_err(data_err)?;
        let gauss = gausschan::states::GaussianState::centered(target.clone());
        let cond_gauss =
            gausschan::states::conditional_entropy(&gauss, &part).map_err(data_err)?;
        worst_conditional = worst_conditional.max((s_joint - s_a) - cond_gauss);
        worst_entropy = worst_entropy.max(s_joint - entropy_of_covariance(&target));
    }
    Ok(vec![
        Check {
            name: format!("entropy-extremality[{seeds} states]"),
            deviation: worst_entropy.max(0.0),
            tolerance: 1e-6,
        },
        Check {
            name: format!("mutual-information-extremality[{one_mode} states]"),
            deviation: worst_mutual.max(0.0),
            tolerance: 1e-6,
        },
        Check {
            name: format!("conditional-entropy-extremality[{two_mode} states]"),
            deviation: worst_conditional.max(0.0),
            tolerance: 1e-6,
        },
    ])
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let checks = match args.suite {
        VerifySuite::Entropy => entropy_suite(args.cutoff)?,
        VerifySuite::Channels => channels_suite(args.cutoff.clamp(60, 200))?,
        VerifySuite::Extremality => extremality_suite(args.cutoff.min(40), args.seeds.max(1))?,
    };
    run_checks(checks)
}
