use std::fs::File;
use std::path::Path;

use lapnet_core::rem::{parse_records, write_priority_csv, RemRecord};
use lapnet_core::rng::mix_seed;
use lapnet_core::scenario::{run_monte_carlo_with, Execution};
use lapnet_core::{
    coverage_radius_m, evaluate_deployment, load_scenario, optimal_altitude, CellId,
    DeploymentScenario, EnvironmentParams, Error, RadioConfig, RemDatabase,
};
use serde::Serialize;

use crate::output::{emit, to_json, CliError, CliResult};
use crate::{
    ClusterArgs, Command, CoverageArgs, ExecutionArg, LinkArgs, PlanAltitudeArgs, RelayArgs,
    RemChannelsArgs, RemIngestArgs, SimulateArgs,
};

pub fn dispatch(command: Command) -> CliResult<()> {
    match command {
        Command::PlanAltitude(a) => plan_altitude(a),
        Command::Coverage(a) => coverage(a),
        Command::ClusterOptimize(a) => cluster_optimize(a),
        Command::Relay(a) => relay(a),
        Command::Simulate(a) => simulate(a),
        Command::RemIngest(a) => rem_ingest(a),
        Command::RemChannels(a) => rem_channels(a),
    }
}

struct Link {
    radio: RadioConfig,
    env: EnvironmentParams,
    scenario: Option<DeploymentScenario>,
}

fn resolve_link(args: &LinkArgs) -> CliResult<Link> {
    let scenario = args.scenario.as_deref().map(load_scenario).transpose()?;
    let (mut radio, env) = match &scenario {
        Some(s) => (s.radio.clone(), Some(s.env.clone())),
        None => (RadioConfig::default(), None),
    };
    let env = match &args.env {
        Some(spec) => EnvironmentParams::resolve(spec)?,
        None => env.ok_or_else(|| CliError::Usage("--env or --scenario is required".into()))?,
    };
    match (args.plmax, &scenario) {
        (Some(pl), _) => radio.max_path_loss_db = pl,
        (None, None) => return Err(CliError::Usage("--plmax or --scenario is required".into())),
        (None, Some(_)) => {}
    }
    if let Some(f) = args.freq {
        radio.carrier_freq_hz = f;
    }
    let mut violations = radio.violations("radio");
    violations.extend(env.violations("env"));
    if !violations.is_empty() {
        return Err(Error::Validation(violations).into());
    }
    Ok(Link {
        radio,
        env,
        scenario,
    })
}

#[derive(Serialize)]
struct AltitudeOut<'a> {
    altitude_m: f64,
    radius_m: f64,
    feasible: bool,
    env: &'a str,
    max_path_loss_db: f64,
    carrier_freq_hz: f64,
    evaluations: usize,
}

fn plan_altitude(a: PlanAltitudeArgs) -> CliResult<()> {
    let link = resolve_link(&a.link)?;
    let sol = optimal_altitude(&link.radio, &link.env, a.hmin, a.hmax, a.tol)?;
    if !sol.feasible {
        return Err(CliError::Infeasible(format!(
            "no altitude in [{}, {}] m meets {} dB",
            a.hmin, a.hmax, link.radio.max_path_loss_db
        )));
    }
    let out = AltitudeOut {
        altitude_m: sol.altitude_m,
        radius_m: sol.radius_m,
        feasible: sol.feasible,
        env: &link.env.name,
        max_path_loss_db: link.radio.max_path_loss_db,
        carrier_freq_hz: link.radio.carrier_freq_hz,
        evaluations: sol.search_trace.len(),
    };
    emit(a.out.as_deref(), &to_json(&out))
}

fn coverage(a: CoverageArgs) -> CliResult<()> {
    let link = resolve_link(&a.link)?;
    let altitude = match (a.altitude, &link.scenario) {
        (Some(h), _) => h,
        (None, Some(s)) => s.platform.altitude_m,
        (None, None) => {
            return Err(CliError::Usage(
                "--altitude or --scenario is required".into(),
            ))
        }
    };
    let res = coverage_radius_m(altitude, &link.radio, &link.env, a.tol)?;
    if !res.feasible {
        return Err(CliError::Infeasible(format!(
            "zenith loss {:.2} dB exceeds {} dB at {altitude} m",
            res.limiting_path_loss_db, link.radio.max_path_loss_db
        )));
    }
    emit(a.out.as_deref(), &to_json(&res))
}

#[derive(Serialize)]
struct ClusterOut {
    best_k: usize,
    total_energy_j: f64,
    member_energy_j: f64,
    head_energy_j: f64,
    direct_energy_j: f64,
    head_ids: Vec<String>,
    outage_ids: Vec<String>,
    trace: Vec<TracePoint>,
}

#[derive(Serialize)]
struct TracePoint {
    k: usize,
    total_energy_j: f64,
}

fn cluster_optimize(a: ClusterArgs) -> CliResult<()> {
    let sc = load_scenario(&a.scenario)?;
    let n = sc.terminals.len();
    if n == 0 {
        return Err(CliError::Usage("scenario has no terminals".into()));
    }
    let kmax = a.kmax.unwrap_or(n);
    if a.kmin < 1 || a.kmin > kmax || kmax > n {
        return Err(CliError::Usage(format!(
            "cluster range [{}, {kmax}] must lie within [1, {n}]",
            a.kmin
        )));
    }
    let net = sc.network();
    let scan = net.optimal_cluster_count(&sc.terminals, &sc.traffic, a.kmin..=kmax, a.seed)?;
    let direct = net.direct_energy_j(&sc.terminals, &sc.traffic)?;
    let out = ClusterOut {
        best_k: scan.best_k,
        total_energy_j: scan.plan.total_energy_j,
        member_energy_j: scan.plan.member_energy_j,
        head_energy_j: scan.plan.head_energy_j,
        direct_energy_j: direct.energy_j,
        head_ids: scan.plan.head_ids.clone(),
        outage_ids: scan.plan.outage_ids.clone(),
        trace: scan
            .trace
            .iter()
            .map(|&(k, total_energy_j)| TracePoint { k, total_energy_j })
            .collect(),
    };
    emit(a.out.as_deref(), &to_json(&out))
}

fn relay(a: RelayArgs) -> CliResult<()> {
    let sc = load_scenario(&a.scenario)?;
    let res = sc.network().relay_coverage(&sc.terminals, a.budget)?;
    let mut csv = String::from("id,status,witness\n");
    for t in &sc.terminals {
        let (status, witness) = if res.directly_covered.contains(&t.id) {
            ("direct", "")
        } else if let Some(w) = res.witnesses.get(&t.id) {
            ("relay", w.as_str())
        } else {
            ("uncovered", "")
        };
        csv.push_str(&format!("{},{status},{witness}\n", t.id));
    }
    emit(a.out.as_deref(), csv.as_bytes())
}

#[derive(Serialize)]
struct SimulateOut {
    monte_carlo: lapnet_core::MonteCarloSummary,
    first_run: FirstRun,
}

#[derive(Serialize)]
struct FirstRun {
    terminal_count: usize,
    covered_count: usize,
    coverage_fraction: f64,
    zero_terminals: bool,
    mean_rsrp_dbm: Option<f64>,
    direct_energy_j: f64,
    outage_count: usize,
}

fn simulate(a: SimulateArgs) -> CliResult<()> {
    let sc = load_scenario(&a.scenario)?;
    let execution = match a.execution {
        ExecutionArg::Sequential => Execution::Sequential,
        ExecutionArg::Parallel => Execution::Parallel,
    };
    let summary = run_monte_carlo_with(&sc, a.runs, a.seed, execution)?;
    // The report shows run 0, the same draws the summary's first run used.
    let report = evaluate_deployment(&sc, mix_seed(a.seed, 0))?;
    let mut csv = Vec::new();
    report.write_csv(&mut csv).expect("in-memory write");
    let out = SimulateOut {
        monte_carlo: summary,
        first_run: FirstRun {
            terminal_count: report.terminal_count,
            covered_count: report.covered_count,
            coverage_fraction: report.coverage_fraction,
            zero_terminals: report.zero_terminals,
            mean_rsrp_dbm: report.mean_rsrp_dbm,
            direct_energy_j: report.direct_energy_j,
            outage_count: report.outage_count,
        },
    };
    let json = to_json(&out);
    if let Some(p) = a.out.as_deref() {
        emit(Some(p), &csv)?;
    }
    emit(a.summary.as_deref(), &json)
}

#[derive(Serialize)]
struct IngestOut {
    accepted: usize,
    skipped: usize,
    stored: usize,
}

fn rem_ingest(a: RemIngestArgs) -> CliResult<()> {
    // Parse every input before touching the store.
    let mut batch: Vec<RemRecord> = Vec::new();
    for path in &a.input {
        let f = File::open(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        batch.extend(parse_records(f, &path.display().to_string())?);
    }
    let db = RemDatabase::open(&a.store)?;
    let outcome = db.ingest(batch)?;
    let out = IngestOut {
        accepted: outcome.accepted,
        skipped: outcome.skipped,
        stored: db.len(),
    };
    emit(a.out.as_deref(), &to_json(&out))
}

fn parse_cells(spec: &str) -> CliResult<Vec<CellId>> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (x, y) = item
                .trim()
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("cell `{item}` is not of the form x:y")))?;
            let x = x
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad cell x in `{item}`")))?;
            let y = y
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad cell y in `{item}`")))?;
            Ok(CellId::new(x, y))
        })
        .collect()
}

fn rem_channels(a: RemChannelsArgs) -> CliResult<()> {
    let cells = a.cells.as_deref().map(parse_cells).transpose()?;
    if !Path::new(&a.store).is_file() {
        return Err(CliError::Io {
            path: a.store.clone(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "REM store not found"),
        });
    }
    let db = RemDatabase::open(&a.store)?;
    let list = db.prioritized_channels(cells.as_deref());
    let mut csv = Vec::new();
    write_priority_csv(&mut csv, &list).expect("in-memory write");
    emit(a.out.as_deref(), &csv)
}
