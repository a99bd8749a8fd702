//! The six subcommands. Each reads the run configuration, applies flag
//! overrides, and writes its outputs only after every step has succeeded.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use cvar_core::estimator::tables;
use cvar_core::{
    augment_system, bootstrap_bands, build_policy, compute_c, controllability_test, cost_report,
    derived_indicators, forecast, longrun_bootstrap, nyblom_reference, nyblom_sequence,
    replay_counterfactual, residual_diagnostics, BandConfig, BootstrapBands, ControlPolicy,
    CvarEstimate, CvarSpec, DMatrix, DVector, IndicatorMap, LongRunBootstrap, PhaseIn, Rank,
    Refit, RestrictionSet, RuleParameterization, SampleData, SimulationPath, TimeFrame,
    TraceMethod, TraceTest,
};
use sha2::{Digest, Sha256};

use crate::artifact::{EstimateArtifact, RestrictionTest};
use crate::config::{
    read_toml, resolve, ModelFile, PolicyFile, RankMethod, RestrictionFile, RunConfig, ScenarioFile,
};
use crate::error::{Error, Result};
use crate::io::{fmt_num, frame_table, load_frame, LoadOptions, OutputSet, Table};
use crate::plot::{self, Band, Series};
use crate::report;
use crate::runner::Parallel;
use crate::transforms;

/// Command-line values that take precedence over the configuration file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub data: Option<PathBuf>,
    pub spec: Option<PathBuf>,
    pub policy: Option<PathBuf>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub bootstrap: Option<usize>,
    pub force: bool,
}

/// A loaded configuration with overrides applied.
#[derive(Debug)]
pub struct Context {
    config_path: PathBuf,
    cfg: RunConfig,
    hash: String,
    seed: u64,
    out: PathBuf,
    force: bool,
    bootstrap: Option<usize>,
    data_path: PathBuf,
    spec_path: Option<PathBuf>,
    /// `--policy`, which outranks every policy named in files.
    policy_flag: Option<PathBuf>,
}

impl Context {
    pub fn load(config: &Path, ov: Overrides) -> Result<Self> {
        let bytes = fs::read(config).map_err(|e| Error::io(config, e))?;
        let cfg: RunConfig = read_toml(config)?;
        // The output directory and --force do not change results and stay
        // out of the hash, so reruns into another directory match byte for byte.
        let mut h = Sha256::new();
        h.update(&bytes);
        for (key, value) in [
            ("data", ov.data.as_ref().map(|p| p.display().to_string())),
            ("spec", ov.spec.as_ref().map(|p| p.display().to_string())),
            ("policy", ov.policy.as_ref().map(|p| p.display().to_string())),
            ("seed", ov.seed.map(|s| s.to_string())),
            ("bootstrap", ov.bootstrap.map(|b| b.to_string())),
        ] {
            if let Some(v) = value {
                h.update(format!("\n--{key}={v}").as_bytes());
            }
        }
        let hash: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        let data_path = ov.data.unwrap_or_else(|| resolve(config, &cfg.data.path));
        let spec_path = ov.spec.or_else(|| cfg.model.as_ref().map(|m| resolve(config, &m.spec)));
        let out = ov.out.unwrap_or_else(|| resolve(config, &cfg.out));
        Ok(Self {
            config_path: config.to_path_buf(),
            seed: ov.seed.unwrap_or(cfg.seed),
            cfg,
            hash,
            out,
            force: ov.force,
            bootstrap: ov.bootstrap,
            data_path,
            spec_path,
            policy_flag: ov.policy,
        })
    }

    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn out_dir(&self) -> &Path {
        &self.out
    }

    fn header(&self, command: &str) -> String {
        report::header(command, &self.hash, self.seed)
    }

    fn outputs(&self) -> OutputSet {
        OutputSet::new(&self.out, self.force)
    }

    fn delimiter(&self) -> Result<u8> {
        self.cfg.data.delimiter_byte(&self.config_path)
    }

    /// Loads the data and runs the transform list.
    fn prepared(&self) -> Result<(TimeFrame, String)> {
        let schema = self.cfg.data.schema(&self.config_path)?;
        let opts = LoadOptions { delimiter: self.delimiter()?, fill_gaps: self.cfg.data.fill_gaps };
        let frame = load_frame(&self.data_path, &schema, opts)?;
        match &self.cfg.data.transforms {
            None => Ok((frame, String::new())),
            Some(p) => {
                let path = resolve(&self.config_path, p);
                let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
                let steps = transforms::parse(&path, &text)?;
                transforms::apply(&path, frame, &steps)
            }
        }
    }

    fn model(&self) -> Result<(PathBuf, ModelFile)> {
        let path = self
            .spec_path
            .clone()
            .ok_or_else(|| Error::Usage("no model spec: set [model].spec or pass --spec".into()))?;
        let model = read_toml(&path)?;
        Ok((path, model))
    }

    fn restrictions(&self, spec: &CvarSpec, names: &[String]) -> Result<Option<(RestrictionSet, f64, usize)>> {
        let Some(p) = self.cfg.model.as_ref().and_then(|m| m.restrictions.as_ref()) else {
            return Ok(None);
        };
        let path = resolve(&self.config_path, p);
        let file: RestrictionFile = read_toml(&path)?;
        let mut rows = names.to_vec();
        rows.extend(spec.deterministic.restricted_names());
        Ok(Some((file.to_set(&path, &rows, names)?, file.tol, file.max_iter)))
    }

    fn refit(&self, est: &CvarEstimate) -> Result<Refit> {
        Ok(match self.restrictions(&est.spec, &est.names)? {
            None => Refit::Unrestricted,
            Some((restrictions, tol, max_iter)) => Refit::Restricted { restrictions, tol, max_iter },
        })
    }

    fn control_policy(&self) -> Option<PathBuf> {
        self.policy_flag
            .clone()
            .or_else(|| self.cfg.control.as_ref().map(|c| resolve(&self.config_path, &c.policy)))
    }

    fn estimate_path(&self) -> PathBuf {
        match self.cfg.model.as_ref().and_then(|m| m.estimate.as_ref()) {
            Some(p) => resolve(&self.config_path, p),
            None => self.out.join("estimate.json"),
        }
    }

    fn load_estimate(&self) -> Result<CvarEstimate> {
        let path = self.estimate_path();
        if !path.exists() {
            return Err(Error::io(
                &path,
                std::io::Error::new(std::io::ErrorKind::NotFound, "estimate not found; run `cvar estimate` first"),
            ));
        }
        EstimateArtifact::read(&path)?.to_estimate(&path)
    }

    /// Sample data aligned with a stored estimate.
    fn sample_for(&self, est: &CvarEstimate) -> Result<SampleData> {
        let (frame, _) = self.prepared()?;
        let data = SampleData::from_frame(&frame, &est.spec)?;
        let aligned = data.names == est.names
            && data.years.len() == est.start + est.t_eff()
            && data.years.get(est.start..) == Some(&est.years[..]);
        if !aligned {
            return Err(Error::format(&self.data_path, "data do not match the stored estimate (variables or sample)"));
        }
        Ok(data)
    }

    fn units(&self, name: &str) -> String {
        self.cfg.data.units.get(name).cloned().unwrap_or_else(|| "unspecified".into())
    }

    fn csv(&self, command: &str, table: &Table) -> Result<String> {
        Ok(format!("{}{}", self.header(command), table.render(self.delimiter()?)))
    }

    fn rank_method(&self, spec: &CvarSpec, data: &SampleData) -> TraceMethod {
        let bootstrap = TraceMethod::Bootstrap {
            replications: self.bootstrap.unwrap_or(self.cfg.ranktest.replications),
            seed: self.seed,
        };
        match self.cfg.ranktest.method {
            RankMethod::Asymptotic => TraceMethod::Asymptotic,
            RankMethod::Bootstrap => bootstrap,
            RankMethod::Auto => {
                let tabulated =
                    spec.deterministic.standard_case(data.origin).is_some() && data.n() <= tables::MAX_DIM;
                if tabulated && self.bootstrap.is_none() {
                    TraceMethod::Asymptotic
                } else {
                    bootstrap
                }
            }
        }
    }
}

fn policy_phase(file: &PolicyFile, start: Option<i32>, ramp: Option<u32>) -> PhaseIn {
    PhaseIn { start: start.unwrap_or(file.start), ramp: ramp.unwrap_or(file.ramp) }
}

fn observed_lookup(data: Option<&SampleData>) -> impl Fn(i32) -> Option<DVector<f64>> + '_ {
    move |year| {
        let d = data?;
        let row = d.years.iter().position(|&y| y == year)?;
        Some(d.endog.row(row).transpose())
    }
}

fn col_names(prefix: &str, count: usize) -> Vec<String> {
    report::numbered(prefix, count)
}

/// `prepare`: transformed frame and transform log.
pub fn prepare(ctx: &Context) -> Result<Vec<PathBuf>> {
    let (frame, log) = ctx.prepared()?;
    let mut out = ctx.outputs();
    let table = frame_table(&frame, &ctx.cfg.data.units);
    out.add("prepared.csv", ctx.csv("prepare", &table)?);
    out.add("transforms.log", format!("{}{log}", ctx.header("prepare")));
    out.write()
}

fn trace_section(test: &TraceTest) -> String {
    let mut s = String::new();
    let method = match test.method {
        TraceMethod::Asymptotic => "asymptotic tables".to_string(),
        TraceMethod::Bootstrap { replications, seed } => format!("bootstrap, B = {replications}, seed {seed}"),
    };
    let case = test.case.map(|c| c.name()).unwrap_or("nonstandard deterministic terms");
    let _ = writeln!(s, "Trace test ({method}; {case}; T = {})", test.t_eff);
    let _ = writeln!(s, "{:>4} {:>12} {:>12} {:>10} {:>10}", "r0", "eigenvalue", "trace", "p-value", "cv95");
    for row in &test.rows {
        let cv = row.critical_95.map(|c| format!("{c:.3}")).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "{:>4} {:>12.6} {:>12.4} {:>10.4} {:>10}",
            row.rank, test.eigenvalues[row.rank], row.statistic, row.p_value, cv
        );
    }
    for note in test.notes() {
        let _ = writeln!(s, "note: {note}");
    }
    s
}

fn trace_table(test: &TraceTest) -> Table {
    let header = ["r0", "eigenvalue", "trace", "p_value", "cv95"].map(String::from).to_vec();
    let units = ["r0=rank under H0", "eigenvalue=squared canonical correlation", "trace=statistic", "p_value=probability", "cv95=statistic"]
        .map(String::from)
        .to_vec();
    let mut t = Table::new(header, units);
    for row in &test.rows {
        t.push(vec![
            row.rank.to_string(),
            fmt_num(test.eigenvalues[row.rank]),
            fmt_num(row.statistic),
            fmt_num(row.p_value),
            row.critical_95.map(fmt_num).unwrap_or_default(),
        ]);
    }
    t
}

/// `estimate`: fitted model artifact, report and residual table.
pub fn estimate(ctx: &Context) -> Result<Vec<PathBuf>> {
    let (frame, _) = ctx.prepared()?;
    let (spec_path, model) = ctx.model()?;
    let names = frame.endogenous_names();
    let mut spec = model.to_spec(&spec_path, &names)?;
    let data = SampleData::from_frame(&frame, &spec)?;
    let mut rep = ctx.header("estimate");
    let _ = writeln!(rep, "# trend origin: t = 1 in {}", data.origin);
    if spec.rank == Rank::Search {
        let method = ctx.rank_method(&spec, &data);
        let test = cvar_core::estimator::trace_test_data(&data, &spec, method, &Parallel)?;
        let r = test.selected_rank(ctx.cfg.ranktest.level);
        rep.push_str(&trace_section(&test));
        let _ = writeln!(rep, "selected rank at level {}: {r}\n", ctx.cfg.ranktest.level);
        spec.rank = Rank::Fixed(r);
    }
    let (est, test) = match ctx.restrictions(&spec, &names)? {
        None => (cvar_core::estimator::fit_data(&data, &spec)?, None),
        Some((set, tol, max_iter)) => {
            let fit = cvar_core::estimator::estimate_restricted_data(&data, &spec, &set, tol, max_iter)?;
            let t = RestrictionTest { lr: fit.lr, df: fit.df, p_value: fit.p_value, iterations: fit.iterations };
            (fit.estimate, Some(t))
        }
    };
    write_estimate_report(&mut rep, &est, test.as_ref());
    match residual_diagnostics(&est, ctx.cfg.diagnostics.max_lag) {
        Ok(d) => {
            let _ = writeln!(rep, "\nResidual diagnostics (max lag {})", ctx.cfg.diagnostics.max_lag);
            let _ = writeln!(rep, "portmanteau Q = {:.4}, df = {}, p = {:.4}", d.portmanteau, d.df, d.p_value);
            let _ = writeln!(rep, "autocorrelation bound 2/sqrt(T) = {:.4}", d.acf_bound);
            for (j, name) in est.names.iter().enumerate() {
                let flagged: Vec<String> = (0..d.acf.nrows())
                    .filter(|&h| d.acf[(h, j)].abs() > d.acf_bound)
                    .map(|h| (h + 1).to_string())
                    .collect();
                let _ = writeln!(
                    rep,
                    "{name}: sd first half {:.6}, second half {:.6}; lags outside bound: {}",
                    d.sd_first_half[j],
                    d.sd_second_half[j],
                    if flagged.is_empty() { "none".into() } else { flagged.join(" ") }
                );
            }
        }
        Err(e) => {
            let _ = writeln!(rep, "\nResidual diagnostics skipped: {e}");
        }
    }

    let mut header = vec!["year".to_string()];
    header.extend(est.names.iter().map(|n| format!("resid_{n}")));
    let mut units = vec!["year=calendar year".to_string()];
    units.extend(est.names.iter().map(|n| format!("resid_{n}=difference of {}", ctx.units(n))));
    let mut table = Table::new(header, units);
    for (i, y) in est.years.iter().enumerate() {
        let mut row = vec![y.to_string()];
        row.extend(est.residuals.row(i).iter().map(|v| fmt_num(*v)));
        table.push(row);
    }

    let artifact = EstimateArtifact::from_estimate(&est, &ctx.hash, ctx.seed, test);
    let mut out = ctx.outputs();
    out.add("estimate.json", artifact.to_json());
    out.add("estimate.txt", rep);
    out.add("residuals.csv", ctx.csv("estimate", &table)?);
    out.write()
}

fn write_estimate_report(rep: &mut String, est: &CvarEstimate, test: Option<&RestrictionTest>) {
    let n = est.n();
    let r = est.rank();
    let mut rows = est.names.clone();
    rows.extend(est.spec.deterministic.restricted_names());
    let _ = writeln!(
        rep,
        "Sample {}-{} (T = {}), lag order {}, rank {r}",
        est.years.first().copied().unwrap_or(0),
        est.years.last().copied().unwrap_or(0),
        est.t_eff(),
        est.lag_order()
    );
    let unres = est.spec.deterministic.unrestricted_names();
    if !unres.is_empty() {
        let _ = writeln!(rep, "unrestricted deterministic terms: {}", unres.join(", "));
    }
    if !est.spec.exogenous.is_empty() {
        let _ = writeln!(
            rep,
            "exogenous differences: {} at lags {:?}",
            est.spec.exogenous.join(", "),
            est.spec.exog_lags
        );
    }
    let eig: Vec<String> = est.eigenvalues.iter().take(n).map(|v| format!("{v:.6}")).collect();
    let _ = writeln!(rep, "eigenvalues: {}", eig.join(" "));
    let _ = writeln!(rep, "log-likelihood: {:.6}\n", est.loglik);
    let vecs = col_names("beta", r);
    rep.push_str(&report::matrix("beta*", &est.beta_star, &rows, &vecs));
    rep.push_str(&report::matrix("\nalpha", &est.alpha, &est.names, &vecs));
    rep.push_str(&report::matrix("\nPi = alpha beta*'", &est.pi_star(), &est.names, &rows));
    for (i, g) in est.gammas.iter().enumerate() {
        rep.push_str(&report::matrix(&format!("\nGamma_{}", i + 1), g, &est.names, &est.names));
    }
    if est.det_coef.ncols() > 0 {
        rep.push_str(&report::matrix("\nunrestricted deterministic coefficients", &est.det_coef, &est.names, &unres));
    }
    if est.exog_coef.ncols() > 0 {
        let mut cols = Vec::new();
        for l in &est.spec.exog_lags {
            cols.extend(est.spec.exogenous.iter().map(|x| format!("d{x}_l{l}")));
        }
        rep.push_str(&report::matrix("\nexogenous coefficients", &est.exog_coef, &est.names, &cols));
    }
    rep.push_str(&report::matrix("\nOmega", &est.omega, &est.names, &est.names));
    if let Some(t) = test {
        let _ = writeln!(
            rep,
            "\nLR test of restrictions: LR = {:.4}, df = {}, p = {:.4} ({} iterations)",
            t.lr, t.df, t.p_value, t.iterations
        );
    }
}

/// `ranktest`: trace-test table.
pub fn ranktest(ctx: &Context) -> Result<Vec<PathBuf>> {
    let (frame, _) = ctx.prepared()?;
    let (spec_path, model) = ctx.model()?;
    let spec = model.to_spec(&spec_path, &frame.endogenous_names())?;
    let data = SampleData::from_frame(&frame, &spec)?;
    let method = ctx.rank_method(&spec, &data);
    let test = cvar_core::estimator::trace_test_data(&data, &spec, method, &Parallel)?;
    let mut rep = ctx.header("ranktest");
    rep.push_str(&trace_section(&test));
    let level = ctx.cfg.ranktest.level;
    let _ = writeln!(rep, "selected rank at level {level}: {}", test.selected_rank(level));
    let mut out = ctx.outputs();
    out.add("ranktest.txt", rep);
    out.add("ranktest.csv", ctx.csv("ranktest", &trace_table(&test))?);
    out.write()
}

/// `stability`: recursive fluctuation statistic and its reference value.
pub fn stability(ctx: &Context) -> Result<Vec<PathBuf>> {
    let est = ctx.load_estimate()?;
    let data = ctx.sample_for(&est)?;
    let sc = &ctx.cfg.stability;
    let result = nyblom_sequence(&data, &est, sc.t_min_fraction)?;
    let (reference, source) = match sc.reference {
        Some(r) => (r, "supplied".to_string()),
        None => {
            let b = ctx.bootstrap.unwrap_or(sc.replications);
            let refit = ctx.refit(&est)?;
            let r = nyblom_reference(&est, &data, &refit, b, ctx.seed, sc.t_min_fraction, &Parallel)?;
            (r, format!("parametric bootstrap, B = {b}"))
        }
    };
    let result = result.with_reference(reference);
    let mut rep = ctx.header("stability");
    let _ = writeln!(rep, "Fluctuation test for beta* at the full-sample estimate (no recursive estimation)");
    let _ = writeln!(rep, "path from {} to {}", result.years[0], result.years[result.years.len() - 1]);
    let _ = writeln!(rep, "sup statistic: {:.6}", result.sup);
    let _ = writeln!(rep, "final value relative to sup: {:.3e}", result.final_relative);
    let _ = writeln!(rep, "95% reference ({source}): {reference:.6}");
    let _ = writeln!(
        rep,
        "decision: {}",
        if result.exceeds == Some(true) { "constancy rejected at 5%" } else { "constancy not rejected at 5%" }
    );
    let mut table = Table::new(
        vec!["year".into(), "statistic".into(), "reference95".into()],
        vec!["year=calendar year".into(), "statistic=dimensionless".into(), "reference95=dimensionless".into()],
    );
    for (y, v) in result.years.iter().zip(&result.path) {
        table.push(vec![y.to_string(), fmt_num(*v), fmt_num(reference)]);
    }
    let mut out = ctx.outputs();
    out.add("stability.txt", rep);
    out.add("stability.csv", ctx.csv("stability", &table)?);
    if ctx.cfg.plots {
        let refs = vec![reference; result.path.len()];
        let svg = plot::chart(
            "Fluctuation statistic",
            &result.years,
            &[
                Series { label: "statistic", values: &result.path, color: "#1f4e9c", dashed: false },
                Series { label: "95% reference", values: &refs, color: "#b22222", dashed: true },
            ],
            &[],
        );
        out.add("stability.svg", svg);
    }
    out.write()
}

fn fmt_indicators(rep: &mut String, est: &CvarEstimate, ind: &cvar_core::DerivedIndicators, map: &IndicatorMap) {
    let se = |v: f64| if v.is_nan() { "n/a".to_string() } else { format!("{v:.4}") };
    let _ = writeln!(rep, "\nDerived indicators");
    let _ = writeln!(rep, "damage coefficient xi ({}): {:.4} (se {})", est.names[map.h], ind.xi, se(ind.xi_se));
    let _ = writeln!(rep, "temperature response dh/dm: {:.4} (se {})", ind.dh_dm, se(ind.dh_dm_se));
    let _ = writeln!(rep, "warming for delta m = {}: {:.4} (se {})", map.delta_m, ind.dt_200y, se(ind.dt_200y_se));
    let _ = writeln!(rep, "long-run elasticity C[y,m]: {:.4}", ind.elasticity_direct);
    let _ = writeln!(rep, "long-run elasticity C[y,m]/C[m,m]: {:.4}", ind.elasticity_cumulative);
    let _ = writeln!(
        rep,
        "output loss per GtC (stock {} GtC): {:.4}% (se {}); cumulative convention {:.4}%",
        map.stock_gtc,
        ind.gamma_pct,
        se(ind.gamma_pct_se),
        ind.gamma_pct_cumulative
    );
}

/// Policy selection matrices and rule for the stored estimate.
fn load_policy(
    path: &Path,
    est: &CvarEstimate,
    data: Option<&SampleData>,
    start: Option<i32>,
    ramp: Option<u32>,
) -> Result<(PolicyFile, DMatrix<f64>, DMatrix<f64>, DVector<f64>, PhaseIn)> {
    let file: PolicyFile = read_toml(path)?;
    let (a, b, b_star) = file.matrices(path, &est.names, observed_lookup(data))?;
    let phase = policy_phase(&file, start, ramp);
    Ok((file, a, b, b_star, phase))
}

/// `control`: long-run matrix, controllability decision, rule and augmented system.
pub fn control(ctx: &Context) -> Result<Vec<PathBuf>> {
    let est = ctx.load_estimate()?;
    let policy_path = ctx
        .control_policy()
        .ok_or_else(|| Error::Usage("no policy: set [control].policy or pass --policy".into()))?;
    let lr = &ctx.cfg.longrun;
    let b_reps = ctx.bootstrap.unwrap_or(lr.replications);
    let peek: PolicyFile = read_toml(&policy_path)?;
    let needs_data = b_reps > 0 || peek.b_star_year.is_some();
    let data = if needs_data { Some(ctx.sample_for(&est)?) } else { None };
    let (file, a, b, b_star, phase) = load_policy(&policy_path, &est, data.as_ref(), None, None)?;

    let rep_c = compute_c(&est)?;
    let boot: Option<LongRunBootstrap> = match (&data, b_reps) {
        (_, 0) => None,
        (_, b) if b < 199 => {
            return Err(cvar_core::Error::InvalidSpec(format!("t-statistics of C need B >= 199, got {b}")).into())
        }
        (Some(d), b) => Some(longrun_bootstrap(&est, d, &ctx.refit(&est)?, b, ctx.seed, &Parallel)?),
        (None, _) => None,
    };
    let tstats = boot.as_ref().map(|bt| bt.tstats(&rep_c.c));
    let decision = controllability_test(&rep_c, &a, &b, tstats.as_ref())?;
    let policy = build_policy(&est, &rep_c, &a, &b, &b_star, phase, RuleParameterization::Direct)?;
    if decision.tstats_significant == Some(false) {
        let weak: Vec<String> = decision
            .entry_tstats
            .iter()
            .filter(|(_, _, t)| t.abs() <= cvar_core::control::T_CRITICAL)
            .map(|(i, j, t)| format!("C[{},{}] t = {t:.2}", est.names[*i], est.names[*j]))
            .collect();
        return Err(cvar_core::Error::InsignificantControl(weak.join(", ")).into());
    }
    let aug = augment_system(&est, Some(&policy))?;

    let names = &est.names;
    let mut rep = ctx.header("control");
    if !file.name.is_empty() {
        let _ = writeln!(rep, "policy: {}", file.name);
    }
    rep.push_str(&report::matrix("Long-run impact matrix C", &rep_c.c, names, names));
    if let (Some(t), Some(bt)) = (&tstats, &boot) {
        rep.push_str(&report::matrix(
            &format!("\nt-statistics of C (residual bootstrap, B = {}, {} redraws)", bt.c_draws.len(), bt.redraws),
            t,
            names,
            names,
        ));
    }
    let trends = col_names("trend", rep_c.alpha_perp.ncols());
    rep.push_str(&report::matrix("\nalpha_perp", &rep_c.alpha_perp, names, &trends));
    rep.push_str(&report::matrix("\nbeta_perp", &rep_c.beta_perp, names, &trends));
    let ctrl = col_names("control", a.ncols());
    let tgt = col_names("target", b.ncols());
    rep.push_str(&report::matrix("\ncontrols a", &a, names, &ctrl));
    rep.push_str(&report::matrix("\ntargets b", &b, names, &tgt));
    let _ = writeln!(rep, "\nControllability");
    let _ = writeln!(rep, "det(b'Ca) = {:.6e}", decision.det);
    let _ = writeln!(rep, "scale-normalized det = {:.6e}", decision.normalized_det);
    for (i, j, t) in &decision.entry_tstats {
        let _ = writeln!(rep, "t(C[{},{}]) = {t:.3}", names[*i], names[*j]);
    }
    let verdict = if decision.weak { "controllable (weakly)" } else { "controllable" };
    let _ = writeln!(rep, "decision: {verdict}");
    write_rule(&mut rep, &est, &policy, &ctrl);
    let _ = writeln!(rep, "\nControlled system");
    let _ = writeln!(rep, "unit roots: {} (expected n - r - m = {})", aug.unit_roots, aug.expected_unit_roots);
    let moduli: Vec<String> = aug.companion_moduli.iter().take(8).map(|m| format!("{m:.6}")).collect();
    let _ = writeln!(rep, "largest companion moduli: {}", moduli.join(" "));
    let _ = writeln!(rep, "MA(1) spectral radius: {:.6}", aug.ma_spectral_radius);
    if est.lag_order() == 1 {
        let _ = writeln!(rep, "(a VAR(1) rule gives the MA block eigenvalue -1 on each controlled direction)");
    }
    rep.push_str(&report::matrix("\nMA(1) coefficient (I + alpha beta') abar kappa'", &aug.varma_ma_coef, names, names));
    if est.lag_order() == 1 {
        let (ka, kb) = policy.identity_residuals(&est.alpha);
        let _ = writeln!(rep, "\nrule identities: max|kappa'alpha| = {ka:.3e}, max|I + kappa'abar| = {kb:.3e}");
    } else {
        let _ = writeln!(rep, "\nlag order > 1: rule checked through the companion eigenvalues only");
    }
    if let Some(ic) = &lr.indicators {
        let mut map = IndicatorMap::from_names(names, &ic.y, &ic.c, &ic.m, &ic.h)?;
        if ic.damage_vector == 0 || ic.climate_vector == 0 {
            return Err(Error::format(&ctx.config_path, "indicator vectors are numbered from 1"));
        }
        map.damage_vector = ic.damage_vector - 1;
        map.climate_vector = ic.climate_vector - 1;
        map.delta_m = ic.delta_m;
        map.stock_gtc = ic.stock_gtc;
        let ind = derived_indicators(&est, &rep_c, &map, boot.as_ref())?;
        fmt_indicators(&mut rep, &est, &ind, &map);
    }

    let mut header = vec!["variable".to_string()];
    header.extend(names.iter().cloned());
    let mut units = vec!["variable=row of C".to_string()];
    units.extend(names.iter().map(|n| format!("{n}=response per unit shock")));
    let mut table = Table::new(header, units);
    for (i, n) in names.iter().enumerate() {
        let mut row = vec![n.clone()];
        row.extend(rep_c.c.row(i).iter().map(|v| fmt_num(*v)));
        table.push(row);
    }
    let mut out = ctx.outputs();
    out.add("control.txt", rep);
    out.add("longrun.csv", ctx.csv("control", &table)?);
    out.write()
}

fn write_rule(rep: &mut String, est: &CvarEstimate, policy: &ControlPolicy, ctrl: &[String]) {
    let _ = writeln!(
        rep,
        "\nRule nu(X) = abar (kappa'X - kappa0), starting {} with a {}-year ramp",
        policy.phase_in.start, policy.phase_in.ramp
    );
    let bs: Vec<String> = policy.b_star.iter().map(|v| format!("{v:.6}")).collect();
    let _ = writeln!(rep, "objective b* = {}", bs.join(" "));
    rep.push_str(&report::matrix("kappa", &policy.kappa, &est.names, ctrl));
    let k0: Vec<String> = policy.kappa0.iter().map(|v| format!("{v:.6}")).collect();
    let _ = writeln!(rep, "kappa0 at the policy start: {}", k0.join(" "));
}

fn sanitize(label: &str) -> String {
    let s: String = label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect();
    if s.is_empty() {
        "scenario".into()
    } else {
        s
    }
}

fn path_table(
    ctx: &Context,
    names: &[String],
    path: &SimulationPath,
    observed: Option<&SampleData>,
    point_label: &str,
    bands: Option<&BootstrapBands>,
) -> Table {
    let mut header = vec!["year".to_string()];
    let mut units = vec!["year=calendar year".to_string()];
    for n in names {
        let u = ctx.units(n);
        let mut cols = Vec::new();
        if observed.is_some() {
            cols.push(format!("{n}_observed"));
        }
        cols.push(format!("{n}_{point_label}"));
        if bands.is_some() {
            cols.extend([format!("{n}_mean"), format!("{n}_lower"), format!("{n}_upper")]);
        }
        units.extend(cols.iter().map(|c| format!("{c}={u}")));
        header.extend(cols);
    }
    let m = path.injections.ncols();
    for j in 0..m {
        header.push(format!("injection{}", j + 1));
        units.push(format!("injection{}=units of control {}", j + 1, j + 1));
    }
    let mut t = Table::new(header, units);
    for (i, y) in path.years.iter().enumerate() {
        let mut row = vec![y.to_string()];
        for j in 0..names.len() {
            if let Some(d) = observed {
                row.push(d.endog.get((i, j)).map(|v| fmt_num(*v)).unwrap_or_default());
            }
            row.push(fmt_num(path.levels[(i, j)]));
            if let Some(b) = bands {
                row.extend([fmt_num(b.mean[(i, j)]), fmt_num(b.lower[(i, j)]), fmt_num(b.upper[(i, j)])]);
            }
        }
        row.extend(path.injections.row(i).iter().map(|v| fmt_num(*v)));
        t.push(row);
    }
    t
}

fn path_charts(
    out: &mut OutputSet,
    stem: &str,
    names: &[String],
    path: &SimulationPath,
    observed: Option<&SampleData>,
    bands: Option<&BootstrapBands>,
) {
    for (j, n) in names.iter().enumerate() {
        let point: Vec<f64> = path.levels.column(j).iter().copied().collect();
        let obs: Vec<f64> = observed
            .map(|d| (0..path.years.len()).map(|i| d.endog.get((i, j)).copied().unwrap_or(f64::NAN)).collect())
            .unwrap_or_default();
        let (lo, hi): (Vec<f64>, Vec<f64>) = bands
            .map(|b| (b.lower.column(j).iter().copied().collect(), b.upper.column(j).iter().copied().collect()))
            .unwrap_or_default();
        let mut series = Vec::new();
        if observed.is_some() {
            series.push(Series { label: "observed", values: &obs, color: "#222222", dashed: false });
        }
        series.push(Series { label: &path.label, values: &point, color: "#1f4e9c", dashed: observed.is_some() });
        let band = [Band { lower: &lo, upper: &hi, color: "#1f4e9c" }];
        let svg = plot::chart(n, &path.years, &series, if bands.is_some() { &band } else { &[] });
        out.add(&format!("{stem}_{}.svg", sanitize(n)), svg);
    }
}

/// `simulate`: counterfactual replay, bands, forecast and cost report.
pub fn simulate(ctx: &Context) -> Result<Vec<PathBuf>> {
    let est = ctx.load_estimate()?;
    let data = ctx.sample_for(&est)?;
    let scenario_path = ctx
        .cfg
        .simulate
        .as_ref()
        .map(|s| resolve(&ctx.config_path, &s.scenario))
        .ok_or_else(|| Error::Usage("no scenario: set [simulate].scenario".into()))?;
    let sc: ScenarioFile = read_toml(&scenario_path)?;
    let policy_path = match (&ctx.policy_flag, &sc.policy) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(p)) => Some(resolve(&scenario_path, p)),
        (None, None) => ctx.control_policy(),
    };
    let rep_c = compute_c(&est)?;
    let policy = match &policy_path {
        None => None,
        Some(p) => {
            let (_, a, b, b_star, phase) = load_policy(p, &est, Some(&data), sc.start, sc.ramp)?;
            Some(build_policy(&est, &rep_c, &a, &b, &b_star, phase, RuleParameterization::Direct)?)
        }
    };
    let policy = policy.as_ref();
    let replay = replay_counterfactual(&est, policy, &data)?;
    let band_cfg = {
        let b = ctx.bootstrap.unwrap_or(sc.replications);
        (b > 0).then(|| {
            let mut cfg = BandConfig::new(b, sc.seed.unwrap_or(ctx.seed));
            cfg.window = sc.residual_window.map(|[a, b]| (a, b));
            cfg.lower = sc.lower;
            cfg.upper = sc.upper;
            cfg
        })
    };
    let bands = match &band_cfg {
        Some(cfg) => Some(bootstrap_bands(&est, policy, &data, cfg, &Parallel)?),
        None => None,
    };
    let fc = if sc.horizon > 0 {
        Some(forecast(&est, &data, sc.horizon, policy, band_cfg.as_ref(), &Parallel)?)
    } else {
        None
    };
    let cost = match sc.reference_year {
        Some(year) => {
            for v in &sc.log_variables {
                if !est.names.contains(v) {
                    return Err(Error::format(&scenario_path, format!("unknown log variable `{v}`")));
                }
            }
            let logs: Vec<bool> = est.names.iter().map(|n| sc.log_variables.contains(n)).collect();
            Some(cost_report(&data, &replay, year, &logs)?)
        }
        None => None,
    };

    let stem = sanitize(&sc.label);
    let names = &est.names;
    let mut out = ctx.outputs();
    let point = if policy.is_some() { "counterfactual" } else { "replay" };
    out.add(&format!("{stem}_paths.csv"), ctx.csv("simulate", &path_table(ctx, names, &replay, Some(&data), point, bands.as_ref()))?);
    if let Some(f) = &fc {
        out.add(
            &format!("{stem}_forecast.csv"),
            ctx.csv("simulate", &path_table(ctx, names, &f.point, Some(&data), "point", f.bands.as_ref()))?,
        );
    }
    let mut rep = ctx.header("simulate");
    let _ = writeln!(rep, "scenario: {}", sc.label);
    match policy {
        Some(p) => {
            let _ = writeln!(rep, "policy start {} with a {}-year ramp", p.phase_in.start, p.phase_in.ramp);
        }
        None => {
            let _ = writeln!(rep, "no policy: replay of the fitted model");
        }
    }
    if let Some(b) = &bands {
        let _ = writeln!(
            rep,
            "bands: {} replications, seed {}, quantiles {} and {}",
            b.replications, b.seed, b.lower_prob, b.upper_prob
        );
        for w in &b.warnings {
            let _ = writeln!(rep, "warning: {w}");
        }
    }
    if let Some(f) = &fc {
        let _ = writeln!(rep, "forecast horizon: {} years from {}", sc.horizon, f.point.years[f.start]);
    }
    if let Some(c) = &cost {
        let _ = writeln!(rep, "\nCost report at {}", c.reference_year);
        let _ = writeln!(rep, "{:<12} {:>14} {:>14} {:>14} {:>16}", "variable", "observed", "counterfactual", "change", "equivalent year");
        for e in &c.entries {
            let change = if e.percent { format!("{:.2}%", e.change) } else { format!("{:.6}", e.change) };
            let eq = e.equivalent_year.map(|y| format!("{y:.1}")).unwrap_or_else(|| "none".into());
            let _ = writeln!(rep, "{:<12} {:>14.6} {:>14.6} {:>14} {:>16}", e.name, e.observed, e.counterfactual, change, eq);
        }
    }
    out.add(&format!("{stem}_report.txt"), rep);
    if ctx.cfg.plots {
        path_charts(&mut out, &stem, names, &replay, Some(&data), bands.as_ref());
        if let Some(f) = &fc {
            path_charts(&mut out, &format!("{stem}_forecast"), names, &f.point, Some(&data), f.bands.as_ref());
        }
    }
    out.write()
}
