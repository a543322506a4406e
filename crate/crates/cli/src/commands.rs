use std::io::{self, Write};
use std::path::Path;

use randflight::analytic::{
    char_fun, conditional_density, marginal_density, radial_moment, surface_mass,
    unconditional_density, unconditional_marginal, Ctx, Law, UncCtx,
};
use randflight::flight::{Deviations, FlightModel, FlightSpec};
use randflight::montecarlo::simulate_endpoints;
use randflight::sampling::{fractional_poisson_mean, fractional_poisson_pmf, PmfTable};
use randflight::verify::{run_suite, SuiteConfig, SuiteScale};

use crate::args::{
    CfArgs, DensityArgs, Format, GridArg, LawArg, Model, MomentsArgs, Motion, PmfArgs,
    SimulateArgs, Suite, VerifyArgs,
};
use crate::output::{open, Cell, Table};

#[derive(Debug)]
pub enum Failure {
    /// Bad flags or parameters; exit code 1.
    Usage(String),
    /// At least one verification check failed; exit code 2.
    Verification(usize),
}

impl From<randflight::Error> for Failure {
    fn from(e: randflight::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn io_failure(out: Option<&Path>, e: io::Error) -> Failure {
    match out {
        Some(p) => Failure::Usage(format!("cannot write --out {}: {e}", p.display())),
        None => Failure::Usage(format!("cannot write output: {e}")),
    }
}

fn emit(table: &Table, format: Format, out: Option<&Path>) -> Outcome {
    let mut w = open(out).map_err(|e| io_failure(out, e))?;
    quiet_pipe(table.write(format, &mut w).and_then(|_| w.flush())).map_err(|e| io_failure(out, e))
}

/// A closed downstream pipe (`| head`) is not an error.
fn quiet_pipe(r: io::Result<()>) -> io::Result<()> {
    match r {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => other,
    }
}

fn law_of(arg: LawArg) -> Law {
    match arg {
        LawArg::X => Law::X,
        LawArg::Y => Law::Y,
    }
}

fn law_name(arg: LawArg) -> &'static str {
    match arg {
        LawArg::X => "x",
        LawArg::Y => "y",
    }
}

fn check_positive(flag: &str, v: f64) -> Outcome {
    if !(v > 0.0) || !v.is_finite() {
        return usage(format!("--{flag} must be positive and finite, got {v}"));
    }
    Ok(())
}

fn check_motion(m: &Motion) -> Outcome {
    check_positive("speed", m.speed)?;
    check_positive("horizon", m.horizon)
}

fn check_law_dim(law: LawArg, d: usize) -> Outcome {
    if law_of(law).check_dim(d).is_err() {
        let min = law_of(law).step_law().min_dim();
        return usage(format!("--dim {d} is invalid for --law {} (needs d >= {min})", law_name(law)));
    }
    Ok(())
}

fn check_proj(proj_m: Option<usize>, d: usize) -> Result<usize, Failure> {
    match proj_m {
        Some(m) if m < 1 || m > d => usage(format!("--proj-m must be in 1..={d}, got {m}")),
        Some(m) => Ok(m),
        None => Ok(d),
    }
}

fn check_shards(shards: usize) -> Outcome {
    if shards == 0 {
        return usage("--shards must be at least 1");
    }
    Ok(())
}

fn motion_meta(table: &mut Table, m: &Motion) {
    table.meta("speed", m.speed);
    table.meta("horizon", m.horizon);
}

fn grid_text(g: &GridArg) -> String {
    format!("{}:{}:{}", g.lo, g.hi, g.count)
}

fn base_table(command: &str, columns: Vec<String>) -> Table {
    let mut table = Table::new(columns);
    table.meta("command", command);
    table.meta("version", env!("CARGO_PKG_VERSION"));
    table
}

pub fn simulate(a: &SimulateArgs) -> Outcome {
    check_motion(&a.motion)?;
    check_shards(a.shards)?;
    if a.samples == 0 {
        return usage("--samples must be at least 1");
    }
    let (model, name, d) = match a.model {
        Model::A | Model::B => {
            let (model, name) = if a.model == Model::A {
                (FlightModel::StepLawA, "a")
            } else {
                (FlightModel::StepLawB, "b")
            };
            let Some(d) = a.dim else {
                return usage(format!("--dim is required for --model {name}"));
            };
            let law = model.step_law().expect("step-law model");
            if law.check_dim(d).is_err() {
                return usage(format!(
                    "--dim {d} is invalid for --model {name} (needs d >= {})",
                    law.min_dim()
                ));
            }
            (model, name, d)
        }
        Model::EvenPoisson => {
            let d = a.dim.unwrap_or(3);
            if d != 3 {
                return usage(format!("--dim must be 3 for --model even-poisson, got {d}"));
            }
            (FlightModel::EvenPoisson, "even-poisson", 3)
        }
    };
    let m = check_proj(a.proj_m, d)?;
    let deviations = match (a.n, a.lambda) {
        (Some(n), _) => Deviations::Fixed(n),
        (None, Some(lambda)) => {
            check_positive("lambda", lambda)?;
            Deviations::Randomized(lambda)
        }
        (None, None) => return usage("one of --n or --lambda is required"),
    };
    let spec = FlightSpec::new(model, d, a.motion.speed, a.motion.horizon, deviations)?;
    let batch = simulate_endpoints(&spec, a.samples, a.seed, a.shards)?;

    let randomized = matches!(deviations, Deviations::Randomized(_));
    let mut columns: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    columns.push("radius".into());
    if randomized {
        columns.push("deviations".into());
    }
    let mut table = base_table("simulate", columns);
    table.meta("model", name);
    table.meta("dim", d);
    match deviations {
        Deviations::Fixed(n) => table.meta("n", n),
        Deviations::Randomized(lambda) => table.meta("lambda", lambda),
    }
    motion_meta(&mut table, &a.motion);
    table.meta("proj_m", m);
    table.meta("samples", a.samples);
    table.meta("seed", a.seed);
    table.meta("shards", a.shards);
    for (p, &dev) in batch.points().zip(&batch.deviations) {
        let mut row: Vec<Cell> = p[..m].iter().map(|&x| Cell::Float(x)).collect();
        row.push(Cell::Float(p.iter().map(|x| x * x).sum::<f64>().sqrt()));
        if randomized {
            row.push(Cell::Int(dev as u64));
        }
        table.rows.push(row);
    }
    emit(&table, a.output.format, a.output.out.as_deref())
}

pub fn density(a: &DensityArgs) -> Outcome {
    check_motion(&a.motion)?;
    check_law_dim(a.law, a.dim)?;
    let m = check_proj(a.proj_m, a.dim)?;
    let ct = a.motion.speed * a.motion.horizon;
    if a.grid_r.lo < 0.0 {
        return usage(format!("--grid-r lower bound must be >= 0, got {}", a.grid_r.lo));
    }
    if a.grid_r.hi >= ct {
        return usage(format!(
            "--grid-r upper bound must be below ct = {ct}, got {}",
            a.grid_r.hi
        ));
    }
    let law = law_of(a.law);
    let mut table = base_table("density", vec!["r".into(), "density".into()]);
    table.meta("law", law_name(a.law));
    table.meta("dim", a.dim);
    motion_meta(&mut table, &a.motion);
    table.meta("proj_m", m);
    table.meta("grid_r", grid_text(&a.grid_r));

    let eval: Box<dyn Fn(&[f64]) -> randflight::Result<f64>> = match (a.n, a.lambda) {
        (Some(n), _) => {
            if !(n >= 0.0) || !n.is_finite() {
                return usage(format!("--n must be finite and >= 0, got {n}"));
            }
            table.meta("n", n);
            let ctx = Ctx::with_real_n(a.dim, n, a.motion.speed, a.motion.horizon)?;
            if m == a.dim {
                Box::new(move |x| conditional_density(law, &ctx, x))
            } else {
                Box::new(move |x| marginal_density(law, &ctx, m, x))
            }
        }
        (None, Some(lambda)) => {
            check_positive("lambda", lambda)?;
            table.meta("lambda", lambda);
            table.meta("surface_mass", surface_mass(law, a.dim, lambda, a.motion.horizon)?);
            let ctx = UncCtx::new(a.dim, lambda, a.motion.speed, a.motion.horizon)?;
            if m == a.dim {
                Box::new(move |x| unconditional_density(law, &ctx, x))
            } else {
                Box::new(move |x| unconditional_marginal(law, &ctx, m, x))
            }
        }
        (None, None) => return usage("one of --n or --lambda is required"),
    };
    let mut point = vec![0.0; m];
    for r in a.grid_r.values() {
        point[0] = r;
        table.rows.push(vec![Cell::Float(r), Cell::Float(eval(&point)?)]);
    }
    emit(&table, a.output.format, a.output.out.as_deref())
}

pub fn cf(a: &CfArgs) -> Outcome {
    check_motion(&a.motion)?;
    check_law_dim(a.law, a.dim)?;
    if a.alpha_grid.lo < 0.0 {
        return usage(format!("--alpha-grid lower bound must be >= 0, got {}", a.alpha_grid.lo));
    }
    if !(a.n >= 0.0) || !a.n.is_finite() {
        return usage(format!("--n must be finite and >= 0, got {}", a.n));
    }
    let law = law_of(a.law);
    let ctx = Ctx::with_real_n(a.dim, a.n, a.motion.speed, a.motion.horizon)?;
    let mut table = base_table("cf", vec!["alpha".into(), "cf".into()]);
    table.meta("law", law_name(a.law));
    table.meta("dim", a.dim);
    table.meta("n", a.n);
    motion_meta(&mut table, &a.motion);
    table.meta("alpha_grid", grid_text(&a.alpha_grid));
    for alpha in a.alpha_grid.values() {
        table.rows.push(vec![Cell::Float(alpha), Cell::Float(char_fun(law, &ctx, alpha)?)]);
    }
    emit(&table, a.output.format, a.output.out.as_deref())
}

pub fn pmf(a: &PmfArgs) -> Outcome {
    check_law_dim(a.law, a.dim)?;
    check_positive("lambda", a.lambda)?;
    check_positive("horizon", a.horizon)?;
    let process = law_of(a.law).process();
    let mut table = base_table("pmf", vec!["n".into(), "pmf".into()]);
    table.meta("law", law_name(a.law));
    table.meta("dim", a.dim);
    table.meta("lambda", a.lambda);
    table.meta("horizon", a.horizon);
    table.meta("mean", fractional_poisson_mean(process, a.dim, a.lambda, a.horizon)?);
    match a.n {
        Some(max) => {
            table.meta("n", max);
            for k in 0..=max {
                let p = fractional_poisson_pmf(process, a.dim, a.lambda, a.horizon, k)?;
                table.rows.push(vec![Cell::Int(k as u64), Cell::Float(p)]);
            }
        }
        None => {
            let pmf = PmfTable::build(process, a.dim, a.lambda, a.horizon)?;
            table.meta("captured_mass", pmf.captured_mass());
            for (k, &p) in pmf.probabilities().iter().enumerate() {
                table.rows.push(vec![Cell::Int(k as u64), Cell::Float(p)]);
            }
        }
    }
    emit(&table, a.output.format, a.output.out.as_deref())
}

pub fn moments(a: &MomentsArgs) -> Outcome {
    check_motion(&a.motion)?;
    check_law_dim(a.law, a.dim)?;
    if !(a.n >= 0.0) || !a.n.is_finite() {
        return usage(format!("--n must be finite and >= 0, got {}", a.n));
    }
    let law = law_of(a.law);
    let ctx = Ctx::with_real_n(a.dim, a.n, a.motion.speed, a.motion.horizon)?;
    let mut table = base_table("moments", vec!["p".into(), "moment".into()]);
    table.meta("law", law_name(a.law));
    table.meta("dim", a.dim);
    table.meta("n", a.n);
    motion_meta(&mut table, &a.motion);
    for p in 1..=4u32 {
        table.rows.push(vec![Cell::Int(p.into()), Cell::Float(radial_moment(law, &ctx, p)?)]);
    }
    emit(&table, a.output.format, a.output.out.as_deref())
}

pub fn verify(a: &VerifyArgs) -> Outcome {
    check_shards(a.shards)?;
    let scale = match a.suite {
        Suite::Quick => SuiteScale::Quick,
        Suite::Full => SuiteScale::Full,
    };
    let cfg = SuiteConfig { seed: a.seed, shards: a.shards, scale };
    let report = run_suite(&cfg);
    eprint!("{}", report.to_table());

    let out = a.out.as_deref();
    let mut w = open(out).map_err(|e| io_failure(out, e))?;
    let suite = match a.suite {
        Suite::Quick => "quick",
        Suite::Full => "full",
    };
    let written = match a.format {
        Format::Json => {
            let meta = serde_json::json!({
                "meta": {
                    "command": "verify",
                    "version": env!("CARGO_PKG_VERSION"),
                    "suite": suite,
                    "seed": a.seed,
                    "shards": a.shards,
                }
            });
            writeln!(w, "{meta}").and_then(|_| w.write_all(report.to_json_lines().as_bytes()))
        }
        Format::Csv => {
            let columns = ["criterion", "name", "statistic", "tolerance", "passed", "wall_time_s"];
            let mut lines = vec![
                "# command: verify".to_string(),
                format!("# version: {}", env!("CARGO_PKG_VERSION")),
                format!("# suite: {suite}"),
                format!("# seed: {}", a.seed),
                format!("# shards: {}", a.shards),
                columns.join(","),
            ];
            let num = |v: Option<f64>| v.map_or_else(String::new, |v| format!("{v:.16e}"));
            for c in &report.checks {
                lines.push(format!(
                    "{},{},{},{},{},{:.16e}",
                    c.criterion,
                    c.name,
                    num(c.statistic),
                    num(c.tolerance),
                    c.passed,
                    c.wall_time_s
                ));
            }
            writeln!(w, "{}", lines.join("\n"))
        }
    };
    quiet_pipe(written.and_then(|_| w.flush())).map_err(|e| io_failure(out, e))?;
    let failed = report.failures().count();
    if failed > 0 {
        return Err(Failure::Verification(failed));
    }
    Ok(())
}
