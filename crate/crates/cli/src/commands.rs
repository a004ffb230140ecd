use std::fmt;
use std::fs;
use std::path::Path;

use ergodual::catalog::{ModelVisitor, RingId};
use ergodual::ergodic::{ergodic_limit_check, gns_rep, group_rep, point_rep, FiniteDimRep};
use ergodual::formats::{named_schedule, MeasureFile, RepFile, ScheduleFile};
use ergodual::fusion::{verify_folner, FusionRing, LabelSet, LatticeRing};
use ergodual::groups::{CompactGroup, FiniteModel};
use ergodual::wiener::{
    continuity_test, oracle_target, run_series, AverageKind, ContinuityVerdict,
};
use ergodual::{Error, FolnerSchedule};

use crate::output::{io_error, num, Table};
use crate::{ErgodicArgs, FolnerArgs, FusionArgs, Kind, RepKind, ScheduleArgs, WienerArgs};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(String),
    Numeric(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Validation(m) | CliError::Numeric(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) => CliError::Numeric(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn parse_ring(id: &str) -> Result<RingId> {
    id.parse()
        .map_err(|e: Error| CliError::Usage(e.to_string()))
}

fn schedule(ring: &dyn FusionRing, args: &ScheduleArgs) -> Result<FolnerSchedule> {
    let path = Path::new(&args.schedule);
    if args.schedule.ends_with(".json") || path.is_file() {
        let file = ScheduleFile::from_json(&read(path)?)?;
        return Ok(file.to_schedule(ring)?);
    }
    named_schedule(ring, &args.schedule, args.steps).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn folner(args: &FolnerArgs) -> Result<()> {
    let ring = parse_ring(&args.ring)?.ring()?;
    let probe: LabelSet = match &args.probe {
        None => ring.generators().into_iter().collect(),
        Some(s) => s
            .split(';')
            .map(|l| ring.parse_label(l))
            .collect::<ergodual::Result<_>>()?,
    };
    let sched = schedule(ring.as_ref(), &args.schedule)?;
    let steps = verify_folner(&sched, &probe, ring.as_ref())?;
    let mut t = Table::new(vec!["step", "|F_n|_w", "|∂_S(F_n)|_w", "ratio"]);
    for (i, s) in steps.iter().enumerate() {
        t.push(vec![
            (i + 1).to_string(),
            s.weight.to_string(),
            s.boundary_weight.to_string(),
            num(s.ratio),
        ]);
    }
    t.write(&args.output)
}

pub fn fusion(args: &FusionArgs) -> Result<()> {
    let ring = parse_ring(&args.ring)?.ring()?;
    let a = ring.parse_label(&args.a)?;
    let b = ring.parse_label(&args.b)?;
    let f = ring.fuse(&a, &b)?;
    let total: u64 = f.iter().map(|(l, n)| n * ring.dim_of(l)).sum();
    if total != ring.dim_of(&a) * ring.dim_of(&b) {
        return Err(CliError::Numeric(format!(
            "dimension count {total} != {} x {}",
            ring.dim_of(&a),
            ring.dim_of(&b)
        )));
    }
    let mut t = Table::new(vec!["irrep", "name", "multiplicity", "dim"]);
    for (l, n) in &f {
        t.push(vec![
            l.to_string(),
            ring.format_label(l),
            n.to_string(),
            ring.dim_of(l).to_string(),
        ]);
    }
    t.write(&args.output)
}

struct WienerRun<'a> {
    args: &'a WienerArgs,
    file: MeasureFile,
}

impl ModelVisitor for WienerRun<'_> {
    type Output = Result<()>;

    fn visit<G: CompactGroup>(self, model: G) -> Result<()> {
        let args = self.args;
        let mu = self.file.to_measure(&model)?;
        if args.positivity_samples > 0 {
            mu.positivity_check(args.positivity_samples, args.seed)?;
        }
        let kind = match args.kind {
            Kind::Atom => {
                let lit = args
                    .at
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("--kind atom requires --at <element>".into()))?;
                AverageKind::Atom(
                    model
                        .parse_element(lit)
                        .map_err(|e| CliError::Validation(format!("--at: {e}")))?,
                )
            }
            Kind::Energy => AverageKind::Energy,
            Kind::Char => AverageKind::Character,
        };
        let sched = schedule(model.ring(), &args.schedule)?;
        let series = run_series(&kind, &mu, &sched)?;
        let target = if args.target {
            Some(oracle_target(&kind, &mu)?)
        } else {
            None
        };
        let mut header = vec!["step", "|F_n|_w", "value_re", "value_im"];
        if target.is_some() {
            header.extend(["target", "abs_error"]);
        }
        let mut t = Table::new(header);
        for (i, (v, w)) in series.values.iter().zip(&series.weights).enumerate() {
            let mut row = vec![(i + 1).to_string(), w.to_string(), num(v.re), num(v.im)];
            if let Some(tv) = target {
                row.push(num(tv));
                row.push(num((v - ergodual::linalg::c(tv, 0.0)).norm()));
            }
            t.push(row);
        }
        t.write(&args.output)?;
        if args.kind == Kind::Energy && sched.len() >= args.tail.max(2) {
            let verdict = continuity_test(&mu, &sched, args.tol, args.tail.max(2))?;
            let text = match verdict {
                ContinuityVerdict::Continuous => "continuous".to_string(),
                ContinuityVerdict::Atomic { energy } => {
                    format!("atomic (sum of squared atom masses ~ {energy})")
                }
                ContinuityVerdict::Inconclusive => "inconclusive".to_string(),
            };
            eprintln!("continuity verdict: {text}");
        }
        Ok(())
    }
}

pub fn wiener(args: &WienerArgs) -> Result<()> {
    let file = MeasureFile::from_json(&read(&args.measure)?)?;
    let id = file.ring_id()?;
    if let Some(r) = &args.ring {
        let want = parse_ring(r)?;
        if want != id {
            return Err(CliError::Validation(format!(
                "--ring {want} does not match the measure's group {id}"
            )));
        }
    }
    id.visit_model(WienerRun { args, file })?
}

struct PointRep(Vec<String>);

impl ModelVisitor for PointRep {
    type Output = Result<FiniteDimRep>;

    fn visit<G: CompactGroup>(self, model: G) -> Result<FiniteDimRep> {
        let points = self
            .0
            .iter()
            .enumerate()
            .map(|(i, p)| {
                model
                    .parse_element(p)
                    .map_err(|e| CliError::Validation(format!("points[{i}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(point_rep(&model, points)?)
    }
}

pub fn ergodic(args: &ErgodicArgs) -> Result<()> {
    let file = RepFile::from_json(&read(&args.spec)?)?;
    let id = file.ring_id()?;
    let rep = match args.rep {
        RepKind::Point => {
            let pts = file.points.clone().ok_or_else(|| {
                CliError::Validation("field \"points\" is required for a point rep".into())
            })?;
            id.visit_model(PointRep(pts))??
        }
        RepKind::Group => {
            let RingId::DualGroup(d) = id else {
                return Err(CliError::Validation(format!(
                    "group reps need a dualgroup:Z^d:<d> ring, got {id}"
                )));
            };
            group_rep(LatticeRing::discrete_group(d), file.generator_matrices()?)?
        }
        RepKind::Gns => {
            let RingId::Finite(name) = &id else {
                return Err(CliError::Validation(format!(
                    "GNS reps need a finite group, got {id}"
                )));
            };
            let state = file.state.as_ref().ok_or_else(|| {
                CliError::Validation("field \"state\" is required for a GNS rep".into())
            })?;
            gns_rep(&FiniteModel::by_name(name)?, state)?
        }
    };
    let sched = schedule(rep.ring(), &args.schedule)?;
    let gens = file.generating_set(rep.ring())?;
    let report = ergodic_limit_check(&rep, &sched, &gens, args.tol)?;
    let mut t = Table::new(vec![
        "step",
        "|F_n|_w",
        "distance",
        "commutant_residue",
        "cyclic_re",
        "cyclic_im",
    ]);
    for (i, s) in report.steps.iter().enumerate() {
        let (re, im) = match s.cyclic_value {
            Some(v) => (num(v.re), num(v.im)),
            None => (String::new(), String::new()),
        };
        t.push(vec![
            (i + 1).to_string(),
            s.weight.to_string(),
            num(s.distance),
            num(s.commutant_residue),
            re,
            im,
        ]);
    }
    t.write(&args.output)?;
    eprintln!(
        "invariant subspace rank {}, final distance {:.3e}, passed = {}",
        report.projection.trace().re.round(),
        report.steps.last().map(|s| s.distance).unwrap_or(0.0),
        report.passed
    );
    Ok(())
}
