use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use cyclo_core::automata::{semigroup_trick, Dfao, DfaoStream};
use cyclo_core::cyclic::{ComplexityQuery, PrefixLength};
use cyclo_core::linrep::{learn_from_oracle, rat, LearnConfig, LinearRepresentation, Rational};
use cyclo_core::verify::{run_suite, BruteForce, Certified, Evaluator, SuiteConfig, Target};
use cyclo_core::words::{PowersOfTwo, SymbolStream, ThueMorse};
use num_traits::{ToPrimitive, Zero};

use crate::args::{
    Cli, Command, ComputeArgs, DfaoArgs, EvaluatorChoice, LearnArgs, MinimizeArgs, Sequence,
    VerifyArgs,
};

/// Process outcome when no error occurred.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Outcome {
    Success = 0,
    ClaimsFailed = 1,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let jobs = cli.jobs as usize;
    if let Some(dir) = &cli.seed_tables {
        seed_tables(dir, jobs)?;
    }
    match &cli.command {
        None if cli.seed_tables.is_some() => Ok(Outcome::Success),
        None => bail!("no subcommand given; see --help"),
        Some(Command::Compute(a)) => compute(a),
        Some(Command::Learn(a)) => learn(a, jobs),
        Some(Command::Minimize(a)) => minimize(a),
        Some(Command::Dfao(a)) => dfao(a),
        Some(Command::Verify(a)) => verify(a, jobs),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn read_rep(path: &Path) -> Result<LinearRepresentation> {
    LinearRepresentation::from_json(&read(path)?)
        .with_context(|| format!("parsing representation {}", path.display()))
}

fn read_dfao(path: &Path) -> Result<Dfao> {
    Dfao::from_json(&read(path)?).with_context(|| format!("parsing automaton {}", path.display()))
}

/// Writes `contents` to `out`, or prints it when no file is given.
fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(p) => write(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn decimal(q: &Rational) -> String {
    format!("{:.6}", q.to_f64().unwrap_or(f64::NAN))
}

/// Cyclic (and optionally subword) complexity of one word.
enum Source {
    Stream(Box<dyn SymbolStream>, usize),
    Rep(LinearRepresentation),
}

impl Source {
    fn c(&self, n: u64) -> Result<Rational> {
        match self {
            Source::Stream(s, cap) => Ok(rat(query(n, *cap).cyclic(s.as_ref())? as i64)),
            Source::Rep(r) => Ok(r.evaluate(n)),
        }
    }

    fn rho(&self, n: u64) -> Result<u64> {
        match self {
            Source::Stream(s, cap) => Ok(query(n, *cap).subword(s.as_ref())?),
            Source::Rep(_) => bail!("--rho needs factor counting; use --evaluator brute"),
        }
    }
}

fn query(n: u64, cap: usize) -> ComplexityQuery {
    ComplexityQuery::new(n as usize).with_prefix(PrefixLength::Auto { cap })
}

fn stream_for(seq: &Sequence) -> Result<Box<dyn SymbolStream>> {
    Ok(match seq {
        Sequence::ThueMorse => Box::new(ThueMorse),
        Sequence::PowersOfTwo => Box::new(PowersOfTwo),
        Sequence::Dfao(path) => Box::new(DfaoStream::new(read_dfao(path)?)?),
    })
}

fn compute(a: &ComputeArgs) -> Result<Outcome> {
    let source = match &a.evaluator {
        EvaluatorChoice::Brute => Source::Stream(stream_for(&a.seq)?, a.prefix_cap),
        EvaluatorChoice::Rep(path) => {
            if a.seq != Sequence::ThueMorse {
                bail!("a representation evaluator is only available for --seq tm");
            }
            Source::Rep(read_rep(path)?)
        }
        EvaluatorChoice::Learned => bail!("compute accepts --evaluator brute or rep:<file>"),
    };
    let mut out = String::new();
    if a.csv {
        out.push_str("n,c,3c-4n,2n-4-c");
        if a.rho {
            out.push_str(",rho");
        }
        out.push('\n');
    }
    for n in a.n.start..=a.n.end {
        let c = source.c(n)?;
        let rho = if a.rho { Some(source.rho(n)?) } else { None };
        let nq = rat(n as i64);
        if a.csv {
            let lower = rat(3) * &c - rat(4) * &nq;
            let upper = rat(2) * &nq - rat(4) - &c;
            let _ = write!(out, "{n},{c},{lower},{upper}");
            if let Some(r) = rho {
                let _ = write!(out, ",{r}");
            }
            out.push('\n');
        } else {
            let _ = write!(out, "c({n}) = {c}");
            if let Some(r) = rho {
                let _ = write!(out, "  rho({n}) = {r}");
            }
            if a.ratio {
                if nq.is_zero() {
                    out.push_str("  c/n = -");
                } else {
                    let q = &c / &nq;
                    let _ = write!(out, "  c/n = {q} = {}", decimal(&q));
                }
            }
            out.push('\n');
        }
    }
    print!("{out}");
    Ok(Outcome::Success)
}

/// Factor counts of `p`, memoized.
struct PowersOfTwoCounts(HashMap<u64, u64>);

impl PowersOfTwoCounts {
    fn c(&mut self, n: u64) -> cyclo_core::Result<u64> {
        if let Some(&x) = self.0.get(&n) {
            return Ok(x);
        }
        let x = ComplexityQuery::new(n as usize).cyclic(&PowersOfTwo)?;
        self.0.insert(n, x);
        Ok(x)
    }
}

fn learn(a: &LearnArgs, jobs: usize) -> Result<Outcome> {
    let target: Target = match &a.target {
        Some(t) => t.parse().with_context(|| format!("parsing target {t:?}"))?,
        None => Target::identity(),
    };
    let config = LearnConfig {
        rank_cap: a.rank_cap,
        training_depth: a.depth,
    };
    let learned = match (&a.seq, &a.evaluator) {
        (Sequence::ThueMorse, EvaluatorChoice::Brute) => {
            let brute = BruteForce::new(jobs);
            prefill(&brute, &target, a.depth, jobs)?;
            learn_from_oracle(|n| target.eval(n, |m| Ok(rat(brute.c(m)? as i64))), config)?
        }
        (Sequence::ThueMorse, EvaluatorChoice::Rep(path)) => {
            let c = read_rep(path)?;
            learn_from_oracle(|n| target.eval(n, |m| Ok(c.evaluate(m))), config)?
        }
        (Sequence::PowersOfTwo, EvaluatorChoice::Brute) => {
            let mut counts = PowersOfTwoCounts(HashMap::new());
            learn_from_oracle(|n| target.eval(n, |m| Ok(rat(counts.c(m)? as i64))), config)?
        }
        (Sequence::PowersOfTwo, EvaluatorChoice::Rep(_)) => {
            bail!("a representation evaluator is only available for --seq tm")
        }
        (_, EvaluatorChoice::Learned) => bail!("learn accepts --evaluator brute or rep:<file>"),
        (Sequence::Dfao(_), _) => bail!("learn accepts --seq tm or p"),
    };
    eprintln!(
        "learned {target} with rank {} from {} oracle values",
        learned.rank(),
        learned.oracle_calls
    );
    emit(a.out.as_deref(), &learned.rep.to_json())?;
    Ok(Outcome::Success)
}

/// Counts, in parallel, every argument the learner can ask the oracle for.
fn prefill(brute: &BruteForce, target: &Target, depth: usize, jobs: usize) -> Result<()> {
    if jobs <= 1 || depth >= 32 {
        return Ok(());
    }
    let mut args: Vec<u64> = (0..1u64 << depth)
        .flat_map(|n| target.terms().iter().map(move |t| t.a * n + t.b))
        .collect();
    args.sort_unstable();
    args.dedup();
    let args = &args;
    std::thread::scope(|s| {
        let workers: Vec<_> = (0..jobs)
            .map(|w| {
                s.spawn(move || {
                    args.iter()
                        .skip(w)
                        .step_by(jobs)
                        .try_for_each(|&m| brute.c(m).map(drop))
                })
            })
            .collect();
        workers
            .into_iter()
            .try_for_each(|h| h.join().expect("worker panicked"))
    })?;
    Ok(())
}

fn minimize(a: &MinimizeArgs) -> Result<Outcome> {
    let rep = read_rep(&a.rep)?;
    let min = rep.minimize();
    eprintln!("rank {} -> {}", rep.rank(), min.rank());
    emit(a.out.as_deref(), &min.to_json())?;
    Ok(Outcome::Success)
}

fn outputs_line(d: &Dfao) -> String {
    let outs: Vec<String> = d
        .reachable_outputs()
        .iter()
        .map(|q| q.to_string())
        .collect();
    format!("{{{}}}", outs.join(", "))
}

fn dfao(a: &DfaoArgs) -> Result<Outcome> {
    let rep = read_rep(&a.rep)?;
    let raw = semigroup_trick(&rep, a.state_cap)?;
    let min = raw.minimize();
    println!(
        "{} states ({} before minimization), outputs {}",
        min.state_count(),
        raw.state_count(),
        outputs_line(&min)
    );
    if let Some(p) = &a.out_json {
        write(p, &min.to_json())?;
    }
    if let Some(p) = &a.out_dot {
        write(p, &min.to_dot(&a.name))?;
    }
    if a.out_json.is_none() && a.out_dot.is_none() {
        print!("{}", min.to_json());
    }
    Ok(Outcome::Success)
}

fn verify(a: &VerifyArgs, jobs: usize) -> Result<Outcome> {
    let brute = BruteForce::new(jobs);
    let mut cert = match &a.evaluator {
        EvaluatorChoice::Rep(path) => {
            Certified::from_rep(read_rep(path)?, &brute, a.certify_through)?
        }
        EvaluatorChoice::Brute | EvaluatorChoice::Learned => {
            Certified::learn(&brute, LearnConfig::default(), a.certify_through)?
        }
    };
    if let Some(path) = &a.a0_dfao {
        cert.a0.dfao = read_dfao(path)?;
    }
    let ev = match &a.evaluator {
        EvaluatorChoice::Brute => Evaluator::Brute(brute),
        _ => cert.evaluator(),
    };
    let cfg = SuiteConfig {
        n_max: a.n_max,
        k_max: a.k_max,
        param_max: a.param_max,
        automata_max: a.automata_max,
        powers2_exp: a.powers2_exp,
    };
    let report = run_suite(a.suite, &ev, &cert, &cfg)?;
    let summary = report.summary();
    print!("{summary}");
    if let Some(p) = &a.report_json {
        write(p, &report.to_json())?;
    }
    if let Some(p) = &a.report_text {
        write(p, &summary)?;
    }
    Ok(if report.passed() {
        Outcome::Success
    } else {
        Outcome::ClaimsFailed
    })
}

/// Golden files: the first twenty values of `c`, the representation of `a0`
/// and its automaton.
fn seed_tables(dir: &Path, jobs: usize) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let brute = BruteForce::new(jobs);
    let mut csv = String::from("n,c\n");
    for (n, c) in brute.table(19)?.iter().enumerate() {
        let _ = writeln!(csv, "{n},{c}");
    }
    write(&dir.join("table1.csv"), &csv)?;

    let cert = Certified::learn(&brute, LearnConfig::default(), 300)?;
    write(&dir.join("c_rep.json"), &cert.c.to_json())?;
    let a0 = &cert.a0.rep;
    write(&dir.join("a0_rep.json"), &a0.to_json())?;
    let d = &cert.a0.dfao;
    write(&dir.join("a0_dfao.json"), &d.to_json())?;
    write(&dir.join("a0_dfao.dot"), &d.to_dot("a0"))?;
    eprintln!(
        "seeded {}: c rank {}, a0 rank {}, a0 automaton {} states, outputs {}",
        dir.display(),
        cert.c.rank(),
        a0.rank(),
        d.state_count(),
        outputs_line(d)
    );
    Ok(())
}
