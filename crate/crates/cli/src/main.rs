use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use paratopo::bisimulation::{greatest_bisimulation_variant, BisimVariant};
use paratopo::harness::{judge, run_check, run_property_suite, Case, Counterexample, GenConfig, Outcome, SuiteReport};
use paratopo::io::{KripkeFile, MapFile, ModelFile};
use paratopo::kripke::{kripke_to_topo, topo_to_kripke};
use paratopo::morphisms::{are_homotopic, enumerate_homeomorphisms, MAP_SPACE_CAP};
use paratopo::{Formula, PointSet, TopoModel};
use serde::de::DeserializeOwned;

#[derive(Parser)]
#[command(
    name = "paratopo",
    version,
    about = "Modal logic with closed and open negations over finite spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the extension of FORMULA and whether it holds everywhere.
    Eval {
        model: PathBuf,
        #[arg(allow_hyphen_values = true)]
        formula: String,
    },
    /// Exit 0 when POINT satisfies FORMULA, 1 otherwise.
    Sat {
        model: PathBuf,
        point: usize,
        #[arg(allow_hyphen_values = true)]
        formula: String,
    },
    /// Points satisfying both FORMULA and its negation (paraconsistent models).
    Gluts {
        model: PathBuf,
        #[arg(allow_hyphen_values = true)]
        formula: String,
    },
    /// Points satisfying neither FORMULA nor its negation (paracomplete models).
    Gaps {
        model: PathBuf,
        #[arg(allow_hyphen_values = true)]
        formula: String,
    },
    /// Exit 0 when the space is connected; otherwise print its components.
    Connected { model: PathBuf },
    /// Print the connected components, one per line.
    Components { model: PathBuf },
    /// Find a homeomorphism between the two spaces.
    Homeo {
        model_a: PathBuf,
        model_b: PathBuf,
        /// List every homeomorphism instead of the first.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
    /// Print the greatest topo-bisimulation between the two models.
    Bisim {
        model_a: PathBuf,
        model_b: PathBuf,
        /// Use closures of points instead of minimal open neighbourhoods.
        #[arg(long)]
        closed: bool,
    },
    /// Translate a paraconsistent model into a relational one.
    ToKripke { model: PathBuf },
    /// Translate a relational model into a paraconsistent one.
    FromKripke { kmodel: PathBuf },
    /// Search for a fence of continuous self-maps joining MAP_A to MAP_B.
    Homotopic {
        model: PathBuf,
        map_a: PathBuf,
        map_b: PathBuf,
    },
    /// Run the property suite.
    Props {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        runs: usize,
        /// Point-count range, `MIN..MAX` or a single maximum.
        #[arg(long, default_value = "1..4")]
        points: String,
        #[arg(long, default_value_t = 2)]
        props: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Enumerated formulas per instance.
        #[arg(long, default_value_t = 60)]
        formulas: usize,
        /// Run a single check or probe.
        #[arg(long)]
        check: Option<String>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Re-run one case, as printed under a failing check.
    Replay { case: PathBuf },
}

/// Exit status plus what to print on standard output.
struct Done {
    ok: bool,
    out: String,
}

impl Done {
    fn yes(out: impl Into<String>) -> Self {
        Done {
            ok: true,
            out: out.into(),
        }
    }

    fn no(out: impl Into<String>) -> Self {
        Done {
            ok: false,
            out: out.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(done) => {
            print!("{}", done.out);
            if done.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_model(path: &Path) -> Result<TopoModel, String> {
    read_json::<ModelFile>(path)?
        .to_model()
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn formula(text: &str) -> Result<Formula, String> {
    text.parse::<Formula>().map_err(|e| e.to_string())
}

fn points(set: PointSet) -> String {
    set.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

fn line(s: impl AsRef<str>) -> String {
    format!("{}\n", s.as_ref())
}

fn run(command: Command) -> Result<Done, String> {
    let err = |e: paratopo::Error| e.to_string();
    match command {
        Command::Eval { model, formula: text } => {
            let m = load_model(&model)?;
            let phi = formula(&text)?;
            let ext = m.extension(&phi).map_err(err)?;
            Ok(Done::yes(format!(
                "{}\nglobal: {}\n",
                points(ext),
                ext == m.space().full()
            )))
        }
        Command::Sat {
            model,
            point,
            formula: text,
        } => {
            let m = load_model(&model)?;
            let holds = m.satisfies(point, &formula(&text)?).map_err(err)?;
            Ok(Done {
                ok: holds,
                out: line(holds.to_string()),
            })
        }
        Command::Gluts { model, formula: text } => {
            let m = load_model(&model)?;
            Ok(Done::yes(line(points(m.glut_points(&formula(&text)?).map_err(err)?))))
        }
        Command::Gaps { model, formula: text } => {
            let m = load_model(&model)?;
            Ok(Done::yes(line(points(m.gap_points(&formula(&text)?).map_err(err)?))))
        }
        Command::Connected { model } => {
            let m = load_model(&model)?;
            let components = m.space().connected_components();
            if components.len() <= 1 {
                Ok(Done::yes("connected\n"))
            } else {
                let listed: String = components.into_iter().map(|c| line(points(c))).collect();
                Ok(Done::no(format!("disconnected\n{listed}")))
            }
        }
        Command::Components { model } => {
            let m = load_model(&model)?;
            Ok(Done::yes(
                m.space()
                    .connected_components()
                    .into_iter()
                    .map(|c| line(points(c)))
                    .collect::<String>(),
            ))
        }
        Command::Homeo {
            model_a,
            model_b,
            all,
            cap,
        } => {
            let (a, b) = (load_model(&model_a)?, load_model(&model_b)?);
            let found = enumerate_homeomorphisms(a.space(), b.space(), if all { cap.max(1) } else { 1 });
            if found.is_empty() {
                return Ok(Done::no("no homeomorphism\n"));
            }
            let out = found
                .iter()
                .map(|f| line(serde_json::to_string(&MapFile::from(f)).expect("maps serialize")))
                .collect::<String>();
            Ok(Done::yes(out))
        }
        Command::Bisim {
            model_a,
            model_b,
            closed,
        } => {
            let (a, b) = (load_model(&model_a)?, load_model(&model_b)?);
            let variant = if closed {
                BisimVariant::Closed
            } else {
                BisimVariant::Open
            };
            let z = greatest_bisimulation_variant(&a, &b, variant).map_err(err)?;
            Ok(Done::yes(
                z.pairs()
                    .into_iter()
                    .map(|(x, y)| format!("{x} {y}\n"))
                    .collect::<String>(),
            ))
        }
        Command::ToKripke { model } => {
            let k = topo_to_kripke(&load_model(&model)?).map_err(err)?;
            Ok(Done::yes(line(
                serde_json::to_string(&KripkeFile::from_model(&k)).expect("serializes"),
            )))
        }
        Command::FromKripke { kmodel } => {
            let k = read_json::<KripkeFile>(&kmodel)?.to_model().map_err(err)?;
            let translated = kripke_to_topo(&k).map_err(err)?;
            if let Some(notice) = &translated.notice {
                eprintln!("note: {notice}");
            }
            Ok(Done::yes(line(paratopo::io::model_to_json(&translated.model))))
        }
        Command::Homotopic { model, map_a, map_b } => {
            let m = load_model(&model)?;
            let n = m.point_count();
            let f = read_json::<MapFile>(&map_a)?.to_map(n).map_err(err)?;
            let g = read_json::<MapFile>(&map_b)?.to_map(n).map_err(err)?;
            match are_homotopic(&f, &g, m.space(), m.space(), MAP_SPACE_CAP).map_err(err)? {
                Some(fence) => Ok(Done::yes(
                    fence
                        .maps()
                        .iter()
                        .map(|h| line(serde_json::to_string(&MapFile::from(h)).expect("serializes")))
                        .collect::<String>(),
                )),
                None => Ok(Done::no("not homotopic\n")),
            }
        }
        Command::Props {
            seed,
            runs,
            points: range,
            props,
            depth,
            formulas,
            check,
            json,
        } => {
            let (min_points, max_points) = parse_range(&range)?;
            let cfg = GenConfig {
                seed,
                min_points,
                max_points,
                props,
                depth,
                formula_cap: formulas,
                runs,
            };
            let report = match check {
                Some(name) => {
                    cfg.validate().map_err(err)?;
                    let result = run_check(&name, &cfg).map_err(err)?;
                    let (checks, probes) = if paratopo::harness::probe_names().contains(&name.as_str()) {
                        (Vec::new(), vec![result])
                    } else {
                        (vec![result], Vec::new())
                    };
                    SuiteReport {
                        config: cfg,
                        checks,
                        probes,
                    }
                }
                None => run_property_suite(&cfg).map_err(err)?,
            };
            let out = if json {
                line(report.to_json())
            } else {
                report.render_table()
            };
            Ok(Done {
                ok: report.all_passed(),
                out,
            })
        }
        Command::Replay { case } => {
            let text = fs::read_to_string(&case).map_err(|e| format!("cannot read {}: {e}", case.display()))?;
            // Either a bare case or a whole counterexample record.
            let case: Case = match serde_json::from_str::<Case>(&text) {
                Ok(c) => c,
                Err(first) => serde_json::from_str::<Counterexample>(&text)
                    .map(|c| c.case)
                    .map_err(|_| first.to_string())?,
            };
            match judge(&case).map_err(err)? {
                Outcome::Pass => Ok(Done::yes(format!("{}: pass\n", case.check))),
                Outcome::Vacuous { reason } => Ok(Done::yes(format!("{}: vacuous ({reason})\n", case.check))),
                Outcome::Fail { detail, .. } => Ok(Done::no(format!(
                    "{}: FAIL\n  {detail}\n  {}\n",
                    case.check,
                    serde_json::to_string(&case).expect("cases serialize")
                ))),
            }
        }
    }
}

fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let number = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad point range `{text}`"))
    };
    match text.split_once("..") {
        Some((lo, hi)) => Ok((number(lo)?, number(hi.trim_start_matches('='))?)),
        None => Ok((1, number(text)?)),
    }
}
