use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args as ClapArgs, Parser, Subcommand};

use syzygia::filtration::{monomial_filtration, truncation_filtration, FiltrationCertificate};
use syzygia::module::Presentation;
use syzygia::{Error, MonomialOrder, PolyRing, PrimeField, QuotientRing, Result};
use syzygia_cli::commands::{self, Flags, Outcome};
use syzygia_cli::dsl::{load_certificate, parse_session, Session};
use syzygia_cli::exit_code;

/// Minimal free resolutions, rates and Koszul filtrations over F_p.
#[derive(Parser, Debug)]
#[command(name = "syzygia", version)]
struct Cli {
    /// homological window: compute β_i for i ≤ HMAX
    #[arg(long, global = true, default_value_t = 5)]
    hmax: usize,
    /// internal degree window
    #[arg(long, global = true, default_value_t = 20)]
    dmax: i32,
    /// emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// seed for random test families
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// abort with exit code 3 once a Gröbner basis or filtration search grows past this size
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

/// Where a ring comes from: inline flags or a named object in a script.
#[derive(ClapArgs, Debug, Clone)]
struct RingInput {
    /// script file declaring the objects
    #[arg(long)]
    script: Option<PathBuf>,
    /// ring name in the script
    #[arg(long)]
    ring: Option<String>,
    /// comma-separated variable names
    #[arg(long)]
    vars: Option<String>,
    /// comma-separated homogeneous generators of the defining ideal
    #[arg(long, default_value = "")]
    ideal: String,
    /// characteristic
    #[arg(long, default_value_t = 32003)]
    p: u32,
    /// degrevlex, deglex or lex
    #[arg(long, default_value = "degrevlex")]
    order: String,
}

#[derive(ClapArgs, Debug, Clone)]
struct ModuleInput {
    #[command(flatten)]
    ring: RingInput,
    /// module name in the script, or `residue` / `ring` for inline rings
    #[arg(long)]
    module: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded Betti table
    Betti(ModuleInput),
    /// Hilbert function and series
    Hilbert {
        #[command(flatten)]
        input: ModuleInput,
        #[arg(long, default_value_t = 10)]
        top: i32,
    },
    /// Castelnuovo-Mumford regularity
    Reg(ModuleInput),
    /// rate of a module
    Rate(ModuleInput),
    /// Backelin rate of a ring
    BackelinRate(RingInput),
    /// lex-segment ideal with the Hilbert function of a ring or of an explicit sequence
    Lex {
        #[command(flatten)]
        input: RingInput,
        /// explicit Hilbert function, comma-separated
        #[arg(long)]
        hilbert: Option<String>,
        /// number of variables for --hilbert
        #[arg(long)]
        n: Option<usize>,
        /// --hilbert is a prefix of an infinite function rather than a full Artinian one
        #[arg(long)]
        prefix: bool,
    },
    /// check the stretched-algebra theorem for (h, s)
    Stretched {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        s: u32,
    },
    /// verify a filtration certificate
    Checkfilt {
        #[arg(long)]
        file: PathBuf,
    },
    /// write a filtration certificate
    ExportFiltration {
        /// truncation ring F_p[x_1..x_h]/m^t
        #[arg(long, requires = "t")]
        h: Option<usize>,
        #[arg(long, requires = "h")]
        t: Option<u32>,
        /// monomial filtration of an inline or scripted ring, generated in degrees ≤ d
        #[command(flatten)]
        input: RingInput,
        #[arg(long, default_value_t = 2)]
        d: u32,
        /// output file; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// lift a filtration of R/(l) to R
    Lift {
        #[command(flatten)]
        input: RingInput,
        /// the linear form l
        #[arg(long)]
        l: String,
        /// certificate for R/(l); a monomial filtration is built when omitted
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        d: u32,
        /// write the lifted certificate here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Künneth and rate bounds for M ⊗ N, both named in a script
    Tensor {
        #[arg(long)]
        script: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// change-of-rings inequalities for R -> S and an S-module M, named in a script
    ChangeOfRings {
        #[arg(long)]
        script: PathBuf,
        #[arg(long)]
        ring: String,
        #[arg(long)]
        module: String,
    },
    /// compare the Gröbner engine with the linear-algebra oracle
    OracleDiff {
        #[command(flatten)]
        input: ModuleInput,
        /// run a seeded random suite of this many modules instead
        #[arg(long)]
        cases: Option<usize>,
    },
    /// run every command of a script
    Run { file: PathBuf },
}

fn load_session(path: &Path) -> Result<Session> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_session(&text, base)
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .collect()
}

fn build_ring(input: &RingInput) -> Result<Arc<QuotientRing>> {
    if let Some(path) = &input.script {
        let session = load_session(path)?;
        let name = input
            .ring
            .as_deref()
            .ok_or_else(|| Error::InvalidInput("--script needs --ring NAME".into()))?;
        return session
            .rings
            .get(name)
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("no ring '{name}' in {}", path.display())));
    }
    let vars = input
        .vars
        .as_deref()
        .ok_or_else(|| Error::InvalidInput("give --vars or --script".into()))?;
    let order = MonomialOrder::parse(&input.order)
        .ok_or_else(|| Error::InvalidInput(format!("unknown monomial order '{}'", input.order)))?;
    let names = split_list(vars).into_iter().map(String::from).collect();
    let s = PolyRing::new(PrimeField::new(input.p)?, names, order)?;
    let gens = split_list(&input.ideal)
        .into_iter()
        .map(|g| s.parse_homogeneous(g))
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(QuotientRing::new(s, &gens)?))
}

fn build_module(input: &ModuleInput) -> Result<Presentation> {
    if let Some(path) = &input.ring.script {
        if let Some(name) = &input.module {
            let session = load_session(path)?;
            return session.modules.get(name).cloned().ok_or_else(|| {
                Error::InvalidInput(format!("no module '{name}' in {}", path.display()))
            });
        }
    }
    let r = build_ring(&input.ring)?;
    match input.module.as_deref().unwrap_or("residue") {
        "residue" => Ok(Presentation::residue_field(r)),
        "ring" => Ok(Presentation::free(r, vec![0])),
        other => Err(Error::InvalidInput(format!(
            "--module must be 'residue' or 'ring' without --script, got '{other}'"
        ))),
    }
}

fn write_certificate(cert: &FiltrationCertificate, out: Option<&Path>) -> Result<String> {
    let text =
        serde_json::to_string_pretty(&cert.to_json()).expect("certificates serialize") + "\n";
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| {
                Error::InvalidInput(format!("cannot write {}: {e}", path.display()))
            })?;
            Ok(format!(
                "wrote {} ideals to {}\n",
                cert.ideals.len(),
                path.display()
            ))
        }
        None => Ok(text),
    }
}

fn run(cli: &Cli) -> Result<Vec<Outcome>> {
    let flags = Flags {
        hmax: cli.hmax,
        dmax: Some(cli.dmax),
        seed: cli.seed,
        budget: cli.budget,
    };
    let one = |o: Result<Outcome>| o.map(|o| vec![o]);
    match &cli.command {
        Command::Betti(m) => one(commands::betti_table(&build_module(m)?, &flags)),
        Command::Hilbert { input, top } => one(commands::hilbert(&build_module(input)?, *top)),
        Command::Reg(m) => one(commands::reg(&build_module(m)?, &flags)),
        Command::Rate(m) => one(commands::module_rate(&build_module(m)?, &flags)),
        Command::BackelinRate(r) => one(commands::ring_backelin_rate(&build_ring(r)?, &flags)),
        Command::Lex {
            input,
            hilbert,
            n,
            prefix,
        } => match hilbert {
            Some(h) => {
                let values = split_list(h)
                    .into_iter()
                    .map(|v| {
                        v.parse::<u64>().map_err(|_| {
                            Error::InvalidInput(format!("bad Hilbert function value '{v}'"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let n = n.ok_or_else(|| Error::InvalidInput("--hilbert needs --n".into()))?;
                one(commands::lex_of_function(values, n, !prefix))
            }
            None => one(commands::lex_of_ring(&*build_ring(input)?)),
        },
        Command::Stretched { h, s } => one(commands::stretched(*h, *s, &flags)),
        Command::Checkfilt { file } => one(commands::checkfilt(&load_certificate(file)?)),
        Command::ExportFiltration {
            h,
            t,
            input,
            d,
            out,
        } => {
            let cert = match (h, t) {
                (Some(h), Some(t)) => truncation_filtration(*h, *t)?,
                _ => monomial_filtration(build_ring(input)?, *d, flags.filtration_budget())?,
            };
            let text = write_certificate(&cert, out.as_deref())?;
            let result = serde_json::to_value(cert.to_json()).expect("certificates serialize");
            Ok(vec![Outcome {
                command: "export-filtration".into(),
                text,
                result,
                passed: true,
            }])
        }
        Command::Lift {
            input,
            l,
            file,
            d,
            out,
        } => {
            let r = build_ring(input)?;
            let l = r.ring().parse_homogeneous(l)?;
            let base = file.as_deref().map(load_certificate).transpose()?;
            let (mut o, cert) = commands::lift(&r, &l, base.as_ref(), *d, &flags)?;
            if let Some(path) = out {
                o.text += &write_certificate(&cert, Some(path))?;
            }
            Ok(vec![o])
        }
        Command::Tensor {
            script,
            left,
            right,
        } => {
            let s = load_session(script)?;
            let get = |n: &str| {
                s.modules.get(n).ok_or_else(|| {
                    Error::InvalidInput(format!("no module '{n}' in {}", script.display()))
                })
            };
            one(commands::tensor(get(left)?, get(right)?, &flags))
        }
        Command::ChangeOfRings {
            script,
            ring,
            module,
        } => {
            let s = load_session(script)?;
            let r = s.rings.get(ring).ok_or_else(|| {
                Error::InvalidInput(format!("no ring '{ring}' in {}", script.display()))
            })?;
            let m = s.modules.get(module).ok_or_else(|| {
                Error::InvalidInput(format!("no module '{module}' in {}", script.display()))
            })?;
            one(commands::change_of_rings(r, m, &flags))
        }
        Command::OracleDiff { input, cases } => match cases {
            Some(n) => one(commands::oracle_suite(*n, &flags)),
            None => one(commands::oracle_diff(&build_module(input)?, &flags)),
        },
        Command::Run { file } => commands::run_session(&load_session(file)?, &flags),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcomes) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe on stdout is not an error of the computation
            let _ = if cli.json {
                let docs: Vec<_> = outcomes.iter().map(Outcome::envelope).collect();
                let value = if docs.len() == 1 {
                    docs.into_iter().next().unwrap()
                } else {
                    serde_json::Value::Array(docs)
                };
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&value).expect("reports serialize")
                )
            } else {
                outcomes.iter().try_for_each(|o| write!(out, "{}", o.text))
            };
            if outcomes.iter().all(|o| o.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
