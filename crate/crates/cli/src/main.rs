mod checks;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gdual_core::orbits::GraphFormat;
use gdual_core::sff::DEFAULT_Q_TRIES;

use checks::Data;
use report::Recorder;

#[derive(Parser)]
#[command(name = "gdual", version, about = "Exact checks for duals of Grassmannians and related varieties")]
struct Cli {
    /// Pretty text instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    /// Directory with orbits.json, duality.json, hasse.json, table1.json overriding the built-in data.
    #[arg(long, global = true, value_name = "PATH")]
    data_dir: Option<PathBuf>,
    /// Seed for randomized searches and cross-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Record wall-clock time per check (makes output non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Second osculating space at P meets the tangent space at Q trivially iff k != 3.
    Prop51 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Projective dimension of the secant variety of G(k, n) via Terracini.
    SecantDim {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Osculating/tangent intersection at a coordinate pair and a random pair.
    OscIntersect {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Second fundamental form witnesses.
    Sff {
        #[command(subcommand)]
        command: SffCommand,
    },
    /// Root-system normality criterion.
    Lie {
        #[command(subcommand)]
        command: LieCommand,
    },
    /// Trivector orbit catalogs.
    Orbits {
        #[command(subcommand)]
        command: OrbitsCommand,
    },
    /// Veronese osculating/tangent intersection test.
    Veronese {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// Segre osculating/tangent intersection test for projective-space factors.
    SegreCheck {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
    },
    /// Run every check at its reference parameters.
    Report {
        #[arg(long, required = true)]
        all: bool,
    },
}

#[derive(Subcommand)]
enum SffCommand {
    /// Full-rank quadric certificate for G(3, n).
    Certify {
        #[arg(long)]
        n: usize,
    },
    /// Witness search for Segre block formats.
    Segre {
        #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
        format: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_Q_TRIES)]
        max_tries: u64,
    },
}

#[derive(Subcommand)]
enum LieCommand {
    /// Solutions for one type, e.g. `--type F4` or `--type A --rank 5`.
    Diamond {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Compare all types against the stored table.
    Table1 {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
}

#[derive(Subcommand)]
enum OrbitsCommand {
    Verify {
        #[arg(long)]
        n: usize,
    },
    DualCheck,
    Hasse {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_format)]
        format: GraphFormat,
        /// Print only the graph document.
        #[arg(long)]
        raw: bool,
    },
}

fn parse_format(s: &str) -> Result<GraphFormat, String> {
    s.parse().map_err(|e: gdual_core::Error| e.to_string())
}

fn run(cli: &Cli, rec: &mut Recorder) -> gdual_core::Result<()> {
    let seed = cli.seed;
    let data = || Data::load(cli.data_dir.as_deref());
    match &cli.command {
        Command::Prop51 { k, n } => checks::prop51(rec, *k, *n),
        Command::SecantDim { k, n } => checks::secant_dim(rec, *k, *n),
        Command::OscIntersect { k, n } => checks::osc_intersect(rec, *k, *n, seed),
        Command::Sff { command: SffCommand::Certify { n } } => checks::sff_certify(rec, *n, seed),
        Command::Sff { command: SffCommand::Segre { format, max_tries } } => match format.as_slice() {
            &[a, b, c] => checks::sff_segre(rec, [a, b, c], seed, *max_tries),
            _ => Err(gdual_core::Error::Unsupported(format!("--format needs three sizes, got {format:?}"))),
        },
        Command::Lie { command: LieCommand::Diamond { ty, rank } } => checks::lie_diamond(rec, &data()?, ty, *rank),
        Command::Lie { command: LieCommand::Table1 { max_rank } } => checks::lie_table1(rec, &data()?, *max_rank),
        Command::Orbits { command: OrbitsCommand::Verify { n } } => checks::orbits_verify(rec, &data()?, *n),
        Command::Orbits { command: OrbitsCommand::DualCheck } => checks::orbits_dual_check(rec, &data()?),
        Command::Orbits { command: OrbitsCommand::Hasse { n, format, .. } } => {
            checks::orbits_hasse(rec, &data()?, *n, *format)
        }
        Command::Veronese { d, n } => checks::veronese(rec, *d, *n, seed),
        Command::SegreCheck { dims } => checks::segre(rec, dims, seed),
        Command::Report { .. } => checks::report_all(rec, &data()?, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let mut rec = Recorder::new(cli.timings);
    if let Err(e) = run(&cli, &mut rec) {
        eprintln!("error: {e}");
        eprintln!("run `gdual --help` for usage");
        return ExitCode::from(2);
    }
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let report = rec.finish(argv, cli.seed);
    if let Command::Orbits { command: OrbitsCommand::Hasse { raw: true, .. } } = cli.command {
        for a in &report.artifacts {
            print!("{}", a.content);
        }
    } else if cli.human {
        print!("{}", report.human());
    } else {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    }
    ExitCode::from(report.exit_code())
}
