use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use golodsyz::{parse_session_over, ModuleKind};
use golodsyz_cli::{run_session, Check, Command, Options, Report};

#[derive(Parser)]
#[command(
    name = "golodsyz",
    version,
    about = "Syzygies of the residue field over local rings F_p[x..]/I"
)]
struct Cli {
    /// Print a JSON array of reports.
    #[arg(long, global = true)]
    json: bool,
    /// Abort standard basis computations past this total degree.
    #[arg(long, global = true)]
    degree_cap: Option<u32>,
    /// Seed for randomized isomorphism tests.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Override the characteristic declared in the input.
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Only run on the ideal with this name.
    #[arg(long, global = true)]
    ideal: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleArg {
    K,
    M,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Golod,
    Dual,
    Fitting,
    SocleCount,
    Thm54,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimal resolution of k or m.
    Resolve {
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "k")]
        module: ModuleArg,
        #[arg(long, visible_alias = "upto", default_value_t = 6)]
        length: usize,
    },
    /// Betti numbers of k, compared with the Golod series when it applies.
    Betti {
        files: Vec<PathBuf>,
        #[arg(long, visible_alias = "length", default_value_t = 6)]
        upto: usize,
    },
    /// Decomposition of the i-th syzygy of k (edim 2).
    Decompose {
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        syzygy: usize,
    },
    /// Run verification checks.
    Verify {
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "all")]
        check: CheckArg,
        #[arg(long, visible_alias = "length", default_value_t = 6)]
        upto: usize,
    },
    /// Ring type, socle, decomposability of m.
    Classify { files: Vec<PathBuf> },
    /// Summands of syz_i(k) in terms of k, m and N.
    Inventory {
        files: Vec<PathBuf>,
        #[arg(long, visible_alias = "length", default_value_t = 6)]
        upto: usize,
    },
    /// Parse and print the session back in canonical form.
    Print { files: Vec<PathBuf> },
}

fn split(cmd: Cmd) -> (Vec<PathBuf>, Command) {
    match cmd {
        Cmd::Resolve {
            files,
            module,
            length,
        } => {
            let module = match module {
                ModuleArg::K => ModuleKind::K,
                ModuleArg::M => ModuleKind::M,
            };
            (files, Command::Resolve { module, length })
        }
        Cmd::Betti { files, upto } => (files, Command::Betti { upto }),
        Cmd::Decompose { files, syzygy } => (files, Command::Decompose { syzygy }),
        Cmd::Verify { files, check, upto } => {
            let check = match check {
                CheckArg::Golod => Check::Golod,
                CheckArg::Dual => Check::Dual,
                CheckArg::Fitting => Check::Fitting,
                CheckArg::SocleCount => Check::SocleCount,
                CheckArg::Thm54 => Check::Thm54,
                CheckArg::All => Check::All,
            };
            (files, Command::Verify { check, upto })
        }
        Cmd::Classify { files } => (files, Command::Classify),
        Cmd::Inventory { files, upto } => (files, Command::Inventory { upto }),
        Cmd::Print { files } => (files, Command::Print),
    }
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        degree_cap: cli.degree_cap,
        seed: cli.seed,
    };
    let (mut files, cmd) = split(cli.cmd);
    if files.is_empty() {
        files.push(PathBuf::from("-"));
    }
    let mut reports: Vec<Report> = Vec::new();
    for path in &files {
        let text = match read_input(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                return ExitCode::from(2);
            }
        };
        let spec = match parse_session_over(&text, cli.p) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                return ExitCode::from(2);
            }
        };
        match run_session(&spec, cli.ideal.as_deref(), &cmd, &opts) {
            Ok(r) => reports.extend(r),
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
    }
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&reports).expect("serializable")
        );
    } else if cmd == Command::Print {
        for r in &reports {
            for c in &r.results {
                println!("{}", c.witness.as_deref().unwrap_or(""));
            }
        }
    } else {
        let text: Vec<String> = reports.iter().map(|r| r.render_text()).collect();
        print!("{}", text.join("\n"));
    }
    if reports.iter().all(|r| r.ok()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
