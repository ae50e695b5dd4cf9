use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kbg::{compute, exit, parse_spec, render, selfcheck, CliError, Fault, SelfcheckOptions};
use kbg_core::assemble::GroupSpec;
use kbg_core::chartab::character_table;

#[derive(Parser)]
#[command(name = "kbg", version, about = "Rational K-theory of classifying spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Computes K^0 and K^1 of BG tensored with Q for a spec file.
    Compute { file: PathBuf },
    /// Runs the verifier corpus. Exit 0 pass, 2 fail, 3 inconclusive.
    Selfcheck {
        #[arg(long, default_value_t = 24)]
        max_order: u64,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Prints the exact character table of a finite_perm spec.
    Chartab { file: PathBuf },
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn chartab(path: &Path) -> Result<String, CliError> {
    let file = parse_spec(&read(path)?)?;
    let GroupSpec::FinitePerm(g) = file.spec else {
        return Err(CliError::parse("/spec/type", "chartab needs a finite_perm spec".into()));
    };
    let t = character_table(&g)?;
    let mut out = String::new();
    let header: Vec<String> = t
        .classes()
        .iter()
        .map(|c| format!("{}:{}", c.element_order, c.size))
        .collect();
    out.push_str(&format!(
        "order {}, classes (element order:size) {}\n",
        t.order(),
        header.join(" ")
    ));
    for (i, row) in t.rows().iter().enumerate() {
        let vals: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("χ{i}: {}\n", vals.join(", ")));
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Compute { file } => match read(&file).and_then(|b| parse_spec(&b)).and_then(|f| compute(&f)) {
            Ok(report) => {
                print!("{}", render(&report));
                exit::PASS
            }
            Err(e) => {
                eprintln!("{}", e.to_json());
                exit::ERROR
            }
        },
        Command::Selfcheck {
            max_order,
            depth,
            seed,
            inject_fault,
        } => {
            let opts = SelfcheckOptions {
                max_order,
                depth,
                seed,
                fault: inject_fault.then_some(Fault::StructureConstant),
                ..SelfcheckOptions::default()
            };
            let report = selfcheck(&opts);
            print!("{}", report.render());
            report.exit_code()
        }
        Command::Chartab { file } => match chartab(&file) {
            Ok(s) => {
                print!("{s}");
                exit::PASS
            }
            Err(e) => {
                eprintln!("{}", e.to_json());
                exit::ERROR
            }
        },
    };
    ExitCode::from(code as u8)
}
