mod args;
mod inputs;
mod verbs;

use std::process::ExitCode;

use clap::Parser;
use emcat::comprehensive::CatInstance;
use emcat::instances::{FinSetInstance, GphInstance, PosInstance, PosSystem};
use emcat::Error;

use args::{Cli, Instance, Out, Verb};
use verbs::{run, Report};

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SizeBudgetExceeded { .. } => 3,
        Error::InFile { inner, .. } => exit_code(inner),
        _ => 2,
    }
}

fn dispatch(cli: &Cli) -> Result<Report, Error> {
    match cli.instance {
        Instance::Cat => run(&CatInstance::new(), cli),
        Instance::Pos => run(&PosInstance::new(PosSystem::LowerSet), cli),
        Instance::PosComp => run(&PosInstance::new(PosSystem::Comprehensive), cli),
        Instance::Gph => run(&GphInstance::new(), cli),
        Instance::Finset => run(&FinSetInstance::new(), cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let out = cli.out.unwrap_or(if cli.verb == Verb::Suite { Out::Json } else { Out::Text });
    match out {
        Out::Text => print!("{}", report.text),
        Out::Json => println!("{}", report.json),
        Out::Dot => match &report.dot {
            Some(d) => print!("{d}"),
            None => {
                eprintln!("error: `{:?}` has no DOT drawing", cli.verb);
                return ExitCode::from(2);
            }
        },
    }
    ExitCode::from(report.code)
}
