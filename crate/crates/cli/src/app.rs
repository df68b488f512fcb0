use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::{Arg, ArgAction};

use crate::commands::{command, commands, CliError, Context};
use crate::emit::{emitter, emitters};

/// Default for `--tolerance` when neither the flag nor `CHARVAR_TOLERANCE` is set.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }

    fn err(stderr: String, code: i32) -> Self {
        Outcome { stdout: String::new(), stderr, code }
    }
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

pub fn build_cli() -> clap::Command {
    let formats: Vec<&'static str> = emitters().iter().map(|e| e.name()).collect();
    let mut app = clap::Command::new("charvar")
        .version(env!("CARGO_PKG_VERSION"))
        .about("SL(2,C) character varieties of Montesinos knots")
        .arg(
            Arg::new("list-subcommands")
                .long("list-subcommands")
                .action(ArgAction::SetTrue)
                .help("Print the available subcommands and exit"),
        )
        .arg(
            Arg::new("format")
                .long("format")
                .global(true)
                .value_parser(formats)
                .default_value("text"),
        )
        .arg(
            Arg::new("tolerance")
                .long("tolerance")
                .global(true)
                .env("CHARVAR_TOLERANCE")
                .value_parser(positive)
                .help("Residual tolerance for verify [default: 1e-8]"),
        );
    for c in commands() {
        app = app.subcommand(clap::Command::new(c.name()).about(c.about()).args(c.args()));
    }
    app
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match build_cli().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::err(text, 2),
            };
        }
    };
    if matches.get_flag("list-subcommands") {
        let lines: String = commands().iter().map(|c| format!("{}\t{}\n", c.name(), c.about())).collect();
        return Outcome::ok(lines);
    }
    let Some((name, sub)) = matches.subcommand() else {
        return Outcome::err(build_cli().render_usage().to_string() + "\n", 2);
    };
    let cmd = command(name).expect("registered subcommand");
    let format = sub.get_one::<String>("format").expect("has default");
    let emit = emitter(format).expect("validated by clap");
    let ctx = Context {
        tolerance: sub.get_one::<f64>("tolerance").copied().unwrap_or(DEFAULT_TOLERANCE),
    };
    log::debug!("{name} with {ctx:?}");
    match cmd.run(sub, &ctx) {
        Ok(doc) => Outcome::ok(emit.emit(&doc)),
        Err(e) => {
            let code = e.exit_code();
            let kind = match e {
                CliError::Parse(_) => "parse error",
                CliError::Domain(_) => "error",
            };
            Outcome::err(format!("charvar {name}: {kind}: {e}\n"), code)
        }
    }
}
