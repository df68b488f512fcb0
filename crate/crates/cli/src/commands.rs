//! Subcommands. Each one declares its own arguments and builds an
//! `OutputDocument`; formatting is left to the emitters.

use std::collections::BTreeMap;
use std::str::FromStr;

use charvar::oracle::{sample_point, verify_rep_montesinos, Assignment, NewtonOptions, OracleError};
use charvar::reducible_engine::{riley_even, riley_odd, theta_pair, ReducibleError};
use charvar::ring::{RingError, Var};
use charvar::tangle::{MontesinosKnot, Parity, RationalTangle, TangleError};
use charvar::trace_engine::trace_triple;
use charvar::variety_builder::{
    build_x1, build_x2, build_xprime, build_xprime_all, genericity_check, Component, SignVector, VarietyError,
};
use clap::{Arg, ArgMatches};
use num_complex::Complex64;

use crate::document::{OutputDocument, Payload, Search, Verification};
use crate::parse::{parse_knot, parse_tangle, ParseError, SpecError};

/// Random starts tried by `verify` when no point file is given.
const SEARCH_STARTS: usize = 20;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Parse(_) => 2,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Parse(p) => p.into(),
            SpecError::Tangle(t) => t.into(),
        }
    }
}

macro_rules! domain_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        }
    )*};
}

domain_errors!(TangleError, RingError, ReducibleError, VarietyError, OracleError, std::io::Error);

/// Settings shared by all subcommands.
#[derive(Clone, Copy, Debug)]
pub struct Context {
    pub tolerance: f64,
}

pub trait Command: Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    /// Arguments beyond the global `--format` and `--tolerance`.
    fn args(&self) -> Vec<Arg>;
    fn run(&self, m: &ArgMatches, ctx: &Context) -> Result<OutputDocument, CliError>;
}

pub struct TangleTraces;
pub struct Theta;
pub struct Riley;
pub struct X1;
pub struct X2;
pub struct XPrime;
pub struct Genericity;
pub struct Verify;

static COMMANDS: [&dyn Command; 8] = [&TangleTraces, &Theta, &Riley, &X1, &X2, &XPrime, &Genericity, &Verify];

pub fn commands() -> &'static [&'static dyn Command] {
    &COMMANDS
}

pub fn command(name: &str) -> Option<&'static dyn Command> {
    COMMANDS.iter().copied().find(|c| c.name() == name)
}

fn tangle_arg() -> Arg {
    Arg::new("tangle")
        .required(true)
        .allow_hyphen_values(true)
        .value_name("P/Q")
        .help("Rational tangle, e.g. 7/3")
}

fn knot_arg() -> Arg {
    Arg::new("knot")
        .required(true)
        .allow_hyphen_values(true)
        .value_name("KNOT")
        .help("Montesinos knot, e.g. \"M(3,5/2,7/3)\"")
}

fn epsilon_arg() -> Arg {
    Arg::new("epsilon")
        .long("epsilon")
        .allow_hyphen_values(true)
        .value_name("SIGNS")
        .help("Sign vector for X', e.g. +,-,0")
}

fn tangle(m: &ArgMatches) -> Result<RationalTangle, CliError> {
    Ok(parse_tangle(m.get_one::<String>("tangle").expect("required"))?)
}

fn knot(m: &ArgMatches) -> Result<MontesinosKnot, CliError> {
    Ok(parse_knot(m.get_one::<String>("knot").expect("required"))?)
}

fn epsilon(m: &ArgMatches) -> Result<Option<SignVector>, CliError> {
    m.get_one::<String>("epsilon")
        .map(|s| SignVector::from_str(s).map_err(|e| CliError::Parse(e.to_string())))
        .transpose()
}

fn doc(command: &dyn Command, input: impl ToString, result: Payload) -> OutputDocument {
    OutputDocument {
        command: command.name().into(),
        input: input.to_string(),
        result,
        notes: vec![],
    }
}

impl Command for TangleTraces {
    fn name(&self) -> &'static str {
        "tangle-traces"
    }
    fn about(&self) -> &'static str {
        "Boundary trace polynomials z, zdot, zgrave of a rational tangle"
    }
    fn args(&self) -> Vec<Arg> {
        vec![tangle_arg()]
    }
    fn run(&self, m: &ArgMatches, _: &Context) -> Result<OutputDocument, CliError> {
        let t = tangle(m)?;
        Ok(doc(self, t.fraction, Payload::Traces(trace_triple(&t)?)))
    }
}

impl Command for Theta {
    fn name(&self) -> &'static str {
        "theta"
    }
    fn about(&self) -> &'static str {
        "Upper-right entries of the reducible boundary matrices"
    }
    fn args(&self) -> Vec<Arg> {
        vec![tangle_arg()]
    }
    fn run(&self, m: &ArgMatches, _: &Context) -> Result<OutputDocument, CliError> {
        let t = tangle(m)?;
        Ok(doc(self, t.fraction, Payload::Theta(theta_pair(&t))))
    }
}

fn parse_iota(s: &str) -> Result<i8, CliError> {
    match s {
        "+" | "+1" | "1" => Ok(1),
        "-" | "-1" => Ok(-1),
        _ => Err(CliError::Parse(format!("iota must be +1 or -1, got `{s}`"))),
    }
}

impl Command for Riley {
    fn name(&self) -> &'static str {
        "riley"
    }
    fn about(&self) -> &'static str {
        "Riley polynomial of the numerator closure"
    }
    fn args(&self) -> Vec<Arg> {
        vec![
            tangle_arg(),
            Arg::new("iota")
                .long("iota")
                .allow_hyphen_values(true)
                .value_name("+1|-1")
                .help("Branch for even tangles (default +1)"),
        ]
    }
    fn run(&self, m: &ArgMatches, _: &Context) -> Result<OutputDocument, CliError> {
        let t = tangle(m)?;
        let iota = m.get_one::<String>("iota").map(|s| parse_iota(s)).transpose()?;
        let phi = match (t.parity, iota) {
            (Parity::Odd, None) => riley_odd(&t)?,
            (Parity::Odd, Some(_)) => {
                return Err(CliError::Domain(format!("--iota applies to even tangles only; {} is odd", t.fraction)))
            }
            (Parity::Even, iota) => riley_even(&t, iota.unwrap_or(1))?,
        };
        Ok(doc(self, t.fraction, Payload::Riley(phi)))
    }
}

impl Command for X1 {
    fn name(&self) -> &'static str {
        "x1"
    }
    fn about(&self) -> &'static str {
        "Defining system of the component X1"
    }
    fn args(&self) -> Vec<Arg> {
        vec![knot_arg()]
    }
    fn run(&self, m: &ArgMatches, _: &Context) -> Result<OutputDocument, CliError> {
        let k = knot(m)?;
        Ok(doc(self, &k, Payload::System(build_x1(&k)?)))
    }
}

impl Command for X2 {
    fn name(&self) -> &'static str {
        "x2"
    }
    fn about(&self) -> &'static str {
        "Defining system of the component X2"
    }
    fn args(&self) -> Vec<Arg> {
        vec![knot_arg()]
    }
    fn run(&self, m: &ArgMatches, _: &Context) -> Result<OutputDocument, CliError> {
        let k = knot(m)?;
        Ok(doc(self, &k, Payload::System(build_x2(&k)?)))
    }
}

impl Command for XPrime {
    fn name(&self) -> &'static str {
        "xprime"
    }
    fn about(&self) -> &'static str {
        "Systems of X' for one sign vector, or for all of them"
    }
    fn args(&self) -> Vec<Arg> {
        vec![knot_arg(), epsilon_arg()]
    }
    fn run(&self, m: &ArgMatches, _: &Context) -> Result<OutputDocument, CliError> {
        let k = knot(m)?;
        let result = match epsilon(m)? {
            Some(eps) => Payload::System(build_xprime(&k, &eps)?),
            None => Payload::Systems(build_xprime_all(&k)?),
        };
        Ok(doc(self, &k, result))
    }
}

impl Command for Genericity {
    fn name(&self) -> &'static str {
        "genericity"
    }
    fn about(&self) -> &'static str {
        "Check whether the X' systems have finitely many solutions"
    }
    fn args(&self) -> Vec<Arg> {
        vec![knot_arg()]
    }
    fn run(&self, m: &ArgMatches, _: &Context) -> Result<OutputDocument, CliError> {
        let k = knot(m)?;
        Ok(doc(self, &k, Payload::Genericity(genericity_check(&k)?)))
    }
}

/// Reads a JSON object mapping variable names to `[re, im]`.
pub fn parse_point(text: &str) -> Result<Assignment, CliError> {
    let raw: BTreeMap<String, [f64; 2]> =
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("point file: {e}")))?;
    raw.into_iter()
        .map(|(name, [re, im])| {
            let v = Var::from_str(&name).map_err(|e| CliError::Parse(format!("point file: {e}")))?;
            Ok((v, Complex64::new(re, im)))
        })
        .collect()
}

impl Command for Verify {
    fn name(&self) -> &'static str {
        "verify"
    }
    fn about(&self) -> &'static str {
        "Rebuild a representation from a point of X2 or X' and report residuals"
    }
    fn args(&self) -> Vec<Arg> {
        vec![
            knot_arg(),
            Arg::new("point")
                .long("point")
                .value_name("FILE")
                .help("JSON map from variable to [re, im]; without it a point is searched for"),
            epsilon_arg().help("Sign vector; selects X' instead of X2"),
            Arg::new("seed")
                .long("seed")
                .value_name("N")
                .value_parser(clap::value_parser!(u64))
                .default_value("0")
                .help("Seed for the point search"),
        ]
    }
    fn run(&self, m: &ArgMatches, ctx: &Context) -> Result<OutputDocument, CliError> {
        let k = knot(m)?;
        let component = match epsilon(m)? {
            Some(epsilon) => Component::XPrime { epsilon },
            None => Component::X2,
        };
        let mut notes = vec![];
        let (point, search) = match m.get_one::<String>("point") {
            Some(path) => (parse_point(&std::fs::read_to_string(path)?)?, None),
            None => {
                let system = match &component {
                    Component::XPrime { epsilon } => build_xprime(&k, epsilon)?,
                    _ => build_x2(&k)?,
                };
                let seed = *m.get_one::<u64>("seed").expect("has default");
                let found = sample_point(&system, seed, SEARCH_STARTS, &NewtonOptions::default())?;
                notes.push("point found by damped Newton refinement from seeded random starts; not certified".into());
                let search = Search { seed, residual: found.residual, iterations: found.iterations };
                (found.point, Some(search))
            }
        };
        let report = verify_rep_montesinos(&k, &component, &point, ctx.tolerance)?;
        let mut d = doc(self, &k, Payload::Verification(Verification { point, report, search }));
        d.notes = notes;
        Ok(d)
    }
}
