//! Command implementations behind the `discordant` binary.
//!
//! Every command returns its rendered output and an exit code; nothing here
//! prints or exits, so the commands can be driven from tests.

use std::time::Instant;

use serde::Serialize;

pub mod args;
pub mod input;
pub mod render;
pub mod report;
pub mod table1;

use args::{Cli, Command, StatesCommand};
use discordant::{StateDocument, Verdict};

pub mod exit {
    pub const OK: i32 = 0;
    pub const NONZERO: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const VALIDATION: i32 = 3;
    pub const AMBIGUOUS: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("invalid state: {0}")]
    Validation(discordant::Error),
    #[error("{0}")]
    Computation(discordant::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => exit::PARSE,
            CliError::Validation(_) | CliError::Computation(_) => exit::VALIDATION,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Zero => exit::OK,
        Verdict::Nonzero => exit::NONZERO,
        Verdict::Ambiguous => exit::AMBIGUOUS,
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    let config = g.optimizer();
    let started = Instant::now();
    let ok = |text| Output { text, code: exit::OK };
    let elapsed_ms = |t: Instant| t.elapsed().as_secs_f64() * 1e3;
    let timed = |text: String| -> String {
        if g.timing && !g.json {
            format!("{text}time {:.1} ms\n", elapsed_ms(started))
        } else {
            text
        }
    };

    match &cli.command {
        Command::Analyze(input) => {
            let (_, state) = input::load(input)?;
            let mut r = report::analyze(&state, &config)?;
            if g.timing {
                r.timing = Some(report::Timing { total_ms: elapsed_ms(started) });
            }
            Ok(ok(if g.json { json(&r) } else { render::analysis(&r) }))
        }
        Command::Classify { input, side } => {
            let (_, state) = input::load(input)?;
            let v = report::classify(&state, (*side).into())?;
            let text = if g.json {
                json(&v)
            } else {
                let mut s = String::new();
                render::verdict(&mut s, &v);
                timed(s)
            };
            Ok(Output { text, code: verdict_code(v.verdict) })
        }
        Command::Discord { input, measure, side } => {
            let (_, state) = input::load(input)?;
            let r = report::discord(*measure, &state, (*side).into(), &config)?;
            let out = report::DiscordOut::from(&r);
            Ok(ok(if g.json {
                json(&out)
            } else {
                let mut s = String::new();
                render::discord(&mut s, &out);
                timed(s)
            }))
        }
        Command::Demon { input, kt } => {
            let (_, state) = input::load(input)?;
            let l = report::demon(&state, *kt, &config)?;
            Ok(ok(if g.json {
                json(&l)
            } else {
                let mut s = String::new();
                render::ledger(&mut s, &l);
                timed(s)
            }))
        }
        Command::Table1 { params } => {
            let a = table1::parse_a(params)?;
            let t = table1::table1(a, &config)?;
            Ok(ok(if g.json { json(&t) } else { timed(render::table(&t)) }))
        }
        Command::States(StatesCommand::List) => Ok(ok(if g.json {
            json(&discordant::FamilySpec::NAMES)
        } else {
            render::families()
        })),
        Command::States(StatesCommand::Emit { family, params, explicit }) => {
            let doc = StateDocument::family(input::family_spec(family, params)?);
            let state = doc.to_state().map_err(CliError::Validation)?;
            Ok(ok(json(&if *explicit { StateDocument::explicit(&state) } else { doc })))
        }
    }
}

/// Applies `--threads` to the global pool; a second call is a no-op.
pub fn configure_threads(threads: Option<usize>) {
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
