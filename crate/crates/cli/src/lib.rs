//! Library surface behind the `mixcert` binary, split out so integration tests
//! can drive commands in-process.
//!
//! Exit code contract: 0 success, 1 internal error, 2 bad input, 3 regime or
//! size refusal, 4 theorem cross-check failure.

pub mod args;
pub mod commands;
pub mod report;

pub const INTERNAL: i32 = 1;
pub const BAD_INPUT: i32 = 2;
pub const REFUSAL: i32 = 3;
pub const CROSS_CHECK: i32 = 4;

#[derive(Debug)]
pub struct CmdError {
    pub code: i32,
    pub message: String,
}

impl CmdError {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CmdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CmdError {}

/// Configures the global rayon pool from --threads or MIXCERT_THREADS.
/// Later calls are no-ops, which is fine: thread count never changes results.
pub fn init_threads(threads: Option<usize>) {
    let from_env = std::env::var("MIXCERT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    if let Some(count) = threads.or(from_env) {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(count.max(1))
            .build_global();
    }
}

pub fn run(cli: &args::Cli) -> Result<commands::CmdOutput, CmdError> {
    init_threads(cli.threads);
    match &cli.command {
        args::Command::Generate { family } => commands::cmd_generate(family),
        args::Command::Certify(a) => commands::cmd_certify(a),
        args::Command::Mix(a) => commands::cmd_mix(a),
        args::Command::Spectrum(a) => commands::cmd_spectrum(a),
        args::Command::Verify(a) => commands::cmd_verify(a),
    }
}
