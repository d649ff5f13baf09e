use std::io::{ErrorKind, Write};

use anyhow::Context;

fn main() -> anyhow::Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code =
        twistverify::cli::main_with_args(std::env::args_os(), &mut out, &mut std::io::stderr());
    match out.flush() {
        // reader went away (e.g. `| head`); nothing left to report
        Err(e) if e.kind() == ErrorKind::BrokenPipe => std::process::exit(code),
        r => r.context("flushing stdout")?,
    }
    std::process::exit(code)
}
