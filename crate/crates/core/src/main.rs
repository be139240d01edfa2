use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let code = jacob_ladder::cli::run(args, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code)
}
