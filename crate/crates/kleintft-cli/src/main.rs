use std::process::ExitCode;

fn main() -> ExitCode {
    // Die quietly when the consumer of a pipe goes away.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let code = kleintft_cli::commands::run(std::env::args_os());
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}
