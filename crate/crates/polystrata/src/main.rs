fn main() {
    // Behave like other Unix filters when stdout closes early (e.g. when
    // piped into `head`): die on SIGPIPE instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(polystrata::cli::run());
}
