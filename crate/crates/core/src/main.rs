fn main() {
    std::process::exit(upwind_gks::cli::run_cli(std::env::args_os()));
}
