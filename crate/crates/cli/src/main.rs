fn main() {
    std::process::exit(orddec_cli::run_cli(std::env::args_os()));
}
