fn main() {
    std::process::exit(star_inducibility::cli::main_with_args(std::env::args_os()));
}
