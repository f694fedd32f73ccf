fn main() {
    std::process::exit(posgame::cli::run(std::env::args_os()));
}
