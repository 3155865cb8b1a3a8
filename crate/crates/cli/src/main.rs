fn main() {
    std::process::exit(lcheb_cli::run(std::env::args_os()));
}
