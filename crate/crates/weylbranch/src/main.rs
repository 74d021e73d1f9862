fn main() {
    std::process::exit(weylbranch::cli::main_with_args(std::env::args_os()));
}
