fn main() {
    std::process::exit(trichar_cli::main_with_args(std::env::args_os()));
}
