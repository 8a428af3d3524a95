fn main() {
    std::process::exit(negbound::main_with(std::env::args_os()));
}
