fn main() {
    std::process::exit(optorouter::run(std::env::args_os()));
}
