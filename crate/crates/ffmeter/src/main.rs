fn main() {
    std::process::exit(ffmeter::run(std::env::args_os()));
}
