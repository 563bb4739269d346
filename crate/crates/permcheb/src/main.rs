fn main() {
    std::process::exit(permcheb::run_cli());
}
