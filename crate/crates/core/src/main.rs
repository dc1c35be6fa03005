fn main() {
    std::process::exit(sphere_cw::cli::run(std::env::args_os()));
}
