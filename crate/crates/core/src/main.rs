fn main() {
    let bound = std::env::var(cyclic_stab::cli::BOUND_VAR).ok();
    let code = cyclic_stab::cli::run(std::env::args_os(), bound.as_deref(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
