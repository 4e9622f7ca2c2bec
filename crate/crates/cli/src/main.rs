fn main() {
    let stdout = std::io::stdout();
    let code = po_arena_cli::run_from_args(std::env::args_os(), &mut stdout.lock());
    std::process::exit(code);
}
