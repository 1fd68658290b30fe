fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let code = nlspec::cli::run(
        std::env::args_os(),
        &mut stdin.lock(),
        &mut out,
        &mut std::io::stderr(),
    );
    drop(out);
    std::process::exit(code);
}
