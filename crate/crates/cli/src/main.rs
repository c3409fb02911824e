use clap::Parser;

fn main() {
    let cli = nonlocal_cli::Cli::try_parse().unwrap_or_else(|e| {
        let code = if e.use_stderr() { 2 } else { 0 };
        let _ = e.print();
        std::process::exit(code);
    });
    std::process::exit(nonlocal_cli::run(&cli));
}
