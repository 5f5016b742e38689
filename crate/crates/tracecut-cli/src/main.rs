use clap::Parser;

fn main() {
    let cli = tracecut_cli::cli::Cli::parse();
    let code = match tracecut_cli::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
