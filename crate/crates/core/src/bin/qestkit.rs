use clap::Parser;

fn main() {
    let cli = qestkit::cli::Cli::parse();
    if let Err(e) = qestkit::cli::execute(&cli) {
        eprintln!("error: {e}");
        std::process::exit(qestkit::cli::exit_code(&e));
    }
}
