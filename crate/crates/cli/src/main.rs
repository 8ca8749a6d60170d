use clap::Parser;

fn main() {
    let cli = match glchain_cli::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { glchain_cli::EXIT_USAGE } else { 0 });
        }
    };
    std::process::exit(glchain_cli::run(&cli));
}
