use clap::Parser;

use hyperarr_cli::{emit, run, Cli, Command, EXIT_INPUT};

fn main() {
    let cli = Cli::parse();
    let command = Command::from(cli);
    let (report, code) = run(&command);
    let rendered = emit(&report, command.format);
    if code == EXIT_INPUT {
        eprint!("{rendered}");
    } else {
        print!("{rendered}");
    }
    std::process::exit(code);
}
