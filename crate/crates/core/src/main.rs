use clap::Parser;
use mittag_kinetics::cli::{run, Args};

fn main() {
    std::process::exit(run(&Args::parse()));
}
