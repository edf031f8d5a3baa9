// Rebuilds the bundled gross and double-gross constructions and prints
// their summaries and deformed-code degree tables.
//
// `cargo run --release --example reproduce_presets`

use std::error::Error;

use gauging::cli::repro_table;
use gauging::presets;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for name in presets::names() {
        let p = presets::load(name)?;
        let summary = p.summary()?;
        println!("{}", repro_table(&summary));
        let dc = p.deformed()?;
        println!(
            "deformed code: {} qubits, {} checks, k = {}\n",
            dc.code().n(),
            dc.code().checks().len(),
            dc.code().k()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
