// Lays out a repeated-measurement schedule around the gauging of `X_1 X_2`
// in the [[4,2,2]] code, checks its detectors and spacetime stabilizers,
// and searches for the lightest undetected logical fault.
//
// `cargo run --release --example spacetime_faults`

use std::error::Error;

use gauging::codes::library;
use gauging::gauging::deform_by_matching;
use gauging::pauli;
use gauging::spacetime::{
    build_detectors, fault_distance_search, spacetime_generators, time_logical_fault,
    validate_detectors, verify_with, Instance, Phase, Schedule, SyndromeMap, DEFAULT_SEARCH_BUDGET,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dc = deform_by_matching(&library::four_two_two(), &pauli("XXII"))?;
    let inst = Instance::new(&dc, Schedule::new(2, 2, 2)?)?;
    let ds = build_detectors(&inst);
    validate_detectors(&inst, &ds, 20)?;
    for phase in [
        Phase::Pre,
        Phase::SeamIn,
        Phase::Bulk,
        Phase::SeamOut,
        Phase::Post,
    ] {
        let names: Vec<&str> = ds
            .iter()
            .filter(|d| d.phase == phase)
            .map(|d| d.name.as_str())
            .collect();
        println!("{phase:?}: {}", names.join(" "));
    }

    let map = SyndromeMap::build(&inst)?;
    let report = verify_with(&inst, &map, &spacetime_generators(&inst))?;
    println!(
        "{} local generators, {} failures",
        report.checked,
        report.failures.len()
    );

    let time = map.syndrome(&time_logical_fault(&inst))?;
    println!(
        "A_v string over the deformed rounds: silent {}, flips outcome {}",
        time.is_silent(),
        time.flip
    );

    let found = fault_distance_search(&map, 3, DEFAULT_SEARCH_BUDGET)?.ok_or("no logical fault")?;
    let faults: Vec<String> = found.faults.iter().map(|f| f.to_string()).collect();
    println!(
        "{} sites; lightest logical fault has weight {}: {}",
        map.sites.len(),
        found.weight,
        faults.join(" ")
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
