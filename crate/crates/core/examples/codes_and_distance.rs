// Builds the bivariate-bicycle codes and a few small codes, prints their
// Tanner statistics and bounds their distances.
//
// `cargo run --release --example codes_and_distance`

use std::error::Error;

use gauging::codes::{distance_exact, distance_upper, library, BBCode, TannerReport};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let gross = BBCode::gross();
    println!("gross: [[{}, {}]]", gross.n(), gross.k());
    println!("{}", TannerReport::of(&gross.to_stabilizer()));

    // Information-set sampling only gives an upper bound; seeded, so the
    // witness is reproducible.
    let bound = distance_upper(&gross.to_stabilizer(), 100, 1).ok_or("no logical found")?;
    println!(
        "gross distance <= {} (witness on qubits {:?})",
        bound.weight,
        bound.witness.support()
    );

    for (name, code) in [
        ("[[4,2,2]]", library::four_two_two()),
        ("surface-3", library::rotated_surface(3).to_stabilizer()),
    ] {
        let exact = distance_exact(&code, code.n())?.ok_or("no logical")?;
        let upper = distance_upper(&code, 50, 1).map(|b| b.weight);
        println!(
            "{name}: n = {}, k = {}, d = {exact}, sampled {upper:?}",
            code.n(),
            code.k()
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
