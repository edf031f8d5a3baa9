// Measures the logical `X_1 X_2` of the [[4,2,2]] code by gauging: builds
// the matching graph, shows the deformed code and runs the measurement on
// a code state in both the direct and the circuit form.
//
// `cargo run --example gauge_measurement`

use std::error::Error;

use gauging::codes::library;
use gauging::gauging::{deform, gauge_measure, GaugeMode, GaugingPlan};
use gauging::io::code_state;
use gauging::pauli;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let code = library::four_two_two();
    let l = pauli("XXII");
    let plan = GaugingPlan::from_matching(&code, &l)?;
    let dc = deform(&code, &plan)?;
    println!(
        "graph: {} vertices, {} edges",
        plan.graph.vertex_count(),
        plan.graph.edge_count()
    );
    for (label, check) in dc.code().labels().iter().zip(dc.code().checks()) {
        println!("  {label:>4}  {check}");
    }
    println!("k: {} -> {}", code.k(), dc.code().k());

    // Fix the partner Z of the measured logical so the outcome is random.
    let pairs = code.symplectic_pairs(Some(&l))?;
    let state = code_state(&code, &[pairs[0].1.clone(), pairs[1].1.clone()])?;
    for seed in 0..4 {
        let mut a = ChaCha8Rng::seed_from_u64(seed);
        let mut b = ChaCha8Rng::seed_from_u64(seed);
        let (direct, post) = gauge_measure(&state, &plan, GaugeMode::Algorithm1, &mut a)?;
        let (circuit, post2) = gauge_measure(&state, &plan, GaugeMode::Circuit, &mut b)?;
        assert_eq!(post.canonical(), post2.canonical());
        println!(
            "seed {seed}: sigma = {:+}, byproduct {}, circuit sigma = {:+}",
            direct.sigma.value(),
            direct.byproduct,
            circuit.sigma.value()
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
