// Standard graphs: a ladder joining two surface patches (lattice surgery),
// a Shor-style graph routed through dummy vertices, and a hypergraph that
// prepares a CSS code state from scratch.
//
// `cargo run --release --example surgery_recipes`

use std::error::Error;

use gauging::codes::{distance_exact, library};
use gauging::gauging::{deform, hypergraph_measure, recipes};
use gauging::sparsify::cheeger_exact;
use gauging::{pauli, PauliOp, Tableau};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let patch = library::rotated_surface(3).to_stabilizer();
    let n = patch.n();
    let pair = library::product(&patch, &patch);
    let lx = library::surface_x_logical(3);
    let la = lx.resized(2 * n);
    let lb = PauliOp::x_type(2 * n, lx.support().iter().map(|q| q + n));
    let plan = recipes::ladder(&pair, &la, &lb)?;
    let merged = deform(&pair, &plan)?;
    println!(
        "ladder: {} edges, k {} -> {}, d = {:?}, h = {:.3}",
        plan.graph.edge_count(),
        pair.k(),
        merged.code().k(),
        distance_exact(merged.code(), 4)?,
        cheeger_exact(&plan.graph)?.value
    );

    let code = library::four_two_two();
    let shor = recipes::shor(&code, &pauli("XXII"), &[(0, 1)])?;
    let dc = deform(&code, &shor)?;
    println!(
        "shor: {} dummies, deformed n = {}, k = {}",
        shor.graph.dummy_count(),
        dc.code().n(),
        dc.code().k()
    );

    let css = library::rotated_surface(3);
    let hg = recipes::css_init(&css);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (outcome, state) = hypergraph_measure(&Tableau::new(0), &hg, false, &mut rng)?;
    let mut fixed = 0;
    for s in css.to_stabilizer().checks() {
        fixed += usize::from(state.expectation(s)?.is_some());
    }
    println!(
        "css init: {} vertex outcomes, {fixed}/{} checks fixed on {} qubits",
        outcome.vertex_outcomes.len(),
        css.to_stabilizer().checks().len(),
        state.n()
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
