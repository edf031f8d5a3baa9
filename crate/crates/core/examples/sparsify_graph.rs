// Audits the gross plan graph (path length, expansion, cycle weights),
// then stacks layers so that no edge lies on more than one face and
// rebuilds the deformed code with weight-3 and weight-4 flux checks.
//
// `cargo run --release --example sparsify_graph`

use std::error::Error;

use gauging::presets;
use gauging::sparsify::{
    audit_desiderata, audit_layered, cellulate, cheeger_spectral, decongest, random_cubic,
    sparsified_deform, DecongestConfig, LayeredGraph, Thresholds,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = presets::gross();
    let r = audit_desiderata(&p.plan, Thresholds::default());
    println!(
        "gross plan: kappa {}, h = {:.3} ({:?}), max cycle weight {}, passes {}",
        r.kappa,
        r.cheeger.value,
        r.cheeger.mode,
        r.max_cycle_weight,
        r.passes()
    );
    println!(
        "spectral bound {:.3}",
        cheeger_spectral(&p.plan.graph).value
    );

    let hexagon = cellulate(6)?;
    println!(
        "hexagon chords {:?}, {} triangles",
        hexagon.chords,
        hexagon.faces.len()
    );

    let cfg = DecongestConfig {
        cap: 1,
        ..Default::default()
    };
    let layered = decongest(&p.plan, cfg)?;
    let dc = sparsified_deform(&p.code, &p.plan, &layered)?;
    println!(
        "cap 1: {} extra layers, {} qubits, max flux weight {}, k drop {}",
        layered.layers,
        dc.code().n(),
        layered.max_flux_weight(),
        dc.k_drop()
    );
    let audit = audit_layered(&p.plan, &layered, Thresholds::default());
    println!(
        "layered graph: h = {:.3} ({:?})",
        audit.cheeger.value, audit.cheeger.mode
    );

    for w in [32, 64, 128] {
        let g = random_cubic(w, 0)?;
        let basis = g.cycle_basis()?.into_rows();
        let lg = LayeredGraph::build(&g, &basis, DecongestConfig::default())?;
        println!(
            "random cubic W = {w}: {} cycles need R = {}",
            basis.len(),
            lg.layers
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
