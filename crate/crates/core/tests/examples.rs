//! Every runnable example also runs as a test.

mod codes_and_distance {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/codes_and_distance.rs"
    ));
}

mod gauge_measurement {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/gauge_measurement.rs"
    ));
}

mod reproduce_presets {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/reproduce_presets.rs"
    ));
}

mod sparsify_graph {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/sparsify_graph.rs"
    ));
}

mod spacetime_faults {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/spacetime_faults.rs"
    ));
}

mod surgery_recipes {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/surgery_recipes.rs"
    ));
}

#[test]
fn codes_and_distance_runs() {
    codes_and_distance::run_example().expect("codes_and_distance example should run");
}

#[test]
fn gauge_measurement_runs() {
    gauge_measurement::run_example().expect("gauge_measurement example should run");
}

#[test]
fn reproduce_presets_runs() {
    reproduce_presets::run_example().expect("reproduce_presets example should run");
}

#[test]
fn sparsify_graph_runs() {
    sparsify_graph::run_example().expect("sparsify_graph example should run");
}

#[test]
fn spacetime_faults_runs() {
    spacetime_faults::run_example().expect("spacetime_faults example should run");
}

#[test]
fn surgery_recipes_runs() {
    surgery_recipes::run_example().expect("surgery_recipes example should run");
}
