fn main() {
    use kaehler::scenario::{run_scenario, Params};
    let mut failures = 0;
    let mut run = |name: &str, p: Option<u32>, n: Option<u32>| {
        let t = std::time::Instant::now();
        match run_scenario(name, Params { p, n }) {
            Ok(r) => {
                let ms = t.elapsed().as_millis();
                println!("{name} p={p:?} n={n:?} -> {:?} in {ms} ms", r.status);
                if !r.passed() {
                    failures += 1;
                    for c in &r.checks {
                        println!("    {} [{:?}] {}", c.id, c.status, c.witness);
                    }
                }
            }
            Err(e) => {
                failures += 1;
                println!("{name} p={p:?} n={n:?} -> ERROR {e}");
            }
        }
    };
    run("whitney_torsion", None, None);
    run("whitney_cdh", None, None);
    for p in [2, 3, 5] { run("h_vanishing", Some(p), None); }
    run("h_vanishing", Some(3), Some(6));
    for p in [2, 3, 5] { for n in 1..=4 { run("sdh_failure", Some(p), Some(n)); } }
    for p in [2, 3] { for n in 2..=4 { run("salt_failure", Some(p), Some(n)); } }
    run("warning_2_4", None, None);
    run("warning_2_4", Some(5), None);
    run("hyperplane_criterion", None, None);
    println!("failures: {failures}");
    std::process::exit(if failures > 0 { 1 } else { 0 });
}
