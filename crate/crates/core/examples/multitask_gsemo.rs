//! One multitasking run against k classical runs with the same total budget.

use mt_submod::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let n = 150;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let g = Graph::preferential_attachment(n, 2, &mut rng);
    let f = CoverageObjective::from_graph(&g);
    let bounds = [1, 5, 20, 40];
    let generations = 20_000;

    let cs: Vec<Constraint> = bounds.iter().map(|&b| Constraint::unit(n, b)).collect();
    let mt = ProblemSet::multitask(&f, cs.clone()).unwrap();
    let budget = generations * bounds.len() as u64;
    let (archive, trace) = gsemo::run(&mt, &RunConfig::new(budget, 1)).unwrap();
    println!("multitask: {budget} iterations, final |P| = {}", archive.len());

    for (i, c) in cs.into_iter().enumerate() {
        let classical = ProblemSet::classical(&f, c).unwrap();
        let (ca, _) = gsemo::run(&classical, &RunConfig::new(generations, 100 + i as u64)).unwrap();
        let (_, cv) = extract_best(&ca, &classical, 0).unwrap();
        let mv = trace.records[0].best[i].unwrap().f;
        println!("B = {:>2}: classical {cv:>5}  multitask {mv:>5}", bounds[i]);
    }
}
