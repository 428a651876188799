//! The archive size bound min(max_i ⌊B_i/a_i⌋, n) + 1 and a run that
//! tracks it.

use mt_submod::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let n = 40;
    let cs = vec![
        Constraint::uniform(n, 2, 9).unwrap(),
        Constraint::uniform(n, 1, 5).unwrap(),
        Constraint::unit(n, 3),
    ];
    let u = population_bound(&cs, n).unwrap();
    println!("U = {u}");

    let knapsack = Constraint::new((1..=n as u64).collect(), 10);
    println!("knapsack: {}", population_bound(&[knapsack], n).unwrap_err());

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = Graph::gnp(n, 0.1, &mut rng);
    let f = CoverageObjective::from_graph(&g);
    let ps = ProblemSet::multitask(&f, cs).unwrap();
    let cfg = RunConfig::new(20_000, 1).with_checkpoints(vec![100, 1_000, 5_000, 20_000]);
    let (_, trace) = gsemo::run(&ps, &cfg).unwrap();
    for r in &trace.records {
        println!("iteration {:>6}: |P| = {}", r.iteration, r.archive_size);
    }
    println!("peak |P| = {} <= {u}", trace.peak_archive_size);
}
