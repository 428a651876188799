//! Classical GSEMO on one coverage problem, compared with greedy and the
//! exact optimum.

use mt_submod::oracles::{brute_force_opt, greedy};
use mt_submod::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let n = 20;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let g = Graph::preferential_attachment(n, 2, &mut rng);
    let f = CoverageObjective::from_graph(&g);
    let c = Constraint::unit(n, 3);

    let ps = ProblemSet::classical(&f, c.clone()).unwrap();
    let cfg = RunConfig::new(10_000, 5).with_checkpoints(vec![50, 500, 10_000]);
    let (archive, trace) = gsemo::run(&ps, &cfg).unwrap();
    for r in &trace.records {
        let best = r.best[0].map_or(f64::NAN, |b| b.f);
        println!("iteration {:>5}: best {best}, |P| = {}", r.iteration, r.archive_size);
    }
    let (x, v) = extract_best(&archive, &ps, 0).unwrap();
    println!("GSEMO:  {x} -> {v}");

    let gx = greedy(&f, &c).unwrap();
    println!("greedy: {gx} -> {}", f.value(&gx));
    let (opt, ox) = brute_force_opt(&f, &c).unwrap();
    println!("OPT:    {ox} -> {opt}");
}
