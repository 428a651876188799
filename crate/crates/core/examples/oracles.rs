//! Test oracles: exact optima by enumeration, greedy, and the sampled
//! monotone/submodular property check.

use mt_submod::objectives::SquaredCardinality;
use mt_submod::oracles::{check_submodular_monotone, greedy, OptTable, APPROX_RATIO};
use mt_submod::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let n = 16;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let g = Graph::gnp(n, 0.2, &mut rng);
    let f = CoverageObjective::from_graph(&g);

    let table = OptTable::for_cardinalities(&f, 6).unwrap();
    for b in 0..=6 {
        let gx = greedy(&f, &Constraint::unit(n, b as u64)).unwrap();
        let gv = f.value(&gx);
        println!(
            "b = {b}: OPT {:>4}  greedy {gv:>4}  ratio {:.3} (guarantee {APPROX_RATIO:.3})",
            table.opt(b),
            if table.opt(b) > 0.0 { gv / table.opt(b) } else { 1.0 }
        );
    }

    let report = check_submodular_monotone(&f, 1000, 1).unwrap();
    println!("coverage: passed = {}, tight on {}/{}", report.passed(), report.tight, report.trials);
    let report = check_submodular_monotone(&SquaredCardinality { n }, 1000, 1).unwrap();
    let v = &report.violations[0];
    println!(
        "|x|^2: passed = {}, first violation {:?}: {} < {}",
        report.passed(),
        v.kind,
        v.lhs,
        v.rhs
    );
}
