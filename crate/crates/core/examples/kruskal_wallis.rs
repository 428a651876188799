//! Kruskal-Wallis comparison of two samples and the resulting verdict.

use mt_submod::stats::{compare, kruskal_wallis};

fn main() {
    let kw = kruskal_wallis(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
    println!("(1,2,3) vs (4,5,6): H = {} (27/7 = {}), p = {}", kw.h, 27.0 / 7.0, kw.p);

    let classical = [82.0, 82.0, 81.0, 82.0, 80.0, 82.0, 81.0, 82.0];
    let multitask = [78.0, 80.0, 79.0, 82.0, 77.0, 79.0, 80.0, 78.0];
    let r = compare(&classical, &multitask).unwrap();
    println!(
        "classical {:.1} ± {:.1}, multitask {:.1} ± {:.1}: H = {:.3}, p = {:.4}, verdict {}",
        r.mean_c, r.std_c, r.mean_m, r.std_m, r.h, r.p, r.verdict
    );

    let tied = compare(&[5.0; 4], &[5.0; 4]).unwrap();
    println!("all tied: H = {}, p = {}, verdict {}", tied.h, tied.p, tied.verdict);
}
