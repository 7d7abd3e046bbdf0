//! Compares `phi` with brute-force sampling on seeded random domains.
//!
//! cargo run --release --example lemma_check -- [domains] [points] [k]

use geodesic_center::oracle::{check_lemma1, random_domain, RandomDomainSpec};
use geodesic_center::GeodesicIndex;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let domains = args.first().copied().unwrap_or(5);
    let points = args.get(1).copied().unwrap_or(10);
    let k = args.get(2).copied().unwrap_or(60);

    let mut failures = 0;
    let mut worst = 0.0f64;
    for seed in 0..domains as u64 {
        let domain = random_domain(seed, RandomDomainSpec::default());
        let n = domain.corner_count();
        let index = GeodesicIndex::new(domain);
        let report = check_lemma1(&index, points, k, seed).expect("trials run");
        println!(
            "domain {seed}: n = {n}, {}/{} trials pass",
            report.passed,
            report.trials.len()
        );
        for t in &report.trials {
            worst = worst.max((t.phi - t.brute) / t.spacing);
        }
        for t in report.trials.iter().filter(|t| !t.pass) {
            failures += 1;
            println!(
                "  trial {} at ({:.4}, {:.4}): phi {:.6} brute {:.6} gap {:.4} (slack {:.4})",
                t.trial,
                t.point.x,
                t.point.y,
                t.phi,
                t.brute,
                t.vertex_gap,
                2.0 * t.spacing
            );
        }
    }
    println!("{failures} failing trials");
    println!("largest phi - brute over spacing: {worst:.3}");
}
