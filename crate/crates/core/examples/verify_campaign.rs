//! Small verification campaign over random instances.
//!
//! cargo run --release --example verify_campaign -- 100 7

use semihilbert::harness::{campaign, CampaignConfig};

fn main() -> semihilbert::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(64);
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);
    let run = campaign(&CampaignConfig::new(trials, (1..=6).collect(), seed))?;
    let s = &run.summary;
    println!("{} instances, seed {}", s.trials, s.seed);
    for (id, c) in &s.by_theorem {
        println!(
            "  {id:40} pass {:4}  fail {:2}  inconclusive {:2}",
            c.pass, c.fail, c.inconclusive
        );
    }
    println!(
        "instances with a failure: {}, with an inconclusive verdict: {}",
        s.instances_with_fail, s.instances_with_inconclusive
    );
    Ok(())
}
