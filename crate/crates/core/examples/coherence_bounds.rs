// Lower bounds on coherence and which one is strongest.

use grassmannian::bounds::{best_bound, toth_bound, welch_bound};
use grassmannian::Field;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:>4} {:>10} {:>10} {:>10} {:>10}  best",
        "N", "Welch", "orthoplex", "Toth", "value"
    );
    for n in 3..=14 {
        let r = best_bound(n, 2, Field::Complex)?;
        let fmt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.6}"));
        println!(
            "{n:>4} {:>10.6} {:>10} {:>10} {:>10.6}  {:?}",
            r.welch,
            fmt(r.orthoplex),
            fmt(r.toth),
            r.best,
            r.best_name
        );
    }
    println!("Welch(5,2) = {:.15}", welch_bound(5, 2)?);
    println!("Toth(6)    = {:.15}", toth_bound(6)?);

    let r = best_bound(20, 3, Field::Real)?;
    println!(
        "(20,3,R): best {:?} {:.6}, saturation impossible: {}",
        r.best_name, r.best, r.orthoplex_saturation_impossible
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
