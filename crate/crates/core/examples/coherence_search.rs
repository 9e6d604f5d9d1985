// Numerical coherence minimization, certified against the lower bounds.

use grassmannian::analysis::angle_set;
use grassmannian::solver::{minimize_coherence, refine, SearchConfig};
use grassmannian::{catalog, Field};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (n, m) in [(3, 2), (4, 2), (6, 2)] {
        let config = SearchConfig::new(n, m, Field::Complex)
            .with_restarts(8)
            .with_seed(1);
        let result = minimize_coherence(&config)?;
        println!(
            "({n},{m},C): coherence {:.9}  bound {:.9} ({:?})  certified {}",
            result.best_coherence, result.bound.best, result.bound.best_name, result.certified
        );
        println!("  angles {:?}", angle_set(&result.best_frame, 1e-6)?.angles);
    }

    let start = catalog::random_frame(5, 2, Field::Complex, 11);
    let config = SearchConfig::new(5, 2, Field::Complex);
    let polished = refine(&start, &config)?;
    println!(
        "refine random (5,2): {:.6} -> {:.9}",
        grassmannian::analysis::coherence(&start)?,
        polished.best_coherence
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
