// Angle sets, tightness and equidistribution of the built-in frames.

use grassmannian::analysis::{angle_set, coherence, equidistribution, tightness};
use grassmannian::catalog;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let frames = [
        ("tri_5_2", catalog::tri_5_2()),
        ("bi_5_2", catalog::bi_5_2()),
        ("icosa_12_2", catalog::icosaplectic_12_2()),
        ("fourier_3", catalog::standard_and_fourier(3)),
    ];
    for (name, frame) in &frames {
        let summary = angle_set(frame, 1e-8)?;
        let tight = tightness(frame);
        println!(
            "{name}: N={} M={} coherence={:.12}",
            frame.len(),
            frame.dim(),
            coherence(frame)?
        );
        println!("  angles {:?}", summary.angles);
        println!("  tight={} (defect {:.2e})", tight.is_tight, tight.defect);
        match equidistribution(frame, 1e-8)? {
            Some(row) => println!("  equidistributed, multiplicities {row:?}"),
            None => println!("  not equidistributed"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
