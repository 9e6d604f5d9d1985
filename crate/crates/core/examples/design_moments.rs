// Projective t-design moments for increasing t.

use grassmannian::analysis::design_moment;
use grassmannian::catalog;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let frames = [
        ("icosa_12_2", catalog::icosaplectic_12_2()),
        ("mub_c2", catalog::mutually_unbiased_c2(3)),
        ("tri_5_2", catalog::tri_5_2()),
    ];
    for (name, frame) in &frames {
        print!("{name:>10}:");
        for t in 1..=6 {
            let d = design_moment(frame, t)?;
            print!(" t={t}{}", if d.is_design { "+" } else { "-" });
        }
        println!();
    }
    let d = design_moment(&frames[0].1, 5)?;
    println!("icosa t=5 moment {:.15} target {:.15}", d.moment, d.target);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
