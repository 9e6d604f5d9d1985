// Maps frames into the unit sphere of traceless Hermitian matrices and
// checks the inner-product identity and the zero-sum property.

use grassmannian::catalog;
use grassmannian::embedding::{embed, embedding_residual, zero_sum_defect};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let icosa = catalog::icosaplectic_12_2();
    let config = embed(&icosa)?;
    println!(
        "icosaplectic frame -> {} points in R^{}",
        config.points.len(),
        config.dim
    );

    let mut products: Vec<f64> = Vec::new();
    for j in 0..config.points.len() {
        for l in (j + 1)..config.points.len() {
            let p = config.inner(j, l);
            if !products.iter().any(|q| (q - p).abs() < 1e-9) {
                products.push(p);
            }
        }
    }
    products.sort_by(f64::total_cmp);
    println!("  distinct inner products {products:?}");
    println!("  residual {:.2e}", embedding_residual(&icosa, &config)?);

    for (name, frame) in [
        ("tri_5_2", catalog::tri_5_2()),
        ("bi_5_2", catalog::bi_5_2()),
    ] {
        let c = embed(&frame)?;
        println!("{name}: zero-sum defect {:.3e}", zero_sum_defect(&c));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
