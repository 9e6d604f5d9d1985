// Equidistribution of biangular tight frames and the case analysis ruling
// out a tight biangular 5-vector packing of C^2.

use grassmannian::catalog;
use grassmannian::rigidity::{
    brute_force_embedded_search, check_btf_equidistributed, check_even_multiplicities,
    verify_tight_biangular_5_2,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mub = catalog::mutually_unbiased_c2(2);
    let profile = check_btf_equidistributed(&mub)?;
    println!(
        "two MUBs in C^2: multiplicities {:?}",
        profile.multiplicities
    );

    let pentagon = catalog::planar_lines(5);
    let profile = check_btf_equidistributed(&pentagon)?;
    println!(
        "5 lines in R^2: multiplicities {:?}, both even: {}",
        profile.multiplicities,
        check_even_multiplicities(&profile)?
    );

    if let Err(e) = check_btf_equidistributed(&catalog::tri_5_2()) {
        println!("tri_5_2 rejected: {e}");
    }

    let cert = verify_tight_biangular_5_2();
    println!(
        "case tree: {} branches, {} sign branches, all refuted: {}, min |sum| {:.6}",
        cert.branches_explored, cert.sign_branches, cert.all_refuted, cert.min_zero_sum_defect
    );
    for w in cert.witness_log.iter().take(4) {
        println!("  {} => {}", w.branch, w.refutation);
    }

    let found = brute_force_embedded_search(&[0.0, 0.0, -0.5, -0.5], 5, 3, true)?;
    println!(
        "brute force over R^3: {}",
        if found.is_some() { "found" } else { "absent" }
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
