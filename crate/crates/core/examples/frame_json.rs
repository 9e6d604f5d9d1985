// Frame JSON round trip and the command-line interface driven in-process.

use grassmannian::{catalog, cli, Frame};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let frame = catalog::tri_5_2();
    let text = frame.to_json();
    println!("{text}");
    assert_eq!(Frame::from_json(&text)?, frame);

    let out = cli::run(["grassmannian", "analyze"], &mut text.as_bytes());
    print!("analyze: {}", out.stdout);

    let out = cli::run(
        [
            "grassmannian",
            "bounds",
            "--n",
            "12",
            "--m",
            "2",
            "--field",
            "C",
        ],
        &mut std::io::empty(),
    );
    print!("bounds: {}", out.stdout);

    let bad = r#"{"field":"R","m":2,"n":1,"vectors":[[3.0,4.0]]}"#;
    let out = cli::run(["grassmannian", "analyze"], &mut bad.as_bytes());
    print!("exit {}: {}", out.code, out.stderr);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
