//! The command-line interface driven in-process: census as JSON, then the
//! identity suite.

use std::io;

fn main() {
    let dir = std::env::temp_dir().join("cyclehopf-example");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("triangle.txt");
    std::fs::write(&file, "0 1\n1 0\n1 2\n2 1\n0 2\n2 0\n").unwrap();
    let file = file.to_string_lossy().into_owned();

    let (mut out, mut err) = (io::stdout(), io::stderr());
    let code = cyclehopf::cli::run(["cyclehopf", "census", &file, "--hamiltonian", "--verify"], &mut out, &mut err);
    println!("census exit code {code}");
    let code = cyclehopf::cli::run(["cyclehopf", "check", &file], &mut out, &mut err);
    println!("check exit code {code}");
}
