//! Regenerate the bundled fixture files from the library's demo
//! constructions:
//!
//! ```text
//! cargo run -p calibra-cli --bin gen_fixtures
//! ```
//!
//! A test byte-compares the files on disk against a fresh generation, so run
//! this after changing any demo geometry.

use std::path::PathBuf;

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let names = calibra_cli::write_fixtures(&dir).expect("write fixture files");
    for name in names {
        println!("wrote {}", dir.join(name).display());
    }
}
