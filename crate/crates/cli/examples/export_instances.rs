//! Writes the structure files shipped in `data/`.
//!
//! `cargo run -p cbv-cli --example export_instances -- crates/cli/data`

use std::path::PathBuf;

use cbv_cli::commands::ym_structure;
use cbv_cli::StructureFile;
use cbv_core::strict::{build_de_rham, build_poisson};
use cbv_core::tensor::q;
use cbv_core::ym::CubicReading;

fn main() {
    let dir: PathBuf = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "data".into())
        .into();
    let ym = ym_structure(4, None, CubicReading::default()).expect("Yang-Mills builds");
    let de_rham = build_de_rham(2, &[1, -1]).expect("de Rham builds");
    let poisson = build_poisson(2, &[vec![q(0), q(1)], vec![q(-1), q(0)]]).expect("Poisson builds");
    let files = [
        ("ym-d4.json", ym.to_file()),
        ("de-rham-d2.json", StructureFile::from_strict(&de_rham)),
        ("poisson-d2.json", StructureFile::from_strict(&poisson)),
    ];
    for (name, f) in files {
        let path = dir.join(name);
        std::fs::write(&path, f.to_json()).expect("write structure file");
        println!("wrote {}", path.display());
    }
}
