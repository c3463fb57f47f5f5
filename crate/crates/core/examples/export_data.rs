//! Write the bundled example files (cover specs and arrangements) to a directory.
//!
//! ```text
//! cargo run --example export_data -- crates/core/data
//! ```

use abelcover::catalog::data_files;

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "data".into());
    std::fs::create_dir_all(&dir)?;
    for (name, value) in data_files() {
        let path = std::path::Path::new(&dir).join(&name);
        let text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
        std::fs::write(&path, text + "\n")?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
