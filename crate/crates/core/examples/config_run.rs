//! Builds an experiment config, round-trips it through TOML and runs the
//! phase shift generator command into a temporary directory.

use linprop::cli::cmd_psg;
use linprop::config::ExperimentConfig;

fn main() -> linprop::Result<()> {
    let mut cfg = ExperimentConfig::example();
    cfg.output.dir = std::env::temp_dir().join("linprop-config-run").to_string_lossy().into_owned();
    let text = cfg.to_toml();
    let back = ExperimentConfig::from_toml(&text)?;
    println!("round trip byte-stable: {}", back.to_toml() == text);
    for path in cmd_psg(&back, false)? {
        println!("wrote {}", path.display());
        print!("{}", std::fs::read_to_string(&path)?.lines().take(3).collect::<Vec<_>>().join("\n"));
        println!();
    }
    Ok(())
}
