use std::io::Write as _;
use std::path::PathBuf;

fn main() {
    let cache_dir = std::env::var_os("CACHE_DIR")
        .filter(|d| !d.is_empty())
        .map(PathBuf::from);
    let out = dialg_workbench::cli::run_command(std::env::args_os(), cache_dir.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}
