use std::io;
use std::path::PathBuf;

fn main() {
    let args: Vec<String> = std::env::args_os().map(|a| a.to_string_lossy().into_owned()).collect();
    let out_dir = std::env::var_os(ltgn_cli::OUT_DIR_ENV).map(PathBuf::from);
    let code = ltgn_cli::run(args, out_dir.as_deref(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
