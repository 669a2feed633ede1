use std::io::Write;

fn main() {
    let r = zp_index::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(r.body.as_bytes());
    std::process::exit(r.status);
}
