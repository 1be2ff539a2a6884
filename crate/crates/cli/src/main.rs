use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = ffcovar_cli::run(&argv, &mut out, &mut std::io::stderr());
    let _ = out.flush();
    std::process::exit(code);
}
