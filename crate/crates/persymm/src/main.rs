use std::io::Write;

fn main() {
    let env = std::env::var(persymm::cli::BUDGET_ENV).ok();
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    let code = persymm::cli::run(std::env::args_os(), env, &mut out, &mut err);
    let _ = out.flush();
    std::process::exit(code);
}
