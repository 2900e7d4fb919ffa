use std::io::Write;

fn main() {
    let env_dim_max = std::env::var(fockthermo_cli::config::DIM_MAX_ENV).ok();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    let code = fockthermo_cli::run(std::env::args_os(), env_dim_max.as_deref(), &mut out, &mut err);
    let _ = out.flush();
    std::process::exit(code);
}
