use std::io::Write;

fn main() {
    env_logger::init();
    let out = cohstate::cli::run(std::env::args_os());
    std::io::stdout()
        .write_all(&out.stdout)
        .expect("write stdout");
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
