use std::process::ExitCode;

fn main() -> ExitCode {
    match schreier::cli::run(std::env::args_os()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) if e.code == 0 => {
            print!("{}", e.msg);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.msg.trim_end());
            ExitCode::from(e.code as u8)
        }
    }
}
