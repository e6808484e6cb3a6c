use cubind::cli::run::run;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (code, report, json) = run(&args);
    for line in &report {
        if json {
            println!("{}", line.to_json());
        } else {
            println!("{}", line.to_human());
        }
    }
    std::process::exit(code);
}
