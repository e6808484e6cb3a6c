//! Driving the kernel from the surface syntax.
//!
//! Parses a declaration file from a string, checks it, runs its
//! directives, and prints both report renderings. The same machinery backs
//! the `cubind` binary.
//!
//! Run: `cargo run --example surface_files`

use cubind::cli::parse::{parse_expr, parse_file};
use cubind::cli::run::{run_file, Options};
use cubind::eval::{observe, Flags};
use cubind::stdlib::nat_type;

const SRC: &str = "
data nat = zero | suc(rec n : self)
data parity = even | odd

def two : nat = suc(suc(zero))
def flip : (p : parity) -> parity =
  \\p. elim [h. parity] [] p { even -> odd | odd -> even }

eval flip (flip even)
observe elim [h. nat] [] two { zero -> zero | suc(k, r) -> suc(suc(r)) } : nat
";

fn main() {
    let file = parse_file(SRC).expect("parses");
    let opts = Options::default();
    println!("-- human report --");
    let report = run_file(&file, &opts);
    for line in &report {
        println!("{}", line.to_human());
    }
    println!("\n-- json report --");
    for line in &report {
        println!("{}", line.to_json());
    }

    // Expressions can be parsed against a loaded file's scope.
    let doubled = parse_expr(
        "elim [h. nat] [] two { zero -> zero | suc(k, r) -> suc(suc(r)) }",
        &file.items,
    )
    .unwrap();
    let obs = observe(&doubled, &nat_type(), &Flags::default(), 10_000).unwrap();
    println!("\ndoubling two gives {}", obs);
}
