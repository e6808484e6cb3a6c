//! Regenerates the shipped `.cit` declaration files from the catalog.
//! Run from the crate root: `cargo run --example generate_stdlib`.

use cubind::cli::print::Printer;
use cubind::cli::{DataDecl, DefDecl, Item, SourceFile};
use cubind::stdlib::*;
use cubind::syntax::*;

fn ev(term: Term) -> Item {
    Item::Eval { line: 0, term }
}

fn tr(term: Term) -> Item {
    Item::Trace { line: 0, term }
}

fn ob(term: Term, at: Term) -> Item {
    Item::Observe { line: 0, term, at }
}

fn data_item(d: &NamedDecl) -> Item {
    Item::Data(DataDecl {
        line: 0,
        name: d.name.clone(),
        tele: d.tele.clone(),
        schema: d.schema.clone(),
    })
}

fn write_file(dir: &std::path::Path, name: &str, items: Vec<Item>) {
    let datas: Vec<DataDecl> = items
        .iter()
        .filter_map(|i| match i {
            Item::Data(d) => Some(d.clone()),
            _ => None,
        })
        .collect();
    let printer = Printer::new(&datas);
    let file = SourceFile { items };
    let text = format!(
        "-- {}: generated from the library catalog; `cargo run --example generate_stdlib`\n{}",
        name,
        printer.file(&file)
    );
    std::fs::write(dir.join(format!("{}.cit", name)), text).unwrap();
}

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("stdlib");
    std::fs::create_dir_all(&dir).unwrap();
    let cat = catalog();
    let by_name = |n: &str| cat.iter().find(|d| d.name == n).unwrap();

    let nat = by_name("nat");
    let add_def = Item::Def(DefDecl {
        line: 0,
        name: "add".into(),
        ann: Some(Term::pi(
            nat_type(),
            Term::pi(nat_type(), nat_type()),
        )),
        body: Term::lam(Term::lam(nat_add(Term::var(1), Term::var(0)))),
    });
    let two = Item::Def(DefDecl {
        line: 0,
        name: "two".into(),
        ann: Some(nat_type()),
        body: num(2),
    });
    let three = Item::Def(DefDecl {
        line: 0,
        name: "three".into(),
        ann: Some(nat_type()),
        body: num(3),
    });
    write_file(
        &dir,
        "nat",
        vec![
            data_item(nat),
            two.clone(),
            three.clone(),
            add_def,
            ev(nat_add(num(2), num(3))),
            ob(nat_mul(num(2), num(3)), nat_type()),
        ],
    );

    let boolean = by_name("bool");
    write_file(
        &dir,
        "bool",
        vec![
            data_item(boolean),
            ev(bool_not(bool_val(true))),
            ob(bool_and(bool_val(true), bool_val(true)), bool_type()),
        ],
    );

    let circle = by_name("circle");
    write_file(
        &dir,
        "circle",
        vec![
            data_item(circle),
            tr(circle.intro("lp", vec![Dim::Zero], vec![], vec![])),
            ev(circle.intro("lp", vec![Dim::One], vec![], vec![])),
        ],
    );

    write_file(&dir, "sphere2", vec![data_item(by_name("sphere2"))]);

    let torus = by_name("torus");
    write_file(
        &dir,
        "torus",
        vec![
            data_item(torus),
            tr(torus.intro("surf", vec![Dim::Zero, Dim::One], vec![], vec![])),
        ],
    );
    write_file(&dir, "torus_g", vec![data_item(by_name("torus_g"))]);

    write_file(
        &dir,
        "w",
        vec![data_item(nat), data_item(by_name("id")), data_item(by_name("w"))],
    );

    let wq = by_name("wq");
    write_file(
        &dir,
        "wq",
        vec![
            data_item(nat),
            data_item(wq),
            ev(wq.intro(
                "wqcell",
                vec![Dim::Zero],
                vec![num(2)],
                vec![
                    Term::lam(wq.intro("wqsup", vec![], vec![Term::var(0)], vec![Term::lam(Term::var(1))])),
                    Term::lam(wq.intro("wqsup", vec![], vec![Term::var(0)], vec![Term::lam(Term::var(1))])),
                ],
            )),
        ],
    );

    let trunc = by_name("trunc");
    write_file(
        &dir,
        "trunc",
        vec![
            data_item(nat),
            data_item(trunc),
            tr(trunc.intro(
                "trglue",
                vec![Dim::Zero],
                vec![],
                vec![
                    trunc.intro("trpt", vec![], vec![num(2)], vec![]),
                    trunc.intro("trpt", vec![], vec![num(3)], vec![]),
                ],
            )),
        ],
    );

    write_file(
        &dir,
        "trunc_hs",
        vec![
            data_item(nat),
            data_item(circle),
            data_item(by_name("trunc_hs")),
        ],
    );

    write_file(&dir, "loc", vec![data_item(nat), data_item(by_name("loc"))]);

    let id = by_name("id");
    write_file(
        &dir,
        "id",
        vec![
            data_item(nat),
            data_item(id),
            ev(Term::Elim {
                motive: Box::new(nat_type()),
                indices: vec![num(2), num(2)],
                scrut: Box::new(id_refl(id, num(2))),
                cases: ElimList(vec![(
                    "refl".into(),
                    ElimCase {
                        dims: vec![],
                        n_params: 1,
                        n_args: 0,
                        body: Term::var(0),
                    },
                )]),
            }),
        ],
    );

    // The natrec boundary-language extension: checking this file needs
    // `--ext natrec`.
    let (ng_tele, ng_schema) = cubind::harness::natglue_schema();
    let natglue = DataDecl {
        line: 0,
        name: "natglue".into(),
        tele: ng_tele,
        schema: ng_schema.clone(),
    };
    let cell = |d: Dim, n: u32| Term::Intro {
        schema: ng_schema.clone(),
        label: "cell".into(),
        dims: vec![d],
        params: vec![num(n)],
        args: vec![Term::Intro {
            schema: ng_schema.clone(),
            label: "pt".into(),
            dims: vec![],
            params: vec![num(5)],
            args: vec![],
        }],
    };
    write_file(
        &dir,
        "natglue",
        vec![
            data_item(nat),
            Item::Data(natglue),
            tr(cell(Dim::Zero, 2)),
        ],
    );

    println!("wrote stdlib files to {}", dir.display());
}
