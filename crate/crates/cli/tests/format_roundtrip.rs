use proptest::prelude::*;
use ybe_cli::format::{emit, parse, ConsSpec, Document};
use ybe_core::OpTable;

fn table(n: usize) -> impl Strategy<Value = OpTable> {
    prop::collection::vec(0..n, n * n).prop_map(move |cells| OpTable::new(n, cells).unwrap())
}

/// Addition tables with identity 0, as the parser requires for brace and ring.
fn additive(n: usize) -> impl Strategy<Value = OpTable> {
    table(n).prop_map(move |t| {
        OpTable::from_fn(n, |a, b| if a == 0 { b } else if b == 0 { a } else { t.get(a, b) })
    })
}

fn document() -> impl Strategy<Value = Document> {
    (1usize..6).prop_flat_map(|n| {
        prop_oneof![
            table(n).prop_map(Document::Bop),
            (table(n), table(n)).prop_map(|(lambda, tau)| Document::Sol { lambda, tau }),
            (table(n), table(n)).prop_map(|(a, b)| Document::Qsol { a, b }),
            (additive(n), table(n)).prop_map(|(add, circle)| Document::Brace { add, circle }),
            (additive(n), table(n)).prop_map(|(add, mul)| Document::Ring { add, mul }),
            (1u64..8, 1u32..4, prop::collection::vec(prop::collection::vec(0u64..9, 0..5), 0..3)).prop_map(
                |(p, k, f)| Document::Cons(ConsSpec {
                    p,
                    k,
                    level: f.len() + 1,
                    chain: (0..=f.len() as u32).rev().collect(),
                    f,
                })
            ),
        ]
    })
}

/// Re-spaces a canonical document and sprinkles in comments and blank lines.
fn noisy(text: &str, pad: usize) -> String {
    let mut out = String::from("# fixture\n\n");
    for line in text.lines() {
        out.push_str(&" ".repeat(pad % 3));
        out.push_str(&line.split(' ').collect::<Vec<_>>().join(&" ".repeat(1 + pad % 2)));
        out.push_str("  \n");
        if pad % 2 == 0 {
            out.push_str("# between\n");
        }
    }
    out
}

proptest! {
    #[test]
    fn parse_inverts_emit(doc in document()) {
        prop_assert_eq!(parse(&emit(&doc)).unwrap(), doc);
    }

    #[test]
    fn emit_is_stable_under_reparse(doc in document(), pad in 0usize..6) {
        let once = emit(&parse(&noisy(&emit(&doc), pad)).unwrap());
        let twice = emit(&parse(&once).unwrap());
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(once, emit(&doc));
    }
}

#[test]
fn fixtures_are_stable() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let Ok(doc) = parse(&text) else { continue };
        let once = emit(&doc);
        assert_eq!(emit(&parse(&once).unwrap()), once, "{}", path.display());
    }
}
