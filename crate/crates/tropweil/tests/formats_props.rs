use proptest::prelude::*;
use tropweil::formats::{LambdaEntry, LambdaFile, Rat};
use tropweil::matrix_text::{format_rational, parse_rat_matrix, parse_rational, write_rat_matrix};
use tropweil_core::linalg::RatMatrix;
use tropweil_core::qq;

fn ratio() -> impl Strategy<Value = (i64, i64)> {
    (-1000i64..=1000, 1i64..=50)
}

proptest! {
    #[test]
    fn rational_spelling_round_trips((n, d) in ratio()) {
        let x = qq(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&x)), Some(x));
    }

    #[test]
    fn matrix_text_round_trips(rows in 0usize..5, cols in 0usize..5, seed in proptest::collection::vec(ratio(), 25)) {
        let m = RatMatrix::from_rows(
            (0..rows).map(|i| (0..cols).map(|j| { let (n, d) = seed[i * 5 + j]; qq(n, d) }).collect()).collect(),
            cols,
        );
        prop_assert_eq!(parse_rat_matrix(&write_rat_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn lambda_file_round_trips(entries in proptest::collection::btree_map((0usize..1536, 0usize..210), ratio(), 0..20)) {
        let f = LambdaFile {
            d: 1,
            entries: entries
                .iter()
                .filter(|(_, (n, _))| *n != 0)
                .map(|(&(slot, t), &(n, d))| LambdaEntry { slot, t, value: Rat(qq(n, d)) })
                .collect(),
        };
        let text = serde_json::to_string(&f).unwrap();
        let back: LambdaFile = serde_json::from_str(&text).unwrap();
        let lam = back.to_lambda().unwrap();
        prop_assert_eq!(LambdaFile::from_lambda(&lam), f);
    }

    #[test]
    fn garbage_never_panics(s in "\\PC{0,40}") {
        let _ = parse_rat_matrix(&s);
        let _ = serde_json::from_str::<LambdaFile>(&s);
    }
}
