use po_arena::optimizers::make_baseline;
use po_arena::{GameId, ParamVector, Seed};
use po_arena_cli::StrategyFile;
use proptest::prelude::*;
use rand::Rng;

fn round_trip(p: &ParamVector) -> ParamVector {
    StrategyFile::parse(&StrategyFile::new(p.clone()).render()).unwrap().params
}

fn same_bits(a: &ParamVector, b: &ParamVector) -> bool {
    a.game() == b.game() && a.values().iter().zip(b.values()).all(|(x, y)| x.to_bits() == y.to_bits())
}

proptest! {
    #[test]
    fn arbitrary_finite_values(bits in prop::collection::vec(any::<u64>(), 1..=1)) {
        let v = f64::from_bits(bits[0]);
        prop_assume!(v.is_finite());
        let p = ParamVector::new(GameId::Toy, vec![v]).unwrap();
        prop_assert!(same_bits(&p, &round_trip(&p)));
    }

    #[test]
    fn metadata_survives(key in "[a-z][a-z0-9_]{0,8}", value in "[ -~]{0,30}") {
        let p = ParamVector::new(GameId::Pig, vec![1.5]).unwrap();
        let f = StrategyFile::new(p).with_meta(&key, value.clone());
        let back = StrategyFile::parse(&f.render()).unwrap();
        prop_assert_eq!(back.meta(&key), Some(value.trim()));
        prop_assert_eq!(back, f);
    }
}

#[test]
fn hundred_thousand_vectors_per_game() {
    let in_scope = [
        GameId::War, GameId::War4, GameId::Batawaf, GameId::Batawaf4, GameId::GuessWho, GameId::GuessWho5,
        GameId::Morra, GameId::Nim, GameId::Pig, GameId::PhantomTtt,
    ];
    let mut rng = Seed(2024).rng();
    for game in in_scope {
        for i in 0..100_000u64 {
            let mut p = make_baseline(game, Seed(i));
            if i % 7 == 0 {
                // Spread magnitudes well beyond the unit Gaussian.
                let scale = 10f64.powi(rng.random_range(-300..300));
                p = ParamVector::new(game, p.values().iter().map(|v| v * scale).collect()).unwrap();
            }
            assert!(same_bits(&p, &round_trip(&p)), "{game} vector {i}");
        }
    }
}
