use obsroute::corpus::random_instance;
use obsroute::rat;
use obsroute_cli::io::{format_rational, parse_rational, InstanceFile, Metadata};
use proptest::prelude::*;

proptest! {
    #[test]
    fn rationals_survive_text(n in any::<i64>(), d in 1i64..i64::MAX) {
        let q = rat(n, d);
        let s = format_rational(&q);
        prop_assert_eq!(parse_rational(&s).unwrap(), q);
        prop_assert_eq!(format_rational(&parse_rational(&s).unwrap()), s);
    }

    #[test]
    fn instances_survive_json(seed in 0u64..100_000, n in 1usize..6) {
        let inst = random_instance(seed, n, 30, 20.0).unwrap();
        let f = InstanceFile::from_instance(&inst, Metadata { generator: "random".into(), seed: Some(seed), ..Default::default() });
        let text = f.to_json();
        let back = InstanceFile::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        let inst2 = back.to_instance().unwrap();
        prop_assert_eq!(inst2.obstacles(), inst.obstacles());
    }
}
