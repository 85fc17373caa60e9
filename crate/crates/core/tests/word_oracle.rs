//! Structural word queries against brute-force sliding windows over long
//! materialized prefixes.

use std::collections::HashSet;

use growth_forge::word::{letters_from_str, InfiniteWord, Letter, RunSequence, RunWord};
use proptest::prelude::*;

fn materialize(w: &InfiniteWord, k: u32) -> Vec<Letter> {
    w.build_prefix(k).unwrap().to_letters(1 << 24).unwrap()
}

fn window_set(text: &[Letter], l: usize) -> HashSet<&[Letter]> {
    text.windows(l).collect()
}

fn specs() -> Vec<RunSequence> {
    vec![
        RunSequence::Geometric { base: 2 },
        RunSequence::Geometric { base: 3 },
        "list:1,3,4,9,20,41,90,200,500,1000,3000,9000,20000".parse().unwrap(),
    ]
}

#[test]
fn complexity_matches_sliding_windows() {
    for spec in specs() {
        let w = InfiniteWord::new(spec.clone());
        let text = materialize(&w, 12);
        let bigger = materialize(&w, 13);
        for l in 1..=60 {
            let set = window_set(&text, l);
            assert_eq!(set, window_set(&bigger, l), "{spec} oracle prefix not stable at {l}");
            assert_eq!(w.factor_complexity(l as u64).unwrap(), set.len() as u64, "{spec} l={l}");
        }
    }
}

#[test]
fn enumerated_factors_are_the_windows() {
    let w = InfiniteWord::new(RunSequence::Geometric { base: 2 });
    let text = materialize(&w, 12);
    for l in [1usize, 5, 17, 40] {
        let mut expected: Vec<Vec<Letter>> = window_set(&text, l).into_iter().map(<[Letter]>::to_vec).collect();
        expected.sort();
        assert_eq!(w.factors(l as u64).unwrap(), expected);
    }
}

#[test]
fn max_x_matches_window_maxima() {
    let w = InfiniteWord::new(RunSequence::Geometric { base: 2 });
    let text = materialize(&w, 14);
    let mut prefix = vec![0u32; text.len() + 1];
    for (i, &l) in text.iter().enumerate() {
        prefix[i + 1] = prefix[i] + u32::from(l == Letter::X);
    }
    for l in 1..=512usize {
        let best = (0..=text.len() - l).map(|i| prefix[i + l] - prefix[i]).max().unwrap();
        assert_eq!(w.max_x_occurrences(l as u64).unwrap(), u64::from(best), "l={l}");
    }
}

#[test]
fn membership_routes_agree_with_windows() {
    for spec in specs() {
        let w = InfiniteWord::new(spec);
        let text = materialize(&w, 12);
        for l in [3usize, 8, 13, 24] {
            let set = window_set(&text, l);
            for mask in 0..(1u32 << l.min(13)) {
                let word: Vec<Letter> = (0..l)
                    .map(|b| if (mask >> (b % 13)) & 1 == 1 { Letter::Y } else { Letter::X })
                    .collect();
                let expected = set.contains(word.as_slice());
                assert_eq!(w.is_factor_letters(&word).unwrap(), expected);
                assert_eq!(w.is_factor_materialized(&word).unwrap(), expected);
            }
        }
    }
}

#[test]
fn gap_sequence_follows_ruler_pattern() {
    let w = InfiniteWord::new(RunSequence::Geometric { base: 2 });
    let v = w.build_prefix(6).unwrap();
    let gaps: Vec<String> = v
        .runs()
        .iter()
        .filter(|(l, _)| *l == Letter::Y)
        .map(|(_, m)| m.to_string())
        .collect();
    let expected: Vec<String> = (1..32).map(|j| w.gap(j).unwrap().to_string()).collect();
    assert_eq!(gaps, expected);
}

#[test]
fn doubling_structure() {
    // 2^d occurrences of x y^{q_i} x inside a prefix force x y^{q_{i+d}} x inside it
    let w = InfiniteWord::new(RunSequence::Geometric { base: 2 });
    let text = materialize(&w, 10);
    let occurrences = |gap: usize| {
        let mut pat = vec![Letter::X];
        pat.extend(std::iter::repeat_n(Letter::Y, gap));
        pat.push(Letter::X);
        text.windows(pat.len()).filter(|win| *win == pat.as_slice()).count()
    };
    for i in 1..=4u32 {
        let n = occurrences(1 << i);
        let d = (n as f64).log2().floor() as u32;
        if i + d <= 9 {
            assert!(occurrences(1 << (i + d)) > 0, "i={i} d={d}");
        }
    }
}

#[test]
fn complexity_is_aperiodic() {
    let w = InfiniteWord::new(RunSequence::Geometric { base: 2 });
    let mut prev = 1;
    for l in 1..=300u64 {
        let p = w.factor_complexity(l).unwrap();
        assert!(p > prev && p > l, "l={l}");
        prev = p;
    }
}

proptest! {
    #[test]
    fn factors_are_factorial_and_extendable(start in 0usize..5000, len in 1usize..40) {
        let w = InfiniteWord::new(RunSequence::Geometric { base: 2 });
        let text = materialize(&w, 12);
        let word = &text[start..start + len];
        prop_assert!(w.is_factor_letters(word).unwrap());
        for i in 0..len {
            for j in i + 1..=len {
                prop_assert!(w.is_factor_letters(&word[i..j]).unwrap());
            }
        }
        let mut wx = word.to_vec();
        wx.push(Letter::X);
        let mut wy = word.to_vec();
        wy.push(Letter::Y);
        prop_assert!(w.is_factor_letters(&wx).unwrap() || w.is_factor_letters(&wy).unwrap());
    }

    #[test]
    fn run_form_agrees_with_letters(text in "[xy]{1,30}") {
        let w = InfiniteWord::new(RunSequence::Geometric { base: 3 });
        let letters = letters_from_str(&text).unwrap();
        let runs = RunWord::from_letters(&letters);
        prop_assert_eq!(runs.to_string().parse::<RunWord>().unwrap(), runs.clone());
        prop_assert_eq!(w.is_factor(&runs).unwrap(), w.is_factor_materialized(&letters).unwrap());
    }
}
