//! Extensional property checks for the word, map, normalisation, and
//! analysis layers, swept over the catalog systems.

mod common;

use common::sweep;
use proptest::prelude::*;
use qnorm_core::analysis::{
    check_axioms_43, check_domino, minimal_class, minimal_p_class, stabilisation_steps,
    SideClass, StepOutcome,
};
use qnorm_core::catalog::{self, BuildParams};
use qnorm_core::enumerate::{Space, Stratum};
use qnorm_core::normaliser::{
    elements_up_to, invariant_words, left_divides, multiply, normalize, MonoidElement,
    Strategy,
};
use qnorm_core::qmap::{alternating_sequence, delta_sequence, AltStart, QuadMap};
use qnorm_core::words::{append_padding, factor, pad_projection, Alphabet, Letter, Word};
use qnorm_core::{AlternatingKind, Error, PositionSequence};

fn default_systems() -> Vec<catalog::Built> {
    catalog::default_systems()
}

fn genuine() -> impl Iterator<Item = catalog::Built> {
    default_systems().into_iter().filter(|b| b.expected.genuine)
}

fn axiom_passing() -> impl Iterator<Item = catalog::Built> {
    genuine().filter(|b| check_axioms_43(&b.map))
}

// --- words ----------------------------------------------------------------

#[test]
fn projection_ignores_padding_exhaustively() {
    // all alphabets up to four letters with a neutral, words up to length
    // 4, paddings up to 3
    for size in 1..=4usize {
        let mut names: Vec<String> = (0..size - 1).map(|i| format!("g{i}")).collect();
        names.push("e".into());
        let alphabet = Alphabet::with_neutral(names, "e").unwrap();
        let e = alphabet.neutral().unwrap();
        let space = Space::new(size, 4);
        for w in space.words() {
            let base = pad_projection(&w, &alphabet).unwrap();
            for m in 0..=3 {
                let padded = append_padding(&w, m, e);
                assert_eq!(pad_projection(&padded, &alphabet).unwrap(), base);
            }
        }
    }
}

proptest! {
    #[test]
    fn factor_composition(letters in proptest::collection::vec(0u16..5, 0..10),
                          i in 1usize..8, len in 0usize..8,
                          j in 1usize..8, k in 0usize..8) {
        let w = Word::from_letters(&letters.iter().map(|&l| Letter(l)).collect::<Vec<_>>());
        if let Ok(inner) = factor(&w, i, len) {
            match (factor(&inner, j, k), factor(&w, i + j - 1, k)) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
                (Err(_), _) => prop_assert!(j + k > len + 1 || k > len),
                (Ok(_), Err(_)) => prop_assert!(false, "outer factor must exist"),
            }
        }
    }

    #[test]
    fn apply_at_preserves_length(table in proptest::collection::vec((0u16..3, 0u16..3), 9),
                                 letters in proptest::collection::vec(0u16..3, 2..7),
                                 pos in 1usize..6) {
        let alphabet = Alphabet::new(["a", "b", "c"]).unwrap();
        let entries: Vec<_> = table
            .iter()
            .enumerate()
            .map(|(k, &(x, y))| {
                ((Letter((k / 3) as u16), Letter((k % 3) as u16)), (Letter(x), Letter(y)))
            })
            .collect();
        let map = QuadMap::from_entries(alphabet, &entries).unwrap();
        let w = Word::from_letters(&letters.iter().map(|&l| Letter(l)).collect::<Vec<_>>());
        if pos + 1 <= w.len() {
            let out = map.apply_at(&w, pos).unwrap();
            prop_assert_eq!(out.len(), w.len());
        } else {
            prop_assert!(map.apply_at(&w, pos).is_err());
        }
    }
}

// --- qmap -----------------------------------------------------------------

#[test]
fn delta_absorbs_single_positions() {
    // delta_p, delta_p . i and i . delta_p act identically on S^p for
    // every axiom-passing system, p <= 5, i < p
    for built in axiom_passing() {
        let map = &built.map;
        let n = map.alphabet().len();
        for p in 2..=5usize {
            let delta = delta_sequence(p);
            let stratum = Stratum::new(n, p);
            for i in 1..p {
                let before =
                    PositionSequence::new([&[i][..], delta.positions()].concat()).unwrap();
                let after =
                    PositionSequence::new([delta.positions(), &[i][..]].concat()).unwrap();
                for idx in 0..stratum.count() {
                    let w = stratum.word(idx);
                    let base = map.apply_sequence(&w, &delta).unwrap();
                    assert_eq!(
                        map.apply_sequence(&w, &before).unwrap(),
                        base,
                        "{} p={p} i={i}",
                        built.name
                    );
                    assert_eq!(
                        map.apply_sequence(&w, &after).unwrap(),
                        base,
                        "{} p={p} i={i}",
                        built.name
                    );
                }
            }
        }
    }
}

#[test]
fn position_map_generator_relations() {
    for built in genuine() {
        let map = &built.map;
        if !map.is_idempotent() {
            continue;
        }
        let n = map.alphabet().len();
        let s3 = Stratum::new(n, 3);
        let s4 = Stratum::new(n, 4);
        let seq = |v: &[usize]| PositionSequence::new(v.to_vec()).unwrap();
        // ft_11 = ft_1 (idempotency at the word level)
        for idx in 0..s3.count() {
            let w = s3.word(idx);
            assert_eq!(
                map.apply_sequence(&w, &seq(&[1, 1])).unwrap(),
                map.apply_sequence(&w, &seq(&[1])).unwrap()
            );
        }
        // ft_13 = ft_31 (disjoint positions commute)
        for idx in 0..s4.count() {
            let w = s4.word(idx);
            assert_eq!(
                map.apply_sequence(&w, &seq(&[1, 3])).unwrap(),
                map.apply_sequence(&w, &seq(&[3, 1])).unwrap()
            );
        }
        // the braid-like relation holds exactly for the axiom-passing maps
        let axioms = check_axioms_43(map);
        let braid_holds = (0..s3.count()).all(|idx| {
            let w = s3.word(idx);
            let a = map.apply_sequence(&w, &seq(&[1, 2, 1, 2])).unwrap();
            let b = map.apply_sequence(&w, &seq(&[2, 1, 2, 1])).unwrap();
            let c = map.apply_sequence(&w, &seq(&[2, 1, 2])).unwrap();
            a == b && b == c
        });
        assert_eq!(axioms, braid_holds, "{}", built.name);
    }
}

// --- normaliser -----------------------------------------------------------

/// Exhaustive normal-form tables exist (unique normal forms) for each
/// normalising catalog system; the tables power the law checks below.
fn nf_tables(map: &QuadMap, max_len: usize) -> Option<Vec<Vec<u32>>> {
    sweep::exhaustive_tables(map, max_len).ok()
}

#[test]
fn normalisation_laws_on_catalog() {
    for built in genuine() {
        let map = &built.map;
        let n = map.alphabet().len();
        let Some(tables) = nf_tables(map, 5) else {
            // non-normalising systems are diagnosed, not law-checked
            assert!(
                matches!(
                    sweep::exhaustive_tables(map, 5),
                    Err(Error::NotNormalising { .. })
                ),
                "{}",
                built.name
            );
            continue;
        };
        for t in 0..=5usize {
            let nf_t = &tables[t];
            // length preservation is structural: indices stay in stratum
            assert!(nf_t.iter().all(|&x| (x as usize) < nf_t.len()));
            if t == 1 {
                for (idx, &nf) in nf_t.iter().enumerate() {
                    assert_eq!(nf as usize, idx, "{}: letters are fixed", built.name);
                }
            }
            // nm(u nm(w) v) = nm(u w v)
            for i in 0..=t {
                for j in 0..=t - i {
                    let tail = n.pow((t - i - j) as u32);
                    let block = n.pow(j as u32);
                    for idx in 0..nf_t.len() {
                        let inner = (idx / tail) % block;
                        let inner_nf = tables[j][inner] as usize;
                        let idx2 = (idx as i64
                            + (inner_nf as i64 - inner as i64) * tail as i64)
                            as usize;
                        assert_eq!(nf_t[idx2], nf_t[idx], "{}", built.name);
                    }
                }
            }
        }
        // local characterisation: fixed points are exactly the words whose
        // pairs are all invariant
        for t in 0..=5usize {
            let st = Stratum::new(n, t);
            for idx in 0..st.count() {
                let w = st.word(idx);
                assert_eq!(
                    tables[t][idx] as usize == idx,
                    map.is_phi_invariant(&w),
                    "{}",
                    built.name
                );
            }
        }
    }
}

#[test]
fn strategy_agreement_including_leftmost() {
    for built in axiom_passing() {
        let map = &built.map;
        let n = map.alphabet().len();
        let tables = sweep::delta_tables(map, 5);
        for t in 2..=5usize {
            let stratum = Stratum::new(n, t);
            for idx in 0..stratum.count() {
                let w = stratum.word(idx);
                let expect = stratum.word(tables[t][idx] as usize);
                assert_eq!(
                    normalize(map, &w, Strategy::Leftmost).unwrap(),
                    expect,
                    "{}",
                    built.name
                );
            }
        }
    }
}

#[test]
fn neutral_absorption() {
    for built in genuine() {
        let map = &built.map;
        if !map.neutral_verified() {
            continue;
        }
        let e = map.alphabet().neutral().unwrap();
        let n = map.alphabet().len();
        let space = Space::new(n, 4);
        let Some(tables) = nf_tables(map, 5) else { continue };
        let nf = |w: &Word| -> Word {
            let st = Stratum::new(n, w.len());
            st.word(tables[w.len()][st.index(w)] as usize)
        };
        for w in space.words() {
            let we = append_padding(&w, 1, e);
            let mut ew = Word::single(e);
            for l in w.iter() {
                ew.push(l);
            }
            let expect = append_padding(&nf(&w), 1, e);
            assert_eq!(nf(&we), expect, "{}", built.name);
            assert_eq!(nf(&ew), expect, "{}", built.name);
        }
    }
}

#[test]
fn multiplication_is_associative_on_small_elements() {
    for built in genuine() {
        let map = &built.map;
        if map.alphabet().len() > 16 {
            continue; // large4class: the sweep is cubic in element count
        }
        if nf_tables(map, 4).is_none() {
            continue;
        }
        let els = elements_up_to(map, 2);
        let mut products = Vec::with_capacity(els.len() * els.len());
        for x in &els {
            for y in &els {
                products.push(multiply(map, x, y).unwrap());
            }
        }
        let k = els.len();
        for (i, x) in els.iter().enumerate() {
            for (j, _y) in els.iter().enumerate() {
                let xy = &products[i * k + j];
                for (l, z) in els.iter().enumerate() {
                    let yz = &products[j * k + l];
                    let left = multiply(map, xy, z).unwrap();
                    let right = multiply(map, x, yz).unwrap();
                    assert_eq!(left, right, "{}", built.name);
                }
            }
        }
        // unit law
        let g = els.last().unwrap();
        assert_eq!(multiply(map, &MonoidElement::unit(), g).unwrap(), *g);
    }
}

#[test]
fn left_divisibility_examples() {
    // braid monoid: a divides aba with cofactor ba
    let b3 = catalog::build("braid-b3", &BuildParams::default()).unwrap();
    let map = &b3.map;
    let a = map.alphabet();
    let x = MonoidElement::from_letter(map, a.letter("a").unwrap()).unwrap();
    let g = MonoidElement::from_letter(map, a.letter("aba").unwrap()).unwrap();
    let d = left_divides(map, &x, &g, g.degree()).unwrap();
    assert!(d.divides);
    assert_eq!(
        d.witness.unwrap().nf(),
        &a.parse_word("ba").unwrap()
    );
    // multiply examples: a*b = ab, ab*a = aba
    let xb = MonoidElement::from_letter(map, a.letter("b").unwrap()).unwrap();
    assert_eq!(multiply(map, &x, &xb).unwrap().nf(), &a.parse_word("ab").unwrap());
    let ab = MonoidElement::from_letter(map, a.letter("ab").unwrap()).unwrap();
    assert_eq!(
        multiply(map, &ab, &x).unwrap().nf(),
        &a.parse_word("aba").unwrap()
    );
    // mod-e normal forms: a.b collapses to the single simple ab
    assert_eq!(
        qnorm_core::normaliser::normalize_mod_e(map, &a.parse_word("a.b").unwrap()).unwrap(),
        a.parse_word("ab").unwrap()
    );

    // the A~2 display: s1 . s1s2 . s1s3 normalises to s1s2s1 . s2s3
    let a2t = catalog::build("artin-a2t", &BuildParams::default()).unwrap();
    let map = &a2t.map;
    let al = map.alphabet();
    let w = al.parse_word("σ1.σ1σ2.σ1σ3").unwrap();
    assert_eq!(
        qnorm_core::normaliser::normalize_mod_e(map, &w).unwrap(),
        al.parse_word("σ1σ2σ1.σ2σ3").unwrap()
    );
}

// --- analysis -------------------------------------------------------------

#[test]
fn alternation_stabilises_monotonically() {
    // once both-invariant, one more alternation step changes nothing
    for built in genuine() {
        let map = &built.map;
        if !map.is_idempotent() {
            continue;
        }
        let n = map.alphabet().len();
        let stratum = Stratum::new(n, 3);
        for start in [AltStart::Left, AltStart::Right] {
            for idx in 0..stratum.count() {
                let w = stratum.word(idx);
                if let StepOutcome::Stabilised { steps } =
                    stabilisation_steps(map, &w, start, 64)
                {
                    let c = alternating_sequence(AlternatingKind {
                        start,
                        length: steps,
                    });
                    let c1 = alternating_sequence(AlternatingKind {
                        start,
                        length: steps + 1,
                    });
                    assert_eq!(
                        map.apply_sequence(&w, &c).unwrap(),
                        map.apply_sequence(&w, &c1).unwrap(),
                        "{}",
                        built.name
                    );
                }
            }
        }
    }
}

/// ft_{ai_c} = ft_{ai_{c+1}} = ft_{aii_{c+1}} pointwise on S^3.
fn left_class_identities(map: &QuadMap, c: usize) -> bool {
    let n = map.alphabet().len();
    let stratum = Stratum::new(n, 3);
    let ai_c = alternating_sequence(AlternatingKind {
        start: AltStart::Left,
        length: c,
    });
    let ai_c1 = alternating_sequence(AlternatingKind {
        start: AltStart::Left,
        length: c + 1,
    });
    let aii_c1 = alternating_sequence(AlternatingKind {
        start: AltStart::Right,
        length: c + 1,
    });
    (0..stratum.count()).all(|idx| {
        let w = stratum.word(idx);
        let a = map.apply_sequence(&w, &ai_c).unwrap();
        a == map.apply_sequence(&w, &ai_c1).unwrap()
            && a == map.apply_sequence(&w, &aii_c1).unwrap()
    })
}

/// ft_{ai_c} = ft_{aii_c} pointwise on S^3.
fn symmetric_class_identity(map: &QuadMap, c: usize) -> bool {
    let n = map.alphabet().len();
    let stratum = Stratum::new(n, 3);
    let ai = alternating_sequence(AlternatingKind {
        start: AltStart::Left,
        length: c,
    });
    let aii = alternating_sequence(AlternatingKind {
        start: AltStart::Right,
        length: c,
    });
    (0..stratum.count()).all(|idx| {
        let w = stratum.word(idx);
        map.apply_sequence(&w, &ai).unwrap() == map.apply_sequence(&w, &aii).unwrap()
    })
}

#[test]
fn class_characterisation_by_identities() {
    for built in genuine() {
        let map = &built.map;
        if !map.is_idempotent() || map.alphabet().len() > 16 {
            continue;
        }
        let value = minimal_class(map, 64).unwrap();
        match (&value.left.class, &value.right.class) {
            (SideClass::Finite(cl), SideClass::Finite(cr)) => {
                let top = cl.max(cr) + 2;
                for c in 1..=top {
                    assert_eq!(
                        left_class_identities(map, c),
                        c >= *cl,
                        "{} left-class identities at c={c}",
                        built.name
                    );
                }
                let sym = *cl.max(cr);
                assert_eq!(
                    symmetric_class_identity(map, sym),
                    cl == cr || value.within(sym, sym),
                    "{}",
                    built.name
                );
                if cl == cr {
                    assert!(symmetric_class_identity(map, *cl), "{}", built.name);
                    if *cl > 0 {
                        assert!(!symmetric_class_identity(map, cl - 1), "{}", built.name);
                    }
                }
            }
            _ => {
                // never-stabilising systems satisfy no class identity
                for c in 1..=8 {
                    assert!(!left_class_identities(map, c), "{}", built.name);
                }
            }
        }
    }
}

#[test]
fn finite_classes_differ_by_at_most_one() {
    for built in genuine() {
        let map = &built.map;
        if !map.is_idempotent() {
            continue;
        }
        if let Some((l, r)) = minimal_class(map, 64).unwrap().as_finite() {
            assert!(l.abs_diff(r) <= 1, "{}: ({l}, {r})", built.name);
        }
    }
}

#[test]
fn domino_equivalence_on_catalog() {
    for built in genuine() {
        let map = &built.map;
        if !map.is_idempotent() {
            continue;
        }
        assert_eq!(
            check_axioms_43(map),
            check_domino(map),
            "{}",
            built.name
        );
    }
}

#[test]
fn p_class_stays_within_4_3() {
    // axiom-passing systems have p-class within (4,3) for p = 3..6 on
    // alphabets with at most six letters
    for built in axiom_passing() {
        let map = &built.map;
        if map.alphabet().len() > 6 {
            continue;
        }
        for p in 3..=6usize {
            let v = minimal_p_class(map, p, 64).unwrap();
            assert!(
                v.within(4, 3),
                "{} p={p}: {:?}",
                built.name,
                v.as_finite()
            );
        }
    }
}

// --- strategies on pathological systems ------------------------------------

#[test]
fn non_quadratic_system_reports_witness() {
    let built = catalog::build("locnotquad", &BuildParams::default()).unwrap();
    let map = &built.map;
    let w = map.alphabet().parse_word("a.b.a").unwrap();
    match normalize(map, &w, Strategy::Exhaustive) {
        Err(Error::NotNormalising { witness, cycle }) => {
            assert_eq!(witness, "a.b.a");
            assert!(cycle.first() == cycle.last() && cycle.len() >= 3);
        }
        other => panic!("expected a non-normalising diagnostic, got {other:?}"),
    }
}

#[test]
fn invariant_word_enumeration_matches_filter() {
    for built in genuine() {
        let map = &built.map;
        if map.alphabet().len() > 8 {
            continue;
        }
        let n = map.alphabet().len();
        for len in 0..=3usize {
            let listed = invariant_words(map, len, false);
            let stratum = Stratum::new(n, len);
            let expected: Vec<Word> = stratum
                .words()
                .filter(|w| map.is_phi_invariant(w))
                .collect();
            assert_eq!(listed, expected, "{}", built.name);
        }
    }
}
