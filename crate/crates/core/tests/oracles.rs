//! Checks against values frozen by `tools/oracles.py`.

use std::collections::BTreeSet;
use std::sync::Arc;

use dualcheck::arith::UnitRoot;
use dualcheck::forms::{fs_indicator, invariant_form_space, twisted_fs_indicator, ConjDual};
use dualcheck::group::{battery, index_two_pairs, quaternion8, symmetric};
use dualcheck::local::{lambda_constant, AddChar, ExtKind, LocalField, LocalSetup, MultChar};
use dualcheck::rep::{decompose, irreducibles, Representation};
use num_integer::Integer;
use serde_json::Value;

fn fixture() -> Value {
    let text = include_str!("fixtures/derived.json");
    serde_json::from_str(text).unwrap()
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

fn as_int(c: &dualcheck::arith::Cyclotomic) -> i64 {
    c.to_integer().unwrap().try_into().unwrap()
}

const NAMES: [&str; 7] = ["C4", "Q8", "D4", "S3", "D6", "SD16", "S4"];

#[test]
fn battery_group_data() {
    let fx = fixture();
    for (g, name) in battery().into_iter().zip(NAMES) {
        let want = &fx["groups"][name];
        assert_eq!(g.order() as i64, want["order"].as_i64().unwrap(), "{name}");
        assert_eq!(index_two_pairs(&g).len() as i64, want["index_two"].as_i64().unwrap(), "{name}");
        let mut sizes: Vec<i64> = g.conjugacy_classes().iter().map(|c| c.len() as i64).collect();
        sizes.sort();
        assert_eq!(sizes, ints(&want["class_sizes"]), "{name}");
    }
    assert!(fx["groups"]["Q8"]["valid"].as_bool().unwrap());
}

fn two_dim(g: &Arc<dualcheck::group::FiniteGroup>) -> Representation {
    irreducibles(g).unwrap().into_iter().find(|r| r.degree() == 2).unwrap()
}

#[test]
fn quaternion_character_and_forms() {
    let fx = &fixture()["characters"];
    let g = Arc::new(quaternion8());
    let rho = two_dim(&g);
    let chi = rho.character();
    let mut traces: Vec<i64> = g.elements().map(|x| as_int(chi.at(x))).collect();
    traces.sort();
    assert_eq!(traces, ints(&fx["q8_two_dim_trace_multiset"]));
    let norm = dualcheck::group::char_inner(&chi, &chi).unwrap();
    assert_eq!(as_int(&norm), fx["q8_two_dim_norm"].as_i64().unwrap());
    assert_eq!(as_int(&fs_indicator(&chi)), fx["q8_two_dim_fs"].as_i64().unwrap());

    for (g, key) in [(g, "q8_two_dim_forms"), (battery()[2].clone(), "d4_two_dim_forms")] {
        let space = invariant_form_space(&two_dim(&g));
        let want = fx[key].as_array().unwrap();
        assert_eq!(space.len() as i64, want[0].as_i64().unwrap());
        let b = &space[0];
        let kind = if b.transpose() == *b {
            "symmetric"
        } else if b.transpose() == -b {
            "alternating"
        } else {
            "neither"
        };
        assert_eq!(kind, want[1].as_str().unwrap());
    }
}

#[test]
fn regular_representation_of_s3() {
    let g = Arc::new(symmetric(3));
    let irr = irreducibles(&g).unwrap();
    let mut mult: Vec<i64> = decompose(&Representation::regular(g), &irr).unwrap().into_iter().map(|m| m as i64).collect();
    mult.sort();
    assert_eq!(mult, ints(&fixture()["characters"]["s3_regular"]));
}

#[test]
fn cyclic_subgroup_indicators() {
    let fx = fixture();
    let want = &fx["characters"]["cyclic_index_two_indicators"];
    for (g, name, h_exp) in [(battery()[1].clone(), "Q8", 4), (battery()[2].clone(), "D4", 4), (battery()[0].clone(), "C4", 2)] {
        let pair = index_two_pairs(&g)
            .into_iter()
            .find(|p| p.h().is_abelian() && p.h().exponent() == h_exp && p.h().order() == h_exp)
            .unwrap();
        let mut got: Vec<Vec<i64>> = irreducibles(pair.h())
            .unwrap()
            .iter()
            .map(|r| {
                let chi = r.character();
                vec![as_int(&fs_indicator(&chi)), as_int(&twisted_fs_indicator(&chi, &pair).unwrap())]
            })
            .collect();
        got.sort();
        let want: Vec<Vec<i64>> = want[name].as_array().unwrap().iter().map(ints).collect();
        assert_eq!(got, want, "{name}");
    }
}

fn sorted_orders(f: &Arc<LocalField>, k: u32) -> Vec<i64> {
    let mut v: Vec<i64> = f.units(k).unwrap().orders().iter().map(|&o| o as i64).collect();
    v.sort();
    v
}

#[test]
fn unit_group_orders() {
    let fx = fixture();
    let want = &fx["local"]["unit_orders"];
    let cases = [
        ("base_p5_k3", LocalField::base(5, 3).unwrap(), 3),
        ("base_p7_k2", LocalField::base(7, 2).unwrap(), 2),
        ("unramified_p3_k2", LocalField::extension(3, ExtKind::Unramified, 2).unwrap(), 2),
        ("ramified_pi_p3_k4", LocalField::extension(3, ExtKind::RamifiedPi, 2).unwrap(), 4),
        ("ramified_upi_p5_k3", LocalField::extension(5, ExtKind::RamifiedUPi, 2).unwrap(), 3),
    ];
    for (key, f, k) in cases {
        assert_eq!(sorted_orders(&f, k), ints(&want[key]), "{key}");
    }
}

#[test]
fn conductor_counts() {
    let fx = fixture();
    for p in [3, 5, 7] {
        let f = LocalField::base(p, 2).unwrap();
        let chars = MultChar::enumerate(&f, 2, &[UnitRoot::ONE]).unwrap();
        let counts: Vec<i64> = (0..=2).map(|a| chars.iter().filter(|c| c.conductor() == a).count() as i64).collect();
        assert_eq!(counts, ints(&fx["local"]["conductor_counts"][p.to_string()]));
    }
}

#[test]
fn frobenius_on_residue_units() {
    let fx = fixture();
    for p in [3, 5, 7] {
        let e = LocalField::extension(p, ExtKind::Unramified, 1).unwrap();
        let want = fx["local"]["frobenius_exponent"][p.to_string()].as_i64().unwrap() as u64;
        // sigma acts on residue units as the p-th power map
        let mu = MultChar::enumerate(&e, 1, &[UnitRoot::ONE])
            .unwrap()
            .into_iter()
            .find(|m| unit_order(m) == (p * p - 1) as u64)
            .unwrap();
        let mut pow = MultChar::trivial(&e);
        for _ in 0..want {
            pow = pow.mul(&mu);
        }
        assert_eq!(mu.sigma(), pow);
    }
}

fn unit_order(m: &MultChar) -> u64 {
    let f = m.field();
    let orders = f.units(f.level()).unwrap().orders().to_vec();
    m.exponents().iter().zip(orders).fold(1, |acc, (&e, o)| acc.lcm(&(o / e.gcd(&o))))
}

#[test]
fn unramified_tame_conjugate_symplectic() {
    let fx = fixture();
    let s = LocalSetup::new(3, 1).unwrap();
    let e = s.ext(ExtKind::Unramified);
    let pis: Vec<UnitRoot> = (0..4).map(|k| UnitRoot::new(k, 4)).collect();
    let mut got: Vec<i64> = MultChar::enumerate(e, 1, &pis)
        .unwrap()
        .into_iter()
        .filter(|m| s.conj_duality_of_char(m).unwrap() == ConjDual::ConjSymplectic)
        .map(|m| unit_order(&m) as i64)
        .collect();
    got.sort();
    assert_eq!(got, ints(&fx["local"]["unramified_tame_conj_symplectic_p3"]));
}

#[test]
fn ramified_conjugate_symplectic_conductors() {
    let fx = fixture();
    let pis: Vec<UnitRoot> = (0..4).map(|k| UnitRoot::new(k, 4)).collect();
    for p in [3, 5] {
        let s = LocalSetup::new(p, 1).unwrap();
        for k in [ExtKind::RamifiedPi, ExtKind::RamifiedUPi] {
            let got: BTreeSet<i64> = MultChar::enumerate(s.ext(k), 2, &pis)
                .unwrap()
                .into_iter()
                .filter(|m| s.conj_duality_of_char(m).unwrap() == ConjDual::ConjSymplectic)
                .map(|m| m.conductor() as i64)
                .collect();
            let key = format!("{}_p{p}", k.as_str());
            let want: BTreeSet<i64> = ints(&fx["local"]["ramified_conj_symplectic_conductors"][&key]).into_iter().collect();
            assert_eq!(got, want, "{key}");
        }
    }
}

#[test]
fn tame_quadratic_root_numbers() {
    let fx = fixture();
    for p in [3, 5] {
        let s = LocalSetup::new(p, 2).unwrap();
        let psi = AddChar::standard(s.base(), 0);
        for w in [1i64, -1] {
            let at = if w == 1 { UnitRoot::ONE } else { UnitRoot::MINUS_ONE };
            let chi = MultChar::enumerate(s.base(), 1, &[at])
                .unwrap()
                .into_iter()
                .find(|c| c.conductor() == 1 && c.is_quadratic())
                .unwrap();
            let eps = s.epsilon(&chi, &psi).unwrap().as_unit_root().unwrap();
            let want = &fx["local"]["tame_quadratic_epsilon"][format!("p{p}_pi{w}")];
            assert_eq!(eps.to_string(), want.as_str().unwrap());
        }
        for k in [ExtKind::RamifiedPi, ExtKind::RamifiedUPi] {
            let lam = lambda_constant(s.ext(k), &psi).unwrap().as_unit_root().unwrap();
            let want = &fx["local"]["ramified_lambda"][format!("{}_p{p}", k.as_str())];
            assert_eq!(lam.to_string(), want.as_str().unwrap());
        }
    }
}
