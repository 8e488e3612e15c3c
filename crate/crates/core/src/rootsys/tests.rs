use super::*;

fn unit(n: usize, i: usize, s: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = s;
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn pm_pairs(n: usize, scale: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for s in [-scale, scale] {
                for t in [-scale, scale] {
                    out.push(add(&unit(n, i, s), &unit(n, j, t)));
                }
            }
        }
    }
    out
}

fn type_a(n: usize) -> RootSet {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            if i != j {
                out.push(add(&unit(n + 1, i, 1), &unit(n + 1, j, -1)));
            }
        }
    }
    RootSet::new(n + 1, out).unwrap()
}

fn with_units(n: usize, scale: i64, mut base: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    for i in 0..n {
        base.push(unit(n, i, scale));
        base.push(unit(n, i, -scale));
    }
    base
}

fn e8_doubled() -> Vec<Vec<i64>> {
    let mut out = pm_pairs(8, 2);
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            out.push((0..8).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect());
        }
    }
    out
}

fn label(rs: &RootSet) -> String {
    classify(rs).unwrap().label.to_string()
}

#[test]
fn classical_families() {
    assert_eq!(label(&RootSet::new(2, vec![vec![1, -1], vec![-1, 1]]).unwrap()), "A1");
    for n in 1..=5 {
        assert_eq!(label(&type_a(n)), format!("A{n}"));
    }
    for n in 2..=5 {
        let b = RootSet::new(n, with_units(n, 1, pm_pairs(n, 1))).unwrap();
        assert_eq!(label(&b), format!("B{n}"));
        let c = RootSet::new(n, with_units(n, 2, pm_pairs(n, 1))).unwrap();
        let expect = if n == 2 { "B2".to_string() } else { format!("C{n}") };
        assert_eq!(label(&c), expect);
    }
    for n in 4..=6 {
        assert_eq!(label(&RootSet::new(n, pm_pairs(n, 1)).unwrap()), format!("D{n}"));
    }
}

#[test]
fn non_reduced() {
    let bc1 = RootSet::new(1, vec![vec![1], vec![-1], vec![2], vec![-2]]).unwrap();
    let c = classify(&bc1).unwrap();
    assert_eq!(c.label.to_string(), "BC1");
    assert_eq!(c.lengths[&vec![1]], LengthClass::Short);
    assert_eq!(c.lengths[&vec![2]], LengthClass::ExtraLong);
    for n in 2..=4 {
        let bc = RootSet::new(n, with_units(n, 2, with_units(n, 1, pm_pairs(n, 1)))).unwrap();
        let c = classify(&bc).unwrap();
        assert_eq!(c.label.to_string(), format!("BC{n}"));
        assert_eq!(c.classes(), vec![LengthClass::Short, LengthClass::Long, LengthClass::ExtraLong]);
        assert_eq!(c.lengths[&unit(n, 0, 1)], LengthClass::Short);
        assert_eq!(c.lengths[&add(&unit(n, 0, 1), &unit(n, 1, 1))], LengthClass::Long);
    }
}

#[test]
fn exceptional_families() {
    let e8 = e8_doubled();
    assert_eq!(label(&RootSet::new(8, e8.clone()).unwrap()), "E8");
    let theta = add(&unit(8, 0, 2), &unit(8, 1, 2));
    let e7: Vec<Vec<i64>> = e8.iter().filter(|r| dot(r, &theta) == 0).cloned().collect();
    assert_eq!(label(&RootSet::new(8, e7).unwrap()), "E7");
    let phi = add(&unit(8, 1, 2), &unit(8, 2, -2));
    let e6: Vec<Vec<i64>> = e8.iter().filter(|r| dot(r, &theta) == 0 && dot(r, &phi) == 0).cloned().collect();
    assert_eq!(label(&RootSet::new(8, e6).unwrap()), "E6");

    let mut f4 = with_units(4, 2, pm_pairs(4, 2));
    for mask in 0u32..16 {
        f4.push((0..4).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect());
    }
    let c = classify(&RootSet::new(4, f4).unwrap()).unwrap();
    assert_eq!(c.label.to_string(), "F4");
    assert_eq!(c.lengths.values().filter(|l| **l == LengthClass::Short).count(), 24);

    let mut g2 = type_a(2).roots().iter().cloned().collect::<Vec<_>>();
    for i in 0..3 {
        let mut v = vec![-1; 3];
        v[i] = 2;
        g2.push(v.clone());
        g2.push(v.iter().map(|x| -x).collect());
    }
    assert_eq!(label(&RootSet::new(3, g2).unwrap()), "G2");
}

#[test]
fn rejections() {
    assert_eq!(classify(&RootSet::new(2, Vec::<Vec<i64>>::new()).unwrap()), Err(RootError::Empty));
    assert_eq!(classify(&RootSet::new(1, vec![vec![1]]).unwrap()), Err(RootError::NotSymmetric));
    // D2 = A1 x A1
    let d2 = RootSet::new(2, pm_pairs(2, 1)).unwrap();
    assert_eq!(classify(&d2), Err(RootError::Reducible));
    let bad = RootSet::new(2, vec![vec![1, 0], vec![-1, 0], vec![1, 1], vec![-1, -1]]).unwrap();
    assert!(matches!(classify(&bad), Err(RootError::NotCrystallographic(..))));
    assert!(RootSet::new(2, vec![vec![0, 0]]).is_err());
}

#[test]
fn coordinates_in_simple_roots() {
    let (basis, coords) = root_lattice_coords(&RootSet::new(1, vec![vec![1], vec![-1], vec![2], vec![-2]]).unwrap()).unwrap();
    assert_eq!(basis, vec![vec![1]]);
    assert_eq!(coords[&vec![2]], vec![2]);
    let c2 = RootSet::new(2, with_units(2, 2, pm_pairs(2, 1))).unwrap();
    let (basis, coords) = root_lattice_coords(&c2).unwrap();
    assert_eq!(basis.len(), 2);
    assert_eq!(coords.len(), 8);
}

#[test]
fn label_parsing() {
    for s in ["A1", "B2", "C3", "D4", "E6", "E7", "E8", "F4", "G2", "BC1", "BC2"] {
        assert_eq!(s.parse::<RootTypeLabel>().unwrap().to_string(), s);
    }
    for s in ["C2", "B1", "D3", "E5", "X1", "", "A"] {
        assert!(s.parse::<RootTypeLabel>().is_err(), "{s}");
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn catalogue() -> Vec<RootSet> {
        vec![
            type_a(3),
            RootSet::new(3, with_units(3, 1, pm_pairs(3, 1))).unwrap(),
            RootSet::new(3, with_units(3, 2, pm_pairs(3, 1))).unwrap(),
            RootSet::new(4, pm_pairs(4, 1)).unwrap(),
            RootSet::new(2, with_units(2, 2, with_units(2, 1, pm_pairs(2, 1)))).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn invariant_under_coordinate_permutation_and_negation(seed in 0u64..1000, which in 0usize..5, neg in any::<bool>()) {
            let rs = &catalogue()[which];
            let n = rs.ambient_dim();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                perm.swap(i, (s % (i as u64 + 1)) as usize);
                s /= i as u64 + 1;
            }
            let sign = if neg { -1 } else { 1 };
            let moved = RootSet::new(n, rs.roots().iter().map(|r| perm.iter().map(|&p| sign * r[p]).collect())).unwrap();
            prop_assert_eq!(classify(rs).unwrap().label, classify(&moved).unwrap().label);
        }
    }
}
