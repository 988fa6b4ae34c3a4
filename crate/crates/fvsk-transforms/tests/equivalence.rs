use fvsk_transforms::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_table(lay: Layout, density: f64, rng: &mut ChaCha8Rng) -> GfTable {
    let mut t = GfTable::zero(lay);
    for x in 0..lay.len() {
        if rng.gen_bool(density) {
            t.flip(x);
        }
    }
    t
}

#[test]
fn conv6_matches_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in 1..=3 {
        let plan = AcycConv::new6(k);
        for _ in 0..70 {
            let a = random_table(plan.layout, 0.3, &mut rng);
            let b = random_table(plan.layout, 0.3, &mut rng);
            let want = conv_naive(&a, &b, |x, y| Some(cw_union_state(x, y)));
            assert_eq!(plan.conv(&a, &b), want, "k={k}");
            assert_eq!(plan.conv(&b, &a), want, "commutative");
        }
    }
}

#[test]
fn conv3_matches_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in [1, 2, 4, 6] {
        let plan = TwConv::new(k);
        for _ in 0..50 {
            let a = random_table(plan.layout, 0.2, &mut rng);
            let b = random_table(plan.layout, 0.2, &mut rng);
            assert_eq!(plan.conv(&a, &b), conv_naive(&a, &b, tw_join_state), "k={k}");
        }
    }
}

#[test]
fn conv18_matches_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 1..=2 {
        let plan = CfvsConv::new(k);
        for _ in 0..60 {
            let a = random_table(plan.inner.layout, 0.1, &mut rng);
            let b = random_table(plan.inner.layout, 0.1, &mut rng);
            let want = conv_naive(&a, &b, |x, y| Some(cfvs_union_state(x, y)));
            assert_eq!(plan.conv(&a, &b), want, "k={k}");
        }
    }
}

#[test]
fn mobius_inverts_zeta() {
    let b = builtin_posets();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in [&b.main, &b.l1, &b.l2, &b.l3, &b.tw, &b.conn] {
        for k in 0..=4 {
            let lay = Layout::new(p.size(), k);
            for _ in 0..40 {
                let t = random_table(lay, 0.5, &mut rng);
                let mut z = t.clone();
                p.zeta(&mut z);
                p.mobius(&mut z);
                assert_eq!(z, t, "{} k={k}", p.name);
            }
        }
    }
}

#[test]
fn zeta_is_down_set_sum() {
    let b = builtin_posets();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [&b.main, &b.l2, &b.tw] {
        let lay = Layout::new(p.size(), 3);
        let t = random_table(lay, 0.3, &mut rng);
        let mut z = t.clone();
        p.zeta(&mut z);
        for x in 0..lay.len() {
            let xd = lay.digits(x);
            let want = (0..lay.len())
                .filter(|&y| lay.digits(y).iter().zip(&xd).all(|(&a, &c)| p.leq[a as usize][c as usize]))
                .filter(|&y| t.get(y))
                .count()
                % 2
                == 1;
            assert_eq!(z.get(x), want);
        }
    }
}

#[test]
fn main_order_decomposes() {
    use fvsk_transforms::poset::cw::*;
    let b = builtin_posets();
    let a_set = [EMPTY, DSTAR, C, CPLUS];
    for y in 0..6u8 {
        for x in 0..6u8 {
            let split = x == CSTAR
                || (a_set.contains(&x) && b.l2.leq[y as usize][x as usize])
                || (x == D && b.l3.leq[y as usize][D as usize]);
            assert_eq!(b.main.leq[y as usize][x as usize], split, "{y} {x}");
        }
    }
}
