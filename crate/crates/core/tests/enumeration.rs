use latfree::egyptian::{collect_a, count_a, enumerate_a, growth_report, EgyptianTuple};
use num_traits::ToPrimitive;

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Every sorted tuple with entries up to `cap`, no pruning at all.
fn unpruned(d: usize, cap: u64) -> Vec<Vec<u64>> {
    fn rec(d: usize, cap: u64, lo: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == d {
            let (mut p, mut q) = (0u128, 1u128);
            for &x in cur.iter() {
                p = p * x as u128 + q;
                q *= x as u128;
                let g = gcd(p, q);
                p /= g;
                q /= g;
            }
            if p == q {
                out.push(cur.clone());
            }
            return;
        }
        for x in lo..=cap {
            cur.push(x);
            rec(d, cap, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, cap, 1, &mut Vec::new(), &mut out);
    out
}

/// Textbook recursion on the remaining fraction `p/q`, solving the last slot
/// directly. Shares nothing with the library search.
fn loop_oracle(d: usize) -> u64 {
    fn rec(k: usize, p: u128, q: u128, lo: u128) -> u64 {
        if k == 1 {
            return u64::from(p == 1 && q >= lo);
        }
        let start = lo.max(q.div_ceil(p));
        let end = (k as u128 * q) / p;
        let mut n = 0;
        for x in start..=end {
            let (np, nq) = (p * x - q, q * x);
            if np == 0 {
                continue;
            }
            let g = gcd(np, nq);
            n += rec(k - 1, np / g, nq / g, x);
        }
        n
    }
    rec(d, 1, 1, 1)
}

fn as_u64(t: &EgyptianTuple) -> Vec<u64> {
    t.components().iter().map(|x| x.to_u64().unwrap()).collect()
}

#[test]
fn small_dimensions_match_unpruned_search() {
    // 42 is the largest entry of any tuple in A_4.
    for d in 1..=4 {
        let got: Vec<Vec<u64>> = collect_a(d).unwrap().iter().map(as_u64).collect();
        assert_eq!(got, unpruned(d, 42), "d = {d}");
    }
}

#[test]
fn counts_match_loop_oracle() {
    let expected = [1, 1, 3, 14, 147, 3462];
    for (d, &n) in (1..=6).zip(&expected) {
        assert_eq!(loop_oracle(d), n);
        assert_eq!(count_a(d).unwrap(), n, "d = {d}");
    }
}

#[test]
fn sequential_and_parallel_counts_agree() {
    for d in 1..=6 {
        let seq = enumerate_a(d, |_| {}).unwrap();
        assert_eq!(seq, count_a(d).unwrap());
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(3)
            .build()
            .unwrap();
        assert_eq!(pool.install(|| count_a(d)).unwrap(), seq);
    }
}

#[test]
fn output_is_sorted_and_duplicate_free() {
    let all = collect_a(5).unwrap();
    assert!(all.windows(2).all(|w| w[0] < w[1]));
    for t in &all {
        assert!(t.components().windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(EgyptianTuple::parse_line(&t.to_line()).unwrap(), *t);
    }
}

#[test]
fn growth_table() {
    let rows = growth_report(4).unwrap();
    assert_eq!(
        rows.iter().map(|r| r.count).collect::<Vec<_>>(),
        [1, 1, 3, 14]
    );
    assert_eq!(rows[0].csv_line(), "1,1,,");
    assert_eq!(rows[1].csv_line(), "2,1,,2.8854");
}
