//! H^2(Z, U(1)) against brute-force enumeration of normalized cocycles with
//! values in (1/n)Z/Z modulo coboundaries of (1/n^2)Z/Z-valued functions,
//! computed with plain integers.

use gerbe_core::centers::h2_u1;
use gerbe_core::GroupData;

fn brute_force_order(mul: &[Vec<usize>], n: u64) -> u64 {
    let g = mul.len();
    let free: Vec<(usize, usize)> = (1..g).flat_map(|a| (1..g).map(move |b| (a, b))).collect();
    let total = n.pow(free.len() as u32);
    let mut alpha = vec![vec![0u64; g]; g];
    let mut cocycles = 0u64;
    for code in 0..total {
        let mut c = code;
        for &(a, b) in &free {
            alpha[a][b] = c % n;
            c /= n;
        }
        let ok = (0..g).all(|a| {
            (0..g).all(|b| {
                (0..g).all(|d| {
                    (alpha[b][d] + alpha[a][mul[b][d]]) % n == (alpha[mul[a][b]][d] + alpha[a][b]) % n
                })
            })
        });
        cocycles += ok as u64;
    }
    // Coboundaries of normalized f: Z -> (1/n^2)Z/Z that land in (1/n)Z/Z.
    let m = n * n;
    let mut boundaries = std::collections::HashSet::new();
    let mut f = vec![0u64; g];
    for code in 0..m.pow(g as u32 - 1) {
        let mut c = code;
        for x in f.iter_mut().skip(1) {
            *x = c % m;
            c /= m;
        }
        let df: Vec<u64> = free
            .iter()
            .map(|&(a, b)| (f[a] + f[b] + m - f[mul[a][b]]) % m)
            .collect();
        if df.iter().all(|x| x % n == 0) {
            boundaries.insert(df);
        }
    }
    cocycles / boundaries.len() as u64
}

#[test]
fn small_centers_agree_with_enumeration() {
    for (name, expected) in [("A1", 1), ("A2", 1), ("A3", 1), ("D4", 2)] {
        let d = GroupData::new(name.parse().unwrap());
        let z = d.full();
        let table = z.table();
        let mul: Vec<Vec<usize>> = (0..z.order()).map(|a| (0..z.order()).map(|b| table.mul(a, b)).collect()).collect();
        let oracle = brute_force_order(&mul, z.order() as u64);
        assert_eq!(oracle, expected, "{name}");
        assert_eq!(h2_u1(z).unwrap().order(), oracle, "{name}");
    }
}

#[test]
fn trivial_and_too_large() {
    let d = GroupData::new("E8".parse().unwrap());
    assert_eq!(h2_u1(d.full()).unwrap().order(), 1);
    let a16 = GroupData::new("A16".parse().unwrap());
    assert!(h2_u1(a16.full()).is_err());
}
