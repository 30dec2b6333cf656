#![allow(dead_code)]

use std::path::PathBuf;

use multiset_gray::MultisetSpec;

pub fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Tab-separated rows, split into fields.
pub fn fixture_rows(name: &str) -> Vec<Vec<String>> {
    fixture(name)
        .lines()
        .filter(|l| !l.is_empty())
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

/// Every multiplicity vector (compositions of `n`) for `1 <= n <= max_n`.
pub fn all_specs(max_n: usize) -> Vec<MultisetSpec> {
    fn compositions(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for m in 1..=rest {
            prefix.push(m);
            compositions(rest - m, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        compositions(n, &mut Vec::new(), &mut out);
    }
    out.into_iter()
        .map(|m| MultisetSpec::new(m).unwrap())
        .collect()
}

/// The generator steps written directly from their numbered description:
/// the target is the nearest larger element in the facing direction, and a
/// swap needs every direction in between to match the mover's.
pub fn prose_generator(spec: &MultisetSpec) -> Vec<Vec<u32>> {
    let k = spec.types() as u32;
    let n = spec.len();
    let mut p = spec.sorted_arrangement().0;
    let mut v = vec![1i8; n];
    let mut out = vec![p.clone()];
    'step2: loop {
        let mut t = 1u32;
        let mut m_bound = n;
        loop {
            let Some(m) = (0..m_bound).rev().find(|&i| p[i] == t) else {
                t += 1;
                if t > k {
                    return out;
                }
                m_bound = n;
                continue;
            };
            let target = if v[m] == 1 {
                (m + 1..n).find(|&i| p[i] > t)
            } else {
                (0..m).rev().find(|&i| p[i] > t)
            };
            if let Some(nn) = target {
                let (lo, hi) = (m.min(nn), m.max(nn));
                if (lo + 1..hi).all(|i| v[i] == v[m]) {
                    p.swap(m, nn);
                    v.swap(m, nn);
                    for d in &mut v[lo + 1..hi] {
                        *d = 1;
                    }
                    out.push(p.clone());
                    continue 'step2;
                }
            }
            v[m] = -v[m];
            m_bound = m;
        }
    }
}
