#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

pub fn corpus(kind: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(kind);
    let mut files: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "gfy"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap()))
        .collect();
    files.sort();
    files
}

/// Complete flags in `F_p^n` counted by closing vector sets under
/// addition and scaling, one vector at a time.
pub fn brute_force_flag_count(n: usize, p: u64) -> usize {
    let size = (p as usize).pow(n as u32);
    let digits = |v: usize| -> Vec<u64> { (0..n).map(|i| (v / (p as usize).pow(i as u32)) as u64 % p).collect() };
    let index = |d: &[u64]| -> usize { d.iter().rev().fold(0, |acc, &x| acc * p as usize + x as usize) };
    let close = |set: &[bool], v: usize| -> Vec<bool> {
        let mut out = set.to_vec();
        let dv = digits(v);
        for (w, &inside) in set.iter().enumerate() {
            if inside {
                let dw = digits(w);
                for k in 0..p {
                    let sum: Vec<u64> = dw.iter().zip(&dv).map(|(a, b)| (a + k * b) % p).collect();
                    out[index(&sum)] = true;
                }
            }
        }
        out
    };
    fn walk(level: usize, n: usize, set: Vec<bool>, chain: &mut Vec<Vec<bool>>, seen: &mut std::collections::BTreeSet<Vec<Vec<bool>>>, close: &dyn Fn(&[bool], usize) -> Vec<bool>) {
        if level == n {
            seen.insert(chain.clone());
            return;
        }
        for v in 0..set.len() {
            if !set[v] {
                let next = close(&set, v);
                chain.push(next.clone());
                walk(level + 1, n, next, chain, seen, close);
                chain.pop();
            }
        }
    }
    let mut zero = vec![false; size];
    zero[0] = true;
    let mut seen = std::collections::BTreeSet::new();
    walk(0, n, zero, &mut Vec::new(), &mut seen, &close);
    seen.len()
}
