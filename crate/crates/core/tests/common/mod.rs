#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_bigint::BigInt;

use eqpoincare::job::Job;
use eqpoincare::resolution::{ComponentSpec, GraphDescription};
use eqpoincare::{CharSeries, ComponentId, IntSeries};
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture(name: &str) -> Job {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture readable");
    Job::from_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Dual graph of a random sequence of point blow-ups starting from one `(−1)` curve.
///
/// Each step blows up either a free point of a component or an intersection
/// point of two components.
pub fn random_blowup_graph(rng: &mut impl Rng, steps: usize) -> GraphDescription {
    let mut self_int: Vec<i64> = vec![-1];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for _ in 0..steps {
        let new = self_int.len();
        if !edges.is_empty() && rng.gen_bool(0.5) {
            let k = rng.gen_range(0..edges.len());
            let (a, b) = edges.swap_remove(k);
            self_int[a] -= 1;
            self_int[b] -= 1;
            edges.push((a, new));
            edges.push((b, new));
        } else {
            let a = rng.gen_range(0..self_int.len());
            self_int[a] -= 1;
            edges.push((a, new));
        }
        self_int.push(-1);
    }
    let id = |i: usize| ComponentId(i as u32 + 1);
    GraphDescription {
        components: self_int
            .iter()
            .enumerate()
            .map(|(i, &s)| ComponentSpec {
                id: id(i),
                self_intersection: s,
            })
            .collect(),
        edges: edges.iter().map(|&(a, b)| [id(a), id(b)]).collect(),
        e0: id(0),
    }
}

/// Closed forms expanded by direct counting, independent of the series module.
///
/// Keys are `(t-exponent, character exponent)`.
#[derive(Debug, Clone)]
pub struct Expansion {
    orders: Vec<u32>,
    num_vars: usize,
    bound: u32,
    terms: BTreeMap<(Vec<u32>, Vec<u32>), BigInt>,
}

impl Expansion {
    pub fn one(orders: &[u32], num_vars: usize, bound: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((vec![0; num_vars], vec![0; orders.len()]), BigInt::from(1));
        Self {
            orders: orders.to_vec(),
            num_vars,
            bound,
            terms,
        }
    }

    fn shift(&self, t: &[u32], c: &[u32], m: &[u32], ch: &[i64], k: u32) -> Option<(Vec<u32>, Vec<u32>)> {
        let e: Vec<u32> = t.iter().zip(m).map(|(a, b)| a + k * b).collect();
        if e.iter().map(|&x| x as u64).sum::<u64>() > self.bound as u64 {
            return None;
        }
        let c = c
            .iter()
            .zip(ch)
            .zip(&self.orders)
            .map(|((&a, &b), &o)| (a as i64 + k as i64 * b).rem_euclid(o as i64) as u32)
            .collect();
        Some((e, c))
    }

    fn add(map: &mut BTreeMap<(Vec<u32>, Vec<u32>), BigInt>, key: (Vec<u32>, Vec<u32>), v: BigInt) {
        let slot = map.entry(key).or_insert_with(|| BigInt::from(0));
        *slot += v;
    }

    /// Multiplies by `1 − scalar · u^ch · t^m`.
    pub fn times(mut self, scalar: i64, ch: &[i64], m: &[u32]) -> Self {
        let mut out = self.terms.clone();
        for ((t, c), v) in &self.terms {
            if let Some(key) = self.shift(t, c, m, ch, 1) {
                Self::add(&mut out, key, -v * scalar);
            }
        }
        out.retain(|_, v| *v != BigInt::from(0));
        self.terms = out;
        self
    }

    /// Multiplies by `1 / (1 − u^ch · t^m)`.
    pub fn over(mut self, ch: &[i64], m: &[u32]) -> Self {
        assert!(m.iter().any(|&x| x > 0));
        let mut out = BTreeMap::new();
        for ((t, c), v) in &self.terms {
            let mut k = 0;
            while let Some(key) = self.shift(t, c, m, ch, k) {
                Self::add(&mut out, key, v.clone());
                k += 1;
            }
        }
        out.retain(|_, v| *v != BigInt::from(0));
        self.terms = out;
        self
    }

    pub fn matches_char(&self, s: &CharSeries) -> Result<(), String> {
        let mut got = BTreeMap::new();
        for (e, c) in s.terms() {
            if e.total_degree() > self.bound as u64 {
                continue;
            }
            for (ch, v) in c.terms() {
                got.insert((e.components().to_vec(), ch.as_slice().to_vec()), v.clone());
            }
        }
        self.compare(s.num_vars(), s.bound(), got)
    }

    pub fn matches_int(&self, s: &IntSeries) -> Result<(), String> {
        let got = s
            .terms()
            .filter(|(e, _)| e.total_degree() <= self.bound as u64)
            .map(|(e, v)| ((e.components().to_vec(), Vec::new()), v.clone()))
            .collect();
        self.compare(s.num_vars(), s.bound(), got)
    }

    fn compare(&self, num_vars: usize, bound: u32, got: BTreeMap<(Vec<u32>, Vec<u32>), BigInt>) -> Result<(), String> {
        if num_vars != self.num_vars {
            return Err(format!("{num_vars} variables, expected {}", self.num_vars));
        }
        if bound < self.bound {
            return Err(format!("series known to degree {bound}, need {}", self.bound));
        }
        for key in self.terms.keys().chain(got.keys()) {
            let a = got.get(key);
            let b = self.terms.get(key);
            if a != b {
                return Err(format!("t^{:?} u^{:?}: got {a:?}, expected {b:?}", key.0, key.1));
            }
        }
        Ok(())
    }
}
