use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ClassicalError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

pub type Root = Vec<i32>;

/// Root system in simple-root coordinates with a fixed Chevalley sign convention.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub root_type: RootType,
    pub rank: usize,
    /// `(α_i, α_j)`, scaled to be integral.
    pub gram: Vec<Vec<i32>>,
    /// `cartan[i][j] = <α_i, α_j^∨>`.
    pub cartan: Vec<Vec<i32>>,
    /// Positive roots ordered by height, then lexicographically.
    pub positive: Vec<Root>,
    /// The pair `(α, β)` with `α + β = ξ` and `α` minimal, for each non-simple positive `ξ`.
    pub extraspecial: Vec<(usize, usize)>,
    index: HashMap<Root, usize>,
    npos: HashMap<(usize, usize), i32>,
}

fn gram_matrix(t: RootType, n: usize) -> Result<Vec<Vec<i32>>, ClassicalError> {
    let unsupported = || ClassicalError::UnsupportedType(format!("{}{}", t, n));
    let mut g = vec![vec![0; n]; n];
    let chain = |g: &mut Vec<Vec<i32>>, diag: i32, upto: usize| {
        for i in 0..upto {
            g[i][i] = diag;
            if i + 1 < upto {
                g[i][i + 1] = -diag / 2;
                g[i + 1][i] = -diag / 2;
            }
        }
    };
    match t {
        RootType::A if n >= 1 => chain(&mut g, 2, n),
        RootType::B if n >= 2 => {
            chain(&mut g, 2, n - 1);
            g[n - 1][n - 1] = 1;
            g[n - 2][n - 1] = -1;
            g[n - 1][n - 2] = -1;
        }
        RootType::C if n >= 2 => {
            chain(&mut g, 2, n - 1);
            g[n - 1][n - 1] = 4;
            g[n - 2][n - 1] = -2;
            g[n - 1][n - 2] = -2;
        }
        RootType::D if n >= 3 => {
            chain(&mut g, 2, n - 1);
            g[n - 1][n - 1] = 2;
            g[n - 3][n - 1] = -1;
            g[n - 1][n - 3] = -1;
        }
        RootType::G if n == 2 => {
            g = vec![vec![2, -3], vec![-3, 6]];
        }
        _ => return Err(unsupported()),
    }
    Ok(g)
}

fn height(r: &[i32]) -> i32 {
    r.iter().sum()
}

fn add(a: &[i32], b: &[i32]) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[i32]) -> Root {
    a.iter().map(|x| -x).collect()
}

fn is_positive(a: &[i32]) -> bool {
    a.iter().all(|&x| x >= 0)
}

/// Exact `num / den`, panicking on a non-integral quotient.
fn exact_div(num: i64, den: i64) -> i64 {
    assert!(den != 0 && num % den == 0, "non-integral structure constant {}/{}", num, den);
    num / den
}

impl RootSystem {
    pub fn new(root_type: RootType, rank: usize) -> Result<RootSystem, ClassicalError> {
        let gram = gram_matrix(root_type, rank)?;
        let cartan: Vec<Vec<i32>> =
            (0..rank).map(|i| (0..rank).map(|j| 2 * gram[i][j] / gram[j][j]).collect()).collect();
        let simple: Vec<Root> = (0..rank)
            .map(|i| {
                let mut r = vec![0; rank];
                r[i] = 1;
                r
            })
            .collect();
        let mut rs = RootSystem {
            root_type,
            rank,
            gram,
            cartan,
            positive: vec![],
            extraspecial: vec![],
            index: HashMap::new(),
            npos: HashMap::new(),
        };
        let mut known: std::collections::HashSet<Root> = simple.iter().cloned().collect();
        let mut layer = simple.clone();
        let mut all = simple.clone();
        while !layer.is_empty() {
            let mut next = vec![];
            for beta in &layer {
                for (i, alpha) in simple.iter().enumerate() {
                    if beta == alpha {
                        continue;
                    }
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - rs.pairing(beta, alpha);
                    let up = add(beta, alpha);
                    if q > 0 && known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
        rs.positive = all;
        let np = rs.positive.len();
        for (i, r) in rs.positive.iter().enumerate() {
            rs.index.insert(r.clone(), i);
            rs.index.insert(neg(r), np + i);
        }
        rs.fix_constants();
        Ok(rs)
    }

    pub fn inner(&self, a: &[i32], b: &[i32]) -> i32 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    /// `<β, α^∨> = 2(β, α)/(α, α)`.
    pub fn pairing(&self, beta: &[i32], alpha: &[i32]) -> i32 {
        2 * self.inner(beta, alpha) / self.inner(alpha, alpha)
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Positive roots followed by their negatives.
    pub fn roots(&self) -> Vec<Root> {
        self.positive.iter().cloned().chain(self.positive.iter().map(|r| neg(r))).collect()
    }

    pub fn is_root(&self, r: &[i32]) -> bool {
        self.index.contains_key(r)
    }

    pub fn index_of(&self, r: &[i32]) -> Option<usize> {
        self.index.get(r).copied()
    }

    /// Largest `p` with `β - pα` a root.
    pub fn string_below(&self, alpha: &[i32], beta: &[i32]) -> i32 {
        let mut p = 0;
        let mut cur = beta.to_vec();
        loop {
            cur = cur.iter().zip(alpha).map(|(x, y)| x - y).collect();
            if self.is_root(&cur) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// Length of the `α`-string through `β`.
    pub fn string_length(&self, alpha: &[i32], beta: &[i32]) -> i32 {
        let p = self.string_below(alpha, beta);
        let q = p - self.pairing(beta, alpha);
        p + q + 1
    }

    /// Coefficients of `h_α = Σ c_i h_{α_i}`.
    pub fn coroot(&self, alpha: &[i32]) -> Vec<i32> {
        let aa = self.inner(alpha, alpha);
        (0..self.rank).map(|i| exact_div((alpha[i] * self.gram[i][i]) as i64, aa as i64) as i32).collect()
    }

    /// `N_{a,b}` with `[e_a, e_b] = N_{a,b} e_{a+b}`; zero when `a + b` is not a root.
    pub fn structure_constant(&self, a: &[i32], b: &[i32]) -> i32 {
        let s = add(a, b);
        if !self.is_root(&s) {
            return 0;
        }
        self.n(a, b)
    }

    fn len2(&self, a: &[i32]) -> i64 {
        self.inner(a, a) as i64
    }

    fn n(&self, a: &[i32], b: &[i32]) -> i32 {
        let (pa, pb) = (is_positive(a), is_positive(b));
        if pa && pb {
            let (i, j) = (self.index[a], self.index[b]);
            return self.npos[&(i, j)];
        }
        if !pa && !pb {
            return -self.n(&neg(a), &neg(b));
        }
        let c = neg(&add(a, b));
        if is_positive(b) == is_positive(&c) {
            exact_div(self.len2(&c) * self.n(b, &c) as i64, self.len2(a)) as i32
        } else {
            exact_div(self.len2(&c) * self.n(&c, a) as i64, self.len2(b)) as i32
        }
    }

    fn fix_constants(&mut self) {
        let np = self.positive.len();
        let pos = self.positive.clone();
        for (k, xi) in pos.iter().enumerate() {
            let mut special: Vec<(usize, usize)> = vec![];
            for i in 0..k {
                for j in i + 1..k {
                    if add(&pos[i], &pos[j]) == *xi {
                        special.push((i, j));
                    }
                }
            }
            if special.is_empty() {
                continue;
            }
            special.sort();
            let (ai, bi) = special[0];
            let (alpha, beta) = (&pos[ai], &pos[bi]);
            let n0 = self.string_below(alpha, beta) + 1;
            self.npos.insert((ai, bi), n0);
            self.npos.insert((bi, ai), -n0);
            self.extraspecial.push((ai, bi));
            for &(gi, di) in &special[1..] {
                let (gamma, delta) = (&pos[gi], &pos[di]);
                let (mg, md) = (neg(gamma), neg(delta));
                let mut num: i64 = 0;
                let mut den: i64 = 1;
                let mut add_term = |n: i64, d: i64| {
                    num = num * d + n * den;
                    den *= d;
                };
                let bg = add(beta, &mg);
                if self.is_root(&bg) {
                    add_term(self.n(beta, &mg) as i64 * self.n(alpha, &md) as i64, self.len2(&bg));
                }
                let ag = add(alpha, &mg);
                if self.is_root(&ag) {
                    add_term(self.n(&mg, alpha) as i64 * self.n(beta, &md) as i64, self.len2(&ag));
                }
                let v = exact_div(self.len2(xi) * num, den * n0 as i64) as i32;
                let expect = self.string_below(gamma, delta) + 1;
                assert_eq!(v.abs(), expect, "constant for {:?} + {:?}", gamma, delta);
                self.npos.insert((gi, di), v);
                self.npos.insert((di, gi), -v);
            }
        }
        debug_assert!(self.npos.keys().all(|&(i, j)| i < np && j < np));
    }

    /// Expected number of positive roots for the type.
    pub fn expected_positive(root_type: RootType, rank: usize) -> usize {
        match root_type {
            RootType::A => rank * (rank + 1) / 2,
            RootType::B | RootType::C => rank * rank,
            RootType::D => rank * (rank - 1),
            RootType::G => 6,
            RootType::E | RootType::F => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for (t, n) in [
            (RootType::A, 1),
            (RootType::A, 2),
            (RootType::A, 4),
            (RootType::B, 2),
            (RootType::B, 3),
            (RootType::C, 3),
            (RootType::C, 4),
            (RootType::D, 4),
            (RootType::D, 5),
            (RootType::G, 2),
        ] {
            let rs = RootSystem::new(t, n).unwrap();
            assert_eq!(rs.num_positive(), RootSystem::expected_positive(t, n), "{}{}", t, n);
            assert_eq!(rs.extraspecial.len(), rs.num_positive() - n);
        }
        assert!(RootSystem::new(RootType::E, 6).is_err());
        assert!(RootSystem::new(RootType::F, 4).is_err());
        assert!(RootSystem::new(RootType::D, 2).is_err());
    }

    #[test]
    fn cartan_integers() {
        let b2 = RootSystem::new(RootType::B, 2).unwrap();
        assert_eq!(b2.cartan, vec![vec![2, -2], vec![-1, 2]]);
        let g2 = RootSystem::new(RootType::G, 2).unwrap();
        assert_eq!(g2.cartan, vec![vec![2, -1], vec![-3, 2]]);
        assert_eq!(g2.positive.last().unwrap(), &vec![3, 2]);
        let d4 = RootSystem::new(RootType::D, 4).unwrap();
        assert_eq!(d4.positive.last().unwrap(), &vec![1, 2, 1, 1]);
    }

    #[test]
    fn string_lengths() {
        for (t, n, bound) in [(RootType::A, 3, 2), (RootType::B, 3, 3), (RootType::C, 3, 3), (RootType::G, 2, 4)] {
            let rs = RootSystem::new(t, n).unwrap();
            let roots = rs.roots();
            let mut longest = 0;
            for a in &roots {
                for b in &roots {
                    if a != b && *a != neg(b) {
                        longest = longest.max(rs.string_length(a, b));
                    }
                }
            }
            assert_eq!(longest, bound, "{}{}", t, n);
        }
    }

    #[test]
    fn constants_are_antisymmetric_and_bounded() {
        let rs = RootSystem::new(RootType::G, 2).unwrap();
        let roots = rs.roots();
        for a in &roots {
            for b in &roots {
                let n = rs.structure_constant(a, b);
                assert_eq!(n, -rs.structure_constant(b, a));
                if rs.is_root(&add(a, b)) {
                    assert_eq!(n.abs(), rs.string_below(a, b) + 1);
                    assert_eq!(rs.structure_constant(&neg(a), &neg(b)), -n);
                }
            }
        }
    }
}
