use serde::Serialize;
use std::fmt;

/// Elementary-divisor type: partition lambda_1 >= ... >= lambda_n >= 0 with
/// the derived jump set I, jumps r_iota = lambda_iota - lambda_{iota+1} and
/// homothety h = lambda_n. Indices iota are 1-based as in I within [n-1].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DivisorType {
    pub lambda: Vec<u32>,
}

impl DivisorType {
    pub fn new(mut lambda: Vec<u32>) -> Self {
        lambda.sort_unstable_by(|a, b| b.cmp(a));
        Self { lambda }
    }

    /// Primitive type with the given jumps (1-based iota, r_iota).
    pub fn from_jumps(n: usize, jumps: &[(usize, u32)]) -> Self {
        let mut lambda = vec![0u32; n];
        for &(iota, r) in jumps {
            assert!(iota >= 1 && iota < n, "jump index out of range");
            for l in lambda.iter_mut().take(iota) {
                *l += r;
            }
        }
        Self { lambda }
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn homothety(&self) -> u32 {
        self.lambda.last().copied().unwrap_or(0)
    }

    pub fn is_primitive(&self) -> bool {
        self.homothety() == 0
    }

    /// Sum of lambda_j, the index exponent.
    pub fn index_exponent(&self) -> u32 {
        self.lambda.iter().sum()
    }

    /// (iota, r_iota) for iota in I.
    pub fn jumps(&self) -> Vec<(usize, u32)> {
        (1..self.n())
            .filter_map(|iota| {
                let r = self.lambda[iota - 1] - self.lambda[iota];
                (r > 0).then_some((iota, r))
            })
            .collect()
    }

    /// r_iota for 1-based iota (0 when iota is not a jump).
    pub fn r(&self, iota: usize) -> u32 {
        if iota == 0 || iota >= self.n() {
            0
        } else {
            self.lambda[iota - 1] - self.lambda[iota]
        }
    }

    /// R = max r_iota (0 for an empty jump set).
    pub fn big_r(&self) -> u32 {
        self.jumps().iter().map(|&(_, r)| r).max().unwrap_or(0)
    }

    /// Sum over iota of iota * r_iota.
    pub fn weighted_sum(&self) -> u32 {
        self.jumps().iter().map(|&(i, r)| i as u32 * r).sum()
    }

    pub fn primitive(&self) -> Self {
        let h = self.homothety();
        Self { lambda: self.lambda.iter().map(|&x| x - h).collect() }
    }

    /// All primitive types in dimension n with 1 <= sum iota r_iota <= budget
    /// (plus the trivial type when `include_trivial`).
    pub fn primitive_types(n: usize, budget: u32, include_trivial: bool) -> Vec<Self> {
        fn go(n: usize, iota: usize, left: u32, cur: &mut Vec<(usize, u32)>, out: &mut Vec<DivisorType>) {
            if iota == n {
                out.push(DivisorType::from_jumps(n, cur));
                return;
            }
            go(n, iota + 1, left, cur, out);
            let mut r = 1;
            while iota as u32 * r <= left {
                cur.push((iota, r));
                go(n, iota + 1, left - iota as u32 * r, cur, out);
                cur.pop();
                r += 1;
            }
        }
        let mut out = Vec::new();
        go(n, 1, budget, &mut Vec::new(), &mut out);
        if !include_trivial {
            out.retain(|t| t.index_exponent() > 0);
        }
        out.sort_by_key(|t| (t.index_exponent(), t.lambda.clone()));
        out
    }

    /// Compact label such as "r1=2,r2=1".
    pub fn label(&self) -> String {
        let j = self.jumps();
        let mut s = if j.is_empty() {
            "trivial".to_string()
        } else {
            j.iter().map(|(i, r)| format!("r{i}={r}")).collect::<Vec<_>>().join(",")
        };
        if self.homothety() > 0 {
            s.push_str(&format!(";h={}", self.homothety()));
        }
        s
    }
}

impl fmt::Display for DivisorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lambda.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_fields() {
        let t = DivisorType::new(vec![0, 2]);
        assert_eq!(t.lambda, vec![2, 0]);
        assert_eq!(t.jumps(), vec![(1, 2)]);
        assert_eq!(t.big_r(), 2);
        assert!(t.is_primitive());
        let s = DivisorType::new(vec![1, 1, 1]);
        assert!(s.jumps().is_empty());
        assert_eq!(s.homothety(), 1);
        let u = DivisorType::new(vec![5, 3, 3, 1]);
        assert_eq!(u.weighted_sum() + 4 * u.homothety(), u.index_exponent());
    }

    #[test]
    fn type_listing() {
        let ts = DivisorType::primitive_types(3, 4, false);
        assert!(ts.iter().all(|t| t.is_primitive() && t.weighted_sum() <= 4));
        // partitions of k into parts <= 2 for k = 1..4: 1 + 2 + 2 + 3
        assert_eq!(ts.len(), 8);
        assert_eq!(DivisorType::from_jumps(3, &[(1, 1), (2, 1)]).lambda, vec![2, 1, 0]);
    }
}
