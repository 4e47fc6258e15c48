use super::IgusaError;
use crate::exactmath::modp;
use std::collections::BTreeMap;
use std::fmt;

/// Sparse integer polynomial: exponent vector -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    pub terms: BTreeMap<Vec<u32>, i64>,
}

impl Polynomial {
    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<u32>, i64)>) -> Self {
        let mut out = Self::default();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Vec<u32>, c: i64) {
        let slot = self.terms.entry(e.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degrees of the monomials.
    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().map(|e| e.iter().sum())
    }

    /// Common total degree, if every monomial has the same one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut d = self.degrees();
        let first = d.next()?;
        d.all(|x| x == first).then_some(first)
    }

    /// f(a) mod m.
    pub fn eval_mod(&self, a: &[i128], m: i128) -> i128 {
        let mut s = 0i128;
        for (e, &c) in &self.terms {
            let mut t = modp::rem(c as i128, m);
            for (x, &k) in a.iter().zip(e) {
                if k > 0 {
                    t = t * modp::pow_mod(*x, k as u64, m) % m;
                }
            }
            s = (s + t) % m;
        }
        s
    }

    /// Exact f(a) over the integers (i128).
    pub fn eval(&self, a: &[i128]) -> i128 {
        self.terms
            .iter()
            .map(|(e, &c)| a.iter().zip(e).fold(c as i128, |t, (x, &k)| t * x.pow(k)))
            .sum()
    }

    pub fn derivative(&self, var: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e[var] > 0).map(|(e, &c)| {
            let mut e2 = e.clone();
            e2[var] -= 1;
            (e2, c * e[var] as i64)
        }))
    }
}

/// Polynomial map f: Z_p^n -> Z_p^m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    pub n: usize,
    pub p: u64,
    pub polys: Vec<Polynomial>,
}

const ALIASES: [&str; 4] = ["x", "y", "z", "w"];

impl PolySystem {
    pub fn new(n: usize, p: u64, polys: Vec<Polynomial>) -> Self {
        Self { n, p, polys }
    }

    pub fn m(&self) -> usize {
        self.polys.len()
    }

    /// Parses "n=2 p=3 [degree=d]" followed by one polynomial per line.
    /// Monomials are written coefficient*x1^e1*x2^e2 (x, y, z, w alias x1..x4);
    /// `#` starts a comment. A declared degree is verified.
    pub fn parse(text: &str) -> Result<Self, IgusaError> {
        let mut header: Option<(usize, u64, Option<u32>)> = None;
        let mut polys = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            let err = |msg: String| IgusaError::Parse { line: idx + 1, msg };
            if line.is_empty() {
                continue;
            }
            match header {
                None => {
                    let (mut n, mut p, mut d) = (None, None, None);
                    for tok in line.split_whitespace() {
                        let (k, v) = tok.split_once('=').ok_or_else(|| err(format!("expected key=value, got {tok}")))?;
                        let v: u64 = v.parse().map_err(|_| err(format!("bad number {v}")))?;
                        match k {
                            "n" => n = Some(v as usize),
                            "p" => p = Some(v),
                            "degree" => d = Some(v as u32),
                            _ => return Err(err(format!("unknown key {k}"))),
                        }
                    }
                    let n = n.ok_or_else(|| err("missing n".into()))?;
                    let p = p.ok_or_else(|| err("missing p".into()))?;
                    if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
                        return Err(err(format!("{p} is not prime")));
                    }
                    header = Some((n, p, d));
                }
                Some((n, _, _)) => polys.push(parse_poly(line, n).map_err(err)?),
            }
        }
        let (n, p, d) = header.ok_or(IgusaError::Parse { line: 0, msg: "missing header".into() })?;
        let sys = Self { n, p, polys };
        if let Some(d) = d {
            if !sys.polys.iter().all(|f| f.is_zero() || f.homogeneous_degree() == Some(d)) {
                return Err(IgusaError::NotHomogeneous);
            }
        }
        Ok(sys)
    }

    /// Per-polynomial homogeneous degrees (zero polynomials are skipped).
    pub fn homogeneous_degrees(&self) -> Option<Vec<u32>> {
        self.polys.iter().filter(|f| !f.is_zero()).map(|f| f.homogeneous_degree()).collect()
    }

    pub fn eval_mod(&self, a: &[i128], m: i128) -> Vec<i128> {
        self.polys.iter().map(|f| f.eval_mod(a, m)).collect()
    }

    /// min_j nu(f_j(a)) for a mod p^k, capped at k.
    pub fn valuation_at(&self, a: &[i128], k: u32) -> u32 {
        let p = self.p as i128;
        let m = modp::pow(p, k);
        self.polys.iter().map(|f| modp::val_capped(f.eval_mod(a, m), p, k)).min().unwrap_or(k)
    }

    /// Jacobian d f_i / d x_j as polynomials.
    pub fn jacobian(&self) -> Vec<Vec<Polynomial>> {
        self.polys.iter().map(|f| (0..self.n).map(|j| f.derivative(j)).collect()).collect()
    }

    pub fn with_prime(&self, p: u64) -> Self {
        Self { p, ..self.clone() }
    }
}

fn var_index(name: &str, n: usize) -> Result<usize, String> {
    let i = if let Some(pos) = ALIASES.iter().position(|&a| a == name) {
        pos
    } else {
        let idx: usize = name.strip_prefix('x').and_then(|s| s.parse().ok()).ok_or(format!("unknown variable {name}"))?;
        idx.checked_sub(1).ok_or(format!("variables start at x1, got {name}"))?
    };
    if i >= n {
        return Err(format!("variable {name} exceeds n = {n}"));
    }
    Ok(i)
}

fn parse_poly(line: &str, n: usize) -> Result<Polynomial, String> {
    let s: String = line.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in s.char_indices() {
        let prev = s[..i].chars().last();
        if (ch == '+' || ch == '-') && !matches!(prev, None | Some('^') | Some('*')) {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut poly = Polynomial::default();
    for t in terms.iter().filter(|t| !t.is_empty()) {
        let (mut coeff, body) = match t.strip_prefix('-') {
            Some(rest) => (-1i64, rest),
            None => (1, t.strip_prefix('+').unwrap_or(t)),
        };
        let mut exps = vec![0u32; n];
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(format!("empty factor in {t}"));
            }
            if let Ok(c) = factor.parse::<i64>() {
                coeff = coeff.checked_mul(c).ok_or("coefficient overflow")?;
                continue;
            }
            let (name, e) = match factor.split_once('^') {
                Some((v, e)) => (v, e.parse::<u32>().map_err(|_| format!("bad exponent in {factor}"))?),
                None => (factor, 1),
            };
            exps[var_index(name, n)?] += e;
        }
        poly.add_term(exps, coeff);
    }
    Ok(poly)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, &c)) in self.terms.iter().rev().enumerate() {
            let sign = if c < 0 { "-" } else if idx > 0 { "+" } else { "" };
            let sep = if idx > 0 { " " } else { "" };
            let mut factors: Vec<String> = Vec::new();
            if c.abs() != 1 || e.iter().all(|&k| k == 0) {
                factors.push(c.abs().to_string());
            }
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(format!("x{}", j + 1)),
                    _ => factors.push(format!("x{}^{k}", j + 1)),
                }
            }
            write!(f, "{sep}{sign}{}{}", if idx > 0 { " " } else { "" }, factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} p={}", self.n, self.p)?;
        for g in &self.polys {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_evaluate() {
        let s = PolySystem::parse("# corpus\nn=2 p=3\n3*x1^2*x2 - x^2 + 5 # tail\nx*y\n").unwrap();
        assert_eq!(s.m(), 2);
        assert_eq!(s.polys[0].eval(&[2, 1]), 12 - 4 + 5);
        assert_eq!(s.polys[1].eval_mod(&[4, 5], 9), 2);
        assert_eq!(s.polys[0].derivative(0).eval(&[2, 1]), 12 - 4);
    }

    #[test]
    fn display_round_trips() {
        let s = PolySystem::parse("n=2 p=2\nx^3 - 2*x*y + 7\n-y^2\n").unwrap();
        assert_eq!(PolySystem::parse(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn declared_degree_is_verified() {
        assert!(PolySystem::parse("n=2 p=3 degree=2\nx^2 + y^2\n").is_ok());
        assert_eq!(PolySystem::parse("n=2 p=3 degree=2\nx^2 + y\n"), Err(IgusaError::NotHomogeneous));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(PolySystem::parse("n=1 p=4\nx\n"), Err(IgusaError::Parse { line: 1, .. })));
        assert!(matches!(PolySystem::parse("n=1 p=3\nx2\n"), Err(IgusaError::Parse { line: 2, .. })));
        assert!(matches!(PolySystem::parse("n=1 p=3\nx^q\n"), Err(IgusaError::Parse { .. })));
    }

    #[test]
    fn cancellation_removes_terms() {
        let s = PolySystem::parse("n=1 p=3\nx - x\n").unwrap();
        assert!(s.polys[0].is_zero());
    }
}
