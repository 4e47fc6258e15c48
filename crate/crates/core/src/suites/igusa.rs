use super::SuiteReport;
use crate::igusa::{count_lifting, count_naive, hensel_lift, homogeneous_bound_check, poincare_coeffs, reverse_hensel_check, PolySystem, SolutionCounts};
use crate::Rational;
use num_traits::One;

/// Test polynomials in one or two variables.
pub const CORPUS: [(&str, &str); 5] = [
    ("x^2", "n=1\nx^2\n"),
    ("xy", "n=2\nx*y\n"),
    ("x^2+y^2", "n=2\nx^2 + y^2\n"),
    ("x^3-y^2", "n=2\nx^3 - y^2\n"),
    ("cubic", "n=2\nx^3 + 2*x^2*y + 3*x*y^2 + 5*y^3 + x*y + 7*x + 11*y\n"),
];

/// Naive evaluation budget per count.
const NAIVE_BUDGET: u64 = 1 << 20;

pub fn corpus_system(text: &str, p: u64) -> PolySystem {
    let (head, body) = text.split_once('\n').expect("header line");
    PolySystem::parse(&format!("{head} p={p}\n{body}")).expect("corpus parses")
}

fn naive_window(n: usize, p: u64) -> u32 {
    (0..).take_while(|&i| (p as u128).pow(n as u32 * i) <= NAIVE_BUDGET as u128).last().unwrap()
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

/// Criterion 10.
pub fn igusa_suite(primes: &[u64]) -> SuiteReport {
    let mut rep = SuiteReport::new("igusa");
    for &p in primes {
        for (name, text) in CORPUS {
            let sys = corpus_system(text, p);
            let i_max = naive_window(sys.n, p);
            let naive: Result<Vec<u128>, _> = (0..=i_max).map(|i| count_naive(&sys, i, NAIVE_BUDGET)).collect();
            let lift = count_lifting(&sys, i_max, NAIVE_BUDGET);
            let (ok, detail) = match (naive, lift) {
                (Ok(a), Ok(b)) => {
                    let pc = poincare_coeffs(&b, p, sys.n);
                    let sc = SolutionCounts::from_counts(p, sys.n, b.clone());
                    (a == b && pc.reconstruct() == pc.poincare && sc.invariants_hold(), format!("M_i {}", list(&b)))
                }
                (a, b) => (false, format!("naive {a:?}; lifting {b:?}")),
            };
            rep.check(format!("{name} p={p} naive = lifting, i<={i_max}"), ok, detail);
        }

        let x2 = corpus_system(CORPUS[0].1, p);
        let m = count_lifting(&x2, 12, 1 << 24).unwrap_or_default();
        let want: Vec<u128> = (0..=12u32).map(|i| (p as u128).pow(i / 2)).collect();
        rep.check(format!("x^2 p={p} M_i = p^floor(i/2), i<=12"), m == want, format!("M_i {}", list(&m)));

        let xy = corpus_system(CORPUS[1].1, p);
        let brute: Vec<u128> = (0..=3).map(|i| count_naive(&xy, i, NAIVE_BUDGET).unwrap_or(0)).collect();
        let m = count_lifting(&xy, 10, 1 << 24).unwrap_or_default();
        let formula = |i: u32| (i as u128 + 1) * (p as u128).pow(i) - if i == 0 { 0 } else { i as u128 * (p as u128).pow(i - 1) };
        let want: Vec<u128> = (0..=10).map(formula).collect();
        rep.check(
            format!("xy p={p} M_i = (i+1)p^i - i p^(i-1), brute force i<=3, lifting i<=10"),
            brute[..] == want[..4] && m == want,
            format!("M_i {}", list(&m)),
        );

        match reverse_hensel_check(&x2, &[Rational::one()], 8, 12) {
            Ok(r) => {
                rep.check(
                    format!("x^2 p={p} reverse Hensel, lambda=(1)"),
                    r.holds && r.bound == "-1/2" && r.slope_check(),
                    format!("bound {}; slope violations {:?}", r.bound, r.slope_violations),
                );
            }
            Err(err) => rep.check(format!("x^2 p={p} reverse Hensel"), false, err.to_string()),
        }

        for (name, text) in CORPUS {
            let sys = corpus_system(text, p);
            if sys.homogeneous_degrees().is_none() {
                continue;
            }
            match homogeneous_bound_check(&sys, 12) {
                Ok(h) => {
                    let margins: Vec<String> = h.margins.iter().map(|m| m.map_or("inf".into(), |m| m.to_string())).collect();
                    rep.check(
                        format!("{name} p={p} homogeneous bound"),
                        h.holds,
                        format!("rate {} >= {}; margins {}", h.bound_rate, h.target_rate, margins.join(", ")),
                    );
                }
                Err(err) => rep.check(format!("{name} p={p} homogeneous bound"), false, err.to_string()),
            }
        }
    }
    let sys = PolySystem::parse("n=1 p=7\nx^2 - 2\n").expect("parses");
    let b = hensel_lift(&sys, &[3], 2);
    rep.check("x^2-2 p=7 Hensel lift from a=3", b == Ok(vec![10]), format!("{b:?} mod 49"));
    rep
}
