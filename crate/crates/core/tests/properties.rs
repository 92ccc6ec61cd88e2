//! Randomized invariants checked against independent oracles written here.

use algmatroid::engine::{compute_matroid, CircuitMethod, Engine, EngineConfig, Wanted};
use algmatroid::matroid::orbit::orbit_reduce;
use algmatroid::matroid::{subset, GroundSetAction, Matroid, MatroidJson, Subset};
use algmatroid::{AnyProblem, Input, MonomialOrder, ParamOracle, Parametrization, PolyRing, Problem, RankOracle, Rationals};
use proptest::prelude::*;

/// Exact rank of the columns `cols` of an integer matrix, by fraction-free
/// elimination in i128.
fn int_rank(rows: &[Vec<i64>], cols: Subset) -> usize {
    let idx = subset::to_indices(cols);
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| idx.iter().map(|&j| r[j] as i128).collect()).collect();
    let (m, n) = (a.len(), idx.len());
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..m).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, p);
        for i in 0..m {
            if i != rank && a[i][c] != 0 {
                let (f, g) = (a[rank][c], a[i][c]);
                for k in 0..n {
                    a[i][k] = a[i][k] * f - a[rank][k] * g;
                }
                let d = a[i].iter().fold(0i128, |d, &x| num_gcd(d, x));
                if d > 1 {
                    a[i].iter_mut().for_each(|x| *x /= d);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn num_gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Coordinates `x_j = Σ_i rows[i][j] · t_i`.
fn linear_param(rows: &[Vec<i64>]) -> Parametrization<Rationals> {
    let k = rows.len();
    let ring = PolyRing::new(Rationals, (0..k).map(|i| format!("t{i}")), MonomialOrder::Grevlex).unwrap();
    let n = rows[0].len();
    let entries: Vec<(String, String)> = (0..n)
        .map(|j| {
            let terms: Vec<String> = (0..k).map(|i| format!("({})*t{i}", rows[i][j])).collect();
            (format!("x{j}"), terms.join(" + "))
        })
        .collect();
    Parametrization::parse(ring, &entries).unwrap()
}

/// Coordinates `x_j = Π_i t_i^{rows[i][j]}`.
fn monomial_param(rows: &[Vec<i64>]) -> Parametrization<Rationals> {
    let k = rows.len();
    let ring = PolyRing::new(Rationals, (0..k).map(|i| format!("t{i}")), MonomialOrder::Grevlex).unwrap();
    let n = rows[0].len();
    let entries: Vec<(String, String)> = (0..n)
        .map(|j| {
            let factors: Vec<String> = (0..k).map(|i| format!("t{i}^{}", rows[i][j])).collect();
            (format!("x{j}"), factors.join("*"))
        })
        .collect();
    Parametrization::parse(ring, &entries).unwrap()
}

fn matrix(k: usize, n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(lo..hi, n), k)
}

fn problem(param: Parametrization<Rationals>) -> Problem<Rationals> {
    Problem { input: Input::Param(param), action: None }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // A linear parametrization has the linear matroid of its coefficients.
    #[test]
    fn linear_parametrizations(rows in matrix(2, 4, -3, 4), s in 0u64..16) {
        prop_assume!(rows.iter().flatten().any(|&x| x != 0));
        let phi = linear_param(&rows);
        let sym = ParamOracle::new(&phi, Default::default());
        prop_assert_eq!(sym.rank(s).unwrap(), int_rank(&rows, s));
        let cfg = EngineConfig { engine: Engine::Linear, ..Default::default() };
        let lin = compute_matroid(&problem(phi), &cfg, Wanted::BASES).unwrap().matroid;
        prop_assert_eq!(lin.rank_of(s).unwrap(), int_rank(&rows, s));
    }

    // A monomial parametrization has the linear matroid of its exponents.
    #[test]
    fn monomial_parametrizations(rows in matrix(2, 4, 0, 3), s in 0u64..16) {
        prop_assume!((0..4).all(|j| rows.iter().any(|r| r[j] != 0)));
        let phi = monomial_param(&rows);
        let sym = ParamOracle::new(&phi, Default::default());
        prop_assert_eq!(sym.rank(s).unwrap(), int_rank(&rows, s));
        let cfg = EngineConfig { engine: Engine::Linear, ..Default::default() };
        let lin = compute_matroid(&problem(phi), &cfg, Wanted::BASES).unwrap().matroid;
        prop_assert_eq!(lin.rank_of(s).unwrap(), int_rank(&rows, s));
    }

    // Naive and exchange circuits agree, and the bases and circuits determine
    // one another.
    #[test]
    fn circuit_methods_agree(rows in matrix(3, 6, -2, 3)) {
        prop_assume!(rows.iter().flatten().any(|&x| x != 0));
        let p = problem(linear_param(&rows));
        let naive = compute_matroid(&p, &EngineConfig::default(), Wanted::ALL).unwrap().matroid;
        let cfg = EngineConfig { circuit_method: CircuitMethod::Exchange, ..Default::default() };
        let exchange = compute_matroid(&p, &cfg, Wanted::CIRCUITS).unwrap().matroid;
        prop_assert_eq!(naive.circuits().unwrap(), exchange.circuits().unwrap());
        for &c in naive.circuits().unwrap() {
            prop_assert_eq!(int_rank(&rows, c), subset::size(c) - 1);
        }
        let r = int_rank(&rows, subset::full(6));
        let expected: Vec<Subset> = subset::k_subsets(6, r).filter(|&b| int_rank(&rows, b) == r).collect();
        let mut got = naive.bases().unwrap().to_vec();
        got.sort_unstable();
        let mut expected = expected;
        expected.sort_unstable();
        prop_assert_eq!(got, expected);
    }

    // Orbits partition any invariant family.
    #[test]
    fn orbits_partition(perm in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle(), seeds in proptest::collection::vec(1u64..64, 1..6)) {
        let action = GroundSetAction::new(6, vec![perm]).unwrap();
        let group = action.elements().unwrap();
        let mut family: Vec<Subset> = seeds.iter().flat_map(|&s| group.orbit(s)).collect();
        family.sort_unstable();
        family.dedup();
        let classes = orbit_reduce(&family, &group).unwrap();
        prop_assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), family.len());
        for c in &classes {
            prop_assert_eq!(group.canonical(c.representative), c.representative);
        }
    }

    // Serialized matroids read back unchanged.
    #[test]
    fn json_round_trip(rows in matrix(2, 5, -2, 3)) {
        prop_assume!(rows.iter().flatten().any(|&x| x != 0));
        let m = compute_matroid(&problem(linear_param(&rows)), &EngineConfig::default(), Wanted::ALL).unwrap().matroid;
        let text = serde_json::to_string(&m.to_json()).unwrap();
        let back: MatroidJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(Matroid::from_json(&back).unwrap(), m.clone());
        let twice = m.dualize().unwrap().dualize().unwrap();
        prop_assert_eq!(twice.bases().unwrap(), m.bases().unwrap());
    }
}

#[test]
fn independent_oracle_sanity() {
    let rows = vec![vec![1, 0, 1, 2], vec![0, 1, 1, 2]];
    assert_eq!(int_rank(&rows, 0b1111), 2);
    assert_eq!(int_rank(&rows, 0b1100), 1);
    let text = "[field]\nQQ\n[parameters]\ns t\n[coordinates]\na = s\nb = t\nc = s + t\nd = 2*s + 2*t\n";
    let AnyProblem::Rationals(p) = AnyProblem::parse(text).unwrap() else { panic!() };
    let m = compute_matroid(&p, &EngineConfig::default(), Wanted::ALL).unwrap().matroid;
    for s in 0..16u64 {
        assert_eq!(m.rank_of(s).unwrap(), int_rank(&rows, s), "{s:04b}");
    }
}
