//! Grover and Ihara zeta functions of a graph and the identities linking them.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{symmetric_digraph, ArcTable, Graph};
use crate::matrix::{adjacency_and_degree, grover_matrix, positive_support, transition_matrix};
use crate::poly::{det_one_minus_u_m, poly_matrix_det, Polynomial, RationalFunction};
use crate::rational::{self, Rational};

/// Largest cycle length the brute-force enumeration accepts.
pub const MAX_CYCLE_LENGTH: usize = 12;

/// `det(I - u U)` for the Grover matrix of `g`.
pub fn grover_determinant(g: &Graph) -> Polynomial {
    let arcs = symmetric_digraph(g);
    det_one_minus_u_m(&grover_matrix(g, &arcs))
}

/// The Grover zeta function `1 / det(I - u U)`.
pub fn grover_zeta(g: &Graph) -> RationalFunction {
    RationalFunction::reciprocal_of(&grover_determinant(g))
        .expect("det(I - uU) has constant term 1")
}

/// Exact `det U`.
pub fn grover_det(g: &Graph) -> Rational {
    let arcs = symmetric_digraph(g);
    grover_matrix(g, &arcs).det()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IharaMethod {
    /// `(1 - u^2)^{gamma - 1} det(I - uA + u^2 (D - I))`
    IharaExpression,
    /// `det(I - u U+)` with `U+` the positive support of the Grover matrix
    PositiveSupport,
}

/// `1 - u^2` raised to an integer power, as a rational function.
fn one_minus_u2_pow(e: i64) -> RationalFunction {
    let base = Polynomial::from_i64(&[1, 0, -1]).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        RationalFunction::from_poly(&base)
    } else {
        RationalFunction::reciprocal_of(&base).expect("nonzero")
    }
}

/// The Ihara zeta function `Z(G, u)`.
pub fn ihara_zeta(g: &Graph, method: IharaMethod) -> RationalFunction {
    let inverse = match method {
        IharaMethod::IharaExpression => {
            let (a, d) = adjacency_and_degree(g);
            let n = g.vertex_count();
            let entries = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let mut c =
                                vec![Rational::zero(), -a.get(i, j).clone(), Rational::zero()];
                            if i == j {
                                c[0] = Rational::one();
                                c[2] = d.get(i, i) - Rational::one();
                            }
                            Polynomial::new(c)
                        })
                        .collect()
                })
                .collect();
            let det = poly_matrix_det(entries);
            one_minus_u2_pow(g.betti_number() - 1).mul(&RationalFunction::from_poly(&det))
        }
        IharaMethod::PositiveSupport => {
            let arcs = symmetric_digraph(g);
            let plus = positive_support(&grover_matrix(g, &arcs)).to_rational();
            RationalFunction::from_poly(&det_one_minus_u_m(&plus))
        }
    };
    inverse
        .recip()
        .expect("Ihara determinant is nonzero at u = 0")
}

/// Counts `N_r` of reduced closed arc sequences of length `r = 1..=rmax` with
/// a marked starting arc.
pub fn reduced_cycle_counts(g: &Graph, rmax: usize) -> Result<Vec<u64>> {
    if rmax > MAX_CYCLE_LENGTH {
        return Err(Error::Scale(format!(
            "cycle length {rmax} exceeds the enumeration bound {MAX_CYCLE_LENGTH}"
        )));
    }
    let arcs = symmetric_digraph(g);
    let succ: Vec<Vec<usize>> = (0..arcs.len())
        .map(|e| arcs.non_backtracking_successors(e).collect())
        .collect();
    let mut counts = vec![0u64; rmax];
    for start in 0..arcs.len() {
        extend(&arcs, &succ, start, start, 1, rmax, &mut counts);
    }
    Ok(counts)
}

fn extend(
    arcs: &ArcTable,
    succ: &[Vec<usize>],
    start: usize,
    last: usize,
    len: usize,
    rmax: usize,
    counts: &mut [u64],
) {
    if arcs.terminus(last) == arcs.origin(start) && last != arcs.inverse(start) {
        counts[len - 1] += 1;
    }
    if len == rmax {
        return;
    }
    for &next in &succ[last] {
        extend(arcs, succ, start, next, len + 1, rmax, counts);
    }
}

/// Taylor coefficients `a_1..a_rmax` of `log f` at zero, for `f(0) = 1`.
pub fn log_series(f: &RationalFunction, rmax: usize) -> Vec<Rational> {
    // (log f)' = N'/N - D'/D
    let num = f.full_numerator();
    let den = f.denominator();
    let a = num.derivative().series_div(&num, rmax);
    let b = den.derivative().series_div(den, rmax);
    (1..=rmax)
        .map(|r| (&a[r - 1] - &b[r - 1]) / Rational::from_integer(r.into()))
        .collect()
}

/// Both sides of `det(I - uU) = (1 - u^2)^{m - n} det((1 + u^2) I - 2u P)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// `det(I - u U)`
    pub lhs: RationalFunction,
    /// `(1 - u^2)^{m - n} det((1 + u^2) I - 2u P)`
    pub rhs: RationalFunction,
    pub holds: bool,
}

pub fn verify_determinant_identity(g: &Graph) -> VerificationReport {
    let lhs = RationalFunction::from_poly(&grover_determinant(g));
    let p = transition_matrix(g);
    let n = g.vertex_count();
    let two = rational::int(2);
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut c = vec![Rational::zero(), -(&two * p.get(i, j)), Rational::zero()];
                    if i == j {
                        c[0] = Rational::one();
                        c[2] = Rational::one();
                    }
                    Polynomial::new(c)
                })
                .collect()
        })
        .collect();
    let det = poly_matrix_det(entries);
    let e = g.edge_count() as i64 - n as i64;
    let rhs = one_minus_u2_pow(e).mul(&RationalFunction::from_poly(&det));
    let holds = lhs == rhs;
    VerificationReport { lhs, rhs, holds }
}

/// `(C, D)` with `f(1/u) = C u^{-D} f(u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AutomorphicWeight {
    pub sign: i8,
    pub weight: i64,
}

pub fn automorphic_weight(f: &RationalFunction) -> Result<AutomorphicWeight> {
    if f.is_zero() {
        return Err(Error::NotAutomorphic("f is zero".into()));
    }
    let ratio = f.at_reciprocal().div(f).expect("f is nonzero");
    match ratio.as_monomial() {
        Some((c, k)) if rational::is_unit(&c) => Ok(AutomorphicWeight {
            sign: if c.is_positive() { 1 } else { -1 },
            weight: -k,
        }),
        _ => Err(Error::NotAutomorphic(ratio.to_string())),
    }
}

/// Outcome of every identity check on one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphVerification {
    pub determinant_identity: VerificationReport,
    pub det_u: i8,
    pub weight: Option<AutomorphicWeight>,
    /// `weight == (det U, -2m)`
    pub weight_holds: bool,
    pub ihara_expression: RationalFunction,
    pub ihara_positive_support: RationalFunction,
    pub ihara_holds: bool,
}

impl GraphVerification {
    pub fn all_hold(&self) -> bool {
        self.determinant_identity.holds && self.weight_holds && self.ihara_holds
    }
}

pub fn verify_graph(g: &Graph) -> GraphVerification {
    let determinant_identity = verify_determinant_identity(g);
    let det_u = if grover_det(g).is_positive() { 1 } else { -1 };
    let zeta = determinant_identity.lhs.recip().expect("nonzero determinant");
    let weight = automorphic_weight(&zeta).ok();
    let weight_holds = weight
        == Some(AutomorphicWeight {
            sign: det_u,
            weight: -2 * g.edge_count() as i64,
        });
    let ihara_expression = ihara_zeta(g, IharaMethod::IharaExpression);
    let ihara_positive_support = ihara_zeta(g, IharaMethod::PositiveSupport);
    let ihara_holds = ihara_expression == ihara_positive_support;
    GraphVerification {
        determinant_identity,
        det_u,
        weight,
        weight_holds,
        ihara_expression,
        ihara_positive_support,
        ihara_holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{random_connected, GraphFamily};
    use crate::rational::int;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn fam(s: &str) -> Graph {
        s.parse::<GraphFamily>().unwrap().generate().unwrap()
    }

    fn ub(k: usize) -> Polynomial {
        Polynomial::unit_binomial(k)
    }

    #[test]
    fn cycle_zeta_closed_form() {
        for n in 3..=8 {
            let z = grover_zeta(&fam(&format!("cycle:{n}")));
            assert_eq!(
                z,
                RationalFunction::reciprocal_of(&ub(n).pow(2)).unwrap(),
                "C_{n}"
            );
        }
    }

    #[test]
    fn star_zeta_closed_form() {
        for n in 3..=8 {
            let z = grover_zeta(&fam(&format!("star:{n}")));
            let expect = RationalFunction::new(&-&ub(2).pow(n - 3), &ub(4).pow(n - 2)).unwrap();
            assert_eq!(z, expect, "S_{n}");
        }
    }

    #[test]
    fn single_edge_zeta() {
        let z = grover_zeta(&fam("bipartite:1,1"));
        assert_eq!(
            z,
            RationalFunction::reciprocal_of(&Polynomial::from_i64(&[1, 0, -1])).unwrap()
        );
    }

    #[test]
    fn triangle_ihara_both_routes() {
        let g = fam("cycle:3");
        let expect =
            RationalFunction::reciprocal_of(&Polynomial::from_i64(&[1, 0, 0, -1]).pow(2)).unwrap();
        assert_eq!(ihara_zeta(&g, IharaMethod::IharaExpression), expect);
        assert_eq!(ihara_zeta(&g, IharaMethod::PositiveSupport), expect);
    }

    #[test]
    fn k4_ihara_routes_agree() {
        let g = fam("complete:4");
        assert_eq!(
            ihara_zeta(&g, IharaMethod::IharaExpression),
            ihara_zeta(&g, IharaMethod::PositiveSupport)
        );
    }

    #[test]
    fn tree_ihara_expression_is_one() {
        // a tree has no reduced cycles, so Z = 1 with gamma - 1 = -1 absorbed
        let g = fam("star:4");
        assert!(ihara_zeta(&g, IharaMethod::IharaExpression).is_one());
        assert_eq!(reduced_cycle_counts(&g, 8).unwrap(), vec![0; 8]);
    }

    #[test]
    fn leaves_keep_backtracking_in_positive_support() {
        // at a degree-one vertex the reflection weight 2/1 - 1 stays positive
        let g = fam("star:3");
        let z = ihara_zeta(&g, IharaMethod::PositiveSupport);
        assert_eq!(
            z,
            RationalFunction::reciprocal_of(&Polynomial::from_i64(&[1, 0, 0, 0, -1])).unwrap()
        );
    }

    #[test]
    fn triangle_cycle_counts() {
        let counts = reduced_cycle_counts(&fam("cycle:3"), 6).unwrap();
        assert_eq!(counts, vec![0, 0, 6, 0, 0, 6]);
        assert!(matches!(
            reduced_cycle_counts(&fam("cycle:3"), 13),
            Err(Error::Scale(_))
        ));
    }

    #[test]
    fn log_series_matches_cycle_counts() {
        for name in ["cycle:3", "cycle:4", "complete:4"] {
            let g = fam(name);
            let counts = reduced_cycle_counts(&g, 8).unwrap();
            let z = ihara_zeta(&g, IharaMethod::IharaExpression);
            let logs = log_series(&z, 8);
            for r in 1..=8 {
                assert_eq!(
                    logs[r - 1],
                    Rational::new(counts[r - 1].into(), r.into()),
                    "{name} r={r}"
                );
            }
        }
    }

    #[test]
    fn determinant_identity_examples() {
        for name in ["cycle:4", "star:5", "complete:4"] {
            let report = verify_determinant_identity(&fam(name));
            assert!(report.holds, "{name}");
        }
        let c4 = verify_determinant_identity(&fam("cycle:4"));
        assert_eq!(
            c4.lhs,
            RationalFunction::from_poly(&Polynomial::from_i64(&[1, 0, 0, 0, -1]).pow(2))
        );
    }

    #[test]
    fn weights() {
        let f = RationalFunction::reciprocal_of(&ub(5).pow(2)).unwrap();
        assert_eq!(
            automorphic_weight(&f).unwrap(),
            AutomorphicWeight {
                sign: 1,
                weight: -10
            }
        );
        let u = RationalFunction::from_poly(&Polynomial::from_i64(&[0, 1]));
        assert_eq!(
            automorphic_weight(&u).unwrap(),
            AutomorphicWeight { sign: 1, weight: 2 }
        );
        let palindromic = RationalFunction::from_poly(&Polynomial::from_i64(&[1, 1, 1, 1]));
        assert_eq!(
            automorphic_weight(&palindromic).unwrap(),
            AutomorphicWeight { sign: 1, weight: 3 }
        );
        assert!(
            automorphic_weight(&RationalFunction::from_poly(&Polynomial::from_i64(&[1, 2])))
                .is_err()
        );
        for n in 3..=8 {
            let g = fam(&format!("star:{n}"));
            let w = automorphic_weight(&grover_zeta(&g)).unwrap();
            assert_eq!(
                w,
                AutomorphicWeight {
                    sign: -1,
                    weight: -2 * (n as i64 - 1)
                }
            );
            assert_eq!(grover_det(&g), int(-1));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn identities_on_random_graphs(seed in any::<u64>(), n in 2usize..7) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = random_connected(&mut rng, n, 0.5).unwrap();
            let v = verify_graph(&g);
            prop_assert!(v.determinant_identity.holds);
            prop_assert!(v.weight_holds);
            if g.min_degree() >= 2 {
                prop_assert!(v.ihara_holds);
            }
        }
    }
}
