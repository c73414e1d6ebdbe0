//! Vector-space duality and the Auslander-Reiten translates.

use super::{kernel, minimal_presentation, ModMap, Representation};
use crate::algebra::AlgebraData;
use crate::linalg::Matrix;

/// `D M = Hom_K(M, K)`, a right module over the opposite algebra.
pub fn dual(m: &Representation) -> Representation {
    Representation::new_unchecked(m.field(), m.dims.clone(), m.maps.iter().map(|x| x.transpose()).collect())
}

/// `τ M = ker(ν σ)` for the minimal presentation `σ: P_1 → P_0`, where the
/// Nakayama functor sends `e_v A` to the injective `I_v`.
pub fn tau(alg: &AlgebraData, m: &Representation) -> Representation {
    let pres = minimal_presentation(alg, m);
    let inj = |vs: &[usize]| {
        Representation::sum_of(alg, &vs.iter().map(|&v| super::injective(alg, v)).collect::<Vec<_>>())
    };
    let (i1, i0) = (inj(&pres.p), inj(&pres.q));
    let f = alg.field();
    let n = alg.n_vertices();
    // Component (i, j) at vertex u: transpose of x ↦ x * y_ij on e_u A e_{q_j} → e_u A e_{p_i}.
    let blocks = (0..n)
        .map(|u| {
            let mut big = Matrix::zeros(f, i0.dims[u], i1.dims[u]);
            let mut c0 = 0;
            for (i, &pi) in pres.p.iter().enumerate() {
                let mut r0 = 0;
                let into = alg.corner(u, pi);
                for (j, &qj) in pres.q.iter().enumerate() {
                    let from = alg.corner(u, qj);
                    let y = &pres.components[i][j];
                    let r = Matrix::from_fn(f, from.len(), into.len(), |l, k| {
                        alg.mul(&alg.basis_vector(from[l]), y)[into[k]]
                    });
                    big.set_block(r0, c0, &r);
                    r0 += from.len();
                }
                c0 += into.len();
            }
            big
        })
        .collect();
    let nu = ModMap { blocks };
    debug_assert!(nu.is_hom(alg, &i1, &i0));
    kernel(alg, &nu, &i1).0
}

/// `τ⁻ M = D τ_{A^op} D M`.
pub fn tau_inv(op: &AlgebraData, m: &Representation) -> Representation {
    dual(&tau(op, &dual(m)))
}

#[cfg(test)]
mod tests {
    use super::super::tests::*;
    use super::super::*;
    use super::*;
    use crate::algebra::opposite_algebra;
    use crate::Config;

    #[test]
    fn tau_of_projective_vanishes() {
        for t in [TWO_VERTEX, FIVE_VERTEX, A2] {
            let a = alg(t);
            for v in 0..a.n_vertices() {
                assert!(tau(&a, &projective(&a, v)).is_zero());
            }
        }
    }

    #[test]
    fn tau_on_a2() {
        let a = alg(A2);
        // P_1 = (1,1), S_2 = P_2 projective; τ S_1 = S_2
        let t = tau(&a, &simple(&a, 0));
        assert_eq!(t.dims, vec![0, 1]);
    }

    #[test]
    fn tau_inverse_round_trip() {
        let cfg = Config::default();
        for t in [TWO_VERTEX, FIVE_VERTEX, A2] {
            let a = alg(t);
            let op = opposite_algebra(&a);
            for v in 0..a.n_vertices() {
                let m = simple(&a, v);
                if is_projective(&a, &m) {
                    continue;
                }
                let tm = tau(&a, &m);
                tm.validate(&a).unwrap();
                let back = tau_inv(&op, &tm);
                back.validate(&a).unwrap();
                assert!(is_isomorphic(&a, &back, &m, &cfg, None).unwrap());
            }
        }
    }
}
