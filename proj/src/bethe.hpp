#pragma once

#include "basis.hpp"

namespace ik {

// Off-shell state built by the two-operator recursion; the first root plays
// a distinguished role and no symmetrization is applied.
Eigen::VectorXcd bethe_state(const std::vector<Cplx>& roots, Workspace& ws);

// Validates pairwise separation of roots and distance from the poles that
// appear in the recursion coefficients. Throws NearSingular.
void validate_roots(const std::vector<Cplx>& roots, const ModelParams& p);

// Per-root residual of alpha1/alpha2 = prod z/z w, as LHS - RHS.
std::vector<Cplx> bae_residual(const std::vector<Cplx>& roots,
                               const ModelParams& p);

// Same equations in logarithmic form, imaginary parts folded into (-pi, pi].
// This is the function the Newton solver drives to zero.
std::vector<Cplx> bae_log_residual(const std::vector<Cplx>& roots,
                                   const ModelParams& p);

// Damped Newton with the analytic Jacobian of the log form, multi-start over
// the supplied guesses. Throws NoConvergence with the best residual seen.
std::vector<Cplx> solve_bae(const std::vector<std::vector<Cplx>>& guesses,
                            const ModelParams& p, int max_iter = 200,
                            double tol = 1e-11);

// Max over samples of ||t(u)|phi> - lambda(u)|phi>|| / ||t(u)|phi>||, with
// lambda read off the largest component. If lambda_out is non-null it
// receives one lambda per sample.
double on_shell_check(const std::vector<Cplx>& roots, Workspace& ws,
                      const std::vector<Cplx>& u_samples,
                      std::vector<Cplx>* lambda_out = nullptr);

// <label | phi_n> by direct bilinear pairing. Exactly zero (by fiat) when
// the label weight does not match the root count.
Cplx f_direct(const BasisLabel& label, const std::vector<Cplx>& roots,
              Workspace& ws);

// Same quantity through the scalar-product recursion: the state recursion
// paired against the closed-form operator actions, term by term.
Cplx f_recursive(const BasisLabel& label, const std::vector<Cplx>& roots,
                 const ModelParams& p);

// Printed closed forms for one and two roots.
Cplx f1_explicit(int site, Cplx u1, const ModelParams& p);
Cplx f2_explicit_two(int site, Cplx u1, Cplx u2, const ModelParams& p);
Cplx f2_explicit_one_one(int site1, int site2, Cplx u1, Cplx u2,
                         const ModelParams& p);

// Expansion coefficients F_n / G_m over all labels with matching weight.
std::vector<LabelTerm> expand_bethe(const std::vector<Cplx>& roots,
                                    Workspace& ws);

}  // namespace ik
