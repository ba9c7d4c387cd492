#include "bethe.hpp"

#include <algorithm>
#include <cmath>

namespace ik {

namespace {

// Coefficient of the two-root branch of the state recursion: the weight of
// dropping root i (1-based position in `rest`, the roots after the first).
Cplx drop_weight(const std::vector<Cplx>& rest, size_t i, Cplx u1,
                 const ModelParams& p) {
  const Cplx eta = p.eta;
  Cplx c = alpha1(rest[i], p) / fn_y(u1 - rest[i], eta);
  for (size_t j = 0; j < i; ++j) c *= fn_omega(rest[i] - rest[j], eta);
  for (size_t k = 0; k < rest.size(); ++k) {
    if (k == i) continue;
    c *= fn_z(rest[k] - rest[i], eta);
  }
  return c;
}

std::vector<Cplx> drop(const std::vector<Cplx>& v, size_t i) {
  std::vector<Cplx> out;
  for (size_t k = 0; k < v.size(); ++k)
    if (k != i) out.push_back(v[k]);
  return out;
}

}  // namespace

void validate_roots(const std::vector<Cplx>& roots, const ModelParams& p) {
  const Cplx eta = p.eta;
  const double scale = std::max(1.0, std::abs(std::sinh(5.0 * eta)));
  for (size_t i = 0; i < roots.size(); ++i) {
    for (size_t j = i + 1; j < roots.size(); ++j) {
      const Cplx d = roots[i] - roots[j];
      if (std::abs(d) < 1e-8) throw NearSingular("root separation", d);
      // poles of the recursion weights and of z, omega, w at the difference
      if (std::abs(el_b(d, eta)) < 1e-8 * scale ||
          std::abs(el_b(-d, eta)) < 1e-8 * scale)
        throw NearSingular("z pole at root difference", d);
      if (std::abs(el_d(d, eta)) < 1e-8 * scale ||
          std::abs(el_d(-d, eta)) < 1e-8 * scale)
        throw NearSingular("y pole at root difference", d);
    }
  }
}

Eigen::VectorXcd bethe_state(const std::vector<Cplx>& roots, Workspace& ws) {
  const ModelParams& p = ws.params();
  validate_roots(roots, p);
  if (2 * static_cast<size_t>(p.n_sites) < roots.size())
    throw IndexOutOfRange("root count " + std::to_string(roots.size()) +
                          " exceeds twice the chain length");
  if (roots.empty()) return ws.right_state(BasisLabel{});
  std::vector<Cplx> rest(roots.begin() + 1, roots.end());
  Eigen::VectorXcd state =
      ws.blocks(roots[0]).B1() * bethe_state(rest, ws);
  if (rest.empty()) return state;
  Eigen::VectorXcd lower = Eigen::VectorXcd::Zero(state.size());
  for (size_t i = 0; i < rest.size(); ++i)
    lower += drop_weight(rest, i, roots[0], p) * bethe_state(drop(rest, i), ws);
  return state - ws.blocks(roots[0]).B2() * lower;
}

std::vector<Cplx> bae_residual(const std::vector<Cplx>& roots,
                               const ModelParams& p) {
  const Cplx eta = p.eta;
  std::vector<Cplx> out(roots.size());
  for (size_t j = 0; j < roots.size(); ++j) {
    Cplx rhs = 1.0;
    for (size_t k = 0; k < roots.size(); ++k) {
      if (k == j) continue;
      rhs *= fn_z(roots[j] - roots[k], eta) / fn_z(roots[k] - roots[j], eta) *
             fn_w(roots[k] - roots[j], eta);
    }
    out[j] = alpha1(roots[j], p) / alpha2(roots[j], p) - rhs;
  }
  return out;
}

std::vector<Cplx> bae_log_residual(const std::vector<Cplx>& roots,
                                   const ModelParams& p) {
  const Cplx eta = p.eta;
  std::vector<Cplx> out(roots.size());
  for (size_t j = 0; j < roots.size(); ++j) {
    Cplx g = std::log(alpha1(roots[j], p)) - std::log(alpha2(roots[j], p));
    for (size_t k = 0; k < roots.size(); ++k) {
      if (k == j) continue;
      g -= std::log(fn_z(roots[j] - roots[k], eta)) -
           std::log(fn_z(roots[k] - roots[j], eta)) +
           std::log(fn_w(roots[k] - roots[j], eta));
    }
    // fold the branch ambiguity of the logs into (-pi, pi]
    double im = std::remainder(g.imag(), 2.0 * kPi);
    out[j] = Cplx{g.real(), im};
  }
  return out;
}

namespace {

double max_abs(const std::vector<Cplx>& v) {
  double m = 0;
  for (const Cplx& x : v) m = std::max(m, std::abs(x));
  return m;
}

Eigen::MatrixXcd bae_jacobian(const std::vector<Cplx>& u,
                              const ModelParams& p) {
  const Cplx eta = p.eta;
  const int n = static_cast<int>(u.size());
  Eigen::MatrixXcd jac = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    jac(j, j) = dlog_alpha1(u[j], p) - dlog_alpha2(u[j], p);
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const Cplx cross = dlog_z(u[j] - u[k], eta) + dlog_z(u[k] - u[j], eta) -
                         dlog_w(u[k] - u[j], eta);
      jac(j, j) -= cross;
      jac(j, k) = cross;
    }
  }
  return jac;
}

}  // namespace

std::vector<Cplx> solve_bae(const std::vector<std::vector<Cplx>>& guesses,
                            const ModelParams& p, int max_iter, double tol) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& guess : guesses) {
    std::vector<Cplx> u = guess;
    const int n = static_cast<int>(u.size());
    double res;
    try {
      res = max_abs(bae_log_residual(u, p));
    } catch (const Error&) {
      continue;
    }
    for (int iter = 0; iter < max_iter && res > tol; ++iter) {
      std::vector<Cplx> g = bae_log_residual(u, p);
      Eigen::VectorXcd gv(n);
      for (int j = 0; j < n; ++j) gv(j) = g[j];
      Eigen::VectorXcd step = bae_jacobian(u, p).fullPivLu().solve(gv);
      double damp = 1.0;
      std::vector<Cplx> trial = u;
      double trial_res = res;
      while (damp > 1.0 / 1024.0) {
        for (int j = 0; j < n; ++j) trial[j] = u[j] - damp * step(j);
        try {
          trial_res = max_abs(bae_log_residual(trial, p));
        } catch (const Error&) {
          trial_res = std::numeric_limits<double>::infinity();
        }
        if (trial_res < res) break;
        damp *= 0.5;
      }
      if (trial_res >= res) break;  // no descent direction left
      u = trial;
      res = trial_res;
    }
    best = std::min(best, res);
    if (res <= tol) {
      bool distinct = true;
      for (size_t i = 0; i < u.size() && distinct; ++i)
        for (size_t j = i + 1; j < u.size(); ++j)
          if (std::abs(u[i] - u[j]) < 1e-8) distinct = false;
      if (!distinct) continue;
      std::sort(u.begin(), u.end(), [](Cplx a, Cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
      });
      return u;
    }
  }
  throw NoConvergence(best);
}

double on_shell_check(const std::vector<Cplx>& roots, Workspace& ws,
                      const std::vector<Cplx>& u_samples,
                      std::vector<Cplx>* lambda_out) {
  Eigen::VectorXcd phi = bethe_state(roots, ws);
  if (lambda_out) lambda_out->clear();
  double worst = 0;
  for (Cplx u : u_samples) {
    Eigen::VectorXcd tphi = transfer(ws.blocks(u)) * phi;
    Eigen::Index imax;
    phi.cwiseAbs().maxCoeff(&imax);
    const Cplx lambda = tphi(imax) / phi(imax);
    if (lambda_out) lambda_out->push_back(lambda);
    worst = std::max(worst, (tphi - lambda * phi).norm() / tphi.norm());
  }
  return worst;
}

Cplx f_direct(const BasisLabel& label, const std::vector<Cplx>& roots,
              Workspace& ws) {
  if (label.excitation() != static_cast<int>(roots.size())) return 0.0;
  return ws.left_state(label) * bethe_state(roots, ws);
}

Cplx f_recursive(const BasisLabel& label, const std::vector<Cplx>& roots,
                 const ModelParams& p) {
  const int n = static_cast<int>(roots.size());
  if (label.excitation() != n) return 0.0;
  if (n == 0) return 1.0;
  const std::vector<Cplx> rest(roots.begin() + 1, roots.end());
  Cplx total = 0.0;
  for (const auto& t : apply_b1_formula(label, roots[0], p))
    total += t.coeff * f_recursive(t.label, rest, p);
  if (!rest.empty()) {
    const auto b2_terms = apply_b2_formula(label, roots[0], p);
    for (size_t i = 0; i < rest.size(); ++i) {
      const Cplx wgt = drop_weight(rest, i, roots[0], p);
      const std::vector<Cplx> fewer = drop(rest, i);
      for (const auto& t : b2_terms)
        total -= wgt * t.coeff * f_recursive(t.label, fewer, p);
    }
  }
  return total;
}

Cplx f1_explicit(int site, Cplx u1, const ModelParams& p) {
  const Cplx eta = p.eta;
  const Cplx t1 = shifted(p.theta[site - 1], Level::one, eta);
  return el_ebar(t1 - u1, eta) / el_b(t1 - u1, eta) * alpha1(u1, p) *
         alpha2(t1, p);
}

Cplx f2_explicit_two(int site, Cplx u1, Cplx u2, const ModelParams& p) {
  const Cplx eta = p.eta;
  const Cplx t1 = shifted(p.theta[site - 1], Level::one, eta);
  const Cplx t2 = shifted(p.theta[site - 1], Level::two, eta);
  const Cplx bracket =
      el_ebar(t2 - u1, eta) * el_ebar(t1 - u2, eta) * std::exp(-eta) /
          (el_d(t2 - u1, eta) * el_b(t1 - u2, eta)) -
      el_fbar(t2 - u1, eta) / (fn_y(u1 - u2, eta) * el_d(t2 - u1, eta));
  return bracket * alpha1(u1, p) * alpha1(u2, p) * alpha3(t2, p);
}

Cplx f2_explicit_one_one(int site1, int site2, Cplx u1, Cplx u2,
                         const ModelParams& p) {
  const Cplx eta = p.eta;
  const Cplx t1 = shifted(p.theta[site1 - 1], Level::one, eta);
  const Cplx t2 = shifted(p.theta[site2 - 1], Level::one, eta);
  const Cplx term1 = el_ebar(t1 - u1, eta) * fn_z(t1 - t2, eta) *
                     el_ebar(t2 - u2, eta) * fn_z(t2 - u1, eta) /
                     (el_b(t1 - u1, eta) * fn_w(t1 - t2, eta) *
                      el_b(t2 - u2, eta));
  const Cplx term2 = el_ebar(t2 - u1, eta) * fn_z(t2 - t1, eta) *
                     el_ebar(t1 - u2, eta) * fn_z(t1 - u1, eta) /
                     (el_b(t2 - u1, eta) * el_b(t1 - u2, eta));
  const Cplx term3 = fn_z(t2 - u1, eta) * el_fbar(t1 - u1, eta) *
                     el_g(t1 - t2, eta) /
                     (fn_y(u1 - u2, eta) * el_b(t1 - u1, eta) *
                      el_d(t1 - t2, eta));
  // Printed last numerator reads ebar(theta1_{p1}-u2); expanding the state
  // recursion one step (and the direct inner product) gives
  // ebar(theta1_{p2}-u1) instead, which is what the oracle confirms.
  const Cplx term4 = -el_gbar(t1 - u1, eta) * el_ebar(t2 - u1, eta) /
                     (fn_y(u1 - u2, eta) * el_b(t1 - u1, eta) *
                      el_b(t2 - u1, eta));
  return (term1 + term2 + term3 + term4) * alpha1(u1, p) * alpha1(u2, p) *
         alpha2(t1, p) * alpha2(t2, p);
}

std::vector<LabelTerm> expand_bethe(const std::vector<Cplx>& roots,
                                    Workspace& ws) {
  const int n = static_cast<int>(roots.size());
  std::vector<LabelTerm> out;
  for (const auto& label : enumerate_labels(ws.params().n_sites)) {
    if (label.excitation() != n) continue;
    out.push_back({label, f_recursive(label, roots, ws.params()) /
                              ws.gram_formula(label)});
  }
  return out;
}

}  // namespace ik
