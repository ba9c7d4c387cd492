#pragma once

#include <Eigen/Dense>
#include <vector>

#include "common.hpp"

namespace ik {

struct ModelParams {
  Cplx eta;
  int n_sites = 1;
  std::vector<Cplx> theta;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;

  // Throws DegenerateParams if the inhomogeneities collide under any of the
  // shifts that appear as formula denominators (b, c, d at theta_j - theta_l
  // + s with s drawn from differences of {0, 2eta, 4eta, 6eta+ipi}).
  void validate() const;
};

// Spectral-point shift convention: u, u + 4eta, u + 6eta + ipi.
enum class Level { plain = 0, one = 1, two = 2 };

Cplx shifted(Cplx u, Level lv, Cplx eta);

// The ten R-matrix entry functions.
Cplx el_a(Cplx u, Cplx eta);
Cplx el_b(Cplx u, Cplx eta);
Cplx el_c(Cplx u, Cplx eta);
Cplx el_d(Cplx u, Cplx eta);
Cplx el_e(Cplx u, Cplx eta);
Cplx el_ebar(Cplx u, Cplx eta);
Cplx el_f(Cplx u, Cplx eta);
Cplx el_fbar(Cplx u, Cplx eta);
Cplx el_g(Cplx u, Cplx eta);
Cplx el_gbar(Cplx u, Cplx eta);

struct ElementValues {
  Cplx a, b, c, d, e, e_bar, f, f_bar, g, g_bar;
};

ElementValues eval_elements(Cplx u, Cplx eta);
// Closed-form d/du of each entry function (no finite differences).
ElementValues eval_elements_derivative(Cplx u, Cplx eta);

// Derived scalar functions. fn_w and fn_omega are the same function under
// two conventional glyphs.
Cplx fn_omega(Cplx u, Cplx eta);
Cplx fn_y(Cplx u, Cplx eta);
Cplx fn_ybar(Cplx u, Cplx eta);
Cplx fn_z(Cplx u, Cplx eta);
inline Cplx fn_w(Cplx u, Cplx eta) { return fn_omega(u, eta); }

// Vacuum eigenvalue products alpha_1 = prod c, alpha_2 = prod b,
// alpha_3 = prod d over u - theta_l.
Cplx alpha1(Cplx u, const ModelParams& p);
Cplx alpha2(Cplx u, const ModelParams& p);
Cplx alpha3(Cplx u, const ModelParams& p);
// alpha_1 with the factor of site `skip` (1-based) omitted.
Cplx alpha1_skip(Cplx u, const ModelParams& p, int skip);

struct AlphaValues {
  Cplx alpha1, alpha2, alpha3;
  std::vector<Cplx> alpha1_skip;  // [i-1] omits site i
};

AlphaValues eval_alpha(Cplx u, const ModelParams& p);

Cplx fn_xi(Cplx u, const ModelParams& p);
Cplx fn_xibar(Cplx u, const ModelParams& p);

struct AuxValues {
  Cplx omega, y, y_bar, z, xi, xi_bar;
};

AuxValues eval_aux(Cplx u, const ModelParams& p);

// Logarithmic derivatives used by the Newton solver's analytic Jacobian.
Cplx dlog_z(Cplx u, Cplx eta);
Cplx dlog_w(Cplx u, Cplx eta);
Cplx dlog_alpha1(Cplx u, const ModelParams& p);
Cplx dlog_alpha2(Cplx u, const ModelParams& p);

using RMatrix = Eigen::Matrix<Cplx, 9, 9>;

// 9x9 R-matrix on V (x) V, basis |i> (x) |j> lexicographic.
RMatrix build_r(Cplx u, Cplx eta);
// Same sparsity pattern filled from an arbitrary set of entry values
// (used with eval_elements_derivative for the Hamiltonian density).
RMatrix assemble_r(const ElementValues& v);
RMatrix permutation9();

// varphi = sinh(eta) - sinh(5 eta); R(0) = varphi P.
Cplx varphi(Cplx eta);
// phi(u) = [sinh eta + sinh(u-5eta)][sinh eta - sinh(u+5eta)];
// R12(u) R21(-u) = phi(u) id.
Cplx phi_unitarity(Cplx u, Cplx eta);

// Relative Frobenius residual of the Yang-Baxter equation on V^(x)3.
double check_qybe(Cplx u1, Cplx u2, Cplx u3, Cplx eta);
// Relative residual of R12(u) R21(-u) - phi(u) id.
double check_unitarity(Cplx u, Cplx eta);

}  // namespace ik
