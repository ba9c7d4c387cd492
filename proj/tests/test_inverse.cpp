#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "../src/inverse.hpp"

using namespace ik;

namespace {

ModelParams make_params(int n) {
  ModelParams p;
  p.eta = Cplx{0.3, 0.1};
  p.n_sites = n;
  p.theta = {Cplx{0.13, 0.05}, Cplx{-0.27, -0.1}, Cplx{0.41, 0.2}};
  p.theta.resize(n);
  return p;
}

}  // namespace

TEST_CASE("product of transfers at the inhomogeneities is the closed-form scalar") {
  for (int n = 1; n <= 3; ++n) {
    ModelParams p = make_params(n);
    const Cplx measured = transfer_product_scalar(p);
    const Cplx predicted = printed_transfer_product_scalar(p);
    CHECK(std::abs(measured - predicted) < 1e-10 * std::abs(predicted));
    // and the product really is proportional to the identity
    const Eigen::Index dim = hilbert_dim(n);
    Operator prod = Operator::Identity(dim, dim);
    for (int j = 0; j < n; ++j) prod = prod * transfer(p.theta[j], p);
    CHECK((prod - measured * Operator::Identity(dim, dim)).norm() <
          1e-12 * prod.norm());
  }
}

TEST_CASE("auxiliary trace identity for every site and matrix unit") {
  for (int n = 1; n <= 3; ++n) {
    ModelParams p = make_params(n);
    for (int site = 1; site <= n; ++site) {
      for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
          Eigen::Matrix3cd x = Eigen::Matrix3cd::Zero();
          x(i - 1, j - 1) = 1.0;
          INFO("N=" << n << " site=" << site << " e^{" << i << j << "}");
          CHECK(check_trace_identity(site, x, p) < 1e-10);
        }
      }
    }
    // x = identity reduces to the transfer matrix itself
    CHECK(check_trace_identity(1, Eigen::Matrix3cd::Identity(), p) < 1e-11);
  }
}

TEST_CASE("local operators rebuilt from monodromy blocks") {
  for (int n = 2; n <= 3; ++n) {
    ModelParams p = make_params(n);
    for (int site = 1; site <= n; ++site) {
      for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
          ReconstructionReport rep;
          reconstruct_local(i, j, site, p, &rep);
          INFO("N=" << n << " site=" << site << " e^{" << i << j << "}");
          CHECK(rep.residual < 1e-10);
          // the measured prefactor agrees with the printed closed form
          CHECK(std::abs(rep.prefactor_used - rep.prefactor_printed) <
                1e-10 * std::abs(rep.prefactor_printed));
        }
      }
    }
  }
}

TEST_CASE("matrix-unit algebra of the reconstructions") {
  ModelParams p = make_params(2);
  const Eigen::Index dim = hilbert_dim(2);
  for (int site = 1; site <= 2; ++site) {
    Operator sum = reconstruct_local(1, 1, site, p) +
                   reconstruct_local(2, 2, site, p) +
                   reconstruct_local(3, 3, site, p);
    CHECK((sum - Operator::Identity(dim, dim)).norm() < 1e-10 * sum.norm());
    Operator prod =
        reconstruct_local(1, 2, site, p) * reconstruct_local(2, 3, site, p);
    Operator direct = reconstruct_local(1, 3, site, p);
    CHECK((prod - direct).norm() < 1e-9 * std::max(1.0, direct.norm()));
  }
  // operators at distinct sites commute
  Operator a = reconstruct_local(1, 2, 1, p);
  Operator b = reconstruct_local(2, 1, 2, p);
  CHECK((a * b - b * a).norm() < 1e-9 * (a * b).norm());
}

TEST_CASE("index guards") {
  ModelParams p = make_params(2);
  CHECK_THROWS_AS(check_trace_identity(3, Eigen::Matrix3cd::Identity(), p),
                  IndexOutOfRange);
  CHECK_THROWS_AS(reconstruct_local(0, 1, 1, p), IndexOutOfRange);
  CHECK_THROWS_AS(reconstruct_local(1, 4, 1, p), IndexOutOfRange);
}
