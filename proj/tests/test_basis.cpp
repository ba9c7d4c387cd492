#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "../src/basis.hpp"

using namespace ik;

namespace {

ModelParams make_params(int n, bool complex_params = false) {
  ModelParams p;
  p.eta = complex_params ? Cplx{0.23, 0.07} : Cplx{0.3, 0.0};
  p.n_sites = n;
  p.theta = {Cplx{0.13, 0.0}, Cplx{-0.27, 0.0}, Cplx{0.41, 0.0},
             Cplx{-0.06, 0.0}};
  if (complex_params) {
    p.theta = {Cplx{0.13, 0.05}, Cplx{-0.27, -0.11}, Cplx{0.41, 0.17},
               Cplx{-0.06, 0.31}};
  }
  p.theta.resize(n);
  return p;
}

}  // namespace

TEST_CASE("label enumeration counts 3^N states, sorted and unique") {
  for (int n = 1; n <= 5; ++n) {
    auto labels = enumerate_labels(n);
    size_t expect = 1;
    for (int i = 0; i < n; ++i) expect *= 3;
    CHECK(labels.size() == expect);
    CHECK(std::is_sorted(labels.begin(), labels.end()));
    CHECK(std::adjacent_find(labels.begin(), labels.end()) == labels.end());
  }
}

TEST_CASE("label string form") {
  CHECK(BasisLabel{{}, {}}.str() == "{|}");
  CHECK(BasisLabel{{1, 3}, {2}}.str() == "{1,3|2}");
  CHECK(BasisLabel{{}, {2}}.str() == "{|2}");
  BasisLabel l{{1, 3}, {2}};
  CHECK(l.m() == 3);
  CHECK(l.m2() == 2);
  CHECK(l.excitation() == 4);
}

TEST_CASE("pairing is diagonal and matches the closed-form norm") {
  for (int n = 1; n <= 3; ++n) {
    ModelParams p = make_params(n);
    Workspace ws(p);
    double off = 0, diag = 0;
    check_orthogonality(ws, off, diag);
    CHECK(off < 1e-12);
    CHECK(diag < 1e-12);
  }
}

TEST_CASE("sum of outer products over the basis resolves the identity") {
  for (int n = 1; n <= 3; ++n) {
    ModelParams p = make_params(n);
    Workspace ws(p);
    CHECK(check_completeness(ws) < 1e-12);
  }
}

TEST_CASE("annihilation properties of the reference states") {
  ModelParams p = make_params(3);
  Workspace ws(p);
  for (auto& c : check_vanishing(ws)) {
    INFO(c.id);
    CHECK(c.residual < 1e-12);
  }
}

TEST_CASE("argument reordering inside a state costs the stated factors") {
  ModelParams p = make_params(3, true);
  Workspace ws(p);
  for (auto& c : check_quasi_symmetry(ws)) {
    INFO(c.id);
    CHECK(c.residual < 1e-12);
  }
}

TEST_CASE("canonical reordering of a single argument list") {
  ModelParams p = make_params(3);
  auto [sites, factor] = canonicalize_level1({3, 2, 1}, p);
  CHECK(sites == std::vector<int>{1, 2, 3});
  // already canonical (printed descending): factor is 1
  auto [s2, f2] = canonicalize_level1({3, 1}, p);
  CHECK(s2 == std::vector<int>{1, 3});
  CHECK(std::abs(f2 - Cplx{1.0, 0.0}) < 1e-15);
  // one transposition out of order
  auto [s3, f3] = canonicalize_level1({1, 3}, p);
  CHECK(s3 == std::vector<int>{1, 3});
  Cplx t1 = shifted(p.theta[0], Level::one, p.eta);
  Cplx t3 = shifted(p.theta[2], Level::one, p.eta);
  CHECK(std::abs(f3 - 1.0 / fn_w(t3 - t1, p.eta)) < 1e-15);
}

TEST_CASE("first-row creation operator action matches its closed form") {
  for (bool cpx : {false, true}) {
    ModelParams p = make_params(3, cpx);
    Workspace ws(p);
    for (auto& label : enumerate_labels(3)) {
      for (Cplx u : {Cplx{0.52, 0.11}, Cplx{-0.83, 0.37}}) {
        INFO(label.str());
        CHECK(check_b1_action(ws, label, u) < 1e-11);
        CHECK(check_b2_action(ws, label, u) < 1e-11);
      }
    }
  }
}

TEST_CASE("operator actions hold with four sites") {
  ModelParams p = make_params(4, true);
  Workspace ws(p);
  // spot-check the labels that exercise every spectator structure
  std::vector<BasisLabel> labels = {
      {{1, 2, 3}, {4}}, {{1, 2}, {3, 4}}, {{2, 4}, {1, 3}},
      {{1}, {2, 3, 4}}, {{1, 2, 3, 4}, {}}, {{}, {1, 2, 3, 4}}};
  for (auto& label : labels) {
    INFO(label.str());
    CHECK(check_b1_action(ws, label, Cplx{0.52, 0.11}) < 1e-11);
    CHECK(check_b2_action(ws, label, Cplx{0.52, 0.11}) < 1e-11);
  }
}

TEST_CASE("eigenvalue of the diagonal block on a basis state") {
  ModelParams p = make_params(3, true);
  Workspace ws(p);
  const Cplx u{0.37, -0.21};
  const auto& blocks = ws.blocks(u);
  for (auto& label : enumerate_labels(3)) {
    Eigen::RowVectorXcd lhs = ws.left_state(label) * blocks.A1();
    Eigen::RowVectorXcd rhs =
        a1_eigenvalue(label, u, p) * ws.left_state(label);
    INFO(label.str());
    CHECK((lhs - rhs).norm() / std::max(1.0, rhs.norm()) < 1e-11);
  }
}

TEST_CASE("workspace rejects oversized chains") {
  ModelParams p = make_params(4);
  p.n_sites = 7;
  p.theta.assign(7, Cplx{0.0, 0.0});
  for (int i = 0; i < 7; ++i) p.theta[i] = Cplx{0.13 * i + 0.037, 0.02 * i};
  CHECK_THROWS_AS(Workspace{p}, SizeGuard);
}
