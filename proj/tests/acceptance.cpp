// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Every closed-form identity is held against a brute-force matrix oracle.
#include <cstdio>
#include <string>

#include "../src/bethe.hpp"
#include "../src/inverse.hpp"
#include "../src/rng.hpp"

using namespace ik;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool ok,
            const std::string& detail = "") {
  std::printf("criterion %2d %s: %s%s%s\n", number, ok ? "PASS" : "FAIL",
              what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

ModelParams make_params(int n, Cplx eta = Cplx{0.3, 0.05}) {
  ModelParams p;
  p.eta = eta;
  p.n_sites = n;
  for (int j = 1; j <= n; ++j)
    p.theta.push_back(Cplx{0.13 * j + 0.037, 0.021 * j});
  p.validate();
  return p;
}

const std::vector<Cplx> kRoots = {Cplx{0.52, 0.11}, Cplx{-0.83, 0.37},
                                  Cplx{0.21, -0.45}};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", x);
  return buf;
}

void criterion_qybe() {
  std::mt19937_64 g(101);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const Cplx eta = uniform_complex(g, 0.5) + Cplx{0.15, 0.0};
    worst = std::max(worst,
                     check_qybe(uniform_complex(g), uniform_complex(g),
                                uniform_complex(g), eta));
  }
  report(1, "Yang-Baxter equation, 100 random draws", worst < 1e-12,
         "worst " + fmt(worst));
}

void criterion_initial() {
  std::mt19937_64 g(102);
  const RMatrix perm = permutation9();
  double worst = 0;
  for (int k = 0; k < 10; ++k) {
    const Cplx eta = uniform_complex(g, 0.5) + Cplx{0.1, 0.0};
    const RMatrix r0 = build_r(Cplx{0, 0}, eta);
    worst = std::max(worst, (r0 - varphi(eta) * perm).cwiseAbs().maxCoeff() /
                                r0.cwiseAbs().maxCoeff());
  }
  report(2, "R(0) is the scaled permutation, 10 random couplings",
         worst < 1e-14, "worst " + fmt(worst));
}

void criterion_unitarity() {
  std::mt19937_64 g(103);
  const Cplx eta{0.3, 0.05};
  double worst = 0;
  for (int k = 0; k < 50; ++k)
    worst = std::max(worst, check_unitarity(uniform_complex(g), eta));
  report(3, "unitarity, 50 random spectral points", worst < 1e-12,
         "worst " + fmt(worst));
}

void criterion_rtt() {
  std::mt19937_64 g(104);
  const ModelParams p = make_params(2);
  double worst = 0;
  for (int k = 0; k < 20; ++k)
    worst =
        std::max(worst, check_rtt(uniform_complex(g), uniform_complex(g), p));
  report(4, "monodromy commutation relation, N=2, 20 random pairs",
         worst < 1e-12, "worst " + fmt(worst));
}

void criterion_exchange() {
  std::mt19937_64 g(105);
  const ModelParams p = make_params(2);
  double worst = 0;
  int relations = 0;
  for (int k = 0; k < 10; ++k) {
    const auto residuals =
        check_exchange_relations(uniform_complex(g), uniform_complex(g), p);
    relations = static_cast<int>(residuals.size());
    for (const auto& r : residuals) worst = std::max(worst, r.residual);
  }
  report(5, "all block exchange relations, N=2, 10 random pairs",
         worst < 1e-11 && relations >= 22,
         std::to_string(relations) + " relations, worst " + fmt(worst));
}

void criterion_basis_count() {
  bool ok = true;
  long expect = 1;
  for (int n = 1; n <= 5; ++n) {
    expect *= 3;
    const auto labels = enumerate_labels(n);
    if (static_cast<long>(labels.size()) != expect) ok = false;
    for (size_t i = 1; i < labels.size(); ++i)
      if (!(labels[i - 1] < labels[i])) ok = false;
  }
  report(6, "basis enumeration yields 3^N labels, N=1..5", ok);
}

void criterion_orthogonality() {
  double offdiag = 0, diag = 0;
  for (int n = 1; n <= 3; ++n) {
    ModelParams p = make_params(n);
    Workspace ws(p);
    double o = 0, d = 0;
    check_orthogonality(ws, o, d);
    offdiag = std::max(offdiag, o);
    diag = std::max(diag, d);
  }
  report(7, "orthogonality and closed-form Gram factors, N<=3",
         offdiag < 1e-8 && diag < 1e-8,
         "offdiag " + fmt(offdiag) + ", gram " + fmt(diag));
}

void criterion_completeness() {
  double worst = 0;
  for (int n = 1; n <= 3; ++n) {
    ModelParams p = make_params(n);
    Workspace ws(p);
    worst = std::max(worst, check_completeness(ws));
  }
  report(8, "resolution of the identity, N<=3", worst < 1e-9,
         "worst " + fmt(worst));
}

void criterion_vanishing() {
  double worst = 0;
  for (int n = 1; n <= 3; ++n) {
    ModelParams p = make_params(n);
    Workspace ws(p);
    for (const auto& c : check_vanishing(ws))
      worst = std::max(worst, c.residual);
  }
  report(9, "annihilation identities on basis states, N<=3", worst < 1e-10,
         "worst " + fmt(worst));
}

void criterion_actions() {
  std::mt19937_64 g(110);
  double worst1 = 0, worst2 = 0;
  for (int n = 1; n <= 3; ++n) {
    ModelParams p = make_params(n);
    Workspace ws(p);
    for (const auto& label : enumerate_labels(n)) {
      if (label.m() > 2) continue;
      for (int k = 0; k < 20; ++k) {
        const Cplx u = uniform_complex(g);
        worst1 = std::max(worst1, check_b1_action(ws, label, u));
        worst2 = std::max(worst2, check_b2_action(ws, label, u));
      }
    }
  }
  report(10, "creation-block action formulas, labels m<=2, N<=3, 20 u each",
         worst1 < 1e-8 && worst2 < 1e-8,
         "B1 " + fmt(worst1) + ", B2 " + fmt(worst2) +
             "; second-sum spectator reading: level-independent corrected "
             "form (both literal readings fail the oracle)");
}

void criterion_f_agreement() {
  double worst = 0;
  for (int nsites = 1; nsites <= 3; ++nsites) {
    ModelParams p = make_params(nsites);
    Workspace ws(p);
    for (int n = 0; n <= std::min(3, 2 * nsites); ++n) {
      std::vector<Cplx> roots(kRoots.begin(), kRoots.begin() + n);
      for (const auto& label : enumerate_labels(nsites)) {
        const Cplx fd = f_direct(label, roots, ws);
        if (label.excitation() != n) {
          worst = std::max(worst, std::abs(fd));
          continue;
        }
        const Cplx fr = f_recursive(label, roots, p);
        worst = std::max(worst,
                         std::abs(fd - fr) / std::max(1.0, std::abs(fd)));
      }
    }
    // explicit closed forms where defined
    for (int s = 1; s <= nsites; ++s) {
      const Cplx fd = f_direct(BasisLabel{{s}, {}}, {kRoots[0]}, ws);
      worst = std::max(worst, std::abs(fd - f1_explicit(s, kRoots[0], p)) /
                                  std::abs(fd));
      const Cplx fd2 =
          f_direct(BasisLabel{{}, {s}}, {kRoots[0], kRoots[1]}, ws);
      worst = std::max(
          worst, std::abs(fd2 - f2_explicit_two(s, kRoots[0], kRoots[1], p)) /
                     std::abs(fd2));
    }
    if (nsites >= 2) {
      const Cplx fd =
          f_direct(BasisLabel{{1, 2}, {}}, {kRoots[0], kRoots[1]}, ws);
      worst = std::max(
          worst,
          std::abs(fd - f2_explicit_one_one(1, 2, kRoots[0], kRoots[1], p)) /
              std::abs(fd));
    }
  }
  report(11, "overlap coefficients agree three ways, n<=3, N<=3",
         worst < 1e-8, "worst " + fmt(worst));
}

void criterion_expand() {
  double worst = 0;
  for (int nsites = 2; nsites <= 3; ++nsites) {
    ModelParams p = make_params(nsites);
    Workspace ws(p);
    for (int n = 0; n <= 3; ++n) {
      std::vector<Cplx> roots(kRoots.begin(), kRoots.begin() + n);
      Eigen::VectorXcd direct = bethe_state(roots, ws);
      Eigen::VectorXcd recon = Eigen::VectorXcd::Zero(direct.size());
      for (const auto& t : expand_bethe(roots, ws))
        recon += t.coeff * ws.right_state(t.label);
      worst = std::max(worst, (direct - recon).norm() / direct.norm());
    }
  }
  report(12, "basis expansion reconstructs the Bethe state, n<=3, N<=3",
         worst < 1e-8, "worst " + fmt(worst));
}

void criterion_bae() {
  ModelParams p1 = make_params(1);
  const Cplx closed = p1.theta[0] + 2.0 * p1.eta + Cplx{0, kPi};
  const auto sol1 = solve_bae({{closed + Cplx{0.3, 0.4}}}, p1);
  const double root_err = std::abs(sol1[0] - closed);

  ModelParams p2 = make_params(2);
  Workspace ws(p2);
  std::vector<std::vector<Cplx>> guesses;
  for (int a = 0; a < 6; ++a)
    guesses.push_back({p2.theta[0] + 2.0 * p2.eta + Cplx{0.2 * a - 0.5, kPi}});
  const auto roots = solve_bae(guesses, p2);
  std::mt19937_64 g(113);
  std::vector<Cplx> samples;
  for (int k = 0; k < 5; ++k) samples.push_back(uniform_complex(g));
  std::vector<Cplx> lambda;
  const double eig_res = on_shell_check(roots, ws, samples, &lambda);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(transfer(samples[0], p2));
  double spec = 1e99;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    spec = std::min(spec, std::abs(es.eigenvalues()(i) - lambda[0]));
  spec /= std::abs(lambda[0]);

  report(13, "Bethe equations: N=1 closed-form root, N=2 on-shell eigenstate",
         root_err < 1e-12 && eig_res < 1e-8 && spec < 1e-8,
         "root " + fmt(root_err) + ", eigen " + fmt(eig_res) + ", spectrum " +
             fmt(spec));
}

void criterion_hamiltonian() {
  ModelParams p;
  p.eta = Cplx{0.3, 0.05};
  p.n_sites = 3;
  p.theta.assign(3, Cplx{0, 0});
  const Operator h = hamiltonian(p);
  const Operator t = transfer(Cplx{0.47, 0.19}, p);
  const double comm = (h * t - t * h).norm() / (h * t).norm();
  const double step = 1e-6;
  const Operator tp =
      (transfer(Cplx{step, 0}, p) - transfer(Cplx{-step, 0}, p)) / (2 * step);
  const Operator log_deriv = tp * transfer(Cplx{0, 0}, p).inverse();
  const double fd = (h - log_deriv).norm() / log_deriv.norm();
  report(14, "Hamiltonian commutes with transfer and matches its "
             "log-derivative, N=3",
         comm < 1e-10 && fd < 1e-6,
         "commutator " + fmt(comm) + ", finite-difference " + fmt(fd));
}

void criterion_inverse() {
  double worst = 0, prefactor_gap = 0;
  for (int n = 1; n <= 3; ++n) {
    ModelParams p = make_params(n);
    ReconstructionReport r;
    for (int site = 1; site <= n; ++site)
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
          reconstruct_local(i, j, site, p, &r);
          worst = std::max(worst, r.residual);
          prefactor_gap =
              std::max(prefactor_gap,
                       std::abs(r.prefactor_used - r.prefactor_printed) /
                           std::abs(r.prefactor_printed));
        }
  }
  report(15, "local operators rebuilt from monodromy blocks, N<=3",
         worst < 1e-9,
         "worst " + fmt(worst) + "; measured vs closed-form prefactor gap " +
             fmt(prefactor_gap));
}

}  // namespace

int main() {
  criterion_qybe();
  criterion_initial();
  criterion_unitarity();
  criterion_rtt();
  criterion_exchange();
  criterion_basis_count();
  criterion_orthogonality();
  criterion_completeness();
  criterion_vanishing();
  criterion_actions();
  criterion_f_agreement();
  criterion_expand();
  criterion_bae();
  criterion_hamiltonian();
  criterion_inverse();
  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
