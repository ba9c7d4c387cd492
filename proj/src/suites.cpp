#include "suites.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include "rng.hpp"

namespace ik {

namespace {

// Generic inhomogeneity pattern; irrational-looking spacings keep all the
// shifted differences away from the denominators' zeros for moderate eta.
Cplx default_theta(int site) {
  return Cplx{0.13 * site + 0.037, 0.021 * site};
}

// Params with the requested chain length, reusing the configured thetas and
// extending with the default pattern when the config is shorter.
ModelParams sized(const RunConfig& cfg, int n) {
  ModelParams p;
  p.eta = cfg.params.eta;
  p.seed = cfg.params.seed;
  p.n_sites = n;
  for (int j = 1; j <= n; ++j)
    p.theta.push_back(j <= static_cast<int>(cfg.params.theta.size())
                          ? cfg.params.theta[j - 1]
                          : default_theta(j));
  p.validate();
  return p;
}

struct CaseSink {
  SuiteReport& rep;
  const RunConfig& cfg;

  void add(std::string id,
           std::vector<std::pair<std::string, std::string>> inputs,
           double residual, double default_tol) {
    const double tol = cfg.tolerance_override.value_or(default_tol);
    rep.cases.push_back(
        {std::move(id), std::move(inputs), residual, tol, residual < tol});
  }
};

using Runner = std::function<void(const RunConfig&, std::mt19937_64&,
                                  CaseSink&, SuiteReport&)>;

std::string idx3(const char* stem, int i) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s-%03d", stem, i);
  return buf;
}

// ---- individual suites ----------------------------------------------------

void suite_qybe(const RunConfig&, std::mt19937_64& g, CaseSink& sink,
                SuiteReport&) {
  for (int k = 0; k < 100; ++k) {
    const Cplx u1 = uniform_complex(g), u2 = uniform_complex(g),
               u3 = uniform_complex(g);
    const Cplx eta = uniform_complex(g, 0.5) + Cplx{0.15, 0.0};
    sink.add(idx3("draw", k),
             {{"u1", format_complex(u1)},
              {"u2", format_complex(u2)},
              {"u3", format_complex(u3)},
              {"eta", format_complex(eta)}},
             check_qybe(u1, u2, u3, eta), 1e-12);
  }
}

void suite_unitarity(const RunConfig& cfg, std::mt19937_64& g, CaseSink& sink,
                     SuiteReport&) {
  for (int k = 0; k < 50; ++k) {
    const Cplx u = uniform_complex(g);
    sink.add(idx3("draw", k), {{"u", format_complex(u)}},
             check_unitarity(u, cfg.params.eta), 1e-12);
  }
}

void suite_initial(const RunConfig&, std::mt19937_64& g, CaseSink& sink,
                   SuiteReport&) {
  const RMatrix perm = permutation9();
  for (int k = 0; k < 10; ++k) {
    const Cplx eta = uniform_complex(g, 0.5) + Cplx{0.1, 0.0};
    const RMatrix r0 = build_r(Cplx{0, 0}, eta);
    const double scale = r0.cwiseAbs().maxCoeff();
    const double res =
        (r0 - varphi(eta) * perm).cwiseAbs().maxCoeff() / scale;
    sink.add(idx3("eta", k), {{"eta", format_complex(eta)}}, res, 1e-14);
  }
}

void suite_rtt(const RunConfig& cfg, std::mt19937_64& g, CaseSink& sink,
               SuiteReport&) {
  const ModelParams p = sized(cfg, 2);
  for (int k = 0; k < 20; ++k) {
    const Cplx u = uniform_complex(g), v = uniform_complex(g);
    sink.add(idx3("pair", k),
             {{"u", format_complex(u)}, {"v", format_complex(v)}},
             check_rtt(u, v, p), 1e-12);
  }
}

void suite_exchange(const RunConfig& cfg, std::mt19937_64& g, CaseSink& sink,
                    SuiteReport&) {
  const ModelParams p = sized(cfg, 2);
  for (int k = 0; k < 10; ++k) {
    const Cplx u = uniform_complex(g), v = uniform_complex(g);
    for (const auto& r : check_exchange_relations(u, v, p)) {
      sink.add(idx3(r.id.c_str(), k),
               {{"u", format_complex(u)}, {"v", format_complex(v)}},
               r.residual, 1e-11);
    }
  }
}

void suite_hamiltonian(const RunConfig& cfg, std::mt19937_64& g,
                       CaseSink& sink, SuiteReport&) {
  ModelParams p;
  p.eta = cfg.params.eta;
  p.n_sites = 3;
  p.theta.assign(3, Cplx{0, 0});
  const Operator h = hamiltonian(p);
  const Cplx u = uniform_complex(g);
  const Operator t = transfer(u, p);
  sink.add("commutator", {{"u", format_complex(u)}},
           (h * t - t * h).norm() / (h * t).norm(), 1e-10);

  const double step = 1e-6;
  const Operator tp =
      (transfer(Cplx{step, 0}, p) - transfer(Cplx{-step, 0}, p)) / (2 * step);
  const Operator log_deriv = tp * transfer(Cplx{0, 0}, p).inverse();
  sink.add("log-derivative", {{"fd_step", format_real(step)}},
           (h - log_deriv).norm() / log_deriv.norm(), 1e-6);
}

void suite_basis_count(const RunConfig&, std::mt19937_64&, CaseSink& sink,
                       SuiteReport&) {
  for (int n = 1; n <= kMaxSites; ++n) {
    auto labels = enumerate_labels(n);
    long expect = 1;
    for (int i = 0; i < n; ++i) expect *= 3;
    sink.add(idx3("count", n), {{"n_sites", std::to_string(n)}},
             std::abs(static_cast<double>(labels.size()) - expect), 0.5);
    bool ordered = true;
    for (size_t i = 1; i < labels.size(); ++i)
      if (!(labels[i - 1] < labels[i])) ordered = false;
    sink.add(idx3("ordered", n), {{"n_sites", std::to_string(n)}},
             ordered ? 0.0 : 1.0, 0.5);
  }
}

void suite_orthogonality(const RunConfig& cfg, std::mt19937_64&,
                         CaseSink& sink, SuiteReport&) {
  for (int n = 1; n <= std::min(cfg.params.n_sites, 3); ++n) {
    ModelParams p = sized(cfg, n);
    Workspace ws(p);
    double offdiag = 0, diag = 0;
    check_orthogonality(ws, offdiag, diag);
    sink.add(idx3("offdiag", n), {{"n_sites", std::to_string(n)}}, offdiag,
             1e-8);
    sink.add(idx3("gram", n), {{"n_sites", std::to_string(n)}}, diag, 1e-8);
  }
}

void suite_completeness(const RunConfig& cfg, std::mt19937_64&, CaseSink& sink,
                        SuiteReport&) {
  for (int n = 1; n <= std::min(cfg.params.n_sites, 3); ++n) {
    ModelParams p = sized(cfg, n);
    Workspace ws(p);
    sink.add(idx3("resolution", n), {{"n_sites", std::to_string(n)}},
             check_completeness(ws), 1e-9);
  }
}

void suite_vanishing(const RunConfig& cfg, std::mt19937_64&, CaseSink& sink,
                     SuiteReport&) {
  for (int n = 1; n <= std::min(cfg.params.n_sites, 3); ++n) {
    ModelParams p = sized(cfg, n);
    Workspace ws(p);
    for (const auto& c : check_vanishing(ws))
      sink.add("n" + std::to_string(n) + "-" + c.id,
               {{"n_sites", std::to_string(n)}}, c.residual, 1e-10);
  }
}

void suite_quasi_symmetry(const RunConfig& cfg, std::mt19937_64&,
                          CaseSink& sink, SuiteReport&) {
  for (int n = 1; n <= std::min(cfg.params.n_sites, 3); ++n) {
    ModelParams p = sized(cfg, n);
    Workspace ws(p);
    for (const auto& c : check_quasi_symmetry(ws))
      sink.add("n" + std::to_string(n) + "-" + c.id,
               {{"n_sites", std::to_string(n)}}, c.residual, 1e-10);
  }
}

void action_suite(bool second_operator, const RunConfig& cfg,
                  std::mt19937_64& g, CaseSink& sink, SuiteReport& rep) {
  const int nmax = std::min(cfg.params.n_sites, 3);
  for (int n = 1; n <= nmax; ++n) {
    ModelParams p = sized(cfg, n);
    Workspace ws(p);
    for (const auto& label : enumerate_labels(n)) {
      if (label.m() > 2) continue;
      double worst = 0;
      for (int k = 0; k < 20; ++k) {
        const Cplx u = uniform_complex(g);
        const double r = second_operator ? check_b2_action(ws, label, u)
                                         : check_b1_action(ws, label, u);
        worst = std::max(worst, r);
      }
      sink.add("n" + std::to_string(n) + "-" + label.str(),
               {{"n_sites", std::to_string(n)}, {"draws", "20"}}, worst, 1e-8);
    }
  }
  if (second_operator)
    rep.notes.push_back(
        {"superscript-reading",
         "level-independent corrected form; both literal readings of the "
         "second-sum spectator factors fail the matrix oracle"});
}

void suite_b1_action(const RunConfig& cfg, std::mt19937_64& g, CaseSink& sink,
                     SuiteReport& rep) {
  action_suite(false, cfg, g, sink, rep);
}

void suite_b2_action(const RunConfig& cfg, std::mt19937_64& g, CaseSink& sink,
                     SuiteReport& rep) {
  action_suite(true, cfg, g, sink, rep);
}

const std::vector<Cplx> kRoots = {Cplx{0.52, 0.11}, Cplx{-0.83, 0.37},
                                  Cplx{0.21, -0.45}};

void suite_bethe_build(const RunConfig& cfg, std::mt19937_64&, CaseSink& sink,
                       SuiteReport&) {
  ModelParams p = sized(cfg, 2);
  Workspace ws(p);
  const Eigen::VectorXcd vac = ws.right_state(BasisLabel{});

  Eigen::VectorXcd one = bethe_state({kRoots[0]}, ws);
  sink.add("recursion-n1", {{"u1", format_complex(kRoots[0])}},
           (one - ws.blocks(kRoots[0]).B1() * vac).norm() / one.norm(), 1e-12);

  Eigen::VectorXcd expect =
      ws.blocks(kRoots[0]).B1() * (ws.blocks(kRoots[1]).B1() * vac) -
      ws.blocks(kRoots[0]).B2() *
          (alpha1(kRoots[1], p) / fn_y(kRoots[0] - kRoots[1], p.eta)) * vac;
  Eigen::VectorXcd two = bethe_state({kRoots[0], kRoots[1]}, ws);
  sink.add("recursion-n2", {}, (two - expect).norm() / expect.norm(), 1e-11);

  for (int n = 1; n <= 3; ++n) {
    std::vector<Cplx> roots(kRoots.begin(), kRoots.begin() + n);
    Eigen::VectorXcd v = bethe_state(roots, ws);
    double leak = 0;
    for (Eigen::Index idx = 0; idx < v.size(); ++idx) {
      int weight = 0, rem = static_cast<int>(idx);
      for (int s = 0; s < p.n_sites; ++s) {
        weight += rem % 3;
        rem /= 3;
      }
      if (weight != n) leak = std::max(leak, std::abs(v(idx)));
    }
    sink.add(idx3("weight-sector", n), {{"roots", std::to_string(n)}},
             leak / v.norm(), 1e-12);
  }
}

void suite_bae_solve(const RunConfig& cfg, std::mt19937_64&, CaseSink& sink,
                     SuiteReport&) {
  ModelParams p1 = sized(cfg, 1);
  const Cplx closed = p1.theta[0] + 2.0 * p1.eta + Cplx{0, kPi};
  sink.add("closed-form-residual", {{"root", format_complex(closed)}},
           std::abs(bae_residual({closed}, p1)[0]), 1e-12);
  auto sol = solve_bae({{closed + Cplx{0.3, 0.4}}}, p1);
  sink.add("newton-n1", {{"guess_offset", "[0.3, 0.4]"}},
           std::abs(sol[0] - closed), 1e-12);

  ModelParams p2 = sized(cfg, std::min(cfg.params.n_sites, 3));
  std::vector<std::vector<Cplx>> guesses;
  if (cfg.bethe && !cfg.bethe->guesses.empty()) {
    guesses = cfg.bethe->guesses;
  } else {
    for (int a = 0; a < 6; ++a)
      guesses.push_back(
          {p2.theta[0] + 2.0 * p2.eta + Cplx{0.2 * a - 0.5, kPi}});
  }
  auto sol2 = solve_bae(guesses, p2);
  double worst = 0;
  for (const Cplx& r : bae_residual(sol2, p2))
    worst = std::max(worst, std::abs(r));
  sink.add("newton-multi", {{"root", format_complex(sol2[0])}}, worst, 1e-10);
}

void suite_on_shell(const RunConfig& cfg, std::mt19937_64& g, CaseSink& sink,
                    SuiteReport& rep) {
  ModelParams p = sized(cfg, std::min(cfg.params.n_sites, 3));
  Workspace ws(p);
  std::vector<std::vector<Cplx>> guesses;
  if (cfg.bethe && !cfg.bethe->guesses.empty()) {
    guesses = cfg.bethe->guesses;
  } else {
    for (int a = 0; a < 6; ++a)
      guesses.push_back(
          {p.theta[0] + 2.0 * p.eta + Cplx{0.2 * a - 0.5, kPi}});
  }
  auto roots = solve_bae(guesses, p);

  std::vector<Cplx> samples;
  if (cfg.bethe && !cfg.bethe->sample_points.empty())
    samples = cfg.bethe->sample_points;
  else
    for (int k = 0; k < 5; ++k) samples.push_back(uniform_complex(g));
  std::vector<Cplx> lambda;
  const double res = on_shell_check(roots, ws, samples, &lambda);
  sink.add("eigen-residual", {{"samples", "5"}}, res, 1e-8);
  rep.notes.push_back({"eigenvalue", format_complex(lambda[0])});

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(transfer(samples[0], p));
  double best = 1e99;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    best = std::min(best, std::abs(es.eigenvalues()(i) - lambda[0]));
  sink.add("spectrum-match", {{"u", format_complex(samples[0])}},
           best / std::abs(lambda[0]), 1e-8);

  // negative control: perturbed roots must NOT look on-shell, so the case
  // residual is the inverted ratio threshold/actual (pass iff actual > 1e-4)
  std::vector<Cplx> off_roots = roots;
  off_roots[0] += 0.01;
  const double off = on_shell_check(off_roots, ws, {samples[0]});
  sink.add("off-shell-control", {{"perturbation", "0.01"}}, 1e-4 / off, 1.0);
}

void suite_f_table(const RunConfig& cfg, std::mt19937_64& g, CaseSink& sink,
                   SuiteReport&) {
  for (int nsites = 1; nsites <= std::min(cfg.params.n_sites, 3); ++nsites) {
    ModelParams p = sized(cfg, nsites);
    Workspace ws(p);
    for (int n = 0; n <= std::min(3, 2 * nsites); ++n) {
      std::vector<Cplx> roots(kRoots.begin(), kRoots.begin() + n);
      double sel = 0, agree = 0;
      for (const auto& label : enumerate_labels(nsites)) {
        const Cplx fd = f_direct(label, roots, ws);
        if (label.excitation() != n) {
          sel = std::max(sel, std::abs(fd));
          continue;
        }
        const Cplx fr = f_recursive(label, roots, p);
        agree = std::max(agree,
                         std::abs(fd - fr) / std::max(1.0, std::abs(fd)));
      }
      const std::string tag =
          "N" + std::to_string(nsites) + "-n" + std::to_string(n);
      sink.add("selection-" + tag, {}, sel, 1e-10);
      sink.add("recursion-" + tag, {}, agree, 1e-8);
    }
    // explicit closed forms at one and two roots
    double expl = 0;
    for (int s = 1; s <= nsites; ++s) {
      const Cplx fd = f_direct(BasisLabel{{s}, {}}, {kRoots[0]}, ws);
      expl = std::max(expl, std::abs(fd - f1_explicit(s, kRoots[0], p)) /
                                std::abs(fd));
      const Cplx fd2 =
          f_direct(BasisLabel{{}, {s}}, {kRoots[0], kRoots[1]}, ws);
      expl = std::max(
          expl, std::abs(fd2 - f2_explicit_two(s, kRoots[0], kRoots[1], p)) /
                    std::abs(fd2));
    }
    if (nsites >= 2) {
      const Cplx fd = f_direct(BasisLabel{{1, 2}, {}}, {kRoots[0], kRoots[1]},
                               ws);
      expl = std::max(
          expl,
          std::abs(fd - f2_explicit_one_one(1, 2, kRoots[0], kRoots[1], p)) /
              std::abs(fd));
    }
    sink.add("explicit-N" + std::to_string(nsites), {}, expl, 1e-9);
  }
  // random two-root pairs against the recursion at N=2
  ModelParams p = sized(cfg, 2);
  Workspace ws(p);
  for (int k = 0; k < 10; ++k) {
    const Cplx u1 = uniform_complex(g), u2 = uniform_complex(g);
    try {
      validate_roots({u1, u2}, p);
    } catch (const NearSingular&) {
      continue;  // resample implicitly; skipped draws stay reproducible
    }
    double agree = 0;
    for (const auto& label : enumerate_labels(2)) {
      if (label.excitation() != 2) continue;
      const Cplx fd = f_direct(label, {u1, u2}, ws);
      const Cplx fr = f_recursive(label, {u1, u2}, p);
      agree =
          std::max(agree, std::abs(fd - fr) / std::max(1.0, std::abs(fd)));
    }
    sink.add(idx3("random-pair", k),
             {{"u1", format_complex(u1)}, {"u2", format_complex(u2)}}, agree,
             1e-8);
  }
}

void suite_expand(const RunConfig& cfg, std::mt19937_64&, CaseSink& sink,
                  SuiteReport&) {
  for (int nsites = 2; nsites <= std::min(cfg.params.n_sites, 3); ++nsites) {
    ModelParams p = sized(cfg, nsites);
    Workspace ws(p);
    for (int n = 0; n <= 3; ++n) {
      std::vector<Cplx> roots(kRoots.begin(), kRoots.begin() + n);
      Eigen::VectorXcd direct = bethe_state(roots, ws);
      Eigen::VectorXcd recon = Eigen::VectorXcd::Zero(direct.size());
      for (const auto& t : expand_bethe(roots, ws))
        recon += t.coeff * ws.right_state(t.label);
      sink.add("N" + std::to_string(nsites) + "-n" + std::to_string(n),
               {{"terms", std::to_string(expand_bethe(roots, ws).size())}},
               (direct - recon).norm() / direct.norm(), 1e-8);
    }
  }
}

void suite_inverse_trace(const RunConfig& cfg, std::mt19937_64&,
                         CaseSink& sink, SuiteReport&) {
  for (int n = 1; n <= std::min(cfg.params.n_sites, 3); ++n) {
    ModelParams p = sized(cfg, n);
    for (int site = 1; site <= n; ++site)
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
          Eigen::Matrix3cd x = Eigen::Matrix3cd::Zero();
          x(i - 1, j - 1) = 1.0;
          sink.add("N" + std::to_string(n) + "-site" + std::to_string(site) +
                       "-e" + std::to_string(i) + std::to_string(j),
                   {}, check_trace_identity(site, x, p), 1e-9);
        }
  }
}

void suite_inverse_local(const RunConfig& cfg, std::mt19937_64&,
                         CaseSink& sink, SuiteReport& rep) {
  for (int n = 1; n <= std::min(cfg.params.n_sites, 3); ++n) {
    ModelParams p = sized(cfg, n);
    double prefactor_gap = 0;
    ReconstructionReport r;
    for (int site = 1; site <= n; ++site)
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
          reconstruct_local(i, j, site, p, &r);
          sink.add("N" + std::to_string(n) + "-site" + std::to_string(site) +
                       "-e" + std::to_string(i) + std::to_string(j),
                   {}, r.residual, 1e-9);
          prefactor_gap =
              std::max(prefactor_gap,
                       std::abs(r.prefactor_used - r.prefactor_printed) /
                           std::abs(r.prefactor_printed));
        }
    rep.notes.push_back({"prefactor-used-N" + std::to_string(n),
                         format_complex(r.prefactor_used)});
    rep.notes.push_back({"prefactor-printed-N" + std::to_string(n),
                         format_complex(r.prefactor_printed)});
    rep.notes.push_back({"prefactor-relative-gap-N" + std::to_string(n),
                         format_real(prefactor_gap)});
  }
}

struct SuiteDef {
  const char* name;
  const char* description;
  Runner run;
};

const std::vector<SuiteDef>& registry() {
  static const std::vector<SuiteDef> defs = {
      {"qybe", "Yang-Baxter equation on V(x)V(x)V, 100 random draws",
       suite_qybe},
      {"unitarity", "R12(u) R21(-u) = phi(u) id, 50 random spectral points",
       suite_unitarity},
      {"initial", "R(0) equals the permutation times its scalar, 10 random "
                  "couplings",
       suite_initial},
      {"rtt", "fundamental commutation relation for the N=2 monodromy, 20 "
              "random point pairs",
       suite_rtt},
      {"exchange", "block exchange relations as operator identities, 10 "
                   "random point pairs",
       suite_exchange},
      {"hamiltonian", "commutation with the transfer matrix and the "
                      "finite-difference log-derivative at N=3",
       suite_hamiltonian},
      {"basis-count", "label enumeration yields exactly 3^N states, N=1..5",
       suite_basis_count},
      {"orthogonality", "bilinear pairing is diagonal with the closed-form "
                        "Gram factor, N<=3",
       suite_orthogonality},
      {"completeness", "weighted sum of basis projectors resolves the "
                       "identity, N<=3",
       suite_completeness},
      {"vanishing", "annihilation identities of the blocks on basis states, "
                    "N<=3",
       suite_vanishing},
      {"quasi-symmetry", "reordered creation sequences agree up to the "
                         "closed-form factors, N<=3",
       suite_quasi_symmetry},
      {"b1-action", "closed-form action of the first creation block vs "
                    "direct matrix action, labels with m<=2, N<=3",
       suite_b1_action},
      {"b2-action", "closed-form action of the second creation block vs "
                    "direct matrix action, labels with m<=2, N<=3",
       suite_b2_action},
      {"bethe-build", "two-operator state recursion: base cases and "
                      "fixed-weight sector",
       suite_bethe_build},
      {"bae-solve", "Bethe equations: closed-form root at N=1 and damped "
                    "Newton at N=2",
       suite_bae_solve},
      {"on-shell", "solved states are transfer-matrix eigenvectors, with "
                   "eigensolver cross-check and off-shell control",
       suite_on_shell},
      {"f-table", "overlap coefficients: selection rule, recursion vs direct "
                  "pairing, explicit closed forms",
       suite_f_table},
      {"expand", "basis expansion of Bethe states reconstructs the direct "
                 "recursion",
       suite_expand},
      {"inverse-trace", "auxiliary-trace identity for local operators, all "
                        "sites and matrix units, N<=3",
       suite_inverse_trace},
      {"inverse-local", "local matrix units rebuilt from monodromy blocks, "
                        "with prefactor bookkeeping, N<=3",
       suite_inverse_local},
  };
  return defs;
}

}  // namespace

int SuiteReport::failed_count() const {
  int n = 0;
  for (const auto& c : cases)
    if (!c.pass) ++n;
  return n;
}

int suite_count() { return static_cast<int>(registry().size()); }

const char* suite_name(int index) {
  if (index < 0 || index >= suite_count()) return nullptr;
  return registry()[index].name;
}

int suite_index(const std::string& name) {
  for (int i = 0; i < suite_count(); ++i)
    if (name == registry()[i].name) return i;
  return -1;
}

const char* suite_description(const std::string& name) {
  const int i = suite_index(name);
  return i < 0 ? nullptr : registry()[i].description;
}

RunConfig default_config() {
  RunConfig cfg;
  cfg.params.eta = Cplx{0.3, 0.05};
  cfg.params.n_sites = 3;
  for (int j = 1; j <= cfg.params.n_sites; ++j)
    cfg.params.theta.push_back(default_theta(j));
  cfg.params.seed = 1;
  for (int i = 0; i < suite_count(); ++i) cfg.suites.push_back(suite_name(i));
  return cfg;
}

RunConfig config_from_tree(const KvNode& root) {
  RunConfig cfg = default_config();
  if (const KvNode* n = root.find("eta")) cfg.params.eta = parse_complex(n->value);
  if (const KvNode* n = root.find("seed"))
    cfg.params.seed = static_cast<std::uint64_t>(parse_int(n->value));
  if (const KvNode* n = root.find("tolerance"))
    cfg.tolerance_override = parse_real(n->value);
  if (const KvNode* n = root.find("n_sites")) {
    const long ns = parse_int(n->value);
    if (ns < 1) throw ConfigParse("n_sites must be positive");
    if (ns > kMaxSites)
      throw SizeGuard("n_sites " + std::to_string(ns) +
                      " exceeds the dense-operator limit of " +
                      std::to_string(kMaxSites) +
                      " sites; reduce n_sites (the checks are "
                      "size-independent identities)");
    cfg.params.n_sites = static_cast<int>(ns);
  }
  if (const KvNode* n = root.find("theta")) {
    cfg.params.theta.clear();
    for (const KvNode* item : n->all("item"))
      cfg.params.theta.push_back(parse_complex(item->value));
    if (static_cast<int>(cfg.params.theta.size()) != cfg.params.n_sites)
      throw ConfigParse("theta lists " +
                        std::to_string(cfg.params.theta.size()) +
                        " entries but n_sites is " +
                        std::to_string(cfg.params.n_sites));
  } else {
    cfg.params.theta.clear();
    for (int j = 1; j <= cfg.params.n_sites; ++j)
      cfg.params.theta.push_back(default_theta(j));
  }
  if (const KvNode* n = root.find("suites")) {
    cfg.suites.clear();
    for (const KvNode* item : n->all("item")) {
      if (suite_index(item->value) < 0)
        throw ConfigParse("unknown suite '" + item->value +
                          "'; see list-suites for the registry");
      cfg.suites.push_back(item->value);
    }
    if (cfg.suites.empty()) throw ConfigParse("suites list is empty");
  }
  if (const KvNode* n = root.find("output")) cfg.output_path = n->value;
  if (const KvNode* n = root.find("bethe")) {
    BetheOptions opt;
    if (const KvNode* nn = n->find("n"))
      opt.n = static_cast<int>(parse_int(nn->value));
    for (const KvNode* guess : n->all("guess")) {
      std::vector<Cplx> roots;
      for (const KvNode* item : guess->all("item"))
        roots.push_back(parse_complex(item->value));
      if (roots.empty()) throw ConfigParse("empty bethe guess");
      opt.guesses.push_back(std::move(roots));
    }
    if (const KvNode* sp = n->find("sample_points"))
      for (const KvNode* item : sp->all("item"))
        opt.sample_points.push_back(parse_complex(item->value));
    for (const auto& g : opt.guesses)
      if (static_cast<int>(g.size()) != opt.n)
        throw ConfigParse("bethe guess lists " + std::to_string(g.size()) +
                          " roots but n is " + std::to_string(opt.n));
    cfg.bethe = std::move(opt);
  }
  cfg.params.validate();
  return cfg;
}

KvNode config_to_tree(const RunConfig& cfg) {
  KvNode root;
  root.add("eta", format_complex(cfg.params.eta));
  root.add("n_sites", std::to_string(cfg.params.n_sites));
  KvNode& th = root.add_child("theta");
  for (const Cplx& t : cfg.params.theta) th.add("item", format_complex(t));
  root.add("seed", std::to_string(cfg.params.seed));
  if (cfg.tolerance_override)
    root.add("tolerance", format_real(*cfg.tolerance_override));
  KvNode& s = root.add_child("suites");
  for (const auto& name : cfg.suites) s.add("item", name);
  if (!cfg.output_path.empty()) root.add("output", cfg.output_path);
  if (cfg.bethe) {
    KvNode& b = root.add_child("bethe");
    b.add("n", std::to_string(cfg.bethe->n));
    for (const auto& g : cfg.bethe->guesses) {
      KvNode& node = b.add_child("guess");
      for (const Cplx& r : g) node.add("item", format_complex(r));
    }
    if (!cfg.bethe->sample_points.empty()) {
      KvNode& sp = b.add_child("sample_points");
      for (const Cplx& s : cfg.bethe->sample_points)
        sp.add("item", format_complex(s));
    }
  }
  return root;
}

SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
  const int idx = suite_index(name);
  if (idx < 0) throw ConfigParse("unknown suite '" + name + "'");
  SuiteReport rep;
  rep.suite = name;
  CaseSink sink{rep, cfg};
  std::mt19937_64 g =
      suite_stream(cfg.params.seed, static_cast<std::uint64_t>(idx));
  const auto start = std::chrono::steady_clock::now();
  registry()[idx].run(cfg, g, sink, rep);
  rep.timing_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return rep;
}

KvNode report_to_tree(const SuiteReport& rep, const RunConfig& cfg) {
  KvNode root;
  root.add("suite", rep.suite);
  root.add("version", kVersion);
  root.children.push_back({"config", config_to_tree(cfg)});
  if (!rep.notes.empty()) {
    KvNode& notes = root.add_child("notes");
    for (const auto& [k, v] : rep.notes) notes.add(k, v);
  }
  KvNode& cases = root.add_child("cases");
  for (const auto& c : rep.cases) {
    KvNode& node = cases.add_child("case");
    node.add("id", c.id);
    if (!c.inputs.empty()) {
      KvNode& in = node.add_child("inputs");
      for (const auto& [k, v] : c.inputs) in.add(k, v);
    }
    node.add("residual", format_real(c.residual));
    node.add("tolerance", format_real(c.tolerance));
    node.add("pass", c.pass ? "true" : "false");
  }
  KvNode& summary = root.add_child("summary");
  summary.add("cases", std::to_string(rep.cases.size()));
  summary.add("failed", std::to_string(rep.failed_count()));
  summary.add("pass", rep.passed() ? "true" : "false");
  root.add("timing_ms", format_real(rep.timing_ms));
  return root;
}

}  // namespace ik
