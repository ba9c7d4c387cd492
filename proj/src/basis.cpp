#include "basis.hpp"

#include <algorithm>
#include <functional>

namespace ik {

std::string BasisLabel::str() const {
  std::string s = "{";
  for (size_t i = 0; i < sites1.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(sites1[i]);
  }
  s += "|";
  for (size_t i = 0; i < sites2.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(sites2[i]);
  }
  s += "}";
  return s;
}

bool BasisLabel::operator<(const BasisLabel& o) const {
  if (m() != o.m()) return m() < o.m();
  if (m2() != o.m2()) return m2() < o.m2();
  if (sites1 != o.sites1) return sites1 < o.sites1;
  return sites2 < o.sites2;
}

namespace {

// All size-k subsets of `pool` (which is ascending), in lexicographic order.
void combinations(const std::vector<int>& pool, int k,
                  std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < static_cast<int>(pool.size()); ++i) {
      cur.push_back(pool[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

std::vector<BasisLabel> enumerate_labels(int n_sites) {
  std::vector<int> all(n_sites);
  for (int i = 0; i < n_sites; ++i) all[i] = i + 1;

  std::vector<BasisLabel> labels;
  for (int m = 0; m <= n_sites; ++m) {
    for (int m2 = 0; m2 <= m; ++m2) {
      std::vector<std::vector<int>> firsts;
      combinations(all, m2, firsts);
      for (const auto& s1 : firsts) {
        std::vector<int> rest;
        std::set_difference(all.begin(), all.end(), s1.begin(), s1.end(),
                            std::back_inserter(rest));
        std::vector<std::vector<int>> seconds;
        combinations(rest, m - m2, seconds);
        for (const auto& s2 : seconds) labels.push_back({s1, s2});
      }
    }
  }
  return labels;
}

Workspace::Workspace(const ModelParams& p) : p_(p) {
  p_.validate();
  if (p_.n_sites > 6) {
    throw SizeGuard("dense workspace limited to 6 sites");
  }
}

Cplx Workspace::theta_at(int site, Level lv) const {
  if (site < 1 || site > p_.n_sites) {
    throw IndexOutOfRange("theta_at: site index out of range");
  }
  return shifted(p_.theta[site - 1], lv, p_.eta);
}

const MonodromyBlocks& Workspace::blocks(Cplx u) {
  const auto key = std::make_pair(u.real(), u.imag());
  auto it = point_cache_.find(key);
  if (it == point_cache_.end()) {
    it = point_cache_.emplace(key, build_monodromy(u, p_)).first;
  }
  return it->second;
}

const MonodromyBlocks& Workspace::site_blocks(int site, Level lv) {
  const auto key = std::make_pair(site, static_cast<int>(lv));
  auto it = site_cache_.find(key);
  if (it == site_cache_.end()) {
    it = site_cache_.emplace(key, build_monodromy(theta_at(site, lv), p_))
             .first;
  }
  return it->second;
}

Eigen::VectorXcd Workspace::right_state(const BasisLabel& label) {
  auto it = right_cache_.find(label.str());
  if (it != right_cache_.end()) return it->second;

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(hilbert_dim(p_.n_sites));
  v(0) = 1.0;
  // Rightmost operator of the printed word acts first.
  for (auto k = label.sites2.rbegin(); k != label.sites2.rend(); ++k) {
    v = site_blocks(*k, Level::two).B2() * v;
  }
  for (auto i = label.sites1.rbegin(); i != label.sites1.rend(); ++i) {
    v = site_blocks(*i, Level::one).B1() * v;
  }
  right_cache_.emplace(label.str(), v);
  return v;
}

Eigen::RowVectorXcd Workspace::left_state(const BasisLabel& label) {
  auto it = left_cache_.find(label.str());
  if (it != left_cache_.end()) return it->second;

  std::vector<std::pair<int, Level>> printed;
  for (auto k = label.sites2.rbegin(); k != label.sites2.rend(); ++k) {
    printed.emplace_back(*k, Level::two);
  }
  for (auto i = label.sites1.rbegin(); i != label.sites1.rend(); ++i) {
    printed.emplace_back(*i, Level::one);
  }
  Eigen::RowVectorXcd v = left_state_sequence(printed);
  left_cache_.emplace(label.str(), v);
  return v;
}

Eigen::RowVectorXcd Workspace::left_state_sequence(
    const std::vector<std::pair<int, Level>>& printed) {
  Eigen::RowVectorXcd v =
      Eigen::RowVectorXcd::Zero(hilbert_dim(p_.n_sites));
  v(0) = 1.0;
  for (const auto& [site, lv] : printed) {
    const MonodromyBlocks& b = site_blocks(site, lv);
    v = v * (lv == Level::one ? b.C1() : b.C2());
  }
  return v;
}

Cplx Workspace::gram_formula(const BasisLabel& label) {
  const Cplx eta = p_.eta;
  Cplx g = 1.0;
  const auto& s1 = label.sites1;
  const auto& s2 = label.sites2;

  for (size_t k = 0; k < s1.size(); ++k) {
    const Cplx tk = theta_at(s1[k], Level::one);
    Cplx factor = 2.0 * std::cosh(eta) * std::sinh(2.0 * eta) *
                  alpha1_skip(tk, p_, s1[k]) * alpha2(tk, p_);
    for (size_t i = 0; i < s1.size(); ++i) {
      if (i == k) continue;
      factor *= fn_z(tk - theta_at(s1[i], Level::one), eta);
    }
    for (size_t l = k + 1; l < s1.size(); ++l) {
      factor *= fn_omega(theta_at(s1[l], Level::one) - tk, eta);
    }
    for (int j : s2) {
      const Cplx tj = theta_at(j, Level::two);
      factor *= el_c(tj - tk, eta) / el_d(tj - tk, eta) *
                fn_z(tj - tk, eta) * fn_z(tk - tj, eta);
    }
    g *= factor;
  }

  const Cplx f0 = el_f(Cplx{0.0, 0.0}, eta);
  for (size_t k = 0; k < s2.size(); ++k) {
    const Cplx tk = theta_at(s2[k], Level::two);
    Cplx factor = f0 * alpha1_skip(tk, p_, s2[k]) * alpha3(tk, p_);
    for (size_t i = 0; i < s2.size(); ++i) {
      if (i == k) continue;
      const Cplx ti = theta_at(s2[i], Level::two);
      factor *= el_c(tk - ti, eta) / el_d(tk - ti, eta);
    }
    g *= factor;
  }
  return g;
}

Cplx Workspace::pair(const BasisLabel& q, const BasisLabel& p) {
  return (left_state(q) * right_state(p))(0);
}

Cplx a1_eigenvalue(const BasisLabel& label, Cplx u, const ModelParams& p) {
  Cplx v = alpha1(u, p);
  for (int i : label.sites1) {
    v *= fn_z(shifted(p.theta[i - 1], Level::one, p.eta) - u, p.eta);
  }
  for (int l : label.sites2) {
    const Cplx t = shifted(p.theta[l - 1], Level::two, p.eta);
    v *= el_c(t - u, p.eta) / el_d(t - u, p.eta);
  }
  return v;
}

std::pair<std::vector<int>, Cplx> canonicalize_level1(
    std::vector<int> printed, const ModelParams& p) {
  // Canonical printed order is descending site index; an adjacent pair with
  // the lower site on the left is out of order and each such transposition
  // divides by w(higher - lower) per the quasi-symmetry of the basis.
  Cplx factor = 1.0;
  bool moved = true;
  while (moved) {
    moved = false;
    for (size_t k = 0; k + 1 < printed.size(); ++k) {
      if (printed[k] < printed[k + 1]) {
        const Cplx lo = shifted(p.theta[printed[k] - 1], Level::one, p.eta);
        const Cplx hi = shifted(p.theta[printed[k + 1] - 1], Level::one, p.eta);
        factor /= fn_w(hi - lo, p.eta);
        std::swap(printed[k], printed[k + 1]);
        moved = true;
      }
    }
  }
  std::reverse(printed.begin(), printed.end());  // ascending storage order
  return {printed, factor};
}

namespace {

std::vector<int> without(const std::vector<int>& v, int site) {
  std::vector<int> out;
  for (int x : v)
    if (x != site) out.push_back(x);
  return out;
}

std::vector<int> descending(const std::vector<int>& ascending) {
  return {ascending.rbegin(), ascending.rend()};
}

}  // namespace

std::vector<LabelTerm> apply_b1_formula(const BasisLabel& label, Cplx u,
                                        const ModelParams& p) {
  const Cplx eta = p.eta;
  const auto& s1 = label.sites1;
  const auto& s2 = label.sites2;
  auto th1 = [&](int s) { return shifted(p.theta[s - 1], Level::one, eta); };
  auto th2 = [&](int s) { return shifted(p.theta[s - 1], Level::two, eta); };
  const Cplx a1u = alpha1(u, p);

  std::vector<LabelTerm> out;

  // One level-one argument is removed.
  for (size_t i = 0; i < s1.size(); ++i) {
    const Cplx ti = th1(s1[i]);
    Cplx c = el_ebar(ti - u, eta) / el_b(ti - u, eta) * a1u * alpha2(ti, p);
    for (size_t h = 0; h < i; ++h) c *= fn_omega(ti - th1(s1[h]), eta);
    for (size_t j = 0; j < s1.size(); ++j) {
      if (j == i) continue;
      const Cplx tj = th1(s1[j]);
      c *= fn_z(tj - u, eta) * fn_z(ti - tj, eta) / fn_omega(ti - tj, eta);
    }
    for (int k : s2) {
      const Cplx tk = th2(k);
      c *= el_c(tk - u, eta) / el_d(tk - u, eta) * fn_z(ti - tk, eta) *
           fn_z(tk - ti, eta);
    }
    out.push_back({{without(s1, s1[i]), s2}, c});
  }

  // One level-two argument is moved down to the level-one block.
  for (int pi : s2) {
    const Cplx t2i = th2(pi);
    const Cplx t1i = th1(pi);
    Cplx bracket = el_ebar(t2i - u, eta) / el_d(t2i - u, eta);
    for (size_t l = 0; l < s1.size(); ++l) {
      const Cplx tl = th1(s1[l]);
      Cplx term = el_e(tl - t2i, eta) * el_ebar(tl - u, eta) *
                  el_c(t2i - u, eta) /
                  (el_b(tl - t2i, eta) * el_b(tl - u, eta) *
                   el_d(t2i - u, eta));
      for (size_t j = 0; j < s1.size(); ++j) {
        if (j == l) continue;
        const Cplx tj = th1(s1[j]);
        term *= fn_z(tj - u, eta) * fn_z(tl - tj, eta);
      }
      bracket -= term;
    }
    Cplx c = bracket * a1u * fn_xibar(p.theta[pi - 1], p);
    for (int k : s2) {
      if (k == pi) continue;
      const Cplx tk = th2(k);
      c *= el_b(tk - t1i, eta) * el_c(tk - u, eta) /
           (el_c(tk - t1i, eta) * el_d(tk - u, eta)) * fn_z(t2i - tk, eta);
    }
    std::vector<int> printed = {pi};
    for (int x : descending(s1)) printed.push_back(x);
    auto [new_s1, factor] = canonicalize_level1(printed, p);
    out.push_back({{new_s1, without(s2, pi)}, c * factor});
  }
  return out;
}

std::vector<LabelTerm> apply_b2_formula(const BasisLabel& label, Cplx u,
                                        const ModelParams& p,
                                        B2Reading reading) {
  (void)reading;  // both printed readings fail the oracle; see the move sums
  const Cplx eta = p.eta;
  const auto& s1 = label.sites1;
  const auto& s2 = label.sites2;
  auto th1 = [&](int s) { return shifted(p.theta[s - 1], Level::one, eta); };
  auto th2 = [&](int s) { return shifted(p.theta[s - 1], Level::two, eta); };
  const Cplx a1u = alpha1(u, p);

  std::vector<LabelTerm> out;

  // Sum 1: one level-two argument removed. The printed spectator factor
  // d/b(theta1-u) fails the matrix oracle; the least-squares fit over the
  // operator words gives z(theta1-u) c/d(theta2_l-theta1) per level-one
  // spectator instead, exactly.
  for (int l : s2) {
    const Cplx tl = th2(l);
    Cplx c = el_fbar(tl - u, eta) / el_d(tl - u, eta) * a1u * alpha3(tl, p);
    for (int i : s1) {
      const Cplx ti = th1(i);
      c *= fn_z(ti - u, eta) * el_c(tl - ti, eta) / el_d(tl - ti, eta);
    }
    for (int j : s2) {
      if (j == l) continue;
      const Cplx tj = th2(j);
      c *= el_c(tj - u, eta) * el_c(tl - tj, eta) /
           (el_d(tj - u, eta) * el_d(tl - tj, eta));
    }
    out.push_back({{s1, without(s2, l)}, c});
  }

  // Sum 2: two level-two arguments moved down to the level-one block.
  for (size_t li = 0; li < s2.size(); ++li) {
    for (size_t ii = li + 1; ii < s2.size(); ++ii) {
      const int pl = s2[li];
      const int pi = s2[ii];
      const Cplx t2l = th2(pl), t2i = th2(pi);
      Cplx brace = el_gbar(t2l - u, eta) * el_ebar(t2i - u, eta) /
                       (el_d(t2l - u, eta) * el_d(t2i - u, eta)) -
                   el_fbar(t2l - u, eta) * el_c(t2i - u, eta) /
                       (el_d(t2l - u, eta) * el_d(t2i - u, eta) *
                        fn_ybar(t2l - t2i, eta));
      // The w argument is a plain site difference (the level shifts cancel).
      Cplx c = brace * fn_w(th1(pl) - th1(pi), eta);
      for (int j : s2) {
        if (j == pl || j == pi) continue;
        const Cplx tj = th2(j);
        c *= el_c(tj - u, eta) * fn_z(t2i - tj, eta) * fn_z(t2l - tj, eta) /
             (el_d(tj - u, eta) * fn_z(tj - th1(pi), eta) *
              fn_z(tj - th1(pl), eta));
      }
      // The printed spectator factor d/b(theta_k-u) fails the matrix oracle
      // under either superscript reading. The fitted coefficient factors as
      // z(theta1_k-u) z(theta2_l-theta1_k) z(theta2_i-theta1_k) per
      // level-one spectator, exactly, mirroring the one-argument sum above.
      for (int k : s1) {
        const Cplx tk = th1(k);
        c *= fn_z(tk - u, eta) * fn_z(t2l - tk, eta) * fn_z(t2i - tk, eta);
      }
      c *= a1u * fn_xibar(p.theta[pi - 1], p) * fn_xibar(p.theta[pl - 1], p);

      std::vector<int> printed = {pi, pl};
      for (int x : descending(s1)) printed.push_back(x);
      auto [new_s1, factor] = canonicalize_level1(printed, p);
      out.push_back({{new_s1, without(without(s2, pl), pi)}, c * factor});
    }
  }

  // Sum 3: two level-one arguments removed.
  for (size_t li = 0; li < s1.size(); ++li) {
    for (size_t ii = li + 1; ii < s1.size(); ++ii) {
      const Cplx tl = th1(s1[li]), ti = th1(s1[ii]);
      Cplx brace = el_gbar(tl - u, eta) * el_ebar(ti - u, eta) /
                       (el_b(tl - u, eta) * el_b(ti - u, eta)) -
                   el_fbar(tl - u, eta) * el_g(tl - ti, eta) *
                       fn_z(ti - u, eta) /
                       (el_b(tl - u, eta) * el_d(tl - ti, eta));
      Cplx c = brace * a1u * alpha2(tl, p) * alpha2(ti, p);
      for (size_t h = 0; h < li; ++h) c *= fn_w(tl - th1(s1[h]), eta);
      for (size_t h = 0; h < ii; ++h) {
        if (h == li) continue;
        c *= fn_w(ti - th1(s1[h]), eta);
      }
      for (size_t j = 0; j < s1.size(); ++j) {
        if (j == li || j == ii) continue;
        const Cplx tj = th1(s1[j]);
        c *= fn_z(tj - u, eta) * fn_z(ti - tj, eta) * fn_z(tl - tj, eta) /
             (fn_w(ti - tj, eta) * fn_w(tl - tj, eta));
      }
      for (int k : s2) {
        const Cplx tk = th2(k);
        c *= el_c(tk - u, eta) / el_d(tk - u, eta) * fn_z(tl - tk, eta) *
             fn_z(tk - tl, eta) * fn_z(ti - tk, eta) * fn_z(tk - ti, eta);
      }
      out.push_back({{without(without(s1, s1[li]), s1[ii]), s2}, c});
    }
  }

  // Sum 4: one level-one argument removed and one level-two argument moved.
  for (size_t li = 0; li < s1.size(); ++li) {
    const int pl = s1[li];
    const Cplx tl = th1(pl);
    for (int pi : s2) {
      const Cplx t2i = th2(pi);
      const Cplx t1i = th1(pi);

      const Cplx t_one = el_ebar(t2i - u, eta) / el_d(t2i - u, eta) *
                         el_gbar(tl - u, eta) * fn_z(tl - t1i, eta) /
                         (el_b(tl - u, eta) * fn_w(tl - t1i, eta));
      const Cplx t_two = (el_gbar(t2i - tl, eta) / el_b(t2i - tl, eta) -
                          el_fbar(t2i - tl, eta) /
                              (el_b(t2i - tl, eta) * fn_ybar(t2i - tl, eta))) *
                         el_fbar(tl - u, eta) * el_c(t2i - u, eta) /
                         (el_b(tl - u, eta) * el_d(t2i - u, eta));

      // The printed mixed sum carries distinct spectator products on its
      // three pieces (the third being itself a sum over spectators). That
      // form fails the matrix oracle whenever a level-one spectator exists.
      // Fitting the exact coefficient over a grid of spectral points shows
      // the third piece is absent and the first two share a single spectator
      // product: z(tj-u) z(tl-tj)/w(tl-tj) z(theta2_i-tj), with an extra
      // z(theta2_l-tj) when the spectator precedes the removed argument in
      // the label order. This matches the corrected two-argument move sum.
      Cplx c = (t_one + t_two) * a1u * alpha2(tl, p) *
               fn_xibar(p.theta[pi - 1], p);
      for (int j : s1) {
        if (j == pl) continue;
        const Cplx tj = th1(j);
        c *= fn_z(tj - u, eta) * fn_z(tl - tj, eta) / fn_w(tl - tj, eta) *
             fn_z(t2i - tj, eta);
        if (j < pl) c *= fn_z(th2(pl) - tj, eta);
      }
      for (int j : s2) {
        if (j == pi) continue;
        const Cplx tj = th2(j);
        c *= el_c(tj - u, eta) * fn_z(t2i - tj, eta) * fn_z(tl - tj, eta) *
             fn_z(tj - tl, eta) / (el_d(tj - u, eta) * fn_z(tj - t1i, eta));
      }

      std::vector<int> printed = {pi};
      for (int x : descending(without(s1, pl))) printed.push_back(x);
      auto [new_s1, factor] = canonicalize_level1(printed, p);
      out.push_back({{new_s1, without(s2, pi)}, c * factor});
    }
  }

  return out;
}

void check_orthogonality(Workspace& ws, double& max_offdiag,
                         double& max_diag_relerr) {
  const auto labels = enumerate_labels(ws.params().n_sites);
  std::vector<Cplx> gram(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    gram[i] = ws.gram_formula(labels[i]);
  }
  max_offdiag = 0.0;
  max_diag_relerr = 0.0;
  for (size_t q = 0; q < labels.size(); ++q) {
    for (size_t p = 0; p < labels.size(); ++p) {
      const Cplx ip = ws.pair(labels[q], labels[p]);
      if (q == p) {
        max_diag_relerr = std::max(
            max_diag_relerr, std::abs(ip - gram[p]) / std::abs(gram[p]));
      } else {
        max_offdiag = std::max(
            max_offdiag,
            std::abs(ip) / std::sqrt(std::abs(gram[q]) * std::abs(gram[p])));
      }
    }
  }
}

double check_completeness(Workspace& ws) {
  const auto labels = enumerate_labels(ws.params().n_sites);
  const Eigen::Index dim = hilbert_dim(ws.params().n_sites);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& l : labels) {
    sum += ws.right_state(l) * ws.left_state(l) / ws.gram_formula(l);
  }
  return (sum - Eigen::MatrixXcd::Identity(dim, dim)).norm() /
         std::sqrt(static_cast<double>(dim));
}

std::vector<CaseResidual> check_vanishing(Workspace& ws) {
  const int n = ws.params().n_sites;
  const auto labels = enumerate_labels(n);
  std::vector<CaseResidual> out;

  const std::vector<Block> right_lv1 = {Block::C1, Block::C2, Block::A1};
  const std::vector<Block> right_lv2 = {Block::C1, Block::C2, Block::C3,
                                        Block::B1, Block::A1, Block::A2};
  const std::vector<Block> left_lv1 = {Block::B1, Block::B2, Block::A1};
  const std::vector<Block> left_lv2 = {Block::B1, Block::B2, Block::B3,
                                       Block::C1, Block::A1, Block::A2};

  for (const auto& label : labels) {
    if (label.m() == n) continue;
    std::vector<bool> used(n + 1, false);
    for (int s : label.sites1) used[s] = true;
    for (int s : label.sites2) used[s] = true;

    const Eigen::VectorXcd right = ws.right_state(label);
    const Eigen::RowVectorXcd left = ws.left_state(label);

    for (int s = 1; s <= n; ++s) {
      if (used[s]) continue;
      for (Level lv : {Level::one, Level::two}) {
        const MonodromyBlocks& blocks = ws.site_blocks(s, lv);
        const auto& right_ops = lv == Level::one ? right_lv1 : right_lv2;
        const auto& left_ops = lv == Level::one ? left_lv1 : left_lv2;
        const std::string lv_tag = lv == Level::one ? "lv1" : "lv2";
        for (Block b : right_ops) {
          const Operator& op = block_of(blocks, b);
          out.push_back({label.str() + ":right:" + lv_tag + ":s" +
                             std::to_string(s) + ":" + block_name(b),
                         (op * right).norm() / (op.norm() * right.norm())});
        }
        for (Block b : left_ops) {
          const Operator& op = block_of(blocks, b);
          out.push_back({label.str() + ":left:" + lv_tag + ":s" +
                             std::to_string(s) + ":" + block_name(b),
                         (left * op).norm() / (op.norm() * left.norm())});
        }
      }
    }
  }
  return out;
}

std::vector<CaseResidual> check_quasi_symmetry(Workspace& ws) {
  const ModelParams& p = ws.params();
  const auto labels = enumerate_labels(p.n_sites);
  std::vector<CaseResidual> out;

  auto printed_of = [](const BasisLabel& l) {
    std::vector<std::pair<int, Level>> seq;
    for (auto k = l.sites2.rbegin(); k != l.sites2.rend(); ++k) {
      seq.emplace_back(*k, Level::two);
    }
    for (auto i = l.sites1.rbegin(); i != l.sites1.rend(); ++i) {
      seq.emplace_back(*i, Level::one);
    }
    return seq;
  };

  for (const auto& label : labels) {
    const auto seq = printed_of(label);
    const Eigen::RowVectorXcd canon = ws.left_state(label);
    const int m2 = label.m2();
    const int mm = label.m();

    // Adjacent transpositions inside the level-one block pick up w.
    for (int k = mm - m2; k + 1 < mm; ++k) {
      auto swapped = seq;
      std::swap(swapped[k], swapped[k + 1]);
      const Cplx w = fn_w(ws.theta_at(seq[k].first, Level::one) -
                              ws.theta_at(seq[k + 1].first, Level::one),
                          p.eta);
      const Eigen::RowVectorXcd other = ws.left_state_sequence(swapped);
      out.push_back({label.str() + ":swap1@" + std::to_string(k),
                     (canon - w * other).norm() / canon.norm()});
    }

    // Swapping the innermost level-two argument past the outermost
    // level-one argument costs z.
    if (m2 >= 1 && mm > m2) {
      auto swapped = seq;
      std::swap(swapped[mm - m2 - 1], swapped[mm - m2]);
      const Cplx z = fn_z(ws.theta_at(label.sites2.front(), Level::two) -
                              ws.theta_at(label.sites1.back(), Level::one),
                          p.eta);
      const Eigen::RowVectorXcd other = ws.left_state_sequence(swapped);
      out.push_back({label.str() + ":cross",
                     (canon - z * other).norm() / canon.norm()});
    }

    // Level-two arguments commute freely.
    for (int k = 0; k + 1 < mm - m2; ++k) {
      auto swapped = seq;
      std::swap(swapped[k], swapped[k + 1]);
      const Eigen::RowVectorXcd other = ws.left_state_sequence(swapped);
      out.push_back({label.str() + ":swap2@" + std::to_string(k),
                     (canon - other).norm() / canon.norm()});
    }
  }
  return out;
}

namespace {

double action_residual(Workspace& ws, const BasisLabel& label,
                       const Operator& op,
                       const std::vector<LabelTerm>& combo) {
  const Eigen::RowVectorXcd numeric = ws.left_state(label) * op;
  Eigen::RowVectorXcd formula =
      Eigen::RowVectorXcd::Zero(numeric.size());
  for (const auto& t : combo) formula += t.coeff * ws.left_state(t.label);
  const double scale =
      std::max({numeric.norm(), formula.norm(),
                ws.left_state(label).norm() * op.norm() * 1e-6});
  return (numeric - formula).norm() / scale;
}

}  // namespace

double check_b1_action(Workspace& ws, const BasisLabel& label, Cplx u) {
  return action_residual(ws, label, ws.blocks(u).B1(),
                         apply_b1_formula(label, u, ws.params()));
}

double check_b2_action(Workspace& ws, const BasisLabel& label, Cplx u,
                       B2Reading reading) {
  return action_residual(ws, label, ws.blocks(u).B2(),
                         apply_b2_formula(label, u, ws.params(), reading));
}

}  // namespace ik
