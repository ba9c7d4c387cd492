#include "hilbert.hpp"

#include <functional>

namespace ik {

namespace {

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Operator embed(const Eigen::Matrix3cd& local, int site, int n_sites) {
  if (site < 1 || site > n_sites) {
    throw IndexOutOfRange("embed: site index out of range");
  }
  const Operator left =
      Operator::Identity(hilbert_dim(site - 1), hilbert_dim(site - 1));
  const Operator right = Operator::Identity(hilbert_dim(n_sites - site),
                                            hilbert_dim(n_sites - site));
  return kron(kron(left, Operator(local)), right);
}

Operator embed_two(const RMatrix& op, int site_a, int site_b, int n_sites) {
  if (site_a < 1 || site_a > n_sites || site_b < 1 || site_b > n_sites ||
      site_a == site_b) {
    throw IndexOutOfRange("embed_two: bad site pair");
  }
  const Eigen::Index dim = hilbert_dim(n_sites);
  Operator m = Operator::Zero(dim, dim);
  std::vector<int> di(n_sites), dj(n_sites);
  for (Eigen::Index row = 0; row < dim; ++row) {
    Eigen::Index r = row;
    for (int s = n_sites - 1; s >= 0; --s) {
      di[s] = static_cast<int>(r % 3);
      r /= 3;
    }
    for (Eigen::Index col = 0; col < dim; ++col) {
      Eigen::Index c = col;
      for (int s = n_sites - 1; s >= 0; --s) {
        dj[s] = static_cast<int>(c % 3);
        c /= 3;
      }
      bool diag = true;
      for (int s = 0; s < n_sites; ++s) {
        if (s != site_a - 1 && s != site_b - 1 && di[s] != dj[s]) diag = false;
      }
      if (!diag) continue;
      m(row, col) = op(3 * di[site_a - 1] + di[site_b - 1],
                       3 * dj[site_a - 1] + dj[site_b - 1]);
    }
  }
  return m;
}

MonodromyBlocks build_monodromy(Cplx u, const ModelParams& p) {
  const Eigen::Index dim = hilbert_dim(p.n_sites);
  MonodromyBlocks out;
  out.spectral_point = u;

  // Auxiliary-space 3x3 block matrix, accumulated right-to-left:
  // T = M_N ... M_1 with M_k the site-k factor of R_0k(u - theta_k).
  std::array<std::array<Operator, 3>, 3> acc;
  for (int k = 1; k <= p.n_sites; ++k) {
    const RMatrix r = build_r(u - p.theta[k - 1], p.eta);
    std::array<std::array<Operator, 3>, 3> m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Eigen::Matrix3cd local;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) local(a, b) = r(3 * i + a, 3 * j + b);
        m[i][j] = embed(local, k, p.n_sites);
      }
    if (k == 1) {
      acc = std::move(m);
      continue;
    }
    std::array<std::array<Operator, 3>, 3> next;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Operator sum = Operator::Zero(dim, dim);
        for (int s = 0; s < 3; ++s) sum += m[i][s] * acc[s][j];
        next[i][j] = std::move(sum);
      }
    acc = std::move(next);
  }
  out.t = std::move(acc);
  return out;
}

Operator transfer(const MonodromyBlocks& blocks) {
  return blocks.t[0][0] + blocks.t[1][1] + blocks.t[2][2];
}

Operator transfer(Cplx u, const ModelParams& p) {
  return transfer(build_monodromy(u, p));
}

Operator hamiltonian(const ModelParams& p) {
  for (const Cplx& th : p.theta) {
    if (std::abs(th) != 0.0) {
      throw NonzeroInhomogeneity(
          "hamiltonian requires all inhomogeneities zero");
    }
  }
  if (p.n_sites < 2) {
    throw IndexOutOfRange("hamiltonian needs at least two sites");
  }
  const RMatrix pr_prime =
      permutation9() *
      assemble_r(eval_elements_derivative(Cplx{0.0, 0.0}, p.eta));
  const Eigen::Index dim = hilbert_dim(p.n_sites);
  Operator h = Operator::Zero(dim, dim);
  for (int i = 1; i <= p.n_sites; ++i) {
    const int j = (i % p.n_sites) + 1;
    h += embed_two(pr_prime, i, j, p.n_sites);
  }
  return h / varphi(p.eta);
}

const Operator& block_of(const MonodromyBlocks& blocks, Block b) {
  switch (b) {
    case Block::A1:
      return blocks.A1();
    case Block::A2:
      return blocks.A2();
    case Block::A3:
      return blocks.A3();
    case Block::B1:
      return blocks.B1();
    case Block::B2:
      return blocks.B2();
    case Block::B3:
      return blocks.B3();
    case Block::C1:
      return blocks.C1();
    case Block::C2:
      return blocks.C2();
    case Block::C3:
      return blocks.C3();
  }
  return blocks.A1();
}

std::string block_name(Block b) {
  static const char* names[] = {"A1", "A2", "A3", "B1", "B2",
                                "B3", "C1", "C2", "C3"};
  return names[static_cast<int>(b)];
}

namespace {

// One two-operator word with a scalar coefficient; arg 0 evaluates the block
// at u, arg 1 at v.
struct Term {
  std::function<Cplx(Cplx, Cplx, Cplx)> coef;  // (u, v, eta)
  Block op1;
  int arg1;
  Block op2;
  int arg2;
};

struct Relation {
  const char* id;
  std::vector<Term> lhs;
  std::vector<Term> rhs;
};

std::vector<Relation> exchange_table() {
  using B = Block;
  auto one = [](Cplx, Cplx, Cplx) -> Cplx { return 1.0; };

  std::vector<Relation> rel;

  auto commutator = [&](const char* id, B x) {
    rel.push_back({id,
                   {{one, x, 0, x, 1}},
                   {{one, x, 1, x, 0}}});
  };
  commutator("A1-A1", B::A1);
  commutator("B2-B2", B::B2);
  commutator("C2-C2", B::C2);
  commutator("A3-A3", B::A3);

  // B1(u)B1(v) = w(v-u)[B1(v)B1(u) - (1/y(v-u)) B2(v)A1(u)]
  //              + (1/y(u-v)) B2(u)A1(v)
  rel.push_back(
      {"B1-B1",
       {{one, B::B1, 0, B::B1, 1}},
       {{[](Cplx u, Cplx v, Cplx e) { return fn_w(v - u, e); }, B::B1, 1,
         B::B1, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -fn_w(v - u, e) / fn_y(v - u, e); },
         B::B2, 1, B::A1, 0},
        {[](Cplx u, Cplx v, Cplx e) { return 1.0 / fn_y(u - v, e); }, B::B2, 0,
         B::A1, 1}}});

  rel.push_back(
      {"A1-B1",
       {{one, B::A1, 0, B::B1, 1}},
       {{[](Cplx u, Cplx v, Cplx e) { return fn_z(v - u, e); }, B::B1, 1,
         B::A1, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -el_e(v - u, e) / el_b(v - u, e); },
         B::B1, 0, B::A1, 1}}});

  rel.push_back(
      {"A1-B2",
       {{one, B::A1, 0, B::B2, 1}},
       {{[](Cplx u, Cplx v, Cplx e) { return el_c(v - u, e) / el_d(v - u, e); },
         B::B2, 1, B::A1, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -el_g(v - u, e) / el_d(v - u, e); },
         B::B1, 0, B::B1, 1},
        {[](Cplx u, Cplx v, Cplx e) { return -el_f(v - u, e) / el_d(v - u, e); },
         B::B2, 0, B::A1, 1}}});

  rel.push_back(
      {"B1-B2",
       {{one, B::B1, 0, B::B2, 1}},
       {{[](Cplx u, Cplx v, Cplx e) { return fn_z(v - u, e); }, B::B2, 1,
         B::B1, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -el_e(v - u, e) / el_b(v - u, e); },
         B::B2, 0, B::B1, 1}}});

  rel.push_back(
      {"B2-B1",
       {{one, B::B2, 0, B::B1, 1}},
       {{[](Cplx u, Cplx v, Cplx e) { return 1.0 / fn_z(u - v, e); }, B::B1, 1,
         B::B2, 0},
        {[](Cplx u, Cplx v, Cplx e) { return el_e(u - v, e) / el_c(u - v, e); },
         B::B2, 1, B::B1, 0}}});

  rel.push_back(
      {"C1-B1",
       {{one, B::C1, 0, B::B1, 1}},
       {{one, B::B1, 1, B::C1, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -el_e(v - u, e) / el_b(v - u, e); },
         B::A2, 0, B::A1, 1},
        {[](Cplx u, Cplx v, Cplx e) { return el_e(v - u, e) / el_b(v - u, e); },
         B::A2, 1, B::A1, 0}}});

  rel.push_back(
      {"B1-B3",
       {{one, B::B1, 0, B::B3, 1}},
       {{one, B::B3, 1, B::B1, 0},
        {[](Cplx u, Cplx v, Cplx e) {
           return el_ebar(v - u, e) / el_b(v - u, e);
         },
         B::B2, 1, B::A2, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -el_e(v - u, e) / el_b(v - u, e); },
         B::B2, 0, B::A2, 1}}});

  rel.push_back(
      {"B2-B3",
       {{one, B::B2, 0, B::B3, 1}},
       {{[](Cplx u, Cplx v, Cplx e) { return 1.0 / fn_z(v - u, e); }, B::B3, 1,
         B::B2, 0},
        {[](Cplx u, Cplx v, Cplx e) {
           return el_ebar(v - u, e) / el_c(v - u, e);
         },
         B::B2, 1, B::B3, 0}}});

  rel.push_back(
      {"B3-B2",
       {{one, B::B3, 0, B::B2, 1}},
       {{[](Cplx u, Cplx v, Cplx e) { return 1.0 / fn_z(v - u, e); }, B::B2, 1,
         B::B3, 0},
        // Denominator c, not b: the b printed alongside this term fails the
        // oracle check while e/c satisfies it (and mirrors the B2-B3 twin).
        {[](Cplx u, Cplx v, Cplx e) { return el_e(v - u, e) / el_c(v - u, e); },
         B::B3, 1, B::B2, 0}}});

  // A2(u)B2(v) = z(u-v)z(v-u) B2(v)A2(u)
  //   + (ebar(u-v)/b(u-v)) [B3(u)B1(v) - B1(u)B3(v)
  //                         + (ebar(u-v)/b(u-v)) B2(u)A2(v)]
  rel.push_back(
      {"A2-B2",
       {{one, B::A2, 0, B::B2, 1}},
       {{[](Cplx u, Cplx v, Cplx e) {
           return fn_z(u - v, e) * fn_z(v - u, e);
         },
         B::B2, 1, B::A2, 0},
        {[](Cplx u, Cplx v, Cplx e) {
           return el_ebar(u - v, e) / el_b(u - v, e);
         },
         B::B3, 0, B::B1, 1},
        {[](Cplx u, Cplx v, Cplx e) {
           return -el_ebar(u - v, e) / el_b(u - v, e);
         },
         B::B1, 0, B::B3, 1},
        {[](Cplx u, Cplx v, Cplx e) {
           const Cplx r = el_ebar(u - v, e) / el_b(u - v, e);
           return r * r;
         },
         B::B2, 0, B::A2, 1}}});

  rel.push_back(
      {"A3-B1",
       {{one, B::A3, 0, B::B1, 1}},
       {{[](Cplx u, Cplx v, Cplx e) { return el_b(u - v, e) / el_d(u - v, e); },
         B::B1, 1, B::A3, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -1.0 / fn_y(u - v, e); }, B::B3, 0,
         B::A2, 1},
        {[](Cplx u, Cplx v, Cplx e) { return el_e(u - v, e) / el_d(u - v, e); },
         B::B2, 1, B::C3, 0},
        {[](Cplx u, Cplx v, Cplx e) {
           return -el_fbar(u - v, e) / el_d(u - v, e);
         },
         B::B2, 0, B::C3, 1}}});

  rel.push_back(
      {"A3-B2",
       {{one, B::A3, 0, B::B2, 1}},
       {{[](Cplx u, Cplx v, Cplx e) { return el_c(u - v, e) / el_d(u - v, e); },
         B::B2, 1, B::A3, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -1.0 / fn_y(u - v, e); }, B::B3, 0,
         B::B3, 1},
        {[](Cplx u, Cplx v, Cplx e) {
           return -el_fbar(u - v, e) / el_d(u - v, e);
         },
         B::B2, 0, B::A3, 1}}});

  rel.push_back(
      {"C1-B2",
       {{one, B::C1, 0, B::B2, 1}},
       {{[](Cplx u, Cplx v, Cplx e) { return el_b(v - u, e) / el_d(v - u, e); },
         B::B2, 1, B::C1, 0},
        {[](Cplx u, Cplx v, Cplx e) { return el_e(v - u, e) / el_d(v - u, e); },
         B::B3, 1, B::A1, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -el_f(v - u, e) / el_d(v - u, e); },
         B::B3, 0, B::A1, 1},
        {[](Cplx u, Cplx v, Cplx e) { return -el_g(v - u, e) / el_d(v - u, e); },
         B::A2, 0, B::B1, 1}}});

  rel.push_back(
      {"C3-B2",
       {{one, B::C3, 0, B::B2, 1}},
       {{[](Cplx u, Cplx v, Cplx e) { return el_d(v - u, e) / el_b(v - u, e); },
         B::B2, 1, B::C3, 0},
        {[](Cplx u, Cplx v, Cplx e) { return el_g(v - u, e) / el_b(v - u, e); },
         B::B3, 1, B::A2, 0},
        {[](Cplx u, Cplx v, Cplx e) { return el_f(v - u, e) / el_b(v - u, e); },
         B::A3, 1, B::B1, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -el_e(v - u, e) / el_b(v - u, e); },
         B::A3, 0, B::B1, 1}}});

  rel.push_back(
      {"C2-B1",
       {{one, B::C2, 0, B::B1, 1}},
       {{[](Cplx u, Cplx v, Cplx e) { return el_d(v - u, e) / el_b(v - u, e); },
         B::B1, 1, B::C2, 0},
        {[](Cplx u, Cplx v, Cplx e) { return el_g(v - u, e) / el_b(v - u, e); },
         B::A2, 1, B::C1, 0},
        {[](Cplx u, Cplx v, Cplx e) { return el_f(v - u, e) / el_b(v - u, e); },
         B::C3, 1, B::A1, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -el_e(v - u, e) / el_b(v - u, e); },
         B::C3, 0, B::A1, 1}}});

  rel.push_back(
      {"C3-A1",
       {{one, B::C3, 0, B::A1, 1}},
       {{[](Cplx u, Cplx v, Cplx e) { return el_b(u - v, e) / el_d(u - v, e); },
         B::A1, 1, B::C3, 0},
        {[](Cplx u, Cplx v, Cplx e) { return el_e(u - v, e) / el_d(u - v, e); },
         B::B1, 1, B::C2, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -1.0 / fn_y(u - v, e); }, B::A2, 0,
         B::C1, 1},
        {[](Cplx u, Cplx v, Cplx e) {
           return -el_fbar(u - v, e) / el_d(u - v, e);
         },
         B::B1, 0, B::C2, 1}}});

  rel.push_back(
      {"C2-B2-a",
       {{one, B::C2, 0, B::B2, 1}},
       {{one, B::B2, 1, B::C2, 0},
        {[](Cplx u, Cplx v, Cplx e) { return 1.0 / fn_ybar(v - u, e); },
         B::B3, 1, B::C1, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -1.0 / fn_ybar(v - u, e); },
         B::C3, 0, B::B1, 1},
        {[](Cplx u, Cplx v, Cplx e) { return el_f(v - u, e) / el_d(v - u, e); },
         B::A3, 1, B::A1, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -el_f(v - u, e) / el_d(v - u, e); },
         B::A3, 0, B::A1, 1}}});

  rel.push_back(
      {"C2-B2-b",
       {{one, B::C2, 0, B::B2, 1}},
       {{one, B::B2, 1, B::C2, 0},
        {[](Cplx u, Cplx v, Cplx e) { return 1.0 / fn_y(u - v, e); }, B::B1, 1,
         B::C3, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -1.0 / fn_y(u - v, e); }, B::C1, 0,
         B::B3, 1},
        {[](Cplx u, Cplx v, Cplx e) {
           return el_fbar(u - v, e) / el_d(u - v, e);
         },
         B::A1, 1, B::A3, 0},
        {[](Cplx u, Cplx v, Cplx e) {
           return -el_fbar(u - v, e) / el_d(u - v, e);
         },
         B::A1, 0, B::A3, 1}}});

  rel.push_back(
      {"C1-B3",
       {{one, B::C1, 0, B::B3, 1}},
       {{[](Cplx u, Cplx v, Cplx e) { return el_a(v - u, e) / el_d(v - u, e); },
         B::B3, 1, B::C1, 0},
        {[](Cplx u, Cplx v, Cplx e) { return el_g(v - u, e) / el_d(v - u, e); },
         B::A3, 1, B::A1, 0},
        {[](Cplx u, Cplx v, Cplx e) { return 1.0 / fn_y(v - u, e); }, B::B2, 1,
         B::C2, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -el_g(v - u, e) / el_d(v - u, e); },
         B::A2, 0, B::A2, 1},
        {[](Cplx u, Cplx v, Cplx e) { return -el_f(v - u, e) / el_d(v - u, e); },
         B::B3, 0, B::C1, 1}}});

  rel.push_back(
      {"A2-B1",
       {{one, B::A2, 0, B::B1, 1}},
       {{[](Cplx u, Cplx v, Cplx e) { return fn_z(u - v, e) / fn_w(u - v, e); },
         B::B1, 1, B::A2, 0},
        {[](Cplx u, Cplx v, Cplx e) {
           return -el_ebar(u - v, e) / el_b(u - v, e);
         },
         B::B1, 0, B::A2, 1},
        {[](Cplx u, Cplx v, Cplx e) { return 1.0 / fn_y(u - v, e); }, B::B3, 0,
         B::A1, 1},
        {[](Cplx u, Cplx v, Cplx e) {
           return el_ebar(u - v, e) / (fn_y(u - v, e) * el_b(u - v, e));
         },
         B::B2, 0, B::C1, 1},
        // y takes v-u here; with y(u-v) the identity fails the oracle check.
        {[](Cplx u, Cplx v, Cplx e) {
           return -fn_z(u - v, e) / (fn_w(u - v, e) * fn_y(v - u, e));
         },
         B::B2, 1, B::C1, 0}}});

  rel.push_back(
      {"C3-B1",
       {{one, B::C3, 0, B::B1, 1}},
       {{[](Cplx u, Cplx v, Cplx e) { return el_a(u - v, e) / el_d(u - v, e); },
         B::B1, 1, B::C3, 0},
        {[](Cplx u, Cplx v, Cplx e) { return el_g(u - v, e) / el_d(u - v, e); },
         B::B2, 1, B::C2, 0},
        {[](Cplx u, Cplx v, Cplx e) {
           return -el_fbar(u - v, e) / el_d(u - v, e);
         },
         B::B1, 0, B::C3, 1},
        {[](Cplx u, Cplx v, Cplx e) { return 1.0 / fn_y(u - v, e); }, B::A1, 1,
         B::A3, 0},
        {[](Cplx u, Cplx v, Cplx e) { return -1.0 / fn_y(u - v, e); }, B::A2, 0,
         B::A2, 1}}});

  return rel;
}

}  // namespace

int exchange_relation_count() {
  static const int n = static_cast<int>(exchange_table().size());
  return n;
}

std::vector<RelationResidual> check_exchange_relations(Cplx u, Cplx v,
                                                       const ModelParams& p,
                                                       int corrupt_relation) {
  std::vector<Relation> table = exchange_table();
  if (corrupt_relation >= 0 &&
      corrupt_relation < static_cast<int>(table.size())) {
    Relation& r = table[corrupt_relation];
    if (r.rhs.size() >= 2) {
      std::swap(r.rhs[0].coef, r.rhs[1].coef);
    } else {
      auto old = r.rhs[0].coef;
      r.rhs[0].coef = [old](Cplx a, Cplx b, Cplx e) {
        return 1.01 * old(a, b, e);
      };
    }
  }

  const MonodromyBlocks bu = build_monodromy(u, p);
  const MonodromyBlocks bv = build_monodromy(v, p);
  const Eigen::Index dim = hilbert_dim(p.n_sites);

  auto eval_side = [&](const std::vector<Term>& terms) {
    Operator acc = Operator::Zero(dim, dim);
    for (const Term& t : terms) {
      const MonodromyBlocks& m1 = t.arg1 == 0 ? bu : bv;
      const MonodromyBlocks& m2 = t.arg2 == 0 ? bu : bv;
      acc += t.coef(u, v, p.eta) * (block_of(m1, t.op1) * block_of(m2, t.op2));
    }
    return acc;
  };

  std::vector<RelationResidual> out;
  out.reserve(table.size());
  for (const Relation& r : table) {
    const Operator lhs = eval_side(r.lhs);
    const Operator rhs = eval_side(r.rhs);
    const double scale = std::max(lhs.norm(), rhs.norm());
    out.push_back({r.id, scale > 0 ? (lhs - rhs).norm() / scale : 0.0});
  }
  return out;
}

double check_rtt(Cplx u, Cplx v, const ModelParams& p) {
  const MonodromyBlocks tu = build_monodromy(u, p);
  const MonodromyBlocks tv = build_monodromy(v, p);
  const RMatrix r = build_r(u - v, p.eta);
  const Eigen::Index dim = hilbert_dim(p.n_sites);

  // Work on aux (x) aux' (x) quantum; index (3i+k) pairs aux row i with
  // aux' row k.
  Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Zero(9 * dim, 9 * dim);
  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(9 * dim, 9 * dim);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) {
          const Eigen::MatrixXcd t1t2 = tu.t[i][j] * tv.t[k][l];
          const Eigen::MatrixXcd t2t1 = tv.t[k][l] * tu.t[i][j];
          for (int a = 0; a < 3; ++a)
            for (int c = 0; c < 3; ++c) {
              if (r(3 * a + c, 3 * i + k) != 0.0)
                lhs.block((3 * a + c) * dim, (3 * j + l) * dim, dim, dim) +=
                    r(3 * a + c, 3 * i + k) * t1t2;
              if (r(3 * j + l, 3 * a + c) != 0.0)
                rhs.block((3 * i + k) * dim, (3 * a + c) * dim, dim, dim) +=
                    t2t1 * r(3 * j + l, 3 * a + c);
            }
        }
  return (lhs - rhs).norm() / lhs.norm();
}

}  // namespace ik
