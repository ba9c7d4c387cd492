#pragma once

#include <array>
#include <string>
#include <vector>

#include "kernel.hpp"

namespace ik {

using Operator = Eigen::MatrixXcd;

inline Eigen::Index hilbert_dim(int n_sites) {
  Eigen::Index d = 1;
  for (int i = 0; i < n_sites; ++i) d *= 3;
  return d;
}

// Identity everywhere except `site` (1-based); site 1 is the leftmost
// Kronecker factor.
Operator embed(const Eigen::Matrix3cd& local, int site, int n_sites);

// Two-site embedding of a 9x9 matrix acting on V_a (x) V_b (a as the first
// factor); a and b need not be adjacent.
Operator embed_two(const RMatrix& op, int site_a, int site_b, int n_sites);

struct MonodromyBlocks {
  Cplx spectral_point;
  // t[i][j] = T^{i+1}_{j+1}; A1 = T^1_1, B1 = T^1_2, B2 = T^1_3,
  // C1 = T^2_1, A2 = T^2_2, B3 = T^2_3, C2 = T^3_1, C3 = T^3_2, A3 = T^3_3.
  std::array<std::array<Operator, 3>, 3> t;

  const Operator& A1() const { return t[0][0]; }
  const Operator& B1() const { return t[0][1]; }
  const Operator& B2() const { return t[0][2]; }
  const Operator& C1() const { return t[1][0]; }
  const Operator& A2() const { return t[1][1]; }
  const Operator& B3() const { return t[1][2]; }
  const Operator& C2() const { return t[2][0]; }
  const Operator& C3() const { return t[2][1]; }
  const Operator& A3() const { return t[2][2]; }
};

// Ordered product T_0(u) = R_0N(u - theta_N) ... R_01(u - theta_1), as a
// 3x3 block matrix over the auxiliary space.
MonodromyBlocks build_monodromy(Cplx u, const ModelParams& p);

Operator transfer(const MonodromyBlocks& blocks);
Operator transfer(Cplx u, const ModelParams& p);

// Nearest-neighbour Hamiltonian at zero inhomogeneities, periodic wrap.
Operator hamiltonian(const ModelParams& p);

enum class Block { A1, A2, A3, B1, B2, B3, C1, C2, C3 };

const Operator& block_of(const MonodromyBlocks& blocks, Block b);
std::string block_name(Block b);

struct RelationResidual {
  std::string id;
  double residual;
};

// Evaluates the block exchange relations as operator identities.
// corrupt_relation >= 0 swaps two coefficient functions inside that relation
// (negative-control hook).
std::vector<RelationResidual> check_exchange_relations(
    Cplx u, Cplx v, const ModelParams& p, int corrupt_relation = -1);

int exchange_relation_count();

// Relative residual of the fundamental commutation relation
// R(u-v) T1(u) T2(v) = T2(v) T1(u) R(u-v) on aux (x) aux' (x) quantum.
double check_rtt(Cplx u, Cplx v, const ModelParams& p);

}  // namespace ik
