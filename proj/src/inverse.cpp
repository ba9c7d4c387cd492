#include "inverse.hpp"

namespace ik {

namespace {

// Solve t . X = rhs with an invertibility guard on t (pivot ratio as a
// cheap condition estimate).
Operator guarded_solve(const Operator& t, const Operator& rhs, Cplx at) {
  Eigen::FullPivLU<Operator> lu(t);
  double smallest = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < lu.matrixLU().rows(); ++k)
    smallest = std::min(smallest, std::abs(lu.matrixLU()(k, k)));
  if (!lu.isInvertible() || std::abs(lu.maxPivot()) > 1e12 * smallest)
    throw SingularTransfer("transfer matrix near-singular at spectral point (" +
                           std::to_string(at.real()) + ", " +
                           std::to_string(at.imag()) + ")");
  return lu.solve(rhs);
}

}  // namespace

Cplx transfer_product_scalar(const ModelParams& p) {
  const Eigen::Index dim = hilbert_dim(p.n_sites);
  Operator prod = Operator::Identity(dim, dim);
  for (int j = 0; j < p.n_sites; ++j)
    prod = prod * transfer(p.theta[j], p);
  return prod.trace() / static_cast<double>(dim);
}

Cplx printed_transfer_product_scalar(const ModelParams& p) {
  Cplx out = std::pow(varphi(p.eta), p.n_sites);
  for (int i = 0; i < p.n_sites; ++i)
    for (int j = i + 1; j < p.n_sites; ++j)
      out *= phi_unitarity(p.theta[i] - p.theta[j], p.eta);
  return out;
}

double check_trace_identity(int site, const Eigen::Matrix3cd& local,
                            const ModelParams& p) {
  p.validate();
  if (site < 1 || site > p.n_sites)
    throw IndexOutOfRange("site " + std::to_string(site) +
                          " outside the chain");
  const Eigen::Index dim = hilbert_dim(p.n_sites);
  const MonodromyBlocks blocks = build_monodromy(p.theta[site - 1], p);
  Operator lhs = Operator::Zero(dim, dim);
  for (int r = 0; r < 3; ++r)
    for (int s = 0; s < 3; ++s)
      if (local(r, s) != 0.0) lhs += local(r, s) * blocks.t[s][r];
  Operator rhs = embed(local, site, p.n_sites);
  for (int j = 1; j < site; ++j)
    rhs = guarded_solve(transfer(p.theta[j - 1], p), rhs, p.theta[j - 1]);
  for (int j = 1; j <= site; ++j) rhs = rhs * transfer(p.theta[j - 1], p);
  return (lhs - rhs).norm() / std::max(lhs.norm(), rhs.norm());
}

Block inverse_block_for(int i, int j) {
  // x_0 = e^{ij} gives tr_0{x_0 T_0} = T^j_i
  static const Block table[3][3] = {
      {Block::A1, Block::C1, Block::C2},
      {Block::B1, Block::A2, Block::C3},
      {Block::B2, Block::B3, Block::A3}};
  if (i < 1 || i > 3 || j < 1 || j > 3)
    throw IndexOutOfRange("matrix unit index outside 1..3");
  return table[i - 1][j - 1];
}

Operator reconstruct_local(int i, int j, int site, const ModelParams& p,
                           ReconstructionReport* report) {
  p.validate();
  if (site < 1 || site > p.n_sites)
    throw IndexOutOfRange("site " + std::to_string(site) +
                          " outside the chain");
  const Eigen::Index dim = hilbert_dim(p.n_sites);
  const MonodromyBlocks blocks = build_monodromy(p.theta[site - 1], p);
  Operator out = block_of(blocks, inverse_block_for(i, j));
  for (int k = site - 1; k >= 1; --k)
    out = transfer(p.theta[k - 1], p) * out;
  for (int k = site + 1; k <= p.n_sites; ++k)
    out = out * transfer(p.theta[k - 1], p);
  // The sandwich equals the target times the scalar value of the product of
  // all transfers; measure that scalar rather than assuming the closed form.
  const Cplx scalar = transfer_product_scalar(p);
  if (std::abs(scalar) < 1e-300)
    throw SingularTransfer("transfer product scalar vanished");
  const Cplx pref = 1.0 / scalar;
  out *= pref;
  if (report) {
    Eigen::Matrix3cd unit = Eigen::Matrix3cd::Zero();
    unit(i - 1, j - 1) = 1.0;
    const Operator target = embed(unit, site, p.n_sites);
    report->site = site;
    report->i = i;
    report->j = j;
    report->residual = (out - target).norm() / std::max(1.0, target.norm());
    report->prefactor_used = pref;
    report->prefactor_printed = 1.0 / printed_transfer_product_scalar(p);
  }
  return out;
}

}  // namespace ik
