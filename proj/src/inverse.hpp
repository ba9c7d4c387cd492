#pragma once

#include "hilbert.hpp"

namespace ik {

struct ReconstructionReport {
  int site = 0;
  int i = 0, j = 0;          // matrix unit e^{ij}
  double residual = 0.0;     // vs the direct embedding
  Cplx prefactor_used;       // empirical scalar applied
  Cplx prefactor_printed;    // closed form for comparison
};

// Scalar value of the product of all N transfer matrices evaluated at the
// inhomogeneities (the product is proportional to the identity; this is the
// proportionality constant, measured).
Cplx transfer_product_scalar(const ModelParams& p);

// Closed-form prediction for the same scalar: prod_{i<j} phi(theta_i -
// theta_j) times varphi^N.
Cplx printed_transfer_product_scalar(const ModelParams& p);

// Relative Frobenius residual of tr_0{x_0 T_0(theta_site)} against
// prod_{j<site} t^-1(theta_j) . embed(x, site) . prod_{j<=site} t(theta_j).
// Throws SingularTransfer if any needed transfer inverse is ill-conditioned.
double check_trace_identity(int site, const Eigen::Matrix3cd& local,
                            const ModelParams& p);

// Local matrix unit e^{ij} at `site` rebuilt from a monodromy block
// sandwiched between transfer matrices. If `report` is non-null it receives
// the residual against the direct embedding and both prefactors.
Operator reconstruct_local(int i, int j, int site, const ModelParams& p,
                           ReconstructionReport* report = nullptr);

// Which monodromy block carries e^{ij}: x_0 = e^{ij} traces to T^j_i.
Block inverse_block_for(int i, int j);

}  // namespace ik
