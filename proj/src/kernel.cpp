#include "kernel.hpp"

#include <cmath>

namespace ik {

namespace {

constexpr Cplx kIPi{0.0, kPi};

double sinh_scale(Cplx arg) {
  // sinh magnitude grows like exp(|Re|)/2; residual thresholds are relative
  // to this scale.
  return std::max(1.0, 0.5 * std::exp(std::abs(arg.real())));
}

}  // namespace

Cplx shifted(Cplx u, Level lv, Cplx eta) {
  switch (lv) {
    case Level::plain:
      return u;
    case Level::one:
      return u + 4.0 * eta;
    case Level::two:
      return u + 6.0 * eta + kIPi;
  }
  return u;
}

Cplx el_a(Cplx u, Cplx eta) {
  return std::sinh(u - 3.0 * eta) - std::sinh(5.0 * eta) +
         std::sinh(3.0 * eta) + std::sinh(eta);
}

Cplx el_b(Cplx u, Cplx eta) {
  return std::sinh(u - 3.0 * eta) + std::sinh(3.0 * eta);
}

Cplx el_c(Cplx u, Cplx eta) {
  return std::sinh(u - 5.0 * eta) + std::sinh(eta);
}

Cplx el_d(Cplx u, Cplx eta) {
  return std::sinh(u - eta) + std::sinh(eta);
}

Cplx el_e(Cplx u, Cplx eta) {
  return -2.0 * std::exp(-0.5 * u) * std::sinh(2.0 * eta) *
         std::cosh(0.5 * u - 3.0 * eta);
}

Cplx el_ebar(Cplx u, Cplx eta) {
  return -2.0 * std::exp(0.5 * u) * std::sinh(2.0 * eta) *
         std::cosh(0.5 * u - 3.0 * eta);
}

Cplx el_f(Cplx u, Cplx eta) {
  return -2.0 * std::exp(-u + 2.0 * eta) * std::sinh(eta) *
             std::sinh(2.0 * eta) -
         std::exp(-eta) * std::sinh(4.0 * eta);
}

Cplx el_fbar(Cplx u, Cplx eta) {
  return 2.0 * std::exp(u - 2.0 * eta) * std::sinh(eta) *
             std::sinh(2.0 * eta) -
         std::exp(eta) * std::sinh(4.0 * eta);
}

Cplx el_g(Cplx u, Cplx eta) {
  return 2.0 * std::exp(-0.5 * u + 2.0 * eta) * std::sinh(0.5 * u) *
         std::sinh(2.0 * eta);
}

Cplx el_gbar(Cplx u, Cplx eta) {
  return -2.0 * std::exp(0.5 * u - 2.0 * eta) * std::sinh(0.5 * u) *
         std::sinh(2.0 * eta);
}

ElementValues eval_elements(Cplx u, Cplx eta) {
  return {el_a(u, eta),    el_b(u, eta), el_c(u, eta),    el_d(u, eta),
          el_e(u, eta),    el_ebar(u, eta), el_f(u, eta), el_fbar(u, eta),
          el_g(u, eta),    el_gbar(u, eta)};
}

ElementValues eval_elements_derivative(Cplx u, Cplx eta) {
  const Cplx s2 = std::sinh(2.0 * eta);
  ElementValues d;
  d.a = std::cosh(u - 3.0 * eta);
  d.b = std::cosh(u - 3.0 * eta);
  d.c = std::cosh(u - 5.0 * eta);
  d.d = std::cosh(u - eta);
  d.e = s2 * std::exp(-u + 3.0 * eta);
  d.e_bar = -s2 * std::exp(u - 3.0 * eta);
  d.f = 2.0 * std::exp(-u + 2.0 * eta) * std::sinh(eta) * s2;
  d.f_bar = 2.0 * std::exp(u - 2.0 * eta) * std::sinh(eta) * s2;
  d.g = s2 * std::exp(2.0 * eta) * std::exp(-u);
  d.g_bar = -s2 * std::exp(-2.0 * eta) * std::exp(u);
  return d;
}

namespace {

void require_nonzero(Cplx value, const char* which, Cplx arg,
                     double threshold = 1e-10) {
  if (std::abs(value) < threshold * sinh_scale(arg)) {
    throw NearSingular(which, arg);
  }
}

}  // namespace

Cplx fn_omega(Cplx u, Cplx eta) {
  const Cplx den =
      el_a(u, eta) * el_d(u, eta) - el_g(u, eta) * el_gbar(u, eta);
  require_nonzero(den, "omega", u);
  return el_c(u, eta) * el_d(u, eta) / den;
}

Cplx fn_y(Cplx u, Cplx eta) {
  const Cplx den = el_gbar(u, eta);
  require_nonzero(den, "y", u);
  return el_d(u, eta) / den;
}

Cplx fn_ybar(Cplx u, Cplx eta) {
  const Cplx den = el_g(u, eta);
  require_nonzero(den, "ybar", u);
  return el_d(u, eta) / den;
}

Cplx fn_z(Cplx u, Cplx eta) {
  const Cplx den = el_b(u, eta);
  require_nonzero(den, "z", u);
  return el_c(u, eta) / den;
}

Cplx alpha1(Cplx u, const ModelParams& p) {
  Cplx r = 1.0;
  for (const Cplx& th : p.theta) r *= el_c(u - th, p.eta);
  return r;
}

Cplx alpha2(Cplx u, const ModelParams& p) {
  Cplx r = 1.0;
  for (const Cplx& th : p.theta) r *= el_b(u - th, p.eta);
  return r;
}

Cplx alpha3(Cplx u, const ModelParams& p) {
  Cplx r = 1.0;
  for (const Cplx& th : p.theta) r *= el_d(u - th, p.eta);
  return r;
}

Cplx alpha1_skip(Cplx u, const ModelParams& p, int skip) {
  if (skip < 1 || skip > p.n_sites) {
    throw IndexOutOfRange("alpha1_skip: site index out of range");
  }
  Cplx r = 1.0;
  for (int l = 1; l <= p.n_sites; ++l) {
    if (l == skip) continue;
    r *= el_c(u - p.theta[l - 1], p.eta);
  }
  return r;
}

AlphaValues eval_alpha(Cplx u, const ModelParams& p) {
  AlphaValues v;
  v.alpha1 = alpha1(u, p);
  v.alpha2 = alpha2(u, p);
  v.alpha3 = alpha3(u, p);
  v.alpha1_skip.resize(p.n_sites);
  for (int i = 1; i <= p.n_sites; ++i) {
    v.alpha1_skip[i - 1] = alpha1_skip(u, p, i);
  }
  return v;
}

Cplx fn_xi(Cplx u, const ModelParams& p) {
  const Cplx den = alpha2(shifted(u, Level::one, p.eta), p);
  require_nonzero(den, "xi", u);
  return std::exp(p.eta) * alpha3(shifted(u, Level::two, p.eta), p) / den;
}

Cplx fn_xibar(Cplx u, const ModelParams& p) {
  const Cplx den = alpha2(shifted(u, Level::one, p.eta), p);
  require_nonzero(den, "xibar", u);
  return std::exp(-p.eta) * alpha3(shifted(u, Level::two, p.eta), p) / den;
}

AuxValues eval_aux(Cplx u, const ModelParams& p) {
  return {fn_omega(u, p.eta), fn_y(u, p.eta),  fn_ybar(u, p.eta),
          fn_z(u, p.eta),     fn_xi(u, p),     fn_xibar(u, p)};
}

Cplx dlog_z(Cplx u, Cplx eta) {
  return std::cosh(u - 5.0 * eta) / el_c(u, eta) -
         std::cosh(u - 3.0 * eta) / el_b(u, eta);
}

Cplx dlog_w(Cplx u, Cplx eta) {
  const ElementValues v = eval_elements(u, eta);
  const ElementValues d = eval_elements_derivative(u, eta);
  const Cplx den = v.a * v.d - v.g * v.g_bar;
  return d.c / v.c + d.d / v.d -
         (d.a * v.d + v.a * d.d - d.g * v.g_bar - v.g * d.g_bar) / den;
}

Cplx dlog_alpha1(Cplx u, const ModelParams& p) {
  Cplx r = 0.0;
  for (const Cplx& th : p.theta) {
    r += std::cosh(u - th - 5.0 * p.eta) / el_c(u - th, p.eta);
  }
  return r;
}

Cplx dlog_alpha2(Cplx u, const ModelParams& p) {
  Cplx r = 0.0;
  for (const Cplx& th : p.theta) {
    r += std::cosh(u - th - 3.0 * p.eta) / el_b(u - th, p.eta);
  }
  return r;
}

void ModelParams::validate() const {
  if (n_sites < 1) throw DegenerateParams("n_sites must be >= 1");
  if (static_cast<int>(theta.size()) != n_sites) {
    throw DegenerateParams("theta must have exactly n_sites entries");
  }
  if (tolerance <= 0.0) throw DegenerateParams("tolerance must be positive");

  const double eps = 1e-8;
  if (std::abs(std::sinh(2.0 * eta)) < eps ||
      std::abs(std::cosh(eta)) < eps || std::abs(varphi(eta)) < eps ||
      std::abs(std::sinh(eta) + std::sinh(3.0 * eta)) < eps) {
    throw DegenerateParams("crossing parameter eta is degenerate");
  }

  // Every denominator in the closed-form identities is b, c or d at a
  // difference of (possibly shifted) inhomogeneities.
  const Cplx base[4] = {Cplx{0.0, 0.0}, 2.0 * eta, 4.0 * eta,
                        6.0 * eta + kIPi};
  std::vector<Cplx> shifts;
  for (const Cplx& s1 : base)
    for (const Cplx& s2 : base) shifts.push_back(s1 - s2);

  for (int j = 0; j < n_sites; ++j) {
    for (int l = 0; l < n_sites; ++l) {
      if (j == l) continue;
      for (const Cplx& s : shifts) {
        const Cplx arg = theta[j] - theta[l] + s;
        const double scale = sinh_scale(arg);
        if (std::abs(el_b(arg, eta)) < eps * scale ||
            std::abs(el_c(arg, eta)) < eps * scale ||
            std::abs(el_d(arg, eta)) < eps * scale) {
          throw DegenerateParams(
              "inhomogeneities are degenerate at sites " +
              std::to_string(j + 1) + "," + std::to_string(l + 1));
        }
      }
    }
  }
}

RMatrix assemble_r(const ElementValues& v) {
  RMatrix r = RMatrix::Zero();
  // Row/column index 3*(i-1)+(j-1) for |i> (x) |j>.
  r(0, 0) = v.c;
  r(1, 1) = v.b;
  r(1, 3) = v.e;
  r(2, 2) = v.d;
  r(2, 4) = v.g;
  r(2, 6) = v.f;
  r(3, 1) = v.e_bar;
  r(3, 3) = v.b;
  r(4, 2) = v.g_bar;
  r(4, 4) = v.a;
  r(4, 6) = v.g;
  r(5, 5) = v.b;
  r(5, 7) = v.e;
  r(6, 2) = v.f_bar;
  r(6, 4) = v.g_bar;
  r(6, 6) = v.d;
  r(7, 5) = v.e_bar;
  r(7, 7) = v.b;
  r(8, 8) = v.c;
  return r;
}

RMatrix build_r(Cplx u, Cplx eta) {
  return assemble_r(eval_elements(u, eta));
}

RMatrix permutation9() {
  RMatrix p = RMatrix::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p(3 * i + j, 3 * j + i) = 1.0;
  return p;
}

Cplx varphi(Cplx eta) { return std::sinh(eta) - std::sinh(5.0 * eta); }

Cplx phi_unitarity(Cplx u, Cplx eta) {
  return (std::sinh(eta) + std::sinh(u - 5.0 * eta)) *
         (std::sinh(eta) - std::sinh(u + 5.0 * eta));
}

namespace {

using M27 = Eigen::Matrix<Cplx, 27, 27>;

// Embed a two-space matrix into V^(x)3 on the given pair of spaces.
M27 embed_pair3(const RMatrix& r, int sa, int sb) {
  M27 m = M27::Zero();
  int idx[3];
  int jdx[3];
  for (int i0 = 0; i0 < 3; ++i0)
    for (int i1 = 0; i1 < 3; ++i1)
      for (int i2 = 0; i2 < 3; ++i2) {
        idx[0] = i0;
        idx[1] = i1;
        idx[2] = i2;
        for (int j0 = 0; j0 < 3; ++j0)
          for (int j1 = 0; j1 < 3; ++j1)
            for (int j2 = 0; j2 < 3; ++j2) {
              jdx[0] = j0;
              jdx[1] = j1;
              jdx[2] = j2;
              bool diag = true;
              for (int s = 0; s < 3; ++s) {
                if (s != sa && s != sb && idx[s] != jdx[s]) diag = false;
              }
              if (!diag) continue;
              m(9 * i0 + 3 * i1 + i2, 9 * j0 + 3 * j1 + j2) =
                  r(3 * idx[sa] + idx[sb], 3 * jdx[sa] + jdx[sb]);
            }
      }
  return m;
}

}  // namespace

double check_qybe(Cplx u1, Cplx u2, Cplx u3, Cplx eta) {
  const M27 r12 = embed_pair3(build_r(u1 - u2, eta), 0, 1);
  const M27 r13 = embed_pair3(build_r(u1 - u3, eta), 0, 2);
  const M27 r23 = embed_pair3(build_r(u2 - u3, eta), 1, 2);
  const M27 lhs = r12 * r13 * r23;
  const M27 rhs = r23 * r13 * r12;
  return (lhs - rhs).norm() / lhs.norm();
}

double check_unitarity(Cplx u, Cplx eta) {
  const RMatrix p = permutation9();
  const RMatrix r12 = build_r(u, eta);
  const RMatrix r21 = p * build_r(-u, eta) * p;
  const RMatrix lhs = r12 * r21;
  const RMatrix rhs = phi_unitarity(u, eta) * RMatrix::Identity();
  return (lhs - rhs).norm() / lhs.norm();
}

}  // namespace ik
