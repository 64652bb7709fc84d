#include "ptbreak/hamiltonian.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "ptbreak/errors.hpp"

namespace ptbreak {

namespace {
const std::complex<double> kI(0.0, 1.0);
}

const char* to_string(SymmetryVariant v) {
  return v == SymmetryVariant::PT ? "pt" : "pttprime";
}

BarrierScattering BarrierScattering::from_transparency(double transparency) {
  if (transparency < 0.0 || transparency > 1.0)
    throw ParameterError("barrier transparency must lie in [0,1]");
  BarrierScattering b;
  b.transparency = transparency;
  b.r = -std::sqrt(1.0 - transparency);
  b.t = kI * std::sqrt(transparency);
  return b;
}

EffectiveHamiltonian build_effective(const Eigen::MatrixXcd& h,
                                     const ChannelCoupling& coupling, double mu,
                                     SymmetryVariant variant,
                                     std::uint64_t realization_seed) {
  const Eigen::Index m = h.rows();
  if (h.cols() != m) throw ParameterError("build_effective: H must be square");
  if (coupling.gamma.size() != m)
    throw ParameterError("build_effective: coupling dimension " +
                         std::to_string(coupling.gamma.size()) +
                         " does not match H dimension " + std::to_string(m));
  if (mu < 0.0) throw ParameterError("build_effective: mu must be >= 0");

  EffectiveHamiltonian heff;
  heff.mu = mu;
  heff.variant = variant;
  heff.symmetry_class = h.imag().isZero(0.0) ? SymmetryClass::Orthogonal
                                             : SymmetryClass::Unitary;
  heff.transparency = coupling.transparency;
  heff.dim = static_cast<int>(m);
  heff.channels = coupling.open_channels();
  heff.realization_seed = realization_seed;

  const Eigen::MatrixXcd gamma =
      coupling.gamma.cast<std::complex<double>>().asDiagonal();
  heff.matrix.resize(2 * m, 2 * m);
  heff.matrix.topLeftCorner(m, m) = h;
  heff.matrix.topLeftCorner(m, m).diagonal().array() -= kI * mu;
  heff.matrix.topRightCorner(m, m) = gamma;
  heff.matrix.bottomLeftCorner(m, m) = gamma;
  heff.matrix.bottomRightCorner(m, m) =
      variant == SymmetryVariant::PT ? h.conjugate() : h;
  heff.matrix.bottomRightCorner(m, m).diagonal().array() += kI * mu;
  return heff;
}

Eigen::MatrixXcd parity_transform(const EffectiveHamiltonian& heff) {
  const Eigen::Index m = heff.matrix.rows() / 2;
  const double s = 1.0 / std::numbers::sqrt2;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
  u.topLeftCorner(m, m) = s * Eigen::MatrixXcd::Identity(m, m);
  u.topRightCorner(m, m) = s * Eigen::MatrixXcd::Identity(m, m);
  u.bottomLeftCorner(m, m) = -s * Eigen::MatrixXcd::Identity(m, m);
  u.bottomRightCorner(m, m) = s * Eigen::MatrixXcd::Identity(m, m);
  return u * heff.matrix * u.adjoint();
}

Eigen::MatrixXd coupling_matrix(const ChannelCoupling& coupling) {
  const int m = coupling.dim();
  const int n = coupling.open_channels();
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(m, n);
  for (int c = 0; c < n; ++c) v(c, c) = std::sqrt(coupling.v(c));
  return v;
}

Eigen::MatrixXcd scattering_matrix(Side side, std::complex<double> energy,
                                   const Eigen::MatrixXcd& h,
                                   const Eigen::MatrixXd& v, double mu) {
  const Eigen::Index m = h.rows();
  const Eigen::Index n = v.cols();
  if (v.rows() != m) throw ParameterError("scattering_matrix: V rows != dim H");

  const Eigen::MatrixXcd vv = (v * v.transpose()).cast<std::complex<double>>();
  Eigen::MatrixXcd a(m, m);
  if (side == Side::Left)
    a = -h + kI * vv;
  else
    a = -h.conjugate() + kI * vv;
  const std::complex<double> shift =
      side == Side::Left ? energy - kI * mu : energy + kI * mu;
  a.diagonal().array() += shift;

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 16.0 * std::numeric_limits<double>::epsilon()))
    throw NumericalError(
        "scattering_matrix: near-singular resolvent at E=(" +
        std::to_string(energy.real()) + "," + std::to_string(energy.imag()) +
        "), rcond=" + std::to_string(rcond));

  const Eigen::MatrixXcd x = lu.solve(v.cast<std::complex<double>>());
  return Eigen::MatrixXcd::Identity(n, n) -
         2.0 * kI * v.transpose().cast<std::complex<double>>() * x;
}

double quantization_residual(std::complex<double> energy,
                             const Eigen::MatrixXcd& h,
                             const ChannelCoupling& coupling, double mu) {
  const Eigen::MatrixXd v = coupling_matrix(coupling);
  const Eigen::Index n = v.cols();
  const BarrierScattering b =
      BarrierScattering::from_transparency(coupling.transparency);

  const Eigen::MatrixXcd sl = scattering_matrix(Side::Left, energy, h, v, mu);
  const Eigen::MatrixXcd sr = scattering_matrix(Side::Right, energy, h, v, mu);

  Eigen::MatrixXcd q(2 * n, 2 * n);
  q.topLeftCorner(n, n) = b.r * sl - Eigen::MatrixXcd::Identity(n, n);
  q.topRightCorner(n, n) = b.t * sr;
  q.bottomLeftCorner(n, n) = b.t * sl;
  q.bottomRightCorner(n, n) = b.r * sr - Eigen::MatrixXcd::Identity(n, n);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(q);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  if (smax == 0.0) return 0.0;
  return sv(sv.size() - 1) / smax;
}

}  // namespace ptbreak
