#include "ptbreak/ensembles.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "ptbreak/errors.hpp"

namespace ptbreak {

const char* to_string(SymmetryClass c) {
  return c == SymmetryClass::Orthogonal ? "orthogonal" : "unitary";
}

void EnsembleSpec::validate() const {
  if (dim < 1) throw ParameterError("ensemble dim must be >= 1, got " + std::to_string(dim));
  if (channels < 1 || channels > dim)
    throw ParameterError("ensemble channels must satisfy 1 <= N <= M, got N=" +
                         std::to_string(channels) + " M=" + std::to_string(dim));
}

SpectralNormalization SpectralNormalization::standard(int dim) {
  if (dim < 1) throw ParameterError("normalization dim must be >= 1");
  SpectralNormalization n;
  n.sigma = 1.0 / std::sqrt(static_cast<double>(dim));
  n.delta0 = std::numbers::pi * n.sigma / std::sqrt(static_cast<double>(dim));
  n.window_half_width = 0.25 * 2.0 * n.sigma * std::sqrt(static_cast<double>(dim));
  return n;
}

int ChannelCoupling::open_channels() const {
  int n = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0.0) ++n;
  return n;
}

double mean_level_spacing(const SpectralNormalization& norm, int dim) {
  if (dim < 2) throw ParameterError("mean_level_spacing needs dim >= 2");
  return std::numbers::pi * norm.sigma / std::sqrt(static_cast<double>(dim));
}

Eigen::MatrixXcd sample_h(const EnsembleSpec& spec,
                          const SpectralNormalization& norm,
                          RngStream& stream) {
  spec.validate();
  const int m = spec.dim;
  const double sigma = norm.sigma;
  Eigen::MatrixXcd h(m, m);
  if (spec.symmetry_class == SymmetryClass::Orthogonal) {
    const double diag_scale = sigma * std::numbers::sqrt2;
    for (int i = 0; i < m; ++i) {
      h(i, i) = diag_scale * stream.next_gaussian();
      for (int j = i + 1; j < m; ++j) {
        const double x = sigma * stream.next_gaussian();
        h(i, j) = x;
        h(j, i) = x;
      }
    }
  } else {
    const double off_scale = sigma / std::numbers::sqrt2;
    for (int i = 0; i < m; ++i) {
      h(i, i) = sigma * stream.next_gaussian();
      for (int j = i + 1; j < m; ++j) {
        const std::complex<double> z(off_scale * stream.next_gaussian(),
                                     off_scale * stream.next_gaussian());
        h(i, j) = z;
        h(j, i) = std::conj(z);
      }
    }
  }
  return h;
}

ChannelCoupling build_coupling(int dim, int channels, double transparency,
                               double delta0) {
  if (transparency < 0.0 || transparency > 1.0)
    throw ParameterError("transparency must lie in [0,1], got " +
                         std::to_string(transparency));
  if (channels < 0 || channels > dim)
    throw ParameterError("build_coupling: channels out of range");
  ChannelCoupling c;
  c.transparency = transparency;
  c.v = Eigen::VectorXd::Zero(dim);
  c.gamma = Eigen::VectorXd::Zero(dim);
  const double v_open = delta0 * dim / std::numbers::pi;
  const double g_open =
      std::sqrt(transparency) / (1.0 + std::sqrt(1.0 - transparency)) * v_open;
  for (int i = 0; i < channels; ++i) {
    c.v(i) = v_open;
    c.gamma(i) = g_open;
  }
  return c;
}

}  // namespace ptbreak
