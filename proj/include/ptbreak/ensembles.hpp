#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "ptbreak/rng.hpp"

namespace ptbreak {

/// Symmetry class of the hermitian limit.
enum class SymmetryClass {
  Orthogonal,  // real symmetric H (GOE)
  Unitary,     // complex hermitian H (GUE)
};

const char* to_string(SymmetryClass c);

struct EnsembleSpec {
  SymmetryClass symmetry_class = SymmetryClass::Orthogonal;
  int dim = 0;       // M
  int channels = 0;  // N open channels, 1 <= N <= M
  std::uint64_t seed = 0;

  void validate() const;  // throws ParameterError
};

/// Fixes the energy units of a sampled ensemble.  With sigma = 1/sqrt(M)
/// the eigenvalue density follows a semicircle of radius 2 and the mean
/// level spacing at band center is delta0 = pi/M.
struct SpectralNormalization {
  double sigma = 0.0;              // off-diagonal std deviation of H
  double delta0 = 0.0;             // mean level spacing at band center
  double window_half_width = 0.0;  // central energy window, absolute units

  /// sigma = 1/sqrt(M); window covers the central quarter of the band,
  /// where the semicircle density varies by less than ~3.2%.
  static SpectralNormalization standard(int dim);
};

/// Diagonal coupling data for the two-subsystem geometry: v holds the
/// diagonal of V V^dag, gamma the diagonal of the barrier matrix.  Open
/// channels occupy the first `channels` basis indices.
struct ChannelCoupling {
  Eigen::VectorXd v;
  Eigen::VectorXd gamma;
  double transparency = 0.0;

  int dim() const { return static_cast<int>(v.size()); }
  int open_channels() const;
  double gamma_open() const { return gamma.size() > 0 ? gamma(0) : 0.0; }
};

/// Mean level spacing at band center, pi*sigma/sqrt(M).
double mean_level_spacing(const SpectralNormalization& norm, int dim);

/// Draw one M x M matrix of the requested class.  Entry variances follow
/// the standard GOE/GUE conventions: off-diagonal variance sigma^2 (split
/// evenly between real and imaginary parts for the unitary class),
/// diagonal variance 2*sigma^2 (orthogonal) or sigma^2 (unitary, real).
/// Identical (spec, stream) give bit-identical matrices.
Eigen::MatrixXcd sample_h(const EnsembleSpec& spec,
                          const SpectralNormalization& norm,
                          RngStream& stream);

/// Coupling for barrier transparency T in [0,1]:
///   v_m     = delta0*M/pi                          (open channels)
///   gamma_m = sqrt(T)/(1+sqrt(1-T)) * delta0*M/pi  (open channels)
/// and zero elsewhere.  gamma_open equals v_open at T=1 and vanishes at T=0.
ChannelCoupling build_coupling(int dim, int channels, double transparency,
                               double delta0);

}  // namespace ptbreak
