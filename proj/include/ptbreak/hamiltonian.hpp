#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "ptbreak/ensembles.hpp"

namespace ptbreak {

/// Which antiunitary symmetry protects the real secular equation.
enum class SymmetryVariant {
  PT,        // parity + complex conjugation
  PTTprime,  // parity + conjugation + transposition
};

const char* to_string(SymmetryVariant v);

/// The 2M x 2M non-hermitian Hamiltonian of two coupled subsystems with
/// balanced absorption/amplification rate mu.  Block structure:
///   PT:        [[H - i*mu, Gamma], [Gamma, conj(H) + i*mu]]
///   PTTprime:  [[H - i*mu, Gamma], [Gamma,      H  + i*mu]]
/// For real H the two variants coincide.  mu = 0 gives a hermitian matrix.
struct EffectiveHamiltonian {
  Eigen::MatrixXcd matrix;
  double mu = 0.0;
  SymmetryClass symmetry_class = SymmetryClass::Orthogonal;
  SymmetryVariant variant = SymmetryVariant::PT;
  double transparency = 0.0;
  int dim = 0;
  int channels = 0;
  std::uint64_t realization_seed = 0;
};

/// Barrier amplitudes: r = -sqrt(1-T), t = i*sqrt(T), so |r|^2 + |t|^2 = 1.
struct BarrierScattering {
  double transparency = 0.0;
  std::complex<double> r;
  std::complex<double> t;

  static BarrierScattering from_transparency(double transparency);
};

enum class Side { Left, Right };

EffectiveHamiltonian build_effective(const Eigen::MatrixXcd& h,
                                     const ChannelCoupling& coupling, double mu,
                                     SymmetryVariant variant,
                                     std::uint64_t realization_seed = 0);

/// Rotate to the parity basis of symmetric/antisymmetric combinations:
/// returns U * matrix * U^dag with U = (1/sqrt(2)) [[I, I], [-I, I]].
/// For a real-H PT Hamiltonian (and any PTTprime one) the result is
/// [[H+Gamma, i*mu], [i*mu, H-Gamma]]; for a complex-H PT Hamiltonian the
/// off-diagonal blocks pick up -i*Im(H).
Eigen::MatrixXcd parity_transform(const EffectiveHamiltonian& heff);

/// M x N channel matrix with V(m,c) = delta_{m,c} * sqrt(v_m); any V with
/// the same Gram matrix V V^dag is gauge-equivalent.
Eigen::MatrixXd coupling_matrix(const ChannelCoupling& coupling);

/// Subsystem scattering matrix at (complex) energy:
///   Left:  1 - 2i V^dag (E - i*mu - H       + i V V^dag)^{-1} V
///   Right: 1 - 2i V^dag (E + i*mu - conj(H) + i V V^dag)^{-1} V
/// Throws NumericalError with a condition estimate if the solve is singular.
Eigen::MatrixXcd scattering_matrix(Side side, std::complex<double> energy,
                                   const Eigen::MatrixXcd& h,
                                   const Eigen::MatrixXd& v, double mu);

/// Smallest singular value (relative to the largest) of the 2N x 2N
/// round-trip quantization matrix
///   [[r S_L - 1, t S_R], [t S_L, r S_R - 1]]
/// evaluated at the given energy.  Vanishes exactly on the spectrum of the
/// matching EffectiveHamiltonian, which makes this the independent
/// scattering-theory oracle for the eigenvalue problem.
double quantization_residual(std::complex<double> energy,
                             const Eigen::MatrixXcd& h,
                             const ChannelCoupling& coupling, double mu);

}  // namespace ptbreak
