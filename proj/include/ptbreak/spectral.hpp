#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "ptbreak/hamiltonian.hpp"

namespace ptbreak {

/// All eigenvalues of one matrix, sorted by (Re, Im).
struct Spectrum {
  std::vector<std::complex<double>> eigenvalues;
  std::string provenance;  // named in solver error messages
};

/// Eigenvalues partitioned into real levels and complex-conjugate pairs,
/// restricted to |Re E| <= window_half_width.  Pairs are stored once, as
/// the member with Im > 0.
struct ClassifiedSpectrum {
  std::vector<double> real_levels;
  std::vector<std::complex<double>> conjugate_pairs;
  double window_half_width = 0.0;
  double tolerance = 0.0;

  int levels_in_window() const {
    return static_cast<int>(real_levels.size() + 2 * conjugate_pairs.size());
  }
  int complex_members() const {
    return static_cast<int>(2 * conjugate_pairs.size());
  }
};

/// Ensemble-averaged complex-level fraction with jackknife uncertainty.
struct FractionEstimate {
  double f = 0.0;
  double stderr_ = 0.0;
  long n_realizations = 0;
  long n_levels = 0;
  long n_skipped = 0;  // instances with an empty window
};

/// Full eigenvalue set of a general square complex matrix.  Exactly
/// hermitian inputs are routed to the (faster, exactly real) hermitian
/// solver; everything else goes through the complex QR algorithm.
Spectrum eigenvalues(const Eigen::MatrixXcd& a, std::string_view provenance = {});

/// Same for a real matrix; complex eigenvalues come out in exactly
/// conjugate pairs.
Spectrum eigenvalues_real(const Eigen::MatrixXd& a, std::string_view provenance = {});

/// Spectrum of the effective Hamiltonian assembled from (h, coupling, mu,
/// variant), without forming the 2M x 2M complex matrix when a cheaper
/// route exists:
///   - mu == 0: hermitian solver (spectrum exactly real);
///   - PT variant: the matrix is unitarily similar to the real matrix
///       [[Re H, Im H + Gamma - mu], [-Im H + Gamma + mu, Re H]],
///     solved with the real QR algorithm (conjugation closure is exact);
///   - PTTprime with complex H: general complex solver on the full matrix.
Spectrum effective_spectrum(const Eigen::MatrixXcd& h,
                            const ChannelCoupling& coupling, double mu,
                            SymmetryVariant variant,
                            std::string_view provenance = {});

/// Greedy conjugate pairing followed by the Re-only window restriction.
/// Values with |Im| <= tolerance are real levels.  Complex values are
/// paired with their conjugate partner within 10*tolerance in Re and Im;
/// a second pass with a window of sqrt(eps)*(1+max|Re|) absorbs the
/// forward-error splitting of near-degenerate pairs that a backward-stable
/// solver can produce.  Anything still unpaired throws IntegrityError.
ClassifiedSpectrum classify(const Spectrum& spectrum, double window_half_width,
                            double tolerance);

/// Ratio-of-sums estimator over realizations; stderr from leave-one-out
/// jackknife.  Instances with an empty window are skipped but counted.
FractionEstimate complex_fraction(const std::vector<ClassifiedSpectrum>& instances);

}  // namespace ptbreak
