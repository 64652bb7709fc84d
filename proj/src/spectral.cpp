#include "ptbreak/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "ptbreak/errors.hpp"

extern "C" void openblas_set_num_threads(int);

namespace ptbreak {

namespace {

// Realizations are parallelized at the application level; a threaded BLAS
// underneath would make reductions order-dependent.
void pin_blas_threads() {
  static std::once_flag once;
  std::call_once(once, [] { openblas_set_num_threads(1); });
}

void sort_eigenvalues(std::vector<std::complex<double>>& w) {
  std::sort(w.begin(), w.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

[[noreturn]] void solver_failure(const char* solver, int info,
                                 std::string_view provenance) {
  throw NumericalError(std::string(solver) + " failed with info=" +
                       std::to_string(info) +
                       (provenance.empty() ? std::string()
                                           : " for " + std::string(provenance)));
}

std::vector<std::complex<double>> zgeev_values(Eigen::MatrixXcd a,
                                               std::string_view provenance) {
  pin_blas_threads();
  const int n = static_cast<int>(a.rows());
  std::vector<std::complex<double>> w(n);
  const int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'N', n,
      reinterpret_cast<lapack_complex_double*>(a.data()), n,
      reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1, nullptr, 1);
  if (info != 0) solver_failure("zgeev", info, provenance);
  return w;
}

std::vector<std::complex<double>> dgeev_values(Eigen::MatrixXd a,
                                               std::string_view provenance) {
  pin_blas_threads();
  const int n = static_cast<int>(a.rows());
  std::vector<double> wr(n), wi(n);
  const int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n,
                                 wr.data(), wi.data(), nullptr, 1, nullptr, 1);
  if (info != 0) solver_failure("dgeev", info, provenance);
  std::vector<std::complex<double>> w(n);
  for (int i = 0; i < n; ++i) w[i] = {wr[i], wi[i]};
  return w;
}

std::vector<std::complex<double>> zheev_values(Eigen::MatrixXcd a,
                                               std::string_view provenance) {
  pin_blas_threads();
  const int n = static_cast<int>(a.rows());
  std::vector<double> w(n);
  const int info =
      LAPACKE_zheev(LAPACK_COL_MAJOR, 'N', 'U', n,
                    reinterpret_cast<lapack_complex_double*>(a.data()), n, w.data());
  if (info != 0) solver_failure("zheev", info, provenance);
  std::vector<std::complex<double>> wc(n);
  for (int i = 0; i < n; ++i) wc[i] = {w[i], 0.0};
  return wc;
}

void require_finite(const Eigen::MatrixXcd& a) {
  if (!a.allFinite())
    throw ParameterError("eigenvalues: matrix has non-finite entries");
}

}  // namespace

Spectrum eigenvalues(const Eigen::MatrixXcd& a, std::string_view provenance) {
  if (a.rows() != a.cols()) throw ParameterError("eigenvalues: matrix not square");
  require_finite(a);
  Spectrum s;
  s.provenance = std::string(provenance);
  if ((a - a.adjoint()).isZero(0.0))
    s.eigenvalues = zheev_values(a, provenance);
  else
    s.eigenvalues = zgeev_values(a, provenance);
  sort_eigenvalues(s.eigenvalues);
  return s;
}

Spectrum eigenvalues_real(const Eigen::MatrixXd& a, std::string_view provenance) {
  if (a.rows() != a.cols()) throw ParameterError("eigenvalues: matrix not square");
  if (!a.allFinite())
    throw ParameterError("eigenvalues: matrix has non-finite entries");
  Spectrum s;
  s.provenance = std::string(provenance);
  s.eigenvalues = dgeev_values(a, provenance);
  sort_eigenvalues(s.eigenvalues);
  return s;
}

Spectrum effective_spectrum(const Eigen::MatrixXcd& h,
                            const ChannelCoupling& coupling, double mu,
                            SymmetryVariant variant,
                            std::string_view provenance) {
  const Eigen::Index m = h.rows();
  if (h.cols() != m) throw ParameterError("effective_spectrum: H not square");
  if (coupling.gamma.size() != m)
    throw ParameterError("effective_spectrum: coupling/H dimension mismatch");

  if (mu == 0.0) {
    // Hermitian limit of either variant.
    Eigen::MatrixXcd full(2 * m, 2 * m);
    const Eigen::MatrixXcd gamma =
        coupling.gamma.cast<std::complex<double>>().asDiagonal();
    full.topLeftCorner(m, m) = h;
    full.topRightCorner(m, m) = gamma;
    full.bottomLeftCorner(m, m) = gamma;
    full.bottomRightCorner(m, m) =
        variant == SymmetryVariant::PT ? h.conjugate() : h;
    Spectrum s;
    s.provenance = std::string(provenance);
    s.eigenvalues = zheev_values(std::move(full), provenance);
    sort_eigenvalues(s.eigenvalues);
    return s;
  }

  const bool h_real = h.imag().isZero(0.0);
  if (variant == SymmetryVariant::PT || h_real) {
    // Unitarily similar real form; valid for PTTprime too when H is real,
    // where both variants are the same matrix.
    Eigen::MatrixXd t(2 * m, 2 * m);
    t.topLeftCorner(m, m) = h.real();
    t.bottomRightCorner(m, m) = h.real();
    t.topRightCorner(m, m) = h.imag();
    t.topRightCorner(m, m).diagonal() += coupling.gamma;
    t.topRightCorner(m, m).diagonal().array() -= mu;
    t.bottomLeftCorner(m, m) = -h.imag();
    t.bottomLeftCorner(m, m).diagonal() += coupling.gamma;
    t.bottomLeftCorner(m, m).diagonal().array() += mu;
    Spectrum s;
    s.provenance = std::string(provenance);
    s.eigenvalues = dgeev_values(std::move(t), provenance);
    sort_eigenvalues(s.eigenvalues);
    return s;
  }

  return eigenvalues(build_effective(h, coupling, mu, variant).matrix, provenance);
}

ClassifiedSpectrum classify(const Spectrum& spectrum, double window_half_width,
                            double tolerance) {
  if (!(tolerance > 0.0)) throw ParameterError("classify: tolerance must be > 0");
  if (!(window_half_width > 0.0))
    throw ParameterError("classify: window_half_width must be > 0");

  ClassifiedSpectrum out;
  out.window_half_width = window_half_width;
  out.tolerance = tolerance;

  std::vector<double> reals;
  std::vector<std::complex<double>> upper, lower;
  double max_abs_re = 0.0;
  for (const auto& e : spectrum.eigenvalues) {
    max_abs_re = std::max(max_abs_re, std::abs(e.real()));
    if (std::abs(e.imag()) <= tolerance)
      reals.push_back(e.real());
    else if (e.imag() > 0.0)
      upper.push_back(e);
    else
      lower.push_back(e);
  }
  auto by_re = [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  };
  std::sort(upper.begin(), upper.end(), by_re);
  std::sort(lower.begin(), lower.end(), by_re);

  // Greedy nearest-conjugate pairing.  The primary window reflects the
  // classification tolerance; the fallback window absorbs forward-error
  // splitting of nearly degenerate levels, which scales as sqrt(eps).
  const double primary = 10.0 * tolerance;
  const double fallback = std::max(
      primary, std::sqrt(std::numeric_limits<double>::epsilon()) * (1.0 + max_abs_re));

  std::vector<bool> used(lower.size(), false);
  std::vector<std::complex<double>> pairs;
  std::vector<const std::complex<double>*> unmatched;
  for (int pass = 0; pass < 2; ++pass) {
    const double window = pass == 0 ? primary : fallback;
    unmatched.clear();
    for (const auto& p : upper) {
      if (p.real() != p.real()) throw ParameterError("classify: NaN eigenvalue");
      bool taken = false;
      // candidates in lower within `window` of Re(p)
      auto lo = std::lower_bound(
          lower.begin(), lower.end(), p.real() - window,
          [](const std::complex<double>& z, double x) { return z.real() < x; });
      int best = -1;
      double best_dist = std::numeric_limits<double>::infinity();
      for (auto it = lo; it != lower.end() && it->real() <= p.real() + window; ++it) {
        const auto j = static_cast<std::size_t>(it - lower.begin());
        if (used[j]) continue;
        if (std::abs(p.imag() + it->imag()) > window) continue;
        const double d = std::abs(p - std::conj(*it));
        if (d < best_dist) {
          best_dist = d;
          best = static_cast<int>(j);
        }
      }
      if (best >= 0) {
        used[best] = true;
        pairs.push_back(0.5 * (p + std::conj(lower[best])));
        taken = true;
      }
      if (!taken) unmatched.push_back(&p);
    }
    if (unmatched.empty()) break;
    if (pass == 1) break;
    // second pass re-scans only the leftovers
    std::vector<std::complex<double>> rest;
    rest.reserve(unmatched.size());
    for (auto* p : unmatched) rest.push_back(*p);
    upper = std::move(rest);
  }
  if (!unmatched.empty())
    throw IntegrityError(
        "classify: " + std::to_string(unmatched.size()) +
        " complex eigenvalue(s) without a conjugate partner (first at Re=" +
        std::to_string(unmatched.front()->real()) + ", Im=" +
        std::to_string(unmatched.front()->imag()) + ")" +
        (spectrum.provenance.empty() ? "" : " in " + spectrum.provenance));
  const auto leftover =
      std::count(used.begin(), used.end(), false);
  if (leftover > 0)
    throw IntegrityError("classify: " + std::to_string(leftover) +
                         " negative-Im eigenvalue(s) without a partner" +
                         (spectrum.provenance.empty()
                              ? ""
                              : " in " + spectrum.provenance));

  for (double e : reals)
    if (std::abs(e) <= window_half_width) out.real_levels.push_back(e);
  for (const auto& p : pairs)
    if (std::abs(p.real()) <= window_half_width) out.conjugate_pairs.push_back(p);
  std::sort(out.real_levels.begin(), out.real_levels.end());
  std::sort(out.conjugate_pairs.begin(), out.conjugate_pairs.end(), by_re);
  return out;
}

FractionEstimate complex_fraction(const std::vector<ClassifiedSpectrum>& instances) {
  if (instances.empty())
    throw ParameterError("complex_fraction: no instances");
  for (const auto& c : instances)
    if (c.window_half_width != instances.front().window_half_width ||
        c.tolerance != instances.front().tolerance)
      throw ParameterError("complex_fraction: mixed window settings");

  FractionEstimate est;
  est.n_realizations = static_cast<long>(instances.size());
  std::vector<double> complex_counts, total_counts;
  double sum_c = 0.0, sum_t = 0.0;
  for (const auto& c : instances) {
    const int total = c.levels_in_window();
    if (total == 0) {
      ++est.n_skipped;
      continue;
    }
    complex_counts.push_back(c.complex_members());
    total_counts.push_back(total);
    sum_c += c.complex_members();
    sum_t += total;
  }
  est.n_levels = static_cast<long>(sum_t);
  if (sum_t == 0.0) return est;  // all instances empty: f = 0 +/- 0
  est.f = sum_c / sum_t;

  const std::size_t n = total_counts.size();
  if (n > 1) {
    std::vector<double> loo(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = sum_t - total_counts[i];
      loo[i] = t > 0.0 ? (sum_c - complex_counts[i]) / t : 0.0;
      mean += loo[i];
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : loo) ss += (v - mean) * (v - mean);
    est.stderr_ = std::sqrt(ss * (static_cast<double>(n) - 1.0) /
                            static_cast<double>(n));
  }
  return est;
}

}  // namespace ptbreak
