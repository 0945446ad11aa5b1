#ifndef NEARLAP_SPECTRA_HPP
#define NEARLAP_SPECTRA_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "nearlap/errors.hpp"
#include "nearlap/matrix.hpp"
#include "nearlap/projection.hpp"
#include "nearlap/rng.hpp"
#include "nearlap/synthgen.hpp"

namespace nearlap {

inline constexpr std::size_t kMaxEigenNodes = 2000;

struct SpectralSummary {
  std::vector<std::complex<double>> eigenvalues;  // ascending real part, then imaginary part
  double lambda2_real = 0;                        // real part of eigenvalues[1]
};

namespace detail {

inline Eigen::MatrixXd to_eigen(const DenseMatrix& M) {
  const auto n = static_cast<Eigen::Index>(M.n());
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  return Eigen::Map<const RowMajor>(M.entries().data(), n, n);
}

inline void check_eigen_input(const DenseMatrix& M) {
  if (M.n() < 2) throw ValidationError("eigenvalue diagnostics need n >= 2");
  if (M.n() > kMaxEigenNodes) {
    throw ValidationError("dense eigensolver is limited to n <= " + std::to_string(kMaxEigenNodes));
  }
  M.require_finite();
}

inline bool spectral_less(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace detail

// All eigenvalues of a real nonsymmetric matrix (Hessenberg reduction and
// shifted QR). Conjugate pairs come out as exact mirror images.
inline SpectralSummary eigenvalues(const DenseMatrix& M) {
  detail::check_eigen_input(M);
  Eigen::EigenSolver<Eigen::MatrixXd> solver;
  solver.compute(detail::to_eigen(M), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigensolver did not converge for n = " + std::to_string(M.n()));
  }
  SpectralSummary out;
  const auto& ev = solver.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), detail::spectral_less);
  out.lambda2_real = out.eigenvalues[1].real();
  return out;
}

struct EigenPair {
  std::complex<double> value;
  std::vector<std::complex<double>> vector;  // unit 2-norm
};

// Eigenpairs in solver order, for residual checks.
inline std::vector<EigenPair> eigenpairs(const DenseMatrix& M) {
  detail::check_eigen_input(M);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(detail::to_eigen(M), /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
  const auto vals = solver.eigenvalues();
  const Eigen::MatrixXcd vecs = solver.eigenvectors();
  std::vector<EigenPair> out(static_cast<std::size_t>(vals.size()));
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    auto& p = out[static_cast<std::size_t>(k)];
    p.value = vals(k);
    const Eigen::VectorXcd v = vecs.col(k).normalized();
    p.vector.assign(v.data(), v.data() + v.size());
  }
  return out;
}

struct AveVarReport {
  double s = 0;
  std::size_t trials = 0;
  double ave = 0;
  double var = 0;  // population variance (divides by trials)
};

struct Lambda2Experiment {
  std::size_t n = 300;
  std::size_t k = 10;
  double beta = 0.3;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// |Re lambda2(L*) - Re lambda2(L)| for each trial, L the nearest Laplacian to
// the perturbed observation. Trial t regenerates the whole instance from
// mix_seed(seed, t), so results do not depend on the thread count.
inline std::vector<double> lambda2_gaps(double s, const Lambda2Experiment& cfg) {
  if (cfg.trials < 1) throw ValidationError("need at least one trial");
  SynthParams{cfg.n, cfg.k, cfg.beta, s, cfg.seed}.validate();

  std::vector<double> gaps(cfg.trials, 0.0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t t = next.fetch_add(1);
      if (t >= cfg.trials) return;
      try {
        const auto inst = generate_instance({cfg.n, cfg.k, cfg.beta, s, mix_seed(cfg.seed, t)});
        const double star = eigenvalues(inst.L_star).lambda2_real;
        const double fit = eigenvalues(nearest_laplacian(inst.A, inst.E).L).lambda2_real;
        gaps[t] = std::abs(star - fit);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(cfg.trials);
      }
    }
  };
  const unsigned nthreads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.trials)));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < nthreads; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return gaps;
}

inline AveVarReport summarize_gaps(double s, const std::vector<double>& gaps) {
  AveVarReport r{s, gaps.size(), 0.0, 0.0};
  if (gaps.empty()) return r;
  const double T = static_cast<double>(gaps.size());
  for (double g : gaps) r.ave += g;
  r.ave /= T;
  for (double g : gaps) r.var += (g - r.ave) * (g - r.ave);
  r.var /= T;
  return r;
}

inline AveVarReport ave_var(double s, const Lambda2Experiment& cfg) {
  return summarize_gaps(s, lambda2_gaps(s, cfg));
}

}  // namespace nearlap

#endif  // NEARLAP_SPECTRA_HPP
