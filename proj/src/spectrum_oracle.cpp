#include "relosc/spectrum_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "relosc/error.hpp"

namespace relosc {

namespace {

class DenseSymmetric {
 public:
  explicit DenseSymmetric(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  [[nodiscard]] std::size_t size() const { return n_; }

  [[nodiscard]] double off_diagonal_mass() const {
    double acc = 0.0;
    for (std::size_t p = 0; p < n_; ++p)
      for (std::size_t q = p + 1; q < n_; ++q) acc += 2.0 * (*this)(p, q) * (*this)(p, q);
    return std::sqrt(acc);
  }

  // Annihilates entry (p,q) with a plane rotation applied from both sides.
  void rotate(std::size_t p, std::size_t q) {
    const double apq = (*this)(p, q);
    if (apq == 0.0) return;
    const double theta = ((*this)(q, q) - (*this)(p, p)) / (2.0 * apq);
    double t;
    if (std::abs(theta) > 1e150) {
      t = 0.5 / theta;
    } else {
      t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    (*this)(p, p) -= t * apq;
    (*this)(q, q) += t * apq;
    (*this)(p, q) = (*this)(q, p) = 0.0;
    for (std::size_t r = 0; r < n_; ++r) {
      if (r == p || r == q) continue;
      const double arp = (*this)(r, p);
      const double arq = (*this)(r, q);
      (*this)(r, p) = (*this)(p, r) = c * arp - s * arq;
      (*this)(r, q) = (*this)(q, r) = s * arp + c * arq;
    }
  }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

}  // namespace

double frobenius_norm(const JacobiMatrix<double>& H) {
  double acc = 0.0;
  for (double b : H.diagonal()) acc += b * b;
  for (double a : H.off_diagonal()) acc += 2.0 * a * a;
  return std::sqrt(acc);
}

SpectrumReport eigenvalues_dense(const JacobiMatrix<double>& H, OracleOptions opts) {
  const auto n = static_cast<std::size_t>(H.dimension());
  DenseSymmetric A(n);
  const auto b = H.diagonal();
  const auto a = H.off_diagonal();
  for (std::size_t i = 0; i < n; ++i) A(i, i) = b[i];
  for (std::size_t i = 0; i + 1 < n; ++i) A(i, i + 1) = A(i + 1, i) = a[i];

  const double target = opts.rel_tolerance * frobenius_norm(H);
  SpectrumReport report;
  double off = A.off_diagonal_mass();
  while (off > target) {
    if (report.sweeps == opts.max_sweeps) {
      throw Error(ErrorCode::NoConvergence, "off-diagonal mass " + format_double(off) + " after " +
                                                std::to_string(report.sweeps) + " sweeps");
    }
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) A.rotate(p, q);
    ++report.sweeps;
    off = A.off_diagonal_mass();
  }
  report.max_offdiag_residual = off;
  report.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) report.eigenvalues[i] = A(i, i);
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end());
  return report;
}

SpectrumReport eigenvalues_dense(const JacobiMatrix<Rational>& H, OracleOptions opts) {
  return eigenvalues_dense(to_float(H), opts);
}

int count_below_oracle(const SpectrumReport& s, double lambda, bool strict, double margin) {
  int count = 0;
  for (double e : s.eigenvalues) {
    if (std::abs(e - lambda) <= margin) {
      throw Error(ErrorCode::MarginViolation,
                  "eigenvalue " + format_double(e) + " within " + format_double(margin) + " of " + format_double(lambda));
    }
    if (strict ? e < lambda : e <= lambda) ++count;
  }
  return count;
}

int count_at_eigenvalue_oracle(const SpectrumReport& s, double lambda, double margin) {
  int below = 0;
  int hits = 0;
  for (double e : s.eigenvalues) {
    if (std::abs(e - lambda) <= margin) {
      ++hits;
    } else if (e < lambda) {
      ++below;
    }
  }
  if (hits != 1) {
    throw Error(ErrorCode::MarginViolation,
                std::to_string(hits) + " eigenvalues within " + format_double(margin) + " of " + format_double(lambda));
  }
  return below + 1;
}

std::vector<double> free_matrix_spectrum(int N) {
  std::vector<double> out;
  for (int k = 1; k < N; ++k) out.push_back(-2.0 * std::cos(k * std::numbers::pi / N));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace relosc
