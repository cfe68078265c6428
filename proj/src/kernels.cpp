#include "anw/kernels.hpp"

#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace anw::kernels {

namespace {

int g_default_threads = 0;

void require_square(const RealMatrix& s, const char* what) {
  if (!s.square()) throw ValidationError(std::string(what) + ": transformation matrix must be square");
}

}  // namespace

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  if (g_default_threads == 0) g_default_threads = omp_get_max_threads();
  omp_set_num_threads(n > 0 ? n : g_default_threads);
#else
  (void)n;
  (void)g_default_threads;
#endif
}

ComplexMatrix congruence_diag(const RealMatrix& s, std::span<const cplx> d) {
  require_square(s, "congruence_diag");
  const std::size_t n = s.rows();
  if (d.size() != n) throw ValidationError("congruence_diag: diagonal length does not match matrix");

  std::vector<double> dre(n), dim(n);
  for (std::size_t j = 0; j < n; ++j) {
    dre[j] = d[j].real();
    dim[j] = d[j].imag();
  }

  ComplexMatrix out(n, n);
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    std::vector<double> wre(n), wim(n);
#pragma omp for schedule(dynamic, 4)
    for (std::ptrdiff_t ri = 0; ri < rows; ++ri) {
      const auto i = static_cast<std::size_t>(ri);
      const double* si = s.row(i).data();
      for (std::size_t j = 0; j < n; ++j) {
        wre[j] = si[j] * dre[j];
        wim[j] = si[j] * dim[j];
      }
      for (std::size_t k = i; k < n; ++k) {
        const double* sk = s.row(k).data();
        double re = 0.0, im = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          re += wre[j] * sk[j];
          im += wim[j] * sk[j];
        }
        out(i, k) = {re, im};
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) out(i, k) = out(k, i);
  return out;
}

ComplexMatrix congruence_transpose(const RealMatrix& s, const ComplexMatrix& a) {
  require_square(s, "congruence_transpose");
  require_same_shape(s.rows(), s.cols(), a.rows(), a.cols(), "congruence_transpose");
  const std::size_t n = s.rows();
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(n);

  // X = A * S, kept as separate real and imaginary planes.
  RealMatrix xre(n, n), xim(n, n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ri = 0; ri < rows; ++ri) {
    const auto i = static_cast<std::size_t>(ri);
    double* pre = xre.row(i).data();
    double* pim = xim.row(i).data();
    for (std::size_t m = 0; m < n; ++m) {
      const double are = a(i, m).real();
      const double aim = a(i, m).imag();
      const double* sm = s.row(m).data();
      for (std::size_t q = 0; q < n; ++q) {
        pre[q] += are * sm[q];
        pim[q] += aim * sm[q];
      }
    }
  }

  // Q = S^T * X, upper triangle.
  ComplexMatrix out(n, n);
#pragma omp parallel
  {
    std::vector<double> qre(n), qim(n);
#pragma omp for schedule(dynamic, 4)
    for (std::ptrdiff_t rk = 0; rk < rows; ++rk) {
      const auto k = static_cast<std::size_t>(rk);
      std::fill(qre.begin() + static_cast<std::ptrdiff_t>(k), qre.end(), 0.0);
      std::fill(qim.begin() + static_cast<std::ptrdiff_t>(k), qim.end(), 0.0);
      for (std::size_t r = 0; r < n; ++r) {
        const double w = s(r, k);
        const double* pre = xre.row(r).data();
        const double* pim = xim.row(r).data();
        for (std::size_t q = k; q < n; ++q) {
          qre[q] += w * pre[q];
          qim[q] += w * pim[q];
        }
      }
      for (std::size_t q = k; q < n; ++q) out(k, q) = {qre[q], qim[q]};
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) out(i, k) = out(k, i);
  return out;
}

ComplexMatrix phase_matching(std::span<const double> lambda, double z) {
  const std::size_t n = lambda.size();
  ComplexMatrix t(n, n);
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ri = 0; ri < rows; ++ri) {
    const auto i = static_cast<std::size_t>(ri);
    for (std::size_t j = 0; j < n; ++j) {
      const double x = 0.5 * (lambda[i] + lambda[j]) * z;
      t(i, j) = std::polar(sinc(x), x);
    }
  }
  return t;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("matmul: inner dimensions differ");
  ComplexMatrix c(a.rows(), b.cols());
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static) if (a.rows() > 64)
  for (std::ptrdiff_t ri = 0; ri < rows; ++ri) {
    const auto i = static_cast<std::size_t>(ri);
    cplx* ci = c.row(i).data();
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      const cplx* bk = b.row(k).data();
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("matmul: inner dimensions differ");
  RealMatrix c(a.rows(), b.cols());
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static) if (a.rows() > 64)
  for (std::ptrdiff_t ri = 0; ri < rows; ++ri) {
    const auto i = static_cast<std::size_t>(ri);
    double* ci = c.row(i).data();
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      const double* bk = b.row(k).data();
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

namespace serial {

ComplexMatrix congruence_diag(const RealMatrix& s, std::span<const cplx> d) {
  require_square(s, "congruence_diag");
  const std::size_t n = s.rows();
  if (d.size() != n) throw ValidationError("congruence_diag: diagonal length does not match matrix");
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      cplx acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += d[j] * s(i, j) * s(k, j);
      out(i, k) = acc;
    }
  return out;
}

ComplexMatrix congruence_transpose(const RealMatrix& s, const ComplexMatrix& a) {
  require_square(s, "congruence_transpose");
  require_same_shape(s.rows(), s.cols(), a.rows(), a.cols(), "congruence_transpose");
  const std::size_t n = s.rows();
  ComplexMatrix x(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t q = 0; q < n; ++q) {
      cplx acc = 0.0;
      for (std::size_t m = 0; m < n; ++m) acc += a(i, m) * s(m, q);
      x(i, q) = acc;
    }
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t q = 0; q < n; ++q) {
      cplx acc = 0.0;
      for (std::size_t r = 0; r < n; ++r) acc += s(r, k) * x(r, q);
      out(k, q) = acc;
    }
  return out;
}

ComplexMatrix phase_matching(std::span<const double> lambda, double z) {
  const std::size_t n = lambda.size();
  ComplexMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double x = 0.5 * (lambda[i] + lambda[j]) * z;
      t(i, j) = std::exp(cplx(0.0, x)) * sinc(x);
    }
  return t;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw ValidationError("matmul: inner dimensions differ");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

}  // namespace serial

}  // namespace anw::kernels
