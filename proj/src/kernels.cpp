#include "pmc/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pmc::kernels {

namespace {
Backend g_default = Backend::Auto;

inline Backend resolve(Backend b) {
  if (b == Backend::Auto) b = g_default;
  if (b == Backend::Auto) b = openmp_available() ? Backend::OpenMP : Backend::Serial;
  return b;
}

inline void gegenbauer_column(double lam, double xj, std::size_t m,
                              std::size_t kmax, double* out, std::size_t j) {
  // three-term recurrence down each column
  double c0 = 1.0;
  out[j] = c0;
  if (kmax == 0) return;
  double c1 = 2.0 * lam * xj;
  out[m + j] = c1;
  for (std::size_t k = 1; k < kmax; ++k) {
    double c2 = (2.0 * (k + lam) * xj * c1 - (k + 2.0 * lam - 1.0) * c0) /
                static_cast<double>(k + 1);
    out[(k + 1) * m + j] = c2;
    c0 = c1;
    c1 = c2;
  }
}
}  // namespace

bool openmp_available() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Backend default_backend() { return g_default; }
void set_default_backend(Backend b) { g_default = b; }

namespace serial {

void gegenbauer_matrix(double lam, const double* x, std::size_t m,
                       std::size_t kmax, double* out) {
  for (std::size_t j = 0; j < m; ++j) gegenbauer_column(lam, x[j], m, kmax, out, j);
}

void synth_apply(const double* yt, std::size_t m, std::size_t k1,
                 const double* a, double* values) {
  for (std::size_t j = 0; j < m; ++j) {
    const double* row = yt + j * k1;
    double acc = 0;
    for (std::size_t k = 0; k < k1; ++k) acc += row[k] * a[k];
    values[j] = acc;
  }
}

void analyze_apply(const double* y, std::size_t m, std::size_t k1,
                   const double* wf, double* coeffs) {
  for (std::size_t k = 0; k < k1; ++k) {
    const double* row = y + k * m;
    double acc = 0;
    for (std::size_t j = 0; j < m; ++j) acc += row[j] * wf[j];
    coeffs[k] = acc;
  }
}

void pow_nonneg(const double* u, std::size_t m, double p, double* out) {
  for (std::size_t j = 0; j < m; ++j)
    out[j] = std::pow(u[j] > 0 ? u[j] : 0.0, p);
}

}  // namespace serial

namespace omp {

void gegenbauer_matrix(double lam, const double* x, std::size_t m,
                       std::size_t kmax, double* out) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (long long j = 0; j < static_cast<long long>(m); ++j)
    gegenbauer_column(lam, x[j], m, kmax, out, static_cast<std::size_t>(j));
#else
  serial::gegenbauer_matrix(lam, x, m, kmax, out);
#endif
}

void synth_apply(const double* yt, std::size_t m, std::size_t k1,
                 const double* a, double* values) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (long long j = 0; j < static_cast<long long>(m); ++j) {
    const double* row = yt + static_cast<std::size_t>(j) * k1;
    double acc = 0;
    for (std::size_t k = 0; k < k1; ++k) acc += row[k] * a[k];
    values[j] = acc;
  }
#else
  serial::synth_apply(yt, m, k1, a, values);
#endif
}

void analyze_apply(const double* y, std::size_t m, std::size_t k1,
                   const double* wf, double* coeffs) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < static_cast<long long>(k1); ++k) {
    const double* row = y + static_cast<std::size_t>(k) * m;
    double acc = 0;
    for (std::size_t j = 0; j < m; ++j) acc += row[j] * wf[j];
    coeffs[k] = acc;
  }
#else
  serial::analyze_apply(y, m, k1, wf, coeffs);
#endif
}

void pow_nonneg(const double* u, std::size_t m, double p, double* out) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (long long j = 0; j < static_cast<long long>(m); ++j)
    out[j] = std::pow(u[j] > 0 ? u[j] : 0.0, p);
#else
  serial::pow_nonneg(u, m, p, out);
#endif
}

}  // namespace omp

void gegenbauer_matrix(double lam, const double* x, std::size_t m,
                       std::size_t kmax, double* out, Backend b) {
  if (resolve(b) == Backend::OpenMP)
    omp::gegenbauer_matrix(lam, x, m, kmax, out);
  else
    serial::gegenbauer_matrix(lam, x, m, kmax, out);
}

void synth_apply(const double* yt, std::size_t m, std::size_t k1,
                 const double* a, double* values, Backend b) {
  if (resolve(b) == Backend::OpenMP)
    omp::synth_apply(yt, m, k1, a, values);
  else
    serial::synth_apply(yt, m, k1, a, values);
}

void analyze_apply(const double* y, std::size_t m, std::size_t k1,
                   const double* wf, double* coeffs, Backend b) {
  if (resolve(b) == Backend::OpenMP)
    omp::analyze_apply(y, m, k1, wf, coeffs);
  else
    serial::analyze_apply(y, m, k1, wf, coeffs);
}

void pow_nonneg(const double* u, std::size_t m, double p, double* out,
                Backend b) {
  if (resolve(b) == Backend::OpenMP)
    omp::pow_nonneg(u, m, p, out);
  else
    serial::pow_nonneg(u, m, p, out);
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace pmc::kernels
