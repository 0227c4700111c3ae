#pragma once

#include <cstddef>

// Data-parallel inner kernels of the spectral machinery. Every kernel has a
// serial reference implementation and an OpenMP one; both fill each output
// element with the same sequential inner loop, so results are bitwise
// identical and independent of the thread count.

namespace pmc::kernels {

enum class Backend { Auto, Serial, OpenMP };

bool openmp_available();
int max_threads();
Backend default_backend();
void set_default_backend(Backend b);

namespace serial {

// Gegenbauer C_k^(lam)(x_j) for k = 0..kmax at all m nodes, row-major
// (kmax+1) x m.
void gegenbauer_matrix(double lam, const double* x, std::size_t m,
                       std::size_t kmax, double* out);

// values[j] = sum_k yt[j*k1 + k] * a[k]
void synth_apply(const double* yt, std::size_t m, std::size_t k1,
                 const double* a, double* values);

// coeffs[k] = sum_j y[k*m + j] * wf[j]
void analyze_apply(const double* y, std::size_t m, std::size_t k1,
                   const double* wf, double* coeffs);

// out[j] = max(u[j], 0)^p
void pow_nonneg(const double* u, std::size_t m, double p, double* out);

}  // namespace serial

namespace omp {

void gegenbauer_matrix(double lam, const double* x, std::size_t m,
                       std::size_t kmax, double* out);
void synth_apply(const double* yt, std::size_t m, std::size_t k1,
                 const double* a, double* values);
void analyze_apply(const double* y, std::size_t m, std::size_t k1,
                   const double* wf, double* coeffs);
void pow_nonneg(const double* u, std::size_t m, double p, double* out);

}  // namespace omp

// Dispatching wrappers.
void gegenbauer_matrix(double lam, const double* x, std::size_t m,
                       std::size_t kmax, double* out,
                       Backend b = Backend::Auto);
void synth_apply(const double* yt, std::size_t m, std::size_t k1,
                 const double* a, double* values, Backend b = Backend::Auto);
void analyze_apply(const double* y, std::size_t m, std::size_t k1,
                   const double* wf, double* coeffs, Backend b = Backend::Auto);
void pow_nonneg(const double* u, std::size_t m, double p, double* out,
                Backend b = Backend::Auto);

// Serial on purpose: quadrature sums must not depend on reduction order.
double dot(const double* a, const double* b, std::size_t n);

}  // namespace pmc::kernels
