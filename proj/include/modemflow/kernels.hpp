#pragma once

#include <cstddef>

// Dense double-precision primitives behind the simplex tableau updates.
// A scalar reference implementation always exists; an AVX2 variant is
// selected at runtime when the CPU supports it. axpy/scale avoid FMA so
// both backends produce bit-identical results; argmin returns the first
// index of the minimum under either backend.

namespace modemflow::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
void set_backend(Backend b);  // throws std::invalid_argument if unsupported
bool avx2_supported();
const char* backend_name(Backend b);

// y[i] += a * x[i] for i in [0, n)
void axpy(double* y, const double* x, double a, std::size_t n);

// x[i] *= a for i in [0, n)
void scale(double* x, double a, std::size_t n);

// index of the first occurrence of the minimum element; n must be > 0
std::size_t argmin(const double* x, std::size_t n);

namespace detail {
void axpy_scalar(double* y, const double* x, double a, std::size_t n);
void scale_scalar(double* x, double a, std::size_t n);
std::size_t argmin_scalar(const double* x, std::size_t n);
#if defined(__x86_64__) || defined(_M_X64)
void axpy_avx2(double* y, const double* x, double a, std::size_t n);
void scale_avx2(double* x, double a, std::size_t n);
std::size_t argmin_avx2(const double* x, std::size_t n);
#endif
}  // namespace detail

}  // namespace modemflow::kernels
