#include "modemflow/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace modemflow::kernels {

namespace detail {

void axpy_scalar(double* y, const double* x, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y[i] += a * x[i];
    }
}

void scale_scalar(double* x, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        x[i] *= a;
    }
}

std::size_t argmin_scalar(const double* x, std::size_t n) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (x[i] < x[best]) {
            best = i;
        }
    }
    return best;
}

}  // namespace detail

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

Backend detect_backend() {
    return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
    static std::atomic<Backend> slot{detect_backend()};
    return slot;
}

}  // namespace

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_supported()) {
        throw std::invalid_argument("avx2 backend requested but not supported on this CPU");
    }
    backend_slot().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

void axpy(double* y, const double* x, double a, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::avx2) {
        detail::axpy_avx2(y, x, a, n);
        return;
    }
#endif
    detail::axpy_scalar(y, x, a, n);
}

void scale(double* x, double a, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::avx2) {
        detail::scale_avx2(x, a, n);
        return;
    }
#endif
    detail::scale_scalar(x, a, n);
}

std::size_t argmin(const double* x, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::avx2) {
        return detail::argmin_avx2(x, n);
    }
#endif
    return detail::argmin_scalar(x, n);
}

}  // namespace modemflow::kernels
