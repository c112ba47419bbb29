#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "modemflow/kernels.hpp"
#include "modemflow/rng.hpp"

namespace k = modemflow::kernels;

namespace {

std::vector<double> random_vec(modemflow::rng::Xoshiro256pp& rng, std::size_t n,
                               double scale = 1.0) {
    std::vector<double> v(n);
    for (double& x : v) {
        x = (rng.uniform01() - 0.5) * 2.0 * scale;
    }
    return v;
}

struct BackendGuard {
    k::Backend saved = k::active_backend();
    ~BackendGuard() { k::set_backend(saved); }
};

}  // namespace

TEST_CASE("scalar kernels match a plain loop") {
    BackendGuard guard;
    k::set_backend(k::Backend::scalar);
    modemflow::rng::Xoshiro256pp rng(7);
    auto y = random_vec(rng, 37);
    const auto x = random_vec(rng, 37);
    auto expected = y;
    for (std::size_t i = 0; i < y.size(); ++i) {
        expected[i] += 1.75 * x[i];
    }
    k::axpy(y.data(), x.data(), 1.75, y.size());
    CHECK(y == expected);

    auto z = random_vec(rng, 11);
    auto zs = z;
    for (double& v : zs) {
        v *= -0.5;
    }
    k::scale(z.data(), -0.5, z.size());
    CHECK(z == zs);
}

TEST_CASE("argmin returns the first minimum") {
    BackendGuard guard;
    for (const auto backend : {k::Backend::scalar, k::Backend::avx2}) {
        if (backend == k::Backend::avx2 && !k::avx2_supported()) {
            continue;
        }
        k::set_backend(backend);
        const std::vector<double> ties = {3, 1, 2, 1, 0.5, 9, 0.5, 0.5, 4, 2, 1, 0.5, 7};
        CHECK(k::argmin(ties.data(), ties.size()) == 4);
        const std::vector<double> single = {2.5};
        CHECK(k::argmin(single.data(), 1) == 0);
        const std::vector<double> descending = {5, 4, 3, 2, 1, 0, -1, -2, -3};
        CHECK(k::argmin(descending.data(), descending.size()) == descending.size() - 1);
    }
}

TEST_CASE("avx2 variants are bit-identical to scalar" *
          doctest::skip(!k::avx2_supported())) {
    BackendGuard guard;
    modemflow::rng::Xoshiro256pp rng(99);
    for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 15u, 64u, 257u, 1000u}) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto x = random_vec(rng, n, 1e6);
            const auto y0 = random_vec(rng, n, 1e6);
            const double a = (rng.uniform01() - 0.5) * 10;

            auto y_scalar = y0;
            k::set_backend(k::Backend::scalar);
            k::axpy(y_scalar.data(), x.data(), a, n);
            auto y_avx = y0;
            k::set_backend(k::Backend::avx2);
            k::axpy(y_avx.data(), x.data(), a, n);
            CHECK(std::memcmp(y_scalar.data(), y_avx.data(), n * sizeof(double)) == 0);

            auto s_scalar = x;
            k::set_backend(k::Backend::scalar);
            k::scale(s_scalar.data(), a, n);
            auto s_avx = x;
            k::set_backend(k::Backend::avx2);
            k::scale(s_avx.data(), a, n);
            CHECK(std::memcmp(s_scalar.data(), s_avx.data(), n * sizeof(double)) == 0);

            k::set_backend(k::Backend::scalar);
            const auto arg_scalar = k::argmin(x.data(), n);
            k::set_backend(k::Backend::avx2);
            const auto arg_avx = k::argmin(x.data(), n);
            CHECK(arg_scalar == arg_avx);
        }
    }
}

TEST_CASE("argmin equivalence under heavy ties" * doctest::skip(!k::avx2_supported())) {
    BackendGuard guard;
    modemflow::rng::Xoshiro256pp rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.next() % 40;
        std::vector<double> v(n);
        for (double& x : v) {
            x = static_cast<double>(rng.next() % 4);  // many duplicates
        }
        k::set_backend(k::Backend::scalar);
        const auto a = k::argmin(v.data(), n);
        k::set_backend(k::Backend::avx2);
        const auto b = k::argmin(v.data(), n);
        CHECK(a == b);
    }
}

TEST_CASE("backend selection") {
    BackendGuard guard;
    k::set_backend(k::Backend::scalar);
    CHECK(k::active_backend() == k::Backend::scalar);
    if (!k::avx2_supported()) {
        CHECK_THROWS_AS(k::set_backend(k::Backend::avx2), std::invalid_argument);
    }
    CHECK(std::string(k::backend_name(k::Backend::scalar)) == "scalar");
}
