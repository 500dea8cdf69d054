#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "convboot/error.hpp"
#include "convboot/spectral.hpp"
#include "oracles.hpp"

using namespace convboot;

namespace {

GriddedPmf on_unit_grid(std::vector<double> mass) {
    const SupportGrid g(0.0, 1.0, mass.size());
    return {g, std::move(mass)};
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

} // namespace

TEST_CASE("forward matches the naive DFT", "[spectral]") {
    std::mt19937_64 rng(3);
    for (std::size_t n : {2u, 3u, 8u, 17u, 64u, 100u}) {
        const auto p = oracle::random_pmf(rng, n, n);
        const auto spec = forward(on_unit_grid(p));
        const auto ref = oracle::naive_dft(p);
        for (std::size_t k = 0; k < n; ++k) {
            REQUIRE(std::abs(spec[k] - ref[k]) <= 1e-12);
        }
    }
}

TEST_CASE("forward of unit mass at zero is all ones", "[spectral]") {
    const auto g = SupportGrid(0.0, 0.5, 16);
    const auto spec = forward(GriddedPmf::delta(g));
    for (std::size_t k = 0; k < spec.size(); ++k) {
        CHECK(spec[k] == Complex(1.0, 0.0));
    }
    const auto id = SpectralSeq::identity(g);
    CHECK(std::abs(id[5] - Complex(1.0, 0.0)) == 0.0);
}

TEST_CASE("inverse undoes forward", "[spectral][property]") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng() % 500;
        const auto p = oracle::random_pmf(rng, n, 1 + rng() % n);
        const auto back = inverse(forward(on_unit_grid(p)));
        REQUIRE(max_abs_diff(back.mass(), p) <= 1e-13);
    }
}

TEST_CASE("inverse rejects spectra that are not mass vectors", "[spectral]") {
    const SupportGrid g(0.0, 1.0, 4);
    // spectrum of (0.5, -0.5, 0, 0) has a large negative residue
    const SpectralSeq bad(g, {Complex(0.0), Complex(0.5, 0.5), Complex(1.0), Complex(0.5, -0.5)});
    CHECK_THROWS_AS(inverse(bad), NumericalError);
    // purely imaginary constant spectrum
    const SpectralSeq imag(g, std::vector<Complex>(4, Complex(0.0, 1.0)));
    CHECK_THROWS_AS(inverse(imag), NumericalError);
}

TEST_CASE("products of spectra are direct convolutions", "[spectral][property]") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t sa = 1 + rng() % 40;
        const std::size_t sb = 1 + rng() % 40;
        const std::size_t n = sa + sb - 1 + rng() % 10;
        auto a = oracle::random_pmf(rng, n, sa);
        auto b = oracle::random_pmf(rng, n, sb);
        const auto got = inverse(forward(on_unit_grid(a)) * forward(on_unit_grid(b)));
        auto ref = oracle::direct_convolve(std::vector<double>(a.begin(), a.begin() + sa),
                                           std::vector<double>(b.begin(), b.begin() + sb));
        ref.resize(n, 0.0);
        REQUIRE(max_abs_diff(got.mass(), ref) <= 1e-13);
    }
}

TEST_CASE("pow and self_convolve agree with repeated direct convolution", "[spectral][property]") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t support = 2 + rng() % 6;
        const unsigned m = 1 + static_cast<unsigned>(rng() % 12);
        const std::size_t n = m * (support - 1) + 1 + rng() % 5;
        const auto p = oracle::random_pmf(rng, n, support);
        const auto pmf = on_unit_grid(p);
        const auto ref =
            oracle::direct_power(std::vector<double>(p.begin(), p.begin() + support), m, n);
        const auto via_self = self_convolve(pmf, m);
        const auto via_pow = inverse(pow(forward(pmf), m));
        REQUIRE(oracle::total_variation(via_self.mass(), ref) <= 1e-12);
        REQUIRE(max_abs_diff(via_pow.mass(), ref) <= 1e-13);
    }
}

TEST_CASE("pow edge exponents", "[spectral]") {
    const auto pmf = on_unit_grid({0.25, 0.75, 0.0, 0.0});
    const auto s = forward(pmf);
    const auto zero = inverse(pow(s, 0));
    CHECK(zero[0] == Catch::Approx(1.0));
    CHECK(zero.total() == Catch::Approx(1.0));
    const auto one = inverse(pow(s, 1));
    CHECK(max_abs_diff(one.mass(), pmf.mass()) <= 1e-15);
}

TEST_CASE("self_convolve guards against wrap-around", "[spectral]") {
    const auto pmf = on_unit_grid({0.5, 0.0, 0.5, 0.0, 0.0});
    CHECK_NOTHROW(self_convolve(pmf, 2));
    CHECK_THROWS_AS(self_convolve(pmf, 3), PreconditionError);
    CHECK_THROWS_AS(self_convolve(pmf, 0), PreconditionError);
    const auto squared = self_convolve(pmf, 2);
    CHECK(squared[0] == Catch::Approx(0.25));
    CHECK(squared[2] == Catch::Approx(0.5));
    CHECK(squared[4] == Catch::Approx(0.25));
}

TEST_CASE("convolve of distinct pmfs", "[spectral]") {
    const std::vector<GriddedPmf> parts{on_unit_grid({0.5, 0.5, 0.0, 0.0, 0.0}),
                                        on_unit_grid({0.0, 0.0, 1.0, 0.0, 0.0}),
                                        on_unit_grid({0.0, 0.25, 0.75, 0.0, 0.0})};
    // highest indices 1 + 2 + 2 = 5 > 4
    CHECK_THROWS_AS(convolve(parts), PreconditionError);
    const std::vector<GriddedPmf> ok{parts[0], parts[1]};
    const auto r = convolve(ok);
    CHECK(r[2] == Catch::Approx(0.5));
    CHECK(r[3] == Catch::Approx(0.5));
}

TEST_CASE("spectra on different grids cannot be combined", "[spectral]") {
    const auto a = forward(GriddedPmf::delta(SupportGrid(0.0, 1.0, 8)));
    const auto b = forward(GriddedPmf::delta(SupportGrid(0.0, 0.5, 8)));
    CHECK_THROWS_AS(a * b, PreconditionError);
    CHECK_THROWS_AS(a + b, PreconditionError);
}

TEST_CASE("division rejects tiny denominators", "[spectral]") {
    const SupportGrid g(0.0, 1.0, 2);
    // pmf (0.5, 0.5) has spectrum (1, 0)
    const auto den = forward(GriddedPmf(g, {0.5, 0.5}));
    const auto num = SpectralSeq::identity(g);
    CHECK_THROWS_AS(num / den, NumericalError);
    const auto fine = forward(GriddedPmf(g, {0.75, 0.25}));
    const auto q = num / fine;
    CHECK(std::abs(q[0] - Complex(1.0)) <= 1e-15);
    CHECK(std::abs(q[1] - Complex(2.0)) <= 1e-15);
}

TEST_CASE("linearity of the transform", "[spectral][property]") {
    std::mt19937_64 rng(21);
    const SupportGrid g(0.0, 1.0, 64);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = oracle::random_pmf(rng, 64, 20);
        const auto b = oracle::random_pmf(rng, 64, 30);
        std::vector<double> mix(64);
        for (std::size_t i = 0; i < 64; ++i) {
            mix[i] = 0.3 * a[i] + 0.7 * b[i];
        }
        const auto lhs = forward(GriddedPmf(g, mix));
        const auto rhs = 0.3 * forward(GriddedPmf(g, a)) + forward(GriddedPmf(g, b)) * 0.7;
        for (std::size_t k = 0; k < 64; ++k) {
            REQUIRE(std::abs(lhs[k] - rhs[k]) <= 1e-13);
        }
    }
}
