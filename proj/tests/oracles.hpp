#pragma once

// Independent reference computations used only by the tests. None of these
// touch the spectral engine.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace convboot::oracle {

/// Direct O(N*M) linear convolution.
inline std::vector<double> direct_convolve(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

/// m-fold direct self convolution, trimmed to `length`.
inline std::vector<double> direct_power(const std::vector<double>& p, unsigned m, std::size_t length) {
    std::vector<double> acc{1.0};
    for (unsigned i = 0; i < m; ++i) {
        acc = direct_convolve(acc, p);
        while (acc.size() > 1 && acc.back() == 0.0 && acc.size() > length) {
            acc.pop_back();
        }
    }
    acc.resize(length, 0.0);
    return acc;
}

/// Naive O(N^2) DFT with the forward sign convention.
inline std::vector<std::complex<double>> naive_dft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> s{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(k * j % n) / static_cast<double>(n);
            s += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = s;
    }
    return out;
}

/// Random probability vector whose mass sits on indices [0, support).
inline std::vector<double> random_pmf(std::mt19937_64& rng, std::size_t length, std::size_t support) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(length, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < support; ++i) {
        p[i] = u(rng);
        total += p[i];
    }
    for (auto& v : p) {
        v /= total;
    }
    return p;
}

inline double total_variation(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        const double x = i < a.size() ? a[i] : 0.0;
        const double y = i < b.size() ? b[i] : 0.0;
        s += std::abs(x - y);
    }
    return 0.5 * s;
}

inline double binomial(unsigned n, unsigned k) {
    double r = 1.0;
    for (unsigned i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r;
}

} // namespace convboot::oracle
