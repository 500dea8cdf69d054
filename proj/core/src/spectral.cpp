#include "convboot/spectral.hpp"

#include <cmath>
#include <sstream>

#include "convboot/error.hpp"
#include "fft_backend.hpp"

namespace convboot {
namespace {

void require_same_grid(const SupportGrid& a, const SupportGrid& b) {
    if (!(a == b)) {
        throw PreconditionError("spectral sequences live on different grids");
    }
}

Complex ipow(Complex base, unsigned e) {
    Complex result{1.0, 0.0};
    while (e > 0) {
        if (e & 1U) {
            result *= base;
        }
        e >>= 1U;
        if (e > 0) {
            base *= base;
        }
    }
    return result;
}

} // namespace

SpectralSeq::SpectralSeq(SupportGrid grid, std::vector<Complex> coeff)
    : grid_(grid), coeff_(std::move(coeff)) {
    if (coeff_.size() != grid_.size()) {
        throw PreconditionError("spectral length differs from grid size");
    }
}

SpectralSeq SpectralSeq::identity(const SupportGrid& grid) {
    return {grid, std::vector<Complex>(grid.size(), Complex{1.0, 0.0})};
}

SpectralSeq& SpectralSeq::operator*=(const SpectralSeq& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t k = 0; k < coeff_.size(); ++k) {
        coeff_[k] *= other.coeff_[k];
    }
    return *this;
}

SpectralSeq& SpectralSeq::operator+=(const SpectralSeq& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t k = 0; k < coeff_.size(); ++k) {
        coeff_[k] += other.coeff_[k];
    }
    return *this;
}

SpectralSeq& SpectralSeq::operator-=(const SpectralSeq& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t k = 0; k < coeff_.size(); ++k) {
        coeff_[k] -= other.coeff_[k];
    }
    return *this;
}

SpectralSeq& SpectralSeq::operator*=(double c) {
    for (auto& z : coeff_) {
        z *= c;
    }
    return *this;
}

SpectralSeq forward(const GriddedPmf& pmf) {
    std::vector<Complex> coeff(pmf.mass().begin(), pmf.mass().end());
    detail::fft_inplace(coeff, detail::FftDirection::forward);
    return {pmf.grid(), std::move(coeff)};
}

GriddedPmf inverse(const SpectralSeq& spec) {
    std::vector<Complex> work(spec.coeff().begin(), spec.coeff().end());
    detail::fft_inplace(work, detail::FftDirection::backward);
    const double scale = 1.0 / static_cast<double>(work.size());
    std::vector<double> mass(work.size());
    for (std::size_t j = 0; j < work.size(); ++j) {
        const Complex v = work[j] * scale;
        if (std::abs(v.imag()) > kResidueTolerance || v.real() < -kResidueTolerance) {
            std::ostringstream msg;
            msg.precision(3);
            msg << "inverse transform is not a mass vector: component " << j << " = ("
                << v.real() << ", " << v.imag() << ")";
            throw NumericalError(msg.str());
        }
        mass[j] = v.real() < 0.0 ? 0.0 : v.real();
    }
    return {spec.grid(), std::move(mass)};
}

SpectralSeq operator*(SpectralSeq a, const SpectralSeq& b) { return a *= b; }
SpectralSeq operator+(SpectralSeq a, const SpectralSeq& b) { return a += b; }
SpectralSeq operator-(SpectralSeq a, const SpectralSeq& b) { return a -= b; }
SpectralSeq operator*(SpectralSeq a, double c) { return a *= c; }
SpectralSeq operator*(double c, SpectralSeq a) { return a *= c; }

SpectralSeq operator/(const SpectralSeq& num, const SpectralSeq& den) {
    require_same_grid(num.grid(), den.grid());
    std::vector<Complex> coeff(num.size());
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        if (std::abs(den[k]) < kMinDenominator) {
            std::ostringstream msg;
            msg << "spectral denominator vanishes at frequency " << k;
            throw NumericalError(msg.str());
        }
        coeff[k] = num[k] / den[k];
    }
    return {num.grid(), std::move(coeff)};
}

SpectralSeq pow(const SpectralSeq& a, unsigned exponent) {
    std::vector<Complex> coeff(a.size());
    for (std::size_t k = 0; k < coeff.size(); ++k) {
        coeff[k] = ipow(a[k], exponent);
    }
    return {a.grid(), std::move(coeff)};
}

GriddedPmf self_convolve(const GriddedPmf& pmf, unsigned m) {
    if (m == 0) {
        throw PreconditionError("self-convolution count must be at least 1");
    }
    const std::size_t top = pmf.highest_occupied();
    const std::size_t n = pmf.size();
    if (top > 0 && static_cast<double>(m) * static_cast<double>(top) > static_cast<double>(n - 1)) {
        std::ostringstream msg;
        msg << m << "-fold convolution reaches index " << m * top << " but the grid ends at "
            << n - 1 << " (the result would wrap around)";
        throw PreconditionError(msg.str());
    }
    if (m == 1) {
        return pmf;
    }
    return inverse(pow(forward(pmf), m));
}

GriddedPmf convolve(std::span<const GriddedPmf> pmfs) {
    if (pmfs.empty()) {
        throw PreconditionError("nothing to convolve");
    }
    const SupportGrid& grid = pmfs.front().grid();
    std::size_t reach = 0;
    for (const auto& p : pmfs) {
        require_same_grid(grid, p.grid());
        reach += p.highest_occupied();
    }
    if (reach > grid.size() - 1) {
        std::ostringstream msg;
        msg << "convolution reaches index " << reach << " but the grid ends at "
            << grid.size() - 1 << " (the result would wrap around)";
        throw PreconditionError(msg.str());
    }
    if (pmfs.size() == 1) {
        return pmfs.front();
    }
    SpectralSeq acc = forward(pmfs.front());
    for (std::size_t i = 1; i < pmfs.size(); ++i) {
        acc *= forward(pmfs[i]);
    }
    return inverse(acc);
}

} // namespace convboot
