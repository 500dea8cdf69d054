#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "convboot/grid.hpp"

namespace convboot {

using Complex = std::complex<double>;

//---------------------------------------------------------------------------//
/*!
 * DFT image of a (sub-)probability mass vector.
 *
 * coeff[k] = sum_j mass[j] * exp(-2 pi i k j / N). Pointwise products of
 * spectra are circular convolutions of the underlying mass vectors, so the
 * grid must be long enough to hold the support of every result.
 *
 * The grid is carried along so that spectra built on different grids cannot
 * be combined by accident.
 */
class SpectralSeq {
  public:
    SpectralSeq(SupportGrid grid, std::vector<Complex> coeff);

    /// Spectrum of the unit mass at index 0 (all ones).
    static SpectralSeq identity(const SupportGrid& grid);

    const SupportGrid& grid() const { return grid_; }
    std::span<const Complex> coeff() const { return coeff_; }
    const Complex& operator[](std::size_t k) const { return coeff_[k]; }
    std::size_t size() const { return coeff_.size(); }

    SpectralSeq& operator*=(const SpectralSeq& other);
    SpectralSeq& operator+=(const SpectralSeq& other);
    SpectralSeq& operator-=(const SpectralSeq& other);
    SpectralSeq& operator*=(double c);

  private:
    SupportGrid grid_;
    std::vector<Complex> coeff_;
};

SpectralSeq forward(const GriddedPmf& pmf);

/*!
 * Inverse transform including the 1/N normalization.
 *
 * Imaginary residues up to 1e-9 are dropped and negative real residues down
 * to -1e-9 are clipped to zero. Anything larger means the spectrum is not the
 * image of a nonnegative mass vector and raises NumericalError.
 */
GriddedPmf inverse(const SpectralSeq& spec);

inline constexpr double kResidueTolerance = 1e-9;
inline constexpr double kMinDenominator = 1e-12;

SpectralSeq operator*(SpectralSeq a, const SpectralSeq& b);
SpectralSeq operator+(SpectralSeq a, const SpectralSeq& b);
SpectralSeq operator-(SpectralSeq a, const SpectralSeq& b);
SpectralSeq operator*(SpectralSeq a, double c);
SpectralSeq operator*(double c, SpectralSeq a);

/// Elementwise quotient; every |denominator[k]| must be >= 1e-12.
SpectralSeq operator/(const SpectralSeq& num, const SpectralSeq& den);

/// Elementwise integer power by repeated squaring; pow(a, 0) is all ones.
SpectralSeq pow(const SpectralSeq& a, unsigned exponent);

/// m-fold convolution of `pmf` with itself.
///
/// Requires m * highest_occupied() <= N - 1 so the result cannot wrap around
/// the end of the grid.
GriddedPmf self_convolve(const GriddedPmf& pmf, unsigned m);

/// Convolution of independent, not necessarily identical, pmfs on one grid.
///
/// Requires the sum of highest occupied indices to be <= N - 1.
GriddedPmf convolve(std::span<const GriddedPmf> pmfs);

} // namespace convboot
