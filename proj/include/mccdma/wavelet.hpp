#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace mccdma {

using Complex = std::complex<double>;

enum class WaveletFamily { Haar, Daubechies2, Biorthogonal22 };

std::string_view ToString(WaveletFamily family);
/// Accepts "haar", "db2", "bior22".
WaveletFamily ParseWaveletFamily(std::string_view name);

/// FIR filter whose first tap sits at index `offset` (taps may be non-causal).
struct Filter {
	int offset = 0;
	std::vector<double> taps;

	int first() const noexcept { return offset; }
	int last() const noexcept { return offset + static_cast<int>(taps.size()) - 1; }
	/// h[n], zero outside the support.
	double at(int n) const noexcept;
};

/// Two-channel filter bank. Analysis correlates, synthesis convolves:
///   a[k] = sum_n analysis_lowpass[n] x[2k+n],  x[m] += a[k] synthesis_lowpass[m-2k]
/// and likewise for the highpass branch.
struct FilterBank {
	Filter analysis_lowpass;
	Filter analysis_highpass;
	Filter synthesis_lowpass;
	Filter synthesis_highpass;
};

/// Highpass filters follow from the lowpass pair: g[n] = (-1)^n h~[1-n]
/// for synthesis and g~[n] = (-1)^n h[1-n] for analysis.
FilterBank MakeFilterBank(WaveletFamily family);

struct WaveletSpec {
	WaveletFamily family = WaveletFamily::Haar;
	std::size_t block_size = 256;
	unsigned levels = 8;

	/// Throws unless block_size is a positive multiple of 2^levels.
	void Validate() const;
};

/// Multilevel periodic DWT. Coefficient layout after a full cascade:
/// [a_L | d_L | d_{L-1} | ... | d_1].
class WaveletTransform {
public:
	explicit WaveletTransform(WaveletSpec spec);

	const WaveletSpec& spec() const noexcept { return spec_; }
	const FilterBank& filters() const noexcept { return bank_; }

	void Forward(std::span<const Complex> signal, std::span<Complex> coefficients) const;
	void Inverse(std::span<const Complex> coefficients, std::span<Complex> signal) const;

	std::vector<Complex> Forward(std::span<const Complex> signal) const;
	std::vector<Complex> Inverse(std::span<const Complex> coefficients) const;

private:
	WaveletSpec spec_;
	FilterBank bank_;
};

std::vector<Complex> DwtForward(std::span<const Complex> signal, const WaveletSpec& spec);
std::vector<Complex> DwtInverse(std::span<const Complex> coefficients, const WaveletSpec& spec);

}  // namespace mccdma
