#include "mccdma/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mccdma {

std::string_view ToString(WaveletFamily family) {
	switch (family) {
	case WaveletFamily::Haar: return "haar";
	case WaveletFamily::Daubechies2: return "db2";
	case WaveletFamily::Biorthogonal22: return "bior22";
	}
	return "?";
}

WaveletFamily ParseWaveletFamily(std::string_view name) {
	if (name == "haar") return WaveletFamily::Haar;
	if (name == "db2") return WaveletFamily::Daubechies2;
	if (name == "bior22") return WaveletFamily::Biorthogonal22;
	throw std::invalid_argument("unknown wavelet family: " + std::string(name));
}

double Filter::at(int n) const noexcept {
	if (n < first() || n > last())
		return 0.0;
	return taps[static_cast<std::size_t>(n - offset)];
}

namespace {

std::vector<double> PolyMultiply(const std::vector<double>& a, const std::vector<double>& b) {
	std::vector<double> out(a.size() + b.size() - 1, 0.0);
	for (std::size_t i = 0; i < a.size(); ++i)
		for (std::size_t j = 0; j < b.size(); ++j)
			out[i + j] += a[i] * b[j];
	return out;
}

// g[n] = (-1)^n h[1-n]
Filter Modulated(const Filter& h) {
	Filter g;
	g.offset = 1 - h.last();
	for (int n = g.offset; n <= 1 - h.first(); ++n)
		g.taps.push_back(((n % 2) == 0 ? 1.0 : -1.0) * h.at(1 - n));
	return g;
}

FilterBank FromLowpassPair(Filter analysis_lowpass, Filter synthesis_lowpass) {
	FilterBank bank;
	bank.analysis_highpass = Modulated(synthesis_lowpass);
	bank.synthesis_highpass = Modulated(analysis_lowpass);
	bank.analysis_lowpass = std::move(analysis_lowpass);
	bank.synthesis_lowpass = std::move(synthesis_lowpass);
	return bank;
}

// Daubechies lowpass with two vanishing moments: sqrt(2) ((1 + z)/2)^2 q(z),
// where q is the minimum-phase spectral factor of P(y) = 1 + 2y.
Filter Daubechies2Lowpass() {
	const double s3 = std::sqrt(3.0);
	const std::vector<double> binomial{0.25, 0.5, 0.25};
	const std::vector<double> q{(1.0 + s3) / 2.0, (1.0 - s3) / 2.0};
	auto taps = PolyMultiply(binomial, q);
	for (auto& t : taps)
		t *= std::numbers::sqrt2;
	return {0, std::move(taps)};
}

}  // namespace

FilterBank MakeFilterBank(WaveletFamily family) {
	const double r2 = std::numbers::sqrt2;
	switch (family) {
	case WaveletFamily::Haar: {
		Filter h{0, {1.0 / r2, 1.0 / r2}};
		return FromLowpassPair(h, h);
	}
	case WaveletFamily::Daubechies2: {
		auto h = Daubechies2Lowpass();
		return FromLowpassPair(h, h);
	}
	case WaveletFamily::Biorthogonal22: {
		// Synthesis: linear B-spline, 2 vanishing moments on each side.
		Filter synthesis{-1, {r2 / 4, r2 / 2, r2 / 4}};
		Filter analysis{-2, {-r2 / 8, r2 / 4, 3 * r2 / 4, r2 / 4, -r2 / 8}};
		return FromLowpassPair(std::move(analysis), std::move(synthesis));
	}
	}
	throw std::invalid_argument("unknown wavelet family");
}

void WaveletSpec::Validate() const {
	if (levels >= 8 * sizeof(std::size_t))
		throw std::invalid_argument("too many decomposition levels");
	const std::size_t unit = std::size_t{1} << levels;
	if (block_size == 0 || block_size % unit != 0)
		throw std::invalid_argument("block size " + std::to_string(block_size) + " is not a multiple of 2^" +
		                            std::to_string(levels));
}

WaveletTransform::WaveletTransform(WaveletSpec spec) : spec_(spec), bank_(MakeFilterBank(spec.family)) {
	spec_.Validate();
}

namespace {

inline std::size_t Wrap(long idx, std::size_t len) {
	const auto m = static_cast<long>(len);
	idx %= m;
	return static_cast<std::size_t>(idx < 0 ? idx + m : idx);
}

// One periodic analysis stage: in[0..len) -> out[0..len/2) approx, out[len/2..len) detail.
void AnalysisStage(const FilterBank& bank, const Complex* in, Complex* out, std::size_t len) {
	const std::size_t half = len / 2;
	const auto& lo = bank.analysis_lowpass;
	const auto& hi = bank.analysis_highpass;
	for (std::size_t k = 0; k < half; ++k) {
		Complex a{}, d{};
		for (std::size_t i = 0; i < lo.taps.size(); ++i)
			a += lo.taps[i] * in[Wrap(static_cast<long>(2 * k) + lo.offset + static_cast<long>(i), len)];
		for (std::size_t i = 0; i < hi.taps.size(); ++i)
			d += hi.taps[i] * in[Wrap(static_cast<long>(2 * k) + hi.offset + static_cast<long>(i), len)];
		out[k] = a;
		out[half + k] = d;
	}
}

void SynthesisStage(const FilterBank& bank, const Complex* in, Complex* out, std::size_t len) {
	const std::size_t half = len / 2;
	const auto& lo = bank.synthesis_lowpass;
	const auto& hi = bank.synthesis_highpass;
	std::fill(out, out + len, Complex{});
	for (std::size_t k = 0; k < half; ++k) {
		const Complex a = in[k];
		const Complex d = in[half + k];
		for (std::size_t i = 0; i < lo.taps.size(); ++i)
			out[Wrap(static_cast<long>(2 * k) + lo.offset + static_cast<long>(i), len)] += lo.taps[i] * a;
		for (std::size_t i = 0; i < hi.taps.size(); ++i)
			out[Wrap(static_cast<long>(2 * k) + hi.offset + static_cast<long>(i), len)] += hi.taps[i] * d;
	}
}

}  // namespace

void WaveletTransform::Forward(std::span<const Complex> signal, std::span<Complex> coefficients) const {
	const auto n = spec_.block_size;
	if (signal.size() != n || coefficients.size() != n)
		throw std::invalid_argument("DWT input length must equal the block size");
	std::vector<Complex> work(signal.begin(), signal.end());
	std::vector<Complex> stage(n);
	std::size_t len = n;
	for (unsigned level = 0; level < spec_.levels; ++level, len /= 2) {
		AnalysisStage(bank_, work.data(), stage.data(), len);
		std::copy(stage.begin(), stage.begin() + static_cast<std::ptrdiff_t>(len), work.begin());
	}
	std::copy(work.begin(), work.end(), coefficients.begin());
}

void WaveletTransform::Inverse(std::span<const Complex> coefficients, std::span<Complex> signal) const {
	const auto n = spec_.block_size;
	if (signal.size() != n || coefficients.size() != n)
		throw std::invalid_argument("IDWT input length must equal the block size");
	std::vector<Complex> work(coefficients.begin(), coefficients.end());
	std::vector<Complex> stage(n);
	std::size_t len = n >> spec_.levels;
	for (unsigned level = 0; level < spec_.levels; ++level) {
		len *= 2;
		SynthesisStage(bank_, work.data(), stage.data(), len);
		std::copy(stage.begin(), stage.begin() + static_cast<std::ptrdiff_t>(len), work.begin());
	}
	std::copy(work.begin(), work.end(), signal.begin());
}

std::vector<Complex> WaveletTransform::Forward(std::span<const Complex> signal) const {
	std::vector<Complex> out(spec_.block_size);
	Forward(signal, std::span<Complex>(out));
	return out;
}

std::vector<Complex> WaveletTransform::Inverse(std::span<const Complex> coefficients) const {
	std::vector<Complex> out(spec_.block_size);
	Inverse(coefficients, std::span<Complex>(out));
	return out;
}

std::vector<Complex> DwtForward(std::span<const Complex> signal, const WaveletSpec& spec) {
	return WaveletTransform(spec).Forward(signal);
}

std::vector<Complex> DwtInverse(std::span<const Complex> coefficients, const WaveletSpec& spec) {
	return WaveletTransform(spec).Inverse(coefficients);
}

}  // namespace mccdma
