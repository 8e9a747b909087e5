#include "mccdma/link.hpp"

#include "mccdma/fec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mccdma {

void LinkConfig::Validate() const {
	wavelet.Validate();
	const auto sf = spreading_factor();
	if (num_users == 0 || num_users > sf)
		throw std::invalid_argument("number of users must be in 1.." + std::to_string(sf));
	if (wavelet.block_size % sf != 0)
		throw std::invalid_argument("block size must be divisible by the spreading factor");
	if (std::isnan(snr_db))
		throw std::invalid_argument("snr_db must be a number");
}

void SpreadMultiplex(std::span<const std::vector<Complex>> user_symbols, const SpreadingMatrix& spreading,
                     std::span<Complex> coefficients, double scale) {
	const auto sf = spreading.spreading_factor();
	if (user_symbols.size() > sf)
		throw std::invalid_argument("more users than spreading codes");
	if (coefficients.size() % sf != 0)
		throw std::invalid_argument("coefficient block is not a multiple of the spreading factor");
	const auto slots = coefficients.size() / sf;
	for (const auto& s : user_symbols) {
		if (s.size() != slots)
			throw std::invalid_argument("user symbol count does not match the block's symbol slots");
	}
	const double gain = scale / std::sqrt(static_cast<double>(sf));
	std::fill(coefficients.begin(), coefficients.end(), Complex{});
	for (std::size_t k = 0; k < user_symbols.size(); ++k) {
		const auto code = spreading.row(k).chips();
		for (std::size_t g = 0; g < slots; ++g) {
			const Complex s = gain * user_symbols[k][g];
			Complex* group = coefficients.data() + g * sf;
			for (std::size_t j = 0; j < sf; ++j)
				group[j] += code[j] > 0 ? s : -s;
		}
	}
}

std::vector<Complex> SpreadMultiplex(std::span<const std::vector<Complex>> user_symbols,
                                     const SpreadingMatrix& spreading, std::size_t block_size) {
	std::vector<Complex> coefficients(block_size);
	SpreadMultiplex(user_symbols, spreading, coefficients);
	return coefficients;
}

std::vector<Complex> Despread(std::span<const Complex> coefficients, const SpreadingMatrix& spreading,
                              std::size_t user) {
	const auto sf = spreading.spreading_factor();
	if (user >= sf)
		throw std::out_of_range("user index out of range");
	if (coefficients.size() % sf != 0)
		throw std::invalid_argument("coefficient block is not a multiple of the spreading factor");
	const auto code = spreading.row(user).chips();
	const double gain = 1.0 / std::sqrt(static_cast<double>(sf));
	std::vector<Complex> symbols(coefficients.size() / sf);
	for (std::size_t g = 0; g < symbols.size(); ++g) {
		Complex acc{};
		const Complex* group = coefficients.data() + g * sf;
		for (std::size_t j = 0; j < sf; ++j)
			acc += code[j] > 0 ? group[j] : -group[j];
		symbols[g] = gain * acc;
	}
	return symbols;
}

double NoiseSigmaFor(double snr_db, Modulation scheme, bool coded, double mean_symbol_energy) {
	if (!(mean_symbol_energy > 0.0))
		throw std::invalid_argument("mean symbol energy must be positive");
	if (std::isnan(snr_db) || snr_db == -INFINITY)
		throw std::invalid_argument("snr_db must be finite");
	const double rate = coded ? double(golay::kInfoBits) / golay::kCodeBits : 1.0;
	const double eb = mean_symbol_energy / (BitsPerSymbol(scheme) * rate);
	const double n0 = eb * std::pow(10.0, -snr_db / 10.0);
	return std::sqrt(n0 / 2.0);
}

void ApplyAwgn(std::span<Complex> signal, double sigma, Rng& rng) {
	if (sigma < 0.0)
		throw std::invalid_argument("noise sigma must be nonnegative");
	if (sigma == 0.0)
		return;
	std::normal_distribution<double> normal(0.0, sigma);
	for (auto& x : signal) {
		const double re = normal(rng);
		const double im = normal(rng);
		x += Complex{re, im};
	}
}

LinkResult RunLinkOnce(std::span<const std::vector<std::uint8_t>> info_bits, const LinkConfig& config, Rng& rng) {
	config.Validate();
	const auto users = config.num_users;
	if (info_bits.size() != users)
		throw std::invalid_argument("one information bit stream per active user is required");
	const auto info_len = info_bits.front().size();
	for (const auto& b : info_bits) {
		if (b.size() != info_len)
			throw std::invalid_argument("all users must carry equal-length bit streams");
	}

	const auto bps = BitsPerSymbol(config.scheme);
	const auto block = config.wavelet.block_size;
	const auto slots = config.slots_per_block();

	// Transmit: FEC, padding to whole symbols, modulation.
	std::vector<std::vector<Complex>> tx_symbols(users);
	std::size_t coded_len = info_len;
	for (std::size_t k = 0; k < users; ++k) {
		std::vector<std::uint8_t> bits;
		if (config.coded)
			bits = golay::EncodeStream(info_bits[k]).bits;
		else
			bits = info_bits[k];
		coded_len = bits.size();
		bits.resize((bits.size() + bps - 1) / bps * bps, 0);
		tx_symbols[k] = Modulate(bits, config.scheme).symbols;
	}
	const auto num_symbols = tx_symbols.front().size();
	const auto num_blocks = (num_symbols + slots - 1) / slots;

	const double amplitude = config.normalization == PowerNormalization::TotalPower
	                             ? 1.0 / std::sqrt(static_cast<double>(users))
	                             : 1.0;

	// Serial to parallel, spreading, synthesis; one block of samples per slot group.
	const WaveletTransform dwt(config.wavelet);
	std::vector<Complex> signal(num_blocks * block);
	std::vector<std::vector<Complex>> block_symbols(users, std::vector<Complex>(slots));
	std::vector<Complex> coefficients(block);
	for (std::size_t b = 0; b < num_blocks; ++b) {
		for (std::size_t k = 0; k < users; ++k) {
			for (std::size_t g = 0; g < slots; ++g) {
				const auto idx = b * slots + g;
				block_symbols[k][g] = idx < num_symbols ? tx_symbols[k][idx] : Complex{};
			}
		}
		SpreadMultiplex(block_symbols, config.spreading, coefficients, amplitude);
		dwt.Inverse(coefficients, std::span<Complex>(signal).subspan(b * block, block));
	}

	// Channel. Energy reference: one full-power user's symbols in TotalPower mode.
	double energy = 0.0;
	for (const auto& x : signal)
		energy += std::norm(x);
	const double symbols_carried = static_cast<double>(num_symbols * users);
	const double reference_symbols =
		config.normalization == PowerNormalization::TotalPower ? symbols_carried / users : symbols_carried;

	LinkResult result;
	result.noise_sigma =
		num_symbols == 0 ? 0.0 : NoiseSigmaFor(config.snr_db, config.scheme, config.coded, energy / reference_symbols);
	ApplyAwgn(signal, result.noise_sigma, rng);

	// Receive: analysis, despreading, parallel to serial.
	std::vector<std::vector<Complex>> rx_symbols(users);
	for (auto& r : rx_symbols)
		r.reserve(num_blocks * slots);
	for (std::size_t b = 0; b < num_blocks; ++b) {
		dwt.Forward(std::span<const Complex>(signal).subspan(b * block, block), coefficients);
		for (std::size_t k = 0; k < users; ++k) {
			const auto s = Despread(coefficients, config.spreading, k);
			rx_symbols[k].insert(rx_symbols[k].end(), s.begin(), s.end());
		}
	}

	result.decoded.resize(users);
	result.info_bits = info_len * users;
	for (std::size_t k = 0; k < users; ++k) {
		rx_symbols[k].resize(num_symbols);
		auto bits = Demodulate(rx_symbols[k], config.scheme);
		bits.resize(coded_len);
		result.decoded[k] = config.coded ? golay::DecodeStream(bits, info_len) : std::move(bits);
		for (std::size_t i = 0; i < info_len; ++i)
			result.bit_errors += (result.decoded[k][i] != info_bits[k][i]);
	}
	return result;
}

}  // namespace mccdma
