#pragma once

#include "mccdma/modem.hpp"
#include "mccdma/spreading.hpp"
#include "mccdma/wavelet.hpp"

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace mccdma {

using Rng = std::mt19937_64;

/// How the transmit power is shared between users.
enum class PowerNormalization {
	/// Every user transmits unit-energy symbols; snr_db is Eb/N0 per user.
	PerUser,
	/// Total transmit power equals one full-power user; each user's Eb falls as 1/U.
	TotalPower,
};

struct LinkConfig {
	std::size_t num_users = 7;
	SpreadingMatrix spreading;
	WaveletSpec wavelet;
	Modulation scheme = Modulation::Bpsk;
	bool coded = false;
	/// Eb/N0 per information bit, in dB.
	double snr_db = 0.0;
	PowerNormalization normalization = PowerNormalization::PerUser;

	std::size_t spreading_factor() const noexcept { return spreading.spreading_factor(); }
	/// Symbol slots per user in one coefficient block.
	std::size_t slots_per_block() const noexcept { return wavelet.block_size / spreading_factor(); }

	void Validate() const;
};

/// coefficient[g*SF + j] = scale / sqrt(SF) * sum_k symbols[k][g] * code_k[j],
/// user k on row k. `coefficients` must hold G*SF values.
void SpreadMultiplex(std::span<const std::vector<Complex>> user_symbols, const SpreadingMatrix& spreading,
                     std::span<Complex> coefficients, double scale = 1.0);
std::vector<Complex> SpreadMultiplex(std::span<const std::vector<Complex>> user_symbols,
                                     const SpreadingMatrix& spreading, std::size_t block_size);

/// s_k[g] = 1/sqrt(SF) * sum_j coefficient[g*SF + j] * code_k[j].
std::vector<Complex> Despread(std::span<const Complex> coefficients, const SpreadingMatrix& spreading,
                              std::size_t user);

/// Per-dimension noise standard deviation giving Eb/N0 = snr_db, where
/// Eb = mean_symbol_energy / (bits_per_symbol * R) and R = 12/23 when coded.
double NoiseSigmaFor(double snr_db, Modulation scheme, bool coded, double mean_symbol_energy);

/// Adds N(0, sigma^2) independently to the real and imaginary part of every
/// sample, drawing real then imaginary in sample order.
void ApplyAwgn(std::span<Complex> signal, double sigma, Rng& rng);

struct LinkResult {
	std::vector<std::vector<std::uint8_t>> decoded;  // per user
	std::size_t bit_errors = 0;
	std::size_t info_bits = 0;
	double noise_sigma = 0.0;
};

/// One pass of the full chain for `info_bits` (one equal-length stream per
/// active user): FEC, modulation, spreading, IDWT, AWGN, DWT, despreading,
/// demodulation, FEC decoding, error count. Noise is drawn from `rng`.
LinkResult RunLinkOnce(std::span<const std::vector<std::uint8_t>> info_bits, const LinkConfig& config, Rng& rng);

}  // namespace mccdma
