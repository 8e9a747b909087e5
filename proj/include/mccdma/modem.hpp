#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace mccdma {

using Complex = std::complex<double>;

enum class Modulation { Bpsk, Qpsk, Dbpsk, Dqpsk };

std::string_view ToString(Modulation scheme);
/// Accepts "bpsk", "qpsk", "dbpsk", "dqpsk".
Modulation ParseModulation(std::string_view name);

constexpr unsigned BitsPerSymbol(Modulation scheme) noexcept {
	return scheme == Modulation::Qpsk || scheme == Modulation::Dqpsk ? 2 : 1;
}

constexpr bool IsDifferential(Modulation scheme) noexcept {
	return scheme == Modulation::Dbpsk || scheme == Modulation::Dqpsk;
}

/// Implicit predecessor of the first differential symbol: +1 for DBPSK,
/// (1+j)/sqrt(2) for DQPSK. Coherent schemes return 1.
Complex DifferentialReference(Modulation scheme);

struct SymbolBlock {
	std::vector<Complex> symbols;
	Modulation scheme;
};

// Mapping (bit 0 -> +1 throughout):
//   BPSK   b -> 1 - 2b
//   QPSK   (b0,b1) -> ((1 - 2b0) + j(1 - 2b1)) / sqrt(2)
//   DBPSK  s_n = s_{n-1} (1 - 2b_n)
//   DQPSK  s_n = s_{n-1} exp(j q pi/2), q = 0,1,2,3 for (00),(01),(11),(10)
SymbolBlock Modulate(std::span<const std::uint8_t> bits, Modulation scheme);

/// Hard decisions. Differential schemes detect on r_n conj(r_{n-1}) with
/// r_{-1} = `reference` (defaults to DifferentialReference(scheme)).
std::vector<std::uint8_t> Demodulate(std::span<const Complex> symbols, Modulation scheme,
                                     std::optional<Complex> reference = std::nullopt);

inline std::vector<std::uint8_t> Demodulate(const SymbolBlock& block) {
	return Demodulate(block.symbols, block.scheme);
}

}  // namespace mccdma
