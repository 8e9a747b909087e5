#include "mccdma/modem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mccdma {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// Gray order of the quarter-turn index q.
constexpr std::uint8_t kQuarterTurnForPair[4] = {0, 1, 3, 2};  // index b0*2+b1
constexpr std::uint8_t kPairForQuarterTurn[4] = {0b00, 0b01, 0b11, 0b10};

const Complex kQuarterTurn[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

unsigned NearestQuarterTurn(Complex z) {
	if (std::abs(z.real()) >= std::abs(z.imag()))
		return z.real() >= 0 ? 0 : 2;
	return z.imag() >= 0 ? 1 : 3;
}

}  // namespace

std::string_view ToString(Modulation scheme) {
	switch (scheme) {
	case Modulation::Bpsk: return "bpsk";
	case Modulation::Qpsk: return "qpsk";
	case Modulation::Dbpsk: return "dbpsk";
	case Modulation::Dqpsk: return "dqpsk";
	}
	return "?";
}

Modulation ParseModulation(std::string_view name) {
	if (name == "bpsk") return Modulation::Bpsk;
	if (name == "qpsk") return Modulation::Qpsk;
	if (name == "dbpsk") return Modulation::Dbpsk;
	if (name == "dqpsk") return Modulation::Dqpsk;
	throw std::invalid_argument("unknown modulation: " + std::string(name));
}

Complex DifferentialReference(Modulation scheme) {
	return scheme == Modulation::Dqpsk ? Complex{kInvSqrt2, kInvSqrt2} : Complex{1.0, 0.0};
}

SymbolBlock Modulate(std::span<const std::uint8_t> bits, Modulation scheme) {
	const auto bps = BitsPerSymbol(scheme);
	if (bits.size() % bps != 0)
		throw std::invalid_argument("bit count is not a multiple of bits per symbol");
	SymbolBlock out{{}, scheme};
	out.symbols.reserve(bits.size() / bps);
	Complex prev = DifferentialReference(scheme);
	for (std::size_t i = 0; i < bits.size(); i += bps) {
		const int b0 = bits[i] & 1;
		switch (scheme) {
		case Modulation::Bpsk:
			out.symbols.emplace_back(1.0 - 2 * b0, 0.0);
			break;
		case Modulation::Qpsk: {
			const int b1 = bits[i + 1] & 1;
			out.symbols.emplace_back((1.0 - 2 * b0) * kInvSqrt2, (1.0 - 2 * b1) * kInvSqrt2);
			break;
		}
		case Modulation::Dbpsk:
			prev = b0 ? -prev : prev;
			out.symbols.push_back(prev);
			break;
		case Modulation::Dqpsk: {
			const int b1 = bits[i + 1] & 1;
			// Multiplying by exact quarter turns keeps |s| == 1 with no drift.
			prev *= kQuarterTurn[kQuarterTurnForPair[b0 * 2 + b1]];
			out.symbols.push_back(prev);
			break;
		}
		}
	}
	return out;
}

std::vector<std::uint8_t> Demodulate(std::span<const Complex> symbols, Modulation scheme,
                                     std::optional<Complex> reference) {
	std::vector<std::uint8_t> bits;
	bits.reserve(symbols.size() * BitsPerSymbol(scheme));
	Complex prev = reference.value_or(DifferentialReference(scheme));
	for (const auto& r : symbols) {
		switch (scheme) {
		case Modulation::Bpsk:
			bits.push_back(r.real() < 0);
			break;
		case Modulation::Qpsk:
			bits.push_back(r.real() < 0);
			bits.push_back(r.imag() < 0);
			break;
		case Modulation::Dbpsk:
			bits.push_back((r * std::conj(prev)).real() < 0);
			prev = r;
			break;
		case Modulation::Dqpsk: {
			const auto pair = kPairForQuarterTurn[NearestQuarterTurn(r * std::conj(prev))];
			bits.push_back(pair >> 1);
			bits.push_back(pair & 1);
			prev = r;
			break;
		}
		}
	}
	return bits;
}

}  // namespace mccdma
