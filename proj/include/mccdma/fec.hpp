#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mccdma::golay {

inline constexpr unsigned kInfoBits = 12;
inline constexpr unsigned kCheckBits = 11;
inline constexpr unsigned kCodeBits = 23;

// Bit i of a mask is the coefficient of X^i.
inline constexpr std::uint32_t kGenerator1 = 0b110001110101;  // 1 + X^2 + X^4 + X^5 + X^6 + X^10 + X^11
inline constexpr std::uint32_t kGenerator2 = 0b101011100011;  // 1 + X + X^5 + X^6 + X^7 + X^9 + X^11

/// 12 information bits; bit i is the i-th bit of the block in stream order.
struct MessageBlock {
	std::uint16_t bits = 0;
	bool operator==(const MessageBlock&) const = default;
};

/// 23 bits, bit i the coefficient of X^i. Bits 0..10 are check bits,
/// bits 11..22 carry the message, so c(X) = r(X) + X^11 m(X).
struct Codeword23 {
	std::uint32_t bits = 0;
	bool operator==(const Codeword23&) const = default;

	MessageBlock message() const { return {static_cast<std::uint16_t>(bits >> kCheckBits)}; }
};

/// Product of two GF(2) polynomials (operands up to degree 31 combined).
std::uint64_t GfMultiply(std::uint64_t a, std::uint64_t b);
/// Remainder of a(X) divided by g(X) over GF(2).
std::uint32_t GfRemainder(std::uint64_t a, std::uint32_t g);

std::uint32_t Syndrome(std::uint32_t word);
/// Cyclic shift by `shift` positions modulo X^23 + 1.
std::uint32_t RotateWord(std::uint32_t word, unsigned shift);

struct DecodeResult {
	MessageBlock message;
	unsigned corrected = 0;
};

/// Generator polynomial and syndrome -> coset-leader table for the (23,12) code.
class GolayCodecTables {
public:
	GolayCodecTables();

	std::uint32_t generator() const noexcept { return kGenerator1; }
	std::uint32_t ErrorPattern(std::uint32_t syndrome) const { return table_.at(syndrome); }
	std::span<const std::uint32_t> table() const noexcept { return table_; }

private:
	std::array<std::uint32_t, 1u << kCheckBits> table_{};
};

/// Process-wide immutable tables.
const GolayCodecTables& Tables();

Codeword23 EncodeBlock(MessageBlock message);
DecodeResult DecodeBlock(std::uint32_t received);

struct EncodedStream {
	std::vector<std::uint8_t> bits;
	std::size_t original_length = 0;
};

/// Zero-pads to a multiple of 12 and emits each codeword bit 0 first.
EncodedStream EncodeStream(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> DecodeStream(std::span<const std::uint8_t> bits, std::size_t original_length);

}  // namespace mccdma::golay
