#include "mccdma/fec.hpp"

#include <bit>
#include <stdexcept>

namespace mccdma::golay {

namespace {
constexpr std::uint32_t kWordMask = (1u << kCodeBits) - 1;
constexpr std::uint32_t kUnset = ~0u;
}  // namespace

std::uint64_t GfMultiply(std::uint64_t a, std::uint64_t b) {
	std::uint64_t product = 0;
	while (b) {
		if (b & 1u)
			product ^= a;
		a <<= 1;
		b >>= 1;
	}
	return product;
}

std::uint32_t GfRemainder(std::uint64_t a, std::uint32_t g) {
	if (g == 0)
		throw std::invalid_argument("division by the zero polynomial");
	const int g_degree = std::bit_width(g) - 1;
	for (int d = std::bit_width(a) - 1; d >= g_degree; d = std::bit_width(a) - 1)
		a ^= static_cast<std::uint64_t>(g) << (d - g_degree);
	return static_cast<std::uint32_t>(a);
}

std::uint32_t Syndrome(std::uint32_t word) {
	return GfRemainder(word & kWordMask, kGenerator1);
}

std::uint32_t RotateWord(std::uint32_t word, unsigned shift) {
	shift %= kCodeBits;
	word &= kWordMask;
	if (shift == 0)
		return word;
	return ((word << shift) | (word >> (kCodeBits - shift))) & kWordMask;
}

GolayCodecTables::GolayCodecTables() {
	table_.fill(kUnset);
	auto insert = [this](std::uint32_t pattern) {
		auto& slot = table_[Syndrome(pattern)];
		if (slot != kUnset)
			throw std::logic_error("Golay syndrome table collision");
		slot = pattern;
	};
	insert(0);
	for (unsigned i = 0; i < kCodeBits; ++i) {
		insert(1u << i);
		for (unsigned j = i + 1; j < kCodeBits; ++j) {
			insert((1u << i) | (1u << j));
			for (unsigned k = j + 1; k < kCodeBits; ++k)
				insert((1u << i) | (1u << j) | (1u << k));
		}
	}
	// 1 + 23 + 253 + 1771 = 2048 patterns fill every syndrome exactly once.
	for (auto p : table_) {
		if (p == kUnset)
			throw std::logic_error("Golay syndrome table incomplete");
	}
}

const GolayCodecTables& Tables() {
	static const GolayCodecTables tables;
	return tables;
}

Codeword23 EncodeBlock(MessageBlock message) {
	const std::uint32_t info = message.bits & ((1u << kInfoBits) - 1);
	const std::uint32_t shifted = info << kCheckBits;
	return {shifted | GfRemainder(shifted, kGenerator1)};
}

DecodeResult DecodeBlock(std::uint32_t received) {
	received &= kWordMask;
	const auto error = Tables().ErrorPattern(Syndrome(received));
	const Codeword23 corrected{received ^ error};
	return {corrected.message(), static_cast<unsigned>(std::popcount(error))};
}

EncodedStream EncodeStream(std::span<const std::uint8_t> bits) {
	EncodedStream out;
	out.original_length = bits.size();
	const auto blocks = (bits.size() + kInfoBits - 1) / kInfoBits;
	out.bits.reserve(blocks * kCodeBits);
	for (std::size_t b = 0; b < blocks; ++b) {
		MessageBlock msg;
		for (unsigned i = 0; i < kInfoBits; ++i) {
			const auto idx = b * kInfoBits + i;
			if (idx < bits.size() && bits[idx])
				msg.bits |= static_cast<std::uint16_t>(1u << i);
		}
		const auto cw = EncodeBlock(msg);
		for (unsigned i = 0; i < kCodeBits; ++i)
			out.bits.push_back(static_cast<std::uint8_t>((cw.bits >> i) & 1u));
	}
	return out;
}

std::vector<std::uint8_t> DecodeStream(std::span<const std::uint8_t> bits, std::size_t original_length) {
	if (bits.size() % kCodeBits != 0)
		throw std::invalid_argument("coded stream length must be a multiple of 23");
	const auto blocks = bits.size() / kCodeBits;
	if (original_length > blocks * kInfoBits)
		throw std::invalid_argument("original length exceeds coded stream capacity");
	std::vector<std::uint8_t> out;
	out.reserve(blocks * kInfoBits);
	for (std::size_t b = 0; b < blocks; ++b) {
		std::uint32_t word = 0;
		for (unsigned i = 0; i < kCodeBits; ++i) {
			if (bits[b * kCodeBits + i])
				word |= 1u << i;
		}
		const auto msg = DecodeBlock(word).message;
		for (unsigned i = 0; i < kInfoBits; ++i)
			out.push_back(static_cast<std::uint8_t>((msg.bits >> i) & 1u));
	}
	out.resize(original_length);
	return out;
}

}  // namespace mccdma::golay
