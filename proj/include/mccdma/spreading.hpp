#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mccdma {

/// A bipolar (+1/-1) chip sequence. Bit 0 maps to chip +1, bit 1 to chip -1.
class ChipSequence {
public:
	ChipSequence() = default;
	explicit ChipSequence(std::vector<int> chips);

	static ChipSequence FromBits(std::span<const std::uint8_t> bits);

	std::size_t size() const noexcept { return chips_.size(); }
	int operator[](std::size_t i) const { return chips_[i]; }
	std::span<const int> chips() const noexcept { return chips_; }

	/// Chipwise product, i.e. modulo-2 addition of the underlying bits.
	ChipSequence operator*(const ChipSequence& other) const;
	ChipSequence operator-() const;
	/// Concatenation.
	ChipSequence operator|(const ChipSequence& other) const;
	/// Cyclic shift left by `shift` positions: result[j] = x[(j + shift) mod L].
	ChipSequence Rotated(std::size_t shift) const;
	ChipSequence Appended(int chip) const;

	bool operator==(const ChipSequence&) const = default;

private:
	std::vector<int> chips_;
};

enum class CodeFamily { WalshHadamard, OrthogonalGold, GolayComplementary };

std::string_view ToString(CodeFamily family);
/// Accepts the CLI names "wh", "gold", "gcs".
CodeFamily ParseCodeFamily(std::string_view name);

/// N x N bank of orthogonal chip rows, one row per assignable user code.
class SpreadingMatrix {
public:
	SpreadingMatrix(CodeFamily family, std::vector<ChipSequence> rows);

	CodeFamily family() const noexcept { return family_; }
	std::size_t spreading_factor() const noexcept { return rows_.size(); }
	const ChipSequence& row(std::size_t i) const { return rows_.at(i); }
	const std::vector<ChipSequence>& rows() const noexcept { return rows_; }

private:
	CodeFamily family_;
	std::vector<ChipSequence> rows_;
};

struct GolayPair {
	ChipSequence a;
	ChipSequence b;
};

bool IsPowerOfTwo(std::size_t n) noexcept;

/// Integer Gram matrix of the rows, row-major.
std::vector<long> GramMatrix(std::span<const ChipSequence> rows);
/// True iff Gram(rows) == N * Identity exactly, with N the common row length.
bool IsOrthogonal(std::span<const ChipSequence> rows);

long Dot(const ChipSequence& a, const ChipSequence& b);
long AperiodicAutocorr(const ChipSequence& x, std::size_t lag);
long PeriodicCrosscorr(const ChipSequence& a, const ChipSequence& b, std::size_t shift);
bool IsComplementaryPair(const GolayPair& pair);

SpreadingMatrix WalshHadamard(std::size_t order);

/// Binary polynomial as a bit mask: bit i is the coefficient of x^i. The mask
/// must include the leading x^degree term and the constant term.
struct GfPolynomial {
	std::uint32_t mask;
	unsigned degree;
};

/// Fibonacci LFSR realizing the recurrence of `poly`; `seed` bit i is the
/// i-th output bit. Throws if the seed is zero or the period is not 2^m - 1.
ChipSequence LfsrMSequence(GfPolynomial poly, std::uint32_t seed);

struct PreferredPair {
	GfPolynomial first;
	GfPolynomial second;
};

/// Built-in preferred pairs; degree 3 and 5 only.
PreferredPair PreferredPairForDegree(unsigned degree);

/// {u, v, u * T^k v for k = 0 .. L-1}: 2^m + 1 sequences of length L.
std::vector<ChipSequence> GoldFamily(const ChipSequence& u, const ChipSequence& v);
std::vector<ChipSequence> GoldFamilyForDegree(unsigned degree);

class OrthogonalGoldError : public std::runtime_error {
public:
	OrthogonalGoldError(const std::string& what, std::vector<std::size_t> maximal_subset)
		: std::runtime_error(what), maximal_subset_(std::move(maximal_subset)) {}
	const std::vector<std::size_t>& maximal_subset() const noexcept { return maximal_subset_; }

private:
	std::vector<std::size_t> maximal_subset_;
};

/// Gold family padded with one +1 chip, reduced to N mutually orthogonal rows.
SpreadingMatrix OrthogonalGold(std::size_t spreading_factor);

/// Golay complementary pairs of length N built by the doubling tree.
std::vector<GolayPair> GolayComplementaryPairs(std::size_t length);
SpreadingMatrix GolayComplementary(std::size_t spreading_factor);

SpreadingMatrix MakeSpreadingMatrix(CodeFamily family, std::size_t spreading_factor);

/// One line of '+'/'-' per row.
std::string FormatChipMatrix(const SpreadingMatrix& matrix);

}  // namespace mccdma
