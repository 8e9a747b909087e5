#include "mccdma/spreading.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace mccdma {

ChipSequence::ChipSequence(std::vector<int> chips) : chips_(std::move(chips)) {
	for (int c : chips_) {
		if (c != 1 && c != -1)
			throw std::invalid_argument("chip values must be +1 or -1");
	}
}

ChipSequence ChipSequence::FromBits(std::span<const std::uint8_t> bits) {
	std::vector<int> chips(bits.size());
	std::transform(bits.begin(), bits.end(), chips.begin(), [](std::uint8_t b) { return b ? -1 : 1; });
	return ChipSequence(std::move(chips));
}

ChipSequence ChipSequence::operator*(const ChipSequence& other) const {
	if (size() != other.size())
		throw std::invalid_argument("chip sequence length mismatch");
	std::vector<int> out(size());
	for (std::size_t i = 0; i < size(); ++i)
		out[i] = chips_[i] * other.chips_[i];
	return ChipSequence(std::move(out));
}

ChipSequence ChipSequence::operator-() const {
	std::vector<int> out(chips_);
	for (auto& c : out)
		c = -c;
	return ChipSequence(std::move(out));
}

ChipSequence ChipSequence::operator|(const ChipSequence& other) const {
	std::vector<int> out(chips_);
	out.insert(out.end(), other.chips_.begin(), other.chips_.end());
	return ChipSequence(std::move(out));
}

ChipSequence ChipSequence::Rotated(std::size_t shift) const {
	std::vector<int> out(chips_);
	if (!out.empty())
		std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(shift % out.size()), out.end());
	return ChipSequence(std::move(out));
}

ChipSequence ChipSequence::Appended(int chip) const {
	std::vector<int> out(chips_);
	out.push_back(chip);
	return ChipSequence(std::move(out));
}

std::string_view ToString(CodeFamily family) {
	switch (family) {
	case CodeFamily::WalshHadamard: return "wh";
	case CodeFamily::OrthogonalGold: return "gold";
	case CodeFamily::GolayComplementary: return "gcs";
	}
	return "?";
}

CodeFamily ParseCodeFamily(std::string_view name) {
	if (name == "wh") return CodeFamily::WalshHadamard;
	if (name == "gold") return CodeFamily::OrthogonalGold;
	if (name == "gcs") return CodeFamily::GolayComplementary;
	throw std::invalid_argument("unknown code family: " + std::string(name));
}

SpreadingMatrix::SpreadingMatrix(CodeFamily family, std::vector<ChipSequence> rows)
	: family_(family), rows_(std::move(rows)) {
	const auto n = rows_.size();
	if (!IsPowerOfTwo(n))
		throw std::invalid_argument("spreading factor must be a power of two");
	for (const auto& r : rows_) {
		if (r.size() != n)
			throw std::invalid_argument("spreading matrix must be square");
	}
	if (!IsOrthogonal(rows_))
		throw std::logic_error("spreading matrix rows are not mutually orthogonal");
}

bool IsPowerOfTwo(std::size_t n) noexcept {
	return std::has_single_bit(n);
}

long Dot(const ChipSequence& a, const ChipSequence& b) {
	if (a.size() != b.size())
		throw std::invalid_argument("chip sequence length mismatch");
	long sum = 0;
	for (std::size_t i = 0; i < a.size(); ++i)
		sum += a[i] * b[i];
	return sum;
}

std::vector<long> GramMatrix(std::span<const ChipSequence> rows) {
	const auto n = rows.size();
	std::vector<long> gram(n * n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i; j < n; ++j)
			gram[i * n + j] = gram[j * n + i] = Dot(rows[i], rows[j]);
	return gram;
}

bool IsOrthogonal(std::span<const ChipSequence> rows) {
	const auto n = rows.size();
	const auto gram = GramMatrix(rows);
	for (std::size_t i = 0; i < n; ++i) {
		for (std::size_t j = 0; j < n; ++j) {
			const long expected = i == j ? static_cast<long>(rows[i].size()) : 0;
			if (gram[i * n + j] != expected)
				return false;
		}
	}
	return true;
}

long AperiodicAutocorr(const ChipSequence& x, std::size_t lag) {
	if (lag >= x.size())
		throw std::out_of_range("autocorrelation lag out of range");
	long sum = 0;
	for (std::size_t j = 0; j + lag < x.size(); ++j)
		sum += x[j] * x[j + lag];
	return sum;
}

long PeriodicCrosscorr(const ChipSequence& a, const ChipSequence& b, std::size_t shift) {
	if (a.size() != b.size())
		throw std::invalid_argument("chip sequence length mismatch");
	if (shift >= a.size())
		throw std::out_of_range("correlation shift out of range");
	const auto len = a.size();
	long sum = 0;
	for (std::size_t j = 0; j < len; ++j)
		sum += a[j] * b[(j + shift) % len];
	return sum;
}

bool IsComplementaryPair(const GolayPair& pair) {
	if (pair.a.size() != pair.b.size() || pair.a.size() == 0)
		return false;
	for (std::size_t k = 1; k < pair.a.size(); ++k) {
		if (AperiodicAutocorr(pair.a, k) + AperiodicAutocorr(pair.b, k) != 0)
			return false;
	}
	return true;
}

SpreadingMatrix WalshHadamard(std::size_t order) {
	if (!IsPowerOfTwo(order))
		throw std::invalid_argument("Walsh-Hadamard order must be a nonzero power of two");
	std::vector<ChipSequence> h{ChipSequence({1})};
	while (h.size() < order) {
		std::vector<ChipSequence> next;
		next.reserve(2 * h.size());
		for (const auto& r : h)
			next.push_back(r | r);
		for (const auto& r : h)
			next.push_back(r | -r);
		h = std::move(next);
	}
	return SpreadingMatrix(CodeFamily::WalshHadamard, std::move(h));
}

ChipSequence LfsrMSequence(GfPolynomial poly, std::uint32_t seed) {
	const unsigned m = poly.degree;
	if (m == 0 || m > 20)
		throw std::invalid_argument("LFSR degree must be in 1..20");
	if (std::bit_width(poly.mask) != m + 1 || (poly.mask & 1u) == 0)
		throw std::invalid_argument("polynomial mask does not match its degree");
	const std::uint32_t state_mask = (1u << m) - 1;
	seed &= state_mask;
	if (seed == 0)
		throw std::invalid_argument("LFSR seed must be nonzero");

	// state bit i holds a_{n+i}; a_{n+m} = sum_i c_i a_{n+i}
	const std::uint32_t feedback = poly.mask & state_mask;
	const std::size_t period = state_mask;
	std::vector<std::uint8_t> bits(period);
	std::uint32_t state = seed;
	for (std::size_t n = 0; n < period; ++n) {
		bits[n] = state & 1u;
		const auto next = static_cast<std::uint32_t>(std::popcount(state & feedback) & 1);
		state = (state >> 1) | (next << (m - 1));
		if (state == seed && n + 1 < period)
			throw std::invalid_argument("polynomial is not primitive: LFSR period shorter than 2^m - 1");
	}
	if (state != seed)
		throw std::invalid_argument("polynomial is not primitive: LFSR did not return to its seed");
	return ChipSequence::FromBits(bits);
}

PreferredPair PreferredPairForDegree(unsigned degree) {
	switch (degree) {
	case 3:
		// x^3 + x + 1, x^3 + x^2 + 1
		return {{0b1011, 3}, {0b1101, 3}};
	case 5:
		// x^5 + x^2 + 1, x^5 + x^4 + x^3 + x^2 + 1
		return {{0b100101, 5}, {0b111101, 5}};
	default:
		throw std::invalid_argument("no preferred pair configured for degree " + std::to_string(degree));
	}
}

std::vector<ChipSequence> GoldFamily(const ChipSequence& u, const ChipSequence& v) {
	if (u.size() != v.size())
		throw std::invalid_argument("Gold family requires equal-length m-sequences");
	std::vector<ChipSequence> family{u, v};
	for (std::size_t k = 0; k < v.size(); ++k)
		family.push_back(u * v.Rotated(k));
	return family;
}

std::vector<ChipSequence> GoldFamilyForDegree(unsigned degree) {
	const auto pair = PreferredPairForDegree(degree);
	return GoldFamily(LfsrMSequence(pair.first, 1), LfsrMSequence(pair.second, 1));
}

namespace {

std::vector<std::size_t> GreedyOrthogonalSubset(const std::vector<ChipSequence>& candidates, std::size_t start,
                                                std::size_t wanted) {
	std::vector<std::size_t> chosen;
	const auto n = candidates.size();
	for (std::size_t step = 0; step < n && chosen.size() < wanted; ++step) {
		const auto idx = (start + step) % n;
		const bool fits = std::all_of(chosen.begin(), chosen.end(),
		                              [&](std::size_t c) { return Dot(candidates[c], candidates[idx]) == 0; });
		if (fits)
			chosen.push_back(idx);
	}
	return chosen;
}

}  // namespace

SpreadingMatrix OrthogonalGold(std::size_t spreading_factor) {
	if (!IsPowerOfTwo(spreading_factor) || spreading_factor < 4)
		throw std::invalid_argument("orthogonal Gold spreading factor must be a power of two >= 4");
	const auto degree = static_cast<unsigned>(std::countr_zero(spreading_factor));
	if (degree != 3 && degree != 5) {
		throw std::invalid_argument("unsupported degree " + std::to_string(degree) +
		                            " for orthogonal Gold codes (built-in preferred pairs: degree 3, 5)");
	}

	std::vector<ChipSequence> padded;
	for (const auto& seq : GoldFamilyForDegree(degree))
		padded.push_back(seq.Appended(+1));

	// Greedy pass from each starting candidate; keep the first complete set.
	std::vector<std::size_t> best;
	for (std::size_t start = 0; start < padded.size(); ++start) {
		auto subset = GreedyOrthogonalSubset(padded, start, spreading_factor);
		if (subset.size() == spreading_factor) {
			std::sort(subset.begin(), subset.end());
			std::vector<ChipSequence> rows;
			for (auto idx : subset)
				rows.push_back(padded[idx]);
			return SpreadingMatrix(CodeFamily::OrthogonalGold, std::move(rows));
		}
		if (subset.size() > best.size())
			best = std::move(subset);
	}

	std::ostringstream msg;
	msg << "only " << best.size() << " of " << spreading_factor
	    << " padded Gold sequences are mutually orthogonal; maximal subset found: {";
	for (std::size_t i = 0; i < best.size(); ++i)
		msg << (i ? "," : "") << best[i];
	msg << "}";
	throw OrthogonalGoldError(msg.str(), best);
}

std::vector<GolayPair> GolayComplementaryPairs(std::size_t length) {
	if (!IsPowerOfTwo(length) || length < 2)
		throw std::invalid_argument("Golay complementary length must be a power of two >= 2");
	std::vector<GolayPair> pairs{{ChipSequence({1, 1}), ChipSequence({1, -1})}};
	while (pairs.front().a.size() < length) {
		std::vector<GolayPair> next;
		next.reserve(2 * pairs.size());
		for (const auto& [a, b] : pairs) {
			next.push_back({a | b, a | -b});
			next.push_back({b | a, b | -a});
		}
		pairs = std::move(next);
	}
	return pairs;
}

SpreadingMatrix GolayComplementary(std::size_t spreading_factor) {
	std::vector<ChipSequence> rows;
	for (auto& [a, b] : GolayComplementaryPairs(spreading_factor)) {
		rows.push_back(std::move(a));
		rows.push_back(std::move(b));
	}
	return SpreadingMatrix(CodeFamily::GolayComplementary, std::move(rows));
}

SpreadingMatrix MakeSpreadingMatrix(CodeFamily family, std::size_t spreading_factor) {
	switch (family) {
	case CodeFamily::WalshHadamard: return WalshHadamard(spreading_factor);
	case CodeFamily::OrthogonalGold: return OrthogonalGold(spreading_factor);
	case CodeFamily::GolayComplementary: return GolayComplementary(spreading_factor);
	}
	throw std::invalid_argument("unknown code family");
}

std::string FormatChipMatrix(const SpreadingMatrix& matrix) {
	std::string out;
	for (const auto& row : matrix.rows()) {
		for (int c : row.chips())
			out += c > 0 ? '+' : '-';
		out += '\n';
	}
	return out;
}

}  // namespace mccdma
