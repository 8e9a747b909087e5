#include "mccdma/modem.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>

using namespace mccdma;

namespace {

constexpr Modulation kAll[] = {Modulation::Bpsk, Modulation::Qpsk, Modulation::Dbpsk, Modulation::Dqpsk};

std::vector<std::uint8_t> BitsOf(unsigned pattern, unsigned len) {
	std::vector<std::uint8_t> bits(len);
	for (unsigned i = 0; i < len; ++i)
		bits[i] = (pattern >> i) & 1u;
	return bits;
}

}  // namespace

TEST_CASE("bits_per_symbol") {
	CHECK(BitsPerSymbol(Modulation::Bpsk) == 1);
	CHECK(BitsPerSymbol(Modulation::Dbpsk) == 1);
	CHECK(BitsPerSymbol(Modulation::Qpsk) == 2);
	CHECK(BitsPerSymbol(Modulation::Dqpsk) == 2);
	CHECK(IsDifferential(Modulation::Dqpsk));
	CHECK_FALSE(IsDifferential(Modulation::Qpsk));
}

TEST_CASE("modulate mappings") {
	const std::vector<std::uint8_t> b01{0, 1};
	const auto bpsk = Modulate(b01, Modulation::Bpsk).symbols;
	CHECK(bpsk == std::vector<Complex>{{1, 0}, {-1, 0}});

	const std::vector<std::uint8_t> b011{0, 1, 1};
	const auto dbpsk = Modulate(b011, Modulation::Dbpsk).symbols;
	CHECK(dbpsk == std::vector<Complex>{{1, 0}, {-1, 0}, {1, 0}});

	SUBCASE("QPSK is Gray: neighbours 90 degrees apart differ in one bit") {
		std::vector<std::pair<Complex, unsigned>> points;
		for (unsigned p = 0; p < 4; ++p) {
			const auto bits = BitsOf(p, 2);
			points.emplace_back(Modulate(bits, Modulation::Qpsk).symbols[0], p);
		}
		for (std::size_t i = 0; i < 4; ++i) {
			CHECK(std::abs(std::abs(points[i].first) - 1.0) < 1e-12);
			for (std::size_t j = i + 1; j < 4; ++j) {
				CHECK(std::abs(points[i].first - points[j].first) > 1e-6);
				const bool adjacent = std::abs(std::abs(points[i].first - points[j].first) - std::numbers::sqrt2) < 1e-9;
				if (adjacent)
					CHECK(std::popcount(points[i].second ^ points[j].second) == 1);
			}
		}
	}

	SUBCASE("DQPSK phase increments are Gray-ordered quarter turns") {
		const auto ref = DifferentialReference(Modulation::Dqpsk);
		const Complex j{0, 1};
		const std::vector<std::pair<std::vector<std::uint8_t>, Complex>> cases{
			{{0, 0}, 1.0}, {{0, 1}, j}, {{1, 1}, -1.0}, {{1, 0}, -j}};
		for (const auto& [bits, turn] : cases)
			CHECK(std::abs(Modulate(bits, Modulation::Dqpsk).symbols[0] - ref * turn) < 1e-15);
	}

	CHECK_THROWS_AS(Modulate(b011, Modulation::Qpsk), std::invalid_argument);
}

TEST_CASE("demodulate decisions") {
	const std::vector<Complex> r{{-0.3, 0.1}};
	CHECK(Demodulate(r, Modulation::Bpsk) == std::vector<std::uint8_t>{1});
	const std::vector<std::uint8_t> bits{0, 0, 1, 1, 1, 0};
	CHECK(Demodulate(Modulate(bits, Modulation::Dqpsk)) == bits);
}

TEST_CASE("noiseless round trip, exhaustive to 12 bits") {
	for (auto scheme : kAll) {
		CAPTURE(ToString(scheme));
		for (unsigned len = 0; len <= 12; len += BitsPerSymbol(scheme)) {
			for (unsigned p = 0; p < (1u << len); ++p) {
				const auto bits = BitsOf(p, len);
				const auto block = Modulate(bits, scheme);
				REQUIRE(Demodulate(block) == bits);
			}
		}
	}
}

TEST_CASE("noiseless round trip, random 10^4 bits; unit energy") {
	std::mt19937_64 rng(3);
	for (auto scheme : kAll) {
		const auto bits = oracle::RandomBits(10000, rng);
		const auto block = Modulate(bits, scheme);
		CHECK(Demodulate(block) == bits);
		for (const auto& s : block.symbols)
			CHECK(std::abs(std::abs(s) - 1.0) < 1e-12);
	}
}

TEST_CASE("differential schemes tolerate a fixed phase rotation") {
	std::mt19937_64 rng(5);
	struct Case {
		Modulation scheme;
		double theta;
	};
	const double pi = std::numbers::pi;
	const Case cases[] = {{Modulation::Dbpsk, pi},       {Modulation::Dbpsk, 2 * pi},  {Modulation::Dbpsk, 0.2},
	                      {Modulation::Dqpsk, pi / 2},   {Modulation::Dqpsk, pi},      {Modulation::Dqpsk, 1.5 * pi},
	                      {Modulation::Dqpsk, 0.2}};
	for (const auto& c : cases) {
		CAPTURE(c.theta);
		const auto bits = oracle::RandomBits(2000, rng);
		auto symbols = Modulate(bits, c.scheme).symbols;
		const auto rot = std::polar(1.0, c.theta);
		for (auto& s : symbols)
			s *= rot;
		const auto bps = BitsPerSymbol(c.scheme);

		// The implicit reference is not rotated, so only decisions after the
		// first symbol are rotation-free.
		const auto plain = Demodulate(symbols, c.scheme);
		CHECK(std::equal(plain.begin() + bps, plain.end(), bits.begin() + bps));

		// With the reference rotated along with the channel, every bit survives.
		const auto full = Demodulate(symbols, c.scheme, DifferentialReference(c.scheme) * rot);
		CHECK(full == bits);
	}
}

TEST_CASE("scheme names") {
	for (auto scheme : kAll)
		CHECK(ParseModulation(ToString(scheme)) == scheme);
	CHECK_THROWS_AS(ParseModulation("16qam"), std::invalid_argument);
}
