#include "mccdma/link.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace mccdma;

namespace {

constexpr CodeFamily kFamilies[] = {CodeFamily::WalshHadamard, CodeFamily::OrthogonalGold,
                                    CodeFamily::GolayComplementary};
constexpr Modulation kSchemes[] = {Modulation::Bpsk, Modulation::Qpsk, Modulation::Dbpsk, Modulation::Dqpsk};
constexpr WaveletFamily kWavelets[] = {WaveletFamily::Haar, WaveletFamily::Daubechies2,
                                       WaveletFamily::Biorthogonal22};

LinkConfig Config(CodeFamily family, Modulation scheme, WaveletFamily wavelet, bool coded, double snr_db,
                  std::size_t users = 7, std::size_t sf = 8) {
	return {.num_users = users,
	        .spreading = MakeSpreadingMatrix(family, sf),
	        .wavelet = {wavelet},
	        .scheme = scheme,
	        .coded = coded,
	        .snr_db = snr_db};
}

std::vector<std::vector<std::uint8_t>> UserBits(std::size_t users, std::size_t len, std::mt19937_64& rng) {
	std::vector<std::vector<std::uint8_t>> bits;
	for (std::size_t k = 0; k < users; ++k)
		bits.push_back(oracle::RandomBits(len, rng));
	return bits;
}

}  // namespace

TEST_CASE("spread_multiplex") {
	SUBCASE("one user on the all-ones row") {
		const auto wh = WalshHadamard(8);
		std::vector<std::vector<Complex>> s{std::vector<Complex>(32)};
		s[0][0] = 1.0;
		const auto c = SpreadMultiplex(s, wh, 256);
		for (std::size_t i = 0; i < 8; ++i)
			CHECK(std::abs(c[i] - 1.0 / std::sqrt(8.0)) < 1e-15);
		for (std::size_t i = 8; i < 256; ++i)
			CHECK(c[i] == Complex{});
	}
	SUBCASE("block energy equals total symbol energy") {
		std::mt19937_64 rng(1);
		for (auto family : kFamilies) {
			const auto m = MakeSpreadingMatrix(family, 8);
			std::vector<std::vector<Complex>> s;
			double expected = 0;
			for (int k = 0; k < 7; ++k) {
				s.push_back(oracle::RandomComplex(32, rng));
				for (const auto& x : s.back())
					expected += std::norm(x);
			}
			double energy = 0;
			for (const auto& x : SpreadMultiplex(s, m, 256))
				energy += std::norm(x);
			CHECK(std::abs(energy - expected) < 1e-10);
		}
	}
	SUBCASE("dimension mismatches rejected") {
		const auto wh = WalshHadamard(8);
		std::vector<std::vector<Complex>> wrong_slots{std::vector<Complex>(31)};
		CHECK_THROWS_AS(SpreadMultiplex(wrong_slots, wh, 256), std::invalid_argument);
		std::vector<std::vector<Complex>> too_many(9, std::vector<Complex>(32));
		CHECK_THROWS_AS(SpreadMultiplex(too_many, wh, 256), std::invalid_argument);
	}
}

TEST_CASE("despread") {
	std::mt19937_64 rng(2);
	SUBCASE("noiseless round trip for every family, U=7, SF=8") {
		for (auto family : kFamilies) {
			const auto m = MakeSpreadingMatrix(family, 8);
			std::vector<std::vector<Complex>> s;
			for (int k = 0; k < 7; ++k)
				s.push_back(oracle::RandomComplex(32, rng));
			const auto c = SpreadMultiplex(s, m, 256);
			for (std::size_t k = 0; k < 7; ++k) {
				const auto r = Despread(c, m, k);
				for (std::size_t g = 0; g < 32; ++g)
					CHECK(std::abs(r[g] - s[k][g]) < 1e-12);
			}
		}
	}
	SUBCASE("zeros in, zeros out") {
		const auto r = Despread(std::vector<Complex>(256), GolayComplementary(16), 3);
		CHECK(r.size() == 16);
		for (const auto& x : r)
			CHECK(x == Complex{});
	}
	SUBCASE("adding an interferer on another row leaves user 0 unchanged") {
		const auto m = OrthogonalGold(8);
		std::vector<std::vector<Complex>> s{oracle::RandomComplex(32, rng)};
		const auto alone = Despread(SpreadMultiplex(s, m, 256), m, 0);
		s.push_back(oracle::RandomComplex(32, rng));
		const auto shared = Despread(SpreadMultiplex(s, m, 256), m, 0);
		for (std::size_t g = 0; g < 32; ++g)
			CHECK(std::abs(alone[g] - shared[g]) < 1e-12);
	}
	CHECK_THROWS_AS(Despread(std::vector<Complex>(256), WalshHadamard(8), 8), std::out_of_range);
}

TEST_CASE("noise_sigma_for") {
	// Eb/N0 = 0 dB, unit symbols, uncoded BPSK: N0 = 1, sigma^2 = 1/2
	CHECK(NoiseSigmaFor(0.0, Modulation::Bpsk, false, 1.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
	// QPSK: Eb = Es/2
	CHECK(NoiseSigmaFor(0.0, Modulation::Qpsk, false, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
	// coded pays 23/12 in noise power
	const double uncoded = NoiseSigmaFor(3.0, Modulation::Bpsk, false, 1.0);
	const double coded = NoiseSigmaFor(3.0, Modulation::Bpsk, true, 1.0);
	CHECK(coded * coded / (uncoded * uncoded) == doctest::Approx(23.0 / 12.0).epsilon(1e-13));
	CHECK(NoiseSigmaFor(400.0, Modulation::Bpsk, false, 1.0) < 1e-19);
	CHECK(NoiseSigmaFor(INFINITY, Modulation::Bpsk, false, 1.0) == 0.0);
	CHECK_THROWS_AS(NoiseSigmaFor(0.0, Modulation::Bpsk, false, 0.0), std::invalid_argument);
	CHECK_THROWS_AS(NoiseSigmaFor(NAN, Modulation::Bpsk, false, 1.0), std::invalid_argument);
}

TEST_CASE("apply_awgn") {
	std::mt19937_64 data_rng(3);
	const auto x = oracle::RandomComplex(1000, data_rng);
	SUBCASE("sigma 0 is the identity") {
		auto y = x;
		Rng rng(1);
		ApplyAwgn(y, 0.0, rng);
		CHECK(y == x);
	}
	SUBCASE("fixed seed gives identical output") {
		auto a = x, b = x;
		Rng r1(77), r2(77);
		ApplyAwgn(a, 0.4, r1);
		ApplyAwgn(b, 0.4, r2);
		CHECK(a == b);
	}
	SUBCASE("per-dimension variance over 10^6 samples") {
		const double sigma = 0.37;
		std::vector<Complex> y(500000);
		Rng rng(9);
		ApplyAwgn(y, sigma, rng);
		double sum = 0;
		for (const auto& v : y)
			sum += v.real() * v.real() + v.imag() * v.imag();
		const double var = sum / (2.0 * y.size());
		CHECK(std::abs(var / (sigma * sigma) - 1.0) < 0.01);
	}
	std::vector<Complex> y(1);
	Rng rng(1);
	CHECK_THROWS_AS(ApplyAwgn(y, -1.0, rng), std::invalid_argument);
}

TEST_CASE("run_link_once: all 72 noiseless combinations are error-free") {
	std::mt19937_64 data_rng(4);
	for (auto family : kFamilies)
		for (auto scheme : kSchemes)
			for (auto wavelet : kWavelets)
				for (bool coded : {false, true}) {
					CAPTURE(ToString(family));
					CAPTURE(ToString(scheme));
					CAPTURE(ToString(wavelet));
					CAPTURE(coded);
					// 301 bits: exercises FEC, symbol and block padding
					const auto bits = UserBits(7, 301, data_rng);
					Rng rng(5);
					const auto r = RunLinkOnce(bits, Config(family, scheme, wavelet, coded, INFINITY), rng);
					CHECK(r.noise_sigma == 0.0);
					CHECK(r.bit_errors == 0);
					CHECK(r.info_bits == 7 * 301);
					CHECK(r.decoded == bits);
				}
}

TEST_CASE("run_link_once: user 0 does not see other users' data") {
	std::mt19937_64 data_rng(6);
	for (auto family : kFamilies) {
		auto bits = UserBits(7, 1152, data_rng);
		const auto config = Config(family, Modulation::Qpsk, WaveletFamily::Daubechies2, false, INFINITY);
		Rng r1(1), r2(1);
		const auto first = RunLinkOnce(bits, config, r1);
		for (std::size_t k = 1; k < 7; ++k)
			bits[k] = oracle::RandomBits(1152, data_rng);
		const auto second = RunLinkOnce(bits, config, r2);
		CHECK(first.decoded[0] == second.decoded[0]);
	}
}

TEST_CASE("run_link_once: SF 16 and single-user configurations") {
	std::mt19937_64 data_rng(10);
	const auto bits = UserBits(16, 200, data_rng);
	Rng rng(1);
	const auto r = RunLinkOnce(bits, Config(CodeFamily::GolayComplementary, Modulation::Dqpsk,
	                                        WaveletFamily::Biorthogonal22, true, INFINITY, 16, 16),
	                           rng);
	CHECK(r.bit_errors == 0);

	const auto one = UserBits(1, 64, data_rng);
	Rng rng2(1);
	CHECK(RunLinkOnce(one, Config(CodeFamily::WalshHadamard, Modulation::Bpsk, WaveletFamily::Haar, false, INFINITY, 1),
	                  rng2)
	          .bit_errors == 0);
}

TEST_CASE("run_link_once: noisy pass is deterministic and rejects bad configs") {
	std::mt19937_64 data_rng(12);
	const auto bits = UserBits(7, 1152, data_rng);
	const auto config = Config(CodeFamily::WalshHadamard, Modulation::Bpsk, WaveletFamily::Haar, false, 2.0);
	Rng r1(42), r2(42);
	const auto a = RunLinkOnce(bits, config, r1);
	const auto b = RunLinkOnce(bits, config, r2);
	CHECK(a.decoded == b.decoded);
	CHECK(a.bit_errors > 0);

	auto too_many = config;
	too_many.num_users = 9;
	const auto nine = UserBits(9, 10, data_rng);
	CHECK_THROWS_AS(RunLinkOnce(nine, too_many, r1), std::invalid_argument);
	const auto six = UserBits(6, 10, data_rng);
	CHECK_THROWS_AS(RunLinkOnce(six, config, r1), std::invalid_argument);
}

TEST_CASE("total-power mode lowers each user's Eb by 1/U") {
	std::mt19937_64 data_rng(13);
	const auto bits = UserBits(4, 1152, data_rng);
	auto config = Config(CodeFamily::WalshHadamard, Modulation::Bpsk, WaveletFamily::Haar, false, 5.0, 4);
	Rng r1(3);
	const auto per_user = RunLinkOnce(bits, config, r1);
	config.normalization = PowerNormalization::TotalPower;
	Rng r2(3);
	const auto total = RunLinkOnce(bits, config, r2);
	// Same noise, signal amplitude 1/sqrt(U): noise sigma is unchanged.
	CHECK(total.noise_sigma == doctest::Approx(per_user.noise_sigma).epsilon(1e-12));
	CHECK(total.bit_errors > per_user.bit_errors);
}
