#include "mccdma/verify.hpp"

#include "mccdma/fec.hpp"
#include "mccdma/spreading.hpp"

#include <bit>
#include <set>
#include <sstream>

namespace mccdma {

namespace {

CheckOutcome Named(std::string name) {
	CheckOutcome out;
	out.name = std::move(name);
	return out;
}

CheckOutcome GramCheck(CodeFamily family, std::size_t n) {
	auto out = Named("gram " + std::string(ToString(family)) + " N=" + std::to_string(n));
	try {
		const auto m = MakeSpreadingMatrix(family, n);
		out.passed = m.spreading_factor() == n && IsOrthogonal(m.rows());
		out.detail = out.passed ? "Gram = N*I" : "Gram != N*I";
	} catch (const std::exception& e) {
		out.detail = e.what();
	}
	return out;
}

std::string FormatSet(const std::set<long>& values) {
	std::ostringstream s;
	s << '{';
	bool first = true;
	for (auto v : values) {
		s << (first ? "" : ",") << v;
		first = false;
	}
	s << '}';
	return s.str();
}

}  // namespace

std::vector<CheckOutcome> RunSpreadingChecks() {
	std::vector<CheckOutcome> results;
	for (std::size_t n : {2, 4, 8, 16, 32}) {
		results.push_back(GramCheck(CodeFamily::WalshHadamard, n));
		results.push_back(GramCheck(CodeFamily::GolayComplementary, n));
	}
	for (std::size_t n : {8, 32})
		results.push_back(GramCheck(CodeFamily::OrthogonalGold, n));

	for (std::size_t n : {2, 4, 8, 16, 32}) {
		auto out = Named("complementary pairs N=" + std::to_string(n));
		const auto pairs = GolayComplementaryPairs(n);
		std::size_t good = 0;
		for (const auto& p : pairs)
			good += IsComplementaryPair(p);
		out.passed = good == pairs.size() && pairs.size() == n / 2;
		out.detail = std::to_string(good) + "/" + std::to_string(pairs.size()) + " pairs complementary";
		results.push_back(out);
	}

	for (unsigned m : {3u, 5u}) {
		const auto pair = PreferredPairForDegree(m);
		for (const auto& poly : {pair.first, pair.second}) {
			std::ostringstream name;
			name << "m-sequence autocorrelation m=" << m << " poly=0x" << std::hex << poly.mask;
			auto out = Named(name.str());
			const auto seq = LfsrMSequence(poly, 1);
			std::set<long> values;
			for (std::size_t s = 1; s < seq.size(); ++s)
				values.insert(PeriodicCrosscorr(seq, seq, s));
			out.passed = values == std::set<long>{-1};
			out.detail = "nonzero-shift values " + FormatSet(values);
			results.push_back(out);
		}

		const long t = (1L << ((m + 1) / 2)) + 1;
		auto out = Named("gold cross-correlation m=" + std::to_string(m));
		const auto family = GoldFamilyForDegree(m);
		std::set<long> values;
		for (std::size_t i = 0; i < family.size(); ++i)
			for (std::size_t j = i + 1; j < family.size(); ++j)
				for (std::size_t s = 0; s < family[i].size(); ++s)
					values.insert(PeriodicCrosscorr(family[i], family[j], s));
		const std::set<long> expected{-1, -t, t - 2};
		out.passed = values == expected && family.size() == (1u << m) + 1;
		out.detail = "values " + FormatSet(values) + ", expected " + FormatSet(expected);
		results.push_back(out);
	}

	{
		auto out = Named("walsh-hadamard recursion");
		out.passed = true;
		for (std::size_t n = 1; n <= 32; n *= 2) {
			const auto small = WalshHadamard(n);
			const auto big = WalshHadamard(2 * n);
			for (std::size_t i = 0; i < n; ++i)
				for (std::size_t j = 0; j < n; ++j)
					out.passed &= big.row(i)[j] == small.row(i)[j];
		}
		out.detail = out.passed ? "H_2N upper-left block equals H_N" : "block structure violated";
		results.push_back(out);
	}
	return results;
}

bool FecVerifyReport::ok() const {
	const std::map<unsigned, std::uint64_t> expected{{0, 1},     {7, 253},  {8, 506},  {11, 1288},
	                                                  {12, 1288}, {15, 506}, {16, 253}, {23, 1}};
	return decode_failures == 0 && decode_cases == 4096ull * 2048 && cyclic_failures == 0 &&
	       complement_failures == 0 && factorization_holds && weight_distribution == expected &&
	       min_nonzero_weight == 7;
}

FecVerifyReport RunFecVerification() {
	using namespace golay;
	FecVerifyReport report;
	const auto patterns = Tables().table();
	report.min_nonzero_weight = kCodeBits;
	for (std::uint32_t m = 0; m < (1u << kInfoBits); ++m) {
		const MessageBlock msg{static_cast<std::uint16_t>(m)};
		const auto cw = EncodeBlock(msg).bits;
		const auto weight = static_cast<unsigned>(std::popcount(cw));
		++report.weight_distribution[weight];
		if (weight != 0 && weight < report.min_nonzero_weight)
			report.min_nonzero_weight = weight;

		for (auto e : patterns) {
			++report.decode_cases;
			const auto result = DecodeBlock(cw ^ e);
			if (!(result.message == msg) || result.corrected != static_cast<unsigned>(std::popcount(e)))
				++report.decode_failures;
		}
		for (unsigned s = 1; s < kCodeBits; ++s) {
			++report.cyclic_cases;
			if (Syndrome(RotateWord(cw, s)) != 0)
				++report.cyclic_failures;
		}
		if (Syndrome(~cw & ((1u << kCodeBits) - 1)) != 0)
			++report.complement_failures;
	}
	const auto product = GfMultiply(GfMultiply(0b11, kGenerator1), kGenerator2);
	report.factorization_holds = product == ((1ull << 23) | 1ull);
	return report;
}

}  // namespace mccdma
