#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mccdma {

struct CheckOutcome {
	std::string name;
	bool passed = false;
	std::string detail;
};

/// Gram, complementary-pair, Gold three-value and m-sequence checks over every
/// supported code size.
std::vector<CheckOutcome> RunSpreadingChecks();

struct FecVerifyReport {
	std::uint64_t decode_cases = 0;
	std::uint64_t decode_failures = 0;
	std::uint64_t cyclic_cases = 0;
	std::uint64_t cyclic_failures = 0;
	std::uint64_t complement_failures = 0;
	bool factorization_holds = false;
	std::map<unsigned, std::uint64_t> weight_distribution;
	unsigned min_nonzero_weight = 0;

	bool ok() const;
};

/// Exhaustive (23,12) checks: every codeword against every correctable error
/// pattern, cyclic and complement closure, (1+X) g1 g2 = X^23 + 1.
FecVerifyReport RunFecVerification();

}  // namespace mccdma
