#pragma once

#include "mccdma/link.hpp"
#include "mccdma/modem.hpp"
#include "mccdma/spreading.hpp"
#include "mccdma/wavelet.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mccdma {

inline constexpr std::string_view kArtifactVersion = "1.0.0";

/// Coordinates of one experiment point.
struct PointConfig {
	double snr_db = 0.0;
	Modulation scheme = Modulation::Bpsk;
	CodeFamily family = CodeFamily::WalshHadamard;
	WaveletFamily wavelet = WaveletFamily::Haar;
	bool coded = false;
	std::size_t users = 7;

	bool operator==(const PointConfig&) const = default;
};

/// Settings shared by every point of a sweep.
struct LinkSettings {
	std::size_t spreading_factor = 8;
	std::size_t block_size = 256;
	unsigned levels = 8;
	PowerNormalization normalization = PowerNormalization::PerUser;
};

struct StopRule {
	std::uint64_t min_bit_errors = 100;
	std::uint64_t max_info_bits = 10'000'000;
	/// Information bits per user handed to each link pass.
	std::size_t trial_bits_per_user = 1152;
};

struct BerRecord {
	PointConfig point;
	std::uint64_t bits_sent = 0;
	std::uint64_t bit_errors = 0;
	double ber = 0.0;
	std::uint64_t seed = 0;
	double wall_seconds = 0.0;

	/// Hit the bit budget before collecting the target error count.
	bool censored(const StopRule& rule) const noexcept { return bit_errors < rule.min_bit_errors; }
};

struct SimConfig {
	std::vector<double> snr_db;
	std::vector<Modulation> schemes;
	std::vector<CodeFamily> families;
	std::vector<WaveletFamily> wavelets;
	std::vector<bool> coded;
	std::vector<std::size_t> users;
	LinkSettings link;
	StopRule stop;
	std::uint64_t master_seed = 1;
	unsigned threads = 1;
	/// Preset name, or empty for an explicit grid; names the plot-data file.
	std::string name;

	/// Throws on empty axes or an invalid stop rule.
	void Validate() const;
};

/// Named grids "fig2" .. "fig7".
SimConfig Preset(std::string_view name);

LinkConfig MakeLinkConfig(const PointConfig& point, const LinkSettings& settings);

/// Seed derived from the master seed and every point coordinate, so results
/// do not depend on sweep order or parallelism.
std::uint64_t PointSeed(std::uint64_t master_seed, const PointConfig& point, const LinkSettings& settings);

/// Monte-Carlo estimate for one point. Trial t draws its data bits (user by
/// user) and then its channel noise from a generator seeded by (seed, t).
BerRecord RunPoint(const PointConfig& point, const LinkSettings& settings, const StopRule& stop, std::uint64_t seed);

/// Cartesian product of the axes, records sorted by coordinates.
std::vector<BerRecord> RunSweep(const SimConfig& config);

/// Sort key: scheme, family, wavelet, coded, users, snr_db.
bool CanonicalLess(const PointConfig& a, const PointConfig& b);

}  // namespace mccdma
