#include "mccdma/sim.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace mccdma {

namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
	x += 0x9e3779b97f4a7c15ull;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
	return x ^ (x >> 31);
}

Rng TrialRng(std::uint64_t point_seed, std::uint64_t trial) {
	std::seed_seq seq{static_cast<std::uint32_t>(point_seed), static_cast<std::uint32_t>(point_seed >> 32),
	                  static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
	return Rng(seq);
}

std::vector<double> SnrRange(double first, double last, double step) {
	std::vector<double> out;
	for (int i = 0; first + i * step <= last + 1e-9; ++i)
		out.push_back(first + i * step);
	return out;
}

}  // namespace

void SimConfig::Validate() const {
	if (snr_db.empty() || schemes.empty() || families.empty() || wavelets.empty() || coded.empty() || users.empty())
		throw std::invalid_argument("every sweep axis needs at least one value");
	if (stop.min_bit_errors < 1)
		throw std::invalid_argument("min_bit_errors must be at least 1");
	if (stop.trial_bits_per_user < 1)
		throw std::invalid_argument("trial size must be at least one bit per user");
	const auto most_users = *std::max_element(users.begin(), users.end());
	if (stop.max_info_bits < most_users)
		throw std::invalid_argument("max_info_bits must cover at least one bit per user");
}

SimConfig Preset(std::string_view name) {
	SimConfig config;
	config.name = std::string(name);
	config.families = {CodeFamily::WalshHadamard, CodeFamily::OrthogonalGold, CodeFamily::GolayComplementary};
	config.wavelets = {WaveletFamily::Haar};
	config.coded = {false, true};
	config.users = {7};
	config.snr_db = SnrRange(0.0, 20.0, 1.0);
	if (name == "fig2") {
		config.schemes = {Modulation::Bpsk};
	} else if (name == "fig3") {
		config.schemes = {Modulation::Dbpsk};
	} else if (name == "fig4") {
		config.schemes = {Modulation::Qpsk};
	} else if (name == "fig5") {
		config.schemes = {Modulation::Dqpsk};
	} else if (name == "fig6" || name == "fig7") {
		config.schemes = {Modulation::Bpsk};
		config.snr_db = {name == "fig6" ? -10.0 : 0.0};
		config.users = {1, 2, 3, 4, 5, 6, 7};
	} else {
		throw std::invalid_argument("unknown preset: " + std::string(name));
	}
	return config;
}

LinkConfig MakeLinkConfig(const PointConfig& point, const LinkSettings& settings) {
	LinkConfig config{
		.num_users = point.users,
		.spreading = MakeSpreadingMatrix(point.family, settings.spreading_factor),
		.wavelet = {point.wavelet, settings.block_size, settings.levels},
		.scheme = point.scheme,
		.coded = point.coded,
		.snr_db = point.snr_db,
		.normalization = settings.normalization,
	};
	config.Validate();
	return config;
}

std::uint64_t PointSeed(std::uint64_t master_seed, const PointConfig& point, const LinkSettings& settings) {
	std::uint64_t h = SplitMix64(master_seed);
	for (std::uint64_t field : {std::bit_cast<std::uint64_t>(point.snr_db), std::uint64_t(point.scheme),
	                            std::uint64_t(point.family), std::uint64_t(point.wavelet), std::uint64_t(point.coded),
	                            std::uint64_t(point.users), std::uint64_t(settings.spreading_factor),
	                            std::uint64_t(settings.block_size), std::uint64_t(settings.levels),
	                            std::uint64_t(settings.normalization)})
		h = SplitMix64(h ^ field);
	return h;
}

BerRecord RunPoint(const PointConfig& point, const LinkSettings& settings, const StopRule& stop, std::uint64_t seed) {
	const auto start = std::chrono::steady_clock::now();
	const auto link = MakeLinkConfig(point, settings);

	BerRecord record{.point = point, .seed = seed};
	std::vector<std::vector<std::uint8_t>> bits(point.users);
	for (std::uint64_t trial = 0; record.bit_errors < stop.min_bit_errors && record.bits_sent < stop.max_info_bits;
	     ++trial) {
		const auto per_user =
			std::min<std::uint64_t>(stop.trial_bits_per_user, (stop.max_info_bits - record.bits_sent) / point.users);
		if (per_user == 0)
			break;
		auto rng = TrialRng(seed, trial);
		for (auto& user_bits : bits) {
			user_bits.resize(per_user);
			std::uint64_t word = 0;
			for (std::size_t i = 0; i < per_user; ++i) {
				if (i % 64 == 0)
					word = rng();
				user_bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
			}
		}
		const auto result = RunLinkOnce(bits, link, rng);
		record.bits_sent += result.info_bits;
		record.bit_errors += result.bit_errors;
	}
	record.ber = record.bits_sent ? static_cast<double>(record.bit_errors) / static_cast<double>(record.bits_sent) : 0.0;
	record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	return record;
}

bool CanonicalLess(const PointConfig& a, const PointConfig& b) {
	return std::tie(a.scheme, a.family, a.wavelet, a.coded, a.users, a.snr_db) <
	       std::tie(b.scheme, b.family, b.wavelet, b.coded, b.users, b.snr_db);
}

std::vector<BerRecord> RunSweep(const SimConfig& config) {
	config.Validate();
	std::vector<PointConfig> points;
	for (auto scheme : config.schemes)
		for (auto family : config.families)
			for (auto wavelet : config.wavelets)
				for (bool coded : config.coded)
					for (auto users : config.users)
						for (double snr : config.snr_db)
							points.push_back({snr, scheme, family, wavelet, coded, users});

	std::sort(points.begin(), points.end(), CanonicalLess);
	points.erase(std::unique(points.begin(), points.end()), points.end());
	// Reject bad coordinates (e.g. unsupported Gold degree) before any work starts.
	for (const auto& p : points)
		MakeLinkConfig(p, config.link);

	std::vector<BerRecord> records(points.size());
	std::atomic<std::size_t> next{0};
	std::exception_ptr failure;
	std::mutex failure_mutex;
	auto worker = [&] {
		for (auto i = next++; i < points.size(); i = next++) {
			try {
				records[i] = RunPoint(points[i], config.link, config.stop,
				                      PointSeed(config.master_seed, points[i], config.link));
			} catch (...) {
				std::lock_guard lock(failure_mutex);
				if (!failure)
					failure = std::current_exception();
			}
		}
	};

	const auto threads = std::max(1u, config.threads);
	if (threads == 1) {
		worker();
	} else {
		std::vector<std::jthread> pool;
		for (unsigned t = 0; t < threads; ++t)
			pool.emplace_back(worker);
	}
	if (failure)
		std::rethrow_exception(failure);
	return records;
}

}  // namespace mccdma
