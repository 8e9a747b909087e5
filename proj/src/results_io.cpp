#include "mccdma/results_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace mccdma {

namespace {

std::string FormatDouble(double v) {
	char buf[64];
	const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
	return std::string(buf, end);
}

template <typename T>
T ParseNumber(std::string_view field, std::string_view name) {
	T value{};
	const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
	if (ec != std::errc{} || ptr != field.data() + field.size())
		throw std::invalid_argument("bad " + std::string(name) + " field: '" + std::string(field) + "'");
	return value;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
	std::vector<std::string_view> fields;
	std::size_t pos = 0;
	while (true) {
		const auto comma = line.find(',', pos);
		fields.push_back(line.substr(pos, comma - pos));
		if (comma == std::string_view::npos)
			break;
		pos = comma + 1;
	}
	return fields;
}

std::string CurveLabel(const PointConfig& p, bool include_users) {
	std::string label = std::string(ToString(p.scheme)) + "/" + std::string(ToString(p.family)) + "/" +
	                    std::string(ToString(p.wavelet)) + "/" + (p.coded ? "coded" : "uncoded");
	if (include_users)
		label += "/u" + std::to_string(p.users);
	return label;
}

template <typename Fn>
void WriteFile(const std::filesystem::path& path, Fn&& writer) {
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw OutputError("cannot open " + path.string() + " for writing");
	writer(out);
	out.flush();
	if (!out)
		throw OutputError("failed writing " + path.string());
}

}  // namespace

void WriteResultsCsv(std::ostream& out, std::span<const BerRecord> records) {
	out << kCsvHeader << '\n';
	for (const auto& r : records) {
		const auto& p = r.point;
		out << FormatDouble(p.snr_db) << ',' << ToString(p.scheme) << ',' << ToString(p.family) << ','
		    << ToString(p.wavelet) << ',' << (p.coded ? 1 : 0) << ',' << p.users << ',' << r.bits_sent << ','
		    << r.bit_errors << ',' << FormatDouble(r.ber) << ',' << r.seed << '\n';
	}
}

std::vector<BerRecord> ParseResultsCsv(std::istream& in) {
	std::string line;
	if (!std::getline(in, line) || line != kCsvHeader)
		throw std::invalid_argument("results CSV header mismatch");
	std::vector<BerRecord> records;
	while (std::getline(in, line)) {
		if (line.empty())
			continue;
		const auto f = SplitFields(line);
		if (f.size() != 10)
			throw std::invalid_argument("results CSV row has " + std::to_string(f.size()) + " fields: " + line);
		BerRecord r;
		r.point.snr_db = ParseNumber<double>(f[0], "snr_db");
		r.point.scheme = ParseModulation(f[1]);
		r.point.family = ParseCodeFamily(f[2]);
		r.point.wavelet = ParseWaveletFamily(f[3]);
		const auto coded = ParseNumber<int>(f[4], "coded");
		if (coded != 0 && coded != 1)
			throw std::invalid_argument("coded field must be 0 or 1");
		r.point.coded = coded == 1;
		r.point.users = ParseNumber<std::size_t>(f[5], "users");
		r.bits_sent = ParseNumber<std::uint64_t>(f[6], "bits_sent");
		r.bit_errors = ParseNumber<std::uint64_t>(f[7], "bit_errors");
		r.ber = ParseNumber<double>(f[8], "ber");
		r.seed = ParseNumber<std::uint64_t>(f[9], "seed");
		records.push_back(r);
	}
	return records;
}

void WritePlotData(std::ostream& out, std::span<const BerRecord> records) {
	std::set<double> snrs;
	std::set<std::size_t> user_counts;
	for (const auto& r : records) {
		snrs.insert(r.point.snr_db);
		user_counts.insert(r.point.users);
	}
	const bool by_users = snrs.size() == 1 && user_counts.size() > 1;

	// curve label -> (x -> ber), curves in canonical record order
	std::vector<std::string> labels;
	std::map<std::string, std::map<double, double>> curves;
	std::set<double> xs;
	for (const auto& r : records) {
		const auto label = CurveLabel(r.point, !by_users && user_counts.size() > 1);
		if (!curves.contains(label))
			labels.push_back(label);
		const double x = by_users ? static_cast<double>(r.point.users) : r.point.snr_db;
		curves[label][x] = r.ber;
		xs.insert(x);
	}

	out << "# " << (by_users ? "users" : "snr_db");
	for (const auto& l : labels)
		out << ' ' << l;
	out << '\n';
	for (double x : xs) {
		out << FormatDouble(x);
		for (const auto& l : labels) {
			const auto& curve = curves[l];
			const auto it = curve.find(x);
			out << ' ' << (it == curve.end() ? std::string("nan") : FormatDouble(it->second));
		}
		out << '\n';
	}
}

void WriteManifest(std::ostream& out, const SimConfig& config) {
	auto join = [&out](const auto& values, auto&& fmt) {
		for (std::size_t i = 0; i < values.size(); ++i)
			out << (i ? "," : "") << fmt(values[i]);
		out << '\n';
	};
	out << "artifact_version: " << kArtifactVersion << '\n';
	out << "master_seed: " << config.master_seed << '\n';
	out << "preset: " << (config.name.empty() ? "none" : config.name) << '\n';
	out << "snr_db: ";
	join(config.snr_db, [](double v) { return FormatDouble(v); });
	out << "schemes: ";
	join(config.schemes, [](Modulation m) { return ToString(m); });
	out << "families: ";
	join(config.families, [](CodeFamily f) { return ToString(f); });
	out << "wavelets: ";
	join(config.wavelets, [](WaveletFamily w) { return ToString(w); });
	out << "coded: ";
	join(config.coded, [](bool c) { return c ? "1" : "0"; });
	out << "users: ";
	join(config.users, [](std::size_t u) { return u; });
	out << "spreading_factor: " << config.link.spreading_factor << '\n';
	out << "block_size: " << config.link.block_size << '\n';
	out << "levels: " << config.link.levels << '\n';
	out << "normalization: "
	    << (config.link.normalization == PowerNormalization::TotalPower ? "total-power" : "per-user") << '\n';
	out << "min_bit_errors: " << config.stop.min_bit_errors << '\n';
	out << "max_info_bits: " << config.stop.max_info_bits << '\n';
	out << "trial_bits_per_user: " << config.stop.trial_bits_per_user << '\n';
}

void WriteOutputs(std::span<const BerRecord> records, const SimConfig& config, const std::filesystem::path& out_dir) {
	std::error_code ec;
	std::filesystem::create_directories(out_dir, ec);
	if (ec)
		throw OutputError("cannot create " + out_dir.string() + ": " + ec.message());
	WriteFile(out_dir / "results.csv", [&](std::ostream& o) { WriteResultsCsv(o, records); });
	const auto plot_name = (config.name.empty() ? std::string("sweep") : config.name) + ".dat";
	WriteFile(out_dir / plot_name, [&](std::ostream& o) { WritePlotData(o, records); });
	WriteFile(out_dir / "manifest.txt", [&](std::ostream& o) { WriteManifest(o, config); });
}

}  // namespace mccdma
