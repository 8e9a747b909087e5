#include "mccdma/results_io.hpp"
#include "mccdma/sim.hpp"
#include "mccdma/theory.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mccdma;

namespace {

std::vector<std::string> Lines(const std::string& text) {
	std::vector<std::string> out;
	std::istringstream in(text);
	for (std::string line; std::getline(in, line);)
		out.push_back(line);
	return out;
}

std::size_t Columns(const std::string& line) {
	std::istringstream in(line);
	std::size_t n = 0;
	for (std::string tok; in >> tok;)
		++n;
	return n;
}

SimConfig Quick(SimConfig c, std::uint64_t max_bits) {
	c.stop.max_info_bits = max_bits;
	c.stop.min_bit_errors = 20;
	return c;
}

}  // namespace

TEST_CASE("run_point") {
	const LinkSettings settings;
	SUBCASE("noise-free point reports zero errors at the bit budget") {
		const StopRule stop{.min_bit_errors = 100, .max_info_bits = 20000};
		const PointConfig p{.snr_db = 200.0, .coded = true};
		const auto r = RunPoint(p, settings, stop, 1);
		CHECK(r.bit_errors == 0);
		CHECK(r.ber == 0.0);
		CHECK(r.bits_sent <= stop.max_info_bits);
		CHECK(r.bits_sent > stop.max_info_bits - p.users);
		CHECK(r.censored(stop));
	}
	SUBCASE("same seed, same record") {
		const StopRule stop{.min_bit_errors = 50};
		const PointConfig p{.snr_db = 3.0, .scheme = Modulation::Dqpsk, .family = CodeFamily::OrthogonalGold};
		const auto a = RunPoint(p, settings, stop, 99);
		const auto b = RunPoint(p, settings, stop, 99);
		CHECK(a.bits_sent == b.bits_sent);
		CHECK(a.bit_errors == b.bit_errors);
		CHECK(a.ber == b.ber);
	}
	SUBCASE("uncoded BPSK at 4 dB is within 15% of Q(sqrt(2 Eb/N0))") {
		const StopRule stop{.min_bit_errors = 1000};
		const auto r = RunPoint({.snr_db = 4.0}, settings, stop, 5);
		CHECK(r.bit_errors >= 1000);
		CHECK(std::abs(r.ber / TheoreticalBer(Modulation::Bpsk, 4.0) - 1.0) < 0.15);
		CHECK_FALSE(r.censored(stop));
	}
	SUBCASE("invalid points rejected") {
		CHECK_THROWS_AS(RunPoint({.family = CodeFamily::OrthogonalGold}, {.spreading_factor = 16}, {}, 1),
		                std::invalid_argument);
		CHECK_THROWS_AS(RunPoint({.users = 9}, settings, {}, 1), std::invalid_argument);
	}
}

TEST_CASE("point seeds depend on coordinates only") {
	const LinkSettings s;
	const PointConfig p{.snr_db = 5.0};
	CHECK(PointSeed(1, p, s) == PointSeed(1, p, s));
	CHECK(PointSeed(1, p, s) != PointSeed(2, p, s));
	auto q = p;
	q.coded = true;
	CHECK(PointSeed(1, p, s) != PointSeed(1, q, s));
}

TEST_CASE("run_sweep grids") {
	SUBCASE("fig2 analogue has 126 points") {
		const auto records = RunSweep(Quick(Preset("fig2"), 200));
		CHECK(records.size() == 126);
		CHECK(std::is_sorted(records.begin(), records.end(),
		                     [](const BerRecord& a, const BerRecord& b) { return CanonicalLess(a.point, b.point); }));
	}
	SUBCASE("fig6 analogue has 42 points") {
		const auto c = Preset("fig6");
		CHECK(c.snr_db == std::vector<double>{-10.0});
		CHECK(RunSweep(Quick(c, 200)).size() == 42);
	}
	SUBCASE("axis order and thread count do not change any record") {
		auto a = Quick(Preset("fig4"), 3000);
		a.snr_db = {0, 3, 6};
		auto b = a;
		std::reverse(b.snr_db.begin(), b.snr_db.end());
		std::reverse(b.families.begin(), b.families.end());
		b.coded = {true, false};
		b.threads = 3;
		const auto ra = RunSweep(a);
		const auto rb = RunSweep(b);
		REQUIRE(ra.size() == rb.size());
		for (std::size_t i = 0; i < ra.size(); ++i) {
			CHECK(ra[i].point == rb[i].point);
			CHECK(ra[i].bit_errors == rb[i].bit_errors);
			CHECK(ra[i].bits_sent == rb[i].bits_sent);
			CHECK(ra[i].seed == rb[i].seed);
		}
	}
	SUBCASE("empty axes and unknown presets rejected") {
		auto c = Preset("fig3");
		c.wavelets.clear();
		CHECK_THROWS_AS(RunSweep(c), std::invalid_argument);
		CHECK_THROWS_AS(Preset("fig9"), std::invalid_argument);
		auto d = Preset("fig2");
		d.stop.min_bit_errors = 0;
		CHECK_THROWS_AS(RunSweep(d), std::invalid_argument);
	}
}

TEST_CASE("write_outputs") {
	SUBCASE("empty record list gives a header-only CSV") {
		std::ostringstream out;
		WriteResultsCsv(out, {});
		CHECK(out.str() == std::string(kCsvHeader) + "\n");
	}
	SUBCASE("CSV round trip") {
		auto c = Quick(Preset("fig7"), 5000);
		c.wavelets = {WaveletFamily::Biorthogonal22};
		auto records = RunSweep(c);
		records.front().point.snr_db = -2.75;
		records.front().ber = 1.0 / 3.0;
		std::stringstream buf;
		WriteResultsCsv(buf, records);
		const auto parsed = ParseResultsCsv(buf);
		REQUIRE(parsed.size() == records.size());
		for (std::size_t i = 0; i < parsed.size(); ++i) {
			CHECK(parsed[i].point == records[i].point);
			CHECK(parsed[i].bits_sent == records[i].bits_sent);
			CHECK(parsed[i].bit_errors == records[i].bit_errors);
			CHECK(parsed[i].ber == records[i].ber);
			CHECK(parsed[i].seed == records[i].seed);
		}
		std::istringstream bad("snr,scheme\n");
		CHECK_THROWS_AS(ParseResultsCsv(bad), std::invalid_argument);
	}
	SUBCASE("fig2 plot file: 21 rows, snr + 6 curves") {
		const auto records = RunSweep(Quick(Preset("fig2"), 200));
		std::ostringstream out;
		WritePlotData(out, records);
		const auto lines = Lines(out.str());
		REQUIRE(lines.size() == 22);
		CHECK(lines[0].starts_with("# snr_db "));
		CHECK(Columns(lines[0]) == 8);  // '#' + 7 names
		for (std::size_t i = 1; i < lines.size(); ++i)
			CHECK(Columns(lines[i]) == 7);
	}
	SUBCASE("fig6 plot file is indexed by user count") {
		const auto records = RunSweep(Quick(Preset("fig6"), 200));
		std::ostringstream out;
		WritePlotData(out, records);
		const auto lines = Lines(out.str());
		REQUIRE(lines.size() == 8);
		CHECK(lines[0].starts_with("# users "));
		CHECK(lines[1].starts_with("1 "));
	}
	SUBCASE("files on disk") {
		const auto dir = std::filesystem::temp_directory_path() / "mccdma_write_outputs_test";
		std::filesystem::remove_all(dir);
		auto c = Quick(Preset("fig7"), 300);
		const auto records = RunSweep(c);
		WriteOutputs(records, c, dir);
		CHECK(std::filesystem::exists(dir / "results.csv"));
		CHECK(std::filesystem::exists(dir / "fig7.dat"));
		std::ifstream manifest(dir / "manifest.txt");
		std::stringstream text;
		text << manifest.rdbuf();
		CHECK(text.str().find("master_seed: 1") != std::string::npos);
		CHECK(text.str().find("artifact_version: ") != std::string::npos);
		std::filesystem::remove_all(dir);
	}
	SUBCASE("unwritable directory surfaces the path") {
		CHECK_THROWS_WITH_AS(WriteOutputs({}, Preset("fig2"), "/proc/definitely/not/here"),
		                     doctest::Contains("/proc/definitely/not/here"), OutputError);
	}
}
