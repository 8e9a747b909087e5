// Command-line driver: spreading-code inspection, FEC verification and BER sweeps.

#include "mccdma/fec.hpp"
#include "mccdma/results_io.hpp"
#include "mccdma/sim.hpp"
#include "mccdma/spreading.hpp"
#include "mccdma/verify.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <iostream>
#include <thread>

using namespace mccdma;

namespace {

double ToDouble(const std::string& text) {
	double v{};
	const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
	if (ec != std::errc{} || ptr != text.data() + text.size())
		throw CLI::ValidationError("not a number: " + text);
	return v;
}

// "a:b:step", "a:b" (step 1) or a single value
std::vector<double> ParseRange(const std::string& text) {
	std::vector<std::string> parts;
	std::size_t pos = 0;
	while (true) {
		const auto colon = text.find(':', pos);
		parts.push_back(text.substr(pos, colon - pos));
		if (colon == std::string::npos)
			break;
		pos = colon + 1;
	}
	if (parts.size() == 1)
		return {ToDouble(parts[0])};
	if (parts.size() > 3)
		throw CLI::ValidationError("range must be a:b or a:b:step");
	const double first = ToDouble(parts[0]);
	const double last = ToDouble(parts[1]);
	const double step = parts.size() == 3 ? ToDouble(parts[2]) : 1.0;
	if (!(step > 0) || last < first)
		throw CLI::ValidationError("range needs step > 0 and a <= b");
	std::vector<double> out;
	for (int i = 0; first + i * step <= last + 1e-9; ++i)
		out.push_back(first + i * step);
	return out;
}

struct SweepOptions {
	std::string preset;
	std::vector<std::string> snr;
	std::vector<std::string> schemes;
	std::vector<std::string> families;
	std::vector<std::string> wavelets;
	std::string coded;
	std::vector<std::string> users;
	std::size_t sf = 8;
	unsigned levels = 8;
	std::uint64_t seed = 1;
	std::uint64_t min_errors = 100;
	std::uint64_t max_bits = 10'000'000;
	std::string out = "results";
	bool total_power = false;
	unsigned threads = 1;
	bool quiet = false;
};

SimConfig BuildSimConfig(const SweepOptions& o) {
	SimConfig config;
	if (!o.preset.empty()) {
		config = Preset(o.preset);
	} else {
		config.snr_db = ParseRange("0:20:1");
		config.schemes = {Modulation::Bpsk};
		config.families = {CodeFamily::WalshHadamard, CodeFamily::OrthogonalGold, CodeFamily::GolayComplementary};
		config.wavelets = {WaveletFamily::Haar};
		config.coded = {false, true};
		config.users = {7};
	}
	if (!o.snr.empty()) {
		config.snr_db.clear();
		for (const auto& s : o.snr)
			for (double v : ParseRange(s))
				config.snr_db.push_back(v);
	}
	if (!o.schemes.empty()) {
		config.schemes.clear();
		for (const auto& s : o.schemes)
			config.schemes.push_back(ParseModulation(s));
	}
	if (!o.families.empty()) {
		config.families.clear();
		for (const auto& s : o.families)
			config.families.push_back(ParseCodeFamily(s));
	}
	if (!o.wavelets.empty()) {
		config.wavelets.clear();
		for (const auto& s : o.wavelets)
			config.wavelets.push_back(ParseWaveletFamily(s));
	}
	if (o.coded == "both")
		config.coded = {false, true};
	else if (o.coded == "yes")
		config.coded = {true};
	else if (o.coded == "no")
		config.coded = {false};
	if (!o.users.empty()) {
		config.users.clear();
		for (const auto& s : o.users)
			for (double v : ParseRange(s)) {
				if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v)))
					throw CLI::ValidationError("user counts must be positive integers");
				config.users.push_back(static_cast<std::size_t>(v));
			}
	}
	config.link.spreading_factor = o.sf;
	config.link.levels = o.levels;
	config.link.normalization = o.total_power ? PowerNormalization::TotalPower : PowerNormalization::PerUser;
	config.stop.min_bit_errors = o.min_errors;
	config.stop.max_info_bits = o.max_bits;
	config.master_seed = o.seed;
	config.threads = o.threads;
	return config;
}

int RunCodesCheck() {
	bool all = true;
	for (const auto& c : RunSpreadingChecks()) {
		std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
		all &= c.passed;
	}
	return all ? 0 : 1;
}

int RunFecVerify() {
	const auto r = RunFecVerification();
	std::cout << "perfect-code decode: " << r.decode_cases << " cases, " << r.decode_failures << " failures\n";
	std::cout << "cyclic invariance: " << r.cyclic_cases << " shifts, " << r.cyclic_failures << " failures\n";
	std::cout << "complement invariance: " << r.complement_failures << " failures\n";
	std::cout << "(1+X) g1 g2 = X^23 + 1: " << (r.factorization_holds ? "holds" : "VIOLATED") << '\n';
	std::cout << "weight distribution:";
	for (const auto& [w, n] : r.weight_distribution)
		std::cout << ' ' << w << ':' << n;
	std::cout << "\nminimum nonzero weight: " << r.min_nonzero_weight << '\n';
	std::cout << (r.ok() ? "OK" : "FAILED") << '\n';
	return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
	CLI::App app{"DWT-based MC-CDMA link-level BER simulator"};
	app.require_subcommand(1);

	auto* codes = app.add_subcommand("codes", "Spreading code tools");
	codes->require_subcommand(1);
	std::string dump_family;
	std::size_t dump_sf = 8;
	auto* dump = codes->add_subcommand("dump", "Print a chip matrix as rows of +/-");
	dump->add_option("--family", dump_family, "wh|gold|gcs")->required()->check(CLI::IsMember({"wh", "gold", "gcs"}));
	dump->add_option("--sf", dump_sf, "Spreading factor")->required();
	auto* check = codes->add_subcommand("check", "Run all spreading-code correlation checks");

	auto* fec = app.add_subcommand("fec", "Golay (23,12) tools");
	fec->require_subcommand(1);
	auto* verify = fec->add_subcommand("verify", "Exhaustive perfect-code and invariance checks");

	SweepOptions o;
	auto* sweep = app.add_subcommand("sweep", "Monte-Carlo BER sweep");
	sweep->add_option("--preset", o.preset, "fig2..fig7")
		->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "fig6", "fig7"}));
	sweep->add_option("--snr", o.snr, "SNR list or range a:b:step (dB, Eb/N0 per info bit)")->delimiter(',');
	sweep->add_option("--scheme", o.schemes, "bpsk,qpsk,dbpsk,dqpsk")->delimiter(',');
	sweep->add_option("--family", o.families, "wh,gold,gcs")->delimiter(',');
	sweep->add_option("--wavelet", o.wavelets, "haar,db2,bior22")->delimiter(',');
	sweep->add_option("--levels", o.levels, "DWT decomposition levels")->capture_default_str();
	sweep->add_option("--coded", o.coded, "yes|no|both")->check(CLI::IsMember({"yes", "no", "both"}));
	sweep->add_option("--users", o.users, "User counts, list or range a:b")->delimiter(',');
	sweep->add_option("--sf", o.sf, "Spreading factor")->capture_default_str();
	sweep->add_option("--seed", o.seed, "Master seed")->capture_default_str();
	sweep->add_option("--min-errors", o.min_errors, "Stop after this many bit errors")->capture_default_str();
	sweep->add_option("--max-bits", o.max_bits, "Information-bit budget per point")->capture_default_str();
	sweep->add_option("--out", o.out, "Output directory")->capture_default_str();
	sweep->add_flag("--total-power", o.total_power, "Hold total transmit power fixed as users are added");
	sweep->add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)")->capture_default_str();
	sweep->add_flag("-q,--quiet", o.quiet, "Do not print the result table");

	CLI11_PARSE(app, argc, argv);

	try {
		if (dump->parsed()) {
			std::cout << FormatChipMatrix(MakeSpreadingMatrix(ParseCodeFamily(dump_family), dump_sf));
			return 0;
		}
		if (check->parsed())
			return RunCodesCheck();
		if (verify->parsed())
			return RunFecVerify();
		if (sweep->parsed()) {
			if (o.threads == 0)
				o.threads = std::max(1u, std::thread::hardware_concurrency());
			const auto config = BuildSimConfig(o);
			const auto records = RunSweep(config);
			WriteOutputs(records, config, o.out);
			if (!o.quiet)
				WriteResultsCsv(std::cout, records);
			return 0;
		}
	} catch (const CLI::Error& e) {
		return app.exit(e);
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 2;
	}
	return 0;
}
