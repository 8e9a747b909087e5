#pragma once

#include "mccdma/sim.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mccdma {

inline constexpr std::string_view kCsvHeader = "snr_db,scheme,family,wavelet,coded,users,bits_sent,bit_errors,ber,seed";

class OutputError : public std::runtime_error {
	using std::runtime_error::runtime_error;
};

void WriteResultsCsv(std::ostream& out, std::span<const BerRecord> records);
/// Inverse of WriteResultsCsv; wall time is not stored and reads back as 0.
std::vector<BerRecord> ParseResultsCsv(std::istream& in);

/// Whitespace-separated table: first column is the swept axis (snr_db, or
/// users when the sweep holds a single SNR), then one BER column per curve.
/// A leading '#' line names the columns.
void WritePlotData(std::ostream& out, std::span<const BerRecord> records);

void WriteManifest(std::ostream& out, const SimConfig& config);

/// results.csv, <name>.dat (or sweep.dat) and manifest.txt under `out_dir`.
void WriteOutputs(std::span<const BerRecord> records, const SimConfig& config, const std::filesystem::path& out_dir);

}  // namespace mccdma
