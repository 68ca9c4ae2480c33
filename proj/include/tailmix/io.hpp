#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tailmix/levy.hpp"
#include "tailmix/mcmc.hpp"

namespace tailmix {

inline constexpr int kFormatVersion = 1;

// shortest-round-trip decimal, 17 significant digits
std::string format_double(double v);

// Datasets: one decimal literal per line, lossless round trip.
void write_dataset(const std::filesystem::path& path, std::span<const double> data);
std::vector<double> read_dataset(const std::filesystem::path& path);

// FNV-1a over the serialized text; chain sidecars carry this so a chain can
// be matched to its data.
std::uint64_t dataset_digest(std::span<const double> data);

// Discrete measures: header lines with format version and truncation error,
// then weight plus location columns.
void write_measure(const std::filesystem::path& path, const DiscreteMeasure<double>& m);
void write_measure(const std::filesystem::path& path,
                   const DiscreteMeasure<std::array<double, 2>>& m);
DiscreteMeasure<double> read_measure_1d(const std::filesystem::path& path);
DiscreteMeasure<std::array<double, 2>> read_measure_2d(const std::filesystem::path& path);

struct ResultRow {
  std::string experiment_id;
  std::uint64_t n = 0;
  std::uint64_t replicate = 0;
  std::uint64_t seed = 0;
  std::string statistic;
  double value = 0.0;
  bool defined = true;
};

// CSV with a header row and a leading "# format_version=..." comment line.
// Identifier fields must stay free of commas, quotes and newlines; writing
// rejects anything else, so the reader can split on commas.
void write_result_csv(const std::filesystem::path& path, std::span<const ResultRow> rows);
std::vector<ResultRow> read_result_csv(const std::filesystem::path& path);

// Chain output: columnar text (iteration, alpha1, w1, secondary exponent
// columns) next to a JSON sidecar with config echo, seed, acceptance rates
// and the data digest.
void write_chain(const std::filesystem::path& out_dir, const std::string& stem,
                 const McmcChain& chain);

}  // namespace tailmix
