#include "tailmix/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tailmix {

namespace {

void require_clean_identifier(const std::string& s, const char* field) {
  if (s.empty()) throw std::invalid_argument(std::string(field) + " must not be empty");
  if (s.find_first_of(",\"\n\r") != std::string::npos)
    throw std::invalid_argument(std::string(field) + " must not contain commas, quotes or newlines");
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

double parse_double(const std::string& tok, const std::filesystem::path& path) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw std::runtime_error("malformed number '" + tok + "' in " + path.string());
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_dataset(const std::filesystem::path& path, std::span<const double> data) {
  auto out = open_out(path);
  for (double x : data) out << format_double(x) << '\n';
}

std::vector<double> read_dataset(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(parse_double(line, path));
  }
  return out;
}

std::uint64_t dataset_digest(std::span<const double> data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double x : data) {
    const std::string s = format_double(x);
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= static_cast<unsigned char>('\n');
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

template <class Loc>
void write_measure_impl(const std::filesystem::path& path, const DiscreteMeasure<Loc>& m,
                        int loc_dim) {
  auto out = open_out(path);
  out << "# format_version=" << kFormatVersion << '\n';
  out << "# truncation_error=" << format_double(m.truncation_error) << '\n';
  for (std::size_t i = 0; i < m.weights.size(); ++i) {
    out << format_double(m.weights[i]);
    if constexpr (std::is_same_v<Loc, double>) {
      out << ' ' << format_double(m.locations[i]);
    } else {
      for (int d = 0; d < loc_dim; ++d) out << ' ' << format_double(m.locations[i][d]);
    }
    out << '\n';
  }
}

struct MeasureHeader {
  double truncation_error = 0.0;
};

MeasureHeader read_measure_header(std::istream& in, const std::filesystem::path& path) {
  MeasureHeader h;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# format_version=", 0) != 0)
    throw std::runtime_error("missing format_version header in " + path.string());
  if (!std::getline(in, line) || line.rfind("# truncation_error=", 0) != 0)
    throw std::runtime_error("missing truncation_error header in " + path.string());
  h.truncation_error = parse_double(line.substr(std::strlen("# truncation_error=")), path);
  return h;
}

}  // namespace

void write_measure(const std::filesystem::path& path, const DiscreteMeasure<double>& m) {
  write_measure_impl(path, m, 1);
}

void write_measure(const std::filesystem::path& path,
                   const DiscreteMeasure<std::array<double, 2>>& m) {
  write_measure_impl(path, m, 2);
}

DiscreteMeasure<double> read_measure_1d(const std::filesystem::path& path) {
  auto in = open_in(path);
  DiscreteMeasure<double> m;
  m.truncation_error = read_measure_header(in, path).truncation_error;
  std::string w, loc;
  while (in >> w >> loc) {
    m.weights.push_back(parse_double(w, path));
    m.locations.push_back(parse_double(loc, path));
  }
  return m;
}

DiscreteMeasure<std::array<double, 2>> read_measure_2d(const std::filesystem::path& path) {
  auto in = open_in(path);
  DiscreteMeasure<std::array<double, 2>> m;
  m.truncation_error = read_measure_header(in, path).truncation_error;
  std::string w, l0, l1;
  while (in >> w >> l0 >> l1) {
    m.weights.push_back(parse_double(w, path));
    m.locations.push_back({parse_double(l0, path), parse_double(l1, path)});
  }
  return m;
}

void write_result_csv(const std::filesystem::path& path, std::span<const ResultRow> rows) {
  auto out = open_out(path);
  out << "# format_version=" << kFormatVersion << '\n';
  out << "experiment_id,n,replicate,seed,statistic,value,defined\n";
  for (const ResultRow& r : rows) {
    require_clean_identifier(r.experiment_id, "experiment_id");
    require_clean_identifier(r.statistic, "statistic");
    out << r.experiment_id << ',' << r.n << ',' << r.replicate << ',' << r.seed << ','
        << r.statistic << ',' << format_double(r.value) << ',' << (r.defined ? 1 : 0) << '\n';
  }
}

std::vector<ResultRow> read_result_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<ResultRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "experiment_id,n,replicate,seed,statistic,value,defined")
        throw std::runtime_error("unexpected CSV header in " + path.string());
      header_seen = true;
      continue;
    }
    std::stringstream ss(line);
    std::string tok;
    ResultRow r;
    std::getline(ss, r.experiment_id, ',');
    std::getline(ss, tok, ',');
    r.n = std::stoull(tok);
    std::getline(ss, tok, ',');
    r.replicate = std::stoull(tok);
    std::getline(ss, tok, ',');
    r.seed = std::stoull(tok);
    std::getline(ss, r.statistic, ',');
    std::getline(ss, tok, ',');
    r.value = parse_double(tok, path);
    if (!std::getline(ss, tok, ','))
      throw std::runtime_error("truncated CSV row in " + path.string());
    r.defined = tok == "1";
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_chain(const std::filesystem::path& out_dir, const std::string& stem,
                 const McmcChain& chain) {
  std::filesystem::create_directories(out_dir);
  const std::size_t kept = chain.alpha1.size();
  const std::size_t K = chain.config.truncation;

  {
    auto out = open_out(out_dir / (stem + ".tsv"));
    out << "# format_version=" << kFormatVersion << '\n';
    out << "iteration\talpha1\tw1";
    for (std::size_t j = 0; j < K; ++j) out << "\texponent_" << (j + 1);
    out << '\n';
    for (std::size_t i = 0; i < kept; ++i) {
      const std::uint64_t iteration = chain.config.burn_in + i * chain.config.thin;
      out << iteration << '\t' << format_double(chain.alpha1[i]) << '\t'
          << format_double(chain.w1[i]);
      for (std::size_t j = 0; j < K; ++j)
        out << '\t' << format_double(chain.secondary_exponents[i][j]);
      out << '\n';
    }
  }

  nlohmann::ordered_json side;
  side["format_version"] = kFormatVersion;
  side["seed"] = chain.config.seed;
  side["data_digest"] = chain.data_digest;
  side["data_size"] = chain.data_size;
  side["kept_states"] = kept;
  side["config"] = {
      {"n_iter", chain.config.n_iter},       {"burn_in", chain.config.burn_in},
      {"thin", chain.config.thin},           {"truncation", chain.config.truncation},
      {"leading_step", chain.config.leading_step},
      {"secondary_step", chain.config.secondary_step},
  };
  side["acceptance"] = {
      {"leading", chain.acceptance.leading},
      {"secondary", chain.acceptance.secondary},
      {"weight_fallback", chain.acceptance.weight_fallback},
  };
  auto out = open_out(out_dir / (stem + ".json"));
  out << side.dump(2) << '\n';
}

}  // namespace tailmix
