#include "rtm/dataset.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rtm {

void DatasetSpec::validate() const {
  if (n_bits < 1 || n_bits > 24) {
    throw std::invalid_argument("DatasetSpec: n_bits outside [1, 24]");
  }
  if (n_train < 1 || n_test < 1) {
    throw std::invalid_argument("DatasetSpec: n_train and n_test must be >= 1");
  }
  if (noise_sigma < 0.0) {
    throw std::invalid_argument("DatasetSpec: noise_sigma must be >= 0");
  }
  if (!noisy && noise_sigma != 0.0) {
    throw std::invalid_argument("DatasetSpec: noise_sigma must be 0 when noisy is false");
  }
}

DatasetSpec standard_dataset(int id) {
  if (id < 1 || id > 6) {
    throw std::invalid_argument("standard_dataset: id outside [1, 6]");
  }
  DatasetSpec spec;
  spec.n_bits = 2 + (id - 1) / 2;
  spec.noisy = id % 2 == 0;
  spec.noise_sigma = spec.noisy ? kDefaultNoiseSigma : 0.0;
  return spec;
}

double clean_target(const BitVector& x) {
  std::int64_t decimal = 0;
  for (Bit b : x) decimal = 2 * decimal + b;
  return 100.0 * static_cast<double>(decimal);
}

namespace {

RegressionSample draw_sample(int n_bits, double sigma, Rng& rng) {
  RegressionSample s;
  s.x.resize(n_bits);
  for (int k = 0; k < n_bits; ++k) s.x[k] = rng.bernoulli(0.5) ? 1 : 0;
  s.target = clean_target(s.x);
  if (sigma > 0.0) s.target += rng.normal(0.0, sigma);
  return s;
}

}  // namespace

std::pair<Dataset, Dataset> generate(const DatasetSpec& spec, Rng& rng) {
  spec.validate();
  const Normalizer norm = theoretical_range(spec.n_bits);
  Dataset train{{}, norm, spec.n_bits};
  Dataset test{{}, norm, spec.n_bits};
  train.samples.reserve(spec.n_train);
  test.samples.reserve(spec.n_test);
  const double train_sigma = spec.noisy ? spec.noise_sigma : 0.0;
  for (int i = 0; i < spec.n_train; ++i) {
    train.samples.push_back(draw_sample(spec.n_bits, train_sigma, rng));
  }
  for (int i = 0; i < spec.n_test; ++i) {
    test.samples.push_back(draw_sample(spec.n_bits, 0.0, rng));
  }
  return {std::move(train), std::move(test)};
}

Dataset normalize(const Dataset& ds) {
  Dataset out = ds;
  for (auto& s : out.samples) s.target = ds.norm.normalize(s.target);
  return out;
}

double denormalize(double y_norm, const Normalizer& norm) {
  return norm.denormalize(y_norm);
}

void write_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  for (int k = 0; k < ds.n_bits; ++k) out << 'x' << (k + 1) << ',';
  out << "y\n";
  char buf[64];
  for (const auto& s : ds.samples) {
    for (Bit b : s.x) out << (b ? "1," : "0,");
    std::snprintf(buf, sizeof buf, "%.17g", s.target);
    out << buf << '\n';
  }
  if (!out) throw std::runtime_error("write_csv: write to " + path + " failed");
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

Dataset read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) parse_fail(path, 1, "empty file, expected header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_fields(line);
  if (header.size() < 2 || header.back() != "y") {
    parse_fail(path, 1, "expected header x1,...,xo,y");
  }
  const int n_bits = static_cast<int>(header.size()) - 1;
  for (int k = 0; k < n_bits; ++k) {
    if (header[k] != "x" + std::to_string(k + 1)) {
      parse_fail(path, 1, "expected column x" + std::to_string(k + 1) +
                              ", got '" + header[k] + "'");
    }
  }

  Dataset ds{{}, theoretical_range(n_bits), n_bits};
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (static_cast<int>(fields.size()) != n_bits + 1) {
      parse_fail(path, line_no,
                 "expected " + std::to_string(n_bits + 1) + " fields, got " +
                     std::to_string(fields.size()));
    }
    RegressionSample s;
    s.x.resize(n_bits);
    for (int k = 0; k < n_bits; ++k) {
      if (fields[k] == "0") {
        s.x[k] = 0;
      } else if (fields[k] == "1") {
        s.x[k] = 1;
      } else {
        parse_fail(path, line_no, "feature x" + std::to_string(k + 1) +
                                      " is not 0 or 1: '" + fields[k] + "'");
      }
    }
    char* end = nullptr;
    s.target = std::strtod(fields[n_bits].c_str(), &end);
    if (end == fields[n_bits].c_str() || *end != '\0') {
      parse_fail(path, line_no, "malformed target '" + fields[n_bits] + "'");
    }
    ds.samples.push_back(std::move(s));
  }
  if (ds.samples.empty()) parse_fail(path, line_no, "no data rows");
  return ds;
}

}  // namespace rtm
