#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "deptol/tolerance.hpp"

namespace deptol {

// Raised on malformed CSV or model files; message names the offending spot.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Numeric CSV with an optional header row (auto-detected: a first row with
// any non-numeric field is treated as a header and skipped).
Dataset read_csv(std::istream& in, const std::string& origin = "<input>");
Dataset read_csv_file(const std::string& path);

// Shortest round-trip float formatting (for CSV output).
std::string format_double_shortest(double v);
// Fixed 17-significant-digit formatting (for model files).
std::string format_double_17(double v);
// Fixed significant-digit formatting.
std::string format_double_sig(double v, int digits);

// Persisted fitted region. Serialization is canonical: fixed key order,
// 17-significant-digit floats, so save(load(file)) is byte-identical.
struct ModelFile {
  std::string format_version = "1";
  ToleranceRegion region;
  std::uint64_t seed = 0;  // provenance only
};

std::string serialize_model(const ModelFile& model);
ModelFile parse_model(const std::string& text);

void save_model(const ModelFile& model, const std::string& path);
// Parses, then revalidates the stored threshold against the reference
// sample (exact for simplicial counts, 1e-12 for mahalanobis).
ModelFile load_model(const std::string& path);

}  // namespace deptol
