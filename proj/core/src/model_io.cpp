#include "deptol/model_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "deptol/constants.hpp"

namespace deptol {

namespace {

bool parse_full_double(const std::string& field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
  if (begin == end) return false;
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

Dataset read_csv(std::istream& in, const std::string& origin) {
  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool first_data_row = true;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const auto fields = split_csv_line(line);
    Vec row;
    row.reserve(fields.size());
    bool numeric = true;
    std::size_t bad_col = 0;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      double v = 0.0;
      if (!parse_full_double(fields[c], v)) {
        numeric = false;
        bad_col = c + 1;
        break;
      }
      row.push_back(v);
    }

    if (!numeric) {
      if (first_data_row && line_no == 1) continue;  // header row
      throw ParseError(origin + ": row " + std::to_string(line_no) + ", column " +
                       std::to_string(bad_col) + " is not numeric");
    }
    if (first_data_row) {
      width = row.size();
      first_data_row = false;
    } else if (row.size() != width) {
      throw ParseError(origin + ": row " + std::to_string(line_no) + " has " +
                       std::to_string(row.size()) + " columns, expected " +
                       std::to_string(width));
    }
    data.push_back(std::move(row));
  }
  if (data.empty()) throw ParseError(origin + ": no data rows");
  return data;
}

Dataset read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_csv(in, path);
}

std::string format_double_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_double_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

std::string format_double_17(double v) { return format_double_sig(v, 17); }

namespace {

void append_points(std::string& out, const Dataset& pts) {
  out += '[';
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ',';
    out += '[';
    for (std::size_t j = 0; j < pts[i].size(); ++j) {
      if (j) out += ',';
      out += format_double_17(pts[i][j]);
    }
    out += ']';
  }
  out += ']';
}

}  // namespace

std::string serialize_model(const ModelFile& model) {
  const ToleranceRegion& r = model.region;
  std::string out = "{\n";
  out += "  \"format_version\": \"" + model.format_version + "\",\n";
  out += std::string("  \"depth\": \"") + to_string(r.depth_kind) + "\",\n";
  out += std::string("  \"kind\": \"") + to_string(r.spec.kind) + "\",\n";
  out += "  \"beta\": " + format_double_17(r.spec.beta) + ",\n";
  if (r.spec.kind == ToleranceKind::kContent)
    out += "  \"gamma\": " + format_double_17(r.spec.gamma) + ",\n";
  else
    out += "  \"gamma\": null,\n";
  out += "  \"n\": " + std::to_string(r.plan.sample_size) + ",\n";
  out += "  \"r_n\": " + std::to_string(r.plan.threshold_rank) + ",\n";
  out += "  \"threshold\": " + format_double_17(r.threshold) + ",\n";
  out += "  \"seed\": " + std::to_string(model.seed) + ",\n";
  out += "  \"reference\": ";
  append_points(out, r.reference);
  out += ",\n  \"hull\": ";
  if (r.hull) {
    Dataset verts;
    verts.reserve(r.hull->vertices.size());
    for (const auto& v : r.hull->vertices) verts.push_back({v[0], v[1]});
    append_points(out, verts);
  } else {
    out += "null";
  }
  out += "\n}\n";
  return out;
}

ModelFile parse_model(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }

  ModelFile model;
  try {
    model.format_version = j.at("format_version").get<std::string>();
    if (model.format_version != "1")
      throw ParseError("unsupported model format version " + model.format_version);

    ToleranceRegion& r = model.region;
    r.depth_kind = depth_kind_from_string(j.at("depth").get<std::string>());
    r.spec.kind = tolerance_kind_from_string(j.at("kind").get<std::string>());
    r.spec.beta = j.at("beta").get<double>();
    if (!j.at("gamma").is_null()) r.spec.gamma = j.at("gamma").get<double>();
    r.plan.sample_size = j.at("n").get<std::size_t>();
    r.plan.threshold_rank = j.at("r_n").get<std::size_t>();
    r.threshold = j.at("threshold").get<double>();
    model.seed = j.at("seed").get<std::uint64_t>();
    r.reference = j.at("reference").get<Dataset>();

    if (!j.at("hull").is_null()) {
      Polygon2D hull;
      for (const auto& v : j.at("hull")) {
        if (!v.is_array() || v.size() != 2)
          throw ParseError("hull vertices must be 2-D");
        hull.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
      }
      hull.degenerate = hull.vertices.size() < 3;
      r.hull = std::move(hull);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model file is missing or mistypes a field: ") +
                     e.what());
  }

  if (model.region.reference.empty()) throw ParseError("reference sample is empty");
  dimension(model.region.reference);
  if (model.region.plan.sample_size != model.region.reference.size())
    throw ParseError("stored n disagrees with the reference sample");
  if (model.region.plan.threshold_rank < 1 ||
      model.region.plan.threshold_rank > model.region.plan.sample_size)
    throw ParseError("stored r_n is out of range");
  return model;
}

void save_model(const ModelFile& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << serialize_model(model);
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  ModelFile model = parse_model(buf.str());

  // Revalidate the stored threshold against the reference sample.
  const ToleranceRegion& r = model.region;
  const DepthOrder order = depth_order(r.reference, r.depth_kind);
  const double expect = order.depth_at_rank(r.plan.threshold_rank);
  const double slack =
      r.depth_kind == DepthKind::kMahalanobis ? tol::kThresholdRecomputeTol : 0.0;
  if (std::abs(expect - r.threshold) > slack)
    throw ParseError(path + ": stored threshold does not match the reference sample");
  return model;
}

}  // namespace deptol
