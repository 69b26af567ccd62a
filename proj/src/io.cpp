#include "hypertrace/io.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hypertrace/geodesic_cycles.hpp"
#include "json.hpp"

namespace hypertrace {

using nlohmann::json;

namespace {

Matrix matrix_from_json(const json& j, const std::string& label) {
  if (!j.is_array() || j.empty()) throw InvalidInput("generator '" + label + "': matrix must be a nonempty array");
  const std::size_t rows = j.size();
  Matrix m(rows, rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != rows)
      throw InvalidInput("generator '" + label + "': matrix must be square");
    for (std::size_t k = 0; k < rows; ++k) {
      if (!j[i][k].is_number()) throw InvalidInput("generator '" + label + "': non-numeric entry");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
    }
  }
  return m;
}

}  // namespace

GeneratorSet parse_generators(const std::string& json_text, double tol) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("generator file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("d") || !doc["d"].is_number_integer())
    throw InvalidInput("generator file needs an integer field \"d\"");
  if (!doc.contains("generators") || !doc["generators"].is_array())
    throw InvalidInput("generator file needs a \"generators\" array");
  const int d = doc["d"].get<int>();
  std::vector<std::string> labels;
  std::vector<Matrix> mats;
  for (const auto& g : doc["generators"]) {
    if (!g.contains("label") || !g["label"].is_string())
      throw InvalidInput("every generator needs a string \"label\"");
    const std::string label = g["label"].get<std::string>();
    if (!g.contains("matrix")) throw InvalidInput("generator '" + label + "' has no matrix");
    labels.push_back(label);
    mats.push_back(matrix_from_json(g["matrix"], label));
  }
  const bool inv = doc.value("includes_inverses", false);
  return GeneratorSet(d, std::move(labels), mats, inv, tol);
}

GeneratorSet load_generators(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open generator file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_generators(ss.str(), tol);
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  // shortest representation that reads back to the same double
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv_header_comments(std::ostream& os,
                               const std::vector<std::pair<std::string, std::string>>& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << '=' << v << '\n';
}

void write_orbit_csv(std::ostream& os, const OrbitTable& table) {
  os << "word,len,M,N,Q,delta,coset_id\n";
  for (const auto& e : table.entries)
    os << e.word << ',' << e.length << ',' << format_double(e.M) << ',' << format_double(e.N) << ','
       << format_double(e.Q) << ',' << format_double(e.delta) << ',' << e.coset_id << '\n';
}

void write_delta_csv(std::ostream& os, const OrbitTable& table) {
  os << "word,word_length,M,N_u,Q_u,delta_u,dist\n";
  for (const auto& e : table.entries)
    os << e.word << ',' << e.length << ',' << format_double(e.M) << ',' << format_double(e.N) << ','
       << format_double(e.Q) << ',' << format_double(e.delta) << ','
       << format_double(cycle_distance(e.delta)) << '\n';
}

void write_counting_csv(std::ostream& os, const CountingResult& res) {
  os << "x,count\n";
  for (std::size_t i = 0; i < res.x.size(); ++i)
    os << format_double(res.x[i]) << ',' << res.count[i] << '\n';
}

void write_limit_csv(std::ostream& os, const std::vector<LimitRow>& rows) {
  os << "mu,value_log,sign,envelope_log\n";
  for (const auto& r : rows)
    os << format_double(r.mu) << ',' << format_double(r.value_log) << ',' << r.sign << ','
       << format_double(r.envelope_log) << '\n';
}

}  // namespace hypertrace
