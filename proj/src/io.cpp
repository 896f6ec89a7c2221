#include "chsh/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "chsh/errors.hpp"

namespace chsh {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(Invariant kind, const std::string& where, const std::string& why) {
  throw ValidationError(kind, where + ": " + why);
}

std::string type_name(const json& j) { return j.type_name(); }

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) fail(Invariant::shape, where, "expected a number, got " + type_name(j));
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(Invariant::finiteness, where, "value is not finite");
  return v;
}

std::string index_path(std::size_t i, std::size_t k) {
  return "rho[" + std::to_string(i) + "][" + std::to_string(k) + "]";
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty()) fail(Invariant::shape, name, "expected a non-empty array of rows");
  const std::size_t n = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  ComplexMatrix m(n, cols);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_name = name + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != cols)
      fail(Invariant::shape, row_name, "expected " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) {
      const json& e = j[i][k];
      const std::string where = row_name + "[" + std::to_string(k) + "]";
      if (!e.is_array() || e.size() != 2) fail(Invariant::shape, where, "expected [re, im]");
      m(i, k) = {number_at(e[0], where), number_at(e[1], where)};
    }
  }
  return m;
}

Vec3 vec_from_json(const json& j, const std::string& name) {
  if (!j.is_array() || j.size() != 3) fail(Invariant::shape, name, "expected three numbers");
  return {number_at(j[0], name), number_at(j[1], name), number_at(j[2], name)};
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(Invariant::shape, key, "missing field");
  return j.at(key);
}

}  // namespace

QubitQuditState parse_state(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(Invariant::parse, "byte " + std::to_string(e.byte), e.what());
  }
  if (!doc.is_object()) fail(Invariant::shape, "document", "expected an object with fields d and rho");
  const json& jd = field(doc, "d");
  if (!jd.is_number_integer() || jd.get<long long>() < 2)
    fail(Invariant::dimension, "d", "expected an integer >= 2, got " + jd.dump());
  const auto d = static_cast<std::size_t>(jd.get<long long>());
  const json& jr = field(doc, "rho");
  const std::size_t n = 2 * d;
  if (!jr.is_array() || jr.size() != n)
    fail(Invariant::shape, "rho", "expected " + std::to_string(n) + " rows for d = " + std::to_string(d) +
                                      ", got " + (jr.is_array() ? std::to_string(jr.size()) : type_name(jr)));
  ComplexMatrix rho(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!jr[i].is_array() || jr[i].size() != n)
      fail(Invariant::shape, "rho[" + std::to_string(i) + "]", "expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) {
      const json& e = jr[i][k];
      if (!e.is_array() || e.size() != 2) fail(Invariant::shape, index_path(i, k), "expected [re, im]");
      rho(i, k) = {number_at(e[0], index_path(i, k)), number_at(e[1], index_path(i, k))};
    }
  }
  try {
    return QubitQuditState(rho, d);
  } catch (const ValidationError& e) {
    std::string why = e.what();
    const auto colon = why.find(": ");
    if (colon != std::string::npos) why = why.substr(colon + 2);
    fail(e.kind(), "rho", why);
  }
}

QubitQuditState load_state(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Invariant::parse, path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str());
}

ordered_json state_to_json(const QubitQuditState& state) {
  ordered_json j;
  j["d"] = state.d();
  j["rho"] = matrix_to_json(state.rho().matrix());
  return j;
}

ordered_json report_to_json(const AnalysisReport& r) {
  ordered_json j;
  j["d"] = r.d;
  j["value"] = r.value;
  j["violates"] = r.violates;
  j["lower_bound"] = r.lower;
  j["upper_bound"] = r.upper;
  j["objective"] = r.objective;
  j["evaluations"] = r.evaluations;
  j["rotation"] = {{"alpha", r.rotation.alpha}, {"beta", r.rotation.beta}, {"gamma", r.rotation.gamma}};
  j["observables"] = {{"a_axis", r.a_axis},
                      {"a_prime_axis", r.a_prime_axis},
                      {"b", matrix_to_json(r.b)},
                      {"b_prime", matrix_to_json(r.b_prime)}};
  j["certificate"] = r.certificate;
  j["purity"] = r.purity;
  j["purity_threshold"] = r.purity_threshold;
  j["purity_condition"] = r.purity_condition;
  j["log_negativity"] = r.log_negativity;
  if (r.seesaw)
    j["seesaw"] = {{"value", r.seesaw->value},
                   {"iterations", r.seesaw->iterations},
                   {"starts", r.seesaw->starts},
                   {"converged", r.seesaw->converged}};
  if (r.elapsed_seconds) j["timing"] = {{"elapsed_seconds", *r.elapsed_seconds}};
  return j;
}

AnalysisReport report_from_json(const json& j) {
  AnalysisReport r;
  try {
    r.d = field(j, "d").get<std::size_t>();
    r.value = field(j, "value").get<double>();
    r.violates = field(j, "violates").get<bool>();
    r.lower = field(j, "lower_bound").get<double>();
    r.upper = field(j, "upper_bound").get<double>();
    r.objective = field(j, "objective").get<double>();
    r.evaluations = field(j, "evaluations").get<std::size_t>();
    const json& rot = field(j, "rotation");
    r.rotation = {field(rot, "alpha").get<double>(), field(rot, "beta").get<double>(),
                  field(rot, "gamma").get<double>()};
    const json& obs = field(j, "observables");
    r.a_axis = vec_from_json(field(obs, "a_axis"), "a_axis");
    r.a_prime_axis = vec_from_json(field(obs, "a_prime_axis"), "a_prime_axis");
    r.b = matrix_from_json(field(obs, "b"), "b");
    r.b_prime = matrix_from_json(field(obs, "b_prime"), "b_prime");
    r.certificate = field(j, "certificate").get<double>();
    r.purity = field(j, "purity").get<double>();
    r.purity_threshold = field(j, "purity_threshold").get<double>();
    r.purity_condition = field(j, "purity_condition").get<bool>();
    r.log_negativity = field(j, "log_negativity").get<double>();
    if (j.contains("seesaw")) {
      const json& s = j.at("seesaw");
      r.seesaw = SeesawSummary{field(s, "value").get<double>(), field(s, "iterations").get<int>(),
                               field(s, "starts").get<std::size_t>(), field(s, "converged").get<bool>()};
    }
    if (j.contains("timing")) r.elapsed_seconds = field(j.at("timing"), "elapsed_seconds").get<double>();
  } catch (const json::exception& e) {
    throw ValidationError(Invariant::shape, std::string("report: ") + e.what());
  }
  return r;
}

std::string format12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string report_to_csv(const AnalysisReport& r) {
  std::string header =
      "d,value,violates,lower_bound,upper_bound,certificate,purity,purity_threshold,purity_condition,"
      "log_negativity,alpha,beta,gamma";
  std::ostringstream row;
  row << r.d << ',' << format12(r.value) << ',' << (r.violates ? 1 : 0) << ',' << format12(r.lower) << ','
      << format12(r.upper) << ',' << format12(r.certificate) << ',' << format12(r.purity) << ','
      << format12(r.purity_threshold) << ',' << (r.purity_condition ? 1 : 0) << ','
      << format12(r.log_negativity) << ',' << format12(r.rotation.alpha) << ','
      << format12(r.rotation.beta) << ',' << format12(r.rotation.gamma);
  if (r.seesaw) {
    header += ",seesaw_value";
    row << ',' << format12(r.seesaw->value);
  }
  if (r.elapsed_seconds) {
    header += ",elapsed_seconds";
    row << ',' << format12(*r.elapsed_seconds);
  }
  return header + "\n" + row.str() + "\n";
}

std::string scan_to_csv(const ScanStatistics& s) {
  std::ostringstream out;
  out << "bin_low,bin_high,count\n";
  const double w = s.histogram.bin_width();
  for (std::size_t k = 0; k < s.histogram.counts.size(); ++k)
    out << format12(s.histogram.low + w * static_cast<double>(k)) << ','
        << format12(s.histogram.low + w * static_cast<double>(k + 1)) << ',' << s.histogram.counts[k] << '\n';
  out << "# summary d=" << s.d << " samples=" << s.n_samples << " seed=" << s.seed
      << " violations=" << s.violations << " p_violation=" << format12(s.p_violation)
      << " mean=" << format12(s.mean) << " stddev=" << format12(s.stddev)
      << " lower_rel_error_mean=" << format12(s.lower_rel_error_mean)
      << " lower_rel_error_max=" << format12(s.lower_rel_error_max)
      << " purity_condition_failures=" << s.purity_condition_failures
      << " max_certificate_error=" << format12(s.max_certificate_error) << '\n';
  return out.str();
}

}  // namespace chsh
