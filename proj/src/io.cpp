#include "finsler/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "finsler/error.hpp"

namespace finsler::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

int get_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) bad(std::string("expected integer field '") + key + "'");
  return j.at(key).get<int>();
}

double get_real(const Json& j) {
  if (!j.is_number()) bad("expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad("non-finite number");
  return v;
}

MetricDefinition builtin(const std::string& tag) {
  if (tag == "bg3") return {"builtin", make_bg3(), bg3_forms()};
  if (tag == "bg4") return {"builtin", make_bg4(), bg4_forms()};
  bad("unknown builtin metric '" + tag + "'");
}

Json nest(const Tensor& t, std::vector<int>& idx, int depth) {
  if (depth == t.order()) return t.at(idx);
  Json arr = Json::array();
  for (int i = 0; i < t.dim(); ++i) {
    idx[static_cast<std::size_t>(depth)] = i;
    arr.push_back(nest(t, idx, depth + 1));
  }
  return arr;
}

void unnest(const Json& j, Tensor& t, std::vector<int>& idx, int depth) {
  if (depth == t.order()) {
    t.at(idx) = get_real(j);
    return;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != t.dim()) bad("tensor data shape does not match n/order");
  for (int i = 0; i < t.dim(); ++i) {
    idx[static_cast<std::size_t>(depth)] = i;
    unnest(j[static_cast<std::size_t>(i)], t, idx, depth + 1);
  }
}

Json one_based(const std::vector<int>& idx) {
  Json arr = Json::array();
  for (int v : idx) arr.push_back(v + 1);
  return arr;
}

}  // namespace

MetricDefinition parse_metric(const Json& j) {
  if (j.is_string()) return builtin(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) bad("metric needs a string 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "builtin") {
    if (!j.contains("tag") || !j.at("tag").is_string()) bad("builtin metric needs 'tag'");
    return builtin(j.at("tag").get<std::string>());
  }
  if (kind == "linear_forms") {
    const int n = get_int(j, "n");
    if (n < 1) bad("n must be positive");
    if (!j.contains("forms") || !j.at("forms").is_array() || static_cast<int>(j.at("forms").size()) != n) {
      bad("'forms' must be an n x n array");
    }
    std::vector<std::vector<double>> rows;
    for (const auto& row : j.at("forms")) {
      if (!row.is_array() || static_cast<int>(row.size()) != n) bad("'forms' must be an n x n array");
      std::vector<double> r;
      for (const auto& v : row) r.push_back(get_real(v));
      rows.push_back(std::move(r));
    }
    LinearFormsMetric forms = make_product_metric(rows);
    return {"linear_forms", expand(forms), forms};
  }
  if (kind == "polynomial") {
    const int n = get_int(j, "n");
    const int m = get_int(j, "m");
    if (!j.contains("terms") || !j.at("terms").is_array()) bad("'terms' must be an array");
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      if (!t.is_object() || !t.contains("idx") || !t.at("idx").is_array() || !t.contains("c")) {
        bad("each term needs 'idx' and 'c'");
      }
      Term term;
      for (const auto& v : t.at("idx")) {
        if (!v.is_number_integer()) bad("multi-index entries must be integers");
        const int k = v.get<int>();
        if (k < 1 || k > n) bad("multi-index entry out of range 1..n");
        term.idx.push_back(k - 1);
      }
      term.coefficient = get_real(t.at("c"));
      terms.push_back(std::move(term));
    }
    return {"polynomial", PolynomialMetric(n, m, std::move(terms)), std::nullopt};
  }
  bad("unknown metric kind '" + kind + "'");
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::stringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) bad("cannot open '" + path + "'");
    buffer << in.rdbuf();
  }
  return parse_json(buffer.str());
}

MetricDefinition load_metric(const std::string& source) {
  if (source == "bg3" || source == "bg4") return builtin(source);
  if (!source.empty() && source.front() == '{') return parse_metric(parse_json(source));
  return parse_metric(read_json_file(source));
}

Json metric_to_json(const PolynomialMetric& metric) {
  Json terms = Json::array();
  for (const auto& t : metric.terms()) terms.push_back({{"idx", one_based(t.idx)}, {"c", t.coefficient}});
  return {{"kind", "polynomial"}, {"n", metric.dim()}, {"m", metric.degree()}, {"terms", terms}};
}

Json metric_to_json(const LinearFormsMetric& metric) {
  return {{"kind", "linear_forms"}, {"n", metric.dim()}, {"forms", metric.rows()}};
}

Json tensor_to_json(const Tensor& t) {
  std::vector<int> idx(static_cast<std::size_t>(t.order()));
  return {{"n", t.dim()}, {"order", t.order()}, {"data", nest(t, idx, 0)}};
}

Tensor tensor_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("data")) bad("tensor needs 'data'");
  const int n = get_int(j, "n");
  const int order = get_int(j, "order");
  if (n < 1 || order < 0 || order > 4) bad("tensor needs n >= 1 and order 0..4");
  Tensor t(n, order);
  std::vector<int> idx(static_cast<std::size_t>(order));
  unnest(j.at("data"), t, idx, 0);
  return t;
}

Direction direction_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("a point must be a nonempty array of numbers");
  std::vector<double> v;
  for (const auto& x : j) v.push_back(get_real(x));
  return Direction(std::move(v));
}

Direction parse_direction(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      bad("cannot parse component '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) bad("cannot parse component '" + item + "'");
    v.push_back(x);
  }
  if (v.empty()) bad("empty point");
  return Direction(std::move(v));
}

Json to_json(const DomainStatus& status) {
  return {{"A", status.a_value},
          {"classification", to_string(status.classification)},
          {"epsilon", status.epsilon},
          {"detail", status.detail}};
}

Json to_json(const oracle::ComparisonReport& report) {
  return {{"method", oracle::to_string(report.method)},
          {"pass", report.pass},
          {"tolerance", report.tolerance},
          {"max_abs_error", report.max_abs_error},
          {"max_rel_error", report.max_rel_error},
          {"worst_ratio", report.worst_ratio},
          {"worst_index", one_based(report.worst_index)}};
}

std::string dump(const Json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

}  // namespace finsler::io
