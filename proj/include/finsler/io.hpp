#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "finsler/metric.hpp"
#include "finsler/oracle/oracle.hpp"
#include "finsler/tensor.hpp"

namespace finsler::io {

using Json = nlohmann::json;

/// A metric as read from a definition; `forms` is set for linear_forms input
/// and the builtins, which are products of known forms.
struct MetricDefinition {
  std::string kind;
  PolynomialMetric polynomial;
  std::optional<LinearFormsMetric> forms;
};

/// Accepts "bg3", "bg4", {"kind":"builtin","tag":...},
/// {"kind":"linear_forms","n":..,"forms":[[..]..]} and
/// {"kind":"polynomial","n":..,"m":..,"terms":[{"idx":[..],"c":..}..]}.
/// Multi-indices are 1-based. Throws InvalidInput or DegenerateForms.
MetricDefinition parse_metric(const Json& j);

/// `source` is a builtin tag, inline JSON (starting with '{'), or a file path.
MetricDefinition load_metric(const std::string& source);

/// Parse text as JSON; malformed text throws InvalidInput.
Json parse_json(const std::string& text);
/// Read a file (or "-" for stdin) and parse it.
Json read_json_file(const std::string& path);

/// Canonical polynomial form: terms in lexicographic multi-index order.
Json metric_to_json(const PolynomialMetric& metric);
Json metric_to_json(const LinearFormsMetric& metric);

/// {"n":..,"order":..,"data": nested row-major arrays}; order 0 data is a number.
Json tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const Json& j);

Direction direction_from_json(const Json& j);
/// Comma-separated components, e.g. "3,1,1".
Direction parse_direction(const std::string& text);

Json to_json(const DomainStatus& status);
Json to_json(const oracle::ComparisonReport& report);

/// Compact by default, two-space indentation when pretty.
std::string dump(const Json& j, bool pretty);

}  // namespace finsler::io
