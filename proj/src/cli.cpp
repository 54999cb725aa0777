#include "finsler/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "finsler/curvature.hpp"
#include "finsler/error.hpp"
#include "finsler/linalg.hpp"
#include "finsler/power.hpp"

namespace finsler::cli {

namespace {

using io::Json;

const std::vector<std::string> kOutputs{"L",     "g",     "g_inv", "C",      "C_mixed",
                                        "S_mixed", "S_cov", "ricci", "scalar", "einstein"};

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateDomain:
    case ErrorCode::ZeroBase:
    case ErrorCode::SingularMetric:
      return kDomainFailure;
    default:
      return kInputError;
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Json point_json(const Direction& y) {
  return Json(std::vector<double>(y.components().begin(), y.components().end()));
}

Json signature(const Tensor& g) {
  const auto ev = symmetric_eigenvalues(g);
  double scale = 0.0;
  for (double v : ev) scale = std::max(scale, std::abs(v));
  int pos = 0, neg = 0, zero = 0;
  std::string signs;
  for (double v : ev) {
    if (std::abs(v) <= 1e-12 * scale) {
      ++zero;
      signs += '0';
    } else if (v > 0) {
      ++pos;
      signs += '+';
    } else {
      ++neg;
      signs += '-';
    }
  }
  return {{"eigenvalues", ev}, {"signs", signs}, {"positive", pos}, {"negative", neg}, {"zero", zero}};
}

Json einstein_json(const EinsteinResidual& er) {
  return {{"kappa", er.kappa},
          {"einstein", io::tensor_to_json(er.einstein)},
          {"stress_energy", io::tensor_to_json(er.stress_energy)},
          {"trace_defect", er.trace_defect}};
}

}  // namespace

Json cmd_expand(const io::MetricDefinition& metric) { return io::metric_to_json(metric.polynomial); }

CommandResult cmd_eval(const Json& request) {
  if (!request.is_object()) bad("eval request must be a JSON object");
  if (!request.contains("metric")) bad("eval request needs 'metric'");
  const io::MetricDefinition metric = io::parse_metric(request.at("metric"));
  const PolynomialMetric& poly = metric.polynomial;

  if (!request.contains("points") || !request.at("points").is_array() || request.at("points").empty()) {
    bad("eval request needs a nonempty 'points' array");
  }
  std::vector<Direction> points;
  for (const auto& p : request.at("points")) {
    points.push_back(io::direction_from_json(p));
    if (points.back().dim() != poly.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from metric");
  }

  std::optional<double> kappa;
  if (request.contains("kappa") && !request.at("kappa").is_null()) {
    if (!request.at("kappa").is_number()) bad("'kappa' must be a number");
    kappa = request.at("kappa").get<double>();
    if (!std::isfinite(*kappa)) bad("'kappa' must be finite");
    if (*kappa == 0.0) throw Error(ErrorCode::ZeroKappa, "kappa must be nonzero");
  }
  std::set<std::string> outputs;
  if (request.contains("outputs")) {
    if (!request.at("outputs").is_array()) bad("'outputs' must be an array of names");
    for (const auto& o : request.at("outputs")) {
      if (!o.is_string()) bad("'outputs' must be an array of names");
      const auto name = o.get<std::string>();
      if (std::find(kOutputs.begin(), kOutputs.end(), name) == kOutputs.end()) bad("unknown output '" + name + "'");
      outputs.insert(name);
    }
  } else {
    outputs.insert(kOutputs.begin(), kOutputs.end() - 1);
    if (kappa) outputs.insert("einstein");
  }
  const bool einstein = outputs.count("einstein") > 0;
  if (einstein != kappa.has_value()) bad("kappa is required exactly when einstein is requested");
  if (einstein && poly.dim() <= 2) {
    throw Error(ErrorCode::NotApplicableDimension, "Einstein-like equations need n > 2");
  }
  const bool need_curvature = outputs.count("S_mixed") || outputs.count("S_cov") || outputs.count("ricci") ||
                              outputs.count("scalar") || einstein;

  Json results = Json::array();
  int evaluated = 0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Direction& y = points[k];
    const DomainStatus status = domain_status(poly, y);
    Json entry{{"index", k + 1}, {"y", point_json(y)}, {"status", io::to_json(status)}};
    if (!status.usable()) {
      results.push_back(std::move(entry));
      continue;
    }
    try {
      const GeometryPoint gp = evaluate_geometry(poly, y);
      Json out = Json::object();
      if (outputs.count("L")) out["L"] = gp.l_value;
      if (outputs.count("g")) out["g"] = io::tensor_to_json(gp.g);
      if (outputs.count("g_inv")) out["g_inv"] = io::tensor_to_json(gp.g_inv);
      if (outputs.count("C")) out["C"] = io::tensor_to_json(gp.c_cov);
      if (outputs.count("C_mixed")) out["C_mixed"] = io::tensor_to_json(gp.c_mixed);
      if (need_curvature) {
        const CurvatureBundle cb = evaluate_curvature(gp);
        if (outputs.count("S_mixed")) out["S_mixed"] = io::tensor_to_json(cb.s_mixed);
        if (outputs.count("S_cov")) out["S_cov"] = io::tensor_to_json(cb.s_cov);
        if (outputs.count("ricci")) out["ricci"] = io::tensor_to_json(cb.ricci);
        if (outputs.count("scalar")) out["scalar"] = cb.scalar;
        if (einstein) out["einstein"] = einstein_json(einstein_residual(cb.ricci, cb.scalar, gp.g, gp.g_inv, *kappa));
      }
      entry["outputs"] = std::move(out);
      ++evaluated;
    } catch (const Error& e) {
      if (exit_code_for(e.code()) != kDomainFailure) throw;
      entry["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    }
    results.push_back(std::move(entry));
  }
  std::vector<std::string> requested(outputs.begin(), outputs.end());
  Json body{{"metric", io::metric_to_json(poly)}, {"outputs", requested}, {"points", results}};
  if (kappa) body["kappa"] = *kappa;
  return {std::move(body), evaluated == 0 ? kDomainFailure : kSuccess};
}

CommandResult cmd_check(const CheckOptions& options) {
  const CheckReport report = run_check(options);
  return {to_json(report), report.pass ? kSuccess : kInvariantFailure};
}

CommandResult cmd_report(const io::MetricDefinition& metric, const Direction& y, std::optional<double> kappa) {
  const PolynomialMetric& poly = metric.polynomial;
  if (y.dim() != poly.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from metric");
  if (kappa && *kappa == 0.0) throw Error(ErrorCode::ZeroKappa, "kappa must be nonzero");
  if (kappa && !std::isfinite(*kappa)) bad("kappa must be finite");
  if (kappa && poly.dim() <= 2) throw Error(ErrorCode::NotApplicableDimension, "Einstein-like equations need n > 2");
  const DomainStatus status = domain_status(poly, y);
  Json d{{"metric", io::metric_to_json(poly)}, {"y", point_json(y)}, {"status", io::to_json(status)}};
  if (!status.usable()) return {std::move(d), kDomainFailure};
  const GeometryPoint gp = evaluate_geometry(poly, y);
  const DerivativeBundle bundle = derivative_bundle(poly, y);
  const CurvatureBundle cb = evaluate_curvature(gp);
  const ConnectionBundle conn = nonlinear_connection(poly, y);
  d["A"] = gp.a_value;
  d["L"] = gp.l_value;
  d["A_i"] = io::tensor_to_json(bundle.a1);
  d["A_ij"] = io::tensor_to_json(bundle.a2);
  d["det_A_ij"] = determinant(bundle.a2);
  d["g"] = io::tensor_to_json(gp.g);
  d["det_g"] = determinant(gp.g);
  d["signature"] = signature(gp.g);
  d["g_inv"] = io::tensor_to_json(gp.g_inv);
  d["inverse_path"] = gp.inverse_path == InversePath::RankOne ? "rank_one" : "direct";
  d["condition_number"] = gp.cond;
  d["C"] = io::tensor_to_json(gp.c_cov);
  d["C_mixed"] = io::tensor_to_json(gp.c_mixed);
  d["torsion_gradient"] = io::tensor_to_json(gp.c_grad);
  d["S_mixed"] = io::tensor_to_json(cb.s_mixed);
  d["S_cov"] = io::tensor_to_json(cb.s_cov);
  d["ricci"] = io::tensor_to_json(cb.ricci);
  d["scalar_curvature"] = cb.scalar;
  d["connection"] = {{"spray", conn.spray}, {"N", io::tensor_to_json(conn.connection)}};
  if (kappa) d["einstein"] = einstein_json(einstein_residual(cb.ricci, cb.scalar, gp.g, gp.g_inv, *kappa));
  return {std::move(d), kSuccess};
}

std::string render_report(const Json& d) {
  std::ostringstream os;
  os << std::setprecision(12);
  const auto list = [](const Json& arr) {
    std::ostringstream s;
    s << std::setprecision(12) << "(";
    for (std::size_t i = 0; i < arr.size(); ++i) s << (i ? ", " : "") << arr[i].get<double>();
    s << ")";
    return s.str();
  };
  const auto matrix = [&](const char* title, const Json& t) {
    os << title << ":\n";
    for (const auto& row : t.at("data")) os << "  " << list(row) << "\n";
  };
  const auto& status = d.at("status");
  os << "metric: degree " << d.at("metric").at("m") << " in " << d.at("metric").at("n") << " variables, "
     << d.at("metric").at("terms").size() << " terms\n";
  os << "y: " << list(d.at("y")) << "\n";
  os << "status: " << status.at("classification").get<std::string>() << " (A = " << status.at("A").get<double>()
     << ")\n";
  if (d.contains("error")) os << "error: " << d.at("error").at("message").get<std::string>() << "\n";
  if (!d.contains("g")) return os.str();
  os << "L: " << d.at("L").get<double>() << "\n";
  os << "det(A_ij): " << d.at("det_A_ij").get<double>() << "\n";
  matrix("g_ij", d.at("g"));
  os << "det(g): " << d.at("det_g").get<double>() << "\n";
  os << "signature of g: " << d.at("signature").at("signs").get<std::string>() << " eigenvalues "
     << list(d.at("signature").at("eigenvalues")) << "\n";
  os << "condition number of g: " << d.at("condition_number").get<double>() << " (inverse via "
     << d.at("inverse_path").get<std::string>() << ")\n";
  matrix("g^jk", d.at("g_inv"));
  matrix("Ricci S_ij", d.at("ricci"));
  os << "scalar curvature S: " << d.at("scalar_curvature").get<double>() << "\n";
  if (d.contains("einstein")) {
    os << "kappa: " << d.at("einstein").at("kappa").get<double>() << "\n";
    matrix("E_ij = S_ij - (S/2) g_ij", d.at("einstein").at("einstein"));
  }
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vertical Finsler geometry of m-th root metrics", "finsler"};
  app.require_subcommand(1);
  bool pretty = false;
  bool json_only = false;
  app.add_flag("--pretty", pretty, "Indent JSON output");
  app.add_flag("--json", json_only, "Machine-readable output only");

  std::string metric_src;
  auto* expand = app.add_subcommand("expand", "Expand a metric definition into canonical polynomial form");
  expand->add_option("--metric", metric_src, "bg3, bg4, inline JSON or a file path")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate requested tensors at points");
  std::string request_src, points_src, outputs_src;
  std::vector<std::string> point_args;
  std::optional<double> kappa;
  eval->add_option("--request", request_src, "Full request JSON (file path, '-' or inline)");
  eval->add_option("--metric", metric_src, "bg3, bg4, inline JSON or a file path");
  eval->add_option("--points", points_src, "JSON array of points (file path or inline)");
  eval->add_option("--point", point_args, "One point as comma-separated components")->take_all();
  eval->add_option("--outputs", outputs_src, "Comma-separated outputs");
  eval->add_option("--kappa", kappa, "Einstein constant");

  auto* check = app.add_subcommand("check", "Run the verification suite");
  CheckOptions options;
  std::string metrics_src = "bg3,bg4";
  bool inject = false;
  check->add_option("--seed", options.seed, "Random seed");
  check->add_option("--count", options.count, "Regular points per metric");
  check->add_option("--metrics", metrics_src, "Comma-separated builtin tags");
  check->add_flag("--inject-erratum", inject, "Substitute the printed erroneous formulas");

  auto* report = app.add_subcommand("report", "Geometry dossier at one point");
  std::string point_src;
  report->add_option("--metric", metric_src, "bg3, bg4, inline JSON or a file path")->required();
  report->add_option("--point", point_src, "Comma-separated components")->required()->allow_extra_args(false);
  report->add_option("--kappa", kappa, "Einstein constant");

  for (auto* sub : {expand, eval, check, report}) {
    sub->add_flag("--pretty", pretty, "Indent JSON output");
    sub->add_flag("--json", json_only, "Machine-readable output only");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (expand->parsed()) {
      out << io::dump(cmd_expand(io::load_metric(metric_src)), pretty) << "\n";
      return kSuccess;
    }
    if (eval->parsed()) {
      Json request;
      if (!request_src.empty()) {
        request = request_src.front() == '{' ? io::parse_json(request_src) : io::read_json_file(request_src);
      } else {
        if (metric_src.empty()) bad("eval needs --metric or --request");
        const Json metric_json = metric_src == "bg3" || metric_src == "bg4" ? Json(metric_src)
                                 : metric_src.front() == '{'                 ? io::parse_json(metric_src)
                                                                             : io::read_json_file(metric_src);
        request["metric"] = metric_json;
        Json points = Json::array();
        if (!points_src.empty()) {
          points = points_src.front() == '[' ? io::parse_json(points_src) : io::read_json_file(points_src);
        }
        for (const auto& p : point_args) points.push_back(point_json(io::parse_direction(p)));
        request["points"] = points;
        if (!outputs_src.empty()) request["outputs"] = split_list(outputs_src);
        if (kappa) request["kappa"] = *kappa;
      }
      const auto result = cmd_eval(request);
      out << io::dump(result.json, pretty) << "\n";
      return result.exit_code;
    }
    if (check->parsed()) {
      options.metrics = split_list(metrics_src);
      options.inject_erratum = inject;
      if (options.count < 1) bad("--count must be at least 1");
      const auto result = cmd_check(options);
      out << io::dump(result.json, pretty) << "\n";
      return result.exit_code;
    }
    const auto metric = io::load_metric(metric_src);
    const auto y = io::parse_direction(point_src);
    CommandResult result;
    try {
      result = cmd_report(metric, y, kappa);
    } catch (const Error& e) {
      if (exit_code_for(e.code()) != kDomainFailure) throw;
      err << "error: " << e.what() << "\n";
      return kDomainFailure;
    }
    if (json_only || pretty) {
      out << io::dump(result.json, pretty) << "\n";
    } else {
      out << render_report(result.json);
    }
    return result.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace finsler::cli
