#include "bjorling/curve_io.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "bjorling/builtins.hpp"

namespace bjorling {

bool looks_like_path(const std::string& s) {
  return s.find('/') != std::string::npos || s.find('.') != std::string::npos;
}

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    fail(ErrorCode::ParseError, "input is not valid JSON");
  return j;
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    fail(ErrorCode::ParseError, std::string("missing numeric field '") + key + "'");
  return j[key].get<double>();
}

std::vector<cplx> coefficients_field(const json& comp) {
  if (!comp.is_array() || comp.empty())
    fail(ErrorCode::ParseError, "each component must be a nonempty coefficient array");
  std::vector<cplx> out;
  out.reserve(comp.size());
  for (const json& pair : comp) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number())
      fail(ErrorCode::ParseError, "coefficients must be [re, im] pairs");
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return out;
}

Curve3 curve_from_json(const json& j, bool require_real, double truncation_tol) {
  DiscDomain dom;
  try {
    dom = DiscDomain(number_field(j, "center"), number_field(j, "radius"),
                     number_field(j, "interval_half_width"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationFailed)
      fail(ErrorCode::ParseError, e.what());
    throw;
  }
  if (!j.contains("components") || !j["components"].is_array())
    fail(ErrorCode::ParseError, "missing 'components' array");
  const json& comps = j["components"];
  if (comps.size() != 1 && comps.size() != 3)
    fail(ErrorCode::ParseError, "'components' must hold 1 or 3 coefficient lists");

  auto make = [&](const json& c) { return Series::from_taylor(dom, coefficients_field(c)); };
  Curve3 curve;
  if (comps.size() == 3) {
    curve = Curve3(make(comps[0]), make(comps[1]), make(comps[2]));
  } else {
    Series s = make(comps[0]);
    curve = Curve3(s, Series::constant(dom, 0.0, s.degree()),
                   Series::constant(dom, 0.0, s.degree()));
  }

  double scale = std::max(1.0, curve.sup_norm().value);
  if (curve.tail_estimate() > truncation_tol * scale)
    fail(ErrorCode::TruncationInsufficient,
         "loaded series tail " + std::to_string(curve.tail_estimate()) +
             " exceeds the truncation tolerance on this disc");
  if (require_real && !curve.is_real_on_interval(1e-8))
    fail(ErrorCode::ValidationFailed, "loaded curve is not real on I");
  return curve;
}

}  // namespace

Curve3 curve_from_json_text(const std::string& text, bool require_real,
                            double truncation_tol) {
  return curve_from_json(parse_json(text), require_real, truncation_tol);
}

Curve3 curve_from_json_file(const std::string& path, bool require_real,
                            double truncation_tol) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  return curve_from_json(parse_json(text), require_real, truncation_tol);
}

std::string curve_to_json_text(const Curve3& c) {
  json j;
  const DiscDomain& dom = c.domain();
  j["center"] = dom.center;
  j["radius"] = dom.radius;
  j["interval_half_width"] = dom.interval_half_width;
  json comps = json::array();
  for (const Series& s : c.comp) {
    json coeffs = json::array();
    for (const cplx& v : s.taylor_coefficients())
      coeffs.push_back(json::array({v.real(), v.imag()}));
    comps.push_back(coeffs);
  }
  j["components"] = comps;
  return j.dump(2) + "\n";
}

BjorlingData bjorling_data_from_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(f)),
                   std::istreambuf_iterator<char>());
  json j = parse_json(text);
  if (!j.contains("metric") || !j["metric"].is_string())
    fail(ErrorCode::ParseError, "missing 'metric' field");
  std::string m = j["metric"].get<std::string>();
  MetricTag metric;
  if (m == "euclidean") metric = MetricTag::Euclidean;
  else if (m == "lorentz") metric = MetricTag::Lorentz;
  else fail(ErrorCode::ParseError, "metric must be 'euclidean' or 'lorentz'");
  if (!j.contains("a") || !j.contains("n"))
    fail(ErrorCode::ParseError, "Bjorling data needs 'a' and 'n' curve specs");
  Curve3 a = curve_from_json(j["a"], true, 1e-9);
  Curve3 n = curve_from_json(j["n"], true, 1e-9);
  return {std::move(a), std::move(n), metric};
}

Curve3 load_curve(const std::string& name_or_path, int degree, bool require_real,
                  std::optional<DiscDomain> dom) {
  if (is_builtin_curve(name_or_path))
    return builtin_curve(name_or_path, degree, dom);
  if (!looks_like_path(name_or_path) && !std::filesystem::exists(name_or_path))
    fail(ErrorCode::ParseError,
         "'" + name_or_path + "' is neither a builtin curve nor an existing file");
  return curve_from_json_file(name_or_path, require_real);
}

}  // namespace bjorling
