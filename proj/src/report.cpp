#include "fefflab/report.hpp"

#include <cmath>
#include <sstream>

namespace fefflab {

namespace {

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json optional_number(const std::optional<double>& x) { return x ? number_or_null(*x) : json(nullptr); }

}  // namespace

bool Contracts::ok() const {
  for (const auto& [name, v] : items_)
    if (!v) return false;
  return true;
}

json Contracts::to_json() const {
  json j = json::object();
  for (const auto& [name, v] : items_) j[name] = v;
  return j;
}

json envelope(const std::string& command, const json& config, const json& result, const Contracts& contracts) {
  json j;
  j["schema"] = kSchemaId;
  j["command"] = command;
  j["config"] = config;
  j["result"] = result;
  j["contracts"] = contracts.to_json();
  j["ok"] = contracts.ok();
  return j;
}

json to_json(const MeasureReport& r) {
  json j;
  j["surface"] = r.surface;
  j["grid_kind"] = to_string(r.kind);
  j["grid"] = r.grid;
  j["fefferman"] = number_or_null(r.fefferman);
  j["volume"] = optional_number(r.volume);
  j["quotient"] = optional_number(r.quotient);
  j["err_est"] = r.err_est;
  return j;
}

json to_json(const CircularReport& r) {
  json j;
  j["curvature_min"] = r.curvature_min;
  j["curvature_max"] = r.curvature_max;
  j["gauss_bonnet"] = r.gauss_bonnet;
  j["fefferman_from_curvature"] = r.fefferman_from_curvature;
  return j;
}

json to_json(const PiMultiple& p) {
  json j;
  j["exact"] = p.str();
  j["value"] = p.value();
  return j;
}

json to_json(const EpsFit& f) {
  json j;
  j["eps"] = f.eps;
  j["values"] = f.values;
  j["coeffs"] = f.coeffs;
  j["residual"] = f.residual;
  j["condition"] = f.condition;
  j["flagged"] = f.flagged;
  return j;
}

json to_json(const CubeSimpReport& r) {
  json j;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["rhs_corrected"] = r.rhs_corrected;
  j["fefferman"] = number_or_null(r.fefferman);
  j["heisenberg"] = r.heisenberg;
  j["max_Fzzbar"] = r.max_Fzzbar;
  return j;
}

json to_json(const MinimizeResult& r) {
  json j;
  j["R"] = r.R;
  j["theta"] = r.theta;
  j["q"] = r.q;
  j["scan_min"] = r.scan_min;
  j["on_R_zero_edge"] = r.on_R_zero_edge;
  j["iterations"] = r.iterations;
  j["trace"] = r.trace;
  return j;
}

json to_json(const LinearFit& f) {
  json j;
  j["slope"] = f.slope;
  j["intercept"] = f.intercept;
  j["max_residual"] = f.max_residual;
  return j;
}

json to_json(const HLReport& r) {
  json j;
  j["lhs"] = r.lhs;
  j["norm43"] = r.norm43;
  j["bound"] = r.bound;
  j["ratio"] = r.ratio;
  j["holds"] = r.holds;
  return j;
}

json to_json(const JLReport& r) {
  json j;
  j["lhs_radicand"] = to_string(r.lhs_radicand);
  j["rhs_coeff"] = to_string(r.rhs_coeff);
  j["lhs"] = r.lhs();
  j["rhs"] = r.rhs();
  j["holds"] = r.holds;
  j["equality"] = r.equality;
  return j;
}

json to_json(const TubeReport& r) {
  json j;
  j["blaschke"] = r.blaschke;
  j["area"] = r.area;
  j["ratio"] = r.ratio;
  return j;
}

json to_json(const QStarResult& r) {
  json j;
  j["best"] = r.best;
  j["q_upper_bound"] = r.q;
  j["collapsed"] = r.collapsed;
  j["trace"] = r.trace;
  return j;
}

std::string report_schema() {
  return R"({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "$id": "fefferman-lab/v1",
  "title": "fefflab report",
  "type": "object",
  "required": ["schema", "command", "config", "result", "contracts", "ok"],
  "properties": {
    "schema": {"const": "fefferman-lab/v1"},
    "command": {
      "enum": ["measure", "kappa", "sphere-secondvar", "heisenberg", "ball-caps", "shear", "tube",
               "hl", "jl", "qstar", "validate-quadrature"]
    },
    "config": {
      "type": "object",
      "required": ["seed"],
      "properties": {
        "seed": {"type": "integer", "minimum": 0}
      }
    },
    "result": {"type": ["object", "null"]},
    "contracts": {"type": "object", "additionalProperties": {"type": "boolean"}},
    "ok": {"type": "boolean"},
    "error": {"type": "string"}
  },
  "allOf": [
    {
      "if": {"properties": {"command": {"const": "measure"}, "result": {"type": "object"}}},
      "then": {"properties": {"result": {"$ref": "#/$defs/measure"}}}
    },
    {
      "if": {"properties": {"command": {"const": "shear"}, "result": {"type": "object"}}},
      "then": {
        "properties": {
          "result": {
            "type": "object",
            "required": ["reports"],
            "properties": {"reports": {"type": "array", "items": {"$ref": "#/$defs/measure"}}}
          }
        }
      }
    },
    {
      "if": {"properties": {"ok": {"const": false}}},
      "then": {"anyOf": [{"required": ["error"]}, {"properties": {"contracts": {"minProperties": 1}}}]}
    }
  ],
  "$defs": {
    "measure": {
      "type": "object",
      "required": ["surface", "grid", "fefferman", "volume", "quotient", "err_est"],
      "properties": {
        "surface": {"type": "string"},
        "grid_kind": {"type": "string"},
        "grid": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "fefferman": {"type": ["number", "null"]},
        "volume": {"type": ["number", "null"]},
        "quotient": {"type": ["number", "null"]},
        "err_est": {"type": "number", "minimum": 0}
      }
    }
  }
}
)";
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string measures_csv(const std::vector<MeasureReport>& reports) {
  std::ostringstream os;
  os.precision(17);
  os << "surface,fefferman,volume,quotient,err_est\n";
  auto opt = [&](const std::optional<double>& x) {
    if (x) os << *x;
  };
  for (const auto& r : reports) {
    os << '"' << r.surface << "\"," << r.fefferman << ',';
    opt(r.volume);
    os << ',';
    opt(r.quotient);
    os << ',' << r.err_est << '\n';
  }
  return os.str();
}

}  // namespace fefflab
