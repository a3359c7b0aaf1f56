#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fefflab/ball_pair.hpp"
#include "fefflab/exact.hpp"
#include "fefflab/families.hpp"
#include "fefflab/measures.hpp"
#include "fefflab/variation.hpp"

namespace fefflab {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaId = "fefferman-lab/v1";

/// Named boolean contracts of one run, in insertion order.
class Contracts {
 public:
  void add(const std::string& name, bool ok) { items_.emplace_back(name, ok); }
  [[nodiscard]] bool ok() const;
  [[nodiscard]] json to_json() const;

 private:
  std::vector<std::pair<std::string, bool>> items_;
};

/// {schema, command, config, result, contracts, ok}.
json envelope(const std::string& command, const json& config, const json& result, const Contracts& contracts);

json to_json(const MeasureReport& r);
json to_json(const CircularReport& r);
json to_json(const PiMultiple& p);
json to_json(const EpsFit& f);
json to_json(const CubeSimpReport& r);
json to_json(const MinimizeResult& r);
json to_json(const LinearFit& f);
json to_json(const HLReport& r);
json to_json(const JLReport& r);
json to_json(const TubeReport& r);
json to_json(const QStarResult& r);

/// JSON Schema (draft 2020-12) for every report envelope.
std::string report_schema();

/// Two-space indented dump with a trailing newline. Doubles are printed with
/// round-trip precision, so identical inputs give identical bytes.
std::string dump(const json& j);

/// "surface,fefferman,volume,quotient,err_est" header plus one row per report.
std::string measures_csv(const std::vector<MeasureReport>& reports);

}  // namespace fefflab
