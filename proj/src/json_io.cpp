// Copyright 2026 The oamqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oamqc/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "oamqc/error.hpp"

namespace oamqc::io {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object()) throw ValidationError("expected a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  return *it;
}

std::int64_t get_int(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_number_integer()) {
    throw ValidationError(std::string("field '") + key + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

int get_small_int(const Json& doc, const char* key) {
  const std::int64_t v = get_int(doc, key);
  if (v < INT32_MIN || v > INT32_MAX) {
    throw ValidationError(std::string("field '") + key + "' out of range");
  }
  return static_cast<int>(v);
}

double get_number(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_number()) {
    throw ValidationError(std::string("field '") + key + "' must be a number");
  }
  return v.get<double>();
}

template <class Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

ExtractionSpec spec_from_json(const Json& doc) {
  ExtractionSpec spec;
  spec.m = get_int(doc, "m");
  spec.src = get_small_int(doc, "src");
  spec.dst = get_small_int(doc, "dst");
  spec.stages = stages_from_json(field(doc, "stages"));
  return spec;
}

void spec_into(Json& out, const ExtractionSpec& spec) {
  out["m"] = spec.m;
  out["src"] = spec.src;
  out["dst"] = spec.dst;
  out["stages"] = stages_to_json(spec.stages);
}

}  // namespace

Json state_to_json(const PhotonState& state) {
  Json amps = Json::array();
  for (const auto& [key, amp] : state.amplitudes()) {
    amps.push_back(Json{{"mode", key.mode},
                        {"l", key.ell},
                        {"re", amp.real()},
                        {"im", amp.imag()}});
  }
  return Json{{"n", state.width()}, {"amplitudes", std::move(amps)}};
}

PhotonState state_from_json(const Json& doc) {
  return guarded([&] {
    const int width = get_small_int(doc, "n");
    const Json& list = field(doc, "amplitudes");
    if (!list.is_array()) throw ValidationError("'amplitudes' must be a list");
    AmplitudeMap amps;
    for (const Json& entry : list) {
      const ModeKey key{get_small_int(entry, "mode"), get_int(entry, "l")};
      if (key.mode < 0) throw ValidationError("negative mode index");
      const Amplitude amp{get_number(entry, "re"), get_number(entry, "im")};
      if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
        throw ValidationError("amplitude is not finite");
      }
      if (!amps.emplace(key, amp).second) {
        std::ostringstream msg;
        msg << "duplicate amplitude for (" << key.mode << ", " << key.ell
            << ")";
        throw ValidationError(msg.str());
      }
    }
    return PhotonState(width, std::move(amps));
  });
}

Json stages_to_json(Stages stages) {
  return stages ? Json(*stages) : Json("ideal");
}

Stages stages_from_json(const Json& doc) {
  if (doc.is_string()) return parse_stages(doc.get<std::string>());
  if (doc.is_number_integer()) {
    const auto n = doc.get<std::int64_t>();
    if (n < 1 || n > INT32_MAX) {
      throw ValidationError("stage count must be a positive integer");
    }
    return static_cast<int>(n);
  }
  throw ValidationError("stages must be an integer or \"ideal\"");
}

Stages parse_stages(const std::string& text) {
  if (text == "ideal" || text == "IDEAL") return kIdeal;
  std::size_t used = 0;
  long long n = 0;
  try {
    n = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw ValidationError("stage count '" + text + "' is not an integer");
  }
  if (used != text.size() || n < 1 || n > INT32_MAX) {
    throw ValidationError("stage count '" + text +
                          "' must be a positive integer or 'ideal'");
  }
  return static_cast<int>(n);
}

Json element_to_json(const Element& element) {
  return std::visit(
      Overloaded{
          [](const PhaseShifter& e) {
            return Json{{"type", "ps"}, {"mode", e.mode}, {"phi", e.phi}};
          },
          [](const Hologram& e) {
            return Json{{"type", "holo"}, {"mode", e.mode}, {"k", e.k}};
          },
          [](const BeamSplitter& e) {
            return Json{{"type", "bs"},
                        {"mode_a", e.mode_a},
                        {"mode_b", e.mode_b},
                        {"theta", e.theta}};
          },
          [](const Filter& e) {
            return Json{{"type", "filter"}, {"mode", e.mode}, {"m", e.m}};
          },
          [](const Mirror& e) {
            return Json{{"type", "mirror"}, {"mode", e.mode}};
          },
          [](const ExtractGate& e) {
            Json out{{"type", "extract"}};
            spec_into(out, e.spec);
            return out;
          },
          [](const ReintegrateGate& e) {
            Json out{{"type", "reintegrate"}};
            spec_into(out, e.spec);
            out["order"] = e.order == ReintegrationOrder::kRepeat ? "repeat"
                                                                  : "reversed";
            return out;
          },
      },
      element);
}

Element element_from_json(const Json& doc) {
  return guarded([&]() -> Element {
    const Json& type_field = field(doc, "type");
    if (!type_field.is_string()) throw ValidationError("'type' must be a string");
    const std::string type = type_field.get<std::string>();
    if (type == "ps") {
      return PhaseShifter{get_small_int(doc, "mode"), get_number(doc, "phi")};
    }
    if (type == "holo") {
      return Hologram{get_small_int(doc, "mode"), get_int(doc, "k")};
    }
    if (type == "bs") {
      return BeamSplitter{get_small_int(doc, "mode_a"),
                          get_small_int(doc, "mode_b"),
                          get_number(doc, "theta")};
    }
    if (type == "filter") {
      return Filter{get_small_int(doc, "mode"), get_int(doc, "m")};
    }
    if (type == "mirror") return Mirror{get_small_int(doc, "mode")};
    if (type == "extract") return ExtractGate{spec_from_json(doc)};
    if (type == "reintegrate") {
      ReintegrateGate gate{spec_from_json(doc), ReintegrationOrder::kRepeat};
      if (auto it = doc.find("order"); it != doc.end()) {
        const std::string order = it->get<std::string>();
        if (order == "reversed") {
          gate.order = ReintegrationOrder::kReversedInverse;
        } else if (order != "repeat") {
          throw ValidationError("unknown reintegration order '" + order + "'");
        }
      }
      return gate;
    }
    throw ValidationError("unknown element type '" + type + "'");
  });
}

Json netlist_to_json(const Netlist& netlist) {
  Json elements = Json::array();
  for (const Element& element : netlist.elements) {
    elements.push_back(element_to_json(element));
  }
  return Json{{"n", netlist.width},
              {"modes", netlist.mode_count},
              {"elements", std::move(elements)}};
}

Netlist netlist_from_json(const Json& doc) {
  return guarded([&] {
    Netlist netlist;
    netlist.width = get_small_int(doc, "n");
    netlist.mode_count = get_small_int(doc, "modes");
    const Json& list = field(doc, "elements");
    if (!list.is_array()) throw ValidationError("'elements' must be a list");
    for (const Json& entry : list) {
      netlist.elements.push_back(element_from_json(entry));
    }
    validate(netlist);
    return netlist;
  });
}

Json unitary_to_json(const ComplexMatrix& u) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      row.push_back(Json::array({u(r, c).real(), u(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return Json{{"d", u.rows()}, {"rows", std::move(rows)}};
}

ComplexMatrix unitary_from_json(const Json& doc) {
  return guarded([&] {
    const std::int64_t d = get_int(doc, "d");
    if (d < 1 || d > 4096) throw ValidationError("dimension out of range");
    width_for_dimension(d);
    const Json& rows = field(doc, "rows");
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(d)) {
      throw ValidationError("'rows' must hold d rows");
    }
    ComplexMatrix u(d, d);
    for (std::int64_t r = 0; r < d; ++r) {
      const Json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(d)) {
        throw ValidationError("every row must hold d entries");
      }
      for (std::int64_t c = 0; c < d; ++c) {
        const Json& entry = row[static_cast<std::size_t>(c)];
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number()) {
          throw ValidationError("matrix entries must be [re, im] pairs");
        }
        u(r, c) = Amplitude{entry[0].get<double>(), entry[1].get<double>()};
      }
    }
    return u;
  });
}

Json report_to_json(const CompileReport& report) {
  return Json{{"factor_count", report.factor_count},
              {"element_count", report.element_count},
              {"stages", stages_to_json(report.stages)},
              {"analytic_survival", report.analytic_survival},
              {"simulated_survival", report.simulated_survival},
              {"verification_residual", report.verification_residual}};
}

Json cost_to_json(const ReadoutCost& cost) {
  return Json{{"decision_points", cost.decision_points},
              {"arms", cost.arms},
              {"runs", cost.runs},
              {"cnot_count", cost.cnot_count}};
}

Json path_state_to_json(const PathQubitState& path) {
  Json amps = Json::array();
  for (const auto& [bits, amp] : path.amplitudes) {
    amps.push_back(Json{{"bits", bits}, {"re", amp.real()}, {"im", amp.imag()}});
  }
  return Json{{"n", path.n}, {"amplitudes", std::move(amps)}};
}

Json parity_to_json(const ReflectionParityReport& report) {
  return Json{{"mirrors_per_mode", report.mirrors_per_mode},
              {"mode_ok", report.mode_ok},
              {"total_mirrors", report.total_mirrors},
              {"all_even", report.all_even}};
}

Json monte_carlo_to_json(const MonteCarloResult& result) {
  std::int64_t absorbed = 0;
  for (std::int64_t count : result.absorbed_at) absorbed += count;
  return Json{{"runs", result.runs},
              {"survived", result.survived},
              {"absorbed", absorbed},
              {"survival_fraction", result.survival_fraction()}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw ValidationError("'" + path.string() + "' is not valid JSON: " +
                          e.what());
  }
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace oamqc::io
