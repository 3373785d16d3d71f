#pragma once

// Network files. A network file is a JSON object in one of two shapes:
//
//   gains form:  {"snr": 1.0, "relays": [{"gain_s": 4, "gain_d": 16}, ...], "label": "..."}
//   rates form:  {"rates": [{"r_s": 1, "r_d": 3}, ...], "snr": 1.0, "label": "..."}
//
// Exactly one of "relays" / "rates" must be present. "snr" is required in the
// gains form and optional in the rates form; "label" is always optional.
// Relays are listed in index order (relay 1 first).

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "diamond/error.hpp"
#include "diamond/model.hpp"

namespace diamond {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct NetworkFile {
  std::optional<Network> network;  // set for the gains form, and for the rates form when snr is given
  RateTable rates;
  std::optional<double> snr;
  std::optional<std::string> label;
  bool gains_form = false;
};

namespace detail {

inline double number_field(const nlohmann::json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing \"" + key + "\"");
  if (!it->is_number()) throw ParseError(where + ": \"" + key + "\" must be a number");
  return it->get<double>();
}

}  // namespace detail

inline NetworkFile parse_network_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("network file must be a JSON object");
  const bool has_relays = j.contains("relays");
  const bool has_rates = j.contains("rates");
  if (has_relays == has_rates) throw ParseError("network file needs exactly one of \"relays\" or \"rates\"");

  NetworkFile f;
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ParseError("\"label\" must be a string");
    f.label = j["label"].get<std::string>();
  }
  if (j.contains("snr")) f.snr = detail::number_field(j, "snr", "network file");

  try {
    if (has_relays) {
      if (!f.snr) throw ParseError("gains-form network file needs \"snr\"");
      const auto& arr = j["relays"];
      if (!arr.is_array()) throw ParseError("\"relays\" must be an array");
      std::vector<RelayChannels> relays;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = "relay " + std::to_string(i + 1);
        if (!arr[i].is_object()) throw ParseError(where + " must be an object");
        relays.push_back({detail::number_field(arr[i], "gain_s", where), detail::number_field(arr[i], "gain_d", where)});
      }
      f.network.emplace(*f.snr, std::move(relays));
      f.rates = rate_table(*f.network);
      f.gains_form = true;
    } else {
      const auto& arr = j["rates"];
      if (!arr.is_array()) throw ParseError("\"rates\" must be an array");
      if (arr.empty()) throw ParseError("\"rates\" needs at least one relay");
      std::vector<Rate> s, d;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = "relay " + std::to_string(i + 1);
        if (!arr[i].is_object()) throw ParseError(where + " must be an object");
        s.push_back(detail::number_field(arr[i], "r_s", where));
        d.push_back(detail::number_field(arr[i], "r_d", where));
      }
      f.rates = RateTable(std::move(s), std::move(d));
      if (f.snr) f.network = network_from(f.rates, *f.snr);
    }
  } catch (const ValidationError& e) {
    throw ParseError(std::string("invalid network: ") + e.what());
  }
  return f;
}

inline NetworkFile parse_network_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed network file: ") + e.what());
  }
  return parse_network_json(j);
}

inline NetworkFile read_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_network_text(ss.str());
}

inline nlohmann::ordered_json to_json(const Network& net, const std::optional<std::string>& label = std::nullopt) {
  nlohmann::ordered_json j;
  if (label) j["label"] = *label;
  j["snr"] = net.snr();
  auto& arr = j["relays"] = nlohmann::ordered_json::array();
  for (const auto& r : net.relays()) arr.push_back({{"gain_s", r.gain_s}, {"gain_d", r.gain_d}});
  return j;
}

inline nlohmann::ordered_json to_json(const RateTable& rt, const std::optional<std::string>& label = std::nullopt,
                                      std::optional<double> snr = std::nullopt) {
  nlohmann::ordered_json j;
  if (label) j["label"] = *label;
  if (snr) j["snr"] = *snr;
  auto& arr = j["rates"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < rt.size(); ++i) arr.push_back({{"r_s", rt.r_s(i)}, {"r_d", rt.r_d(i)}});
  return j;
}

}  // namespace diamond
